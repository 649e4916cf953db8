use std::sync::{Arc, OnceLock};

use crate::groebner::{GbOptions, GroebnerBasis, ModuleVector};
use crate::linalg;
use crate::monomial::MonomialOrder;
use crate::{Error, Result};

use super::complex::FreeResolution;
use super::hilbert::{HilbertPolynomial, HilbertSeries};
use super::map::{GradedFreeModule, GradedMap};

/// A finitely generated graded module given as the cokernel of `relations : F_1 → F_0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    relations: GradedMap,
    resolution: OnceLock<Arc<FreeResolution>>,
}

impl Presentation {
    pub fn cokernel(relations: GradedMap) -> Self {
        Self { relations, resolution: OnceLock::new() }
    }

    pub fn free(nvars: usize, generators: GradedFreeModule) -> Self {
        Self::cokernel(GradedMap::zero(nvars, generators, GradedFreeModule::default()))
    }

    /// The submodule generated by the columns of `map`, presented on a minimal subset of them.
    pub fn image(map: &GradedMap) -> Self {
        let gens = map.minimal_columns();
        let rels = gens.syzygies();
        Self::cokernel(rels)
    }

    /// `ker(map)` as a module, presented on minimal generators.
    pub fn kernel(map: &GradedMap) -> Self {
        let gens = map.kernel_by_rows(&GbOptions::default());
        Self::cokernel(gens.kernel_by_rows(&GbOptions::default()))
    }

    pub fn nvars(&self) -> usize {
        self.relations.nvars()
    }

    pub fn generators(&self) -> &GradedFreeModule {
        self.relations.target()
    }

    pub fn relations(&self) -> &GradedMap {
        &self.relations
    }

    /// Minimal presentation: unit relations eliminate generators, then redundant relations are dropped.
    pub fn prune(&self) -> Presentation {
        let n = self.nvars();
        let res = FreeResolution::from_maps(n, None, self.generators().clone(), vec![self.relations.clone()])
            .expect("single map")
            .minimalize();
        let rels = match res.maps().first() {
            Some(m) => m.clone(),
            None => GradedMap::zero(n, res.module(0), GradedFreeModule::default()),
        };
        Self::cokernel(rels.minimal_columns())
    }

    /// `M(a)`.
    pub fn twist(&self, a: i64) -> Presentation {
        Self::cokernel(self.relations.twisted(a))
    }

    /// `Hom_R(M, R) = ker(F_0^* → F_1^*)`, minimally presented.
    pub fn dual(&self) -> Presentation {
        let p = self.prune();
        Self::kernel(&p.relations.transpose()).prune()
    }

    fn quotient_basis(&self) -> GroebnerBasis {
        let order = MonomialOrder::degrevlex(self.nvars());
        let cols: Vec<ModuleVector> = self.relations.columns().to_vec();
        GroebnerBasis::compute(self.nvars(), &self.generators().twists, &cols, &order, 0, &GbOptions::default())
            .expect("homogeneous relations")
            .0
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_quotient(&self.quotient_basis(), &self.generators().twists)
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        self.hilbert_series().polynomial()
    }

    /// `dim_k M_d`.
    pub fn hilbert_function(&self, d: i64) -> i64 {
        self.hilbert_series().function(d)
    }

    /// Generic rank, read off the Hilbert polynomial.
    pub fn rank(&self) -> i64 {
        let r = self.hilbert_polynomial().rank(self.nvars() - 1);
        assert!(r.is_integer(), "rank is an integer");
        r.to_integer().try_into().expect("small rank")
    }

    pub fn is_zero(&self) -> bool {
        self.prune().generators().rank() == 0
    }

    /// Minimal free resolution of `M`, cached.
    pub fn resolution(&self) -> &FreeResolution {
        self.resolution.get_or_init(|| {
            let p = self.prune();
            Arc::new(FreeResolution::of_presentation(p.relations(), &GbOptions::default()))
        })
    }

    /// `dim_k Ext^q_R(M, R(-n-1))_d` from the dual of the minimal resolution.
    pub fn ext_dim(&self, q: usize, d: i64) -> u64 {
        let res = self.resolution();
        let nv = self.nvars() as i64;
        if q > res.length() {
            return 0;
        }
        let cq = res.module(q).dual().twisted(-nv);
        let dim = cq.dim(self.nvars(), d);
        // δ^q : C^q → C^{q+1} is the twisted transpose of φ_{q+1}.
        let out = res.phi(q + 1).map(|m| m.transpose().twisted(-nv).rank_in_degree(d)).unwrap_or(0);
        let inc =
            if q >= 1 { res.phi(q).map(|m| m.transpose().twisted(-nv).rank_in_degree(d)).unwrap_or(0) } else { 0 };
        dim - out as u64 - inc as u64
    }
}

/// `ker B / im A` for `F --A--> G --B--> H`, as the cokernel of the `K`-block of
/// `syz([S | A])` where `S : K → G` generates `ker B`.
pub fn homology_presentation(a: &GradedMap, b: &GradedMap) -> Result<Presentation> {
    if a.target() != b.source() {
        return Err(Error::ShapeMismatch("A and B are not composable".into()));
    }
    if !b.compose(a)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let n = a.nvars();
    let s = b.syzygies();
    if s.ncols() == 0 {
        return Ok(Presentation::free(n, GradedFreeModule::default()));
    }
    let k = s.ncols();
    let t = s.concat_columns(a)?;
    let z = t.syzygies();
    let top = z.select_rows(&(0..k).collect::<Vec<_>>());
    let rels = GradedMap::new(n, s.source().clone(), top.source().clone(), top.columns().to_vec())?;
    Ok(Presentation::cokernel(rels).prune())
}

/// Rank-based check that `M_d` has the dimension the Hilbert series predicts
/// (`dim F_0,d - rank (relations)_d`).
pub fn presentation_dim_by_rank(p: &Presentation, d: i64) -> u64 {
    let f0 = p.generators().dim(p.nvars(), d);
    f0 - linalg::rank(&p.relations().degree_matrix(d).0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::resolution::hilbert::binomial_int;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn homology_of_trivial_complexes() {
        let n = 4;
        let r = GradedFreeModule::new(vec![0]);
        let zero_in = GradedMap::zero(n, r.clone(), GradedFreeModule::default());
        let zero_out = GradedMap::zero(n, GradedFreeModule::default(), r.clone());
        let h = homology_presentation(&zero_in, &zero_out).unwrap();
        assert_eq!(h.generators().twists, vec![0]);
        assert_eq!(h.relations().ncols(), 0);

        let x0 = GradedMap::row(n, &[p("x0", n)]).unwrap();
        let h = homology_presentation(&x0, &zero_out).unwrap();
        assert_eq!(h.hilbert_polynomial(), {
            let q = Presentation::cokernel(x0.clone());
            q.hilbert_polynomial()
        });
        for d in 0..5 {
            assert_eq!(h.hilbert_function(d), binomial_int(d + 2, 2));
        }
    }

    #[test]
    fn not_a_complex() {
        let n = 2;
        let a = GradedMap::row(n, &[p("x0", n)]).unwrap();
        let b = GradedMap::from_columns(n, GradedFreeModule::new(vec![-1]), vec![vec![p("x1", n)]]).unwrap();
        assert!(matches!(homology_presentation(&a, &b), Err(Error::NotAComplex)));
    }

    #[test]
    fn ext_of_free_module() {
        let n = 4;
        let m = Presentation::free(n, GradedFreeModule::new(vec![0]));
        for d in -2..9 {
            assert_eq!(m.ext_dim(0, d), crate::monomial::count_monomials(n, d - 4));
            assert_eq!(m.ext_dim(1, d), 0);
        }
    }

    #[test]
    fn ext_of_residue_field() {
        // k = R/m on P^3: Ext^4(k, R(-4)) = k in degree 0, by the Koszul complex.
        let n = 4;
        let m = Presentation::cokernel(GradedMap::row(n, &[p("x0", n), p("x1", n), p("x2", n), p("x3", n)]).unwrap());
        for d in -3..4 {
            assert_eq!(m.ext_dim(4, d), u64::from(d == 0), "degree {d}");
            for q in 0..4 {
                assert_eq!(m.ext_dim(q, d), 0);
            }
        }
    }

    #[test]
    fn dual_of_ideal_twist() {
        // Hom((x0, x1), R) ≅ R for the ideal of a codimension-two linear space.
        let n = 4;
        let i = GradedMap::row(n, &[p("x0", n), p("x1", n)]).unwrap();
        let m = Presentation::image(&i);
        let d = m.dual();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.generators().rank(), 1);
        assert_eq!(d.generators().twists, vec![0]);
    }

    #[test]
    fn prune_removes_unit_relations() {
        let n = 3;
        let rels = GradedMap::new(
            n,
            GradedFreeModule::new(vec![0, 1]),
            GradedFreeModule::new(vec![1, 2]),
            vec![vec![p("x0", n), p("1", n)], vec![p("x1^2", n), p("x2", n)]],
        )
        .unwrap();
        let m = Presentation::cokernel(rels);
        let pr = m.prune();
        assert_eq!(pr.generators().twists, vec![0]);
        for d in 0..5 {
            assert_eq!(pr.hilbert_function(d), m.hilbert_function(d));
            assert_eq!(presentation_dim_by_rank(&m, d) as i64, m.hilbert_function(d));
        }
    }
}
