use std::collections::HashMap;
use std::fmt;

use crate::groebner::{vector_degree, GbOptions, GroebnerBasis, ModuleVector};
use crate::linalg::{self, SparseRow};
use crate::monomial::{count_monomials, Monomial, MonomialOrder};
use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};

/// `⊕_k R(-twists[k])`: basis vector `k` has degree `twists[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedFreeModule {
    pub twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        Self { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// `dim_k` of the degree-`d` piece in `nvars` variables.
    pub fn dim(&self, nvars: usize, d: i64) -> u64 {
        self.twists.iter().map(|&t| count_monomials(nvars, d - t)).sum()
    }

    /// Graded dual `⊕ R(twists[k])`.
    pub fn dual(&self) -> Self {
        Self::new(self.twists.iter().map(|t| -t).collect())
    }

    /// `F(a)`: every generator degree drops by `a`.
    pub fn twisted(&self, a: i64) -> Self {
        Self::new(self.twists.iter().map(|t| t - a).collect())
    }
}

/// A homogeneous matrix between graded free modules, stored by columns:
/// column `c` is the image of source basis vector `c`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    nvars: usize,
    source: GradedFreeModule,
    target: GradedFreeModule,
    cols: Vec<ModuleVector>,
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

impl GradedMap {
    /// Checks that entry `(r, c)` is zero or homogeneous of degree `source[c] - target[r]`.
    pub fn new(
        nvars: usize,
        target: GradedFreeModule,
        source: GradedFreeModule,
        cols: Vec<ModuleVector>,
    ) -> Result<Self> {
        if cols.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!("{} columns for a source of rank {}", cols.len(), source.rank())));
        }
        for (c, col) in cols.iter().enumerate() {
            if col.len() != target.rank() {
                return Err(Error::ShapeMismatch(format!(
                    "column of length {} for a target of rank {}",
                    col.len(),
                    target.rank()
                )));
            }
            for (r, f) in col.iter().enumerate() {
                if f.nvars() != nvars {
                    return Err(Error::RingMismatch { left: nvars, right: f.nvars() });
                }
                if f.is_zero() {
                    continue;
                }
                let want = source.twists[c] - target.twists[r];
                if f.homogeneous_degree().map(|d| d as i64) != Some(want) {
                    return Err(Error::NotHomogeneous(format!("entry ({r}, {c}) = {f} should have degree {want}")));
                }
            }
        }
        Ok(Self { nvars, source, target, cols })
    }

    /// Infers the source twists from the columns; zero columns get degree `target[0]`.
    pub fn from_columns(nvars: usize, target: GradedFreeModule, cols: Vec<ModuleVector>) -> Result<Self> {
        let mut twists = Vec::with_capacity(cols.len());
        for col in &cols {
            if col.len() != target.rank() {
                return Err(Error::ShapeMismatch("column length differs from target rank".into()));
            }
            let d = vector_degree(col, &target.twists)?;
            twists.push(d.unwrap_or_else(|| target.twists.first().copied().unwrap_or(0)));
        }
        Self::new(nvars, target, GradedFreeModule::new(twists), cols)
    }

    /// The `1 × m` matrix of the given generators, target `R`.
    pub fn row(nvars: usize, gens: &[Polynomial]) -> Result<Self> {
        Self::from_columns(nvars, GradedFreeModule::new(vec![0]), gens.iter().map(|g| vec![g.clone()]).collect())
    }

    pub fn zero(nvars: usize, target: GradedFreeModule, source: GradedFreeModule) -> Self {
        let cols = vec![vec![Polynomial::zero(nvars); target.rank()]; source.rank()];
        Self { nvars, source, target, cols }
    }

    pub fn identity(nvars: usize, module: GradedFreeModule) -> Self {
        let n = module.rank();
        let cols = (0..n)
            .map(|c| (0..n).map(|r| if r == c { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }).collect())
            .collect();
        Self { nvars, source: module.clone(), target: module, cols }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.cols[c][r]
    }

    pub fn column(&self, c: usize) -> &ModuleVector {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[ModuleVector] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(Polynomial::is_zero))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("composition of incompatible maps".into()));
        }
        let cols = other.cols.iter().map(|col| self.apply(col)).collect();
        Ok(GradedMap { nvars: self.nvars, source: other.source.clone(), target: self.target.clone(), cols })
    }

    /// Image of a source vector.
    pub fn apply(&self, v: &[Polynomial]) -> ModuleVector {
        let mut out = vec![Polynomial::zero(self.nvars); self.nrows()];
        for (c, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r, f) in self.cols[c].iter().enumerate() {
                if !f.is_zero() {
                    out[r] = &out[r] + &(a * f);
                }
            }
        }
        out
    }

    /// The transpose `G* → F*` between graded duals.
    pub fn transpose(&self) -> GradedMap {
        let cols = (0..self.nrows()).map(|r| (0..self.ncols()).map(|c| self.cols[c][r].clone()).collect()).collect();
        GradedMap { nvars: self.nvars, source: self.target.dual(), target: self.source.dual(), cols }
    }

    /// Same matrix between `F(a)` and `G(a)`.
    pub fn twisted(&self, a: i64) -> GradedMap {
        GradedMap {
            nvars: self.nvars,
            source: self.source.twisted(a),
            target: self.target.twisted(a),
            cols: self.cols.clone(),
        }
    }

    /// Keeps the listed columns.
    pub fn select_columns(&self, keep: &[usize]) -> GradedMap {
        GradedMap {
            nvars: self.nvars,
            source: GradedFreeModule::new(keep.iter().map(|&c| self.source.twists[c]).collect()),
            target: self.target.clone(),
            cols: keep.iter().map(|&c| self.cols[c].clone()).collect(),
        }
    }

    /// Keeps the listed rows.
    pub fn select_rows(&self, keep: &[usize]) -> GradedMap {
        GradedMap {
            nvars: self.nvars,
            source: self.source.clone(),
            target: GradedFreeModule::new(keep.iter().map(|&r| self.target.twists[r]).collect()),
            cols: self.cols.iter().map(|col| keep.iter().map(|&r| col[r].clone()).collect()).collect(),
        }
    }

    /// `[self | other]` with a common target.
    pub fn concat_columns(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.target != other.target {
            return Err(Error::ShapeMismatch("concatenation with different targets".into()));
        }
        let mut twists = self.source.twists.clone();
        twists.extend(other.source.twists.iter().copied());
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(GradedMap { nvars: self.nvars, source: GradedFreeModule::new(twists), target: self.target.clone(), cols })
    }

    pub(crate) fn columns_mut(&mut self) -> &mut Vec<ModuleVector> {
        &mut self.cols
    }

    pub(crate) fn from_parts(
        nvars: usize,
        target: GradedFreeModule,
        source: GradedFreeModule,
        cols: Vec<ModuleVector>,
    ) -> Self {
        debug_assert!(Self::new(nvars, target.clone(), source.clone(), cols.clone()).is_ok());
        Self { nvars, source, target, cols }
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.cols.iter().any(|c| c.iter().any(|f| !f.is_zero() && f.is_constant()))
    }

    /// Matrix of the degree-`d` component `F_d → G_d` in monomial coordinates,
    /// one sparse row per source coordinate.
    pub fn degree_matrix(&self, d: i64) -> (Vec<SparseRow>, usize) {
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut ntarget = 0;
        for (r, &t) in self.target.twists.iter().enumerate() {
            if d - t >= 0 {
                for m in Monomial::all_of_degree(self.nvars, (d - t) as u32) {
                    index.insert((r, m), ntarget);
                    ntarget += 1;
                }
            }
        }
        let mut rows = Vec::new();
        for (c, &s) in self.source.twists.iter().enumerate() {
            if d - s < 0 {
                continue;
            }
            for m in Monomial::all_of_degree(self.nvars, (d - s) as u32) {
                let mut row: Vec<(usize, Rational)> = Vec::new();
                for (r, f) in self.cols[c].iter().enumerate() {
                    for (fm, coef) in f.terms() {
                        row.push((index[&(r, fm.mul(&m))], coef.clone()));
                    }
                }
                row.sort_by_key(|t| t.0);
                rows.push(row);
            }
        }
        (rows, ntarget)
    }

    /// Rank of the degree-`d` component.
    pub fn rank_in_degree(&self, d: i64) -> usize {
        linalg::rank(&self.degree_matrix(d).0)
    }

    /// Kernel of the map, as a map onto a minimal generating set of it.
    pub fn syzygies(&self) -> GradedMap {
        self.syzygies_with(&GbOptions::default())
    }

    /// Same module as [`GradedMap::syzygies`], computed one row at a time:
    /// `ker(r_1..r_k) = K · ker(r_k · K)` with `K = ker(r_1..r_{k-1})`.
    /// Much cheaper than one module Gröbner basis for a few rows with large coefficients,
    /// much slower for the many sparse rows of a resolution differential.
    pub fn kernel_by_rows(&self, opts: &GbOptions) -> GradedMap {
        if self.nrows() <= 1 {
            return self.syzygies_with(opts);
        }
        let mut k = GradedMap::identity(self.nvars, self.source.clone());
        for r in 0..self.nrows() {
            if k.ncols() == 0 {
                break;
            }
            let row = self.select_rows(&[r]).compose(&k).expect("composable");
            if row.is_zero() {
                continue;
            }
            let s = row.syzygies_with(opts);
            k = k.compose(&s).expect("composable");
            if r + 1 < self.nrows() {
                k = minimal_submodule_map(self.nvars, &self.source, k.cols, opts);
            }
        }
        minimal_submodule_map(self.nvars, &self.source, k.cols, opts)
    }

    /// Syzygies from a Gröbner basis of `{(φ(e_c), e_c)}` in `G ⊕ F`, with `G` dominating.
    pub fn syzygies_with(&self, opts: &GbOptions) -> GradedMap {
        let m = self.nrows();
        let n = self.ncols();
        if n == 0 {
            return GradedMap::zero(self.nvars, self.source.clone(), GradedFreeModule::default());
        }
        let mut twists = self.target.twists.clone();
        twists.extend(self.source.twists.iter().copied());
        let gens: Vec<ModuleVector> = (0..n)
            .map(|c| {
                let mut v = self.cols[c].clone();
                v.extend(
                    (0..n).map(|k| if k == c { Polynomial::one(self.nvars) } else { Polynomial::zero(self.nvars) }),
                );
                v
            })
            .collect();
        let order = MonomialOrder::degrevlex(self.nvars);
        let (gb, _) = GroebnerBasis::compute(self.nvars, &twists, &gens, &order, m, opts).expect("homogeneous map");
        let kernel = gb.tail_elements(m);
        minimal_submodule_map(self.nvars, &self.source, kernel, opts)
    }

    /// The same image, generated by a minimal subset of the columns.
    pub fn minimal_columns(&self) -> GradedMap {
        minimal_submodule_map(self.nvars, &self.target, self.cols.clone(), &GbOptions::default())
    }

    /// Whether every column of `other` lies in the image of `self`.
    pub fn image_contains(&self, other: &GradedMap) -> bool {
        if other.ncols() == 0 {
            return true;
        }
        if self.ncols() == 0 {
            return other.is_zero();
        }
        let order = MonomialOrder::degrevlex(self.nvars);
        let (gb, _) =
            GroebnerBasis::compute(self.nvars, &self.target.twists, &self.cols, &order, 0, &GbOptions::default())
                .expect("homogeneous map");
        other.cols.iter().all(|c| gb.contains(c))
    }

    /// Text dump: twist headers followed by one bracketed row per target basis vector.
    pub fn dump(&self) -> String {
        let tw = |m: &GradedFreeModule| m.twists.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = format!("source: {}\ntarget: {}\n", tw(&self.source), tw(&self.target));
        for r in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols()).map(|c| self.cols[c][r].to_string()).collect();
            s.push_str(&format!("[{}]\n", row.join(", ")));
        }
        s
    }
}

/// Map onto a minimal generating subset of the given homogeneous vectors of `target`.
pub(crate) fn minimal_submodule_map(
    nvars: usize,
    target: &GradedFreeModule,
    vectors: Vec<ModuleVector>,
    opts: &GbOptions,
) -> GradedMap {
    let vectors: Vec<ModuleVector> = vectors.into_iter().filter(|v| v.iter().any(|f| !f.is_zero())).collect();
    if vectors.is_empty() {
        return GradedMap::zero(nvars, target.clone(), GradedFreeModule::default());
    }
    let order = MonomialOrder::degrevlex(nvars);
    let (_, flags) = GroebnerBasis::compute(nvars, &target.twists, &vectors, &order, 0, opts).expect("homogeneous");
    let mut kept: Vec<(i64, ModuleVector)> = vectors
        .into_iter()
        .zip(flags)
        .filter(|(_, k)| *k)
        .map(|(v, _)| {
            let d = vector_degree(&v, &target.twists).unwrap().unwrap();
            (d, crate::groebner::primitive_vector(&v))
        })
        .collect();
    kept.sort_by_key(|(d, _)| *d);
    let mut twists = Vec::with_capacity(kept.len());
    let mut cols = Vec::with_capacity(kept.len());
    for block in kept.chunk_by(|a, b| a.0 == b.0) {
        for v in echelonize(block.iter().map(|(_, v)| v.clone()).collect()) {
            twists.push(block[0].0);
            cols.push(crate::groebner::primitive_vector(&v));
        }
    }
    GradedMap::from_parts(nvars, target.clone(), GradedFreeModule::new(twists), cols)
}

/// First term in position-over-term order: lowest component, then its leading monomial.
fn lead(v: &[Polynomial]) -> Option<(usize, Monomial, Rational)> {
    v.iter().enumerate().find(|(_, f)| !f.is_zero()).map(|(k, f)| {
        let (m, c) = f.leading_term().unwrap();
        (k, *m, c.clone())
    })
}

/// Row echelon form of equal-degree vectors by leading term (no back-substitution),
/// so that a fixed generating set comes out in a canonical shape.
fn echelonize(vectors: Vec<ModuleVector>) -> Vec<ModuleVector> {
    let mut out: Vec<ModuleVector> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        while let Some((k, m, c)) = lead(&v) {
            let Some(w) = out.iter().find(|w| lead(w).is_some_and(|(k2, m2, _)| k2 == k && m2 == m)) else {
                break;
            };
            let cw = lead(w).unwrap().2;
            let s = c / cw;
            v = v.iter().zip(w).map(|(a, b)| a - &b.scale(&s)).collect();
        }
        if lead(&v).is_some() {
            out.push(v);
        }
    }
    out
}
