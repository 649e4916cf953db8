use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::groebner::{GbOptions, Ideal};
use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};

use super::map::{GradedFreeModule, GradedMap};

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    j: i64,
    b: u64,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    betti: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn from_modules(modules: &[GradedFreeModule]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, m) in modules.iter().enumerate() {
            for &j in &m.twists {
                *entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        Self { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// `Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, b)| b).sum()
    }

    /// `max (j - i)` over nonzero entries.
    pub fn regularity(&self) -> i64 {
        self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let j = BettiJson { betti: self.entries().map(|(i, j, b)| BettiEntry { i, j, b }).collect() };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: BettiJson = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for e in j.betti {
            if e.b > 0 {
                entries.insert((e.i, e.j), e.b);
            }
        }
        Ok(Self { entries })
    }
}

/// Rows indexed by `j - i`, columns by `i`, as in the usual Betti diagram.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero)");
        }
        let imax = self.entries.keys().map(|k| k.0).max().unwrap();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let (lo, hi) = (rows[0], *rows.last().unwrap());
        write!(f, "{:>6}", "")?;
        for i in 0..=imax {
            write!(f, "{i:>6}")?;
        }
        writeln!(f)?;
        for s in lo..=hi {
            write!(f, "{:>5}:", s)?;
            for i in 0..=imax {
                match self.get(i, s + i as i64) {
                    0 => write!(f, "{:>6}", ".")?,
                    b => write!(f, "{b:>6}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A graded free resolution `... → F_2 → F_1 → F_0`, optionally with an
/// augmentation `φ_0 : F_0 → R` when resolving an ideal.
///
/// `map(i)` is `φ_i : F_i → F_{i-1}` for `i ≥ 1`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    nvars: usize,
    augmentation: Option<GradedMap>,
    f0: GradedFreeModule,
    maps: Vec<GradedMap>,
}

impl FreeResolution {
    /// Minimal resolution of `I` as a module, starting from its minimal generators.
    pub fn of_ideal(ideal: &Ideal) -> Self {
        Self::of_ideal_with(ideal, &GbOptions::default())
    }

    pub fn of_ideal_with(ideal: &Ideal, opts: &GbOptions) -> Self {
        let n = ideal.nvars();
        let gens = ideal.minimal_generators();
        let mut sorted: Vec<Polynomial> = gens;
        sorted.sort_by_key(|g| g.degree().unwrap_or(0));
        let phi0 = GradedMap::row(n, &sorted).expect("homogeneous generators");
        let f0 = phi0.source().clone();
        let mut res = Self { nvars: n, augmentation: Some(phi0.clone()), f0, maps: Vec::new() };
        let mut last = phi0;
        loop {
            let s = last.syzygies_with(opts);
            if s.ncols() == 0 {
                break;
            }
            res.maps.push(s.clone());
            last = s;
        }
        res
    }

    /// Resolution of `coker(presentation)`, continuing the given presentation by syzygies.
    /// Minimal when the presentation is minimal.
    pub fn of_presentation(presentation: &GradedMap, opts: &GbOptions) -> Self {
        let n = presentation.nvars();
        let mut res = Self { nvars: n, augmentation: None, f0: presentation.target().clone(), maps: Vec::new() };
        if presentation.ncols() == 0 {
            return res;
        }
        res.maps.push(presentation.clone());
        let mut last = presentation.clone();
        loop {
            let s = last.syzygies_with(opts);
            if s.ncols() == 0 {
                break;
            }
            res.maps.push(s.clone());
            last = s;
        }
        res
    }

    /// Assembles a resolution from explicit maps (`maps[i] : F_{i+1} → F_i`).
    pub fn from_maps(
        nvars: usize,
        augmentation: Option<GradedMap>,
        f0: GradedFreeModule,
        maps: Vec<GradedMap>,
    ) -> Result<Self> {
        if let Some(a) = &augmentation {
            if *a.source() != f0 {
                return Err(Error::ShapeMismatch("augmentation source differs from F_0".into()));
            }
        }
        let mut prev = &f0;
        for m in &maps {
            if m.target() != prev {
                return Err(Error::ShapeMismatch("consecutive maps do not match".into()));
            }
            prev = m.source();
        }
        Ok(Self { nvars, augmentation, f0, maps })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn module(&self, i: usize) -> GradedFreeModule {
        match i {
            0 => self.f0.clone(),
            _ => self.maps.get(i - 1).map(|m| m.source().clone()).unwrap_or_default(),
        }
    }

    pub fn modules(&self) -> Vec<GradedFreeModule> {
        (0..=self.length()).map(|i| self.module(i)).collect()
    }

    pub fn augmentation(&self) -> Option<&GradedMap> {
        self.augmentation.as_ref()
    }

    /// `φ_i`; `φ_0` is the augmentation.
    pub fn phi(&self, i: usize) -> Option<&GradedMap> {
        match i {
            0 => self.augmentation.as_ref(),
            _ => self.maps.get(i - 1),
        }
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| !m.has_unit_entry())
    }

    pub fn betti(&self) -> Result<BettiTable> {
        if !self.is_minimal() {
            return Err(Error::NotMinimal);
        }
        Ok(BettiTable::from_modules(&self.modules()))
    }

    /// Basis of `Tor_p ⊗ k` in degree `m`: unit vectors of `F_p` at the degree-`m` generators.
    pub fn tor_basis(&self, p: usize, m: i64) -> Vec<Vec<Rational>> {
        if p > self.length() {
            return Vec::new();
        }
        let f = self.module(p);
        (0..f.rank())
            .filter(|&k| f.twists[k] == m)
            .map(|k| {
                let mut v = vec![Rational::zero(); f.rank()];
                v[k] = Rational::from_integer(1.into());
                v
            })
            .collect()
    }

    /// `φ_i ∘ φ_{i+1} = 0` for all `i` (including the augmentation).
    pub fn is_complex(&self) -> bool {
        let mut chain: Vec<&GradedMap> = Vec::new();
        if let Some(a) = &self.augmentation {
            chain.push(a);
        }
        chain.extend(self.maps.iter());
        chain.windows(2).all(|w| w[0].compose(w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// Exactness in degree `d` by ranks: at each `F_i` (and `F_0` when augmented),
    /// `dim (F_i)_d = rank (φ_i)_d + rank (φ_{i+1})_d`.
    pub fn is_exact_in_degree(&self, d: i64) -> bool {
        let n = self.nvars;
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.rank_in_degree(d)).collect();
        let start = if self.augmentation.is_some() { 0 } else { 1 };
        for i in start..=self.length() {
            let incoming = if i >= 1 { ranks[i - 1] } else { self.augmentation.as_ref().unwrap().rank_in_degree(d) };
            let outgoing = ranks.get(i).copied().unwrap_or(0);
            if self.module(i).dim(n, d) as usize != incoming + outgoing {
                return false;
            }
        }
        true
    }

    /// Cancels unit entries until none remain; the result resolves the same module.
    pub fn minimalize(mut self) -> Self {
        let offset = usize::from(self.augmentation.is_some());
        let mut chain: Vec<GradedMap> = Vec::new();
        if let Some(a) = self.augmentation.take() {
            chain.push(a);
        }
        chain.append(&mut self.maps);
        for k in offset..chain.len() {
            while let Some((r, c)) = find_unit(&chain[k]) {
                cancel_unit(&mut chain, k, r, c);
            }
        }
        let mut maps = chain;
        let augmentation = if offset == 1 { Some(maps.remove(0)) } else { None };
        let f0 = match (&augmentation, maps.first()) {
            (Some(a), _) => a.source().clone(),
            (None, Some(m)) => m.target().clone(),
            (None, None) => self.f0.clone(),
        };
        while maps.last().is_some_and(|m| m.ncols() == 0) {
            maps.pop();
        }
        Self { nvars: self.nvars, augmentation, f0, maps }
    }

    /// Maps in the dump format, `φ_1` first.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        if let Some(a) = &self.augmentation {
            s.push_str("map 0\n");
            s.push_str(&a.dump());
        }
        for (i, m) in self.maps.iter().enumerate() {
            s.push_str(&format!("map {}\n", i + 1));
            s.push_str(&m.dump());
        }
        s
    }
}

fn find_unit(m: &GradedMap) -> Option<(usize, usize)> {
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let f = m.entry(r, c);
            if !f.is_zero() && f.is_constant() {
                return Some((r, c));
            }
        }
    }
    None
}

/// Splits off the summand `R e_c ≅ R f_r` of `chain[k]` at the unit entry `(r, c)`.
fn cancel_unit(chain: &mut [GradedMap], k: usize, r: usize, c: usize) {
    let u = chain[k].entry(r, c).constant_term();
    let ncols = chain[k].ncols();
    let nrows = chain[k].nrows();
    // Column operations on φ clear row r; ψ's row c absorbs them.
    let lambdas: Vec<(usize, Polynomial)> = (0..ncols)
        .filter(|&j| j != c && !chain[k].entry(r, j).is_zero())
        .map(|j| (j, chain[k].entry(r, j).scale(&u.recip())))
        .collect();
    {
        let col_c = chain[k].column(c).clone();
        let cols = chain[k].columns_mut();
        for (j, l) in &lambdas {
            for (row, f) in col_c.iter().enumerate() {
                if !f.is_zero() {
                    cols[*j][row] = &cols[*j][row] - &(l * f);
                }
            }
        }
    }
    if k + 1 < chain.len() {
        let cols = chain[k + 1].columns_mut();
        for col in cols.iter_mut() {
            let mut add = Polynomial::zero(col[c].nvars());
            for (j, l) in &lambdas {
                if !col[*j].is_zero() {
                    add = &add + &(l * &col[*j]);
                }
            }
            col[c] = &col[c] + &add;
        }
    }
    // Row operations on φ clear column c; χ's column r absorbs them.
    let mus: Vec<(usize, Polynomial)> = (0..nrows)
        .filter(|&i| i != r && !chain[k].entry(i, c).is_zero())
        .map(|i| (i, chain[k].entry(i, c).scale(&u.recip())))
        .collect();
    {
        let cols = chain[k].columns_mut();
        for col in cols.iter_mut() {
            let fr = col[r].clone();
            if fr.is_zero() {
                continue;
            }
            for (i, m) in &mus {
                col[*i] = &col[*i] - &(m * &fr);
            }
        }
    }
    if k >= 1 {
        let cols = chain[k - 1].columns_mut();
        let mut add: Vec<Polynomial> = cols[r].iter().map(|f| Polynomial::zero(f.nvars())).collect();
        for (i, m) in &mus {
            for (row, f) in cols[*i].iter().enumerate() {
                if !f.is_zero() {
                    add[row] = &add[row] + &(m * f);
                }
            }
        }
        for (row, a) in add.into_iter().enumerate() {
            cols[r][row] = &cols[r][row] + &a;
        }
    }
    // Delete the split summand.
    let keep_cols: Vec<usize> = (0..ncols).filter(|&j| j != c).collect();
    let keep_rows: Vec<usize> = (0..nrows).filter(|&i| i != r).collect();
    chain[k] = chain[k].select_columns(&keep_cols).select_rows(&keep_rows);
    if k + 1 < chain.len() {
        debug_assert!(chain[k + 1].columns().iter().all(|col| col[c].is_zero()));
        chain[k + 1] = chain[k + 1].select_rows(&keep_cols);
    }
    if k >= 1 {
        let keep: Vec<usize> = (0..chain[k - 1].ncols()).filter(|&j| j != r).collect();
        chain[k - 1] = chain[k - 1].select_columns(&keep);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::new(n, gens.iter().map(|g| Polynomial::parse(g, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn three_points() {
        let r = FreeResolution::of_ideal(&ideal(3, &["x0*x1", "x0*x2", "x1*x2"]));
        let b = r.betti().unwrap();
        assert_eq!(b.get(0, 2), 3);
        assert_eq!(b.get(1, 3), 2);
        assert_eq!(r.length(), 1);
        assert!(r.is_complex());
        for d in 0..6 {
            assert!(r.is_exact_in_degree(d), "degree {d}");
        }
    }

    #[test]
    fn principal() {
        let r = FreeResolution::of_ideal(&ideal(4, &["x0^4 + x1*x2*x3^2"]));
        let b = r.betti().unwrap();
        assert_eq!(b.entries().collect::<Vec<_>>(), vec![(0, 4, 1)]);
    }

    #[test]
    fn fat_point() {
        let r = FreeResolution::of_ideal(&ideal(4, &["x0^2", "x1^2", "x0*x2", "x1*x2", "x2^2 - x0*x1"]));
        let b = r.betti().unwrap();
        assert_eq!(b.get(0, 2), 5);
        assert_eq!(b.get(1, 3), 5);
        assert!(r.is_complex());
        assert!(r.length() <= 4);
    }

    #[test]
    fn koszul_on_four_variables() {
        let r = FreeResolution::of_ideal(&Ideal::maximal(4));
        let b = r.betti().unwrap();
        assert_eq!((b.get(0, 1), b.get(1, 2), b.get(2, 3), b.get(3, 4)), (4, 6, 4, 1));
    }

    #[test]
    fn minimalize_cancels_a_trivial_summand() {
        // (x0^2, x0^2, x0*x1) with the repeated generator left in.
        let n = 2;
        let p = |s: &str| Polynomial::parse(s, n).unwrap();
        let aug = GradedMap::row(n, &[p("x0^2"), p("x0^2"), p("x0*x1")]).unwrap();
        let f0 = aug.source().clone();
        // Kernel generators: e0 - e1 (unit entries), x1 e0 - x0 e2.
        let phi1 = GradedMap::from_columns(
            n,
            f0.clone(),
            vec![vec![p("1"), p("-1"), p("0")], vec![p("x1"), p("0"), p("-x0")]],
        )
        .unwrap();
        let res = FreeResolution::from_maps(n, Some(aug), f0, vec![phi1]).unwrap();
        assert!(!res.is_minimal());
        assert!(res.is_complex());
        let m = res.minimalize();
        assert!(m.is_minimal());
        assert!(m.is_complex());
        let b = m.betti().unwrap();
        assert_eq!((b.get(0, 2), b.get(1, 3)), (2, 1));
        for d in 0..5 {
            assert!(m.is_exact_in_degree(d));
        }
    }

    #[test]
    fn betti_json_round_trip() {
        let r = FreeResolution::of_ideal(&ideal(3, &["x0*x1", "x0*x2", "x1*x2"]));
        let b = r.betti().unwrap();
        let j = b.to_json();
        assert_eq!(j, r#"{"betti":[{"i":0,"j":2,"b":3},{"i":1,"j":3,"b":2}]}"#);
        assert_eq!(BettiTable::from_json(&j).unwrap(), b);
    }
}
