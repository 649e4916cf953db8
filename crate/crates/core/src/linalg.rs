//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Sparse row: `(column, nonzero value)` sorted by column.
pub type SparseRow = Vec<(usize, Rational)>;

pub fn sparse_from_dense(row: &[Rational]) -> SparseRow {
    row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn dense_from_sparse(row: &SparseRow, ncols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ncols];
    for (i, c) in row {
        out[*i] = c.clone();
    }
    out
}

/// `a - c * b`.
fn axpy(a: &SparseRow, c: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built incrementally; pivot rows are normalized to leading coefficient one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces the leading entry until it is not a pivot column.
    fn reduce_lead(&self, mut row: SparseRow) -> SparseRow {
        while let Some((col, c)) = row.first().cloned() {
            match self.pivots.get(&col) {
                Some(p) => row = axpy(&row, &c, p),
                None => break,
            }
        }
        row
    }

    /// Removes every pivot column from `row`.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        Self::reduce_with(&self.pivots, row)
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce_lead(row);
        match row.first() {
            None => false,
            Some((col, c)) => {
                let inv = c.recip();
                let col = *col;
                let row = if inv.is_one() { row } else { row.into_iter().map(|(i, v)| (i, v * &inv)).collect() };
                self.pivots.insert(col, row);
                true
            }
        }
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce_lead(row.clone()).is_empty()
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn into_rref(self) -> Vec<(usize, SparseRow)> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows = self.pivots;
        for &col in cols.iter().rev() {
            let row = rows.remove(&col).unwrap();
            let mut reduced = vec![row[0].clone()];
            reduced.extend(Self::reduce_with(&rows, row[1..].to_vec()));
            rows.insert(col, reduced);
        }
        rows.into_iter().collect()
    }

    fn reduce_with(rows: &BTreeMap<usize, SparseRow>, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.len() {
            match rows.get(&row[k].0) {
                Some(p) => {
                    let c = row[k].1.clone();
                    row = axpy(&row, &c, p);
                }
                None => k += 1,
            }
        }
        row
    }
}

pub fn rank(rows: &[SparseRow]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    rank(&rows.iter().map(|r| sparse_from_dense(r)).collect::<Vec<_>>())
}

/// Basis of `{v : A v = 0}` for the matrix with the given rows and `ncols` columns.
pub fn nullspace(rows: &[SparseRow], ncols: usize) -> Vec<SparseRow> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    let rref = e.into_rref();
    let pivot_cols: Vec<usize> = rref.iter().map(|(c, _)| *c).collect();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v: Vec<(usize, Rational)> = vec![(free, Rational::one())];
        for (pc, row) in &rref {
            if let Ok(k) = row.binary_search_by_key(&free, |t| t.0) {
                v.push((*pc, -row[k].1.clone()));
            }
        }
        v.sort_by_key(|t| t.0);
        out.push(v);
    }
    out
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[SparseRow], b: &[SparseRow]) -> bool {
    let mut ea = Echelon::new();
    for r in a {
        ea.insert(r.clone());
    }
    let mut eb = Echelon::new();
    for r in b {
        eb.insert(r.clone());
    }
    ea.rank() == eb.rank() && b.iter().all(|r| ea.contains(r)) && a.iter().all(|r| eb.contains(r))
}

/// Dimension of `span(a) ∩ span(b)`.
pub fn intersection_dim(a: &[SparseRow], b: &[SparseRow]) -> usize {
    let ra = rank(a);
    let rb = rank(b);
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    ra + rb - rank(&all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn row(v: &[i64]) -> SparseRow {
        sparse_from_dense(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        let v = dense_from_sparse(&ns[0], 3);
        for r in &rows {
            let d = dense_from_sparse(r, 3);
            let dot: Rational = d.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn spans() {
        let a = vec![row(&[1, 0, 1]), row(&[0, 1, 0])];
        let b = vec![row(&[1, 1, 1]), row(&[1, -1, 1])];
        assert!(same_span(&a, &b));
        assert!(!same_span(&a, &[row(&[0, 0, 1])]));
        assert_eq!(intersection_dim(&a, &[row(&[1, 2, 1]), row(&[0, 0, 1])]), 1);
    }

    #[test]
    fn empty_matrix_nullspace_is_everything() {
        assert_eq!(nullspace(&[], 4).len(), 4);
    }
}
