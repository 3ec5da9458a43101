//! Invariant factors of large sparse integer matrices: greedy elimination on
//! unit pivots, then a dense Smith form of whatever is left.

use std::collections::{HashMap, HashSet};

use crate::fgab::{invariant_factors, Int, IntMatrix};

/// Column-major sparse matrix with small entries.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Adds `v` at `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        debug_assert!(r < self.nrows);
        let col = &mut self.cols[c];
        match col.iter_mut().find(|(i, _)| *i == r) {
            Some(e) => e.1 += v,
            None => col.push((r, v)),
        }
        col.retain(|&(_, x)| x != 0);
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows, self.ncols());
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m[(r, c)] += Int::from(v);
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.ncols(), self.nrows);
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                t.cols[r].push((c, v));
            }
        }
        t
    }

    /// `self · v` for a dense integer vector.
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::from(0); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            if v[c] == Int::from(0) {
                continue;
            }
            for &(r, x) in col {
                out[r] += &v[c] * x;
            }
        }
        out
    }

    /// `self · other`, exact.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "shape mismatch");
        let mut out = SparseMatrix::new(self.nrows, other.ncols());
        for (c, col) in other.cols.iter().enumerate() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, b) in col {
                for &(r, a) in &self.cols[k] {
                    *acc.entry(r).or_default() += a * b;
                }
            }
            let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, x)| x != 0).collect();
            v.sort_unstable();
            out.cols[c] = v;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// Rank and the invariant factors larger than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseInvariants {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

struct Work {
    cols: Vec<HashMap<usize, i64>>,
    rows: Vec<HashSet<usize>>,
    col_alive: Vec<bool>,
    row_alive: Vec<bool>,
}

impl Work {
    fn cost(&self, r: usize, c: usize) -> usize {
        (self.rows[r].len() - 1) * (self.cols[c].len() - 1)
    }

    /// Clears row `r` from every other column using the unit at `(r, c)`,
    /// then drops row `r` and column `c`. `None` on overflow.
    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let u = self.cols[c][&r];
        let pivot_col: Vec<(usize, i64)> = self.cols[c].iter().map(|(&i, &v)| (i, v)).collect();
        let others: Vec<usize> = self.rows[r].iter().copied().filter(|&j| j != c).collect();
        for j in others {
            let a = self.cols[j][&r];
            let q = a.checked_mul(u)?;
            for &(i, v) in &pivot_col {
                let delta = q.checked_mul(v)?;
                let e = self.cols[j].entry(i).or_insert(0);
                let was_zero = *e == 0;
                *e = e.checked_sub(delta)?;
                if *e == 0 {
                    self.cols[j].remove(&i);
                    self.rows[i].remove(&j);
                } else if was_zero {
                    self.rows[i].insert(j);
                }
            }
        }
        for &(i, _) in &pivot_col {
            self.rows[i].remove(&c);
        }
        self.cols[c].clear();
        self.col_alive[c] = false;
        self.row_alive[r] = false;
        Some(())
    }

    fn remainder(&self) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows.len()).filter(|&r| self.row_alive[r] && !self.rows[r].is_empty()).collect();
        let cols: Vec<usize> = (0..self.cols.len()).filter(|&c| self.col_alive[c] && !self.cols[c].is_empty()).collect();
        let rix: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (k, &c) in cols.iter().enumerate() {
            for (&r, &v) in &self.cols[c] {
                m[(rix[&r], k)] = Int::from(v);
            }
        }
        m
    }
}

pub fn sparse_invariants(m: &SparseMatrix) -> SparseInvariants {
    let mut w = Work {
        cols: vec![HashMap::new(); m.ncols()],
        rows: vec![HashSet::new(); m.nrows],
        col_alive: vec![true; m.ncols()],
        row_alive: vec![true; m.nrows],
    };
    for (c, col) in m.cols.iter().enumerate() {
        for &(r, v) in col {
            if v != 0 {
                *w.cols[c].entry(r).or_insert(0) += v;
            }
        }
        w.cols[c].retain(|_, v| *v != 0);
        for &r in w.cols[c].keys() {
            w.rows[r].insert(c);
        }
    }
    let mut units = 0usize;
    loop {
        let mut cands: Vec<(usize, usize, usize)> = Vec::new();
        for c in 0..w.cols.len() {
            if !w.col_alive[c] {
                continue;
            }
            // cheapest unit in this column
            let best = w.cols[c]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .map(|(&r, _)| (w.cost(r, c), r))
                .min();
            if let Some((cost, r)) = best {
                cands.push((cost, r, c));
            }
        }
        if cands.is_empty() {
            break;
        }
        cands.sort_unstable();
        let mut progressed = false;
        for (cost, r, c) in cands {
            if !w.row_alive[r] || !w.col_alive[c] {
                continue;
            }
            match w.cols[c].get(&r) {
                Some(v) if v.abs() == 1 => {}
                _ => continue,
            }
            let now = w.cost(r, c);
            if progressed && now > 2 * cost + 8 {
                continue;
            }
            if w.pivot(r, c).is_none() {
                // entries outgrew i64: the work state is unusable, go dense
                let d = invariant_factors(&m.to_dense());
                let rank = d.len();
                return SparseInvariants { rank, torsion: d.into_iter().filter(|x| x != &Int::from(1)).collect() };
            }
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let rest = invariant_factors(&w.remainder());
    let rank = units + rest.len();
    let torsion = rest.into_iter().filter(|d| d != &Int::from(1)).collect();
    SparseInvariants { rank, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.add(r, c, v);
                }
            }
        }
        m
    }

    #[test]
    fn agrees_with_dense() {
        let m = from_dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = sparse_invariants(&m);
        let d = invariant_factors(&m.to_dense());
        assert_eq!(s.rank, d.len());
        assert_eq!(s.torsion, d.into_iter().filter(|x| x != &Int::from(1)).collect::<Vec<_>>());
    }

    #[test]
    fn unit_pivots_then_torsion() {
        let m = from_dense(&[&[1, 1, 0], &[0, 3, 0], &[1, 0, 5]]);
        let s = sparse_invariants(&m);
        let d = invariant_factors(&m.to_dense());
        assert_eq!(s.rank, 3);
        assert_eq!(s.torsion, d.into_iter().filter(|x| x != &Int::from(1)).collect::<Vec<_>>());
    }

    #[test]
    fn transpose_and_product() {
        let a = from_dense(&[&[1, 2], &[0, 3]]);
        assert_eq!(a.transpose().to_dense(), a.to_dense().transpose());
        assert_eq!(a.mul(&a).to_dense(), a.to_dense().mul(&a.to_dense()));
    }
}
