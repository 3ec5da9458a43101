//! Smith normal form with unimodular transforms.

use std::cmp::{min, Ordering};


use super::coeff::{Coeff, Overflow};
use super::matrix::IntMatrix;
use super::Int;

/// Result of a Smith decomposition `U·M·V = D`.
///
/// `u_inv` is the inverse of `u`, kept because cokernel generators are read
/// off its columns.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d₁ | d₂ | … | d_rank`, all positive.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

#[derive(Clone, Copy)]
struct Track {
    u: bool,
    u_inv: bool,
    v: bool,
}

struct Engine<T> {
    a: Vec<Vec<T>>,
    m: usize,
    n: usize,
    u: Option<Vec<Vec<T>>>,
    u_inv: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

fn identity<T: Coeff>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

fn to_int_matrix<T: Coeff>(rows: &[Vec<T>], r: usize, c: usize) -> IntMatrix {
    IntMatrix::from_fn(r, c, |i, j| rows[i][j].to_big())
}

impl<T: Coeff> Engine<T> {
    fn new(m: &IntMatrix, track: Track) -> Result<Self, Overflow> {
        let (r, c) = m.shape();
        let mut a = Vec::with_capacity(r);
        for i in 0..r {
            let mut row = Vec::with_capacity(c);
            for j in 0..c {
                row.push(T::from_big(&m[(i, j)])?);
            }
            a.push(row);
        }
        Ok(Engine {
            a,
            m: r,
            n: c,
            u: track.u.then(|| identity(r)),
            u_inv: track.u_inv.then(|| identity(r)),
            v: track.v.then(|| identity(c)),
        })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        for x in self.a[i].iter_mut() {
            *x = x.neg()?;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = x.neg()?;
            }
        }
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                row[i] = row[i].neg()?;
            }
        }
        Ok(())
    }

    /// row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        if q.is_zero() {
            return Ok(());
        }
        let (src, dst) = two_rows(&mut self.a, j, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d = d.sub_mul(q, s)?;
            }
        }
        if let Some(u) = &mut self.u {
            let (src, dst) = two_rows(u, j, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d = d.sub_mul(q, s)?;
                }
            }
        }
        // inverse: col_j += q * col_i
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                if !row[i].is_zero() {
                    row[j] = row[j].add(&q.mul(&row[i])?)?;
                }
            }
        }
        Ok(())
    }

    /// col_i -= q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        if q.is_zero() {
            return Ok(());
        }
        for row in self.a.iter_mut() {
            if !row[j].is_zero() {
                row[i] = row[i].sub_mul(q, &row[j])?;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    row[i] = row[i].sub_mul(q, &row[j])?;
                }
            }
        }
        Ok(())
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs_cmp(&self.a[bi][bj]) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                    if x.is_unit() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Result<usize, Overflow> {
        let k = min(self.m, self.n);
        let mut t = 0;
        while t < k {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // clear column t below the pivot
                let mut dirty = false;
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].quot(&self.a[t][t])?;
                    self.row_axpy(i, t, &q)?;
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].quot(&self.a[t][t])?;
                    self.col_axpy(j, t, &q)?;
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // move the smallest remainder of row/column t into the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs_cmp(&self.a[best.0][best.1]) == Ordering::Less {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs_cmp(&self.a[best.0][best.1]) == Ordering::Less {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility: fold an offending row into row t
                let p = self.a[t][t].clone();
                let offender = (t + 1..self.m)
                    .find(|&i| (t + 1..self.n).any(|j| !p.divides(&self.a[i][j])));
                match offender {
                    Some(i) => {
                        let minus_one = T::one().neg()?;
                        self.row_axpy(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Ok(t)
    }

    fn finish(self, rank: usize) -> SmithForm {
        let (m, n) = (self.m, self.n);
        let d = to_int_matrix(&self.a, m, n);
        let empty = IntMatrix::zeros(0, 0);
        SmithForm {
            u: self.u.as_deref().map_or(empty.clone(), |x| to_int_matrix(x, m, m)),
            u_inv: self.u_inv.as_deref().map_or(empty.clone(), |x| to_int_matrix(x, m, m)),
            v: self.v.as_deref().map_or(empty, |x| to_int_matrix(x, n, n)),
            d,
            rank,
        }
    }
}

fn two_rows<T>(rows: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    debug_assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

fn decompose(m: &IntMatrix, track: Track) -> SmithForm {
    if let Ok(mut e) = Engine::<i64>::new(m, track) {
        if let Ok(rank) = e.run() {
            return e.finish(rank);
        }
    }
    log::debug!("smith form of {}x{} replayed with big integers", m.rows(), m.cols());
    let mut e = Engine::<Int>::new(m, track).expect("big integers never overflow");
    let rank = e.run().expect("big integers never overflow");
    e.finish(rank)
}

/// Full decomposition `U·M·V = D` with `U⁻¹` as well.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    decompose(m, Track { u: true, u_inv: true, v: true })
}

/// Decomposition tracking only the column transform `V`, enough for kernels.
pub(crate) fn smith_columns_only(m: &IntMatrix) -> SmithForm {
    decompose(m, Track { u: false, u_inv: false, v: true })
}

/// Decomposition tracking `U` and `U⁻¹` only, enough for cokernels.
pub(crate) fn smith_rows_only(m: &IntMatrix) -> SmithForm {
    decompose(m, Track { u: true, u_inv: true, v: false })
}

/// Nonzero invariant factors of `m` without any transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    decompose(m, Track { u: false, u_inv: false, v: false }).diagonal()
}

pub fn rank(m: &IntMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    invariant_factors(m).len()
}

/// Diagonal entries from an already diagonal matrix that may violate divisibility.
pub(crate) fn normalize_diagonal(entries: &[Int]) -> Vec<Int> {
    let n = entries.len();
    let m = IntMatrix::diagonal(n, n, entries);
    invariant_factors(&m)
}

#[cfg(test)]
mod tests {
    use super::*;


    fn check(m: &IntMatrix) -> SmithForm {
        let sf = smith_normal_form(m);
        assert_eq!(sf.u.mul(m).mul(&sf.v), sf.d);
        assert_eq!(sf.u.mul(&sf.u_inv), IntMatrix::identity(m.rows()));
        assert!(sf.d.is_diagonal());
        let diag = sf.diagonal();
        for w in diag.windows(2) {
            assert!(<Int as Coeff>::divides(&w[0], &w[1]));
        }
        sf
    }

    #[test]
    fn two_by_two() {
        let sf = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(sf.diagonal(), vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntMatrix::identity(4);
        let sf = check(&id);
        assert_eq!(sf.d, id);
        assert_eq!(sf.u, id);
        assert_eq!(sf.v, id);
    }

    #[test]
    fn zero_one_by_one() {
        let sf = check(&IntMatrix::from_rows(&[[0]]));
        assert_eq!(sf.d, IntMatrix::from_rows(&[[0]]));
        assert_eq!(sf.rank, 0);
    }

    #[test]
    fn empty_shapes() {
        let sf = check(&IntMatrix::zeros(0, 3));
        assert_eq!(sf.rank, 0);
        let sf = check(&IntMatrix::zeros(2, 0));
        assert_eq!(sf.u.rows(), 2);
    }

    #[test]
    fn divisibility_fix() {
        let sf = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(sf.diagonal(), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn big_entries_fall_back() {
        let big = i64::MAX / 3;
        let sf = check(&IntMatrix::from_rows(&[[big, big - 1], [big - 7, big + 5]]));
        assert_eq!(sf.rank, 2);
    }
}
