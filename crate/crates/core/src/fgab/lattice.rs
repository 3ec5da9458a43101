//! Integer lattices given by generator columns: Hermite form, membership,
//! solving and kernels.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_columns_only, smith_normal_form};
use super::Int;

/// Column span of an integer matrix, stored as the rows of its row-style
/// Hermite form (each row is one canonical generator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<Int>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_generators(gens: &IntMatrix) -> Self {
        let dim = gens.rows();
        let rows: Vec<Vec<Int>> = (0..gens.cols()).map(|j| gens.column(j)).collect();
        let (basis, pivots) = hermite_rows(rows, dim);
        Lattice { dim, basis, pivots }
    }

    pub fn from_vectors(dim: usize, vecs: &[Vec<Int>]) -> Self {
        let (basis, pivots) = hermite_rows(vecs.to_vec(), dim);
        Lattice { dim, basis, pivots }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(&IntMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis vectors (Hermite rows).
    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    /// Canonical representative of `v` modulo the lattice. Coordinates at
    /// pivot positions land in `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let q = v[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &q * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Self::from_vectors(self.dim, &vecs)
    }
}

/// Row Hermite normal form: echelon rows with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
fn hermite_rows(mut rows: Vec<Vec<Int>>, dim: usize) -> (Vec<Vec<Int>>, Vec<usize>) {
    for r in &rows {
        assert_eq!(r.len(), dim, "generator length mismatch");
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..dim {
        if top == rows.len() {
            break;
        }
        // gcd-combine every row below `top` into row `top` at column c
        let Some(first) = (top..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(top, first);
        for i in top + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let a = rows[top][c].clone();
            let b = rows[i][c].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_top: Vec<Int> =
                rows[top].iter().zip(&rows[i]).map(|(x, y)| &s * x + &t * y).collect();
            let new_i: Vec<Int> =
                rows[top].iter().zip(&rows[i]).map(|(x, y)| &ag * y - &bg * x).collect();
            rows[top] = new_top;
            rows[i] = new_i;
        }
        if rows[top][c].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -x.clone();
            }
        }
        let p = rows[top][c].clone();
        for i in 0..top {
            let q = rows[i][c].div_floor(&p);
            if !q.is_zero() {
                let pivot_row = rows[top].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        pivots.push(c);
        top += 1;
        rows[top..].sort_by_key(|r| r.iter().all(Zero::is_zero));
        rows.truncate(top + rows[top..].iter().filter(|r| r.iter().any(|x| !x.is_zero())).count());
    }
    rows.truncate(top);
    (rows, pivots)
}

/// Basis of `{x : M·x = 0}`, one column per generator.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let sf = smith_columns_only(m);
    let n = m.cols();
    sf.v.submatrix(0..n, sf.rank..n)
}

/// Some integer solution of `M·x = b`, if one exists.
pub fn solve(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let sf = smith_normal_form(m);
    let ub = sf.u.mul_vec(b);
    let mut y = vec![Int::zero(); m.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < sf.rank {
            let d = &sf.d[(i, i)];
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(sf.v.mul_vec(&y))
}

/// Solves `M·X = B` column by column.
pub fn solve_matrix(m: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let sf = smith_normal_form(m);
    let ub = sf.u.mul(b);
    let mut y = IntMatrix::zeros(m.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..m.rows() {
            let c = &ub[(i, j)];
            if i < sf.rank {
                let (q, r) = c.div_rem(&sf.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
    }
    Some(sf.v.mul(&y))
}

/// Whether the columns of `m` span all of `Z^rows`.
pub fn spans_everything(m: &IntMatrix) -> bool {
    let sf = super::snf::smith_rows_only(m);
    sf.rank == m.rows() && sf.diagonal().iter().all(One::is_one)
}
