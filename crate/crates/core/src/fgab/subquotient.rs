//! Subquotients `span(N) / span(R)` of a free ambient lattice `Z^d`.
//!
//! Every kernel, cokernel, image and homology group in the crate funnels
//! through here. The result carries the canonical group, ambient lifts of its
//! standard generators, and a coordinate map from `span(N)` onto the group.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FgAb;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::Int;

#[derive(Clone, Debug)]
pub struct Subquotient {
    group: FgAb,
    ambient_dim: usize,
    /// Ambient lifts of the standard generators (free first, then torsion).
    gens: Vec<Vec<Int>>,
    /// Numerator row transform `U₁`.
    u1: IntMatrix,
    /// Numerator elementary divisors `d₁..d_r`.
    d1: Vec<Int>,
    /// Rows of `U₂` in standard generator order.
    u2: IntMatrix,
}

impl Subquotient {
    /// `num` and `den` hold generators as columns over the same ambient space.
    /// The denominator must lie in the span of the numerator.
    pub fn new(num: &IntMatrix, den: &IntMatrix) -> Self {
        assert_eq!(num.rows(), den.rows(), "ambient dimension mismatch");
        let dim = num.rows();
        let s1 = smith_normal_form(num);
        let r = s1.rank;
        let d1 = s1.diagonal();
        let u1 = s1.u.clone();

        // numerator basis b_i = d_i · U₁⁻¹ e_i
        let basis = IntMatrix::from_fn(dim, r, |i, j| &s1.u_inv[(i, j)] * &d1[j]);

        let den_coords = {
            let cols: Vec<Vec<Int>> = (0..den.cols())
                .map(|j| numerator_coords(&u1, &d1, &den.column(j))
                    .expect("denominator must lie inside the numerator"))
                .collect();
            IntMatrix::from_columns(r, &cols)
        };

        let s2 = smith_normal_form(&den_coords);
        let e = s2.diagonal();
        let s = s2.rank;
        let free_rank = r - s;
        let mut order = Vec::new();
        order.extend(s..r);
        let mut factors = Vec::new();
        for (i, ei) in e.iter().enumerate() {
            if !ei.is_one() {
                order.push(i);
                factors.push(ei.clone());
            }
        }
        let group = FgAb::from_canonical(free_rank, factors);
        let new_basis = basis.mul(&s2.u_inv);
        let gens = order.iter().map(|&i| new_basis.column(i)).collect();
        let u2 = s2.u.select_rows(&order);
        Subquotient { group, ambient_dim: dim, gens, u1, d1, u2 }
    }

    /// Cokernel-style quotient `Z^d / span(den)`.
    pub fn quotient(dim: usize, den: &IntMatrix) -> Self {
        Self::new(&IntMatrix::identity(dim), den)
    }

    pub fn group(&self) -> &FgAb {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.gens
    }

    /// Generator lifts as matrix columns.
    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient_dim, &self.gens)
    }

    /// Coordinates of an ambient vector in the standard generators, or `None`
    /// when the vector is outside the numerator span.
    pub fn try_coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(x.len(), self.ambient_dim, "ambient dimension mismatch");
        let c = numerator_coords(&self.u1, &self.d1, x)?;
        Some(self.group.reduce(&self.u2.mul_vec(&c)))
    }

    pub fn coords(&self, x: &[Int]) -> Vec<Int> {
        self.try_coords(x).expect("vector outside the numerator span")
    }

    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.gens.len());
        let mut v = vec![Int::zero(); self.ambient_dim];
        for (c, g) in coords.iter().zip(&self.gens) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(g) {
                *x += c * y;
            }
        }
        v
    }
}

/// Coordinates of `x` in the numerator basis, checking full membership.
fn numerator_coords(u: &IntMatrix, d1: &[Int], x: &[Int]) -> Option<Vec<Int>> {
    let r = d1.len();
    let ux = u.mul_vec(x);
    if ux[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut c = Vec::with_capacity(r);
    for (i, d) in d1.iter().enumerate() {
        let (q, rem) = ux[i].div_rem(d);
        if !rem.is_zero() {
            return None;
        }
        c.push(q);
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_of_snf_example() {
        let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let sq = Subquotient::quotient(2, &m);
        assert_eq!(sq.group(), &FgAb::from_factors(0, &[2, 4]));
        for g in sq.generators() {
            assert_eq!(sq.coords(g).len(), 2);
        }
    }

    #[test]
    fn generators_have_standard_coordinates() {
        let num = IntMatrix::from_rows(&[[2, 0, 0], [0, 3, 0], [0, 0, 1]]);
        let den = IntMatrix::from_rows(&[[4], [6], [0]]);
        let sq = Subquotient::new(&num, &den);
        assert_eq!(sq.group(), &FgAb::from_factors(2, &[2]));
        for (i, g) in sq.generators().iter().enumerate() {
            let mut e = vec![Int::zero(); sq.generators().len()];
            e[i] = Int::one();
            assert_eq!(sq.coords(g), e);
        }
        assert!(sq.try_coords(&[Int::one(), Int::zero(), Int::zero()]).is_none());
    }
}
