//! The complex `Kᵍ = Z^q` (q ≥ 1) governing the cohomology of the
//! character complex of a group.

use crate::error::{Error, Result};
use crate::fgab::{homology_at, FgAb, FgAbMap, Int, IntMatrix};

#[derive(Clone, Debug)]
pub struct KComplex;

impl KComplex {
    /// `∂ᵢ : Z^q → Z^{q+1}`: `∂₀` prepends 0, `∂_{q+1}` appends 0, and for
    /// `1 ≤ i ≤ q` the `i`-th coordinate is doubled.
    pub fn face(q: usize, i: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(q + 1, q);
        for c in 0..q {
            let r = if i == 0 {
                c + 1
            } else if i == q + 1 {
                c
            } else if c < i {
                c
            } else {
                c + 1
            };
            m[(r, c)] = Int::from(1);
        }
        if (1..=q).contains(&i) {
            m[(i, i - 1)] = Int::from(1);
        }
        m
    }

    /// `∂ = Σ (−1)ⁱ ∂ᵢ : Z^q → Z^{q+1}`.
    pub fn differential(q: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(q + 1, q);
        for i in 0..=q + 1 {
            let f = Self::face(q, i);
            m = if i % 2 == 0 { m.add(&f) } else { m.sub(&f) };
        }
        m
    }

    fn map(q: usize) -> FgAbMap {
        FgAbMap::new(FgAb::free(q), FgAb::free(q + 1), Self::differential(q)).expect("free groups")
    }
}

/// `[H¹(K), …, H^{q_max}(K)]`.
pub fn kcomplex_cohomology(q_max: usize) -> Result<Vec<FgAb>> {
    if q_max < 2 {
        return Err(Error::DegreeOutOfRange { degree: q_max, max: 2 });
    }
    let mut out = Vec::with_capacity(q_max);
    for q in 1..=q_max {
        let incoming = if q == 1 { FgAbMap::zero(&FgAb::zero(), &FgAb::free(1)) } else { KComplex::map(q - 1) };
        out.push(homology_at(&incoming, &KComplex::map(q))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_differential_vanishes() {
        assert!(KComplex::differential(1).is_zero());
        assert_eq!(KComplex::differential(2), IntMatrix::from_rows(&[[-1, 0], [0, 0], [0, 1]]));
    }

    #[test]
    fn squares_to_zero() {
        for q in 1..8 {
            assert!(KComplex::differential(q + 1).mul(&KComplex::differential(q)).is_zero());
        }
    }

    #[test]
    fn cohomology_is_z_then_zero() {
        let h = kcomplex_cohomology(8).unwrap();
        assert_eq!(h.len(), 8);
        assert_eq!(h[0], FgAb::z());
        assert!(h[1..].iter().all(FgAb::is_zero));
    }
}
