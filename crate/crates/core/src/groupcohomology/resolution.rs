//! Small cochain model for finite abelian groups: the tensor product of the
//! periodic resolutions of the cyclic factors, with `Hom(−, Z)` applied.

use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::fgab::{FgAb, Int, IntMatrix};

/// `P = ⊗ⱼ Pⱼ` where `Pⱼ` is the periodic resolution of `Z/nⱼ`; after
/// tensoring with `Z` the even differentials become `nⱼ` and the odd ones 0.
#[derive(Clone, Debug)]
pub struct ProductResolution {
    orders: Vec<Int>,
}

impl ProductResolution {
    pub fn new(g: &FgAb) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::Malformed(format!("{g} is not finite")));
        }
        Ok(ProductResolution { orders: g.factors().to_vec() })
    }

    /// Multi-degrees `(k₁, …, k_r)` with `Σ kⱼ = n`, lexicographic.
    pub fn basis(&self, n: usize) -> Vec<Vec<usize>> {
        fn rec(r: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if r == 1 {
                prefix.push(n);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for k in 0..=n {
                prefix.push(k);
                rec(r - 1, n - k, prefix, out);
                prefix.pop();
            }
        }
        let r = self.orders.len();
        if r == 0 {
            return if n == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(r, n, &mut Vec::new(), &mut out);
        out
    }

    /// `∂ : C_n → C_{n−1}` of `P ⊗_G Z`.
    pub fn chain_differential(&self, n: usize) -> IntMatrix {
        let src = self.basis(n);
        let tgt = if n == 0 { Vec::new() } else { self.basis(n - 1) };
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for (c, k) in src.iter().enumerate() {
            let mut sign_deg = 0usize;
            for j in 0..k.len() {
                if k[j] >= 2 && k[j] % 2 == 0 {
                    let mut face = k.clone();
                    face[j] -= 1;
                    let r = tgt.iter().position(|t| t == &face).expect("face is a basis element");
                    let s = if sign_deg % 2 == 0 { Int::one() } else { -Int::one() };
                    m[(r, c)] += s * &self.orders[j];
                }
                sign_deg += k[j];
            }
        }
        m
    }

    /// `δ : Cⁿ → C^{n+1}`, the transpose of `∂_{n+1}`.
    pub fn cochain_differential(&self, n: usize) -> IntMatrix {
        self.chain_differential(n + 1).transpose()
    }

    /// The cochain map induced by multiplication by `m` on the group is
    /// diagonal: `m^{⌈k/2⌉}` on each factor of degree `k`.
    pub fn multiplication_weights(&self, n: usize, m: i64) -> Vec<Int> {
        let m = Int::from(m);
        self.basis(n)
            .iter()
            .map(|k| {
                k.iter().fold(Int::one(), |acc, &kj| {
                    let e = kj.div_ceil(2) as u32;
                    if e == 0 {
                        acc
                    } else if m.is_zero() {
                        Int::zero()
                    } else {
                        acc * Pow::pow(&m, e)
                    }
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_squares_to_zero() {
        let r = ProductResolution::new(&FgAb::from_factors(0, &[2, 4, 3])).unwrap();
        for n in 2..6 {
            assert!(r.chain_differential(n - 1).mul(&r.chain_differential(n)).is_zero());
        }
    }

    #[test]
    fn multiplication_commutes_with_differential() {
        let r = ProductResolution::new(&FgAb::from_factors(0, &[5, 5])).unwrap();
        for n in 0..5 {
            let d = r.cochain_differential(n);
            let a = r.multiplication_weights(n, 3);
            let b = r.multiplication_weights(n + 1, 3);
            let lhs = d.mul(&IntMatrix::diagonal(a.len(), a.len(), &a));
            let rhs = IntMatrix::diagonal(b.len(), b.len(), &b).mul(&d);
            assert_eq!(lhs, rhs);
        }
    }
}
