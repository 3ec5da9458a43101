//! Derived homs between two-term complexes.

use serde::{Deserialize, Serialize};

use super::TwoTerm;
use crate::fgab::lattice::solve_matrix;
use crate::fgab::presentation::{presented_homology, Presentation};
use crate::fgab::{ext1, hom, FgAb, Int, IntMatrix};

/// `Rⁱ Hom(K, L)` for `i = −1, 0, 1, 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RHom {
    pub rminus1: FgAb,
    pub r0: FgAb,
    pub r1: FgAb,
    /// `Ext¹(H⁻¹K, H⁰L)`, the only contribution in degree 2.
    pub r2: FgAb,
}

/// Over `Z` every two-term complex splits as `H⁻¹[1] ⊕ H⁰`, so the derived
/// hom is assembled from `Hom` and `Ext¹` of the cohomology groups.
pub fn rhom(k: &TwoTerm, l: &TwoTerm) -> RHom {
    let (k1, k0) = (k.hminus1(), k.h0());
    let (l1, l0) = (l.hminus1(), l.h0());
    let sum = |gs: &[FgAb]| gs.iter().fold(FgAb::zero(), |a, g| a.direct_sum(g));
    RHom {
        rminus1: hom(&k0, &l1),
        r0: sum(&[hom(&k0, &l0), hom(&k1, &l1), ext1(&k0, &l1)]),
        r1: sum(&[ext1(&k0, &l0), ext1(&k1, &l1), hom(&k1, &l0)]),
        r2: ext1(&k1, &l0),
    }
}

/// Free replacement `P⁻² → P⁻¹ → P⁰` of `K` built from the presentations of
/// its terms: `P⁻² = Z^{t₋₁}`, `P⁻¹ = Z^{g₋₁} ⊕ Z^{t₀}`, `P⁰ = Z^{g₀}`.
fn free_replacement(k: &TwoTerm) -> [IntMatrix; 2] {
    let r1 = k.kminus1().relations();
    let r0 = k.k0().relations();
    let d = k.d().matrix();
    // d R₋₁ = R₀ E
    let e = solve_matrix(&r0, &d.mul(&r1)).expect("d is well defined");
    let dm2 = r1.vcat(&e.neg());
    let dm1 = d.hcat(&r0);
    [dm2, dm1]
}

/// Cohomology of the hom complex `Hom(P, L)` with `P` a free replacement of
/// `K`; an independent route to the same groups as [`rhom`].
pub fn rhom_hom_complex(k: &TwoTerm, l: &TwoTerm) -> RHom {
    let [dm2, dm1] = free_replacement(k);
    let pdim = |p: i32| -> usize {
        match p {
            -2 => dm2.cols(),
            -1 => dm1.cols(),
            0 => dm1.rows(),
            _ => 0,
        }
    };
    // d_P^p : P^p → P^{p+1}
    let dp = |p: i32| -> Option<&IntMatrix> {
        match p {
            -2 => Some(&dm2),
            -1 => Some(&dm1),
            _ => None,
        }
    };
    let lterm = |j: i32| -> FgAb {
        match j {
            -1 => l.kminus1().clone(),
            0 => l.k0().clone(),
            _ => FgAb::zero(),
        }
    };
    // blocks of Homⁿ: (p, offset) with L-degree p + n
    let blocks = |n: i32| -> (Vec<(i32, usize)>, Presentation) {
        let mut out = Vec::new();
        let mut parts = Vec::new();
        let mut off = 0;
        for p in -2..=0 {
            let lg = lterm(p + n);
            if lg.ngens() == 0 || pdim(p) == 0 {
                continue;
            }
            out.push((p, off));
            for _ in 0..pdim(p) {
                parts.push(Presentation::of(&lg));
            }
            off += pdim(p) * lg.ngens();
        }
        (out, Presentation::sum(&parts))
    };
    // (dφ)_p = d_L φ_p − (−1)ⁿ φ_{p+1} d_P^p
    let differential = |n: i32| -> IntMatrix {
        let (src, sp) = blocks(n);
        let (dst, tp) = blocks(n + 1);
        let mut m = IntMatrix::zeros(tp.dim(), sp.dim());
        let sign = if n % 2 == 0 { Int::from(-1) } else { Int::from(1) };
        for &(p, toff) in &dst {
            let tj = lterm(p + n + 1).ngens();
            if p + n == -1 {
                if let Some(&(_, soff)) = src.iter().find(|(q, _)| *q == p) {
                    let dl = l.d().matrix();
                    let sj = dl.cols();
                    for c in 0..pdim(p) {
                        for r in 0..tj {
                            for s in 0..sj {
                                m[(toff + c * tj + r, soff + c * sj + s)] += &dl[(r, s)];
                            }
                        }
                    }
                }
            }
            if let (Some(dpm), Some(&(_, soff))) = (dp(p), src.iter().find(|(q, _)| *q == p + 1)) {
                // φ_{p+1} has columns indexed by P^{p+1} with rows in L^{p+n+1}
                for c in 0..pdim(p) {
                    for kk in 0..pdim(p + 1) {
                        let coef = &dpm[(kk, c)];
                        if coef == &Int::from(0) {
                            continue;
                        }
                        for r in 0..tj {
                            m[(toff + c * tj + r, soff + kk * tj + r)] += coef * &sign;
                        }
                    }
                }
            }
        }
        m
    };
    let h = |n: i32| -> FgAb {
        let (_, pres) = blocks(n);
        let (_, next) = blocks(n + 1);
        let din = differential(n - 1);
        let dout = differential(n);
        presented_homology(&din, &pres, &dout, &next).group().clone()
    };
    RHom { rminus1: h(-1), r0: h(0), r1: h(1), r2: h(2) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolved_cyclic_into_integers() {
        for n in 2..6 {
            let k = TwoTerm::from_rows(FgAb::z(), FgAb::z(), &[[n]]).unwrap();
            let l = TwoTerm::in_degree_zero(&FgAb::z());
            let r = rhom(&k, &l);
            assert!(r.r0.is_zero());
            assert_eq!(r.r1, FgAb::cyclic(n));
            assert_eq!(rhom_hom_complex(&k, &l), r);
        }
    }

    #[test]
    fn integers_in_degree_zero_give_cohomology() {
        let k = TwoTerm::in_degree_zero(&FgAb::z());
        let l = TwoTerm::from_rows(FgAb::from_factors(1, &[2]), FgAb::z(), &[[3, 0]]).unwrap();
        let r = rhom(&k, &l);
        assert_eq!(r.rminus1, l.hminus1());
        assert_eq!(r.r0, l.h0());
        assert!(r.r1.is_zero());
        assert_eq!(rhom_hom_complex(&k, &l), r);
    }

    #[test]
    fn z2_into_z2() {
        let z2 = TwoTerm::in_degree_zero(&FgAb::cyclic(2));
        let r = rhom(&z2, &z2);
        assert!(r.rminus1.is_zero());
        assert_eq!(r.r0, FgAb::cyclic(2));
        assert_eq!(r.r1, FgAb::cyclic(2));
        assert_eq!(rhom_hom_complex(&z2, &z2), r);
    }

    #[test]
    fn torsion_in_both_degrees() {
        let k = TwoTerm::from_rows(FgAb::from_factors(1, &[4]), FgAb::from_factors(1, &[6]), &[[2, 0], [3, 3]]).unwrap();
        let l = TwoTerm::from_rows(FgAb::from_factors(0, &[2]), FgAb::from_factors(1, &[2]), &[[0], [1]]).unwrap();
        assert_eq!(rhom_hom_complex(&k, &l), rhom(&k, &l));
        assert_eq!(rhom_hom_complex(&l, &k), rhom(&l, &k));
    }
}
