//! Yoneda classes of four-term exact sequences `0 → A → X → Y → B → 0` and
//! the chain-level comparison of the two zigzags they define.
//!
//! Convention: `A[2]` is `A` placed in degree −2, and shifts carry no sign.

use std::collections::BTreeMap;

use super::chain::{ChainHomotopy, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::fgab::{is_exact, FgAb, FgAbMap};

#[derive(Clone, Debug)]
pub struct FourTermExact {
    a: FgAbMap,
    x: FgAbMap,
    y: FgAbMap,
}

impl FourTermExact {
    /// `A →a X →x Y →y B`, checked exact with zeros at both ends.
    pub fn new(a: FgAbMap, x: FgAbMap, y: FgAbMap) -> Result<Self> {
        let zin = FgAbMap::zero(&FgAb::zero(), a.source());
        let zout = FgAbMap::zero(y.target(), &FgAb::zero());
        if !is_exact(&[zin, a.clone(), x.clone(), y.clone(), zout])? {
            return Err(Error::Invariant("0 -> A -> X -> Y -> B -> 0 is not exact".into()));
        }
        Ok(FourTermExact { a, x, y })
    }

    /// `0 → ker f → X →f Y → coker f → 0`
    pub fn from_map(f: &FgAbMap) -> Self {
        let k = f.kernel();
        let c = f.cokernel();
        FourTermExact { a: k.inclusion, x: f.clone(), y: c.projection }
    }

    pub fn a(&self) -> &FgAbMap {
        &self.a
    }

    pub fn x(&self) -> &FgAbMap {
        &self.x
    }

    pub fn y(&self) -> &FgAbMap {
        &self.y
    }

    pub fn group_a(&self) -> &FgAb {
        self.a.source()
    }

    pub fn group_x(&self) -> &FgAb {
        self.x.source()
    }

    pub fn group_y(&self) -> &FgAb {
        self.y.source()
    }

    pub fn group_b(&self) -> &FgAb {
        self.y.target()
    }

    /// `X → Y → B` in degrees −2, −1, 0.
    pub fn complex_a(&self) -> Complex {
        let terms = vec![self.group_x().clone(), self.group_y().clone(), self.group_b().clone()];
        Complex::new(-2, terms, vec![self.x.clone(), self.y.clone()]).expect("exact pieces form a complex")
    }

    /// `A → X → Y` in degrees −2, −1, 0.
    pub fn complex_b(&self) -> Complex {
        let terms = vec![self.group_a().clone(), self.group_x().clone(), self.group_y().clone()];
        Complex::new(-2, terms, vec![self.a.clone(), self.x.clone()]).expect("exact pieces form a complex")
    }
}

/// `left ← middle → right` or `left → middle ← right`, with the backwards
/// arrow a quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct Zigzag {
    pub forward: ChainMap,
    pub backward: ChainMap,
    pub backward_is_quasi_iso: bool,
}

fn chain(src: Complex, tgt: Complex, comps: Vec<(i32, FgAbMap)>) -> ChainMap {
    ChainMap::new(src, tgt, comps.into_iter().collect()).expect("structure maps commute")
}

/// `B →β 𝒦_A ←α A[2]` with `β = id_B` in degree 0 and `α = a` in degree −2.
pub fn yoneda_y(k: &FourTermExact) -> Zigzag {
    let ka = k.complex_a();
    let beta = chain(Complex::concentrated(k.group_b(), 0), ka.clone(), vec![(0, FgAbMap::identity(k.group_b()))]);
    let alpha = chain(Complex::concentrated(k.group_a(), -2), ka, vec![(-2, k.a.clone())]);
    let q = alpha.is_quasi_iso();
    Zigzag { forward: beta, backward: alpha, backward_is_quasi_iso: q }
}

/// `B ←γ 𝒦_B →δ A[2]` with `γ = y` in degree 0 and `δ = id_A` in degree −2.
pub fn yoneda_y_prime(k: &FourTermExact) -> Zigzag {
    let kb = k.complex_b();
    let gamma = chain(kb.clone(), Complex::concentrated(k.group_b(), 0), vec![(0, k.y.clone())]);
    let delta = chain(kb, Complex::concentrated(k.group_a(), -2), vec![(-2, FgAbMap::identity(k.group_a()))]);
    let q = gamma.is_quasi_iso();
    Zigzag { forward: delta, backward: gamma, backward_is_quasi_iso: q }
}

/// Comparison `φ = (a, x, y) : 𝒦_B → 𝒦_A` and homotopies for
/// `φ ≃ β∘γ` and `φ ≃ α∘δ`.
#[derive(Clone, Debug)]
pub struct YonedaWitnesses {
    pub phi: ChainMap,
    pub beta_gamma: ChainMap,
    pub alpha_delta: ChainMap,
    pub h_beta_gamma: ChainHomotopy,
    pub h_alpha_delta: ChainHomotopy,
}

impl YonedaWitnesses {
    pub fn verify(&self) -> bool {
        self.h_beta_gamma.witnesses(&self.phi, &self.beta_gamma)
            && self.h_alpha_delta.witnesses(&self.phi, &self.alpha_delta)
    }
}

pub fn lemma219_witnesses(k: &FourTermExact) -> Result<YonedaWitnesses> {
    let (ka, kb) = (k.complex_a(), k.complex_b());
    let phi = chain(kb.clone(), ka.clone(), vec![(-2, k.a.clone()), (-1, k.x.clone()), (0, k.y.clone())]);
    let y = yoneda_y(k);
    let yp = yoneda_y_prime(k);
    let beta_gamma = y.forward.compose(&yp.backward)?;
    let alpha_delta = y.backward.compose(&yp.forward)?;
    // φ − βγ = (a, x, 0) is null through id_X : 𝒦_B⁻¹ → 𝒦_A⁻²
    let h_bg = ChainHomotopy::new(BTreeMap::from([(-1, FgAbMap::identity(k.group_x()))]));
    // φ − αδ = (0, x, y) is null through id_Y : 𝒦_B⁰ → 𝒦_A⁻¹
    let h_ad = ChainHomotopy::new(BTreeMap::from([(0, FgAbMap::identity(k.group_y()))]));
    Ok(YonedaWitnesses { phi, beta_gamma, alpha_delta, h_beta_gamma: h_bg, h_alpha_delta: h_ad })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `0 → Z →(1,0) Z² →(0,n) Z → Z/n → 0`; the groups `Z, Z, Z, Z/n` alone
    /// admit no exact sequence, so the identity is padded by a free summand.
    fn multiplication_sequence(n: i64) -> FourTermExact {
        let (z, z2) = (FgAb::z(), FgAb::free(2));
        let a = FgAbMap::from_rows(z.clone(), z2.clone(), &[[1], [0]]).unwrap();
        let x = FgAbMap::from_rows(z2, z.clone(), &[[0, n]]).unwrap();
        let y = FgAbMap::from_rows(z, FgAb::cyclic(n), &[[1]]).unwrap();
        FourTermExact::new(a, x, y).unwrap()
    }

    #[test]
    fn multiplication_by_n_witnesses_verify() {
        for n in 2..6 {
            let k = multiplication_sequence(n);
            let y = yoneda_y(&k);
            assert!(y.backward_is_quasi_iso);
            assert!(yoneda_y_prime(&k).backward_is_quasi_iso);
            assert!(lemma219_witnesses(&k).unwrap().verify());
        }
    }

    #[test]
    fn split_sequence_witnesses_verify() {
        let (a, x, b) = (FgAb::cyclic(2), FgAb::z(), FgAb::cyclic(3));
        let ax = a.direct_sum(&x);
        let xb = x.direct_sum(&b);
        let ia = FgAbMap::from_rows(a.clone(), ax.clone(), &[[0], [1]]).unwrap();
        let mid = FgAbMap::from_rows(ax.clone(), xb.clone(), &[[1, 0], [0, 0]]).unwrap();
        let pb = FgAbMap::from_rows(xb, b, &[[0, 1]]).unwrap();
        let k = FourTermExact::new(ia, mid, pb).unwrap();
        assert!(lemma219_witnesses(&k).unwrap().verify());
    }

    #[test]
    fn wrong_homotopy_is_rejected() {
        let k = multiplication_sequence(3);
        let mut w = lemma219_witnesses(&k).unwrap();
        w.h_beta_gamma = ChainHomotopy::zero();
        assert!(!w.verify());
    }

    #[test]
    fn non_exact_input_is_rejected() {
        let z = FgAb::z();
        let two = FgAbMap::from_rows(z.clone(), z.clone(), &[[2]]).unwrap();
        assert!(FourTermExact::new(two.clone(), FgAbMap::zero(&z, &z), FgAbMap::zero(&z, &FgAb::zero())).is_err());
    }
}
