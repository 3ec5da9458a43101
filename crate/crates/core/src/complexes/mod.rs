//! Two-term complexes `K⁻¹ → K⁰` of finitely generated abelian groups, their
//! maps, homotopies, derived homs and the Yoneda comparison for four-term
//! exact sequences.

pub mod chain;
mod rhom;
mod yoneda;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{FgAb, FgAbMap, Int, IntMatrix};
use crate::json::int_vec_vec;

pub use chain::{ChainHomotopy, ChainMap, Complex};
pub use rhom::{rhom, rhom_hom_complex, RHom};
pub use yoneda::{lemma219_witnesses, yoneda_y, yoneda_y_prime, FourTermExact, YonedaWitnesses, Zigzag};

/// `K⁻¹ →d K⁰` in degrees −1, 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTerm {
    d: FgAbMap,
}

impl TwoTerm {
    pub fn new(d: FgAbMap) -> Self {
        TwoTerm { d }
    }

    pub fn from_rows<R: AsRef<[i64]>>(km1: FgAb, k0: FgAb, rows: &[R]) -> Result<Self> {
        Ok(TwoTerm { d: FgAbMap::from_rows(km1, k0, rows)? })
    }

    /// `[0 → G]`
    pub fn in_degree_zero(g: &FgAb) -> Self {
        TwoTerm { d: FgAbMap::zero(&FgAb::zero(), g) }
    }

    /// `[G → 0]`
    pub fn in_degree_minus_one(g: &FgAb) -> Self {
        TwoTerm { d: FgAbMap::zero(g, &FgAb::zero()) }
    }

    pub fn kminus1(&self) -> &FgAb {
        self.d.source()
    }

    pub fn k0(&self) -> &FgAb {
        self.d.target()
    }

    pub fn d(&self) -> &FgAbMap {
        &self.d
    }

    pub fn hminus1(&self) -> FgAb {
        self.d.kernel().group
    }

    pub fn h0(&self) -> FgAb {
        self.d.cokernel().group
    }

    pub fn to_complex(&self) -> Complex {
        Complex::new(-1, vec![self.kminus1().clone(), self.k0().clone()], vec![self.d.clone()])
            .expect("a single differential is always a complex")
    }
}

pub fn h0(k: &TwoTerm) -> FgAb {
    k.h0()
}

pub fn hminus1(k: &TwoTerm) -> FgAb {
    k.hminus1()
}

/// `(f⁻¹, f⁰)` with `f⁰ d_K = d_L f⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    source: TwoTerm,
    target: TwoTerm,
    fminus1: FgAbMap,
    f0: FgAbMap,
}

impl ComplexMap {
    pub fn new(source: TwoTerm, target: TwoTerm, fminus1: FgAbMap, f0: FgAbMap) -> Result<Self> {
        if fminus1.source() != source.kminus1()
            || fminus1.target() != target.kminus1()
            || f0.source() != source.k0()
            || f0.target() != target.k0()
        {
            return Err(Error::NotComposable("components do not match the complexes".into()));
        }
        if f0.compose(&source.d)? != target.d.compose(&fminus1)? {
            return Err(Error::Invariant("map does not commute with the differentials".into()));
        }
        Ok(ComplexMap { source, target, fminus1, f0 })
    }

    pub fn identity(k: &TwoTerm) -> Self {
        ComplexMap {
            source: k.clone(),
            target: k.clone(),
            fminus1: FgAbMap::identity(k.kminus1()),
            f0: FgAbMap::identity(k.k0()),
        }
    }

    pub fn zero(k: &TwoTerm, l: &TwoTerm) -> Self {
        ComplexMap {
            source: k.clone(),
            target: l.clone(),
            fminus1: FgAbMap::zero(k.kminus1(), l.kminus1()),
            f0: FgAbMap::zero(k.k0(), l.k0()),
        }
    }

    pub fn source(&self) -> &TwoTerm {
        &self.source
    }

    pub fn target(&self) -> &TwoTerm {
        &self.target
    }

    pub fn fminus1(&self) -> &FgAbMap {
        &self.fminus1
    }

    pub fn f0(&self) -> &FgAbMap {
        &self.f0
    }

    pub fn to_chain_map(&self) -> ChainMap {
        let comps = BTreeMap::from([(-1, self.fminus1.clone()), (0, self.f0.clone())]);
        ChainMap::new(self.source.to_complex(), self.target.to_complex(), comps).expect("commutes by construction")
    }

    pub fn induced_h0(&self) -> FgAbMap {
        self.to_chain_map().induced(0)
    }

    pub fn induced_hminus1(&self) -> FgAbMap {
        self.to_chain_map().induced(-1)
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.induced_h0().is_iso() && self.induced_hminus1().is_iso()
    }

    /// Independent decision through the mapping cone.
    pub fn cone_is_acyclic(&self) -> bool {
        self.to_chain_map().cone_is_acyclic()
    }
}

pub fn is_quasi_iso(f: &ComplexMap) -> bool {
    f.is_quasi_iso()
}

/// `H : K⁰ → L⁻¹` with `f⁰ − g⁰ = d_L H` and `f⁻¹ − g⁻¹ = H d_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub h: FgAbMap,
}

impl Homotopy {
    pub fn new(h: FgAbMap) -> Self {
        Homotopy { h }
    }

    pub fn witnesses(&self, f: &ComplexMap, g: &ComplexMap) -> bool {
        let ok = || -> Result<bool> {
            if f.source != g.source || f.target != g.target {
                return Ok(false);
            }
            Ok(f.f0.sub(&g.f0)? == f.target.d.compose(&self.h)?
                && f.fminus1.sub(&g.fminus1)? == self.h.compose(&f.source.d)?)
        };
        ok().unwrap_or(false)
    }

    /// The map `f + (d_L H, H d_K)`, homotopic to `f` through `H`.
    pub fn perturb(&self, f: &ComplexMap) -> Result<ComplexMap> {
        let f0 = f.f0.add(&f.target.d.compose(&self.h)?)?;
        let fm1 = f.fminus1.add(&self.h.compose(&f.source.d)?)?;
        ComplexMap::new(f.source.clone(), f.target.clone(), fm1, f0)
    }
}

/// `[K⁻¹/G → K⁰]` for `G ⊂ ker d` given by generators in `K⁻¹` coordinates,
/// together with the projection from `K`.
pub fn quotient_by(k: &TwoTerm, gens: &[Vec<Int>]) -> Result<(TwoTerm, ComplexMap)> {
    let km1 = k.kminus1();
    for g in gens {
        if g.len() != km1.ngens() {
            return Err(Error::Malformed(format!("subgroup generator has length {}, expected {}", g.len(), km1.ngens())));
        }
        if !k.k0().is_zero_element(&k.d.apply(g)) {
            return Err(Error::Invariant("subgroup is not contained in the kernel of d".into()));
        }
    }
    let incl = FgAbMap::new(FgAb::free(gens.len()), km1.clone(), IntMatrix::from_columns(km1.ngens(), gens))?;
    let q = incl.cokernel();
    let cols: Vec<Vec<Int>> = (0..q.group.ngens()).map(|j| k.d.apply(&q.lift(&q.group.basis_element(j)))).collect();
    let d = FgAbMap::new(q.group.clone(), k.k0().clone(), IntMatrix::from_columns(k.k0().ngens(), &cols))?;
    let kbar = TwoTerm::new(d);
    let proj = ComplexMap::new(k.clone(), kbar.clone(), q.projection.clone(), FgAbMap::identity(k.k0()))?;
    Ok((kbar, proj))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoTermJson {
    minus1: FgAb,
    zero: FgAb,
    #[serde(with = "int_vec_vec")]
    d: Vec<Vec<Int>>,
}

impl Serialize for TwoTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.d.matrix();
        TwoTermJson {
            minus1: self.kminus1().clone(),
            zero: self.k0().clone(),
            d: (0..m.rows()).map(|i| m.row(i)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoTerm {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = TwoTermJson::deserialize(de)?;
        let (r, c) = (j.zero.ngens(), j.minus1.ngens());
        if j.d.len() != r || j.d.iter().any(|row| row.len() != c) {
            return Err(D::Error::custom(format!("d must be a {r}x{c} matrix")));
        }
        let m = IntMatrix::from_big_rows(r, c, j.d.into_iter().flatten().collect());
        FgAbMap::new(j.minus1, j.zero, m).map(TwoTerm::new).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::ints;

    #[test]
    fn cohomology_examples() {
        let k = TwoTerm::from_rows(FgAb::z(), FgAb::z(), &[[2]]).unwrap();
        assert!(k.hminus1().is_zero());
        assert_eq!(k.h0(), FgAb::cyclic(2));
        let k = TwoTerm::in_degree_minus_one(&FgAb::z());
        assert_eq!(k.hminus1(), FgAb::z());
        assert!(k.h0().is_zero());
        let k = TwoTerm::from_rows(FgAb::free(2), FgAb::free(2), &[[2, 4], [6, 8]]).unwrap();
        assert_eq!(k.h0(), FgAb::from_factors(0, &[2, 4]));
    }

    #[test]
    fn quasi_iso_examples() {
        let k = TwoTerm::from_rows(FgAb::z(), FgAb::z(), &[[2]]).unwrap();
        assert!(ComplexMap::identity(&k).is_quasi_iso());
        let l = TwoTerm::in_degree_zero(&FgAb::cyclic(2));
        let q = FgAbMap::from_rows(FgAb::z(), FgAb::cyclic(2), &[[1]]).unwrap();
        let f = ComplexMap::new(k.clone(), l.clone(), FgAbMap::zero(&FgAb::z(), &FgAb::zero()), q).unwrap();
        assert!(f.is_quasi_iso());
        assert!(f.cone_is_acyclic());
        let z = ComplexMap::zero(&k, &l);
        assert!(!z.is_quasi_iso());
        assert!(!z.cone_is_acyclic());
    }

    #[test]
    fn homotopic_maps_agree_on_cohomology() {
        let k = TwoTerm::from_rows(FgAb::free(2), FgAb::free(2), &[[2, 0], [0, 0]]).unwrap();
        let f = ComplexMap::identity(&k);
        let h = Homotopy::new(FgAbMap::from_rows(FgAb::free(2), FgAb::free(2), &[[1, 3], [0, 5]]).unwrap());
        let g = h.perturb(&f).unwrap();
        assert!(h.witnesses(&g, &f));
        assert_eq!(f.induced_h0(), g.induced_h0());
        assert_eq!(f.induced_hminus1(), g.induced_hminus1());
    }

    #[test]
    fn quotient_by_torsion_in_kernel() {
        let k = TwoTerm::from_rows(FgAb::from_factors(1, &[2]), FgAb::z(), &[[2, 0]]).unwrap();
        let (kbar, _) = quotient_by(&k, &[ints(&[0, 1])]).unwrap();
        assert_eq!(kbar, TwoTerm::from_rows(FgAb::z(), FgAb::z(), &[[2]]).unwrap());
        let (same, _) = quotient_by(&k, &[]).unwrap();
        assert_eq!(same, k);
        assert!(quotient_by(&k, &[ints(&[1, 0])]).is_err());
    }

    #[test]
    fn quotient_by_full_kernel_kills_hminus1() {
        let k = TwoTerm::from_rows(FgAb::from_factors(2, &[3]), FgAb::z(), &[[1, -1, 0]]).unwrap();
        let ker = k.d().kernel();
        let gens: Vec<Vec<Int>> = (0..ker.group.ngens()).map(|j| ker.inclusion.matrix().column(j)).collect();
        let (kbar, proj) = quotient_by(&k, &gens).unwrap();
        assert!(kbar.hminus1().is_zero());
        assert_eq!(kbar.h0(), k.h0());
        assert!(proj.induced_h0().is_iso());
    }

    #[test]
    fn json_round_trip() {
        let k = TwoTerm::from_rows(FgAb::from_factors(1, &[4]), FgAb::from_factors(1, &[6]), &[[2, 0], [3, 3]]).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        let back: TwoTerm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
    }
}
