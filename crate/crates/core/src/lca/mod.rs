//! Finite-type locally compact abelian groups `Zᵃ ⊕ F ⊕ Tᵇ ⊕ Rᶜ`.

mod admissible;
mod map;

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fgab::{FgAb, Int};
use crate::json::{ints_from_json, ints_to_json, IntRepr};

pub use admissible::{admissible, two_three_condition, two_three_report, AdmissibilityVerdict, Site, TwoThreeReport};
pub use map::{Factor, LcaMap};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FtLca {
    z: usize,
    t: usize,
    r: usize,
    finite: FgAb,
}

impl FtLca {
    pub fn new(z: usize, t: usize, r: usize, finite: FgAb) -> Self {
        assert!(finite.is_finite(), "finite part must be a torsion group");
        FtLca { z, t, r, finite }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn integers(n: usize) -> Self {
        FtLca { z: n, ..Self::default() }
    }

    pub fn circle(n: usize) -> Self {
        FtLca { t: n, ..Self::default() }
    }

    pub fn reals(n: usize) -> Self {
        FtLca { r: n, ..Self::default() }
    }

    pub fn finite(f: FgAb) -> Self {
        Self::new(0, 0, 0, f)
    }

    /// Discrete finitely generated group viewed as an LCA group.
    pub fn discrete(g: &FgAb) -> Self {
        FtLca { z: g.free_rank(), finite: g.torsion_part(), ..Self::default() }
    }

    pub fn z_rank(&self) -> usize {
        self.z
    }

    pub fn torus_rank(&self) -> usize {
        self.t
    }

    pub fn real_rank(&self) -> usize {
        self.r
    }

    pub fn finite_part(&self) -> &FgAb {
        &self.finite
    }

    pub fn is_zero(&self) -> bool {
        self.z == 0 && self.t == 0 && self.r == 0 && self.finite.is_zero()
    }

    pub fn is_discrete(&self) -> bool {
        self.t == 0 && self.r == 0
    }

    pub fn is_compact(&self) -> bool {
        self.z == 0 && self.r == 0
    }

    /// The discrete group `Zᵃ ⊕ F` when there is no continuous part.
    pub fn as_discrete(&self) -> Option<FgAb> {
        self.is_discrete().then(|| FgAb::free(self.z).direct_sum(&self.finite))
    }

    pub fn direct_sum(&self, other: &FtLca) -> FtLca {
        FtLca {
            z: self.z + other.z,
            t: self.t + other.t,
            r: self.r + other.r,
            finite: self.finite.direct_sum(&other.finite),
        }
    }

    /// Elementary factors in the fixed generator order: `Z`s, cyclic finite
    /// factors, circles, lines.
    pub fn factors(&self) -> Vec<Factor> {
        let mut out = vec![Factor::Z; self.z];
        out.extend(self.finite.factors().iter().map(|d| Factor::Cyclic(d.clone())));
        out.extend(std::iter::repeat_n(Factor::T, self.t));
        out.extend(std::iter::repeat_n(Factor::R, self.r));
        out
    }

    pub fn from_factors(factors: &[Factor]) -> FtLca {
        let mut g = FtLca::zero();
        let mut orders = Vec::new();
        for f in factors {
            match f {
                Factor::Z => g.z += 1,
                Factor::T => g.t += 1,
                Factor::R => g.r += 1,
                Factor::Cyclic(d) => orders.push(d.clone()),
            }
        }
        g.finite = FgAb::from_cyclic_orders(&orders);
        g
    }

    pub fn random<R: Rng>(rng: &mut R, max_rank: usize, max_order: i64) -> FtLca {
        let k = rng.random_range(0..=max_rank);
        let orders: Vec<Int> = (0..k).map(|_| Int::from(rng.random_range(1..=max_order))).collect();
        FtLca {
            z: rng.random_range(0..=max_rank),
            t: rng.random_range(0..=max_rank),
            r: rng.random_range(0..=max_rank),
            finite: FgAb::from_cyclic_orders(&orders),
        }
    }
}

/// Pontrjagin dual: `Z ↔ T`, `R` and finite parts fixed.
pub fn dual(g: &FtLca) -> FtLca {
    FtLca { z: g.t, t: g.z, r: g.r, finite: g.finite.clone() }
}

pub fn double_dual_check(g: &FtLca) -> bool {
    &dual(&dual(g)) == g
}

/// Continuous homomorphisms `G → H`, assembled from the elementary table.
pub fn hom_group(g: &FtLca, h: &FtLca) -> FtLca {
    let mut out = FtLca::zero();
    for a in g.factors() {
        for b in h.factors() {
            out = out.direct_sum(&hom_elementary(&a, &b));
        }
    }
    out
}

fn hom_elementary(a: &Factor, b: &Factor) -> FtLca {
    use Factor::*;
    match (a, b) {
        (Z, _) => FtLca::from_factors(std::slice::from_ref(b)),
        (Cyclic(n), Cyclic(m)) => FtLca::finite(FgAb::from_cyclic_orders(&[n.gcd(m)])),
        (Cyclic(n), T) => FtLca::finite(FgAb::from_cyclic_orders(&[n.clone()])),
        (T, T) => FtLca::integers(1),
        (R, T) | (R, R) => FtLca::reals(1),
        _ => FtLca::zero(),
    }
}

/// Characters of `Z/n` as the values of the generator, `k/n` for `0 ≤ k < n`.
/// The fixed identification `Z/n → (Z/n)^` sends `a` to `b ↦ ab/n`.
pub fn finite_pairing(n: &Int, a: &Int, b: &Int) -> num_rational::BigRational {
    let v = (a * b).mod_floor(n);
    num_rational::BigRational::new(v, n.clone())
}

impl fmt::Display for FtLca {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (sym, k) in [("Z", self.z), ("T", self.t), ("R", self.r)] {
            match k {
                0 => {}
                1 => parts.push(sym.to_string()),
                k => parts.push(format!("{sym}^{k}")),
            }
        }
        for d in self.finite.factors() {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FtLcaJson {
    #[serde(default, skip_serializing_if = "Zero::is_zero")]
    z: usize,
    #[serde(default, skip_serializing_if = "Zero::is_zero")]
    t: usize,
    #[serde(default, skip_serializing_if = "Zero::is_zero")]
    r: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    finite: Vec<IntRepr>,
}

impl Serialize for FtLca {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FtLcaJson { z: self.z, t: self.t, r: self.r, finite: ints_to_json(self.finite.factors()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FtLca {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FtLcaJson::deserialize(d)?;
        let orders = ints_from_json(raw.finite).map_err(serde::de::Error::custom)?;
        if let Some(o) = orders.iter().find(|o| o <= &&Int::zero()) {
            return Err(serde::de::Error::custom(format!("finite factor {o} must be positive")));
        }
        Ok(FtLca { z: raw.z, t: raw.t, r: raw.r, finite: FgAb::from_cyclic_orders(&orders) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_mixed_group() {
        let g = FtLca::new(2, 1, 1, FgAb::cyclic(4));
        assert_eq!(dual(&g), FtLca::new(1, 2, 1, FgAb::cyclic(4)));
        assert_eq!(dual(&FtLca::integers(1)), FtLca::circle(1));
    }

    #[test]
    fn hom_table_entries() {
        assert_eq!(hom_group(&FtLca::circle(1), &FtLca::integers(1)), FtLca::zero());
        assert_eq!(hom_group(&FtLca::reals(1), &FtLca::integers(1)), FtLca::zero());
        assert_eq!(hom_group(&FtLca::circle(1), &FtLca::circle(1)), FtLca::integers(1));
        let z6 = FtLca::finite(FgAb::cyclic(6));
        let z4 = FtLca::finite(FgAb::cyclic(4));
        assert_eq!(hom_group(&z6, &z4), FtLca::finite(FgAb::cyclic(2)));
    }

    #[test]
    fn json_omits_empty_fields() {
        assert_eq!(serde_json::to_string(&FtLca::circle(1)).unwrap(), r#"{"t":1}"#);
        let g: FtLca = serde_json::from_str(r#"{"z":1,"finite":[2,3]}"#).unwrap();
        assert_eq!(g, FtLca::new(1, 0, 0, FgAb::cyclic(6)));
        assert!(serde_json::from_str::<FtLca>(r#"{"q":1}"#).is_err());
    }
}
