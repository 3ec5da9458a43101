use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntMatrix;
use super::snf::normalize_diagonal;
use super::Int;
use crate::json::IntRepr;

/// Finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `d₁ | d₂ | … | d_k` and every `dᵢ ≥ 2`.
///
/// Elements are coordinate vectors in the standard generators: the free ones
/// first, then one per invariant factor. Torsion coordinates are kept reduced
/// into `[0, dᵢ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgAb {
    free_rank: usize,
    factors: Vec<Int>,
}

impl FgAb {
    pub fn zero() -> Self {
        FgAb::default()
    }

    pub fn z() -> Self {
        FgAb::free(1)
    }

    pub fn free(rank: usize) -> Self {
        FgAb { free_rank: rank, factors: Vec::new() }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = ±1` the trivial group.
    pub fn cyclic(n: i64) -> Self {
        Self::from_cyclic_orders(&[Int::from(n)])
    }

    /// Normalizes an arbitrary list of cyclic orders (zero meaning `Z`).
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let free_rank = orders.iter().filter(|d| d.is_zero()).count();
        let torsion: Vec<Int> = orders.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        let factors = if torsion.iter().all(One::is_one) {
            Vec::new()
        } else if torsion.iter().filter(|d| !d.is_one()).count() == 1 {
            torsion.into_iter().filter(|d| !d.is_one()).collect()
        } else {
            normalize_diagonal(&torsion).into_iter().filter(|d| !d.is_one()).collect()
        };
        FgAb { free_rank, factors }
    }

    /// Free rank plus small torsion orders in any order and any divisibility.
    pub fn from_factors(free_rank: usize, torsion: &[i64]) -> Self {
        let mut orders = vec![Int::zero(); free_rank];
        orders.extend(torsion.iter().map(|&d| Int::from(d)));
        Self::from_cyclic_orders(&orders)
    }

    /// Trusted constructor for already canonical data.
    pub fn from_canonical(free_rank: usize, factors: Vec<Int>) -> Self {
        debug_assert!(factors.iter().all(|d| d > &Int::one()));
        debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        FgAb { free_rank, factors }
    }

    /// Validating constructor used for external input.
    pub fn try_canonical(free_rank: usize, factors: Vec<Int>) -> Result<Self, String> {
        if let Some(d) = factors.iter().find(|d| *d < &Int::from(2)) {
            return Err(format!("invariant factor {d} is below 2"));
        }
        if let Some(w) = factors.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(format!("invariant factors {} and {} break the divisibility chain", w[0], w[1]));
        }
        Ok(FgAb { free_rank, factors })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.free_rank + self.factors.len()
    }

    pub fn ntors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order for finite groups.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    /// Order of generator `i` (zero for free generators).
    pub fn generator_order(&self, i: usize) -> Int {
        if i < self.free_rank {
            Int::zero()
        } else {
            self.factors[i - self.free_rank].clone()
        }
    }

    /// Cyclic orders of the standard generators, zero for `Z`.
    pub fn cyclic_orders(&self) -> Vec<Int> {
        (0..self.ngens()).map(|i| self.generator_order(i)).collect()
    }

    /// Number of cyclic summands of even order, the rank of the 2-torsion.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = Int::from(p);
        self.factors.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    pub fn torsion_part(&self) -> FgAb {
        FgAb { free_rank: 0, factors: self.factors.clone() }
    }

    pub fn direct_sum(&self, other: &FgAb) -> FgAb {
        let mut orders = self.cyclic_orders();
        orders.extend(other.cyclic_orders());
        Self::from_cyclic_orders(&orders)
    }

    pub fn power(&self, n: usize) -> FgAb {
        let mut orders = Vec::new();
        for _ in 0..n {
            orders.extend(self.cyclic_orders());
        }
        Self::from_cyclic_orders(&orders)
    }

    /// Relation columns: `dᵢ` times each torsion generator.
    pub fn relations(&self) -> IntMatrix {
        let n = self.ngens();
        let mut m = IntMatrix::zeros(n, self.ntors());
        for (j, d) in self.factors.iter().enumerate() {
            m[(self.free_rank + j, j)] = d.clone();
        }
        m
    }

    /// Canonical coordinates of an element.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ngens(), "element has the wrong number of coordinates");
        x.iter()
            .enumerate()
            .map(|(i, v)| {
                if i < self.free_rank {
                    v.clone()
                } else {
                    v.mod_floor(&self.factors[i - self.free_rank])
                }
            })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[Int]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn add(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &Int, x: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = x.iter().map(|a| k * a).collect();
        self.reduce(&s)
    }

    pub fn zero_element(&self) -> Vec<Int> {
        vec![Int::zero(); self.ngens()]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Int> {
        let mut e = self.zero_element();
        e[i] = Int::one();
        e
    }

    /// Order of an element, `None` when infinite.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let x = self.reduce(x);
        if x[..self.free_rank].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut ord = Int::one();
        for (v, d) in x[self.free_rank..].iter().zip(&self.factors) {
            ord = ord.lcm(&(d / v.gcd(d)));
        }
        Some(ord)
    }

    /// All elements of a finite group in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Vec<Int>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![Vec::new()];
        for d in &self.factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut v = Int::zero();
                while &v < d {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    next.push(p);
                    v += 1;
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FgAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct FgAbJson {
    free_rank: usize,
    #[serde(default)]
    factors: Vec<IntRepr>,
}

impl Serialize for FgAb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FgAbJson {
            free_rank: self.free_rank,
            factors: self.factors.iter().map(IntRepr::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FgAbJson::deserialize(d)?;
        let factors = raw
            .factors
            .into_iter()
            .map(Int::try_from)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        FgAb::try_canonical(raw.free_rank, factors).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_cyclic_lists() {
        assert_eq!(FgAb::from_factors(0, &[2, 3]), FgAb::cyclic(6));
        assert_eq!(FgAb::from_factors(1, &[4, 2, 1]).factors(), &[Int::from(2), Int::from(4)]);
        assert_eq!(FgAb::cyclic(1), FgAb::zero());
        assert_eq!(FgAb::cyclic(0), FgAb::z());
        assert_eq!(FgAb::from_factors(0, &[6, 4]).factors(), &[Int::from(2), Int::from(12)]);
    }

    #[test]
    fn json_round_trip() {
        let g = FgAb::from_factors(2, &[2, 4]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":2,"factors":[2,4]}"#);
        assert_eq!(serde_json::from_str::<FgAb>(&s).unwrap(), g);
        assert!(serde_json::from_str::<FgAb>(r#"{"free_rank":0,"factors":[4,2]}"#).is_err());
    }

    #[test]
    fn element_orders() {
        let g = FgAb::from_factors(0, &[2, 4]);
        assert_eq!(g.element_order(&[Int::from(1), Int::from(2)]), Some(Int::from(2)));
        assert_eq!(g.elements().len(), 8);
    }
}
