//! Integral (co)homology of finite abelian groups from the bar complex, the
//! action of multiplication maps on it, and the complex `Kᵍ = Z^q`.

pub mod bar;
mod kcomplex;
pub mod resolution;
pub mod sparse;

use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::lattice::kernel;
use crate::fgab::{lambda, FgAb, FgAbMap, Int, IntMatrix, Subquotient};

pub use bar::{BarComplex, BarVariant};
pub use kcomplex::{kcomplex_cohomology, KComplex};
pub use resolution::ProductResolution;
pub use sparse::{sparse_invariants, SparseInvariants, SparseMatrix};

/// Ranks and invariant factors of the bar differentials `d₁ … d_top`.
#[derive(Clone, Debug)]
pub struct BarInvariants {
    variant: BarVariant,
    chain_ranks: Vec<usize>,
    /// `diffs[n]` describes `dₙ`; `diffs[0]` is the zero map out of `Z`.
    diffs: Vec<SparseInvariants>,
}

impl BarInvariants {
    /// Invariants of `d₁ … d_top`, one chain degree at a time in parallel.
    pub fn compute(g: &FgAb, top: usize) -> Result<Self> {
        let bar = BarComplex::new(g, top)?;
        let diffs: Vec<SparseInvariants> = (0..=top)
            .into_par_iter()
            .map(|n| {
                let d = bar.boundary(n).expect("degree within range");
                sparse_invariants(&d)
            })
            .collect();
        let chain_ranks = (0..=top).map(|n| bar.chain_rank(n)).collect();
        Ok(BarInvariants { variant: bar.variant(), chain_ranks, diffs })
    }

    pub fn variant(&self) -> BarVariant {
        self.variant
    }

    fn top(&self) -> usize {
        self.diffs.len() - 1
    }

    /// `Hₙ = Z^{cₙ − rₙ − r_{n+1}} ⊕ torsion(d_{n+1})`.
    pub fn homology(&self, n: usize) -> Result<FgAb> {
        if n + 1 > self.top() {
            return Err(Error::DegreeOutOfRange { degree: n, max: self.top().saturating_sub(1) });
        }
        let free = self.chain_ranks[n] - self.diffs[n].rank - self.diffs[n + 1].rank;
        Ok(FgAb::from_cyclic_orders(&with_free(free, &self.diffs[n + 1].torsion)))
    }

    /// `Hⁿ = Z^{cₙ − rₙ − r_{n+1}} ⊕ torsion(dₙ)`.
    pub fn cohomology(&self, n: usize) -> Result<FgAb> {
        if n + 1 > self.top() {
            return Err(Error::DegreeOutOfRange { degree: n, max: self.top().saturating_sub(1) });
        }
        let free = self.chain_ranks[n] - self.diffs[n].rank - self.diffs[n + 1].rank;
        Ok(FgAb::from_cyclic_orders(&with_free(free, &self.diffs[n].torsion)))
    }
}

fn with_free(free: usize, torsion: &[Int]) -> Vec<Int> {
    let mut v = vec![Int::zero(); free];
    v.extend_from_slice(torsion);
    v
}

/// `Hᵢ(G; Z)` from the bar complex.
pub fn homology(g: &FgAb, i: usize) -> Result<FgAb> {
    BarInvariants::compute(g, i + 1)?.homology(i)
}

/// `Hⁱ(G; Z)` from the dual of the bar complex.
pub fn cohomology_z(g: &FgAb, i: usize) -> Result<FgAb> {
    BarInvariants::compute(g, i + 1)?.cohomology(i)
}

/// `Hⁱ(G; Z)` from the product of periodic resolutions; works in every
/// degree for every finite abelian group.
pub fn cohomology_resolution(g: &FgAb, i: usize) -> Result<FgAb> {
    Ok(CohomologyGroup::new(g, i, CochainModel::Resolution)?.group().clone())
}

/// `Hᵢ(G; Z)` from the product of periodic resolutions.
pub fn homology_resolution(g: &FgAb, i: usize) -> Result<FgAb> {
    let r = ProductResolution::new(g)?;
    let into = FgAbMap::new(FgAb::free(r.basis(i + 1).len()), FgAb::free(r.basis(i).len()), r.chain_differential(i + 1))?;
    let out = FgAbMap::new(
        FgAb::free(r.basis(i).len()),
        FgAb::free(if i == 0 { 0 } else { r.basis(i - 1).len() }),
        r.chain_differential(i),
    )?;
    crate::fgab::homology_at(&into, &out)
}

/// Whether `Λⁱ G ≅ Hᵢ(G; Z)`, for `i ≤ 2`.
pub fn lambda_compare(g: &FgAb, i: usize) -> Result<bool> {
    if i > 2 {
        return Err(Error::DegreeOutOfRange { degree: i, max: 2 });
    }
    Ok(lambda(g, i) == homology(g, i)?)
}

/// Where cochains live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CochainModel {
    Bar(BarVariant),
    Resolution,
}

/// Largest cochain group handled densely by the bar model.
pub const DENSE_BUDGET: usize = 4096;

impl CochainModel {
    /// Bar complex when its cochains are small enough to handle densely,
    /// the resolution model otherwise.
    pub fn choose(g: &FgAb, i: usize) -> CochainModel {
        match BarComplex::new(g, i + 1) {
            Ok(b) if b.chain_rank(i + 1) <= DENSE_BUDGET => CochainModel::Bar(b.variant()),
            _ => CochainModel::Resolution,
        }
    }
}

/// `Hⁱ(G; Z)` with explicit cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    group: FgAb,
    degree: usize,
    model: CochainModel,
    sq: Subquotient,
}

impl CohomologyGroup {
    pub fn new(g: &FgAb, i: usize, model: CochainModel) -> Result<Self> {
        let (delta_in, delta_out) = match model {
            CochainModel::Bar(v) => {
                let b = BarComplex::with_variant(g, i + 1, v)?;
                (b.boundary(i)?.transpose().to_dense(), b.boundary(i + 1)?.transpose().to_dense())
            }
            CochainModel::Resolution => {
                let r = ProductResolution::new(g)?;
                let inc = if i == 0 { IntMatrix::zeros(1, 0) } else { r.cochain_differential(i - 1) };
                (inc, r.cochain_differential(i))
            }
        };
        let sq = Subquotient::new(&kernel(&delta_out), &delta_in);
        Ok(CohomologyGroup { group: g.clone(), degree: i, model, sq })
    }

    pub fn group(&self) -> &FgAb {
        self.sq.group()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn model(&self) -> CochainModel {
        self.model
    }

    pub fn representatives(&self) -> &[Vec<Int>] {
        self.sq.generators()
    }

    /// Class of a cocycle; `None` if it is not a cocycle.
    pub fn class_of(&self, cocycle: &[Int]) -> Option<Vec<Int>> {
        self.sq.try_coords(cocycle)
    }

    /// `Ψᵐ`, induced by `g ↦ mg`, on this group.
    pub fn weight_map(&self, m: i64) -> Result<FgAbMap> {
        let h = self.group();
        let image = |x: &[Int]| -> Result<Vec<Int>> {
            let y = match self.model {
                CochainModel::Bar(v) => {
                    let b = BarComplex::with_variant(&self.group, self.degree, v)?;
                    // (Ψf)[t] = f[m·t]: the transpose of the chain-level action
                    b.multiplication(self.degree, m).transpose().mul_vec(x)
                }
                CochainModel::Resolution => {
                    let w = ProductResolution::new(&self.group)?.multiplication_weights(self.degree, m);
                    x.iter().zip(&w).map(|(a, b)| a * b).collect()
                }
            };
            Ok(self.sq.coords(&y))
        };
        let cols = self.representatives().iter().map(|x| image(x)).collect::<Result<Vec<_>>>()?;
        FgAbMap::new(h.clone(), h.clone(), IntMatrix::from_columns(h.ngens(), &cols))
    }
}

/// `Ψᵐ` on `Hⁱ(G; Z)` in its canonical generators.
pub fn weight_matrix(g: &FgAb, m: i64, i: usize) -> Result<FgAbMap> {
    CohomologyGroup::new(g, i, CochainModel::choose(g, i))?.weight_map(m)
}

/// `Ψᵐ = mᵏ·id` on `Hⁱ(G; Z)` for every `m` in `ms`.
pub fn verify_weight(g: &FgAb, i: usize, k: u32, ms: &[i64]) -> Result<bool> {
    let h = CohomologyGroup::new(g, i, CochainModel::choose(g, i))?;
    verify_weight_on(&h, k, ms)
}

pub fn verify_weight_on(h: &CohomologyGroup, k: u32, ms: &[i64]) -> Result<bool> {
    for &m in ms {
        let psi = h.weight_map(m)?;
        let target = FgAbMap::scalar(h.group(), &Pow::pow(&Int::from(m), k));
        if psi != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(Ψᵛ − v²)(Ψᵛ − v³) = 0` on `Hⁱ(G; Z)` for every `v` in `vs`.
pub fn verify_23_extension(g: &FgAb, i: usize, vs: &[i64]) -> Result<bool> {
    let h = CohomologyGroup::new(g, i, CochainModel::choose(g, i))?;
    verify_23_on(&h, vs, 1)
}

/// Some word `P₂ᵃ P₃ᵇ` with `a + b ≤ 2·budget` annihilates the group for
/// each `v`; `budget = 1` is the single word `P₂ P₃`.
pub fn verify_23_on(h: &CohomologyGroup, vs: &[i64], budget: usize) -> Result<bool> {
    let grp = h.group();
    for &v in vs {
        let psi = h.weight_map(v)?;
        let p2 = psi.sub(&FgAbMap::scalar(grp, &Int::from(v * v)))?;
        let p3 = psi.sub(&FgAbMap::scalar(grp, &Pow::pow(&Int::from(v), 3u32)))?;
        let mut found = false;
        'words: for a in 1..=budget {
            for b in 1..=budget {
                let mut w = FgAbMap::identity(grp);
                for _ in 0..a {
                    w = p2.compose(&w)?;
                }
                for _ in 0..b {
                    w = p3.compose(&w)?;
                }
                if w.is_zero() {
                    found = true;
                    break 'words;
                }
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weight of a cohomology group as a label: a single `k`, or `2-3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightLabel {
    Pure(u32),
    Mixed(String),
}

impl std::fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightLabel::Pure(k) => write!(f, "{k}"),
            WeightLabel::Mixed(s) => f.write_str(s),
        }
    }
}

/// Smallest pure weight `k ≤ max_k` valid for all `ms`, else `2-3` if that
/// holds, else `None`.
pub fn classify_weight(h: &CohomologyGroup, ms: &[i64], max_k: u32) -> Result<Option<WeightLabel>> {
    for k in 0..=max_k {
        if verify_weight_on(h, k, ms)? {
            return Ok(Some(WeightLabel::Pure(k)));
        }
    }
    if verify_23_on(h, ms, 1)? {
        return Ok(Some(WeightLabel::Mixed("2-3".into())));
    }
    Ok(None)
}

/// `Hⁱ(Z/p; Z)` for `i = 0 … max_degree` from the bar complex.
pub fn cyclic_cohomology_table(p: i64, max_degree: usize) -> Result<Vec<FgAb>> {
    let inv = BarInvariants::compute(&FgAb::cyclic(p), max_degree + 1)?;
    (0..=max_degree).map(|i| inv.cohomology(i)).collect()
}

/// `Hⁱ(Z/p; Z)` predicted by the periodic pattern `Z, 0, Z/p, 0, Z/p, …`.
pub fn cyclic_cohomology_expected(p: i64, i: usize) -> FgAb {
    if i == 0 {
        FgAb::z()
    } else if i % 2 == 1 {
        FgAb::zero()
    } else {
        FgAb::cyclic(p)
    }
}

/// A full residue system of multipliers modulo `n` prime to `n`.
pub fn units_mod(n: i64) -> Vec<i64> {
    (1..n).filter(|&m| num_integer::Integer::gcd(&m, &n) == 1).collect()
}

/// All finite abelian groups of order at most `n`.
pub fn abelian_groups_up_to(n: u64) -> Vec<FgAb> {
    fn rec(prev: u64, remaining: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(acc.clone());
        let mut d = prev;
        while d <= remaining {
            if acc.last().is_none_or(|&l| d % l == 0) {
                acc.push(d);
                rec(d, remaining / d, acc, out);
                acc.pop();
            }
            d += 1;
        }
    }
    let mut raw = Vec::new();
    rec(2, n, &mut Vec::new(), &mut raw);
    let mut groups: Vec<FgAb> = raw
        .into_iter()
        .map(|fs| FgAb::from_canonical(0, fs.iter().map(|&x| Int::from(x)).collect()))
        .collect();
    groups.sort_by_key(|g| (g.order().unwrap_or_else(Int::one), g.factors().len()));
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_squared_second_homology() {
        let g = FgAb::from_factors(0, &[2, 2]);
        assert_eq!(homology(&g, 2).unwrap(), FgAb::cyclic(2));
        assert_eq!(homology(&g, 1).unwrap(), g);
        assert!(lambda_compare(&g, 2).unwrap());
    }

    #[test]
    fn cyclic_table_small_primes() {
        for p in [2, 3] {
            let t = cyclic_cohomology_table(p, 6).unwrap();
            for (i, h) in t.iter().enumerate() {
                assert_eq!(h, &cyclic_cohomology_expected(p, i), "p = {p}, i = {i}");
            }
        }
    }

    #[test]
    fn resolution_model_agrees_with_bar() {
        for g in [FgAb::cyclic(4), FgAb::from_factors(0, &[2, 2]), FgAb::cyclic(6)] {
            for i in 0..4 {
                assert_eq!(cohomology_resolution(&g, i).unwrap(), cohomology_z(&g, i).unwrap(), "{g} {i}");
                assert_eq!(homology_resolution(&g, i).unwrap(), homology(&g, i).unwrap(), "{g} {i}");
            }
        }
    }

    #[test]
    fn cyclic_weights() {
        let g = FgAb::cyclic(5);
        for k in 1..=2u32 {
            let h = CohomologyGroup::new(&g, 2 * k as usize, CochainModel::choose(&g, 2 * k as usize)).unwrap();
            assert!(matches!(h.model(), CochainModel::Bar(_)));
            assert!(verify_weight_on(&h, k, &[2, 3, 4]).unwrap());
            assert!(!verify_weight_on(&h, k + 1, &[2]).unwrap());
        }
    }

    #[test]
    fn groups_up_to_sixteen() {
        let gs = abelian_groups_up_to(16);
        let count16 = gs.iter().filter(|g| g.order() == Some(Int::from(16))).count();
        assert_eq!(count16, 5);
        assert_eq!(gs[0], FgAb::zero());
    }

    #[test]
    fn degree_guard() {
        assert!(lambda_compare(&FgAb::cyclic(2), 3).is_err());
        assert!(kcomplex_cohomology(1).is_err());
    }
}
