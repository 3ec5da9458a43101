//! The Serre filtration of `H³(E; Z)` for a principal `Tⁿ`-bundle, assembled
//! from the cohomology of the base, and the symbol test for T-duals.

use serde::{Deserialize, Serialize};

use super::QGroup;
use crate::error::{Error, Result};
use crate::fgab::functors::subsets;
use crate::fgab::{homology_at, BlockSum, FgAb, FgAbMap, Int, IntMatrix, Subgroup};
use crate::json::{int_vec, int_vec_vec};

/// Largest Γ_E that is enumerated element by element.
const GAMMA_ENUMERATION_LIMIT: u64 = 4096;

/// `H³(E)` in associated-graded coordinates relative to a splitting of the
/// filtration: `E^{0,3}` in `H⁰(B; Λ³Zⁿ)`, `E^{1,2}` in `H¹(B; Λ²Zⁿ)`,
/// `E^{2,1}` in `H²(B; Zⁿ)`, `E^{3,0}` in `H³(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HClass {
    #[serde(with = "int_vec_vec")]
    pub e03: Vec<Vec<Int>>,
    #[serde(with = "int_vec_vec")]
    pub e12: Vec<Vec<Int>>,
    #[serde(with = "int_vec_vec")]
    pub e21: Vec<Vec<Int>>,
    #[serde(with = "int_vec")]
    pub e30: Vec<Int>,
}

impl HClass {
    /// A class with vanishing symbols.
    pub fn graded(q: &QGroup, e21: Vec<Vec<Int>>) -> Self {
        let ring = q.ring();
        let n = q.chern().n();
        HClass {
            e03: vec![ring.group(0).zero_element(); subsets(n, 3).len()],
            e12: vec![ring.group(1).zero_element(); subsets(n, 2).len()],
            e21,
            e30: ring.group(3).zero_element(),
        }
    }

    pub fn with_e30(mut self, e30: Vec<Int>) -> Self {
        self.e30 = e30;
        self
    }
}

/// Whether a pair admits a T-dual: the `E^{0,3}` and `E^{1,2}` symbols of
/// the flux vanish, i.e. it lies in `F²H³(E)`.
pub fn exists_tdual(q: &QGroup, h: &HClass) -> Result<bool> {
    check_shapes(q, h)?;
    let ring = q.ring();
    let zero = |g: &FgAb, blocks: &[Vec<Int>]| blocks.iter().all(|b| g.is_zero_element(b));
    Ok(zero(&ring.group(0), &h.e03) && zero(&ring.group(1), &h.e12))
}

pub(super) fn check_shapes(q: &QGroup, h: &HClass) -> Result<()> {
    let ring = q.ring();
    let n = q.chern().n();
    let ok = |blocks: &[Vec<Int>], count: usize, g: &FgAb| blocks.len() == count && blocks.iter().all(|b| b.len() == g.ngens());
    if !ok(&h.e03, subsets(n, 3).len(), &ring.group(0)) {
        return Err(Error::Malformed("e03 must hold one H^0 element per triple i<j<k".into()));
    }
    if !ok(&h.e12, subsets(n, 2).len(), &ring.group(1)) {
        return Err(Error::Malformed("e12 must hold one H^1 element per pair i<j".into()));
    }
    if !ok(&h.e21, n, &ring.group(2)) {
        return Err(Error::Malformed("e21 must hold one H^2 element per circle".into()));
    }
    if h.e30.len() != ring.group(3).ngens() {
        return Err(Error::Malformed("e30 must lie in H^3".into()));
    }
    Ok(())
}

/// The pieces of `F²H³(E)`:
/// `0 → A/Γ_E → F²H³(E) → Bpart → 0` with `A = coker α`,
/// `Bpart = ker β / im ι_c`, `K = ker ι_c` and `Γ_E = im(d₃ : K → A)`.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationModel {
    pub n: usize,
    #[serde(skip)]
    lambda2: BlockSum,
    #[serde(skip)]
    iota: FgAbMap,
    #[serde(skip)]
    iota_flat: IntMatrix,
    #[serde(skip)]
    k: Subgroup,
    #[serde(skip)]
    d3: FgAbMap,
    pub k_rank: usize,
    pub a: FgAb,
    pub bpart: FgAb,
    pub gamma: FgAb,
    pub a_mod_gamma: FgAb,
    /// `F²H³(E)` when the extension is forced by the graded pieces.
    pub f2h3: Option<FgAb>,
    /// A lift `s : K → H³(B)` of `d₃`, one column per basis element of `K`.
    #[serde(skip)]
    lift: Vec<Vec<Int>>,
}

impl FiltrationModel {
    pub fn build(q: &QGroup) -> Result<Self> {
        let ring = q.ring();
        let c = q.chern();
        let n = c.n();
        let pairs = subsets(n, 2);
        let h0 = ring.group(0);
        let lambda2 = BlockSum::power(&h0, pairs.len());
        let g2 = ring.group(2).ngens();
        // ι_c(e_a · eᵢ∧eⱼ) = (e_a ∪ cᵢ) in slot j, −(e_a ∪ cⱼ) in slot i
        let mut m = IntMatrix::zeros(n * g2, lambda2.dim());
        for (pi, pair) in pairs.iter().enumerate() {
            let (i, j) = (pair[0], pair[1]);
            for a in 0..h0.ngens() {
                let col = lambda2.offset(pi) + a;
                let e = h0.basis_element(a);
                let ci = ring.cup(0, &e, 2, &c.components()[i])?;
                let cj = ring.cup(0, &e, 2, &c.components()[j])?;
                for r in 0..g2 {
                    m[(j * g2 + r, col)] += &ci[r];
                    m[(i * g2 + r, col)] -= &cj[r];
                }
            }
        }
        let iota = lambda2.map_to(q.h2n(), &m)?;
        let k = iota.kernel();
        let a_quot = q.coker_alpha_quotient();
        let a = a_quot.group.clone();

        let trans = match c.transgression() {
            None => IntMatrix::zeros(a.ngens(), lambda2.dim()),
            Some(images) => {
                if images.len() != lambda2.dim() || images.iter().any(|v| v.len() != a.ngens()) {
                    return Err(Error::Malformed(format!(
                        "transgression needs {} images in coker(alpha) = {a}",
                        lambda2.dim()
                    )));
                }
                IntMatrix::from_columns(a.ngens(), images)
            }
        };
        let k_flat: Vec<Vec<Int>> = (0..k.group.ngens())
            .map(|j| lambda2.flatten(&lambda2.from_canonical(&k.inclusion.apply(&k.group.basis_element(j)))))
            .collect();
        let d3_cols: Vec<Vec<Int>> = k_flat.iter().map(|v| a.reduce(&trans.mul_vec(v))).collect();
        let d3 = FgAbMap::new(k.group.clone(), a.clone(), IntMatrix::from_columns(a.ngens(), &d3_cols))?;
        let gamma = d3.image().group;
        let a_mod_gamma = d3.cokernel().group;
        let bpart = homology_at(&iota, q.beta_map())?;
        let f2h3 = if a_mod_gamma.is_zero() {
            Some(bpart.clone())
        } else if bpart.is_zero() || bpart.is_free() {
            Some(a_mod_gamma.direct_sum(&bpart))
        } else {
            None
        };
        let lift = d3_cols.iter().map(|v| a_quot.lift(v)).collect();
        Ok(FiltrationModel {
            n,
            k_rank: k.group.free_rank(),
            lambda2,
            iota,
            iota_flat: m,
            k,
            d3,
            a,
            bpart,
            gamma,
            a_mod_gamma,
            f2h3,
            lift,
        })
    }

    pub fn iota(&self) -> &FgAbMap {
        &self.iota
    }

    pub fn k(&self) -> &FgAb {
        &self.k.group
    }

    pub fn d3(&self) -> &FgAbMap {
        &self.d3
    }

    pub fn gamma(&self) -> &FgAb {
        &self.gamma
    }

    pub fn lift(&self) -> &[Vec<Int>] {
        &self.lift
    }

    /// `ι_c(λ)` for `λ ∈ H⁰(B; Λ²Zⁿ)` in block form, pairs `i < j`
    /// lexicographic.
    pub fn iota_apply(&self, q: &QGroup, lambda: &[Vec<Int>]) -> Vec<Vec<Int>> {
        q.h2n().split(&self.iota_flat.mul_vec(&self.lambda2.flatten(lambda)))
    }

    /// Images of the standard basis of `H⁰(B; Λ²Zⁿ)`.
    pub(super) fn iota_images(&self, q: &QGroup) -> Vec<Vec<Vec<Int>>> {
        (0..self.lambda2.dim()).map(|j| q.h2n().split(&self.iota_flat.column(j))).collect()
    }

    /// `Γ_E = (im α + im s)/im α` computed from an explicit lift `s`.
    /// Fails unless `s` lifts `d₃`.
    pub fn gamma_from_lift(&self, q: &QGroup, s: &[Vec<Int>]) -> Result<FgAb> {
        if s.len() != self.k.group.ngens() {
            return Err(Error::Malformed("one lift per basis element of K is required".into()));
        }
        let proj = &q.coker_alpha_quotient().projection;
        let cols: Vec<Vec<Int>> = s.iter().map(|v| proj.apply(v)).collect();
        for (j, col) in cols.iter().enumerate() {
            if !self.a.is_zero_element(&self.a.add(col, &self.a.neg(&self.d3.apply(&self.k.group.basis_element(j))))) {
                return Err(Error::Invariant(format!("lift {j} does not project to d3")));
            }
        }
        let m = FgAbMap::new(self.k.group.clone(), self.a.clone(), IntMatrix::from_columns(self.a.ngens(), &cols))?;
        Ok(m.image().group)
    }

    /// Elements of Γ_E as elements of `A`, when Γ_E is small and finite.
    pub fn gamma_elements(&self) -> Option<Vec<Vec<Int>>> {
        let order = self.gamma.order()?;
        if order > Int::from(GAMMA_ENUMERATION_LIMIT) {
            return None;
        }
        let inc = self.d3.image().inclusion;
        Some(self.gamma.elements().iter().map(|g| inc.apply(g)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{q_group, ChernClass, Classifier};
    use super::*;
    use crate::fgab::ints;
    use crate::simplicial::{ring_of, CohRing, SimplicialComplex};

    #[test]
    fn iota_sign_convention() {
        let t = ring_of(&SimplicialComplex::torus7(), "torus").unwrap();
        let c = ChernClass::new(&t, vec![ints(&[2]), ints(&[5])]).unwrap();
        let q = q_group(&t, &c).unwrap();
        let f = FiltrationModel::build(&q).unwrap();
        // e₁∧e₂ ↦ (−c₂, c₁)
        assert_eq!(f.iota_apply(&q, &[ints(&[1])]), vec![ints(&[-5]), ints(&[2])]);
        assert!(q.beta_map().compose(f.iota()).unwrap().is_zero());
    }

    #[test]
    fn hopf_bundle() {
        let s = ring_of(&SimplicialComplex::sphere2(), "S2").unwrap();
        let q = q_group(&s, &ChernClass::new(&s, vec![ints(&[1])]).unwrap()).unwrap();
        let f = FiltrationModel::build(&q).unwrap();
        assert_eq!(f.f2h3, Some(FgAb::z()));
        assert!(exists_tdual(&q, &HClass::graded(&q, vec![ints(&[0])])).unwrap());
    }

    #[test]
    fn nonzero_top_symbol_blocks_duals() {
        let pt = CohRing::point();
        let q = q_group(&pt, &ChernClass::trivial(&pt, 3)).unwrap();
        let mut h = HClass::graded(&q, vec![vec![]; 3]);
        assert!(exists_tdual(&q, &h).unwrap());
        h.e03 = vec![ints(&[1])];
        assert!(!exists_tdual(&q, &h).unwrap());
    }

    /// `H⁰ = Z`, `H¹ = Z·u`, `H² = Z/2·g`, `H³ = Z/2 ⊕ Z/6` with `u ∪ g = (1, 0)`.
    fn twisted_ring() -> CohRing {
        use crate::simplicial::CupTable;
        let t = |p, q, table: Vec<Vec<Vec<i64>>>| CupTable {
            p,
            q,
            table: table.into_iter().map(|r| r.into_iter().map(|e| ints(&e)).collect()).collect(),
        };
        let groups = vec![FgAb::z(), FgAb::z(), FgAb::cyclic(2), FgAb::from_factors(0, &[2, 6]), FgAb::zero()];
        let tables = vec![
            t(0, 0, vec![vec![vec![1]]]),
            t(0, 1, vec![vec![vec![1]]]),
            t(1, 0, vec![vec![vec![1]]]),
            t(0, 2, vec![vec![vec![1]]]),
            t(2, 0, vec![vec![vec![1]]]),
            t(0, 3, vec![vec![vec![1, 0], vec![0, 1]]]),
            t(3, 0, vec![vec![vec![1, 0]], vec![vec![0, 1]]]),
            t(1, 1, vec![vec![vec![0]]]),
            t(1, 2, vec![vec![vec![1, 0]]]),
            t(2, 1, vec![vec![vec![1, 0]]]),
            t(2, 2, vec![vec![vec![]]]),
            t(1, 3, vec![vec![vec![], vec![]]]),
            t(3, 1, vec![vec![vec![]], vec![vec![]]]),
        ];
        CohRing::new("twisted", groups, ints(&[1]), tables).unwrap()
    }

    #[test]
    fn gamma_with_transgression_is_lift_independent() {
        let ring = twisted_ring();
        let c = ChernClass::new(&ring, vec![ints(&[1]), ints(&[1])]).unwrap().with_transgression(vec![ints(&[2])]);
        let cl = Classifier::new(&ring, &c).unwrap();
        let f = cl.filtration();
        assert_eq!(f.a, FgAb::cyclic(6));
        assert_eq!(f.k_rank, 1);
        assert_eq!(f.gamma, FgAb::cyclic(3));
        let s1 = f.lift().to_vec();
        // shift by α(u, 0) = (1, 0)
        let h3 = ring.group(3);
        let s2: Vec<Vec<Int>> = s1.iter().map(|v| h3.add(v, &ints(&[1, 0]))).collect();
        assert_ne!(s1, s2);
        assert_eq!(f.gamma_from_lift(cl.q(), &s1).unwrap(), FgAb::cyclic(3));
        assert_eq!(f.gamma_from_lift(cl.q(), &s2).unwrap(), FgAb::cyclic(3));
        assert!(f.gamma_from_lift(cl.q(), &[ints(&[0, 1])]).is_err());
        let h = HClass::graded(cl.q(), vec![ints(&[0]), ints(&[0])]).with_e30(ints(&[0, 1]));
        let e = cl.enumerate_duals(&h, 0).unwrap();
        assert_eq!(e.duals.len(), 1);
        assert_eq!(e.duals[0].orbit.len(), 3);
        assert_eq!(cl.enumerate_duals(&h, 1).unwrap().duals.len(), 2);
    }
}
