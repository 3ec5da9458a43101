//! Admissibility and the two-three condition for finite-type groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::FtLca;
use crate::fgab::FgAb;

/// Sites ordered from largest to smallest; admissibility on a site implies
/// admissibility on every smaller one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Site {
    #[serde(rename = "S")]
    S,
    #[serde(rename = "S_lc")]
    SLc,
    #[serde(rename = "S_lc-acyc")]
    SLcAcyc,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Site::S => "S",
            Site::SLc => "S_lc",
            Site::SLcAcyc => "S_lc-acyc",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    /// Largest site on which admissibility was established.
    pub site: Site,
    pub reasons: Vec<String>,
}

impl AdmissibilityVerdict {
    pub fn admissible_on(&self, site: Site) -> bool {
        self.admissible && site >= self.site
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TwoThreeReport {
    /// Rank of the 2-torsion; finite rank rules out an infinite
    /// elementary 2-group subquotient.
    pub two_torsion_rank: usize,
    /// Cokernel of multiplication by 3 on the identity component `Tᵇ × Rᶜ`.
    pub three_cokernel: FgAb,
    pub holds: bool,
}

pub fn two_three_report(g: &FtLca) -> TwoThreeReport {
    // circles contribute 2-torsion Z/2 each, lines none; F contributes its
    // even cyclic factors. Multiplication by 3 is onto on T and R.
    let two_torsion_rank = g.finite_part().p_rank(2) + g.torus_rank();
    let three_cokernel = FgAb::zero();
    TwoThreeReport { two_torsion_rank, holds: three_cokernel.is_finite(), three_cokernel }
}

pub fn two_three_condition(g: &FtLca) -> bool {
    two_three_report(g).holds
}

/// Every elementary factor is admissible on the full site, and admissibility
/// is stable under finite products, so the verdict is assembled factor-wise.
pub fn admissible(g: &FtLca) -> AdmissibilityVerdict {
    let mut reasons = Vec::new();
    if g.z_rank() > 0 || !g.finite_part().is_zero() {
        reasons.push(format!(
            "finitely generated discrete part Z^{} + {} is admissible on S",
            g.z_rank(),
            g.finite_part()
        ));
    }
    if g.torus_rank() > 0 {
        reasons.push(format!("circle factor T^{} is admissible on S", g.torus_rank()));
    }
    if g.real_rank() > 0 {
        reasons.push(format!("vector factor R^{} is admissible on S", g.real_rank()));
    }
    reasons.push("admissible groups are closed under finite products".into());
    let tt = two_three_report(g);
    reasons.push(format!(
        "two-three condition holds: 2-torsion rank {}, cokernel of 3 on the identity component is {}",
        tt.two_torsion_rank, tt.three_cokernel
    ));
    reasons.push(
        "open subgroup (compact) x R^n with finitely generated discrete quotient, so admissible over S_lc as well"
            .into(),
    );
    AdmissibilityVerdict { admissible: true, site: Site::S, reasons }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_with_two_torsion() {
        let g = FtLca::new(0, 1, 0, FgAb::cyclic(2));
        assert!(two_three_condition(&g));
        let v = admissible(&g);
        assert!(v.admissible_on(Site::SLc));
        assert!(v.admissible_on(Site::S));
    }

    #[test]
    fn elementary_groups_on_full_site() {
        for g in [FtLca::integers(1), FtLca::reals(1)] {
            assert_eq!(admissible(&g).site, Site::S);
        }
    }
}
