//! Picard stacks over a base, represented by their classification data
//! `(H⁻¹, H⁰, φ ∈ Ext²(H⁰, H⁻¹))`, and their duals.
//!
//! Coefficient sheaves are constant sheaves of finite-type groups. Extension
//! groups of such sheaves are computed from the integral cohomology of the
//! base through the local-global spectral sequence, which degenerates because
//! the sheaf Ext groups into `T` vanish for admissible groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{tensor, tor, BlockSum, FgAb, FgAbMap, Int, IntMatrix};
use crate::json::{int_vec_vec, SCHEMA_VERSION};
use crate::lca::{admissible, double_dual_check, dual, Factor, FtLca};
use crate::simplicial::CohRing;

/// Ext groups between constant sheaves over a base with known cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtBackend {
    ring: CohRing,
}

/// How a block of `Ext²(H⁰, H⁻¹)` is identified with base cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// `Ext²(Z, T) ≅ H³(B; Z)`: the gerbe class.
    Gerbe,
    /// Every other block, identified with `H²(B; M)` for a discrete `M`.
    Transport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtBlock {
    /// Index into the factors of the source sheaf.
    pub source: usize,
    /// Index into the factors of the target sheaf.
    pub target: usize,
    pub kind: BlockKind,
    pub group: FgAb,
}

/// `Extᵖ(A, B) = ⊕ Extᵖ(aᵢ, bⱼ)` over elementary factors, block order
/// `(i, j)` lexicographic.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub blocks: Vec<ExtBlock>,
    sum: BlockSum,
}

impl ExtGroup {
    pub fn group(&self) -> &FgAb {
        self.sum.group()
    }

    pub fn zero(&self) -> Vec<Vec<Int>> {
        self.sum.zero()
    }

    pub fn contains(&self, x: &[Vec<Int>]) -> bool {
        x.len() == self.blocks.len() && x.iter().zip(&self.blocks).all(|(v, b)| v.len() == b.group.ngens())
    }

    pub fn reduce(&self, x: &[Vec<Int>]) -> Vec<Vec<Int>> {
        self.sum.reduce(x)
    }

    pub fn to_canonical(&self, x: &[Vec<Int>]) -> Vec<Int> {
        self.sum.to_canonical(x)
    }

    pub fn block_sum(&self) -> &BlockSum {
        &self.sum
    }
}

impl ExtBackend {
    pub fn point() -> Self {
        ExtBackend { ring: CohRing::point() }
    }

    pub fn over(ring: CohRing) -> Self {
        ExtBackend { ring }
    }

    pub fn ring(&self) -> &CohRing {
        &self.ring
    }

    pub fn name(&self) -> &str {
        self.ring.name()
    }

    /// `Hᵖ(B; Z)`, zero above the recorded range.
    pub fn h(&self, p: usize) -> FgAb {
        self.ring.group(p)
    }

    /// `Hᵖ(B; Z/n) ≅ Hᵖ ⊗ Z/n ⊕ Tor(H^{p+1}, Z/n)`.
    pub fn h_mod(&self, p: usize, n: &Int) -> FgAb {
        let zn = FgAb::from_cyclic_orders(std::slice::from_ref(n));
        tensor(&self.h(p), &zn).direct_sum(&tor(&self.h(p + 1), &zn))
    }

    /// Sheaf `Ext^q(G, T)` for `q ∈ {1, 2}`; zero for every admissible
    /// finite-type group.
    pub fn sheaf_ext_circle(&self, q: usize, g: &FtLca) -> Result<FgAb> {
        if !(1..=2).contains(&q) {
            return Err(Error::DegreeOutOfRange { degree: q, max: 2 });
        }
        if !admissible(g).admissible {
            return Err(Error::Unsupported(format!("sheaf Ext into T of non-admissible {g}")));
        }
        Ok(FgAb::zero())
    }

    /// `Extᵖ(x|B, y|B)` for elementary factors and `p ∈ {1, 2}`.
    pub fn ext_elementary(&self, p: usize, x: &Factor, y: &Factor) -> Result<(FgAb, BlockKind)> {
        use Factor::*;
        if !(1..=2).contains(&p) {
            return Err(Error::DegreeOutOfRange { degree: p, max: 2 });
        }
        let transport = |g: FgAb| Ok((g, BlockKind::Transport));
        match (x, y) {
            // Hom(Z, T) = T and Hᵖ(B; T) ≅ H^{p+1}(B; Z)
            (Z, T) => Ok((self.h(p + 1), if p == 2 { BlockKind::Gerbe } else { BlockKind::Transport })),
            (Z, Z) => transport(self.h(p)),
            (Z, Cyclic(n)) => transport(self.h_mod(p, n)),
            // Hom(T, T) = Z
            (T, T) => transport(self.h(p)),
            // Hom(Z/n, T) = Z/n
            (Cyclic(n), T) => transport(self.h_mod(p, n)),
            // fine coefficient sheaves are acyclic
            (Z, R) | (R, T) => transport(FgAb::zero()),
            _ => Err(Error::Unsupported(format!(
                "Ext^{p}({x}, {y}) involves sheaf Ext terms the backend does not model"
            ))),
        }
    }

    pub fn ext(&self, p: usize, a: &FtLca, b: &FtLca) -> Result<ExtGroup> {
        let mut blocks = Vec::new();
        for (i, x) in a.factors().iter().enumerate() {
            for (j, y) in b.factors().iter().enumerate() {
                let (group, kind) = self.ext_elementary(p, x, y)?;
                blocks.push(ExtBlock { source: i, target: j, kind, group });
            }
        }
        let sum = BlockSum::new(blocks.iter().map(|b| b.group.clone()).collect());
        Ok(ExtGroup { degree: p, blocks, sum })
    }
}

/// Classification data of a Picard stack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicClass {
    pub hminus1: FtLca,
    pub h0: FtLca,
    /// Block coordinates in `Ext²(H⁰, H⁻¹)`.
    #[serde(with = "int_vec_vec")]
    pub phi: Vec<Vec<Int>>,
    /// Marks `H⁰` as non-admissible regardless of its structure.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub flagged_non_admissible: bool,
}

impl PicClass {
    /// Validates `phi` against the backend and reduces it.
    pub fn new(backend: &ExtBackend, hminus1: FtLca, h0: FtLca, phi: Vec<Vec<Int>>) -> Result<Self> {
        let g = backend.ext(2, &h0, &hminus1)?;
        if !g.contains(&phi) {
            return Err(Error::Malformed(format!("phi does not match the block shape of Ext^2({h0}, {hminus1})")));
        }
        Ok(PicClass { phi: g.reduce(&phi), hminus1, h0, flagged_non_admissible: false })
    }

    /// The class with `φ = 0`.
    pub fn split(backend: &ExtBackend, hminus1: FtLca, h0: FtLca) -> Result<Self> {
        let z = backend.ext(2, &h0, &hminus1)?.zero();
        Self::new(backend, hminus1, h0, z)
    }

    pub fn flagged(mut self) -> Self {
        self.flagged_non_admissible = true;
        self
    }

    pub fn ext_group(&self, backend: &ExtBackend) -> Result<ExtGroup> {
        backend.ext(2, &self.h0, &self.hminus1)
    }

    /// Components of `φ` in gerbe blocks, i.e. in `H³(B; Z)`.
    pub fn gerbe_components(&self, backend: &ExtBackend) -> Result<Vec<Vec<Int>>> {
        let g = self.ext_group(backend)?;
        Ok(g.blocks.iter().zip(&self.phi).filter(|(b, _)| b.kind == BlockKind::Gerbe).map(|(_, v)| v.clone()).collect())
    }
}

/// Index of the dual of factor `j` of `g` among the factors of `D(g)`.
fn dual_factor_index(g: &FtLca, j: usize) -> usize {
    let fs = g.factors();
    let kind = |f: &Factor| match f {
        Factor::Z => 0,
        Factor::Cyclic(_) => 1,
        Factor::T => 2,
        Factor::R => 3,
    };
    let dual_kind = |k: usize| match k {
        0 => 2,
        2 => 0,
        k => k,
    };
    let k = kind(&fs[j]);
    let rank = fs[..j].iter().filter(|f| kind(f) == k).count();
    let dk = dual_kind(k);
    dual(g)
        .factors()
        .iter()
        .enumerate()
        .filter(|(_, f)| kind(f) == dk)
        .nth(rank)
        .map(|(i, _)| i)
        .expect("duality preserves factor counts")
}

/// `𝒟 : Ext²(B, A) → Ext²(D(A), D(B))` on block coordinates: the gerbe
/// block is negated, every other block is transported unchanged.
pub fn curly_d(backend: &ExtBackend, b: &FtLca, a: &FtLca, x: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let src = backend.ext(2, b, a)?;
    let (da, db) = (dual(a), dual(b));
    let tgt = backend.ext(2, &da, &db)?;
    if !src.contains(x) {
        return Err(Error::Malformed("class does not match the Ext^2 block shape".into()));
    }
    let mut out = tgt.zero();
    for (blk, v) in src.blocks.iter().zip(x) {
        // block (bᵢ, aⱼ) goes to (D(aⱼ), D(bᵢ))
        let (i2, j2) = (dual_factor_index(a, blk.target), dual_factor_index(b, blk.source));
        let pos = tgt
            .blocks
            .iter()
            .position(|t| t.source == i2 && t.target == j2)
            .expect("dual block exists");
        if tgt.blocks[pos].group != blk.group {
            return Err(Error::Invariant(format!(
                "dual block groups differ: {} vs {}",
                blk.group, tgt.blocks[pos].group
            )));
        }
        out[pos] = match blk.kind {
            BlockKind::Gerbe => blk.group.neg(v),
            BlockKind::Transport => v.clone(),
        };
    }
    Ok(tgt.reduce(&out))
}

/// `𝒟` as a homomorphism between the canonical forms of the two Ext² groups.
pub fn curly_d_map(backend: &ExtBackend, b: &FtLca, a: &FtLca) -> Result<FgAbMap> {
    let src = backend.ext(2, b, a)?;
    let tgt = backend.ext(2, &dual(a), &dual(b))?;
    let mut m = IntMatrix::zeros(tgt.block_sum().dim(), src.block_sum().dim());
    for k in 0..src.block_sum().dim() {
        let mut e = vec![Int::from(0); src.block_sum().dim()];
        e[k] = Int::from(1);
        let img = curly_d(backend, b, a, &src.block_sum().split(&e))?;
        m.set_column(k, &tgt.block_sum().flatten(&img));
    }
    src.block_sum().map_to(tgt.block_sum(), &m)
}

fn admissibility_failure(p: &PicClass) -> Option<String> {
    if p.flagged_non_admissible {
        return Some(format!("H0 = {} is flagged non-admissible", p.h0));
    }
    let v = admissible(&p.h0);
    if !v.admissible {
        return Some(format!("H0 = {} is not admissible: {}", p.h0, v.reasons.join("; ")));
    }
    None
}

/// Dual Picard stack: `H⁻¹(D P) = D(H⁰ P)`, `H⁰(D P) = D(H⁻¹ P)`,
/// `φ(D P) = 𝒟 φ(P)`.
pub fn dual_pic(backend: &ExtBackend, p: &PicClass) -> Result<PicClass> {
    if let Some(why) = admissibility_failure(p) {
        return Err(Error::UnsupportedDuality(why));
    }
    let phi = curly_d(backend, &p.h0, &p.hminus1, &p.phi)
        .map_err(|e| Error::UnsupportedDuality(format!("the backend does not model both Ext^2 groups: {e}")))?;
    Ok(PicClass { hminus1: dual(&p.h0), h0: dual(&p.hminus1), phi, flagged_non_admissible: false })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualizabilityCertificate {
    pub dualizable: bool,
    pub hypotheses: Vec<Hypothesis>,
    /// Whether `D(D(P)) = P`; absent when a hypothesis fails.
    pub double_dual_matches: Option<bool>,
}

pub fn is_dualizable(backend: &ExtBackend, p: &PicClass) -> DualizabilityCertificate {
    let dualizable_parts = double_dual_check(&p.h0) && double_dual_check(&p.hminus1);
    let adm_h0 = admissibility_failure(p).is_none();
    let adm_dual = admissible(&dual(&p.hminus1)).admissible;
    let hypotheses = vec![
        Hypothesis { statement: format!("H0 = {} and H-1 = {} are dualizable", p.h0, p.hminus1), holds: dualizable_parts },
        Hypothesis {
            statement: format!("H0 = {} and D(H-1) = {} are admissible", p.h0, dual(&p.hminus1)),
            holds: adm_h0 && adm_dual,
        },
    ];
    if !hypotheses.iter().all(|h| h.holds) {
        return DualizabilityCertificate { dualizable: false, hypotheses, double_dual_matches: None };
    }
    let dd = dual_pic(backend, p).and_then(|d| dual_pic(backend, &d));
    let matches = matches!(&dd, Ok(q) if q == p);
    DualizabilityCertificate { dualizable: matches, hypotheses, double_dual_matches: Some(matches) }
}

/// `ch(F)`: the sheaf `F` in degree 0.
pub fn ch_of_sheaf(backend: &ExtBackend, f: &FtLca) -> Result<PicClass> {
    PicClass::split(backend, FtLca::zero(), f.clone())
}

/// `𝔅F`: the classifying stack, `F` in degree −1.
pub fn b_of_sheaf(backend: &ExtBackend, f: &FtLca) -> Result<PicClass> {
    PicClass::split(backend, f.clone(), FtLca::zero())
}

/// Dual of `ch(F)`: `H⁻¹ = D(F)` and `H⁰ = Ext¹(F, T)` (sheaf Ext).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChDual {
    pub hminus1: FtLca,
    pub ext1: FgAb,
    /// `D(ch F) = 𝔅(D F)` exactly when the Ext¹ term vanishes.
    pub clean: bool,
}

/// `D(ch F)`. The Ext¹ term is read from the backend, or supplied for a
/// group flagged non-admissible.
pub fn dual_of_ch(backend: &ExtBackend, f: &FtLca, flagged_ext1: Option<FgAb>) -> Result<ChDual> {
    let ext1 = match flagged_ext1 {
        Some(e) => e,
        None => backend.sheaf_ext_circle(1, f)?,
    };
    Ok(ChDual { hminus1: dual(f), clean: ext1.is_zero(), ext1 })
}

/// `D(𝔅F) = ch(D F)`.
pub fn dual_of_b(backend: &ExtBackend, f: &FtLca) -> Result<PicClass> {
    dual_pic(backend, &b_of_sheaf(backend, f)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PicJson {
    version: u32,
    backend: String,
    #[serde(flatten)]
    class: PicClass,
}

impl PicClass {
    pub fn to_json(&self, backend: &ExtBackend) -> serde_json::Value {
        serde_json::to_value(PicJson { version: SCHEMA_VERSION, backend: backend.name().into(), class: self.clone() })
            .expect("plain data")
    }

    pub fn from_json(backend: &ExtBackend, v: &serde_json::Value) -> Result<Self> {
        let doc: PicJson = serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        if doc.version != SCHEMA_VERSION {
            return Err(Error::Malformed(format!("unsupported Picard class version {}", doc.version)));
        }
        if doc.backend != backend.name() {
            return Err(Error::BaseMismatch(format!("class refers to {}, backend is {}", doc.backend, backend.name())));
        }
        let flagged = doc.class.flagged_non_admissible;
        let c = PicClass::new(backend, doc.class.hminus1, doc.class.h0, doc.class.phi)?;
        Ok(if flagged { c.flagged() } else { c })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::ints;
    use crate::simplicial::{ring_of, SimplicialComplex};

    fn torus() -> ExtBackend {
        ExtBackend::over(ring_of(&SimplicialComplex::torus7(), "torus").unwrap())
    }

    #[test]
    fn identifications_over_cp2() {
        let b = ExtBackend::over(CohRing::cp2());
        let (z, t) = (FtLca::integers(1), FtLca::circle(1));
        assert_eq!(b.ext(1, &z, &t).unwrap().group(), &FgAb::z());
        assert!(b.ext(2, &z, &t).unwrap().group().is_zero());
        assert_eq!(b.ext(2, &FtLca::circle(3), &t).unwrap().group(), &FgAb::free(3));
        assert!(ExtBackend::point().ext(2, &z, &t).unwrap().group().is_zero());
    }

    #[test]
    fn classifying_stack_of_circle_dualizes_to_integers() {
        let b = torus();
        let d = dual_of_b(&b, &FtLca::circle(1)).unwrap();
        assert_eq!((d.hminus1, d.h0), (FtLca::zero(), FtLca::integers(1)));
        let d3 = dual_of_b(&b, &FtLca::circle(3)).unwrap();
        assert_eq!(d3.h0, FtLca::integers(3));
    }

    #[test]
    fn local_model() {
        let b = torus();
        for n in 0..3 {
            let h0 = FtLca::integers(1).direct_sum(&FtLca::circle(n));
            let p = PicClass::split(&b, FtLca::circle(1), h0).unwrap();
            let d = dual_pic(&b, &p).unwrap();
            assert_eq!(d.hminus1, FtLca::circle(1).direct_sum(&FtLca::integers(n)));
            assert_eq!(d.h0, FtLca::integers(1));
            assert!(d.phi.iter().flatten().all(|x| x == &Int::from(0)));
        }
    }

    #[test]
    fn gerbe_component_is_negated_and_dual_is_involutive() {
        // a base with H³ = Z ⊕ Z/4
        let groups = vec![FgAb::z(), FgAb::zero(), FgAb::zero(), FgAb::from_factors(1, &[4]), FgAb::zero()];
        let one = crate::simplicial::CupTable { p: 0, q: 0, table: vec![vec![ints(&[1])]] };
        let id3 = crate::simplicial::CupTable { p: 0, q: 3, table: vec![vec![ints(&[1, 0]), ints(&[0, 1])]] };
        let id3r = crate::simplicial::CupTable { p: 3, q: 0, table: vec![vec![ints(&[1, 0])], vec![ints(&[0, 1])]] };
        let b = ExtBackend::over(CohRing::new("h3", groups, ints(&[1]), vec![one, id3, id3r]).unwrap());
        let g = ints(&[2, 3]);
        let p = PicClass::new(&b, FtLca::circle(1), FtLca::integers(1), vec![g.clone()]).unwrap();
        let d = dual_pic(&b, &p).unwrap();
        assert_eq!(d.phi, vec![FgAb::from_factors(1, &[4]).neg(&g)]);
        assert_eq!(dual_pic(&b, &d).unwrap(), p);
        let m = curly_d_map(&b, &FtLca::integers(1), &FtLca::circle(1)).unwrap();
        assert!(m.is_iso());
    }

    #[test]
    fn certificates() {
        let b = torus();
        let p = PicClass::split(&b, FtLca::circle(1), FtLca::integers(1)).unwrap();
        let c = is_dualizable(&b, &p);
        assert!(c.dualizable && c.double_dual_matches == Some(true));
        let bad = p.clone().flagged();
        let c = is_dualizable(&b, &bad);
        assert!(!c.dualizable && c.double_dual_matches.is_none());
        assert!(matches!(dual_pic(&b, &bad), Err(Error::UnsupportedDuality(_))));
    }

    #[test]
    fn ch_duals() {
        let pt = ExtBackend::point();
        let d = dual_of_ch(&pt, &FtLca::integers(1), None).unwrap();
        assert!(d.clean && d.hminus1 == FtLca::circle(1));
        let zn = FtLca::finite(FgAb::cyclic(5));
        let d = dual_of_ch(&pt, &zn, None).unwrap();
        assert!(d.clean && d.ext1.is_zero() && d.hminus1 == zn);
        let d = dual_of_ch(&pt, &zn, Some(FgAb::cyclic(5))).unwrap();
        assert!(!d.clean && d.ext1 == FgAb::cyclic(5));
    }

    #[test]
    fn json_round_trip_and_base_mismatch() {
        let b = torus();
        let p = PicClass::split(&b, FtLca::circle(1), FtLca::integers(1).direct_sum(&FtLca::circle(2))).unwrap();
        let v = p.to_json(&b);
        assert_eq!(PicClass::from_json(&b, &v).unwrap(), p);
        assert!(matches!(PicClass::from_json(&ExtBackend::point(), &v), Err(Error::BaseMismatch(_))));
    }
}
