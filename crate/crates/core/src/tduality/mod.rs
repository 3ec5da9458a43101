//! T-duality for principal torus bundles at the level of cohomology data:
//! the exact sequence computing Picard-stack classes over `ℰ`, the Serre
//! filtration model of `H³(E)`, existence and enumeration of duals, and the
//! correspondence between triples and Picard-stack classes.

mod filtration;
mod gysin;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{is_exact, BlockSum, FgAb, FgAbMap, Int, IntMatrix, Quotient, Subgroup};
use crate::json::{int_vec, int_vec_vec, SCHEMA_VERSION};
use crate::lca::FtLca;
use crate::picard::{ExtBackend, PicClass};
use crate::simplicial::CohRing;

pub use filtration::{exists_tdual, FiltrationModel, HClass};
pub use gysin::{gysin_cohomology, gysin_h3};

/// Chern class `c = (c₁, …, c_n) ∈ H²(B; Z)ⁿ` of a principal `Tⁿ`-bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernClass {
    base: String,
    components: Vec<Vec<Int>>,
    transgression: Option<Vec<Vec<Int>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChernJson {
    #[serde(default)]
    version: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<String>,
    n: usize,
    #[serde(with = "int_vec_vec")]
    components: Vec<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transgression: Option<Vec<Vec<crate::json::IntRepr>>>,
}

impl ChernClass {
    pub fn new(ring: &CohRing, components: Vec<Vec<Int>>) -> Result<Self> {
        let h2 = ring.group(2);
        if let Some(c) = components.iter().find(|c| c.len() != h2.ngens()) {
            return Err(Error::Malformed(format!("Chern component {c:?} does not lie in H^2 = {h2}")));
        }
        let components = components.iter().map(|c| h2.reduce(c)).collect();
        Ok(ChernClass { base: ring.name().to_string(), components, transgression: None })
    }

    /// The trivial bundle of rank `n`.
    pub fn trivial(ring: &CohRing, n: usize) -> Self {
        Self::new(ring, vec![ring.group(2).zero_element(); n]).expect("zero class")
    }

    /// Sets the third differential out of `H⁰(B; Λ²Zⁿ)`: one image in
    /// `H³(B)/im α` per standard basis element. Only its restriction to the
    /// kernel of `ι_c` matters.
    pub fn with_transgression(mut self, images: Vec<Vec<Int>>) -> Self {
        self.transgression = Some(images);
        self
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn components(&self) -> &[Vec<Int>] {
        &self.components
    }

    pub fn transgression(&self) -> Option<&[Vec<Int>]> {
        self.transgression.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(|x| x == &Int::from(0))
    }

    fn check_base(&self, ring: &CohRing) -> Result<()> {
        if self.base != ring.name() {
            return Err(Error::BaseMismatch(format!("Chern class over {}, base is {}", self.base, ring.name())));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ChernJson {
            version: Some(SCHEMA_VERSION),
            base: Some(self.base.clone()),
            n: self.n(),
            components: self.components.clone(),
            transgression: self.transgression.as_ref().map(|t| t.iter().map(|v| crate::json::ints_to_json(v)).collect()),
        })
        .expect("plain data")
    }

    pub fn from_json(ring: &CohRing, v: &serde_json::Value) -> Result<Self> {
        let doc: ChernJson = serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        if let Some(ver) = doc.version {
            if ver != SCHEMA_VERSION {
                return Err(Error::Malformed(format!("unsupported Chern class version {ver}")));
            }
        }
        if let Some(b) = &doc.base {
            if b != ring.name() {
                return Err(Error::BaseMismatch(format!("Chern class over {b}, base is {}", ring.name())));
            }
        }
        if doc.components.len() != doc.n {
            return Err(Error::Malformed(format!("n = {} but {} components given", doc.n, doc.components.len())));
        }
        let mut c = Self::new(ring, doc.components)?;
        if let Some(t) = doc.transgression {
            let t = t
                .into_iter()
                .map(crate::json::ints_from_json)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(Error::Malformed)?;
            c = c.with_transgression(t);
        }
        Ok(c)
    }
}

/// `α(x) = Σ xᵢ ∪ cᵢ` for `x ∈ H¹(B; Z)ⁿ`.
pub fn alpha(ring: &CohRing, c: &ChernClass, x: &[Vec<Int>]) -> Result<Vec<Int>> {
    cup_sum(ring, 1, c, x)
}

/// `β(ĉ) = Σ ĉᵢ ∪ cᵢ` for `ĉ ∈ H²(B; Z)ⁿ`.
pub fn beta(ring: &CohRing, c: &ChernClass, c_hat: &[Vec<Int>]) -> Result<Vec<Int>> {
    cup_sum(ring, 2, c, c_hat)
}

fn cup_sum(ring: &CohRing, p: usize, c: &ChernClass, x: &[Vec<Int>]) -> Result<Vec<Int>> {
    c.check_base(ring)?;
    if x.len() != c.n() {
        return Err(Error::Malformed(format!("expected {} components, got {}", c.n(), x.len())));
    }
    let target = ring.group(p + 2);
    let mut acc = target.zero_element();
    for (xi, ci) in x.iter().zip(c.components()) {
        acc = target.add(&acc, &ring.cup(p, xi, 2, ci)?);
    }
    Ok(acc)
}

/// Matrix on flat block coordinates of `x ↦ Σ xᵢ ∪ cᵢ` from `Hᵖ(B)ⁿ`.
fn cup_sum_matrix(ring: &CohRing, p: usize, c: &ChernClass) -> Result<IntMatrix> {
    let g = ring.group(p);
    let n = c.n();
    let target = ring.group(p + 2);
    let mut m = IntMatrix::zeros(target.ngens(), n * g.ngens());
    for i in 0..n {
        for a in 0..g.ngens() {
            let col = ring.cup(p, &g.basis_element(a), 2, &c.components()[i])?;
            m.set_column(i * g.ngens() + a, &col);
        }
    }
    Ok(m)
}

/// Element of `Q_ℰ` under the chosen set-theoretic splitting:
/// `(ĉ ∈ ker β, t ∈ coker α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QElement {
    #[serde(with = "int_vec_vec")]
    pub c_hat: Vec<Vec<Int>>,
    #[serde(with = "int_vec")]
    pub t: Vec<Int>,
}

/// The group of Picard-stack classes over `ℰ`, computed from
/// `H¹(B;Zⁿ) →α H³(B) → Q_ℰ →ĉ H²(B;Zⁿ) →β H⁴(B)`.
#[derive(Clone, Debug)]
pub struct QGroup {
    ring: CohRing,
    chern: ChernClass,
    h1n: BlockSum,
    h2n: BlockSum,
    alpha: FgAbMap,
    beta: FgAbMap,
    ker_beta: Subgroup,
    coker_alpha: Quotient,
}

pub fn q_group(ring: &CohRing, c: &ChernClass) -> Result<QGroup> {
    c.check_base(ring)?;
    let n = c.n();
    let h1n = BlockSum::power(&ring.group(1), n);
    let h2n = BlockSum::power(&ring.group(2), n);
    let h3 = BlockSum::new(vec![ring.group(3)]);
    let h4 = BlockSum::new(vec![ring.group(4)]);
    let alpha = h1n.map_to(&h3, &cup_sum_matrix(ring, 1, c)?)?;
    let beta = h2n.map_to(&h4, &cup_sum_matrix(ring, 2, c)?)?;
    let ker_beta = beta.kernel();
    let coker_alpha = alpha.cokernel();
    Ok(QGroup { ring: ring.clone(), chern: c.clone(), h1n, h2n, alpha, beta, ker_beta, coker_alpha })
}

impl QGroup {
    pub fn ring(&self) -> &CohRing {
        &self.ring
    }

    pub fn chern(&self) -> &ChernClass {
        &self.chern
    }

    pub fn alpha_map(&self) -> &FgAbMap {
        &self.alpha
    }

    pub fn beta_map(&self) -> &FgAbMap {
        &self.beta
    }

    pub fn h1n(&self) -> &BlockSum {
        &self.h1n
    }

    pub fn h2n(&self) -> &BlockSum {
        &self.h2n
    }

    pub fn ker_beta(&self) -> &FgAb {
        &self.ker_beta.group
    }

    pub fn coker_alpha(&self) -> &FgAb {
        &self.coker_alpha.group
    }

    pub fn coker_alpha_quotient(&self) -> &Quotient {
        &self.coker_alpha
    }

    /// `ker β` generators in block form.
    pub fn ker_beta_generators(&self) -> Vec<Vec<Vec<Int>>> {
        (0..self.ker_beta.group.ngens())
            .map(|j| self.h2n.from_canonical(&self.ker_beta.inclusion.apply(&self.ker_beta.group.basis_element(j))))
            .collect()
    }

    pub fn in_ker_beta(&self, c_hat: &[Vec<Int>]) -> bool {
        self.beta.apply(&self.h2n.to_canonical(c_hat)).iter().all(|x| x == &Int::from(0))
    }

    pub fn element(&self, c_hat: Vec<Vec<Int>>, t: Vec<Int>) -> Result<QElement> {
        if c_hat.len() != self.chern.n() || c_hat.iter().any(|b| b.len() != self.ring.group(2).ngens()) {
            return Err(Error::Malformed("c_hat does not lie in H^2(B; Z^n)".into()));
        }
        if t.len() != self.coker_alpha.group.ngens() {
            return Err(Error::Malformed("t does not lie in coker(alpha)".into()));
        }
        if !self.in_ker_beta(&c_hat) {
            return Err(Error::Invariant("c_hat is not in the kernel of beta".into()));
        }
        Ok(QElement { c_hat: self.h2n.reduce(&c_hat), t: self.coker_alpha.group.reduce(&t) })
    }

    pub fn zero(&self) -> QElement {
        QElement { c_hat: self.h2n.zero(), t: self.coker_alpha.group.zero_element() }
    }

    /// The projection `ĉ : Q_ℰ → H²(B; Zⁿ)`.
    pub fn c_hat<'a>(&self, q: &'a QElement) -> &'a [Vec<Int>] {
        &q.c_hat
    }

    /// The left map `H³(B) → Q_ℰ`.
    pub fn inject(&self, g: &[Int]) -> QElement {
        QElement { c_hat: self.h2n.zero(), t: self.coker_alpha.projection.apply(g) }
    }

    /// Action of `g ∈ H³(B; Z)` through the left map.
    pub fn act(&self, g: &[Int], q: &QElement) -> QElement {
        let shift = self.coker_alpha.projection.apply(g);
        QElement { c_hat: q.c_hat.clone(), t: self.coker_alpha.group.add(&q.t, &shift) }
    }

    /// Some `g` with `g · q₁ = q₂`, when both lie in the same `ĉ`-fibre.
    pub fn transporter(&self, q1: &QElement, q2: &QElement) -> Option<Vec<Int>> {
        if self.h2n.to_canonical(&q1.c_hat) != self.h2n.to_canonical(&q2.c_hat) {
            return None;
        }
        let diff = self.coker_alpha.group.add(&q2.t, &self.coker_alpha.group.neg(&q1.t));
        Some(self.coker_alpha.lift(&diff))
    }

    /// Whether `g` acts trivially; this is exactly `g ∈ im α`.
    pub fn stabilizes(&self, g: &[Int]) -> bool {
        self.coker_alpha.group.is_zero_element(&self.coker_alpha.projection.apply(g))
    }

    /// Exactness of `H¹ⁿ → H³ → Q → H²ⁿ → H⁴` with `Q` modelled as
    /// `coker α ⊕ ker β`.
    pub fn sequence_is_exact(&self) -> Result<bool> {
        let model = BlockSum::new(vec![self.coker_alpha.group.clone(), self.ker_beta.group.clone()]);
        let h3 = BlockSum::new(vec![self.ring.group(3)]);
        let (ca, kb) = (self.coker_alpha.group.ngens(), self.ker_beta.group.ngens());
        let mut iota = IntMatrix::zeros(ca + kb, self.ring.group(3).ngens());
        iota.set_block(0, 0, self.coker_alpha.projection.matrix());
        let iota = h3.map_to(&model, &iota)?;
        let mut proj = IntMatrix::zeros(self.h2n.group().ngens(), ca + kb);
        proj.set_block(0, ca, self.ker_beta.inclusion.matrix());
        let canon_h2n = BlockSum::new(vec![self.h2n.group().clone()]);
        let proj = model.map_to(&canon_h2n, &proj)?;
        is_exact(&[self.alpha.clone(), iota, proj, self.beta.clone()])
    }
}

/// T-duality triple at data level: `(c, ĉ, flux)` with the flux normalized
/// modulo `im α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TripleClass {
    #[serde(with = "int_vec_vec")]
    pub c: Vec<Vec<Int>>,
    #[serde(with = "int_vec_vec")]
    pub c_hat: Vec<Vec<Int>>,
    #[serde(with = "int_vec")]
    pub flux: Vec<Int>,
}

/// Everything attached to a base and a Chern class.
#[derive(Clone, Debug)]
pub struct Classifier {
    q: QGroup,
    filtration: FiltrationModel,
}

impl Classifier {
    pub fn new(ring: &CohRing, c: &ChernClass) -> Result<Self> {
        let q = q_group(ring, c)?;
        let filtration = FiltrationModel::build(&q)?;
        Ok(Classifier { q, filtration })
    }

    pub fn q(&self) -> &QGroup {
        &self.q
    }

    pub fn filtration(&self) -> &FiltrationModel {
        &self.filtration
    }

    fn normalize_flux(&self, flux: &[Int]) -> Vec<Int> {
        let ca = &self.q.coker_alpha;
        ca.lift(&ca.projection.apply(flux))
    }

    pub fn triple(&self, c_hat: Vec<Vec<Int>>, flux: Vec<Int>) -> Result<TripleClass> {
        if flux.len() != self.q.ring.group(3).ngens() {
            return Err(Error::Malformed("flux does not lie in H^3(B; Z)".into()));
        }
        if c_hat.len() != self.q.chern.n() || c_hat.iter().any(|b| b.len() != self.q.ring.group(2).ngens()) {
            return Err(Error::Malformed("c_hat does not lie in H^2(B; Z^n)".into()));
        }
        if !self.q.in_ker_beta(&c_hat) {
            return Err(Error::Invariant("sum of c_i cup c_hat_i is nonzero".into()));
        }
        Ok(TripleClass {
            c: self.q.chern.components().to_vec(),
            c_hat: self.q.h2n.reduce(&c_hat),
            flux: self.normalize_flux(&flux),
        })
    }

    fn check_triple(&self, t: &TripleClass) -> Result<()> {
        if t.c != self.q.chern.components() {
            return Err(Error::BaseMismatch("triple has a different Chern class".into()));
        }
        Ok(())
    }

    /// Picard-stack class of a triple.
    pub fn phi_data(&self, t: &TripleClass) -> Result<QElement> {
        self.check_triple(t)?;
        self.q.element(t.c_hat.clone(), self.q.coker_alpha.projection.apply(&t.flux))
    }

    /// Triple of a Picard-stack class.
    pub fn psi_data(&self, q: &QElement) -> Result<TripleClass> {
        let q = self.q.element(q.c_hat.clone(), q.t.clone())?;
        self.triple(q.c_hat, self.q.coker_alpha.lift(&q.t))
    }

    /// Action of `g ∈ H³(B; Z)` on Picard-stack classes.
    pub fn gamma_action(&self, g: &[Int], q: &QElement) -> QElement {
        self.q.act(g, q)
    }

    /// Action of `g ∈ H³(B; Z)` on triples: the flux is shifted.
    pub fn act_on_triple(&self, g: &[Int], t: &TripleClass) -> Result<TripleClass> {
        self.check_triple(t)?;
        let h3 = self.q.ring.group(3);
        self.triple(t.c_hat.clone(), h3.add(&t.flux, g))
    }

    /// Duals of a pair. `radius` bounds the coefficients used to walk the
    /// `im ι_c`-coset of admissible dual Chern classes.
    pub fn enumerate_duals(&self, h: &HClass, radius: i64) -> Result<DualEnumeration> {
        let f = &self.filtration;
        filtration::check_shapes(&self.q, h)?;
        if !exists_tdual(&self.q, h)? {
            return Err(Error::Unsupported("the pair has a nonzero low symbol and admits no T-dual".into()));
        }
        if !self.q.in_ker_beta(&h.e21) {
            return Err(Error::Invariant("the E^{2,1} entry is not in the kernel of beta".into()));
        }
        let shifts = f.iota_images(&self.q);
        let mut seen = std::collections::BTreeSet::new();
        let mut c_hats = Vec::new();
        let mut coeffs = vec![-radius; shifts.len()];
        loop {
            let mut v = self.q.h2n.to_canonical(&h.e21);
            for (k, s) in coeffs.iter().zip(&shifts) {
                let s = self.q.h2n.to_canonical(s);
                v = self.q.h2n.group().add(&v, &self.q.h2n.group().scale(&Int::from(*k), &s));
            }
            if seen.insert(v.clone()) {
                c_hats.push(self.q.h2n.from_canonical(&v));
            }
            // odometer over the box
            let mut i = 0;
            while i < coeffs.len() && coeffs[i] == radius {
                coeffs[i] = -radius;
                i += 1;
            }
            if i == coeffs.len() {
                break;
            }
            coeffs[i] += 1;
        }
        let t0 = self.q.coker_alpha.projection.apply(&h.e30);
        let gamma_elements = f.gamma_elements();
        let mut duals = Vec::new();
        for c_hat in c_hats {
            let base = self.psi_data(&QElement { c_hat: c_hat.clone(), t: t0.clone() })?;
            let orbit = match &gamma_elements {
                Some(els) => els
                    .iter()
                    .map(|g| {
                        let t = self.q.coker_alpha.group.add(&t0, g);
                        self.psi_data(&QElement { c_hat: c_hat.clone(), t })
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => vec![base.clone()],
            };
            duals.push(DualFiber { c_hat, representative: base, orbit });
        }
        Ok(DualEnumeration {
            duals,
            c_hat_shifts: shifts,
            gamma: f.gamma().clone(),
            gamma_order: f.gamma().order(),
        })
    }

    /// Picard-stack class with `H⁰ = Z ⊕ Tⁿ` and `H⁻¹ = T` of a class over
    /// the trivial bundle, in block form `[H³ | H²(B;Z) for each circle]`.
    pub fn pic_class_of(&self, q: &QElement) -> Result<(ExtBackend, PicClass)> {
        if !self.q.chern.is_zero() {
            return Err(Error::Unsupported("only the trivial bundle splits as Z + T^n".into()));
        }
        let backend = ExtBackend::over(self.q.ring.clone());
        let h0 = FtLca::integers(1).direct_sum(&FtLca::circle(self.q.chern.n()));
        let mut phi = vec![self.q.coker_alpha.lift(&q.t)];
        phi.extend(q.c_hat.iter().cloned());
        let p = PicClass::new(&backend, FtLca::circle(1), h0, phi)?;
        Ok((backend, p))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualFiber {
    #[serde(with = "int_vec_vec")]
    pub c_hat: Vec<Vec<Int>>,
    pub representative: TripleClass,
    /// The Γ_E-torsor of duals with this `ĉ`; only the representative when
    /// Γ_E is infinite.
    pub orbit: Vec<TripleClass>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualEnumeration {
    pub duals: Vec<DualFiber>,
    /// Generators of `im ι_c`; dual Chern classes differ by these.
    #[serde(skip)]
    pub c_hat_shifts: Vec<Vec<Vec<Int>>>,
    pub gamma: FgAb,
    #[serde(serialize_with = "ser_opt_int")]
    pub gamma_order: Option<Int>,
}

fn ser_opt_int<S: serde::Serializer>(v: &Option<Int>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(crate::json::IntRepr::from).serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::ints;
    use crate::simplicial::{ring_of, SimplicialComplex};

    fn torus() -> CohRing {
        ring_of(&SimplicialComplex::torus7(), "torus").unwrap()
    }

    fn sphere() -> CohRing {
        ring_of(&SimplicialComplex::sphere2(), "S2").unwrap()
    }

    #[test]
    fn alpha_beta_examples() {
        let s = sphere();
        let c = ChernClass::new(&s, vec![ints(&[1])]).unwrap();
        assert!(beta(&s, &c, &[ints(&[5])]).unwrap().is_empty());
        let cp = CohRing::cp2();
        for m in [1, 2, -3] {
            let c = ChernClass::new(&cp, vec![ints(&[m])]).unwrap();
            assert_eq!(beta(&cp, &c, &[ints(&[4])]).unwrap(), ints(&[4 * m]));
            assert!(q_group(&cp, &c).unwrap().beta_map().is_injective());
        }
    }

    #[test]
    fn q_group_examples() {
        let t = torus();
        let q = q_group(&t, &ChernClass::trivial(&t, 1)).unwrap();
        assert_eq!((q.ker_beta(), q.coker_alpha()), (&FgAb::z(), &FgAb::zero()));
        let cp = CohRing::cp2();
        let q = q_group(&cp, &ChernClass::new(&cp, vec![ints(&[1])]).unwrap()).unwrap();
        assert!(q.ker_beta().is_zero() && q.coker_alpha().is_zero());
        let s = sphere();
        for m in [0, 1, 7] {
            let q = q_group(&s, &ChernClass::new(&s, vec![ints(&[m])]).unwrap()).unwrap();
            assert_eq!(q.ker_beta(), &FgAb::z());
            assert!(q.sequence_is_exact().unwrap());
        }
    }

    #[test]
    fn torus_flux_has_unique_dual() {
        let t = torus();
        let cl = Classifier::new(&t, &ChernClass::trivial(&t, 1)).unwrap();
        for k in [-2, 0, 3] {
            let h = HClass::graded(cl.q(), vec![ints(&[k])]);
            let e = cl.enumerate_duals(&h, 2).unwrap();
            assert_eq!(e.duals.len(), 1);
            assert_eq!(e.duals[0].orbit.len(), 1);
            assert_eq!(e.duals[0].c_hat, vec![ints(&[k])]);
        }
    }

    #[test]
    fn phi_psi_round_trip_and_negation() {
        let t = torus();
        let cl = Classifier::new(&t, &ChernClass::trivial(&t, 2)).unwrap();
        let tr = cl.triple(vec![ints(&[3]), ints(&[-1])], vec![]).unwrap();
        let q = cl.phi_data(&tr).unwrap();
        assert_eq!(cl.psi_data(&q).unwrap(), tr);
        let (b, p) = cl.pic_class_of(&q).unwrap();
        let d = crate::picard::dual_pic(&b, &p).unwrap();
        assert_eq!(d.h0, FtLca::integers(1));
        assert_eq!(crate::picard::dual_pic(&b, &d).unwrap(), p);
    }

    #[test]
    fn chern_json_round_trip() {
        let t = torus();
        let c = ChernClass::new(&t, vec![ints(&[2]), ints(&[0])]).unwrap().with_transgression(vec![vec![]]);
        assert_eq!(ChernClass::from_json(&t, &c.to_json()).unwrap(), c);
        assert!(matches!(ChernClass::from_json(&CohRing::cp2(), &c.to_json()), Err(Error::BaseMismatch(_))));
    }
}
