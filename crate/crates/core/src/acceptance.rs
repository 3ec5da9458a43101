//! The acceptance suite: fourteen seeded, exact checks shared by the
//! integration test target and the `check-all` command.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{lemma219_witnesses, rhom, rhom_hom_complex, yoneda_y, yoneda_y_prime, FourTermExact, TwoTerm};
use crate::error::Result;
use crate::extensions::{baer_sum, equivalent, Ext1};
use crate::fgab::lattice::kernel;
use crate::fgab::{random, FgAb, Int};
use crate::groupcohomology::{
    abelian_groups_up_to, cyclic_cohomology_expected, cyclic_cohomology_table, kcomplex_cohomology, lambda_compare,
    verify_23_extension, verify_weight,
};
use crate::lca::{dual, FtLca};
use crate::picard::{dual_of_b, dual_pic, BlockKind, ExtBackend, PicClass};
use crate::simplicial::{cohomology, cup, cup_cochains, ring_of, CohRing, CupTable, SimplicialComplex};
use crate::tduality::{alpha, beta, gysin_h3, q_group, ChernClass, Classifier, HClass, QGroup};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

type Check = fn(&mut Tally, &mut ChaCha8Rng) -> Result<()>;

const CRITERIA: [(&str, Check); 14] = [
    ("Pontrjagin involution on random finite-type LCA groups", pontrjagin),
    ("integral cohomology table of Z/p in degrees 0-6", cyclic_tables),
    ("weight actions on cohomology of Z/5 and (Z/5)^2", weights),
    ("exterior powers match low homology for |G| <= 16", lambda_homology),
    ("K-complex cohomology up to degree 8", kcomplex),
    ("Yoneda chain witnesses on random four-term exact sequences", yoneda),
    ("rhom by filtration equals hom-complex cohomology", rhom_consistency),
    ("Ext^1 classes and Baer sum on cyclic groups of order <= 8", ext_calculus),
    ("exactness of the Q-group sequence on three bases", q_sequence),
    ("uniqueness of T-duals for circle bundles", circle_uniqueness),
    ("Hopf fibration: filtration against the Gysin model", hopf),
    ("phi/psi round trip, c-hat preservation and equivariance", phi_psi),
    ("dual Picard stack: gerbe sign, involution and local model", picard_duality),
    ("simplicial cup products", simplicial_cup),
];

pub fn count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based).
pub fn run(id: usize, seed: u64) -> CriterionResult {
    let (name, f) = CRITERIA[id - 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let mut t = Tally::default();
    let start = Instant::now();
    if let Err(e) = f(&mut t, &mut rng) {
        t.fail(format!("error: {e}"));
    }
    let seconds = start.elapsed().as_secs_f64();
    let passed = t.failed == 0 && t.checks > 0;
    let detail = if passed {
        format!("{} checks", t.checks)
    } else {
        format!("{} of {} checks failed: {}", t.failed, t.checks, t.first.join("; "))
    };
    CriterionResult { id, name, passed, checks: t.checks, detail, seconds }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=count()).map(|id| run(id, seed)).collect()
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} criterion {:2}: {} ({}, {:.2}s)", self.id, self.name, self.detail, self.seconds)
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failed: usize,
    first: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.first.len() < 3 {
            self.first.push(msg);
        }
    }
}

fn torus_ring() -> CohRing {
    ring_of(&SimplicialComplex::torus7(), "torus").expect("torus ring")
}

fn sphere_ring() -> CohRing {
    ring_of(&SimplicialComplex::sphere2(), "S2").expect("sphere ring")
}

/// Torus, sphere and `CP²`.
fn bases() -> Vec<CohRing> {
    vec![torus_ring(), sphere_ring(), CohRing::cp2()]
}

fn random_vec(rng: &mut ChaCha8Rng, len: usize, r: i64) -> Vec<Int> {
    (0..len).map(|_| Int::from(rng.random_range(-r..=r))).collect()
}

fn random_chern(rng: &mut ChaCha8Rng, ring: &CohRing, n: usize, r: i64) -> Result<ChernClass> {
    let comps = (0..n).map(|_| random_vec(rng, ring.group(2).ngens(), r)).collect();
    ChernClass::new(ring, comps)
}

/// A random element of `ker β` as a combination of its generators.
fn random_c_hat(rng: &mut ChaCha8Rng, q: &QGroup, r: i64) -> Vec<Vec<Int>> {
    let h2n = q.h2n();
    let g = h2n.group();
    let mut v = g.zero_element();
    for gen in q.ker_beta_generators() {
        let k = Int::from(rng.random_range(-r..=r));
        v = g.add(&v, &g.scale(&k, &h2n.to_canonical(&gen)));
    }
    h2n.from_canonical(&v)
}

fn pontrjagin(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let start = Instant::now();
    for i in 0..200 {
        let g = FtLca::random(rng, 3, 12);
        let d = dual(&g);
        t.check(dual(&d) == g, || format!("sample {i}: double dual of {g} differs"));
        let swapped = d.z_rank() == g.torus_rank() && d.torus_rank() == g.z_rank();
        let fixed = d.real_rank() == g.real_rank() && d.finite_part() == g.finite_part();
        t.check(swapped && fixed, || format!("sample {i}: dual of {g} is {d}"));
    }
    let secs = start.elapsed().as_secs_f64();
    t.check(secs < 1.0, || format!("took {secs:.2}s"));
    Ok(())
}

fn cyclic_tables(t: &mut Tally, _: &mut ChaCha8Rng) -> Result<()> {
    let start = Instant::now();
    for p in [2, 3, 5] {
        let table = cyclic_cohomology_table(p, 6)?;
        for (i, h) in table.iter().enumerate() {
            let e = cyclic_cohomology_expected(p, i);
            t.check(*h == e, || format!("H^{i}(Z/{p}) = {h}, expected {e}"));
        }
        // independent pattern: Z, then 0 in odd and Z/p in even positive degrees
        let pattern = |i: usize| match i {
            0 => FgAb::z(),
            i if i % 2 == 1 => FgAb::zero(),
            _ => FgAb::cyclic(p),
        };
        t.check(table.len() == 7 && table.iter().enumerate().all(|(i, h)| *h == pattern(i)), || {
            format!("Z/{p} table breaks the periodic pattern")
        });
    }
    let secs = start.elapsed().as_secs_f64();
    t.check(secs < 60.0, || format!("took {secs:.1}s"));
    Ok(())
}

fn weights(t: &mut Tally, _: &mut ChaCha8Rng) -> Result<()> {
    let z5 = FgAb::cyclic(5);
    for k in [1u32, 2] {
        let ok = verify_weight(&z5, 2 * k as usize, k, &[2, 3, 4])?;
        t.check(ok, || format!("Psi^m != m^{k} on H^{}(Z/5)", 2 * k));
    }
    let z55 = FgAb::from_factors(0, &[5, 5]);
    t.check(verify_weight(&z55, 3, 2, &[2, 3, 4])?, || "Psi^m != m^2 on H^3((Z/5)^2)".into());
    t.check(verify_23_extension(&z55, 4, &[2, 3])?, || "(Psi^v - v^2)(Psi^v - v^3) != 0 on H^4((Z/5)^2)".into());
    Ok(())
}

fn lambda_homology(t: &mut Tally, _: &mut ChaCha8Rng) -> Result<()> {
    for g in abelian_groups_up_to(16) {
        for i in 0..=2 {
            t.check(lambda_compare(&g, i)?, || format!("Lambda^{i} {g} differs from H_{i}"));
        }
    }
    Ok(())
}

fn kcomplex(t: &mut Tally, _: &mut ChaCha8Rng) -> Result<()> {
    let h = kcomplex_cohomology(8)?;
    t.check(h.len() == 8, || format!("expected 8 groups, got {}", h.len()));
    t.check(h.first() == Some(&FgAb::z()), || format!("H^1 = {:?}", h.first()));
    for (q, g) in h.iter().enumerate().skip(1) {
        t.check(g.is_zero(), || format!("H^{} = {g}", q + 1));
    }
    Ok(())
}

fn yoneda(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..100 {
        let (x, y) = (random::group(rng, 2, 8), random::group(rng, 2, 8));
        let f = random::map(rng, &x, &y, 4);
        let k = FourTermExact::from_map(&f);
        let exact = FourTermExact::new(k.a().clone(), k.x().clone(), k.y().clone()).is_ok();
        t.check(exact, || format!("sample {i}: sequence from {f:?} is not exact"));
        t.check(lemma219_witnesses(&k)?.verify(), || format!("sample {i}: homotopy identities fail"));
        let quasi = yoneda_y(&k).backward_is_quasi_iso && yoneda_y_prime(&k).backward_is_quasi_iso;
        t.check(quasi, || format!("sample {i}: a backward arrow is not a quasi-isomorphism"));
    }
    Ok(())
}

fn random_two_term(rng: &mut ChaCha8Rng) -> TwoTerm {
    let (a, b) = (random::group(rng, 2, 6), random::group(rng, 2, 6));
    TwoTerm::new(random::map(rng, &a, &b, 3))
}

fn rhom_consistency(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..100 {
        let (k, l) = (random_two_term(rng), random_two_term(rng));
        t.check(rhom(&k, &l) == rhom_hom_complex(&k, &l), || format!("sample {i}: the two models disagree"));
    }
    Ok(())
}

/// `|Ext¹(Z/a, Z/b)| = |Z/b / a·Z/b|`, counted by hand.
fn ext_order_by_counting(a: i64, b: i64) -> usize {
    let multiples: std::collections::BTreeSet<i64> = (0..b).map(|h| (a * h) % b).collect();
    (b as usize) / multiples.len()
}

fn ext_calculus(t: &mut Tally, _: &mut ChaCha8Rng) -> Result<()> {
    for a in 1..=8i64 {
        for b in 1..=8i64 {
            let (g, h) = (FgAb::cyclic(a), FgAb::cyclic(b));
            let e = Ext1::new(&g, &h);
            let classes = e.group().elements();
            t.check(classes.len() == ext_order_by_counting(a, b), || {
                format!("Ext^1(Z/{a}, Z/{b}) has {} elements", classes.len())
            });
            let exts: Vec<_> = classes.iter().map(|x| e.from_class(x)).collect();
            for (x, ex) in classes.iter().zip(&exts) {
                t.check(e.class_of(ex)? == *x, || format!("Z/{a}, Z/{b}: class {x:?} does not round trip"));
                t.check(ex.mid().order() == Some(Int::from(a * b)), || format!("Z/{a}, Z/{b}: middle term has wrong order"));
            }
            for (i, x) in classes.iter().enumerate() {
                for (j, y) in classes.iter().enumerate() {
                    let s = baer_sum(&exts[i], &exts[j])?;
                    t.check(e.class_of(&s)? == e.add(x, y), || format!("Z/{a}, Z/{b}: Baer sum of {x:?}, {y:?}"));
                    if i < j {
                        // distinct classes give inequivalent extensions
                        t.check(!equivalent(&exts[i], &exts[j])?, || format!("Z/{a}, Z/{b}: {x:?} ~ {y:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn chern_samples(rng: &mut ChaCha8Rng, ring: &CohRing, n: usize) -> Result<Vec<ChernClass>> {
    let mut out = vec![ChernClass::trivial(ring, n)];
    if n == 1 {
        for m in -3..=3 {
            out.push(ChernClass::new(ring, vec![vec![Int::from(m); ring.group(2).ngens()]])?);
        }
    }
    for _ in 0..6 {
        out.push(random_chern(rng, ring, n, 3)?);
    }
    Ok(out)
}

fn q_sequence(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    // T³ added so that the H³ action is not vacuous
    let mut rings = bases();
    rings.push(CohRing::torus(3));
    for ring in rings {
        for n in [1, 2] {
            for c in chern_samples(rng, &ring, n)? {
                let tag = format!("{} n={n} c={:?}", ring.name(), c.components());
                let q = q_group(&ring, &c)?;
                t.check(q.sequence_is_exact()?, || format!("{tag}: sequence not exact"));
                let h4 = ring.group(4);
                let h2 = ring.group(2);
                // membership in ker β agrees with a direct cup computation
                for _ in 0..20 {
                    let cand: Vec<Vec<Int>> = (0..n).map(|_| random_vec(rng, h2.ngens(), 3)).collect();
                    let direct = h4.is_zero_element(&beta(&ring, &c, &cand)?);
                    t.check(direct == q.element(cand.clone(), q.coker_alpha().zero_element()).is_ok(), || {
                        format!("{tag}: ker beta membership of {cand:?}")
                    });
                }
                for _ in 0..10 {
                    // surjectivity of ĉ onto ker β, and β∘ĉ = 0
                    let k = random_c_hat(rng, &q, 3);
                    let t1 = random_vec(rng, q.coker_alpha().ngens(), 3);
                    let t2 = random_vec(rng, q.coker_alpha().ngens(), 3);
                    let (x, y) = (q.element(k.clone(), t1)?, q.element(k.clone(), t2)?);
                    t.check(q.c_hat(&x) == q.h2n().reduce(&k).as_slice(), || format!("{tag}: c_hat misses {k:?}"));
                    t.check(h4.is_zero_element(&beta(&ring, &c, q.c_hat(&x))?), || format!("{tag}: beta(c_hat) != 0"));
                    // transitivity on the fiber over k
                    match q.transporter(&x, &y) {
                        Some(g) => t.check(q.act(&g, &x) == y, || format!("{tag}: transporter does not move x to y")),
                        None => t.check(false, || format!("{tag}: fiber over {k:?} is not one orbit")),
                    }
                    // the image of α acts trivially
                    let v: Vec<Vec<Int>> = (0..n).map(|_| random_vec(rng, ring.group(1).ngens(), 3)).collect();
                    let g = alpha(&ring, &c, &v)?;
                    t.check(q.stabilizes(&g) && q.act(&g, &x) == x, || format!("{tag}: im alpha moves x"));
                }
            }
        }
    }
    Ok(())
}

fn circle_uniqueness(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    for ring in bases() {
        for c in chern_samples(rng, &ring, 1)? {
            let tag = format!("{} c={:?}", ring.name(), c.components());
            let cl = Classifier::new(&ring, &c)?;
            t.check(cl.filtration().gamma.is_zero(), || format!("{tag}: Gamma = {}", cl.filtration().gamma));
            for _ in 0..5 {
                let h = HClass::graded(cl.q(), random_c_hat(rng, cl.q(), 4));
                let e = cl.enumerate_duals(&h, 3)?;
                let unique = e.duals.len() == 1 && e.duals[0].orbit.len() == 1;
                t.check(unique, || format!("{tag}: {} dual fibers", e.duals.len()));
                t.check(e.duals[0].c_hat == cl.q().h2n().reduce(&h.e21), || format!("{tag}: dual Chern class moved"));
            }
        }
    }
    Ok(())
}

fn hopf(t: &mut Tally, _: &mut ChaCha8Rng) -> Result<()> {
    let s2 = SimplicialComplex::sphere2();
    let ring = sphere_ring();
    let generator = ChernClass::new(&ring, vec![vec![Int::from(1)]])?;
    let f = Classifier::new(&ring, &generator)?;
    let oracle = gysin_h3(&s2, &[Int::from(1)])?;
    t.check(f.filtration().f2h3.as_ref() == Some(&FgAb::z()), || format!("F2H3 = {:?}", f.filtration().f2h3));
    t.check(oracle == FgAb::z(), || format!("Gysin H^3 = {oracle}"));
    // the same agreement for other degrees and over the torus
    let torus = SimplicialComplex::torus7();
    let tr = torus_ring();
    for m in -3..=3i64 {
        for (x, r) in [(&s2, &ring), (&torus, &tr)] {
            let c = ChernClass::new(r, vec![vec![Int::from(m)]])?;
            let model = Classifier::new(r, &c)?.filtration().f2h3.clone();
            let oracle = gysin_h3(x, &[Int::from(m)])?;
            t.check(model.as_ref() == Some(&oracle), || format!("{} c={m}: {model:?} vs {oracle}", r.name()));
        }
    }
    Ok(())
}

fn phi_psi(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut rings = bases();
    rings.push(CohRing::torus(3));
    for i in 0..100 {
        let ring = &rings[i % rings.len()];
        let n = rng.random_range(1..=2);
        let c = random_chern(rng, ring, n, 2)?;
        let cl = Classifier::new(ring, &c)?;
        let tag = format!("sample {i} on {}", ring.name());
        let h3 = ring.group(3).ngens();
        let tr = cl.triple(random_c_hat(rng, cl.q(), 3), random_vec(rng, h3, 4))?;
        let q = cl.phi_data(&tr)?;
        let back = cl.psi_data(&q)?;
        t.check(back == tr, || format!("{tag}: psi(phi(t)) != t"));
        t.check(cl.phi_data(&back)? == q, || format!("{tag}: phi(psi(q)) != q"));
        t.check(q.c_hat == tr.c_hat && back.c_hat == tr.c_hat, || format!("{tag}: c_hat not preserved"));
        let g = random_vec(rng, h3, 4);
        let lhs = cl.phi_data(&cl.act_on_triple(&g, &tr)?)?;
        t.check(lhs == cl.gamma_action(&g, &q), || format!("{tag}: not equivariant for g = {g:?}"));
    }
    Ok(())
}

/// A base with `H³ = Z ⊕ Z/4` and nothing else above degree 0.
fn h3_ring() -> CohRing {
    let v = |xs: &[i64]| xs.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
    let groups = vec![FgAb::z(), FgAb::zero(), FgAb::zero(), FgAb::from_factors(1, &[4]), FgAb::zero()];
    let tables = vec![
        CupTable { p: 0, q: 0, table: vec![vec![v(&[1])]] },
        CupTable { p: 0, q: 3, table: vec![vec![v(&[1, 0]), v(&[0, 1])]] },
        CupTable { p: 3, q: 0, table: vec![vec![v(&[1, 0])], vec![v(&[0, 1])]] },
    ];
    CohRing::new("H3", groups, v(&[1]), tables).expect("valid ring")
}

fn picard_duality(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut rings = bases();
    rings.push(CohRing::torus(3));
    rings.push(h3_ring());
    let mut backends: Vec<ExtBackend> = rings.into_iter().map(ExtBackend::over).collect();
    backends.push(ExtBackend::point());
    for b in &backends {
        let tag = b.name().to_string();
        for n in 0..=3 {
            let d = dual_of_b(b, &FtLca::circle(n))?;
            t.check(d.hminus1.is_zero() && d.h0 == FtLca::integers(n), || format!("{tag}: D(BT^{n}) = {d:?}"));
            let h0 = FtLca::integers(1).direct_sum(&FtLca::circle(n));
            let p = PicClass::split(b, FtLca::circle(1), h0)?;
            let d = dual_pic(b, &p)?;
            let local = d.hminus1 == FtLca::circle(1).direct_sum(&FtLca::integers(n)) && d.h0 == FtLca::integers(1);
            t.check(local, || format!("{tag}: local model with n = {n} gives {d:?}"));
            // random classes: gerbe blocks negated, transport blocks kept
            let ext = p.ext_group(b)?;
            for _ in 0..5 {
                let phi = ext.reduce(&ext.blocks.iter().map(|bl| random_vec(rng, bl.group.ngens(), 5)).collect::<Vec<_>>());
                let p = PicClass::new(b, p.hminus1.clone(), p.h0.clone(), phi.clone())?;
                let d = dual_pic(b, &p)?;
                t.check(dual_pic(b, &d)? == p, || format!("{tag}: dual is not an involution"));
                let dext = d.ext_group(b)?;
                for (blk, x) in ext.blocks.iter().zip(&phi) {
                    // H⁰ = Z ⊕ Tⁿ, H⁻¹ = T; dual factors: H⁰ = Z, H⁻¹ = Zⁿ ⊕ T,
                    // so the Z factor's block moves to target n and Tₖ's to k − 1
                    let target = if blk.source == 0 { n } else { blk.source - 1 };
                    let j = dext.blocks.iter().position(|db| db.source == 0 && db.target == target).expect("dual block");
                    t.check(dext.blocks[j].kind == blk.kind, || format!("{tag}: block kind changed"));
                    let expected = if blk.kind == BlockKind::Gerbe { blk.group.neg(x) } else { x.clone() };
                    t.check(d.phi[j] == expected, || format!("{tag}: block {:?} maps to {:?}", x, d.phi[j]));
                }
            }
        }
    }
    // composing the T-duality data with the Picard dual negates the flux
    for (ring, n) in [(CohRing::torus(3), 1), (CohRing::torus(3), 2), (torus_ring(), 2), (h3_ring(), 1)] {
        let cl = Classifier::new(&ring, &ChernClass::trivial(&ring, n))?;
        for _ in 0..5 {
            let tr = cl.triple(random_c_hat(rng, cl.q(), 3), random_vec(rng, ring.group(3).ngens(), 5))?;
            let (b, p) = cl.pic_class_of(&cl.phi_data(&tr)?)?;
            let d = dual_pic(&b, &p)?;
            let neg: Vec<Vec<Int>> = p.gerbe_components(&b)?.iter().map(|x| ring.group(3).neg(x)).collect();
            t.check(d.gerbe_components(&b)? == neg, || format!("{}: flux not negated", ring.name()));
        }
    }
    Ok(())
}

fn simplicial_cup(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let x = SimplicialComplex::torus7();
    let (e0, e1) = (vec![Int::from(1), Int::from(0)], vec![Int::from(0), Int::from(1)]);
    // orientation cycle: generator of ker ∂₂
    let z = kernel(&x.coboundary(1).transpose());
    t.check(z.cols() == 1, || format!("H_2 cycle space has rank {}", z.cols()));
    let cycle = z.column(0);
    let pair = |f: &[Int]| -> Int { f.iter().zip(&cycle).map(|(a, b)| a * b).sum() };
    let h1 = x.cohomology_classes(1);
    let (fa, fb) = (h1.lift(&e0), h1.lift(&e1));
    let ab = pair(&cup_cochains(&x, 1, &fa, 1, &fb));
    // order the basis so that a ∪ b evaluates to +1 on the fundamental cycle
    let (a, b) = if ab == Int::from(-1) { (e1, e0) } else { (e0, e1) };
    let (fa, fb) = (h1.lift(&a), h1.lift(&b));
    t.check(pair(&cup_cochains(&x, 1, &fa, 1, &fb)) == Int::from(1), || format!("<a b, [T]> = {ab}"));
    t.check(pair(&cup_cochains(&x, 1, &fb, 1, &fa)) == Int::from(-1), || "<b a, [T]> != -1".into());
    let h2 = x.cohomology_classes(2);
    let fundamental = cup(&x, 1, &a, 1, &b);
    t.check(h2.group() == &FgAb::z() && fundamental.len() == 1, || "H^2(T) is not Z".into());
    t.check(cup(&x, 1, &b, 1, &a) == h2.group().neg(&fundamental), || "b a != -(a b)".into());
    for v in [&a, &b] {
        t.check(cup(&x, 1, v, 1, v) == vec![Int::from(0)], || format!("{v:?} squared is nonzero"));
    }
    let rp2 = SimplicialComplex::rp2_6();
    t.check(cohomology(&rp2, 2, 1) == FgAb::cyclic(2), || format!("H^2(RP^2) = {}", cohomology(&rp2, 2, 1)));
    // representative independence
    let d0 = x.coboundary(0);
    for i in 0..50 {
        let (u, v) = (random_vec(rng, 2, 3), random_vec(rng, 2, 3));
        let expected = cup(&x, 1, &u, 1, &v);
        let f = add(&h1.lift(&u), &d0.mul_vec(&random_vec(rng, x.count(0), 5)));
        let g = add(&h1.lift(&v), &d0.mul_vec(&random_vec(rng, x.count(0), 5)));
        t.check(h2.coords(&cup_cochains(&x, 1, &f, 1, &g)) == expected, || format!("perturbation {i} changes the class"));
    }
    Ok(())
}

fn add(x: &[Int], y: &[Int]) -> Vec<Int> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}
