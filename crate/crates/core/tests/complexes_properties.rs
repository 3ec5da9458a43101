use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tduality_core::complexes::{quotient_by, rhom, ComplexMap, Homotopy, TwoTerm};
use tduality_core::fgab::{random, BlockSum, FgAb, Int, IntMatrix};

fn random_two_term(r: &mut ChaCha8Rng) -> TwoTerm {
    let (a, b) = (random::group(r, 2, 8), random::group(r, 2, 8));
    TwoTerm::new(random::map(r, &a, &b, 3))
}

/// `K ⊕ [Z →1 Z]`, quasi-isomorphic to `K`.
fn add_acyclic(k: &TwoTerm) -> TwoTerm {
    let src = BlockSum::new(vec![k.kminus1().clone(), FgAb::z()]);
    let tgt = BlockSum::new(vec![k.k0().clone(), FgAb::z()]);
    // block coordinates of d are the standard ones of each summand
    let m = k.d().matrix().block_diag(&IntMatrix::identity(1));
    TwoTerm::new(src.map_to(&tgt, &m).unwrap())
}

#[test]
fn quasi_isomorphism_agrees_with_cone_acyclicity() {
    let mut r = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let k = random_two_term(&mut r);
        let kernel = k.d().kernel();
        let mut gens: Vec<Vec<Int>> = Vec::new();
        for c in kernel.inclusion.matrix().columns() {
            if r.random_bool(0.5) {
                let k = Int::from(r.random_range(0i64..=2));
                gens.push(c.iter().map(|x| x * &k).collect());
            }
        }
        let (kbar, proj) = quotient_by(&k, &gens).unwrap();
        // the projection is a quasi-isomorphism exactly when nothing is killed
        let killed = gens.iter().any(|g| !k.kminus1().is_zero_element(g));
        assert_eq!(proj.is_quasi_iso(), !killed);
        assert_eq!(proj.is_quasi_iso(), proj.cone_is_acyclic());
        let z = ComplexMap::zero(&k, &kbar);
        assert_eq!(z.is_quasi_iso(), z.cone_is_acyclic());
        assert!(ComplexMap::identity(&k).cone_is_acyclic());
    }
}

#[test]
fn rhom_is_invariant_under_quasi_isomorphism() {
    let mut r = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..40 {
        let (k, l) = (random_two_term(&mut r), random_two_term(&mut r));
        let (k2, l2) = (add_acyclic(&k), add_acyclic(&l));
        assert_eq!((k2.h0(), k2.hminus1()), (k.h0(), k.hminus1()));
        let base = rhom(&k, &l);
        assert_eq!(rhom(&k2, &l), base);
        assert_eq!(rhom(&k, &l2), base);
        assert_eq!(rhom(&k2, &l2), base);
    }
}

#[test]
fn homotopic_maps_induce_equal_maps() {
    let mut r = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let k = random_two_term(&mut r);
        let f = ComplexMap::identity(&k);
        let h = Homotopy::new(random::map(&mut r, k.k0(), k.kminus1(), 3));
        let g = h.perturb(&f).unwrap();
        assert!(h.witnesses(&g, &f));
        assert_eq!(g.induced_h0(), f.induced_h0());
        assert_eq!(g.induced_hminus1(), f.induced_hminus1());
    }
}
