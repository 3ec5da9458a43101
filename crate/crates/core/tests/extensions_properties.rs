use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tduality_core::extensions::{baer_sum, torsor_of, Ext1, Extension};
use tduality_core::fgab::{random, BlockSum, FgAb, Int, IntMatrix};

/// `0 → H → H ⊕ Z → Z → 0` twisted by the automorphism `(h, n) ↦ (h + n·x, n)`.
fn twisted_extension_of_z(h: &FgAb, x: &[Int]) -> Extension {
    let e = BlockSum::new(vec![h.clone(), FgAb::z()]);
    let nh = h.ngens();
    let mut phi = IntMatrix::identity(nh + 1);
    for (i, xi) in x.iter().enumerate() {
        phi[(i, nh)] = xi.clone();
    }
    let mut phi_inv = IntMatrix::identity(nh + 1);
    for (i, xi) in x.iter().enumerate() {
        phi_inv[(i, nh)] = -xi.clone();
    }
    let inc = BlockSum::new(vec![h.clone()]).map_to(&e, &phi.mul(&IntMatrix::identity(nh + 1).submatrix(0..nh + 1, 0..nh))).unwrap();
    let proj_flat = IntMatrix::identity(nh + 1).submatrix(nh..nh + 1, 0..nh + 1).mul(&phi_inv);
    let proj = e.map_to(&BlockSum::new(vec![FgAb::z()]), &proj_flat).unwrap();
    Extension::new(inc, proj).unwrap()
}

#[test]
fn torsors_are_free_and_transitive() {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let h = FgAb::from_cyclic_orders(&[Int::from(r.random_range(2i64..=6)), Int::from(r.random_range(1i64..=4))]);
        let x: Vec<Int> = h.cyclic_orders().iter().map(|d| Int::from(r.random_range(0..d.clone().try_into().unwrap_or(1i64)))).collect();
        let t = torsor_of(&twisted_extension_of_z(&h, &x)).unwrap();
        assert_eq!(t.is_free_transitive(), Some(true));
    }
}

#[test]
fn class_map_is_a_homomorphism_on_random_finite_groups() {
    let mut r = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let (g, h) = (random::group(&mut r, 0, 12), random::group(&mut r, 1, 12));
        let e = Ext1::new(&g, &h);
        let pick = |r: &mut ChaCha8Rng| {
            let els = e.group().elements();
            els[r.random_range(0..els.len())].clone()
        };
        let (x, y) = (pick(&mut r), pick(&mut r));
        let s = baer_sum(&e.from_class(&x), &e.from_class(&y)).unwrap();
        assert_eq!(e.class_of(&s).unwrap(), e.add(&x, &y));
    }
}

#[test]
fn twisted_extensions_of_z_have_split_middle_term() {
    let h = FgAb::cyclic(4);
    for k in 0..4 {
        let w = twisted_extension_of_z(&h, &[Int::from(k)]);
        assert_eq!(w.mid(), &FgAb::from_factors(1, &[4]));
    }
}
