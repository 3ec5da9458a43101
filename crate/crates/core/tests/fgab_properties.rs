use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tduality_core::fgab::{ext1, hom, random, smith_normal_form, tensor, tor, FgAb, Int, IntMatrix, Presentation};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn smith_form_factors_random_50x50_matrices() {
    let mut r = rng(1);
    for _ in 0..3 {
        let m = IntMatrix::from_fn(50, 50, |_, _| Int::from(r.random_range(-100i64..=100)));
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        let diag: Vec<Int> = (0..s.rank).map(|i| s.d[(i, i)].clone()).collect();
        assert!(diag.windows(2).all(|w| (&w[1] % &w[0]) == Int::from(0)));
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(50));
    }
}

/// `|Hom(G, H)|` by enumerating images of the generators.
fn hom_count(g: &FgAb, h: &FgAb) -> usize {
    let elems = h.elements();
    g.cyclic_orders()
        .iter()
        .map(|d| elems.iter().filter(|x| h.is_zero_element(&h.scale(d, x))).count())
        .product()
}

#[test]
fn finite_functors_match_counting() {
    let groups: Vec<FgAb> = [vec![2], vec![4], vec![6], vec![2, 2], vec![2, 4], vec![3, 9], vec![8]]
        .iter()
        .map(|f| FgAb::from_factors(0, f))
        .collect();
    for g in &groups {
        for h in &groups {
            let n = Int::from(hom_count(g, h));
            assert_eq!(hom(g, h).order(), Some(n.clone()), "Hom({g}, {h})");
            // for finite groups Ext¹ ≅ Hom and Tor ≅ ⊗ abstractly
            assert_eq!(ext1(g, h).order(), Some(n));
            let gcds: Int = g
                .cyclic_orders()
                .iter()
                .flat_map(|a| h.cyclic_orders().into_iter().map(move |b| num_integer::Integer::gcd(a, &b)))
                .product();
            assert_eq!(tensor(g, h).order(), Some(gcds.clone()));
            assert_eq!(tor(g, h), tensor(g, h));
        }
    }
}

#[test]
fn functors_are_additive() {
    let mut r = rng(2);
    for _ in 0..100 {
        let (a, b, c) = (random::group(&mut r, 2, 12), random::group(&mut r, 2, 12), random::group(&mut r, 2, 12));
        let ab = a.direct_sum(&b);
        for f in [hom, ext1, tensor, tor] {
            assert_eq!(f(&ab, &c), f(&a, &c).direct_sum(&f(&b, &c)));
            assert_eq!(f(&c, &ab), f(&c, &a).direct_sum(&f(&c, &b)));
        }
    }
}

#[test]
fn ext_vanishes_on_free_groups() {
    let mut r = rng(3);
    for rank in 0..=6 {
        let b = random::group(&mut r, 3, 30);
        assert!(ext1(&FgAb::free(rank), &b).is_zero());
    }
}

#[test]
fn normal_forms_are_fixed_points() {
    let mut r = rng(4);
    for _ in 0..100 {
        let g = random::group(&mut r, 3, 60);
        assert_eq!(Presentation::of(&g).group(), g);
        assert_eq!(FgAb::from_cyclic_orders(&g.cyclic_orders()), g);
    }
}
