use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tduality_core::lca::{dual, hom_group, FtLca, LcaMap};

#[test]
fn duality_is_an_additive_involution() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (g, h) = (FtLca::random(&mut r, 3, 12), FtLca::random(&mut r, 3, 12));
        assert_eq!(dual(&dual(&g)), g);
        assert_eq!(dual(&g.direct_sum(&h)), dual(&g).direct_sum(&dual(&h)));
    }
}

#[test]
fn hom_into_the_circle_is_the_dual() {
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let g = FtLca::random(&mut r, 3, 12);
        assert_eq!(hom_group(&g, &FtLca::circle(1)), dual(&g), "{g}");
    }
}

#[test]
fn random_compositions_are_associative_and_typed() {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let gs: Vec<FtLca> = (0..4).map(|_| FtLca::random(&mut r, 2, 6)).collect();
        let f = LcaMap::random(&mut r, &gs[0], &gs[1]);
        let g = LcaMap::random(&mut r, &gs[1], &gs[2]);
        let h = LcaMap::random(&mut r, &gs[2], &gs[3]);
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!((left.source(), left.target()), (&gs[0], &gs[3]));
        // a composite must itself be a valid map between the two groups
        let rows: Vec<Vec<_>> = (0..gs[3].factors().len())
            .map(|i| (0..gs[0].factors().len()).map(|j| left.entry(i, j).clone()).collect())
            .collect();
        assert!(LcaMap::new(gs[0].clone(), gs[3].clone(), rows).is_ok());
    }
}
