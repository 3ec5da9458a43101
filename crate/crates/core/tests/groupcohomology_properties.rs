use num_traits::Pow;
use tduality_core::fgab::{tensor, tor, FgAb, FgAbMap, Int};
use tduality_core::groupcohomology::{homology, homology_resolution, CochainModel, CohomologyGroup};

/// `Hₙ(G × H)` assembled from the factors.
fn kunneth(g: &[FgAb], h: &[FgAb], n: usize) -> FgAb {
    let mut out = FgAb::zero();
    for i in 0..=n {
        out = out.direct_sum(&tensor(&g[i], &h[n - i]));
    }
    for i in 0..n {
        out = out.direct_sum(&tor(&g[i], &h[n - 1 - i]));
    }
    out
}

#[test]
fn kunneth_for_products_of_small_groups() {
    let small: Vec<FgAb> = [vec![2], vec![3], vec![4], vec![2, 2], vec![6], vec![8]]
        .iter()
        .map(|f| FgAb::from_factors(0, f))
        .collect();
    for (a, g) in small.iter().enumerate() {
        for h in &small[a..] {
            // factor homology from the bar complex, the product from resolutions
            let hg: Vec<FgAb> = (0..=4).map(|i| homology(g, i).unwrap()).collect();
            let hh: Vec<FgAb> = (0..=4).map(|i| homology(h, i).unwrap()).collect();
            let prod = g.direct_sum(h);
            for n in 0..=4 {
                assert_eq!(homology_resolution(&prod, n).unwrap(), kunneth(&hg, &hh, n), "H_{n}({g} x {h})");
            }
        }
    }
}

#[test]
fn multiplication_acts_on_even_cohomology_of_cyclic_groups_by_powers() {
    for p in [3i64, 5, 7] {
        let g = FgAb::cyclic(p);
        for k in 1..=3u32 {
            let h = CohomologyGroup::new(&g, 2 * k as usize, CochainModel::choose(&g, 2 * k as usize)).unwrap();
            assert_eq!(h.group(), &g);
            for m in 1..p {
                let expected = FgAbMap::scalar(h.group(), &Pow::pow(&Int::from(m), k));
                assert_eq!(h.weight_map(m).unwrap(), expected, "Psi^{m} on H^{}(Z/{p})", 2 * k);
            }
        }
    }
}
