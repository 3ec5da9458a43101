//! Seeded random groups and homomorphisms for property sweeps.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{FgAb, FgAbMap, Int, IntMatrix};

/// Free rank at most `max_rank` plus a torsion part of order at most
/// `max_order`.
pub fn group<R: Rng>(rng: &mut R, max_rank: usize, max_order: u64) -> FgAb {
    let rank = rng.random_range(0..=max_rank);
    let mut orders = Vec::new();
    let mut budget = max_order.max(1);
    while budget >= 2 && rng.random_bool(0.6) {
        let d = rng.random_range(2..=budget);
        orders.push(Int::from(d));
        budget /= d;
    }
    FgAb::free(rank).direct_sum(&FgAb::from_cyclic_orders(&orders))
}

/// A uniformly chosen well-defined homomorphism with free coefficients in
/// `-max_entry..=max_entry`.
pub fn map<R: Rng>(rng: &mut R, source: &FgAb, target: &FgAb, max_entry: i64) -> FgAbMap {
    let mut cols = Vec::with_capacity(source.ngens());
    for j in 0..source.ngens() {
        let order = source.generator_order(j);
        let col: Vec<Int> = (0..target.ngens())
            .map(|i| {
                let e = target.generator_order(i);
                if order == Int::from(0) {
                    // free source generator: anything
                    return Int::from(rng.random_range(-max_entry..=max_entry));
                }
                if e == Int::from(0) {
                    return Int::from(0);
                }
                // d·y = 0 in Z/e forces y ∈ (e / gcd(d, e))·Z/e
                let step = &e / order.gcd(&e);
                let count = (&e / &step).to_i64().expect("small group");
                step * Int::from(rng.random_range(0..count))
            })
            .collect();
        cols.push(col);
    }
    FgAbMap::new(source.clone(), target.clone(), IntMatrix::from_columns(target.ngens(), &cols))
        .expect("columns respect relations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn maps_are_well_defined_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (g, h) = (group(&mut a, 2, 8), group(&mut a, 2, 8));
            let f = map(&mut a, &g, &h, 3);
            let (g2, h2) = (group(&mut b, 2, 8), group(&mut b, 2, 8));
            assert_eq!(f, map(&mut b, &g2, &h2, 3));
            assert!(g.torsion_part().order().unwrap() <= Int::from(8));
        }
    }
}
