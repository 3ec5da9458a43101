//! Cohomology of the total space of a circle bundle over a simplicial
//! complex, from the cochain model `C*(B) ⊕ C*(B)[−1]` with differential
//! `(a, b) ↦ (δa + e ∪ b, −δb)` for an Euler cocycle `e`. Its long exact
//! sequence is the Gysin sequence; nothing here uses the filtration model.

use crate::error::{Error, Result};
use crate::fgab::{homology_at, FgAb, FgAbMap, Int, IntMatrix};
use crate::simplicial::{cup_cochains, SimplicialComplex};

/// `d : C^k(B) ⊕ C^{k−1}(B) → C^{k+1}(B) ⊕ C^k(B)`.
fn total_differential(x: &SimplicialComplex, e: &[Int], k: usize) -> IntMatrix {
    let dim = |j: Option<usize>| j.map_or(0, |j| x.count(j));
    let km1 = k.checked_sub(1);
    let (src_a, src_b) = (dim(Some(k)), dim(km1));
    let (tgt_a, tgt_b) = (dim(Some(k + 1)), dim(Some(k)));
    let mut m = IntMatrix::zeros(tgt_a + tgt_b, src_a + src_b);
    if tgt_a > 0 && src_a > 0 {
        m.set_block(0, 0, &x.coboundary(k));
    }
    if let Some(km1) = km1 {
        for j in 0..src_b {
            let mut b = vec![Int::from(0); src_b];
            b[j] = Int::from(1);
            if tgt_a > 0 {
                let eb = cup_cochains(x, 2, e, km1, &b);
                for (r, v) in eb.iter().enumerate() {
                    m[(r, src_a + j)] += v;
                }
            }
            if tgt_b > 0 {
                let db = x.coboundary(km1).mul_vec(&b);
                for (r, v) in db.iter().enumerate() {
                    m[(tgt_a + r, src_a + j)] -= v;
                }
            }
        }
    }
    m
}

fn term(x: &SimplicialComplex, k: Option<usize>) -> usize {
    match k {
        None => 0,
        Some(k) => x.count(k) + k.checked_sub(1).map_or(0, |j| x.count(j)),
    }
}

/// `Hᵏ(E; Z)` for the circle bundle with Euler class represented by the
/// 2-cocycle `e`.
pub fn gysin_cohomology(x: &SimplicialComplex, e: &[Int], k: usize) -> Result<FgAb> {
    if e.len() != x.count(2) {
        return Err(Error::Malformed("Euler cocycle must be a 2-cochain".into()));
    }
    if !x.coboundary(2).mul_vec(e).iter().all(|v| v == &Int::from(0)) {
        return Err(Error::Malformed("Euler cochain is not a cocycle".into()));
    }
    let free = |n: usize| FgAb::free(n);
    let out = FgAbMap::new(free(term(x, Some(k))), free(term(x, Some(k + 1))), total_differential(x, e, k))?;
    let inc = match k.checked_sub(1) {
        None => FgAbMap::zero(&FgAb::zero(), &free(term(x, Some(0)))),
        Some(j) => FgAbMap::new(free(term(x, Some(j))), free(term(x, Some(k))), total_differential(x, e, j))?,
    };
    homology_at(&inc, &out)
}

/// `H³(E)` for the bundle whose Euler class has coordinates `class` in
/// `H²(X; Z)`.
pub fn gysin_h3(x: &SimplicialComplex, class: &[Int]) -> Result<FgAb> {
    let e = x.cohomology_classes(2).lift(class);
    gysin_cohomology(x, &e, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::ints;

    #[test]
    fn hopf_and_trivial_bundles() {
        let s = SimplicialComplex::sphere2();
        // S³: Z, 0, 0, Z
        let e = s.cohomology_classes(2).lift(&ints(&[1]));
        let h: Vec<FgAb> = (0..4).map(|k| gysin_cohomology(&s, &e, k).unwrap()).collect();
        assert_eq!(h, vec![FgAb::z(), FgAb::zero(), FgAb::zero(), FgAb::z()]);
        // S² × S¹: Z, Z, Z, Z
        let z = vec![Int::from(0); s.count(2)];
        assert!((0..4).all(|k| gysin_cohomology(&s, &z, k).unwrap() == FgAb::z()));
        // lens space L(3, 1): H² = Z/3
        let e3 = s.cohomology_classes(2).lift(&ints(&[3]));
        assert_eq!(gysin_cohomology(&s, &e3, 2).unwrap(), FgAb::cyclic(3));
    }
}
