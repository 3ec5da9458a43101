use std::collections::BTreeSet;

use super::Extension;
use crate::error::{Error, Result};
use crate::fgab::{FgAb, Int};

/// The fiber `p⁻¹(1)` of an extension of `Z`, a coset of `i(H)` in `E` with
/// `H` acting by translation.
#[derive(Clone, Debug)]
pub struct TorsorDatum {
    ext: Extension,
    base_point: Vec<Int>,
}

pub fn torsor_of(w: &Extension) -> Result<TorsorDatum> {
    if w.quot() != &FgAb::z() {
        return Err(Error::Malformed(format!("torsor needs an extension of Z, got quotient {}", w.quot())));
    }
    let one = vec![Int::from(1)];
    let base_point = w
        .projection()
        .preimage(&one)
        .ok_or_else(|| Error::Invariant("projection does not reach 1".into()))?;
    Ok(TorsorDatum { ext: w.clone(), base_point })
}

impl TorsorDatum {
    pub fn acting_group(&self) -> &FgAb {
        self.ext.sub()
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn base_point(&self) -> &[Int] {
        &self.base_point
    }

    pub fn contains(&self, e: &[Int]) -> bool {
        self.ext.projection().apply(e) == vec![Int::from(1)]
    }

    /// `h · e = e + i(h)`
    pub fn act(&self, h: &[Int], e: &[Int]) -> Vec<Int> {
        let ih = self.ext.inclusion().apply(h);
        self.ext.mid().add(e, &ih)
    }

    /// The unique `h` with `h · a = b`, if both lie in the fiber.
    pub fn difference(&self, a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
        if !self.contains(a) || !self.contains(b) {
            return None;
        }
        let d = self.ext.mid().add(b, &self.ext.mid().neg(a));
        self.ext.inclusion().preimage(&d)
    }

    /// All fiber elements, sorted, when `H` is finite.
    pub fn elements(&self) -> Option<Vec<Vec<Int>>> {
        let h = self.acting_group();
        if !h.is_finite() {
            return None;
        }
        let set: BTreeSet<Vec<Int>> = h.elements().iter().map(|x| self.act(x, &self.base_point)).collect();
        Some(set.into_iter().collect())
    }

    /// Freeness and transitivity by enumeration (finite `H` only).
    pub fn is_free_transitive(&self) -> Option<bool> {
        let h = self.acting_group();
        let elems = self.elements()?;
        let order = h.order()?;
        if Int::from(elems.len()) != order || !elems.iter().all(|e| self.contains(e)) {
            return Some(false);
        }
        for e in &elems {
            let orbit: BTreeSet<Vec<Int>> = h.elements().iter().map(|x| self.act(x, e)).collect();
            if orbit.len() != elems.len() {
                return Some(false);
            }
        }
        Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{ints, FgAbMap};

    #[test]
    fn z2_fiber_over_one() {
        let h = FgAb::cyclic(2);
        let e = FgAb::from_factors(1, &[2]);
        let i = FgAbMap::from_rows(h, e.clone(), &[[0], [1]]).unwrap();
        let p = FgAbMap::from_rows(e, FgAb::z(), &[[1, 0]]).unwrap();
        let w = Extension::new(i, p).unwrap();
        let t = torsor_of(&w).unwrap();
        assert_eq!(t.elements().unwrap(), vec![ints(&[1, 0]), ints(&[1, 1])]);
        assert_eq!(t.is_free_transitive(), Some(true));
    }

    #[test]
    fn identity_extension_is_a_point() {
        let i = FgAbMap::zero(&FgAb::zero(), &FgAb::z());
        let p = FgAbMap::identity(&FgAb::z());
        let t = torsor_of(&Extension::new(i, p).unwrap()).unwrap();
        assert_eq!(t.elements().unwrap().len(), 1);
    }

    #[test]
    fn rejects_other_quotients() {
        let e = Extension::split(&FgAb::cyclic(3), &FgAb::cyclic(2));
        assert!(torsor_of(&e).is_err());
    }
}
