//! Bounded cochain complexes of finitely generated abelian groups, chain maps
//! and homotopies.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fgab::presentation::{presented_homology, Presentation};
use crate::fgab::{FgAb, FgAbMap, Int, IntMatrix, Subquotient};

/// Terms `K^low, …, K^{low+len-1}` with differentials between consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    low: i32,
    terms: Vec<FgAb>,
    diffs: Vec<FgAbMap>,
}

impl Complex {
    pub fn new(low: i32, terms: Vec<FgAb>, diffs: Vec<FgAbMap>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Malformed(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source() != &terms[i] || d.target() != &terms[i + 1] {
                return Err(Error::NotComposable(format!("differential out of degree {}", low + i as i32)));
            }
        }
        for w in diffs.windows(2) {
            if !w[1].compose(&w[0])?.is_zero() {
                return Err(Error::Invariant("d∘d is not zero".into()));
            }
        }
        Ok(Complex { low, terms, diffs })
    }

    /// A single group placed in degree `n`.
    pub fn concentrated(g: &FgAb, n: i32) -> Self {
        Complex { low: n, terms: vec![g.clone()], diffs: vec![] }
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.terms.len() as i32 - 1
    }

    pub fn term(&self, n: i32) -> FgAb {
        let i = n - self.low;
        if i < 0 || i as usize >= self.terms.len() {
            FgAb::zero()
        } else {
            self.terms[i as usize].clone()
        }
    }

    /// `d^n : K^n → K^{n+1}`, zero outside the stored range.
    pub fn differential(&self, n: i32) -> FgAbMap {
        let i = n - self.low;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            FgAbMap::zero(&self.term(n), &self.term(n + 1))
        }
    }

    pub fn cohomology_subquotient(&self, n: i32) -> Subquotient {
        crate::fgab::map::homology_subquotient(&self.differential(n - 1), &self.differential(n))
            .expect("differentials compose to zero")
    }

    pub fn cohomology(&self, n: i32) -> FgAb {
        self.cohomology_subquotient(n).group().clone()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.low..=self.high()).all(|n| self.cohomology(n).is_zero())
    }
}

fn span(a: &Complex, b: &Complex) -> std::ops::RangeInclusive<i32> {
    a.low.min(b.low) - 1..=a.high().max(b.high()) + 1
}

/// Degree-wise maps `f^n : K^n → L^n`; absent degrees are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    components: BTreeMap<i32, FgAbMap>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, components: BTreeMap<i32, FgAbMap>) -> Result<Self> {
        for (&n, f) in &components {
            if f.source() != &source.term(n) || f.target() != &target.term(n) {
                return Err(Error::NotComposable(format!("component in degree {n} has the wrong ends")));
            }
        }
        let m = ChainMap { source, target, components };
        for n in span(&m.source, &m.target) {
            let lhs = m.component(n + 1).compose(&m.source.differential(n))?;
            let rhs = m.target.differential(n).compose(&m.component(n))?;
            if lhs != rhs {
                return Err(Error::Invariant(format!("chain map does not commute in degree {n}")));
            }
        }
        Ok(m)
    }

    pub fn identity(k: &Complex) -> Self {
        let components = (k.low..=k.high()).map(|n| (n, FgAbMap::identity(&k.term(n)))).collect();
        ChainMap { source: k.clone(), target: k.clone(), components }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, n: i32) -> FgAbMap {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| FgAbMap::zero(&self.source.term(n), &self.target.term(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable("chain maps with different ends".into()));
        }
        let mut components = BTreeMap::new();
        for n in span(&self.source, &self.target) {
            let c = self.component(n).sub(&other.component(n))?;
            if !c.is_zero() {
                components.insert(n, c);
            }
        }
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), components })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(Error::NotComposable("chain maps do not compose".into()));
        }
        let mut components = BTreeMap::new();
        for n in span(&other.source, &self.target) {
            let c = self.component(n).compose(&other.component(n))?;
            if !c.is_zero() {
                components.insert(n, c);
            }
        }
        Ok(ChainMap { source: other.source.clone(), target: self.target.clone(), components })
    }

    /// Induced map `Hⁿ(K) → Hⁿ(L)`.
    pub fn induced(&self, n: i32) -> FgAbMap {
        let hk = self.source.cohomology_subquotient(n);
        let hl = self.target.cohomology_subquotient(n);
        let f = self.component(n);
        let cols: Vec<Vec<Int>> = hk.generators().iter().map(|x| hl.coords(&f.apply(x))).collect();
        FgAbMap::new(hk.group().clone(), hl.group().clone(), IntMatrix::from_columns(hl.group().ngens(), &cols))
            .expect("induced map is well defined")
    }

    pub fn is_quasi_iso(&self) -> bool {
        span(&self.source, &self.target).all(|n| self.induced(n).is_iso())
    }

    /// Mapping cone `C^n = K^{n+1} ⊕ L^n`, `d(k, l) = (−d k, f k + d l)`, as
    /// presented groups.
    pub fn cone(&self) -> PresentedComplex {
        let (k, l) = (&self.source, &self.target);
        let low = (k.low - 1).min(l.low);
        let high = (k.high() - 1).max(l.high());
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for n in low..=high {
            terms.push(Presentation::sum(&[Presentation::of(&k.term(n + 1)), Presentation::of(&l.term(n))]));
        }
        for n in low..high {
            let (a0, b0) = (k.term(n + 1).ngens(), l.term(n).ngens());
            let (a1, b1) = (k.term(n + 2).ngens(), l.term(n + 1).ngens());
            let mut m = IntMatrix::zeros(a1 + b1, a0 + b0);
            m.set_block(0, 0, &k.differential(n + 1).matrix().neg());
            m.set_block(a1, 0, self.component(n + 1).matrix());
            m.set_block(a1, a0, l.differential(n).matrix());
            diffs.push(m);
        }
        PresentedComplex { low, terms, diffs }
    }

    /// Quasi-isomorphism decided by acyclicity of the cone.
    pub fn cone_is_acyclic(&self) -> bool {
        self.cone().is_acyclic()
    }
}

/// Complex of presented groups with integer differentials on generators.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    pub low: i32,
    pub terms: Vec<Presentation>,
    pub diffs: Vec<IntMatrix>,
}

impl PresentedComplex {
    fn term(&self, n: i32) -> Presentation {
        let i = n - self.low;
        if i < 0 || i as usize >= self.terms.len() {
            Presentation::zero()
        } else {
            self.terms[i as usize].clone()
        }
    }

    fn diff(&self, n: i32) -> IntMatrix {
        let i = n - self.low;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            IntMatrix::zeros(self.term(n + 1).dim(), self.term(n).dim())
        }
    }

    pub fn high(&self) -> i32 {
        self.low + self.terms.len() as i32 - 1
    }

    pub fn cohomology(&self, n: i32) -> FgAb {
        presented_homology(&self.diff(n - 1), &self.term(n), &self.diff(n), &self.term(n + 1))
            .group()
            .clone()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.low..=self.high()).all(|n| self.cohomology(n).is_zero())
    }
}

/// `h^n : K^n → L^{n−1}` witnessing `f − g = d h + h d`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    components: BTreeMap<i32, FgAbMap>,
}

impl ChainHomotopy {
    pub fn new(components: BTreeMap<i32, FgAbMap>) -> Self {
        ChainHomotopy { components }
    }

    pub fn zero() -> Self {
        ChainHomotopy { components: BTreeMap::new() }
    }

    pub fn component(&self, k: &Complex, l: &Complex, n: i32) -> FgAbMap {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| FgAbMap::zero(&k.term(n), &l.term(n - 1)))
    }

    pub fn components(&self) -> &BTreeMap<i32, FgAbMap> {
        &self.components
    }

    /// Checks `f^n − g^n = d_L^{n−1} h^n + h^{n+1} d_K^n` in every degree.
    pub fn witnesses(&self, f: &ChainMap, g: &ChainMap) -> bool {
        let diff = match f.sub(g) {
            Ok(d) => d,
            Err(_) => return false,
        };
        let (k, l) = (&f.source, &f.target);
        for (&n, h) in &self.components {
            if h.source() != &k.term(n) || h.target() != &l.term(n - 1) {
                return false;
            }
        }
        span(k, l).all(|n| {
            let a = l.differential(n - 1).compose(&self.component(k, l, n));
            let b = self.component(k, l, n + 1).compose(&k.differential(n));
            match (a, b) {
                (Ok(a), Ok(b)) => a.add(&b).map(|s| s == diff.component(n)).unwrap_or(false),
                _ => false,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doubling() -> Complex {
        let d = FgAbMap::from_rows(FgAb::z(), FgAb::z(), &[[2]]).unwrap();
        Complex::new(-1, vec![FgAb::z(), FgAb::z()], vec![d]).unwrap()
    }

    #[test]
    fn cohomology_of_doubling() {
        let k = doubling();
        assert!(k.cohomology(-1).is_zero());
        assert_eq!(k.cohomology(0), FgAb::cyclic(2));
    }

    #[test]
    fn resolution_is_quasi_iso_to_quotient() {
        let k = doubling();
        let z2 = Complex::concentrated(&FgAb::cyclic(2), 0);
        let q = FgAbMap::from_rows(FgAb::z(), FgAb::cyclic(2), &[[1]]).unwrap();
        let f = ChainMap::new(k, z2, BTreeMap::from([(0, q)])).unwrap();
        assert!(f.is_quasi_iso());
        assert!(f.cone_is_acyclic());
    }

    #[test]
    fn non_commuting_map_is_rejected() {
        let k = doubling();
        let id = FgAbMap::identity(&FgAb::z());
        assert!(ChainMap::new(k.clone(), k, BTreeMap::from([(0, id)])).is_err());
    }
}
