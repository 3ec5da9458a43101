//! The bar complex `Z(Gⁿ)` of a finite abelian group.

use num_traits::ToPrimitive;

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::fgab::FgAb;

/// Finite abelian group with elements numbered in mixed radix.
#[derive(Clone, Debug)]
pub struct ElementTable {
    orders: Vec<usize>,
    size: usize,
    sum: Vec<usize>,
}

impl ElementTable {
    pub fn new(g: &FgAb) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::Malformed(format!("{g} is not finite")));
        }
        let orders: Vec<usize> = g
            .factors()
            .iter()
            .map(|d| d.to_usize().ok_or_else(|| Error::Unsupported(format!("factor {d} is too large"))))
            .collect::<Result<_>>()?;
        let size: usize = orders.iter().product();
        if size > 4096 {
            return Err(Error::Unsupported(format!("group of order {size} is too large for the bar complex")));
        }
        let mut t = ElementTable { orders, size, sum: Vec::new() };
        let mut sum = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let (da, db) = (t.digits(a), t.digits(b));
                let dc: Vec<usize> = da.iter().zip(&db).zip(&t.orders).map(|((x, y), n)| (x + y) % n).collect();
                sum[a * size + b] = t.index(&dc);
            }
        }
        t.sum = sum;
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        for (k, n) in self.orders.iter().enumerate().rev() {
            out[k] = x % n;
            x /= n;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.orders).fold(0, |acc, (d, n)| acc * n + d)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.size + b]
    }

    /// `m·x` for any integer `m`.
    pub fn scale(&self, m: i64, x: usize) -> usize {
        let d: Vec<usize> = self
            .digits(x)
            .iter()
            .zip(&self.orders)
            .map(|(&v, &n)| (m.rem_euclid(n as i64) as usize * v) % n)
            .collect();
        self.index(&d)
    }
}

/// Unreduced or normalized (no identity entries) bar complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BarVariant {
    Unreduced,
    Normalized,
}

/// Largest chain group the unreduced complex may use before switching to the
/// normalized one.
pub const UNREDUCED_BUDGET: usize = 20_000;
/// Hard cap on the size of any chain group.
pub const CHAIN_BUDGET: usize = 40_000;

#[derive(Clone, Debug)]
pub struct BarComplex {
    group: FgAb,
    table: ElementTable,
    variant: BarVariant,
    max_degree: usize,
}

impl BarComplex {
    /// Chain groups up to `Z(G^{max_degree})`, unreduced unless that exceeds
    /// the budget.
    pub fn new(g: &FgAb, max_degree: usize) -> Result<Self> {
        let table = ElementTable::new(g)?;
        let top = (table.size() as f64).powi(max_degree as i32);
        let variant = if top <= UNREDUCED_BUDGET as f64 { BarVariant::Unreduced } else { BarVariant::Normalized };
        Self::with_variant(g, max_degree, variant)
    }

    pub fn with_variant(g: &FgAb, max_degree: usize, variant: BarVariant) -> Result<Self> {
        let table = ElementTable::new(g)?;
        let b = BarComplex { group: g.clone(), table, variant, max_degree };
        if b.chain_rank_f64(max_degree) > CHAIN_BUDGET as f64 {
            let mut max = max_degree;
            while max > 0 && b.chain_rank_f64(max) > CHAIN_BUDGET as f64 {
                max -= 1;
            }
            return Err(Error::DegreeOutOfRange { degree: max_degree, max });
        }
        Ok(b)
    }

    pub fn group(&self) -> &FgAb {
        &self.group
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn variant(&self) -> BarVariant {
        self.variant
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn letters(&self) -> usize {
        match self.variant {
            BarVariant::Unreduced => self.table.size(),
            BarVariant::Normalized => self.table.size() - 1,
        }
    }

    fn chain_rank_f64(&self, n: usize) -> f64 {
        (self.letters() as f64).powi(n as i32)
    }

    pub fn chain_rank(&self, n: usize) -> usize {
        self.letters().pow(n as u32)
    }

    fn element_of_letter(&self, l: usize) -> usize {
        match self.variant {
            BarVariant::Unreduced => l,
            BarVariant::Normalized => l + 1,
        }
    }

    fn letter_of_element(&self, g: usize) -> Option<usize> {
        match self.variant {
            BarVariant::Unreduced => Some(g),
            BarVariant::Normalized => g.checked_sub(1),
        }
    }

    /// Group elements of the `idx`-th generator of `Z(Gⁿ)`.
    pub fn tuple(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let k = self.letters();
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = self.element_of_letter(idx % k);
            idx /= k;
        }
        out
    }

    /// Index of a tuple of group elements, or `None` if it is degenerate in
    /// the normalized complex.
    pub fn tuple_index(&self, t: &[usize]) -> Option<usize> {
        let k = self.letters();
        let mut acc = 0;
        for &g in t {
            acc = acc * k + self.letter_of_element(g)?;
        }
        Some(acc)
    }

    /// `d = Σ (−1)ⁱ dᵢ : Z(Gⁿ) → Z(G^{n−1})`.
    pub fn boundary(&self, n: usize) -> Result<SparseMatrix> {
        if n > self.max_degree {
            return Err(Error::DegreeOutOfRange { degree: n, max: self.max_degree });
        }
        let rows = if n == 0 { 0 } else { self.chain_rank(n - 1) };
        let cols = self.chain_rank(n);
        let mut m = SparseMatrix::new(rows, cols);
        if n == 0 {
            return Ok(m);
        }
        for c in 0..cols {
            let t = self.tuple(n, c);
            for i in 0..=n {
                let face: Vec<usize> = if i == 0 {
                    t[1..].to_vec()
                } else if i == n {
                    t[..n - 1].to_vec()
                } else {
                    let mut f = t[..i - 1].to_vec();
                    f.push(self.table.add(t[i - 1], t[i]));
                    f.extend_from_slice(&t[i + 1..]);
                    f
                };
                if let Some(r) = self.tuple_index(&face) {
                    m.add(r, c, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        Ok(m)
    }

    /// Diagonal action `[g₁|…|gₙ] ↦ [mg₁|…|mgₙ]` as a matrix on `Z(Gⁿ)`.
    pub fn multiplication(&self, n: usize, mult: i64) -> SparseMatrix {
        let size = self.chain_rank(n);
        let mut m = SparseMatrix::new(size, size);
        for c in 0..size {
            let t: Vec<usize> = self.tuple(n, c).iter().map(|&g| self.table.scale(mult, g)).collect();
            if let Some(r) = self.tuple_index(&t) {
                m.add(r, c, 1);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_squared_is_zero() {
        for g in [FgAb::cyclic(3), FgAb::from_factors(0, &[2, 2])] {
            for variant in [BarVariant::Unreduced, BarVariant::Normalized] {
                let b = BarComplex::with_variant(&g, 4, variant).unwrap();
                for n in 2..=4 {
                    let dd = b.boundary(n - 1).unwrap().mul(&b.boundary(n).unwrap());
                    assert!(dd.is_zero(), "{g} {variant:?} degree {n}");
                }
            }
        }
    }

    #[test]
    fn multiplication_is_a_chain_map() {
        let b = BarComplex::new(&FgAb::cyclic(5), 3).unwrap();
        for n in 1..=3 {
            let d = b.boundary(n).unwrap();
            let lhs = d.mul(&b.multiplication(n, 2));
            let rhs = b.multiplication(n - 1, 2).mul(&d);
            assert_eq!(lhs.to_dense(), rhs.to_dense());
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            BarComplex::new(&FgAb::from_factors(0, &[5, 5]), 6),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }
}
