//! Groups given by generators and relations, for direct sums and complexes
//! whose terms are not kept in canonical form.

use super::group::FgAb;
use super::map::FgAbMap;
use super::Int;
use super::lattice::kernel;
use super::matrix::IntMatrix;
use super::subquotient::Subquotient;

/// `Z^dim / span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    dim: usize,
    relations: IntMatrix,
}

impl Presentation {
    pub fn new(dim: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), dim, "relation length mismatch");
        Presentation { dim, relations }
    }

    pub fn of(g: &FgAb) -> Self {
        Presentation { dim: g.ngens(), relations: g.relations() }
    }

    pub fn zero() -> Self {
        Presentation { dim: 0, relations: IntMatrix::zeros(0, 0) }
    }

    pub fn sum(parts: &[Presentation]) -> Self {
        let mut rel = IntMatrix::zeros(0, 0);
        for p in parts {
            rel = rel.block_diag(&p.relations);
        }
        Presentation { dim: rel.rows(), relations: rel }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn canonical(&self) -> Subquotient {
        Subquotient::quotient(self.dim, &self.relations)
    }

    pub fn group(&self) -> FgAb {
        self.canonical().group().clone()
    }
}

/// Direct sum `G₁ ⊕ … ⊕ G_k` kept in block coordinates, with conversion to
/// and from the canonical form of the sum.
#[derive(Clone, Debug)]
pub struct BlockSum {
    parts: Vec<FgAb>,
    offsets: Vec<usize>,
    sq: Subquotient,
}

impl BlockSum {
    pub fn new(parts: Vec<FgAb>) -> Self {
        let pres = Presentation::sum(&parts.iter().map(Presentation::of).collect::<Vec<_>>());
        let mut offsets = Vec::with_capacity(parts.len() + 1);
        let mut o = 0;
        for g in &parts {
            offsets.push(o);
            o += g.ngens();
        }
        offsets.push(o);
        BlockSum { parts, offsets, sq: pres.canonical() }
    }

    pub fn power(g: &FgAb, n: usize) -> Self {
        Self::new(vec![g.clone(); n])
    }

    pub fn group(&self) -> &FgAb {
        if self.parts.len() == 1 {
            &self.parts[0]
        } else {
            self.sq.group()
        }
    }

    pub fn parts(&self) -> &[FgAb] {
        &self.parts
    }

    pub fn nblocks(&self) -> usize {
        self.parts.len()
    }

    /// Total number of block coordinates.
    pub fn dim(&self) -> usize {
        self.offsets[self.parts.len()]
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn flatten(&self, x: &[Vec<Int>]) -> Vec<Int> {
        assert_eq!(x.len(), self.parts.len(), "block count mismatch");
        let mut out = Vec::with_capacity(self.dim());
        for (b, g) in x.iter().zip(&self.parts) {
            assert_eq!(b.len(), g.ngens(), "block length mismatch");
            out.extend(b.iter().cloned());
        }
        out
    }

    /// Splits flat coordinates into reduced blocks.
    pub fn split(&self, flat: &[Int]) -> Vec<Vec<Int>> {
        assert_eq!(flat.len(), self.dim(), "flat length mismatch");
        self.parts
            .iter()
            .enumerate()
            .map(|(i, g)| g.reduce(&flat[self.offsets[i]..self.offsets[i + 1]]))
            .collect()
    }

    pub fn reduce(&self, x: &[Vec<Int>]) -> Vec<Vec<Int>> {
        x.iter().zip(&self.parts).map(|(b, g)| g.reduce(b)).collect()
    }

    pub fn zero(&self) -> Vec<Vec<Int>> {
        self.parts.iter().map(FgAb::zero_element).collect()
    }

    pub fn to_canonical(&self, x: &[Vec<Int>]) -> Vec<Int> {
        self.to_canonical_flat(&self.flatten(x))
    }

    /// A single canonical block keeps its own coordinates.
    pub fn to_canonical_flat(&self, flat: &[Int]) -> Vec<Int> {
        if self.parts.len() == 1 {
            self.parts[0].reduce(flat)
        } else {
            self.sq.coords(flat)
        }
    }

    fn lift_flat(&self, y: &[Int]) -> Vec<Int> {
        if self.parts.len() == 1 {
            y.to_vec()
        } else {
            self.sq.lift(y)
        }
    }

    pub fn from_canonical(&self, y: &[Int]) -> Vec<Vec<Int>> {
        self.split(&self.lift_flat(y))
    }

    /// The homomorphism given on flat block coordinates by `m`, expressed
    /// between canonical forms. Fails when `m` does not respect relations.
    pub fn map_to(&self, target: &BlockSum, m: &IntMatrix) -> crate::error::Result<FgAbMap> {
        assert_eq!(m.shape(), (target.dim(), self.dim()), "block map shape mismatch");
        let cols: Vec<Vec<Int>> = (0..self.group().ngens())
            .map(|j| target.to_canonical_flat(&m.mul_vec(&self.lift_flat(&self.group().basis_element(j)))))
            .collect();
        let mat = IntMatrix::from_columns(target.group().ngens(), &cols);
        FgAbMap::new(self.group().clone(), target.group().clone(), mat)
    }
}

/// Homology of `P →f Q →g R` at `Q`, all terms presented. `g∘f` must land in
/// the relations of `R`.
pub fn presented_homology(f: &IntMatrix, q: &Presentation, g: &IntMatrix, r: &Presentation) -> Subquotient {
    assert_eq!(f.rows(), q.dim, "incoming map has the wrong target");
    assert_eq!(g.cols(), q.dim, "outgoing map has the wrong source");
    assert_eq!(g.rows(), r.dim, "outgoing map has the wrong target");
    let big = g.hcat(&r.relations);
    let k = kernel(&big);
    let num = k.submatrix(0..q.dim, 0..k.cols());
    Subquotient::new(&num, &f.hcat(&q.relations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_coordinates_round_trip() {
        use crate::fgab::ints;
        let b = BlockSum::new(vec![FgAb::cyclic(2), FgAb::z(), FgAb::cyclic(3)]);
        assert_eq!(b.group(), &FgAb::from_factors(1, &[6]));
        let x = vec![ints(&[1]), ints(&[-4]), ints(&[2])];
        assert_eq!(b.from_canonical(&b.to_canonical(&x)), x);
        let twice = b.map_to(&b, &IntMatrix::identity(3).scale(&Int::from(2))).unwrap();
        assert_eq!(twice.apply(&b.to_canonical(&x)), b.to_canonical(&[ints(&[0]), ints(&[-8]), ints(&[1])]));
    }

    #[test]
    fn sum_of_cyclics() {
        let p = Presentation::sum(&[Presentation::of(&FgAb::cyclic(2)), Presentation::of(&FgAb::cyclic(3))]);
        assert_eq!(p.group(), FgAb::cyclic(6));
    }

    #[test]
    fn homology_of_doubling_chain() {
        // Z →2 Z →0 Z/2
        let z = Presentation::of(&FgAb::z());
        let z2 = Presentation::of(&FgAb::cyclic(2));
        let f = IntMatrix::from_rows(&[[2]]);
        let g = IntMatrix::from_rows(&[[0]]);
        let h = presented_homology(&f, &z, &g, &z2);
        assert_eq!(h.group(), &FgAb::cyclic(2));
    }
}
