use std::fmt;

use super::group::FgAb;
use super::lattice::{kernel, Lattice};
use super::matrix::IntMatrix;
use super::subquotient::Subquotient;
use super::Int;
use crate::error::{Error, Result};

/// Homomorphism of finitely generated abelian groups in standard generators.
/// Column `j` is the image of source generator `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgAbMap {
    source: FgAb,
    target: FgAb,
    matrix: IntMatrix,
}

/// A subgroup presented as its own canonical group plus the inclusion.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAb,
    pub inclusion: FgAbMap,
    sq: Subquotient,
}

impl Subgroup {
    /// Coordinates of an ambient element lying in the subgroup.
    pub fn coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        self.sq.try_coords(x)
    }
}

/// A quotient group with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAb,
    pub projection: FgAbMap,
    sq: Subquotient,
}

impl Quotient {
    /// A preimage of a quotient element.
    pub fn lift(&self, y: &[Int]) -> Vec<Int> {
        self.projection.source.reduce(&self.sq.lift(y))
    }
}

impl FgAbMap {
    pub fn new(source: FgAb, target: FgAb, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(Error::Malformed(format!(
                "matrix is {}x{} but the map {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                source,
                target,
                target.ngens(),
                source.ngens()
            )));
        }
        let f = FgAbMap { source, target, matrix }.normalized();
        // relations of the source must land in the relations of the target
        for (j, d) in f.source.factors().iter().enumerate() {
            let col = f.matrix.column(f.source.free_rank() + j);
            let img: Vec<Int> = col.iter().map(|x| x * d).collect();
            if !f.target.is_zero_element(&img) {
                return Err(Error::Invariant(format!(
                    "generator of order {d} is sent to an element of larger order"
                )));
            }
        }
        Ok(f)
    }

    /// Constructor for maps known to be well defined.
    pub(crate) fn new_unchecked(source: FgAb, target: FgAb, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (target.ngens(), source.ngens()));
        FgAbMap { source, target, matrix }.normalized()
    }

    pub fn from_rows<R: AsRef<[i64]>>(source: FgAb, target: FgAb, rows: &[R]) -> Result<Self> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, source.ngens())
        } else {
            IntMatrix::from_rows(rows)
        };
        Self::new(source, target, m)
    }

    pub fn identity(a: &FgAb) -> Self {
        FgAbMap { source: a.clone(), target: a.clone(), matrix: IntMatrix::identity(a.ngens()) }
    }

    pub fn zero(source: &FgAb, target: &FgAb) -> Self {
        FgAbMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn scalar(a: &FgAb, k: &Int) -> Self {
        Self::new_unchecked(a.clone(), a.clone(), IntMatrix::identity(a.ngens()).scale(k))
    }

    fn normalized(mut self) -> Self {
        let t = &self.target;
        let f = t.free_rank();
        for i in f..t.ngens() {
            let d = &t.factors()[i - f];
            for j in 0..self.matrix.cols() {
                let v = num_integer::Integer::mod_floor(&self.matrix[(i, j)], d);
                self.matrix[(i, j)] = v;
            }
        }
        self
    }

    pub fn source(&self) -> &FgAb {
        &self.source
    }

    pub fn target(&self) -> &FgAb {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &FgAbMap) -> Result<FgAbMap> {
        if other.target != self.source {
            return Err(Error::NotComposable(format!(
                "{} -> {} followed by {} -> {}",
                other.source, other.target, self.source, self.target
            )));
        }
        Ok(Self::new_unchecked(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix)))
    }

    pub fn add(&self, other: &FgAbMap) -> Result<FgAbMap> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &FgAbMap) -> Result<FgAbMap> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn neg(&self) -> FgAbMap {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    fn check_parallel(&self, other: &FgAbMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable("maps have different source or target".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Lattice in `Z^{ngens(source)}` of lifts of kernel elements.
    pub(crate) fn kernel_lattice(&self) -> IntMatrix {
        let big = self.matrix.hcat(&self.target.relations());
        let k = kernel(&big);
        k.submatrix(0..self.source.ngens(), 0..k.cols())
    }

    /// Lattice in `Z^{ngens(target)}` of lifts of image elements plus relations.
    pub(crate) fn image_lattice(&self) -> IntMatrix {
        self.matrix.hcat(&self.target.relations())
    }

    pub fn kernel(&self) -> Subgroup {
        let sq = Subquotient::new(&self.kernel_lattice(), &self.source.relations());
        let inclusion = Self::new_unchecked(sq.group().clone(), self.source.clone(), sq.generator_matrix());
        Subgroup { group: sq.group().clone(), inclusion, sq }
    }

    pub fn image(&self) -> Subgroup {
        let sq = Subquotient::new(&self.image_lattice(), &self.target.relations());
        let inclusion = Self::new_unchecked(sq.group().clone(), self.target.clone(), sq.generator_matrix());
        Subgroup { group: sq.group().clone(), inclusion, sq }
    }

    pub fn cokernel(&self) -> Quotient {
        let sq = Subquotient::quotient(self.target.ngens(), &self.image_lattice());
        let n = self.target.ngens();
        let cols: Vec<Vec<Int>> = (0..n).map(|j| sq.coords(&self.target.basis_element(j))).collect();
        let m = IntMatrix::from_columns(sq.group().ngens(), &cols);
        let projection = Self::new_unchecked(self.target.clone(), sq.group().clone(), m);
        Quotient { group: sq.group().clone(), projection, sq }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Whether `x` (target coordinates) lies in the image.
    pub fn image_contains(&self, x: &[Int]) -> bool {
        Lattice::from_generators(&self.image_lattice()).contains(x)
    }

    /// Some `y` with `f(y) = x`.
    pub fn preimage(&self, x: &[Int]) -> Option<Vec<Int>> {
        let sol = super::lattice::solve(&self.image_lattice(), x)?;
        Some(self.source.reduce(&sol[..self.source.ngens()]))
    }
}

impl fmt::Display for FgAbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} by {}", self.source, self.target, self.matrix)
    }
}

/// Homology `ker g / im f` at the middle of `A →f B →g C`.
pub fn homology_at(f: &FgAbMap, g: &FgAbMap) -> Result<FgAb> {
    Ok(homology_subquotient(f, g)?.group().clone())
}

pub(crate) fn homology_subquotient(f: &FgAbMap, g: &FgAbMap) -> Result<Subquotient> {
    if f.target != g.source {
        return Err(Error::NotComposable(format!("{} then {}", f, g)));
    }
    if !g.compose(f)?.is_zero() {
        return Err(Error::Invariant("consecutive maps do not compose to zero".into()));
    }
    Ok(Subquotient::new(&g.kernel_lattice(), &f.image_lattice()))
}

/// Exactness at every interior node of a composable sequence.
pub fn is_exact(seq: &[FgAbMap]) -> Result<bool> {
    for w in seq.windows(2) {
        let (f, g) = (&w[0], &w[1]);
        if f.target != g.source {
            return Err(Error::NotComposable(format!("{} then {}", f, g)));
        }
    }
    for w in seq.windows(2) {
        let (f, g) = (&w[0], &w[1]);
        if !g.compose(f)?.is_zero() {
            return Ok(false);
        }
        let im = Lattice::from_generators(&f.image_lattice());
        let ker = g.kernel_lattice();
        if !(0..ker.cols()).all(|j| im.contains(&ker.column(j))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `0 → A →i B →p C → 0` is exact.
pub fn is_short_exact(i: &FgAbMap, p: &FgAbMap) -> Result<bool> {
    let zero_in = FgAbMap::zero(&FgAb::zero(), i.source());
    let zero_out = FgAbMap::zero(p.target(), &FgAb::zero());
    is_exact(&[zero_in, i.clone(), p.clone(), zero_out])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAb {
        FgAb::z()
    }

    #[test]
    fn cokernel_of_doubling() {
        let f = FgAbMap::from_rows(z(), z(), &[[2]]).unwrap();
        assert_eq!(f.cokernel().group, FgAb::cyclic(2));
        assert!(f.is_injective());
    }

    #[test]
    fn kernel_of_sum() {
        let f = FgAbMap::from_rows(FgAb::free(2), z(), &[[1, 1]]).unwrap();
        let k = f.kernel();
        assert_eq!(k.group, z());
        assert!(f.compose(&k.inclusion).unwrap().is_zero());
    }

    #[test]
    fn cokernel_of_snf_example() {
        let f = FgAbMap::from_rows(FgAb::free(2), FgAb::free(2), &[[2, 4], [6, 8]]).unwrap();
        assert_eq!(f.cokernel().group, FgAb::from_factors(0, &[2, 4]));
        assert_eq!(f.image().group, FgAb::free(2));
    }

    #[test]
    fn torsion_kernel_and_image() {
        // Z/4 -> Z/4, x -> 2x
        let g = FgAb::cyclic(4);
        let f = FgAbMap::from_rows(g.clone(), g.clone(), &[[2]]).unwrap();
        assert_eq!(f.kernel().group, FgAb::cyclic(2));
        assert_eq!(f.image().group, FgAb::cyclic(2));
        assert_eq!(f.cokernel().group, FgAb::cyclic(2));
    }

    #[test]
    fn rejects_ill_defined_maps() {
        assert!(FgAbMap::from_rows(FgAb::cyclic(2), z(), &[[1]]).is_err());
        assert!(FgAbMap::from_rows(FgAb::cyclic(4), FgAb::cyclic(6), &[[1]]).is_err());
        assert!(FgAbMap::from_rows(FgAb::cyclic(4), FgAb::cyclic(6), &[[3]]).is_ok());
    }

    #[test]
    fn exactness_of_short_sequences() {
        for n in 2..6i64 {
            let i = FgAbMap::from_rows(z(), z(), &[[n]]).unwrap();
            let p = FgAbMap::from_rows(z(), FgAb::cyclic(n), &[[1]]).unwrap();
            assert!(is_short_exact(&i, &p).unwrap());
            let q = FgAbMap::from_rows(z(), FgAb::cyclic(2 * n), &[[1]]).unwrap();
            assert!(!is_short_exact(&i, &q).unwrap());
        }
    }

    #[test]
    fn non_composable_is_an_error() {
        let f = FgAbMap::identity(&z());
        let g = FgAbMap::identity(&FgAb::cyclic(2));
        assert!(matches!(is_exact(&[f, g]), Err(Error::NotComposable(_))));
    }
}
