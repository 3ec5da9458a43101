//! Morphisms between finite-type groups as matrices of "multiply by λ"
//! parameters, one per pair of elementary factors.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::FtLca;
use crate::error::{Error, Result};
use crate::fgab::Int;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Factor {
    Z,
    Cyclic(Int),
    T,
    R,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Z => write!(f, "Z"),
            Factor::Cyclic(n) => write!(f, "Z/{n}"),
            Factor::T => write!(f, "T"),
            Factor::R => write!(f, "R"),
        }
    }
}

fn frac_mod_one(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Reduces `λ` into the value group of the block `a → b`, or explains why
/// it is not a continuous homomorphism.
fn reduce_entry(a: &Factor, b: &Factor, x: &BigRational) -> std::result::Result<BigRational, String> {
    use Factor::*;
    let must_be_zero = |x: &BigRational| {
        if x.is_zero() {
            Ok(BigRational::zero())
        } else {
            Err(format!("every continuous map {a} -> {b} is zero"))
        }
    };
    let integer = |x: &BigRational| {
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(format!("a map {a} -> {b} needs an integer parameter, got {x}"))
        }
    };
    match (a, b) {
        (Z, Z) | (T, T) => integer(x).map(BigRational::from_integer),
        (Z, Cyclic(m)) => integer(x).map(|k| BigRational::from_integer(k.mod_floor(m))),
        (Z, T) => Ok(frac_mod_one(x)),
        (Z, R) | (R, R) | (R, T) => Ok(x.clone()),
        (Cyclic(n), Cyclic(m)) => {
            let k = integer(x)?;
            if !(&k * n).is_multiple_of(m) {
                return Err(format!("multiplication by {k} does not descend to {a} -> {b}"));
            }
            Ok(BigRational::from_integer(k.mod_floor(m)))
        }
        (Cyclic(n), T) => {
            if !(x * BigRational::from_integer(n.clone())).is_integer() {
                return Err(format!("a character of {a} takes values in (1/{n})Z/Z, got {x}"));
            }
            Ok(frac_mod_one(x))
        }
        (Cyclic(_), Z) | (Cyclic(_), R) | (T, Z) | (T, Cyclic(_)) | (T, R) | (R, Z) | (R, Cyclic(_)) => {
            must_be_zero(x)
        }
    }
}

/// Morphism `source → target`; `entries[i][j]` is the parameter from source
/// factor `j` to target factor `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LcaMap {
    source: FtLca,
    target: FtLca,
    entries: Vec<Vec<BigRational>>,
}

impl LcaMap {
    pub fn new(source: FtLca, target: FtLca, entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let (sf, tf) = (source.factors(), target.factors());
        if entries.len() != tf.len() || entries.iter().any(|r| r.len() != sf.len()) {
            return Err(Error::Malformed(format!(
                "a map {source} -> {target} needs a {}x{} parameter matrix",
                tf.len(),
                sf.len()
            )));
        }
        let mut out = entries;
        for (i, b) in tf.iter().enumerate() {
            for (j, a) in sf.iter().enumerate() {
                out[i][j] = reduce_entry(a, b, &out[i][j]).map_err(Error::Invariant)?;
            }
        }
        Ok(LcaMap { source, target, entries: out })
    }

    pub fn identity(g: &FtLca) -> Self {
        let n = g.factors().len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        LcaMap { source: g.clone(), target: g.clone(), entries }
    }

    pub fn zero(source: &FtLca, target: &FtLca) -> Self {
        let entries = vec![vec![BigRational::zero(); source.factors().len()]; target.factors().len()];
        LcaMap { source: source.clone(), target: target.clone(), entries }
    }

    pub fn source(&self) -> &FtLca {
        &self.source
    }

    pub fn target(&self) -> &FtLca {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LcaMap) -> Result<LcaMap> {
        if other.target != self.source {
            return Err(Error::NotComposable(format!(
                "{} -> {} followed by {} -> {}",
                other.source, other.target, self.source, self.target
            )));
        }
        let (sf, tf) = (other.source.factors(), self.target.factors());
        let mid = self.source.factors().len();
        let mut entries = vec![vec![BigRational::zero(); sf.len()]; tf.len()];
        for (i, b) in tf.iter().enumerate() {
            for (j, a) in sf.iter().enumerate() {
                let mut acc = BigRational::zero();
                for l in 0..mid {
                    acc += &self.entries[i][l] * &other.entries[l][j];
                }
                entries[i][j] = reduce_entry(a, b, &acc).map_err(Error::Invariant)?;
            }
        }
        Ok(LcaMap { source: other.source.clone(), target: self.target.clone(), entries })
    }

    /// Uniformly chosen small parameters in every allowed block.
    pub fn random<R: Rng>(rng: &mut R, source: &FtLca, target: &FtLca) -> LcaMap {
        use Factor::*;
        let (sf, tf) = (source.factors(), target.factors());
        let mut entries = vec![vec![BigRational::zero(); sf.len()]; tf.len()];
        for (i, b) in tf.iter().enumerate() {
            for (j, a) in sf.iter().enumerate() {
                let k = Int::from(rng.random_range(-4i64..=4));
                let den = Int::from(rng.random_range(1i64..=6));
                entries[i][j] = match (a, b) {
                    (Z, Z) | (T, T) | (Z, Cyclic(_)) => BigRational::from_integer(k),
                    (Z, T) | (Z, R) | (R, R) | (R, T) => BigRational::new(k, den),
                    (Cyclic(n), Cyclic(m)) => BigRational::from_integer(k * (m / n.gcd(m))),
                    (Cyclic(n), T) => BigRational::new(k, n.clone()),
                    _ => BigRational::zero(),
                };
            }
        }
        LcaMap::new(source.clone(), target.clone(), entries).expect("generated parameters are admissible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::FgAb;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn rejects_forced_zero_blocks() {
        let t = FtLca::circle(1);
        let z = FtLca::integers(1);
        assert!(LcaMap::new(t.clone(), z.clone(), vec![vec![q(1, 1)]]).is_err());
        assert!(LcaMap::new(z.clone(), t.clone(), vec![vec![q(3, 2)]]).unwrap().entry(0, 0) == &q(1, 2));
        let z4 = FtLca::finite(FgAb::cyclic(4));
        assert!(LcaMap::new(z4.clone(), t, vec![vec![q(1, 3)]]).is_err());
        assert!(LcaMap::new(z4, FtLca::finite(FgAb::cyclic(6)), vec![vec![q(3, 1)]]).is_ok());
    }

    #[test]
    fn composition_is_associative_and_respects_zero_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g: Vec<FtLca> = (0..4).map(|_| FtLca::random(&mut rng, 2, 6)).collect();
            let f1 = LcaMap::random(&mut rng, &g[0], &g[1]);
            let f2 = LcaMap::random(&mut rng, &g[1], &g[2]);
            let f3 = LcaMap::random(&mut rng, &g[2], &g[3]);
            let left = f3.compose(&f2).unwrap().compose(&f1).unwrap();
            let right = f3.compose(&f2.compose(&f1).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}
