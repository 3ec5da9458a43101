//! Finite simplicial complexes, their integral cohomology and the
//! Alexander–Whitney cup product.

mod ring;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::lattice::kernel;
use crate::fgab::{FgAb, Int, IntMatrix, Subquotient};

pub use ring::{load_ring, CohRing, CupTable, MAX_DEGREE};

/// Simplices stored per dimension as sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    maximal: Vec<Vec<usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    #[serde(default)]
    version: Option<u32>,
    vertices: usize,
    simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertices: usize, simplices: &[Vec<usize>]) -> Result<Self> {
        let mut maximal = Vec::new();
        for s in simplices {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            if set.len() != s.len() || s.is_empty() {
                return Err(Error::Malformed(format!("simplex {s:?} is empty or repeats a vertex")));
            }
            if let Some(&v) = set.iter().next_back() {
                if v >= vertices {
                    return Err(Error::Malformed(format!("vertex {v} out of range 0..{vertices}")));
                }
            }
            maximal.push(set.into_iter().collect::<Vec<_>>());
        }
        let top = maximal.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top];
        for v in 0..vertices {
            sets[0].insert(vec![v]);
        }
        for s in &maximal {
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let faces: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex { vertices, maximal, faces, index })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn maximal_simplices(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn dimension(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// `δᵏ : Cᵏ → C^{k+1}`, `(δf)(σ) = Σ (−1)ⁱ f(∂ᵢσ)`.
    pub fn coboundary(&self, k: usize) -> IntMatrix {
        let (rows, cols) = (self.count(k + 1), self.count(k));
        let mut m = IntMatrix::zeros(rows, cols);
        for (r, s) in self.simplices(k + 1).iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let c = self.simplex_index(&f).expect("faces are closed");
                m[(r, c)] += Int::from(if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// `Hᵏ(X; Z)` with cocycle representatives.
    pub fn cohomology_classes(&self, k: usize) -> Subquotient {
        let den = if k == 0 { IntMatrix::zeros(self.count(0), 0) } else { self.coboundary(k - 1) };
        Subquotient::new(&kernel(&self.coboundary(k)), &den)
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dimension()).map(|k| if k % 2 == 0 { self.count(k) as i64 } else { -(self.count(k) as i64) }).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexJson {
            version: Some(crate::json::SCHEMA_VERSION),
            vertices: self.vertices,
            simplices: self.maximal.clone(),
        })
        .expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ComplexJson = serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        if let Some(ver) = j.version {
            if ver != crate::json::SCHEMA_VERSION {
                return Err(Error::Malformed(format!("unsupported simplicial complex version {ver}")));
            }
        }
        Self::new(j.vertices, &j.simplices)
    }

    /// Boundary of the 3-simplex.
    pub fn sphere2() -> Self {
        let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].map(|f| f.to_vec());
        Self::new(4, &faces).expect("valid")
    }

    /// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
    pub fn torus7() -> Self {
        let mut faces = Vec::new();
        for i in 0..7 {
            faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        Self::new(7, &faces).expect("valid")
    }

    /// Six-vertex real projective plane.
    pub fn rp2_6() -> Self {
        let faces = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ]
        .map(|f| f.to_vec());
        Self::new(6, &faces).expect("valid")
    }
}

/// `Hᵏ(X; Zⁿ) = Hᵏ(X; Z)ⁿ`.
pub fn cohomology(x: &SimplicialComplex, k: usize, coeff_rank: usize) -> FgAb {
    x.cohomology_classes(k).group().power(coeff_rank)
}

/// Alexander–Whitney product of cochains:
/// `(f ∪ g)(v₀…v_{p+q}) = f(v₀…v_p) · g(v_p…v_{p+q})`.
pub fn cup_cochains(x: &SimplicialComplex, p: usize, f: &[Int], q: usize, g: &[Int]) -> Vec<Int> {
    x.simplices(p + q)
        .iter()
        .map(|s| {
            let front = x.simplex_index(&s[..=p]).expect("front face");
            let back = x.simplex_index(&s[p..]).expect("back face");
            &f[front] * &g[back]
        })
        .collect()
}

/// Cup product of classes in canonical coordinates.
pub fn cup(x: &SimplicialComplex, p: usize, a: &[Int], q: usize, b: &[Int]) -> Vec<Int> {
    let hp = x.cohomology_classes(p);
    let hq = x.cohomology_classes(q);
    let h = x.cohomology_classes(p + q);
    h.coords(&cup_cochains(x, p, &hp.lift(a), q, &hq.lift(b)))
}

/// Cohomology ring in degrees `0..=4` with cup tables on generators.
pub fn ring_of(x: &SimplicialComplex, name: &str) -> Result<CohRing> {
    let classes: Vec<Subquotient> = (0..=MAX_DEGREE).map(|k| x.cohomology_classes(k)).collect();
    let groups: Vec<FgAb> = classes.iter().map(|c| c.group().clone()).collect();
    let mut tables = Vec::new();
    for p in 0..=MAX_DEGREE {
        for q in 0..=MAX_DEGREE - p {
            let (hp, hq, h) = (&classes[p], &classes[q], &classes[p + q]);
            let table: Vec<Vec<Vec<Int>>> = hp
                .generators()
                .iter()
                .map(|f| hq.generators().iter().map(|g| h.coords(&cup_cochains(x, p, f, q, g))).collect())
                .collect();
            tables.push(CupTable { p, q, table });
        }
    }
    // the constant cochain 1 represents the unit
    let one = vec![Int::from(1); x.count(0)];
    let unit = classes[0].coords(&one);
    CohRing::new(name, groups, unit, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::ints;

    #[test]
    fn sphere_cohomology() {
        let s = SimplicialComplex::sphere2();
        assert_eq!(cohomology(&s, 0, 1), FgAb::z());
        assert!(cohomology(&s, 1, 1).is_zero());
        assert_eq!(cohomology(&s, 2, 1), FgAb::z());
        assert_eq!(cohomology(&s, 2, 3), FgAb::free(3));
    }

    #[test]
    fn projective_plane() {
        let x = SimplicialComplex::rp2_6();
        assert!(cohomology(&x, 1, 1).is_zero());
        assert_eq!(cohomology(&x, 2, 1), FgAb::cyclic(2));
        assert_eq!(x.euler_characteristic(), 1);
    }

    #[test]
    fn torus_cohomology_and_cup() {
        let x = SimplicialComplex::torus7();
        assert_eq!(cohomology(&x, 1, 1), FgAb::free(2));
        assert_eq!(cohomology(&x, 2, 1), FgAb::z());
        let (a, b) = (ints(&[1, 0]), ints(&[0, 1]));
        let ab = cup(&x, 1, &a, 1, &b);
        let ba = cup(&x, 1, &b, 1, &a);
        assert!(ab == ints(&[1]) || ab == ints(&[-1]));
        assert_eq!(ba, vec![-ab[0].clone()]);
        assert_eq!(cup(&x, 1, &a, 1, &a), ints(&[0]));
    }

    #[test]
    fn coboundaries_square_to_zero() {
        for x in [SimplicialComplex::torus7(), SimplicialComplex::rp2_6(), SimplicialComplex::sphere2()] {
            for k in 0..2 {
                assert!(x.coboundary(k + 1).mul(&x.coboundary(k)).is_zero());
            }
        }
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let x = SimplicialComplex::torus7();
        assert_eq!(SimplicialComplex::from_json(&x.to_json()).unwrap(), x);
        let bad = serde_json::json!({"vertices": 2, "simplices": [[0, 5]]});
        assert!(SimplicialComplex::from_json(&bad).is_err());
    }
}
