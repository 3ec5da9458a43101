//! Graded cohomology rings `H⁰ … H⁴` given by generators and cup tables.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{FgAb, Int};
use crate::json::{int_vec, IntRepr, SCHEMA_VERSION};

pub const MAX_DEGREE: usize = 4;

/// `table[i][j]` = coordinates of `gᵢ ∪ gⱼ` in `H^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupTable {
    pub p: usize,
    pub q: usize,
    pub table: Vec<Vec<Vec<Int>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohRing {
    name: String,
    groups: Vec<FgAb>,
    unit: Vec<Int>,
    cup: BTreeMap<(usize, usize), Vec<Vec<Vec<Int>>>>,
}

impl CohRing {
    /// Builds and validates. Tables may be omitted when either factor group
    /// is zero.
    pub fn new(name: &str, groups: Vec<FgAb>, unit: Vec<Int>, tables: Vec<CupTable>) -> Result<Self> {
        if groups.len() != MAX_DEGREE + 1 {
            return Err(Error::Malformed(format!("need {} graded groups, got {}", MAX_DEGREE + 1, groups.len())));
        }
        let mut cup = BTreeMap::new();
        for t in tables {
            if t.p + t.q > MAX_DEGREE {
                return Err(Error::Malformed(format!("cup table ({}, {}) exceeds degree {MAX_DEGREE}", t.p, t.q)));
            }
            if cup.insert((t.p, t.q), t.table).is_some() {
                return Err(Error::Malformed(format!("duplicate cup table ({}, {})", t.p, t.q)));
            }
        }
        for p in 0..=MAX_DEGREE {
            for q in 0..=MAX_DEGREE - p {
                if !cup.contains_key(&(p, q)) {
                    if groups[p].is_zero() || groups[q].is_zero() {
                        let empty = vec![vec![Vec::new(); groups[q].ngens()]; groups[p].ngens()];
                        cup.insert((p, q), empty);
                    } else {
                        return Err(Error::MissingCupTable(p, q));
                    }
                }
            }
        }
        let mut ring = CohRing { name: name.to_string(), groups, unit, cup };
        ring.normalize_and_check_shapes()?;
        ring.validate()?;
        Ok(ring)
    }

    fn normalize_and_check_shapes(&mut self) -> Result<()> {
        if self.unit.len() != self.groups[0].ngens() {
            return Err(Error::Malformed("unit has the wrong length".into()));
        }
        self.unit = self.groups[0].reduce(&self.unit);
        for (&(p, q), t) in self.cup.iter_mut() {
            let (gp, gq, g) = (&self.groups[p], &self.groups[q], &self.groups[p + q]);
            let ok = t.len() == gp.ngens() && t.iter().all(|row| row.len() == gq.ngens());
            if !ok {
                return Err(Error::Malformed(format!("cup table ({p}, {q}) has the wrong shape")));
            }
            for row in t.iter_mut() {
                for e in row.iter_mut() {
                    if e.is_empty() && g.ngens() > 0 {
                        *e = g.zero_element();
                    }
                    if e.len() != g.ngens() {
                        return Err(Error::Malformed(format!("cup table ({p}, {q}) entry has the wrong length")));
                    }
                    *e = g.reduce(e);
                }
            }
        }
        Ok(())
    }

    /// Well-definedness on torsion, unit, graded commutativity and
    /// associativity on generators.
    pub fn validate(&self) -> Result<()> {
        for (&(p, q), t) in &self.cup {
            let (gp, gq, g) = (&self.groups[p], &self.groups[q], &self.groups[p + q]);
            for i in 0..gp.ngens() {
                for j in 0..gq.ngens() {
                    for ord in [gp.generator_order(i), gq.generator_order(j)] {
                        if ord != Int::from(0) && !g.is_zero_element(&g.scale(&ord, &t[i][j])) {
                            return Err(Error::Invariant(format!(
                                "cup table ({p}, {q}) is not bilinear on torsion at ({i}, {j})"
                            )));
                        }
                    }
                }
            }
        }
        for p in 0..=MAX_DEGREE {
            for i in 0..self.groups[p].ngens() {
                let x = self.groups[p].basis_element(i);
                if self.cup(0, &self.unit, p, &x)? != x || self.cup(p, &x, 0, &self.unit)? != x {
                    return Err(Error::Invariant(format!("unit does not act as identity in degree {p}")));
                }
            }
        }
        for p in 0..=MAX_DEGREE {
            for q in 0..=MAX_DEGREE - p {
                let g = &self.groups[p + q];
                for i in 0..self.groups[p].ngens() {
                    for j in 0..self.groups[q].ngens() {
                        let ab = &self.cup[&(p, q)][i][j];
                        let ba = &self.cup[&(q, p)][j][i];
                        let expected = if (p * q) % 2 == 0 { ba.clone() } else { g.neg(ba) };
                        if ab != &expected {
                            return Err(Error::Invariant(format!(
                                "graded commutativity fails for generators {i} in H^{p} and {j} in H^{q}"
                            )));
                        }
                    }
                }
            }
        }
        for p in 1..=MAX_DEGREE {
            for q in 1..=MAX_DEGREE - p {
                for r in 1..=MAX_DEGREE - p - q {
                    for i in 0..self.groups[p].ngens() {
                        for j in 0..self.groups[q].ngens() {
                            for k in 0..self.groups[r].ngens() {
                                let (a, b, c) = (
                                    self.groups[p].basis_element(i),
                                    self.groups[q].basis_element(j),
                                    self.groups[r].basis_element(k),
                                );
                                let left = self.cup(p + q, &self.cup(p, &a, q, &b)?, r, &c)?;
                                let right = self.cup(p, &a, q + r, &self.cup(q, &b, r, &c)?)?;
                                if left != right {
                                    return Err(Error::Invariant(format!("associativity fails in degrees {p}, {q}, {r}")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self, p: usize) -> FgAb {
        self.groups.get(p).cloned().unwrap_or_else(FgAb::zero)
    }

    pub fn groups(&self) -> &[FgAb] {
        &self.groups
    }

    pub fn unit(&self) -> &[Int] {
        &self.unit
    }

    /// `x ∪ y` for `x ∈ Hᵖ`, `y ∈ H^q` in coordinates; zero above degree 4.
    pub fn cup(&self, p: usize, x: &[Int], q: usize, y: &[Int]) -> Result<Vec<Int>> {
        if p + q > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange { degree: p + q, max: MAX_DEGREE });
        }
        let t = self.cup.get(&(p, q)).ok_or(Error::MissingCupTable(p, q))?;
        let g = &self.groups[p + q];
        if x.len() != self.groups[p].ngens() || y.len() != self.groups[q].ngens() {
            return Err(Error::Malformed(format!("element lengths do not match H^{p}, H^{q}")));
        }
        let mut out = g.zero_element();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let c = xi * yj;
                if c == Int::from(0) {
                    continue;
                }
                for (o, e) in out.iter_mut().zip(&t[i][j]) {
                    *o += &c * e;
                }
            }
        }
        Ok(g.reduce(&out))
    }

    pub fn table(&self, p: usize, q: usize) -> Option<&Vec<Vec<Vec<Int>>>> {
        self.cup.get(&(p, q))
    }

    /// Cohomology of a point.
    pub fn point() -> Self {
        let mut groups = vec![FgAb::zero(); MAX_DEGREE + 1];
        groups[0] = FgAb::z();
        let t = CupTable { p: 0, q: 0, table: vec![vec![vec![Int::from(1)]]] };
        Self::new("point", groups, vec![Int::from(1)], vec![t]).expect("valid")
    }

    /// `Z[x]/x³` with `x` in degree 2, the cohomology of `CP²`.
    pub fn cp2() -> Self {
        let groups = vec![FgAb::z(), FgAb::zero(), FgAb::z(), FgAb::zero(), FgAb::z()];
        let one = || vec![vec![vec![Int::from(1)]]];
        let tables = vec![
            CupTable { p: 0, q: 0, table: one() },
            CupTable { p: 0, q: 2, table: one() },
            CupTable { p: 2, q: 0, table: one() },
            CupTable { p: 0, q: 4, table: one() },
            CupTable { p: 4, q: 0, table: one() },
            CupTable { p: 2, q: 2, table: one() },
        ];
        Self::new("CP2", groups, vec![Int::from(1)], tables).expect("valid")
    }

    /// Exterior algebra on `k` degree-one generators, the cohomology of the
    /// `k`-torus. Degree-`p` basis: increasing `p`-subsets in lexicographic
    /// order.
    pub fn torus(k: usize) -> Self {
        let basis: Vec<Vec<Vec<usize>>> = (0..=MAX_DEGREE).map(|p| subsets(k, p)).collect();
        let groups = basis.iter().map(|b| FgAb::free(b.len())).collect();
        let mut tables = Vec::new();
        for p in 0..=MAX_DEGREE {
            for q in 0..=MAX_DEGREE - p {
                let table = basis[p]
                    .iter()
                    .map(|s| {
                        basis[q]
                            .iter()
                            .map(|t| {
                                let mut out = vec![Int::from(0); basis[p + q].len()];
                                if s.iter().all(|i| !t.contains(i)) {
                                    // sign of the shuffle sorting s ++ t
                                    let inversions = s.iter().map(|i| t.iter().filter(|j| *j < i).count()).sum::<usize>();
                                    let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
                                    u.sort_unstable();
                                    let idx = basis[p + q].iter().position(|b| *b == u).expect("basis subset");
                                    out[idx] = Int::from(if inversions % 2 == 0 { 1 } else { -1 });
                                }
                                out
                            })
                            .collect()
                    })
                    .collect();
                tables.push(CupTable { p, q, table });
            }
        }
        Self::new(&format!("T{k}"), groups, vec![Int::from(1)], tables).expect("valid")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = RingJson {
            version: SCHEMA_VERSION,
            name: self.name.clone(),
            groups: self.groups.clone(),
            unit: self.unit.clone(),
            cup: self
                .cup
                .iter()
                .map(|(&(p, q), t)| TableJson {
                    p,
                    q,
                    table: t
                        .iter()
                        .map(|row| row.iter().map(|e| e.iter().map(IntRepr::from).collect()).collect())
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: RingJson = serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        if doc.version != SCHEMA_VERSION {
            return Err(Error::Malformed(format!("unsupported ring version {}", doc.version)));
        }
        let tables = doc
            .cup
            .into_iter()
            .map(|t| {
                let table = t
                    .table
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|e| e.into_iter().map(Int::try_from).collect::<std::result::Result<Vec<_>, _>>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(Error::Malformed)?;
                Ok(CupTable { p: t.p, q: t.q, table })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&doc.name, doc.groups, doc.unit, tables)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_json(&v)
    }
}

pub fn load_ring(path: &Path) -> Result<CohRing> {
    CohRing::load(path)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    p: usize,
    q: usize,
    table: Vec<Vec<Vec<IntRepr>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingJson {
    version: u32,
    name: String,
    groups: Vec<FgAb>,
    #[serde(with = "int_vec")]
    unit: Vec<Int>,
    cup: Vec<TableJson>,
}

fn subsets(k: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in p - 1..k {
        for mut s in subsets(last, p - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{ring_of, SimplicialComplex};

    #[test]
    fn cp2_square_is_top_class() {
        let r = CohRing::cp2();
        let x = vec![Int::from(1)];
        assert_eq!(r.cup(2, &x, 2, &x).unwrap(), vec![Int::from(1)]);
        let back = CohRing::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn torus_ring_round_trips() {
        let r = ring_of(&SimplicialComplex::torus7(), "torus").unwrap();
        assert_eq!(CohRing::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn rejects_non_commutative_table() {
        let mut v = ring_of(&SimplicialComplex::torus7(), "torus").unwrap().to_json();
        for t in v["cup"].as_array_mut().unwrap() {
            if t["p"] == 1 && t["q"] == 1 {
                // make b ∪ a equal to a ∪ b
                let ab = t["table"][0][1].clone();
                t["table"][1][0] = ab;
            }
        }
        assert!(matches!(CohRing::from_json(&v), Err(Error::Invariant(_))));
    }

    #[test]
    fn exterior_torus_ring() {
        let r = CohRing::torus(3);
        let ranks: Vec<usize> = r.groups().iter().map(FgAb::ngens).collect();
        assert_eq!(ranks, [1, 3, 3, 1, 0]);
        let e = |i: usize| r.group(1).basis_element(i);
        let ab = r.cup(1, &e(0), 1, &e(1)).unwrap();
        let abc = r.cup(2, &ab, 1, &e(2)).unwrap();
        assert_eq!(abc, vec![Int::from(1)]);
        let ca = r.cup(1, &e(2), 1, &e(0)).unwrap();
        assert_eq!(ca, vec![Int::from(0), Int::from(-1), Int::from(0)]);
        let two = CohRing::torus(2);
        let simplicial = ring_of(&SimplicialComplex::torus7(), "torus").unwrap();
        assert_eq!(two.groups(), simplicial.groups());
    }

    #[test]
    fn rejects_missing_table() {
        let groups = vec![FgAb::z(), FgAb::zero(), FgAb::z(), FgAb::zero(), FgAb::zero()];
        let t = CupTable { p: 0, q: 0, table: vec![vec![vec![Int::from(1)]]] };
        assert!(matches!(
            CohRing::new("x", groups, vec![Int::from(1)], vec![t]),
            Err(Error::MissingCupTable(0, 2))
        ));
    }
}
