//! Extensions `0 → H → E → G → 0`, their classes in `Ext¹(G, H)`, Baer
//! addition and the torsor attached to an extension of `Z`.

mod torsor;

use crate::error::{Error, Result};
use crate::fgab::lattice::kernel;
use crate::fgab::{is_short_exact, FgAb, FgAbMap, Int, IntMatrix, Subquotient};

pub use torsor::{torsor_of, TorsorDatum};

#[derive(Clone, Debug)]
pub struct Extension {
    sub: FgAb,
    mid: FgAb,
    quot: FgAb,
    i: FgAbMap,
    p: FgAbMap,
}

impl Extension {
    pub fn new(i: FgAbMap, p: FgAbMap) -> Result<Self> {
        if !is_short_exact(&i, &p)? {
            return Err(Error::Invariant("the sequence 0 -> H -> E -> G -> 0 is not exact".into()));
        }
        Ok(Extension {
            sub: i.source().clone(),
            mid: i.target().clone(),
            quot: p.target().clone(),
            i,
            p,
        })
    }

    pub fn split(g: &FgAb, h: &FgAb) -> Self {
        let ext = Ext1::new(g, h);
        ext.from_class(&ext.group().zero_element())
    }

    pub fn sub(&self) -> &FgAb {
        &self.sub
    }

    pub fn mid(&self) -> &FgAb {
        &self.mid
    }

    pub fn quot(&self) -> &FgAb {
        &self.quot
    }

    pub fn inclusion(&self) -> &FgAbMap {
        &self.i
    }

    pub fn projection(&self) -> &FgAbMap {
        &self.p
    }
}

/// `Ext¹(G, H) ≅ ⊕ⱼ H / dⱼH` over the torsion generators of `G`, with
/// explicit elements.
#[derive(Clone, Debug)]
pub struct Ext1 {
    g: FgAb,
    h: FgAb,
    /// Quotient of `⊕ⱼ H` (as coordinates) by the relations.
    sq: Subquotient,
}

impl Ext1 {
    pub fn new(g: &FgAb, h: &FgAb) -> Self {
        let nh = h.ngens();
        let orders = g.factors();
        let dim = orders.len() * nh;
        let rel_h = h.relations();
        let mut cols: Vec<Vec<Int>> = Vec::new();
        for (j, d) in orders.iter().enumerate() {
            for c in 0..rel_h.cols() {
                let mut v = vec![Int::from(0); dim];
                for r in 0..nh {
                    v[j * nh + r] = rel_h[(r, c)].clone();
                }
                cols.push(v);
            }
            for k in 0..nh {
                let mut v = vec![Int::from(0); dim];
                v[j * nh + k] = d.clone();
                cols.push(v);
            }
        }
        let sq = Subquotient::quotient(dim, &IntMatrix::from_columns(dim, &cols));
        Ext1 { g: g.clone(), h: h.clone(), sq }
    }

    pub fn group(&self) -> &FgAb {
        self.sq.group()
    }

    pub fn quot(&self) -> &FgAb {
        &self.g
    }

    pub fn sub(&self) -> &FgAb {
        &self.h
    }

    /// Class of the tuple `(hⱼ)` with one `H`-element per torsion generator.
    pub fn class_of_tuple(&self, tuple: &[Vec<Int>]) -> Vec<Int> {
        let flat: Vec<Int> = tuple.iter().flatten().cloned().collect();
        self.sq.coords(&flat)
    }

    /// A tuple `(hⱼ)` representing a class.
    pub fn tuple_of(&self, class: &[Int]) -> Vec<Vec<Int>> {
        let flat = self.sq.lift(class);
        let nh = self.h.ngens();
        (0..self.g.ntors()).map(|j| self.h.reduce(&flat[j * nh..(j + 1) * nh])).collect()
    }

    pub fn class_of(&self, e: &Extension) -> Result<Vec<Int>> {
        if e.quot != self.g || e.sub != self.h {
            return Err(Error::Malformed("extension ends do not match this Ext group".into()));
        }
        let f = self.g.free_rank();
        let mut tuple = Vec::new();
        for (j, d) in self.g.factors().iter().enumerate() {
            let gen = self.g.basis_element(f + j);
            let s = e.p.preimage(&gen).ok_or_else(|| Error::Invariant("projection is not onto".into()))?;
            let ds: Vec<Int> = s.iter().map(|x| x * d).collect();
            let ds = e.mid.reduce(&ds);
            let h = e
                .i
                .preimage(&ds)
                .ok_or_else(|| Error::Invariant("d·s is not in the image of the inclusion".into()))?;
            tuple.push(h);
        }
        Ok(self.class_of_tuple(&tuple))
    }

    /// The extension `(H ⊕ Z^{n_G}) / ⟨R_H, (−hⱼ, dⱼeⱼ)⟩`.
    pub fn from_class(&self, class: &[Int]) -> Extension {
        let tuple = self.tuple_of(class);
        let (nh, ng) = (self.h.ngens(), self.g.ngens());
        let dim = nh + ng;
        let mut rel = self.h.relations().vcat(&IntMatrix::zeros(ng, self.h.ntors()));
        let f = self.g.free_rank();
        for (j, d) in self.g.factors().iter().enumerate() {
            let mut v = vec![Int::from(0); dim];
            for (k, x) in tuple[j].iter().enumerate() {
                v[k] = -x;
            }
            v[nh + f + j] = d.clone();
            rel = rel.hcat(&IntMatrix::from_columns(dim, &[v]));
        }
        let sq = Subquotient::quotient(dim, &rel);
        let mid = sq.group().clone();
        let i_cols: Vec<Vec<Int>> = (0..nh)
            .map(|k| {
                let mut v = vec![Int::from(0); dim];
                v[k] = Int::from(1);
                sq.coords(&v)
            })
            .collect();
        let i = FgAbMap::new(self.h.clone(), mid.clone(), IntMatrix::from_columns(mid.ngens(), &i_cols))
            .expect("inclusion is well defined");
        let p_cols: Vec<Vec<Int>> = sq.generators().iter().map(|v| self.g.reduce(&v[nh..])).collect();
        let p = FgAbMap::new(mid.clone(), self.g.clone(), IntMatrix::from_columns(ng, &p_cols))
            .expect("projection is well defined");
        Extension { sub: self.h.clone(), mid, quot: self.g.clone(), i, p }
    }

    pub fn add(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        self.group().add(x, y)
    }
}

/// Pullback along the diagonal of `G` followed by the quotient by the
/// antidiagonal of `H`.
pub fn baer_sum(e1: &Extension, e2: &Extension) -> Result<Extension> {
    if e1.sub != e2.sub || e1.quot != e2.quot {
        return Err(Error::Malformed("Baer sum needs extensions with the same ends".into()));
    }
    let (n1, n2) = (e1.mid.ngens(), e2.mid.ngens());
    let g = &e1.quot;
    let h = &e1.sub;
    // pullback: p1 e1 - p2 e2 ∈ relations of G
    let big = e1.p.matrix().hcat(&e2.p.matrix().neg()).hcat(&g.relations());
    let k = kernel(&big);
    let pullback = k.submatrix(0..n1 + n2, 0..k.cols());
    let rel = e1.mid.relations().block_diag(&e2.mid.relations());
    let anti = e1.i.matrix().vcat(&e2.i.matrix().neg());
    let sq = Subquotient::new(&pullback, &rel.hcat(&anti));
    let mid = sq.group().clone();
    let i_cols: Vec<Vec<Int>> = (0..h.ngens())
        .map(|c| {
            let mut v = e1.i.matrix().column(c);
            v.extend(std::iter::repeat_n(Int::from(0), n2));
            sq.coords(&v)
        })
        .collect();
    let i = FgAbMap::new(h.clone(), mid.clone(), IntMatrix::from_columns(mid.ngens(), &i_cols))?;
    let p_cols: Vec<Vec<Int>> = sq.generators().iter().map(|v| e1.p.apply(&v[..n1])).collect();
    let p = FgAbMap::new(mid.clone(), g.clone(), IntMatrix::from_columns(g.ngens(), &p_cols))?;
    Extension::new(i, p)
}

/// Extension classes agree, which is the notion of isomorphism used here.
pub fn equivalent(e1: &Extension, e2: &Extension) -> Result<bool> {
    let ext = Ext1::new(&e1.quot, &e1.sub);
    Ok(ext.class_of(e1)? == ext.class_of(e2)?)
}
