//! Hom, Ext¹, tensor, Tor and exterior powers from cyclic decompositions.
//! A cyclic order of zero stands for `Z`.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FgAb;
use super::Int;

fn gcd0(a: &Int, b: &Int) -> Int {
    // gcd with gcd(0, b) = b, so Z ⊗ Z/b = Z/b and Z ⊗ Z = Z
    a.gcd(b)
}

fn hom_cyclic(a: &Int, b: &Int) -> Int {
    match (a.is_zero(), b.is_zero()) {
        (true, _) => b.clone(),
        (false, true) => Int::one(),
        (false, false) => a.gcd(b),
    }
}

fn ext_cyclic(a: &Int, b: &Int) -> Int {
    match (a.is_zero(), b.is_zero()) {
        (true, _) => Int::one(),
        (false, true) => a.clone(),
        (false, false) => a.gcd(b),
    }
}

fn tor_cyclic(a: &Int, b: &Int) -> Int {
    if a.is_zero() || b.is_zero() {
        Int::one()
    } else {
        a.gcd(b)
    }
}

fn pairwise(a: &FgAb, b: &FgAb, rule: fn(&Int, &Int) -> Int) -> FgAb {
    let mut orders = Vec::new();
    for x in a.cyclic_orders() {
        for y in b.cyclic_orders() {
            orders.push(rule(&x, &y));
        }
    }
    FgAb::from_cyclic_orders(&orders)
}

pub fn hom(a: &FgAb, b: &FgAb) -> FgAb {
    pairwise(a, b, hom_cyclic)
}

pub fn ext1(a: &FgAb, b: &FgAb) -> FgAb {
    pairwise(a, b, ext_cyclic)
}

pub fn tensor(a: &FgAb, b: &FgAb) -> FgAb {
    pairwise(a, b, gcd0)
}

pub fn tor(a: &FgAb, b: &FgAb) -> FgAb {
    pairwise(a, b, tor_cyclic)
}

/// `Λⁿ(⊕ Cᵢ) = ⊕_{|S| = n} ⊗_{i ∈ S} Cᵢ`.
pub fn lambda(a: &FgAb, n: usize) -> FgAb {
    let orders = a.cyclic_orders();
    let mut out = Vec::new();
    for subset in subsets(orders.len(), n) {
        let mut g = Int::zero();
        for &i in &subset {
            g = gcd0(&g, &orders[i]);
        }
        if subset.is_empty() {
            g = Int::zero();
        }
        out.push(g);
    }
    FgAb::from_cyclic_orders(&out)
}

pub fn lambda2(a: &FgAb) -> FgAb {
    lambda(a, 2)
}

pub fn lambda3(a: &FgAb) -> FgAb {
    lambda(a, 3)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
