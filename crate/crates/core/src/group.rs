//! Structure of finite abelian groups given by a multiplication oracle:
//! invariant factors, a basis realizing them, and a coordinate table.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::algebra::arith::factor_u64;
use crate::error::{Error, Result};

/// A finite abelian group written multiplicatively.
pub trait AbelianGroup {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// All elements, in a fixed order.
    fn elements(&self) -> Result<Vec<Self::Elem>>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(&acc, &base);
            }
            base = self.op(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct GroupStructure<E> {
    /// Invariant factors `n_1 | n_2 | ... | n_k`, all `> 1`.
    pub factors: Vec<u64>,
    pub generators: Vec<E>,
    pub exponent: u64,
    pub order: u64,
    /// Elements in lexicographic coordinate order.
    elements: Vec<E>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash + Debug> GroupStructure<E> {
    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn element(&self, idx: usize) -> &E {
        &self.elements[idx]
    }

    pub fn coords_of_index(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            out[i] = idx as u64 % self.factors[i];
            idx /= self.factors[i] as usize;
        }
        out
    }

    pub fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + (c % n) as usize)
    }

    pub fn coords(&self, e: &E) -> Option<Vec<u64>> {
        self.index_of(e).map(|i| self.coords_of_index(i))
    }

    /// Index of the product, computed in coordinates.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let ca = self.coords_of_index(a);
        let cb = self.coords_of_index(b);
        let c: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.index_of_coords(&c)
    }

    pub fn inv_index(&self, a: usize) -> usize {
        let c: Vec<u64> = self
            .coords_of_index(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.index_of_coords(&c)
    }
}

/// Decomposes `g` by Sylow parts and a greedy basis per part. Errors if the
/// enumerated group exceeds `budget` elements.
pub fn decompose<G: AbelianGroup>(g: &G, budget: u64) -> Result<GroupStructure<G::Elem>> {
    let all = g.elements()?;
    let n = all.len() as u64;
    if n > budget {
        return Err(Error::BudgetExceeded { needed: n, budget });
    }
    // per prime: generators with their orders, descending
    let mut parts: Vec<Vec<(u64, G::Elem)>> = Vec::new();
    for (l, a) in factor_u64(n) {
        let la = l.pow(a);
        let mut sylow: Vec<G::Elem> = all.iter().map(|x| g.pow(x, n / la)).collect();
        sylow.sort();
        sylow.dedup();
        parts.push(sylow_basis(g, &sylow, l));
    }
    let k = parts.iter().map(|p| p.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; k];
    let mut generators = vec![g.identity(); k];
    for part in &parts {
        // part is descending; align its largest with factor k-1
        for (j, (ord, gen)) in part.iter().enumerate() {
            let slot = k - 1 - j;
            factors[slot] *= ord;
            generators[slot] = g.op(&generators[slot], gen);
        }
    }
    let exponent = factors.last().copied().unwrap_or(1);

    let mut powers: Vec<Vec<G::Elem>> = Vec::with_capacity(k);
    for (gen, &ni) in generators.iter().zip(&factors) {
        let mut row = Vec::with_capacity(ni as usize);
        let mut cur = g.identity();
        for _ in 0..ni {
            row.push(cur.clone());
            cur = g.op(&cur, gen);
        }
        if cur != g.identity() {
            return Err(Error::InvalidInput(format!("generator order mismatch for {gen:?}")));
        }
        powers.push(row);
    }
    let mut elements = Vec::with_capacity(n as usize);
    let mut coords = vec![0u64; k];
    'outer: loop {
        let e = coords
            .iter()
            .enumerate()
            .fold(g.identity(), |acc, (i, &c)| g.op(&acc, &powers[i][c as usize]));
        elements.push(e);
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < factors[i] {
                break;
            }
            coords[i] = 0;
        }
    }
    let index: HashMap<G::Elem, usize> =
        elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    if index.len() as u64 != n || elements.len() as u64 != n {
        return Err(Error::InvalidInput("coordinate map is not a bijection".into()));
    }
    Ok(GroupStructure { factors, generators, exponent, order: n, elements, index })
}

fn sylow_basis<G: AbelianGroup>(g: &G, sylow: &[G::Elem], l: u64) -> Vec<(u64, G::Elem)> {
    let mut h: HashMap<G::Elem, ()> = HashMap::new();
    h.insert(g.identity(), ());
    let mut basis = Vec::new();
    while h.len() < sylow.len() {
        // order of each element modulo H
        let mut ranked: Vec<(u32, &G::Elem)> = sylow
            .iter()
            .map(|s| {
                let mut e = 0;
                let mut t = s.clone();
                while !h.contains_key(&t) {
                    t = g.pow(&t, l);
                    e += 1;
                }
                (e, s)
            })
            .collect();
        ranked.sort_by_key(|b| std::cmp::Reverse(b.0));
        let top = ranked[0].0;
        let mut chosen = None;
        for (e, s) in ranked.iter().take_while(|(e, _)| *e == top) {
            let le = l.pow(*e);
            let target = g.pow(s, le);
            // lift: find h0 in H with h0^(l^e) = s^(l^e)
            if let Some(h0) = h.keys().filter(|x| g.pow(x, le) == target).min() {
                chosen = Some((le, g.op(s, &g.inv(h0))));
                break;
            }
        }
        let (ord, b) = chosen.expect("a liftable element of maximal quotient order exists");
        let mut next = HashMap::with_capacity(h.len() * ord as usize);
        let mut p = g.identity();
        for _ in 0..ord {
            for x in h.keys() {
                next.insert(g.op(x, &p), ());
            }
            p = g.op(&p, &b);
        }
        h = next;
        basis.push((ord, b));
    }
    basis.sort_by_key(|b| std::cmp::Reverse(b.0));
    basis
}
