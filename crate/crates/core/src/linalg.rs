//! Exact Gaussian elimination over polynomial-shaped vectors.
//!
//! Vectors are polynomials: the coordinates are the monomials. A
//! [`LinearSpan`] keeps an echelon basis keyed by lex-leading monomial, with
//! each basis vector remembering how it was combined from the inserted
//! vectors. Pivoting is deterministic: always the lex-leading monomial.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::field::{FieldSpec, Scalar};
use crate::poly::{ExponentVector, Polynomial, Ring};

/// Sparse coefficients on the inserted vectors, keyed by insertion index.
pub type Combination = BTreeMap<usize, Scalar>;

fn axpy(field: FieldSpec, acc: &mut Combination, c: &Scalar, x: &Combination) {
    for (k, v) in x {
        let term = field.mul(c, v);
        let entry = acc.entry(*k).or_insert_with(|| field.zero());
        *entry = field.add(entry, &term);
        if field.is_zero(entry) {
            acc.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    /// Monic in its leading term.
    vector: Polynomial,
    combo: Combination,
}

/// Outcome of inserting a vector into a [`LinearSpan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    Independent,
    /// `sum_k c_k v_k = 0`, with coefficient one on the new vector.
    Dependent(Combination),
}

#[derive(Clone, Debug)]
pub struct LinearSpan {
    ring: Ring,
    pivots: Vec<Pivot>,
    by_leading: BTreeMap<ExponentVector, usize>,
    inserted: usize,
}

impl LinearSpan {
    pub fn new(ring: Ring) -> Self {
        LinearSpan { ring, pivots: Vec::new(), by_leading: BTreeMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Top-reduces `v`; returns the remainder and the combination `c` with
    /// `v - remainder = sum_k c_k v_k`.
    fn reduce(&self, v: &Polynomial) -> (Polynomial, Combination) {
        let field = self.ring.field;
        let mut rem = v.clone();
        let mut combo = Combination::new();
        while let Ok((lm, lc)) = rem.lex_leading_term() {
            let Some(&idx) = self.by_leading.get(lm) else { break };
            let c = lc.clone();
            let pivot = &self.pivots[idx];
            rem = &rem - &pivot.vector.scale(&c);
            axpy(field, &mut combo, &c, &pivot.combo);
        }
        (rem, combo)
    }

    pub fn insert(&mut self, v: &Polynomial) -> Insertion {
        assert_eq!(v.ring(), self.ring, "vector ring");
        let field = self.ring.field;
        let index = self.inserted;
        self.inserted += 1;
        let (rem, reduced_by) = self.reduce(v);
        // rem = v_index - sum(reduced_by)
        let mut combo = Combination::new();
        combo.insert(index, field.one());
        axpy(field, &mut combo, &field.neg(&field.one()), &reduced_by);
        if rem.is_zero() {
            return Insertion::Dependent(combo);
        }
        let (lm, lc) = rem.lex_leading_term().expect("nonzero remainder");
        let lm = lm.clone();
        let inv = field.inv(lc).expect("nonzero leading coefficient");
        let vector = rem.scale(&inv);
        let mut scaled = Combination::new();
        axpy(field, &mut scaled, &inv, &combo);
        self.by_leading.insert(lm, self.pivots.len());
        self.pivots.push(Pivot { vector, combo: scaled });
        Insertion::Independent
    }

    /// Coefficients expressing `v` in the inserted vectors, if `v` is in the span.
    pub fn express(&self, v: &Polynomial) -> Option<Combination> {
        let (rem, combo) = self.reduce(v);
        rem.is_zero().then_some(combo)
    }

    pub fn contains(&self, v: &Polynomial) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// The reduced echelon basis of the span: every basis vector is monic in
    /// its lex-leading monomial and no basis vector contains another's
    /// leading monomial. Ordered by leading monomial, increasing total
    /// degree then decreasing lex.
    pub fn reduced_basis(&self) -> Vec<Polynomial> {
        let field = self.ring.field;
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_by(|&a, &b| leading(&self.pivots[a].vector).cmp(leading(&self.pivots[b].vector)));
        let mut done: BTreeMap<ExponentVector, Polynomial> = BTreeMap::new();
        for idx in order {
            let v = &self.pivots[idx].vector;
            let lm = leading(v).clone();
            let mut out = Polynomial::monomial(self.ring, lm.clone(), field.one());
            let mut rest = v - &out;
            while let Ok((e, c)) = rest.lex_leading_term() {
                let (e, c) = (e.clone(), c.clone());
                match done.get(&e) {
                    Some(q) => rest = &rest - &q.scale(&c),
                    None => {
                        let t = Polynomial::monomial(self.ring, e, c);
                        rest = &rest - &t;
                        out = &out + &t;
                    }
                }
            }
            done.insert(lm, out);
        }
        let mut basis: Vec<Polynomial> = done.into_values().collect();
        basis.sort_by_key(|p| {
            let e = leading(p).clone();
            (e.total_degree(), Reverse(e))
        });
        basis
    }
}

fn leading(p: &Polynomial) -> &ExponentVector {
    p.lex_leading_term().expect("pivot vectors are nonzero").0
}

/// Reduced echelon basis of the span of `vectors`.
pub fn span_basis(ring: Ring, vectors: &[Polynomial]) -> Vec<Polynomial> {
    let mut span = LinearSpan::new(ring);
    for v in vectors {
        span.insert(v);
    }
    span.reduced_basis()
}

/// True when both families span the same subspace.
pub fn same_span(ring: Ring, a: &[Polynomial], b: &[Polynomial]) -> bool {
    span_basis(ring, a) == span_basis(ring, b)
}

/// Kernel of the linear map sending the `j`-th basis element to
/// `images[j]`, as coefficient vectors over the inputs.
pub fn kernel(ring: Ring, images: &[Polynomial]) -> Vec<Combination> {
    let mut span = LinearSpan::new(ring);
    images
        .iter()
        .filter_map(|v| match span.insert(v) {
            Insertion::Dependent(c) => Some(c),
            Insertion::Independent => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(FieldSpec::Rationals, 2)
    }

    #[test]
    fn dependency_is_reported_with_unit_coefficient() {
        let r = ring();
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        let mut span = LinearSpan::new(r);
        assert_eq!(span.insert(&x), Insertion::Independent);
        assert_eq!(span.insert(&(&x + &y)), Insertion::Independent);
        let Insertion::Dependent(c) = span.insert(&y) else { panic!("expected dependency") };
        // y - (x + y) + x = 0
        assert_eq!(c.get(&2), Some(&r.field.one()));
        assert_eq!(c.get(&1), Some(&r.field.from_i64(-1)));
        assert_eq!(c.get(&0), Some(&r.field.one()));
        assert_eq!(span.rank(), 2);
    }

    #[test]
    fn express_recovers_coefficients() {
        let r = ring();
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        let mut span = LinearSpan::new(r);
        span.insert(&(&x + &y));
        span.insert(&(&x - &y));
        let target = x.scale(&r.field.from_i64(4));
        let c = span.express(&target).unwrap();
        let rebuilt = (&x + &y).scale(&c[&0]) + (&x - &y).scale(&c[&1]);
        assert_eq!(rebuilt, target);
        assert!(span.express(&Polynomial::one(r)).is_none());
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let r = ring();
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        let a = [&x + &y, &x - &y, Polynomial::one(r)];
        let b = [x.clone(), y.clone(), &Polynomial::one(r) + &x];
        assert!(same_span(r, &a, &b));
        let basis = span_basis(r, &a);
        assert_eq!(basis, vec![Polynomial::one(r), x, y]);
    }

    #[test]
    fn kernel_of_rank_deficient_map() {
        let r = ring();
        let x = Polynomial::var(r, 0);
        let images = [x.clone(), x.scale(&r.field.from_i64(2)), Polynomial::zero(r)];
        assert_eq!(kernel(r, &images).len(), 2);
    }
}
