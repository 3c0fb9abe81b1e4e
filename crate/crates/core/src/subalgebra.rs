//! Subalgebras `k[g1, ..., gr]` of a polynomial ring.
//!
//! Membership and algebraic dependence are decided up to a degree bound `D`
//! on the representing polynomial: the unknowns are the coefficients of a
//! polynomial `P(t1, ..., tr)` of total degree at most `D`, and the question
//! becomes a linear system over the field. A negative answer is only a
//! statement about that bound.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, PolyError, Result};
use crate::linalg::{Combination, Insertion, LinearSpan};
use crate::poly::{degree_cap, monomials_up_to, ExponentVector, Polynomial, Ring};

/// Generators of a subalgebra. Zero and repeated generators are dropped on
/// construction, so the stored list is nonzero and pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraPresentation {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl SubalgebraPresentation {
    pub fn new(ring: Ring, generators: &[Polynomial]) -> Result<Self> {
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch { left: ring, right: g.ring() }.into());
            }
            if !g.is_zero() && !kept.contains(g) {
                kept.push(g.clone());
            }
        }
        Ok(SubalgebraPresentation { ring, generators: kept })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Ring of the representing polynomials: one fresh variable per generator.
    pub fn fresh_ring(&self) -> Ring {
        self.ring.with_nvars(self.generators.len())
    }

    /// `P(g1, ..., gr)`.
    pub fn evaluate(&self, relation: &Polynomial) -> Result<Polynomial> {
        if self.generators.is_empty() {
            let c = relation.constant_term();
            return Ok(Polynomial::constant(self.ring, c));
        }
        Ok(relation.substitute_into(&self.generators)?)
    }
}

/// A representation `f = P(g1, ..., gr)` with `deg P <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub relation: Polynomial,
    pub bound: u32,
}

impl Certificate {
    /// Re-checks the certificate by direct substitution.
    pub fn verify(&self, f: &Polynomial, algebra: &SubalgebraPresentation) -> bool {
        algebra.evaluate(&self.relation).map(|v| v == *f).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Certificate(Certificate),
    /// No representation of degree at most `bound`; not a proof of non-membership.
    NotFound { bound: u32 },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Certificate(_))
    }
}

/// A nonzero `P` with `P(g1, ..., gr) = 0` and `deg P <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependenceWitness {
    pub relation: Polynomial,
    pub bound: u32,
}

impl DependenceWitness {
    pub fn verify(&self, algebra: &SubalgebraPresentation) -> bool {
        !self.relation.is_zero() && algebra.evaluate(&self.relation).map(|v| v.is_zero()).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    Witness(DependenceWitness),
    /// Independent up to degree `bound` only.
    NoneFound { bound: u32 },
}

impl Dependence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Dependence::NoneFound { .. })
    }
}

/// Fresh-variable monomials of degree `<= bound` and their images in `B`.
struct Evaluation {
    monomials: Vec<ExponentVector>,
    images: Vec<Polynomial>,
}

fn evaluate_monomials(algebra: &SubalgebraPresentation, bound: u32) -> Result<Evaluation> {
    if bound == 0 {
        return Err(Error::InvalidArgument("degree bound must be at least 1".into()));
    }
    let max_deg = algebra.generators.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let needed = max_deg * bound as u64;
    let cap = degree_cap();
    if needed > cap {
        return Err(PolyError::DegreeCap { degree: needed, cap }.into());
    }
    let r = algebra.generators.len();
    let monomials = monomials_up_to(r, bound);
    let mut position: HashMap<ExponentVector, usize> = HashMap::with_capacity(monomials.len());
    let mut images: Vec<Polynomial> = Vec::with_capacity(monomials.len());
    for (k, e) in monomials.iter().enumerate() {
        let image = match e.as_slice().iter().position(|&v| v > 0) {
            None => Polynomial::one(algebra.ring),
            Some(i) => {
                let mut parent = e.as_slice().to_vec();
                parent[i] -= 1;
                let p = position[&ExponentVector::new(parent)];
                &images[p] * &algebra.generators[i]
            }
        };
        position.insert(e.clone(), k);
        images.push(image);
    }
    Ok(Evaluation { monomials, images })
}

fn combination_to_poly(ring: Ring, monomials: &[ExponentVector], combo: &Combination) -> Polynomial {
    Polynomial::from_terms(ring, combo.iter().map(|(&k, c)| (monomials[k].clone(), c.clone())))
}

/// Searches `P` with `deg P <= bound` and `P(g1, ..., gr) = f`.
pub fn member_bounded(f: &Polynomial, algebra: &SubalgebraPresentation, bound: u32) -> Result<Membership> {
    if f.ring() != algebra.ring {
        return Err(PolyError::RingMismatch { left: algebra.ring, right: f.ring() }.into());
    }
    let eval = evaluate_monomials(algebra, bound)?;
    let mut span = LinearSpan::new(algebra.ring);
    for img in &eval.images {
        span.insert(img);
    }
    Ok(match span.express(f) {
        Some(combo) => Membership::Certificate(Certificate {
            relation: combination_to_poly(algebra.fresh_ring(), &eval.monomials, &combo),
            bound,
        }),
        None => Membership::NotFound { bound },
    })
}

/// Searches a nonzero relation of degree `<= bound` among the generators.
/// Candidates are tried by increasing degree, so the first relation found
/// has minimal degree.
pub fn dependence_bounded(algebra: &SubalgebraPresentation, bound: u32) -> Result<Dependence> {
    let eval = evaluate_monomials(algebra, bound)?;
    let mut span = LinearSpan::new(algebra.ring);
    for img in &eval.images {
        if let Insertion::Dependent(combo) = span.insert(img) {
            return Ok(Dependence::Witness(DependenceWitness {
                relation: combination_to_poly(algebra.fresh_ring(), &eval.monomials, &combo),
                bound,
            }));
        }
    }
    Ok(Dependence::NoneFound { bound })
}

/// Exact membership of `target` in the monoid generated by `gens`
/// (nonnegative integer combinations). Zero generators are ignored.
pub fn monoid_contains(gens: &[ExponentVector], target: &ExponentVector) -> bool {
    let gens: Vec<&ExponentVector> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut failed: HashSet<ExponentVector> = HashSet::new();
    monoid_search(&gens, target, &mut failed)
}

fn monoid_search(gens: &[&ExponentVector], target: &ExponentVector, failed: &mut HashSet<ExponentVector>) -> bool {
    if target.is_zero() {
        return true;
    }
    if failed.contains(target) {
        return false;
    }
    for g in gens {
        if let Some(rest) = target.checked_sub(g) {
            if monoid_search(gens, &rest, failed) {
                return true;
            }
        }
    }
    failed.insert(target.clone());
    false
}

fn monomial_exponents(algebra: &SubalgebraPresentation) -> Result<Vec<ExponentVector>> {
    algebra
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if g.is_monic_monomial() {
                Ok(g.terms().next().unwrap().0.clone())
            } else {
                Err(Error::NotMonomial { index: i })
            }
        })
        .collect()
}

/// Drops redundant monic-monomial generators. The constant 1 is always
/// dropped, so the algebra `k` comes back with no generators.
pub fn minimize_monomial_generators(algebra: &SubalgebraPresentation) -> Result<SubalgebraPresentation> {
    let exps = monomial_exponents(algebra)?;
    let mut keep: Vec<bool> = exps.iter().map(|e| !e.is_zero()).collect();
    for i in 0..exps.len() {
        if !keep[i] {
            continue;
        }
        let others: Vec<ExponentVector> = (0..exps.len())
            .filter(|&j| j != i && keep[j])
            .map(|j| exps[j].clone())
            .collect();
        if monoid_contains(&others, &exps[i]) {
            keep[i] = false;
        }
    }
    let generators = algebra
        .generators
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(g, _)| g.clone())
        .collect();
    Ok(SubalgebraPresentation { ring: algebra.ring, generators })
}

/// Result of scanning monomial pairs for factorial closedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorialReport {
    pub closed: bool,
    pub counterexample: Option<(Polynomial, Polynomial)>,
    pub bound: u32,
    /// Only monomial factors were examined.
    pub monomial_factors_only: bool,
}

/// Checks `b1 * b2 in A => b1, b2 in A` over all monic monomials `b1, b2`
/// of total degree `<= bound`.
pub fn factorially_closed_monomial(algebra: &SubalgebraPresentation, bound: u32) -> Result<FactorialReport> {
    let gens = monomial_exponents(algebra)?;
    let ring = algebra.ring;
    let monos = monomials_up_to(ring.nvars, bound);
    let member: Vec<bool> = monos.iter().map(|m| monoid_contains(&gens, m)).collect();
    for i in 0..monos.len() {
        for j in i..monos.len() {
            if member[i] && member[j] {
                continue;
            }
            if monoid_contains(&gens, &monos[i].add(&monos[j])) {
                let one = ring.field.one();
                return Ok(FactorialReport {
                    closed: false,
                    counterexample: Some((
                        Polynomial::monomial(ring, monos[i].clone(), one.clone()),
                        Polynomial::monomial(ring, monos[j].clone(), one),
                    )),
                    bound,
                    monomial_factors_only: true,
                });
            }
        }
    }
    Ok(FactorialReport { closed: true, counterexample: None, bound, monomial_factors_only: true })
}
