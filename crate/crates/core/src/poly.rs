//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending lexicographic order with
//! `x1 > x2 > ... > xn`, and no stored coefficient is zero, so structural
//! equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::{Serialize, Serializer};

use crate::error::PolyError;
use crate::field::{FieldSpec, Scalar};

/// Default bound on the total degree produced by substitutions and powers.
pub const DEFAULT_DEGREE_CAP: u64 = 512;

static DEGREE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_DEGREE_CAP);

/// Current process-wide degree cap.
pub fn degree_cap() -> u64 {
    DEGREE_CAP.load(AtomicOrdering::Relaxed)
}

/// Replaces the process-wide degree cap. Intended for start-up configuration.
pub fn set_degree_cap(cap: u64) {
    DEGREE_CAP.store(cap, AtomicOrdering::Relaxed);
}

fn check_cap(degree: u64) -> Result<(), PolyError> {
    let cap = degree_cap();
    if degree > cap {
        Err(PolyError::DegreeCap { degree, cap })
    } else {
        Ok(())
    }
}

/// A polynomial ring `k[x1, ..., xn]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ring {
    pub field: FieldSpec,
    pub nvars: usize,
}

impl Ring {
    pub fn new(field: FieldSpec, nvars: usize) -> Self {
        Ring { field, nvars }
    }

    pub fn with_nvars(self, nvars: usize) -> Self {
        Ring { nvars, ..self }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, default_var_names(self.nvars).join(","))
    }
}

/// Variable names used when nothing else is supplied: `x, y, z` for up to
/// three variables, `x1 .. xn` beyond that.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Exponents of a monomial `x1^e1 * ... * xn^en`.
///
/// The derived ordering is lexicographic with `x1 > x2 > ... > xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if `other` divides `self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Pads with zeros up to `n` entries.
    pub fn extend(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(n, 0);
        ExponentVector(v)
    }

    /// Compares by total degree first, then lexicographically.
    pub fn cmp_graded(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// All exponent vectors in `n` variables of total degree at most `bound`,
/// by increasing degree and, within a degree, decreasing lex order.
pub fn monomials_up_to(n: usize, bound: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for d in 0..=bound {
        let mut cur = vec![0u32; n];
        monomials_of_degree(&mut cur, 0, d, &mut out);
    }
    out
}

fn monomials_of_degree(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<ExponentVector>) {
    let n = cur.len();
    if n == 0 {
        if remaining == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = remaining;
        out.push(ExponentVector(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        monomials_of_degree(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// A polynomial in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(ExponentVector, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: Ring, c: Scalar) -> Self {
        Self::monomial(ring, ExponentVector::zero(ring.nvars), c)
    }

    pub fn from_i64(ring: Ring, c: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(c))
    }

    /// The coordinate `x_i` (zero-based).
    pub fn var(ring: Ring, i: usize) -> Self {
        assert!(i < ring.nvars, "variable index {i} out of range for {ring}");
        Self::monomial(ring, ExponentVector::unit(ring.nvars, i), ring.field.one())
    }

    pub fn monomial(ring: Ring, exps: ExponentVector, c: Scalar) -> Self {
        assert_eq!(exps.len(), ring.nvars, "exponent vector length");
        if ring.field.is_zero(&c) {
            Self::zero(ring)
        } else {
            Polynomial { ring, terms: vec![(exps, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Scalar)>,
    {
        let field = ring.field;
        let mut acc: BTreeMap<ExponentVector, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars, "exponent vector length");
            match acc.get_mut(&e) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    /// Terms in descending lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter().map(|(e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Scalar {
        match self.terms.binary_search_by(|(t, _)| e.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.field.zero(),
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&ExponentVector::zero(self.nvars()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(e, _)| e.total_degree()).max()
    }

    /// Degree in `x_i`; `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.get(i)).max()
    }

    /// A single nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// A single term with coefficient one (the constant 1 included).
    pub fn is_monic_monomial(&self) -> bool {
        self.terms.len() == 1 && self.ring.field.is_one(&self.terms[0].1)
    }

    /// The index `i` when this polynomial is exactly the coordinate `x_i`.
    pub fn as_variable(&self) -> Option<usize> {
        if !self.is_monic_monomial() {
            return None;
        }
        let e = &self.terms[0].0;
        if e.total_degree() != 1 {
            return None;
        }
        e.as_slice().iter().position(|&v| v == 1)
    }

    /// Lex-maximal term.
    pub fn lex_leading_term(&self) -> Result<(&ExponentVector, &Scalar), PolyError> {
        self.terms
            .first()
            .map(|(e, c)| (e, c))
            .ok_or(PolyError::ZeroLeadingTerm)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring != other.ring {
            Err(PolyError::RingMismatch { left: self.ring, right: other.ring })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let field = self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(ca, cb);
                    if !field.is_zero(&c) {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ring: self.ring, terms: out })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring));
        }
        let field = self.ring.field;
        if other.terms.len() == 1 {
            let (eb, cb) = &other.terms[0];
            // Multiplying by a single term preserves the order.
            let terms = self
                .terms
                .iter()
                .map(|(ea, ca)| (ea.add(eb), field.mul(ca, cb)))
                .collect();
            return Ok(Polynomial { ring: self.ring, terms });
        }
        let mut acc: BTreeMap<ExponentVector, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !field.is_zero(c)).collect();
        Ok(Polynomial { ring: self.ring, terms })
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(self.ring);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), field.mul(a, c))).collect();
        Polynomial { ring: self.ring, terms }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_term(&self, e: &ExponentVector, c: &Scalar) -> Polynomial {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, ca)| (a.add(e), field.mul(ca, c)))
            .collect();
        Polynomial { ring: self.ring, terms }
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial, PolyError> {
        if let Some(d) = self.total_degree() {
            check_cap(d * e as u64)?;
        }
        let mut acc = Polynomial::one(self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `g(images)` where every image lives in this polynomial's ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if let Some(img) = images.iter().find(|p| p.ring != self.ring) {
            return Err(PolyError::RingMismatch { left: self.ring, right: img.ring });
        }
        self.substitute_into(images)
    }

    /// `g(images)` where the images share some (possibly different) ring
    /// over the same field. Used to move between `B`, `B[U]` and `B[U, V]`.
    pub fn substitute_into(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::Arity { expected: self.nvars(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring,
            None => return Ok(self.clone()),
        };
        if let Some(img) = images.iter().find(|p| p.ring != target) {
            return Err(PolyError::RingMismatch { left: target, right: img.ring });
        }
        if target.field != self.ring.field {
            return Err(PolyError::RingMismatch { left: self.ring, right: target });
        }
        let img_deg: Vec<u64> = images.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
        for (e, _) in &self.terms {
            let d: u64 = e.as_slice().iter().zip(&img_deg).map(|(&a, &b)| a as u64 * b).sum();
            check_cap(d)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut result = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (j, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[j].len() <= k {
                    let next = powers[j].last().unwrap().try_mul(&images[j])?;
                    powers[j].push(next);
                }
                term = term.try_mul(&powers[j][k])?;
                if term.is_zero() {
                    break;
                }
            }
            result = result.try_add(&term)?;
        }
        Ok(result)
    }

    /// Exact quotient `f / h` when `h` divides `f`, else `None`.
    pub fn exact_divide(&self, h: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.check_ring(h)?;
        if h.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let field = self.ring.field;
        let (lm_h, lc_h) = h.lex_leading_term()?;
        let lc_h_inv = field.inv(lc_h)?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((lm_r, lc_r)) = rem.terms.first() {
            let Some(e) = lm_r.checked_sub(lm_h) else {
                return Ok(None);
            };
            let c = field.mul(lc_r, &lc_h_inv);
            rem = rem.try_sub(&h.mul_term(&e, &c))?;
            quotient.push((e, c));
        }
        // Successive quotient exponents strictly decrease.
        Ok(Some(Polynomial { ring: self.ring, terms: quotient }))
    }

    /// The same polynomial viewed in a ring with `n >= nvars` variables.
    pub fn extend_vars(&self, n: usize) -> Polynomial {
        assert!(n >= self.nvars());
        if n == self.nvars() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(e, c)| (e.extend(n), c.clone())).collect();
        Polynomial { ring: self.ring.with_nvars(n), terms }
    }

    /// Drops trailing variables that do not occur; fails when one does.
    pub fn restrict_vars(&self, n: usize) -> Option<Polynomial> {
        assert!(n <= self.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e.as_slice()[n..].iter().any(|&v| v != 0) {
                return None;
            }
            terms.push((ExponentVector(e.as_slice()[..n].to_vec()), c.clone()));
        }
        Some(Polynomial { ring: self.ring.with_nvars(n), terms })
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    /// Canonical text with the default variable names.
    pub fn to_text(&self) -> String {
        let names = default_var_names(self.nvars());
        self.display_with(&names).to_string()
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let field = self.ring.field;
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), field.neg(c))).collect();
        Polynomial { ring: self.ring, terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

// Operator forms panic on ring mismatch; the `try_*` methods report it.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars());
        write!(f, "{}", self.display_with(&names))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let field = self.poly.ring.field;
        for (k, (e, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { field.neg(c) } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = monomial_text(e, self.names);
            match (mono.is_empty(), field.is_one(&mag)) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn monomial_text(e: &ExponentVector, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.as_slice().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize) -> Ring {
        Ring::new(FieldSpec::Rationals, n)
    }

    fn f2(n: usize) -> Ring {
        Ring::new(FieldSpec::prime(2).unwrap(), n)
    }

    #[test]
    fn additive_inverse() {
        let r = q(2);
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        assert_eq!(&(&x + &y) + &(-&y), x);
    }

    #[test]
    fn square_of_sum_depends_on_field() {
        for (r, expected) in [(q(2), "x^2 + 2*x*y + y^2"), (f2(2), "x^2 + y^2")] {
            let s = Polynomial::var(r, 0) + Polynomial::var(r, 1);
            assert_eq!((&s * &s).to_text(), expected);
        }
    }

    #[test]
    fn zero_absorbs() {
        let r = q(2);
        let f = Polynomial::var(r, 0) + Polynomial::from_i64(r, 3);
        assert!((&Polynomial::zero(r) * &f).is_zero());
    }

    #[test]
    fn ring_mismatch_names_both_rings() {
        let a = Polynomial::var(q(2), 0);
        let b = Polynomial::var(f2(2), 0);
        let err = a.try_add(&b).unwrap_err();
        assert_eq!(err.to_string(), "ring mismatch: Q[x,y] vs F2[x,y]");
    }

    #[test]
    fn substitution_examples() {
        let r = q(2);
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        let g = &x * &y;
        let images = [&x + &Polynomial::one(r), y.clone()];
        assert_eq!(g.substitute(&images).unwrap(), &(&x * &y) + &y);
        assert_eq!(g.substitute(&[x.clone(), y.clone()]).unwrap(), g);

        let r1 = Ring::new(FieldSpec::prime(5).unwrap(), 1);
        let t = Polynomial::var(r1, 0);
        let sq = t.pow(2).unwrap();
        assert_eq!(sq.substitute(&[t.pow(3).unwrap()]).unwrap(), t.pow(6).unwrap());
    }

    #[test]
    fn substitution_arity() {
        let r = q(2);
        let x = Polynomial::var(r, 0);
        assert!(matches!(x.substitute(std::slice::from_ref(&x)), Err(PolyError::Arity { .. })));
    }

    #[test]
    fn degree_cap_stops_runaway_powers() {
        let r = q(1);
        let x = Polynomial::var(r, 0);
        assert!(matches!(x.pow(513), Err(PolyError::DegreeCap { degree: 513, cap: 512 })));
        let big = x.pow(100).unwrap();
        assert!(matches!(big.substitute(std::slice::from_ref(&big)), Err(PolyError::DegreeCap { .. })));
    }

    #[test]
    fn leading_terms() {
        let r = q(3);
        let (x, y, z) = (Polynomial::var(r, 0), Polynomial::var(r, 1), Polynomial::var(r, 2));
        let f = &(&x.pow(2).unwrap() * &y) + &(&x * &z.pow(5).unwrap());
        let (e, c) = f.lex_leading_term().unwrap();
        assert_eq!(e.as_slice(), &[2, 1, 0]);
        assert_eq!(c, &r.field.one());

        let seven = Polynomial::from_i64(r, 7);
        let (e, c) = seven.lex_leading_term().unwrap();
        assert_eq!(e.as_slice(), &[0, 0, 0]);
        assert_eq!(c, &r.field.from_i64(7));

        let (e, _) = (&y + &x).lex_leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        assert_eq!(e.as_slice(), &[1, 0, 0]);

        let err = Polynomial::zero(r).lex_leading_term().unwrap_err();
        assert_eq!(err.to_string(), "zero polynomial has no leading term");
    }

    #[test]
    fn exact_division() {
        let r = q(2);
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        let f = &(&x * &x) - &(&y * &y);
        assert_eq!(f.exact_divide(&(&x - &y)).unwrap(), Some(&x + &y));
        assert_eq!(Polynomial::zero(r).exact_divide(&x).unwrap(), Some(Polynomial::zero(r)));
        assert_eq!(x.exact_divide(&y).unwrap(), None);
        assert!(matches!(x.exact_divide(&Polynomial::zero(r)), Err(PolyError::DivisionByZero)));
    }

    #[test]
    fn monomial_listing() {
        let ms = monomials_up_to(2, 2);
        let as_vecs: Vec<Vec<u32>> = ms.iter().map(|e| e.as_slice().to_vec()).collect();
        assert_eq!(
            as_vecs,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomials_up_to(3, 4).len(), 35);
    }

    #[test]
    fn printing() {
        let r = q(2);
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        let half = Polynomial::constant(r, r.field.from_rational(&num_rational::BigRational::new(3.into(), 2.into())).unwrap());
        let f = &(&(&x * &x) * &y) - &half;
        assert_eq!(f.to_text(), "x^2*y - 3/2");
        assert_eq!((-&x).to_text(), "-x");
        assert_eq!(Polynomial::zero(r).to_text(), "0");
        let g = &y.scale(&r.field.from_i64(-2)) + &x;
        assert_eq!(g.to_text(), "x - 2*y");
    }
}
