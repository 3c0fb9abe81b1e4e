//! Exponential maps `sigma: B -> B[U]` on `B = k[x1, ..., xn]`.
//!
//! A map is given by the coordinate images `g_i = sigma(x_i)`, polynomials
//! in `x1, ..., xn, U` (the variable `U` is the last one). Two axioms make
//! it an exponential map:
//!
//! * `g_i(x, 0) = x_i`,
//! * `g_i(g_1(x, U), ..., g_n(x, U), V) = g_i(x, U + V)`.
//!
//! Constants, slices and Makar-Limanov approximations are computed on the
//! space of polynomials of total degree at most `D` in `x`.

use serde::Serialize;

use crate::error::{Error, PolyError, Result};
use crate::field::FieldSpec;
use crate::linalg::{kernel, Insertion, LinearSpan};
use crate::poly::{monomials_up_to, ExponentVector, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpMap {
    ring: Ring,
    images: Vec<Polynomial>,
}

impl ExpMap {
    /// `images[i]` must live in `ring` extended by one variable `U`.
    pub fn new(ring: Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != ring.nvars {
            return Err(PolyError::Arity { expected: ring.nvars, got: images.len() }.into());
        }
        let ext = ring.with_nvars(ring.nvars + 1);
        if let Some(g) = images.iter().find(|g| g.ring() != ext) {
            return Err(PolyError::RingMismatch { left: ext, right: g.ring() }.into());
        }
        Ok(ExpMap { ring, images })
    }

    /// The map with `sigma(x_i) = x_i` for every `i`.
    pub fn trivial(ring: Ring) -> Self {
        let ext = ring.with_nvars(ring.nvars + 1);
        let images = (0..ring.nvars).map(|i| Polynomial::var(ext, i)).collect();
        ExpMap { ring, images }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// `B[U]`.
    pub fn extended_ring(&self) -> Ring {
        self.ring.with_nvars(self.ring.nvars + 1)
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `sigma(b)` as a polynomial in `x` and `U`.
    pub fn apply(&self, b: &Polynomial) -> Result<Polynomial> {
        if b.ring() != self.ring {
            return Err(PolyError::RingMismatch { left: self.ring, right: b.ring() }.into());
        }
        if self.images.is_empty() {
            return Ok(b.extend_vars(1));
        }
        Ok(b.substitute_into(&self.images)?)
    }

    /// `sigma(b) - b` in `B[U]`.
    fn displacement(&self, b: &Polynomial) -> Result<Polynomial> {
        Ok(&self.apply(b)? - &b.extend_vars(self.ring.nvars + 1))
    }

    pub fn is_fixed(&self, b: &Polynomial) -> Result<bool> {
        Ok(self.displacement(b)?.is_zero())
    }

    pub fn verify_axioms(&self) -> Result<AxiomReport> {
        self.verify_axioms_ordered(false)
    }

    /// Axiom check with the roles of `U` and `V` swapped in the composite,
    /// i.e. `sigma_U ∘ sigma_V` against `sigma_{U+V}`.
    pub fn verify_axioms_swapped(&self) -> Result<AxiomReport> {
        self.verify_axioms_ordered(true)
    }

    fn verify_axioms_ordered(&self, swapped: bool) -> Result<AxiomReport> {
        let n = self.ring.nvars;
        let base = self.ring;
        let ext = self.extended_ring();
        let ext2 = self.ring.with_nvars(n + 2);
        let (u_idx, v_idx) = if swapped { (n + 1, n) } else { (n, n + 1) };

        let mut at_zero: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(base, i)).collect();
        at_zero.push(Polynomial::zero(base));
        let mut identity_defects = Vec::new();
        for (i, g) in self.images.iter().enumerate() {
            let residual = &g.substitute_into(&at_zero)? - &Polynomial::var(base, i);
            if !residual.is_zero() {
                identity_defects.push((i, residual));
            }
        }

        // sigma_U as a map into k[x, U, V]: U sits at `u_idx`.
        let lift = |g: &Polynomial| -> Result<Polynomial> {
            let mut images: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(ext2, j)).collect();
            images.push(Polynomial::var(ext2, u_idx));
            Ok(g.substitute_into(&images)?)
        };
        let first: Vec<Polynomial> = self.images.iter().map(lift).collect::<Result<_>>()?;
        let mut second = first.clone();
        second.push(Polynomial::var(ext2, v_idx));
        let mut sum_images: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(ext2, j)).collect();
        sum_images.push(&Polynomial::var(ext2, n) + &Polynomial::var(ext2, n + 1));
        let mut composition_defects = Vec::new();
        for (i, g) in self.images.iter().enumerate() {
            debug_assert_eq!(g.ring(), ext);
            let composite = g.substitute_into(&second)?;
            let shifted = g.substitute_into(&sum_images)?;
            let residual = &shifted - &composite;
            if !residual.is_zero() {
                composition_defects.push((i, residual));
            }
        }
        Ok(AxiomReport {
            identity_ok: identity_defects.is_empty(),
            composition_ok: composition_defects.is_empty(),
            identity_defects,
            composition_defects,
        })
    }

    fn require_axioms(&self) -> Result<()> {
        let r = self.verify_axioms()?;
        if r.identity_ok && r.composition_ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("the images do not satisfy the exponential-map axioms".into()))
        }
    }
}

/// Residuals are `g_i(x, 0) - x_i` and `g_i(x, U + V) - g_i(g(x, U), V)`,
/// the latter in `k[x, U, V]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub identity_ok: bool,
    pub composition_ok: bool,
    pub identity_defects: Vec<(usize, Polynomial)>,
    pub composition_defects: Vec<(usize, Polynomial)>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.identity_ok && self.composition_ok
    }
}

/// `U`-degree of `sigma(b)` and its leading `U`-coefficient.
pub fn sigma_degree_lc(sigma: &ExpMap, b: &Polynomial) -> Result<(u32, Polynomial)> {
    if b.is_zero() {
        return Err(Error::InvalidArgument("the sigma-degree of zero is undefined".into()));
    }
    let image = sigma.apply(b)?;
    Ok(leading_in_last(&image, sigma.ring))
}

fn leading_in_last(p: &Polynomial, base: Ring) -> (u32, Polynomial) {
    let n = base.nvars;
    let degree = p.degree_in(n).unwrap_or(0);
    let lead = Polynomial::from_terms(
        base,
        p.terms()
            .filter(|(e, _)| e.get(n) == degree)
            .map(|(e, c)| (ExponentVector::new(e.as_slice()[..n].to_vec()), c.clone())),
    );
    (degree, lead)
}

/// Basis of `{ b : deg b <= bound, sigma(b) = b }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantBasis {
    pub bound: u32,
    pub basis: Vec<Polynomial>,
}

fn monomial_polys(ring: Ring, bound: u32) -> Vec<Polynomial> {
    monomials_up_to(ring.nvars, bound)
        .into_iter()
        .map(|e| Polynomial::monomial(ring, e, ring.field.one()))
        .collect()
}

fn kernel_basis(ring: Ring, monos: &[Polynomial], images: &[Polynomial]) -> Vec<Polynomial> {
    let target = images.first().map(|p| p.ring()).unwrap_or(ring);
    let vectors: Vec<Polynomial> = kernel(target, images)
        .into_iter()
        .map(|combo| {
            combo
                .iter()
                .fold(Polynomial::zero(ring), |acc, (&k, c)| &acc + &monos[k].scale(c))
        })
        .collect();
    let mut span = LinearSpan::new(ring);
    for v in &vectors {
        span.insert(v);
    }
    span.reduced_basis()
}

/// Kernel of `b -> sigma(b) - b` on polynomials of total degree `<= bound`,
/// in reduced echelon form.
pub fn constants_bounded(sigma: &ExpMap, bound: u32) -> Result<ConstantBasis> {
    sigma.require_axioms()?;
    let monos = monomial_polys(sigma.ring, bound);
    let images: Vec<Polynomial> = monos.iter().map(|m| sigma.displacement(m)).collect::<Result<_>>()?;
    Ok(ConstantBasis { bound, basis: kernel_basis(sigma.ring, &monos, &images) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceInfo {
    pub slice: Polynomial,
    pub degree: u32,
    pub leading: Polynomial,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SliceOutcome {
    Slice(SliceInfo),
    /// Every monomial of degree `<= bound` is fixed.
    AllConstant { bound: u32 },
}

/// Scans monomials of total degree `<= bound` (by increasing total degree,
/// then increasing lex order) and returns the first one of minimal
/// sigma-degree among those not fixed by `sigma`.
pub fn find_local_slice(sigma: &ExpMap, bound: u32) -> Result<SliceOutcome> {
    sigma.require_axioms()?;
    let ring = sigma.ring;
    let mut monos = monomials_up_to(ring.nvars, bound);
    monos.sort_by(|a, b| a.cmp_graded(b));
    let mut best: Option<(u32, Polynomial, Polynomial)> = None;
    for e in monos {
        let b = Polynomial::monomial(ring, e, ring.field.one());
        let (deg, lead) = sigma_degree_lc(sigma, &b)?;
        if deg == 0 {
            // sigma(b) = b exactly when the U-degree is zero, by the first axiom.
            continue;
        }
        if best.as_ref().is_none_or(|(d, _, _)| deg < *d) {
            best = Some((deg, b, lead));
        }
    }
    let Some((degree, slice, leading)) = best else {
        return Ok(SliceOutcome::AllConstant { bound });
    };
    if !sigma.is_fixed(&leading)? {
        return Err(Error::Incompatible {
            rule: "local slice".into(),
            detail: format!("leading coefficient {} is not a constant", leading.to_text()),
        });
    }
    Ok(SliceOutcome::Slice(SliceInfo { slice, degree, leading, bound }))
}

/// `a^power * x_i = sum_k coefficients[k] * s^k` with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateIdentity {
    pub coordinate: usize,
    pub power: u32,
    /// `(k, c_k)` with `c_k` fixed by sigma; zero coefficients omitted.
    pub coefficients: Vec<(u32, Polynomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationReport {
    pub applicable: bool,
    pub certified: bool,
    pub bound: u32,
    pub identities: Vec<CoordinateIdentity>,
    /// Coordinates with no identity found within the bound.
    pub missing: Vec<usize>,
    /// No relation `sum_k c_k s^k = 0` with constant `c_k` of degree `<= bound`.
    pub slice_indeterminate: bool,
    pub note: String,
}

/// Bounded check that `B[1/a] = (B^sigma)[1/a][s]` with `s` transcendental:
/// each coordinate times some power of `a = lc(s)` is a polynomial in `s`
/// with constant coefficients, and the products `c_j * s^k` of a constants
/// basis with powers of `s` are linearly independent.
pub fn localization_identity_check(sigma: &ExpMap, slice: &SliceOutcome, bound: u32) -> Result<LocalizationReport> {
    let info = match slice {
        SliceOutcome::AllConstant { .. } => {
            return Ok(LocalizationReport {
                applicable: false,
                certified: true,
                bound,
                identities: vec![],
                missing: vec![],
                slice_indeterminate: true,
                note: "sigma trivial up to the bound, lemma inapplicable".into(),
            })
        }
        SliceOutcome::Slice(info) => info,
    };
    if info.leading.is_zero() {
        return Err(Error::InvalidArgument("slice with zero leading coefficient".into()));
    }
    let ring = sigma.ring;
    let constants = constants_bounded(sigma, bound)?.basis;
    let powers: Vec<Polynomial> = (0..=bound).map(|k| info.slice.pow(k)).collect::<std::result::Result<_, _>>()?;
    let mut columns: Vec<(u32, usize)> = Vec::new();
    let mut span = LinearSpan::new(ring);
    let mut independent = true;
    for (k, sk) in powers.iter().enumerate() {
        for (j, c) in constants.iter().enumerate() {
            if let Insertion::Dependent(_) = span.insert(&(c * sk)) {
                independent = false;
            }
            columns.push((k as u32, j));
        }
    }
    let mut identities = Vec::new();
    let mut missing = Vec::new();
    for i in 0..ring.nvars {
        let xi = Polynomial::var(ring, i);
        let mut found = None;
        let mut a_pow = Polynomial::one(ring);
        for power in 0..=bound {
            let target = &a_pow * &xi;
            if let Some(combo) = span.express(&target) {
                let mut per_k: Vec<Polynomial> = vec![Polynomial::zero(ring); powers.len()];
                for (&col, coeff) in &combo {
                    let (k, j) = columns[col];
                    per_k[k as usize] = &per_k[k as usize] + &constants[j].scale(coeff);
                }
                let coefficients = per_k
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k as u32, c))
                    .collect();
                found = Some(CoordinateIdentity { coordinate: i, power, coefficients });
                break;
            }
            a_pow = &a_pow * &info.leading;
        }
        match found {
            Some(id) => identities.push(id),
            None => missing.push(i),
        }
    }
    let certified = missing.is_empty() && independent;
    Ok(LocalizationReport {
        applicable: true,
        certified,
        bound,
        identities,
        missing,
        slice_indeterminate: independent,
        note: format!("constants and powers of the slice truncated at degree {bound}"),
    })
}

/// Basis of the intersection of the bounded constant spaces of `maps`: an
/// upper approximation of the Makar-Limanov invariant in degree `<= bound`.
pub fn ml_bounded(maps: &[ExpMap], bound: u32) -> Result<ConstantBasis> {
    let first = maps
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one exponential map is required".into()))?;
    let ring = first.ring;
    if let Some(m) = maps.iter().find(|m| m.ring != ring) {
        return Err(PolyError::RingMismatch { left: ring, right: m.ring }.into());
    }
    for m in maps {
        m.require_axioms()?;
    }
    // Stack the displacement maps: block j is tagged by T^j in k[x, U, T].
    let n = ring.nvars;
    let tagged = ring.with_nvars(n + 2);
    let tag = Polynomial::var(tagged, n + 1);
    let monos = monomial_polys(ring, bound);
    let mut images = Vec::with_capacity(monos.len());
    for b in &monos {
        let mut v = Polynomial::zero(tagged);
        let mut t = Polynomial::one(tagged);
        for m in maps {
            v = &v + &(&m.displacement(b)?.extend_vars(n + 2) * &t);
            t = &t * &tag;
        }
        images.push(v);
    }
    Ok(ConstantBasis { bound, basis: kernel_basis(ring, &monos, &images) })
}

/// `sigma(x_i) = x_i` for `i` in `fixed`, `sigma(x_h) = x_h + U`.
pub fn coordinate_translation_expmap(field: FieldSpec, n: usize, fixed: &[usize], h: usize) -> Result<ExpMap> {
    if h >= n {
        return Err(Error::InvalidArgument(format!("coordinate {h} out of range for {n} variables")));
    }
    let mut expected: Vec<usize> = (0..n).filter(|&i| i != h).collect();
    let mut given = fixed.to_vec();
    given.sort_unstable();
    given.dedup();
    expected.sort_unstable();
    if given != expected {
        return Err(Error::InvalidArgument(
            "exactly one coordinate may be moved; the fixed set must be all the others".into(),
        ));
    }
    let ring = Ring::new(field, n);
    let ext = ring.with_nvars(n + 1);
    let images = (0..n)
        .map(|i| {
            let xi = Polynomial::var(ext, i);
            if i == h {
                &xi + &Polynomial::var(ext, n)
            } else {
                xi
            }
        })
        .collect();
    ExpMap::new(ring, images)
}
