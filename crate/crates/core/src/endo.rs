//! Algebra endomorphisms `x_i -> f_i` of `k[x1, ..., xn]` and the
//! retraction test `f_i(f1, ..., fn) = f_i`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, PolyError, Result};
use crate::poly::{monomials_up_to, Polynomial, Ring};
use crate::subalgebra::{member_bounded, SubalgebraPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoMap {
    ring: Ring,
    images: Vec<Polynomial>,
}

impl EndoMap {
    pub fn new(ring: Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != ring.nvars {
            return Err(PolyError::Arity { expected: ring.nvars, got: images.len() }.into());
        }
        if let Some(f) = images.iter().find(|f| f.ring() != ring) {
            return Err(PolyError::RingMismatch { left: ring, right: f.ring() }.into());
        }
        Ok(EndoMap { ring, images })
    }

    pub fn identity(ring: Ring) -> Self {
        let images = (0..ring.nvars).map(|i| Polynomial::var(ring, i)).collect();
        EndoMap { ring, images }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `g(f1, ..., fn)`.
    pub fn apply(&self, g: &Polynomial) -> Result<Polynomial> {
        Ok(g.substitute(&self.images)?)
    }

    /// `self ∘ other`: the map `x_i -> self(other(x_i))`.
    pub fn compose(&self, other: &EndoMap) -> Result<EndoMap> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch { left: self.ring, right: other.ring }.into());
        }
        let images = other.images.iter().map(|g| self.apply(g)).collect::<Result<_>>()?;
        Ok(EndoMap { ring: self.ring, images })
    }

    pub fn is_retraction(&self) -> Result<RetractionReport> {
        let mut defects = Vec::new();
        for (i, f) in self.images.iter().enumerate() {
            let residual = &self.apply(f)? - f;
            if !residual.is_zero() {
                defects.push(Defect { index: i, residual });
            }
        }
        Ok(RetractionReport { is_retraction: defects.is_empty(), defects })
    }

    /// The subalgebra generated by the images.
    pub fn image_algebra(&self) -> SubalgebraPresentation {
        SubalgebraPresentation::new(self.ring, &self.images).expect("images share the ring")
    }
}

/// `f_i(f1, ..., fn) - f_i` for a failing index `i` (zero-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defect {
    pub index: usize,
    pub residual: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionReport {
    pub is_retraction: bool,
    pub defects: Vec<Defect>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    Normalized(EndoMap),
    NotNormalizable(String),
}

/// Zero constant term in every image.
pub fn has_zero_constant_terms(images: &[Polynomial]) -> bool {
    images.iter().all(|f| f.field().is_zero(&f.constant_term()))
}

/// Every nonzero image has lex-leading coefficient one.
pub fn has_unit_leading_coefficients(images: &[Polynomial]) -> bool {
    images.iter().all(|f| match f.lex_leading_term() {
        Ok((_, c)) => f.field().is_one(c),
        Err(_) => true,
    })
}

/// Rescales each image `f_i -> (f_i - c_i) / lambda_i` so that constant
/// terms vanish and lex-leading coefficients are one. The rescaled tuple is
/// accepted only if it is still a retraction and generates the same
/// subalgebra (mutual membership at degree `bound`).
///
/// An input that fails the retraction condition is still accepted when its
/// rescaled tuple passes it, since only the generated algebra matters; it
/// is rejected when neither does.
pub fn normalize_generators(phi: &EndoMap, bound: u32) -> Result<Normalization> {
    let report = phi.is_retraction()?;
    let field = phi.ring.field;
    let mut images = Vec::with_capacity(phi.images.len());
    for f in &phi.images {
        let shifted = f - &Polynomial::constant(phi.ring, f.constant_term());
        let g = match shifted.lex_leading_term() {
            Ok((_, lc)) => shifted.scale(&field.inv(lc)?),
            Err(_) => shifted,
        };
        images.push(g);
    }
    if images == phi.images {
        if let Some(d) = report.defects.first() {
            return Err(Error::NotARetraction { index: d.index });
        }
        return Ok(Normalization::Normalized(phi.clone()));
    }
    let candidate = EndoMap { ring: phi.ring, images };
    if let Some(d) = candidate.is_retraction()?.defects.first() {
        if let Some(d0) = report.defects.first() {
            return Err(Error::NotARetraction { index: d0.index });
        }
        return Ok(Normalization::NotNormalizable(format!(
            "rescaled image {} breaks the retraction condition",
            d.index + 1
        )));
    }
    let before = phi.image_algebra();
    let after = candidate.image_algebra();
    for (from, to, label) in [(&before, &after, "original"), (&after, &before, "rescaled")] {
        for g in from.generators() {
            if !member_bounded(g, to, bound)?.is_member() {
                return Ok(Normalization::NotNormalizable(format!(
                    "{label} generator {} not certified in the other algebra at degree {bound}",
                    g.to_text()
                )));
            }
        }
    }
    Ok(Normalization::Normalized(candidate))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelCheck {
    pub holds: bool,
    pub bound: u32,
    /// `phi(h)` when it is nonzero.
    pub image_of_h: Option<Polynomial>,
    /// First monomial `b` with `b - phi(b)` not divisible by `h`.
    pub witness: Option<Polynomial>,
}

/// Checks `phi(h) = 0` and `h | b - phi(b)` for every monomial `b` of total
/// degree `<= bound`. Success certifies `ker phi = (h)` only up to `bound`.
pub fn kernel_principal_check(phi: &EndoMap, h: &Polynomial, bound: u32) -> Result<KernelCheck> {
    if h.is_zero() {
        return Err(PolyError::DivisionByZero.into());
    }
    if let Some(d) = phi.is_retraction()?.defects.first() {
        return Err(Error::NotARetraction { index: d.index });
    }
    let image = phi.apply(h)?;
    if !image.is_zero() {
        return Ok(KernelCheck { holds: false, bound, image_of_h: Some(image), witness: None });
    }
    let ring = phi.ring;
    let monos = monomials_up_to(ring.nvars, bound);
    let divisible: Vec<bool> = monos
        .par_iter()
        .map(|e| {
            let b = Polynomial::monomial(ring, e.clone(), ring.field.one());
            let diff = &b - &phi.apply(&b)?;
            Ok(diff.exact_divide(h)?.is_some())
        })
        .collect::<Result<_>>()?;
    let witness = divisible
        .iter()
        .position(|ok| !ok)
        .map(|k| Polynomial::monomial(ring, monos[k].clone(), ring.field.one()));
    Ok(KernelCheck { holds: witness.is_none(), bound, image_of_h: None, witness })
}
