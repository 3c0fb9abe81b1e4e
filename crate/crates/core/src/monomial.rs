//! Retractions whose images are zeros and monic monomials.
//!
//! Such a tuple is a retraction exactly when no nonzero image uses a
//! variable whose own image is zero and the exponent matrix restricted to
//! the nonzero images is idempotent. The enumeration below walks that
//! matrix space and cross-checks every survivor by direct substitution.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::endo::EndoMap;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{ExponentVector, Polynomial, Ring};

/// Exponents `a_ij` of `x_{m_j}` in `f_{m_i}`, for the nonzero images
/// `m_1 < ... < m_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentMatrix {
    /// Zero-based indices of the nonzero images.
    pub support: Vec<usize>,
    pub entries: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixOutcome {
    Valid(ExponentMatrix),
    /// Image `image` uses `variable`, whose image is zero.
    Invalid { image: usize, variable: usize },
}

pub fn exponent_matrix(images: &[Polynomial]) -> Result<MatrixOutcome> {
    let tuple = MonomialTuple::from_images(images)?;
    Ok(tuple.exponent_matrix())
}

pub fn is_idempotent_matrix(m: &ExponentMatrix) -> bool {
    let e = &m.entries;
    let r = e.len();
    (0..r).all(|i| {
        (0..r).all(|j| {
            let s: u64 = (0..r).map(|k| e[i][k] as u64 * e[k][j] as u64).sum();
            s == e[i][j] as u64
        })
    })
}

/// A tuple of images, each zero (`None`) or a monic monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialTuple(Vec<Option<ExponentVector>>);

impl MonomialTuple {
    pub fn new(images: Vec<Option<ExponentVector>>) -> Self {
        let n = images.len();
        assert!(images.iter().flatten().all(|e| e.len() == n), "exponent length");
        MonomialTuple(images)
    }

    pub fn from_images(images: &[Polynomial]) -> Result<Self> {
        let n = images.len();
        let mut out = Vec::with_capacity(n);
        for (i, f) in images.iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::InvalidArgument(format!(
                    "image {} lives in {} variables, expected {n}",
                    i + 1,
                    f.nvars()
                )));
            }
            if f.is_zero() {
                out.push(None);
            } else if f.is_monic_monomial() {
                out.push(Some(f.terms().next().unwrap().0.clone()));
            } else {
                return Err(Error::NotMonomial { index: i });
            }
        }
        Ok(MonomialTuple(out))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[Option<ExponentVector>] {
        &self.0
    }

    pub fn to_images(&self, field: FieldSpec) -> Vec<Polynomial> {
        let ring = Ring::new(field, self.n());
        self.0
            .iter()
            .map(|e| match e {
                None => Polynomial::zero(ring),
                Some(e) => Polynomial::monomial(ring, e.clone(), field.one()),
            })
            .collect()
    }

    /// Every image is 0 or 1, so the generated algebra is `k`.
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|e| e.as_ref().is_none_or(|e| e.is_zero()))
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().flatten().flat_map(|e| e.as_slice().iter().copied()).max().unwrap_or(0)
    }

    pub fn exponent_matrix(&self) -> MatrixOutcome {
        let support: Vec<usize> = (0..self.n()).filter(|&i| self.0[i].is_some()).collect();
        for &i in &support {
            let e = self.0[i].as_ref().unwrap();
            for (j, &a) in e.as_slice().iter().enumerate() {
                if a > 0 && self.0[j].is_none() {
                    return MatrixOutcome::Invalid { image: i, variable: j };
                }
            }
        }
        let entries = support
            .iter()
            .map(|&i| {
                let e = self.0[i].as_ref().unwrap();
                support.iter().map(|&j| e.get(j)).collect()
            })
            .collect();
        MatrixOutcome::Valid(ExponentMatrix { support, entries })
    }

    /// Retraction test through the exponent matrix.
    pub fn is_retraction_by_matrix(&self) -> bool {
        match self.exponent_matrix() {
            MatrixOutcome::Valid(m) => is_idempotent_matrix(&m),
            MatrixOutcome::Invalid { .. } => false,
        }
    }
}

impl fmt::Display for MonomialTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self
            .to_images(FieldSpec::Rationals)
            .iter()
            .map(|p| p.to_text())
            .collect();
        write!(f, "{}", texts.join("; "))
    }
}

impl Serialize for MonomialTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let texts: Vec<String> = self
            .to_images(FieldSpec::Rationals)
            .iter()
            .map(|p| p.to_text())
            .collect();
        texts.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumeratedTuple {
    pub tuple: MonomialTuple,
    /// The generated algebra is `k`; kept but flagged.
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub n: usize,
    pub max_exp: u32,
    /// Sorted, duplicate-free.
    pub tuples: Vec<EnumeratedTuple>,
}

impl Enumeration {
    pub fn nontrivial(&self) -> impl Iterator<Item = &MonomialTuple> {
        self.tuples.iter().filter(|t| !t.trivial).map(|t| &t.tuple)
    }

    pub fn trivial(&self) -> impl Iterator<Item = &MonomialTuple> {
        self.tuples.iter().filter(|t| t.trivial).map(|t| &t.tuple)
    }
}

/// All retractions of `k[x1..xn]` whose images are zeros or monic monomials
/// with every exponent at most `max_exp`.
pub fn enumerate_monomial_retractions(n: usize, max_exp: u32) -> Result<Enumeration> {
    if !(1..=3).contains(&n) {
        return Err(Error::Unsupported(format!("monomial enumeration for n = {n} (supported: 1 to 3)")));
    }
    let base = max_exp as u64 + 1;
    let mut candidates: Vec<MonomialTuple> = Vec::new();
    for mask in 0u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let r = support.len();
        let cells = (r * r) as u32;
        let total = base.pow(cells);
        let found: Vec<MonomialTuple> = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let mut code = code;
                let mut entries = vec![vec![0u32; r]; r];
                for row in entries.iter_mut() {
                    for cell in row.iter_mut() {
                        *cell = (code % base) as u32;
                        code /= base;
                    }
                }
                let m = ExponentMatrix { support: support.clone(), entries };
                is_idempotent_matrix(&m).then(|| tuple_from_matrix(n, &m))
            })
            .collect();
        candidates.extend(found);
    }
    let field = FieldSpec::Rationals;
    let ring = Ring::new(field, n);
    for t in &candidates {
        let phi = EndoMap::new(ring, t.to_images(field))?;
        if !phi.is_retraction()?.is_retraction {
            return Err(Error::Incompatible {
                rule: "monomial enumeration".into(),
                detail: format!("idempotent exponent matrix but ({t}) fails the retraction condition"),
            });
        }
    }
    candidates.sort();
    candidates.dedup();
    let tuples = candidates
        .into_iter()
        .map(|tuple| EnumeratedTuple { trivial: tuple.is_trivial(), tuple })
        .collect();
    Ok(Enumeration { n, max_exp, tuples })
}

fn tuple_from_matrix(n: usize, m: &ExponentMatrix) -> MonomialTuple {
    let mut images = vec![None; n];
    for (row, &i) in m.support.iter().enumerate() {
        let mut e = vec![0u32; n];
        for (col, &j) in m.support.iter().enumerate() {
            e[j] = m.entries[row][col];
        }
        images[i] = Some(ExponentVector::new(e));
    }
    MonomialTuple(images)
}
