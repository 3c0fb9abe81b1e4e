//! Z-gradings of `k[x1, ..., xn]` induced by integer weight vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, PolyError, Result};
use crate::poly::{ExponentVector, Polynomial};
use crate::subalgebra::SubalgebraPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_of(&self, e: &ExponentVector) -> i64 {
        self.0.iter().zip(e.as_slice()).map(|(&w, &a)| w * a as i64).sum()
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if self.len() != f.nvars() {
            return Err(PolyError::Arity { expected: f.nvars(), got: self.len() }.into());
        }
        Ok(())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    /// Comma-separated integers, e.g. `1,-1,0`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad weight {:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeightVector)
    }
}

/// Terms of `f` grouped by weighted degree. The zero polynomial has no
/// components.
pub fn homogeneous_components(f: &Polynomial, w: &WeightVector) -> Result<BTreeMap<i64, Polynomial>> {
    w.check(f)?;
    let mut groups: BTreeMap<i64, Vec<(ExponentVector, crate::field::Scalar)>> = BTreeMap::new();
    for (e, c) in f.terms() {
        groups.entry(w.degree_of(e)).or_default().push((e.clone(), c.clone()));
    }
    Ok(groups
        .into_iter()
        .map(|(d, terms)| (d, Polynomial::from_terms(f.ring(), terms)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Homogeneity {
    /// Zero is homogeneous of every degree.
    Zero,
    Homogeneous(i64),
    Inhomogeneous(Vec<i64>),
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous(_))
    }
}

pub fn is_homogeneous(f: &Polynomial, w: &WeightVector) -> Result<Homogeneity> {
    let comps = homogeneous_components(f, w)?;
    let degrees: Vec<i64> = comps.keys().copied().collect();
    Ok(match degrees.as_slice() {
        [] => Homogeneity::Zero,
        [d] => Homogeneity::Homogeneous(*d),
        _ => Homogeneity::Inhomogeneous(degrees),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    /// Some generator has nonzero degree, so `A_0 != A` for the induced grading.
    pub effective: bool,
    pub weights: WeightVector,
    /// Degree of each generator, in order.
    pub degrees: Vec<i64>,
}

/// Whether the grading induced by `w` on `A` is nontrivial. Every generator
/// must be `w`-homogeneous, otherwise `w` does not restrict to `A` through
/// this presentation.
pub fn grading_effective(algebra: &SubalgebraPresentation, w: &WeightVector) -> Result<GradingReport> {
    if w.len() != algebra.ring().nvars {
        return Err(PolyError::Arity { expected: algebra.ring().nvars, got: w.len() }.into());
    }
    let mut degrees = Vec::with_capacity(algebra.len());
    for g in algebra.generators() {
        match is_homogeneous(g, w)? {
            Homogeneity::Homogeneous(d) => degrees.push(d),
            Homogeneity::Zero => {}
            Homogeneity::Inhomogeneous(ds) => {
                return Err(Error::Inhomogeneous { generator: g.to_text(), degrees: ds });
            }
        }
    }
    Ok(GradingReport { effective: degrees.iter().any(|&d| d != 0), weights: w.clone(), degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::{parse_list, parse_polynomial};
    use crate::poly::{default_var_names, Ring};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, FieldSpec::Rationals, &default_var_names(2)).unwrap()
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector(v.to_vec())
    }

    fn algebra(s: &str) -> SubalgebraPresentation {
        let gens = parse_list(s, FieldSpec::Rationals, &default_var_names(2)).unwrap();
        SubalgebraPresentation::new(Ring::new(FieldSpec::Rationals, 2), &gens).unwrap()
    }

    #[test]
    fn components_examples() {
        let c = homogeneous_components(&p("x^2 + y"), &w(&[1, 2])).unwrap();
        assert_eq!(c, BTreeMap::from([(2, p("x^2 + y"))]));
        let c = homogeneous_components(&p("x + y"), &w(&[1, 1])).unwrap();
        assert_eq!(c, BTreeMap::from([(1, p("x + y"))]));
        let c = homogeneous_components(&p("x + y^2"), &w(&[2, 1])).unwrap();
        assert_eq!(c, BTreeMap::from([(2, p("x + y^2"))]));
        let c = homogeneous_components(&p("x + y^2"), &w(&[1, 1])).unwrap();
        assert_eq!(c, BTreeMap::from([(1, p("x")), (2, p("y^2"))]));
        assert!(homogeneous_components(&p("x"), &w(&[1])).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        assert_eq!(is_homogeneous(&p("x*y"), &w(&[1, -1])).unwrap(), Homogeneity::Homogeneous(0));
        assert_eq!(is_homogeneous(&p("x + 1"), &w(&[1, 1])).unwrap(), Homogeneity::Inhomogeneous(vec![0, 1]));
        assert_eq!(is_homogeneous(&p("x^3*y^7"), &w(&[-4, 9])).unwrap(), Homogeneity::Homogeneous(51));
        assert_eq!(is_homogeneous(&p("0"), &w(&[1, 1])).unwrap(), Homogeneity::Zero);
    }

    #[test]
    fn effectiveness_examples() {
        let r = grading_effective(&algebra("x; y^2"), &w(&[1, 1])).unwrap();
        assert!(r.effective);
        assert_eq!(r.degrees, vec![1, 2]);
        let r = grading_effective(&algebra("x*y"), &w(&[1, -1])).unwrap();
        assert!(!r.effective);
        assert_eq!(r.degrees, vec![0]);
        assert!(matches!(
            grading_effective(&algebra("x + y"), &w(&[1, 2])),
            Err(Error::Inhomogeneous { ref generator, ref degrees }) if generator == "x + y" && degrees == &vec![1, 2]
        ));
    }

    #[test]
    fn weights_parse() {
        assert_eq!("1, -1,0".parse::<WeightVector>().unwrap(), w(&[1, -1, 0]));
        assert!("1,a".parse::<WeightVector>().is_err());
        assert_eq!(w(&[1, -2]).to_string(), "(1, -2)");
    }
}
