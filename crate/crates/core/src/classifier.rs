//! Decides, for a retraction of `k[x, y]` or `k[x, y, z]` given by its
//! images, that the retract `A = k[f1, ..., fn]` is a polynomial ring.
//!
//! Only sufficient conditions are implemented. When none applies the
//! verdict is `Inconclusive`; the pipeline never claims that `A` is not a
//! polynomial ring.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::endo::{has_unit_leading_coefficients, has_zero_constant_terms, normalize_generators, EndoMap, Normalization};
use crate::endo::Defect;
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial, Ring};
use crate::subalgebra::{dependence_bounded, member_bounded, SubalgebraPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    RetractionCondition,
    Normalization,
    IndependentImages,
    ConstantImage,
    CoordinateImage,
    MonomialImage,
    BinomialImage,
    TwoVariables,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::RetractionCondition => "retraction-condition",
            Rule::Normalization => "normalization",
            Rule::IndependentImages => "independent-images",
            Rule::ConstantImage => "constant-image",
            Rule::CoordinateImage => "coordinate-image",
            Rule::MonomialImage => "monomial-image",
            Rule::BinomialImage => "binomial-image",
            Rule::TwoVariables => "two-variables",
        }
    }

    /// The mathematical fact the rule rests on.
    pub fn anchor(self) -> &'static str {
        match self {
            Rule::RetractionCondition => "phi is a retraction iff f_i(f_1, ..., f_n) = f_i for every i",
            Rule::Normalization => "generators rescaled to zero constant terms and lex-leading coefficient 1",
            Rule::IndependentImages => "algebraically independent images give tr.deg 3, so A = B",
            Rule::ConstantImage => {
                "a constant image leaves A generated by the other two; a retract of tr.deg <= 1 is k[f] (Costa)"
            }
            Rule::CoordinateImage => {
                "f_i = x_i makes A an R-retract of R^[2] with R = k[x_i] a UFD, so A = R^[e] (Costa)"
            }
            Rule::MonomialImage => {
                "with nonconstant images, a monomial image is forced to be its own coordinate by the retraction condition"
            }
            Rule::BinomialImage => "a binomial image x_i + a*m forces an image of a variable of m to vanish",
            Rule::TwoVariables => "every retract of k^[2] is a polynomial ring (Costa)",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub rule: Rule,
    pub anchor: &'static str,
    pub detail: String,
}

impl Reason {
    fn new(rule: Rule, detail: impl Into<String>) -> Self {
        Reason { rule, anchor: rule.anchor(), detail: detail.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    NotARetraction,
    PolynomialRing,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// Krull dimension of `A` for `PolynomialRing`.
    pub dim: Option<usize>,
    /// Polynomial generators of `A`, present only when certified: pairwise
    /// without relation up to the bound and generating every image.
    pub witnesses: Option<Vec<Polynomial>>,
    /// The dimension rests on a bounded independence search.
    pub bound_relative: bool,
    pub defects: Vec<Defect>,
    /// Rules tried without result, for `Inconclusive`.
    pub attempted: Vec<String>,
    pub reasons: Vec<Reason>,
    /// Degree bound of each bounded sub-check that was run.
    pub bounds: BTreeMap<String, u32>,
}

impl Verdict {
    fn empty(status: Status) -> Self {
        Verdict {
            status,
            dim: None,
            witnesses: None,
            bound_relative: false,
            defects: vec![],
            attempted: vec![],
            reasons: vec![],
            bounds: BTreeMap::new(),
        }
    }

    fn record(&mut self, check: &str, bound: u32) {
        self.bounds.insert(check.to_string(), bound);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleOutcome {
    Verdict(Verdict),
    NoCaseApplies(String),
}

/// The rules tried after normalization, in pipeline order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    ThreeVariableCases,
    MonomialImage,
    BinomialImage,
}

pub const DEFAULT_ORDER: [RuleKind; 3] = [RuleKind::ThreeVariableCases, RuleKind::MonomialImage, RuleKind::BinomialImage];

/// Outcome of the generic dimension count over a list of images.
struct Assembly {
    dim: usize,
    witnesses: Option<Vec<Polynomial>>,
    exact: bool,
    notes: Vec<String>,
}

fn nonconstant(images: &[Polynomial]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for f in images {
        if !f.is_constant() && !out.contains(f) {
            out.push(f.clone());
        }
    }
    out
}

fn presentation(ring: Ring, gens: &[Polynomial]) -> Result<SubalgebraPresentation> {
    SubalgebraPresentation::new(ring, gens)
}

fn all_members(ring: Ring, targets: &[Polynomial], gens: &[Polynomial], bound: u32) -> Result<bool> {
    let algebra = presentation(ring, gens)?;
    for t in targets {
        if t.is_constant() || gens.contains(t) {
            continue;
        }
        if !member_bounded(t, &algebra, bound)?.is_member() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn monic_part(f: &Polynomial) -> Polynomial {
    let shifted = f - &Polynomial::constant(f.ring(), f.constant_term());
    match shifted.lex_leading_term() {
        Ok((_, lc)) => match f.field().inv(lc) {
            Ok(inv) => shifted.scale(&inv),
            Err(_) => shifted,
        },
        Err(_) => shifted,
    }
}

/// Greedy maximal subset of the nonconstant images without relation up to
/// `bound` (images listed first in `first` are tried first), then
/// membership of every image in the algebra it generates.
fn assemble(ring: Ring, images: &[Polynomial], first: Option<usize>, bound: u32) -> Result<Assembly> {
    let mut order: Vec<Polynomial> = Vec::new();
    if let Some(i) = first {
        order.push(images[i].clone());
    }
    order.extend(images.iter().cloned());
    let candidates = nonconstant(&order);
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut notes = Vec::new();
    for g in &candidates {
        if basis.is_empty() {
            basis.push(g.clone());
            continue;
        }
        let mut trial = basis.clone();
        trial.push(g.clone());
        match dependence_bounded(&presentation(ring, &trial)?, bound)? {
            crate::subalgebra::Dependence::Witness(w) => {
                notes.push(format!("relation {} among {}", w.relation.to_text(), texts(&trial)));
            }
            crate::subalgebra::Dependence::NoneFound { .. } => basis.push(g.clone()),
        }
    }
    let dim = basis.len();
    let mut witnesses = None;
    if all_members(ring, &candidates, &basis, bound)? {
        witnesses = Some(basis.clone());
    } else if dim > 1 {
        // Another transcendence basis among the images may generate them all.
        for subset in subsets(&candidates, dim) {
            if subset == basis || !dependence_bounded(&presentation(ring, &subset)?, bound)?.is_independent() {
                continue;
            }
            if all_members(ring, &candidates, &subset, bound)? {
                basis = subset.clone();
                witnesses = Some(subset);
                break;
            }
        }
    }
    if witnesses.is_none() && dim == 1 {
        let mut pool: Vec<Polynomial> = candidates.iter().map(monic_part).collect();
        pool.sort_by_key(|p| (p.total_degree(), p.num_terms()));
        pool.dedup();
        for c in pool {
            if all_members(ring, &candidates, std::slice::from_ref(&c), bound)? {
                notes.push(format!("witness {} found by bounded search", c.to_text()));
                witnesses = Some(vec![c]);
                break;
            }
        }
        if witnesses.is_none() {
            notes.push("no single generator found; A = k[f] for some f by Costa's theorem".into());
        }
    } else if witnesses.is_none() {
        notes.push(format!("images not certified in k[{}] at degree {bound}", texts(&basis)));
    }
    let coordinates = basis.iter().all(|b| b.as_variable().is_some());
    let exact = dim <= 1 || coordinates;
    Ok(Assembly { dim, witnesses, exact, notes })
}

/// Subsets of `items` of size `k`, in lexicographic order of positions.
fn subsets(items: &[Polynomial], k: usize) -> Vec<Vec<Polynomial>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, items[i].clone());
            out.push(rest);
        }
    }
    out
}

fn texts(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_text()).collect::<Vec<_>>().join(", ")
}

fn ring_verdict(a: Assembly, reasons: Vec<Reason>, bound: u32) -> Verdict {
    let mut v = Verdict::empty(Status::PolynomialRing);
    v.dim = Some(a.dim);
    v.witnesses = a.witnesses;
    v.bound_relative = !a.exact;
    v.reasons = reasons;
    if !a.notes.is_empty() {
        if let Some(last) = v.reasons.last_mut() {
            last.detail = format!("{}; {}", last.detail, a.notes.join("; "));
        }
    }
    v.record("independence", bound);
    v.record("membership", bound);
    v
}

fn require_three(phi: &EndoMap) -> Result<()> {
    if phi.ring().nvars != 3 {
        return Err(Error::Unsupported(format!("rule defined for three variables, got {}", phi.ring().nvars)));
    }
    Ok(())
}

fn require_retraction(phi: &EndoMap) -> Result<()> {
    match phi.is_retraction()?.defects.first() {
        Some(d) => Err(Error::NotARetraction { index: d.index }),
        None => Ok(()),
    }
}

fn constant_case(phi: &EndoMap, bound: u32) -> Result<Option<Verdict>> {
    let images = phi.images();
    let Some(i) = images.iter().position(|f| f.is_constant()) else {
        return Ok(None);
    };
    let a = assemble(phi.ring(), images, None, bound)?;
    let detail = format!("f{} = {} is constant; A has dimension {}", i + 1, images[i].to_text(), a.dim);
    Ok(Some(ring_verdict(a, vec![Reason::new(Rule::ConstantImage, detail)], bound)))
}

fn coordinate_case(phi: &EndoMap, i: usize, bound: u32) -> Result<Verdict> {
    let a = assemble(phi.ring(), phi.images(), Some(i), bound)?;
    let detail = format!("f{} = {}; A = R^[{}] with R = k[{}]", i + 1, phi.images()[i].to_text(), a.dim - 1, phi.images()[i].to_text());
    Ok(ring_verdict(a, vec![Reason::new(Rule::CoordinateImage, detail)], bound))
}

/// The three sufficient conditions for `n = 3`: independent images with
/// `A = B`, a constant image, an image equal to its own coordinate.
pub fn three_variable_cases(phi: &EndoMap, bound: u32) -> Result<RuleOutcome> {
    require_three(phi)?;
    require_retraction(phi)?;
    let ring = phi.ring();
    let images = phi.images();
    let distinct = nonconstant(images);
    if distinct.len() == 3 && dependence_bounded(&presentation(ring, &distinct)?, bound)?.is_independent() {
        let coords: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(ring, i)).collect();
        if all_members(ring, &coords, &distinct, bound)? {
            let mut v = Verdict::empty(Status::PolynomialRing);
            v.dim = Some(3);
            v.witnesses = Some(coords);
            v.reasons.push(Reason::new(
                Rule::IndependentImages,
                format!("no relation up to degree {bound} and x, y, z certified in A, so A = B"),
            ));
            v.record("independence", bound);
            v.record("membership", bound);
            return Ok(RuleOutcome::Verdict(v));
        }
    }
    if let Some(v) = constant_case(phi, bound)? {
        return Ok(RuleOutcome::Verdict(v));
    }
    if let Some(i) = (0..3).find(|&i| images[i].as_variable() == Some(i) && images[i].is_monic_monomial()) {
        return Ok(RuleOutcome::Verdict(coordinate_case(phi, i, bound)?));
    }
    Ok(RuleOutcome::NoCaseApplies(
        "images dependent or A != B certified, no constant image, no image equal to its coordinate".into(),
    ))
}

fn variables_of(e: &ExponentVector) -> Vec<usize> {
    (0..e.len()).filter(|&j| e.get(j) > 0).collect()
}

/// A retraction of `k[x, y, z]` with nonconstant images, one of them a
/// monic monomial: the retraction condition forces some image to be its
/// own coordinate, and the coordinate case applies.
pub fn monomial_image_rule(phi: &EndoMap, bound: u32) -> Result<RuleOutcome> {
    require_three(phi)?;
    if !phi.is_retraction()?.is_retraction {
        return Ok(RuleOutcome::NoCaseApplies("not a retraction".into()));
    }
    let images = phi.images();
    if images.iter().any(|f| f.is_constant()) {
        return Ok(RuleOutcome::NoCaseApplies("constant image; handled by the constant case".into()));
    }
    let monomials: Vec<usize> = (0..3).filter(|&i| images[i].is_monic_monomial()).collect();
    if monomials.is_empty() {
        return Ok(RuleOutcome::NoCaseApplies("no monic monomial image".into()));
    }
    let incompatible = |detail: String| Error::Incompatible { rule: Rule::MonomialImage.name().into(), detail };
    let mut steps = Vec::new();
    match monomials.len() {
        1 => {
            let i = monomials[0];
            let e = images[i].terms().next().unwrap().0.clone();
            // Any other variable in f_i would make f_i(f) a non-monomial.
            if variables_of(&e) != vec![i] {
                return Err(incompatible(format!("monomial f{} = {} involves other variables", i + 1, images[i].to_text())));
            }
            if e.get(i) != 1 {
                return Err(incompatible(format!("f{} = {} is a proper power of its variable", i + 1, images[i].to_text())));
            }
            steps.push(format!("only monomial image f{} lies in k[x{}] and equals its coordinate", i + 1, i + 1));
        }
        2 => {
            let rest = (0..3).find(|k| !monomials.contains(k)).unwrap();
            for &i in &monomials {
                let e = images[i].terms().next().unwrap().0.clone();
                if e.get(rest) > 0 {
                    return Err(incompatible(format!(
                        "monomial f{} uses the variable of the non-monomial image f{}",
                        i + 1,
                        rest + 1
                    )));
                }
            }
            steps.push(format!(
                "monomial pair (f{}, f{}) lies in the two-variable monomial classification",
                monomials[0] + 1,
                monomials[1] + 1
            ));
        }
        _ => steps.push("all images monomial: exponent matrix idempotent".into()),
    }
    let Some(i) = monomials.iter().copied().find(|&i| images[i].as_variable() == Some(i)) else {
        return Err(incompatible(format!("no monomial image equals its coordinate in ({})", texts(images))));
    };
    let mut v = coordinate_case(phi, i, bound)?;
    v.reasons.insert(0, Reason::new(Rule::MonomialImage, steps.join("; ")));
    Ok(RuleOutcome::Verdict(v))
}

/// A retraction of `k[x, y, z]` with zero constant terms and an image
/// `f_i = x_i + a*m`: the retraction condition forces `f_j = 0` for some
/// variable `x_j` of `m`, and the constant case applies.
pub fn binomial_image_rule(phi: &EndoMap, bound: u32) -> Result<RuleOutcome> {
    require_three(phi)?;
    if !phi.is_retraction()?.is_retraction {
        return Ok(RuleOutcome::NoCaseApplies("not a retraction".into()));
    }
    let images = phi.images();
    if !has_zero_constant_terms(images) {
        return Ok(RuleOutcome::NoCaseApplies("some image has a nonzero constant term".into()));
    }
    let ring = phi.ring();
    let one = ring.field.one();
    let found = (0..3).find_map(|i| {
        let f = &images[i];
        if f.num_terms() != 2 || !ring.field.is_one(&f.coefficient(&ExponentVector::unit(3, i))) {
            return None;
        }
        let (e, a) = f.terms().find(|(e, _)| **e != ExponentVector::unit(3, i))?;
        Some((i, e.clone(), a.clone()))
    });
    let Some((i, e, alpha)) = found else {
        return Ok(RuleOutcome::NoCaseApplies("no image x_i + a*m".into()));
    };
    let incompatible = |detail: String| Error::Incompatible { rule: Rule::BinomialImage.name().into(), detail };
    let others: Vec<usize> = variables_of(&e).into_iter().filter(|&j| j != i).collect();
    if others.is_empty() {
        return Err(incompatible(format!("f{} = {} is a pure power binomial", i + 1, images[i].to_text())));
    }
    let Some(j) = others.iter().copied().find(|&j| images[j].is_zero()) else {
        return Err(incompatible(format!(
            "f{} = {} but no image of a variable of its second term vanishes",
            i + 1,
            images[i].to_text()
        )));
    };
    let m = Polynomial::monomial(ring, e, one);
    let normal = if has_unit_leading_coefficients(images) { "" } else { " (leading coefficients not normalized)" };
    let step = format!(
        "f{} = x{} + ({})*{}{normal}, forcing f{} = 0",
        i + 1,
        i + 1,
        alpha,
        m.to_text(),
        j + 1
    );
    let Some(mut v) = constant_case(phi, bound)? else {
        unreachable!("f{} = 0 is constant", j + 1)
    };
    v.reasons.insert(0, Reason::new(Rule::BinomialImage, step));
    Ok(RuleOutcome::Verdict(v))
}

fn run_rule(kind: RuleKind, phi: &EndoMap, bound: u32) -> Result<RuleOutcome> {
    match kind {
        RuleKind::ThreeVariableCases => three_variable_cases(phi, bound),
        RuleKind::MonomialImage => monomial_image_rule(phi, bound),
        RuleKind::BinomialImage => binomial_image_rule(phi, bound),
    }
}

impl RuleKind {
    pub fn name(self) -> &'static str {
        match self {
            RuleKind::ThreeVariableCases => "three-variable-cases",
            RuleKind::MonomialImage => "monomial-image",
            RuleKind::BinomialImage => "binomial-image",
        }
    }
}

pub fn classify(phi: &EndoMap, bound: u32) -> Result<Verdict> {
    classify_with_order(phi, bound, &DEFAULT_ORDER)
}

/// `classify` with a custom order of the three-variable rules.
pub fn classify_with_order(phi: &EndoMap, bound: u32, order: &[RuleKind]) -> Result<Verdict> {
    let n = phi.ring().nvars;
    if n != 2 && n != 3 {
        return Err(Error::Unsupported(format!("classification for n = {n} (supported: 2, 3)")));
    }
    let report = phi.is_retraction()?;
    if !report.is_retraction {
        let mut v = Verdict::empty(Status::NotARetraction);
        let indices: Vec<String> = report.defects.iter().map(|d| format!("f{}", d.index + 1)).collect();
        v.reasons.push(Reason::new(Rule::RetractionCondition, format!("fails at {}", indices.join(", "))));
        v.defects = report.defects;
        return Ok(v);
    }
    let mut reasons = vec![Reason::new(Rule::RetractionCondition, "holds exactly")];
    let work = match normalize_generators(phi, bound)? {
        Normalization::Normalized(psi) if psi != *phi => {
            reasons.push(Reason::new(Rule::Normalization, format!("rescaled to ({})", texts(psi.images()))));
            psi
        }
        Normalization::Normalized(_) => phi.clone(),
        Normalization::NotNormalizable(why) => {
            reasons.push(Reason::new(Rule::Normalization, format!("kept original images: {why}")));
            phi.clone()
        }
    };

    let mut verdict = if n == 2 {
        let a = assemble(work.ring(), work.images(), None, bound)?;
        let detail = format!("A has dimension {}", a.dim);
        ring_verdict(a, vec![Reason::new(Rule::TwoVariables, detail)], bound)
    } else {
        let mut attempted = Vec::new();
        let mut found = None;
        for &kind in order {
            match run_rule(kind, &work, bound)? {
                RuleOutcome::Verdict(v) => {
                    found = Some(v);
                    break;
                }
                RuleOutcome::NoCaseApplies(why) => attempted.push(format!("{}: {why}", kind.name())),
            }
        }
        match found {
            Some(v) => v,
            None => {
                let mut v = Verdict::empty(Status::Inconclusive);
                v.attempted = attempted;
                v.reasons = reasons;
                v.record("normalization", bound);
                return Ok(v);
            }
        }
    };
    reasons.append(&mut verdict.reasons);
    verdict.reasons = reasons;
    verdict.record("normalization", bound);
    if let Some(w) = &verdict.witnesses {
        // Witnesses must generate the original images, not only the rescaled ones.
        if !all_members(phi.ring(), phi.images(), w, bound)? {
            verdict.witnesses = None;
        }
    }
    Ok(verdict)
}
