//! One function per subcommand. Each returns the text report, the JSON
//! report and the exit code; errors are turned into exit codes by `main`.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use retractlab::classifier::{classify, Status, Verdict};
use retractlab::corpus::{match_families, Corpus};
use retractlab::endo::{kernel_principal_check, normalize_generators, EndoMap, Normalization};
use retractlab::expmap::{
    constants_bounded, find_local_slice, localization_identity_check, ml_bounded, ExpMap, SliceOutcome,
};
use retractlab::grading::{grading_effective, WeightVector};
use retractlab::monomial::enumerate_monomial_retractions;
use retractlab::parse::{parse_expmap_image, parse_list, parse_polynomial, split_list, Grammar};
use retractlab::poly::default_var_names;
use retractlab::subalgebra::{dependence_bounded, member_bounded, Dependence, Membership, SubalgebraPresentation};
use retractlab::{FieldSpec, Polynomial, Ring};

use crate::args::Common;
use crate::error::CliError;

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn new(text: String, json: Value, ok: bool) -> Self {
        Outcome { text, json, code: if ok { 0 } else { 1 } }
    }
}

/// Field and variable names of one invocation.
pub struct Context {
    pub field: FieldSpec,
    pub vars: Vec<String>,
}

impl Context {
    /// `default_n` variables are used when `--vars` is absent.
    pub fn new(common: &Common, default_n: usize) -> Result<Self, CliError> {
        let field: FieldSpec = common
            .field
            .parse()
            .map_err(|e| CliError::Usage(format!("--field {}: {e}", common.field)))?;
        let vars = match &common.vars {
            Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
            None => default_var_names(default_n),
        };
        let distinct: std::collections::BTreeSet<&String> = vars.iter().collect();
        if distinct.len() != vars.len() {
            return Err(CliError::Usage(format!("--vars: repeated name in {}", vars.join(","))));
        }
        Grammar::polynomial(&vars).map_err(|e| CliError::Usage(format!("--vars: {}", e.message)))?;
        Ok(Context { field, vars })
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.field, self.n())
    }

    pub fn ring_name(&self) -> String {
        format!("{}[{}]", self.field, self.vars.join(","))
    }

    pub fn show(&self, p: &Polynomial) -> String {
        p.display_with(&self.vars).to_string()
    }

    fn show_list(&self, ps: &[Polynomial]) -> Vec<String> {
        ps.iter().map(|p| self.show(p)).collect()
    }

    fn with_u(&self) -> Vec<String> {
        let mut v = self.vars.clone();
        v.push("U".into());
        v
    }

    fn with_uv(&self) -> Vec<String> {
        let mut v = self.with_u();
        v.push("V".into());
        v
    }

    pub fn parse_images(&self, text: &str) -> Result<Vec<Polynomial>, CliError> {
        let images = parse_list(text, self.field, &self.vars)
            .map_err(|(i, e)| CliError::Parse(format!("polynomial {}: {e}", i + 1)))?;
        Ok(images)
    }

    /// Images for an endomorphism: exactly one per variable.
    fn parse_map(&self, text: &str) -> Result<EndoMap, CliError> {
        let images = self.parse_images(text)?;
        if images.len() != self.n() {
            return Err(CliError::Usage(format!(
                "{} images given for {} variables ({})",
                images.len(),
                self.n(),
                self.vars.join(",")
            )));
        }
        Ok(EndoMap::new(self.ring(), images)?)
    }

    fn parse_one(&self, text: &str, what: &str) -> Result<Polynomial, CliError> {
        parse_polynomial(text, self.field, &self.vars).map_err(|e| CliError::Parse(format!("{what}: {e}")))
    }

    fn parse_expmap(&self, text: &str) -> Result<ExpMap, CliError> {
        let parts = split_list(text);
        if parts.len() != self.n() {
            return Err(CliError::Usage(format!("{} images given for {} variables", parts.len(), self.n())));
        }
        let images = parts
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_expmap_image(s, self.field, &self.vars)
                    .map_err(|e| CliError::Parse(format!("polynomial {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExpMap::new(self.ring(), images)?)
    }

    fn fresh_names(r: usize) -> Vec<String> {
        (1..=r).map(|i| format!("t{i}")).collect()
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Number of `;`-separated items, used as the default variable count.
pub fn count_items(text: &str) -> usize {
    split_list(text).len()
}

pub fn verify_retraction(ctx: &Context, images: &str) -> Result<Outcome, CliError> {
    let phi = ctx.parse_map(images)?;
    let report = phi.is_retraction()?;
    let mut text = format!("ring: {}\nimages: {}\n", ctx.ring_name(), ctx.show_list(phi.images()).join("; "));
    writeln!(text, "retraction: {}", yes(report.is_retraction)).unwrap();
    let mut defects = Vec::new();
    for d in &report.defects {
        let r = ctx.show(&d.residual);
        writeln!(text, "defect f{}: f{}(f) - f{} = {r}", d.index + 1, d.index + 1, d.index + 1).unwrap();
        defects.push(json!({"index": d.index + 1, "residual": r}));
    }
    let json = json!({
        "command": "verify-retraction",
        "ring": ctx.ring_name(),
        "images": ctx.show_list(phi.images()),
        "retraction": report.is_retraction,
        "defects": defects,
    });
    Ok(Outcome::new(text, json, report.is_retraction))
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::NotARetraction => "not a retraction",
        Status::PolynomialRing => "polynomial ring",
        Status::Inconclusive => "inconclusive",
    }
}

pub fn classify_cmd(ctx: &Context, images: &str, bound: u32) -> Result<Outcome, CliError> {
    let phi = ctx.parse_map(images)?;
    let v: Verdict = classify(&phi, bound)?;
    let mut text = format!("ring: {}\nimages: {}\n", ctx.ring_name(), ctx.show_list(phi.images()).join("; "));
    writeln!(text, "status: {}", status_name(v.status)).unwrap();
    if let Some(d) = v.dim {
        let scope = if v.bound_relative { format!("bound-relative, degree {bound}") } else { "exact".into() };
        writeln!(text, "dimension: {d} ({scope})").unwrap();
        match &v.witnesses {
            Some(w) => writeln!(text, "witnesses: {}", ctx.show_list(w).join("; ")).unwrap(),
            None => writeln!(text, "witnesses: none certified").unwrap(),
        }
    }
    for d in &v.defects {
        writeln!(text, "defect f{}: f{}(f) - f{} = {}", d.index + 1, d.index + 1, d.index + 1, ctx.show(&d.residual))
            .unwrap();
    }
    if !v.bounds.is_empty() {
        let b: Vec<String> = v.bounds.iter().map(|(k, d)| format!("{k}={d}")).collect();
        writeln!(text, "bounds: {}", b.join(", ")).unwrap();
    }
    writeln!(text, "reasons:").unwrap();
    for (i, r) in v.reasons.iter().enumerate() {
        writeln!(text, "  {}. {}: {}", i + 1, r.rule.name(), r.detail).unwrap();
        writeln!(text, "     [{}]", r.anchor).unwrap();
    }
    if !v.attempted.is_empty() {
        writeln!(text, "attempted:").unwrap();
        for a in &v.attempted {
            writeln!(text, "  - {a}").unwrap();
        }
    }
    let json = json!({
        "command": "classify",
        "ring": ctx.ring_name(),
        "images": ctx.show_list(phi.images()),
        "status": v.status,
        "dim": v.dim,
        "witnesses": v.witnesses.as_ref().map(|w| ctx.show_list(w)),
        "bound_relative": v.bound_relative,
        "defects": v.defects.iter().map(|d| json!({"index": d.index + 1, "residual": ctx.show(&d.residual)})).collect::<Vec<_>>(),
        "reasons": v.reasons.iter().map(|r| json!({"rule": r.rule.name(), "anchor": r.anchor, "detail": r.detail})).collect::<Vec<_>>(),
        "attempted": v.attempted,
        "bounds": v.bounds,
    });
    Ok(Outcome::new(text, json, v.status != Status::NotARetraction))
}

pub fn enum_monomial(n: usize, max_exp: u32, corpus: Option<&Path>) -> Result<Outcome, CliError> {
    let e = enumerate_monomial_retractions(n, max_exp)?;
    let trivial = e.tuples.iter().filter(|t| t.trivial).count();
    let mut text = format!(
        "monomial retractions of k^[{n}] with exponents <= {max_exp}: {} tuples ({trivial} trivial)\n",
        e.tuples.len()
    );
    for t in &e.tuples {
        let flag = if t.trivial { "  [trivial]" } else { "" };
        writeln!(text, "{}{flag}", t.tuple).unwrap();
    }
    let mut json = json!({
        "command": "enum-monomial",
        "n": n,
        "max_exp": max_exp,
        "count": e.tuples.len(),
        "trivial": trivial,
        "tuples": e.tuples.iter().map(|t| json!({"images": t.tuple, "trivial": t.trivial})).collect::<Vec<_>>(),
        "match": Value::Null,
    });
    let mut ok = true;
    if let Some(path) = corpus {
        let c = Corpus::load(path)?;
        let r = match_families(&e, &c)?;
        ok = r.is_exact();
        writeln!(text, "corpus: {}", path.display()).unwrap();
        for t in &r.unmatched {
            writeln!(text, "unmatched: {t}").unwrap();
        }
        for f in &r.unhit_families {
            writeln!(text, "family not hit: {f}").unwrap();
        }
        for (f, t) in &r.spurious {
            writeln!(text, "not a retraction in the enumeration: {f}: {t}").unwrap();
        }
        writeln!(text, "{}", r.summary()).unwrap();
        json["match"] = json!({
            "corpus": path.display().to_string(),
            "families_total": r.families_total,
            "families_hit": r.families_hit,
            "matched": r.matched,
            "unmatched": r.unmatched,
            "unhit_families": r.unhit_families,
            "spurious": r.spurious.iter().map(|(f, t)| json!({"family": f, "tuple": t})).collect::<Vec<_>>(),
            "overlapping": r.overlapping,
            "exact": ok,
            "summary": r.summary(),
        });
    }
    Ok(Outcome::new(text, json, ok))
}

pub fn expmap_verify(ctx: &Context, images: &str) -> Result<Outcome, CliError> {
    let sigma = ctx.parse_expmap(images)?;
    let r = sigma.verify_axioms()?;
    let names_u = ctx.with_u();
    let names_uv = ctx.with_uv();
    let show_u = |p: &Polynomial| p.display_with(&names_u).to_string();
    let show_uv = |p: &Polynomial| p.display_with(&names_uv).to_string();
    let pass = |b: bool| if b { "pass" } else { "fail" };
    let images_text: Vec<String> = sigma.images().iter().map(show_u).collect();
    let mut text = format!("ring: {}\nimages: {}\n", ctx.ring_name(), images_text.join("; "));
    writeln!(text, "axiom (i) g(x, 0) = x: {}", pass(r.identity_ok)).unwrap();
    for (i, p) in &r.identity_defects {
        writeln!(text, "  residual g{}: {}", i + 1, show_u(p)).unwrap();
    }
    writeln!(text, "axiom (ii) g(x, U + V) = g(g(x, U), V): {}", pass(r.composition_ok)).unwrap();
    for (i, p) in &r.composition_defects {
        writeln!(text, "  residual g{}: {}", i + 1, show_uv(p)).unwrap();
    }
    let json = json!({
        "command": "expmap-verify",
        "ring": ctx.ring_name(),
        "images": images_text,
        "axiom_i_ok": r.identity_ok,
        "axiom_ii_ok": r.composition_ok,
        "axiom_i_defects": r.identity_defects.iter().map(|(i, p)| json!({"index": i + 1, "residual": show_u(p)})).collect::<Vec<_>>(),
        "axiom_ii_defects": r.composition_defects.iter().map(|(i, p)| json!({"index": i + 1, "residual": show_uv(p)})).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(text, json, r.passes()))
}

/// Parses the map and refuses to go on when an axiom fails.
fn checked_expmap(ctx: &Context, images: &str) -> Result<ExpMap, CliError> {
    let sigma = ctx.parse_expmap(images)?;
    let r = sigma.verify_axioms()?;
    if r.passes() {
        return Ok(sigma);
    }
    let failed = if r.identity_ok { "(ii)" } else { "(i)" };
    Err(CliError::Check(format!("{images:?} is not an exponential map: axiom {failed} fails")))
}

pub fn expmap_constants(ctx: &Context, images: &str, bound: u32) -> Result<Outcome, CliError> {
    let sigma = checked_expmap(ctx, images)?;
    let c = constants_bounded(&sigma, bound)?;
    let basis = ctx.show_list(&c.basis);
    let mut text = format!("ring: {}\nconstants up to degree {bound}: dimension {}\n", ctx.ring_name(), basis.len());
    for b in &basis {
        writeln!(text, "{b}").unwrap();
    }
    let json = json!({
        "command": "expmap-constants",
        "ring": ctx.ring_name(),
        "bound": bound,
        "dimension": basis.len(),
        "basis": basis,
    });
    Ok(Outcome::new(text, json, true))
}

pub fn expmap_slice(ctx: &Context, images: &str, bound: u32) -> Result<Outcome, CliError> {
    let sigma = checked_expmap(ctx, images)?;
    let slice = find_local_slice(&sigma, bound)?;
    let mut text = format!("ring: {}\n", ctx.ring_name());
    let mut json = json!({"command": "expmap-slice", "ring": ctx.ring_name(), "bound": bound});
    match &slice {
        SliceOutcome::AllConstant { .. } => {
            writeln!(text, "every monomial of degree <= {bound} is constant; no slice").unwrap();
            json["slice"] = Value::Null;
        }
        SliceOutcome::Slice(info) => {
            writeln!(text, "slice: {}", ctx.show(&info.slice)).unwrap();
            writeln!(text, "sigma-degree: {}", info.degree).unwrap();
            writeln!(text, "leading coefficient: {}", ctx.show(&info.leading)).unwrap();
            json["slice"] = json!({
                "slice": ctx.show(&info.slice),
                "degree": info.degree,
                "leading": ctx.show(&info.leading),
            });
        }
    }
    let r = localization_identity_check(&sigma, &slice, bound)?;
    if r.applicable {
        writeln!(text, "localization up to degree {bound}: {}", if r.certified { "certified" } else { "not certified" })
            .unwrap();
        writeln!(text, "slice indeterminate over the constants: {}", yes(r.slice_indeterminate)).unwrap();
    } else {
        writeln!(text, "localization: {}", r.note).unwrap();
    }
    let mut identities = Vec::new();
    for id in &r.identities {
        let var = &ctx.vars[id.coordinate];
        let rhs: Vec<String> = id
            .coefficients
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({})", ctx.show(c)),
                1 => format!("({})*s", ctx.show(c)),
                _ => format!("({})*s^{k}", ctx.show(c)),
            })
            .collect();
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
        writeln!(text, "  {var}: a^{} * {var} = {rhs}", id.power).unwrap();
        identities.push(json!({
            "variable": var,
            "power": id.power,
            "coefficients": id.coefficients.iter().map(|(k, c)| json!({"k": k, "c": ctx.show(c)})).collect::<Vec<_>>(),
        }));
    }
    for i in &r.missing {
        writeln!(text, "  {}: no identity up to degree {bound}", ctx.vars[*i]).unwrap();
    }
    json["localization"] = json!({
        "applicable": r.applicable,
        "certified": r.certified,
        "slice_indeterminate": r.slice_indeterminate,
        "identities": identities,
        "missing": r.missing.iter().map(|i| ctx.vars[*i].clone()).collect::<Vec<_>>(),
        "note": r.note,
    });
    Ok(Outcome::new(text, json, true))
}

pub fn expmap_ml(ctx: &Context, maps: &[String], bound: u32) -> Result<Outcome, CliError> {
    let sigmas = maps.iter().map(|m| checked_expmap(ctx, m)).collect::<Result<Vec<_>, _>>()?;
    let c = ml_bounded(&sigmas, bound)?;
    let basis = ctx.show_list(&c.basis);
    let mut text = format!(
        "ring: {}\ncommon constants of {} maps up to degree {bound} (upper approximation of ML): dimension {}\n",
        ctx.ring_name(),
        sigmas.len(),
        basis.len()
    );
    for b in &basis {
        writeln!(text, "{b}").unwrap();
    }
    let json = json!({
        "command": "expmap-ml",
        "ring": ctx.ring_name(),
        "maps": sigmas.len(),
        "bound": bound,
        "dimension": basis.len(),
        "basis": basis,
    });
    Ok(Outcome::new(text, json, true))
}

pub fn grading(ctx: &Context, weights: &WeightVector, gens: &str) -> Result<Outcome, CliError> {
    if weights.len() != ctx.n() {
        return Err(CliError::Usage(format!("{} weights given for {} variables", weights.len(), ctx.n())));
    }
    let gens = ctx.parse_images(gens)?;
    let algebra = SubalgebraPresentation::new(ctx.ring(), &gens)?;
    let r = grading_effective(&algebra, weights)?;
    let shown = ctx.show_list(algebra.generators());
    let degrees: Vec<String> = r.degrees.iter().map(|d| d.to_string()).collect();
    let text = format!(
        "ring: {}\nweights: {weights}\ngenerators: {}\ndegrees: {}\ninduced grading effective (A_0 != A): {}\n",
        ctx.ring_name(),
        shown.join("; "),
        degrees.join(", "),
        yes(r.effective)
    );
    let json = json!({
        "command": "grading",
        "ring": ctx.ring_name(),
        "weights": weights.0,
        "generators": shown,
        "degrees": r.degrees,
        "effective": r.effective,
    });
    Ok(Outcome::new(text, json, r.effective))
}

pub fn kernel_check(ctx: &Context, images: &str, h: &str, bound: u32) -> Result<Outcome, CliError> {
    let phi = ctx.parse_map(images)?;
    let h = ctx.parse_one(h, "--h")?;
    let r = kernel_principal_check(&phi, &h, bound)?;
    let mut text = format!("ring: {}\nimages: {}\nh: {}\n", ctx.ring_name(), ctx.show_list(phi.images()).join("; "), ctx.show(&h));
    match &r.image_of_h {
        Some(p) => writeln!(text, "phi(h) = {} != 0", ctx.show(p)).unwrap(),
        None => writeln!(text, "phi(h) = 0").unwrap(),
    }
    if let Some(w) = &r.witness {
        writeln!(text, "h does not divide b - phi(b) for b = {}", ctx.show(w)).unwrap();
    }
    writeln!(text, "kernel principal up to degree {bound}: {}", yes(r.holds)).unwrap();
    let json = json!({
        "command": "kernel-check",
        "ring": ctx.ring_name(),
        "h": ctx.show(&h),
        "bound": bound,
        "holds": r.holds,
        "image_of_h": r.image_of_h.as_ref().map(|p| ctx.show(p)),
        "witness": r.witness.as_ref().map(|p| ctx.show(p)),
    });
    Ok(Outcome::new(text, json, r.holds))
}

pub fn member(ctx: &Context, gens: &str, f: &str, bound: u32) -> Result<Outcome, CliError> {
    let gens = ctx.parse_images(gens)?;
    let f = ctx.parse_one(f, "--f")?;
    let algebra = SubalgebraPresentation::new(ctx.ring(), &gens)?;
    let m = member_bounded(&f, &algebra, bound)?;
    let shown = ctx.show_list(algebra.generators());
    let mut text = format!("ring: {}\ngenerators: {}\nf: {}\n", ctx.ring_name(), shown.join("; "), ctx.show(&f));
    let t = Context::fresh_names(algebra.len());
    let certificate = match &m {
        Membership::Certificate(c) => {
            let rel = c.relation.display_with(&t).to_string();
            writeln!(text, "member up to degree {bound}: yes\ncertificate: f = P({}) with P = {rel}", t.join(", "))
                .unwrap();
            Some(rel)
        }
        Membership::NotFound { .. } => {
            writeln!(text, "member up to degree {bound}: no").unwrap();
            None
        }
    };
    let json = json!({
        "command": "member",
        "ring": ctx.ring_name(),
        "generators": shown,
        "f": ctx.show(&f),
        "bound": bound,
        "member": m.is_member(),
        "certificate": certificate,
    });
    Ok(Outcome::new(text, json, m.is_member()))
}

pub fn dependence(ctx: &Context, gens: &str, bound: u32) -> Result<Outcome, CliError> {
    let gens = ctx.parse_images(gens)?;
    let algebra = SubalgebraPresentation::new(ctx.ring(), &gens)?;
    let d = dependence_bounded(&algebra, bound)?;
    let shown = ctx.show_list(algebra.generators());
    let t = Context::fresh_names(algebra.len());
    let mut text = format!("ring: {}\ngenerators: {}\n", ctx.ring_name(), shown.join("; "));
    let relation = match &d {
        Dependence::Witness(w) => {
            let rel = w.relation.display_with(&t).to_string();
            writeln!(text, "relation of degree <= {bound}: {rel} = 0 at ({})", t.join(", ")).unwrap();
            Some(rel)
        }
        Dependence::NoneFound { .. } => {
            writeln!(text, "no relation of degree <= {bound}").unwrap();
            None
        }
    };
    let json = json!({
        "command": "dependence",
        "ring": ctx.ring_name(),
        "generators": shown,
        "bound": bound,
        "independent": d.is_independent(),
        "relation": relation,
    });
    Ok(Outcome::new(text, json, true))
}

pub fn normalize(ctx: &Context, images: &str, bound: u32) -> Result<Outcome, CliError> {
    let phi = ctx.parse_map(images)?;
    let n = normalize_generators(&phi, bound)?;
    let mut text = format!("ring: {}\nimages: {}\n", ctx.ring_name(), ctx.show_list(phi.images()).join("; "));
    let (ok, normalized, reason) = match &n {
        Normalization::Normalized(psi) => {
            let shown = ctx.show_list(psi.images());
            writeln!(text, "normalized: {}", shown.join("; ")).unwrap();
            (true, Some(shown), None)
        }
        Normalization::NotNormalizable(why) => {
            writeln!(text, "not normalizable: {why}").unwrap();
            (false, None, Some(why.clone()))
        }
    };
    let json = json!({
        "command": "normalize",
        "ring": ctx.ring_name(),
        "images": ctx.show_list(phi.images()),
        "bound": bound,
        "normalized": normalized,
        "reason": reason,
    });
    Ok(Outcome::new(text, json, ok))
}
