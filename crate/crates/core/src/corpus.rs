//! Parametric families of retractions stored as line-delimited text.
//!
//! One record per line, `#` starts a comment:
//!
//! ```text
//! family_id | n | f1 ; f2 ; ... | generators of the image algebra [| domains]
//! ```
//!
//! Images and generators are polynomial templates in `x, y, z` whose
//! exponents may use the nonnegative integer parameters `l` and `m`
//! (e.g. `x*y^l`, `x^(l*m)*z`). The optional last column declares
//! polynomial parameters with explicit sample values, separated by `;`:
//! `g in {1, x, y + 1}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{Enumeration, MonomialTuple};
use crate::parse::{Bindings, Grammar, Template};
use crate::poly::{default_var_names, Polynomial, Ring};

/// Integer parameters a template may use.
pub const INT_PARAMS: [&str; 2] = ["l", "m"];

#[derive(Clone, Debug)]
pub struct FamilyPattern {
    pub id: String,
    pub n: usize,
    pub images: Vec<Template>,
    pub generators: Vec<Template>,
    /// Polynomial parameters and their sample values.
    pub domains: Vec<(String, Vec<Template>)>,
}

/// One parameter assignment of a family.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: String,
    pub ints: Vec<(String, u32)>,
    pub polys: Vec<(String, String)>,
    pub images: Vec<Polynomial>,
    pub generators: Vec<Polynomial>,
}

impl Instance {
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.ints.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.extend(self.polys.iter().map(|(k, v)| format!("{k}={v}")));
        format!("{}[{}]", self.family, parts.join(", "))
    }
}

impl FamilyPattern {
    /// Integer parameters that actually occur in the images.
    pub fn int_params(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for t in self.images.iter().chain(&self.generators) {
            for p in t.params().0 {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    /// All assignments with every integer parameter in `0..=max_param` and
    /// every polynomial parameter over its declared samples.
    pub fn instantiate(&self, field: FieldSpec, max_param: u32) -> Result<Vec<Instance>> {
        let ring = Ring::new(field, self.n);
        let ints = self.int_params();
        let mut int_choices: Vec<Vec<(String, u32)>> = vec![Vec::new()];
        for p in &ints {
            int_choices = int_choices
                .into_iter()
                .flat_map(|prefix| {
                    (0..=max_param).map(move |v| {
                        let mut next = prefix.clone();
                        next.push((p.clone(), v));
                        next
                    })
                })
                .collect();
        }
        let mut poly_choices: Vec<Vec<(String, Template)>> = vec![Vec::new()];
        for (name, samples) in &self.domains {
            poly_choices = poly_choices
                .into_iter()
                .flat_map(|prefix| {
                    samples.iter().map(move |s| {
                        let mut next = prefix.clone();
                        next.push((name.clone(), s.clone()));
                        next
                    })
                })
                .collect();
        }
        let err = |e: crate::parse::ParseError| Error::Corpus { record: self.id.clone(), message: e.to_string() };
        let mut out = Vec::new();
        for ia in &int_choices {
            for pa in &poly_choices {
                let mut b = Bindings { ints: ia.iter().cloned().collect::<HashMap<_, _>>(), ..Default::default() };
                for (name, t) in pa {
                    let v = t.instantiate(ring, &Bindings::default()).map_err(err)?;
                    b.polys.insert(name.clone(), v);
                }
                let images = self.images.iter().map(|t| t.instantiate(ring, &b)).collect::<std::result::Result<Vec<_>, _>>().map_err(err)?;
                let generators = self.generators.iter().map(|t| t.instantiate(ring, &b)).collect::<std::result::Result<Vec<_>, _>>().map_err(err)?;
                out.push(Instance {
                    family: self.id.clone(),
                    ints: ia.clone(),
                    polys: pa.iter().map(|(k, t)| (k.clone(), t.source().to_string())).collect(),
                    images,
                    generators,
                });
            }
        }
        Ok(out)
    }

    /// Distinct monomial tuples of this family with every exponent at most
    /// `max_exp`.
    pub fn monomial_instances(&self, max_exp: u32) -> Result<BTreeSet<MonomialTuple>> {
        let mut out = BTreeSet::new();
        for inst in self.instantiate(FieldSpec::Rationals, max_exp)? {
            let t = MonomialTuple::from_images(&inst.images).map_err(|e| Error::Corpus {
                record: self.id.clone(),
                message: format!("not a monomial family: {e}"),
            })?;
            if t.max_exponent() <= max_exp {
                out.insert(t);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub families: Vec<FamilyPattern>,
}

fn split_templates(text: &str, grammar: &Grammar, record: &str) -> Result<Vec<Template>> {
    text.split(';')
        .map(|s| {
            Template::parse(s, grammar).map_err(|e| Error::Corpus {
                record: record.to_string(),
                message: format!("template `{}`: {e}", s.trim()),
            })
        })
        .collect()
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self> {
        let mut families = Vec::new();
        let mut seen = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            let record = cols.first().copied().filter(|s| !s.is_empty()).map(String::from)
                .unwrap_or_else(|| format!("line {}", lineno + 1));
            let bad = |message: String| Error::Corpus { record: record.clone(), message };
            if !(4..=5).contains(&cols.len()) {
                return Err(bad(format!("expected 4 or 5 `|`-separated columns, found {}", cols.len())));
            }
            if !seen.insert(record.clone()) {
                return Err(bad("duplicate family id".into()));
            }
            let n: usize = cols[1].parse().map_err(|_| bad(format!("bad variable count `{}`", cols[1])))?;
            if !(1..=3).contains(&n) {
                return Err(bad(format!("variable count {n} outside 1..=3")));
            }
            let vars = default_var_names(n);
            let mut domains = Vec::new();
            let mut poly_params = Vec::new();
            if let Some(spec) = cols.get(4) {
                for decl in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let (name, values) = decl
                        .split_once(" in ")
                        .ok_or_else(|| bad(format!("domain `{decl}` must read `name in {{...}}`")))?;
                    let values = values
                        .trim()
                        .strip_prefix('{')
                        .and_then(|v| v.strip_suffix('}'))
                        .ok_or_else(|| bad(format!("domain `{decl}` needs braces")))?;
                    let grammar = Grammar::polynomial(&vars).map_err(|e| bad(e.to_string()))?;
                    let samples = values
                        .split(',')
                        .map(|s| Template::parse(s, &grammar).map_err(|e| bad(format!("sample `{}`: {e}", s.trim()))))
                        .collect::<Result<Vec<_>>>()?;
                    poly_params.push(name.trim().to_string());
                    domains.push((name.trim().to_string(), samples));
                }
            }
            let grammar = Grammar {
                vars,
                int_params: INT_PARAMS.iter().map(|s| s.to_string()).collect(),
                poly_params,
            };
            let images = split_templates(cols[2], &grammar, &record)?;
            if images.len() != n {
                return Err(bad(format!("expected {n} images, found {}", images.len())));
            }
            let generators = split_templates(cols[3], &grammar, &record)?;
            families.push(FamilyPattern { id: record, n, images, generators, domains });
        }
        Ok(Corpus { families })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Corpus {
            record: path.display().to_string(),
            message: format!("unreadable: {e}"),
        })?;
        Self::parse(&text)
    }

    pub fn to_records(&self) -> Vec<CorpusRecord> {
        self.families
            .iter()
            .map(|f| CorpusRecord {
                id: f.id.clone(),
                n: f.n,
                images: f.images.iter().map(|t| t.source().to_string()).collect(),
                generators: f.generators.iter().map(|t| t.source().to_string()).collect(),
                domains: f
                    .domains
                    .iter()
                    .map(|(k, v)| (k.clone(), v.iter().map(|t| t.source().to_string()).collect()))
                    .collect(),
            })
            .collect()
    }
}

/// JSON export shape of one family.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusRecord {
    pub id: String,
    pub n: usize,
    pub images: Vec<String>,
    pub generators: Vec<String>,
    pub domains: BTreeMap<String, Vec<String>>,
}

/// Comparison of an enumeration against a family corpus.
#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub max_exp: u32,
    pub families_total: usize,
    pub families_hit: usize,
    /// Families with no instantiation among the enumerated tuples.
    pub unhit_families: Vec<String>,
    /// Distinct tuples (per family) that the family instantiates.
    pub family_hits: Vec<(String, usize)>,
    pub matched: usize,
    /// Nontrivial enumerated tuples no family produces.
    pub unmatched: Vec<MonomialTuple>,
    /// Enumerated tuples generating `k`; not matched against families.
    pub flagged_trivial: Vec<MonomialTuple>,
    /// Family instantiations in range that the enumeration does not contain.
    pub spurious: Vec<(String, MonomialTuple)>,
    /// Tuples produced by two or more families.
    pub overlapping: usize,
}

impl MatchReport {
    pub fn is_exact(&self) -> bool {
        self.unmatched.is_empty() && self.unhit_families.is_empty() && self.spurious.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}/{} families matched, {} unmatched tuples",
            self.families_hit,
            self.families_total,
            self.unmatched.len()
        )
    }
}

pub fn match_families(enumeration: &Enumeration, corpus: &Corpus) -> Result<MatchReport> {
    let max_exp = enumeration.max_exp;
    let enumerated: BTreeSet<&MonomialTuple> = enumeration.tuples.iter().map(|t| &t.tuple).collect();
    let mut owners: BTreeMap<MonomialTuple, Vec<String>> = BTreeMap::new();
    let mut family_hits = Vec::new();
    let mut unhit = Vec::new();
    let mut spurious = Vec::new();
    let mut considered = 0;
    for fam in corpus.families.iter().filter(|f| f.n == enumeration.n) {
        considered += 1;
        let insts = fam.monomial_instances(max_exp)?;
        let mut hits = 0;
        for t in insts {
            if enumerated.contains(&t) {
                hits += 1;
                owners.entry(t).or_default().push(fam.id.clone());
            } else {
                spurious.push((fam.id.clone(), t));
            }
        }
        if hits == 0 {
            unhit.push(fam.id.clone());
        }
        family_hits.push((fam.id.clone(), hits));
    }
    let unmatched: Vec<MonomialTuple> = enumeration.nontrivial().filter(|t| !owners.contains_key(*t)).cloned().collect();
    let matched = enumeration.nontrivial().filter(|t| owners.contains_key(*t)).count();
    Ok(MatchReport {
        max_exp,
        families_total: considered,
        families_hit: considered - unhit.len(),
        unhit_families: unhit,
        family_hits,
        matched,
        unmatched,
        flagged_trivial: enumeration.trivial().cloned().collect(),
        spurious,
        overlapping: owners.values().filter(|v| v.len() > 1).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::enumerate_monomial_retractions;

    const SMALL: &str = "
        # two families
        A | 2 | x ; x^m | x
        B | 2 | x*y^m ; 1 | x*y^m
    ";

    #[test]
    fn parses_and_instantiates() {
        let c = Corpus::parse(SMALL).unwrap();
        assert_eq!(c.families.len(), 2);
        let insts = c.families[0].monomial_instances(2).unwrap();
        let texts: Vec<String> = insts.iter().map(|t| t.to_string()).collect();
        assert_eq!(texts, vec!["x; 1", "x; x", "x; x^2"]);
    }

    #[test]
    fn domains_and_products_in_exponents() {
        let c = Corpus::parse("F | 3 | x*y^l ; 1 ; x^m*y^(l*m) | x*y^l\nG | 3 | x ; x^m ; (x^m - y)*g + z | x ; (x^m - y)*g + z | g in {1, x, y + 1}").unwrap();
        let insts = c.families[0].monomial_instances(2).unwrap();
        assert!(insts.iter().all(|t| t.max_exponent() <= 2));
        let g = c.families[1].instantiate(FieldSpec::Rationals, 1).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[5].describe(), "G[m=1, g=y + 1]");
    }

    #[test]
    fn empty_enumeration_hits_nothing() {
        let c = Corpus::parse(SMALL).unwrap();
        let e = Enumeration { n: 2, max_exp: 2, tuples: vec![] };
        let r = match_families(&e, &c).unwrap();
        assert_eq!(r.unhit_families, vec!["A".to_string(), "B".to_string()]);
        assert!(r.unmatched.is_empty());
    }

    #[test]
    fn partial_corpus_leaves_unmatched() {
        let c = Corpus::parse(SMALL).unwrap();
        let e = enumerate_monomial_retractions(2, 1).unwrap();
        let r = match_families(&e, &c).unwrap();
        assert_eq!(r.families_hit, 2);
        assert!(!r.unmatched.is_empty());
        assert_eq!(r.overlapping, 1); // (x, 1) from both families
    }

    #[test]
    fn load_errors_name_the_record() {
        let err = Corpus::parse("Z | 2 | x ; w | x").unwrap_err();
        assert!(err.to_string().starts_with("corpus record Z:"), "{err}");
        let err = Corpus::parse("Z | 2 | x | x").unwrap_err();
        assert!(err.to_string().contains("expected 2 images"));
        let err = Corpus::parse("Z | 2 | x ; y").unwrap_err();
        assert!(err.to_string().contains("columns"));
        let err = Corpus::parse("Z | 2 | x ; y | x\nZ | 2 | x ; y | x").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
        assert!(Corpus::load(Path::new("/nonexistent/corpus.txt")).is_err());
    }
}
