//! Strategies and law checks shared by the property tests and the
//! acceptance suite. Each check runs a deterministic proptest runner and
//! returns the number of cases executed.

#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use retractlab::endo::EndoMap;
use retractlab::expmap::{constants_bounded, sigma_degree_lc, ExpMap};
use retractlab::grading::{grading_effective, homogeneous_components, WeightVector};
use retractlab::parse::{parse_expmap_image, parse_polynomial};
use retractlab::poly::default_var_names;
use retractlab::subalgebra::{dependence_bounded, member_bounded, Dependence, Membership, SubalgebraPresentation};
use retractlab::{ExponentVector, FieldSpec, Polynomial, Ring};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map(|_| cases).map_err(|e| e.to_string())
}

pub fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        3 => Just(FieldSpec::Rationals),
        1 => Just(FieldSpec::prime(2).unwrap()),
        1 => Just(FieldSpec::prime(5).unwrap()),
        1 => Just(FieldSpec::prime(101).unwrap()),
    ]
}

/// Sparse polynomial with at most `terms` terms, exponents `<= max_exp`
/// and coefficients `a/b` with `|a| <= 7`, `1 <= b <= 3`.
pub fn poly_in(ring: Ring, terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars;
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -7i64..=7, 1i64..=3), 0..=terms).prop_map(
        move |raw| {
            let f = ring.field;
            let terms = raw.into_iter().filter_map(|(e, a, b)| {
                let c = f.div(&f.from_i64(a), &f.from_i64(b)).ok()?;
                Some((ExponentVector::new(e), c))
            });
            Polynomial::from_terms(ring, terms)
        },
    )
}

pub fn ring_strategy(max_vars: usize) -> impl Strategy<Value = Ring> {
    (field_strategy(), 1..=max_vars).prop_map(|(f, n)| Ring::new(f, n))
}

/// Homomorphism law: `(f + g)(h) = f(h) + g(h)` and `(f g)(h) = f(h) g(h)`.
pub fn substitution_homomorphism(cases: u32) -> Result<u32, String> {
    let strategy = ring_strategy(3).prop_flat_map(|ring| {
        let target = Ring::new(ring.field, 2);
        (
            poly_in(ring, 4, 3),
            poly_in(ring, 4, 3),
            prop::collection::vec(poly_in(target, 3, 2), ring.nvars),
        )
    });
    run(cases, strategy, |(f, g, images)| {
        let lhs = (&f + &g).substitute_into(&images).unwrap();
        let rhs = &f.substitute_into(&images).unwrap() + &g.substitute_into(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&f * &g).substitute_into(&images).unwrap();
        let rhs = &f.substitute_into(&images).unwrap() * &g.substitute_into(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// Exponential maps used by the domain-property checks.
pub fn sample_expmaps() -> Vec<ExpMap> {
    let specs: [(&str, &str); 7] = [
        ("Q", "x + U; y"),
        ("Q", "x; y + x*U"),
        ("Q", "x; y + x*U; z + 2*y*U + x*U^2"),
        ("Q", "x + U; y + 2*x*U + U^2"),
        ("Q", "x; y + x^2*U; z + y*U + 1/2*x^2*U^2"),
        ("F5", "x + U + U^5; y"),
        ("F3", "x; y + x*U + x^3*U^3"),
    ];
    specs.iter().map(|(f, s)| expmap(f.parse().unwrap(), s)).collect()
}

pub fn expmap(field: FieldSpec, images: &str) -> ExpMap {
    let parts: Vec<&str> = images.split(';').collect();
    let vars = default_var_names(parts.len());
    let imgs = parts.iter().map(|s| parse_expmap_image(s, field, &vars).unwrap()).collect();
    ExpMap::new(Ring::new(field, parts.len()), imgs).unwrap()
}

/// `deg_sigma(b c) = deg_sigma(b) + deg_sigma(c)`, `lc` multiplicative, and
/// a product of sigma-degree zero has factors of sigma-degree zero.
pub fn sigma_degree_additivity(cases: u32) -> Result<u32, String> {
    let maps = sample_expmaps();
    let rings: Vec<Ring> = maps.iter().map(|m| m.ring()).collect();
    let strategy = (0..maps.len()).prop_flat_map(move |k| (Just(k), poly_in(rings[k], 3, 2), poly_in(rings[k], 3, 2)));
    run(cases, strategy, |(k, b, c)| {
        let sigma = &maps[k];
        if b.is_zero() || c.is_zero() {
            return Ok(());
        }
        let (db, lb) = sigma_degree_lc(sigma, &b).unwrap();
        let (dc, lc) = sigma_degree_lc(sigma, &c).unwrap();
        let (dbc, lbc) = sigma_degree_lc(sigma, &(&b * &c)).unwrap();
        prop_assert_eq!(dbc, db + dc);
        prop_assert_eq!(lbc, &lb * &lc);
        if dbc == 0 {
            prop_assert!(db == 0 && dc == 0);
        }
        Ok(())
    })
}

/// Components sum to `f`, and the components of a product are the
/// convolution of the components of its factors.
pub fn homogeneous_laws(cases: u32) -> Result<u32, String> {
    let strategy = ring_strategy(3).prop_flat_map(|ring| {
        (poly_in(ring, 5, 3), poly_in(ring, 5, 3), prop::collection::vec(-3i64..=3, ring.nvars))
    });
    run(cases, strategy, |(f, g, w)| {
        let w = WeightVector(w);
        let cf = homogeneous_components(&f, &w).unwrap();
        let sum = cf.values().fold(Polynomial::zero(f.ring()), |acc, c| &acc + c);
        prop_assert_eq!(&sum, &f);
        let cg = homogeneous_components(&g, &w).unwrap();
        let cfg = homogeneous_components(&(&f * &g), &w).unwrap();
        let mut expected = std::collections::BTreeMap::new();
        for (a, fa) in &cf {
            for (b, gb) in &cg {
                let e = expected.entry(a + b).or_insert_with(|| Polynomial::zero(f.ring()));
                *e = &*e + &(fa * gb);
            }
        }
        expected.retain(|_, p: &mut Polynomial| !p.is_zero());
        prop_assert_eq!(cfg, expected);
        Ok(())
    })
}

/// Printing then parsing gives back the same polynomial.
pub fn parser_round_trip(cases: u32) -> Result<u32, String> {
    let strategy = ring_strategy(5).prop_flat_map(|ring| poly_in(ring, 6, 4));
    run(cases, strategy, |f| {
        let vars = default_var_names(f.nvars());
        let text = f.display_with(&vars).to_string();
        let back = parse_polynomial(&text, f.field(), &vars).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, f);
        Ok(())
    })
}

/// Certificates from bounded membership and dependence re-verify by
/// substitution, and `P(g)` is always found at `deg P`.
pub fn certificate_reverification(cases: u32) -> Result<u32, String> {
    let strategy = field_strategy().prop_flat_map(|field| {
        let ring = Ring::new(field, 2);
        let fresh = Ring::new(field, 2);
        (prop::collection::vec(poly_in(ring, 3, 2), 1..=2), poly_in(fresh, 4, 2))
    });
    run(cases, strategy, |(gens, relation)| {
        let ring = Ring::new(relation.field(), 2);
        let mut padded = gens.clone();
        padded.resize(2, Polynomial::zero(ring));
        let f = relation.substitute_into(&padded).unwrap();
        let algebra = SubalgebraPresentation::new(ring, &gens).unwrap();
        match member_bounded(&f, &algebra, 4).unwrap() {
            Membership::Certificate(c) => prop_assert!(c.verify(&f, &algebra)),
            Membership::NotFound { .. } => prop_assert!(false, "P(g) not found for deg P <= 4"),
        }
        if let Dependence::Witness(w) = dependence_bounded(&algebra, 3).unwrap() {
            prop_assert!(w.verify(&algebra));
        }
        Ok(())
    })
}

/// `is_retraction(phi)` iff `phi ∘ phi = phi`.
pub fn retraction_iff_idempotent(cases: u32) -> Result<u32, String> {
    let strategy = ring_strategy(3).prop_flat_map(|ring| {
        let single = prop_oneof![
            2 => poly_in(ring, 1, 2).prop_map(|p| {
                // Monic monomials and zeros hit retractions often.
                let lead = p.terms().next().map(|(e, _)| e.clone());
                match lead {
                    Some(e) => Polynomial::monomial(p.ring(), e, p.field().one()),
                    None => p,
                }
            }),
            1 => poly_in(ring, 2, 2),
            1 => (0..ring.nvars).prop_map(move |i| Polynomial::var(ring, i)),
        ];
        (Just(ring), prop::collection::vec(single, ring.nvars))
    });
    run(cases, strategy, |(ring, images)| {
        let phi = EndoMap::new(ring, images).unwrap();
        let report = phi.is_retraction().unwrap();
        prop_assert_eq!(report.is_retraction, phi.compose(&phi).unwrap() == phi);
        Ok(())
    })
}

/// The effective flag is unchanged when the weights are scaled by `k > 0`.
pub fn grading_scaling(cases: u32) -> Result<u32, String> {
    let strategy = (1usize..=3).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=3),
            prop::collection::vec(-3i64..=3, n),
            1i64..=5,
        )
    });
    run(cases, strategy, |(exps, w, k)| {
        let n = w.len();
        let ring = Ring::new(FieldSpec::Rationals, n);
        let gens: Vec<Polynomial> =
            exps.into_iter().map(|e| Polynomial::monomial(ring, ExponentVector::new(e), ring.field.one())).collect();
        let algebra = SubalgebraPresentation::new(ring, &gens).unwrap();
        let a = grading_effective(&algebra, &WeightVector(w.clone())).unwrap();
        let b = grading_effective(&algebra, &WeightVector(w.iter().map(|x| x * k).collect())).unwrap();
        prop_assert_eq!(a.effective, b.effective);
        prop_assert_eq!(b.degrees, a.degrees.iter().map(|d| d * k).collect::<Vec<_>>());
        Ok(())
    })
}

/// Axiom (ii) gives the same verdict with the composite taken either way.
pub fn axiom_symmetry(cases: u32) -> Result<u32, String> {
    let strategy = field_strategy().prop_flat_map(|field| {
        let ext = Ring::new(field, 2);
        poly_in(ext, 3, 3)
    });
    run(cases, strategy, |g| {
        let ring = Ring::new(g.field(), 1);
        let x = Polynomial::var(g.ring(), 0);
        // Force axiom (i) so that only axiom (ii) varies.
        let u = Polynomial::var(g.ring(), 1);
        let g = &x + &(&g * &u);
        let sigma = ExpMap::new(ring, vec![g]).unwrap();
        let a = sigma.verify_axioms().unwrap();
        let b = sigma.verify_axioms_swapped().unwrap();
        prop_assert!(a.identity_ok);
        prop_assert_eq!(a.composition_ok, b.composition_ok);
        prop_assert_eq!(a.composition_defects.len(), b.composition_defects.len());
        Ok(())
    })
}

/// Every vector of a bounded constants basis is fixed by sigma.
pub fn constants_are_fixed(cases: u32) -> Result<u32, String> {
    let maps = sample_expmaps();
    run(cases, (0..maps.len(), 1u32..=3), |(k, bound)| {
        let sigma = &maps[k];
        for b in constants_bounded(sigma, bound).unwrap().basis {
            prop_assert_eq!(sigma.apply(&b).unwrap(), b.extend_vars(sigma.ring().nvars + 1));
        }
        Ok(())
    })
}
