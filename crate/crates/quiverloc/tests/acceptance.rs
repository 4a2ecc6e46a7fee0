//! Acceptance suite: one test per criterion, each printing a pass line
//! with its runtime and asserting the stated budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use quiverloc::*;

fn finish(name: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {name}: PASS ({elapsed:.2?})");
    assert!(
        elapsed < limit,
        "criterion {name} exceeded its {limit:?} budget: {elapsed:?}"
    );
}

fn budget(n: usize) -> EnumerationBudget {
    EnumerationBudget {
        max_carrier: n,
        max_vertices: n,
        max_arrows: n,
        ..EnumerationBudget::default()
    }
}

fn pairs(items: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    items
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

#[test]
fn criterion_1_worked_examples() {
    let started = Instant::now();

    // locality set of the three-arrow quiver with a loop
    let q = Quiver::new(
        ["x", "y", "z"],
        [("alpha", "x", "y"), ("beta", "y", "z"), ("gamma", "y", "y")],
    )
    .unwrap();
    let x = locality_of_quiver(&q);
    assert_eq!(
        *x.relation(),
        pairs(&[
            ("alpha", "beta"),
            ("alpha", "gamma"),
            ("gamma", "gamma"),
            ("gamma", "beta"),
        ])
    );

    // quiver of the two-element locality set: three vertices, target of
    // alpha equal to source of beta
    let ab = LocalitySet::new(["alpha", "beta"], [("alpha", "beta")]).unwrap();
    let derived = quiver_of_locality(&ab);
    assert_eq!(derived.vertices().len(), 3);
    let alpha = derived.arrow("alpha").unwrap().clone();
    let beta = derived.arrow("beta").unwrap().clone();
    assert_eq!(alpha.target, beta.source);
    assert_ne!(alpha.source, beta.target);

    // regular hull of the four-element example adds exactly (alpha, beta)
    let four = LocalitySet::new(
        ["alpha", "beta1", "alpha1", "beta"],
        [("alpha", "beta1"), ("alpha1", "beta1"), ("alpha1", "beta")],
    )
    .unwrap();
    let hull = regular_hull(&four);
    let mut expected = four.relation().clone();
    expected.insert(("alpha".to_string(), "beta".to_string()));
    assert_eq!(*hull.relation(), expected);

    // full cover of the two-arrows-into-z quiver drops w and splits z
    let base = Quiver::new(
        ["x", "y", "z", "w"],
        [("alpha", "x", "z"), ("beta", "y", "z")],
    )
    .unwrap();
    let FullCoverResult { cover, projection } = full_cover(&base);
    assert_eq!(cover.vertices(), ["alpha.s", "alpha.t", "beta.s", "beta.t"]);
    assert!(cover.is_full());
    assert!(projection.is_hom(&cover, &base));
    assert_eq!(projection.vertex_map()["alpha.t"], "z");
    assert_eq!(projection.vertex_map()["beta.t"], "z");
    assert_eq!(projection.vertex_map()["alpha.s"], "x");
    assert_eq!(projection.vertex_map()["beta.s"], "y");
    assert!(!projection.vertex_map().values().any(|v| v == "w"));

    // the full example is canonically isomorphic to its cover
    let full = Quiver::new(
        ["x", "y", "z", "w"],
        [("alpha", "x", "z"), ("beta", "y", "z"), ("gamma", "z", "w")],
    )
    .unwrap();
    let cover = full_cover(&full).cover;
    assert!(canonical_iso(&full, &cover).unwrap().is_some());

    finish("1 (worked examples)", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_roundtrips_exhaustive() {
    let started = Instant::now();
    let report = verify_roundtrips(3).unwrap();
    assert!(
        report.holds(),
        "counterexample: {:?}",
        report.counterexample
    );
    assert_eq!(report.locality_sets_scanned, vec![1, 2, 16, 512]);
    assert_eq!(report.quivers_scanned, 910);
    finish("2 (round trips, exhaustive)", started, Duration::from_secs(10));
}

#[test]
fn criterion_3_path_preservation() {
    let started = Instant::now();
    let mut quivers = 0u64;
    for v in 0..=3 {
        for a in 0..=3 {
            for q in enumerate_quivers(v, a, &budget(3)).unwrap() {
                quivers += 1;
                let cover = full_cover(&q).cover;
                let original: Vec<Vec<Label>> = enumerate_paths(&q, 4)
                    .into_iter()
                    .map(|p| p.arrows().to_vec())
                    .collect();
                let derived: Vec<Vec<Label>> = enumerate_paths(&cover, 4)
                    .into_iter()
                    .map(|p| p.arrows().to_vec())
                    .collect();
                assert_eq!(original, derived, "paths changed under the cover of {q:?}");
            }
        }
    }
    assert_eq!(quivers, 910);
    finish("3 (path preservation)", started, Duration::from_secs(10));
}

#[test]
fn criterion_4_fine_axioms() {
    let started = Instant::now();

    for v in 0..=3 {
        for a in 0..=3 {
            for q in enumerate_quivers(v, a, &budget(3)).unwrap() {
                assert!(
                    check_path_semigroup_fine(&q, 4),
                    "path semigroup of {q:?} is not fine"
                );
            }
        }
    }

    let mut structures = 0u64;
    for n in 0..=2 {
        for s in enumerate_fine_semigroups(n, &budget(3)).unwrap() {
            structures += 1;
            assert!(s.check_fine());
            assert!(s.check_chain_closure(4), "chain closure fails on {s:?}");
        }
    }
    // deterministic sample of the size-3 stream
    for s in enumerate_fine_semigroups(3, &budget(3)).unwrap().step_by(17) {
        structures += 1;
        assert!(s.check_fine());
        assert!(s.check_chain_closure(4), "chain closure fails on {s:?}");
    }
    assert!(structures >= 19 + 17);

    finish("4 (fine axioms)", started, Duration::from_secs(60));
}

#[test]
fn criterion_5_freeness_at_desk_scale() {
    let started = Instant::now();
    let mut verified = 0u64;

    let mut semigroups: Vec<FinitePartialSemigroup> = Vec::new();
    for n in 0..=2 {
        semigroups.extend(enumerate_fine_semigroups(n, &budget(2)).unwrap());
    }

    for n in 0..=2 {
        for x in enumerate_locality_sets(n, &budget(2)).unwrap() {
            if !x.is_regular() {
                continue;
            }
            for s in &semigroups {
                for f in all_locality_maps(&x, s) {
                    let report = verify_freeness(&x, s, &f, 4).unwrap();
                    assert!(
                        report.holds(),
                        "freeness fails for {x:?} into {s:?}: {:?}",
                        report.first_violation
                    );
                    verified += 1;
                }
            }
        }
    }
    assert!(verified > 100, "expected a substantial enumeration, got {verified}");
    finish("5 (freeness at desk scale)", started, Duration::from_secs(60));
}

fn all_locality_maps(
    x: &LocalitySet,
    s: &FinitePartialSemigroup,
) -> Vec<LocalityMapWitness> {
    let codomain = s.to_locality_set();
    let carrier = s.carrier();
    if x.is_empty() {
        return vec![LocalityMapWitness::new(
            x.clone(),
            codomain,
            Default::default(),
        )
        .unwrap()];
    }
    if carrier.is_empty() {
        return Vec::new();
    }
    let n = x.elements().len();
    let mut maps = Vec::new();
    let total = carrier.len().pow(n as u32);
    for code in 0..total {
        let mut rem = code;
        let mapping = x
            .elements()
            .iter()
            .map(|e| {
                let image = carrier[rem % carrier.len()].clone();
                rem /= carrier.len();
                (e.clone(), image)
            })
            .collect();
        let witness = LocalityMapWitness::new(x.clone(), codomain.clone(), mapping).unwrap();
        if witness.is_locality_map() {
            maps.push(witness);
        }
    }
    maps
}

#[test]
fn criterion_6_two_implementation_guards() {
    let started = Instant::now();

    for v in 0..=3 {
        for a in 0..=3 {
            for q in enumerate_quivers(v, a, &budget(3)).unwrap() {
                assert_eq!(q.is_full(), q.is_full_via_fibers(), "guards split on {q:?}");
            }
        }
    }

    for n in 0..=3 {
        for x in enumerate_locality_sets(n, &budget(3)).unwrap() {
            assert_eq!(
                regular_hull(&x),
                brute_regular_hull(&x, &budget(3)).unwrap(),
                "hull guards split on {x:?}"
            );
        }
    }

    let one = || Coefficient::from_integer(1.into());
    for v in 0..=3 {
        for a in 0..=3 {
            for q in enumerate_quivers(v, a, &budget(3)).unwrap() {
                let paths = enumerate_paths(&q, 3);
                for p in &paths {
                    for r in &paths {
                        let product = AlgebraElement::monomial(p.clone(), one())
                            .mul(&AlgebraElement::monomial(r.clone(), one()))
                            .unwrap();
                        assert_eq!(
                            product.is_zero(),
                            !p.composable(r).unwrap(),
                            "algebra and composability disagree on {q:?}"
                        );
                    }
                }
            }
        }
    }

    finish("6 (two-implementation guards)", started, Duration::from_secs(10));
}

#[test]
fn criterion_7_serialization_and_dot() {
    let started = Instant::now();

    let roundtrip = |doc: Document| {
        let text = serialize_document(&doc).unwrap();
        let parsed = parse_document(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(serialize_document(&parsed).unwrap(), text);
        if let Document::Quiver(q) = &doc {
            assert_eq!(emit_dot(q), emit_dot(q));
        }
    };

    // exhaustive at size <= 2
    for n in 0..=2 {
        for x in enumerate_locality_sets(n, &budget(2)).unwrap() {
            roundtrip(Document::LocalitySet(x));
        }
        for s in enumerate_fine_semigroups(n, &budget(2)).unwrap() {
            roundtrip(Document::PartialSemigroup(s));
        }
    }
    for v in 0..=2 {
        for a in 0..=2 {
            for q in enumerate_quivers(v, a, &budget(2)).unwrap() {
                roundtrip(Document::Quiver(q));
            }
        }
    }

    // randomized at size 3: locality sets and quivers from a fixed seed,
    // partial semigroups from the exhaustive stream
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let labels: Vec<String> = (1..=3).map(|i| i.to_string()).collect();
    let mut cases = 0u64;
    for _ in 0..500 {
        let mask: u16 = rng.random();
        let mut rel = Vec::new();
        for k in 0..9 {
            if mask >> k & 1 == 1 {
                rel.push((labels[k / 3].clone(), labels[k % 3].clone()));
            }
        }
        roundtrip(Document::LocalitySet(
            LocalitySet::new(labels.clone(), rel).unwrap(),
        ));
        cases += 1;

        let arrows: Vec<(String, String, String)> = (0..3)
            .map(|i| {
                (
                    format!("{}", i + 1),
                    labels[rng.random_range(0..3)].clone(),
                    labels[rng.random_range(0..3)].clone(),
                )
            })
            .collect();
        let q = Quiver::new(labels.clone(), arrows).unwrap();
        assert_eq!(emit_dot(&q), emit_dot(&q));
        roundtrip(Document::Quiver(q));
        cases += 1;
    }
    for s in enumerate_fine_semigroups(3, &budget(3)).unwrap() {
        roundtrip(Document::PartialSemigroup(s));
        cases += 1;
    }
    assert!(cases >= 1000, "expected at least 1000 size-3 cases, got {cases}");

    // DOT output does not depend on construction order
    let a = Quiver::new(["x", "y"], [("e1", "x", "y"), ("e2", "y", "x")]).unwrap();
    let b = Quiver::new(["y", "x"], [("e2", "y", "x"), ("e1", "x", "y")]).unwrap();
    assert_eq!(emit_dot(&a), emit_dot(&b));

    finish("7 (serialization and dot)", started, Duration::from_secs(5));
}
