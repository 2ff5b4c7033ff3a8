//! End-to-end acceptance gate. Each test covers one criterion and
//! prints a single pass/fail line; the constructions are re-verified
//! here against independent oracles rather than by trusting the
//! library's own reports.

use ddforge::report::CheckStatus;
use ddforge::scheme::{center_dimension, verify_scheme, AssociationScheme, IntersectionTensor};
use ddforge::seeds::{
    latin_const_diag, latin_decompose, paley_hadamard, skew_bgw, sylvester_hadamard, verify_bgw,
    verify_skew, HadamardMatrix, Symbol,
};
use ddforge::{
    build_s3, build_s4, build_s5, galois::build_field, verify_ddd, DDDParams, IntMatrix, Overall,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

fn criterion(label: &str, budget: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let within = elapsed <= budget;
    let ok = outcome.is_ok() && within;
    println!(
        "criterion {label}: {} ({elapsed:.1?})",
        if ok { "pass" } else { "FAIL" }
    );
    if let Err(e) = outcome {
        resume_unwind(e);
    }
    assert!(within, "{label} took {elapsed:?}, budget {budget:?}");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ddforge"))
}

fn mismatch_names(report: &ddforge::VerificationReport) -> Vec<&str> {
    report
        .checks
        .iter()
        .filter(|c| c.status == CheckStatus::Mismatch)
        .map(|c| c.name.as_str())
        .collect()
}

/// Independent oracle: the intersection numbers recomputed by counting
/// common neighbours vertex triple by vertex triple, with a constancy
/// check over every base pair.
fn assert_tensor_matches_triple_counts(scheme: &AssociationScheme, tensor: &IntersectionTensor) {
    let v = scheme.v as usize;
    let d = scheme.classes.len();
    let class_of = |x: usize, y: usize| -> usize {
        (0..d)
            .find(|&k| scheme.classes[k].get(x, y) == 1)
            .expect("classes partition the pairs")
    };
    for x in 0..v {
        for y in 0..v {
            let k = class_of(x, y);
            for i in 0..d {
                for j in 0..d {
                    let count = (0..v)
                        .filter(|&w| {
                            scheme.classes[i].get(x, w) == 1 && scheme.classes[j].get(w, y) == 1
                        })
                        .count() as i64;
                    assert_eq!(
                        count,
                        tensor.p(i, j, k),
                        "p({i},{j};{k}) differs at base pair ({x},{y})"
                    );
                }
            }
        }
    }
}

#[test]
fn criterion_1_flagship_block_family() {
    criterion("1 (block family n=5 g=4)", Duration::from_secs(5), || {
        let bundle = build_s4(5, 4).unwrap();
        assert_eq!(bundle.report.overall(), Overall::Verified, "{:#?}", bundle.report.checks);
        assert_eq!(
            [bundle.params.v, bundle.params.k, bundle.params.lambda1, bundle.params.lambda2,
             bundle.params.m, bundle.params.n],
            [24, 5, 0, 1, 6, 4]
        );
        assert_eq!(bundle.tensor.d(), 7);
        assert!(bundle.tensor.non_commutative_witness().is_some());
        assert_eq!(center_dimension(&bundle.tensor), 5);
        assert_eq!(bundle.fusion_tensor.d(), 5);
        assert!(bundle.fusion_tensor.is_commutative());

        let dir = tempfile::tempdir().unwrap();
        let status = bin()
            .args(["gen", "s4", "--n", "5", "--g", "4"])
            .arg("--output-dir")
            .arg(dir.path())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    });
}

#[test]
fn criterion_2_flagship_hadamard_family() {
    criterion("2 (Hadamard family n=4 p=9)", Duration::from_secs(60), || {
        let bundle = build_s3(4, 9, None).unwrap();
        assert_eq!(
            bundle.report.overall(),
            Overall::VerifiedWithDisplayMismatch,
            "{:#?}",
            bundle.report.checks
        );
        assert_eq!(
            [bundle.params.v, bundle.params.k, bundle.params.lambda1, bundle.params.lambda2,
             bundle.params.m, bundle.params.n],
            [160, 54, 18, 18, 10, 16]
        );
        assert_eq!(bundle.tensor.d(), 5);
        assert!(bundle.tensor.is_commutative());
        // only the published lambda_2 value disagrees with the derivation
        assert_eq!(mismatch_names(&bundle.report), ["theorem-parameter-display"]);
        for name in ["b1-display-match", "p-display-match", "pq-identity", "q-display-match"] {
            assert!(
                bundle
                    .report
                    .checks
                    .iter()
                    .any(|c| c.name == name && c.status == CheckStatus::Pass),
                "{name} must pass"
            );
        }

        let dir = tempfile::tempdir().unwrap();
        let status = bin()
            .args(["gen", "s3", "--n", "4", "--p", "9"])
            .arg("--output-dir")
            .arg(dir.path())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(3));
    });
}

#[test]
fn criterion_3_hadamard_family_larger_field() {
    criterion("3 (Hadamard family n=4 p=25)", Duration::from_secs(600), || {
        let bundle = build_s3(4, 25, None).unwrap();
        assert_eq!(
            bundle.report.overall(),
            Overall::VerifiedWithDisplayMismatch,
            "{:#?}",
            bundle.report.checks
        );
        assert_eq!(
            [bundle.params.v, bundle.params.k, bundle.params.lambda1, bundle.params.lambda2,
             bundle.params.m, bundle.params.n],
            [416, 150, 50, 54, 26, 16]
        );
        // the published statement gives 108 where the derivation forces 54
        let check = bundle
            .report
            .checks
            .iter()
            .find(|c| c.name == "theorem-parameter-display")
            .unwrap();
        assert_eq!(check.status, CheckStatus::Mismatch);
        let witness = check.witness.as_deref().unwrap_or("");
        assert!(witness.contains("108"), "witness should quote the published 108: {witness}");
    });
}

#[test]
fn criterion_4_flagship_field_family() {
    criterion("4 (field family q=3)", Duration::from_secs(30), || {
        let bundle = build_s5(3).unwrap();
        assert_eq!(
            bundle.report.overall(),
            Overall::VerifiedWithDisplayMismatch,
            "{:#?}",
            bundle.report.checks
        );
        assert_eq!(bundle.tensor.d(), 7);
        assert!(bundle.tensor.is_commutative());
        assert_eq!(mismatch_names(&bundle.report), ["product-display", "theorem-parameter-display"]);

        // brute-force oracle for the design identity: recompute A A^T
        // entry by entry and compare with the three-level block pattern
        let a = &bundle.n_mats[1];
        let params = DDDParams { v: 36, k: 12, lambda1: 3, lambda2: 4, m: 4, n: 9 };
        assert_eq!(
            [bundle.params.v, bundle.params.k, bundle.params.lambda1, bundle.params.lambda2,
             bundle.params.m, bundle.params.n],
            [36, 12, 3, 4, 4, 9]
        );
        let v = 36usize;
        for r in 0..v {
            for c in 0..v {
                let dot: i64 = (0..v).map(|w| a.get(r, w) * a.get(c, w)).sum();
                let expected = if r == c {
                    params.k as i64
                } else if r / 9 == c / 9 {
                    params.lambda1 as i64
                } else {
                    params.lambda2 as i64
                };
                assert_eq!(dot, expected, "A A^T at ({r},{c})");
            }
        }
        // the zero-element digraph carries the loops: symmetric with a
        // unit diagonal
        let n0 = &bundle.n_mats[0];
        assert_eq!(n0, &n0.transpose());
        assert!((0..v).all(|i| n0.get(i, i) == 1));
        for name in [
            "loop-digraph-symmetric",
            "loop-digraph-unit-diagonal",
            "idempotents.sum-to-identity",
            "q-display-match",
        ] {
            assert!(
                bundle
                    .report
                    .checks
                    .iter()
                    .any(|c| c.name == name && c.status == CheckStatus::Pass),
                "{name} must pass"
            );
        }

        // CLI round trip: generate, re-verify stored artifacts, and
        // confirm the failure modes of the verify subcommand
        let dir = tempfile::tempdir().unwrap();
        let status = bin()
            .args(["gen", "s5", "--q", "3"])
            .arg("--output-dir")
            .arg(dir.path())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(3));
        let bad = bin()
            .args(["gen", "s5", "--q", "4"])
            .arg("--output-dir")
            .arg(dir.path())
            .status()
            .unwrap();
        assert_eq!(bad.code(), Some(2));

        let entry_dir = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().path())
            .find(|p| p.is_dir())
            .unwrap();
        for artifact in ["scheme.json", "ddd.json"] {
            let status = bin().arg("verify").arg(entry_dir.join(artifact)).status().unwrap();
            assert_eq!(status.code(), Some(0), "{artifact} re-verifies");
        }
        // a single flipped adjacency bit must be caught
        let text = std::fs::read_to_string(entry_dir.join("ddd.json")).unwrap();
        let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let cell = &mut value["adjacency"]["data"][1];
        *cell = serde_json::json!(1 - cell.as_i64().unwrap());
        let flipped = dir.path().join("flipped.json");
        std::fs::write(&flipped, serde_json::to_string(&value).unwrap()).unwrap();
        let status = bin().arg("verify").arg(&flipped).status().unwrap();
        assert_eq!(status.code(), Some(1));
        // an empty file is a parse error, not a verification failure
        let empty = dir.path().join("empty.json");
        std::fs::write(&empty, "").unwrap();
        let status = bin().arg("verify").arg(&empty).status().unwrap();
        assert_eq!(status.code(), Some(2));
    });
}

#[test]
fn criterion_5_field_family_order_nine() {
    criterion("5 (field family q=9)", Duration::from_secs(900), || {
        let bundle = build_s5(9).unwrap();
        assert_eq!(
            bundle.report.overall(),
            Overall::VerifiedWithDisplayMismatch,
            "{:#?}",
            bundle.report.checks
        );
        assert_eq!(bundle.params.v, 810);
        assert_eq!(bundle.tensor.d(), 25);
        assert!(bundle.tensor.is_commutative());
    });
}

#[test]
fn criterion_6_seed_suite() {
    criterion("6 (seed constructions)", Duration::from_secs(120), || {
        for (q, g) in [(3, 2), (5, 4), (9, 8), (25, 8), (13, 4), (27, 2)] {
            let (p, m) = match q {
                9 => (3, 2),
                25 => (5, 2),
                27 => (3, 3),
                prime => (prime, 1),
            };
            let field = build_field(p, m).unwrap();
            let w = skew_bgw(&field, g).unwrap();
            assert!(verify_bgw(&w).is_verified(), "balance at ({q},{g})");
            assert!(verify_skew(&w).unwrap(), "skewness at ({q},{g})");
        }

        for k in 1..=5 {
            let h = sylvester_hadamard(k);
            HadamardMatrix::verify(&h.mat).unwrap();
        }
        for q in [3, 7, 11, 19, 23] {
            let h = paley_hadamard(q).unwrap();
            HadamardMatrix::verify(&h.mat).unwrap();
        }

        for (p, m) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let field = build_field(p, m).unwrap();
            let latin = latin_const_diag(&field).unwrap();
            latin.verify().unwrap();
            let q = field.q() as usize;
            // the reserved symbol occupies exactly the diagonal
            for r in 0..=q {
                for c in 0..=q {
                    assert_eq!(latin.cell(r, c) == Symbol::X, r == c);
                }
            }
            let parts = latin_decompose(&latin).unwrap();
            assert_eq!(parts[&Symbol::X], IntMatrix::identity(q + 1));
        }

        // the regular representation is an additive homomorphism,
        // checked exhaustively
        for (p, m) in [(3u64, 1u32), (3, 2), (5, 2)] {
            let field = build_field(p, m).unwrap();
            for a in field.elements() {
                for b in field.elements() {
                    let lhs = field.phi_rep(&a).mul(&field.phi_rep(&b)).unwrap();
                    let rhs = field.phi_rep(&field.add(&a, &b));
                    assert_eq!(lhs, rhs, "phi({a:?})phi({b:?}) != phi(a+b) over GF({p}^{m})");
                }
            }
        }
    });
}

#[test]
fn criterion_7_intersection_number_oracle() {
    criterion("7 (triple-counting oracle)", Duration::from_secs(300), || {
        let small = build_s4(3, 2).unwrap();
        assert_tensor_matches_triple_counts(&small.scheme, &small.tensor);
        let flagship = build_s4(5, 4).unwrap();
        assert_tensor_matches_triple_counts(&flagship.scheme, &flagship.tensor);
        assert_tensor_matches_triple_counts(&flagship.fusion_scheme, &flagship.fusion_tensor);
        let field = build_s5(3).unwrap();
        assert_tensor_matches_triple_counts(&field.scheme, &field.tensor);
    });
}

#[test]
fn criterion_8_mutation_robustness() {
    criterion("8 (mutation robustness)", Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0);

        // every single-bit adjacency flip must trip the design verifier
        let cases = [
            (build_s4(5, 4).unwrap().n_mats[0].clone(), DDDParams { v: 24, k: 5, lambda1: 0, lambda2: 1, m: 6, n: 4 }),
            (build_s5(3).unwrap().n_mats[1].clone(), DDDParams { v: 36, k: 12, lambda1: 3, lambda2: 4, m: 4, n: 9 }),
            (build_s3(4, 9, None).unwrap().a[1].clone(), DDDParams { v: 160, k: 54, lambda1: 18, lambda2: 18, m: 10, n: 16 }),
        ];
        for (adjacency, params) in &cases {
            assert!(verify_ddd(adjacency, params).unwrap().is_verified());
            let v = adjacency.rows();
            for _ in 0..100 {
                let r = rng.gen_range(0..v);
                let c = rng.gen_range(0..v);
                let mut mutated = adjacency.clone();
                mutated.set(r, c, 1 - mutated.get(r, c));
                assert!(
                    !verify_ddd(&mutated, params).unwrap().is_verified(),
                    "flip at ({r},{c}) went unnoticed on v={v}"
                );
            }
        }

        // every single-entry rewrite of a weighing matrix must break
        // balance or skewness
        let field = build_field(5, 1).unwrap();
        let w = skew_bgw(&field, 4).unwrap();
        for _ in 0..100 {
            let i = rng.gen_range(0..w.v);
            let j = rng.gen_range(0..w.v);
            let old = w.entry(i, j);
            let new = loop {
                let pick = rng.gen_range(0..=w.group_order);
                let cand = if pick == w.group_order { None } else { Some(pick) };
                if cand != old {
                    break cand;
                }
            };
            let mut mutated = w.clone();
            mutated.entries[i][j] = new;
            let caught = !verify_bgw(&mutated).is_verified() || !verify_skew(&mutated).unwrap();
            assert!(caught, "rewrite at ({i},{j}) went unnoticed");
        }

        // scheme verifier: a flipped bit in a class matrix must be caught
        let scheme = build_s5(3).unwrap().scheme;
        for _ in 0..20 {
            let k = rng.gen_range(0..scheme.classes.len());
            let r = rng.gen_range(0..36);
            let c = rng.gen_range(0..36);
            let mut classes = scheme.classes.clone();
            let flipped = 1 - classes[k].get(r, c);
            classes[k].set(r, c, flipped);
            let caught = match verify_scheme(&classes) {
                Ok(outcome) => !outcome.report.is_verified(),
                Err(_) => true,
            };
            assert!(caught, "class flip at ({k},{r},{c}) went unnoticed");
        }
    });
}
