//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::{all_small_contexts, burau3_trivial, constructed_trivial, invert, random_braid, shuffle_equal};
use rand::Rng;
use tiedbraid::fuzz::{random_context, random_move, random_word, rng};
use tiedbraid::moves::{band_certificates, loop_conjugate, t_bbm, MoveError};
use tiedbraid::rewriting::RelationKind;
use tiedbraid::words::WordError;
use tiedbraid::{
    closure_summary, handle_reduce, monoid_verdict, normal_form, relation_catalog, scan_semantics, BraidWord,
    Context, Flavor, Letter, ReductionOutcome, Sign, TiedWord, Verdict, DEFAULT_BUDGET,
};

type Criterion = (&'static str, fn() -> Line);

struct Line {
    pass: bool,
    detail: String,
}

fn catalog_check(kind: RelationKind) -> Line {
    let (mut instances, mut failures, mut undecided) = (0usize, 0usize, 0usize);
    let mut ids = std::collections::BTreeSet::new();
    let mut first = None;
    for ctx in all_small_contexts() {
        let catalog = relation_catalog(&ctx).expect("catalog self-check");
        for rel in catalog.relations().iter().filter(|r| r.kind == kind) {
            ids.insert(rel.id);
            for inst in rel.instances(&ctx) {
                instances += 1;
                let lhs = TiedWord::new(ctx, inst.lhs.clone()).unwrap();
                let rhs = TiedWord::new(ctx, inst.rhs.clone()).unwrap();
                let scan_ok = scan_semantics(&lhs) == scan_semantics(&rhs);
                match monoid_verdict(&lhs, &rhs, DEFAULT_BUDGET).unwrap() {
                    Verdict::Equal if scan_ok => {}
                    Verdict::Undecided => undecided += 1,
                    _ => {
                        failures += 1;
                        first.get_or_insert_with(|| format!("{ctx}: {inst}"));
                    }
                }
            }
        }
    }
    Line {
        pass: failures == 0 && undecided == 0 && instances > 0,
        detail: format!(
            "relations={} instances={instances} failures={failures} undecided={undecided}{}",
            ids.len(),
            first.map(|f| format!(" first={f}")).unwrap_or_default()
        ),
    }
}

fn mobility() -> Line {
    let mut r = rng(3_000);
    let (mut failures, mut tie_tokens) = (0, 0);
    for case in 0..1000 {
        let ctx = random_context(&mut r, Flavor::ALL[case % 5], 3, 5, 3);
        let len = r.gen_range(0..=30);
        let w = random_word(&mut r, &ctx, len, true);
        let nf = normal_form(&w);
        if nf.braid_part.has_ties() {
            tie_tokens += 1;
        }
        if monoid_verdict(&w, &nf.reconstruct(), DEFAULT_BUDGET).unwrap() != Verdict::Equal {
            failures += 1;
        }
    }
    Line {
        pass: failures == 0 && tie_tokens == 0,
        detail: format!("words=1000 failures={failures} braid-parts-with-ties={tie_tokens}"),
    }
}

fn move_invariance() -> Line {
    let mut r = rng(4_000);
    let mut parts = Vec::new();
    let mut pass = true;
    for flavor in Flavor::ALL {
        let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
        let (mut applied, mut failures, mut attempts) = (0, 0, 0);
        while applied < 1000 && attempts < 50_000 {
            attempts += 1;
            let ctx = random_context(&mut r, flavor, 3, 5, 3);
            let len = r.gen_range(0..=30);
            let w = random_word(&mut r, &ctx, len, true);
            let Some((kind, out)) = random_move(&mut r, &w, 6) else { continue };
            applied += 1;
            *kinds.entry(kind.name()).or_default() += 1;
            let (before, after) = (closure_summary(&w), closure_summary(&out));
            // tie classes compared by shape, and windings (reduced mod p for lens)
            if before.signature() != after.signature() || before.tie_class_count() != after.tie_class_count() {
                failures += 1;
            }
        }
        pass &= applied == 1000 && failures == 0;
        let mix: Vec<String> = kinds.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        parts.push(format!("{}: pairs={applied} failures={failures} [{}]", flavor.tag(), mix.join(" ")));
    }
    Line { pass, detail: parts.join("; ") }
}

fn band_move_certificates() -> Line {
    let (mut checked, mut failures) = (0, 0);
    for n in 1..=4 {
        for p in 1..=3 {
            for sign in [Sign::Plus, Sign::Minus] {
                for (_, lhs, rhs) in band_certificates(n, p, sign).unwrap() {
                    checked += 1;
                    if monoid_verdict(&lhs, &rhs, DEFAULT_BUDGET).unwrap() != Verdict::Equal {
                        failures += 1;
                    }
                }
            }
        }
    }
    Line { pass: failures == 0 && checked > 0, detail: format!("certificates={checked} failures={failures}") }
}

fn reduce(letters: Vec<i32>, strands: usize) -> ReductionOutcome {
    handle_reduce(&BraidWord::new(strands, letters).unwrap(), DEFAULT_BUDGET).outcome
}

fn word_problem() -> Line {
    let mut r = rng(6_000);
    let (mut not_trivial, mut exhausted) = (0, 0);
    for case in 0..1000 {
        let strands = 2 + case % 5;
        match reduce(constructed_trivial(&mut r, strands, 60), strands) {
            ReductionOutcome::Trivial => {}
            ReductionOutcome::Nontrivial => not_trivial += 1,
            ReductionOutcome::BudgetExhausted => exhausted += 1,
        }
    }
    let (mut mismatches, mut trivial_seen) = (0, 0);
    for case in 0..1000 {
        let len = r.gen_range(0..=30);
        let w = random_braid(&mut r, 3, len);
        let word = if case % 2 == 0 {
            let mut v = w.clone();
            v.extend(invert(&shuffle_equal(&mut r, &w, 25)));
            v
        } else {
            w
        };
        let oracle = burau3_trivial(&word);
        trivial_seen += usize::from(oracle);
        match reduce(word, 3) {
            ReductionOutcome::BudgetExhausted => exhausted += 1,
            outcome => {
                if (outcome == ReductionOutcome::Trivial) != oracle {
                    mismatches += 1;
                }
            }
        }
    }
    Line {
        pass: not_trivial == 0 && mismatches == 0 && exhausted == 0,
        detail: format!(
            "(a) trivial-words=1000 misjudged={not_trivial}; (b) burau-words=1000 trivial={trivial_seen} mismatches={mismatches}; (c) budget-exhausted={exhausted}"
        ),
    }
}

fn flavor_gating() -> Line {
    let mut checks = Vec::new();
    let hb = TiedWord::parse("a1 s1", Context::handlebody(2, 2)).unwrap();
    checks.push((
        "loop_conjugate/hb",
        matches!(loop_conjugate(&hb, 1, Sign::Plus), Err(MoveError::FlavorForbidden(Flavor::Handlebody))),
    ));
    for ctx in [Context::s3(2), Context::solid_torus(2), Context::handlebody(2, 2), Context::unlink_complement(2, 2)] {
        let w = TiedWord::identity(ctx);
        checks.push(("t_bbm/non-lens", matches!(t_bbm(&w, Sign::Plus), Err(MoveError::FlavorForbidden(_)))));
    }
    let s3 = Context::s3(2);
    checks.push(("p1/g=0 parse", matches!(TiedWord::parse("p1", s3), Err(WordError::AlphabetForbidden { .. }))));
    checks.push(("p(1,2)/g=0 parse", TiedWord::parse("p(1,2)", s3).is_err()));
    checks.push(("FixedTie/g=0 construct", TiedWord::new(s3, vec![Letter::FixedTie(1)]).is_err()));
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    Line {
        pass: failed.is_empty(),
        detail: format!("negative-tests={} failed={}", checks.len(), if failed.is_empty() { "none".into() } else { failed.join(",") }),
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("relation soundness", || catalog_check(RelationKind::Defining)),
        ("derived identities", || catalog_check(RelationKind::Derived)),
        ("mobility normal form", mobility),
        ("markov-move invariance", move_invariance),
        ("t-bbm commutation certificates", band_move_certificates),
        ("word problem", word_problem),
        ("flavor gating", flavor_gating),
    ];
    let mut all = true;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let line = run();
        all &= line.pass;
        println!(
            "criterion {} {}: {} ({}; {:.2}s)",
            idx + 1,
            name,
            if line.pass { "PASS" } else { "FAIL" },
            line.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
