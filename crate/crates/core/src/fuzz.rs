//! Seeded random words, relation walks and move applications, plus the
//! property sweep behind `tbm fuzz`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::equivalence::{monoid_verdict, Verdict};
use crate::moves::{
    add_fixed_tie, add_tie, algebraic_l_move, conjugate, destabilize, loop_conjugate, stabilize, t_bbm,
};
use crate::rewriting::{apply_relation, normal_form, relation_catalog, Direction, RelationInstance};
use crate::semantics::{closure_summary, permutation, scan_semantics, ClosureSignature, Strand};
use crate::words::{Context, Flavor, Letter, Sign, TiedWord};

pub use rand::SeedableRng;

pub type FuzzRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FuzzRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut FuzzRng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A uniformly chosen letter of `ctx`; ties only when `with_ties`.
///
/// # Panics
/// When the alphabet is empty (`g = 0`, `n = 1`).
pub fn random_letter(rng: &mut FuzzRng, ctx: &Context, with_ties: bool) -> Letter {
    let (g, n) = (ctx.g(), ctx.n());
    assert!(g > 0 || n > 1, "empty alphabet");
    loop {
        let kind = rng.gen_range(0..if with_ties { 6 } else { 2 });
        let letter = match kind {
            0 if n >= 2 => Letter::Sigma(rng.gen_range(1..n), random_sign(rng)),
            1 if g >= 1 => Letter::Loop(rng.gen_range(1..=g), random_sign(rng)),
            2 if n >= 2 => Letter::Tie(rng.gen_range(1..n)),
            3 if n >= 2 => {
                let i = rng.gen_range(1..n);
                Letter::GenTie(i, rng.gen_range(i + 1..=n))
            }
            4 if g >= 1 => Letter::FixedTie(rng.gen_range(1..=g)),
            5 if g >= 1 => Letter::GenFixedTie(rng.gen_range(1..=g), rng.gen_range(1..=n)),
            _ => continue,
        };
        return letter;
    }
}

/// Random word of exactly `len` letters (empty when the alphabet is empty).
pub fn random_word(rng: &mut FuzzRng, ctx: &Context, len: usize, with_ties: bool) -> TiedWord {
    if ctx.n() < 2 && ctx.g() == 0 {
        return TiedWord::identity(*ctx);
    }
    let letters = (0..len).map(|_| random_letter(rng, ctx, with_ties)).collect();
    TiedWord::new(*ctx, letters).expect("generated letters fit the context")
}

/// Random context of the given flavor with `g ≤ max_g`, `1 ≤ n ≤ max_n`, `p ≤ max_p`.
pub fn random_context(rng: &mut FuzzRng, flavor: Flavor, max_g: usize, max_n: usize, max_p: u32) -> Context {
    let n = rng.gen_range(1..=max_n);
    let (g, p) = match flavor {
        Flavor::S3 => (0, None),
        Flavor::SolidTorus => (1, None),
        Flavor::Lens => (1, Some(rng.gen_range(1..=max_p))),
        Flavor::Handlebody | Flavor::UnlinkComplement => (rng.gen_range(1..=max_g.max(1)), None),
    };
    Context::new(g, n, flavor, p).expect("valid random context")
}

/// Applies `steps` random catalog rewrites in either direction.
pub fn random_rewrites(rng: &mut FuzzRng, instances: &[RelationInstance], w: &TiedWord, steps: usize) -> TiedWord {
    let mut current = w.clone();
    if instances.is_empty() {
        return current;
    }
    let mut done = 0;
    let mut attempts = 0;
    while done < steps && attempts < steps * 50 {
        attempts += 1;
        let inst = instances.choose(rng).expect("non-empty");
        let dir = if rng.gen_bool(0.5) { Direction::LeftToRight } else { Direction::RightToLeft };
        let from = match dir {
            Direction::LeftToRight => &inst.lhs,
            Direction::RightToLeft => &inst.rhs,
        };
        let letters = current.letters();
        let sites: Vec<usize> = if from.is_empty() {
            (1..=letters.len() + 1).collect()
        } else {
            (0..letters.len().saturating_sub(from.len() - 1))
                .filter(|&s| letters[s..s + from.len()] == from[..])
                .map(|s| s + 1)
                .collect()
        };
        if let Some(&at) = sites.choose(rng) {
            current = apply_relation(&current, at, inst, dir).expect("site matches");
            done += 1;
        }
    }
    current
}

/// The moves the fuzzers draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Conjugate,
    LoopConjugate,
    Stabilize,
    Destabilize,
    LMove,
    AddTie,
    AddFixedTie,
    TiedBandMove,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::Conjugate,
        MoveKind::LoopConjugate,
        MoveKind::Stabilize,
        MoveKind::Destabilize,
        MoveKind::LMove,
        MoveKind::AddTie,
        MoveKind::AddFixedTie,
        MoveKind::TiedBandMove,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Conjugate => "conjugate",
            MoveKind::LoopConjugate => "loop-conjugate",
            MoveKind::Stabilize => "stabilize",
            MoveKind::Destabilize => "destabilize",
            MoveKind::LMove => "l-move",
            MoveKind::AddTie => "add-tie",
            MoveKind::AddFixedTie => "add-fixed-tie",
            MoveKind::TiedBandMove => "t-bbm",
        }
    }

    /// Whether the move belongs to the equivalence of `flavor`.
    pub fn allowed_in(self, flavor: Flavor) -> bool {
        match self {
            MoveKind::LoopConjugate => matches!(flavor, Flavor::SolidTorus | Flavor::Lens | Flavor::UnlinkComplement),
            MoveKind::AddFixedTie => flavor != Flavor::S3,
            MoveKind::TiedBandMove => flavor == Flavor::Lens,
            _ => true,
        }
    }
}

/// A random admissible move on `w`; `None` when the drawn move does not
/// apply (e.g. no fixed tie to justify another one).
pub fn random_move(rng: &mut FuzzRng, w: &TiedWord, max_n: usize) -> Option<(MoveKind, TiedWord)> {
    let ctx = *w.ctx();
    let allowed: Vec<MoveKind> = MoveKind::ALL.into_iter().filter(|m| m.allowed_in(ctx.flavor())).collect();
    let kind = *allowed.choose(rng)?;
    let n = ctx.n();
    let out = match kind {
        MoveKind::Conjugate => {
            if n < 2 {
                return None;
            }
            conjugate(w, rng.gen_range(1..n), random_sign(rng)).ok()?
        }
        MoveKind::LoopConjugate => loop_conjugate(w, rng.gen_range(1..=ctx.g()), random_sign(rng)).ok()?,
        MoveKind::Stabilize => {
            if n >= max_n {
                return None;
            }
            stabilize(w, random_sign(rng)).ok()?
        }
        MoveKind::Destabilize => destabilize(w).ok()?,
        MoveKind::LMove => {
            if n >= max_n {
                return None;
            }
            let split = rng.gen_range(0..=w.len());
            let w1 = TiedWord::new(ctx, w.letters()[..split].to_vec()).ok()?;
            let w2 = TiedWord::new(ctx, w.letters()[split..].to_vec()).ok()?;
            algebraic_l_move(&w1, &w2, random_sign(rng)).ok()?
        }
        MoveKind::AddTie => {
            if n < 2 {
                return None;
            }
            let perm = permutation(w);
            let i = rng.gen_range(1..=n);
            let same: Vec<usize> = (1..=n).filter(|&j| j != i && perm.same_cycle(i, j)).collect();
            let j = *same.choose(rng)?;
            add_tie(w, i, j).ok()?.0
        }
        MoveKind::AddFixedTie => {
            let k = rng.gen_range(1..=ctx.g());
            let sem = scan_semantics(w);
            let tied: Vec<usize> =
                (1..=n).filter(|&i| sem.partition.same_class(Strand::Fixed(k), Strand::Moving(i))).collect();
            let i = *tied.choose(rng)?;
            let j = if rng.gen_bool(0.5) {
                sem.perm.image(i)
            } else {
                let cyc: Vec<usize> = (1..=n).filter(|&j| sem.perm.same_cycle(i, j)).collect();
                *cyc.choose(rng)?
            };
            add_fixed_tie(w, k, j).ok()?.0
        }
        MoveKind::TiedBandMove => {
            if n >= max_n {
                return None;
            }
            t_bbm(w, random_sign(rng)).ok()?
        }
    };
    Some((kind, out))
}

/// Closure signature of the word a move started from. For the L-move the
/// "before" word is `w1 · w2`, which is the input itself.
pub fn signature(w: &TiedWord) -> ClosureSignature {
    closure_summary(w).signature()
}

/// Tally of one property in a fuzz sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyTally {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub undecided: usize,
    pub first_failure: Option<String>,
}

impl PropertyTally {
    fn new(name: &'static str) -> Self {
        PropertyTally { name, ..Default::default() }
    }

    fn record(&mut self, ok: Option<bool>, detail: impl FnOnce() -> String) {
        self.cases += 1;
        match ok {
            Some(true) => {}
            Some(false) => {
                self.failures += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(detail());
                }
            }
            None => self.undecided += 1,
        }
    }
}

fn verdict_ok(v: Verdict) -> Option<bool> {
    match v {
        Verdict::Equal => Some(true),
        Verdict::Differ(_) => Some(false),
        Verdict::Undecided => None,
    }
}

/// Property sweep over random words of every flavor: mobility normal form,
/// soundness of random catalog rewrites and closure invariance under moves.
pub fn sweep(seed: u64, cases: usize, only: Option<Context>, budget: u64) -> Vec<PropertyTally> {
    let mut rng = rng(seed);
    let mut nf = PropertyTally::new("normal-form");
    let mut rewrite = PropertyTally::new("rewrite-soundness");
    let mut moves = PropertyTally::new("move-invariance");
    for case in 0..cases {
        let ctx = match only {
            Some(ctx) => ctx,
            None => {
                let flavor = Flavor::ALL[case % Flavor::ALL.len()];
                random_context(&mut rng, flavor, 3, 5, 3)
            }
        };
        let len = rng.gen_range(0..=20);
        let w = random_word(&mut rng, &ctx, len, true);

        let rebuilt = normal_form(&w).reconstruct();
        nf.record(verdict_ok(monoid_verdict(&w, &rebuilt, budget).expect("same ctx")), || {
            format!("{ctx}: {w}")
        });

        let instances = relation_catalog(&ctx).expect("sound catalog").instances();
        let walked = random_rewrites(&mut rng, &instances, &w, 5);
        rewrite.record(verdict_ok(monoid_verdict(&w, &walked, budget).expect("same ctx")), || {
            format!("{ctx}: {w} ~> {walked}")
        });

        if let Some((kind, out)) = random_move(&mut rng, &w, 6) {
            let same = signature(&w) == signature(&out);
            moves.record(Some(same), || format!("{ctx}: {} on {w} -> {out}", kind.name()));
        }
    }
    vec![nf, rewrite, moves]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::DEFAULT_BUDGET;

    #[test]
    fn random_words_are_valid_and_seeded() {
        let ctx = Context::handlebody(3, 4);
        let a = random_word(&mut rng(5), &ctx, 30, true);
        let b = random_word(&mut rng(5), &ctx, 30, true);
        assert_eq!(a, b);
        assert!(a.validate().is_empty());
        assert_eq!(a.len(), 30);
        let braid = random_word(&mut rng(1), &ctx, 30, false);
        assert!(!braid.has_ties());
    }

    #[test]
    fn degenerate_alphabet_gives_identity() {
        let ctx = Context::s3(1);
        assert!(random_word(&mut rng(0), &ctx, 10, true).is_empty());
        let st = Context::solid_torus(1);
        let w = random_word(&mut rng(0), &st, 10, false);
        assert!(w.letters().iter().all(|l| matches!(l, Letter::Loop(..))));
    }

    #[test]
    fn small_sweep_is_clean() {
        for tally in sweep(11, 40, None, DEFAULT_BUDGET) {
            assert_eq!(tally.failures, 0, "{tally:?}");
            assert_eq!(tally.undecided, 0, "{tally:?}");
        }
    }
}
