//! Equality decisions: the braid word problem by handle reduction on the
//! full braid group image, and monoid equality of tied words through the
//! braid part plus tie partition criterion.

use std::fmt;

use thiserror::Error;

use crate::rewriting::normal_form;
use crate::semantics::{embed_to_full_braid, permutation, Permutation, TiePartition};
use crate::words::{Letter, TiedWord};

/// Default number of handle reductions before giving up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A word in the Artin generators of the braid group on `strands` strands.
/// Letter `+i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidWordError {
    #[error("letter {letter} out of range for {strands} strands")]
    OutOfRange { letter: i32, strands: usize },
    #[error("braid words on {0} and {1} strands cannot be combined")]
    StrandMismatch(usize, usize),
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidWordError> {
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(BraidWordError::OutOfRange { letter, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    pub(crate) fn new_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        BraidWord { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidWordError> {
        if self.strands != other.strands {
            return Err(BraidWordError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.signum())).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, &l) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            if l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "S{}", -l)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOutcome {
    Trivial,
    Nontrivial,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleReduction {
    pub word: BraidWord,
    pub outcome: ReductionOutcome,
    pub steps: u64,
}

/// Finds the handle that closes first when reading left to right: a pair
/// `σ_j^e … σ_j^{-e}` whose interior only uses generators above `j`.
/// Such a handle is always permitted, since its interior holds no handle.
fn first_handle(letters: &[i32], strands: usize) -> Option<(usize, usize)> {
    // last[j] = last position holding a letter of index j
    let mut last: Vec<Option<usize>> = vec![None; strands];
    for (k, &l) in letters.iter().enumerate() {
        let j = l.unsigned_abs() as usize;
        let nearest = last[1..=j].iter().flatten().copied().max();
        if let Some(s) = nearest {
            if letters[s] == -l {
                return Some((s, k));
            }
        }
        last[j] = Some(k);
    }
    None
}

/// Whether every occurrence of the lowest generator has one sign.
fn main_generator_one_signed(letters: &[i32]) -> bool {
    let Some(min) = letters.iter().map(|l| l.unsigned_abs()).min() else {
        return true;
    };
    let mut signs = letters.iter().filter(|l| l.unsigned_abs() == min).map(|l| l.signum());
    let first = signs.next();
    signs.all(|s| Some(s) == first)
}

/// Dehornoy handle reduction. Stops when the word is empty or its main
/// generator occurs with a single sign, which certifies non-triviality.
pub fn handle_reduce(b: &BraidWord, budget: u64) -> HandleReduction {
    let mut letters = b.free_reduce().letters;
    let mut steps = 0u64;
    loop {
        if letters.is_empty() {
            return HandleReduction { word: BraidWord::identity(b.strands), outcome: ReductionOutcome::Trivial, steps };
        }
        if main_generator_one_signed(&letters) {
            return HandleReduction {
                word: BraidWord { strands: b.strands, letters },
                outcome: ReductionOutcome::Nontrivial,
                steps,
            };
        }
        if steps >= budget {
            return HandleReduction {
                word: BraidWord { strands: b.strands, letters },
                outcome: ReductionOutcome::BudgetExhausted,
                steps,
            };
        }
        let (start, end) = first_handle(&letters, b.strands).expect("a two-signed main generator forms a handle");
        let j = letters[start].unsigned_abs() as i32;
        let e = letters[start].signum();
        let mut next = Vec::with_capacity(letters.len() + 2 * (end - start));
        next.extend_from_slice(&letters[..start]);
        for &l in &letters[start + 1..end] {
            if l.abs() == j + 1 {
                // σ_{j+1}^d ↦ σ_{j+1}^{-e} σ_j^d σ_{j+1}^e
                let d = l.signum();
                push_reduced(&mut next, -e * (j + 1));
                push_reduced(&mut next, d * j);
                push_reduced(&mut next, e * (j + 1));
            } else {
                push_reduced(&mut next, l);
            }
        }
        for &l in &letters[end + 1..] {
            push_reduced(&mut next, l);
        }
        letters = next;
        steps += 1;
    }
}

fn push_reduced(out: &mut Vec<i32>, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("words live in different contexts")]
    ContextMismatch,
    #[error("braid comparison needs tie-free words")]
    TieTokenPresent,
}

/// The first invariant found to separate two words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Permutation,
    SigmaExponentSum,
    LoopExponentSum(usize),
    TiePartition,
    BraidWord,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Permutation => f.write_str("permutation"),
            Witness::SigmaExponentSum => f.write_str("sigma-exponent-sum"),
            Witness::LoopExponentSum(k) => write!(f, "a{k}-exponent-sum"),
            Witness::TiePartition => f.write_str("tie-partition"),
            Witness::BraidWord => f.write_str("braid-word"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Differ(Witness),
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => f.write_str("EQUAL"),
            Verdict::Differ(w) => write!(f, "DIFFER({w})"),
            Verdict::Undecided => f.write_str("UNDECIDED(budget)"),
        }
    }
}

/// Cheap necessary conditions for equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuickInvariants {
    pub permutation: Permutation,
    pub sigma_sum: i64,
    pub loop_sums: Vec<i64>,
    /// Tie partition at bottom positions.
    pub partition: TiePartition,
}

impl QuickInvariants {
    /// FNV-1a over the canonical rendering of the partition.
    pub fn partition_fingerprint(&self) -> u64 {
        self.partition.to_string().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
        })
    }

    /// The first invariant on which `self` and `other` disagree.
    pub fn separate(&self, other: &QuickInvariants) -> Option<Witness> {
        if self.permutation != other.permutation {
            return Some(Witness::Permutation);
        }
        if self.sigma_sum != other.sigma_sum {
            return Some(Witness::SigmaExponentSum);
        }
        if let Some(k) = self.loop_sums.iter().zip(&other.loop_sums).position(|(a, b)| a != b) {
            return Some(Witness::LoopExponentSum(k + 1));
        }
        if self.partition != other.partition {
            return Some(Witness::TiePartition);
        }
        None
    }
}

pub fn quick_invariants(w: &TiedWord) -> QuickInvariants {
    let g = w.ctx().g();
    let mut sigma_sum = 0;
    let mut loop_sums = vec![0; g];
    for letter in w.letters() {
        match *letter {
            Letter::Sigma(_, s) => sigma_sum += s.value(),
            Letter::Loop(k, s) => loop_sums[k - 1] += s.value(),
            _ => {}
        }
    }
    QuickInvariants { permutation: permutation(w), sigma_sum, loop_sums, partition: normal_form(w).tie_part }
}

/// Decides equality of two tie-free words in the mixed braid group.
pub fn braid_verdict(w1: &TiedWord, w2: &TiedWord, budget: u64) -> Result<Verdict, EquivalenceError> {
    if w1.ctx() != w2.ctx() {
        return Err(EquivalenceError::ContextMismatch);
    }
    if w1.has_ties() || w2.has_ties() {
        return Err(EquivalenceError::TieTokenPresent);
    }
    if let Some(witness) = quick_invariants(w1).separate(&quick_invariants(w2)) {
        return Ok(Verdict::Differ(witness));
    }
    Ok(braid_group_verdict(w1, w2, budget))
}

fn braid_group_verdict(w1: &TiedWord, w2: &TiedWord, budget: u64) -> Verdict {
    let b1 = embed_to_full_braid(w1).expect("tie-free");
    let b2 = embed_to_full_braid(w2).expect("tie-free");
    let quotient = b1.concat(&b2.inverse()).expect("same strand count");
    match handle_reduce(&quotient, budget).outcome {
        ReductionOutcome::Trivial => Verdict::Equal,
        ReductionOutcome::Nontrivial => Verdict::Differ(Witness::BraidWord),
        ReductionOutcome::BudgetExhausted => Verdict::Undecided,
    }
}

pub fn braid_equal(w1: &TiedWord, w2: &TiedWord) -> Result<bool, EquivalenceError> {
    braid_verdict(w1, w2, DEFAULT_BUDGET).map(|v| v == Verdict::Equal)
}

/// Equal braid parts and identical tie partitions at the bottom.
pub fn monoid_verdict(w1: &TiedWord, w2: &TiedWord, budget: u64) -> Result<Verdict, EquivalenceError> {
    if w1.ctx() != w2.ctx() {
        return Err(EquivalenceError::ContextMismatch);
    }
    if let Some(witness) = quick_invariants(w1).separate(&quick_invariants(w2)) {
        return Ok(Verdict::Differ(witness));
    }
    Ok(braid_group_verdict(&w1.strip_ties(), &w2.strip_ties(), budget))
}

/// Like [`monoid_verdict`] with the default budget; an exhausted budget
/// counts as "not shown equal".
pub fn monoid_equal(w1: &TiedWord, w2: &TiedWord) -> Result<bool, EquivalenceError> {
    monoid_verdict(w1, w2, DEFAULT_BUDGET).map(|v| v == Verdict::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Context;

    fn w(text: &str, ctx: Context) -> TiedWord {
        TiedWord::parse(text, ctx).unwrap()
    }

    #[test]
    fn braid_relator_is_trivial() {
        let b = BraidWord::new(3, vec![1, 2, 1, -2, -1, -2]).unwrap();
        let r = handle_reduce(&b, DEFAULT_BUDGET);
        assert_eq!(r.outcome, ReductionOutcome::Trivial);
        assert!(r.word.is_empty());
    }

    #[test]
    fn positive_words_are_nontrivial() {
        let b = BraidWord::new(2, vec![1, 1]).unwrap();
        assert_eq!(handle_reduce(&b, DEFAULT_BUDGET).outcome, ReductionOutcome::Nontrivial);
        // σ1 σ2 σ1^-1 has a handle but is not trivial
        let b = BraidWord::new(3, vec![1, 2, -1]).unwrap();
        let r = handle_reduce(&b, DEFAULT_BUDGET);
        assert_eq!(r.outcome, ReductionOutcome::Nontrivial);
        assert_eq!(r.word.letters(), &[-2, 1, 2]);
    }

    #[test]
    fn zero_budget_reports_exhaustion() {
        let b = BraidWord::new(3, vec![1, 2, 1, -2, -1, -2]).unwrap();
        assert_eq!(handle_reduce(&b, 0).outcome, ReductionOutcome::BudgetExhausted);
    }

    #[test]
    fn braid_word_bounds() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert_eq!(BraidWord::new(3, vec![1, -1, 2]).unwrap().free_reduce().letters(), &[2]);
    }

    #[test]
    fn braid_equal_examples() {
        let ctx = Context::s3(3);
        assert!(braid_equal(&w("s1 s2 s1", ctx), &w("s2 s1 s2", ctx)).unwrap());
        let ctx = Context::solid_torus(2);
        assert!(braid_equal(&w("a1 s1 a1 s1", ctx), &w("s1 a1 s1 a1", ctx)).unwrap());
        assert_eq!(
            braid_verdict(&w("a1", ctx), &w("a1 a1", ctx), DEFAULT_BUDGET).unwrap(),
            Verdict::Differ(Witness::LoopExponentSum(1))
        );
        assert_eq!(braid_equal(&w("t1", ctx), &w("t1", ctx)), Err(EquivalenceError::TieTokenPresent));
        assert_eq!(
            braid_equal(&w("s1", ctx), &w("s1", Context::solid_torus(3))),
            Err(EquivalenceError::ContextMismatch)
        );
    }

    #[test]
    fn monoid_equal_examples() {
        let ctx = Context::solid_torus(2);
        assert!(monoid_equal(&w("p1 t1", ctx), &w("p1 s1 p1 S1", ctx)).unwrap());
        let ctx = Context::s3(3);
        assert_eq!(monoid_verdict(&w("t1", ctx), &w("t2", ctx), DEFAULT_BUDGET).unwrap(), Verdict::Differ(Witness::TiePartition));
        assert!(monoid_equal(&w("t(1,3)", ctx), &w("s1 t2 S1", ctx)).unwrap());
        // same permutation and exponent sums, different braids
        let ctx = Context::s3(3);
        assert_eq!(
            monoid_verdict(&w("s1 s1", ctx), &w("s2 s2", ctx), DEFAULT_BUDGET).unwrap(),
            Verdict::Differ(Witness::BraidWord)
        );
    }

    #[test]
    fn quick_invariant_examples() {
        let q = quick_invariants(&w("s1 S1", Context::s3(2)));
        assert_eq!(q.sigma_sum, 0);
        assert!(q.permutation.is_identity());
        let q = quick_invariants(&w("a1 a1 A1", Context::solid_torus(1)));
        assert_eq!(q.loop_sums, vec![1]);
        let q = quick_invariants(&w("t1 s1", Context::s3(2)));
        assert_eq!(q.partition.to_string(), "{{M1,M2}}");
        let tied = quick_invariants(&w("t1", Context::s3(2)));
        assert_eq!(q.partition_fingerprint(), tied.partition_fingerprint());
        assert_ne!(q.partition_fingerprint(), quick_invariants(&w("s1", Context::s3(2))).partition_fingerprint());
    }
}
