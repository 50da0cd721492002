//! Moves generating tie isotopy of closed tied mixed braids, gated by the
//! ambient manifold.

use thiserror::Error;

use crate::semantics::{permutation, scan_semantics, Strand};
use crate::words::{Context, ContextError, Flavor, Letter, Sign, TiedWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("move not allowed in flavor {0}")]
    FlavorForbidden(Flavor),
    #[error("word is not of the form w' σ_(n-1)^±1 with w' avoiding strand n")]
    NotDestabilizable,
    #[error("words live in different contexts")]
    ContextMismatch,
    #[error("a tie between {0} and {1} would be essential")]
    TieWouldBeEssential(usize, usize),
    #[error("tie endpoints must differ (got {0} and {0})")]
    DegenerateTie(usize),
    #[error("no fixed tie on F{0} justifies adding one at strand {1}")]
    NoJustifyingFixedTie(usize, usize),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Which side condition admitted a tie or fixed-tie move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieCriterion {
    /// `s_α(i) = j`.
    Permutation,
    /// `i` and `j` lie on one closure component.
    SameCycle,
}

fn sigma_in_range(ctx: &Context, i: usize) -> Result<(), MoveError> {
    if (1..ctx.n()).contains(&i) {
        Ok(())
    } else {
        Err(MoveError::IndexOutOfRange(i))
    }
}

/// `σ_i^{±1} · w · σ_i^{∓1}`.
pub fn conjugate(w: &TiedWord, i: usize, sign: Sign) -> Result<TiedWord, MoveError> {
    sigma_in_range(w.ctx(), i)?;
    let mut letters = vec![Letter::Sigma(i, sign)];
    letters.extend_from_slice(w.letters());
    letters.push(Letter::Sigma(i, sign.flip()));
    Ok(TiedWord::new(*w.ctx(), letters)?)
}

/// `a_k^{±1} · w · a_k^{∓1}`; not available in handlebodies or S³.
pub fn loop_conjugate(w: &TiedWord, k: usize, sign: Sign) -> Result<TiedWord, MoveError> {
    let flavor = w.ctx().flavor();
    if matches!(flavor, Flavor::Handlebody | Flavor::S3) {
        return Err(MoveError::FlavorForbidden(flavor));
    }
    if !(1..=w.ctx().g()).contains(&k) {
        return Err(MoveError::IndexOutOfRange(k));
    }
    let mut letters = vec![Letter::Loop(k, sign)];
    letters.extend_from_slice(w.letters());
    letters.push(Letter::Loop(k, sign.flip()));
    Ok(TiedWord::new(*w.ctx(), letters)?)
}

/// Appends `σ_n^{±1}` in the context with one more moving strand.
pub fn stabilize(w: &TiedWord, sign: Sign) -> Result<TiedWord, MoveError> {
    let n = w.ctx().n();
    let ctx = w.ctx().with_moving(n + 1)?;
    let mut letters = w.letters().to_vec();
    letters.push(Letter::Sigma(n, sign));
    Ok(TiedWord::new(ctx, letters)?)
}

fn touches_position(letter: &Letter, p: usize) -> bool {
    match *letter {
        Letter::Sigma(i, _) | Letter::Tie(i) => i == p || i + 1 == p,
        Letter::GenTie(i, j) => i == p || j == p,
        Letter::GenFixedTie(_, j) => j == p,
        Letter::FixedTie(_) => p == 1,
        Letter::Loop(..) => p == 1,
    }
}

/// Removes a trailing `σ_{n−1}^{±1}` when nothing else reaches strand `n`.
pub fn destabilize(w: &TiedWord) -> Result<TiedWord, MoveError> {
    let n = w.ctx().n();
    if n < 2 {
        return Err(MoveError::NotDestabilizable);
    }
    let Some((last, rest)) = w.letters().split_last() else {
        return Err(MoveError::NotDestabilizable);
    };
    if !matches!(*last, Letter::Sigma(i, _) if i == n - 1) {
        return Err(MoveError::NotDestabilizable);
    }
    if rest.iter().any(|l| touches_position(l, n)) {
        return Err(MoveError::NotDestabilizable);
    }
    let ctx = w.ctx().with_moving(n - 1)?;
    Ok(TiedWord::new(ctx, rest.to_vec())?)
}

/// `w1 · σ_n^{±1} · w2` on `n + 1` strands.
pub fn algebraic_l_move(w1: &TiedWord, w2: &TiedWord, sign: Sign) -> Result<TiedWord, MoveError> {
    if w1.ctx() != w2.ctx() {
        return Err(MoveError::ContextMismatch);
    }
    let n = w1.ctx().n();
    let ctx = w1.ctx().with_moving(n + 1)?;
    let mut letters = w1.letters().to_vec();
    letters.push(Letter::Sigma(n, sign));
    letters.extend_from_slice(w2.letters());
    Ok(TiedWord::new(ctx, letters)?)
}

/// Appends `η_{i,j}` at the bottom when the tie cannot change the closure.
pub fn add_tie(w: &TiedWord, i: usize, j: usize) -> Result<(TiedWord, TieCriterion), MoveError> {
    let n = w.ctx().n();
    for x in [i, j] {
        if !(1..=n).contains(&x) {
            return Err(MoveError::IndexOutOfRange(x));
        }
    }
    let tie = Letter::gen_tie(i, j).ok_or(MoveError::DegenerateTie(i))?;
    let perm = permutation(w);
    let criterion = if perm.image(i) == j {
        TieCriterion::Permutation
    } else if perm.same_cycle(i, j) {
        TieCriterion::SameCycle
    } else {
        return Err(MoveError::TieWouldBeEssential(i, j));
    };
    let mut letters = w.letters().to_vec();
    letters.push(tie);
    Ok((TiedWord::new(*w.ctx(), letters)?, criterion))
}

/// Prepends `φ_{k,j}` when `F_k` is already tied to a strand `i` of the
/// same closure component. Ties are read with all of them moved to the top,
/// so "contains `φ_{k,i}`" means `F_k` and `M_i` share a tie class.
pub fn add_fixed_tie(w: &TiedWord, k: usize, j: usize) -> Result<(TiedWord, TieCriterion), MoveError> {
    let ctx = w.ctx();
    if !(1..=ctx.g()).contains(&k) {
        return Err(MoveError::IndexOutOfRange(k));
    }
    if !(1..=ctx.n()).contains(&j) {
        return Err(MoveError::IndexOutOfRange(j));
    }
    let sem = scan_semantics(w);
    let tied: Vec<usize> =
        (1..=ctx.n()).filter(|&i| sem.partition.same_class(Strand::Fixed(k), Strand::Moving(i))).collect();
    let criterion = if tied.iter().any(|&i| sem.perm.image(i) == j) {
        TieCriterion::Permutation
    } else if tied.iter().any(|&i| sem.perm.same_cycle(i, j)) {
        TieCriterion::SameCycle
    } else {
        return Err(MoveError::NoJustifyingFixedTie(k, j));
    };
    let mut letters = vec![Letter::GenFixedTie(k, j)];
    letters.extend_from_slice(w.letters());
    Ok((TiedWord::new(*ctx, letters)?, criterion))
}

/// `a′_n = σ_n … σ_1 a_1 σ_1^{-1} … σ_n^{-1}` on `n + 1` strands.
pub fn a_prime(n: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = (1..=n).rev().map(Letter::sigma).collect();
    out.push(Letter::loop_gen(1));
    out.extend((1..=n).map(Letter::sigma_inv));
    out
}

/// Replacement for `a_1^{±1}` in a word moved to `n + 1` strands:
/// `(σ_1^{-1} … σ_{n−1}^{-1} σ_n² σ_{n−1} … σ_1 a_1)^{±1}`.
pub fn band_substitution(n: usize, sign: Sign) -> Vec<Letter> {
    let mut out: Vec<Letter> = (1..n).map(Letter::sigma_inv).collect();
    out.push(Letter::sigma(n));
    out.push(Letter::sigma(n));
    out.extend((1..n).rev().map(Letter::sigma));
    out.push(Letter::loop_gen(1));
    match sign {
        Sign::Plus => out,
        Sign::Minus => out.iter().rev().map(|l| l.inverse().expect("no ties")).collect(),
    }
}

/// Tied braid band move on the last strand at the bottom:
/// `β ↦ β′ a′_n^p σ_n^{±1}` with every `a_1^{±1}` of `β` substituted.
pub fn t_bbm(w: &TiedWord, sign: Sign) -> Result<TiedWord, MoveError> {
    let ctx = w.ctx();
    if ctx.flavor() != Flavor::Lens {
        return Err(MoveError::FlavorForbidden(ctx.flavor()));
    }
    let n = ctx.n();
    let p = ctx.p().expect("lens context has p");
    let wide = ctx.with_moving(n + 1)?;
    let mut letters = Vec::new();
    for letter in w.letters() {
        match *letter {
            Letter::Loop(1, s) => letters.extend(band_substitution(n, s)),
            other => letters.push(other),
        }
    }
    for _ in 0..p {
        letters.extend(a_prime(n));
    }
    letters.push(Letter::Sigma(n, sign));
    Ok(TiedWord::new(wide, letters)?)
}

/// The tie-commutation identities showing a band move at the bottom of the
/// last strand leaves the tie partition alone, as `(label, lhs, rhs)` pairs in
/// the widened lens context `(1, n + 1, p)`, with `X = a′_n^p σ_n^{±1}`:
/// `f_i X = X f_i` (`i ≤ n−2`), `f_n X = X f_{n+1}`, `η_i X = X η_i`
/// (`i ≤ n−2`) and `η_{n−1} X = X η_{n−1,n+1}`. Here `f_j` is `φ_{1,j}`.
pub fn band_certificates(n: usize, p: u32, sign: Sign) -> Result<Vec<(String, TiedWord, TiedWord)>, MoveError> {
    let ctx = Context::lens(n + 1, p);
    let mut x: Vec<Letter> = Vec::new();
    for _ in 0..p {
        x.extend(a_prime(n));
    }
    x.push(Letter::Sigma(n, sign));
    let pair = |label: String, top: Letter, bottom: Letter| -> Result<(String, TiedWord, TiedWord), MoveError> {
        let mut lhs = vec![top];
        lhs.extend_from_slice(&x);
        let mut rhs = x.clone();
        rhs.push(bottom);
        Ok((label, TiedWord::new(ctx, lhs)?, TiedWord::new(ctx, rhs)?))
    };
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        out.push(pair(format!("f{i}"), Letter::GenFixedTie(1, i), Letter::GenFixedTie(1, i))?);
    }
    out.push(pair(format!("f{n}"), Letter::GenFixedTie(1, n), Letter::GenFixedTie(1, n + 1))?);
    for i in 1..n.saturating_sub(1) {
        out.push(pair(format!("t{i}"), Letter::Tie(i), Letter::Tie(i))?);
    }
    if n >= 2 {
        out.push(pair(format!("t{}", n - 1), Letter::Tie(n - 1), Letter::GenTie(n - 1, n + 1))?);
    }
    Ok(out)
}
