//! Tied mixed braid words: contexts, generator tokens, the word notation and
//! expansion of generalized ties into the defining alphabet.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// The ambient 3-manifold a word lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    S3,
    SolidTorus,
    Lens,
    Handlebody,
    UnlinkComplement,
}

impl Flavor {
    pub const ALL: [Flavor; 5] = [
        Flavor::S3,
        Flavor::SolidTorus,
        Flavor::Lens,
        Flavor::Handlebody,
        Flavor::UnlinkComplement,
    ];

    /// Short name used in the `%ctx` header.
    pub fn tag(self) -> &'static str {
        match self {
            Flavor::S3 => "s3",
            Flavor::SolidTorus => "st",
            Flavor::Lens => "lens",
            Flavor::Handlebody => "hb",
            Flavor::UnlinkComplement => "unlink",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Flavor> {
        Flavor::ALL.into_iter().find(|f| f.tag() == tag)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("flavor {flavor} does not admit g={g}")]
    FixedCount { flavor: Flavor, g: usize },
    #[error("at least one moving strand is required")]
    NoMovingStrands,
    #[error("surgery coefficient p must be given (and >= 1) exactly for lens spaces")]
    SurgeryCoefficient,
    #[error("malformed context header: {0}")]
    Malformed(String),
}

/// Fixes the alphabet of a word: `g` fixed strands, `n` moving strands, the
/// manifold flavor and, for lens spaces L(p,1), the surgery coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    g: usize,
    n: usize,
    flavor: Flavor,
    p: Option<u32>,
}

impl Context {
    pub fn new(g: usize, n: usize, flavor: Flavor, p: Option<u32>) -> Result<Self, ContextError> {
        let g_ok = match flavor {
            Flavor::S3 => g == 0,
            Flavor::SolidTorus | Flavor::Lens => g == 1,
            Flavor::Handlebody | Flavor::UnlinkComplement => g >= 1,
        };
        if !g_ok {
            return Err(ContextError::FixedCount { flavor, g });
        }
        if n == 0 {
            return Err(ContextError::NoMovingStrands);
        }
        match (flavor, p) {
            (Flavor::Lens, Some(p)) if p >= 1 => {}
            (Flavor::Lens, _) | (_, Some(_)) => return Err(ContextError::SurgeryCoefficient),
            _ => {}
        }
        Ok(Context { g, n, flavor, p })
    }

    pub fn s3(n: usize) -> Self {
        Context::new(0, n, Flavor::S3, None).expect("n >= 1")
    }

    pub fn solid_torus(n: usize) -> Self {
        Context::new(1, n, Flavor::SolidTorus, None).expect("n >= 1")
    }

    pub fn lens(n: usize, p: u32) -> Self {
        Context::new(1, n, Flavor::Lens, Some(p)).expect("n >= 1, p >= 1")
    }

    pub fn handlebody(g: usize, n: usize) -> Self {
        Context::new(g, n, Flavor::Handlebody, None).expect("g >= 1, n >= 1")
    }

    pub fn unlink_complement(g: usize, n: usize) -> Self {
        Context::new(g, n, Flavor::UnlinkComplement, None).expect("g >= 1, n >= 1")
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn p(&self) -> Option<u32> {
        self.p
    }

    /// Same manifold, different number of moving strands.
    pub fn with_moving(&self, n: usize) -> Result<Self, ContextError> {
        Context::new(self.g, n, self.flavor, self.p)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "%ctx g={} n={} M={}", self.g, self.n, self.flavor)?;
        if let Some(p) = self.p {
            write!(f, " p={p}")?;
        }
        Ok(())
    }
}

impl FromStr for Context {
    type Err = ContextError;

    /// Accepts `%ctx g=1 n=2 M=lens p=3`; the `%ctx` prefix is optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ContextError::Malformed(s.to_string());
        let mut g = None;
        let mut n = None;
        let mut flavor = None;
        let mut p = None;
        for (idx, field) in s.split_whitespace().enumerate() {
            if idx == 0 && field == "%ctx" {
                continue;
            }
            let (key, value) = field.split_once('=').ok_or_else(malformed)?;
            match key {
                "g" => g = Some(value.parse::<usize>().map_err(|_| malformed())?),
                "n" => n = Some(value.parse::<usize>().map_err(|_| malformed())?),
                "M" => flavor = Some(Flavor::from_tag(value).ok_or_else(malformed)?),
                "p" => p = Some(value.parse::<u32>().map_err(|_| malformed())?),
                _ => return Err(malformed()),
            }
        }
        let (g, n, flavor) = match (g, n, flavor) {
            (Some(g), Some(n), Some(flavor)) => (g, n, flavor),
            _ => return Err(malformed()),
        };
        Context::new(g, n, flavor, p)
    }
}

/// Exponent of an invertible generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One generator token. All indices are 1-based.
///
/// Ties carry no exponent: they are idempotent and not invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Braiding generator between moving positions `i` and `i+1`.
    Sigma(usize, Sign),
    /// Loop of the first moving strand around fixed strand `k`.
    Loop(usize, Sign),
    /// Tie between moving positions `i` and `i+1`.
    Tie(usize),
    /// Generalized tie between moving positions `i < j`.
    GenTie(usize, usize),
    /// Fixed tie between fixed strand `k` and moving position 1.
    FixedTie(usize),
    /// Generalized fixed tie between fixed strand `k` and moving position `j`.
    GenFixedTie(usize, usize),
}

impl Letter {
    pub fn sigma(i: usize) -> Letter {
        Letter::Sigma(i, Sign::Plus)
    }

    pub fn sigma_inv(i: usize) -> Letter {
        Letter::Sigma(i, Sign::Minus)
    }

    pub fn loop_gen(k: usize) -> Letter {
        Letter::Loop(k, Sign::Plus)
    }

    pub fn loop_inv(k: usize) -> Letter {
        Letter::Loop(k, Sign::Minus)
    }

    /// `η_{i,j}` with the pair stored as `(min, max)`; `None` when `i == j`.
    pub fn gen_tie(i: usize, j: usize) -> Option<Letter> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Some(Letter::GenTie(i, j)),
            std::cmp::Ordering::Greater => Some(Letter::GenTie(j, i)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn is_tie(&self) -> bool {
        matches!(
            self,
            Letter::Tie(_) | Letter::GenTie(..) | Letter::FixedTie(_) | Letter::GenFixedTie(..)
        )
    }

    pub fn is_generalized(&self) -> bool {
        matches!(self, Letter::GenTie(..) | Letter::GenFixedTie(..))
    }

    /// Group inverse of a braid or loop letter; `None` for ties.
    pub fn inverse(&self) -> Option<Letter> {
        match *self {
            Letter::Sigma(i, s) => Some(Letter::Sigma(i, s.flip())),
            Letter::Loop(k, s) => Some(Letter::Loop(k, s.flip())),
            _ => None,
        }
    }

    fn check(&self, ctx: &Context) -> Option<ViolationKind> {
        let (g, n) = (ctx.g, ctx.n);
        let uses_fixed = matches!(self, Letter::Loop(..) | Letter::FixedTie(_) | Letter::GenFixedTie(..));
        if uses_fixed && g == 0 {
            return Some(ViolationKind::AlphabetForbidden);
        }
        let in_range = match *self {
            Letter::Sigma(i, _) | Letter::Tie(i) => (1..n).contains(&i),
            Letter::Loop(k, _) | Letter::FixedTie(k) => (1..=g).contains(&k),
            Letter::GenTie(i, j) => 1 <= i && i < j && j <= n,
            Letter::GenFixedTie(k, j) => (1..=g).contains(&k) && (1..=n).contains(&j),
        };
        (!in_range).then_some(ViolationKind::IndexOutOfRange)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Sigma(i, Sign::Plus) => write!(f, "s{i}"),
            Letter::Sigma(i, Sign::Minus) => write!(f, "S{i}"),
            Letter::Loop(k, Sign::Plus) => write!(f, "a{k}"),
            Letter::Loop(k, Sign::Minus) => write!(f, "A{k}"),
            Letter::Tie(i) => write!(f, "t{i}"),
            Letter::GenTie(i, j) => write!(f, "t({i},{j})"),
            Letter::FixedTie(k) => write!(f, "p{k}"),
            Letter::GenFixedTie(k, j) => write!(f, "p({k},{j})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    IndexOutOfRange,
    AlphabetForbidden,
}

/// A letter that does not fit its context; `position` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub position: usize,
    pub letter: Letter,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::IndexOutOfRange => "IndexOutOfRange",
            ViolationKind::AlphabetForbidden => "AlphabetForbidden",
        };
        write!(f, "{kind} at {} ({})", self.position, self.letter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("token `{token}` is out of range for `{ctx}`")]
    IndexOutOfRange { token: String, ctx: Context },
    #[error("token `{token}` is not allowed in `{ctx}`")]
    AlphabetForbidden { token: String, ctx: Context },
    #[error("malformed index pair in `{0}`")]
    MalformedIndexPair(String),
    #[error("words live in different contexts: `{0}` vs `{1}`")]
    ContextMismatch(Context, Context),
    #[error("invalid word: {0:?}")]
    Invalid(Vec<Violation>),
}

/// An element of the tied mixed braid monoid, read top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TiedWord {
    ctx: Context,
    letters: Vec<Letter>,
}

impl TiedWord {
    pub fn identity(ctx: Context) -> Self {
        TiedWord { ctx, letters: Vec::new() }
    }

    /// Builds a word, rejecting letters that violate the context.
    pub fn new(ctx: Context, letters: Vec<Letter>) -> Result<Self, WordError> {
        let word = TiedWord { ctx, letters };
        let violations = word.validate();
        if violations.is_empty() {
            Ok(word)
        } else {
            Err(WordError::Invalid(violations))
        }
    }

    /// Builds a word without checking it; see [`TiedWord::validate`].
    pub fn new_unchecked(ctx: Context, letters: Vec<Letter>) -> Self {
        TiedWord { ctx, letters }
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_ties(&self) -> bool {
        self.letters.iter().any(Letter::is_tie)
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.letters
            .iter()
            .enumerate()
            .filter_map(|(idx, letter)| {
                letter.check(&self.ctx).map(|kind| Violation { position: idx + 1, letter: *letter, kind })
            })
            .collect()
    }

    pub fn parse(text: &str, ctx: Context) -> Result<Self, WordError> {
        let letters = text
            .split_ascii_whitespace()
            .map(|tok| {
                let letter = parse_token(tok)?;
                match letter.check(&ctx) {
                    None => Ok(letter),
                    Some(ViolationKind::IndexOutOfRange) => {
                        Err(WordError::IndexOutOfRange { token: tok.to_string(), ctx })
                    }
                    Some(ViolationKind::AlphabetForbidden) => {
                        Err(WordError::AlphabetForbidden { token: tok.to_string(), ctx })
                    }
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TiedWord { ctx, letters })
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Concatenation `self · other`; no cancellation happens here.
    pub fn compose(&self, other: &TiedWord) -> Result<TiedWord, WordError> {
        if self.ctx != other.ctx {
            return Err(WordError::ContextMismatch(self.ctx, other.ctx));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(TiedWord { ctx: self.ctx, letters })
    }

    /// Same letters in another context. Fails if a letter does not fit.
    pub fn recontext(&self, ctx: Context) -> Result<TiedWord, WordError> {
        TiedWord::new(ctx, self.letters.clone())
    }

    /// Group inverse of a tie-free word; `None` if the word has ties.
    pub fn inverse(&self) -> Option<TiedWord> {
        let letters = self.letters.iter().rev().map(Letter::inverse).collect::<Option<Vec<_>>>()?;
        Some(TiedWord { ctx: self.ctx, letters })
    }

    /// The word with all tie tokens deleted.
    pub fn strip_ties(&self) -> TiedWord {
        let letters = self.letters.iter().copied().filter(|l| !l.is_tie()).collect();
        TiedWord { ctx: self.ctx, letters }
    }

    /// Rewrites every generalized tie in terms of `σ`, `η_i` and `φ_k`.
    pub fn expand_generalized(&self) -> TiedWord {
        let mut letters = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            match *letter {
                Letter::GenTie(i, j) => letters.extend(expand_gen_tie(i, j)),
                Letter::GenFixedTie(k, j) => letters.extend(expand_gen_fixed_tie(k, j)),
                other => letters.push(other),
            }
        }
        TiedWord { ctx: self.ctx, letters }
    }
}

impl fmt::Display for TiedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, letter) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// `σ_i … σ_{j−2} η_{j−1} σ_{j−2}^{-1} … σ_i^{-1}` for `i < j`.
pub fn expand_gen_tie(i: usize, j: usize) -> Vec<Letter> {
    debug_assert!(i < j);
    let mut out: Vec<Letter> = (i..j - 1).map(Letter::sigma).collect();
    out.push(Letter::Tie(j - 1));
    out.extend((i..j - 1).rev().map(Letter::sigma_inv));
    out
}

/// `σ_{j−1} … σ_1 φ_k σ_1^{-1} … σ_{j−1}^{-1}`.
pub fn expand_gen_fixed_tie(k: usize, j: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = (1..j).rev().map(Letter::sigma).collect();
    out.push(Letter::FixedTie(k));
    out.extend((1..j).map(Letter::sigma_inv));
    out
}

fn parse_index(digits: &str, tok: &str) -> Result<usize, WordError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(WordError::UnknownToken(tok.to_string()));
    }
    digits.parse().map_err(|_| WordError::UnknownToken(tok.to_string()))
}

fn parse_pair(body: &str, tok: &str) -> Result<(usize, usize), WordError> {
    let malformed = || WordError::MalformedIndexPair(tok.to_string());
    let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(malformed)?;
    let (a, b) = inner.split_once(',').ok_or_else(malformed)?;
    let parse = |s: &str| -> Result<usize, WordError> {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse().map_err(|_| malformed())
    };
    Ok((parse(a)?, parse(b)?))
}

/// Parses one token of the word notation, without range checks.
pub fn parse_token(tok: &str) -> Result<Letter, WordError> {
    let mut chars = tok.chars();
    let head = chars.next().ok_or_else(|| WordError::UnknownToken(tok.to_string()))?;
    let rest = chars.as_str();
    if rest.starts_with('(') {
        let (a, b) = parse_pair(rest, tok)?;
        return match head {
            't' => Letter::gen_tie(a, b).ok_or_else(|| WordError::MalformedIndexPair(tok.to_string())),
            'p' => Ok(Letter::GenFixedTie(a, b)),
            _ => Err(WordError::UnknownToken(tok.to_string())),
        };
    }
    let idx = parse_index(rest, tok)?;
    match head {
        's' => Ok(Letter::Sigma(idx, Sign::Plus)),
        'S' => Ok(Letter::Sigma(idx, Sign::Minus)),
        'a' => Ok(Letter::Loop(idx, Sign::Plus)),
        'A' => Ok(Letter::Loop(idx, Sign::Minus)),
        't' => Ok(Letter::Tie(idx)),
        'p' => Ok(Letter::FixedTie(idx)),
        _ => Err(WordError::UnknownToken(tok.to_string())),
    }
}

/// One parsed input file: an optional context header and the words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordFile {
    pub ctx: Option<Context>,
    pub lines: Vec<String>,
}

impl WordFile {
    /// Splits a file into its `%ctx` header and word lines. `#` starts a
    /// comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, ContextError> {
        let mut ctx = None;
        let mut lines = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.starts_with("%ctx") {
                ctx = Some(line.parse()?);
            } else if !line.is_empty() {
                lines.push(line.to_string());
            }
        }
        Ok(WordFile { ctx, lines })
    }

    pub fn words(&self, ctx: Context) -> Result<Vec<TiedWord>, WordError> {
        self.lines.iter().map(|l| TiedWord::parse(l, ctx)).collect()
    }
}
