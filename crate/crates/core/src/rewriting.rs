//! Relation catalog of the tied mixed braid monoids, single-step rewriting
//! and the mobility normal form (braid part followed by a tie partition).

use std::fmt;

use thiserror::Error;

use crate::semantics::{scan_semantics, Strand, TiePartition};
use crate::words::{expand_gen_fixed_tie, expand_gen_tie, Context, Flavor, Letter, Sign, TiedWord};

/// Where a relation comes from: part of the presentation, or a consequence
/// of it (generalized tie identities).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Defining,
    Derived,
}

type Builder = fn(&[usize]) -> Option<(Vec<Letter>, Vec<Letter>)>;

/// A parametrized family `lhs = rhs`. Index constraints live in the builder,
/// which returns `None` for excluded parameter choices; letters outside the
/// context are filtered when instantiating.
pub struct Relation {
    pub id: &'static str,
    pub kind: RelationKind,
    pub statement: &'static str,
    pub params: &'static [&'static str],
    pub flavors: &'static [Flavor],
    build: Builder,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation").field("id", &self.id).field("statement", &self.statement).finish()
    }
}

/// One concrete relation `lhs = rhs` in a given context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub relation: &'static str,
    pub params: Vec<usize>,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[Letter]| {
            if s.is_empty() {
                "ε".to_string()
            } else {
                s.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
            }
        };
        write!(f, "{}{:?}: {} = {}", self.relation, self.params, side(&self.lhs), side(&self.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{relation}` has no instance {params:?} in this context")]
    BadInstantiation { relation: String, params: Vec<usize> },
    #[error("relation side does not match the word at position {0}")]
    NoMatch(usize),
    #[error("instance belongs to a different context")]
    ContextMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("relation instance is not sound: {0}")]
    Unsound(String),
}

/// Direction of a rewrite step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Relation {
    pub fn admits(&self, ctx: &Context) -> bool {
        self.flavors.contains(&ctx.flavor())
    }

    pub fn instantiate(&self, ctx: &Context, params: &[usize]) -> Result<RelationInstance, RewriteError> {
        let bad = || RewriteError::BadInstantiation { relation: self.id.to_string(), params: params.to_vec() };
        if params.len() != self.params.len() || !self.admits(ctx) {
            return Err(bad());
        }
        let (lhs, rhs) = (self.build)(params).ok_or_else(bad)?;
        if lhs == rhs {
            return Err(bad());
        }
        let fits = |side: &[Letter]| TiedWord::new(*ctx, side.to_vec()).is_ok();
        if !fits(&lhs) || !fits(&rhs) {
            return Err(bad());
        }
        Ok(RelationInstance { relation: self.id, params: params.to_vec(), lhs, rhs })
    }

    /// Every admissible instance in `ctx`, by exhaustive parameter search.
    pub fn instances(&self, ctx: &Context) -> Vec<RelationInstance> {
        if !self.admits(ctx) {
            return Vec::new();
        }
        let bound = ctx.g().max(ctx.n()) + 1;
        let arity = self.params.len();
        let mut out = Vec::new();
        let mut params = vec![1usize; arity];
        loop {
            if let Ok(inst) = self.instantiate(ctx, &params) {
                out.push(inst);
            }
            // odometer increment
            let mut slot = 0;
            loop {
                if slot == arity {
                    return out;
                }
                params[slot] += 1;
                if params[slot] <= bound {
                    break;
                }
                params[slot] = 1;
                slot += 1;
            }
        }
    }
}

fn s(i: usize) -> Letter {
    Letter::Sigma(i, Sign::Plus)
}

fn si(i: usize) -> Letter {
    Letter::Sigma(i, Sign::Minus)
}

fn se(i: usize, e: usize) -> Option<Letter> {
    match e {
        1 => Some(s(i)),
        2 => Some(si(i)),
        _ => None,
    }
}

fn t(i: usize) -> Letter {
    Letter::Tie(i)
}

fn gt(i: usize, j: usize) -> Option<Letter> {
    Letter::gen_tie(i, j)
}

fn ph(k: usize) -> Letter {
    Letter::FixedTie(k)
}

fn gph(k: usize, j: usize) -> Letter {
    Letter::GenFixedTie(k, j)
}

fn a(k: usize) -> Letter {
    Letter::Loop(k, Sign::Plus)
}

fn ae(k: usize, e: usize) -> Option<Letter> {
    match e {
        1 => Some(Letter::Loop(k, Sign::Plus)),
        2 => Some(Letter::Loop(k, Sign::Minus)),
        _ => None,
    }
}

fn adjacent(i: usize, j: usize) -> bool {
    i.abs_diff(j) == 1
}

fn transposed(i: usize, j: usize) -> usize {
    if j == i {
        i + 1
    } else if j == i + 1 {
        i
    } else {
        j
    }
}

const ALL: &[Flavor] = &Flavor::ALL;
const WITH_FIXED: &[Flavor] = &[Flavor::SolidTorus, Flavor::Lens, Flavor::Handlebody, Flavor::UnlinkComplement];
const MULTI_FIXED: &[Flavor] = &[Flavor::Handlebody, Flavor::UnlinkComplement];

static RELATIONS: &[Relation] = &[
    // mixed braid group
    Relation {
        id: "free.sigma",
        kind: RelationKind::Defining,
        statement: "σ_i^e σ_i^-e = 1",
        params: &["i", "e"],
        flavors: ALL,
        build: |p| Some((vec![se(p[0], p[1])?, se(p[0], 3 - p[1])?], vec![])),
    },
    Relation {
        id: "free.loop",
        kind: RelationKind::Defining,
        statement: "a_k^e a_k^-e = 1",
        params: &["k", "e"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![ae(p[0], p[1])?, ae(p[0], 3 - p[1])?], vec![])),
    },
    Relation {
        id: "braid.comm",
        kind: RelationKind::Defining,
        statement: "σ_k σ_j = σ_j σ_k, |k−j|>1",
        params: &["k", "j"],
        flavors: ALL,
        build: |p| (p[0] + 1 < p[1]).then(|| (vec![s(p[0]), s(p[1])], vec![s(p[1]), s(p[0])])),
    },
    Relation {
        id: "braid.yb",
        kind: RelationKind::Defining,
        statement: "σ_k σ_{k+1} σ_k = σ_{k+1} σ_k σ_{k+1}",
        params: &["k"],
        flavors: ALL,
        build: |p| {
            let k = p[0];
            Some((vec![s(k), s(k + 1), s(k)], vec![s(k + 1), s(k), s(k + 1)]))
        },
    },
    Relation {
        id: "loop.comm.sigma",
        kind: RelationKind::Defining,
        statement: "a_i σ_k = σ_k a_i, k≥2",
        params: &["i", "k"],
        flavors: WITH_FIXED,
        build: |p| (p[1] >= 2).then(|| (vec![a(p[0]), s(p[1])], vec![s(p[1]), a(p[0])])),
    },
    Relation {
        id: "loop.braid",
        kind: RelationKind::Defining,
        statement: "a_i σ_1 a_i σ_1 = σ_1 a_i σ_1 a_i",
        params: &["i"],
        flavors: WITH_FIXED,
        build: |p| {
            let i = p[0];
            Some((vec![a(i), s(1), a(i), s(1)], vec![s(1), a(i), s(1), a(i)]))
        },
    },
    Relation {
        id: "loop.comm.conj",
        kind: RelationKind::Defining,
        statement: "a_i (σ_1 a_r σ_1^-1) = (σ_1 a_r σ_1^-1) a_i, r<i",
        params: &["i", "r"],
        flavors: MULTI_FIXED,
        build: |p| {
            let (i, r) = (p[0], p[1]);
            (r < i).then(|| (vec![a(i), s(1), a(r), si(1)], vec![s(1), a(r), si(1), a(i)]))
        },
    },
    // ties
    Relation {
        id: "tie.comm",
        kind: RelationKind::Defining,
        statement: "η_i η_j = η_j η_i",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| (p[0] < p[1]).then(|| (vec![t(p[0]), t(p[1])], vec![t(p[1]), t(p[0])])),
    },
    Relation {
        id: "tie.sigma.same",
        kind: RelationKind::Defining,
        statement: "η_i σ_i = σ_i η_i",
        params: &["i"],
        flavors: ALL,
        build: |p| Some((vec![t(p[0]), s(p[0])], vec![s(p[0]), t(p[0])])),
    },
    Relation {
        id: "tie.sigma.far",
        kind: RelationKind::Defining,
        statement: "η_i σ_j = σ_j η_i, |i−j|>1",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| (p[0].abs_diff(p[1]) > 1).then(|| (vec![t(p[0]), s(p[1])], vec![s(p[1]), t(p[0])])),
    },
    Relation {
        id: "tie.slide.adj",
        kind: RelationKind::Defining,
        statement: "η_i σ_j σ_i^e = σ_j σ_i^e η_j, |i−j|=1",
        params: &["i", "j", "e"],
        flavors: ALL,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            if !adjacent(i, j) {
                return None;
            }
            let e = se(i, p[2])?;
            Some((vec![t(i), s(j), e], vec![s(j), e, t(j)]))
        },
    },
    Relation {
        id: "tie.tie.sigma.mid",
        kind: RelationKind::Defining,
        statement: "η_i η_j σ_i = η_j σ_i η_j, |i−j|=1",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            adjacent(i, j).then(|| (vec![t(i), t(j), s(i)], vec![t(j), s(i), t(j)]))
        },
    },
    Relation {
        id: "tie.tie.sigma.slide",
        kind: RelationKind::Defining,
        statement: "η_i η_j σ_i = σ_i η_i η_j, |i−j|=1",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            adjacent(i, j).then(|| (vec![t(i), t(j), s(i)], vec![s(i), t(i), t(j)]))
        },
    },
    Relation {
        id: "tie.idem",
        kind: RelationKind::Defining,
        statement: "η_i η_i = η_i",
        params: &["i"],
        flavors: ALL,
        build: |p| Some((vec![t(p[0]), t(p[0])], vec![t(p[0])])),
    },
    // fixed ties
    Relation {
        id: "fixedtie.idem",
        kind: RelationKind::Defining,
        statement: "φ_k φ_k = φ_k",
        params: &["k"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![ph(p[0]), ph(p[0])], vec![ph(p[0])])),
    },
    Relation {
        id: "loop.comm.tie",
        kind: RelationKind::Defining,
        statement: "a_k η_i = η_i a_k",
        params: &["k", "i"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![a(p[0]), t(p[1])], vec![t(p[1]), a(p[0])])),
    },
    Relation {
        id: "loop.comm.fixedtie",
        kind: RelationKind::Defining,
        statement: "a_i φ_j = φ_j a_i",
        params: &["i", "j"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![a(p[0]), ph(p[1])], vec![ph(p[1]), a(p[0])])),
    },
    Relation {
        id: "fixedtie.comm.tie",
        kind: RelationKind::Defining,
        statement: "η_i φ_k = φ_k η_i, i>1",
        params: &["k", "i"],
        flavors: WITH_FIXED,
        build: |p| (p[1] > 1).then(|| (vec![t(p[1]), ph(p[0])], vec![ph(p[0]), t(p[1])])),
    },
    Relation {
        id: "fixedtie.comm.sigma",
        kind: RelationKind::Defining,
        statement: "φ_k σ_i = σ_i φ_k, i≥2",
        params: &["k", "i"],
        flavors: WITH_FIXED,
        build: |p| (p[1] >= 2).then(|| (vec![ph(p[0]), s(p[1])], vec![s(p[1]), ph(p[0])])),
    },
    Relation {
        id: "fixedtie.conj",
        kind: RelationKind::Defining,
        statement: "σ_i…σ_1 φ_k σ_1^-1…σ_i^-1 = σ_i^-1…σ_1^-1 φ_k σ_1…σ_i",
        params: &["k", "i"],
        flavors: WITH_FIXED,
        build: |p| {
            let (k, i) = (p[0], p[1]);
            let mut lhs: Vec<Letter> = (1..=i).rev().map(s).collect();
            lhs.push(ph(k));
            lhs.extend((1..=i).map(si));
            let mut rhs: Vec<Letter> = (1..=i).rev().map(si).collect();
            rhs.push(ph(k));
            rhs.extend((1..=i).map(s));
            Some((lhs, rhs))
        },
    },
    Relation {
        id: "fixedtie.tie.conj",
        kind: RelationKind::Defining,
        statement: "φ_k η_1 = φ_k σ_1 φ_k σ_1^-1",
        params: &["k"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![ph(p[0]), t(1)], vec![ph(p[0]), s(1), ph(p[0]), si(1)])),
    },
    Relation {
        id: "fixedtie.tie.slide",
        kind: RelationKind::Defining,
        statement: "φ_k η_1 = σ_1 φ_k σ_1^-1 η_1",
        params: &["k"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![ph(p[0]), t(1)], vec![s(1), ph(p[0]), si(1), t(1)])),
    },
    Relation {
        id: "fixedtie.tie.swap",
        kind: RelationKind::Defining,
        statement: "φ_k η_1 = σ_1 φ_k σ_1^-1 φ_k",
        params: &["k"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![ph(p[0]), t(1)], vec![s(1), ph(p[0]), si(1), ph(p[0])])),
    },
    Relation {
        id: "fixedtie.comm",
        kind: RelationKind::Defining,
        statement: "φ_i φ_j = φ_j φ_i",
        params: &["i", "j"],
        flavors: MULTI_FIXED,
        build: |p| (p[0] < p[1]).then(|| (vec![ph(p[0]), ph(p[1])], vec![ph(p[1]), ph(p[0])])),
    },
    // generalized ties
    Relation {
        id: "def.gentie",
        kind: RelationKind::Derived,
        statement: "η_{i,j} = σ_i…σ_{j−2} η_{j−1} σ_{j−2}^-1…σ_i^-1",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| (p[0] < p[1]).then(|| (vec![Letter::GenTie(p[0], p[1])], expand_gen_tie(p[0], p[1]))),
    },
    Relation {
        id: "def.gfixedtie",
        kind: RelationKind::Derived,
        statement: "φ_{k,j} = σ_{j−1}…σ_1 φ_k σ_1^-1…σ_{j−1}^-1",
        params: &["k", "j"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![gph(p[0], p[1])], expand_gen_fixed_tie(p[0], p[1]))),
    },
    Relation {
        id: "gentie.slide.i",
        kind: RelationKind::Derived,
        statement: "σ_i η_{i,j} = η_{i+1,j} σ_i",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            if j <= i + 1 {
                return None;
            }
            Some((vec![s(i), gt(i, j)?], vec![gt(i + 1, j)?, s(i)]))
        },
    },
    Relation {
        id: "gentie.slide.ii",
        kind: RelationKind::Derived,
        statement: "σ_j η_{i,j} = η_{i,j+1} σ_j",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            if i >= j {
                return None;
            }
            Some((vec![s(j), gt(i, j)?], vec![gt(i, j + 1)?, s(j)]))
        },
    },
    Relation {
        id: "gentie.slide.iii",
        kind: RelationKind::Derived,
        statement: "σ_{i−1} η_{i,j} = η_{i−1,j} σ_{i−1}",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            if i < 2 || i >= j {
                return None;
            }
            Some((vec![s(i - 1), gt(i, j)?], vec![gt(i - 1, j)?, s(i - 1)]))
        },
    },
    Relation {
        id: "gentie.slide.iv",
        kind: RelationKind::Derived,
        statement: "σ_{j−1} η_{i,j} = η_{i,j−1} σ_{j−1}",
        params: &["i", "j"],
        flavors: ALL,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            if i + 1 >= j {
                return None;
            }
            Some((vec![s(j - 1), gt(i, j)?], vec![gt(i, j - 1)?, s(j - 1)]))
        },
    },
    Relation {
        id: "gentie.transitive.a",
        kind: RelationKind::Derived,
        statement: "η_{i,k} η_{k,m} = η_{i,k} η_{i,m}",
        params: &["i", "k", "m"],
        flavors: ALL,
        build: |p| {
            let (i, k, m) = (p[0], p[1], p[2]);
            if i == m {
                return None;
            }
            Some((vec![gt(i, k)?, gt(k, m)?], vec![gt(i, k)?, gt(i, m)?]))
        },
    },
    Relation {
        id: "gentie.transitive.b",
        kind: RelationKind::Derived,
        statement: "η_{i,k} η_{i,m} = η_{k,m} η_{i,m}",
        params: &["i", "k", "m"],
        flavors: ALL,
        build: |p| {
            let (i, k, m) = (p[0], p[1], p[2]);
            if k == m {
                return None;
            }
            Some((vec![gt(i, k)?, gt(i, m)?], vec![gt(k, m)?, gt(i, m)?]))
        },
    },
    // type B generalized fixed ties, f_j read as φ_{1,j}
    Relation {
        id: "ftie.comm.tie",
        kind: RelationKind::Derived,
        statement: "f_j η_i = η_i f_j",
        params: &["j", "i"],
        flavors: WITH_FIXED,
        build: |p| Some((vec![gph(1, p[0]), t(p[1])], vec![t(p[1]), gph(1, p[0])])),
    },
    Relation {
        id: "ftie.sigma",
        kind: RelationKind::Derived,
        statement: "f_j σ_i = σ_i f_{s_i(j)}",
        params: &["j", "i"],
        flavors: WITH_FIXED,
        build: |p| {
            let (j, i) = (p[0], p[1]);
            Some((vec![gph(1, j), s(i)], vec![s(i), gph(1, transposed(i, j))]))
        },
    },
    Relation {
        id: "ftie.tie.a",
        kind: RelationKind::Derived,
        statement: "η_{i,j} f_i = f_j f_i",
        params: &["i", "j"],
        flavors: WITH_FIXED,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            Some((vec![gt(i, j)?, gph(1, i)], vec![gph(1, j), gph(1, i)]))
        },
    },
    Relation {
        id: "ftie.tie.b",
        kind: RelationKind::Derived,
        statement: "f_j f_i = f_j η_{i,j}",
        params: &["i", "j"],
        flavors: WITH_FIXED,
        build: |p| {
            let (i, j) = (p[0], p[1]);
            Some((vec![gph(1, j), gph(1, i)], vec![gph(1, j), gt(i, j)?]))
        },
    },
    Relation {
        id: "gfixedtie.comm.tie",
        kind: RelationKind::Derived,
        statement: "η_k φ_{i,j} = φ_{i,j} η_k",
        params: &["i", "j", "k"],
        flavors: WITH_FIXED,
        build: |p| {
            let (i, j, k) = (p[0], p[1], p[2]);
            Some((vec![t(k), gph(i, j)], vec![gph(i, j), t(k)]))
        },
    },
    Relation {
        id: "gfixedtie.sigma",
        kind: RelationKind::Derived,
        statement: "φ_{i,j} σ_k = σ_k φ_{i,s_k(j)}",
        params: &["i", "j", "k"],
        flavors: WITH_FIXED,
        build: |p| {
            let (i, j, k) = (p[0], p[1], p[2]);
            Some((vec![gph(i, j), s(k)], vec![s(k), gph(i, transposed(k, j))]))
        },
    },
    Relation {
        id: "gfixedtie.tie.a",
        kind: RelationKind::Derived,
        statement: "η_{i,j} φ_{k,i} = φ_{k,i} φ_{k,j}",
        params: &["i", "j", "k"],
        flavors: WITH_FIXED,
        build: |p| {
            let (i, j, k) = (p[0], p[1], p[2]);
            Some((vec![gt(i, j)?, gph(k, i)], vec![gph(k, i), gph(k, j)]))
        },
    },
    Relation {
        id: "gfixedtie.tie.b",
        kind: RelationKind::Derived,
        statement: "φ_{k,i} φ_{k,j} = φ_{k,j} η_{i,j}",
        params: &["i", "j", "k"],
        flavors: WITH_FIXED,
        build: |p| {
            let (i, j, k) = (p[0], p[1], p[2]);
            Some((vec![gph(k, i), gph(k, j)], vec![gph(k, j), gt(i, j)?]))
        },
    },
];

/// Every relation family, regardless of context.
pub fn all_relations() -> &'static [Relation] {
    RELATIONS
}

pub fn find_relation(id: &str) -> Option<&'static Relation> {
    RELATIONS.iter().find(|r| r.id == id)
}

/// The relations admitted by `ctx`, after checking that every instance has
/// equal scan semantics on both sides.
#[derive(Debug, Clone)]
pub struct Catalog {
    ctx: Context,
    relations: Vec<&'static Relation>,
}

impl Catalog {
    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn relations(&self) -> &[&'static Relation] {
        &self.relations
    }

    pub fn get(&self, id: &str) -> Option<&'static Relation> {
        self.relations.iter().copied().find(|r| r.id == id)
    }

    pub fn instances(&self) -> Vec<RelationInstance> {
        self.relations.iter().flat_map(|r| r.instances(&self.ctx)).collect()
    }

    pub fn instantiate(&self, id: &str, params: &[usize]) -> Result<RelationInstance, RewriteError> {
        let rel = self.get(id).ok_or_else(|| RewriteError::UnknownRelation(id.to_string()))?;
        rel.instantiate(&self.ctx, params)
    }
}

pub fn relation_catalog(ctx: &Context) -> Result<Catalog, CatalogError> {
    let relations: Vec<&'static Relation> = RELATIONS.iter().filter(|r| r.admits(ctx)).collect();
    for rel in &relations {
        for inst in rel.instances(ctx) {
            let lhs = TiedWord::new_unchecked(*ctx, inst.lhs.clone());
            let rhs = TiedWord::new_unchecked(*ctx, inst.rhs.clone());
            if scan_semantics(&lhs) != scan_semantics(&rhs) {
                return Err(CatalogError::Unsound(inst.to_string()));
            }
        }
    }
    Ok(Catalog { ctx: *ctx, relations })
}

/// Replaces the matched side of `inst` starting at 1-based `at` by the
/// other side. An empty side matches anywhere in `1..=len+1`.
pub fn apply_relation(
    w: &TiedWord,
    at: usize,
    inst: &RelationInstance,
    dir: Direction,
) -> Result<TiedWord, RewriteError> {
    let (from, to) = match dir {
        Direction::LeftToRight => (&inst.lhs, &inst.rhs),
        Direction::RightToLeft => (&inst.rhs, &inst.lhs),
    };
    let letters = w.letters();
    if at == 0 || at - 1 + from.len() > letters.len() {
        return Err(RewriteError::NoMatch(at));
    }
    let start = at - 1;
    if &letters[start..start + from.len()] != from.as_slice() {
        return Err(RewriteError::NoMatch(at));
    }
    let mut out = Vec::with_capacity(letters.len() - from.len() + to.len());
    out.extend_from_slice(&letters[..start]);
    out.extend_from_slice(to);
    out.extend_from_slice(&letters[start + from.len()..]);
    TiedWord::new(*w.ctx(), out).map_err(|_| RewriteError::ContextMismatch)
}

/// `l(η_{i,j}) = |i−j|`, `l(η_i) = 1`; `None` for other letters.
pub fn tie_length(letter: &Letter) -> Option<usize> {
    match *letter {
        Letter::Tie(_) => Some(1),
        Letter::GenTie(i, j) => Some(i.abs_diff(j)),
        _ => None,
    }
}

/// A word split into its braid part and the partition its ties induce,
/// with all ties moved to the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    /// Sigma and loop letters only.
    pub braid_part: TiedWord,
    /// Labels are bottom positions.
    pub tie_part: TiePartition,
}

impl NormalForm {
    /// `braid_part` followed by one generalized tie per non-least member of
    /// each class, chained to the least moving member.
    pub fn reconstruct(&self) -> TiedWord {
        let mut letters = self.braid_part.letters().to_vec();
        letters.extend(realize_partition(&self.tie_part));
        TiedWord::new_unchecked(*self.braid_part.ctx(), letters)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid=\"{}\" ties=", self.braid_part)?;
        let tied: Vec<String> = self
            .tie_part
            .tied_classes()
            .map(|c| format!("{{{}}}", c.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", tied.join(","))
    }
}

/// Tie letters realizing a partition at the bottom of a word.
pub fn realize_partition(partition: &TiePartition) -> Vec<Letter> {
    let mut out = Vec::new();
    for class in partition.tied_classes() {
        let moving: Vec<usize> =
            class.iter().filter_map(|s| if let Strand::Moving(i) = *s { Some(i) } else { None }).collect();
        let Some(&anchor) = moving.first() else {
            continue;
        };
        for &m in &moving[1..] {
            out.push(Letter::GenTie(anchor, m));
        }
        for s in class {
            if let Strand::Fixed(k) = *s {
                out.push(Letter::GenFixedTie(k, anchor));
            }
        }
    }
    out
}

pub fn normal_form(w: &TiedWord) -> NormalForm {
    let sem = scan_semantics(w);
    let perm = &sem.perm;
    NormalForm { braid_part: w.strip_ties(), tie_part: sem.partition.relabel_moving(|s| perm.image(s)) }
}
