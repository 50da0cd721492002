//! Symbolic kernel for tied braid monoids of mixed braids in S³, the solid
//! torus, lens spaces L(p,1), genus-g handlebodies and complements of the
//! g-unlink.
//!
//! A [`TiedWord`] is read top to bottom. Its invariant image is computed by
//! [`scan_semantics`]; equality in the monoid is decided by
//! [`monoid_equal`], which compares braid parts with handle reduction and
//! tie parts as partitions. The [`moves`] module generates tie isotopy of
//! closures.

pub mod cli;
pub mod draw;
pub mod equivalence;
pub mod fuzz;
pub mod moves;
pub mod rewriting;
pub mod semantics;
pub mod words;

pub use equivalence::{
    braid_equal, braid_verdict, handle_reduce, monoid_equal, monoid_verdict, quick_invariants, BraidWord,
    HandleReduction, QuickInvariants, ReductionOutcome, Verdict, Witness, DEFAULT_BUDGET,
};
pub use rewriting::{apply_relation, normal_form, relation_catalog, tie_length, Catalog, Direction, NormalForm, Relation};
pub use semantics::{
    closure_summary, embed_to_full_braid, essential, permutation, scan_semantics, ClosureSummary, Permutation, Semantics,
    Strand, TiePartition,
};
pub use words::{Context, Flavor, Letter, Sign, TiedWord, WordError};
