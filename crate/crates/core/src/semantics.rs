//! The invariant image of a tied word: induced permutation, tie partition,
//! winding vectors and closure summaries, plus the embedding of the braid
//! part into the full braid group on `g + n` strands.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::equivalence::BraidWord;
use crate::words::{Context, Flavor, Letter, Sign, TiedWord};

/// Disjoint-set forest over `0..len`.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(len: usize) -> Self {
        UnionFind { parent: (0..len).collect(), rank: vec![0; len] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }

    /// Classes as sorted index lists, ordered by least element.
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        classes
    }
}

/// A strand of the mixed braid: fixed strands sort before moving ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Fixed(usize),
    Moving(usize),
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strand::Fixed(k) => write!(f, "F{k}"),
            Strand::Moving(i) => write!(f, "M{i}"),
        }
    }
}

/// Permutation of moving positions, `top ↦ bottom`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// From 1-based images; `None` unless the map is a bijection of `1..=n`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| next.image(x)).collect() }
    }

    /// Cycles, each starting at its least element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Whether `i` and `j` lie on one cycle.
    pub fn same_cycle(&self, i: usize, j: usize) -> bool {
        let mut x = self.image(i);
        loop {
            if x == j {
                return true;
            }
            if x == i {
                return i == j;
            }
            x = self.image(x);
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}->{}", i + 1, x)?;
        }
        f.write_str(")")
    }
}

/// Partition of `{F1..Fg} ∪ {M1..Mn}` in canonical form: every class is
/// sorted and classes are ordered by least element. Singletons are kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TiePartition {
    g: usize,
    n: usize,
    classes: Vec<Vec<Strand>>,
}

impl TiePartition {
    pub fn discrete(g: usize, n: usize) -> Self {
        let classes = (1..=g).map(Strand::Fixed).chain((1..=n).map(Strand::Moving)).map(|s| vec![s]).collect();
        TiePartition { g, n, classes }
    }

    /// Canonicalizes arbitrary classes; missing elements become singletons.
    /// Returns `None` if an element is out of range or appears twice.
    pub fn from_classes(g: usize, n: usize, classes: Vec<Vec<Strand>>) -> Option<Self> {
        let mut uf = UnionFind::new(g + n);
        let mut seen = vec![false; g + n];
        for class in &classes {
            let mut first = None;
            for &s in class {
                let idx = strand_index(g, n, s)?;
                if std::mem::replace(&mut seen[idx], true) {
                    return None;
                }
                match first {
                    None => first = Some(idx),
                    Some(f) => uf.union(f, idx),
                }
            }
        }
        Some(TiePartition::from_union_find(g, n, &mut uf))
    }

    pub(crate) fn from_union_find(g: usize, n: usize, uf: &mut UnionFind) -> Self {
        let classes = uf
            .classes()
            .into_iter()
            .map(|c| c.into_iter().map(|idx| index_strand(g, idx)).collect())
            .collect();
        TiePartition { g, n, classes }
    }

    pub fn classes(&self) -> &[Vec<Strand>] {
        &self.classes
    }

    /// Classes with at least two elements.
    pub fn tied_classes(&self) -> impl Iterator<Item = &Vec<Strand>> {
        self.classes.iter().filter(|c| c.len() > 1)
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn same_class(&self, a: Strand, b: Strand) -> bool {
        self.classes.iter().any(|c| c.contains(&a) && c.contains(&b))
    }

    /// Relabels moving strands through `f`, fixed strands stay put.
    pub fn relabel_moving(&self, f: impl Fn(usize) -> usize) -> TiePartition {
        let classes = self
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|s| match *s {
                        Strand::Moving(i) => Strand::Moving(f(i)),
                        fixed => fixed,
                    })
                    .collect()
            })
            .collect();
        TiePartition::from_classes(self.g, self.n, classes).expect("relabeling is a bijection")
    }
}

impl fmt::Display for TiePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (ci, class) in self.classes.iter().enumerate() {
            if ci > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (si, s) in class.iter().enumerate() {
                if si > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

fn strand_index(g: usize, n: usize, s: Strand) -> Option<usize> {
    match s {
        Strand::Fixed(k) if (1..=g).contains(&k) => Some(k - 1),
        Strand::Moving(i) if (1..=n).contains(&i) => Some(g + i - 1),
        _ => None,
    }
}

fn index_strand(g: usize, idx: usize) -> Strand {
    if idx < g {
        Strand::Fixed(idx + 1)
    } else {
        Strand::Moving(idx - g + 1)
    }
}

/// What a single scan of a word records. Two words related by a defining
/// relation always have equal semantics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semantics {
    pub perm: Permutation,
    /// Labels are top positions.
    pub partition: TiePartition,
    /// `winding[s-1][k-1]` is the exponent sum of `a_k` credited to strand
    /// `Ms`. Empty when there are no fixed strands.
    pub winding: Vec<Vec<i64>>,
}

pub fn permutation(w: &TiedWord) -> Permutation {
    let n = w.ctx().n();
    let mut pos: Vec<usize> = (1..=n).collect();
    for letter in w.letters() {
        if let Letter::Sigma(i, _) = *letter {
            pos.swap(i - 1, i);
        }
    }
    positions_to_perm(&pos)
}

fn positions_to_perm(pos: &[usize]) -> Permutation {
    let mut images = vec![0; pos.len()];
    for (p, &strand) in pos.iter().enumerate() {
        images[strand - 1] = p + 1;
    }
    Permutation { images }
}

/// Single top-to-bottom pass tracking which strand occupies each position.
pub fn scan_semantics(w: &TiedWord) -> Semantics {
    let ctx = w.ctx();
    let (g, n) = (ctx.g(), ctx.n());
    let mut pos: Vec<usize> = (1..=n).collect();
    let mut uf = UnionFind::new(g + n);
    let mut winding = if g == 0 { Vec::new() } else { vec![vec![0i64; g]; n] };
    let moving = |strand: usize| g + strand - 1;
    for letter in w.letters() {
        match *letter {
            Letter::Sigma(i, _) => pos.swap(i - 1, i),
            Letter::Loop(k, sign) => winding[pos[0] - 1][k - 1] += sign.value(),
            Letter::Tie(i) => uf.union(moving(pos[i - 1]), moving(pos[i])),
            Letter::GenTie(i, j) => uf.union(moving(pos[i - 1]), moving(pos[j - 1])),
            Letter::FixedTie(k) => uf.union(k - 1, moving(pos[0])),
            Letter::GenFixedTie(k, j) => uf.union(k - 1, moving(pos[j - 1])),
        }
    }
    Semantics {
        perm: positions_to_perm(&pos),
        partition: TiePartition::from_union_find(g, n, &mut uf),
        winding,
    }
}

/// An element of the closed-up tied link: a fixed strand or a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosureElement {
    Fixed(usize),
    /// 1-based index into [`ClosureSummary::components`].
    Component(usize),
}

impl fmt::Display for ClosureElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureElement::Fixed(k) => write!(f, "F{k}"),
            ClosureElement::Component(c) => write!(f, "C{c}"),
        }
    }
}

/// The closure of a tied mixed braid, as far as ties and homology see it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosureSummary {
    pub g: usize,
    /// Cycles of the permutation as sorted strand lists, ordered by least strand.
    pub components: Vec<Vec<usize>>,
    /// Partition of fixed strands and components, canonical.
    pub tie_classes: Vec<Vec<ClosureElement>>,
    /// Per-component sum of member windings; reduced into `[0, p)` for lens spaces.
    pub component_winding: Vec<Vec<i64>>,
    pub modulus: Option<u32>,
}

/// Labeling-free shape of a closure: for every tie class, its fixed strands
/// and the sorted winding vectors of its components. Equal for closures
/// that differ only by how components are numbered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosureSignature {
    pub classes: Vec<(Vec<usize>, Vec<Vec<i64>>)>,
}

impl ClosureSummary {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn tie_class_count(&self) -> usize {
        self.tie_classes.len()
    }

    pub fn signature(&self) -> ClosureSignature {
        let mut classes: Vec<(Vec<usize>, Vec<Vec<i64>>)> = self
            .tie_classes
            .iter()
            .map(|class| {
                let mut fixed = Vec::new();
                let mut windings = Vec::new();
                for el in class {
                    match *el {
                        ClosureElement::Fixed(k) => fixed.push(k),
                        ClosureElement::Component(c) => windings.push(self.component_winding[c - 1].clone()),
                    }
                }
                windings.sort();
                (fixed, windings)
            })
            .collect();
        classes.sort();
        ClosureSignature { classes }
    }

    /// The line-oriented `key=value` report.
    pub fn report(&self) -> String {
        let mut out = format!("components={} tieClasses={}\n", self.components.len(), self.tie_classes.len());
        for (ci, comp) in self.components.iter().enumerate() {
            let members: Vec<String> = comp.iter().map(|s| format!("M{s}")).collect();
            out.push_str(&format!("component.C{}={}", ci + 1, members.join(",")));
            if self.g > 0 {
                out.push_str(&format!(" winding={}", fmt_vector(&self.component_winding[ci])));
            }
            out.push('\n');
        }
        for (ti, class) in self.tie_classes.iter().enumerate() {
            let members: Vec<String> = class.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("tieClass.{}={}\n", ti + 1, members.join(",")));
        }
        if let Some(p) = self.modulus {
            out.push_str(&format!("modulus={p}\n"));
        }
        out
    }

    /// One-line canonical record with sorted classes and components.
    pub fn record(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("[{}]", c.iter().map(|s| format!("M{s}")).collect::<Vec<_>>().join(",")))
            .collect();
        let ties: Vec<String> = self
            .tie_classes
            .iter()
            .map(|c| format!("[{}]", c.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let winding: Vec<String> = self.component_winding.iter().map(|v| fmt_vector(v)).collect();
        let modulus = self.modulus.map(|p| p.to_string()).unwrap_or_else(|| "-".to_string());
        format!(
            "closure g={} components=[{}] ties=[{}] winding=[{}] mod={}",
            self.g,
            comps.join(","),
            ties.join(","),
            winding.join(","),
            modulus
        )
    }
}

fn fmt_vector(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn closure_summary(w: &TiedWord) -> ClosureSummary {
    closure_of(&scan_semantics(w), w.ctx())
}

pub(crate) fn closure_of(sem: &Semantics, ctx: &Context) -> ClosureSummary {
    let (g, n) = (ctx.g(), ctx.n());
    let components: Vec<Vec<usize>> = sem
        .perm
        .cycles()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    let mut component_of = vec![0; n + 1];
    for (ci, comp) in components.iter().enumerate() {
        for &s in comp {
            component_of[s] = ci;
        }
    }
    // union-find over fixed strands then components
    let mut uf = UnionFind::new(g + components.len());
    for class in sem.partition.classes() {
        let idx = |s: &Strand| match *s {
            Strand::Fixed(k) => k - 1,
            Strand::Moving(i) => g + component_of[i],
        };
        if let Some(first) = class.first() {
            let f = idx(first);
            for s in &class[1..] {
                uf.union(f, idx(s));
            }
        }
    }
    let tie_classes = uf
        .classes()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|x| if x < g { ClosureElement::Fixed(x + 1) } else { ClosureElement::Component(x - g + 1) })
                .collect()
        })
        .collect();
    let modulus = if ctx.flavor() == Flavor::Lens { ctx.p() } else { None };
    let component_winding = if g == 0 {
        vec![Vec::new(); components.len()]
    } else {
        components
            .iter()
            .map(|comp| {
                (0..g)
                    .map(|k| {
                        let total: i64 = comp.iter().map(|&s| sem.winding[s - 1][k]).sum();
                        match modulus {
                            Some(p) => total.rem_euclid(i64::from(p)),
                            None => total,
                        }
                    })
                    .collect()
            })
            .collect()
    };
    ClosureSummary { g, components, tie_classes, component_winding, modulus }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("letter {0} is not a tie")]
    NotATie(usize),
    #[error("position {0} is outside the word")]
    PositionOutOfRange(usize),
    #[error("word contains a tie token at position {0}")]
    TieTokenPresent(usize),
}

/// Whether deleting the tie at 1-based `index` changes the closure's tie classes.
pub fn essential(w: &TiedWord, index: usize) -> Result<bool, SemanticsError> {
    let letter = w
        .letters()
        .get(index.wrapping_sub(1))
        .ok_or(SemanticsError::PositionOutOfRange(index))?;
    if !letter.is_tie() {
        return Err(SemanticsError::NotATie(index));
    }
    let mut letters = w.letters().to_vec();
    letters.remove(index - 1);
    let without = TiedWord::new_unchecked(*w.ctx(), letters);
    Ok(closure_summary(w).tie_classes != closure_summary(&without).tie_classes)
}

/// Image of a tie-free word in the braid group on `g + n` strands.
///
/// `σ_j` goes to the generator at position `g + j`; the loop `a_k` goes to
/// the band generator in which the first moving strand passes in front of
/// fixed strands `k+1..g`, encircles fixed strand `k` and comes back.
pub fn embed_to_full_braid(w: &TiedWord) -> Result<BraidWord, SemanticsError> {
    let g = w.ctx().g();
    let strands = g + w.ctx().n();
    let mut letters: Vec<i32> = Vec::new();
    for (idx, letter) in w.letters().iter().enumerate() {
        match *letter {
            Letter::Sigma(j, sign) => letters.push(signed((g + j) as i32, sign)),
            Letter::Loop(k, sign) => {
                letters.extend(((k + 1)..=g).rev().map(|m| m as i32));
                letters.push(signed(k as i32, sign));
                letters.push(signed(k as i32, sign));
                letters.extend(((k + 1)..=g).map(|m| -(m as i32)));
            }
            _ => return Err(SemanticsError::TieTokenPresent(idx + 1)),
        }
    }
    Ok(BraidWord::new_unchecked(strands, letters))
}

fn signed(index: i32, sign: Sign) -> i32 {
    match sign {
        Sign::Plus => index,
        Sign::Minus => -index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, ctx: Context) -> TiedWord {
        TiedWord::parse(text, ctx).unwrap()
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permutation(&w("s1", Context::s3(3))).images(), &[2, 1, 3]);
        assert!(permutation(&w("a1 t2", Context::solid_torus(3))).is_identity());
        assert_eq!(permutation(&w("s1 s2", Context::s3(3))).images(), &[3, 1, 2]);
    }

    #[test]
    fn scan_examples() {
        let ctx = Context::s3(2);
        let sem = scan_semantics(&w("t1", ctx));
        assert_eq!(sem.partition.to_string(), "{{M1,M2}}");
        assert!(sem.perm.is_identity());
        let sem = scan_semantics(&w("s1 t1", ctx));
        assert_eq!(sem.partition.to_string(), "{{M1,M2}}");
        assert_eq!(sem.perm.images(), &[2, 1]);
        let sem = scan_semantics(&w("p1 s1 p1", Context::solid_torus(2)));
        assert_eq!(sem.partition.to_string(), "{{F1,M1,M2}}");
        assert!(scan_semantics(&w("s1", ctx)).winding.is_empty());
    }

    #[test]
    fn closure_examples() {
        let ctx = Context::s3(2);
        let c = closure_summary(&w("s1", ctx));
        assert_eq!((c.component_count(), c.tie_class_count()), (1, 1));
        let c = closure_summary(&w("t1", ctx));
        assert_eq!((c.component_count(), c.tie_class_count()), (2, 1));
        let c = closure_summary(&w("a1 s1 s1", Context::lens(2, 3)));
        assert_eq!(c.component_count(), 2);
        assert_eq!(c.component_winding, vec![vec![1], vec![0]]);
        let c = closure_summary(&w("A1", Context::lens(1, 3)));
        assert_eq!(c.component_winding, vec![vec![2]]);
    }

    #[test]
    fn report_formats() {
        let c = closure_summary(&w("t1", Context::s3(2)));
        assert!(c.report().starts_with("components=2 tieClasses=1\n"));
        assert_eq!(c.record(), "closure g=0 components=[[M1],[M2]] ties=[[C1,C2]] winding=[(),()] mod=-");
    }

    #[test]
    fn essential_examples() {
        let ctx = Context::s3(2);
        assert_eq!(essential(&w("t1", ctx), 1), Ok(true));
        assert_eq!(essential(&w("s1 t(1,2)", ctx), 2), Ok(false));
        assert_eq!(essential(&w("t1 t1", ctx), 1), Ok(false));
        assert_eq!(essential(&w("s1 t1", ctx), 1), Err(SemanticsError::NotATie(1)));
        assert_eq!(essential(&w("s1", ctx), 0), Err(SemanticsError::PositionOutOfRange(0)));
    }

    #[test]
    fn embedding_examples() {
        let e = embed_to_full_braid(&w("s1", Context::handlebody(2, 2))).unwrap();
        assert_eq!((e.strands(), e.letters()), (4, &[3][..]));
        let e = embed_to_full_braid(&w("a2", Context::handlebody(2, 1))).unwrap();
        assert_eq!((e.strands(), e.letters()), (3, &[2, 2][..]));
        let e = embed_to_full_braid(&w("a1", Context::handlebody(2, 1))).unwrap();
        assert_eq!(e.letters(), &[2, 1, 1, -2]);
        let e = embed_to_full_braid(&w("A1", Context::handlebody(2, 1))).unwrap();
        assert_eq!(e.letters(), &[2, -1, -1, -2]);
        assert!(embed_to_full_braid(&w("t1", Context::s3(2))).is_err());
    }

    #[test]
    fn partition_from_classes_rejects_duplicates() {
        assert!(TiePartition::from_classes(0, 2, vec![vec![Strand::Moving(1), Strand::Moving(1)]]).is_none());
        assert!(TiePartition::from_classes(0, 2, vec![vec![Strand::Moving(3)]]).is_none());
        let p = TiePartition::from_classes(1, 2, vec![vec![Strand::Moving(2), Strand::Fixed(1)]]).unwrap();
        assert_eq!(p.to_string(), "{{F1,M2},{M1}}");
    }

    #[test]
    fn permutation_cycles() {
        let p = Permutation::from_images(vec![3, 1, 2, 4]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 3, 2], vec![4]]);
        assert!(p.same_cycle(1, 2));
        assert!(!p.same_cycle(1, 4));
        assert!(p.then(&p.inverse()).is_identity());
        assert!(Permutation::from_images(vec![1, 1]).is_none());
    }
}
