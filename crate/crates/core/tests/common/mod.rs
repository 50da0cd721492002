//! Oracles shared by the integration tests. They are written independently
//! of the library's scan and reduction code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use tiedbraid::fuzz::FuzzRng;
use tiedbraid::{Context, Flavor, Letter, TiedWord};

/// Polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn constant(c: i64) -> Poly {
        Poly(vec![BigInt::from(c)]).trim()
    }

    pub fn monomial(c: i64, deg: usize) -> Poly {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = BigInt::from(c);
        Poly(v).trim()
    }

    fn trim(mut self) -> Poly {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn add(&self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        let mut v = vec![BigInt::zero(); len];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Poly(v).trim()
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly(v).trim()
    }
}

type Mat = [[Poly; 2]; 2];

fn mat(entries: [[i64; 4]; 2]) -> Mat {
    // each entry is (c0, c1) coefficients of 1 and t packed as [a0,a1,b0,b1]
    let p = |c0: i64, c1: i64| Poly::constant(c0).add(&Poly::monomial(c1, 1));
    [[p(entries[0][0], entries[0][1]), p(entries[0][2], entries[0][3])], [
        p(entries[1][0], entries[1][1]),
        p(entries[1][2], entries[1][3]),
    ]]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let cell = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

/// Reduced Burau representation of the 3-strand braid group over `ℤ[t]`,
/// which is faithful. Inverses are scaled by `t` to stay polynomial, so a
/// word is trivial iff its image is `t^{#inverses} · I`.
pub fn burau3_trivial(letters: &[i32]) -> bool {
    // σ1 = [[-t, 1], [0, 1]],   t·σ1⁻¹ = [[-1, 1], [0, t]]
    // σ2 = [[1, 0], [t, -t]],   t·σ2⁻¹ = [[t, 0], [t, -1]]
    let s1 = mat([[0, -1, 1, 0], [0, 0, 1, 0]]);
    let s1i = mat([[-1, 0, 1, 0], [0, 0, 0, 1]]);
    let s2 = mat([[1, 0, 0, 0], [0, 1, 0, -1]]);
    let s2i = mat([[0, 1, 0, 0], [0, 1, -1, 0]]);
    let mut acc = mat([[1, 0, 0, 0], [0, 0, 1, 0]]);
    let mut inverses = 0;
    for &l in letters {
        let m = match l {
            1 => &s1,
            -1 => &s1i,
            2 => &s2,
            -2 => &s2i,
            _ => panic!("not a 3-strand letter: {l}"),
        };
        if l < 0 {
            inverses += 1;
        }
        acc = mat_mul(&acc, m);
    }
    let diag = Poly::monomial(1, inverses);
    let zero = Poly(Vec::new());
    acc[0][0] == diag && acc[1][1] == diag && acc[0][1] == zero && acc[1][0] == zero
}

pub fn random_braid(rng: &mut FuzzRng, strands: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

pub fn invert(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|l| -l).collect()
}

/// A random relator of the braid group on `strands` strands, or its inverse.
fn relator(rng: &mut FuzzRng, strands: usize) -> Vec<i32> {
    let n = strands as i32;
    let i = rng.gen_range(1..n);
    let word = match rng.gen_range(0..3) {
        0 => vec![i, -i],
        1 if n >= 3 => {
            let j = if i + 1 < n { i + 1 } else { i - 1 };
            vec![i, j, i, -j, -i, -j]
        }
        _ => {
            let far: Vec<i32> = (1..n).filter(|j| (j - i).abs() >= 2).collect();
            if far.is_empty() {
                vec![-i, i]
            } else {
                let j = far[rng.gen_range(0..far.len())];
                vec![i, j, -i, -j]
            }
        }
    };
    if rng.gen_bool(0.5) {
        invert(&word)
    } else {
        word
    }
}

/// A word equal to the identity, built by inserting relators and
/// conjugating, with length at most `max_len`.
pub fn constructed_trivial(rng: &mut FuzzRng, strands: usize, max_len: usize) -> Vec<i32> {
    let mut w: Vec<i32> = Vec::new();
    loop {
        if rng.gen_bool(0.3) {
            let g = random_braid(rng, strands, 1)[0];
            if w.len() + 2 > max_len {
                return w;
            }
            let mut next = vec![g];
            next.extend_from_slice(&w);
            next.push(-g);
            w = next;
        } else {
            let r = relator(rng, strands);
            if w.len() + r.len() > max_len {
                return w;
            }
            let at = rng.gen_range(0..=w.len());
            w.splice(at..at, r);
        }
    }
}

/// Replaces braid-relation sides inside `w` at random; the result is the
/// same braid.
pub fn shuffle_equal(rng: &mut FuzzRng, w: &[i32], steps: usize) -> Vec<i32> {
    let mut w = w.to_vec();
    for _ in 0..steps {
        if w.len() < 2 {
            break;
        }
        let at = rng.gen_range(0..w.len() - 1);
        let (a, b) = (w[at], w[at + 1]);
        if (a.abs() - b.abs()).abs() >= 2 {
            w.swap(at, at + 1);
        } else if at + 2 < w.len() && a > 0 && b > 0 && w[at + 2] == a && (a - b).abs() == 1 {
            w[at] = b;
            w[at + 1] = a;
            w[at + 2] = b;
        } else if rng.gen_bool(0.2) {
            w.splice(at..at, [a, -a]);
        }
    }
    w
}

/// Position → strand after reading `letters[..upto]`, recomputed from scratch.
fn occupant(letters: &[Letter], upto: usize, n: usize, position: usize) -> usize {
    let mut order: Vec<usize> = (1..=n).collect();
    for l in &letters[..upto] {
        if let Letter::Sigma(i, _) = *l {
            order.swap(i - 1, i);
        }
    }
    order[position - 1]
}

/// Tie blocks as sets of labels `F<k>` / `M<s>` (top numbering), computed by
/// transitive closure of an adjacency matrix.
pub fn tie_blocks(w: &TiedWord) -> BTreeSet<BTreeSet<String>> {
    let (g, n) = (w.ctx().g(), w.ctx().n());
    let size = g + n;
    let mut adj = vec![vec![false; size]; size];
    for (i, row) in adj.iter_mut().enumerate() {
        row[i] = true;
    }
    let letters = w.letters();
    let mut link = |a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
    };
    for (t, l) in letters.iter().enumerate() {
        let at = |p: usize| g + occupant(letters, t, n, p) - 1;
        match *l {
            Letter::Tie(i) => link(at(i), at(i + 1)),
            Letter::GenTie(i, j) => link(at(i), at(j)),
            Letter::FixedTie(k) => link(k - 1, at(1)),
            Letter::GenFixedTie(k, j) => link(k - 1, at(j)),
            _ => {}
        }
    }
    for m in 0..size {
        for a in 0..size {
            for b in 0..size {
                if adj[a][m] && adj[m][b] {
                    adj[a][b] = true;
                }
            }
        }
    }
    let label = |x: usize| if x < g { format!("F{}", x + 1) } else { format!("M{}", x - g + 1) };
    (0..size).map(|a| (0..size).filter(|&b| adj[a][b]).map(label).collect()).collect()
}

/// Number of closure components: cycles of the top→bottom strand map.
pub fn component_count(w: &TiedWord) -> usize {
    let n = w.ctx().n();
    let letters = w.letters();
    let bottom_of = |s: usize| (1..=n).find(|&p| occupant(letters, letters.len(), n, p) == s).unwrap();
    let mut seen = vec![false; n + 1];
    let mut count = 0;
    for s in 1..=n {
        if !seen[s] {
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = bottom_of(x);
            }
        }
    }
    count
}

/// Every context with `g ≤ 3`, `n ≤ 5` (and `p ≤ 3` for lens spaces).
pub fn all_small_contexts() -> Vec<Context> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(Context::s3(n));
        out.push(Context::solid_torus(n));
        for p in 1..=3 {
            out.push(Context::lens(n, p));
        }
        for g in 1..=3 {
            out.push(Context::handlebody(g, n));
            out.push(Context::unlink_complement(g, n));
        }
    }
    out
}

pub fn flavor_context(rng: &mut FuzzRng, flavor: Flavor) -> Context {
    tiedbraid::fuzz::random_context(rng, flavor, 3, 5, 3)
}
