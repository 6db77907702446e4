//! Exhaustive traversal of a code over `Z/mZ`.
//!
//! Codewords are the unique expansions `Σ a_i g_i` over the Howell
//! generators with `0 ≤ a_i < m/lead_i`. The coefficient space is walked in
//! reflected mixed-radix Gray order, so consecutive codewords differ by one
//! `±g_i` and the statistics are updated incrementally. The first few
//! coefficients are fixed per task to split the work across threads; tasks
//! are merged in a fixed order so results never depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use super::norms::VectorStats;
use super::{WeightKind, ZmCode};
use crate::arith::{lee, minimal_lift};
use crate::error::{ForgeError, Result};

const MIN_TASKS: u64 = 256;

struct Walker {
    m: u32,
    word: Vec<u32>,
    stats: VectorStats,
    lee_hist: Vec<u32>,
    lee_tab: Vec<u32>,
    lift_tab: Vec<i64>,
}

impl Walker {
    fn new(m: u32, word: Vec<u32>) -> Self {
        let lee_tab: Vec<u32> = (0..m).map(|x| lee(x, m)).collect();
        let lift_tab: Vec<i64> = (0..m).map(|x| minimal_lift(x, m)).collect();
        let mut lee_hist = vec![0u32; (m / 2 + 1) as usize];
        for &x in &word {
            lee_hist[lee_tab[x as usize] as usize] += 1;
        }
        let stats = VectorStats::of(&word, m);
        Walker { m, word, stats, lee_hist, lee_tab, lift_tab }
    }

    fn set(&mut self, j: usize, new: u32) {
        let old = self.word[j];
        if old == new {
            return;
        }
        let (lo, ln) = (self.lee_tab[old as usize], self.lee_tab[new as usize]);
        let s = &mut self.stats;
        s.norm = s.norm + (ln as u64 * ln as u64) - (lo as u64 * lo as u64);
        s.lee = s.lee + ln as u64 - lo as u64;
        s.hamming = s.hamming + u32::from(new != 0) - u32::from(old != 0);
        s.lift_sum += self.lift_tab[new as usize] - self.lift_tab[old as usize];
        self.lee_hist[lo as usize] -= 1;
        self.lee_hist[ln as usize] += 1;
        self.word[j] = new;
    }

    fn add(&mut self, g: &[u32], from: usize, negate: bool) {
        let m = self.m;
        for j in from..g.len() {
            let y = g[j];
            if y == 0 {
                continue;
            }
            let x = self.word[j];
            let new = if negate { (x + m - y) % m } else { (x + y) % m };
            self.set(j, new);
        }
    }

    fn refresh_max_lee(&mut self) {
        self.stats.max_lee = self.lee_hist.iter().rposition(|&c| c > 0).unwrap_or(0) as u32;
    }
}

/// Folds every codeword of `code` through `fold`, in a thread-count
/// independent order of merges. Fails when the code has more than `budget`
/// codewords.
pub fn scan<A, I, F, M>(code: &ZmCode, budget: u64, init: I, fold: F, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[u32], &VectorStats) + Sync,
    M: Fn(A, A) -> A,
{
    let card = code
        .cardinality_u64()
        .filter(|&c| c <= budget)
        .ok_or_else(|| ForgeError::BudgetExceeded(format!("code has {} codewords, budget {budget}", code.cardinality())))?;
    let m = code.modulus();
    let n = code.length();
    let gens = code.generators();
    let radices = code.radices();

    let mut split = 0;
    let mut tasks = 1u64;
    while split < radices.len() && tasks < MIN_TASKS.min(card) {
        tasks *= radices[split] as u64;
        split += 1;
    }

    let results: Vec<A> = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let mut acc = init();
            let mut word = vec![0u32; n];
            let mut rest = t;
            for i in (0..split).rev() {
                let a = (rest % radices[i] as u64) as u32;
                rest /= radices[i] as u64;
                for (w, &g) in word.iter_mut().zip(&gens[i].entries) {
                    *w = ((*w as u64 + a as u64 * g as u64) % m as u64) as u32;
                }
            }
            let mut walker = Walker::new(m, word);
            fold(&mut acc, &walker.word, &walker.stats);
            let free = &radices[split..];
            let mut digits = vec![0u32; free.len()];
            let mut up = vec![true; free.len()];
            loop {
                let mut j = 0;
                while j < free.len() {
                    let movable = if up[j] { digits[j] + 1 < free[j] } else { digits[j] > 0 };
                    if movable {
                        break;
                    }
                    up[j] = !up[j];
                    j += 1;
                }
                if j == free.len() {
                    break;
                }
                let g = &gens[split + j];
                if up[j] {
                    digits[j] += 1;
                } else {
                    digits[j] -= 1;
                }
                walker.add(&g.entries, g.pivot, !up[j]);
                walker.refresh_max_lee();
                fold(&mut acc, &walker.word, &walker.stats);
            }
            acc
        })
        .collect();
    let mut it = results.into_iter();
    let first = it.next().unwrap_or_else(&init);
    Ok(it.fold(first, merge))
}

/// Exact minimum of a functional over a code with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveMinimum {
    pub minimum: u64,
    pub witness: Vec<u32>,
    /// Number of codewords attaining the minimum.
    pub multiplicity: u64,
    pub visited: u64,
}

#[derive(Clone)]
struct Best {
    value: u64,
    witness: Vec<u32>,
    count: u64,
    visited: u64,
}

impl Best {
    fn empty() -> Self {
        Best { value: u64::MAX, witness: Vec::new(), count: 0, visited: 0 }
    }

    fn offer(&mut self, value: u64, word: &[u32]) {
        if value < self.value {
            self.value = value;
            self.witness = word.to_vec();
            self.count = 1;
        } else if value == self.value {
            self.count += 1;
            if word < self.witness.as_slice() {
                self.witness = word.to_vec();
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.visited += other.visited;
        if other.value < self.value || (other.value == self.value && other.witness < self.witness) {
            let count = if other.value == self.value { self.count + other.count } else { other.count };
            self.value = other.value;
            self.witness = other.witness;
            self.count = count;
        } else if other.value == self.value {
            self.count += other.count;
        }
        self
    }
}

/// Minimum of `kind` over the codewords where it is nonzero. The zero
/// codeword takes part for functionals that are nonzero on it (odd and type I
/// norms, which give `m²`).
pub fn min_weight_exhaustive(code: &ZmCode, kind: WeightKind, budget: u64) -> Result<ExhaustiveMinimum> {
    let m = code.modulus();
    kind.check_modulus(m)?;
    if kind.needs_all_one_orthogonality() && !code.in_all_one_perp() {
        return Err(ForgeError::Precondition("type norms need a code orthogonal to the all-one vector".into()));
    }
    let best = scan(
        code,
        budget,
        Best::empty,
        |acc, word, stats| {
            acc.visited += 1;
            let value = kind.evaluate(stats, m);
            if value > 0 && value <= acc.value {
                acc.offer(value, word);
            }
        },
        Best::merge,
    )?;
    if best.count == 0 {
        return Err(ForgeError::Precondition("no codeword has a nonzero value".into()));
    }
    Ok(ExhaustiveMinimum { minimum: best.value, witness: best.witness, multiplicity: best.count, visited: best.visited })
}

/// Tally of functional values over all codewords.
pub fn value_distribution(code: &ZmCode, kind: WeightKind, budget: u64) -> Result<std::collections::BTreeMap<u64, u64>> {
    use std::collections::BTreeMap;
    let m = code.modulus();
    kind.check_modulus(m)?;
    if kind.needs_all_one_orthogonality() && !code.in_all_one_perp() {
        return Err(ForgeError::Precondition("type norms need a code orthogonal to the all-one vector".into()));
    }
    scan(
        code,
        budget,
        BTreeMap::new,
        |acc: &mut BTreeMap<u64, u64>, _, stats| *acc.entry(kind.evaluate(stats, m)).or_insert(0) += 1,
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )
}

/// All codewords satisfying `keep`, sorted lexicographically.
pub fn collect_codewords<P>(code: &ZmCode, budget: u64, keep: P) -> Result<Vec<Vec<u32>>>
where
    P: Fn(&[u32], &VectorStats) -> bool + Sync,
{
    let mut out = scan(
        code,
        budget,
        Vec::new,
        |acc: &mut Vec<Vec<u32>>, word, stats| {
            if keep(word, stats) {
                acc.push(word.to_vec());
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroOneWord {
    pub word: Vec<u32>,
    pub weight: u32,
    pub even: bool,
}

/// Codewords whose entries all lie in `{0, 1}`, sorted lexicographically.
pub fn zero_one_codewords(code: &ZmCode, budget: u64) -> Result<Vec<ZeroOneWord>> {
    let m = code.modulus();
    // A 0/1 word has Lee weight equal to its Hamming weight and, for m > 2,
    // lift sum equal to it too; the entry test settles the rest.
    let words = collect_codewords(code, budget, |word, stats| {
        stats.lee == stats.hamming as u64 && (m == 2 || stats.lift_sum == stats.hamming as i64) && word.iter().all(|&x| x <= 1)
    })?;
    Ok(words
        .into_iter()
        .map(|word| {
            let weight = word.iter().filter(|&&x| x == 1).count() as u32;
            ZeroOneWord { word, weight, even: weight % 2 == 0 }
        })
        .collect())
}
