//! Brouwer–Zimmermann minimum distance for binary and ternary codes.
//!
//! Several systematic generator matrices are built on information sets that
//! overlap as little as possible. Enumerating all combinations of at most `w`
//! rows of a matrix finds every codeword with at most `w` nonzero entries on
//! its information set; a codeword missed by every matrix therefore has at
//! least `w + 1 - (k - r_j)` nonzero entries on the `r_j` columns that are
//! fresh for matrix `j`. The sum of these is a certified lower bound.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ZmCode;
use crate::error::{ForgeError, Result};

const MAX_SETS: usize = 4;

/// Packed vector over GF(2) (`ones` only) or GF(3) (`ones`, `twos`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Packed<const W: usize> {
    ones: [u64; W],
    twos: [u64; W],
}

impl<const W: usize> Packed<W> {
    const ZERO: Self = Packed { ones: [0; W], twos: [0; W] };

    fn from_entries(e: &[u32]) -> Self {
        let mut p = Self::ZERO;
        for (j, &x) in e.iter().enumerate() {
            match x {
                1 => p.ones[j / 64] |= 1 << (j % 64),
                2 => p.twos[j / 64] |= 1 << (j % 64),
                _ => {}
            }
        }
        p
    }

    fn entries(&self, n: usize) -> Vec<u32> {
        (0..n)
            .map(|j| {
                let bit = 1u64 << (j % 64);
                if self.ones[j / 64] & bit != 0 {
                    1
                } else if self.twos[j / 64] & bit != 0 {
                    2
                } else {
                    0
                }
            })
            .collect()
    }

    fn weight(&self) -> u32 {
        (0..W).map(|i| (self.ones[i] | self.twos[i]).count_ones()).sum()
    }

    fn add(&self, o: &Self, ternary: bool) -> Self {
        let mut r = Self::ZERO;
        for i in 0..W {
            if ternary {
                let (x1, x2, y1, y2) = (self.ones[i], self.twos[i], o.ones[i], o.twos[i]);
                r.ones[i] = (x1 & !(y1 | y2)) | (y1 & !(x1 | x2)) | (x2 & y2);
                r.twos[i] = (x2 & !(y1 | y2)) | (y2 & !(x1 | x2)) | (x1 & y1);
            } else {
                r.ones[i] = self.ones[i] ^ o.ones[i];
            }
        }
        r
    }

    fn neg(&self) -> Self {
        Packed { ones: self.twos, twos: self.ones }
    }
}

/// Result of a Brouwer–Zimmermann run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BzOutcome {
    /// Certified minimum weight, when it is at most the cap.
    pub minimum: Option<u64>,
    /// True when the lower bound passed the cap before the minimum was settled.
    pub above_cap: bool,
    pub lower_bound: u64,
    pub best_weight: u64,
    pub witness: Vec<u32>,
    pub information_set_ranks: Vec<usize>,
    pub levels: Vec<usize>,
    pub weight_divisor: u64,
    pub enumerated: u64,
}

/// Row-reduces `rows` over GF(p) choosing pivots in `order`; returns the
/// systematic rows and their pivot columns.
fn systematic(rows: &[Vec<u32>], order: &[usize], p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut rows = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, i);
        // over GF(2) and GF(3) every nonzero element is its own inverse
        let inv = rows[r][c];
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

struct InfoMatrix {
    rows: Vec<Vec<u32>>,
    fresh: usize,
}

fn information_sets(code: &ZmCode, p: u32, seed: u64) -> Vec<InfoMatrix> {
    let n = code.length();
    let gens = code.generator_rows();
    let k = gens.len();
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..MAX_SETS {
        let mut fresh_cols: Vec<usize> = (0..n).filter(|&j| !used[j]).collect();
        let mut old_cols: Vec<usize> = (0..n).filter(|&j| used[j]).collect();
        if fresh_cols.is_empty() {
            break;
        }
        // the first set keeps the natural column order, which is already
        // systematic for codes given as [I | A]
        if s > 0 {
            fresh_cols.shuffle(&mut rng);
            old_cols.shuffle(&mut rng);
        }
        let order: Vec<usize> = fresh_cols.iter().chain(&old_cols).copied().collect();
        let (rows, pivots) = systematic(&gens, &order, p);
        let fresh = pivots.iter().filter(|&&c| !used[c]).count();
        if fresh == 0 {
            break;
        }
        for &c in &pivots {
            used[c] = true;
        }
        debug_assert_eq!(rows.len(), k);
        sets.push(InfoMatrix { rows, fresh });
    }
    sets
}

fn weight_divisor(code: &ZmCode, p: u32) -> u64 {
    let rows = code.generator_rows();
    let weights: Vec<usize> = rows.iter().map(|r| r.iter().filter(|&&x| x != 0).count()).collect();
    match p {
        3 if code.is_self_orthogonal() => 3,
        2 if code.is_self_orthogonal() && weights.iter().all(|w| w % 4 == 0) => 4,
        2 if weights.iter().all(|w| w % 2 == 0) => 2,
        _ => 1,
    }
}

#[derive(Clone)]
struct Found {
    weight: u32,
    word: Vec<u32>,
    count: u64,
}

impl Found {
    fn better(a: Found, b: Found) -> Found {
        let count = a.count + b.count;
        let mut w = if (b.weight, &b.word) < (a.weight, &a.word) { b } else { a };
        w.count = count;
        w
    }
}

/// All combinations of exactly `level` rows with nonzero coefficients (the
/// first fixed to 1 over GF(3)), split into tasks by their first two rows.
fn enumerate_level<const W: usize>(rows: &[Packed<W>], level: usize, ternary: bool, n: usize) -> Found {
    let k = rows.len();
    let prefix = level.min(2);
    let mut tasks: Vec<Vec<usize>> = Vec::new();
    if prefix == 1 {
        tasks.extend((0..k).map(|i| vec![i]));
    } else {
        for i in 0..k {
            for j in i + 1..k {
                tasks.push(vec![i, j]);
            }
        }
    }
    let empty = Found { weight: u32::MAX, word: Vec::new(), count: 0 };
    let results: Vec<Found> = tasks
        .par_iter()
        .map(|t| {
            let mut best = (u32::MAX, Packed::<W>::ZERO);
            let mut count = 0u64;
            let starts: Vec<Packed<W>> = if t.len() == 1 {
                vec![rows[t[0]]]
            } else if ternary {
                vec![rows[t[0]].add(&rows[t[1]], true), rows[t[0]].add(&rows[t[1]].neg(), true)]
            } else {
                vec![rows[t[0]].add(&rows[t[1]], false)]
            };
            for start in starts {
                descend(rows, *t.last().unwrap() + 1, level - t.len(), start, ternary, n, &mut best, &mut count);
            }
            Found { weight: best.0, word: if count > 0 { best.1.entries(n) } else { Vec::new() }, count }
        })
        .collect();
    results.into_iter().fold(empty, Found::better)
}

#[allow(clippy::too_many_arguments)]
fn descend<const W: usize>(
    rows: &[Packed<W>],
    from: usize,
    left: usize,
    acc: Packed<W>,
    ternary: bool,
    n: usize,
    best: &mut (u32, Packed<W>),
    count: &mut u64,
) {
    if left == 0 {
        *count += 1;
        let w = acc.weight();
        if w < best.0 || (w == best.0 && acc.entries(n) < best.1.entries(n)) {
            *best = (w, acc);
        }
        return;
    }
    for i in from..=rows.len() - left {
        descend(rows, i + 1, left - 1, acc.add(&rows[i], ternary), ternary, n, best, count);
        if ternary {
            descend(rows, i + 1, left - 1, acc.add(&rows[i].neg(), ternary), ternary, n, best, count);
        }
    }
}

fn round_up(x: u64, d: u64) -> u64 {
    x.div_ceil(d) * d
}

/// Certified minimum Hamming weight of a code over GF(2) or GF(3), or a
/// certificate that it exceeds `cap`.
pub fn min_weight_bz(code: &ZmCode, cap: u64, seed: u64) -> Result<BzOutcome> {
    let p = code.modulus();
    if p != 2 && p != 3 {
        return Err(ForgeError::InvalidParameter(format!("Brouwer–Zimmermann needs modulus 2 or 3, got {p}")));
    }
    match code.length().div_ceil(64) {
        0 | 1 => run::<1>(code, cap, seed),
        2 => run::<2>(code, cap, seed),
        3 => run::<3>(code, cap, seed),
        4 => run::<4>(code, cap, seed),
        _ => Err(ForgeError::InvalidParameter(format!("length {} exceeds 256", code.length()))),
    }
}

fn run<const W: usize>(code: &ZmCode, cap: u64, seed: u64) -> Result<BzOutcome> {
    let p = code.modulus();
    let n = code.length();
    let ternary = p == 3;
    let k = code.generators().len();
    if k == 0 {
        return Err(ForgeError::Precondition("zero code has no minimum weight".into()));
    }
    let sets = information_sets(code, p, seed);
    let packed: Vec<Vec<Packed<W>>> =
        sets.iter().map(|s| s.rows.iter().map(|r| Packed::from_entries(r)).collect()).collect();
    let divisor = weight_divisor(code, p);
    let mut levels = vec![0usize; sets.len()];
    let mut best = Found { weight: u32::MAX, word: Vec::new(), count: 0 };
    let mut enumerated = 0u64;
    let mut lower = 1u64;

    let outcome = |best: &Found, lower: u64, levels: &[usize], enumerated: u64, minimum: Option<u64>, above: bool| BzOutcome {
        minimum,
        above_cap: above,
        lower_bound: lower,
        best_weight: best.weight as u64,
        witness: best.word.clone(),
        information_set_ranks: sets.iter().map(|s| s.fresh).collect(),
        levels: levels.to_vec(),
        weight_divisor: divisor,
        enumerated,
    };

    for w in 1..=k {
        for (j, set) in sets.iter().enumerate() {
            // a matrix joins once its bound grows at this level and then
            // catches up on every lower level; the first one always runs
            if j > 0 && w + set.fresh <= k {
                continue;
            }
            for l in levels[j] + 1..=w {
                let found = enumerate_level(&packed[j], l, ternary, n);
                enumerated += found.count;
                best = Found::better(best, found);
                levels[j] = l;
            }
        }
        let exhausted = levels[0] == k;
        let raw: u64 = sets
            .iter()
            .zip(&levels)
            .map(|(s, &l)| if l == 0 { 0 } else { (l + 1 + s.fresh).saturating_sub(k) as u64 })
            .sum();
        lower = lower.max(round_up(raw.max(1), divisor));
        if exhausted || best.weight as u64 <= lower {
            let min = best.weight as u64;
            return Ok(outcome(&best, lower.max(min), &levels, enumerated, Some(min), false).capped(cap));
        }
        if lower > cap {
            return Ok(outcome(&best, lower, &levels, enumerated, None, true));
        }
    }
    unreachable!("the first information set is exhausted at level k")
}

impl BzOutcome {
    fn capped(mut self, cap: u64) -> Self {
        if let Some(min) = self.minimum {
            if min > cap {
                self.minimum = None;
                self.above_cap = true;
            }
        }
        self
    }

    pub fn is_certified(&self) -> bool {
        self.minimum.is_some() || self.above_cap
    }
}
