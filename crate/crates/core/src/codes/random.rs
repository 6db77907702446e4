//! Randomized search for short codewords. Results are never certified.
//!
//! Each trial permutes the columns at random, recomputes the Howell form so
//! that its rows vanish on a random set of leading columns, and then runs a
//! greedy descent over `±row` moves starting from the best single row or
//! pair of rows. Trials draw from independent streams of one seed, so the
//! outcome does not depend on how they are scheduled.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::howell::howell_form;
use super::norms::VectorStats;
use super::{WeightKind, ZmCode};
use crate::error::{ForgeError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomizedOutcome {
    /// Smallest nonzero value found.
    pub best: u64,
    pub witness: Vec<u32>,
    /// Whether `best` is at most the requested bound.
    pub within_bound: bool,
    pub trials: u64,
    pub certified: bool,
}

fn add(a: &[u32], b: &[u32], negate: bool, m: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| if negate { (x + m - y) % m } else { (x + y) % m }).collect()
}

type Candidate = (u64, Vec<u32>);

fn consider(best: &mut Option<Candidate>, value: u64, word: &[u32]) {
    if value == 0 {
        return;
    }
    let better = match best {
        None => true,
        Some((v, w)) => value < *v || (value == *v && word < w.as_slice()),
    };
    if better {
        *best = Some((value, word.to_vec()));
    }
}

fn pick(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y < x { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn trial(rows: &[Vec<u32>], n: usize, m: u32, kind: WeightKind, seed: u64, index: u64) -> Option<Candidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let permuted: Vec<Vec<u32>> = rows.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
    let basis: Vec<Vec<u32>> = howell_form(&permuted, n, m)
        .into_iter()
        .map(|h| {
            let mut w = vec![0u32; n];
            for (pos, &j) in perm.iter().enumerate() {
                w[j] = h.entries[pos];
            }
            w
        })
        .collect();
    let value = |w: &[u32]| kind.evaluate(&VectorStats::of(w, m), m);

    let mut best: Option<Candidate> = None;
    for (i, a) in basis.iter().enumerate() {
        consider(&mut best, value(a), a);
        for b in &basis[i + 1..] {
            for negate in [false, true] {
                let s = add(a, b, negate, m);
                consider(&mut best, value(&s), &s);
            }
        }
    }
    let (mut current, mut word) = best.clone()?;
    loop {
        let mut step: Option<Candidate> = None;
        for g in &basis {
            for negate in [false, true] {
                let s = add(&word, g, negate, m);
                let v = value(&s);
                if v > 0 && v < current {
                    consider(&mut step, v, &s);
                }
            }
        }
        match step {
            Some((v, w)) => {
                current = v;
                word = w;
            }
            None => break,
        }
    }
    pick(best, Some((current, word)))
}

/// Smallest nonzero value of `kind` found by `effort` random trials; with
/// `effort = 0` only the generator rows are examined.
pub fn min_norm_randomized(code: &ZmCode, kind: WeightKind, bound: u64, effort: u64, seed: u64) -> Result<RandomizedOutcome> {
    let m = code.modulus();
    kind.check_modulus(m)?;
    if kind.needs_all_one_orthogonality() && !code.in_all_one_perp() {
        return Err(ForgeError::Precondition("type norms need a code orthogonal to the all-one vector".into()));
    }
    let rows = code.generator_rows();
    let n = code.length();
    let mut best: Option<Candidate> = None;
    for r in &rows {
        consider(&mut best, kind.evaluate(&VectorStats::of(r, m), m), r);
    }
    let found = (0..effort)
        .into_par_iter()
        .map(|i| trial(&rows, n, m, kind, seed, i))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None, pick);
    let (value, witness) = pick(best, found).ok_or_else(|| ForgeError::Precondition("code has no nonzero codeword".into()))?;
    Ok(RandomizedOutcome { best: value, witness, within_bound: value <= bound, trials: effort, certified: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{min_weight_exhaustive, DEFAULT_BUDGET};
    use crate::matrices::{binary_associate, normalize_first_row, paley_one};

    #[test]
    fn effort_zero_uses_generators_only() {
        let c = ZmCode::from_rows(&[vec![1, 1, 1, 1], vec![0, 0, 1, 1]], 2).unwrap();
        let r = min_norm_randomized(&c, WeightKind::Hamming, 2, 0, 5).unwrap();
        assert_eq!((r.best, r.within_bound, r.certified), (2, true, false));
        assert!(c.contains(&r.witness));
    }

    #[test]
    fn finds_golay_minimum_and_is_reproducible() {
        let b = binary_associate(&normalize_first_row(&paley_one(23).unwrap()));
        let c = ZmCode::from_rows(&b.rows_i64(), 2).unwrap();
        let a = min_norm_randomized(&c, WeightKind::Hamming, 8, 64, 11).unwrap();
        let b2 = min_norm_randomized(&c, WeightKind::Hamming, 8, 64, 11).unwrap();
        assert_eq!(a, b2);
        assert!(c.contains(&a.witness));
        assert_eq!(a.best, min_weight_exhaustive(&c, WeightKind::Hamming, DEFAULT_BUDGET).unwrap().minimum);
    }

    #[test]
    fn type_two_norm_over_z6() {
        let b = binary_associate(&normalize_first_row(&paley_one(23).unwrap()));
        let c = ZmCode::from_rows(&b.rows_i64(), 6).unwrap();
        let r = min_norm_randomized(&c, WeightKind::TypeIINorm, 100, 16, 3).unwrap();
        assert!(c.contains(&r.witness));
        assert_eq!(r.best, WeightKind::TypeIINorm.evaluate(&VectorStats::of(&r.witness, 6), 6));
        assert_eq!(r.best % 12, 0);
    }
}
