//! Linear codes over `Z/mZ`, their weights and refined norms, and the
//! minimum-weight engines (exhaustive, Brouwer–Zimmermann, randomized).

pub mod bz;
pub mod howell;
pub mod norms;
pub mod random;
pub mod scan;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{ForgeError, Result};
use howell::{howell_form, reduce_against, HowellRow};
use norms::VectorStats;

pub use bz::{min_weight_bz, BzOutcome};
pub use norms::{euclidean_norm, hamming_weight, lee_weight, odd_even_norms, type_norms};
pub use random::{min_norm_randomized, RandomizedOutcome};
pub use scan::{min_weight_exhaustive, zero_one_codewords, ExhaustiveMinimum, ZeroOneWord};

/// Default number of codewords the exhaustive engines may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZmVector {
    m: u32,
    entries: Vec<u32>,
}

impl ZmVector {
    pub fn new(m: u32, entries: Vec<u32>) -> Result<Self> {
        if m < 2 {
            return Err(ForgeError::InvalidParameter(format!("modulus {m} < 2")));
        }
        Ok(ZmVector { m, entries: entries.into_iter().map(|x| x % m).collect() })
    }

    pub fn from_integers(m: u32, v: &[i64]) -> Result<Self> {
        Self::new(m, v.iter().map(|x| x.rem_euclid(m as i64) as u32).collect())
    }

    pub fn zero(m: u32, n: usize) -> Self {
        ZmVector { m, entries: vec![0; n] }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn stats(&self) -> VectorStats {
        VectorStats::of(&self.entries, self.m)
    }

    /// Entries lifted to `(-m/2, m/2]`.
    pub fn minimal_lift(&self) -> Vec<i64> {
        self.entries.iter().map(|&x| crate::arith::minimal_lift(x, self.m)).collect()
    }

    pub fn dot(&self, other: &ZmVector) -> u32 {
        let m = self.m as u64;
        (self.entries.iter().zip(&other.entries).map(|(&a, &b)| a as u64 * b as u64 % m).sum::<u64>() % m) as u32
    }
}

/// Three-valued flag for properties that may be too expensive to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }
}

/// Functionals minimized by the search engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    Hamming,
    Lee,
    Euclidean,
    OddNorm,
    EvenNorm,
    TypeINorm,
    TypeIINorm,
}

impl WeightKind {
    /// Value of the functional from a vector's statistics.
    pub fn evaluate(self, s: &VectorStats, m: u32) -> u64 {
        match self {
            WeightKind::Hamming => s.hamming as u64,
            WeightKind::Lee => s.lee,
            WeightKind::Euclidean => s.norm,
            WeightKind::OddNorm => s.odd_even(m).0,
            WeightKind::EvenNorm => s.odd_even(m).1,
            WeightKind::TypeINorm => s.type_norms(m).0,
            WeightKind::TypeIINorm => s.type_norms(m).1,
        }
    }

    pub fn check_modulus(self, m: u32) -> Result<()> {
        match self {
            WeightKind::OddNorm | WeightKind::EvenNorm if m % 2 == 0 => Err(ForgeError::InvalidParameter(
                format!("odd/even norms need an odd modulus, got {m}"),
            )),
            _ => Ok(()),
        }
    }

    pub fn needs_all_one_orthogonality(self) -> bool {
        matches!(self, WeightKind::TypeINorm | WeightKind::TypeIINorm)
    }
}

/// A code over `Z/mZ` in Howell form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZmCode {
    m: u32,
    n: usize,
    gens: Vec<HowellRow>,
    card: BigUint,
    self_orthogonal: bool,
    self_dual: bool,
    type_two: TriState,
}

impl ZmCode {
    /// Code spanned over `Z/mZ` by the rows of an integer matrix.
    pub fn from_rows(rows: &[Vec<i64>], m: u32) -> Result<Self> {
        if m < 2 {
            return Err(ForgeError::InvalidParameter(format!("modulus {m} < 2")));
        }
        let n = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(ForgeError::DimensionMismatch { expected: n, found: bad.len() });
        }
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(m as i64) as u32).collect())
            .collect();
        Ok(Self::from_residues(&reduced, n, m))
    }

    pub fn from_residues(rows: &[Vec<u32>], n: usize, m: u32) -> Self {
        let gens = howell_form(rows, n, m);
        let card = gens.iter().fold(BigUint::one(), |acc, r| acc * BigUint::from(m / r.lead));
        let mut code = ZmCode {
            m,
            n,
            gens,
            card,
            self_orthogonal: false,
            self_dual: false,
            type_two: TriState::Unknown,
        };
        code.self_orthogonal = code.check_self_orthogonal();
        code.self_dual = code.self_orthogonal && n % 2 == 0 && code.card == BigUint::from(m).pow(n / 2);
        code.type_two = if m % 2 == 0 && code.self_dual {
            if code.generator_norms_divisible(2 * m as u64) {
                TriState::Yes
            } else {
                TriState::Unknown
            }
        } else {
            TriState::No
        };
        code
    }

    fn check_self_orthogonal(&self) -> bool {
        let m = self.m as u64;
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i..] {
                let d: u64 = a.entries.iter().zip(&b.entries).map(|(&x, &y)| x as u64 * y as u64 % m).sum();
                if d % m != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn generator_norms_divisible(&self, q: u64) -> bool {
        self.gens.iter().all(|g| VectorStats::of(&g.entries, self.m).norm % q == 0)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[HowellRow] {
        &self.gens
    }

    pub fn generator_rows(&self) -> Vec<Vec<u32>> {
        self.gens.iter().map(|r| r.entries.clone()).collect()
    }

    pub fn cardinality(&self) -> &BigUint {
        &self.card
    }

    /// Cardinality when it fits in a `u64`.
    pub fn cardinality_u64(&self) -> Option<u64> {
        u64::try_from(&self.card).ok()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.self_orthogonal
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    /// Type II flag from construction (generator criterion only).
    pub fn type_two_flag(&self) -> TriState {
        self.type_two
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.n && reduce_against(&self.gens, v, self.m).iter().all(|&x| x == 0)
    }

    pub fn contains_vector(&self, v: &ZmVector) -> bool {
        v.modulus() == self.m && self.contains(v.entries())
    }

    /// Whether the all-one vector is orthogonal to every codeword.
    pub fn in_all_one_perp(&self) -> bool {
        let m = self.m as u64;
        self.gens.iter().all(|g| g.entries.iter().map(|&x| x as u64).sum::<u64>() % m == 0)
    }

    /// Number of coefficient digits per generator in the unique expansion.
    pub(crate) fn radices(&self) -> Vec<u32> {
        self.gens.iter().map(|r| self.m / r.lead).collect()
    }
}

/// Type II decision for a self-dual code over an even modulus: the generator
/// criterion (all generator norms ≡ 0 mod 2·modulus) or an exhaustive check.
pub fn is_type_two(code: &ZmCode, budget: u64) -> Result<TriState> {
    let m = code.modulus();
    if m % 2 == 1 {
        return Err(ForgeError::InvalidParameter(format!("type II needs an even modulus, got {m}")));
    }
    if !code.is_self_dual() {
        return Ok(TriState::No);
    }
    if code.type_two == TriState::Yes {
        return Ok(TriState::Yes);
    }
    match code.cardinality_u64() {
        Some(c) if c <= budget => {
            let q = 2 * m as u64;
            let bad = scan::scan(
                code,
                budget,
                || None::<Vec<u32>>,
                |acc, word, stats| {
                    if acc.is_none() && stats.norm % q != 0 {
                        *acc = Some(word.to_vec());
                    }
                },
                |a, b| a.or(b),
            )?;
            Ok(if bad.is_some() { TriState::No } else { TriState::Yes })
        }
        _ => Ok(TriState::Unknown),
    }
}
