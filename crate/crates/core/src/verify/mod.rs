//! Executable checks of the relations between Hadamard matrices, their
//! codes and their lattices. Every check produces a [`VerifyReport`].

mod claims;
pub mod maps;
pub mod report;

use num_integer::Integer;
use serde::Serialize;

use crate::codes::{ZmCode, DEFAULT_BUDGET};
use crate::error::{ForgeError, Result};
use crate::lattices::EnumerationBudget;
use crate::matrices::SignMatrix;

pub use claims::{
    check_cor1, check_cor15, check_cor34, check_divisors, check_dual_floor, check_hadamard_generates, check_leech,
    check_lemma_num, check_mckay, check_self_dual, check_thm14, check_thm48,
};
pub use maps::{map_even_to_type_two, map_type_two_to_even, MapDirection, MapOutcome};
pub use report::{Certification, ClaimId, Entry, Inputs, ReportBuilder, SubCheck, Verdict, VerifyReport};

/// `n = 4ℓm` with `m ≥ 3` odd, `ℓ ≥ 2` and `gcd(ℓ, m) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremParams {
    pub n: u64,
    pub m: u64,
    pub l: u64,
}

impl TheoremParams {
    pub fn new(n: u64, l: u64, m: u64) -> Result<Self> {
        if m < 3 || m % 2 == 0 || l < 2 || l.gcd(&m) != 1 || n != 4 * l * m {
            return Err(ForgeError::InvalidParameter(format!(
                "need n = 4ℓm with m ≥ 3 odd, ℓ ≥ 2, gcd(ℓ, m) = 1; got n = {n}, ℓ = {l}, m = {m}"
            )));
        }
        Ok(TheoremParams { n, m, l })
    }

    /// The split with the smallest admissible `m`.
    pub fn default_for(n: u64) -> Option<Self> {
        (3..=n / 8).step_by(2).find_map(|m| if n % (4 * m) == 0 { TheoremParams::new(n, n / (4 * m), m).ok() } else { None })
    }

    /// Uses whichever of `ℓ`, `m` is given, falling back to [`Self::default_for`].
    pub fn resolve(n: u64, l: Option<u64>, m: Option<u64>) -> Result<Self> {
        match (l, m) {
            (Some(l), Some(m)) => TheoremParams::new(n, l, m),
            (None, Some(m)) if m > 0 && n % (4 * m) == 0 => TheoremParams::new(n, n / (4 * m), m),
            (Some(l), None) if l > 0 && n % (4 * l) == 0 => TheoremParams::new(n, l, n / (4 * l)),
            (None, None) => TheoremParams::default_for(n)
                .ok_or_else(|| ForgeError::InvalidParameter(format!("order {n} has no split n = 4ℓm"))),
            _ => Err(ForgeError::InvalidParameter(format!("order {n} has no split with ℓ = {l:?}, m = {m:?}"))),
        }
    }
}

/// Knobs shared by all checks.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Seed for randomized engines; required whenever one runs.
    pub seed: Option<u64>,
    /// Largest code cardinality enumerated exhaustively.
    pub code_budget: u64,
    pub lattice_budget: EnumerationBudget,
    /// Node budget for the dimension-48 lattice cross-check.
    pub cross_check_budget: EnumerationBudget,
    /// Trials of the randomized code search.
    pub random_effort: u64,
    pub m: Option<u64>,
    pub l: Option<u64>,
    pub d: Option<u64>,
    /// Code for the `generates` claim; defaults to the ternary code of the matrix rows.
    pub code: Option<ZmCode>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: None,
            code_budget: DEFAULT_BUDGET,
            lattice_budget: EnumerationBudget::default(),
            cross_check_budget: EnumerationBudget { max_nodes: 1 << 24 },
            random_effort: 256,
            m: None,
            l: None,
            d: None,
            code: None,
        }
    }
}

impl VerifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        VerifyOptions { seed: Some(seed), ..VerifyOptions::default() }
    }

    /// Applies one work limit to every engine.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.code_budget = budget;
        self.lattice_budget = EnumerationBudget { max_nodes: budget };
        self.cross_check_budget = EnumerationBudget { max_nodes: budget };
        self
    }

    fn require_seed(&self, why: &str) -> Result<u64> {
        self.seed.ok_or_else(|| ForgeError::InvalidParameter(format!("a seed is required for {why}")))
    }
}

fn is_mckay_shape(h: &SignMatrix) -> bool {
    let n = h.order();
    n >= 12 && n % 8 == 4 && (0..n).all(|j| h.get(0, j) == -1) && (0..n).all(|i| (0..n).all(|j| h.get(i, j) as i32 + h.get(j, i) as i32 == if i == j { -2 } else { 0 }))
}

/// Claims that apply to a matrix of this order and shape.
pub fn applicable_claims(h: &SignMatrix) -> Vec<ClaimId> {
    let n = h.order() as u64;
    let mut out = vec![ClaimId::Divisors];
    let split = TheoremParams::default_for(n).is_some();
    if !claims::self_dual_targets(n).is_empty() {
        out.push(ClaimId::SelfDual);
    }
    if split {
        out.push(ClaimId::DualFloor);
    }
    if n == 24 {
        out.push(ClaimId::Cor1);
    }
    if n == 48 {
        out.push(ClaimId::Cor34);
    }
    if split && n <= 40 {
        out.extend([ClaimId::Thm14, ClaimId::Cor15]);
    }
    if n == 24 {
        out.push(ClaimId::Leech);
    }
    if split && n <= 40 {
        out.push(ClaimId::LemmaNum);
    }
    if is_mckay_shape(h) {
        out.push(ClaimId::Mckay);
    }
    if n == 48 {
        out.extend([ClaimId::Thm48, ClaimId::Generates]);
    }
    out
}

pub fn run_claim(claim: ClaimId, h: &SignMatrix, opts: &VerifyOptions) -> Result<VerifyReport> {
    let n = h.order() as u64;
    let params = || TheoremParams::resolve(n, opts.l, opts.m);
    if matches!(claim, ClaimId::Thm14 | ClaimId::Cor15 | ClaimId::LemmaNum) {
        if let Err(ForgeError::InvalidParameter(why)) = params() {
            let mut r = ReportBuilder::new(claim, h.order());
            r.param("l", opts.l).param("m", opts.m);
            r.inconclusive("hypothesis", why);
            return Ok(r.finish(Certification::Exact));
        }
    }
    match claim {
        ClaimId::Divisors => check_divisors(h),
        ClaimId::SelfDual => check_self_dual(h, opts),
        ClaimId::DualFloor => check_dual_floor(h, opts),
        ClaimId::Cor1 => check_cor1(h, opts),
        ClaimId::Cor34 => check_cor34(h, opts),
        ClaimId::Thm14 => check_thm14(h, &params()?, opts.d, opts),
        ClaimId::Cor15 => check_cor15(h, &params()?, opts),
        ClaimId::Leech => check_leech(h, opts),
        ClaimId::LemmaNum => check_lemma_num(h, &params()?, opts),
        ClaimId::Mckay => check_mckay(h, opts),
        ClaimId::Thm48 => check_thm48(h, opts),
        ClaimId::Generates => {
            let code = match &opts.code {
                Some(c) => c.clone(),
                None => ZmCode::from_rows(&h.rows_i64(), 3)?,
            };
            check_hadamard_generates(&code, h, opts)
        }
    }
}

/// Every applicable claim, in a fixed order.
pub fn run_all(h: &SignMatrix, opts: &VerifyOptions) -> Result<Vec<VerifyReport>> {
    applicable_claims(h).into_iter().map(|c| run_claim(c, h, opts)).collect()
}

/// Worst verdict over a set of reports.
pub fn overall(reports: &[VerifyReport]) -> Verdict {
    reports.iter().fold(Verdict::Pass, |v, r| v.combine(r.verdict))
}
