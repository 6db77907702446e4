//! Short vectors by Schnorr–Euchner enumeration over an LLL-reduced basis.
//!
//! The search runs in floating point with a small outward slack on the
//! radius, and every vector it reports is re-checked in exact arithmetic, so
//! floating-point error can only cost extra nodes, never a missed vector.
//! The top levels of the search tree are expanded into a fixed list of
//! prefixes whose subtrees run in parallel, each with its own radius; the
//! merge is ordered, so results do not depend on the thread count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::reduce::{lll, to_i64_rows, ExactGso, LLL_DELTA};
use super::{common_scale, ScaledLattice, ScaledVector};
use crate::error::{ForgeError, Result};

const MIN_PREFIXES: usize = 64;
const SLACK: f64 = 1e-7;

/// Node limit shared by the enumeration routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBudget {
    pub max_nodes: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_nodes: 1 << 34 }
    }
}

/// Reduced basis with float Gram–Schmidt data, over scale `scale`.
struct Prepared {
    n: usize,
    scale: u64,
    basis: Vec<Vec<i64>>,
    r: Vec<f64>,
    mu: Vec<Vec<f64>>,
}

impl Prepared {
    fn new(l: &ScaledLattice, factor: u64) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = l.basis().iter().map(|r| r.iter().map(|x| x * factor).collect()).collect();
        let basis = lll(to_i64_rows(&rows)?, LLL_DELTA)?;
        let scale = l.scale() * factor * factor;
        let gso = ExactGso::new(&basis, scale);
        Ok(Prepared { n: basis.len(), scale, r: gso.r_f64(), mu: gso.mu_f64(), basis })
    }

    fn exact_norm(&self, y: &[i64], shift: Option<&[i64]>) -> (BigRational, Vec<i64>) {
        let n = self.n;
        let mut x = vec![0i128; n];
        for (yi, b) in y.iter().zip(&self.basis) {
            if *yi != 0 {
                for (xj, &bj) in x.iter_mut().zip(b) {
                    *xj += *yi as i128 * bj as i128;
                }
            }
        }
        if let Some(z) = shift {
            for (xj, &zj) in x.iter_mut().zip(z) {
                *xj += zj as i128;
            }
        }
        let sq: i128 = x.iter().map(|v| v * v).sum();
        let x64: Vec<i64> = x.into_iter().map(|v| v as i64).collect();
        (BigRational::new(BigInt::from(sq), BigInt::from(self.scale)), x64)
    }
}

struct Walk<'a> {
    p: &'a Prepared,
    center: &'a [f64],
    symmetric: bool,
    nodes: u64,
    limit: u64,
    aborted: bool,
    bound: f64,
}

fn to_bound(r: &BigRational) -> f64 {
    let v = r.to_f64().unwrap_or(f64::INFINITY);
    v * (1.0 + SLACK) + SLACK
}

impl Walk<'_> {
    fn center_at(&self, level: usize, y: &[i64]) -> f64 {
        let mut c = -self.center[level];
        for j in level + 1..self.p.n {
            c -= self.p.mu[j][level] * (y[j] as f64 + self.center[j]);
        }
        c
    }

    /// Visits levels `level, level-1, …, stop` (exclusive) and hands each
    /// completed assignment to `visit`.
    fn run(
        &mut self,
        level: isize,
        stop: isize,
        y: &mut Vec<i64>,
        partial: f64,
        zero_above: bool,
        visit: &mut dyn FnMut(&mut Self, &[i64], f64, bool),
    ) {
        if self.aborted {
            return;
        }
        if level == stop {
            visit(self, y, partial, zero_above);
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return;
        }
        let i = level as usize;
        let ctr = self.center_at(i, y);
        let ri = self.p.r[i];
        let start = ctr.round() as i64;
        // zigzag around the center: start, start±1, start∓1, …
        let mut up = start;
        let mut down = start - 1;
        let mut up_open = true;
        let mut down_open = true;
        let mut toward_up = ctr >= start as f64;
        while up_open || down_open {
            let take_up = (toward_up && up_open) || !down_open;
            let v = if take_up { up } else { down };
            let d = v as f64 - ctr;
            let cost = partial + ri * d * d;
            if cost > self.bound {
                if take_up {
                    up_open = false;
                } else {
                    down_open = false;
                }
            } else {
                let skip = self.symmetric && zero_above && v < 0;
                if skip {
                    down_open = false;
                } else {
                    y[i] = v;
                    self.run(level - 1, stop, y, cost, zero_above && v == 0, visit);
                    y[i] = 0;
                    if self.aborted {
                        return;
                    }
                }
                if take_up {
                    up += 1;
                } else {
                    down -= 1;
                }
            }
            if up_open && down_open {
                toward_up = !toward_up;
            }
        }
    }
}

struct Prefix {
    y: Vec<i64>,
    partial: f64,
    zero_above: bool,
}

/// Expands the top of the tree into at least `MIN_PREFIXES` prefixes (or
/// the whole tree) under the radius `bound`.
fn prefixes(p: &Prepared, center: &[f64], symmetric: bool, bound: f64) -> (Vec<Prefix>, isize) {
    let n = p.n as isize;
    let mut depth = 1;
    loop {
        let stop = n - 1 - depth;
        let stop = stop.max(-1);
        let mut walk = Walk { p, center, symmetric, nodes: 0, limit: u64::MAX, aborted: false, bound };
        let mut out = Vec::new();
        let mut y = vec![0i64; p.n];
        walk.run(n - 1, stop, &mut y, 0.0, true, &mut |_, y, partial, zero_above| {
            out.push(Prefix { y: y.to_vec(), partial, zero_above });
        });
        if out.len() >= MIN_PREFIXES || stop < 0 {
            return (out, stop);
        }
        depth += 1;
    }
}

/// Exact minimum norm with a witness, or a certificate that it exceeds `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinNorm {
    pub minimum: Option<BigRational>,
    pub above_cap: bool,
    pub upper_bound: BigRational,
    pub witness: ScaledVector,
    pub nodes: u64,
}

fn canonical_sign(x: &mut [i64]) {
    if x.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

/// Minimum norm of a lattice. With a cap, the search stops at norms above
/// it and reports `above_cap` when nothing at or below the cap exists.
pub fn min_norm(l: &ScaledLattice, cap: Option<&BigRational>, budget: EnumerationBudget) -> Result<MinNorm> {
    let p = Prepared::new(l, 1)?;
    let center = vec![0f64; p.n];
    // start from the shortest reduced basis vector
    let mut start: Option<(BigRational, Vec<i64>)> = None;
    for i in 0..p.n {
        let mut y = vec![0i64; p.n];
        y[i] = 1;
        let (norm, mut x) = p.exact_norm(&y, None);
        canonical_sign(&mut x);
        if start.as_ref().is_none_or(|(b, w)| norm < *b || (norm == *b && x < *w)) {
            start = Some((norm, x));
        }
    }
    let (start_norm, start_x) = start.ok_or_else(|| ForgeError::InvalidParameter("zero-dimensional lattice".into()))?;
    // ties with the start are kept so the witness is canonical
    let mut search = start_norm.clone();
    if let Some(c) = cap {
        if *c < search {
            search = c.clone();
        }
    }
    let (list, stop) = prefixes(&p, &center, true, to_bound(&search));
    let limit = budget.max_nodes;
    let results: Vec<(Option<(BigRational, Vec<i64>)>, u64, bool)> = list
        .par_iter()
        .map(|pre| {
            let mut best: Option<(BigRational, Vec<i64>)> = None;
            let mut exact_bound = search.clone();
            let mut walk = Walk { p: &p, center: &center, symmetric: true, nodes: 0, limit, aborted: false, bound: to_bound(&search) };
            let mut y = pre.y.clone();
            walk.run(stop, -1, &mut y, pre.partial, pre.zero_above, &mut |w, y, _, zero| {
                if zero {
                    return;
                }
                let (norm, mut x) = w.p.exact_norm(y, None);
                if norm > exact_bound || norm.is_zero() {
                    return;
                }
                canonical_sign(&mut x);
                let better = best.as_ref().is_none_or(|(b, bx)| norm < *b || (norm == *b && x < *bx));
                if better {
                    exact_bound = norm.clone();
                    w.bound = to_bound(&norm);
                    best = Some((norm, x));
                }
            });
            (best, walk.nodes, walk.aborted)
        })
        .collect();
    let mut nodes = 0u64;
    let mut best: Option<(BigRational, Vec<i64>)> = None;
    for (b, k, aborted) in results {
        nodes += k;
        if aborted {
            return Err(ForgeError::BudgetExceeded(format!("enumeration exceeded {limit} nodes in a subtree")));
        }
        if let Some((norm, x)) = b {
            if best.as_ref().is_none_or(|(bn, bx)| norm < *bn || (norm == *bn && x < *bx)) {
                best = Some((norm, x));
            }
        }
    }
    if nodes > limit {
        return Err(ForgeError::BudgetExceeded(format!("enumeration used {nodes} > {limit} nodes")));
    }
    let (upper, wx) = match best {
        Some((norm, x)) if norm <= start_norm => {
            if norm == start_norm && start_x < x {
                (start_norm, start_x)
            } else {
                (norm, x)
            }
        }
        _ => (start_norm, start_x),
    };
    let witness = ScaledVector::new(p.scale, wx.into_iter().map(BigInt::from).collect());
    let above_cap = cap.is_some_and(|c| upper > *c);
    Ok(MinNorm { minimum: if above_cap { None } else { Some(upper.clone()) }, above_cap, upper_bound: upper, witness, nodes })
}

/// Counts of nonzero lattice vectors by norm, for all norms up to `max`.
pub fn norm_counts(l: &ScaledLattice, max: &BigRational, budget: EnumerationBudget) -> Result<BTreeMap<BigRational, u64>> {
    let p = Prepared::new(l, 1)?;
    let center = vec![0f64; p.n];
    let list = collect(&p, &center, None, max, true, budget)?;
    let mut counts = BTreeMap::new();
    for (norm, _) in list {
        *counts.entry(norm).or_insert(0) += 2;
    }
    Ok(counts)
}

/// Number of lattice vectors of norm exactly `target`.
pub fn count_norm_vectors(l: &ScaledLattice, target: &BigRational, budget: EnumerationBudget) -> Result<u64> {
    if target.is_zero() {
        return Ok(1);
    }
    Ok(norm_counts(l, target, budget)?.get(target).copied().unwrap_or(0))
}

/// All leaves of norm at most `max` (exact), as (norm, ambient integer vector).
fn collect(
    p: &Prepared,
    center: &[f64],
    shift: Option<&[i64]>,
    max: &BigRational,
    symmetric: bool,
    budget: EnumerationBudget,
) -> Result<Vec<(BigRational, Vec<i64>)>> {
    let bound = to_bound(max);
    let (list, stop) = prefixes(p, center, symmetric, bound);
    let limit = budget.max_nodes;
    let results: Vec<(Vec<(BigRational, Vec<i64>)>, u64, bool)> = list
        .par_iter()
        .map(|pre| {
            let mut found = Vec::new();
            let mut walk = Walk { p, center, symmetric, nodes: 0, limit, aborted: false, bound };
            let mut y = pre.y.clone();
            walk.run(stop, -1, &mut y, pre.partial, pre.zero_above, &mut |w, y, _, zero| {
                if symmetric && zero {
                    return;
                }
                let (norm, x) = w.p.exact_norm(y, shift);
                if norm <= *max {
                    found.push((norm, x));
                }
            });
            (found, walk.nodes, walk.aborted)
        })
        .collect();
    let mut all = Vec::new();
    let mut nodes = 0u64;
    for (mut f, k, aborted) in results {
        if aborted {
            return Err(ForgeError::BudgetExceeded(format!("enumeration exceeded {limit} nodes in a subtree")));
        }
        nodes += k;
        all.append(&mut f);
    }
    if nodes > limit {
        return Err(ForgeError::BudgetExceeded(format!("enumeration used {nodes} > {limit} nodes")));
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVector {
    pub vector: ScaledVector,
    pub norm: BigRational,
}

/// Vectors of the coset `L + shift` with norm at most `cap`, sorted by norm
/// and then coordinates.
pub fn coset_short_vectors(
    l: &ScaledLattice,
    shift: &ScaledVector,
    cap: &BigRational,
    budget: EnumerationBudget,
) -> Result<Vec<ShortVector>> {
    if shift.coords.len() != l.dim() {
        return Err(ForgeError::DimensionMismatch { expected: l.dim(), found: shift.coords.len() });
    }
    let (s, rl, rv) = common_scale(l.scale(), shift.scale)?;
    let p = Prepared::new(l, rl)?;
    debug_assert_eq!(p.scale, s);
    let z: Vec<i64> = shift
        .rescaled(rv)
        .iter()
        .map(|x| x.to_i64().ok_or(ForgeError::Overflow("coset shift")))
        .collect::<Result<_>>()?;
    let coords = solve_rational(&p.basis, &z);
    let center: Vec<f64> = coords.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    // enumerate y near -coords so that y·B + z is short
    let list = collect(&p, &center, Some(&z), cap, false, budget)?;
    let mut out: Vec<ShortVector> = list
        .into_iter()
        .map(|(norm, x)| ShortVector { vector: ScaledVector::new(s, x.into_iter().map(BigInt::from).collect()), norm })
        .collect();
    out.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.vector.coords.cmp(&b.vector.coords)));
    Ok(out)
}

/// Rational `c` with `c·B = z`.
fn solve_rational(basis: &[Vec<i64>], z: &[i64]) -> Vec<BigRational> {
    let n = basis.len();
    // solve Bᵀ cᵀ = zᵀ by Gaussian elimination on the augmented matrix
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..n).map(|i| BigRational::from_integer(BigInt::from(basis[i][j]))).collect();
            row.push(BigRational::from_integer(BigInt::from(z[j])));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("full-rank basis");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

/// Convenience: `p/q` as a rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Whether every integer coordinate of the vector is odd.
pub fn all_odd(v: &ScaledVector) -> bool {
    v.coords.iter().all(|x| x.is_odd())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::to_big_rows;

    fn lat(scale: u64, rows: &[Vec<i64>]) -> ScaledLattice {
        ScaledLattice::from_generators(scale, &to_big_rows(rows)).unwrap()
    }

    #[test]
    fn integer_lattice_counts() {
        let z2 = ScaledLattice::integer_lattice(2);
        assert_eq!(count_norm_vectors(&z2, &ratio(1, 1), EnumerationBudget::default()).unwrap(), 4);
        assert_eq!(count_norm_vectors(&z2, &ratio(2, 1), EnumerationBudget::default()).unwrap(), 4);
        assert_eq!(count_norm_vectors(&z2, &ratio(5, 1), EnumerationBudget::default()).unwrap(), 8);
        let z5 = ScaledLattice::integer_lattice(5);
        let m = min_norm(&z5, None, EnumerationBudget::default()).unwrap();
        assert_eq!(m.minimum, Some(ratio(1, 1)));
        assert_eq!(m.witness.norm(), ratio(1, 1));
    }

    /// Brute-force oracle: all vectors with coefficient vectors in a box.
    fn brute_counts(basis: &[Vec<i64>], scale: u64, range: i64, max: &BigRational) -> BTreeMap<BigRational, u64> {
        let n = basis.len();
        let mut counts = BTreeMap::new();
        let width = (2 * range + 1) as usize;
        for code in 0..width.pow(n as u32) {
            let mut c = code;
            let mut x = vec![0i64; basis[0].len()];
            let mut zero = true;
            for b in basis {
                let y = (c % width) as i64 - range;
                c /= width;
                zero &= y == 0;
                for (xj, bj) in x.iter_mut().zip(b) {
                    *xj += y * bj;
                }
            }
            if zero {
                continue;
            }
            let norm = ratio(x.iter().map(|v| v * v).sum(), scale as i64);
            if norm <= *max {
                *counts.entry(norm).or_insert(0) += 1;
            }
        }
        counts
    }

    #[test]
    fn counts_match_box_oracle() {
        // A2-like lattice at scale 3 and a skewed 3-dim lattice
        let cases = [(3u64, vec![vec![3, 0, 0], vec![1, 1, 1], vec![0, 3, 0]]), (1, vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]])];
        for (s, rows) in cases {
            let l = lat(s, &rows);
            let max = ratio(12, 1);
            let got = norm_counts(&l, &max, EnumerationBudget::default()).unwrap();
            let basis: Vec<Vec<i64>> = l.basis().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
            assert_eq!(got, brute_counts(&basis, l.scale(), 8, &max));
            let m = min_norm(&l, None, EnumerationBudget::default()).unwrap();
            assert_eq!(m.minimum.as_ref(), got.keys().next());
        }
    }

    #[test]
    fn cap_certificate() {
        let l = lat(1, &[vec![2, 0], vec![0, 3]]);
        let m = min_norm(&l, Some(&ratio(3, 1)), EnumerationBudget::default()).unwrap();
        assert!(m.above_cap && m.minimum.is_none());
        let m = min_norm(&l, Some(&ratio(4, 1)), EnumerationBudget::default()).unwrap();
        assert_eq!(m.minimum, Some(ratio(4, 1)));
        assert_eq!(m.witness, ScaledVector::from_i64(1, &[2, 0]));
    }

    #[test]
    fn coset_vectors() {
        // Z^2 + (1/2, 1/2): four vectors of norm 1/2
        let z2 = ScaledLattice::integer_lattice(2);
        let shift = ScaledVector::from_i64(4, &[1, 1]);
        let v = coset_short_vectors(&z2, &shift, &ratio(1, 2), EnumerationBudget::default()).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|s| s.norm == ratio(1, 2) && all_odd(&s.vector)));
        let v = coset_short_vectors(&z2, &shift, &ratio(5, 2), EnumerationBudget::default()).unwrap();
        assert_eq!(v.len(), 12);
    }

    #[test]
    fn budget_is_reported() {
        let z8 = ScaledLattice::integer_lattice(8);
        let r = norm_counts(&z8, &ratio(6, 1), EnumerationBudget { max_nodes: 50 });
        assert!(matches!(r, Err(ForgeError::BudgetExceeded(_))));
    }
}
