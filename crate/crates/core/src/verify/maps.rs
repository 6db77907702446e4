//! The codeword maps between `C_m` and `C′_ℓ`: a short even-norm word of
//! `C_m^⊥` becomes a short type II word of `C′_ℓ` through `(1/2m)·vH`, and a
//! short type II word of `C′_ℓ^⊥` becomes a short even-norm word of `C_m`
//! through `(1/2ℓ)·vHᵀ`.

use serde::Serialize;

use super::report::{SubCheck, Verdict};
use super::TheoremParams;
use crate::codes::{odd_even_norms, type_norms, ZmCode, ZmVector};
use crate::error::{ForgeError, Result};
use crate::matrices::{binary_associate, SignMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapDirection {
    EvenToTypeTwo,
    TypeTwoToEven,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapOutcome {
    pub direction: MapDirection,
    pub source: Vec<u32>,
    /// Even norm (or type II norm) of the source.
    pub d: u64,
    /// Odd norm (or type I norm) of the source minus the square of the modulus.
    pub k: i64,
    pub hypothesis: bool,
    pub lift: Vec<i64>,
    pub coefficients: Vec<i64>,
    pub image: Vec<u32>,
    pub image_euclidean: u64,
    /// Even norm (or type II norm) of the image.
    pub image_norm: u64,
    pub image_weight: u32,
    /// The bound `dn/4m²` (or `dn/4ℓ²`) as `numerator/denominator`.
    pub bound: (u64, u64),
    pub checks: Vec<SubCheck>,
}

impl MapOutcome {
    pub fn verdict(&self) -> Verdict {
        if !self.hypothesis {
            return Verdict::Inconclusive;
        }
        self.checks.iter().fold(Verdict::Pass, |v, c| v.combine(c.outcome))
    }
}

/// Minimal lift and its neighbour `v − m·sgn(v_i)·e_i` at the first
/// coordinate of largest Lee weight; the one accepted by `want` comes first.
fn lifts(u: &ZmVector, want: impl Fn(&[i64]) -> bool) -> Option<(Vec<i64>, Vec<i64>)> {
    let m = u.modulus() as i64;
    let v0 = u.minimal_lift();
    let (i, _) = v0.iter().enumerate().max_by_key(|(i, x)| (x.abs(), std::cmp::Reverse(*i)))?;
    if v0[i] == 0 {
        return None;
    }
    let mut w = v0.clone();
    w[i] -= m * v0[i].signum();
    if want(&v0) {
        Some((v0, w))
    } else if want(&w) {
        Some((w, v0))
    } else {
        None
    }
}

fn norm(v: &[i64]) -> u64 {
    v.iter().map(|x| (x * x) as u64).sum()
}

/// `v·Q` over the integers.
fn times(v: &[i64], q: &[Vec<i64>]) -> Vec<i64> {
    let n = q.first().map_or(0, Vec::len);
    let mut out = vec![0i64; n];
    for (x, row) in v.iter().zip(q) {
        if *x != 0 {
            for (o, y) in out.iter_mut().zip(row) {
                *o += x * y;
            }
        }
    }
    out
}

fn orthogonal_to_rows(u: &[u32], rows: &[Vec<i64>], m: u32) -> bool {
    rows.iter().all(|r| r.iter().zip(u).map(|(&a, &b)| a * b as i64).sum::<i64>().rem_euclid(m as i64) == 0)
}

struct Sides<'a> {
    h: &'a SignMatrix,
    params: &'a TheoremParams,
}

impl Sides<'_> {
    fn check(&self) -> Result<()> {
        if !self.h.first_row_is_ones() {
            return Err(ForgeError::Precondition("Hadamard matrix is not normalized".into()));
        }
        if self.h.order() as u64 != self.params.n {
            return Err(ForgeError::DimensionMismatch { expected: self.params.n as usize, found: self.h.order() });
        }
        Ok(())
    }
}

fn push(checks: &mut Vec<SubCheck>, name: &str, ok: bool) {
    checks.push(SubCheck { name: name.to_string(), outcome: Verdict::from(ok), detail: None });
}

/// Sends an even-norm word `u` of `C_m^⊥` to `(1/2m)·vH mod ℓ`.
pub fn map_even_to_type_two(h: &SignMatrix, u: &ZmVector, params: &TheoremParams) -> Result<MapOutcome> {
    Sides { h, params }.check()?;
    let (m, l, n) = (params.m, params.l, params.n);
    if u.modulus() as u64 != m || u.len() as u64 != n {
        return Err(ForgeError::InvalidParameter("source word must lie in (Z/m)^n".into()));
    }
    let bound_den = 4 * m * m;
    let mut out = MapOutcome {
        direction: MapDirection::EvenToTypeTwo,
        source: u.entries().to_vec(),
        d: 0,
        k: 0,
        hypothesis: false,
        lift: Vec::new(),
        coefficients: Vec::new(),
        image: Vec::new(),
        image_euclidean: 0,
        image_norm: 0,
        image_weight: 0,
        bound: (0, bound_den),
        checks: Vec::new(),
    };
    let Some((v, odd)) = lifts(u, |v| norm(v) % 2 == 0) else {
        return Ok(out);
    };
    let (d, odd_norm) = (norm(&v), norm(&odd));
    out.d = d;
    out.k = odd_norm as i64 - (m * m) as i64;
    out.bound = (d * n, bound_den);
    out.hypothesis = out.k * (l as i64) < (d * (l - 1)) as i64;
    if !out.hypothesis {
        return Ok(out);
    }
    let (oe_odd, oe_even) = odd_even_norms(u)?;
    push(&mut out.checks, "lift-norms", oe_odd == odd_norm && oe_even == d);
    let hm = h.rows_i64();
    // columns of H are the rows of Hᵀ, which generate C_m
    let ht = h.transpose().rows_i64();
    push(&mut out.checks, "source-in-dual", orthogonal_to_rows(u.entries(), &ht, m as u32));
    let vh = times(&v, &hm);
    let two_m = 2 * m as i64;
    let divisible = vh.iter().all(|x| x % two_m == 0);
    push(&mut out.checks, "lift-divisible", divisible);
    if !divisible {
        out.lift = v;
        return Ok(out);
    }
    let c: Vec<i64> = vh.iter().map(|x| x / two_m).collect();
    let image = ZmVector::from_integers(l as u32, &c)?;
    let code = ZmCode::from_rows(&binary_associate(h).rows_i64(), l as u32)?;
    push(&mut out.checks, "image-in-code", code.contains_vector(&image));
    push(&mut out.checks, "image-nonzero", !image.is_zero());
    let stats = image.stats();
    let typed = type_norms(&image).map(|(_, t2)| t2);
    push(&mut out.checks, "image-in-all-one-perp", typed.is_ok());
    let typed = typed.unwrap_or(u64::MAX);
    push(&mut out.checks, "image-norm-bound", typed.saturating_mul(bound_den) <= d * n);
    if d < 2 * m * ((l + 2) / 2) {
        push(&mut out.checks, "image-norm-sharp", typed == stats.norm && stats.norm * bound_den == d * n);
    }
    if out.k == 0 {
        push(&mut out.checks, "image-unit-entries", c.iter().all(|x| x.abs() <= 1));
        push(&mut out.checks, "image-weight", stats.hamming as u64 == stats.norm && stats.norm * bound_den == d * n && typed == stats.norm);
    }
    out.lift = v;
    out.coefficients = c;
    out.image = image.entries().to_vec();
    out.image_euclidean = stats.norm;
    out.image_norm = typed;
    out.image_weight = stats.hamming;
    Ok(out)
}

/// Sends a type II word `u` of `C′_ℓ^⊥` to `(1/2ℓ)·vHᵀ mod m`.
pub fn map_type_two_to_even(h: &SignMatrix, u: &ZmVector, params: &TheoremParams) -> Result<MapOutcome> {
    Sides { h, params }.check()?;
    let (m, l, n) = (params.m, params.l, params.n);
    if u.modulus() as u64 != l || u.len() as u64 != n {
        return Err(ForgeError::InvalidParameter("source word must lie in (Z/ℓ)^n".into()));
    }
    let bound_den = 4 * l * l;
    let mut out = MapOutcome {
        direction: MapDirection::TypeTwoToEven,
        source: u.entries().to_vec(),
        d: 0,
        k: 0,
        hypothesis: false,
        lift: Vec::new(),
        coefficients: Vec::new(),
        image: Vec::new(),
        image_euclidean: 0,
        image_norm: 0,
        image_weight: 0,
        bound: (0, bound_den),
        checks: Vec::new(),
    };
    let two_l = 2 * l as i64;
    let Some((v, type_one)) = lifts(u, |v| v.iter().sum::<i64>().rem_euclid(two_l) == 0) else {
        return Ok(out);
    };
    let (d, one_norm) = (norm(&v), norm(&type_one));
    out.d = d;
    out.k = one_norm as i64 - (l * l) as i64;
    out.bound = (d * n, bound_den);
    out.hypothesis = out.k * (m as i64) < (d * (m - 1)) as i64;
    if !out.hypothesis {
        return Ok(out);
    }
    match type_norms(u) {
        Ok((t1, t2)) => push(&mut out.checks, "lift-norms", t1 == one_norm && t2 == d),
        Err(_) => push(&mut out.checks, "lift-norms", false),
    }
    let b = binary_associate(h).rows_i64();
    push(&mut out.checks, "source-in-dual", orthogonal_to_rows(u.entries(), &b, l as u32));
    let ht = h.transpose().rows_i64();
    let vht = times(&v, &ht);
    let divisible = vht.iter().all(|x| x % two_l == 0);
    push(&mut out.checks, "lift-divisible", divisible);
    if !divisible {
        out.lift = v;
        return Ok(out);
    }
    let c: Vec<i64> = vht.iter().map(|x| x / two_l).collect();
    let image = ZmVector::from_integers(m as u32, &c)?;
    let code = ZmCode::from_rows(&ht, m as u32)?;
    push(&mut out.checks, "image-in-code", code.contains_vector(&image));
    push(&mut out.checks, "image-nonzero", !image.is_zero());
    let stats = image.stats();
    let even = odd_even_norms(&image)?.1;
    push(&mut out.checks, "image-norm-bound", even * bound_den <= d * n);
    if d < l * (m + 1) {
        push(&mut out.checks, "image-norm-sharp", even == stats.norm && stats.norm * bound_den == d * n);
    }
    if out.k == 0 {
        push(&mut out.checks, "image-unit-entries", c.iter().all(|x| x.abs() <= 1));
        push(&mut out.checks, "image-weight", stats.hamming as u64 == stats.norm && stats.norm * bound_den == d * n && even == stats.norm);
    }
    out.lift = v;
    out.coefficients = c;
    out.image = image.entries().to_vec();
    out.image_euclidean = stats.norm;
    out.image_norm = even;
    out.image_weight = stats.hamming;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::scan::collect_codewords;
    use crate::codes::DEFAULT_BUDGET;
    use crate::matrices::{kronecker, normalize_first_row, paley_one, sylvester};

    fn order_24_non_extremal() -> SignMatrix {
        normalize_first_row(&kronecker(&paley_one(11).unwrap(), &sylvester(1).unwrap()).unwrap())
    }

    #[test]
    fn weight_six_ternary_words_map_to_weight_four_binary_words() {
        let h = order_24_non_extremal();
        let p = TheoremParams::new(24, 2, 3).unwrap();
        let c3 = ZmCode::from_rows(&h.transpose().rows_i64(), 3).unwrap();
        let words = collect_codewords(&c3, DEFAULT_BUDGET, |_, s| s.hamming == 6).unwrap();
        assert!(!words.is_empty());
        for w in words.iter().take(40) {
            let out = map_even_to_type_two(&h, &ZmVector::new(3, w.clone()).unwrap(), &p).unwrap();
            assert!(out.hypothesis);
            assert_eq!((out.d, out.k), (6, 0));
            assert_eq!(out.verdict(), Verdict::Pass, "{:?}", out.checks);
            assert_eq!(out.image_weight, 4);
        }
    }

    #[test]
    fn weight_four_binary_words_map_to_weight_six_ternary_words() {
        let h = order_24_non_extremal();
        let p = TheoremParams::new(24, 2, 3).unwrap();
        let c2 = ZmCode::from_rows(&binary_associate(&h).rows_i64(), 2).unwrap();
        let words = collect_codewords(&c2, DEFAULT_BUDGET, |_, s| s.hamming == 4).unwrap();
        assert!(!words.is_empty());
        for w in &words {
            let out = map_type_two_to_even(&h, &ZmVector::new(2, w.clone()).unwrap(), &p).unwrap();
            assert_eq!((out.d, out.k), (4, 0));
            assert_eq!(out.verdict(), Verdict::Pass, "{:?}", out.checks);
            assert_eq!(out.image_weight, 6);
        }
    }

    #[test]
    fn hypothesis_gate() {
        let h = normalize_first_row(&paley_one(23).unwrap());
        let p = TheoremParams::new(24, 2, 3).unwrap();
        // the all-one word has even norm 24 and odd norm 9 + 12, far outside k < d − d/ℓ
        let ones = ZmVector::new(3, vec![1; 24]).unwrap();
        let out = map_even_to_type_two(&h, &ones, &p).unwrap();
        assert_eq!((out.d, out.k), (24, 18));
        assert_eq!(out.verdict(), Verdict::Inconclusive);
        let zero = ZmVector::zero(3, 24);
        assert_eq!(map_even_to_type_two(&h, &zero, &p).unwrap().verdict(), Verdict::Inconclusive);
    }

    #[test]
    fn every_short_word_respects_the_bound() {
        let h = order_24_non_extremal();
        let p = TheoremParams::new(24, 2, 3).unwrap();
        let c3 = ZmCode::from_rows(&h.transpose().rows_i64(), 3).unwrap();
        let words = collect_codewords(&c3, DEFAULT_BUDGET, |_, s| {
            let (_, e) = s.odd_even(3);
            s.hamming > 0 && e < 12
        })
        .unwrap();
        for w in &words {
            let out = map_even_to_type_two(&h, &ZmVector::new(3, w.clone()).unwrap(), &p).unwrap();
            if out.hypothesis {
                assert_eq!(out.verdict(), Verdict::Pass, "{:?}", out.checks);
            }
        }
    }
}
