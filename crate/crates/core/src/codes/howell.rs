//! Howell form: the canonical generator matrix of a submodule of `(Z/mZ)^n`.
//!
//! Rows are in echelon form, each leading entry divides `m`, entries above a
//! leading entry `d` lie in `[0, d)`, and every element of the span whose
//! first `j` coordinates vanish is a combination of the rows led after `j`.
//! The last condition is enforced by feeding `(m/d)·row` back into the
//! elimination after each pivot.

use num_integer::Integer;

use crate::arith::unit_normalizer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellRow {
    pub pivot: usize,
    pub lead: u32,
    pub entries: Vec<u32>,
}

fn reduce(row: &mut [u32], m: u32) {
    for x in row.iter_mut() {
        *x %= m;
    }
}

fn is_zero(row: &[u32]) -> bool {
    row.iter().all(|&x| x == 0)
}

/// `a ← s·a + t·b`, `b ← u·a + v·b` (all mod m).
fn combine(a: &mut [u32], b: &mut [u32], s: i64, t: i64, u: i64, v: i64, m: u32) {
    let m = m as i64;
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (xa, yb) = (*x as i64, *y as i64);
        *x = (s * xa + t * yb).rem_euclid(m) as u32;
        *y = (u * xa + v * yb).rem_euclid(m) as u32;
    }
}

pub fn howell_form(rows: &[Vec<u32>], n: usize, m: u32) -> Vec<HowellRow> {
    let mut pending: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            reduce(&mut r, m);
            r
        })
        .filter(|r| !is_zero(r))
        .collect();
    let mut out: Vec<HowellRow> = Vec::new();
    for col in 0..n {
        let mut pivot: Option<Vec<u32>> = None;
        let mut rest = Vec::with_capacity(pending.len());
        for mut r in pending.drain(..) {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.as_mut() {
                None => pivot = Some(r),
                Some(p) => {
                    let a = p[col] as i64;
                    let b = r[col] as i64;
                    let e = a.extended_gcd(&b);
                    let g = e.gcd;
                    // [[x, y], [b/g, -a/g]] has determinant -1.
                    combine(p, &mut r, e.x, e.y, b / g, -a / g, m);
                    debug_assert_eq!(r[col], 0);
                    if !is_zero(&r) {
                        rest.push(r);
                    }
                }
            }
        }
        if let Some(mut p) = pivot {
            let u = unit_normalizer(p[col] as u64, m as u64) as i64;
            for x in p.iter_mut() {
                *x = ((*x as i64 * u).rem_euclid(m as i64)) as u32;
            }
            let d = p[col];
            debug_assert_eq!(m % d, 0);
            let annihilator = m / d;
            if annihilator < m {
                let sat: Vec<u32> = p.iter().map(|&x| ((x as u64 * annihilator as u64) % m as u64) as u32).collect();
                if !is_zero(&sat) {
                    rest.push(sat);
                }
            }
            for prev in out.iter_mut() {
                let q = prev.entries[col] / d;
                if q > 0 {
                    for (x, &y) in prev.entries.iter_mut().zip(p.iter()) {
                        *x = ((*x as u64 + (m - (q as u64 * y as u64 % m as u64) as u32) as u64) % m as u64) as u32;
                    }
                }
            }
            out.push(HowellRow { pivot: col, lead: d, entries: p });
        }
        pending = rest;
    }
    out
}

/// Reduces `v` against a Howell basis; the remainder is zero iff `v` is in the span.
pub fn reduce_against(basis: &[HowellRow], v: &[u32], m: u32) -> Vec<u32> {
    let mut r: Vec<u32> = v.iter().map(|&x| x % m).collect();
    for row in basis {
        let x = r[row.pivot];
        if x % row.lead != 0 {
            return r;
        }
        let q = (x / row.lead) as u64;
        if q == 0 {
            continue;
        }
        for (a, &b) in r.iter_mut().zip(row.entries.iter()) {
            *a = ((*a as u64 + m as u64 - q * b as u64 % m as u64) % m as u64) as u32;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    /// Span by closure under addition of the generators.
    fn span(rows: &[Vec<u32>], n: usize, m: u32) -> BTreeSet<Vec<u32>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; n]);
        let mut frontier = vec![vec![0; n]];
        while let Some(v) = frontier.pop() {
            for g in rows {
                let w: Vec<u32> = v.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
                if set.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        set
    }

    #[test]
    fn z4_example() {
        // 2 is a zero divisor: the span of (2, 1) contains (0, 2).
        let h = howell_form(&[vec![2, 1]], 2, 4);
        assert_eq!(h.len(), 2);
        assert_eq!((h[0].pivot, h[0].lead), (0, 2));
        assert_eq!((h[1].pivot, h[1].lead), (1, 2));
        assert_eq!(reduce_against(&h, &[0, 2], 4), vec![0, 0]);
        assert_ne!(reduce_against(&h, &[0, 1], 4), vec![0, 0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn span_and_canonicity(m in prop::sample::select(vec![2u32, 3, 4, 6, 8, 9, 12]),
                               k in 1usize..4, n in 1usize..5,
                               raw in proptest::collection::vec(0u32..100, 16)) {
            let rows: Vec<Vec<u32>> = (0..k).map(|i| (0..n).map(|j| raw[i * 4 + j] % m).collect()).collect();
            let h = howell_form(&rows, n, m);
            let brute = span(&rows, n, m);
            // cardinality from leading entries
            let card: u64 = h.iter().map(|r| (m / r.lead) as u64).product();
            prop_assert_eq!(card, brute.len() as u64);
            let hrows: Vec<Vec<u32>> = h.iter().map(|r| r.entries.clone()).collect();
            prop_assert_eq!(span(&hrows, n, m), brute.clone());
            // fixpoint
            prop_assert_eq!(howell_form(&hrows, n, m), h.clone());
            // membership agrees with the brute-force span
            for x in 0..m.pow(n as u32).min(400) {
                let mut v = vec![0u32; n];
                let mut t = x;
                for e in v.iter_mut() { *e = t % m; t /= m; }
                let inside = is_zero(&reduce_against(&h, &v, m));
                prop_assert_eq!(inside, brute.contains(&v));
            }
        }
    }
}
