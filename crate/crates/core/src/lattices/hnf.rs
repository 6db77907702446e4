//! Hermite normal form of full-rank integer row lattices.
//!
//! Rows are upper triangular with positive pivots, and every entry above a
//! pivot lies in `[0, pivot)`. Generators are inserted one at a time with
//! extended-gcd row operations; once the span has full rank with
//! determinant `D`, all entries are reduced modulo `D`, which is harmless
//! because `D·Zⁿ` lies in the lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{ForgeError, Result};

pub type IntRows = Vec<Vec<BigInt>>;

fn axpy(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

struct Builder {
    n: usize,
    rows: Vec<Option<Vec<BigInt>>>,
    rank: usize,
    det: BigInt,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { n, rows: vec![None; n], rank: 0, det: BigInt::zero() }
    }

    fn reduce_mod_det(&self, v: &mut [BigInt], from: usize) {
        if self.rank == self.n {
            for x in v[from..].iter_mut() {
                *x = x.mod_floor(&self.det);
            }
        }
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        self.reduce_mod_det(&mut v, 0);
        let mut col = 0;
        while col < self.n {
            if v[col].is_zero() {
                col += 1;
                continue;
            }
            match self.rows[col].take() {
                None => {
                    if v[col].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[col] = Some(v);
                    self.rank += 1;
                    self.refresh_det();
                    return;
                }
                Some(r) => {
                    let a = r[col].clone();
                    let b = v[col].clone();
                    let e = a.extended_gcd(&b);
                    let mut pivot = axpy(&e.x, &r, &e.y, &v);
                    let mut rest = axpy(&(&b / &e.gcd), &r, &(-(&a / &e.gcd)), &v);
                    if pivot[col].is_negative() {
                        pivot.iter_mut().for_each(|x| *x = -&*x);
                    }
                    let changed = pivot[col] != a;
                    self.reduce_mod_det(&mut pivot, col + 1);
                    self.rows[col] = Some(pivot);
                    if changed {
                        self.refresh_det();
                    }
                    self.reduce_mod_det(&mut rest, 0);
                    v = rest;
                    col += 1;
                }
            }
        }
    }

    fn refresh_det(&mut self) {
        if self.rank == self.n {
            let mut d = BigInt::one();
            for r in self.rows.iter().enumerate() {
                d *= &r.1.as_ref().expect("full rank")[r.0];
            }
            self.det = d;
        }
    }

    fn finish(self) -> Result<IntRows> {
        if self.rank < self.n {
            return Err(ForgeError::InvalidParameter(format!(
                "generators span rank {} < {}",
                self.rank, self.n
            )));
        }
        let det = self.det.clone();
        let mut rows: IntRows = self.rows.into_iter().map(|r| r.expect("full rank")).collect();
        let n = rows.len();
        for (i, row) in rows.iter_mut().enumerate() {
            for x in row[i + 1..].iter_mut() {
                *x = x.mod_floor(&det);
            }
        }
        for i in 1..n {
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            let p = &pivot_row[i];
            for r in head.iter_mut() {
                let q = r[i].div_floor(p);
                if !q.is_zero() {
                    for (x, y) in r.iter_mut().zip(pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
        Ok(rows)
    }
}

/// Hermite normal form of the lattice spanned by `gens` in `Zⁿ`.
pub fn hermite_normal_form(gens: &[Vec<BigInt>], n: usize) -> Result<IntRows> {
    let mut b = Builder::new(n);
    for g in gens {
        if g.len() != n {
            return Err(ForgeError::DimensionMismatch { expected: n, found: g.len() });
        }
        b.insert(g.clone());
    }
    b.finish()
}

/// Determinant of an HNF basis (product of pivots).
pub fn hnf_det(rows: &IntRows) -> BigInt {
    rows.iter().enumerate().map(|(i, r)| r[i].clone()).product()
}

/// Integer coordinates of `v` in an HNF basis, if `v` is in the lattice.
pub fn hnf_solve(rows: &IntRows, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = rows.len();
    let mut r = v.to_vec();
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let (q, rem) = r[i].div_rem(&rows[i][i]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in r.iter_mut().zip(&rows[i]) {
                *x -= &q * y;
            }
        }
        coeffs.push(q);
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[Vec<i64>]) -> IntRows {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn is_hnf(rows: &IntRows) -> bool {
        let n = rows.len();
        (0..n).all(|i| {
            rows[i][i].is_positive()
                && (0..i).all(|j| rows[i][j].is_zero())
                && (0..i).all(|j| !rows[j][i].is_negative() && rows[j][i] < rows[i][i])
        })
    }

    #[test]
    fn small_example() {
        let h = hermite_normal_form(&big(&[vec![2, 4], vec![3, 1]]), 2).unwrap();
        // det = -10; span contains (1, -3) = (3,1) - (2,4)
        assert_eq!(h, big(&[vec![1, 7], vec![0, 10]]));
        assert!(hnf_solve(&h, &big(&[vec![5, 5]])[0]).is_some());
        assert!(hnf_solve(&h, &big(&[vec![0, 5]])[0]).is_none());
        assert!(hermite_normal_form(&big(&[vec![1, 1], vec![2, 2]]), 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn canonical_and_same_span(n in 1usize..5, extra in 0usize..4,
                                   raw in proptest::collection::vec(-6i64..7, 64),
                                   mix in proptest::collection::vec(-2i64..3, 64)) {
            let k = n + extra;
            let gens: Vec<Vec<i64>> = (0..k).map(|i| (0..n).map(|j| raw[i * 8 + j] + if i == j { 13 } else { 0 }).collect()).collect();
            let Ok(h) = hermite_normal_form(&big(&gens), n) else { return Ok(()) };
            prop_assert!(is_hnf(&h));
            for g in big(&gens) {
                prop_assert!(hnf_solve(&h, &g).is_some());
            }
            // unimodular mixing of the generators gives the same HNF
            let mut mixed = gens.clone();
            for i in 1..k {
                for j in 0..n {
                    mixed[i][j] += mix[i] * mixed[0][j];
                }
            }
            mixed.reverse();
            prop_assert_eq!(hermite_normal_form(&big(&mixed), n).unwrap(), h.clone());
            // every HNF row lies in the span of the original generators:
            // the determinant equals the gcd of maximal minors when k = n
            if k == n {
                let det = crate::snf::smith_normal_form(&big(&gens), false)
                    .chain.divisors().iter().product::<BigInt>();
                prop_assert_eq!(hnf_det(&h), det);
            }
        }
    }
}
