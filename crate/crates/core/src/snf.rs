//! Smith normal form over arbitrary-precision integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{ForgeError, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Elementary divisors `d_1 | d_2 | ... | d_r`, followed by zeros for a
/// rank-deficient input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorChain {
    divisors: Vec<BigInt>,
}

impl DivisorChain {
    pub fn new(divisors: Vec<BigInt>) -> Result<Self> {
        let chain = DivisorChain { divisors };
        if !chain.is_chain() {
            return Err(ForgeError::InvalidParameter("divisors do not form a divisibility chain".into()));
        }
        Ok(chain)
    }

    pub fn from_u64(divisors: &[u64]) -> Result<Self> {
        Self::new(divisors.iter().map(|&d| BigInt::from(d)).collect())
    }

    fn is_chain(&self) -> bool {
        self.divisors.iter().all(|d| !d.is_negative())
            && self.divisors.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            })
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub chain: DivisorChain,
    /// Unimodular left transform, when requested.
    pub p: Option<IntMatrix>,
    /// Unimodular right transform, when requested.
    pub q: Option<IntMatrix>,
}

pub fn to_big(a: &[Vec<i64>]) -> IntMatrix {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

struct Work {
    a: IntMatrix,
    p: Option<IntMatrix>,
    q: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(p) = self.p.as_mut() {
            p.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        if let Some(q) = self.q.as_mut() {
            for r in q.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    /// row[dst] -= f * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        let (s, d) = pick2(&mut self.a, src, dst);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            *x -= f * y;
        }
        if let Some(p) = self.p.as_mut() {
            let (s, d) = pick2(p, src, dst);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                *x -= f * y;
            }
        }
    }

    /// col[dst] -= f * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in self.a.iter_mut() {
            let t = f * &r[src];
            r[dst] -= t;
        }
        if let Some(q) = self.q.as_mut() {
            for r in q.iter_mut() {
                let t = f * &r[src];
                r[dst] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(p) = self.p.as_mut() {
            for x in p[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

fn pick2<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// Computes `P·A·Q = diag(d_1, ..., d_r, 0, ...)` with `d_i | d_{i+1}`.
///
/// Pivots on the least absolute nonzero entry of the active block (ties go to
/// the lowest `(row, column)`), reducing the pivot row and column by division
/// until both are cleared.
pub fn smith_normal_form(a: &[Vec<BigInt>], with_transforms: bool) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut w = Work {
        a: a.to_vec(),
        p: with_transforms.then(|| identity(rows)),
        q: with_transforms.then(|| identity(cols)),
    };
    let r = rows.min(cols);
    let mut t = 0;
    while t < r {
        // Least |entry| in the active block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &w.a[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if w.a[bi][bj].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let f = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_axpy(i, t, &f);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let f = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_axpy(j, t, &f);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Move the smallest remainder in row/column t to the pivot.
                let mut bi = None;
                let mut bj = None;
                let mut best = w.a[t][t].abs();
                for i in t + 1..rows {
                    let v = w.a[i][t].abs();
                    if !v.is_zero() && v < best {
                        best = v;
                        bi = Some(i);
                        bj = None;
                    }
                }
                for j in t + 1..cols {
                    let v = w.a[t][j].abs();
                    if !v.is_zero() && v < best {
                        best = v;
                        bj = Some(j);
                        bi = None;
                    }
                }
                if let Some(i) = bi {
                    w.swap_rows(t, i);
                } else if let Some(j) = bj {
                    w.swap_cols(t, j);
                }
                continue;
            }
            // Row and column cleared; enforce divisibility of the remainder.
            let pivot = w.a[t][t].clone();
            let mut offender = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&w.a[i][j] % &pivot).is_zero() {
                        offender = Some(i);
                        break 'outer;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // row t += row i, then continue reducing.
                    w.row_axpy(t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let mut divisors: Vec<BigInt> = (0..r).map(|i| w.a[i][i].clone()).collect();
    for d in divisors.iter_mut() {
        *d = d.abs();
    }
    let chain = DivisorChain { divisors };
    debug_assert!(chain.is_chain());
    SmithForm { chain, p: w.p, q: w.q }
}

/// `(gcd(x, z), gcd(x, w))` for `x·y = w·z` with `gcd(x, y) = 1`; their product is `x`.
pub fn gcd_split(x: u64, y: u64, z: u64, w: u64) -> Result<(u64, u64)> {
    if x == 0 || y == 0 || z == 0 || w == 0 {
        return Err(ForgeError::Precondition("arguments must be positive".into()));
    }
    if (x as u128) * (y as u128) != (w as u128) * (z as u128) || x.gcd(&y) != 1 {
        return Err(ForgeError::Precondition("need xy = wz and gcd(x, y) = 1".into()));
    }
    let a = x.gcd(&z);
    let b = x.gcd(&w);
    if a * b != x {
        return Err(ForgeError::Precondition(format!("gcd split failed for {x}")));
    }
    Ok((a, b))
}

/// `∏ m / gcd(m, d_i)`: the size of the row span over `Z/mZ` of a matrix
/// with the given elementary divisors.
pub fn cardinality_from_divisors(chain: &DivisorChain, m: u64) -> BigUint {
    let mb = BigInt::from(m);
    chain.divisors.iter().fold(BigUint::one(), |acc, d| {
        let g = mb.gcd(d);
        acc * (&mb / g).to_biguint().expect("positive")
    })
}
