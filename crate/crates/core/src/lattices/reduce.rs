//! LLL reduction in floating point over an exact integer basis, and the
//! exact Gram–Schmidt data used to drive enumeration.
//!
//! The basis itself is only ever changed by exact integer row operations, so
//! the reduced basis spans the same lattice no matter how the floating-point
//! decisions turn out; floating point only affects how well it is reduced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{ForgeError, Result};

pub const LLL_DELTA: f64 = 0.99;

pub fn to_i64_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or(ForgeError::Overflow("basis entry"))).collect())
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn sub_multiple(a: &mut [i64], b: &[i64], k: i64) -> Result<()> {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = k
            .checked_mul(y)
            .and_then(|t| x.checked_sub(t))
            .ok_or(ForgeError::Overflow("LLL size reduction"))?;
    }
    Ok(())
}

/// LLL-reduces the rows of a full-rank integer basis.
pub fn lll(mut b: Vec<Vec<i64>>, delta: f64) -> Result<Vec<Vec<i64>>> {
    let n = b.len();
    if n <= 1 {
        return Ok(b);
    }
    let mut mu = vec![vec![0f64; n]; n];
    let mut r = vec![0f64; n];
    let gso_row = |b: &[Vec<i64>], mu: &mut [Vec<f64>], r: &mut [f64], k: usize| {
        for j in 0..=k {
            let mut v = dot(&b[k], &b[j]) as f64;
            for i in 0..j {
                v -= mu[j][i] * mu[k][i] * r[i];
            }
            if j < k {
                mu[k][j] = v / r[j];
            } else {
                r[k] = v;
            }
        }
    };
    gso_row(&b, &mut mu, &mut r, 0);
    let mut k = 1;
    let mut guard = 0u64;
    while k < n {
        guard += 1;
        if guard > 50_000_000 {
            return Err(ForgeError::BudgetExceeded("LLL did not converge".into()));
        }
        gso_row(&b, &mut mu, &mut r, k);
        // size reduction, repeated while floating error leaves large μ
        loop {
            let mut changed = false;
            for j in (0..k).rev() {
                let x = mu[k][j].round();
                if x != 0.0 && mu[k][j].abs() > 0.51 {
                    let xi = x as i64;
                    let (head, tail) = b.split_at_mut(k);
                    sub_multiple(&mut tail[0], &head[j], xi)?;
                    for i in 0..j {
                        mu[k][i] -= x * mu[j][i];
                    }
                    mu[k][j] -= x;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            gso_row(&b, &mut mu, &mut r, k);
        }
        if delta * r[k - 1] > r[k] + mu[k][k - 1] * mu[k][k - 1] * r[k - 1] {
            b.swap(k - 1, k);
            k = (k - 1).max(1);
            if k == 1 {
                gso_row(&b, &mut mu, &mut r, 0);
            }
        } else {
            k += 1;
        }
    }
    Ok(b)
}

/// Gram–Schmidt data of a basis computed exactly from its integer Gram
/// matrix: `norm = Σ r_i (y_i + Σ_{j>i} μ_ji y_j)²`, scaled by `1/s`.
#[derive(Clone, Debug)]
pub struct ExactGso {
    pub r: Vec<BigRational>,
    /// `mu[j][i]` for `j > i`.
    pub mu: Vec<Vec<BigRational>>,
}

impl ExactGso {
    pub fn new(basis: &[Vec<i64>], scale: u64) -> Self {
        let n = basis.len();
        let s = BigInt::from(scale);
        let gram: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| BigRational::new(BigInt::from(dot(&basis[i], &basis[j])), s.clone())).collect())
            .collect();
        let mut r: Vec<BigRational> = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for k in 0..n {
            for j in 0..=k {
                let mut v = gram[k][j].clone();
                for i in 0..j {
                    v -= &mu[j][i] * &mu[k][i] * &r[i];
                }
                if j < k {
                    mu[k][j] = v / &r[j];
                } else {
                    r.push(v);
                }
            }
        }
        ExactGso { r, mu }
    }

    pub fn r_f64(&self) -> Vec<f64> {
        self.r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn mu_f64(&self) -> Vec<Vec<f64>> {
        self.mu.iter().map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn det(b: &[Vec<i64>]) -> BigRational {
        ExactGso::new(b, 1).r.iter().fold(BigRational::one(), |a, x| a * x)
    }

    #[test]
    fn reduces_skewed_basis_of_z3() {
        let b = vec![vec![1, 0, 0], vec![17, 1, 0], vec![-40, 23, 1]];
        let red = lll(b.clone(), LLL_DELTA).unwrap();
        assert_eq!(det(&red), det(&b));
        for row in &red {
            assert_eq!(dot(row, row), 1);
        }
    }

    #[test]
    fn preserves_lattice() {
        let b = vec![vec![3, 9, 27], vec![0, 5, 16], vec![0, 0, 7]];
        let red = lll(b.clone(), LLL_DELTA).unwrap();
        let hb = super::super::hnf::hermite_normal_form(&super::super::to_big_rows(&b), 3).unwrap();
        let hr = super::super::hnf::hermite_normal_form(&super::super::to_big_rows(&red), 3).unwrap();
        assert_eq!(hb, hr);
        let g = ExactGso::new(&red, 1);
        // Lovász condition holds exactly up to the floating slack
        for k in 1..3 {
            let lhs = g.r[k].clone() + &g.mu[k][k - 1] * &g.mu[k][k - 1] * &g.r[k - 1];
            assert!(lhs.to_f64().unwrap() >= 0.98 * g.r[k - 1].to_f64().unwrap());
        }
    }
}
