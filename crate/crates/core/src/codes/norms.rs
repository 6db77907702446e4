//! Weights and the refined norms of vectors over `Z/mZ`.
//!
//! For a vector `u` with minimal lift `w` (entries in `(-m/2, m/2]`), every
//! other lift in the opposite parity class of norm (odd `m`), or of `v·1`
//! modulo `2m` (type norms), costs at least one shift `w ∓ m·e_i`, and the
//! cheapest shift is at a coordinate of maximal Lee weight. Hence the pair
//! of refined norms is `{Norm(u), Norm(u) + m(m - 2·max Lee(u_i))}`, and
//! which slot `Norm(u)` fills is decided by the minimal lift.

use crate::arith::{lee, minimal_lift};
use crate::error::{ForgeError, Result};

use super::ZmVector;

/// Additive statistics of a vector, from which every weight and norm is derived.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorStats {
    pub norm: u64,
    pub lee: u64,
    pub hamming: u32,
    pub max_lee: u32,
    pub lift_sum: i64,
}

impl VectorStats {
    pub fn of(entries: &[u32], m: u32) -> Self {
        let mut s = VectorStats::default();
        for &x in entries {
            let l = lee(x, m);
            s.norm += (l as u64) * (l as u64);
            s.lee += l as u64;
            s.hamming += u32::from(x != 0);
            s.max_lee = s.max_lee.max(l);
            s.lift_sum += minimal_lift(x, m);
        }
        s
    }

    /// Norm of the cheapest lift in the class opposite to the minimal lift.
    pub fn shifted_norm(&self, m: u32) -> u64 {
        let m = m as u64;
        self.norm + m * (m - 2 * self.max_lee as u64)
    }

    /// `(N_odd, N_even)` for odd `m`; the zero vector gives `(m², 0)`.
    pub fn odd_even(&self, m: u32) -> (u64, u64) {
        let other = self.shifted_norm(m);
        if self.norm % 2 == 0 {
            (other, self.norm)
        } else {
            (self.norm, other)
        }
    }

    /// `(N_I, N_II)` for a vector orthogonal to the all-one vector.
    pub fn type_norms(&self, m: u32) -> (u64, u64) {
        let other = self.shifted_norm(m);
        let class = self.lift_sum.rem_euclid(2 * m as i64);
        debug_assert!(class == 0 || class == m as i64);
        if class == 0 {
            (other, self.norm)
        } else {
            (self.norm, other)
        }
    }
}

pub fn euclidean_norm(u: &ZmVector) -> u64 {
    VectorStats::of(u.entries(), u.modulus()).norm
}

pub fn lee_weight(u: &ZmVector) -> u64 {
    VectorStats::of(u.entries(), u.modulus()).lee
}

pub fn hamming_weight(u: &ZmVector) -> u32 {
    u.entries().iter().filter(|&&x| x != 0).count() as u32
}

pub fn odd_even_norms(u: &ZmVector) -> Result<(u64, u64)> {
    let m = u.modulus();
    if m % 2 == 0 || m < 3 {
        return Err(ForgeError::InvalidParameter(format!("odd/even norms need odd m ≥ 3, got {m}")));
    }
    Ok(VectorStats::of(u.entries(), m).odd_even(m))
}

pub fn type_norms(u: &ZmVector) -> Result<(u64, u64)> {
    let m = u.modulus();
    let sum: u64 = u.entries().iter().map(|&x| x as u64).sum();
    if sum % m as u64 != 0 {
        return Err(ForgeError::Precondition("vector is not orthogonal to the all-one vector".into()));
    }
    Ok(VectorStats::of(u.entries(), m).type_norms(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(m: u32, e: &[u32]) -> ZmVector {
        ZmVector::new(m, e.to_vec()).unwrap()
    }

    /// Minimum lift norms by brute force over lifts with entries in
    /// `{u_i - m, u_i, u_i + m}`, split by a class function.
    fn brute<F: Fn(&[i64]) -> bool>(u: &[u32], m: u32, in_class: F) -> Option<u64> {
        let n = u.len();
        let mut best: Option<u64> = None;
        let total = 3usize.pow(n as u32);
        let mut lift = vec![0i64; n];
        for code in 0..total {
            let mut c = code;
            for i in 0..n {
                lift[i] = u[i] as i64 + m as i64 * ((c % 3) as i64 - 1);
                c /= 3;
            }
            if in_class(&lift) {
                let nn: u64 = lift.iter().map(|x| (x * x) as u64).sum();
                best = Some(best.map_or(nn, |b| b.min(nn)));
            }
        }
        best
    }

    fn brute_odd_even(u: &[u32], m: u32) -> (u64, u64) {
        let odd = brute(u, m, |l| l.iter().map(|x| x * x).sum::<i64>() % 2 == 1).unwrap();
        let even = brute(u, m, |l| l.iter().map(|x| x * x).sum::<i64>() % 2 == 0).unwrap();
        (odd, even)
    }

    fn brute_type(u: &[u32], m: u32) -> (u64, u64) {
        let mm = 2 * m as i64;
        let t1 = brute(u, m, |l| l.iter().sum::<i64>().rem_euclid(mm) == m as i64).unwrap();
        let t2 = brute(u, m, |l| l.iter().sum::<i64>().rem_euclid(mm) == 0).unwrap();
        (t1, t2)
    }

    #[test]
    fn weights() {
        let z = v(3, &[0, 0, 0]);
        assert_eq!((euclidean_norm(&z), lee_weight(&z), hamming_weight(&z)), (0, 0, 0));
        let u = v(3, &[1, 2, 0]);
        assert_eq!((euclidean_norm(&u), lee_weight(&u), hamming_weight(&u)), (2, 2, 2));
        let u = v(4, &[2, 3]);
        assert_eq!((euclidean_norm(&u), lee_weight(&u), hamming_weight(&u)), (5, 3, 2));
    }

    #[test]
    fn odd_even_examples() {
        let u = [1, 1, 0, 0];
        assert_eq!(brute_odd_even(&u, 3), (5, 2));
        assert_eq!(odd_even_norms(&v(3, &u)).unwrap(), (5, 2));
        assert_eq!(odd_even_norms(&v(3, &[0, 0, 0])).unwrap(), (9, 0));
        assert_eq!(brute_odd_even(&[2, 1], 5), (5, 10));
        assert_eq!(odd_even_norms(&v(5, &[2, 1])).unwrap(), (5, 10));
        assert!(odd_even_norms(&v(4, &[1, 1])).is_err());
    }

    #[test]
    fn type_norm_examples() {
        let u = [1, 1, 1, 1, 0, 0];
        assert_eq!(brute_type(&u, 4), (4, 12));
        assert_eq!(type_norms(&v(4, &u)).unwrap(), (4, 12));
        // Over Z/2 both type norms are the weight.
        assert_eq!(type_norms(&v(2, &[1, 1, 0, 1, 1, 0])).unwrap(), (4, 4));
        assert_eq!(type_norms(&v(3, &[0, 0])).unwrap(), (9, 0));
        assert!(type_norms(&v(4, &[1, 0])).is_err());
    }

    fn odd_modulus() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![3u32, 5, 7])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn odd_even_match_lift_oracle(m in odd_modulus(), raw in proptest::collection::vec(0u32..1000, 1..=8)) {
            let u: Vec<u32> = raw.iter().map(|x| x % m).collect();
            let got = odd_even_norms(&v(m, &u)).unwrap();
            prop_assert_eq!(got, brute_odd_even(&u, m));
            if u.iter().any(|&x| x != 0) {
                let s = VectorStats::of(&u, m);
                let mut pair = [got.0, got.1];
                pair.sort();
                let mut want = [s.norm, s.shifted_norm(m)];
                want.sort();
                prop_assert_eq!(pair, want);
                prop_assert!(got.0.abs_diff(got.1) <= (m * m - 2 * m) as u64);
            }
        }

        #[test]
        fn type_norms_match_lift_oracle(m in prop::sample::select(vec![2u32, 3, 4, 5, 7]), raw in proptest::collection::vec(0u32..1000, 1..=8)) {
            let mut u: Vec<u32> = raw.iter().map(|x| x % m).collect();
            // force Σu ≡ 0 (mod m) by adjusting the last entry
            let s: u32 = u[..u.len() - 1].iter().sum::<u32>() % m;
            let last = u.len() - 1;
            u[last] = (m - s) % m;
            let got = type_norms(&v(m, &u)).unwrap();
            prop_assert_eq!(got, brute_type(&u, m));
            if m % 2 == 1 {
                prop_assert_eq!(got, odd_even_norms(&v(m, &u)).unwrap());
            }
            if u.iter().any(|&x| x != 0) {
                prop_assert!(got.0.abs_diff(got.1) <= (m * m - 2 * m) as u64);
            }
        }
    }
}
