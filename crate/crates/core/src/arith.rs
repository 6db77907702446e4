//! Small integer helpers shared by the matrix, code and lattice modules.

use num_integer::Integer;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Quadratic character of `x` modulo the odd prime `q`: 0, 1 or -1.
pub fn legendre(x: i64, q: u64) -> i8 {
    let r = x.rem_euclid(q as i64) as u64;
    if r == 0 {
        return 0;
    }
    let mut acc = 1u64;
    let mut base = r;
    let mut e = (q - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Multiplier `u` with `u*a ≡ gcd(a, m) (mod m)` and `gcd(u, m) = 1`.
pub fn unit_normalizer(a: u64, m: u64) -> u64 {
    let g = a.gcd(&m);
    if a == 0 {
        return 1;
    }
    // a = g*a', m = g*m'; need u with u*a' ≡ 1 (mod m') and u a unit mod m.
    let a1 = (a / g) as i64;
    let m1 = (m / g) as i64;
    let base = if m1 == 1 { 1 } else { mod_inverse(a1, m1).expect("coprime by construction") };
    let mut u = base as u64;
    while u.gcd(&m) != 1 {
        u += m1 as u64;
    }
    u % m
}

/// Parity of the minimal-absolute lift convention: residues above m/2 lift negatively.
pub fn minimal_lift(x: u32, m: u32) -> i64 {
    if 2 * x > m {
        x as i64 - m as i64
    } else {
        x as i64
    }
}

pub fn lee(x: u32, m: u32) -> u32 {
    x.min(m - x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn legendre_mod_11() {
        let squares: Vec<i64> = (1..11).filter(|&x| legendre(x, 11) == 1).collect();
        assert_eq!(squares, vec![1, 3, 4, 5, 9]);
        assert_eq!(legendre(-1, 11), -1);
        assert_eq!(legendre(-1, 13), 1);
    }

    #[test]
    fn normalizer_gives_unit() {
        for m in 2..40u64 {
            for a in 0..m {
                let u = unit_normalizer(a, m);
                assert_eq!(u.gcd(&m), 1);
                assert_eq!(u * a % m, a.gcd(&m) % m);
            }
        }
    }
}
