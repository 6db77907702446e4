//! Naive reference computations shared by the integration tests. They use
//! nothing from the library beyond reading matrix entries.

#![allow(dead_code)]

use forge_core::matrices::SignMatrix;

pub fn entries(h: &SignMatrix) -> Vec<Vec<i64>> {
    (0..h.order()).map(|i| (0..h.order()).map(|j| h.get(i, j) as i64).collect()).collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Negates columns so the first row is all +1, then rows so the first column is.
pub fn normalize(a: &[Vec<i64>], both: bool) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = a.iter().map(|r| r.iter().zip(&a[0]).map(|(x, s)| x * s).collect()).collect();
    if both {
        for r in out.iter_mut() {
            let s = r[0];
            r.iter_mut().for_each(|x| *x *= s);
        }
    }
    out
}

/// `(H + J)/2`.
pub fn zero_one(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|r| r.iter().map(|x| (x + 1) / 2).collect()).collect()
}

fn inverse_mod(x: u64, p: u64) -> u64 {
    (1..p).find(|y| x * y % p == 1).expect("prime modulus")
}

/// Row-echelon basis over GF(p).
pub fn basis_mod_p(rows: &[Vec<i64>], p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let n = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inverse_mod(m[rank][col], p);
        m[rank].iter_mut().for_each(|x| *x = *x * inv % p);
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..n {
                    m[i][j] = (m[i][j] + p * p - f * m[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Calls `f` on every codeword of the span of `basis` over GF(p).
pub fn for_each_word(basis: &[Vec<u64>], p: u64, mut f: impl FnMut(&[u64])) {
    let n = basis.first().map_or(0, Vec::len);
    let k = basis.len();
    let mut word = vec![0u64; n];
    let mut digits = vec![0u64; k];
    f(&word);
    loop {
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            for (w, b) in word.iter_mut().zip(&basis[i]) {
                *w = (*w + b) % p;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        f(&word);
    }
}

pub fn min_hamming(rows: &[Vec<i64>], p: u64) -> u64 {
    let mut best = u64::MAX;
    for_each_word(&basis_mod_p(rows, p), p, |w| {
        let wt = w.iter().filter(|&&x| x != 0).count() as u64;
        if wt > 0 {
            best = best.min(wt);
        }
    });
    best
}

/// Codewords with all entries in {0, 1}, split by parity of weight.
pub fn zero_one_words(rows: &[Vec<i64>], p: u64) -> (u64, u64) {
    let (mut even, mut odd) = (0, 0);
    for_each_word(&basis_mod_p(rows, p), p, |w| {
        if w.iter().all(|&x| x <= 1) {
            if w.iter().sum::<u64>() % 2 == 0 {
                even += 1;
            } else {
                odd += 1;
            }
        }
    });
    (even, odd)
}
