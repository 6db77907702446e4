//! Hadamard matrices: constructions, normalizations and the text file format.
//!
//! A [`SignMatrix`] stores an `n × n` matrix with entries `±1` as bit-packed
//! rows (a set bit is `-1`). Row inner products are `n - 2·popcount(a ^ b)`.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::arith::{is_prime, legendre};
use crate::error::{ForgeError, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    hadamard: bool,
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix(n={}, hadamard={})", self.n, self.hadamard)?;
        for i in 0..self.n {
            let line: String = (0..self.n)
                .map(|j| if self.get(i, j) > 0 { '+' } else { '-' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

impl SignMatrix {
    fn blank(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        SignMatrix { n, words, bits: vec![0; n * words], hadamard: false }
    }

    /// Builds a matrix from `±1` rows; the hadamard tag is computed exactly.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(ForgeError::InvalidParameter("empty matrix".into()));
        }
        let mut m = SignMatrix::blank(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ForgeError::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    1 => {}
                    -1 => m.set_negative(i, j, true),
                    _ => {
                        return Err(ForgeError::InvalidParameter(format!(
                            "entry ({i},{j}) = {v} is not ±1"
                        )))
                    }
                }
            }
        }
        m.hadamard = m.check_hadamard();
        Ok(m)
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> i8) -> Self {
        let mut m = SignMatrix::blank(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) < 0 {
                    m.set_negative(i, j, true);
                }
            }
        }
        m.hadamard = m.check_hadamard();
        m
    }

    pub fn all_ones(n: usize) -> Self {
        let mut m = SignMatrix::blank(n);
        m.hadamard = n == 1;
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// True when the constructor verified `M·Mᵀ = n·I`.
    pub fn is_tagged_hadamard(&self) -> bool {
        self.hadamard
    }

    #[inline]
    fn row_bits(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn set_negative(&mut self, i: usize, j: usize, neg: bool) {
        let w = i * self.words + j / WORD;
        let b = 1u64 << (j % WORD);
        if neg {
            self.bits[w] |= b;
        } else {
            self.bits[w] &= !b;
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        if self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn row(&self, i: usize) -> Vec<i8> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as i64).collect())
            .collect()
    }

    /// First column read as a row vector (the `h_1` of the order-48 argument).
    pub fn first_column(&self) -> Vec<i8> {
        (0..self.n).map(|i| self.get(i, 0)).collect()
    }

    /// Inner product of rows `i` and `j`.
    pub fn row_dot(&self, i: usize, j: usize) -> i64 {
        let diff: u32 = self
            .row_bits(i)
            .iter()
            .zip(self.row_bits(j))
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        self.n as i64 - 2 * diff as i64
    }

    fn check_hadamard(&self) -> bool {
        let n = self.n as i64;
        for i in 0..self.n {
            for j in i..self.n {
                let expect = if i == j { n } else { 0 };
                if self.row_dot(i, j) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Exact test of `M·Mᵀ = n·I`.
    pub fn is_hadamard(&self) -> bool {
        self.check_hadamard()
    }

    pub fn transpose(&self) -> SignMatrix {
        let mut t = SignMatrix::blank(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) < 0 {
                    t.set_negative(j, i, true);
                }
            }
        }
        // Hᵀ of a Hadamard matrix is Hadamard.
        t.hadamard = self.hadamard;
        debug_assert!(!t.hadamard || t.check_hadamard());
        t
    }

    pub fn negate(&self) -> SignMatrix {
        let mut m = self.clone();
        let mask_last = if self.n % WORD == 0 { u64::MAX } else { (1u64 << (self.n % WORD)) - 1 };
        for i in 0..self.n {
            for w in 0..self.words {
                let idx = i * self.words + w;
                let mask = if w + 1 == self.words { mask_last } else { u64::MAX };
                m.bits[idx] ^= mask;
            }
        }
        m
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.n {
            let neg = self.get(i, j) > 0;
            self.set_negative(i, j, neg);
        }
    }

    pub fn negate_column(&mut self, j: usize) {
        for i in 0..self.n {
            let neg = self.get(i, j) > 0;
            self.set_negative(i, j, neg);
        }
    }

    /// Applies row permutation `perm` (new row `i` is old row `perm[i]`).
    pub fn permute_rows(&self, perm: &[usize]) -> Result<SignMatrix> {
        check_permutation(perm, self.n)?;
        let mut m = SignMatrix::blank(self.n);
        for (i, &p) in perm.iter().enumerate() {
            let src = self.row_bits(p).to_vec();
            m.bits[i * self.words..(i + 1) * self.words].copy_from_slice(&src);
        }
        m.hadamard = self.hadamard;
        Ok(m)
    }

    pub fn permute_columns(&self, perm: &[usize]) -> Result<SignMatrix> {
        check_permutation(perm, self.n)?;
        let mut m = SignMatrix::from_fn(self.n, |i, j| self.get(i, perm[j]));
        m.hadamard = self.hadamard;
        Ok(m)
    }

    /// `diag(d)·M` for a sign vector `d`.
    pub fn scale_rows(&self, d: &[i8]) -> SignMatrix {
        let mut m = self.clone();
        for (i, &s) in d.iter().enumerate() {
            if s < 0 {
                m.negate_row(i);
            }
        }
        m
    }

    /// `M·diag(d)` for a sign vector `d`.
    pub fn scale_columns(&self, d: &[i8]) -> SignMatrix {
        let mut m = self.clone();
        for (j, &s) in d.iter().enumerate() {
            if s < 0 {
                m.negate_column(j);
            }
        }
        m
    }

    pub fn first_row_is_ones(&self) -> bool {
        (0..self.n).all(|j| self.get(0, j) == 1)
    }

    pub fn first_column_is_ones(&self) -> bool {
        (0..self.n).all(|i| self.get(i, 0) == 1)
    }

    /// Integer product `M·Nᵀ`.
    pub fn mul_transpose(&self, other: &SignMatrix) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..other.n)
                    .map(|j| {
                        (0..self.n).map(|k| self.get(i, k) as i64 * other.get(j, k) as i64).sum()
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(ForgeError::DimensionMismatch { expected: n, found: perm.len() });
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(ForgeError::InvalidParameter("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// The 0/1 matrix `(H + J)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryHadamard {
    n: usize,
    rows: Vec<Vec<u8>>,
}

impl BinaryHadamard {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }
}

pub fn binary_associate(h: &SignMatrix) -> BinaryHadamard {
    let rows = (0..h.n)
        .map(|i| (0..h.n).map(|j| u8::from(h.get(i, j) > 0)).collect())
        .collect();
    BinaryHadamard { n: h.n, rows }
}

/// Sylvester matrix of order `2^t` by iterated doubling `[[M, M], [M, -M]]`.
pub fn sylvester(t: u32) -> Result<SignMatrix> {
    if t > 12 {
        return Err(ForgeError::InvalidParameter(format!("sylvester order 2^{t} exceeds 2^12")));
    }
    let n = 1usize << t;
    // Entry (i, j) is (-1)^{popcount(i & j)}.
    let m = SignMatrix::from_fn(n, |i, j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 });
    debug_assert!(m.hadamard);
    Ok(m)
}

/// Jacobsthal-type conference core: `Q[i][j] = χ(j - i)` over `Z/q`.
fn jacobsthal(q: u64) -> Vec<Vec<i8>> {
    (0..q as i64)
        .map(|i| (0..q as i64).map(|j| legendre(j - i, q)).collect())
        .collect()
}

/// Paley type I matrix of order `q + 1` (`q ≡ 3 mod 4` prime), skew type:
/// `H = I + S` with `S = [[0, 1ᵀ], [-1, Q]]`, so that `H + Hᵀ = 2I`.
pub fn paley_one(q: u64) -> Result<SignMatrix> {
    if !is_prime(q) || q == 2 {
        return Err(ForgeError::InvalidParameter(format!("{q} is not an odd prime")));
    }
    if q % 4 != 3 {
        return Err(ForgeError::InvalidParameter(format!("{q} is not 3 mod 4")));
    }
    let jq = jacobsthal(q);
    let n = q as usize + 1;
    let s = |i: usize, j: usize| -> i8 {
        match (i, j) {
            (0, 0) => 0,
            (0, _) => 1,
            (_, 0) => -1,
            _ => jq[i - 1][j - 1],
        }
    };
    let m = SignMatrix::from_fn(n, |i, j| if i == j { 1 } else { s(i, j) });
    if !m.hadamard {
        return Err(ForgeError::NotHadamard);
    }
    Ok(m)
}

/// Paley type II matrix of order `2(q + 1)` (`q ≡ 1 mod 4` prime) from the
/// symmetric conference matrix `S`: `[[S + I, S - I], [S - I, -S - I]]`.
pub fn paley_two(q: u64) -> Result<SignMatrix> {
    if !is_prime(q) || q == 2 {
        return Err(ForgeError::InvalidParameter(format!("{q} is not an odd prime")));
    }
    if q % 4 != 1 {
        return Err(ForgeError::InvalidParameter(format!("{q} is not 1 mod 4")));
    }
    let jq = jacobsthal(q);
    let c = q as usize + 1;
    let s = |i: usize, j: usize| -> i8 {
        match (i, j) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            _ => jq[i - 1][j - 1],
        }
    };
    let m = SignMatrix::from_fn(2 * c, |i, j| {
        let (bi, bj) = (i / c, j / c);
        let (ii, jj) = (i % c, j % c);
        let sv = s(ii, jj);
        let id = i8::from(ii == jj);
        match (bi, bj) {
            (0, 0) => sv + id,
            (0, 1) | (1, 0) => sv - id,
            _ => -sv - id,
        }
    });
    if !m.hadamard {
        return Err(ForgeError::NotHadamard);
    }
    Ok(m)
}

pub fn kronecker(a: &SignMatrix, b: &SignMatrix) -> Result<SignMatrix> {
    if !a.hadamard || !b.hadamard {
        return Err(ForgeError::NotHadamard);
    }
    let nb = b.n;
    let m = SignMatrix::from_fn(a.n * nb, |i, j| a.get(i / nb, j / nb) * b.get(i % nb, j % nb));
    debug_assert!(m.hadamard);
    Ok(m)
}

/// Negates the columns whose first entry is `-1`.
pub fn normalize_first_row(m: &SignMatrix) -> SignMatrix {
    let d: Vec<i8> = m.row(0);
    m.scale_columns(&d)
}

/// `diag(h_1)·M`: makes the first column all-ones while keeping the first row.
pub fn normalize_both(m: &SignMatrix) -> Result<SignMatrix> {
    if !m.first_row_is_ones() {
        return Err(ForgeError::Precondition("first row is not all-ones".into()));
    }
    let h1 = m.first_column();
    Ok(m.scale_rows(&h1))
}

/// Skew Hadamard matrix of order `q + 1` with diagonal `-1`, first row `-1`
/// and `H + Hᵀ = -2I`, obtained by negating the Paley type I matrix.
pub fn mckay_input(q: u64) -> Result<SignMatrix> {
    let h = paley_one(q)?.negate();
    let n = h.n;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { -2 } else { 0 };
            if h.get(i, j) + h.get(j, i) != expect {
                return Err(ForgeError::Precondition("H + Hᵀ ≠ -2I".into()));
            }
        }
    }
    debug_assert!((0..n).all(|j| h.get(0, j) == -1));
    Ok(h)
}

/// Encoding used by [`write_matrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    /// `+`/`-` characters under a header holding the order.
    Sign,
    /// `1`/`0` characters (the binary associate) under a header `B n`.
    Binary,
}

pub fn parse_matrix(text: &str) -> Result<SignMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ForgeError::Parse { line: 1, msg: "empty file".into() })?;
    let header = header.trim_end_matches('\r');
    let (binary, order_txt) = match header.strip_prefix("B ") {
        Some(rest) => (true, rest),
        None => (false, header),
    };
    let n: usize = order_txt
        .parse()
        .map_err(|_| ForgeError::Parse { line: 1, msg: format!("bad order {header:?}") })?;
    if n == 0 {
        return Err(ForgeError::Parse { line: 1, msg: "order must be positive".into() });
    }
    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line = line.trim_end_matches('\r');
        if rows.len() == n {
            if line.is_empty() {
                continue;
            }
            return Err(ForgeError::Parse { line: idx + 1, msg: "extra rows".into() });
        }
        let row: Vec<i8> = line
            .chars()
            .map(|c| match (binary, c) {
                (false, '+') | (true, '1') => Ok(1),
                (false, '-') | (true, '0') => Ok(-1),
                _ => Err(ForgeError::Parse { line: idx + 1, msg: format!("unexpected character {c:?}") }),
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(ForgeError::Parse {
                line: idx + 1,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ForgeError::Parse { line: rows.len() + 2, msg: format!("expected {n} rows") });
    }
    SignMatrix::from_rows(&rows)
}

pub fn format_matrix(m: &SignMatrix, format: MatrixFormat) -> String {
    let mut out = String::new();
    match format {
        MatrixFormat::Sign => out.push_str(&format!("{}\n", m.n)),
        MatrixFormat::Binary => out.push_str(&format!("B {}\n", m.n)),
    }
    for i in 0..m.n {
        for j in 0..m.n {
            let pos = m.get(i, j) > 0;
            out.push(match (format, pos) {
                (MatrixFormat::Sign, true) => '+',
                (MatrixFormat::Sign, false) => '-',
                (MatrixFormat::Binary, true) => '1',
                (MatrixFormat::Binary, false) => '0',
            });
        }
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<SignMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn write_matrix(m: &SignMatrix, path: impl AsRef<Path>, format: MatrixFormat) -> Result<()> {
    fs::write(path, format_matrix(m, format))?;
    Ok(())
}
