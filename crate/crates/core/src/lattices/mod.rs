//! Exact lattices of the form `(1/√s)·L` with `L ⊂ Zⁿ` of full rank, their
//! rational-orthogonal transforms, and the constructions from codes.

pub mod constructions;
pub mod enumerate;
pub mod hnf;
pub mod mckay;
pub mod reduce;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{ForgeError, Result};
use crate::matrices::SignMatrix;
use hnf::{hermite_normal_form, hnf_det, hnf_solve, IntRows};

pub use constructions::{
    b_m, b_prime, construction_a, d_plus, even_sublattice, lambda_l, lambda_m, TheoremLattices,
};
pub use enumerate::{
    coset_short_vectors, count_norm_vectors, min_norm, norm_counts, EnumerationBudget, MinNorm, ShortVector,
};
pub use mckay::{mckay, verify_mckay_chain, MckayChain, MckayCheck, MckayStep};

/// `p/q` (or `p` when `q = 1`).
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_big_rows(rows: &[Vec<i64>]) -> IntRows {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Splits `s` as `f²·q` with `q` squarefree.
fn square_split(mut s: u64) -> (u64, u64) {
    let (mut f, mut q) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= s {
        let mut e = 0;
        while s % p == 0 {
            s /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            q *= p;
        }
        p += 1;
    }
    (f, q * s)
}

/// Common scale `S` with `S = s1·r1² = s2·r2²`, returned as `(S, r1, r2)`.
pub fn common_scale(s1: u64, s2: u64) -> Result<(u64, u64, u64)> {
    let (f1, q1) = square_split(s1);
    let (f2, q2) = square_split(s2);
    if q1 != q2 {
        return Err(ForgeError::IncompatibleScales(s1.to_string(), s2.to_string()));
    }
    let l = f1.lcm(&f2);
    let s = q1
        .checked_mul(l)
        .and_then(|x| x.checked_mul(l))
        .ok_or(ForgeError::Overflow("lattice scale"))?;
    Ok((s, l / f1, l / f2))
}

/// A vector `(1/√s)·x` with `x` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVector {
    pub scale: u64,
    pub coords: Vec<BigInt>,
}

impl ScaledVector {
    pub fn new(scale: u64, coords: Vec<BigInt>) -> Self {
        ScaledVector { scale, coords }
    }

    pub fn from_i64(scale: u64, coords: &[i64]) -> Self {
        ScaledVector { scale, coords: coords.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn norm(&self) -> BigRational {
        let sq: BigInt = self.coords.iter().map(|x| x * x).sum();
        BigRational::new(sq, BigInt::from(self.scale))
    }

    pub fn rescaled(&self, factor: u64) -> Vec<BigInt> {
        self.coords.iter().map(|x| x * factor).collect()
    }

    pub fn neg(&self) -> Self {
        ScaledVector { scale: self.scale, coords: self.coords.iter().map(|x| -x).collect() }
    }
}

/// A full-rank lattice `(1/√s)·L` stored canonically: `L` in Hermite normal
/// form and `s` reduced so that no prime `p` with `p² | s` divides all of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledLattice {
    scale: u64,
    basis: IntRows,
}

impl ScaledLattice {
    pub fn from_generators(scale: u64, gens: &[Vec<BigInt>]) -> Result<Self> {
        if scale == 0 {
            return Err(ForgeError::InvalidParameter("scale must be positive".into()));
        }
        let n = gens.first().map_or(0, |g| g.len());
        if n == 0 {
            return Err(ForgeError::InvalidParameter("empty generator list".into()));
        }
        let basis = hermite_normal_form(gens, n)?;
        Ok(Self::canonical(scale, basis))
    }

    pub fn from_i64_generators(scale: u64, gens: &[Vec<i64>]) -> Result<Self> {
        Self::from_generators(scale, &to_big_rows(gens))
    }

    pub fn integer_lattice(n: usize) -> Self {
        let basis = (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
        ScaledLattice { scale: 1, basis }
    }

    fn canonical(mut scale: u64, mut basis: IntRows) -> Self {
        let content = basis.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
        let mut content = u64::try_from(&content).unwrap_or(0);
        let mut p = 2u64;
        while p * p <= scale {
            while scale % (p * p) == 0 && content % p == 0 && content > 0 {
                scale /= p * p;
                content /= p;
                let bp = BigInt::from(p);
                for x in basis.iter_mut().flatten() {
                    *x /= &bp;
                }
            }
            p += 1;
        }
        ScaledLattice { scale, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn basis(&self) -> &IntRows {
        &self.basis
    }

    /// Determinant of the integer basis (not of the scaled lattice).
    pub fn basis_det(&self) -> BigInt {
        hnf_det(&self.basis)
    }

    /// Determinant of the Gram matrix, `det(L)² / sⁿ`.
    pub fn gram_det(&self) -> BigRational {
        let d = self.basis_det();
        BigRational::new(&d * &d, BigInt::from(self.scale).pow(self.dim() as u32))
    }

    /// `L·Lᵀ` (the Gram matrix times the scale).
    pub fn integer_gram(&self) -> IntRows {
        let n = self.dim();
        let mut g = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let d: BigInt = self.basis[i].iter().zip(&self.basis[j]).map(|(a, b)| a * b).sum();
                g[j][i] = d.clone();
                g[i][j] = d;
            }
        }
        g
    }

    pub fn gram(&self) -> Vec<Vec<BigRational>> {
        let s = BigInt::from(self.scale);
        self.integer_gram()
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::new(x, s.clone())).collect())
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        let s = BigInt::from(self.scale);
        self.integer_gram().iter().flatten().all(|x| x.is_multiple_of(&s))
    }

    pub fn is_unimodular(&self) -> bool {
        self.gram_det().is_one()
    }

    pub fn is_even(&self) -> bool {
        let s2 = BigInt::from(2 * self.scale);
        self.is_integral()
            && self.basis.iter().all(|b| b.iter().map(|x| x * x).sum::<BigInt>().is_multiple_of(&s2))
    }

    /// Basis of the same lattice written over the scale `target`.
    fn basis_at(&self, target: u64) -> Result<IntRows> {
        let (_, r, _) = common_scale(self.scale, target)?;
        if self.scale * r * r != target {
            return Err(ForgeError::IncompatibleScales(self.scale.to_string(), target.to_string()));
        }
        Ok(self.basis.iter().map(|row| row.iter().map(|x| x * r).collect()).collect())
    }

    /// The vector's integer coordinates over a scale shared with `self`.
    fn unify_vector(&self, v: &ScaledVector) -> Result<(IntRows, Vec<BigInt>)> {
        if v.coords.len() != self.dim() {
            return Err(ForgeError::DimensionMismatch { expected: self.dim(), found: v.coords.len() });
        }
        let (s, _, rv) = common_scale(self.scale, v.scale)?;
        Ok((self.basis_at(s)?, v.rescaled(rv)))
    }

    pub fn contains(&self, v: &ScaledVector) -> Result<bool> {
        let (basis, x) = self.unify_vector(v)?;
        Ok(hnf_solve(&basis, &x).is_some())
    }

    /// Integer coordinates of `v` in the stored basis.
    pub fn coordinates(&self, v: &ScaledVector) -> Result<Option<Vec<BigInt>>> {
        let (basis, x) = self.unify_vector(v)?;
        Ok(hnf_solve(&basis, &x))
    }

    pub fn equals(&self, other: &ScaledLattice) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(ForgeError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        common_scale(self.scale, other.scale)?;
        Ok(self == other)
    }

    pub fn is_sublattice_of(&self, sup: &ScaledLattice) -> Result<bool> {
        if self.dim() != sup.dim() {
            return Err(ForgeError::DimensionMismatch { expected: sup.dim(), found: self.dim() });
        }
        for row in &self.basis {
            if !sup.contains(&ScaledVector::new(self.scale, row.clone()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[sup : self]`; fails unless `self ⊆ sup`.
    pub fn index_in(&self, sup: &ScaledLattice) -> Result<BigInt> {
        if !self.is_sublattice_of(sup)? {
            return Err(ForgeError::Precondition("not a sublattice".into()));
        }
        let q = self.gram_det() / sup.gram_det();
        // the index is the square root of the Gram determinant ratio
        let (num, den) = (q.numer(), q.denom());
        if !den.is_one() {
            return Err(ForgeError::Precondition("index is not an integer".into()));
        }
        Ok(num.sqrt())
    }

    /// Image under `x ↦ x·T`.
    pub fn transform(&self, t: &ScaledOrthogonal) -> Result<ScaledLattice> {
        if t.dim() != self.dim() {
            return Err(ForgeError::DimensionMismatch { expected: self.dim(), found: t.dim() });
        }
        let gens: IntRows = self.basis.iter().map(|b| t.apply_integer(b)).collect();
        let scale = self.scale.checked_mul(t.t).ok_or(ForgeError::Overflow("lattice scale"))?;
        ScaledLattice::from_generators(scale, &gens)
    }

    /// Adds generators given over their own scale.
    pub fn with_vectors(&self, extra: &[ScaledVector]) -> Result<ScaledLattice> {
        let mut s = self.scale;
        for v in extra {
            s = common_scale(s, v.scale)?.0;
        }
        let mut gens = self.basis_at(s)?;
        for v in extra {
            let (_, _, r) = common_scale(s, v.scale)?;
            gens.push(v.rescaled(r));
        }
        ScaledLattice::from_generators(s, &gens)
    }

    pub fn basis_vectors(&self) -> Vec<ScaledVector> {
        self.basis.iter().map(|b| ScaledVector::new(self.scale, b.clone())).collect()
    }
}

/// A transform `(1/√t)·Q` with `Q·Qᵀ = t·I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledOrthogonal {
    t: u64,
    q: Vec<Vec<i64>>,
}

impl ScaledOrthogonal {
    pub fn new(t: u64, q: Vec<Vec<i64>>) -> Result<Self> {
        let n = q.len();
        if let Some(r) = q.iter().find(|r| r.len() != n) {
            return Err(ForgeError::DimensionMismatch { expected: n, found: r.len() });
        }
        for i in 0..n {
            for j in 0..n {
                let d: i128 = q[i].iter().zip(&q[j]).map(|(&a, &b)| a as i128 * b as i128).sum();
                let want = if i == j { t as i128 } else { 0 };
                if d != want {
                    return Err(ForgeError::Precondition(format!("Q·Qᵀ ≠ {t}·I at ({i},{j})")));
                }
            }
        }
        Ok(ScaledOrthogonal { t, q })
    }

    pub fn identity(n: usize) -> Self {
        let q = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        ScaledOrthogonal { t: 1, q }
    }

    /// `(1/√n)·H` for a Hadamard matrix `H`.
    pub fn from_hadamard(h: &SignMatrix) -> Result<Self> {
        let q = h.rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
        ScaledOrthogonal::new(h.order() as u64, q)
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.q
    }

    /// The inverse `(1/√t)·Qᵀ`.
    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let q = (0..n).map(|i| (0..n).map(|j| self.q[j][i]).collect()).collect();
        ScaledOrthogonal { t: self.t, q }
    }

    /// `x·Q` for an integer row vector.
    pub fn apply_integer(&self, x: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim();
        let mut out = vec![BigInt::zero(); n];
        for (xi, row) in x.iter().zip(&self.q) {
            if xi.is_zero() {
                continue;
            }
            for (o, &qij) in out.iter_mut().zip(row) {
                if qij != 0 {
                    *o += xi * qij;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &ScaledVector) -> ScaledVector {
        ScaledVector::new(v.scale * self.t, self.apply_integer(&v.coords))
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ScaledOrthogonal) -> Result<Self> {
        let n = self.dim();
        let q: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.q[i][k] * other.q[k][j]).sum()).collect())
            .collect();
        ScaledOrthogonal::new(self.t * other.t, q)
    }
}
