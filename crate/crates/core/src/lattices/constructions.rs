//! Lattices built from codes and Hadamard matrices.
//!
//! Half-integral generators are doubled and carried over four times the
//! scale, so every basis stays integral.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{ScaledLattice, ScaledOrthogonal, ScaledVector};
use crate::codes::ZmCode;
use crate::error::{ForgeError, Result};
use crate::matrices::SignMatrix;

/// `(1/√m)·(lift of C + mZⁿ)`.
pub fn construction_a(code: &ZmCode) -> Result<ScaledLattice> {
    let m = code.modulus() as i64;
    let n = code.length();
    let mut gens: Vec<Vec<i64>> = code.generator_rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = m;
        gens.push(e);
    }
    ScaledLattice::from_i64_generators(code.modulus() as u64, &gens)
}

/// The index-2 sublattice of vectors of even norm.
pub fn even_sublattice(l: &ScaledLattice) -> Result<ScaledLattice> {
    if !l.is_integral() {
        return Err(ForgeError::Precondition("lattice is not integral".into()));
    }
    let s = BigInt::from(l.scale());
    let odd: Vec<bool> = l
        .basis()
        .iter()
        .map(|b| (b.iter().map(|x| x * x).sum::<BigInt>() / &s).is_odd())
        .collect();
    let Some(j) = odd.iter().position(|&o| o) else {
        return Err(ForgeError::Precondition("lattice is already even".into()));
    };
    let bj = &l.basis()[j];
    let mut gens: Vec<Vec<BigInt>> = Vec::with_capacity(l.dim());
    for (i, b) in l.basis().iter().enumerate() {
        if i == j {
            gens.push(b.iter().map(|x| x * 2).collect());
        } else if odd[i] {
            gens.push(b.iter().zip(bj).map(|(x, y)| x + y).collect());
        } else {
            gens.push(b.clone());
        }
    }
    ScaledLattice::from_generators(l.scale(), &gens)
}

fn require_normalized(h: &SignMatrix) -> Result<()> {
    if !h.is_tagged_hadamard() {
        return Err(ForgeError::NotHadamard);
    }
    if !h.first_row_is_ones() {
        return Err(ForgeError::Precondition("Hadamard matrix is not normalized".into()));
    }
    Ok(())
}

/// Rows `ℓ(e_i + e_1)`, multiplied by `factor`.
fn shifted_units(n: usize, l: i64, factor: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0i64; n];
            r[i] += l * factor;
            r[0] += l * factor;
            r
        })
        .collect()
}

/// Rows of `½(H + J)` times `factor`.
fn binary_rows(h: &SignMatrix, factor: i64) -> Vec<Vec<i64>> {
    (0..h.order())
        .map(|i| (0..h.order()).map(|j| factor * i64::from(h.get(i, j) > 0)).collect())
        .collect()
}

/// Rows `½(Hᵀ_i + h_1)` times `factor`, where `h_1` is the first column of `H`.
fn half_transpose_rows(h: &SignMatrix, factor: i64) -> Vec<Vec<i64>> {
    let n = h.order();
    (0..n)
        .map(|i| (0..n).map(|j| factor * (h.get(j, i) as i64 + h.get(j, 0) as i64) / 2).collect())
        .collect()
}

/// `B(C′_ℓ) = (1/√ℓ)·[½(H + J); ℓ(I + 𝟏ᵀe_1)]`.
pub fn b_prime(h: &SignMatrix, l: u64) -> Result<ScaledLattice> {
    require_normalized(h)?;
    let mut gens = binary_rows(h, 1);
    gens.extend(shifted_units(h.order(), l as i64, 1));
    ScaledLattice::from_i64_generators(l, &gens)
}

/// `B(C_m) = (1/√m)·[½(Hᵀ + 𝟏ᵀh_1); m(I + 𝟏ᵀe_1)]`.
pub fn b_m(h: &SignMatrix, m: u64) -> Result<ScaledLattice> {
    require_normalized(h)?;
    let mut gens = half_transpose_rows(h, 1);
    gens.extend(shifted_units(h.order(), m as i64, 1));
    ScaledLattice::from_i64_generators(m, &gens)
}

/// `Λ(C′_ℓ)`: `B(C′_ℓ)` glued with `(1/√ℓ)(ℓe_1 + ½𝟏)`.
pub fn lambda_l(h: &SignMatrix, l: u64) -> Result<ScaledLattice> {
    require_normalized(h)?;
    let n = h.order();
    let mut gens = binary_rows(h, 2);
    gens.extend(shifted_units(n, l as i64, 2));
    let mut glue = vec![1i64; n];
    glue[0] += 2 * l as i64;
    gens.push(glue);
    ScaledLattice::from_i64_generators(4 * l, &gens)
}

/// `Λ(C_m)`: `B(C_m)` glued with `(1/√m)(me_1 + ½h_1)`.
pub fn lambda_m(h: &SignMatrix, m: u64) -> Result<ScaledLattice> {
    require_normalized(h)?;
    let n = h.order();
    let mut gens = half_transpose_rows(h, 2);
    gens.extend(shifted_units(n, m as i64, 2));
    let mut glue: Vec<i64> = (0..n).map(|j| h.get(j, 0) as i64).collect();
    glue[0] += 2 * m as i64;
    gens.push(glue);
    ScaledLattice::from_i64_generators(4 * m, &gens)
}

/// `D_n⁺ = Zⁿ⁺¹·[I + 𝟏ᵀe_1; ½𝟏]` (scale 4).
pub fn d_plus(n: usize) -> Result<ScaledLattice> {
    if n == 0 || n % 4 != 0 {
        return Err(ForgeError::InvalidParameter(format!("D_n⁺ needs n ≡ 0 mod 4, got {n}")));
    }
    let mut gens = shifted_units(n, 1, 2);
    gens.push(vec![1i64; n]);
    ScaledLattice::from_i64_generators(4, &gens)
}

/// Every lattice around `B(C_m)` and `B(C′_ℓ)` for a normalized Hadamard
/// matrix of order `n = 4ℓm` (`m ≥ 3` odd, `ℓ ≥ 2`, `gcd(ℓ, m) = 1`).
#[derive(Clone, Debug)]
pub struct TheoremLattices {
    pub l: u64,
    pub m: u64,
    pub code_m: ZmCode,
    pub code_l: ZmCode,
    pub a_m: ScaledLattice,
    pub b_m: ScaledLattice,
    pub lambda_m: ScaledLattice,
    pub a_l: ScaledLattice,
    pub b_l: ScaledLattice,
    pub lambda_l: ScaledLattice,
    /// `(1/√n)·H`.
    pub rotation: ScaledOrthogonal,
}

impl TheoremLattices {
    pub fn new(h: &SignMatrix, l: u64, m: u64) -> Result<Self> {
        require_normalized(h)?;
        let n = h.order() as u64;
        if m < 3 || m % 2 == 0 || l < 2 || l.gcd(&m) != 1 || n != 4 * l * m {
            return Err(ForgeError::Precondition(format!(
                "need n = 4ℓm with m ≥ 3 odd, ℓ ≥ 2, gcd(ℓ, m) = 1; got n = {n}, ℓ = {l}, m = {m}"
            )));
        }
        let code_m = ZmCode::from_rows(&h.transpose().rows_i64(), m as u32)?;
        let bin = crate::matrices::binary_associate(h);
        let code_l = ZmCode::from_rows(&bin.rows_i64(), l as u32)?;
        Ok(TheoremLattices {
            l,
            m,
            a_m: construction_a(&code_m)?,
            a_l: construction_a(&code_l)?,
            b_m: b_m(h, m)?,
            b_l: b_prime(h, l)?,
            lambda_m: lambda_m(h, m)?,
            lambda_l: lambda_l(h, l)?,
            rotation: ScaledOrthogonal::from_hadamard(h)?,
            code_m,
            code_l,
        })
    }

    /// `√ℓ·e_1`, the glue of `A(C′_ℓ)` over `B(C′_ℓ)`.
    pub fn glue_a_l(&self) -> ScaledVector {
        let n = self.code_l.length();
        let mut v = vec![0i64; n];
        v[0] = self.l as i64;
        ScaledVector::from_i64(self.l, &v)
    }

    /// `(1/√m)(me_1 + ½h_1)`, the glue of `Λ(C_m)` over `B(C_m)`.
    pub fn glue_lambda_m(&self, h: &SignMatrix) -> ScaledVector {
        let n = h.order();
        let mut v: Vec<i64> = (0..n).map(|j| h.get(j, 0) as i64).collect();
        v[0] += 2 * self.m as i64;
        ScaledVector::from_i64(4 * self.m, &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::TriState;
    use crate::lattices::enumerate::ratio;
    use crate::lattices::{min_norm, EnumerationBudget};
    use crate::matrices::{normalize_both, normalize_first_row, paley_one, sylvester};
    use num_traits::One;

    #[test]
    fn zero_code_gives_scaled_integers() {
        let c = ZmCode::from_rows(&[vec![0, 0, 0]], 3).unwrap();
        let a = construction_a(&c).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.gram_det(), num_rational::BigRational::from_integer(BigInt::from(27)));
    }

    #[test]
    fn construction_a_flags_follow_code() {
        let h = paley_one(23).unwrap();
        let c3 = ZmCode::from_rows(&h.transpose().rows_i64(), 3).unwrap();
        let a = construction_a(&c3).unwrap();
        assert!(a.is_unimodular() && !a.is_even() && a.dim() == 24);
        let b = crate::matrices::binary_associate(&normalize_first_row(&h));
        let c6 = ZmCode::from_rows(&b.rows_i64(), 6).unwrap();
        assert_eq!(c6.type_two_flag(), TriState::Yes);
        let a6 = construction_a(&c6).unwrap();
        assert!(a6.is_unimodular() && a6.is_even());
    }

    #[test]
    fn even_sublattice_of_z2() {
        let e = even_sublattice(&ScaledLattice::integer_lattice(2)).unwrap();
        assert_eq!(e, ScaledLattice::from_i64_generators(1, &[vec![1, 1], vec![0, 2]]).unwrap());
        assert!(even_sublattice(&e).is_err());
    }

    #[test]
    fn d_plus_family() {
        let d4 = d_plus(4).unwrap();
        assert!(d4.is_unimodular() && !d4.is_even());
        // D_4⁺ is Z⁴ rotated by ½·(Sylvester of order 4)
        let rot = ScaledOrthogonal::from_hadamard(&sylvester(2).unwrap()).unwrap();
        assert!(ScaledLattice::integer_lattice(4).transform(&rot).unwrap().equals(&d4).unwrap());
        let e8 = d_plus(8).unwrap();
        assert!(e8.is_unimodular() && e8.is_even());
        assert_eq!(min_norm(&e8, None, EnumerationBudget::default()).unwrap().minimum, Some(ratio(2, 1)));
        let d12 = d_plus(12).unwrap();
        assert!(d12.is_unimodular() && !d12.is_even());
        assert!(d_plus(6).is_err());
    }

    #[test]
    fn paley_24_lattice_family() {
        let h = normalize_both(&normalize_first_row(&paley_one(23).unwrap())).unwrap();
        let t = TheoremLattices::new(&h, 2, 3).unwrap();
        assert!(t.a_m.is_unimodular() && t.a_l.is_unimodular() && t.lambda_m.is_unimodular() && t.lambda_l.is_unimodular());
        assert!(t.lambda_m.is_even() && t.lambda_l.is_even());
        assert!(even_sublattice(&t.a_m).unwrap().equals(&t.b_m).unwrap());
        assert_eq!(t.b_m.index_in(&t.a_m).unwrap(), BigInt::one() * 2);
        assert_eq!(t.b_l.index_in(&t.a_l).unwrap(), BigInt::from(2));
        assert_eq!(t.b_l.index_in(&t.lambda_l).unwrap(), BigInt::from(2));
        assert!(t.b_m.transform(&t.rotation).unwrap().equals(&t.b_l).unwrap());
        assert!(t.lambda_l.transform(&t.rotation.transpose()).unwrap().equals(&t.lambda_m).unwrap());
        assert!(!t.lambda_l.equals(&t.a_l).unwrap());
        assert!(t.a_l.contains(&t.glue_a_l()).unwrap());
        assert!(!t.a_l.contains(&ScaledVector::from_i64(8, &[1; 24])).unwrap());
        assert!(TheoremLattices::new(&h, 6, 1).is_err());
    }
}
