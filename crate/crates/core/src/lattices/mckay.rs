//! McKay's even unimodular lattice from a skew Hadamard matrix, and the
//! chain of exact isometries carrying it onto `Λ(C′_2)` of a doubled
//! Hadamard matrix.

use super::constructions::{construction_a, lambda_l};
use super::enumerate::{min_norm, EnumerationBudget, MinNorm};
use super::{ScaledLattice, ScaledOrthogonal};
use crate::codes::ZmCode;
use crate::error::{ForgeError, Result};
use crate::matrices::SignMatrix;

#[derive(Clone, Debug)]
pub struct MckayChain {
    pub k: u64,
    /// The skew input matrix of order `n = 4k − 4`.
    pub h: SignMatrix,
    /// `(1/√k)·[[I, H − I], [O, kI]]`.
    pub l: ScaledLattice,
    pub u: ScaledOrthogonal,
    pub v: ScaledOrthogonal,
    /// Integer part of `M = (1/√8)·[[4I, 4D], [Hᵀ − 2I, HᵀD]]`.
    pub m_rows: Vec<Vec<i64>>,
    pub m_scale: u64,
    /// `[[−H, HᵀD], [H, HᵀD]]`.
    pub h_tilde: SignMatrix,
    /// Integer coefficients expressing the generators of `Λ(C′_2)` in the rows of `M`.
    pub coefficients: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn block(tl: &[Vec<i64>], tr: &[Vec<i64>], bl: &[Vec<i64>], br: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let top = tl.iter().zip(tr).map(|(a, b)| a.iter().chain(b).copied().collect());
    let bottom = bl.iter().zip(br).map(|(a, b)| a.iter().chain(b).copied().collect());
    top.chain(bottom).collect()
}

fn hstack(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).copied().collect()).collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..cols).map(|j| r.iter().zip(b).map(|(&x, row)| x * row[j]).sum()).collect())
        .collect()
}

fn map2(a: &[Vec<i64>], b: &[Vec<i64>], f: impl Fn(i64, i64) -> i64) -> Vec<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(&p, &q)| f(p, q)).collect()).collect()
}

/// Builds the chain for a skew Hadamard matrix with `H + Hᵀ = −2I` and first row `−𝟏`.
pub fn mckay(h: &SignMatrix, k: u64) -> Result<MckayChain> {
    let n = h.order();
    if k < 4 || k % 2 != 0 || n as u64 != 4 * k - 4 {
        return Err(ForgeError::Precondition(format!("need even k ≥ 4 and order 4k − 4; got k = {k}, order {n}")));
    }
    if !h.is_tagged_hadamard() {
        return Err(ForgeError::NotHadamard);
    }
    for i in 0..n {
        if h.get(0, i) != -1 {
            return Err(ForgeError::Precondition("first row is not −𝟏".into()));
        }
        for j in 0..n {
            if h.get(i, j) as i64 + h.get(j, i) as i64 != if i == j { -2 } else { 0 } {
                return Err(ForgeError::Precondition("H + Hᵀ ≠ −2I".into()));
            }
        }
    }
    let ki = k as i64;
    let hm = h.rows_i64();
    let ht: Vec<Vec<i64>> = h.transpose().rows_i64();
    let id = identity(n);
    let zero = vec![vec![0i64; n]; n];
    let scaled = |a: &[Vec<i64>], c: i64| -> Vec<Vec<i64>> { a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() };
    let mut d = id.clone();
    d[0][0] = -1;

    let h_minus_i = map2(&hm, &id, |a, b| a - b);
    let ht_minus_i = map2(&ht, &id, |a, b| a - b);
    let l_gens = block(&id, &h_minus_i, &zero, &scaled(&id, ki));
    let l = ScaledLattice::from_i64_generators(k, &l_gens)?;
    let u = ScaledOrthogonal::new(4 * k, block(&id, &scaled(&h_minus_i, -1), &ht_minus_i, &id))?;
    let v = ScaledOrthogonal::new(2, block(&id, &d, &scaled(&id, -1), &d))?;

    let ht_d = matmul(&ht, &d);
    let neg_h = scaled(&hm, -1);
    let ht_rows = block(&neg_h, &ht_d, &hm, &ht_d);
    let h_tilde = SignMatrix::from_rows(
        &ht_rows.iter().map(|r| r.iter().map(|&x| x as i8).collect()).collect::<Vec<_>>(),
    )?;

    let m_rows = block(&scaled(&id, 4), &scaled(&d, 4), &map2(&ht, &id, |a, b| a - 2 * b), &ht_d);

    // ½(Hᵀ + J) − 𝟏ᵀe_1 and 𝟏ᵀe_1
    let ones_e1: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|j| i64::from(j == 0)).collect()).collect();
    let half_ht_j = map2(&ht.iter().map(|r| r.iter().map(|x| (x + 1) / 2).collect()).collect::<Vec<_>>(), &ones_e1, |a, b| a - b);
    let i_plus = map2(&id, &ones_e1, |a, b| a + b);
    let quarter = (n / 4) as i64;
    let jd: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|j| d[j][j]).collect()).collect();
    let d_ht = matmul(&d, &ht);
    let mut coefficients = Vec::with_capacity(4 * n + 1);
    coefficients.extend(hstack(&half_ht_j, &scaled(&i_plus, -1)));
    coefficients.extend(hstack(
        &map2(&half_ht_j, &id, |a, b| a + quarter * b),
        &map2(&scaled(&i_plus, -1), &hm, |a, b| a - b),
    ));
    coefficients.extend(hstack(&half_ht_j, &scaled(&i_plus, -2)));
    let half_diff = map2(&jd, &d_ht, |a, b| a - b);
    if half_diff.iter().flatten().any(|x| x % 2 != 0) {
        return Err(ForgeError::Precondition("JD − DHᵀ is not even".into()));
    }
    coefficients.extend(hstack(&map2(&scaled(&half_diff, 1), &d, |a, b| a / 2 + b), &matmul(&scaled(&i_plus, 2), &d)));
    let mut last = vec![0i64; 2 * n];
    last[..n].iter_mut().for_each(|x| *x = 1);
    last[0] = -1;
    last[n] = -3;
    coefficients.push(last);

    Ok(MckayChain { k, h: h.clone(), l, u, v, m_rows, m_scale: 8, h_tilde, coefficients })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MckayStep {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct MckayCheck {
    pub steps: Vec<MckayStep>,
    pub lambda: ScaledLattice,
    pub min_norm: Option<MinNorm>,
}

impl MckayCheck {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}

impl MckayChain {
    pub fn dim(&self) -> usize {
        2 * self.h.order()
    }

    /// The lattice spanned by the rows of `M`.
    pub fn m_lattice(&self) -> Result<ScaledLattice> {
        ScaledLattice::from_i64_generators(self.m_scale, &self.m_rows)
    }

    /// `[H̃ + J; 4(I + 𝟏ᵀe_1); 4e_1 + 𝟏]`: twice the generators of `Λ(C′_2)` over scale 8.
    pub fn lambda_generators(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut rows: Vec<Vec<i64>> = self.h_tilde.rows_i64().into_iter().map(|r| r.into_iter().map(|x| x + 1).collect()).collect();
        for i in 0..n {
            let mut r = vec![0i64; n];
            r[i] += 4;
            r[0] += 4;
            rows.push(r);
        }
        let mut glue = vec![1i64; n];
        glue[0] += 4;
        rows.push(glue);
        rows
    }
}

/// Runs every link of the chain, then the minimum of `L` when a budget is given.
pub fn verify_mckay_chain(chain: &MckayChain, budget: Option<EnumerationBudget>) -> Result<MckayCheck> {
    let mut steps = Vec::new();
    let mut step = |name: &'static str, passed: bool| steps.push(MckayStep { name, passed });

    step("u-orthogonal", ScaledOrthogonal::new(chain.u.t(), chain.u.matrix().to_vec()).is_ok());
    step("v-orthogonal", ScaledOrthogonal::new(chain.v.t(), chain.v.matrix().to_vec()).is_ok());

    let n = chain.h.order();
    let z4_rows: Vec<Vec<i64>> = chain
        .h
        .transpose()
        .rows_i64()
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<i64> = r.iter().enumerate().map(|(j, &x)| x - i64::from(i == j)).collect();
            row.extend((0..n).map(|j| i64::from(i == j)));
            row
        })
        .collect();
    let z4 = construction_a(&ZmCode::from_rows(&z4_rows, 4)?)?;
    let lu = chain.l.transform(&chain.u)?;
    step("lu-equals-z4-code-lattice", lu.equals(&z4)?);

    let luv = lu.transform(&chain.v)?;
    step("m-spans-luv", chain.m_lattice()?.equals(&luv)?);

    step("h-tilde-normalized-hadamard", chain.h_tilde.is_hadamard() && chain.h_tilde.first_row_is_ones());

    let product = matmul(&chain.coefficients, &chain.m_rows);
    step("coefficient-identity", product == chain.lambda_generators());

    let lambda = lambda_l(&chain.h_tilde, 2)?;
    step("lambda-matches-generators", lambda.equals(&ScaledLattice::from_i64_generators(8, &chain.lambda_generators())?)?);
    step("lambda-unimodular", lambda.is_unimodular());
    step("lambda-inside-luv", lambda.is_sublattice_of(&luv)?);
    step("luv-unimodular", luv.is_unimodular());
    step("lambda-equals-luv", lambda.equals(&luv)?);
    step("l-even-unimodular", chain.l.is_even() && chain.l.is_unimodular());

    let min = match budget {
        Some(b) => {
            let r = min_norm(&chain.l, None, b)?;
            step("l-minimum-4", r.minimum == Some(super::enumerate::ratio(4, 1)));
            Some(r)
        }
        None => None,
    };
    Ok(MckayCheck { steps, lambda, min_norm: min })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::mckay_input;

    #[test]
    fn chain_for_order_12() {
        let chain = mckay(&mckay_input(11).unwrap(), 4).unwrap();
        assert_eq!(chain.dim(), 24);
        assert_eq!(chain.coefficients.len(), 4 * 12 + 1);
        let check = verify_mckay_chain(&chain, None).unwrap();
        for s in &check.steps {
            assert!(s.passed, "{}", s.name);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let h = mckay_input(11).unwrap();
        assert!(mckay(&h, 6).is_err());
        assert!(mckay(&h.negate(), 4).is_err());
    }
}
