//! Recomputes the frozen expected values of the acceptance suite with the
//! naive enumeration in `common` and compares them with the library.

mod common;

use common::*;
use forge_core::codes::{min_weight_exhaustive, zero_one_codewords, WeightKind, ZmCode};
use forge_core::matrices::{binary_associate, kronecker, normalize_both, normalize_first_row, paley_one, sylvester, SignMatrix};

fn minima(h: &SignMatrix) -> (u64, u64) {
    let a = entries(h);
    (min_hamming(&transpose(&a), 3), min_hamming(&zero_one(&normalize(&a, false)), 2))
}

fn library_minima(h: &SignMatrix) -> (u64, u64) {
    let t = ZmCode::from_rows(&h.transpose().rows_i64(), 3).unwrap();
    let b = ZmCode::from_rows(&binary_associate(&normalize_first_row(h)).rows_i64(), 2).unwrap();
    let w = |c: &ZmCode| min_weight_exhaustive(c, WeightKind::Hamming, 1 << 24).unwrap().minimum;
    (w(&t), w(&b))
}

#[test]
fn kronecker_fixture_minima() {
    let h = kronecker(&paley_one(11).unwrap(), &sylvester(1).unwrap()).unwrap();
    assert_eq!(minima(&h), (6, 4));
    assert_eq!(library_minima(&h), (6, 4));
}

#[test]
fn paley_24_minima() {
    let h = paley_one(23).unwrap();
    assert_eq!(minima(&h), (9, 8));
    assert_eq!(library_minima(&h), (9, 8));
}

#[test]
fn paley_24_zero_one_words() {
    let h = paley_one(23).unwrap();
    assert_eq!(zero_one_words(&transpose(&normalize(&entries(&h), true)), 3), (48, 0));
    let hn = normalize_both(&normalize_first_row(&h)).unwrap();
    let words = zero_one_codewords(&ZmCode::from_rows(&hn.transpose().rows_i64(), 3).unwrap(), 1 << 24).unwrap();
    let even = words.iter().filter(|w| w.even).count();
    assert_eq!((even, words.len() - even), (48, 0));
}

#[test]
fn oracle_matches_library_on_small_codes() {
    for h in [sylvester(3).unwrap(), paley_one(11).unwrap(), paley_one(7).unwrap()] {
        for p in [2u32, 3] {
            let rows = h.rows_i64();
            let c = ZmCode::from_rows(&rows, p).unwrap();
            let lib = min_weight_exhaustive(&c, WeightKind::Hamming, 1 << 24).unwrap().minimum;
            assert_eq!(lib, min_hamming(&rows, p as u64), "order {} over GF({p})", h.order());
        }
    }
}
