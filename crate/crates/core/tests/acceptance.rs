//! Acceptance criteria 1–11. Each criterion prints one PASS/FAIL line with
//! its wall time; the test fails if any criterion does.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use forge_core::codes::{is_type_two, min_weight_bz, odd_even_norms, type_norms, TriState, ZmCode, ZmVector};
use forge_core::fixtures::pless_symmetry_code;
use forge_core::lattices::{construction_a, d_plus, ScaledOrthogonal};
use forge_core::matrices::{binary_associate, kronecker, mckay_input, normalize_first_row, paley_one, sylvester, SignMatrix};
use forge_core::verify::{
    check_cor1, check_divisors, check_dual_floor, check_lemma_num, check_leech, check_mckay, check_self_dual,
    check_thm14, check_thm48, Certification, TheoremParams, Verdict, VerifyOptions, VerifyReport,
};

const SEED: u64 = 20_241_016;

/// Minimum weights of the Kronecker fixture `kron(paley1-11, sylvester-1)`,
/// ternary then binary, from the naive enumeration in `common`.
const KRON_MINIMA: (u64, u64) = (6, 4);
/// Even- and odd-weight 0/1 codewords of the ternary code of doubly
/// normalized paley1-23, from the same enumeration.
const PALEY_24_ZERO_ONE: (u64, u64) = (48, 0);

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn kron() -> SignMatrix {
    kronecker(&paley_one(11).unwrap(), &sylvester(1).unwrap()).unwrap()
}

fn opts() -> VerifyOptions {
    VerifyOptions::with_seed(SEED)
}

fn value<'a>(r: &'a VerifyReport, name: &str) -> std::result::Result<&'a Value, String> {
    r.entry(name).map(|e| &e.value).ok_or_else(|| format!("{}: no entry {name}", r.claim))
}

fn cert(r: &VerifyReport, name: &str) -> Option<Certification> {
    r.entry(name).map(|e| e.certification)
}

fn passed(r: &VerifyReport, name: &str) -> bool {
    r.check(name).is_some_and(|c| c.outcome == Verdict::Pass)
}

fn pass_verdict(r: &VerifyReport) -> std::result::Result<(), String> {
    let bad: Vec<_> = r.checks.iter().filter(|c| c.outcome != Verdict::Pass).map(|c| c.name.as_str()).collect();
    ensure(r.verdict == Verdict::Pass, format!("{} verdict {:?}, failing checks {bad:?}", r.claim, r.verdict))
}

struct Runner {
    failures: Vec<usize>,
}

impl Runner {
    fn run(&mut self, id: usize, title: &str, limit: Duration, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs())),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!("criterion {id:>2} {tag} {title} [{:.2}s / {}s] {detail}", elapsed.as_secs_f64(), limit.as_secs());
        if outcome.is_err() {
            self.failures.push(id);
        }
    }
}

fn divisor_fixtures() -> Vec<(&'static str, SignMatrix)> {
    vec![
        ("sylvester-2", sylvester(2).unwrap()),
        ("paley1-11", paley_one(11).unwrap()),
        ("paley1-23", paley_one(23).unwrap()),
        ("kron-paley1-11-sylvester-1", kron()),
    ]
}

fn criterion_1() -> Check {
    for (name, h) in divisor_fixtures() {
        let r = check_divisors(&h).map_err(|e| e.to_string())?;
        ensure(passed(&r, "complementary-products"), format!("{name}: d_i·d_(n+1−i) ≠ n"))?;
        ensure(passed(&r, "binary-halving"), format!("{name}: halving identity fails"))?;
        pass_verdict(&r)?;
    }
    Ok("4 fixtures".into())
}

fn criterion_2() -> Check {
    let p23 = paley_one(23).unwrap();
    let ternary = ZmCode::from_rows(&p23.transpose().rows_i64(), 3).unwrap();
    ensure(ternary.is_self_dual(), "ternary code of paley1-23ᵀ is not self-dual")?;
    ensure(*ternary.cardinality() == BigUint::from(3u32).pow(12), "ternary cardinality ≠ 3^12")?;
    let b24 = binary_associate(&normalize_first_row(&p23)).rows_i64();
    for q in [2, 6] {
        let c = ZmCode::from_rows(&b24, q).unwrap();
        ensure(c.is_self_dual(), format!("Z/{q} code of the order-24 binary matrix is not self-dual"))?;
        ensure(is_type_two(&c, 1 << 26).unwrap() == TriState::Yes, format!("Z/{q} code is not type II"))?;
    }
    let b48 = binary_associate(&normalize_first_row(&paley_one(47).unwrap())).rows_i64();
    let c4 = ZmCode::from_rows(&b48, 4).unwrap();
    ensure(c4.is_self_dual(), "Z/4 code at order 48 is not self-dual")?;
    ensure(is_type_two(&c4, 1 << 26).unwrap() == TriState::Yes, "Z/4 code at order 48 is not type II")?;
    Ok("3^12 ternary, doubly even binary, type II over Z/6 and Z/4".into())
}

fn cor1_minima(r: &VerifyReport) -> std::result::Result<(u64, u64), String> {
    let t = value(r, "ternary-minimum-weight")?.as_u64().ok_or("ternary minimum")?;
    let b = value(r, "binary-minimum-weight")?.as_u64().ok_or("binary minimum")?;
    ensure(
        cert(r, "ternary-minimum-weight") == Some(Certification::Exhaustive)
            && cert(r, "binary-minimum-weight") == Some(Certification::Exhaustive),
        "minima are not exhaustive",
    )?;
    Ok((t, b))
}

fn criterion_3() -> Check {
    let paley = check_cor1(&paley_one(23).unwrap(), &opts()).map_err(|e| e.to_string())?;
    ensure(cor1_minima(&paley)? == (9, 8), format!("paley1-23 minima {:?}", cor1_minima(&paley)?))?;
    pass_verdict(&paley)?;
    let k = check_cor1(&kron(), &opts()).map_err(|e| e.to_string())?;
    ensure(cor1_minima(&k)? == KRON_MINIMA, format!("kron minima {:?}", cor1_minima(&k)?))?;
    pass_verdict(&k)?;
    Ok("paley1-23 (9, 8), kron (6, 4), both biconditionals pass".into())
}

fn criterion_4() -> Check {
    let h = paley_one(11).unwrap();
    let a = construction_a(&ZmCode::from_rows(&h.transpose().rows_i64(), 3).unwrap()).unwrap();
    let rotated = a.transform(&ScaledOrthogonal::from_hadamard(&h).unwrap()).unwrap();
    ensure(rotated.equals(&d_plus(12).unwrap()).unwrap(), "A(C_3)·(1/√12)H ≠ D12⁺")?;
    Ok("HNF equal".into())
}

fn criterion_5() -> Check {
    let h = paley_one(23).unwrap();
    let leech = check_leech(&h, &opts()).map_err(|e| e.to_string())?;
    pass_verdict(&leech)?;
    ensure(value(&leech, "min-norm")? == "4" && value(&leech, "norm-2-vectors")? == 0, "minimum is not 4")?;
    let params = TheoremParams::new(24, 2, 3).unwrap();
    let t = check_thm14(&h, &params, Some(4), &opts()).map_err(|e| e.to_string())?;
    pass_verdict(&t)?;
    let quad = (
        value(&t, "i-min-even-norm")?.clone(),
        value(&t, "ii-min-type-ii-norm")?.clone(),
        value(&t, "iii-min-norm-b")?.clone(),
        value(&t, "iv-min-norm-lambda")?.clone(),
    );
    let want = (Value::from(12), Value::from(8), Value::from("4"), Value::from("4"));
    ensure(quad == want, format!("quadruple {quad:?}"))?;
    ensure(value(&t, "statements")? == &serde_json::json!([true, true, true, true]), "statements do not all hold")?;
    Ok("even unimodular, min 4, quadruple (12, 8, 4, 4)".into())
}

fn criterion_6() -> Check {
    let r = check_mckay(&mckay_input(11).unwrap(), &opts()).map_err(|e| e.to_string())?;
    for step in ["u-orthogonal", "v-orthogonal", "lu-equals-z4-code-lattice", "lambda-equals-luv", "l-even-unimodular", "l-minimum-4"] {
        ensure(passed(&r, step), format!("step {step} failed"))?;
    }
    pass_verdict(&r)?;
    Ok(format!("{} steps", r.checks.len()))
}

fn criterion_7() -> Check {
    let params = TheoremParams::new(24, 2, 3).unwrap();
    let r = check_lemma_num(&paley_one(23).unwrap(), &params, &opts()).map_err(|e| e.to_string())?;
    pass_verdict(&r)?;
    let lattice = (value(&r, "a-minus-b-norm-l-vectors")?.as_u64(), value(&r, "lambda-minus-b-norm-l-vectors")?.as_u64());
    let code = (value(&r, "even-weight-zero-one-codewords")?.as_u64(), value(&r, "odd-weight-zero-one-codewords")?.as_u64());
    let want = (Some(PALEY_24_ZERO_ONE.0), Some(PALEY_24_ZERO_ONE.1));
    ensure(lattice == want && code == want, format!("lattice {lattice:?}, code {code:?}"))?;
    Ok(format!("even side {}, odd side {}", PALEY_24_ZERO_ONE.0, PALEY_24_ZERO_ONE.1))
}

/// Minimal squared lengths over lifts of `u`, split by the class of the
/// lift's norm (`by_sum = false`) or coordinate sum (`by_sum = true`) mod 2m.
fn brute_lifts(u: &[u32], m: i64, by_sum: bool) -> (u64, Vec<u64>) {
    // every coordinate within 2m of its least residue: lifts outside this
    // window are longer than ‖v0‖² + m² for n ≤ 8
    let choices: Vec<Vec<i64>> = u.iter().map(|&x| (-2..=2).map(|k| x as i64 + k * m).collect()).collect();
    let mut best = u64::MAX;
    let mut by_class = vec![u64::MAX; 2 * m as usize];
    let mut idx = vec![0usize; u.len()];
    loop {
        let v: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let norm = v.iter().map(|x| (x * x) as u64).sum::<u64>();
        best = best.min(norm);
        let class = if by_sum { v.iter().sum::<i64>() } else { norm as i64 };
        let slot = &mut by_class[class.rem_euclid(2 * m) as usize];
        *slot = (*slot).min(norm);
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < 5 {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
    }
    (best, by_class)
}

fn max_lee(u: &[u32], m: u32) -> u64 {
    u.iter().map(|&x| x.min(m - x) as u64).max().unwrap_or(0)
}

fn shifted(norm: u64, m: u64, lee: u64) -> u64 {
    (norm as i64 + m as i64 * (m as i64 - 2 * lee as i64)) as u64
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut count = 0;
    for m in [3u32, 5, 7] {
        for _ in 0..1000 {
            let n = rng.gen_range(1..=8);
            let u: Vec<u32> = (0..n).map(|_| rng.gen_range(0..m)).collect();
            let (norm, by_class) = brute_lifts(&u, m as i64, false);
            let odd = by_class.iter().enumerate().filter(|(c, _)| c % 2 == 1).map(|(_, &x)| x).min().unwrap();
            let even = by_class.iter().enumerate().filter(|(c, _)| c % 2 == 0).map(|(_, &x)| x).min().unwrap();
            let got = odd_even_norms(&ZmVector::new(m, u.clone()).unwrap()).unwrap();
            ensure(got == (odd, even), format!("m = {m}, u = {u:?}: library {got:?}, lifts {:?}", (odd, even)))?;
            let mut pair = [odd, even];
            let mut expected = [norm, shifted(norm, m as u64, max_lee(&u, m))];
            pair.sort_unstable();
            expected.sort_unstable();
            ensure(pair == expected, format!("m = {m}, u = {u:?}: odd/even set identity"))?;
            if u.iter().any(|&x| x != 0) {
                ensure(odd.abs_diff(even) <= (m * m - 2 * m) as u64, format!("m = {m}, u = {u:?}: difference bound"))?;
            }
            count += 1;
        }
    }
    for l in [2u32, 4] {
        for _ in 0..1000 {
            let n = rng.gen_range(1..=8);
            let mut u: Vec<u32> = (0..n).map(|_| rng.gen_range(0..l)).collect();
            let s: u32 = u[..n - 1].iter().sum();
            u[n - 1] = (l - s % l) % l;
            let (norm, by_class) = brute_lifts(&u, l as i64, true);
            let (one, two) = (by_class[l as usize], by_class[0]);
            let got = type_norms(&ZmVector::new(l, u.clone()).unwrap()).unwrap();
            ensure(got == (one, two), format!("ℓ = {l}, u = {u:?}: library {got:?}, lifts {:?}", (one, two)))?;
            let mut pair = [one, two];
            let mut expected = [norm, shifted(norm, l as u64, max_lee(&u, l))];
            pair.sort_unstable();
            expected.sort_unstable();
            ensure(pair == expected, format!("ℓ = {l}, u = {u:?}: type I/II set identity"))?;
            if u.iter().any(|&x| x != 0) {
                ensure(one.abs_diff(two) <= (l * l - 2 * l) as u64, format!("ℓ = {l}, u = {u:?}: difference bound"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} random vectors"))
}

fn criterion_9() -> Check {
    let r = check_dual_floor(&paley_one(23).unwrap(), &opts()).map_err(|e| e.to_string())?;
    pass_verdict(&r)?;
    ensure(r.certification == Certification::Exhaustive, "not exhaustive")?;
    let odd = value(&r, "mod-m-min-odd-norm")?.as_u64().ok_or("odd norm")?;
    let type_one = value(&r, "mod-l-min-type-i-norm")?.as_u64().ok_or("type I norm")?;
    ensure(odd >= 9 && type_one >= 4, format!("minimum odd norm {odd}, type I norm {type_one}"))?;
    for name in ["mod-m-equality-unit-entries", "mod-l-equality-unit-entries"] {
        ensure(passed(&r, name), format!("{name} failed"))?;
    }
    let (w6, w4) = (value(&r, "mod-m-norm-6-words")?, value(&r, "mod-l-norm-4-words")?);
    Ok(format!("odd norm ≥ {odd}, type I norm ≥ {type_one}, equality words {w6} and {w4}"))
}

fn criterion_10() -> Check {
    let pless = min_weight_bz(&pless_symmetry_code(23).unwrap(), 15, SEED).map_err(|e| e.to_string())?;
    ensure(pless.is_certified() && pless.minimum == Some(15), format!("Pless minimum {:?}", pless.minimum))?;
    let r = check_thm48(&paley_one(47).unwrap(), &opts()).map_err(|e| e.to_string())?;
    ensure(cert(&r, "ternary-minimum-weight") == Some(Certification::BzCertified), "ternary minimum not bz-certified")?;
    ensure(cert(&r, "z4-extremal") == Some(Certification::DerivedViaTheorem), "Z/4 verdict not derived")?;
    ensure(cert(&r, "lambda-extremal") == Some(Certification::DerivedViaTheorem), "lattice verdict not derived")?;
    ensure(passed(&r, "no-contradiction-z4"), "randomized Z/4 search contradicts")?;
    ensure(r.check("no-contradiction-lattice").is_none_or(|c| c.outcome == Verdict::Pass), "lattice search contradicts")?;
    pass_verdict(&r)?;
    let ternary = value(&r, "ternary-minimum-weight")?;
    Ok(format!("Pless 15; paley1-47 ternary minimum {ternary}, no contradiction"))
}

/// Every report above, serialized.
fn report_set() -> Vec<String> {
    let o = opts();
    let p23 = paley_one(23).unwrap();
    let params = TheoremParams::new(24, 2, 3).unwrap();
    let mut out: Vec<VerifyReport> = divisor_fixtures().iter().map(|(_, h)| check_divisors(h).unwrap()).collect();
    out.push(check_self_dual(&p23, &o).unwrap());
    out.push(check_cor1(&p23, &o).unwrap());
    out.push(check_cor1(&kron(), &o).unwrap());
    out.push(check_leech(&p23, &o).unwrap());
    out.push(check_thm14(&p23, &params, Some(4), &o).unwrap());
    out.push(check_mckay(&mckay_input(11).unwrap(), &o).unwrap());
    out.push(check_lemma_num(&p23, &params, &o).unwrap());
    out.push(check_dual_floor(&p23, &o).unwrap());
    out.push(check_thm48(&paley_one(47).unwrap(), &o).unwrap());
    let mut json: Vec<String> = out.iter().map(|r| r.to_json(false)).collect();
    let pless = min_weight_bz(&pless_symmetry_code(23).unwrap(), 15, SEED).unwrap();
    json.push(format!("{:?}", (pless.minimum, pless.witness, pless.enumerated)));
    json
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn criterion_11() -> Check {
    let one = in_pool(1, report_set);
    let four = in_pool(4, report_set);
    let again = in_pool(1, report_set);
    ensure(one.len() == four.len(), "different report counts")?;
    for (i, (a, b)) in one.iter().zip(&four).enumerate() {
        ensure(a == b, format!("report {i} differs between 1 and 4 threads"))?;
    }
    ensure(one == again, "reports differ between runs")?;
    Ok(format!("{} reports byte-identical across 1/4 threads and reruns", one.len()))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut r = Runner { failures: Vec::new() };
    println!();
    r.run(1, "elementary divisors", secs(1), criterion_1);
    r.run(2, "self-duality", secs(5), criterion_2);
    r.run(3, "order-24 extremality", secs(60), criterion_3);
    r.run(4, "D12+ identification", secs(1), criterion_4);
    r.run(5, "Leech construction", secs(600), criterion_5);
    r.run(6, "McKay chain", secs(300), criterion_6);
    r.run(7, "zero-one codeword counting", secs(600), criterion_7);
    r.run(8, "norm oracles", secs(30), criterion_8);
    r.run(9, "dual-floor lemmas", secs(60), criterion_9);
    r.run(10, "order-48 pipeline", secs(3600), criterion_10);
    r.run(11, "determinism", secs(3600), criterion_11);
    assert!(r.failures.is_empty(), "failed criteria: {:?}", r.failures);
}
