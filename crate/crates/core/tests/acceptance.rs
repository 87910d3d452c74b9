//! Acceptance criteria. Every check is exact; each prints one PASS/FAIL line.
//!
//! Runs without the libtest harness so the report always prints in order;
//! the process exits non-zero if any criterion fails.

use std::process::Command;

use magnus_polylog::freealg::{pi_inv, pi_map, NcPoly};
use magnus_polylog::magnus::{
    combine_magnus, combine_monomials, duality_check, magnus_basis_report, magnus_to_word,
    word_to_magnus,
};
use magnus_polylog::polylog::{
    kernel_element, magnus_product_identity, nfold_product, polylog_map, polylog_rational,
    product_value, series_oracle, verify_relation, LinComb, Permutation,
};
use magnus_polylog::relation::parse_jsonl;
use magnus_polylog::words::{magnus_monomial, Alphabet, Index, MagnusIndex, Word};
use magnus_polylog::RatFun;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x4d61_676e_7573;

fn report(id: &str, what: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {what} ({detail})");
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ix(v: &[u32]) -> Index {
    Index::new(v.to_vec())
}

/// All vectors of length `len` with entries in `0..=max`.
fn grid(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn criterion_1_closed_forms() -> bool {
    let mut ok = polylog_rational(&ix(&[0])) == RatFun::from_ints(&[0, 1], 1);
    for r in 0..=8u32 {
        let zeros = Index::new(vec![0; r as usize]);
        ok &= polylog_rational(&zeros) == RatFun::lambda().pow(r);
    }
    ok &= polylog_rational(&ix(&[1, 1])) == RatFun::from_ints(&[0, 0, 2, 1], 4);
    ok &= polylog_rational(&ix(&[1, 1])).to_string() == "(2z^2+z^3)/(1-z)^4";
    report("1", "closed forms Li(0), Li(0^r), Li(1,1)", ok, "exact");
    ok
}

fn criterion_2_oracle_equivalence() -> bool {
    let mut count = 0;
    let mut bad = Vec::new();
    for depth in 0..=3 {
        for weight in 0..=8 {
            for s in Index::all_with(depth, weight) {
                count += 1;
                let exact = polylog_rational(&s).taylor_coeffs(30);
                let series: Vec<BigRational> = series_oracle(&s, 30)
                    .into_iter()
                    .map(BigRational::from_integer)
                    .collect();
                if exact != series {
                    bad.push(s.to_string());
                }
            }
        }
    }
    let ok = bad.is_empty() && count >= 200;
    report(
        "2",
        "Taylor coefficients vs series oracle, depth<=3 weight<=8, n<=30",
        ok,
        &format!("{count} indices, {} mismatches", bad.len()),
    );
    ok
}

fn criterion_3_duality() -> bool {
    let r = duality_check(3, 6);
    report(
        "3",
        "sum_u <s,u><<u,k>> = delta, depth<=3 weight<=6",
        r.passed(),
        &format!("{} pairs, {} failures", r.checked, r.failures.len()),
    );
    r.passed()
}

fn criterion_4_basis_inversion() -> bool {
    let mut ok = true;
    let mut n = 0;
    for d in 0..=3 {
        for w in 0..=6 {
            for s in MagnusIndex::all_with(d, w) {
                n += 1;
                ok &= combine_magnus(&word_to_magnus(&s)) == NcPoly::monomial(magnus_monomial(&s));
                ok &= combine_monomials(&magnus_to_word(&s)) == magnus_polylog::magnus_poly(&s);
            }
        }
    }
    let basis = magnus_basis_report(3, 6);
    ok &= basis.passed();
    report(
        "4",
        "w_s = sum <s,k> M^(k), M^(k) = sum <<k,s>> w_s, full rank per graded piece",
        ok,
        &format!("{n} indices each way, {} basis checks", basis.checked),
    );
    ok
}

fn criterion_5_magnus_product_theorem() -> bool {
    let mut n = 0;
    let mut bad = Vec::new();
    for d in 0..=3 {
        for slots in grid(d + 1, 4) {
            let k = MagnusIndex::from_slots(&slots).unwrap();
            n += 1;
            let (expansion, image) = magnus_product_identity(&k);
            if expansion != image || polylog_map(&image) != product_value(&k) {
                bad.push(k.to_string());
            }
        }
    }
    let ok = bad.is_empty();
    report(
        "5",
        "pi(M^(k) x1) equals n-fold product expansion and the product of values, depth<=3 entries<=4",
        ok,
        &format!("{n} indices, {} failures", bad.len()),
    );
    ok
}

fn criterion_6_paper_relations_from_cli() -> bool {
    let bin = env!("CARGO_BIN_EXE_magnus-polylog");
    let cases = [
        (
            "(1;2)",
            "2 1",
            LinComb::from_int_terms([(vec![1, 2], 3), (vec![0, 3], -2), (vec![2, 1], -1)]),
        ),
        (
            "(0,1;2)",
            "2 3 1",
            LinComb::from_int_terms([
                (vec![0, 1, 2], 2),
                (vec![1, 1, 1], 2),
                (vec![0, 3, 0], 1),
                (vec![0, 0, 3], -1),
                (vec![1, 2, 0], -1),
                (vec![1, 0, 2], -1),
                (vec![0, 2, 1], -2),
            ]),
        ),
    ];
    let mut ok = true;
    for (k, sigma, expected) in &cases {
        let out = Command::new(bin)
            .args(["kernel", k, "--sigma", sigma])
            .output()
            .unwrap();
        ok &= out.status.success();
        let records = parse_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
        ok &= records.len() == 1;
        let rec = &records[0].1;
        let rel = rec.to_lincomb().unwrap();
        // the sign of a kernel element is a convention; compare up to ±1
        ok &= rel == *expected || rel == expected.scale(&q(-1, 1));
        ok &= rec.verified && verify_relation(&rel).holds();
    }
    report(
        "6",
        "Example relations generated by `kernel` and verified",
        ok,
        "exact",
    );
    ok
}

/// `Li⁻_m·Li⁻_n − Σ c_j Li⁻_j` with the product expanded as a combination.
fn product_relation(m: u32, n: u32, rhs: &[(i64, i64, u32)]) -> LinComb {
    let rhs = LinComb::from_terms(rhs.iter().map(|&(a, b, j)| (ix(&[j]), q(a, b))));
    nfold_product(&[m, n]).unwrap().sub(&rhs)
}

/// Checks a product identity both ways: as rational functions, and as
/// series identities up to z^40 using the direct series of each side.
fn check_product_identity(m: u32, n: u32, rhs: &[(i64, i64, u32)]) -> (bool, String) {
    let lhs_value = polylog_rational(&ix(&[m])).mul(&polylog_rational(&ix(&[n])));
    let rhs_value = rhs.iter().fold(RatFun::zero(), |acc, &(a, b, j)| {
        acc.add(&polylog_rational(&ix(&[j])).scale(&q(a, b)))
    });
    let rational_ok = lhs_value == rhs_value;

    let sm = series_oracle(&ix(&[m]), 40);
    let sn = series_oracle(&ix(&[n]), 40);
    let lhs_series: Vec<BigRational> = (0..=40)
        .map(|t| BigRational::from_integer((0..=t).map(|i| &sm[i] * &sn[t - i]).sum()))
        .collect();
    let mut rhs_series = vec![q(0, 1); 41];
    for &(a, b, j) in rhs {
        for (slot, v) in rhs_series.iter_mut().zip(series_oracle(&ix(&[j]), 40)) {
            *slot += q(a, b) * BigRational::from_integer(v);
        }
    }
    let series_ok = lhs_series == rhs_series;

    let verdict = verify_relation(&product_relation(m, n, rhs));
    let relation_ok = verdict.holds() && verdict.pipelines_agree();
    let detail = if rational_ok && series_ok && relation_ok {
        "rational + series to n=40".to_string()
    } else {
        format!("residual Li(m)Li(n) - rhs = {}", lhs_value.sub(&rhs_value))
    };
    (rational_ok && series_ok && relation_ok, detail)
}

fn criterion_7_product_identities() -> bool {
    type Identity = (u32, u32, &'static [(i64, i64, u32)]);
    let identities: [Identity; 3] = [
        (5, 4, &[(-1, 60, 2), (1, 63, 4), (1, 1260, 10)]),
        (
            6,
            7,
            &[(-691, 5460, 2), (5, 44, 4), (-1, 40, 6), (1, 24024, 14)],
        ),
        (
            8,
            10,
            &[
                (43867, 798, 1),
                (-39787, 510, 3),
                (77, 3, 5),
                (-11056, 4095, 7),
                (5, 66, 9),
                (1, 831402, 19),
            ],
        ),
    ];
    let mut all = true;
    let mut lines = Vec::new();
    for (m, n, rhs) in identities {
        let (ok, detail) = check_product_identity(m, n, rhs);
        lines.push(format!(
            "Li({m})Li({n}) {}: {detail}",
            if ok { "ok" } else { "fails" }
        ));
        all &= ok;
    }
    report(
        "7",
        "product identities with coefficients as stated",
        all,
        &lines.join("; "),
    );
    all
}

/// Not an acceptance criterion: the Li(6)Li(7) identity with the Li(4)
/// coefficient 5/33, which is what the exact computation gives.
fn supplementary_corrected_six_seven() -> bool {
    let (ok, detail) = check_product_identity(
        6,
        7,
        &[(-691, 5460, 2), (5, 33, 4), (-1, 40, 6), (1, 24024, 14)],
    );
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] supplementary: Li(6)Li(7) with 5/33 in place of 5/44 ({detail})");
    ok
}

fn random_x_poly(rng: &mut ChaCha8Rng, max_len: usize) -> NcPoly {
    let terms = (0..rng.gen_range(0..=5)).map(|_| {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=1)).collect();
        (
            Word::new(Alphabet::X, letters).unwrap(),
            q(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
        )
    });
    NcPoly::from_terms(Alphabet::X, terms).unwrap()
}

fn random_ratfun(rng: &mut ChaCha8Rng) -> RatFun {
    let len = rng.gen_range(0..=5);
    let den = rng.gen_range(1..=3);
    let num = (0..len).map(|_| q(rng.gen_range(-6..=6), den)).collect();
    RatFun::new(num, rng.gen_range(0..=4))
}

fn criterion_8_property_suites() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let trials = 200;
    let (mut ring, mut jacobi, mut leibniz, mut pi) = (true, true, true, true);
    for _ in 0..trials {
        let (a, b, c) = (
            random_x_poly(&mut rng, 5),
            random_x_poly(&mut rng, 5),
            random_x_poly(&mut rng, 5),
        );
        ring &= a.mul(&b).unwrap().mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap();
        ring &= a.mul(&b.add(&c).unwrap()).unwrap()
            == a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        ring &= b.add(&c).unwrap().mul(&a).unwrap()
            == b.mul(&a).unwrap().add(&c.mul(&a).unwrap()).unwrap();
        ring &= NcPoly::one(Alphabet::X).mul(&a).unwrap() == a;
        ring &= a.add(&b).unwrap() == b.add(&a).unwrap();

        let j = a
            .lie_bracket(&b.lie_bracket(&c).unwrap())
            .unwrap()
            .add(&b.lie_bracket(&c.lie_bracket(&a).unwrap()).unwrap())
            .unwrap()
            .add(&c.lie_bracket(&a.lie_bracket(&b).unwrap()).unwrap())
            .unwrap();
        jacobi &= j.is_zero();

        let f = random_ratfun(&mut rng);
        let g = random_ratfun(&mut rng);
        leibniz &= f.mul(&g).theta0() == f.theta0().mul(&g).add(&f.mul(&g.theta0()));

        let x1_elem = random_x_poly(&mut rng, 7).mul(&NcPoly::x1()).unwrap();
        pi &= pi_inv(&pi_map(&x1_elem).unwrap()).unwrap() == x1_elem;
        let y = pi_map(&x1_elem).unwrap();
        pi &= pi_map(&pi_inv(&y).unwrap()).unwrap() == y;
    }

    let mut shuffle = true;
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let via_m = polylog_map(&nfold_product(&[m, n]).unwrap());
            let via_n = polylog_map(&nfold_product(&[n, m]).unwrap());
            let direct = polylog_rational(&ix(&[m])).mul(&polylog_rational(&ix(&[n])));
            shuffle &= via_m == via_n && via_m == direct;
        }
    }

    let detail = format!(
        "seed {SEED:#x}, {trials} trials; ring {ring}, jacobi {jacobi}, leibniz {leibniz}, pi {pi}, shuffle {shuffle}"
    );
    let ok = ring && jacobi && leibniz && pi && shuffle;
    report("8", "property suites", ok, &detail);
    ok
}

fn criterion_9_kernel_sweep() -> bool {
    let mut n = 0;
    let mut bad = Vec::new();
    for d in 0..=2 {
        for slots in grid(d + 1, 3) {
            let k = MagnusIndex::from_slots(&slots).unwrap();
            for sigma in Permutation::all(d + 1) {
                n += 1;
                let rel = kernel_element(&k, &sigma).unwrap();
                let v = verify_relation(&rel);
                let graded = rel.is_empty()
                    || (rel.homogeneous_weight() == Some(k.weight())
                        && rel.homogeneous_depth() == Some(d + 1));
                if !(v.holds() && v.pipelines_agree() && graded) {
                    bad.push(format!("{k} {sigma}"));
                }
            }
        }
    }
    let ok = bad.is_empty();
    report(
        "9",
        "kernel elements vanish, depth<=2 entries<=3, all sigma",
        ok,
        &format!("{n} cases, {} failures", bad.len()),
    );
    ok
}

fn main() {
    let criteria = [
        criterion_1_closed_forms(),
        criterion_2_oracle_equivalence(),
        criterion_3_duality(),
        criterion_4_basis_inversion(),
        criterion_5_magnus_product_theorem(),
        criterion_6_paper_relations_from_cli(),
        criterion_7_product_identities(),
        criterion_8_property_suites(),
        criterion_9_kernel_sweep(),
    ];
    supplementary_corrected_six_seven();
    let passed = criteria.iter().filter(|&&ok| ok).count();
    println!("{passed} of {} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
