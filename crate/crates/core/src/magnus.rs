//! Lie powers, Magnus polynomials, and the array binomial coefficients that
//! change basis between monomials `w_s` and Magnus polynomials `M^(k)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::freealg::NcPoly;
use crate::words::{magnus_monomial, monomial_index, Alphabet, MagnusIndex, Word};

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn x_word(letters: Vec<u32>) -> Word {
    Word::new_unchecked(Alphabet::X, letters)
}

fn push_x0s(letters: &mut Vec<u32>, n: i64) {
    letters.extend(std::iter::repeat_n(0, n as usize));
}

/// `x1^(n) = Σ_k (−1)^k C(n,k) x0^{n−k} x1 x0^k`.
pub fn lie_power(n: u32) -> NcPoly {
    let n = i64::from(n);
    let mut p = NcPoly::zero(Alphabet::X);
    for k in 0..=n {
        let mut letters = Vec::with_capacity(n as usize + 1);
        push_x0s(&mut letters, n - k);
        letters.push(1);
        push_x0s(&mut letters, k);
        let mut c = binomial(n, k);
        if k % 2 == 1 {
            c = -c;
        }
        p.add_term(x_word(letters), BigRational::from_integer(c));
    }
    p
}

/// `x1^(n)` by the recursion `x1^(0) = x1`, `x1^(n+1) = [x0, x1^(n)]`.
pub fn lie_power_by_brackets(n: u32) -> NcPoly {
    let x0 = NcPoly::x0();
    (0..n).fold(NcPoly::x1(), |acc, _| {
        x0.lie_bracket(&acc).expect("both operands are over X")
    })
}

/// `M^(k) = x1^(k1)⋯x1^(kd) x0^k∞`, expanded by the closed multi-sum
/// `Σ_i Π_j (−1)^{i_j} C(k_j, i_j) · x0^{k1−i1} x1 x0^{k2−i2+i1} x1 ⋯ x0^{k∞+i_d}`.
pub fn magnus_poly(k: &MagnusIndex) -> NcPoly {
    let ks = k.brackets();
    let d = ks.len();
    let mut out = NcPoly::zero(Alphabet::X);
    let mut shifts = vec![0u32; d];
    loop {
        let mut coef = BigInt::one();
        let mut letters = Vec::with_capacity(k.weight() as usize + d);
        let mut carry = 0i64;
        for (&kj, &ij) in ks.iter().zip(&shifts) {
            coef *= binomial(i64::from(kj), i64::from(ij));
            if ij % 2 == 1 {
                coef = -coef;
            }
            push_x0s(&mut letters, i64::from(kj) - i64::from(ij) + carry);
            letters.push(1);
            carry = i64::from(ij);
        }
        push_x0s(&mut letters, i64::from(k.tail()) + carry);
        out.add_term(x_word(letters), BigRational::from_integer(coef));

        // odometer over 0 ≤ i_j ≤ k_j
        let mut j = 0;
        while j < d {
            if shifts[j] < ks[j] {
                shifts[j] += 1;
                break;
            }
            shifts[j] = 0;
            j += 1;
        }
        if j == d {
            return out;
        }
    }
}

/// `M^(k)` as the literal product of Lie powers and `x0^k∞`.
pub fn magnus_poly_by_product(k: &MagnusIndex) -> NcPoly {
    let head = k
        .brackets()
        .iter()
        .fold(NcPoly::one(Alphabet::X), |acc, &kj| {
            acc.mul(&lie_power(kj)).expect("both operands are over X")
        });
    head.mul(&NcPoly::monomial(Word::x0_pow(k.tail())))
        .expect("both operands are over X")
}

/// The array binomial coefficient `⟨s over k⟩`:
/// `C(s1,k1)·C(s1+s2−k1, k2)⋯C(s1+⋯+sd−k1−⋯−k_{d−1}, kd)`.
///
/// Zero unless `s` and `k` share depth and weight and every partial sum
/// `Σ_{i≤n}(s_i − k_i)` is non-negative.
pub fn array_binom(s: &MagnusIndex, k: &MagnusIndex) -> BigInt {
    if s.depth() != k.depth() || s.weight() != k.weight() {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let mut budget = 0i64;
    for (&si, &ki) in s.brackets().iter().zip(k.brackets()) {
        budget += i64::from(si);
        let ki = i64::from(ki);
        if ki > budget {
            return BigInt::zero();
        }
        acc *= binomial(budget, ki);
        budget -= ki;
    }
    acc
}

/// The dual array binomial coefficient `⟪k over s⟫`, the coefficient of the
/// monomial `w_s` in `M^(k)`.
///
/// With `i_j = Σ_{l≤j}(k_l − s_l)` it equals
/// `(−1)^{Σ_j (d−j+1)(k_j−s_j)} Π_j C(k_j, i_j)`, and zero unless depth and
/// weight agree.
pub fn dual_array_binom(k: &MagnusIndex, s: &MagnusIndex) -> BigInt {
    let d = k.depth();
    if d != s.depth() || k.weight() != s.weight() {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let mut partial = 0i64;
    let mut exponent = 0i64;
    for (j, (&kj, &sj)) in k.brackets().iter().zip(s.brackets()).enumerate() {
        let diff = i64::from(kj) - i64::from(sj);
        partial += diff;
        exponent += (d - j) as i64 * diff;
        acc *= binomial(i64::from(kj), partial);
        if acc.is_zero() {
            return acc;
        }
    }
    if exponent.rem_euclid(2) == 1 {
        acc = -acc;
    }
    acc
}

/// Coefficients `{k ↦ ⟨s over k⟩}` with `w_s = Σ_k ⟨s over k⟩ M^(k)`.
pub fn word_to_magnus(s: &MagnusIndex) -> BTreeMap<MagnusIndex, BigInt> {
    MagnusIndex::all_with(s.depth(), weight_u32(s))
        .into_iter()
        .filter_map(|k| {
            let c = array_binom(s, &k);
            (!c.is_zero()).then_some((k, c))
        })
        .collect()
}

/// Coefficients `{s ↦ ⟪k over s⟫}` with `M^(k) = Σ_s ⟪k over s⟫ w_s`.
pub fn magnus_to_word(k: &MagnusIndex) -> BTreeMap<MagnusIndex, BigInt> {
    MagnusIndex::all_with(k.depth(), weight_u32(k))
        .into_iter()
        .filter_map(|s| {
            let c = dual_array_binom(k, &s);
            (!c.is_zero()).then_some((s, c))
        })
        .collect()
}

fn weight_u32(k: &MagnusIndex) -> u32 {
    u32::try_from(k.weight()).expect("index weight fits in u32")
}

/// `Σ_k c_k M^(k)`.
pub fn combine_magnus(family: &BTreeMap<MagnusIndex, BigInt>) -> NcPoly {
    let mut out = NcPoly::zero(Alphabet::X);
    for (k, c) in family {
        let c = BigRational::from_integer(c.clone());
        for (w, a) in magnus_poly(k).terms() {
            out.add_term(w.clone(), a * &c);
        }
    }
    out
}

/// `Σ_s c_s w_s`.
pub fn combine_monomials(family: &BTreeMap<MagnusIndex, BigInt>) -> NcPoly {
    let mut out = NcPoly::zero(Alphabet::X);
    for (s, c) in family {
        out.add_term(magnus_monomial(s), BigRational::from_integer(c.clone()));
    }
    out
}

/// Outcome of a sweep over graded pieces `(depth, weight)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    /// Number of individual checks performed.
    pub checked: usize,
    /// Human-readable descriptions of every failed check.
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `Σ_u ⟨s over u⟩⟪u over k⟫ = δ_{s,k}` for every pair of Magnus
/// indices with equal depth `≤ max_depth` and equal weight `≤ max_weight`.
///
/// Pairs of different depth or weight are zero term by term and are not
/// enumerated.
pub fn duality_check(max_depth: usize, max_weight: u32) -> SweepReport {
    let mut report = SweepReport::default();
    for d in 0..=max_depth {
        for w in 0..=max_weight {
            let piece = MagnusIndex::all_with(d, w);
            let binoms: Vec<Vec<BigInt>> = piece
                .iter()
                .map(|s| piece.iter().map(|u| array_binom(s, u)).collect())
                .collect();
            let duals: Vec<Vec<BigInt>> = piece
                .iter()
                .map(|u| piece.iter().map(|k| dual_array_binom(u, k)).collect())
                .collect();
            for (si, s) in piece.iter().enumerate() {
                for (ki, k) in piece.iter().enumerate() {
                    let mut sum = BigInt::zero();
                    for (ui, b) in binoms[si].iter().enumerate() {
                        if !b.is_zero() {
                            sum += b * &duals[ui][ki];
                        }
                    }
                    let expected = if si == ki {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    report.checked += 1;
                    if sum != expected {
                        report
                            .failures
                            .push(format!("sum over u of <{s},u><<u,{k}>> = {sum}"));
                    }
                }
            }
        }
    }
    report
}

/// Verifies on every graded piece with depth `≤ max_depth`, weight
/// `≤ max_weight` that the Magnus polynomials are linearly independent, that
/// they are graded by depth and weight, and that [`word_to_magnus`] and
/// [`magnus_to_word`] reproduce `w_s` and `M^(k)` exactly.
pub fn magnus_basis_report(max_depth: usize, max_weight: u32) -> SweepReport {
    let mut report = SweepReport::default();
    for d in 0..=max_depth {
        for w in 0..=max_weight {
            let piece = MagnusIndex::all_with(d, w);
            let position: BTreeMap<&MagnusIndex, usize> =
                piece.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut matrix = vec![vec![BigRational::zero(); piece.len()]; piece.len()];
            for (row, k) in piece.iter().enumerate() {
                let m = magnus_poly(k);
                for (word, c) in m.terms() {
                    let s = monomial_index(word).expect("Magnus polynomials live over X");
                    match position.get(&s) {
                        Some(&col) => matrix[row][col] = c.clone(),
                        None => report
                            .failures
                            .push(format!("M^{k} has term {word} outside its graded piece")),
                    }
                }
                report.checked += 1;
                if combine_monomials(&magnus_to_word(k)) != m {
                    report
                        .failures
                        .push(format!("magnus_to_word{k} does not rebuild M^{k}"));
                }
            }
            for s in &piece {
                report.checked += 1;
                if combine_magnus(&word_to_magnus(s)) != NcPoly::monomial(magnus_monomial(s)) {
                    report
                        .failures
                        .push(format!("word_to_magnus{s} does not rebuild w_s"));
                }
            }
            report.checked += 1;
            let r = rank(matrix);
            if r != piece.len() {
                report.failures.push(format!(
                    "depth {d} weight {w}: rank {r} of {} Magnus polynomials",
                    piece.len()
                ));
            }
        }
    }
    report
}

/// `true` when [`magnus_basis_report`] finds no failures.
pub fn magnus_basis_check(max_depth: usize, max_weight: u32) -> bool {
    magnus_basis_report(max_depth, max_weight).passed()
}

/// Rank over ℚ by Gauss–Jordan elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].recip();
        for v in &mut rows[r][col..] {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= p * &f;
                }
            }
        }
        r += 1;
    }
    r
}

/// Number of `x1` letters in each word of `p`, if they all agree.
pub fn uniform_x1_count(p: &NcPoly) -> Option<usize> {
    let mut counts = p.terms().map(|(w, _)| w.count(1));
    let first = counts.next()?;
    counts.all(|c| c == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xpoly(terms: &[(i64, &[u32])]) -> NcPoly {
        NcPoly::from_terms(
            Alphabet::X,
            terms.iter().map(|&(c, w)| {
                (
                    Word::new(Alphabet::X, w.to_vec()).unwrap(),
                    BigRational::from_integer(c.into()),
                )
            }),
        )
        .unwrap()
    }

    fn mi(s: &str) -> MagnusIndex {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert!(binomial(3, 4).is_zero());
        assert!(binomial(3, -1).is_zero());
        assert!(binomial(-1, 0).is_zero());
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn lie_power_examples() {
        assert_eq!(lie_power(0), NcPoly::x1());
        assert_eq!(lie_power(1), xpoly(&[(1, &[0, 1]), (-1, &[1, 0])]));
        assert_eq!(
            lie_power(2),
            xpoly(&[(1, &[0, 0, 1]), (-2, &[0, 1, 0]), (1, &[1, 0, 0])])
        );
        assert_eq!(lie_power(7).len(), 8);
    }

    #[test]
    fn lie_power_matches_bracket_recursion() {
        for n in 0..=12 {
            assert_eq!(lie_power(n), lie_power_by_brackets(n), "n = {n}");
        }
    }

    #[test]
    fn magnus_poly_examples() {
        assert_eq!(magnus_poly(&mi("(;2)")), xpoly(&[(1, &[0, 0])]));
        assert_eq!(
            magnus_poly(&mi("(1;2)")),
            xpoly(&[(1, &[0, 1, 0, 0]), (-1, &[1, 0, 0, 0])])
        );
        assert_eq!(
            magnus_poly(&mi("(0,1;2)")),
            xpoly(&[(1, &[1, 0, 1, 0, 0]), (-1, &[1, 1, 0, 0, 0])])
        );
        assert_eq!(magnus_poly(&mi("(;0)")), NcPoly::one(Alphabet::X));
    }

    #[test]
    fn magnus_closed_form_matches_product() {
        for d in 0..=3 {
            for slots in grid(d + 1, 4) {
                let k = MagnusIndex::from_slots(&slots).unwrap();
                let m = magnus_poly(&k);
                assert_eq!(m, magnus_poly_by_product(&k), "k = {k}");
                let bound: usize = k.brackets().iter().map(|&x| x as usize + 1).product();
                assert!(m.len() <= bound);
                assert_eq!(uniform_x1_count(&m), Some(d), "k = {k}");
            }
        }
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

    #[test]
    fn array_binom_examples() {
        assert_eq!(array_binom(&mi("(2;1)"), &mi("(2;1)")), BigInt::one());
        assert_eq!(array_binom(&mi("(1;1)"), &mi("(0;2)")), BigInt::one());
        assert!(array_binom(&mi("(1;1)"), &mi("(0;1)")).is_zero());
        assert!(array_binom(&mi("(1;1)"), &mi("(2;0)")).is_zero());
        assert!(array_binom(&mi("(1;1)"), &mi("(1,0;1)")).is_zero());
        assert_eq!(array_binom(&mi("(;4)"), &mi("(;4)")), BigInt::one());
        // C(2,1)·C(2+1−1, 1) = 4
        assert_eq!(array_binom(&mi("(2,1;0)"), &mi("(1,1;1)")), BigInt::from(4));
    }

    #[test]
    fn dual_array_binom_examples() {
        assert_eq!(dual_array_binom(&mi("(3;1)"), &mi("(3;1)")), BigInt::one());
        let sum = |s: &str, k: &str| -> BigInt {
            let (s, k) = (mi(s), mi(k));
            MagnusIndex::all_with(s.depth(), s.weight() as u32)
                .iter()
                .map(|u| array_binom(&s, u) * dual_array_binom(u, &k))
                .sum()
        };
        assert!(sum("(1;2)", "(2;1)").is_zero());
        assert_eq!(sum("(1;2)", "(1;2)"), BigInt::one());
        // coefficient of x0^2 x1 x0 in M^(2;1) = x0^2x1x0 − 2x0x1x0^2 + x1x0^3
        assert_eq!(
            dual_array_binom(&mi("(2;1)"), &mi("(1;2)")),
            BigInt::from(-2)
        );
        assert!(dual_array_binom(&mi("(2;1)"), &mi("(3;0)")).is_zero());
    }

    #[test]
    fn dual_coefficients_are_magnus_expansion_coefficients() {
        for d in 0..=3 {
            for w in 0..=5 {
                for k in MagnusIndex::all_with(d, w) {
                    let m = magnus_poly(&k);
                    for s in MagnusIndex::all_with(d, w) {
                        let c = m.coeff(&magnus_monomial(&s));
                        assert_eq!(c, BigRational::from_integer(dual_array_binom(&k, &s)));
                    }
                }
            }
        }
    }

    #[test]
    fn word_to_magnus_examples() {
        let fam = word_to_magnus(&mi("(1;0)"));
        assert_eq!(
            fam,
            BTreeMap::from([(mi("(1;0)"), BigInt::one()), (mi("(0;1)"), BigInt::one())])
        );
        assert_eq!(combine_magnus(&fam), xpoly(&[(1, &[0, 1])]));
        assert_eq!(
            word_to_magnus(&mi("(0;0)")),
            BTreeMap::from([(mi("(0;0)"), BigInt::one())])
        );
        assert_eq!(
            word_to_magnus(&mi("(;6)")),
            BTreeMap::from([(mi("(;6)"), BigInt::one())])
        );
    }

    #[test]
    fn basis_check_examples() {
        assert!(magnus_basis_check(2, 4));
        assert!(magnus_basis_check(0, 3));
        assert!(magnus_basis_check(3, 6));
    }

    #[test]
    fn duality_small() {
        let r = duality_check(2, 5);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.checked > 0);
    }

    #[test]
    fn rank_detects_dependence() {
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(rank(Vec::new()), 0);
    }
}
