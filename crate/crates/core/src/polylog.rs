//! The linear map `Li⁻_•: ℚ⟨Y⟩ → ℚ[z, 1/(1−z)]` and the identities built on it.
//!
//! `Li⁻_s` is evaluated by the operator recursion
//! `Li⁻_s = θ0^{s1}(λ·θ0^{s2}(⋯λ·θ0^{sr}(λ)⋯))`. Everything else here
//! (product expansions, Magnus images, kernel elements) is checked against
//! that evaluation and against the defining power series.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{parse_err, Error, Result};
use crate::freealg::{pi_map, NcPoly};
use crate::magnus::{binomial, magnus_poly, word_to_magnus};
use crate::rational::format_terms;
use crate::ratpoly::RatFun;
use crate::words::{phi_y, psi_y, Alphabet, Index, MagnusIndex};

/// Number of Taylor coefficients (`z^0 … z^40`) compared by [`verify_relation`].
pub const RELATION_SERIES_ORDER: usize = 40;

/// A formal ℚ-linear combination of indices, i.e. an element of `ℚ⟨Y⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinComb {
    terms: BTreeMap<Index, BigRational>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn single(s: Index) -> Self {
        let mut c = LinComb::zero();
        c.add_term(s, BigRational::one());
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Index, BigRational)>>(terms: I) -> Self {
        let mut c = LinComb::zero();
        for (s, a) in terms {
            c.add_term(s, a);
        }
        c
    }

    /// Shorthand for integer coefficients.
    pub fn from_int_terms<I: IntoIterator<Item = (Vec<u32>, i64)>>(terms: I) -> Self {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(s, a)| (Index::new(s), BigRational::from_integer(a.into()))),
        )
    }

    pub fn add_term(&mut self, s: Index, a: BigRational) {
        if a.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(s.clone())
            .or_insert_with(BigRational::zero);
        *slot += a;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &Index) -> BigRational {
        self.terms.get(s).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (s, a) in &other.terms {
            out.add_term(s.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(s, a)| (s.clone(), a * c)).collect(),
        }
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_weight(&self) -> Option<u64> {
        uniform(self.terms.keys().map(Index::weight))
    }

    /// The common depth of all terms, if there is one.
    pub fn homogeneous_depth(&self) -> Option<usize> {
        uniform(self.terms.keys().map(Index::depth))
    }

    /// The same element viewed in `ℚ⟨Y⟩` through `φ_Y`.
    pub fn to_y_poly(&self) -> NcPoly {
        NcPoly::from_terms(
            Alphabet::Y,
            self.terms.iter().map(|(s, a)| (phi_y(s), a.clone())),
        )
        .expect("φ_Y produces Y words")
    }

    pub fn from_y_poly(p: &NcPoly) -> Result<LinComb> {
        let terms = p
            .terms()
            .map(|(w, a)| Ok((psi_y(w)?, a.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinComb::from_terms(terms))
    }
}

fn uniform<T: PartialEq>(mut it: impl Iterator<Item = T>) -> Option<T> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

impl fmt::Display for LinComb {
    /// `3 Li-(1,2) - 2 Li-(0,3) - Li-(2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(
            self.terms.iter().map(|(s, a)| (a, format!("Li-{s}"))),
            true,
            " ",
        );
        f.write_str(&s)
    }
}

/// `Li⁻_s` as an exact rational function; `Li⁻_∗ = 1`.
pub fn polylog_rational(s: &Index) -> RatFun {
    s.parts().iter().rev().fold(RatFun::one(), |acc, &si| {
        (0..si).fold(acc.lambda_mul(), |f, _| f.theta0())
    })
}

/// The linear extension of [`polylog_rational`].
pub fn polylog_map(c: &LinComb) -> RatFun {
    c.terms().fold(RatFun::zero(), |acc, (s, a)| {
        acc.add(&polylog_rational(s).scale(a))
    })
}

/// `Li⁻_{k1}⋯Li⁻_{kd}·Li⁻_{k∞}` as a rational function.
pub fn product_value(k: &MagnusIndex) -> RatFun {
    k.slots().iter().fold(RatFun::one(), |acc, &x| {
        acc.mul(&polylog_rational(&Index::new(vec![x])))
    })
}

/// Coefficients of `z^0 … z^n_max` in `Σ_{n1>⋯>nr>0} n1^{s1}⋯nr^{sr} z^{n1}`.
///
/// Uses the triangular recursion `a_r(n) = n^{sr}`,
/// `a_i(n) = n^{si}·Σ_{m<n} a_{i+1}(m)`.
pub fn series_oracle(s: &Index, n_max: usize) -> Vec<BigInt> {
    let Some((&innermost, outer)) = s.parts().split_last() else {
        let mut v = vec![BigInt::zero(); n_max + 1];
        v[0] = BigInt::one();
        return v;
    };
    let powers = |e: u32| -> Vec<BigInt> {
        (0..=n_max)
            .map(|n| {
                if n == 0 {
                    BigInt::zero()
                } else {
                    BigInt::from(n).pow(e)
                }
            })
            .collect()
    };
    let mut a = powers(innermost);
    for &e in outer.iter().rev() {
        let p = powers(e);
        let mut prefix = BigInt::zero();
        let mut next = vec![BigInt::zero(); n_max + 1];
        for n in 0..=n_max {
            next[n] = &p[n] * &prefix;
            prefix += &a[n];
        }
        a = next;
    }
    a
}

/// Same coefficients as [`series_oracle`], by enumerating every chain
/// `n = n1 > n2 > ⋯ > nr > 0`. Cost grows like `n_max^depth`.
pub fn series_by_chains(s: &Index, n_max: usize) -> Vec<BigInt> {
    fn chains(exps: &[u32], below: usize) -> BigInt {
        match exps.split_first() {
            None => BigInt::one(),
            Some((&e, rest)) => (1..below)
                .map(|m| BigInt::from(m).pow(e) * chains(rest, m))
                .sum(),
        }
    }
    (0..=n_max)
        .map(|n| match s.parts().split_first() {
            None => {
                if n == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Some((&e, rest)) => {
                if n == 0 {
                    BigInt::zero()
                } else {
                    BigInt::from(n).pow(e) * chains(rest, n)
                }
            }
        })
        .collect()
}

/// Series coefficients of `Li⁻` applied to a linear combination.
pub fn lincomb_series(c: &LinComb, n_max: usize) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); n_max + 1];
    for (s, a) in c.terms() {
        for (slot, v) in acc.iter_mut().zip(series_oracle(s, n_max)) {
            *slot += a * BigRational::from_integer(v);
        }
    }
    acc
}

/// Expands `Li⁻_s`, `s` non-empty, as `Σ_k ⟨s over k⟩ Li⁻_{k1}⋯Li⁻_{kd}·Li⁻_{k∞}`
/// where `s = (s1,…,sr)` is read as the Magnus index `(s1,…,s_{r−1};sr)`.
pub fn expand_to_products(s: &Index) -> Result<BTreeMap<MagnusIndex, BigInt>> {
    let s = s.to_magnus().ok_or(Error::EmptyIndex)?;
    Ok(word_to_magnus(&s))
}

/// `Li⁻_{y_m}·Li⁻_w = Σ_{k=0}^m (−1)^k C(m,k) Li⁻_{y_{m−k} y_{r+k} w′}` for
/// `w = y_r w′`.
pub fn product_letter_word(m: u32, w: &Index) -> Result<LinComb> {
    let (&r, rest) = w.parts().split_first().ok_or(Error::EmptyIndex)?;
    let mut out = LinComb::zero();
    for k in 0..=m {
        let mut parts = Vec::with_capacity(w.depth() + 1);
        parts.push(m - k);
        parts.push(r + k);
        parts.extend_from_slice(rest);
        let mut c = binomial(i64::from(m), i64::from(k));
        if k % 2 == 1 {
            c = -c;
        }
        out.add_term(Index::new(parts), BigRational::from_integer(c));
    }
    Ok(out)
}

/// `Π_i Li⁻_{s_i}` as the alternating sum
/// `Σ_k Π_{i<n} (−1)^{k_i} C(s_i,k_i) · Li⁻_{(s1−k1, s2−k2+k1, …, sn+k_{n−1})}`.
pub fn nfold_product(s: &[u32]) -> Result<LinComb> {
    let n = s.len();
    if n == 0 {
        return Err(Error::EmptyIndex);
    }
    let mut out = LinComb::zero();
    let mut ks = vec![0u32; n - 1];
    loop {
        let mut coef = BigInt::one();
        let mut parts = Vec::with_capacity(n);
        let mut carry = 0u32;
        for (&si, &ki) in s.iter().zip(&ks) {
            coef *= binomial(i64::from(si), i64::from(ki));
            if ki % 2 == 1 {
                coef = -coef;
            }
            parts.push(si - ki + carry);
            carry = ki;
        }
        parts.push(s[n - 1] + carry);
        out.add_term(Index::new(parts), BigRational::from_integer(coef));

        let mut j = 0;
        while j < n - 1 {
            if ks[j] < s[j] {
                ks[j] += 1;
                break;
            }
            ks[j] = 0;
            j += 1;
        }
        if j == n - 1 {
            return Ok(out);
        }
    }
}

/// [`nfold_product`] computed by folding [`product_letter_word`] from the right.
pub fn nfold_product_iterated(s: &[u32]) -> Result<LinComb> {
    let (&last, init) = s.split_last().ok_or(Error::EmptyIndex)?;
    init.iter()
        .rev()
        .try_fold(LinComb::single(Index::new(vec![last])), |acc, &m| {
            let mut next = LinComb::zero();
            for (w, a) in acc.terms() {
                next = next.add(&product_letter_word(m, w)?.scale(a));
            }
            Ok(next)
        })
}

/// `π(M^(k)·x1)` read as a combination of indices.
pub fn magnus_image(k: &MagnusIndex) -> LinComb {
    x1_image(&magnus_poly(k)).expect("M^(k)·x1 lies in ℚ⟨X⟩x1")
}

fn x1_image(p: &NcPoly) -> Result<LinComb> {
    let y = pi_map(&p.mul(&NcPoly::x1())?)?;
    LinComb::from_y_poly(&y)
}

/// Both sides of `Li⁻_{k1}⋯Li⁻_{kd}·Li⁻_{k∞} = Li⁻_{π(M^(k)x1)}` as linear
/// combinations: the n-fold product expansion, then the Magnus image.
pub fn magnus_product_identity(k: &MagnusIndex) -> (LinComb, LinComb) {
    let left = nfold_product(&k.slots()).expect("Magnus indices have at least one slot");
    (left, magnus_image(k))
}

/// A permutation of `1..=n`, acting on Magnus indices slot-wise:
/// `σ(k) = (k_{σ(1)},…,k_{σ(n−1)};k_{σ(n)})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Takes one-based images `σ(1),…,σ(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidPermutation {
                    perm: images,
                    size: n,
                });
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = (1..=n).collect::<Vec<_>>();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    pub fn apply(&self, k: &MagnusIndex) -> Result<MagnusIndex> {
        let slots = k.slots();
        if slots.len() != self.0.len() {
            return Err(Error::InvalidPermutation {
                perm: self.0.clone(),
                size: slots.len(),
            });
        }
        let permuted: Vec<u32> = self.0.iter().map(|&i| slots[i - 1]).collect();
        Ok(MagnusIndex::from_slots(&permuted).expect("non-empty"))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Images separated by spaces or commas: `"2 3 1"`, `"2,3,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err("permutation", s, format!("{t:?} is not a position")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            return Err(parse_err("permutation", s, "no entries"));
        }
        Permutation::new(images)
    }
}

/// `π((M^(k) − M^(σ(k)))·x1)`, an element of the kernel of `Li⁻_•`.
pub fn kernel_element(k: &MagnusIndex, sigma: &Permutation) -> Result<LinComb> {
    let permuted = sigma.apply(k)?;
    let diff = magnus_poly(k).sub(&magnus_poly(&permuted))?;
    x1_image(&diff)
}

/// Result of [`verify_relation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// `Li⁻_•` of the combination, exactly.
    pub value: RatFun,
    /// Series coefficients `z^0 … z^40` summed from the defining series.
    pub series: Vec<BigRational>,
}

impl Verdict {
    /// The combination vanishes both as a rational function and as a
    /// truncated power series.
    pub fn holds(&self) -> bool {
        self.value.is_zero() && self.series.iter().all(Zero::is_zero)
    }

    /// The rational value, when the relation fails.
    pub fn witness(&self) -> Option<&RatFun> {
        (!self.holds()).then_some(&self.value)
    }

    /// Whether the exact value and the direct series evaluation agree.
    pub fn pipelines_agree(&self) -> bool {
        self.value.taylor_coeffs(self.series.len() - 1) == self.series
    }
}

/// Decides `Li⁻_•(c) = 0` exactly, and evaluates the defining series of `c`
/// up to `z^40` as an independent check.
pub fn verify_relation(c: &LinComb) -> Verdict {
    Verdict {
        value: polylog_map(c),
        series: lincomb_series(c, RELATION_SERIES_ORDER),
    }
}
