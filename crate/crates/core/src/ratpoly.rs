//! The ring `ℚ[z, 1/(1−z)]`, with elements stored as `P(z)/(1−z)^d`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::magnus::binomial;
use crate::rational::{format_terms, parse_rational, to_fraction_string};

/// `P(z)/(1−z)^d` in canonical form: no trailing zero coefficients in `P`,
/// and `P(1) ≠ 0` whenever `d > 0`. Zero is the empty numerator with `d = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Vec<BigRational>,
    dpow: u32,
}

/// JSON form `{"num": ["c0", "c1", ...], "dpow": d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunRecord {
    pub num: Vec<String>,
    pub dpow: u32,
}

impl RatFun {
    /// Builds and canonicalizes `P(z)/(1−z)^d` from ascending coefficients.
    pub fn new(num: Vec<BigRational>, dpow: u32) -> Self {
        let mut f = RatFun { num, dpow };
        f.canonicalize();
        f
    }

    pub fn from_ints(num: &[i64], dpow: u32) -> Self {
        Self::new(
            num.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            dpow,
        )
    }

    pub fn zero() -> Self {
        RatFun {
            num: Vec::new(),
            dpow: 0,
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c], 0)
    }

    /// `λ = z/(1−z)`.
    pub fn lambda() -> Self {
        Self::from_ints(&[0, 1], 1)
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.num
    }

    pub fn denom_pow(&self) -> u32 {
        self.dpow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Value at `z = 0`.
    pub fn at_zero(&self) -> BigRational {
        self.num.first().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Strips trailing zeros and cancels common factors of `(1−z)`.
    pub fn canonicalize(&mut self) {
        while self.num.last().is_some_and(Zero::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.dpow = 0;
            return;
        }
        while self.dpow > 0 {
            let at_one: BigRational = self.num.iter().sum();
            if !at_one.is_zero() {
                break;
            }
            self.num = divide_by_one_minus_z(&self.num);
            self.dpow -= 1;
        }
    }

    /// Numerator rewritten over `(1−z)^target`, `target ≥ dpow`.
    fn lifted(&self, target: u32) -> Vec<BigRational> {
        let mut p = self.num.clone();
        for _ in self.dpow..target {
            p = mul_one_minus_z(&p);
        }
        p
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        let d = self.dpow.max(other.dpow);
        let (a, b) = (self.lifted(d), other.lifted(d));
        let n = a.len().max(b.len());
        let sum = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                x + y
            })
            .collect();
        RatFun::new(sum, d)
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.iter().map(|c| -c).collect(),
            dpow: self.dpow,
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.iter().map(|a| a * c).collect(),
            dpow: self.dpow,
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        let mut prod = vec![BigRational::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in other.num.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        RatFun::new(prod, self.dpow + other.dpow)
    }

    pub fn pow(&self, n: u32) -> RatFun {
        (0..n).fold(RatFun::one(), |acc, _| acc.mul(self))
    }

    /// The Euler operator `θ0 = z·d/dz`:
    /// `θ0(P/(1−z)^d) = z(P′(1−z) + dP)/(1−z)^{d+1}`.
    pub fn theta0(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let d = BigRational::from_integer(BigInt::from(self.dpow));
        let deriv: Vec<BigRational> = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        let mut inner = mul_one_minus_z(&deriv);
        if inner.len() < self.num.len() {
            inner.resize(self.num.len(), BigRational::zero());
        }
        for (slot, c) in inner.iter_mut().zip(&self.num) {
            *slot += c * &d;
        }
        let mut shifted = Vec::with_capacity(inner.len() + 1);
        shifted.push(BigRational::zero());
        shifted.extend(inner);
        RatFun::new(shifted, self.dpow + 1)
    }

    /// Multiplication by `λ = z/(1−z)`, the composite `θ0∘ι1`.
    pub fn lambda_mul(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let mut shifted = Vec::with_capacity(self.num.len() + 1);
        shifted.push(BigRational::zero());
        shifted.extend(self.num.iter().cloned());
        RatFun::new(shifted, self.dpow + 1)
    }

    /// Taylor coefficients at `z = 0` for `z^0 … z^n_max`.
    ///
    /// The coefficient of `z^n` is `Σ_j P_j·C(n−j+d−1, d−1)`.
    pub fn taylor_coeffs(&self, n_max: usize) -> Vec<BigRational> {
        (0..=n_max)
            .map(|n| {
                if self.dpow == 0 {
                    return self.num.get(n).cloned().unwrap_or_else(BigRational::zero);
                }
                let d = i64::from(self.dpow);
                self.num
                    .iter()
                    .enumerate()
                    .take(n + 1)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| {
                        let b = binomial(n as i64 - j as i64 + d - 1, d - 1);
                        c * BigRational::from_integer(b)
                    })
                    .sum()
            })
            .collect()
    }

    /// Text form `((c0,c1,...,ck))/(1-z)^d`.
    pub fn to_coeff_text(&self) -> String {
        let cs: Vec<String> = self.num.iter().map(|c| c.to_string()).collect();
        format!("(({}))/(1-z)^{}", cs.join(","), self.dpow)
    }

    pub fn to_record(&self) -> RatFunRecord {
        RatFunRecord {
            num: self.num.iter().map(to_fraction_string).collect(),
            dpow: self.dpow,
        }
    }

    pub fn from_record(r: &RatFunRecord) -> Result<RatFun> {
        let num = r
            .num
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatFun::new(num, r.dpow))
    }
}

/// `P·(1−z)`.
fn mul_one_minus_z(p: &[BigRational]) -> Vec<BigRational> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(p[0].clone());
    for i in 1..p.len() {
        out.push(&p[i] - &p[i - 1]);
    }
    out.push(-p[p.len() - 1].clone());
    out
}

/// `P/(1−z)` for `P(1) = 0`, by synthetic division.
fn divide_by_one_minus_z(p: &[BigRational]) -> Vec<BigRational> {
    // (1−z)Q = P gives q_0 = p_0 and q_i = p_i + q_{i−1}
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = BigRational::zero();
    for c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc.clone());
    }
    q
}

impl fmt::Display for RatFun {
    /// `(2z^2+z^3)/(1-z)^4`, `z/(1-z)`, `1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<(&BigRational, String)> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "z".to_string(),
                    _ => format!("z^{i}"),
                };
                (c, mono)
            })
            .collect();
        let many = nonzero.len() > 1;
        let top = format_terms(nonzero, false, "");
        match self.dpow {
            0 => f.write_str(&top),
            d => {
                let top = if many { format!("({top})") } else { top };
                if d == 1 {
                    write!(f, "{top}/(1-z)")
                } else {
                    write!(f, "{top}/(1-z)^{d}")
                }
            }
        }
    }
}
