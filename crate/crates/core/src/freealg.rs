//! Noncommutative polynomials over ℚ in the letters of `X` or `Y`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_terms, parse_rational, to_fraction_string};
use crate::words::{p_embed, p_inverse, Alphabet, Word};

/// A finite ℚ-linear combination of words over one alphabet.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials. Terms iterate in word order (length, then letters).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, BigRational>,
}

/// One serialized term: `{"coef": "num/den", "word": "x0x1"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coef: String,
    pub word: String,
}

impl NcPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        NcPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    /// The unit, i.e. the empty word.
    pub fn one(alphabet: Alphabet) -> Self {
        Self::monomial(Word::empty(alphabet))
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(BigRational::one(), w)
    }

    pub fn term(c: BigRational, w: Word) -> Self {
        let mut p = NcPoly::zero(w.alphabet());
        p.add_term(w, c);
        p
    }

    pub fn x0() -> Self {
        Self::monomial(Word::new_unchecked(Alphabet::X, vec![0]))
    }

    pub fn x1() -> Self {
        Self::monomial(Word::new_unchecked(Alphabet::X, vec![1]))
    }

    /// Collects `(word, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(alphabet: Alphabet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, BigRational)>,
    {
        let mut p = NcPoly::zero(alphabet);
        for (w, c) in terms {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch {
                    left: alphabet,
                    right: w.alphabet(),
                });
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of words with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    /// Adds `c·w` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: BigRational) {
        debug_assert_eq!(w.alphabet(), self.alphabet);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &NcPoly) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            })
        }
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(self.alphabet);
        }
        NcPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check(other)?;
        let mut out = NcPoly::zero(self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v)?, a * b);
            }
        }
        Ok(out)
    }

    /// `[u, v] = uv − vu`.
    pub fn lie_bracket(&self, other: &NcPoly) -> Result<NcPoly> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Serialized terms in canonical order.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(w, c)| TermRecord {
                coef: to_fraction_string(c),
                word: w.to_string(),
            })
            .collect()
    }

    pub fn from_records(alphabet: Alphabet, records: &[TermRecord]) -> Result<NcPoly> {
        let terms = records
            .iter()
            .map(|r| {
                let w: Word = match r.word.trim() {
                    "eps" => Word::empty(alphabet),
                    other => other.parse()?,
                };
                Ok((w, parse_rational(&r.coef)?))
            })
            .collect::<Result<Vec<_>>>()?;
        NcPoly::from_terms(alphabet, terms)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(
            self.terms.iter().map(|(w, c)| {
                let mono = if w.is_empty() {
                    String::new()
                } else {
                    w.to_compact_string()
                };
                (c, mono)
            }),
            true,
            "",
        );
        f.write_str(&s)
    }
}

/// `π: ℚ⟨X⟩x1 → ℚ⟨Y⟩`, the linear extension of `x0^k x1 ↦ y_k`.
///
/// The empty word is outside `ℚ⟨X⟩x1` and is rejected like any other word
/// that does not end in `x1`.
pub fn pi_map(a: &NcPoly) -> Result<NcPoly> {
    if a.alphabet != Alphabet::X {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::X,
            got: a.alphabet,
        });
    }
    let mut out = NcPoly::zero(Alphabet::Y);
    for (w, c) in &a.terms {
        if w.is_empty() {
            return Err(Error::NotInX1Ideal(w.to_string()));
        }
        out.add_term(p_inverse(w)?, c.clone());
    }
    Ok(out)
}

/// Inverse of [`pi_map`]. The empty `Y` word has no preimage in `ℚ⟨X⟩x1`.
pub fn pi_inv(b: &NcPoly) -> Result<NcPoly> {
    if b.alphabet != Alphabet::Y {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::Y,
            got: b.alphabet,
        });
    }
    let mut out = NcPoly::zero(Alphabet::X);
    for (w, c) in &b.terms {
        if w.is_empty() {
            return Err(Error::NotInX1Ideal("image of eps".to_string()));
        }
        out.add_term(p_embed(w)?, c.clone());
    }
    Ok(out)
}
