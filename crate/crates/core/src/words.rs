//! Multi-indices, words, and the maps between them.
//!
//! A plain [`Index`] `(s1,…,sr)` labels `Li⁻_s`. A [`MagnusIndex`]
//! `(k1,…,kd;k∞)` labels the Magnus polynomial `M^(k)` and the product
//! `Li⁻_{k1}⋯Li⁻_{kd}·Li⁻_{k∞}`; its depth is `d`, the number of entries
//! before the semicolon.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

/// A plain multi-index `(s1,…,sr)`, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        Index(parts.into())
    }

    /// The empty index `∗`, with `Li⁻_∗ = 1`.
    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of entries.
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&s| u64::from(s)).sum()
    }

    /// Reads `(s1,…,sr)` as the Magnus index `(s1,…,s_{r−1};sr)`.
    pub fn to_magnus(&self) -> Option<MagnusIndex> {
        let (&tail, head) = self.0.split_last()?;
        Some(MagnusIndex::new(head.to_vec(), tail))
    }

    /// All indices with exactly `depth` entries summing to `weight`.
    pub fn all_with(depth: usize, weight: u32) -> Vec<Index> {
        weak_compositions(weight, depth)
            .into_iter()
            .map(Index)
            .collect()
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Index {
    fn from(v: Vec<u32>) -> Self {
        Index(v)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_list(f, &self.0)?;
        write!(f, ")")
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = strip_parens(s, "index")?;
        if body.contains(';') {
            return Err(parse_err(
                "index",
                s,
                "';' marks a Magnus index, expected a plain index",
            ));
        }
        Ok(Index(parse_list(body, s, "index")?))
    }
}

/// A Magnus index `(k1,…,kd;k∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MagnusIndex {
    brackets: Vec<u32>,
    tail: u32,
}

impl MagnusIndex {
    pub fn new(brackets: impl Into<Vec<u32>>, tail: u32) -> Self {
        MagnusIndex {
            brackets: brackets.into(),
            tail,
        }
    }

    /// Builds an index from all `depth + 1` slots; the last slot is `k∞`.
    pub fn from_slots(slots: &[u32]) -> Option<Self> {
        let (&tail, head) = slots.split_last()?;
        Some(MagnusIndex::new(head.to_vec(), tail))
    }

    /// The entries `k1,…,kd` that become Lie powers.
    pub fn brackets(&self) -> &[u32] {
        &self.brackets
    }

    /// The exponent `k∞` of the trailing `x0` power.
    pub fn tail(&self) -> u32 {
        self.tail
    }

    /// All `depth + 1` entries in order, `k∞` last.
    pub fn slots(&self) -> Vec<u32> {
        let mut v = self.brackets.clone();
        v.push(self.tail);
        v
    }

    pub fn depth(&self) -> usize {
        self.brackets.len()
    }

    pub fn weight(&self) -> u64 {
        self.brackets.iter().map(|&k| u64::from(k)).sum::<u64>() + u64::from(self.tail)
    }

    /// The plain index `(k1,…,kd,k∞)`.
    pub fn to_index(&self) -> Index {
        Index(self.slots())
    }

    /// All Magnus indices of the given depth and weight.
    pub fn all_with(depth: usize, weight: u32) -> Vec<MagnusIndex> {
        weak_compositions(weight, depth + 1)
            .iter()
            .filter_map(|slots| MagnusIndex::from_slots(slots))
            .collect()
    }
}

impl Ord for MagnusIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.brackets
            .len()
            .cmp(&other.brackets.len())
            .then_with(|| self.brackets.cmp(&other.brackets))
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for MagnusIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MagnusIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_list(f, &self.brackets)?;
        write!(f, ";{})", self.tail)
    }
}

impl FromStr for MagnusIndex {
    type Err = Error;

    /// Accepts `(k1,…,kd;k∞)`, `(;k∞)`, or a non-empty plain index whose
    /// last entry is taken as `k∞`.
    fn from_str(s: &str) -> Result<Self> {
        let body = strip_parens(s, "Magnus index")?;
        match body.split_once(';') {
            Some((head, tail)) => {
                let brackets = parse_list(head, s, "Magnus index")?;
                let tail = parse_u32(tail.trim(), s, "Magnus index")?;
                Ok(MagnusIndex::new(brackets, tail))
            }
            None => {
                let slots = parse_list(body, s, "Magnus index")?;
                MagnusIndex::from_slots(&slots)
                    .ok_or_else(|| parse_err("Magnus index", s, "needs at least the entry k∞"))
            }
        }
    }
}

/// The two alphabets: `X = {x0, x1}` and `Y = {y0, y1, …}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    X,
    Y,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::X => write!(f, "X"),
            Alphabet::Y => write!(f, "Y"),
        }
    }
}

impl Alphabet {
    fn prefix(self) -> char {
        match self {
            Alphabet::X => 'x',
            Alphabet::Y => 'y',
        }
    }
}

/// A word over [`Alphabet::X`] (letters 0, 1) or [`Alphabet::Y`] (any `u32`).
///
/// Words order by length first, then letter by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u32>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: impl Into<Vec<u32>>) -> Result<Self> {
        let letters = letters.into();
        if alphabet == Alphabet::X {
            if let Some(&bad) = letters.iter().find(|&&l| l > 1) {
                return Err(Error::InvalidLetter {
                    alphabet,
                    letter: bad,
                });
            }
        }
        Ok(Word { alphabet, letters })
    }

    pub(crate) fn new_unchecked(alphabet: Alphabet, letters: Vec<u32>) -> Self {
        debug_assert!(alphabet == Alphabet::Y || letters.iter().all(|&l| l <= 1));
        Word { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// `x0^n`.
    pub fn x0_pow(n: u32) -> Self {
        Word::new_unchecked(Alphabet::X, vec![0; n as usize])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet,
            letters,
        })
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: u32) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// Renders with runs of equal letters folded into powers: `x0x1x0^2`.
    pub fn to_compact_string(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&m| m == l).count();
            out.push(self.alphabet.prefix());
            out.push_str(&l.to_string());
            if run > 1 {
                out.push('^');
                out.push_str(&run.to_string());
            }
            i += run;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then_with(|| self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "eps");
        }
        for l in &self.letters {
            write!(f, "{}{}", self.alphabet.prefix(), l)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `eps_x`/`eps_y`, `eps` (taken as `ε_Y`), or a run of letters
    /// such as `y1y2`, `y1 y2` or `x0x1`. Power notation is not accepted.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "eps" | "eps_y" => return Ok(Word::empty(Alphabet::Y)),
            "eps_x" => return Ok(Word::empty(Alphabet::X)),
            "" => return Err(parse_err("word", s, "empty input")),
            _ => {}
        }
        let mut alphabet = None;
        let mut letters = Vec::new();
        let mut chars = t.char_indices().peekable();
        while let Some((pos, c)) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            let a = match c {
                'x' => Alphabet::X,
                'y' => Alphabet::Y,
                _ => {
                    return Err(parse_err(
                        "word",
                        s,
                        format!("unexpected character {c:?} at {pos}"),
                    ))
                }
            };
            if *alphabet.get_or_insert(a) != a {
                return Err(parse_err("word", s, "mixes x and y letters"));
            }
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            letters.push(parse_u32(&digits, s, "word")?);
        }
        match alphabet {
            Some(a) => Word::new(a, letters),
            None => Err(parse_err("word", s, "no letters")),
        }
    }
}

/// `φ_Y: (s1,…,sr) ↦ y_{s1}⋯y_{sr}`.
pub fn phi_y(s: &Index) -> Word {
    Word::new_unchecked(Alphabet::Y, s.0.clone())
}

/// `ψ_Y`, the inverse of [`phi_y`].
pub fn psi_y(w: &Word) -> Result<Index> {
    if w.alphabet != Alphabet::Y {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::Y,
            got: w.alphabet,
        });
    }
    Ok(Index(w.letters.clone()))
}

/// The monoid embedding `p: y_{s1}⋯y_{sr} ↦ x0^{s1}x1⋯x0^{sr}x1`.
pub fn p_embed(w: &Word) -> Result<Word> {
    if w.alphabet != Alphabet::Y {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::Y,
            got: w.alphabet,
        });
    }
    let mut letters = Vec::new();
    for &s in &w.letters {
        letters.extend(std::iter::repeat_n(0, s as usize));
        letters.push(1);
    }
    Ok(Word::new_unchecked(Alphabet::X, letters))
}

/// Inverse of [`p_embed`] on `X*x1 ∪ {ε_X}`.
pub fn p_inverse(w: &Word) -> Result<Word> {
    if w.alphabet != Alphabet::X {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::X,
            got: w.alphabet,
        });
    }
    if w.letters.last().is_some_and(|&l| l != 1) {
        return Err(Error::NotInX1Ideal(w.to_string()));
    }
    let mut out = Vec::new();
    let mut zeros = 0u32;
    for &l in &w.letters {
        if l == 0 {
            zeros += 1;
        } else {
            out.push(zeros);
            zeros = 0;
        }
    }
    Ok(Word::new_unchecked(Alphabet::Y, out))
}

/// The monomial `w_s = x0^{s1}x1⋯x0^{sd}x1x0^{s∞}` of a Magnus index.
pub fn magnus_monomial(s: &MagnusIndex) -> Word {
    let mut letters = Vec::with_capacity(s.weight() as usize + s.depth());
    for &b in &s.brackets {
        letters.extend(std::iter::repeat_n(0, b as usize));
        letters.push(1);
    }
    letters.extend(std::iter::repeat_n(0, s.tail as usize));
    Word::new_unchecked(Alphabet::X, letters)
}

/// Reads an `X` word as `w_s` for the unique Magnus index `s`.
pub fn monomial_index(w: &Word) -> Result<MagnusIndex> {
    if w.alphabet != Alphabet::X {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::X,
            got: w.alphabet,
        });
    }
    let mut brackets = Vec::new();
    let mut zeros = 0u32;
    for &l in &w.letters {
        if l == 0 {
            zeros += 1;
        } else {
            brackets.push(zeros);
            zeros = 0;
        }
    }
    Ok(MagnusIndex::new(brackets, zeros))
}

/// All ways to write `total` as an ordered sum of `parts` non-negative terms.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(remaining: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=remaining {
            cur.push(first);
            go(remaining - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[u32]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn strip_parens<'a>(s: &'a str, what: &'static str) -> Result<&'a str> {
    s.trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(what, s, "expected parentheses around the entries"))
}

fn parse_list(body: &str, whole: &str, what: &'static str) -> Result<Vec<u32>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| parse_u32(tok.trim(), whole, what))
        .collect()
}

fn parse_u32(tok: &str, whole: &str, what: &'static str) -> Result<u32> {
    tok.parse::<u32>().map_err(|_| {
        parse_err(
            what,
            whole,
            format!("{tok:?} is not a non-negative integer"),
        )
    })
}
