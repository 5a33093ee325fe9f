//! Reduced words in the free group F(x₁,…,xₙ) and its two expansions:
//! Magnus (`xᵢ ↦ 1 + Xᵢ`) and Campbell-Hausdorff (`xᵢ ↦ exp Xᵢ`, read back as a
//! Lie series).

use std::fmt;

use crate::error::{Error, Result};
use crate::freelie::{assoc_to_lie, LieSeries};
use crate::ncalg::NcSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// 1-based generator index.
    pub index: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: u8, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.index, if self.inverse { "'" } else { "" })
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    n: usize,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity(n: usize) -> Self {
        GroupWord {
            n,
            letters: Vec::new(),
        }
    }

    pub fn generator(n: usize, index: usize) -> Result<Self> {
        Self::reduce(n, [Letter::new(index as u8, false)])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(n: usize, raw: I) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::new();
        for letter in raw {
            if letter.index == 0 || letter.index as usize > n {
                return Err(Error::IndexOutOfRange {
                    index: letter.index as usize,
                    n,
                });
            }
            push_reduced(&mut letters, letter);
        }
        Ok(GroupWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    fn check_context(&self, other: &GroupWord) -> Result<()> {
        if self.n != other.n {
            return Err(Error::MismatchedContext(format!(
                "words on {} and {} generators",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord> {
        self.check_context(other)?;
        Ok(self.concat_unchecked(other))
    }

    pub(crate) fn concat_unchecked(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        GroupWord { n: self.n, letters }
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(&self, other: &GroupWord) -> Result<GroupWord> {
        self.check_context(other)?;
        Ok(self
            .concat_unchecked(other)
            .concat_unchecked(&self.inverse())
            .concat_unchecked(&other.inverse()))
    }

    /// The word read backwards, each letter keeping its own exponent.
    pub fn reversed(&self) -> GroupWord {
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in self.letters.iter().rev() {
            push_reduced(&mut letters, l);
        }
        GroupWord { n: self.n, letters }
    }

    pub fn exponent_sum(&self, index: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.index as usize == index)
            .map(|l| l.sign())
            .sum()
    }

    /// Parses whitespace-separated `xK` / `xK'` tokens; `1` or an empty string is the identity.
    pub fn parse(text: &str, n: usize) -> Result<GroupWord> {
        let letters = parse_letters(text, 1)?;
        Self::reduce(n, letters)
    }

    /// Magnus expansion with `xᵢ ↦ 1 + Xᵢ`.
    pub fn magnus_expand(&self, trunc: usize) -> NcSeries {
        let factors = Factors::new(self.n, trunc, |x| {
            let plus = NcSeries::one(self.n, trunc).add_unchecked(x);
            let minus = plus.inverse().expect("1 + X is invertible");
            (plus, minus)
        });
        factors.product(&self.letters)
    }

    /// `E_CH(w)`: the product of `exp(±Xᵢ)` over the letters.
    pub fn ch_group_like(&self, trunc: usize) -> NcSeries {
        let factors = Factors::new(self.n, trunc, |x| {
            (
                x.exp().expect("X has no constant term"),
                x.negated().exp().expect("X has no constant term"),
            )
        });
        factors.product(&self.letters)
    }

    /// The Campbell-Hausdorff image ρ(w) = log E_CH(w) in the Lyndon basis.
    pub fn ch_expand(&self, trunc: usize) -> LieSeries {
        let log = self
            .ch_group_like(trunc)
            .log()
            .expect("group-like series have constant term 1");
        assoc_to_lie(&log).expect("log of a group-like series is a Lie element")
    }
}

fn push_reduced(letters: &mut Vec<Letter>, letter: Letter) {
    if letters.last() == Some(&letter.inv()) {
        letters.pop();
    } else {
        letters.push(letter);
    }
}

pub(crate) fn parse_letters(text: &str, line: usize) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let syntax = |reason: &str| Error::Syntax {
            line,
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let body = token
            .strip_prefix('x')
            .ok_or_else(|| syntax("expected `xK` or `xK'`"))?;
        let (digits, inverse) = match body.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (body, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax("generator index must be a positive integer"));
        }
        let index: u8 = digits
            .parse()
            .map_err(|_| syntax("generator index too large"))?;
        if index == 0 {
            return Err(syntax("generator indices are 1-based"));
        }
        out.push(Letter::new(index, inverse));
    }
    Ok(out)
}

/// Parses one word per line, skipping blank lines and `#` comments.
///
/// All words share the generator count of the largest index mentioned (at least 1).
pub fn parse_file(text: &str) -> Result<Vec<GroupWord>> {
    let mut parsed = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            parsed.push(parse_letters(content, idx + 1)?);
        }
    }
    let n = parsed
        .iter()
        .flatten()
        .map(|l| l.index as usize)
        .max()
        .unwrap_or(1);
    Ok(parsed
        .into_iter()
        .map(|letters| GroupWord::reduce(n, letters).expect("n covers every index"))
        .collect())
}

/// Largest generator index mentioned in a word text, for inferring `n`.
pub fn max_index(text: &str) -> Result<usize> {
    Ok(parse_letters(text, 1)?
        .iter()
        .map(|l| l.index as usize)
        .max()
        .unwrap_or(0))
}

struct Factors {
    n: usize,
    trunc: usize,
    images: Vec<(NcSeries, NcSeries)>,
}

impl Factors {
    fn new<F>(n: usize, trunc: usize, image: F) -> Self
    where
        F: Fn(&NcSeries) -> (NcSeries, NcSeries),
    {
        let images = (1..=n)
            .map(|i| image(&NcSeries::generator(n, trunc, i).expect("index in range")))
            .collect();
        Factors { n, trunc, images }
    }

    fn product(&self, letters: &[Letter]) -> NcSeries {
        letters
            .iter()
            .fold(NcSeries::one(self.n, self.trunc), |acc, l| {
                let (plus, minus) = &self.images[l.index as usize - 1];
                acc.mul_unchecked(if l.inverse { minus } else { plus })
            })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (pos, l) in self.letters.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
