//! Braid-like words for (singular) string links.
//!
//! A word on `m` strands is a sequence of tokens at positions `1..m`:
//! `sj` is a positive crossing (the strand at position j passes over the one at
//! j+1), `sj'` the negative crossing, and `tj` a clasp double point between the
//! strands at positions j and j+1. A clasp leaves both strands where they were;
//! its two resolutions are the full twists `sj sj` and `sj' sj'`.
//!
//! Crossings act on F(x₁,…,x_m) through the Artin representation, tokens
//! applied left to right: the word `a b` induces `φ_b ∘ φ_a`.

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{GroupWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Positive,
    Negative,
    Double,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    /// 1-based; the token involves positions `position` and `position + 1`.
    pub position: usize,
    pub kind: Kind,
}

impl Token {
    pub fn positive(position: usize) -> Self {
        Token {
            position,
            kind: Kind::Positive,
        }
    }

    pub fn negative(position: usize) -> Self {
        Token {
            position,
            kind: Kind::Negative,
        }
    }

    pub fn double(position: usize) -> Self {
        Token {
            position,
            kind: Kind::Double,
        }
    }

    fn crossing_sign(self) -> Option<i64> {
        match self.kind {
            Kind::Positive => Some(1),
            Kind::Negative => Some(-1),
            Kind::Double => None,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Positive => write!(f, "s{}", self.position),
            Kind::Negative => write!(f, "s{}'", self.position),
            Kind::Double => write!(f, "t{}", self.position),
        }
    }
}

/// A pure (singular) string-link word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringLinkWord {
    strands: usize,
    tokens: Vec<Token>,
}

/// One resolution of every double point: `signs[t]` for the t-th double token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub signs: Vec<i8>,
    pub epsilon: i8,
}

impl StringLinkWord {
    /// Validates positions and purity.
    pub fn new(strands: usize, tokens: Vec<Token>) -> Result<Self> {
        Self::validated(strands, tokens, 1)
    }

    fn validated(strands: usize, tokens: Vec<Token>, line: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Syntax {
                line,
                token: "0".into(),
                reason: "a string link needs at least one strand".into(),
            });
        }
        for t in &tokens {
            if t.position == 0 || t.position >= strands {
                return Err(Error::PositionOutOfRange {
                    line,
                    position: t.position,
                    max: strands - 1,
                    strands,
                });
            }
        }
        let word = StringLinkWord { strands, tokens };
        let perm = word.permutation();
        if perm.iter().enumerate().any(|(p, &s)| p + 1 != s) {
            return Err(Error::NotPure {
                line,
                permutation: perm,
            });
        }
        Ok(word)
    }

    pub fn trivial(strands: usize) -> Self {
        StringLinkWord {
            strands,
            tokens: Vec::new(),
        }
    }

    /// Parses one token line for a word on `strands` strands.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        Self::parse_line(text, strands, 1)
    }

    fn parse_line(text: &str, strands: usize, line: usize) -> Result<Self> {
        let tokens = text
            .split_whitespace()
            .map(|tok| parse_token(tok, line))
            .collect::<Result<Vec<_>>>()?;
        Self::validated(strands, tokens, line)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn double_count(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| t.kind == Kind::Double)
            .count()
    }

    /// `perm[p]` is the strand found at position `p+1` after all tokens.
    fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (1..=self.strands).collect();
        for t in &self.tokens {
            if t.kind != Kind::Double {
                at.swap(t.position - 1, t.position);
            }
        }
        at
    }

    /// Word followed by `other`; both must have the same strand count.
    pub fn concat(&self, other: &StringLinkWord) -> Result<StringLinkWord> {
        if self.strands != other.strands {
            return Err(Error::MismatchedContext(format!(
                "{} vs {} strands",
                self.strands, other.strands
            )));
        }
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Ok(StringLinkWord {
            strands: self.strands,
            tokens,
        })
    }

    /// Inverse of a non-singular word: tokens reversed with crossings flipped.
    pub fn inverse(&self) -> Result<StringLinkWord> {
        self.require_nonsingular()?;
        let tokens = self
            .tokens
            .iter()
            .rev()
            .map(|t| Token {
                position: t.position,
                kind: match t.kind {
                    Kind::Positive => Kind::Negative,
                    _ => Kind::Positive,
                },
            })
            .collect();
        Ok(StringLinkWord {
            strands: self.strands,
            tokens,
        })
    }

    fn require_nonsingular(&self) -> Result<()> {
        match self.double_count() {
            0 => Ok(()),
            k => Err(Error::HasDoublePoints(k)),
        }
    }

    /// All 2ᵏ resolutions. Index bit t set means the t-th double point resolves negatively.
    pub fn resolutions(&self) -> Vec<(Resolution, StringLinkWord)> {
        let k = self.double_count();
        (0..1usize << k)
            .map(|mask| {
                let signs: Vec<i8> = (0..k)
                    .map(|t| if mask >> t & 1 == 1 { -1 } else { 1 })
                    .collect();
                let negatives = signs.iter().filter(|&&s| s < 0).count();
                let epsilon = if negatives % 2 == 0 { 1 } else { -1 };
                let mut tokens = Vec::with_capacity(self.tokens.len() + k);
                let mut next = 0;
                for t in &self.tokens {
                    if t.kind == Kind::Double {
                        let kind = if signs[next] > 0 {
                            Kind::Positive
                        } else {
                            Kind::Negative
                        };
                        next += 1;
                        let crossing = Token {
                            position: t.position,
                            kind,
                        };
                        tokens.push(crossing);
                        tokens.push(crossing);
                    } else {
                        tokens.push(*t);
                    }
                }
                (
                    Resolution { signs, epsilon },
                    StringLinkWord {
                        strands: self.strands,
                        tokens,
                    },
                )
            })
            .collect()
    }

    /// Images φ(x₁),…,φ(x_m) of the Artin action.
    pub fn artin_automorphism(&self) -> Result<Vec<GroupWord>> {
        self.require_nonsingular()?;
        let m = self.strands;
        let mut images: Vec<GroupWord> = (1..=m)
            .map(|i| GroupWord::generator(m, i).expect("index in range"))
            .collect();
        for t in &self.tokens {
            let action = generator_action(m, *t);
            images = images.iter().map(|img| substitute(img, &action)).collect();
        }
        Ok(images)
    }

    /// Conjugators uᵢ with φ(xᵢ) = uᵢ xᵢ uᵢ⁻¹, read off the reduced images.
    pub fn conjugators(&self) -> Result<Vec<GroupWord>> {
        let images = self.artin_automorphism()?;
        Ok(images
            .iter()
            .enumerate()
            .map(|(i, img)| split_conjugate(img, i + 1))
            .collect())
    }

    /// Zero-framed longitudes lᵢ = uᵢ·xᵢ^(−eᵢ) and the linking matrix.
    ///
    /// lᵢ is the only element with φ(xᵢ) = lᵢ xᵢ lᵢ⁻¹ and zero xᵢ-exponent, so it
    /// does not depend on how the conjugator was read off.
    pub fn longitudes(&self) -> Result<LongitudeSystem> {
        let m = self.strands;
        let conjugators = self.conjugators()?;
        let longs: Vec<GroupWord> = conjugators
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let e = u.exponent_sum(i + 1);
                let correction = GroupWord::reduce(
                    m,
                    std::iter::repeat_n(Letter::new(i as u8 + 1, e > 0), e.unsigned_abs() as usize),
                )
                .expect("index in range");
                u.concat_unchecked(&correction)
            })
            .collect();
        let linking = self.linking_matrix();
        for (i, l) in longs.iter().enumerate() {
            for (j, row) in linking[i].iter().enumerate() {
                assert_eq!(
                    l.exponent_sum(j + 1),
                    *row,
                    "longitude {} exponent of x{} disagrees with crossing count",
                    i + 1,
                    j + 1
                );
            }
        }
        Ok(LongitudeSystem {
            n: m,
            longs,
            linking,
        })
    }

    /// Half the signed count of crossings between each pair of distinct strands.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.strands;
        let mut twice = vec![vec![0i64; m]; m];
        let mut at: Vec<usize> = (0..m).collect();
        for t in &self.tokens {
            // clasps are skipped: only meaningful on non-singular words
            if let Some(sign) = t.crossing_sign() {
                let (a, b) = (at[t.position - 1], at[t.position]);
                twice[a][b] += sign;
                twice[b][a] += sign;
                at.swap(t.position - 1, t.position);
            }
        }
        twice
            .into_iter()
            .map(|row| row.into_iter().map(|c| c / 2).collect())
            .collect()
    }
}

impl fmt::Display for StringLinkWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, t) in self.tokens.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn parse_token(tok: &str, line: usize) -> Result<Token> {
    let syntax = |reason: &str| Error::Syntax {
        line,
        token: tok.to_string(),
        reason: reason.to_string(),
    };
    let mut chars = tok.chars();
    let head = chars.next().ok_or_else(|| syntax("empty token"))?;
    let rest = chars.as_str();
    let (digits, primed) = match rest.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax("expected `sK`, `sK'` or `tK`"));
    }
    let position: usize = digits.parse().map_err(|_| syntax("position too large"))?;
    match (head, primed) {
        ('s', false) => Ok(Token::positive(position)),
        ('s', true) => Ok(Token::negative(position)),
        ('t', false) => Ok(Token::double(position)),
        ('t', true) => Err(syntax("double points carry no sign")),
        _ => Err(syntax("expected `sK`, `sK'` or `tK`")),
    }
}

/// Parses a file of `strands <m>` headers, each followed by at most one token line.
///
/// Blank lines and `#` comments are ignored. A header with no token line is the
/// trivial word on that many strands.
pub fn parse_file(text: &str) -> Result<Vec<StringLinkWord>> {
    let mut words = Vec::new();
    let mut pending: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        if parts.next() == Some("strands") {
            if let Some((m, _)) = pending.take() {
                words.push(StringLinkWord::trivial(m));
            }
            let count = parts.next().ok_or_else(|| Error::Syntax {
                line,
                token: "strands".into(),
                reason: "missing strand count".into(),
            })?;
            let m: usize = count
                .parse()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::Syntax {
                    line,
                    token: count.into(),
                    reason: "strand count must be a positive integer".into(),
                })?;
            if let Some(extra) = parts.next() {
                return Err(Error::Syntax {
                    line,
                    token: extra.into(),
                    reason: "unexpected text after strand count".into(),
                });
            }
            pending = Some((m, line));
            continue;
        }
        let (m, _) = pending.take().ok_or_else(|| Error::Syntax {
            line,
            token: content.split_whitespace().next().unwrap_or("").into(),
            reason: "token line without a preceding `strands <m>` header".into(),
        })?;
        words.push(StringLinkWord::parse_line(content, m, line)?);
    }
    if let Some((m, _)) = pending {
        words.push(StringLinkWord::trivial(m));
    }
    Ok(words)
}

/// Canonical text form of a sequence of words; [`parse_file`] reads it back unchanged.
pub fn format_file(words: &[StringLinkWord]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&format!("strands {}\n{}\n", w.strands, w));
    }
    out
}

/// Images of every generator under one token, indexed by generator.
fn generator_action(m: usize, t: Token) -> Vec<GroupWord> {
    let j = t.position as u8;
    let x = |i: u8, inverse: bool| Letter::new(i, inverse);
    (1..=m as u8)
        .map(|i| {
            let letters: Vec<Letter> = match (t.kind, i) {
                (Kind::Positive, i) if i == j => vec![x(j, false), x(j + 1, false), x(j, true)],
                (Kind::Positive, i) if i == j + 1 => vec![x(j, false)],
                (Kind::Negative, i) if i == j => vec![x(j + 1, false)],
                (Kind::Negative, i) if i == j + 1 => {
                    vec![x(j + 1, true), x(j, false), x(j + 1, false)]
                }
                (Kind::Double, _) => unreachable!("double points have no Artin action"),
                _ => vec![x(i, false)],
            };
            GroupWord::reduce(m, letters).expect("index in range")
        })
        .collect()
}

fn substitute(word: &GroupWord, action: &[GroupWord]) -> GroupWord {
    word.letters()
        .iter()
        .fold(GroupWord::identity(word.n()), |acc, l| {
            let image = &action[l.index as usize - 1];
            if l.inverse {
                acc.concat_unchecked(&image.inverse())
            } else {
                acc.concat_unchecked(image)
            }
        })
}

/// Splits a reduced conjugate `u xᵢ u⁻¹` into `u`.
fn split_conjugate(image: &GroupWord, index: usize) -> GroupWord {
    let letters = image.letters();
    let half = letters.len() / 2;
    assert!(
        letters.len() % 2 == 1
            && letters[half] == Letter::new(index as u8, false)
            && letters[..half]
                .iter()
                .zip(letters[half + 1..].iter().rev())
                .all(|(a, b)| *a == b.inv()),
        "φ(x{index}) = {image} is not a reduced conjugate of x{index}"
    );
    GroupWord::reduce(image.n(), letters[..half].iter().copied()).expect("index in range")
}

/// Longitudes of the components of a string link, with its linking matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongitudeSystem {
    pub n: usize,
    pub longs: Vec<GroupWord>,
    pub linking: Vec<Vec<i64>>,
}

impl LongitudeSystem {
    /// Longitudes read backwards: the system for the orientation-reversed link.
    pub fn reversed(&self) -> LongitudeSystem {
        LongitudeSystem {
            n: self.n,
            longs: self.longs.iter().map(GroupWord::reversed).collect(),
            linking: self.linking.clone(),
        }
    }
}
