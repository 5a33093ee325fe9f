//! The truncated free Lie algebra on x₁,…,xₙ in the Lyndon basis.
//!
//! A basis element is a Lyndon word, bracketed recursively along its standard
//! factorization. Its associative expansion has the word itself as the
//! lexicographically smallest monomial, with coefficient 1. That triangularity
//! is what [`assoc_to_lie`] inverts, degree by degree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{rat, write_terms, Monomial, NcSeries, Rational};

/// A Lyndon word: strictly smaller than each of its proper rotations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Monomial);

pub fn is_lyndon(letters: &[u8]) -> bool {
    let len = letters.len();
    if len == 0 {
        return false;
    }
    (1..len).all(|r| {
        let rotated = letters[r..].iter().chain(&letters[..r]);
        letters.iter().lt(rotated)
    })
}

impl LyndonWord {
    /// Returns `None` unless `letters` is a Lyndon word.
    pub fn new(letters: Vec<u8>) -> Option<Self> {
        is_lyndon(&letters).then(|| LyndonWord(Monomial::new(letters)))
    }

    pub fn letter(index: u8) -> Self {
        LyndonWord(Monomial::letter(index))
    }

    pub fn letters(&self) -> &[u8] {
        self.0.letters()
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn as_monomial(&self) -> &Monomial {
        &self.0
    }

    /// `w = u·v` with `v` the longest proper Lyndon suffix; `None` for single letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let letters = self.letters();
        (1..letters.len())
            .find(|&split| is_lyndon(&letters[split..]))
            .map(|split| {
                (
                    LyndonWord(Monomial::new(letters[..split].to_vec())),
                    LyndonWord(Monomial::new(letters[split..].to_vec())),
                )
            })
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.standard_factorization() {
            None => write!(f, "x{}", self.letters()[0]),
            Some((u, v)) => write!(f, "[{u},{v}]"),
        }
    }
}

/// All Lyndon words on `n` letters of degree `1..=max_degree`, sorted degree-then-lex.
pub fn lyndon_basis(n: usize, max_degree: usize) -> Vec<LyndonWord> {
    let mut words = Vec::new();
    if n == 0 || max_degree == 0 {
        return words;
    }
    // Duval's successor iteration over 0-based letters
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        words.push(LyndonWord(Monomial::new(w.iter().map(|c| c + 1).collect())));
        let m = w.len();
        while w.len() < max_degree {
            let c = w[w.len() % m];
            w.push(c);
        }
        while w.last().is_some_and(|&c| c as usize == n - 1) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    words.sort();
    words
}

type Expansion = Arc<Vec<(Monomial, i64)>>;

fn expansion_cache() -> &'static RwLock<HashMap<LyndonWord, Expansion>> {
    static CACHE: OnceLock<RwLock<HashMap<LyndonWord, Expansion>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Associative expansion of the bracketed Lyndon word, memoized.
pub fn lyndon_expansion(word: &LyndonWord) -> Expansion {
    if let Some(hit) = expansion_cache().read().unwrap().get(word) {
        return hit.clone();
    }
    let computed = Arc::new(match word.standard_factorization() {
        None => vec![(word.0.clone(), 1)],
        Some((u, v)) => {
            let pu = lyndon_expansion(&u);
            let pv = lyndon_expansion(&v);
            let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
            for (mu, cu) in pu.iter() {
                for (mv, cv) in pv.iter() {
                    *acc.entry(mu.concat(mv)).or_default() += cu * cv;
                    *acc.entry(mv.concat(mu)).or_default() -= cu * cv;
                }
            }
            acc.into_iter().filter(|(_, c)| *c != 0).collect()
        }
    });
    expansion_cache()
        .write()
        .unwrap()
        .entry(word.clone())
        .or_insert(computed)
        .clone()
}

/// Element of the free Lie algebra modulo brackets of length > trunc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSeries {
    n: usize,
    trunc: usize,
    terms: BTreeMap<LyndonWord, Rational>,
}

impl LieSeries {
    pub fn zero(n: usize, trunc: usize) -> Self {
        LieSeries {
            n,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(n: usize, trunc: usize, index: usize) -> Result<Self> {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mut s = Self::zero(n, trunc);
        s.add_term(LyndonWord::letter(index as u8), Rational::one());
        Ok(s)
    }

    pub fn from_terms<I>(n: usize, trunc: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LyndonWord, Rational)>,
    {
        let mut s = Self::zero(n, trunc);
        for (w, c) in terms {
            if let Some(&bad) = w.letters().iter().find(|&&l| l == 0 || l as usize > n) {
                return Err(Error::IndexOutOfRange {
                    index: bad as usize,
                    n,
                });
            }
            s.add_term(w, c);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonWord, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &LyndonWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(LyndonWord::degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(LyndonWord::degree)
    }

    pub fn homogeneous_part(&self, d: usize) -> LieSeries {
        LieSeries {
            n: self.n,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncated(&self, trunc: usize) -> Result<LieSeries> {
        if trunc > self.trunc {
            return Err(Error::InvalidDegree {
                degree: trunc,
                reason: format!("cannot raise truncation above {}", self.trunc),
            });
        }
        Ok(LieSeries {
            n: self.n,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= trunc)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        })
    }

    fn add_term(&mut self, w: LyndonWord, c: Rational) {
        if w.degree() > self.trunc || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn check_context(&self, other: &LieSeries) -> Result<()> {
        if self.n != other.n || self.trunc != other.trunc {
            return Err(Error::MismatchedContext(format!(
                "(n={}, trunc={}) vs (n={}, trunc={})",
                self.n, self.trunc, other.n, other.trunc
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LieSeries) -> Result<LieSeries> {
        self.check_context(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn sub(&self, other: &LieSeries) -> Result<LieSeries> {
        self.add(&other.negated())
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &LieSeries) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &Rational) -> LieSeries {
        if factor.is_zero() {
            return LieSeries::zero(self.n, self.trunc);
        }
        LieSeries {
            n: self.n,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    pub fn negated(&self) -> LieSeries {
        self.scaled(&rat(-1, 1))
    }

    /// The Lie bracket, computed as `ab − ba` in the associative envelope.
    pub fn bracket(&self, other: &LieSeries) -> Result<LieSeries> {
        self.check_context(other)?;
        let a = lie_to_assoc(self);
        let b = lie_to_assoc(other);
        let commutator = a
            .mul_unchecked(&b)
            .add_unchecked(&b.mul_unchecked(&a).negated());
        Ok(assoc_to_lie(&commutator).expect("commutator of Lie elements is a Lie element"))
    }

    /// Campbell-Hausdorff product `log(exp(a)·exp(b))`.
    pub fn bch(&self, other: &LieSeries) -> Result<LieSeries> {
        self.check_context(other)?;
        let ea = lie_to_assoc(self)
            .exp()
            .expect("Lie series have no constant term");
        let eb = lie_to_assoc(other)
            .exp()
            .expect("Lie series have no constant term");
        let log = ea
            .mul_unchecked(&eb)
            .log()
            .expect("product of exponentials has constant term 1");
        Ok(assoc_to_lie(&log).expect("log of a group-like element is primitive"))
    }
}

impl fmt::Display for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

pub fn lie_to_assoc(l: &LieSeries) -> NcSeries {
    let mut out = NcSeries::zero(l.n, l.trunc);
    for (w, c) in &l.terms {
        for (m, k) in lyndon_expansion(w).iter() {
            out.add_term(m.clone(), c * rat(*k, 1));
        }
    }
    out
}

/// Left-normed bracket [[…[X_{i₁},X_{i₂}],…],X_{i_k}] of a monomial, expanded.
fn left_normed(m: &Monomial) -> Vec<(Vec<u8>, i64)> {
    let letters = m.letters();
    let mut acc: Vec<(Vec<u8>, i64)> = vec![(vec![letters[0]], 1)];
    for &a in &letters[1..] {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (w, c) in &acc {
            let mut right = w.clone();
            right.push(a);
            next.push((right, *c));
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(a);
            left.extend_from_slice(w);
            next.push((left, -c));
        }
        acc = next;
    }
    acc
}

/// The Dynkin map: each monomial goes to its left-normed bracket.
pub fn dynkin(p: &NcSeries) -> Result<NcSeries> {
    if !p.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = NcSeries::zero(p.n(), p.trunc());
    for (m, c) in p.terms() {
        for (w, k) in left_normed(m) {
            out.add_term(Monomial::new(w), c * rat(k, 1));
        }
    }
    Ok(out)
}

/// Expresses a primitive series in the Lyndon basis.
pub fn assoc_to_lie(p: &NcSeries) -> Result<LieSeries> {
    if !p.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = LieSeries::zero(p.n(), p.trunc());
    for d in 1..=p.trunc() {
        let mut rest = p.homogeneous_part(d);
        if rest.is_zero() {
            continue;
        }
        if dynkin(&rest)? != rest.scaled(&rat(d as i64, 1)) {
            return Err(Error::NotALieElement { degree: d });
        }
        loop {
            let Some((lead, c)) = rest.terms().next().map(|(m, c)| (m.clone(), c.clone())) else {
                break;
            };
            let word =
                LyndonWord::new(lead.into_letters()).ok_or(Error::NotALieElement { degree: d })?;
            for (m, k) in lyndon_expansion(&word).iter() {
                rest.add_term(m.clone(), -(&c * rat(*k, 1)));
            }
            out.add_term(word, c);
        }
    }
    Ok(out)
}
