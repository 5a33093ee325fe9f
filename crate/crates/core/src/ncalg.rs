//! Truncated non-commutative power series over ℚ.
//!
//! An [`NcSeries`] is an element of ℚ⟨X₁,…,Xₙ⟩ modulo all monomials of degree
//! greater than its truncation degree. Coefficients are exact rationals and the
//! term map is kept sparse: a stored coefficient is never zero, so structural
//! equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A word in the non-commuting letters X₁,…,Xₙ (1-based indices).
///
/// Ordered by degree first, then lexicographically on the letter sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Monomial(letters)
    }

    pub fn letter(index: u8) -> Self {
        Monomial(vec![index])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Monomial(letters)
    }

    pub fn reversed(&self) -> Monomial {
        Monomial(self.0.iter().rev().copied().collect())
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (pos, letter) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(".")?;
            }
            write!(f, "X{letter}")?;
        }
        Ok(())
    }
}

/// All monomials on `n` letters of degree at most `max_degree`, in canonical order.
pub fn monomials_up_to(n: usize, max_degree: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::unit()];
    let mut layer = vec![Monomial::unit()];
    for _ in 0..max_degree {
        let mut next = Vec::with_capacity(layer.len() * n);
        for m in &layer {
            for i in 1..=n {
                let mut letters = m.0.clone();
                letters.push(i as u8);
                next.push(Monomial(letters));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Element of ℚ⟨X₁,…,Xₙ⟩ / (degree > trunc).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcSeries {
    n: usize,
    trunc: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl NcSeries {
    pub fn zero(n: usize, trunc: usize) -> Self {
        NcSeries {
            n,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, trunc: usize) -> Self {
        Self::constant(n, trunc, Rational::one())
    }

    pub fn constant(n: usize, trunc: usize, c: Rational) -> Self {
        let mut s = Self::zero(n, trunc);
        s.add_term(Monomial::unit(), c);
        s
    }

    /// The single letter Xᵢ (1-based).
    pub fn generator(n: usize, trunc: usize, index: usize) -> Result<Self> {
        check_index(index, n)?;
        let mut s = Self::zero(n, trunc);
        s.add_term(Monomial::letter(index as u8), Rational::one());
        Ok(s)
    }

    /// Builds a series from `(monomial, coefficient)` pairs; repeated monomials
    /// accumulate and terms above `trunc` are dropped.
    pub fn from_terms<I>(n: usize, trunc: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut s = Self::zero(n, trunc);
        for (m, c) in terms {
            for &letter in m.letters() {
                check_index(letter as usize, n)?;
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::unit())
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// The homogeneous component of degree `d`, as a series with the same context.
    pub fn homogeneous_part(&self, d: usize) -> NcSeries {
        NcSeries {
            n: self.n,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Discards every term of degree above `trunc`; `trunc` may not exceed the current one.
    pub fn truncated(&self, trunc: usize) -> Result<NcSeries> {
        if trunc > self.trunc {
            return Err(Error::InvalidDegree {
                degree: trunc,
                reason: format!("cannot raise truncation above {}", self.trunc),
            });
        }
        Ok(NcSeries {
            n: self.n,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= trunc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.degree() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_context(&self, other: &NcSeries) -> Result<()> {
        if self.n != other.n || self.trunc != other.trunc {
            return Err(Error::MismatchedContext(format!(
                "(n={}, trunc={}) vs (n={}, trunc={})",
                self.n, self.trunc, other.n, other.trunc
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &NcSeries) -> Result<NcSeries> {
        self.check_context(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &NcSeries) -> Result<NcSeries> {
        self.check_context(other)?;
        Ok(self.add_unchecked(&other.negated()))
    }

    pub(crate) fn add_unchecked(&self, other: &NcSeries) -> NcSeries {
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        out
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &NcSeries) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub(crate) fn add_scaled_assign(&mut self, other: &NcSeries, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn negated(&self) -> NcSeries {
        NcSeries {
            n: self.n,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> NcSeries {
        if factor.is_zero() {
            return NcSeries::zero(self.n, self.trunc);
        }
        NcSeries {
            n: self.n,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Concatenation product, dropping every product of degree above `trunc`.
    pub fn mul(&self, other: &NcSeries) -> Result<NcSeries> {
        self.check_context(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &NcSeries) -> NcSeries {
        let mut out = NcSeries::zero(self.n, self.trunc);
        for (m1, c1) in &self.terms {
            let budget = self.trunc - m1.degree();
            // terms are sorted by degree, so everything after the first too-long monomial is too long
            for (m2, c2) in other
                .terms
                .iter()
                .take_while(|(m2, _)| m2.degree() <= budget)
            {
                out.add_term(m1.concat(m2), c1 * c2);
            }
        }
        out
    }

    /// exp(a) = Σ_{k ≤ trunc} aᵏ/k!, defined when a has no constant term.
    pub fn exp(&self) -> Result<NcSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut result = NcSeries::one(self.n, self.trunc);
        let mut term = NcSeries::one(self.n, self.trunc);
        for k in 1..=self.trunc {
            term = term.mul_unchecked(self).scaled(&rat(1, k as i64));
            if term.is_zero() {
                break;
            }
            result.add_assign_unchecked(&term);
        }
        Ok(result)
    }

    /// log(a) = Σ_{k ≤ trunc} (−1)^{k+1}(a−1)ᵏ/k, defined when the constant term is 1.
    pub fn log(&self) -> Result<NcSeries> {
        let b = self.minus_one()?;
        let mut result = NcSeries::zero(self.n, self.trunc);
        let mut power = NcSeries::one(self.n, self.trunc);
        for k in 1..=self.trunc {
            power = power.mul_unchecked(&b);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result.add_scaled_assign(&power, &rat(sign, k as i64));
        }
        Ok(result)
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<NcSeries> {
        let neg_b = self.minus_one()?.negated();
        let mut result = NcSeries::one(self.n, self.trunc);
        let mut power = NcSeries::one(self.n, self.trunc);
        for _ in 1..=self.trunc {
            power = power.mul_unchecked(&neg_b);
            if power.is_zero() {
                break;
            }
            result.add_assign_unchecked(&power);
        }
        Ok(result)
    }

    fn minus_one(&self) -> Result<NcSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let mut b = self.clone();
        b.terms.remove(&Monomial::unit());
        Ok(b)
    }

    /// Image under the anti-automorphism reversing every monomial.
    pub fn reversed(&self) -> NcSeries {
        NcSeries {
            n: self.n,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.reversed(), c.clone()))
                .collect(),
        }
    }
}

fn check_index(index: usize, n: usize) -> Result<()> {
    if index == 0 || index > n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    Ok(())
}

/// Writes `c * term` pairs joined by ` + `; the zero element prints as `0`.
pub(crate) fn write_terms<'a, T, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    T: fmt::Display + 'a,
    I: IntoIterator<Item = (&'a T, &'a Rational)>,
{
    let mut empty = true;
    for (term, c) in terms {
        if !empty {
            f.write_str(" + ")?;
        }
        empty = false;
        write!(f, "{} * {}", format_rational(c), term)?;
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

/// `p/q`, or `p` when the denominator is 1.
pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else if c.is_negative() {
        format!("-{}/{}", c.numer().abs(), c.denom())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for NcSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}
