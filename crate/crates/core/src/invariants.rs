//! Milnor and Campbell-Hausdorff invariants of string links, and the
//! finite-type vanishing checks over resolutions of double points.
//!
//! The CH derivation of a longitude system at degree `s` has components
//! `[ρ(lᵢ), Xᵢ]` modulo brackets longer than `s`. Comparisons of CH values are
//! only made at the first non-vanishing degree, where the value carries no
//! indeterminacy and tuples can be compared directly.

use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freegroup::GroupWord;
use crate::freelie::LieSeries;
use crate::ncalg::{monomials_up_to, rat, Monomial, NcSeries, Rational};
use crate::stringlink::{LongitudeSystem, StringLinkWord};

/// Componentwise Lie data `i ↦ [ρ(lᵢ), Xᵢ]`, supported in degrees `2..=trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub n: usize,
    pub trunc: usize,
    pub parts: Vec<LieSeries>,
}

impl Derivation {
    pub fn zero(n: usize, trunc: usize) -> Self {
        Derivation {
            n,
            trunc,
            parts: vec![LieSeries::zero(n, trunc); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(LieSeries::is_zero)
    }

    /// Smallest degree present in any component.
    pub fn min_degree(&self) -> Option<usize> {
        self.parts.iter().filter_map(LieSeries::min_degree).min()
    }

    fn accumulate(&mut self, other: &Derivation, epsilon: i8) {
        let factor = rat(epsilon as i64, 1);
        for (mine, theirs) in self.parts.iter_mut().zip(&other.parts) {
            mine.add_assign_unchecked(&theirs.scaled(&factor));
        }
    }
}

/// The CH derivation at degree `s`; `s = 1` yields the zero derivation.
pub fn derivation(ls: &LongitudeSystem, s: usize) -> Result<Derivation> {
    if s == 0 {
        return Err(Error::InvalidDegree {
            degree: s,
            reason: "degree must be at least 1".into(),
        });
    }
    let parts = ls
        .longs
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let x = LieSeries::generator(ls.n, s, i + 1)?;
            l.ch_expand(s).bracket(&x)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(parts.iter().all(|p| p.min_degree().is_none_or(|d| d >= 2)));
    Ok(Derivation {
        n: ls.n,
        trunc: s,
        parts,
    })
}

/// Lowest-degree non-vanishing part of the CH derivation; `degree` is `None` when
/// everything vanishes through `s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderInvariant {
    pub degree: Option<usize>,
    pub parts: Vec<LieSeries>,
}

impl FirstOrderInvariant {
    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    pub fn scaled(&self, factor: &Rational) -> FirstOrderInvariant {
        FirstOrderInvariant {
            degree: self.degree,
            parts: self.parts.iter().map(|p| p.scaled(factor)).collect(),
        }
    }
}

pub fn ch_first_nonvanishing(ls: &LongitudeSystem, s_max: usize) -> Result<FirstOrderInvariant> {
    if s_max < 2 {
        return Err(Error::InvalidDegree {
            degree: s_max,
            reason: "first-order CH invariants need degree at least 2".into(),
        });
    }
    let d = derivation(ls, s_max)?;
    Ok(match d.min_degree() {
        None => FirstOrderInvariant {
            degree: None,
            parts: Vec::new(),
        },
        Some(deg) => FirstOrderInvariant {
            degree: Some(deg),
            parts: d.parts.iter().map(|p| p.homogeneous_part(deg)).collect(),
        },
    })
}

/// μ(i₁…i_k j): coefficient of X_{i₁}⋯X_{i_k} in the Magnus expansion of l_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuValue {
    pub index: Vec<usize>,
    pub value: i64,
}

/// Nonzero Milnor coefficients of the lowest non-vanishing length, ordered by
/// the last index and then by monomial.
pub fn mu_first_nonvanishing(ls: &LongitudeSystem, s_max: usize) -> Result<Vec<MuValue>> {
    if s_max == 0 {
        return Err(Error::InvalidDegree {
            degree: s_max,
            reason: "degree must be at least 1".into(),
        });
    }
    let expansions: Vec<NcSeries> = ls.longs.iter().map(|l| l.magnus_expand(s_max)).collect();
    let first = expansions
        .iter()
        .filter_map(|e| e.terms().map(|(m, _)| m.degree()).find(|&d| d >= 1))
        .min();
    let Some(d) = first else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (j, e) in expansions.iter().enumerate() {
        for (m, c) in e.terms().filter(|(m, _)| m.degree() == d) {
            assert!(c.denom().is_one(), "non-integral Milnor coefficient {c}");
            let mut index: Vec<usize> = m.letters().iter().map(|&l| l as usize).collect();
            index.push(j + 1);
            out.push(MuValue {
                index,
                value: c.numer().to_i64().expect("Milnor coefficient fits in i64"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The link is not isotopic to its reverse.
    Distinct,
    /// Nothing can be concluded at first order.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibilityReport {
    pub verdict: Verdict,
    pub forward: FirstOrderInvariant,
    pub reversed: FirstOrderInvariant,
}

/// Compares first-order CH invariants of the closure and of its reverse.
pub fn detect_noninvertible(w: &StringLinkWord, s_max: usize) -> Result<InvertibilityReport> {
    let ls = w.longitudes()?;
    let forward = ch_first_nonvanishing(&ls, s_max)?;
    let reversed = ch_first_nonvanishing(&ls.reversed(), s_max)?;
    let verdict = if forward != reversed {
        Verdict::Distinct
    } else {
        Verdict::Inconclusive
    };
    Ok(InvertibilityReport {
        verdict,
        forward,
        reversed,
    })
}

/// The ring endomorphism Φ of P⁽ˢ⁾ induced by a string link, stored by its
/// generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiEndomorphism {
    pub images: Vec<NcSeries>,
}

impl PhiEndomorphism {
    pub fn apply(&self, m: &Monomial) -> NcSeries {
        let first = &self.images[0];
        m.letters()
            .iter()
            .fold(NcSeries::one(first.n(), first.trunc()), |acc, &l| {
                acc.mul_unchecked(&self.images[l as usize - 1])
            })
    }
}

/// Φ(Xᵢ) = log(E(uᵢ)·exp(Xᵢ)·E(uᵢ)⁻¹) for the Artin conjugators uᵢ.
pub fn phi_endomorphism(w: &StringLinkWord, s: usize) -> Result<PhiEndomorphism> {
    let n = w.strands();
    let conjugators = w.conjugators()?;
    let images = conjugators
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let eu = u.ch_group_like(s);
            let ex = GroupWord::generator(n, i + 1)?.ch_group_like(s);
            let eu_inv = u.inverse().ch_group_like(s);
            eu.mul_unchecked(&ex).mul_unchecked(&eu_inv).log()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiEndomorphism { images })
}

/// How the per-resolution terms of an alternating sum are evaluated and added.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Evaluation {
    #[default]
    Parallel,
    Sequential,
    /// Sequential, summing the resolutions in a seeded random order.
    Shuffled(u64),
}

/// `Σⱼ εⱼ f(σⱼ)` over all resolutions; every strategy gives the identical result.
fn alternating_sum<T, F, A>(
    w: &StringLinkWord,
    eval: F,
    mut acc: T,
    add: A,
    how: Evaluation,
) -> Result<T>
where
    T: Send,
    F: Fn(&StringLinkWord) -> Result<T> + Sync,
    A: Fn(&mut T, &T, i8),
{
    let resolutions = w.resolutions();
    let terms: Vec<(i8, T)> = match how {
        Evaluation::Parallel => resolutions
            .par_iter()
            .map(|(r, sigma)| eval(sigma).map(|t| (r.epsilon, t)))
            .collect::<Result<_>>()?,
        Evaluation::Sequential | Evaluation::Shuffled(_) => resolutions
            .iter()
            .map(|(r, sigma)| eval(sigma).map(|t| (r.epsilon, t)))
            .collect::<Result<_>>()?,
    };
    let mut order: Vec<usize> = (0..terms.len()).collect();
    if let Evaluation::Shuffled(seed) = how {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    for idx in order {
        let (epsilon, term) = &terms[idx];
        add(&mut acc, term, *epsilon);
    }
    Ok(acc)
}

/// Σⱼ εⱼ ∂⁽ˢ⁾(σⱼ) over the resolutions of a singular word.
pub fn alternating_derivation(w: &StringLinkWord, s: usize, how: Evaluation) -> Result<Derivation> {
    alternating_sum(
        w,
        |sigma| derivation(&sigma.longitudes()?, s),
        Derivation::zero(w.strands(), s),
        |acc, d, eps| acc.accumulate(d, eps),
        how,
    )
}

/// Σⱼ εⱼ Φ_{σⱼ}(µ) for every monomial µ of degree ≤ s, in canonical monomial order.
pub fn alternating_phi(
    w: &StringLinkWord,
    s: usize,
    how: Evaluation,
) -> Result<Vec<(Monomial, NcSeries)>> {
    let n = w.strands();
    let monomials = monomials_up_to(n, s);
    let sums = alternating_sum(
        w,
        |sigma| {
            let phi = phi_endomorphism(sigma, s)?;
            // monomials_up_to lists every prefix before its extensions
            let mut values: Vec<NcSeries> = Vec::with_capacity(monomials.len());
            let mut index = std::collections::HashMap::with_capacity(monomials.len());
            for m in &monomials {
                let value = match m.letters().split_last() {
                    None => NcSeries::one(n, s),
                    Some((&last, prefix)) => {
                        let p = index[&Monomial::new(prefix.to_vec())];
                        let prev: &NcSeries = &values[p];
                        prev.mul_unchecked(&phi.images[last as usize - 1])
                    }
                };
                index.insert(m.clone(), values.len());
                values.push(value);
            }
            Ok(values)
        },
        vec![NcSeries::zero(n, s); monomials.len()],
        |acc, values, eps| {
            let factor = rat(eps as i64, 1);
            for (a, v) in acc.iter_mut().zip(values) {
                a.add_scaled_assign(v, &factor);
            }
        },
        how,
    )?;
    Ok(monomials.into_iter().zip(sums).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Phi,
    Bracket,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Phi => "phi",
            Check::Bracket => "bracket",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    Monomial {
        monomial: Monomial,
        series: NcSeries,
    },
    Component {
        component: usize,
        series: LieSeries,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub check: Check,
    pub s: usize,
    pub k: usize,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

fn require_doubles(w: &StringLinkWord, s: usize) -> Result<usize> {
    if s == 0 {
        return Err(Error::InvalidDegree {
            degree: s,
            reason: "degree must be at least 1".into(),
        });
    }
    match w.double_count() {
        0 => Err(Error::NoDoublePoints),
        k => Ok(k),
    }
}

/// Checks Σⱼ εⱼ Φ_{σⱼ} = 0 in End(P⁽ˢ⁾) on the full monomial basis.
pub fn vanishing_check_phi(w: &StringLinkWord, s: usize) -> Result<VanishingReport> {
    vanishing_check_phi_with(w, s, Evaluation::default())
}

pub fn vanishing_check_phi_with(
    w: &StringLinkWord,
    s: usize,
    how: Evaluation,
) -> Result<VanishingReport> {
    let k = require_doubles(w, s)?;
    let sums = alternating_phi(w, s, how)?;
    let counterexample = sums
        .into_iter()
        .find(|(_, v)| !v.is_zero())
        .map(|(monomial, series)| Counterexample::Monomial { monomial, series });
    Ok(VanishingReport {
        check: Check::Phi,
        s,
        k,
        pass: counterexample.is_none(),
        counterexample,
    })
}

/// Checks that the alternating sum of CH derivations vanishes modulo degree > s.
pub fn vanishing_check_bracket(w: &StringLinkWord, s: usize) -> Result<VanishingReport> {
    vanishing_check_bracket_with(w, s, Evaluation::default())
}

pub fn vanishing_check_bracket_with(
    w: &StringLinkWord,
    s: usize,
    how: Evaluation,
) -> Result<VanishingReport> {
    let k = require_doubles(w, s)?;
    let sum = alternating_derivation(w, s, how)?;
    let counterexample = sum
        .parts
        .into_iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(i, series)| Counterexample::Component {
            component: i + 1,
            series,
        });
    Ok(VanishingReport {
        check: Check::Bracket,
        s,
        k,
        pass: counterexample.is_none(),
        counterexample,
    })
}

/// Degree-s weight of a word with exactly s−1 double points.
///
/// Fails with [`Error::LowerDegreeNonvanishing`] if the alternating sum has any
/// term below degree s.
pub fn chord_weight(w: &StringLinkWord, s: usize) -> Result<Vec<LieSeries>> {
    chord_weight_with(w, s, Evaluation::default())
}

pub fn chord_weight_with(w: &StringLinkWord, s: usize, how: Evaluation) -> Result<Vec<LieSeries>> {
    if s < 2 {
        return Err(Error::InvalidDegree {
            degree: s,
            reason: "chord weights need degree at least 2".into(),
        });
    }
    let k = w.double_count();
    if k != s - 1 {
        return Err(Error::WrongDoubleCount {
            expected: s - 1,
            found: k,
        });
    }
    let sum = alternating_derivation(w, s, how)?;
    for (i, part) in sum.parts.iter().enumerate() {
        if let Some(d) = part.min_degree().filter(|&d| d < s) {
            return Err(Error::LowerDegreeNonvanishing {
                degree: d,
                bound: s,
                component: i + 1,
            });
        }
    }
    Ok(sum.parts)
}
