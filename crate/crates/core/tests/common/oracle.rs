//! Slow, direct reimplementations used to cross-check the library.

use std::collections::HashMap;

use chlink::freegroup::GroupWord;
use chlink::ncalg::{Monomial, NcSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Poly = HashMap<Vec<u8>, BigRational>;

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn tidy(mut p: Poly) -> Poly {
    p.retain(|_, c| !c.is_zero());
    p
}

pub fn add(a: &Poly, b: &Poly, scale: &BigRational) -> Poly {
    let mut out = a.clone();
    for (m, c) in b {
        *out.entry(m.clone()).or_insert_with(BigRational::zero) += c * scale;
    }
    tidy(out)
}

pub fn mul(a: &Poly, b: &Poly, trunc: usize) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if ma.len() + mb.len() <= trunc {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                *out.entry(m).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
    }
    tidy(out)
}

fn unit() -> Poly {
    Poly::from([(Vec::new(), BigRational::one())])
}

/// Σ aᵏ/k! for `a` without constant term.
pub fn exp(a: &Poly, trunc: usize) -> Poly {
    let mut out = unit();
    let mut power = unit();
    let mut factorial = BigRational::one();
    for k in 1..=trunc {
        power = mul(&power, a, trunc);
        factorial *= q(k as i64, 1);
        out = add(&out, &power, &(BigRational::one() / &factorial));
    }
    out
}

/// Σ (−1)ᵏ⁺¹ (a−1)ᵏ/k for `a` with constant term 1.
pub fn log(a: &Poly, trunc: usize) -> Poly {
    let y = add(a, &unit(), &q(-1, 1));
    let mut out = Poly::new();
    let mut power = unit();
    for k in 1..=trunc {
        power = mul(&power, &y, trunc);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = add(&out, &power, &q(sign, k as i64));
    }
    out
}

pub fn generator(i: u8) -> Poly {
    Poly::from([(vec![i], BigRational::one())])
}

pub fn to_poly(s: &NcSeries) -> Poly {
    s.terms()
        .map(|(m, c)| (m.letters().to_vec(), c.clone()))
        .collect()
}

pub fn from_poly(n: usize, trunc: usize, p: &Poly) -> NcSeries {
    NcSeries::from_terms(
        n,
        trunc,
        p.iter().map(|(m, c)| (Monomial::new(m.clone()), c.clone())),
    )
    .unwrap()
}

/// Number of Lyndon words of length `d` on `n` letters, by Möbius inversion.
pub fn witt(n: usize, d: usize) -> usize {
    fn mobius(mut k: usize) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= k {
            if k.is_multiple_of(p) {
                k /= p;
                if k.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if k > 1 {
            sign = -sign;
        }
        sign
    }
    let total: i64 = (1..=d)
        .filter(|&e| d.is_multiple_of(e))
        .map(|e| mobius(e) * (n as i64).pow((d / e) as u32))
        .sum();
    (total / d as i64) as usize
}

/// Coefficient of `target` in the Magnus expansion of `w`, by dynamic
/// programming over letters: `xᵢ` contributes 1 + Xᵢ and `xᵢ⁻¹` contributes
/// Σ (−Xᵢ)ᵐ.
pub fn magnus_coefficient(w: &GroupWord, target: &[u8]) -> BigInt {
    let r = target.len();
    let mut dp = vec![BigInt::zero(); r + 1];
    dp[0] = BigInt::one();
    for letter in w.letters() {
        let mut next = vec![BigInt::zero(); r + 1];
        for (start, here) in dp.iter().enumerate() {
            if here.is_zero() {
                continue;
            }
            for end in start..=r {
                if end > start && target[end - 1] != letter.index {
                    break;
                }
                let len = end - start;
                let c = if letter.inverse {
                    if len % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    }
                } else if len <= 1 {
                    BigInt::one()
                } else {
                    break;
                };
                next[end] += here * c;
            }
        }
        dp = next;
    }
    dp[r].clone()
}
