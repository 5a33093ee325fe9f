#![allow(dead_code)]

pub mod oracle;

use chlink::stringlink::{Kind, StringLinkWord, Token};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for randomized cases; `CHLINK_SEED` overrides the default.
pub fn seed() -> u64 {
    std::env::var("CHLINK_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_1996)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn alphabet(strands: usize, with_doubles: bool) -> Vec<Token> {
    let mut out = Vec::new();
    for j in 1..strands {
        out.push(Token::positive(j));
        out.push(Token::negative(j));
        if with_doubles {
            out.push(Token::double(j));
        }
    }
    out
}

/// Every pure singular word on `strands` strands with at most `max_len` tokens
/// and between 1 and `max_k` double points.
pub fn singular_corpus(strands: usize, max_len: usize, max_k: usize) -> Vec<StringLinkWord> {
    let letters = alphabet(strands, true);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Token>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &t in &letters {
                let mut v = w.clone();
                v.push(t);
                next.push(v);
            }
        }
        for w in &next {
            let k = w.iter().filter(|t| t.kind == Kind::Double).count();
            if (1..=max_k).contains(&k) {
                if let Ok(word) = StringLinkWord::new(strands, w.clone()) {
                    out.push(word);
                }
            }
        }
        layer = next;
    }
    out
}

/// A random pure non-singular word: a random word followed by a sorting tail
/// that undoes its permutation.
pub fn random_pure_word(rng: &mut ChaCha8Rng, strands: usize, max_len: usize) -> StringLinkWord {
    let letters = alphabet(strands, false);
    let len = if letters.is_empty() {
        0
    } else {
        rng.random_range(0..=max_len)
    };
    let mut tokens: Vec<Token> = (0..len)
        .map(|_| letters[rng.random_range(0..letters.len())])
        .collect();
    let mut at: Vec<usize> = (0..strands).collect();
    for t in &tokens {
        at.swap(t.position - 1, t.position);
    }
    // bubble sort the positions back, with random crossing signs
    while let Some(p) = (0..strands.saturating_sub(1)).find(|&p| at[p] > at[p + 1]) {
        at.swap(p, p + 1);
        tokens.push(if rng.random_bool(0.5) {
            Token::positive(p + 1)
        } else {
            Token::negative(p + 1)
        });
    }
    StringLinkWord::new(strands, tokens).expect("sorting tail makes the word pure")
}

pub mod strategies {
    use chlink::freegroup::{GroupWord, Letter};
    use chlink::freelie::{lyndon_basis, LieSeries};
    use chlink::ncalg::{Monomial, NcSeries};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-4i64..=4, 1i64..=3).prop_map(|(p, d)| BigRational::new(BigInt::from(p), BigInt::from(d)))
    }

    /// A series in `n` letters with up to `len` terms of degree between `min_degree` and `trunc`.
    pub fn nc_series(
        n: usize,
        trunc: usize,
        min_degree: usize,
        len: usize,
    ) -> impl Strategy<Value = NcSeries> {
        let term = (
            prop::collection::vec(1..=n as u8, min_degree..=trunc),
            small_rational(),
        );
        prop::collection::vec(term, 0..=len).prop_map(move |terms| {
            NcSeries::from_terms(
                n,
                trunc,
                terms.into_iter().map(|(m, c)| (Monomial::new(m), c)),
            )
            .unwrap()
        })
    }

    /// A Lie series: a random combination of Lyndon basis brackets.
    pub fn lie_series(n: usize, trunc: usize, len: usize) -> impl Strategy<Value = LieSeries> {
        let basis = lyndon_basis(n, trunc);
        let count = basis.len();
        prop::collection::vec((0..count, small_rational()), 0..=len).prop_map(move |terms| {
            LieSeries::from_terms(
                n,
                trunc,
                terms.into_iter().map(|(i, c)| (basis[i].clone(), c)),
            )
            .unwrap()
        })
    }

    pub fn group_word(n: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
        prop::collection::vec((1..=n as u8, any::<bool>()), 0..=max_len).prop_map(move |letters| {
            GroupWord::reduce(n, letters.into_iter().map(|(i, inv)| Letter::new(i, inv))).unwrap()
        })
    }
}

/// Appends positive crossings that sort the strands back, making any token
/// list pure. Lists with the same permutation get the same tail.
pub fn with_sorting_tail(strands: usize, mut tokens: Vec<Token>) -> StringLinkWord {
    let mut at: Vec<usize> = (0..strands).collect();
    for t in &tokens {
        if t.kind != Kind::Double {
            at.swap(t.position - 1, t.position);
        }
    }
    while let Some(p) = (0..strands.saturating_sub(1)).find(|&p| at[p] > at[p + 1]) {
        at.swap(p, p + 1);
        tokens.push(Token::positive(p + 1));
    }
    StringLinkWord::new(strands, tokens).expect("sorting tail makes the word pure")
}

/// Random tokens (crossings only, or with clasps), not necessarily pure.
pub fn random_tokens(
    rng: &mut ChaCha8Rng,
    strands: usize,
    len: usize,
    with_doubles: bool,
) -> Vec<Token> {
    let letters = alphabet(strands, with_doubles);
    if letters.is_empty() {
        return Vec::new();
    }
    (0..len)
        .map(|_| letters[rng.random_range(0..letters.len())])
        .collect()
}
