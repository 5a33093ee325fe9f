mod common;

use chlink::freelie::{
    assoc_to_lie, dynkin, is_lyndon, lie_to_assoc, lyndon_basis, LieSeries, LyndonWord,
};
use chlink::ncalg::{Monomial, NcSeries};
use chlink::Error;
use common::oracle::{self, q};
use common::strategies::{lie_series, nc_series};
use proptest::prelude::*;

fn lw(letters: &[u8]) -> LyndonWord {
    LyndonWord::new(letters.to_vec()).unwrap()
}

#[test]
fn basis_sizes_follow_the_necklace_formula() {
    for n in 1..=4usize {
        for d in 1..=6usize {
            let count = lyndon_basis(n, d)
                .iter()
                .filter(|w| w.degree() == d)
                .count();
            assert_eq!(count, oracle::witt(n, d), "n={n} d={d}");
        }
    }
    let per_degree: Vec<usize> = (1..=5)
        .map(|d| {
            lyndon_basis(2, 5)
                .iter()
                .filter(|w| w.degree() == d)
                .count()
        })
        .collect();
    assert_eq!(per_degree, vec![2, 1, 2, 3, 6]);
}

#[test]
fn basis_words_are_lyndon_by_brute_force() {
    for w in lyndon_basis(3, 5) {
        let letters = w.letters();
        let rotations_larger = (1..letters.len()).all(|r| {
            let mut rot = letters[r..].to_vec();
            rot.extend_from_slice(&letters[..r]);
            letters < rot.as_slice()
        });
        assert!(rotations_larger, "{w}");
        assert!(is_lyndon(letters));
    }
}

#[test]
fn standard_factorizations_print_as_brackets() {
    assert_eq!(lw(&[1, 1, 2]).to_string(), "[x1,[x1,x2]]");
    assert_eq!(lw(&[1, 2, 2]).to_string(), "[[x1,x2],x2]");
    let (u, v) = lw(&[1, 1, 2, 1, 2]).standard_factorization().unwrap();
    assert_eq!(
        (u.letters(), v.letters()),
        (&[1u8, 1, 2][..], &[1u8, 2][..])
    );
    assert!(lw(&[3]).standard_factorization().is_none());
}

#[test]
fn lie_to_assoc_expands_nested_commutators() {
    let x = |i| NcSeries::generator(2, 3, i).unwrap();
    let comm = |a: &NcSeries, b: &NcSeries| a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap();
    let l = LieSeries::from_terms(2, 3, [(lw(&[1, 1, 2]), q(1, 1))]).unwrap();
    assert_eq!(lie_to_assoc(&l), comm(&x(1), &comm(&x(1), &x(2))));
}

#[test]
fn non_lie_elements_are_rejected() {
    let p = NcSeries::from_terms(2, 3, [(Monomial::new(vec![1, 2]), q(1, 1))]).unwrap();
    assert!(matches!(
        assoc_to_lie(&p),
        Err(Error::NotALieElement { degree: 2 })
    ));
    assert!(matches!(
        assoc_to_lie(&NcSeries::one(2, 3)),
        Err(Error::NonzeroConstantTerm)
    ));
}

#[test]
fn bch_low_degrees() {
    let x1 = LieSeries::generator(2, 3, 1).unwrap();
    let x2 = LieSeries::generator(2, 3, 2).unwrap();
    let z = x1.bch(&x2).unwrap();
    assert_eq!(z.coeff(&lw(&[1])), q(1, 1));
    assert_eq!(z.coeff(&lw(&[2])), q(1, 1));
    assert_eq!(z.coeff(&lw(&[1, 2])), q(1, 2));
    assert_eq!(z.coeff(&lw(&[1, 1, 2])), q(1, 12));
    assert_eq!(z.coeff(&lw(&[1, 2, 2])), q(1, 12));
    assert_eq!(z.terms().count(), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lyndon_round_trip(l in lie_series(3, 4, 8)) {
        prop_assert_eq!(assoc_to_lie(&lie_to_assoc(&l)).unwrap(), l);
    }

    #[test]
    fn dynkin_scales_lie_elements_by_degree(l in lie_series(3, 4, 8), d in 1usize..=4) {
        let part = lie_to_assoc(&l.homogeneous_part(d));
        prop_assert_eq!(dynkin(&part).unwrap(), part.scaled(&q(d as i64, 1)));
    }

    #[test]
    fn dynkin_image_is_lie(p in nc_series(2, 4, 1, 6)) {
        prop_assert!(assoc_to_lie(&dynkin(&p).unwrap()).is_ok());
    }

    #[test]
    fn bracket_matches_commutator(a in lie_series(2, 5, 5), b in lie_series(2, 5, 5)) {
        let (pa, pb) = (lie_to_assoc(&a), lie_to_assoc(&b));
        let comm = pa.mul(&pb).unwrap().sub(&pb.mul(&pa).unwrap()).unwrap();
        prop_assert_eq!(lie_to_assoc(&a.bracket(&b).unwrap()), comm);
        prop_assert_eq!(a.bracket(&b).unwrap(), b.bracket(&a).unwrap().negated());
    }

    #[test]
    fn jacobi(a in lie_series(3, 4, 4), b in lie_series(3, 4, 4), c in lie_series(3, 4, 4)) {
        let br = |x: &LieSeries, y: &LieSeries| x.bracket(y).unwrap();
        let sum = br(&a, &br(&b, &c))
            .add(&br(&b, &br(&c, &a))).unwrap()
            .add(&br(&c, &br(&a, &b))).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bch_matches_direct_exp_log(a in lie_series(2, 4, 4), b in lie_series(2, 4, 4)) {
        let ea = oracle::exp(&oracle::to_poly(&lie_to_assoc(&a)), 4);
        let eb = oracle::exp(&oracle::to_poly(&lie_to_assoc(&b)), 4);
        let direct = oracle::log(&oracle::mul(&ea, &eb, 4), 4);
        prop_assert_eq!(lie_to_assoc(&a.bch(&b).unwrap()), oracle::from_poly(2, 4, &direct));
    }

    #[test]
    fn bch_group_laws(a in lie_series(3, 4, 4), b in lie_series(3, 4, 4), c in lie_series(3, 4, 4)) {
        let zero = LieSeries::zero(3, 4);
        prop_assert_eq!(a.bch(&zero).unwrap(), a.clone());
        prop_assert!(a.bch(&a.negated()).unwrap().is_zero());
        let left = a.bch(&b).unwrap().bch(&c).unwrap();
        let right = a.bch(&b.bch(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
