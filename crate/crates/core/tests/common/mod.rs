#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use polycert::{Monomial, Polynomial};

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// Rationals with numerator in `[-lim, lim]` and denominator in `1..=den`.
pub fn small_rat(lim: i64, den: i64) -> impl Strategy<Value = BigRational> {
    (-lim..=lim, 1..=den).prop_map(|(p, d)| q(p, d))
}

pub fn rat_vec(n: usize, lim: i64, den: i64) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec(small_rat(lim, den), n)
}

/// Sparse polynomial in `n` variables of degree at most `d`.
pub fn poly(n: usize, d: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0..=d, n), small_rat(9, 4)), 1..=terms).prop_map(
        move |ts| {
            let mut p = Polynomial::zero(n);
            for (mut e, c) in ts {
                while e.iter().sum::<u32>() > d {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                p.add_term(Monomial(e), c);
            }
            p
        },
    )
}

/// Proptest configuration without on-disk regression files.
pub fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
