//! Seeded random inputs: rationals, binary forms, unimodular substitutions.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binary::BinaryForm;
use crate::rational::Rational;

pub type Sampler = ChaCha8Rng;

pub fn sampler(seed: u64) -> Sampler {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `|n| <= bound`, `1 <= d <= bound`.
pub fn rational(rng: &mut Sampler, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational(rng: &mut Sampler, bound: i64) -> Rational {
    loop {
        let q = rational(rng, bound);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

pub fn form(rng: &mut Sampler, degree: u32, bound: i64) -> BinaryForm {
    BinaryForm::new((0..=degree).map(|_| rational(rng, bound)).collect()).expect("nonempty")
}

/// Two linear forms that are not proportional.
pub fn independent_linear_pair(rng: &mut Sampler, bound: i64) -> (BinaryForm, BinaryForm) {
    loop {
        let (a, b) = (form(rng, 1, bound), form(rng, 1, bound));
        let det = &a.coeffs()[0] * &b.coeffs()[1] - &a.coeffs()[1] * &b.coeffs()[0];
        if det != Rational::from_integer(0.into()) {
            return (a, b);
        }
    }
}

/// A determinant-one matrix built from two elementary shears and a diagonal
/// scaling.
pub fn unimodular(rng: &mut Sampler, bound: i64) -> [[Rational; 2]; 2] {
    let s = rational(rng, bound);
    let t = rational(rng, bound);
    let l = nonzero_rational(rng, bound);
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let upper = [[one.clone(), s], [zero.clone(), one.clone()]];
    let lower = [[one.clone(), zero.clone()], [t, one]];
    let diag = [[l.clone(), zero.clone()], [zero, l.recip()]];
    mat_mul(&mat_mul(&upper, &lower), &diag)
}

pub fn mat_mul(a: &[[Rational; 2]; 2], b: &[[Rational; 2]; 2]) -> [[Rational; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// A 3x3 unimodular matrix, as a product of shears.
pub fn unimodular3(rng: &mut Sampler, bound: i64) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| Rational::from_integer(BigInt::from((i == j) as i64)))
                .collect()
        })
        .collect();
    for (i, j) in [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)] {
        let s = rational(rng, bound);
        // add s * column i to column j
        for row in m.iter_mut() {
            let add = &row[i] * &s;
            row[j] += add;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_has_det_one() {
        let mut rng = sampler(3);
        for _ in 0..20 {
            let g = unimodular(&mut rng, 5);
            let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
            assert_eq!(det, Rational::from_integer(1.into()));
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = form(&mut sampler(9), 4, 7);
        let b = form(&mut sampler(9), 4, 7);
        assert_eq!(a, b);
    }
}
