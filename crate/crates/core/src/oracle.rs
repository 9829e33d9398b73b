//! Independent reference computations used to cross-check the main routines.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::angular::{AngularData, SignedSquare};
use crate::binary::{BinForm, Coeff};
use crate::rational::{factorial, Rational};

fn fi(n: i64) -> Option<BigInt> {
    (n >= 0).then(|| factorial(n as u32))
}

/// Clebsch-Gordan coefficient from the Racah sum.
pub fn racah_cg(ad: &AngularData) -> SignedSquare {
    if !ad.is_physical() {
        return SignedSquare::zero();
    }
    let h = |x: i64| x / 2;
    let (j1, j2, j) = (ad.two_j1, ad.two_j2, ad.two_j);
    let (m1, m2, m) = (ad.two_m1, ad.two_m2, ad.two_m);
    let t = [
        h(j1 + j2 - j),
        h(j1 - j2 + j),
        h(-j1 + j2 + j),
        h(j + m),
        h(j - m),
        h(j1 - m1),
        h(j1 + m1),
        h(j2 - m2),
        h(j2 + m2),
    ];
    let mut pre_num = BigInt::from(j + 1);
    for x in &t[..3] {
        pre_num *= fi(*x).expect("physical");
    }
    for x in &t[3..] {
        pre_num *= fi(*x).expect("physical");
    }
    let pre_den = fi(h(j1 + j2 + j) + 1).expect("physical");
    let lo = 0.max(h(j2 - j - m1)).max(h(j1 - j + m2));
    let hi = h(j1 + j2 - j).min(h(j1 - m1)).min(h(j2 + m2));
    let mut sum = Rational::zero();
    for k in lo..=hi {
        let den = [
            k,
            h(j1 + j2 - j) - k,
            h(j1 - m1) - k,
            h(j2 + m2) - k,
            h(j - j2 + m1) + k,
            h(j - j1 - m2) + k,
        ]
        .iter()
        .map(|&x| fi(x).expect("range keeps arguments nonnegative"))
        .product::<BigInt>();
        let term = Rational::new(BigInt::from(1), den);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    let sign = if sum.is_zero() {
        0
    } else if sum > Rational::zero() {
        1
    } else {
        -1
    };
    SignedSquare::new(sign, &sum * &sum * Rational::new(pre_num, pre_den))
}

/// `Q^2 (Q^4 He(P/Q))`, i.e. `N00 N11 - N01^2` with
/// `N_ij = Q^2 P_ij - Q (P_i Q_j + P_j Q_i) - Q P Q_ij + 2 P Q_i Q_j`,
/// so that `d_ij (P/Q) = N_ij / Q^3`.
pub fn quotient_hessian_numerator<C: Coeff>(p: &BinForm<C>, q: &BinForm<C>) -> BinForm<C> {
    let d = |f: &BinForm<C>, i: usize| if i == 0 { f.partial(1, 0) } else { f.partial(0, 1) };
    let dd = |f: &BinForm<C>, i: usize, j: usize| {
        let mu = (i == 0) as u32 + (j == 0) as u32;
        f.partial(mu, 2 - mu)
    };
    let n = |i: usize, j: usize| {
        let q2 = q * q;
        let a = &q2 * &dd(p, i, j);
        let b = q * &(&(&d(p, i) * &d(q, j)) + &(&d(p, j) * &d(q, i)));
        let c = &(q * p) * &dd(q, i, j);
        let e = (&(p * &d(q, i)) * &d(q, j)).scale(&Rational::from_integer(2.into()));
        let pad = |f: BinForm<C>, deg: u32| if f.degree() == deg { f } else { BinForm::zero(deg) };
        let deg = (p.degree() + 2 * q.degree()).saturating_sub(2);
        &(&pad(a, deg) - &pad(b, deg)) - &(&pad(c, deg) - &pad(e, deg))
    };
    let (n00, n11, n01) = (n(0, 0), n(1, 1), n(0, 1));
    &(&n00 * &n11) - &(&n01 * &n01)
}
