//! Clebsch-Gordan coefficients and Wigner 3j-symbols, computed exactly from
//! the monomial transvectant coefficient `N`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{factorial, format_rational, signum, Rational};
use crate::transvectant::{n_coeff, MonomialSpec};

/// The exact real number `sign * sqrt(square)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSquare {
    sign: i8,
    square: Rational,
}

impl SignedSquare {
    pub fn zero() -> Self {
        SignedSquare {
            sign: 0,
            square: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        SignedSquare {
            sign: 1,
            square: Rational::one(),
        }
    }

    /// `sign * sqrt(square)`; a zero square forces sign zero.
    pub fn new(sign: i8, square: Rational) -> Self {
        assert!(!square.is_negative(), "square must be nonnegative");
        if square.is_zero() || sign == 0 {
            return SignedSquare::zero();
        }
        SignedSquare {
            sign: sign.signum(),
            square,
        }
    }

    /// The signed square root representation of a rational `q`, i.e. `q` itself.
    pub fn from_rational(q: &Rational) -> Self {
        SignedSquare::new(signum(q), q * q)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &Rational {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn mul(&self, other: &SignedSquare) -> SignedSquare {
        SignedSquare::new(self.sign * other.sign, &self.square * &other.square)
    }

    pub fn negate(&self) -> SignedSquare {
        SignedSquare::new(-self.sign, self.square.clone())
    }

    /// The value as a rational, if the square is a perfect rational square.
    pub fn to_rational(&self) -> Option<Rational> {
        let n = self.square.numer().sqrt();
        let d = self.square.denom().sqrt();
        if &n * &n == *self.square.numer() && &d * &d == *self.square.denom() {
            let r = Rational::new(n, d);
            Some(if self.sign < 0 { -r } else { r })
        } else {
            None
        }
    }
}

impl fmt::Display for SignedSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "sqrt({})", format_rational(&self.square)),
            _ => write!(f, "-sqrt({})", format_rational(&self.square)),
        }
    }
}

/// Angular momenta and projections, each stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngularData {
    pub two_j1: i64,
    pub two_j2: i64,
    pub two_j: i64,
    pub two_m1: i64,
    pub two_m2: i64,
    pub two_m: i64,
}

impl AngularData {
    pub fn new(two_j1: i64, two_j2: i64, two_j: i64, two_m1: i64, two_m2: i64, two_m: i64) -> Self {
        AngularData {
            two_j1,
            two_j2,
            two_j,
            two_m1,
            two_m2,
            two_m,
        }
    }

    /// The coupling with `m = m1 + m2`.
    pub fn coupled(two_j1: i64, two_j2: i64, two_j: i64, two_m1: i64, two_m2: i64) -> Self {
        Self::new(two_j1, two_j2, two_j, two_m1, two_m2, two_m1 + two_m2)
    }

    /// Projection bounds, parities, `m = m1 + m2` and the triangle condition.
    pub fn is_physical(&self) -> bool {
        let even = |x: i64| x.rem_euclid(2) == 0;
        let AngularData {
            two_j1: j1,
            two_j2: j2,
            two_j: j,
            two_m1: m1,
            two_m2: m2,
            two_m: m,
        } = *self;
        j1 >= 0
            && j2 >= 0
            && j >= 0
            && m1.abs() <= j1
            && m2.abs() <= j2
            && m.abs() <= j
            && even(j1 - m1)
            && even(j2 - m2)
            && even(j - m)
            && m == m1 + m2
            && even(j1 + j2 - j)
            && j <= j1 + j2
            && j >= (j1 - j2).abs()
    }

    /// The monomial exponents this coupling corresponds to:
    /// `alpha = (j1-m1, j1+m1)`, `beta = (j2-m2, j2+m2)`, `k = j1+j2-j`.
    pub fn to_spec(&self) -> Option<MonomialSpec> {
        if !self.is_physical() {
            return None;
        }
        let half = |x: i64| (x / 2) as u32;
        MonomialSpec::new(
            half(self.two_j1 - self.two_m1),
            half(self.two_j1 + self.two_m1),
            half(self.two_j2 - self.two_m2),
            half(self.two_j2 + self.two_m2),
            half(self.two_j1 + self.two_j2 - self.two_j),
        )
        .ok()
    }

    pub fn from_spec(spec: &MonomialSpec) -> Self {
        let (a1, a2, b1, b2, k) = (
            spec.alpha1 as i64,
            spec.alpha2 as i64,
            spec.beta1 as i64,
            spec.beta2 as i64,
            spec.k as i64,
        );
        AngularData::coupled(a1 + a2, b1 + b2, a1 + a2 + b1 + b2 - 2 * k, a2 - a1, b2 - b1)
    }

    /// All physical couplings with `2 j_i <= max_two_j`.
    pub fn sweep(max_two_j: i64) -> Vec<AngularData> {
        let mut out = Vec::new();
        for j1 in 0..=max_two_j {
            for j2 in 0..=max_two_j {
                for j in 0..=max_two_j {
                    for m1 in (-j1..=j1).step_by(2) {
                        for m2 in (-j2..=j2).step_by(2) {
                            let ad = AngularData::coupled(j1, j2, j, m1, m2);
                            if ad.is_physical() {
                                out.push(ad);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

fn fq(n: i64) -> BigInt {
    factorial(n as u32)
}

/// `C^{j1 j2 j}_{m1 m2 m}` from `N` and the factorial normalization; exact zero
/// outside the physical domain.
pub fn clebsch_gordan(ad: &AngularData) -> SignedSquare {
    let Some(spec) = ad.to_spec() else {
        return SignedSquare::zero();
    };
    let n = n_coeff(&spec);
    if n.is_zero() {
        return SignedSquare::zero();
    }
    let k = spec.k as i64;
    let (da, db) = (spec.deg_a() as i64, spec.deg_b() as i64);
    let (j_minus_m, j_plus_m) = ((ad.two_j - ad.two_m) / 2, (ad.two_j + ad.two_m) / 2);
    let pref = fq(da) * fq(db);
    let mut square_num = &pref * &pref * BigInt::from(ad.two_j + 1) * fq(j_minus_m) * fq(j_plus_m);
    let square_den = fq(da + db - k + 1)
        * fq(da - k)
        * fq(db - k)
        * fq(k)
        * fq(spec.alpha1 as i64)
        * fq(spec.alpha2 as i64)
        * fq(spec.beta1 as i64)
        * fq(spec.beta2 as i64);
    square_num *= n.numer() * n.numer();
    let square = Rational::new(square_num, square_den * n.denom() * n.denom());
    let mut sign = signum(&n);
    if k % 2 == 1 {
        sign = -sign;
    }
    SignedSquare::new(sign, square)
}

/// The 3j-symbol `(j1 j2 j; m1 m2 -m) = (-1)^(j1-j2+m) (2j+1)^(-1/2) C^{j1 j2 j}_{m1 m2 m}`.
pub fn wigner_3j(ad: &AngularData) -> SignedSquare {
    let c = clebsch_gordan(ad);
    if c.is_zero() {
        return c;
    }
    let phase = (ad.two_j1 - ad.two_j2 + ad.two_m) / 2;
    let s = if phase.rem_euclid(2) == 0 { c.sign() } else { -c.sign() };
    SignedSquare::new(s, c.square() / Rational::from_integer(BigInt::from(ad.two_j + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn simple_values() {
        assert!(clebsch_gordan(&AngularData::coupled(2, 2, 2, 0, 0)).is_zero());
        let c = clebsch_gordan(&AngularData::coupled(2, 2, 4, 0, 0));
        assert_eq!(c, SignedSquare::new(1, ratio(2, 3)));
        let w = wigner_3j(&AngularData::coupled(2, 2, 4, 0, 0));
        assert_eq!(w.square(), &ratio(2, 15));
    }

    #[test]
    fn stretched_coupling_is_one() {
        for j1 in 0..6 {
            for j2 in 0..6 {
                let ad = AngularData::coupled(j1, j2, j1 + j2, j1, j2);
                assert_eq!(clebsch_gordan(&ad), SignedSquare::one());
            }
        }
    }

    #[test]
    fn out_of_domain_is_zero() {
        assert!(clebsch_gordan(&AngularData::coupled(2, 2, 6, 0, 0)).is_zero());
        assert!(clebsch_gordan(&AngularData::coupled(1, 2, 2, 1, 0)).is_zero());
        assert!(wigner_3j(&AngularData::new(2, 2, 2, 2, 2, 0)).is_zero());
        assert!(clebsch_gordan(&AngularData::coupled(2, 2, 2, 4, 0)).is_zero());
    }

    #[test]
    fn spec_mapping_round_trips() {
        for spec in MonomialSpec::all_up_to(3) {
            if spec.alpha1 + spec.beta1 < spec.k || spec.alpha2 + spec.beta2 < spec.k {
                continue;
            }
            let ad = AngularData::from_spec(&spec);
            assert_eq!(ad.to_spec(), Some(spec));
        }
    }

    #[test]
    fn signed_square_display() {
        assert_eq!(SignedSquare::new(-1, ratio(2, 3)).to_string(), "-sqrt(2/3)");
        assert_eq!(SignedSquare::zero().to_string(), "0");
        assert_eq!(SignedSquare::new(1, ratio(4, 9)).to_rational(), Some(ratio(2, 3)));
    }
}
