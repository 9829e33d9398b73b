//! Binary forms `sum_i c_i x0^(d-i) x1^i` in the plain monomial basis.
//!
//! [`BinForm`] is generic over its coefficient ring so the same covariant code
//! runs on rational forms and on forms whose coefficients are indeterminates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{differentiate, parse_poly_with_vars, MultiPoly, VarSet};
use crate::rational::{binomial, falling, format_rational, Rational};

/// Ring operations a coefficient type must provide.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_coeff() -> Self;
    fn one_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn from_rational(q: Rational) -> Self;
}

impl Coeff for Rational {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn one_coeff() -> Self {
        One::one()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
}

impl Coeff for MultiPoly {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn one_coeff() -> Self {
        One::one()
    }
    fn is_zero_coeff(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        MultiPoly::scale(self, q)
    }
    fn from_rational(q: Rational) -> Self {
        MultiPoly::from_rational(q)
    }
}

/// Homogeneous form of degree `coeffs.len() - 1`; entry `i` multiplies
/// `x0^(d-i) x1^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinForm<C> {
    coeffs: Vec<C>,
}

pub type BinaryForm = BinForm<Rational>;

fn q(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

impl<C: Coeff> BinForm<C> {
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a form needs at least one coefficient".into()));
        }
        Ok(BinForm { coeffs })
    }

    pub fn zero(degree: u32) -> Self {
        BinForm {
            coeffs: vec![C::zero_coeff(); degree as usize + 1],
        }
    }

    pub fn constant(c: C) -> Self {
        BinForm { coeffs: vec![c] }
    }

    /// `c x0^(d-i) x1^i`.
    pub fn monomial(degree: u32, i: u32, c: C) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[i as usize] = c;
        f
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32) -> &C {
        &self.coeffs[i as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero_coeff)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BinForm<D> {
        BinForm {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|c| c.scale(s))
    }

    pub fn times_coeff(&self, s: &C) -> Self {
        self.map(|c| c.times(s))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_degree(other)?;
        Ok(BinForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_degree(other)?;
        Ok(BinForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    fn check_same_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::InvalidParameter(format!(
                "cannot add forms of degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = BinForm::constant(C::one_coeff());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `d^(mu+nu) / dx0^mu dx1^nu`; the zero constant when the order exceeds the degree.
    pub fn partial(&self, mu: u32, nu: u32) -> Self {
        let d = self.degree();
        if mu + nu > d {
            return BinForm::zero(0);
        }
        let nd = d - mu - nu;
        let coeffs = (0..=nd)
            .map(|j| {
                // x0^(nd-j) x1^j comes from x0^(nd-j+mu) x1^(j+nu), index i = j + nu
                let i = j + nu;
                let f = falling(d - i, mu) * falling(i, nu);
                self.coeffs[i as usize].scale(&q(f))
            })
            .collect();
        BinForm { coeffs }
    }

    /// `A(g00 x0 + g01 x1, g10 x0 + g11 x1)`.
    pub fn substitute(&self, g: &[[Rational; 2]; 2]) -> Self {
        let d = self.degree();
        let l0 = BinForm {
            coeffs: vec![C::from_rational(g[0][0].clone()), C::from_rational(g[0][1].clone())],
        };
        let l1 = BinForm {
            coeffs: vec![C::from_rational(g[1][0].clone()), C::from_rational(g[1][1].clone())],
        };
        let p0: Vec<Self> = powers(&l0, d);
        let p1: Vec<Self> = powers(&l1, d);
        let mut acc = BinForm::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_coeff() {
                continue;
            }
            let term = (&p0[d as usize - i] * &p1[i]).times_coeff(c);
            acc = &acc + &term;
        }
        acc
    }
}

fn powers<C: Coeff>(l: &BinForm<C>, n: u32) -> Vec<BinForm<C>> {
    let mut out = vec![BinForm::constant(C::one_coeff())];
    for k in 1..=n as usize {
        let next = &out[k - 1] * l;
        out.push(next);
    }
    out
}

impl<'a, C: Coeff> Add<&'a BinForm<C>> for &'a BinForm<C> {
    type Output = BinForm<C>;

    /// Panics on mismatched degrees; see [`BinForm::try_add`].
    fn add(self, rhs: &BinForm<C>) -> BinForm<C> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, C: Coeff> Sub<&'a BinForm<C>> for &'a BinForm<C> {
    type Output = BinForm<C>;

    fn sub(self, rhs: &BinForm<C>) -> BinForm<C> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, C: Coeff> Mul<&'a BinForm<C>> for &'a BinForm<C> {
    type Output = BinForm<C>;

    fn mul(self, rhs: &BinForm<C>) -> BinForm<C> {
        let mut coeffs = vec![C::zero_coeff(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero_coeff() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        BinForm { coeffs }
    }
}

impl<C: Coeff> Neg for &BinForm<C> {
    type Output = BinForm<C>;
    fn neg(self) -> BinForm<C> {
        self.map(C::negate)
    }
}

impl BinaryForm {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinForm {
            coeffs: coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        }
    }

    /// The form `x0^(d-i) x1^i`.
    pub fn x_monomial(d: u32, i: u32) -> Self {
        BinForm::monomial(d, i, Rational::one())
    }

    /// Binomially scaled coefficients `alpha_i` with `c_i = binom(d, i) alpha_i`.
    pub fn scaled_coeffs(&self) -> Vec<Rational> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / q(binomial(d, i as u32)))
            .collect()
    }

    pub fn from_scaled_coeffs(alphas: Vec<Rational>) -> Result<Self> {
        let d = alphas.len().saturating_sub(1) as u32;
        BinForm::new(
            alphas
                .into_iter()
                .enumerate()
                .map(|(i, a)| a * q(binomial(d, i as u32)))
                .collect(),
        )
    }

    /// Reads a form in `x0, x1` from the text format or the polynomial JSON format.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let p = if t.starts_with('{') {
            MultiPoly::from_json_str(t)?
        } else {
            parse_poly_with_vars(t, &[VarSet::binary("x")])?
        };
        BinaryForm::from_poly(&p, "x", None)
    }

    /// `(c0 x0 + c1 x1)`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        BinForm { coeffs: vec![c0, c1] }
    }

    pub fn to_poly(&self, x: &VarSet) -> MultiPoly {
        let d = self.degree();
        MultiPoly::from_terms(
            vec![x.clone()],
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![d - i as u32, i as u32], c.clone())),
        )
        .expect("binary exponent vectors have length two")
    }

    /// Reads a homogeneous polynomial in the binary set `x`; `degree` fixes
    /// the formal degree of the zero polynomial.
    pub fn from_poly(p: &MultiPoly, x: &str, degree: Option<u32>) -> Result<Self> {
        let (off, arity) = p.offset_of(x)?;
        if arity != 2 {
            return Err(Error::Arity {
                name: x.to_string(),
                expected: 2,
                found: arity,
            });
        }
        if p.vars().len() != 1 && p.prune_vars().vars().iter().any(|v| v.name != x) {
            return Err(Error::InvalidParameter(format!(
                "form mentions variables other than {x}"
            )));
        }
        let d = match (p.homogeneous_degree_in(x)?, degree) {
            (Some(d), Some(want)) if d != want => {
                return Err(Error::InvalidParameter(format!(
                    "form has degree {d}, expected {want}"
                )))
            }
            (Some(d), _) => d,
            (None, Some(want)) if p.is_zero() => want,
            (None, None) if p.is_zero() => 0,
            (None, _) => return Err(Error::NotHomogeneous(x.to_string())),
        };
        let mut f = BinaryForm::zero(d);
        for (m, c) in p.terms() {
            f.coeffs[m.0[off + 1] as usize] = c.clone();
        }
        Ok(f)
    }

    pub fn evaluate(&self, x0: &Rational, x1: &Rational) -> Rational {
        let d = self.degree() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(x0.clone(), d - i) * num_traits::pow(x1.clone(), i))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Power of `x1` dividing the form (none for the zero form).
    fn x1_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !Zero::is_zero(c))
    }

    /// Dehomogenized at `x1 = 1`, as ascending powers of `t = x0`.
    fn dehomogenize(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        while v.len() > 1 && Zero::is_zero(v.last().expect("nonempty")) {
            v.pop();
        }
        v
    }

    fn homogenize(t: &[Rational], degree: u32) -> Self {
        let mut f = BinaryForm::zero(degree);
        for (k, c) in t.iter().enumerate() {
            // t^k -> x0^k x1^(degree-k)
            f.coeffs[degree as usize - k] = c.clone();
        }
        f
    }

    /// Greatest common divisor, normalized so the graded-lex leading
    /// coefficient is one.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let v = self.x1_valuation().unwrap().min(other.x1_valuation().unwrap());
        let g = uni_gcd(self.dehomogenize(), other.dehomogenize());
        let deg_t = (g.len() - 1) as u32;
        let g = BinaryForm::homogenize(&g, deg_t);
        (&g * &BinaryForm::x_monomial(v as u32, v as u32)).monic()
    }

    /// Scales so the first nonzero coefficient (graded-lex leading term) is one.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().find(|c| !Zero::is_zero(*c)) {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroForm);
        }
        if divisor.degree() > self.degree() {
            return if self.is_zero() {
                Ok(BinaryForm::zero(0))
            } else {
                Err(Error::InexactDivision)
            };
        }
        let qd = self.degree() - divisor.degree();
        // long division on coefficient vectors, x0-leading
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); qd as usize + 1];
        let lead_pos = divisor
            .coeffs
            .iter()
            .position(|c| !Zero::is_zero(c))
            .expect("nonzero divisor");
        let lead = &divisor.coeffs[lead_pos];
        for i in 0..=qd as usize {
            let c = &rem[i + lead_pos] / lead;
            if Zero::is_zero(&c) {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[i + j] -= t;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !Zero::is_zero(c)) {
            return Err(Error::InexactDivision);
        }
        Ok(BinForm { coeffs: quot })
    }

    /// `true` when the two forms agree up to a nonzero scalar (or are both zero).
    pub fn proportional(&self, other: &Self) -> bool {
        self.proportionality(other).is_some() || (self.is_zero() && other.is_zero())
    }

    /// The scalar `c` with `self = c * other`, if both are nonzero and one exists.
    pub fn proportionality(&self, other: &Self) -> Option<Rational> {
        if self.degree() != other.degree() || self.is_zero() || other.is_zero() {
            return None;
        }
        let i = other.coeffs.iter().position(|c| !Zero::is_zero(c))?;
        let c = &self.coeffs[i] / &other.coeffs[i];
        (other.scale(&c) == *self).then_some(c)
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.len() > 1 && Zero::is_zero(v.last().expect("nonempty")) {
        v.pop();
    }
}

/// Euclid over Q on ascending coefficient vectors.
fn uni_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    trim(&mut a);
    trim(&mut b);
    let is_zero = |v: &Vec<Rational>| v.len() == 1 && Zero::is_zero(&v[0]);
    while !is_zero(&b) {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().expect("nonempty").clone();
    a.iter().map(|c| c / &lead).collect()
}

fn uni_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !(r.len() == 1 && Zero::is_zero(&r[0])) {
        let dr = r.len() - 1;
        let c = &r[dr] / lead;
        for (j, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[dr - db + j] -= t;
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(Rational::zero());
        }
    }
    r
}

/// Partial polarization `(y0 d/dx0 + y1 d/dx1)^e B`, bidegree `(d-e, e)` in `(x, y)`.
pub fn polarize(b: &BinaryForm, e: u32, yset: &VarSet) -> Result<MultiPoly> {
    let d = b.degree();
    if e > d {
        return Err(Error::PolarizationOrder { e, degree: d });
    }
    let x = VarSet::binary("x");
    if yset.arity != 2 || yset.name == x.name {
        return Err(Error::InvalidParameter(format!(
            "polarization needs a binary set other than x, got {}",
            yset.name
        )));
    }
    let y0 = MultiPoly::var(yset, 0)?;
    let y1 = MultiPoly::var(yset, 1)?;
    let mut acc = b.to_poly(&x).embed(vec![x.clone(), yset.clone()])?;
    for _ in 0..e {
        let d0 = differentiate(&acc, "x", 0, 1)?;
        let d1 = differentiate(&acc, "x", 1, 1)?;
        acc = &(&y0 * &d0) + &(&y1 * &d1);
    }
    Ok(acc)
}

/// Forms whose coefficients are polynomials, typically indeterminates.
pub type SymbolicForm = BinForm<MultiPoly>;

impl SymbolicForm {
    /// `sum_i name_i x0^(d-i) x1^i` with independent indeterminates `name_0..name_d`.
    pub fn generic(name: &str, degree: u32) -> Self {
        let set = VarSet::new(name, degree as usize + 1);
        BinForm {
            coeffs: (0..=degree as usize)
                .map(|i| MultiPoly::var(&set, i).expect("index in range"))
                .collect(),
        }
    }

    /// The form as one polynomial in its coefficient variables and `x`.
    pub fn to_poly(&self, x: &VarSet) -> MultiPoly {
        let d = self.degree();
        let mut acc = MultiPoly::zero(vec![x.clone()]);
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = MultiPoly::from_terms(vec![x.clone()], [(vec![d - i as u32, i as u32], Rational::one())])
                .expect("binary exponent vectors have length two");
            acc = &acc + &(c * &m);
        }
        acc
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(&VarSet::binary("x")))
    }
}

/// `[c0, c1, ...]` as exact strings, used by reports.
pub fn coeff_strings(f: &BinaryForm) -> Vec<String> {
    f.coeffs().iter().map(format_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{linear_form, parse_poly_with_vars};
    use crate::rational::{factorial, int, ratio};

    #[test]
    fn partial_derivatives() {
        // x0^2 x1 -> d/dx0 = 2 x0 x1
        let f = BinaryForm::x_monomial(3, 1);
        assert_eq!(f.partial(1, 0), BinaryForm::from_ints(&[0, 2, 0]));
        assert_eq!(f.partial(0, 1), BinaryForm::from_ints(&[1, 0, 0]));
        assert!(f.partial(0, 2).is_zero());
        assert!(f.partial(2, 2).is_zero());
    }

    #[test]
    fn scaled_view_round_trips() {
        let f = BinaryForm::from_ints(&[1, 4, 6, 4, 1]);
        assert!(f.scaled_coeffs().iter().all(|a| *a == int(1)));
        assert_eq!(BinaryForm::from_scaled_coeffs(f.scaled_coeffs()).unwrap(), f);
    }

    #[test]
    fn poly_conversion() {
        let x = VarSet::binary("x");
        let f = BinaryForm::from_ints(&[3, 0, -1]);
        let p = f.to_poly(&x);
        assert_eq!(p.to_string(), "3*x0^2 - x1^2");
        assert_eq!(BinaryForm::from_poly(&p, "x", None).unwrap(), f);
        let bad = parse_poly_with_vars("x0^2 + x1", &[x]).unwrap();
        assert!(BinaryForm::from_poly(&bad, "x", None).is_err());
    }

    #[test]
    fn gcd_and_division() {
        // x0^3 (x0 + x1)^2 and its x0-derivative share x0^2 (x0 + x1)
        let l = BinaryForm::linear(int(1), int(1));
        let f = &BinaryForm::x_monomial(3, 0) * &l.pow(2);
        let g = f.gcd(&f.partial(1, 0));
        assert_eq!(g, &BinaryForm::x_monomial(2, 0) * &l);
        assert_eq!(f.div_exact(&g).unwrap().degree(), 2);
        assert!(f.div_exact(&BinaryForm::from_ints(&[1, 0, 1])).is_err());
        let h = BinaryForm::x_monomial(2, 2);
        assert_eq!(h.gcd(&BinaryForm::x_monomial(3, 2)), h);
    }

    #[test]
    fn substitution_matches_multipoly() {
        let f = BinaryForm::from_ints(&[1, -2, 0, 5]);
        let g = [[int(2), int(1)], [ratio(1, 3), int(1)]];
        let x = VarSet::binary("x");
        let m = vec![
            vec![g[0][0].clone(), g[0][1].clone()],
            vec![g[1][0].clone(), g[1][1].clone()],
        ];
        let via_poly = f.to_poly(&x).substitute_linear("x", &m).unwrap();
        assert_eq!(f.substitute(&g).to_poly(&x), via_poly);
    }

    #[test]
    fn polarization() {
        let y = VarSet::binary("y");
        let x = VarSet::binary("x");
        let sq = BinaryForm::x_monomial(2, 0);
        let p = polarize(&sq, 1, &y).unwrap();
        assert_eq!(p, parse_poly_with_vars("2*x0*y0", &[x.clone(), y.clone()]).unwrap());
        let f = BinaryForm::from_ints(&[1, 2, 3]);
        assert_eq!(polarize(&f, 0, &y).unwrap(), f.to_poly(&x));
        assert!(polarize(&f, 3, &y).is_err());
    }

    #[test]
    fn polarization_of_a_symbolic_power() {
        // (y.d/dx)^e b_x^d = d!/(d-e)! b_x^(d-e) b_y^e, evaluated letterwise
        let (x, y, b) = (VarSet::binary("x"), VarSet::binary("y"), VarSet::binary("b"));
        let bx = linear_form(&b, &x).unwrap();
        let by = linear_form(&b, &y).unwrap();
        for d in 0..=5u32 {
            for e in 0..=d {
                let mut acc = bx.pow(d);
                for _ in 0..e {
                    let d0 = differentiate(&acc, "x", 0, 1).unwrap();
                    let d1 = differentiate(&acc, "x", 1, 1).unwrap();
                    acc = &(&MultiPoly::var(&y, 0).unwrap() * &d0)
                        + &(&MultiPoly::var(&y, 1).unwrap() * &d1);
                }
                let c = Rational::new(factorial(d), factorial(d - e));
                assert_eq!(acc, (&bx.pow(d - e) * &by.pow(e)).scale(&c));
            }
        }
    }
}
