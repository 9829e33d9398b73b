//! Differential operators acting on [`MultiPoly`].

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{merge_vars, Monomial, MultiPoly, VarSet};
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial_q, falling, Rational};

fn falling_q(n: u32, k: u32) -> Rational {
    Rational::from_integer(falling(n, k))
}

/// Iterated partial derivative with respect to `name{component}`.
pub fn differentiate(p: &MultiPoly, name: &str, component: usize, order: u32) -> Result<MultiPoly> {
    let idx = p.index_of(name, component)?;
    if order == 0 {
        return Ok(p.clone());
    }
    let mut acc = HashMap::new();
    for (m, c) in p.terms() {
        let e = m.0[idx];
        if e < order {
            continue;
        }
        let mut m2 = m.clone();
        m2.0[idx] -= order;
        acc.insert(m2, c * falling_q(e, order));
    }
    Ok(MultiPoly::from_hash(p.vars_arc().clone(), acc))
}

/// Cayley's Omega operator `d2/dx0 dy1 - d2/dx1 dy0` raised to the `k`-th power.
pub fn omega_power(p: &MultiPoly, xset: &str, yset: &str, k: u32) -> Result<MultiPoly> {
    let (xo, xa) = p.offset_of(xset)?;
    let (yo, ya) = p.offset_of(yset)?;
    for (name, a) in [(xset, xa), (yset, ya)] {
        if a != 2 {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: 2,
                found: a,
            });
        }
    }
    if xset == yset {
        return Err(Error::InvalidParameter("Omega needs two distinct sets".into()));
    }
    if k == 0 {
        return Ok(p.clone());
    }
    let (x0, x1, y0, y1) = (xo, xo + 1, yo, yo + 1);
    let binoms: Vec<Rational> = (0..=k)
        .map(|i| {
            let b = Rational::from_integer(binomial(k, i));
            if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect();
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for (m, c) in p.terms() {
        let e = &m.0;
        // (d_x0 d_y1)^(k-i) (d_x1 d_y0)^i with sign (-1)^i
        for (i, b) in binoms.iter().enumerate() {
            let i = i as u32;
            let j = k - i;
            if e[x0] < j || e[y1] < j || e[x1] < i || e[y0] < i {
                continue;
            }
            let f = falling(e[x0], j) * falling(e[y1], j) * falling(e[x1], i) * falling(e[y0], i);
            let mut m2 = m.clone();
            m2.0[x0] -= j;
            m2.0[y1] -= j;
            m2.0[x1] -= i;
            m2.0[y0] -= i;
            let c2 = c * b * Rational::from_integer(f);
            match acc.get_mut(&m2) {
                Some(v) => *v += c2,
                None => {
                    acc.insert(m2, c2);
                }
            }
        }
    }
    Ok(MultiPoly::from_hash(p.vars_arc().clone(), acc))
}

/// Substitutes the `to` variables for the `from` variables; the result no
/// longer declares `from`.
pub fn identify(p: &MultiPoly, from: &str, to: &str) -> Result<MultiPoly> {
    let (fo, fa) = p.offset_of(from)?;
    let (to_off, ta) = p.offset_of(to)?;
    if fa != ta {
        return Err(Error::Arity {
            name: from.to_string(),
            expected: ta,
            found: fa,
        });
    }
    let vars: Vec<VarSet> = p.vars().iter().filter(|v| v.name != from).cloned().collect();
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for (m, c) in p.terms() {
        let mut e = m.0.clone();
        for i in 0..fa {
            e[to_off + i] += e[fo + i];
        }
        e.drain(fo..fo + fa);
        *acc.entry(Monomial(e)).or_insert_with(Rational::zero) += c;
    }
    Ok(MultiPoly::from_hash(Arc::new(vars), acc))
}

/// Applies `(1/m!) op(d/dl0, d/dl1, ...)` to `target`, where `op` is
/// homogeneous of degree `m` in the letter `letter`. Other variables of `op`
/// act as coefficients. The letter is dropped from the result when no term
/// still mentions it.
pub fn apply_letter(op: &MultiPoly, letter: &str, target: &MultiPoly) -> Result<MultiPoly> {
    if op.is_zero() {
        return Ok(MultiPoly::zero_in(target.vars_arc().clone()));
    }
    if !op.has_varset(letter) {
        return Ok(op * target);
    }
    let m = op
        .homogeneous_degree_in(letter)?
        .ok_or_else(|| Error::NotHomogeneous(letter.to_string()))?;
    let vars = merge_vars(target.vars_arc(), op.vars_arc())?;
    let op = op.embed_in(&vars)?;
    let target = target.embed_in(&vars)?;
    let (lo, la) = op.offset_of(letter)?;
    let norm = factorial_q(m);
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for (f, d) in target.terms() {
        for (e, c) in op.terms() {
            let mut fits = true;
            for i in lo..lo + la {
                if f.0[i] < e.0[i] {
                    fits = false;
                    break;
                }
            }
            if !fits {
                continue;
            }
            let mut weight = BigInt::one();
            let mut out = f.0.clone();
            for (i, slot) in out.iter_mut().enumerate() {
                if i >= lo && i < lo + la {
                    weight *= falling(f.0[i], e.0[i]);
                    *slot -= e.0[i];
                } else {
                    *slot += e.0[i];
                }
            }
            let coeff = c * d * Rational::from_integer(weight);
            let key = Monomial(out);
            match acc.get_mut(&key) {
                Some(v) => *v += coeff,
                None => {
                    acc.insert(key, coeff);
                }
            }
        }
    }
    for v in acc.values_mut() {
        *v /= &norm;
    }
    let result = MultiPoly::from_hash(vars.clone(), acc);
    let still_used = result
        .terms()
        .any(|(m, _)| m.0[lo..lo + la].iter().any(|&x| x > 0));
    if still_used {
        Ok(result)
    } else {
        let keep: Vec<VarSet> = vars.iter().filter(|v| v.name != letter).cloned().collect();
        result.embed(keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{bracket2, linear_form, parse_poly_with_vars};
    use crate::rational::{factorial, int};

    fn xs() -> VarSet {
        VarSet::binary("x")
    }
    fn ys() -> VarSet {
        VarSet::binary("y")
    }

    fn xy(text: &str) -> MultiPoly {
        parse_poly_with_vars(text, &[xs(), ys()]).unwrap()
    }

    #[test]
    fn power_rule() {
        let p = xy("x0^2*x1");
        assert_eq!(differentiate(&p, "x", 0, 1).unwrap(), xy("2*x0*x1"));
        assert_eq!(differentiate(&p, "x", 0, 0).unwrap(), p);
        assert!(differentiate(&xy("x1^3"), "x", 0, 2).unwrap().is_zero());
        assert!(differentiate(&p, "z", 0, 1).is_err());
    }

    #[test]
    fn omega_on_small_monomials() {
        assert_eq!(omega_power(&xy("x0*y1"), "x", "y", 1).unwrap(), xy("1"));
        assert!(omega_power(&xy("x0*y0"), "x", "y", 1).unwrap().is_zero());
        let t = MultiPoly::var(&VarSet::ternary("t"), 0).unwrap();
        assert!(omega_power(&(&t * &xy("x0")), "x", "t", 1).is_err());
    }

    #[test]
    fn omega_leibniz_law_for_symbolic_letters() {
        // Omega^k a_x^m b_y^n |_{y=x} = m! n! / ((m-k)! (n-k)!) (a b)^k a_x^(m-k) b_x^(n-k)
        let (a, b) = (VarSet::binary("a"), VarSet::binary("b"));
        let ax = linear_form(&a, &xs()).unwrap();
        let by = linear_form(&b, &ys()).unwrap();
        let bx = linear_form(&b, &xs()).unwrap();
        let ab = bracket2(&a, &b).unwrap();
        for m in 0..=4u32 {
            for n in 0..=4u32 {
                for k in 0..=m.min(n) {
                    let lhs = omega_power(&(&ax.pow(m) * &by.pow(n)), "x", "y", k).unwrap();
                    let lhs = identify(&lhs, "y", "x").unwrap();
                    let c = Rational::new(
                        factorial(m) * factorial(n),
                        factorial(m - k) * factorial(n - k),
                    );
                    let rhs = (&(&ab.pow(k) * &ax.pow(m - k)) * &bx.pow(n - k)).scale(&c);
                    assert_eq!(lhs, rhs, "m={m} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn identify_on_diagonal() {
        assert!(identify(&xy("x0*y1 - x1*y0"), "y", "x").unwrap().is_zero());
        let r = identify(&xy("y0*y1"), "y", "x").unwrap();
        assert_eq!(r.vars(), &[xs()]);
        assert_eq!(r.coeff(&[1, 1]), int(1));
        let t = MultiPoly::var(&VarSet::ternary("t"), 0).unwrap();
        assert!(identify(&(&t * &xy("x0")), "t", "x").is_err());
    }

    #[test]
    fn letter_reconstructs_form() {
        // A(x) = (1/m!) A(d/da) a_x^m for A = x0^3 - 2 x0 x1^2
        let a = VarSet::binary("a");
        let op = parse_poly_with_vars("a0^3 - 2*a0*a1^2", std::slice::from_ref(&a)).unwrap();
        let ax3 = linear_form(&a, &xs()).unwrap().pow(3);
        let r = apply_letter(&op, "a", &ax3).unwrap();
        assert_eq!(r, parse_poly_with_vars("x0^3 - 2*x0*x1^2", &[xs()]).unwrap());
        assert!(!r.has_varset("a"));
        let constant = MultiPoly::constant(vec![a.clone()], int(5));
        assert!(apply_letter(&op, "a", &constant).unwrap().is_zero());
    }

    #[test]
    fn letters_commute() {
        let (a, b) = (VarSet::binary("a"), VarSet::binary("b"));
        let opa = parse_poly_with_vars("a0^2 + 3*a0*a1", std::slice::from_ref(&a)).unwrap();
        let opb = parse_poly_with_vars("b1^2 - b0*b1", std::slice::from_ref(&b)).unwrap();
        let target = &(&bracket2(&a, &b).unwrap() * &linear_form(&a, &xs()).unwrap())
            * &linear_form(&b, &xs()).unwrap();
        let one = apply_letter(&opb, "b", &apply_letter(&opa, "a", &target).unwrap()).unwrap();
        let two = apply_letter(&opa, "a", &apply_letter(&opb, "b", &target).unwrap()).unwrap();
        assert_eq!(one, two);
        assert!(!one.is_zero());
    }

    #[test]
    fn non_homogeneous_operator_is_rejected() {
        let a = VarSet::binary("a");
        let op = parse_poly_with_vars("a0^2 + a1", std::slice::from_ref(&a)).unwrap();
        assert!(apply_letter(&op, "a", &linear_form(&a, &xs()).unwrap()).is_err());
    }
}
