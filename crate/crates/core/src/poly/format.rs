//! Text and JSON encodings of [`MultiPoly`].
//!
//! Text: `3/2*x0^5 - x0^3*x1^2`, terms in descending graded-lex order, a
//! variable printed as its set name followed by the component index.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, MultiPoly, VarSet};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

fn monomial_text(vars: &[VarSet], m: &Monomial) -> String {
    let mut parts = Vec::new();
    let mut idx = 0;
    for v in vars {
        for i in 0..v.arity {
            match m.0[idx] {
                0 => {}
                1 => parts.push(format!("{}{}", v.name, i)),
                e => parts.push(format!("{}{}^{}", v.name, i, e)),
            }
            idx += 1;
        }
    }
    parts.join("*")
}

pub(super) fn to_text(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if n == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = monomial_text(p.vars(), m);
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn split_var(token: &str) -> Result<(String, usize)> {
    let split = token
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Parse(format!("variable {token:?} has no component index")))?;
    let (name, idx) = token.split_at(split);
    if name.is_empty() || !name.chars().all(|c| c.is_alphabetic() || c == '_') {
        return Err(Error::Parse(format!("bad variable name {token:?}")));
    }
    let idx = idx
        .parse()
        .map_err(|_| Error::Parse(format!("bad component index in {token:?}")))?;
    Ok((name.to_string(), idx))
}

type RawTerm = (Rational, Vec<((String, usize), u32)>);

fn parse_terms(text: &str) -> Result<Vec<RawTerm>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        let binary_sign = (ch == '+' || ch == '-') && !matches!(prev, None | Some('^'));
        if binary_sign {
            chunks.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    chunks.push((negative, current));
    let mut out = Vec::new();
    for (neg, chunk) in chunks {
        if chunk.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let mut coeff = if neg { -Rational::one() } else { Rational::one() };
        let mut factors = Vec::new();
        for factor in chunk.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {chunk:?}")));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_rational(factor)?;
                continue;
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (b, e)
                }
                None => (factor, 1),
            };
            factors.push((split_var(base)?, exp));
        }
        out.push((coeff, factors));
    }
    Ok(out)
}

fn assemble(vars: Vec<VarSet>, raw: Vec<RawTerm>) -> Result<MultiPoly> {
    let vars = Arc::new(vars);
    let n: usize = vars.iter().map(|v| v.arity).sum();
    let mut p = MultiPoly::zero_in(vars.clone());
    for (c, factors) in raw {
        let mut e = vec![0u32; n];
        for ((name, idx), exp) in factors {
            let pos = p
                .index_of(&name, idx)
                .map_err(|_| Error::Parse(format!("unknown variable {name}{idx}")))?;
            e[pos] += exp;
        }
        p.add_term(Monomial(e), c);
    }
    Ok(p)
}

/// Parses text over an explicit variable list.
pub fn parse_poly_with_vars(text: &str, vars: &[VarSet]) -> Result<MultiPoly> {
    assemble(vars.to_vec(), parse_terms(text)?)
}

/// Parses text, inferring variable sets in order of first appearance with
/// arity one more than the largest component index seen.
pub fn parse_poly(text: &str) -> Result<MultiPoly> {
    let raw = parse_terms(text)?;
    let mut vars: Vec<VarSet> = Vec::new();
    for (_, factors) in &raw {
        for ((name, idx), _) in factors {
            match vars.iter_mut().find(|v| &v.name == name) {
                Some(v) => v.arity = v.arity.max(idx + 1),
                None => vars.push(VarSet::new(name.clone(), idx + 1)),
            }
        }
    }
    assemble(vars, raw)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<(String, usize)>,
    pub terms: Vec<TermJson>,
}

pub(crate) fn term_json(exp: Vec<u32>, c: &Rational) -> TermJson {
    TermJson {
        exp,
        num: c.numer().to_string(),
        den: c.denom().to_string(),
    }
}

pub(crate) fn term_coeff(t: &TermJson) -> Result<Rational> {
    let num: BigInt = t
        .num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {:?}", t.num)))?;
    let den: BigInt = t
        .den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {:?}", t.den)))?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

impl MultiPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars().iter().map(|v| (v.name.clone(), v.arity)).collect(),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| term_json(m.0.clone(), c))
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        let vars: Vec<VarSet> = j.vars.iter().map(|(n, a)| VarSet::new(n.clone(), *a)).collect();
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), term_coeff(t)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(vars, terms)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("polynomial JSON is serializable")
    }

    pub fn from_json_str(s: &str) -> Result<MultiPoly> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        MultiPoly::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn prints_canonically() {
        let x = VarSet::binary("x");
        let p = parse_poly_with_vars("- x0^3*x1^2 + 3/2*x0^5", std::slice::from_ref(&x)).unwrap();
        assert_eq!(p.to_string(), "3/2*x0^5 - x0^3*x1^2");
        let q = parse_poly_with_vars("-x1 + 2", &[x]).unwrap();
        assert_eq!(q.to_string(), "-x1 + 2");
    }

    #[test]
    fn infers_variable_sets() {
        let p = parse_poly("x0*u2 + 2*x1").unwrap();
        assert_eq!(p.vars(), &[VarSet::new("x", 2), VarSet::new("u", 3)]);
        assert_eq!(p.coeff(&[1, 0, 0, 0, 1]), ratio(1, 1));
    }

    #[test]
    fn json_shape() {
        let p = parse_poly_with_vars("3/2*x0^5", &[VarSet::binary("x")]).unwrap();
        assert_eq!(
            p.to_json_string(),
            r#"{"vars":[["x",2]],"terms":[{"exp":[5,0],"num":"3","den":"2"}]}"#
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("x0 +").is_err());
        assert!(parse_poly("x").is_err());
        assert!(parse_poly("x0^a").is_err());
        assert!(parse_poly_with_vars("y0", &[VarSet::binary("x")]).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let term = (
            prop::collection::vec(0u32..4, 5),
            -20i64..20,
            1i64..6,
        );
        prop::collection::vec(term, 0..8).prop_map(|ts| {
            let vars = vec![VarSet::binary("x"), VarSet::ternary("u")];
            MultiPoly::from_terms(vars, ts.into_iter().map(|(e, n, d)| (e, ratio(n, d)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(p in arb_poly()) {
            let vars = p.vars().to_vec();
            prop_assert_eq!(parse_poly_with_vars(&p.to_string(), &vars).unwrap(), p.clone());
            prop_assert_eq!(MultiPoly::from_json_str(&p.to_json_string()).unwrap(), p);
        }
    }
}
