//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial declares an ordered list of [`VarSet`]s (a named group of
//! variables such as the binary variables `x0, x1` or a ternary symbolic letter
//! `a0, a1, a2`). Exponent vectors run over the concatenated components.
//! Binary operations between polynomials over different variable lists first
//! merge the lists, keeping the left operand's order and appending the rest.

mod format;
mod ops;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use format::{parse_poly, parse_poly_with_vars, PolyJson, TermJson};
pub(crate) use format::{term_coeff, term_json};
pub use ops::{apply_letter, differentiate, identify, omega_power};

/// A named group of variables `name0, name1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSet {
    pub name: String,
    pub arity: usize,
}

impl VarSet {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        VarSet {
            name: name.into(),
            arity,
        }
    }

    pub fn binary(name: impl Into<String>) -> Self {
        VarSet::new(name, 2)
    }

    pub fn ternary(name: impl Into<String>) -> Self {
        VarSet::new(name, 3)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<Vec<VarSet>>;

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    /// Equal as polynomials; variable sets that only one side declares must
    /// not occur in its terms.
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return self.terms == other.terms;
        }
        match merge_vars(&self.vars, &other.vars) {
            Ok(vars) => {
                let a = self.embed_unchecked(&vars);
                let b = other.embed_unchecked(&vars);
                a.terms == b.terms
            }
            Err(_) => false,
        }
    }
}

impl Eq for MultiPoly {}

pub(crate) fn merge_vars(a: &Vars, b: &Vars) -> Result<Vars> {
    if Arc::ptr_eq(a, b) || a == b {
        return Ok(a.clone());
    }
    let mut out: Vec<VarSet> = a.as_ref().clone();
    for v in b.iter() {
        match out.iter().find(|w| w.name == v.name) {
            Some(w) if w.arity != v.arity => return Err(Error::VarSetConflict(v.name.clone())),
            Some(_) => {}
            None => out.push(v.clone()),
        }
    }
    if out.len() == a.len() {
        Ok(a.clone())
    } else {
        Ok(Arc::new(out))
    }
}

impl MultiPoly {
    pub fn zero(vars: Vec<VarSet>) -> Self {
        Self::zero_in(Arc::new(vars))
    }

    pub fn zero_in(vars: Vars) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<VarSet>, c: Rational) -> Self {
        Self::constant_in(Arc::new(vars), c)
    }

    pub fn constant_in(vars: Vars, c: Rational) -> Self {
        let n = vars.iter().map(|v| v.arity).sum();
        let mut p = MultiPoly::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::constant(Vec::new(), c)
    }

    /// The single variable `name{component}`, declaring only its own set.
    pub fn var(set: &VarSet, component: usize) -> Result<Self> {
        if component >= set.arity {
            return Err(Error::UnknownVariable(format!("{}{}", set.name, component)));
        }
        let mut e = vec![0; set.arity];
        e[component] = 1;
        let mut p = MultiPoly::zero(vec![set.clone()]);
        p.terms.insert(Monomial(e), Rational::one());
        Ok(p)
    }

    /// Builds from explicit terms; zero coefficients are dropped and repeated
    /// exponents are summed.
    pub fn from_terms(
        vars: Vec<VarSet>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let vars = Arc::new(vars);
        let n: usize = vars.iter().map(|v| v.arity).sum();
        let mut p = MultiPoly::zero_in(vars);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    n
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub(crate) fn from_map(vars: Vars, terms: BTreeMap<Monomial, Rational>) -> Self {
        MultiPoly { vars, terms }
    }

    pub(crate) fn from_hash(vars: Vars, acc: HashMap<Monomial, Rational>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &[VarSet] {
        &self.vars
    }

    pub(crate) fn vars_arc(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.iter().map(|v| v.arity).sum()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Offset of a variable set's first component and its arity.
    pub fn offset_of(&self, name: &str) -> Result<(usize, usize)> {
        let mut off = 0;
        for v in self.vars.iter() {
            if v.name == name {
                return Ok((off, v.arity));
            }
            off += v.arity;
        }
        Err(Error::UnknownVariable(name.to_string()))
    }

    pub fn has_varset(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v.name == name)
    }

    pub fn index_of(&self, name: &str, component: usize) -> Result<usize> {
        let (off, arity) = self.offset_of(name)?;
        if component >= arity {
            return Err(Error::UnknownVariable(format!("{name}{component}")));
        }
        Ok(off + component)
    }

    /// Degree range `(min, max)` of the terms in the components of `name`.
    pub fn degree_range_in(&self, name: &str) -> Result<Option<(u32, u32)>> {
        let (off, arity) = self.offset_of(name)?;
        let mut range: Option<(u32, u32)> = None;
        for m in self.terms.keys() {
            let d: u32 = m.0[off..off + arity].iter().sum();
            range = Some(match range {
                None => (d, d),
                Some((lo, hi)) => (lo.min(d), hi.max(d)),
            });
        }
        Ok(range)
    }

    /// The common degree in `name` if every term has the same one.
    pub fn homogeneous_degree_in(&self, name: &str) -> Result<Option<u32>> {
        Ok(match self.degree_range_in(name)? {
            Some((lo, hi)) if lo == hi => Some(lo),
            _ => None,
        })
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn embed_unchecked(&self, target: &Vars) -> MultiPoly {
        if Arc::ptr_eq(&self.vars, target) || self.vars == *target {
            return MultiPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let n: usize = target.iter().map(|v| v.arity).sum();
        // position of each of our components in the target
        let mut map = Vec::with_capacity(self.nvars());
        for v in self.vars.iter() {
            let mut off = 0;
            for w in target.iter() {
                if w.name == v.name {
                    break;
                }
                off += w.arity;
            }
            map.extend(off..off + v.arity);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MultiPoly {
            vars: target.clone(),
            terms,
        }
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// declared set that occurs in a term.
    pub fn embed(&self, target: Vec<VarSet>) -> Result<MultiPoly> {
        self.embed_in(&Arc::new(target))
    }

    pub fn embed_in(&self, target: &Vars) -> Result<MultiPoly> {
        let mut off = 0;
        for v in self.vars.iter() {
            match target.iter().find(|w| w.name == v.name) {
                Some(w) if w.arity != v.arity => {
                    return Err(Error::VarSetConflict(v.name.clone()))
                }
                Some(_) => {}
                None => {
                    let used = self
                        .terms
                        .keys()
                        .any(|m| m.0[off..off + v.arity].iter().any(|&e| e > 0));
                    if used {
                        return Err(Error::UnknownVariable(v.name.clone()));
                    }
                }
            }
            off += v.arity;
        }
        let n: usize = target.iter().map(|v| v.arity).sum();
        let mut offsets = Vec::new();
        for v in self.vars.iter() {
            let mut o = 0;
            let mut found = None;
            for w in target.iter() {
                if w.name == v.name {
                    found = Some(o);
                    break;
                }
                o += w.arity;
            }
            offsets.push(found);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            let mut src = 0;
            for (v, o) in self.vars.iter().zip(&offsets) {
                if let Some(o) = o {
                    e[*o..*o + v.arity].copy_from_slice(&m.0[src..src + v.arity]);
                }
                src += v.arity;
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(MultiPoly {
            vars: target.clone(),
            terms,
        })
    }

    fn aligned(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let vars = merge_vars(&a.vars, &b.vars).unwrap_or_else(|e| panic!("{e}"));
        (a.embed_unchecked(&vars), b.embed_unchecked(&vars))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero_in(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut result = MultiPoly::constant_in(self.vars.clone(), Rational::one());
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

    /// The constant term if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Replaces the components of `name` by `matrix * components`.
    pub fn substitute_linear(&self, name: &str, matrix: &[Vec<Rational>]) -> Result<MultiPoly> {
        let (off, arity) = self.offset_of(name)?;
        if matrix.len() != arity || matrix.iter().any(|row| row.len() != arity) {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: arity,
                found: matrix.len(),
            });
        }
        let n = self.nvars();
        let images: Vec<MultiPoly> = matrix
            .iter()
            .map(|row| {
                let terms = row.iter().enumerate().map(|(j, c)| {
                    let mut e = vec![0; n];
                    e[off + j] = 1;
                    (Monomial(e), c.clone())
                });
                let mut p = MultiPoly::zero_in(self.vars.clone());
                for (m, c) in terms {
                    p.add_term(m, c);
                }
                p
            })
            .collect();
        let mut acc = MultiPoly::zero_in(self.vars.clone());
        let mut power_cache: Vec<Vec<MultiPoly>> = vec![Vec::new(); arity];
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let mut factor = MultiPoly::constant_in(self.vars.clone(), c.clone());
            for i in 0..arity {
                let e = rest[off + i] as usize;
                rest[off + i] = 0;
                let cache = &mut power_cache[i];
                while cache.len() <= e {
                    let next = match cache.last() {
                        None => MultiPoly::constant_in(self.vars.clone(), Rational::one()),
                        Some(last) => last * &images[i],
                    };
                    cache.push(next);
                }
                factor = &factor * &cache[e];
            }
            let mono = MultiPoly::from_map(
                self.vars.clone(),
                BTreeMap::from([(Monomial(rest), Rational::one())]),
            );
            acc = &acc + &(&factor * &mono);
        }
        Ok(acc)
    }

    /// Renames a variable set; the new name must not already be declared.
    pub fn rename(&self, from: &str, to: &str) -> Result<MultiPoly> {
        self.offset_of(from)?;
        if self.has_varset(to) {
            return Err(Error::VarSetConflict(to.to_string()));
        }
        let vars = self
            .vars
            .iter()
            .map(|v| {
                if v.name == from {
                    VarSet::new(to, v.arity)
                } else {
                    v.clone()
                }
            })
            .collect();
        Ok(MultiPoly {
            vars: Arc::new(vars),
            terms: self.terms.clone(),
        })
    }

    /// Drops declared variable sets that no term mentions.
    pub fn prune_vars(&self) -> MultiPoly {
        let mut keep = Vec::new();
        let mut off = 0;
        for v in self.vars.iter() {
            let used = self
                .terms
                .keys()
                .any(|m| m.0[off..off + v.arity].iter().any(|&e| e > 0));
            if used {
                keep.push(v.clone());
            }
            off += v.arity;
        }
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        self.embed(keep).expect("unused sets carry no exponents")
    }

    /// Substitutes rational values for all components of `name`.
    pub fn evaluate_set(&self, name: &str, values: &[Rational]) -> Result<MultiPoly> {
        let (off, arity) = self.offset_of(name)?;
        if values.len() != arity {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: arity,
                found: values.len(),
            });
        }
        let vars: Vec<VarSet> = self.vars.iter().filter(|v| v.name != name).cloned().collect();
        let vars = Arc::new(vars);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (v, &e) in values.iter().zip(&m.0[off..off + arity]) {
                if e > 0 {
                    coeff *= num_traits::pow(v.clone(), e as usize);
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let mut e = m.0[..off].to_vec();
            e.extend_from_slice(&m.0[off + arity..]);
            *acc.entry(Monomial(e)).or_insert_with(Rational::zero) += coeff;
        }
        Ok(MultiPoly::from_hash(vars, acc))
    }
}

/// `l0 x0 + l1 x1 (+ l2 x2)`: the linear form of a symbolic letter in `x`.
pub fn linear_form(letter: &VarSet, x: &VarSet) -> Result<MultiPoly> {
    if letter.arity != x.arity {
        return Err(Error::Arity {
            name: letter.name.clone(),
            expected: x.arity,
            found: letter.arity,
        });
    }
    let mut acc = MultiPoly::zero(vec![letter.clone(), x.clone()]);
    for i in 0..x.arity {
        acc = &acc + &(&MultiPoly::var(letter, i)? * &MultiPoly::var(x, i)?);
    }
    Ok(acc)
}

/// The 2x2 bracket `(a b) = a0 b1 - a1 b0` of two binary sets.
pub fn bracket2(a: &VarSet, b: &VarSet) -> Result<MultiPoly> {
    for v in [a, b] {
        if v.arity != 2 {
            return Err(Error::Arity {
                name: v.name.clone(),
                expected: 2,
                found: v.arity,
            });
        }
    }
    let a0 = MultiPoly::var(a, 0)?;
    let a1 = MultiPoly::var(a, 1)?;
    let b0 = MultiPoly::var(b, 0)?;
    let b1 = MultiPoly::var(b, 1)?;
    Ok(&(&a0 * &b1) - &(&a1 * &b0))
}

/// The 3x3 determinant bracket with rows `a`, `b`, `c`.
pub fn bracket3(a: &VarSet, b: &VarSet, c: &VarSet) -> Result<MultiPoly> {
    for v in [a, b, c] {
        if v.arity != 3 {
            return Err(Error::Arity {
                name: v.name.clone(),
                expected: 3,
                found: v.arity,
            });
        }
    }
    let mut acc = MultiPoly::zero(vec![a.clone(), b.clone(), c.clone()]);
    for (i, j, k, s) in [
        (0, 1, 2, 1),
        (1, 2, 0, 1),
        (2, 0, 1, 1),
        (0, 2, 1, -1),
        (1, 0, 2, -1),
        (2, 1, 0, -1),
    ] {
        let t = &(&MultiPoly::var(a, i)? * &MultiPoly::var(b, j)?) * &MultiPoly::var(c, k)?;
        acc = if s > 0 { &acc + &t } else { &acc - &t };
    }
    Ok(acc)
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::from_rational(Rational::one())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = if Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars {
            (self.clone(), std::borrow::Cow::Borrowed(rhs))
        } else {
            let (a, b) = MultiPoly::aligned(self, rhs);
            (a, std::borrow::Cow::Owned(b))
        };
        for (m, c) in b.terms.iter() {
            a.add_term(m.clone(), c.clone());
        }
        a
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b);
        let (x, y) = if Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars {
            (self, rhs)
        } else {
            (a, b) = MultiPoly::aligned(self, rhs);
            (&a, &b)
        };
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(x.terms.len() * y.terms.len());
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly::from_hash(x.vars.clone(), acc)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        if Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), c.clone());
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn x() -> VarSet {
        VarSet::binary("x")
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![3, 0]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn merge_of_different_var_lists() {
        let p = MultiPoly::var(&x(), 0).unwrap();
        let q = MultiPoly::var(&VarSet::binary("y"), 1).unwrap();
        let s = &p * &q;
        assert_eq!(s.vars().len(), 2);
        assert_eq!(s.coeff(&[1, 0, 0, 1]), int(1));
        assert_eq!(&s - &s, MultiPoly::zero(vec![]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(MultiPoly::zero(vec![x()]).degree(), None);
        assert_eq!(MultiPoly::constant(vec![x()], int(3)).degree(), Some(0));
    }

    #[test]
    fn brackets_vanish_on_equal_letters() {
        let a = VarSet::binary("a");
        let b = VarSet::binary("b");
        let ab = bracket2(&a, &b).unwrap();
        let ba = bracket2(&b, &a).unwrap();
        assert_eq!(ab, -&ba);
        let t = [VarSet::ternary("p"), VarSet::ternary("q"), VarSet::ternary("r")];
        let d = bracket3(&t[0], &t[1], &t[2]).unwrap();
        assert_eq!(d.len(), 6);
        let swapped = bracket3(&t[1], &t[0], &t[2]).unwrap();
        assert_eq!(d, -&swapped);
    }

    #[test]
    fn linear_substitution() {
        // x0 -> x0 + x1, x1 -> x1 applied to x0^2
        let p = MultiPoly::var(&x(), 0).unwrap().pow(2);
        let m = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        let q = p.substitute_linear("x", &m).unwrap();
        assert_eq!(q.coeff(&[2, 0]), int(1));
        assert_eq!(q.coeff(&[1, 1]), int(2));
        assert_eq!(q.coeff(&[0, 2]), int(1));
    }

    #[test]
    fn evaluation_drops_the_set() {
        let a = VarSet::binary("a");
        let p = linear_form(&a, &x()).unwrap();
        let q = p.evaluate_set("a", &[ratio(1, 2), int(3)]).unwrap();
        assert_eq!(q.vars().len(), 1);
        assert_eq!(q.coeff(&[1, 0]), ratio(1, 2));
        assert_eq!(q.coeff(&[0, 1]), int(3));
    }

    #[test]
    fn embed_rejects_used_sets() {
        let p = MultiPoly::var(&x(), 0).unwrap();
        assert!(p.embed(vec![VarSet::binary("y")]).is_err());
        let z = MultiPoly::constant(vec![x()], int(2));
        assert_eq!(z.embed(vec![]).unwrap().as_constant(), Some(int(2)));
    }
}
