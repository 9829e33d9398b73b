//! Ternary forms and concomitants written in tableau notation
//! `<t1,t2,...|b1,b2,...|c1,c2,...>`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{apply_letter, bracket3, linear_form, term_coeff, term_json, MultiPoly, TermJson, VarSet};
use crate::rational::{format_rational, parse_rational, Rational};

/// A homogeneous ternary form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    degree: u32,
    coeffs: BTreeMap<[u32; 3], Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryJson {
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

fn x_set() -> VarSet {
    VarSet::ternary("x")
}

fn u_set() -> VarSet {
    VarSet::ternary("u")
}

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = ([u32; 3], Rational)>) -> Result<Self> {
        let mut f = TernaryForm::zero(degree);
        for (exp, c) in terms {
            if exp.iter().sum::<u32>() != degree {
                return Err(Error::NotHomogeneous("x".into()));
            }
            let slot = f.coeffs.entry(exp).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                f.coeffs.remove(&exp);
            }
        }
        Ok(f)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, exp: [u32; 3]) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The form written in the components of `set` (normally `x`).
    pub fn in_set(&self, set: &VarSet) -> MultiPoly {
        MultiPoly::from_terms(
            vec![set.clone()],
            self.coeffs.iter().map(|(e, c)| (e.to_vec(), c.clone())),
        )
        .expect("ternary exponents")
    }

    pub fn to_poly(&self) -> MultiPoly {
        self.in_set(&x_set())
    }

    /// Reads a homogeneous polynomial in the ternary set `x`.
    pub fn from_poly(p: &MultiPoly) -> Result<Self> {
        let p = p.prune_vars();
        if p.is_zero() {
            return Err(Error::ZeroForm);
        }
        if p.vars().iter().any(|v| v.name != "x") {
            return Err(Error::InvalidParameter("ternary forms use only x0, x1, x2".into()));
        }
        let p = p.embed(vec![x_set()])?;
        let degree = p
            .homogeneous_degree_in("x")?
            .ok_or_else(|| Error::NotHomogeneous("x".into()))?;
        TernaryForm::from_terms(
            degree,
            p.terms().map(|(m, c)| ([m.0[0], m.0[1], m.0[2]], c.clone())),
        )
    }

    /// `L1^a L2^b ...` for linear forms given by their coefficient triples.
    pub fn product_of_powers(factors: &[([Rational; 3], u32)]) -> Result<Self> {
        let x = x_set();
        let mut acc = MultiPoly::constant(vec![x.clone()], Rational::one());
        for (l, k) in factors {
            let lin = MultiPoly::from_terms(
                vec![x.clone()],
                (0..3).map(|i| {
                    let mut e = vec![0, 0, 0];
                    e[i] = 1;
                    (e, l[i].clone())
                }),
            )?;
            acc = &acc * &lin.pow(*k);
        }
        TernaryForm::from_poly(&acc)
    }

    /// `F(g x)` for a 3x3 matrix `g`.
    pub fn substitute(&self, g: &[Vec<Rational>]) -> Result<Self> {
        let p = self.to_poly().substitute_linear("x", g)?;
        let p = p.embed(vec![x_set()])?;
        if p.is_zero() {
            return Ok(TernaryForm::zero(self.degree));
        }
        TernaryForm::from_poly(&p)
    }

    pub fn to_json(&self) -> TernaryJson {
        TernaryJson {
            degree: self.degree,
            terms: self
                .coeffs
                .iter()
                .rev()
                .map(|(e, c)| term_json(e.to_vec(), c))
                .collect(),
        }
    }

    pub fn from_json(j: &TernaryJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let exp: [u32; 3] = t
                    .exp
                    .clone()
                    .try_into()
                    .map_err(|_| Error::Parse("ternary exponents need three entries".into()))?;
                Ok((exp, term_coeff(t)?))
            })
            .collect::<Result<Vec<_>>>()?;
        TernaryForm::from_terms(j.degree, terms)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: TernaryJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        TernaryForm::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Per-letter cell counts for each row of a semistandard tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableauSpec {
    rows: Vec<Vec<u32>>,
}

impl TableauSpec {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.is_empty() || rows.len() > 3 {
            return Err(Error::Parse(format!("a tableau needs 1 to 3 rows, got {}", rows.len())));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("every row must list a count for each letter".into()));
        }
        Ok(TableauSpec { rows })
    }

    /// Parses `5,3,4,4|0,2,1,1`, optionally wrapped in `<>` or `⟨⟩`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text
            .trim()
            .trim_start_matches(['<', '⟨'])
            .trim_end_matches(['>', '⟩']);
        let rows = t
            .split('|')
            .map(|row| {
                row.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad tableau count {:?}", c.trim())))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TableauSpec::new(rows)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn letters(&self) -> usize {
        self.rows[0].len()
    }

    /// Number of cells holding each letter.
    pub fn letter_degrees(&self) -> Vec<u32> {
        (0..self.letters())
            .map(|j| self.rows.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// The filling, row by row, letters in increasing order along each row.
    pub fn filling(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .flat_map(|(j, &c)| std::iter::repeat_n(j, c as usize))
                    .collect()
            })
            .collect()
    }

    /// Reads the tableau columnwise: height 3 columns become `(l l' l'')`,
    /// height 2 columns `(l l' u)`, height 1 columns `l_x`.
    pub fn bracket_monomial(&self) -> Result<BracketMonomial> {
        let fill = self.filling();
        for w in fill.windows(2) {
            if w[1].len() > w[0].len() {
                return Err(Error::Parse(format!("row lengths of {self} are not a partition")));
            }
        }
        let mut factors = Vec::new();
        for c in 0..fill[0].len() {
            let col: Vec<usize> = fill.iter().filter_map(|r| r.get(c).copied()).collect();
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!(
                    "{self} is not semistandard: column {} is not strictly increasing",
                    c + 1
                )));
            }
            factors.push(match col.len() {
                3 => Factor::Det([col[0], col[1], col[2]]),
                2 => Factor::DetU([col[0], col[1]]),
                _ => Factor::Linear(col[0]),
            });
        }
        Ok(BracketMonomial {
            letters: self.letters(),
            factors,
        })
    }
}

impl fmt::Display for TableauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "<{}>", rows.join("|"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// `(l_a l_b l_c)`.
    Det([usize; 3]),
    /// `(l_a l_b u)`.
    DetU([usize; 2]),
    /// `(l_a)_x`.
    Linear(usize),
}

impl Factor {
    pub fn letters(&self) -> Vec<usize> {
        match self {
            Factor::Det(l) => l.to_vec(),
            Factor::DetU(l) => l.to_vec(),
            Factor::Linear(l) => vec![*l],
        }
    }

    fn shifted(&self, by: usize) -> Factor {
        match *self {
            Factor::Det([a, b, c]) => Factor::Det([a + by, b + by, c + by]),
            Factor::DetU([a, b]) => Factor::DetU([a + by, b + by]),
            Factor::Linear(a) => Factor::Linear(a + by),
        }
    }

    fn to_poly(self) -> MultiPoly {
        let l = |i: usize| VarSet::ternary(letter_name(i));
        match self {
            Factor::Det([a, b, c]) => bracket3(&l(a), &l(b), &l(c)),
            Factor::DetU([a, b]) => bracket3(&l(a), &l(b), &u_set()),
            Factor::Linear(a) => linear_form(&l(a), &x_set()),
        }
        .expect("ternary sets")
    }
}

/// Name of the `i`-th symbolic letter: `la`, `lb`, ..., `lz`, `lba`, ...
pub fn letter_name(i: usize) -> String {
    let mut digits = Vec::new();
    let mut n = i;
    loop {
        digits.push((b'a' + (n % 26) as u8) as char);
        n /= 26;
        if n == 0 {
            break;
        }
    }
    let mut s = String::from("l");
    s.extend(digits.iter().rev());
    s
}

const GREEK: [&str; 8] = ["α", "β", "γ", "δ", "ε", "ζ", "η", "θ"];

fn display_letter(i: usize) -> String {
    GREEK.get(i).map_or_else(|| letter_name(i), |g| g.to_string())
}

/// A product of bracket factors in symbolic letters `0..letters`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketMonomial {
    pub letters: usize,
    pub factors: Vec<Factor>,
}

impl BracketMonomial {
    pub fn one() -> Self {
        BracketMonomial {
            letters: 0,
            factors: Vec::new(),
        }
    }

    /// Number of `x` factors.
    pub fn order(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, Factor::Linear(_))).count()
    }

    /// Number of `u` factors.
    pub fn class(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, Factor::DetU(_))).count()
    }

    /// Product with fresh letters for the second factor.
    pub fn times(&self, other: &BracketMonomial) -> BracketMonomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().map(|f| f.shifted(self.letters)));
        BracketMonomial {
            letters: self.letters + other.letters,
            factors,
        }
    }

    pub fn letter_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0; self.letters];
        for f in &self.factors {
            for l in f.letters() {
                deg[l] += 1;
            }
        }
        deg
    }
}

impl fmt::Display for BracketMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<(u8, Factor), u32> = BTreeMap::new();
        for fac in &self.factors {
            let rank = match fac {
                Factor::Det(_) => 0,
                Factor::DetU(_) => 1,
                Factor::Linear(_) => 2,
            };
            *counts.entry((rank, *fac)).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return write!(f, "1");
        }
        for ((_, fac), k) in counts {
            let body = match fac {
                Factor::Det(l) => format!("({}{}{})", display_letter(l[0]), display_letter(l[1]), display_letter(l[2])),
                Factor::DetU(l) => format!("({}{}u)", display_letter(l[0]), display_letter(l[1])),
                Factor::Linear(l) => format!("{}_x", display_letter(l)),
            };
            if k == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{body}^{k}")?;
            }
        }
        Ok(())
    }
}

/// A rational combination of products of tableaux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Concomitant {
    pub terms: Vec<(Rational, Vec<TableauSpec>)>,
}

impl Concomitant {
    pub fn single(t: TableauSpec) -> Self {
        Concomitant {
            terms: vec![(Rational::one(), vec![t])],
        }
    }

    /// Parses expressions such as `50*<5,3,4,4|0,2,1,1> - 19*<5,1,5,5|0,4,0,0>`
    /// or `<5,1|0,4>^2 + 2*<5,3,2,2|0,2,3,3>`. A bare `5,1|0,4` is one tableau.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.replace('⟨', "<").replace('⟩', ">");
        if !t.contains('<') {
            return Ok(Concomitant::single(TableauSpec::parse(&t)?));
        }
        let mut terms = Vec::new();
        let mut rest = t.trim();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = Rational::one();
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r.trim_start();
            } else if !first {
                return Err(Error::Parse(format!("expected + or - before {rest:?}")));
            }
            first = false;
            let end = next_term_end(rest);
            let (term, tail) = rest.split_at(end);
            terms.push(parse_product(term.trim(), sign)?);
            rest = tail.trim_start();
        }
        if terms.is_empty() {
            return Err(Error::Parse("empty concomitant".into()));
        }
        Ok(Concomitant { terms })
    }

    /// Letters per term after fresh renaming.
    pub fn monomials(&self) -> Result<Vec<(Rational, BracketMonomial)>> {
        self.terms
            .iter()
            .map(|(c, tabs)| {
                let mut m = BracketMonomial::one();
                for t in tabs {
                    m = m.times(&t.bracket_monomial()?);
                }
                Ok((c.clone(), m))
            })
            .collect()
    }
}

fn next_term_end(s: &str) -> usize {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '<' => depth += 1,
            '>' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return i,
            _ => {}
        }
    }
    s.len()
}

fn parse_product(s: &str, sign: Rational) -> Result<(Rational, Vec<TableauSpec>)> {
    let mut coeff = sign;
    let mut tabs = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start_matches(['*', ' ']);
        if rest.is_empty() {
            break;
        }
        if rest.starts_with('<') {
            let close = rest
                .find('>')
                .ok_or_else(|| Error::Parse(format!("unclosed tableau in {s:?}")))?;
            let tab = TableauSpec::parse(&rest[..=close])?;
            rest = &rest[close + 1..];
            let mut power = 1;
            if let Some(r) = rest.trim_start().strip_prefix('^') {
                let digits: String = r.trim_start().chars().take_while(|c| c.is_ascii_digit()).collect();
                power = digits
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                rest = &r.trim_start()[digits.len()..];
            }
            tabs.extend(std::iter::repeat_n(tab, power));
        } else {
            let end = rest.find(['*', '<']).unwrap_or(rest.len());
            coeff *= parse_rational(rest[..end].trim())?;
            rest = &rest[end..];
        }
    }
    if tabs.is_empty() {
        return Err(Error::Parse(format!("no tableau in term {s:?}")));
    }
    Ok((coeff, tabs))
}

impl fmt::Display for Concomitant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, tabs)) in self.terms.iter().enumerate() {
            let body: String = tabs.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("*");
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let sign = match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            if mag.is_one() {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign}{}*{body}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

/// Applies `(1/d!) F(d/dl)` for every letter of `m`, multiplying factors in
/// only when their letter is about to be contracted.
pub fn evaluate_monomial(m: &BracketMonomial, f: &TernaryForm) -> Result<MultiPoly> {
    let degrees = m.letter_degrees();
    if let Some((l, &deg)) = degrees.iter().enumerate().find(|(_, &k)| k != f.degree()) {
        return Err(Error::InvalidParameter(format!(
            "letter {} has degree {deg}, the form has degree {}",
            display_letter(l),
            f.degree()
        )));
    }
    let target = vec![x_set(), u_set()];
    let mut acc = MultiPoly::constant(target.clone(), Rational::one());
    let mut pending: Vec<Factor> = m.factors.clone();
    let mut present: BTreeSet<usize> = BTreeSet::new();
    let mut remaining: BTreeSet<usize> = (0..m.letters).collect();
    while let Some(letter) = next_letter(&remaining, &pending, &present) {
        let (now, later): (Vec<Factor>, Vec<Factor>) =
            pending.into_iter().partition(|fac| fac.letters().contains(&letter));
        pending = later;
        let mut grouped: BTreeMap<Factor, u32> = BTreeMap::new();
        for fac in now {
            *grouped.entry(fac).or_insert(0) += 1;
        }
        for (fac, k) in grouped {
            present.extend(fac.letters());
            acc = &acc * &fac.to_poly().pow(k);
        }
        let op = f.in_set(&VarSet::ternary(letter_name(letter)));
        acc = apply_letter(&op, &letter_name(letter), &acc)?;
        remaining.remove(&letter);
        present.remove(&letter);
        if acc.is_zero() {
            return Ok(MultiPoly::zero(target));
        }
    }
    let acc = acc.prune_vars();
    if acc.vars().iter().any(|v| v.name != "x" && v.name != "u") {
        return Err(Error::Verification("a symbolic letter survived evaluation".into()));
    }
    acc.embed(target)
}

/// The letter whose pending factors bring in the fewest new letters.
fn next_letter(remaining: &BTreeSet<usize>, pending: &[Factor], present: &BTreeSet<usize>) -> Option<usize> {
    remaining.iter().copied().min_by_key(|&l| {
        let mut new: BTreeSet<usize> = BTreeSet::new();
        for fac in pending.iter().filter(|fac| fac.letters().contains(&l)) {
            new.extend(fac.letters().into_iter().filter(|x| *x != l && !present.contains(x)));
        }
        (!present.contains(&l), new.len(), l)
    })
}

/// Evaluates a concomitant on `f` as a polynomial in `x` and `u`.
pub fn evaluate_concomitant(c: &Concomitant, f: &TernaryForm) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(vec![x_set(), u_set()]);
    for (coeff, m) in c.monomials()? {
        acc = &acc + &evaluate_monomial(&m, f)?.scale(&coeff);
    }
    Ok(acc)
}

/// Evaluates each tableau of a product separately and multiplies the values.
pub fn evaluate_product_shortcut(tabs: &[TableauSpec], f: &TernaryForm) -> Result<MultiPoly> {
    let mut acc = MultiPoly::constant(vec![x_set(), u_set()], Rational::one());
    for t in tabs {
        acc = &acc * &evaluate_monomial(&t.bracket_monomial()?, f)?;
    }
    Ok(acc)
}

pub const COV3: [&str; 7] = [
    "<5,4,1|0,1,3|0,0,1>",
    "<5,3,3|0,2,0|0,0,2>",
    "<5,3,0|0,2,4|0,0,1>",
    "<5,3,1|0,2,2|0,0,2>",
    "<5,2,1|0,3,2|0,0,2>",
    "<5,1,0|0,4,2|0,0,3>",
    "<5,1,1|0,4,0|0,0,4>",
];

pub const COV4: [&str; 4] = [
    "50*<5,3,4,4|0,2,1,1> - 19*<5,1,5,5|0,4,0,0>",
    "5*<5,5,4,0|0,0,1,5> - 8*<5,4,0,5|0,1,5,0>",
    "<5,1|0,4>^2 + 2*<5,3,2,2|0,2,3,3>",
    "<5,3,2,0|0,2,3,5>",
];

pub const PSI1: &str = "<5,3,4,4|0,2,1,1>";
pub const PSI2: &str = "<5,1,5,5|0,4,0,0>";

/// `x0^a x1^b x2^c` as a ternary form.
pub fn ternary_monomial(exp: [u32; 3]) -> TernaryForm {
    TernaryForm::from_terms(exp.iter().sum(), [(exp, Rational::one())]).expect("homogeneous")
}

/// Outcome of [`verify_quintic_lists`].
#[derive(Clone, Debug, Default)]
pub struct QuinticReport {
    pub samples: usize,
    pub psi1_value: Option<Rational>,
    pub psi2_value: Option<Rational>,
    /// `(eta1, eta2)` with `eta1*psi1 + eta2*psi2 = 0` on `x0^3 x1^2`, normalised to integers.
    pub eta: Option<(Rational, Rational)>,
    pub independent_on_fermat: bool,
    pub failures: Vec<String>,
}

impl QuinticReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for QuinticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<Rational>| v.as_ref().map_or("-".to_string(), format_rational);
        writeln!(f, "psi1(x0^3*x1^2)\t{}", show(&self.psi1_value))?;
        writeln!(f, "psi2(x0^3*x1^2)\t{}", show(&self.psi2_value))?;
        match &self.eta {
            Some((a, b)) => writeln!(f, "eta1:eta2\t{}:{}", format_rational(a), format_rational(b))?,
            None => writeln!(f, "eta1:eta2\t-")?,
        }
        writeln!(f, "independent on x0^5-x1^5\t{}", self.independent_on_fermat)?;
        writeln!(f, "vanishing samples\t{}", self.samples)?;
        for fail in &self.failures {
            writeln!(f, "FAIL\t{fail}")?;
        }
        Ok(())
    }
}

/// Coefficient of `x0^8 x1^4 u2^4`, or `None` if the value has any other term.
fn single_coefficient(p: &MultiPoly) -> Option<Rational> {
    let exps = [8, 4, 0, 0, 0, 4];
    let c = p.coeff(&exps);
    (p.len() == 1 && !c.is_zero()).then_some(c)
}

/// Checks the degree 3 and degree 4 concomitant lists for ternary quintics
/// on `samples` random forms `L1^3 L2^2`, and the value and independence
/// checks on `Psi1`, `Psi2`.
pub fn verify_quintic_lists(samples: usize, seed: u64) -> Result<QuinticReport> {
    use rayon::prelude::*;

    let mut report = QuinticReport {
        samples,
        ..QuinticReport::default()
    };
    let psi1 = Concomitant::parse(PSI1)?;
    let psi2 = Concomitant::parse(PSI2)?;

    let member = ternary_monomial([3, 2, 0]);
    let v1 = evaluate_concomitant(&psi1, &member)?;
    let v2 = evaluate_concomitant(&psi2, &member)?;
    report.psi1_value = single_coefficient(&v1);
    report.psi2_value = single_coefficient(&v2);
    match (&report.psi1_value, &report.psi2_value) {
        (Some(a), Some(b)) => {
            let (e1, e2) = (b.clone(), -a.clone());
            let g = e1.numer().gcd(e2.numer());
            let l = e1.denom().lcm(e2.denom());
            let scale = Rational::new(l, g);
            report.eta = Some((e1 * &scale, e2 * &scale));
        }
        _ => report
            .failures
            .push("psi1, psi2 on x0^3*x1^2 are not multiples of x0^8*x1^4*u2^4".into()),
    }

    let fermat = TernaryForm::from_terms(5, [([5, 0, 0], Rational::one()), ([0, 5, 0], -Rational::one())])?;
    let f1 = evaluate_concomitant(&psi1, &fermat)?;
    let f2 = evaluate_concomitant(&psi2, &fermat)?;
    report.independent_on_fermat = !f1.is_zero() && !f2.is_zero() && !proportional(&f1, &f2);
    if !report.independent_on_fermat {
        report.failures.push("psi1 and psi2 are dependent on x0^5-x1^5".into());
    }

    let mut rng = crate::sample::sampler(seed);
    let forms: Vec<TernaryForm> = (0..samples)
        .map(|_| {
            let mut lin = || {
                [
                    crate::sample::rational(&mut rng, 3),
                    crate::sample::rational(&mut rng, 3),
                    crate::sample::rational(&mut rng, 3),
                ]
            };
            let (l1, l2) = (lin(), lin());
            TernaryForm::product_of_powers(&[(l1, 3), (l2, 2)])
        })
        .collect::<Result<_>>()?;
    let lists: Vec<(&str, Concomitant)> = COV3
        .iter()
        .chain(COV4.iter())
        .map(|s| Ok((*s, Concomitant::parse(s)?)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..lists.len())
        .flat_map(|c| (0..forms.len()).map(move |f| (c, f)))
        .collect();
    let outcomes: Vec<Result<Option<String>>> = jobs
        .par_iter()
        .map(|&(c, i)| {
            if forms[i].is_zero() {
                return Ok(None);
            }
            let v = evaluate_concomitant(&lists[c].1, &forms[i])?;
            Ok((!v.is_zero()).then(|| format!("{} is nonzero on sample {}", lists[c].0, i + 1)))
        })
        .collect();
    for o in outcomes {
        if let Some(msg) = o? {
            report.failures.push(msg);
        }
    }
    Ok(report)
}

fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    match (a.leading(), b.leading()) {
        (Some((_, ca)), Some((_, cb))) => {
            let r = ca / cb;
            a == &b.scale(&r)
        }
        _ => a.is_zero() && b.is_zero(),
    }
}

/// Cofactor matrix; for a unimodular `g` this is the inverse transpose.
pub fn cofactor3(g: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
                    let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
                    &g[r0][c0] * &g[r1][c1] - &g[r0][c1] * &g[r1][c0]
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn reads_psi1_columnwise() {
        let t = TableauSpec::parse(PSI1).unwrap();
        let m = t.bracket_monomial().unwrap();
        assert_eq!(m.to_string(), "(αβu)^2(αγu)(αδu)α_xβ_x^3γ_x^4δ_x^4");
        assert_eq!((m.order(), m.class()), (12, 4));
        let t = TableauSpec::parse("5,1|0,4").unwrap();
        assert_eq!(t.bracket_monomial().unwrap().to_string(), "(αβu)^4α_xβ_x");
        let t = TableauSpec::parse("<5,3,3|0,2,0|0,0,2>").unwrap();
        assert_eq!(t.bracket_monomial().unwrap().to_string(), "(αβγ)^2α_x^3β_x^3γ_x^3");
    }

    #[test]
    fn rejects_non_semistandard() {
        assert!(TableauSpec::parse("<5,0|5,0>").unwrap().bracket_monomial().is_err());
        assert!(TableauSpec::parse("<1,0|0,5>").unwrap().bracket_monomial().is_err());
        assert!(TableauSpec::parse("<5,x|0,4>").is_err());
    }

    #[test]
    fn parses_combinations() {
        let c = Concomitant::parse(COV4[0]).unwrap();
        assert_eq!(c.terms.len(), 2);
        assert_eq!(c.terms[1].0, int(-19));
        let c = Concomitant::parse(COV4[2]).unwrap();
        assert_eq!(c.terms[0].1.len(), 2);
        assert_eq!(c.to_string(), "<5,1|0,4>*<5,1|0,4> + 2*<5,3,2,2|0,2,3,3>");
        assert!(Concomitant::parse("3*").is_err());
    }

    #[test]
    fn psi_values_on_member() {
        let f = ternary_monomial([3, 2, 0]);
        let target = |c: Rational| {
            MultiPoly::from_terms(vec![x_set(), u_set()], [(vec![8, 4, 0, 0, 0, 4], c)]).unwrap()
        };
        let psi1 = evaluate_concomitant(&Concomitant::parse(PSI1).unwrap(), &f).unwrap();
        assert_eq!(psi1, target(ratio(57, 2500)));
        let psi2 = evaluate_concomitant(&Concomitant::parse(PSI2).unwrap(), &f).unwrap();
        assert_eq!(psi2, target(ratio(3, 50)));
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let f = ternary_monomial([2, 2, 0]);
        assert!(evaluate_concomitant(&Concomitant::parse(PSI1).unwrap(), &f).is_err());
        let f = ternary_monomial([3, 2, 0]);
        let printed = Concomitant::parse("<5,4,0,0|0,1,5,0>").unwrap();
        assert!(evaluate_concomitant(&printed, &f).is_err());
    }

    #[test]
    fn power_of_linear_form_kills_brackets() {
        let l = [int(1), int(2), int(-1)];
        let f = TernaryForm::product_of_powers(&[(l, 5)]).unwrap();
        let v = evaluate_concomitant(&Concomitant::parse("<5,1|0,4>").unwrap(), &f).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f = TernaryForm::from_terms(5, [([3, 2, 0], ratio(3, 2)), ([0, 0, 5], int(-1))]).unwrap();
        let back = TernaryForm::from_json_str(&f.to_json_string()).unwrap();
        assert_eq!(f, back);
        let j = r#"{"degree":5,"terms":[{"exp":[3,2,0],"num":"1","den":"1"}]}"#;
        assert_eq!(TernaryForm::from_json_str(j).unwrap(), ternary_monomial([3, 2, 0]));
    }

    #[test]
    fn equivariant_under_unimodular_change() {
        let mut rng = crate::sample::sampler(11);
        let terms: Vec<([u32; 3], Rational)> = (0..=3u32)
            .flat_map(|a| (0..=3 - a).map(move |b| [a, b, 3 - a - b]))
            .map(|e| (e, crate::sample::rational(&mut rng, 4)))
            .collect();
        let f = TernaryForm::from_terms(3, terms).unwrap();
        let g = crate::sample::unimodular3(&mut rng, 2);
        let c = Concomitant::parse("<3,1|0,2>").unwrap();
        let before = evaluate_concomitant(&c, &f.substitute(&g).unwrap()).unwrap();
        let after = evaluate_concomitant(&c, &f)
            .unwrap()
            .substitute_linear("x", &g)
            .unwrap()
            .substitute_linear("u", &cofactor3(&g))
            .unwrap()
            .embed(vec![x_set(), u_set()])
            .unwrap();
        assert!(!before.is_zero());
        assert_eq!(before, after);
    }

    #[test]
    fn product_matches_shortcut() {
        let f = TernaryForm::from_terms(5, [([3, 2, 0], int(1)), ([1, 1, 3], int(2)), ([0, 0, 5], int(-1))]).unwrap();
        let c = Concomitant::parse("<5,1|0,4>^2").unwrap();
        let fresh = evaluate_concomitant(&c, &f).unwrap();
        let shortcut = evaluate_product_shortcut(&c.terms[0].1, &f).unwrap();
        assert!(!fresh.is_zero());
        assert_eq!(fresh, shortcut);
    }

    #[test]
    fn letter_names_are_alphabetic() {
        assert_eq!(letter_name(0), "la");
        assert_eq!(letter_name(25), "lz");
        assert_eq!(letter_name(26), "lba");
    }
}
