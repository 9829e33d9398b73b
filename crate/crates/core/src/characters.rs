//! SL2 characters: symmetric powers of symmetric powers, the coordinate ring
//! and ideal of the loci `X^(d-e,e)` degree by degree, and the regularity bound.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, ceil, to_i64, Rational};

/// A virtual SL2 module, `sum mult * S_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Character {
    mults: BTreeMap<u32, i64>,
}

impl Sl2Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn irreducible(m: u32) -> Self {
        let mut c = Self::zero();
        c.add_irreducible(m, 1);
        c
    }

    pub fn add_irreducible(&mut self, m: u32, mult: i64) {
        let v = self.mults.entry(m).or_insert(0);
        *v += mult;
        if *v == 0 {
            self.mults.remove(&m);
        }
    }

    pub fn multiplicity(&self, m: u32) -> i64 {
        self.mults.get(&m).copied().unwrap_or(0)
    }

    /// `(m, mult)` pairs with nonzero multiplicity, highest weight first.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.mults.iter().rev().map(|(&m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.mults.values().all(|&c| c >= 0)
    }

    pub fn dim(&self) -> i64 {
        self.mults.iter().map(|(&m, &c)| c * (m as i64 + 1)).sum()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_irreducible(m, c);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_irreducible(m, -c);
        }
        out
    }

    /// One `m\tmult` line per irreducible.
    pub fn to_tsv(&self) -> String {
        self.terms().map(|(m, c)| format!("{m}\t{c}\n")).collect()
    }
}

impl fmt::Display for Sl2Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(m, c)| format!("{m}:{c}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Coefficients of the Gaussian binomial `[r+d, r]_q`: entry `n` counts
/// partitions of `n` fitting in an `r x d` box.
pub fn box_partitions(r: u32, d: u32) -> Vec<i64> {
    // table[b] holds the polynomial for an a x b box, a growing row by row
    let mut table: Vec<Vec<i64>> = vec![vec![1]; d as usize + 1];
    for a in 1..=r as usize {
        let mut next: Vec<Vec<i64>> = vec![vec![1]];
        for b in 1..=d as usize {
            // G(a, b) = G(a-1, b) + q^a G(a, b-1)
            let prev = &table[b];
            let left = &next[b - 1];
            let mut poly = vec![0i64; a * b + 1];
            for (n, c) in prev.iter().enumerate() {
                poly[n] += c;
            }
            for (n, c) in left.iter().enumerate() {
                poly[n + a] += c;
            }
            next.push(poly);
        }
        table = next;
    }
    table.pop().expect("d + 1 entries")
}

/// The character of `S_r(S_d)`.
pub fn plethysm(r: u32, d: u32) -> Sl2Character {
    let counts = box_partitions(r, d);
    let mut c = Sl2Character::zero();
    for p in 0..=(r * d / 2) {
        let here = counts[p as usize];
        let before = if p == 0 { 0 } else { counts[p as usize - 1] };
        c.add_irreducible(r * d - 2 * p, here - before);
    }
    c
}

/// `A_r = {p : 0 <= p <= re, p != 1}`.
pub fn a_set(e: u32, r: u32) -> Vec<u32> {
    (0..=r * e).filter(|&p| p != 1).collect()
}

fn check_de(d: u32, e: u32) -> Result<()> {
    if e == 0 || 2 * e >= d {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= e < d/2, got d = {d}, e = {e}"
        )));
    }
    Ok(())
}

/// `sum_{p in A_r} S_(rd-2p)`, the degree-`r` part of the coordinate ring.
/// For `r = 1` this is the same formula used outside its stated range;
/// see [`ox_is_extrapolated`].
pub fn ox_character(d: u32, e: u32, r: u32) -> Result<Sl2Character> {
    check_de(d, e)?;
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let mut c = Sl2Character::zero();
    for p in a_set(e, r) {
        c.add_irreducible(r * d - 2 * p, 1);
    }
    Ok(c)
}

pub fn ox_is_extrapolated(r: u32) -> bool {
    r == 1
}

/// `(dim(S_r(d-e) x S_re) - dim S_(rd-2), sum_{p in A_r} (rd - 2p + 1))`.
pub fn kernel_dimensions(d: u32, e: u32, r: u32) -> Result<(i64, i64)> {
    check_de(d, e)?;
    let (d, e, r) = (d as i64, e as i64, r as i64);
    let lhs = (r * (d - e) + 1) * (r * e + 1) - (r * d - 1);
    let rhs = a_set(e as u32, r as u32)
        .into_iter()
        .map(|p| r * d - 2 * p as i64 + 1)
        .sum();
    Ok((lhs, rhs))
}

/// The degree-`r` part of the ideal of `X^(d-e,e)`.
pub fn ideal_character(d: u32, e: u32, r: u32) -> Result<Sl2Character> {
    check_de(d, e)?;
    let c = match r {
        0 | 1 => return Err(Error::InvalidParameter("r must be at least 2".into())),
        2 => {
            let mut c = Sl2Character::zero();
            for p in (e + 1)..=(d / 2) {
                c.add_irreducible(2 * d - 4 * p, 1);
            }
            c
        }
        _ => plethysm(r, d).minus(&ox_character(d, e, r)?),
    };
    if !c.is_nonnegative() {
        return Err(Error::Verification(format!(
            "ideal character of degree {r} for (d, e) = ({d}, {e}) has a negative multiplicity: {c}"
        )));
    }
    Ok(c)
}

/// `ceil(max{4, n + 2 + (1-n)/d, 2n + 1 - n/e})`.
pub fn regularity_m0(n: u32, d: u32, e: u32) -> Result<i64> {
    check_de(d, e)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let q = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
    let (n, d, e) = (n as i64, d as i64, e as i64);
    let candidates = [
        q(4, 1),
        q(n + 2, 1) + q(1 - n, d),
        q(2 * n + 1, 1) - q(n, e),
    ];
    let m = candidates.into_iter().max().expect("three candidates");
    Ok(to_i64(&Rational::from_integer(ceil(&m))).expect("small"))
}

/// `binom(d + r, r)`, the dimension of `S_r(S_d)`.
pub fn plethysm_dim(r: u32, d: u32) -> i64 {
    binomial(d + r, r).try_into().expect("dimension fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plethysm_examples() {
        let mut expect = Sl2Character::zero();
        for m in [8, 4, 0] {
            expect.add_irreducible(m, 1);
        }
        assert_eq!(plethysm(2, 4), expect);
        assert_eq!(plethysm(1, 7), Sl2Character::irreducible(7));
        for r in 0..6 {
            for d in 0..6 {
                assert_eq!(plethysm(r, d).dim(), plethysm_dim(r, d));
            }
        }
    }

    #[test]
    fn a_set_examples() {
        assert_eq!(a_set(2, 2), vec![0, 2, 3, 4]);
        assert_eq!(a_set(1, 1), vec![0]);
        assert_eq!(a_set(3, 2).len(), 6);
    }

    #[test]
    fn ox_example() {
        let c = ox_character(5, 2, 2).unwrap();
        assert_eq!(c.to_string(), "10:1 6:1 4:1 2:1");
        let (l, r) = kernel_dimensions(5, 2, 2).unwrap();
        assert_eq!((l, r), (26, 26));
    }

    #[test]
    fn ideal_examples() {
        assert!(ideal_character(5, 2, 2).unwrap().is_zero());
        assert_eq!(ideal_character(5, 1, 2).unwrap(), Sl2Character::irreducible(2));
        let c = ideal_character(6, 2, 3).unwrap();
        let ox: i64 = a_set(2, 3).iter().map(|&p| 18 - 2 * p as i64 + 1).sum();
        assert_eq!(c.dim(), plethysm_dim(3, 6) - ox);
    }

    #[test]
    fn m0_examples() {
        assert_eq!(regularity_m0(1, 7, 2).unwrap(), 4);
        assert_eq!(regularity_m0(2, 5, 2).unwrap(), 4);
        // n = 5, d = 3, e = 1: max{4, 17/3, 6}
        assert_eq!(regularity_m0(5, 3, 1).unwrap(), 6);
        // n = 3, d = 7, e = 3: max{4, 5 - 2/7, 6}
        assert_eq!(regularity_m0(3, 7, 3).unwrap(), 6);
    }

    #[test]
    fn display_and_tsv() {
        let c = plethysm(2, 2);
        assert_eq!(c.to_string(), "4:1 0:1");
        assert_eq!(c.to_tsv(), "4\t1\n0\t1\n");
        assert_eq!(Sl2Character::zero().to_string(), "0");
    }
}
