use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CoeffSymbol, Specialization, SymMonomial};
use crate::error::{Error, Result};

/// Sparse polynomial in coefficient symbols over exact rationals.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymPoly {
    terms: BTreeMap<SymMonomial, BigRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(SymMonomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(sym: CoeffSymbol) -> Self {
        Self::term(SymMonomial::var(sym), BigRational::one())
    }

    pub fn term(m: SymMonomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (SymMonomial, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SymMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &SymMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Rational coefficient of the degree-one monomial `sym`.
    pub fn linear_coeff(&self, sym: CoeffSymbol) -> BigRational {
        self.coeff(&SymMonomial::var(sym))
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&SymMonomial::one())
    }

    pub fn leading_term(&self) -> Option<(&SymMonomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(SymMonomial::degree).max()
    }

    pub fn symbols(&self) -> BTreeSet<CoeffSymbol> {
        self.terms.keys().flat_map(|m| m.symbols()).collect()
    }

    pub fn contains_symbol(&self, sym: &CoeffSymbol) -> bool {
        self.terms.keys().any(|m| m.exponent(sym) > 0)
    }

    pub fn add_term(&mut self, m: SymMonomial, c: BigRational) {
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

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn mul_term(&self, m: &SymMonomial, c: &BigRational) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value under `s`.
    pub fn eval(&self, s: &Specialization) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(sym, e) in m.factors() {
                let v = s.get(&sym).ok_or(Error::UnassignedSymbol(sym))?;
                if v.is_zero() {
                    t = BigRational::zero();
                    break;
                }
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes the symbols assigned by `s`, leaving the others free.
    pub fn partial_eval(&self, s: &Specialization) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut rest = Vec::new();
            for &(sym, e) in m.factors() {
                match s.get(&sym) {
                    Some(v) => t *= num_traits::pow(v.clone(), e as usize),
                    None => rest.push((sym, e)),
                }
            }
            out.add_term(SymMonomial::from_factors(rest), t);
        }
        out
    }

    /// Quotient `self / q`, failing unless `q` divides `self` exactly.
    ///
    /// Multivariate division by leading terms in the graded-lex order;
    /// a non-divisible leading term means no exact quotient exists.
    pub fn exact_div(&self, q: &SymPoly) -> Result<SymPoly> {
        let (lm_q, lc_q) = q.leading_term().ok_or(Error::DivisionByZero)?;
        if q.terms.len() == 1 {
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                let qm = m.div(lm_q).ok_or(Error::NotDivisible)?;
                out.insert(qm, c / lc_q);
            }
            return Ok(SymPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = SymPoly::zero();
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let tm = lm_r.div(lm_q).ok_or(Error::NotDivisible)?;
            let tc = lc_r / lc_q;
            rem -= q.mul_term(&tm, &tc);
            quot.add_term(tm, tc);
        }
        Ok(quot)
    }

    /// Formal derivation: `δ` applied to every symbol by the Leibniz rule.
    pub fn derive(&self) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            for (idx, &(sym, e)) in m.factors().iter().enumerate() {
                let rest = m.factors().iter().enumerate().map(|(j, &(s, ej))| {
                    if j == idx {
                        (s, ej - 1)
                    } else {
                        (s, ej)
                    }
                });
                let nm = SymMonomial::from_factors(rest.chain([(sym.derived(), 1)]));
                out.add_term(nm, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Replaces every occurrence of `sym` by `replacement`.
    pub fn substitute(&self, sym: CoeffSymbol, replacement: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(&sym);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let rest = SymMonomial::from_factors(m.factors().iter().copied().filter(|(s, _)| *s != sym));
            let expanded = replacement.pow(e).mul_term(&rest, c);
            out += expanded;
        }
        out
    }

    /// Drops every term whose monomial contains a symbol outside `keep`.
    pub fn restrict_to(&self, keep: &BTreeSet<CoeffSymbol>) -> SymPoly {
        SymPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.symbols().all(|s| keep.contains(&s)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<CoeffSymbol> for SymPoly {
    fn from(s: CoeffSymbol) -> Self {
        SymPoly::var(s)
    }
}

impl AddAssign<&SymPoly> for SymPoly {
    fn add_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<SymPoly> for SymPoly {
    fn add_assign(&mut self, rhs: SymPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
            return;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&SymPoly> for SymPoly {
    fn sub_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign<SymPoly> for SymPoly {
    fn sub_assign(&mut self, rhs: SymPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(mut self, rhs: SymPoly) -> SymPoly {
        self += rhs;
        self
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(mut self, rhs: SymPoly) -> SymPoly {
        self -= rhs;
        self
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(mut self) -> SymPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        &self * &rhs
    }
}

impl Zero for SymPoly {
    fn zero() -> Self {
        SymPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymPoly {
    fn one() -> Self {
        SymPoly::one()
    }
}
