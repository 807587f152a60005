//! The generic first-order system `f1, f2` and the derivation `δ`.
//!
//! Polynomials live in `(y, y1, y2)` with `y1 = δy`, `y2 = δy1`; their
//! coefficients are [`SymPoly`] values.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symcore::{CoeffSymbol, Specialization, SymPoly, System};

/// Degrees of the two input polynomials, `1 <= d1 <= d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemSpec {
    pub d1: u32,
    pub d2: u32,
}

impl SystemSpec {
    pub fn new(d1: u32, d2: u32) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidSpec(format!("degrees must be positive, got ({d1}, {d2})")));
        }
        if d1 > d2 {
            return Err(Error::InvalidSpec(format!("need d1 <= d2, got ({d1}, {d2})")));
        }
        Ok(Self { d1, d2 })
    }

    /// `D = 2 d1 + 2 d2 - 3`.
    pub fn big_d(&self) -> u32 {
        2 * self.d1 + 2 * self.d2 - 3
    }

    /// `N = (D + 1)^2`, the side length of the square matrix.
    pub fn big_n(&self) -> usize {
        let d = self.big_d() as usize + 1;
        d * d
    }

    /// The degree bound written as `4 (d1 + d2 - 1)^2`.
    pub fn degree_bound(&self) -> usize {
        let s = (self.d1 + self.d2 - 1) as usize;
        4 * s * s
    }

    pub fn degree(&self, system: System) -> u32 {
        match system {
            System::F1 => self.d1,
            System::F2 => self.d2,
        }
    }

    /// True when `sym` is a coefficient this system can own.
    pub fn owns(&self, sym: &CoeffSymbol) -> bool {
        sym.k + sym.l <= self.degree(sym.system)
    }

    /// Symbols of `f1, f2` and their first derivatives, in canonical order.
    pub fn symbol_universe(&self) -> Vec<CoeffSymbol> {
        let mut out = Vec::new();
        for system in [System::F1, System::F2] {
            let d = self.degree(system);
            for k in 0..=d {
                for l in 0..=(d - k) {
                    let s = CoeffSymbol::new(system, k, l);
                    out.push(s);
                    out.push(s.derived());
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum YVar {
    Y,
    Y1,
    Y2,
}

/// Power product `y^e_y * y1^e_y1 * y2^e_y2`.
///
/// Ordered by total degree, then lexicographically with `y < y1 < y2`
/// (the `y2` exponent is most significant).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 3]", into = "[u32; 3]")]
pub struct YMonomial {
    pub y: u32,
    pub y1: u32,
    pub y2: u32,
}

impl From<[u32; 3]> for YMonomial {
    fn from(e: [u32; 3]) -> Self {
        Self::new(e[0], e[1], e[2])
    }
}

impl From<YMonomial> for [u32; 3] {
    fn from(m: YMonomial) -> Self {
        m.exponents()
    }
}

impl YMonomial {
    pub const ONE: YMonomial = YMonomial { y: 0, y1: 0, y2: 0 };

    pub const fn new(y: u32, y1: u32, y2: u32) -> Self {
        Self { y, y1, y2 }
    }

    pub fn var(v: YVar) -> Self {
        match v {
            YVar::Y => Self::new(1, 0, 0),
            YVar::Y1 => Self::new(0, 1, 0),
            YVar::Y2 => Self::new(0, 0, 1),
        }
    }

    pub fn exponents(&self) -> [u32; 3] {
        [self.y, self.y1, self.y2]
    }

    pub fn degree(&self) -> u32 {
        self.y + self.y1 + self.y2
    }

    pub fn exponent(&self, v: YVar) -> u32 {
        match v {
            YVar::Y => self.y,
            YVar::Y1 => self.y1,
            YVar::Y2 => self.y2,
        }
    }

    pub fn with_exponent(mut self, v: YVar, e: u32) -> Self {
        match v {
            YVar::Y => self.y = e,
            YVar::Y1 => self.y1 = e,
            YVar::Y2 => self.y2 = e,
        }
        self
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.y + o.y, self.y1 + o.y1, self.y2 + o.y2)
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.y <= o.y && self.y1 <= o.y1 && self.y2 <= o.y2
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Self) -> Option<Self> {
        self.divides(o).then(|| Self::new(o.y - self.y, o.y1 - self.y1, o.y2 - self.y2))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.y * e, self.y1 * e, self.y2 * e)
    }

    /// Value at a point `(y, y1, y2)`.
    pub fn eval(&self, point: &[BigRational; 3]) -> BigRational {
        num_traits::pow(point[0].clone(), self.y as usize)
            * num_traits::pow(point[1].clone(), self.y1 as usize)
            * num_traits::pow(point[2].clone(), self.y2 as usize)
    }

    /// Header form used in CSV exports: `y^a*y1^b*y2^c`.
    pub fn csv_label(&self) -> String {
        format!("y^{}*y1^{}*y2^{}", self.y, self.y1, self.y2)
    }
}

impl Ord for YMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.degree(), self.y2, self.y1, self.y).cmp(&(o.degree(), o.y2, o.y1, o.y))
    }
}

impl PartialOrd for YMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("y2", self.y2), ("y1", self.y1), ("y", self.y)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Polynomial in `(y, y1, y2)` with symbolic coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPoly {
    terms: BTreeMap<YMonomial, SymPoly>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: SymPoly) -> Self {
        Self::term(YMonomial::ONE, c)
    }

    pub fn term(m: YMonomial, c: SymPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: YVar) -> Self {
        Self::term(YMonomial::var(v), SymPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: YMonomial, c: SymPoly) {
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&YMonomial, &SymPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &YMonomial) -> SymPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Monomials with nonzero coefficient, in canonical order.
    pub fn support(&self) -> BTreeSet<YMonomial> {
        self.terms.keys().copied().collect()
    }

    /// Highest derivative index with a nonzero exponent (0 for a
    /// polynomial in `y` alone).
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| if m.y2 > 0 { 2 } else if m.y1 > 0 { 1 } else { 0 })
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: YVar) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    /// Coefficients with respect to `v`: entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: YVar) -> Vec<DiffPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![DiffPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            out[e].add_term(m.with_exponent(v, 0), c.clone());
        }
        out
    }

    /// `m * self`.
    pub fn shift(&self, m: &YMonomial) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &SymPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Substitutes a point for `(y, y1, y2)`, leaving the symbols free.
    pub fn eval_at(&self, point: &[BigRational; 3]) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            out += c.scale(&m.eval(point));
        }
        out
    }

    /// Evaluates every coefficient under `s`.
    pub fn specialize(&self, s: &Specialization) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, SymPoly::constant(c.eval(s)?));
        }
        Ok(out)
    }

    /// Substitutes the symbols assigned by `s` in every coefficient.
    pub fn partial_specialize(&self, s: &Specialization) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.partial_eval(s));
        }
        out
    }

    pub fn symbols(&self) -> BTreeSet<CoeffSymbol> {
        self.terms.values().flat_map(|c| c.symbols()).collect()
    }

    /// Largest derivative order among coefficient symbols.
    pub fn max_symbol_deriv(&self) -> u32 {
        self.symbols().iter().map(|s| s.deriv).max().unwrap_or(0)
    }

    /// JSON dump: `[{monomial: [e_y, e_y1, e_y2], coeff: "..."}]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| {
                    serde_json::json!({ "monomial": m.exponents(), "coeff": c.to_string() })
                })
                .collect(),
        )
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.degree() == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Generic polynomial of order one and degree `d`: every `y^k y1^l` with
/// `k + l <= d`, coefficient `a(k,l)` or `b(k,l)`.
pub fn generic_poly(system: System, d: u32) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for k in 0..=d {
        for l in 0..=(d - k) {
            p.add_term(YMonomial::new(k, l, 0), SymPoly::var(CoeffSymbol::new(system, k, l)));
        }
    }
    p
}

/// Generic polynomial of order zero (in `y` only) and degree `d`.
pub fn generic_poly_order0(system: System, d: u32) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for k in 0..=d {
        p.add_term(YMonomial::new(k, 0, 0), SymPoly::var(CoeffSymbol::new(system, k, 0)));
    }
    p
}

/// The pair `(f1, f2)` of generic first-order polynomials.
pub fn generic_system(spec: &SystemSpec) -> (DiffPoly, DiffPoly) {
    (generic_poly(System::F1, spec.d1), generic_poly(System::F2, spec.d2))
}

/// `[δf1, δf2, f1, f2]`, the four polynomials whose multiples form the rows.
pub fn row_polynomials(spec: &SystemSpec) -> [DiffPoly; 4] {
    let (f1, f2) = generic_system(spec);
    let df1 = delta(&f1).expect("order-one input");
    let df2 = delta(&f2).expect("order-one input");
    [df1, df2, f1, f2]
}

/// Formal derivation with `δy = y1`, `δy1 = y2` and `δ` acting on
/// coefficient symbols by raising their derivative order.
///
/// Inputs must not contain `y2`; its derivative is outside the alphabet.
pub fn delta(p: &DiffPoly) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        if m.y2 > 0 {
            return Err(Error::OrderOverflow(format!("δ of a term in {m}")));
        }
        out.add_term(*m, c.derive());
        if m.y > 0 {
            let k = BigRational::from_integer(BigInt::from(m.y));
            out.add_term(YMonomial::new(m.y - 1, m.y1 + 1, 0), c.scale(&k));
        }
        if m.y1 > 0 {
            let l = BigRational::from_integer(BigInt::from(m.y1));
            out.add_term(YMonomial::new(m.y, m.y1 - 1, 1), c.scale(&l));
        }
    }
    Ok(out)
}

/// `δ^n p`.
pub fn delta_n(p: &DiffPoly, n: u32) -> Result<DiffPoly> {
    let mut q = p.clone();
    for _ in 0..n {
        q = delta(&q)?;
    }
    Ok(q)
}

/// Legend mapping the positional names of the degree-2 example
/// (`a0 .. a5`) to structural symbols.
pub fn degree_two_legend(system: System) -> Vec<(String, CoeffSymbol)> {
    let letter = system.letter();
    [(0, 2), (1, 1), (2, 0), (0, 1), (1, 0), (0, 0)]
        .iter()
        .enumerate()
        .map(|(i, &(k, l))| (format!("{letter}{i}"), CoeffSymbol::new(system, k, l)))
        .collect()
}

/// Convenience: a `DiffPoly` from integer coefficients, for fixtures.
pub fn numeric_poly(terms: &[((u32, u32, u32), i64)]) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for &((a, b, c), v) in terms {
        p.add_term(YMonomial::new(a, b, c), SymPoly::from_int(v));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial_sets::bset;
    use crate::symcore::rat;

    #[test]
    fn spec_validation() {
        assert!(SystemSpec::new(0, 1).is_err());
        assert!(SystemSpec::new(3, 2).is_err());
        let s = SystemSpec::new(2, 3).unwrap();
        assert_eq!(s.big_d(), 7);
        assert_eq!(s.big_n(), 64);
        assert_eq!(s.big_n(), s.degree_bound());
    }

    #[test]
    fn generic_supports() {
        let (f1, _) = generic_system(&SystemSpec::new(1, 1).unwrap());
        assert_eq!(f1.len(), 3);
        let (f1, _) = generic_system(&SystemSpec::new(2, 2).unwrap());
        assert_eq!(f1.len(), 6);
        assert_eq!(f1.support(), bset(3, 2).iter().copied().collect());
        // a0 y1^2 of the degree-2 example
        assert_eq!(f1.coeff(&YMonomial::new(0, 2, 0)), SymPoly::var(CoeffSymbol::a(0, 2)));
        let (_, f2) = generic_system(&SystemSpec::new(2, 3).unwrap());
        assert_eq!(f2.len(), 10);
    }

    #[test]
    fn delta_on_degree_two_example() {
        let (g1, _) = generic_system(&SystemSpec::new(2, 2).unwrap());
        let dg1 = delta(&g1).unwrap();
        // y1^2: δa0 + a1
        let a0 = CoeffSymbol::a(0, 2);
        let a1 = CoeffSymbol::a(1, 1);
        assert_eq!(
            dg1.coeff(&YMonomial::new(0, 2, 0)),
            &SymPoly::var(a0.derived()) + &SymPoly::var(a1)
        );
        // y1 y2: 2 a0
        assert_eq!(dg1.coeff(&YMonomial::new(0, 1, 1)), SymPoly::var(a0).scale(&rat(2)));
    }

    #[test]
    fn delta_of_constant_term() {
        let p = DiffPoly::constant(SymPoly::var(CoeffSymbol::a(0, 0)));
        assert_eq!(delta(&p).unwrap(), DiffPoly::constant(SymPoly::var(CoeffSymbol::a(0, 0).derived())));
        assert!(delta(&DiffPoly::var(YVar::Y2)).is_err());
    }

    #[test]
    fn delta_supports_match_closed_form() {
        for d1 in 1..=5 {
            for d2 in d1..=5 {
                let spec = SystemSpec::new(d1, d2).unwrap();
                let [df1, df2, _, _] = row_polynomials(&spec);
                for (dp, d) in [(df1, d1), (df2, d2)] {
                    let mut expect: BTreeSet<_> = bset(3, d).into_iter().collect();
                    for m in bset(3, d - 1) {
                        expect.insert(m.mul(&YMonomial::var(YVar::Y2)));
                    }
                    assert_eq!(dp.support(), expect);
                    for (_, c) in dp.terms() {
                        assert_eq!(c.total_degree(), Some(1));
                        assert!(c.is_integral());
                        assert!(c.symbols().iter().all(|s| s.deriv <= 1));
                    }
                }
            }
        }
        let [_, df2, _, _] = row_polynomials(&SystemSpec::new(2, 2).unwrap());
        assert_eq!(df2.len(), 9);
    }

    #[test]
    fn support_of_zero_is_empty() {
        assert!(DiffPoly::zero().support().is_empty());
    }

    #[test]
    fn monomial_order_matches_column_display() {
        // y2*y1^4 precedes y2*y1^3*y among degree-5 columns
        let a = YMonomial::new(0, 4, 1);
        let b = YMonomial::new(1, 3, 1);
        let c = YMonomial::new(0, 5, 0);
        assert!(a > b && b > c);
        assert!(YMonomial::new(0, 0, 5) > a);
    }

    #[test]
    fn legend_matches_positional_names() {
        let legend = degree_two_legend(System::F1);
        assert_eq!(legend[0], ("a0".to_string(), CoeffSymbol::a(0, 2)));
        assert_eq!(legend[5], ("a5".to_string(), CoeffSymbol::a(0, 0)));
    }
}
