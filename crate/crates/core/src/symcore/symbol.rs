use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which of the two input polynomials a coefficient belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum System {
    F1,
    F2,
}

impl System {
    pub fn letter(self) -> char {
        match self {
            System::F1 => 'a',
            System::F2 => 'b',
        }
    }
}

/// Coefficient indeterminate of `y^k * y1^l` in `f1` (`a`) or `f2` (`b`),
/// differentiated `deriv` times.
///
/// The `fresh` flag marks the substitution symbol `c(k,l)` that replaces
/// `a(k,l)'` when isolating the unique determinant monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffSymbol {
    pub system: System,
    pub k: u32,
    pub l: u32,
    pub deriv: u32,
    pub fresh: bool,
}

impl CoeffSymbol {
    pub const fn a(k: u32, l: u32) -> Self {
        Self { system: System::F1, k, l, deriv: 0, fresh: false }
    }

    pub const fn b(k: u32, l: u32) -> Self {
        Self { system: System::F2, k, l, deriv: 0, fresh: false }
    }

    pub const fn new(system: System, k: u32, l: u32) -> Self {
        Self { system, k, l, deriv: 0, fresh: false }
    }

    /// The fresh symbol `c(k,l)`.
    pub const fn fresh(k: u32, l: u32) -> Self {
        Self { system: System::F1, k, l, deriv: 0, fresh: true }
    }

    pub const fn with_deriv(mut self, deriv: u32) -> Self {
        self.deriv = deriv;
        self
    }

    /// `δ` of this symbol.
    pub const fn derived(self) -> Self {
        self.with_deriv(self.deriv + 1)
    }

    pub fn degree(&self) -> u32 {
        self.k + self.l
    }
}

impl fmt::Display for CoeffSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.fresh { 'c' } else { self.system.letter() };
        write!(f, "{letter}({},{})", self.k, self.l)?;
        for _ in 0..self.deriv {
            f.write_str("'")?;
        }
        Ok(())
    }
}

impl Serialize for CoeffSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoeffSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Product of coefficient symbols with positive exponents.
///
/// Stored as a list sorted by symbol with no zero exponents. Ordering is
/// graded lexicographic: total degree first, then the exponent vector read
/// in symbol order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymMonomial {
    factors: Vec<(CoeffSymbol, u32)>,
}

impl SymMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(sym: CoeffSymbol) -> Self {
        Self { factors: vec![(sym, 1)] }
    }

    pub fn from_factors<I: IntoIterator<Item = (CoeffSymbol, u32)>>(factors: I) -> Self {
        let mut out: Vec<(CoeffSymbol, u32)> = Vec::new();
        let mut v: Vec<_> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        for (s, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Self { factors: out }
    }

    pub fn factors(&self) -> &[(CoeffSymbol, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, sym: &CoeffSymbol) -> u32 {
        self.factors
            .binary_search_by(|(s, _)| s.cmp(sym))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(s, e) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 < s {
                return None;
            }
            if j < other.factors.len() && other.factors[j].0 == s {
                let oe = other.factors[j].1;
                j += 1;
                match e.cmp(&oe) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s, e - oe)),
                }
            } else {
                out.push((s, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Self { factors: out })
    }

    pub fn symbols(&self) -> impl Iterator<Item = CoeffSymbol> + '_ {
        self.factors.iter().map(|&(s, _)| s)
    }
}

impl Ord for SymMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.factors.iter().zip(&other.factors) {
                match x.0.cmp(&y.0) {
                    // the side holding the smaller symbol has a positive
                    // exponent where the other has none
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match x.1.cmp(&y.1) {
                        Ordering::Equal => {}
                        o => return o,
                    },
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for SymMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{s}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
