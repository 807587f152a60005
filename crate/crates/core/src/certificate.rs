//! Certificate that `det(D_{d1,d2})` is not identically zero.
//!
//! After replacing `δa(d1-1,1)` by `c(d1-1,1) - d1*a(d1,0)`, four symbols are
//! peeled off in turn. Each occurs exactly once in every row of one row
//! family and nowhere else in the remaining submatrix, so the product of
//! their powers is a monomial that occurs once in the determinant expansion.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diffsys::{SystemSpec, YMonomial};
use crate::error::{Error, Result};
use crate::macaulay::{PolyMatrix, RowLabel, RowPoly};
use crate::monomial_sets::{self, MainMonomials};
use crate::symcore::{CoeffSymbol, Specialization, SymMonomial, SymPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertStep {
    pub symbol: CoeffSymbol,
    pub deleted_rows: Vec<RowLabel>,
    pub deleted_cols: Vec<YMonomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<CertStep>,
    pub unique_monomial: SymMonomial,
    /// `(row, column)` index pairs in the transformed matrix, one per row.
    pub transversal: Vec<(usize, usize)>,
}

impl Certificate {
    /// `(n1, n2, n3, n4)`: exponents of `a(0,d1)`, `δb(0,d2)`, `a(d1,0)`, `b(0,0)`.
    pub fn exponents(&self, spec: &SystemSpec) -> [u32; 4] {
        unique_symbols(spec).map(|s| self.unique_monomial.exponent(&s))
    }
}

/// The symbol removed by the substitution.
pub fn substituted_symbol(spec: &SystemSpec) -> CoeffSymbol {
    CoeffSymbol::a(spec.d1 - 1, 1).derived()
}

/// Symbols of the unique monomial, in the order `a(0,d1)`, `δb(0,d2)`,
/// `a(d1,0)`, `b(0,0)`; these are the coefficients of the main monomials
/// of `δf1, δf2, f1, f2`.
pub fn unique_symbols(spec: &SystemSpec) -> [CoeffSymbol; 4] {
    [
        CoeffSymbol::a(0, spec.d1),
        CoeffSymbol::b(0, spec.d2).derived(),
        CoeffSymbol::a(spec.d1, 0),
        CoeffSymbol::b(0, 0),
    ]
}

/// Replaces `δa(d1-1,1)` by `c(d1-1,1) - d1*a(d1,0)`.
pub fn transform_12(m: &PolyMatrix, spec: &SystemSpec) -> PolyMatrix {
    let old = substituted_symbol(spec);
    let repl = &SymPoly::var(CoeffSymbol::fresh(spec.d1 - 1, 1))
        - &SymPoly::var(CoeffSymbol::a(spec.d1, 0)).scale(&BigRational::from_integer(spec.d1.into()));
    m.map_entries(|e| if e.contains_symbol(&old) { e.substitute(old, &repl) } else { e.clone() })
}

struct Plan {
    symbol: CoeffSymbol,
    family: RowPoly,
    cols: BTreeSet<YMonomial>,
}

/// Steps in elimination order: `a(d1,0)` on `f1` rows, `a(0,d1)` on `δf1`
/// rows, `b(0,0)` on `f2` rows, `δb(0,d2)` on `δf2` rows.
fn plans(spec: &SystemSpec) -> Vec<Plan> {
    let closed = monomial_sets::closed_form_sets(spec);
    let mm = MainMonomials::for_spec(spec);
    let shifted = |s: &monomial_sets::MonomialSet, by: YMonomial| s.iter().map(|x| x.mul(&by)).collect();
    let [u1, u2, u3, u4] = unique_symbols(spec);
    vec![
        Plan { symbol: u3, family: RowPoly::F1, cols: shifted(&closed.t1, mm.get(2)) },
        Plan { symbol: u1, family: RowPoly::DF1, cols: shifted(&closed.b1, mm.get(0)) },
        Plan { symbol: u4, family: RowPoly::F2, cols: shifted(&closed.t2, mm.get(3)) },
        Plan { symbol: u2, family: RowPoly::DF2, cols: shifted(&closed.b2, mm.get(1)) },
    ]
}

/// Runs the four elimination steps on a transformed matrix.
pub fn eliminate(m: &PolyMatrix, spec: &SystemSpec) -> Result<Certificate> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let mut rows_left: BTreeSet<usize> = (0..m.nrows()).collect();
    let mut cols_left: BTreeSet<usize> = (0..m.ncols()).collect();
    let mut steps = Vec::new();
    let mut transversal = Vec::new();
    let mut exponents = BTreeMap::new();
    for (k, plan) in plans(spec).into_iter().enumerate() {
        let step = k + 1;
        let fail = |detail: String| Error::CertificateFailure { step, detail };
        let mut hits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &r in &rows_left {
            for (c, e) in m.row(r) {
                if cols_left.contains(&c) && e.contains_symbol(&plan.symbol) {
                    hits.entry(r).or_default().push(c);
                }
            }
        }
        let family: Vec<usize> = rows_left.iter().copied().filter(|&r| m.rows()[r].poly == plan.family).collect();
        for (&r, cs) in &hits {
            if m.rows()[r].poly != plan.family {
                return Err(fail(format!("{} occurs in row {} outside the {} family", plan.symbol, m.rows()[r], plan.family)));
            }
            if cs.len() != 1 {
                return Err(fail(format!("{} occurs {} times in row {}", plan.symbol, cs.len(), m.rows()[r])));
            }
        }
        let mut used = BTreeSet::new();
        for &r in &family {
            let c = hits
                .get(&r)
                .map(|cs| cs[0])
                .ok_or_else(|| fail(format!("{} missing from row {}", plan.symbol, m.rows()[r])))?;
            if !used.insert(c) {
                return Err(fail(format!("{} occurs twice in column {}", plan.symbol, m.cols()[c])));
            }
            transversal.push((r, c));
        }
        let found: BTreeSet<YMonomial> = used.iter().map(|&c| m.cols()[c]).collect();
        if found != plan.cols {
            return Err(fail(format!("{} occupies {} columns, expected {}", plan.symbol, found.len(), plan.cols.len())));
        }
        exponents.insert(plan.symbol, family.len() as u32);
        steps.push(CertStep {
            symbol: plan.symbol,
            deleted_rows: family.iter().map(|&r| m.rows()[r]).collect(),
            deleted_cols: used.iter().map(|&c| m.cols()[c]).collect(),
        });
        for r in &family {
            rows_left.remove(r);
        }
        for c in &used {
            cols_left.remove(c);
        }
    }
    if !rows_left.is_empty() || !cols_left.is_empty() {
        return Err(Error::CertificateFailure {
            step: 4,
            detail: format!("{} rows and {} columns left over", rows_left.len(), cols_left.len()),
        });
    }
    transversal.sort_unstable();
    Ok(Certificate { steps, unique_monomial: SymMonomial::from_factors(exponents), transversal })
}

/// Sign of the permutation `row -> column` given by the transversal.
pub fn transversal_sign(transversal: &[(usize, usize)]) -> i32 {
    let n = transversal.len();
    let mut perm = vec![0usize; n];
    for &(r, c) in transversal {
        perm[r] = c;
    }
    let mut seen = vec![false; n];
    let mut sign = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Coefficient of the unique monomial in `det(m)`: the transversal sign
/// times the product of the step symbols' coefficients in their entries.
pub fn unique_monomial_coefficient(m: &PolyMatrix, cert: &Certificate) -> BigRational {
    let symbol_of: BTreeMap<RowPoly, CoeffSymbol> = cert
        .steps
        .iter()
        .filter_map(|s| s.deleted_rows.first().map(|r| (r.poly, s.symbol)))
        .collect();
    let mut v = BigRational::from_integer(transversal_sign(&cert.transversal).into());
    for &(r, c) in &cert.transversal {
        let sym = symbol_of[&m.rows()[r].poly];
        v *= m.get(r, c).map(|e| e.linear_coeff(sym)).unwrap_or_else(BigRational::zero);
    }
    v
}

/// The coefficient divided by the product of the step symbols' entry
/// coefficients; always `±1`.
pub fn normalized_unique_coefficient(m: &PolyMatrix, cert: &Certificate) -> BigRational {
    let sym_of: BTreeMap<RowPoly, CoeffSymbol> =
        cert.steps.iter().filter_map(|s| s.deleted_rows.first().map(|r| (r.poly, s.symbol))).collect();
    let unit = cert
        .transversal
        .iter()
        .fold(BigRational::one(), |acc, &(r, c)| acc * m.get(r, c).map(|e| e.linear_coeff(sym_of[&m.rows()[r].poly])).unwrap_or_default());
    unique_monomial_coefficient(m, cert) / unit
}

/// Specialization giving the four unique symbols the values `v` and every
/// other symbol of `m` zero. Under it `det(m)` reduces to the unique
/// monomial's term.
pub fn isolating_specialization(m: &PolyMatrix, spec: &SystemSpec, v: [i64; 4]) -> Specialization {
    let mut s = Specialization::over(m.symbols(), |_| BigRational::zero());
    for (sym, val) in unique_symbols(spec).into_iter().zip(v) {
        s.insert(sym, BigRational::from_integer(val.into()));
    }
    s
}

/// Builds, transforms and certifies `D_{d1,d2}`.
pub fn certify(spec: &SystemSpec) -> Result<(PolyMatrix, Certificate)> {
    let m = transform_12(&crate::macaulay::build_square_matrix(spec)?, spec);
    let cert = eliminate(&m, spec)?;
    Ok((m, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detkit::det_specialized;
    use crate::macaulay::build_square_matrix;
    use crate::symcore::rat;
    use num_traits::Signed;

    fn spec(d1: u32, d2: u32) -> SystemSpec {
        SystemSpec::new(d1, d2).unwrap()
    }

    #[test]
    fn transform_touches_only_the_substituted_symbol() {
        let s = spec(2, 2);
        let d = build_square_matrix(&s).unwrap();
        let t = transform_12(&d, &s);
        let old = substituted_symbol(&s);
        assert!(!t.symbols().contains(&old));
        assert!(t.symbols().contains(&CoeffSymbol::fresh(1, 1)));
        for r in 0..d.nrows() {
            for (c, e) in d.row(r) {
                if !e.contains_symbol(&old) {
                    assert_eq!(t.get(r, c), Some(e));
                }
            }
        }
        // δf1 coefficient of y*y1 was δa(1,1) + 2*a(2,0), now c(1,1) alone
        let row = t.rows().iter().position(|l| l.poly == RowPoly::DF1 && l.multiplier == YMonomial::ONE).unwrap();
        let col = t.col_index(&YMonomial::new(1, 1, 0)).unwrap();
        assert_eq!(t.get(row, col), Some(&SymPoly::var(CoeffSymbol::fresh(1, 1))));
        assert_eq!(transform_12(&t, &s), t);
    }

    #[test]
    fn linear_certificate_is_antidiagonal_read_off() {
        let s = spec(1, 1);
        let (m, cert) = certify(&s).unwrap();
        assert_eq!(cert.transversal, vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(m.get(0, 0), Some(&SymPoly::var(CoeffSymbol::a(0, 1))));
        assert_eq!(cert.exponents(&s), [1, 1, 1, 1]);
        assert_eq!(unique_monomial_coefficient(&m, &cert), rat(1));
    }

    #[test]
    fn certificates_for_small_specs() {
        for (d1, d2) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
            let s = spec(d1, d2);
            let (m, cert) = certify(&s).unwrap();
            let sizes = monomial_sets::closed_form_sets(&s).sizes().map(|n| n as u32);
            assert_eq!(cert.exponents(&s), sizes);
            let cols: BTreeSet<YMonomial> = cert.steps.iter().flat_map(|st| st.deleted_cols.iter().copied()).collect();
            assert_eq!(cols.len(), s.big_n());
            assert_eq!(cert.transversal.len(), s.big_n());
            assert_eq!(normalized_unique_coefficient(&m, &cert).abs(), rat(1));
            // independent check: only the unique monomial survives the isolating specialization
            let v = [2, 3, 5, 7];
            let det = det_specialized(&m, &isolating_specialization(&m, &s, v)).unwrap();
            let coeff = unique_monomial_coefficient(&m, &cert);
            let powers = v.iter().zip(sizes).fold(rat(1), |acc, (&b, e)| acc * rat(b).pow(e as i32));
            assert_eq!(det, coeff * powers);
        }
    }

    #[test]
    fn quadratic_exponents() {
        let s = spec(2, 2);
        let (m, cert) = certify(&s).unwrap();
        assert_eq!(cert.exponents(&s), [10, 10, 10, 6]);
        assert_eq!(cert.unique_monomial.to_string(), "a(0,2)^10*a(2,0)^10*b(0,0)^6*b(0,2)'^10");
        assert_eq!(unique_monomial_coefficient(&m, &cert).abs(), rat(2).pow(10));
    }

    #[test]
    fn untransformed_matrix_fails_at_a_step() {
        let s = spec(2, 2);
        let d = build_square_matrix(&s).unwrap();
        assert!(matches!(eliminate(&d, &s), Err(Error::CertificateFailure { step: 1, .. })));
    }

    #[test]
    fn permutation_sign() {
        assert_eq!(transversal_sign(&[(0, 0), (1, 1)]), 1);
        assert_eq!(transversal_sign(&[(0, 1), (1, 0)]), -1);
        assert_eq!(transversal_sign(&[(0, 1), (1, 2), (2, 0)]), 1);
    }
}
