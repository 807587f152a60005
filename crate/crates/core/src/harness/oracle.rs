//! Independent elimination by iterated Sylvester resultants: `y2` from
//! `(δf1, δf2)`, then `y1`, then `y`.

use std::collections::HashMap;

use crate::diffsys::{self, DiffPoly, SystemSpec, YVar};
use crate::error::{Error, Result};
use crate::symcore::{Specialization, SymPoly};

/// Sylvester matrix of `p` and `q` with respect to `var`; entries are
/// polynomials in the remaining variables.
pub fn sylvester_matrix(p: &DiffPoly, q: &DiffPoly, var: YVar) -> Result<Vec<Vec<DiffPoly>>> {
    let m = p.degree_in(var).unwrap_or(0);
    let n = q.degree_in(var).unwrap_or(0);
    sylvester_matrix_formal(p, q, var, (m, n))
}

/// Sylvester matrix for the formal degrees `(m, n)`, which may exceed the
/// actual degrees; vanished leading coefficients stay as zero entries.
pub fn sylvester_matrix_formal(p: &DiffPoly, q: &DiffPoly, var: YVar, (m, n): (u32, u32)) -> Result<Vec<Vec<DiffPoly>>> {
    let (m, n) = (m as usize, n as usize);
    if m == 0 || n == 0 {
        return Err(Error::DegreeZero);
    }
    let (mut pc, mut qc) = (p.coeffs_in(var), q.coeffs_in(var));
    if pc.len() > m + 1 || qc.len() > n + 1 {
        return Err(Error::InvalidSpec(format!("formal degrees ({m}, {n}) below the actual degrees")));
    }
    pc.resize(m + 1, DiffPoly::zero());
    qc.resize(n + 1, DiffPoly::zero());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, deg, shifts) in [(&pc, m, n), (&qc, n, m)] {
        for s in 0..shifts {
            let mut row = vec![DiffPoly::zero(); size];
            for i in 0..=deg {
                row[s + i] = coeffs[deg - i].clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant by Laplace expansion along rows with minors memoized by
/// their column set. Needs no division.
pub fn det_expand(a: &[Vec<DiffPoly>]) -> DiffPoly {
    let n = a.len();
    if n == 0 {
        return DiffPoly::constant(SymPoly::one());
    }
    assert!(n <= 20 && a.iter().all(|r| r.len() == n), "square matrix of size <= 20 expected");
    // minors of the last rows, keyed by the column mask they use
    let mut minors: HashMap<u32, DiffPoly> = HashMap::new();
    for (c, v) in a[n - 1].iter().enumerate() {
        if !v.is_zero() {
            minors.insert(1 << c, v.clone());
        }
    }
    for k in (0..n - 1).rev() {
        let mut next: HashMap<u32, DiffPoly> = HashMap::new();
        for (mask, minor) in &minors {
            for (c, v) in a[k].iter().enumerate() {
                if v.is_zero() || mask & (1 << c) != 0 {
                    continue;
                }
                let pos = (mask & ((1u32 << c) - 1)).count_ones();
                let term = v * minor;
                let entry = next.entry(mask | (1 << c)).or_insert_with(DiffPoly::zero);
                *entry = if pos % 2 == 0 { &*entry + &term } else { &*entry - &term };
            }
        }
        next.retain(|_, v| !v.is_zero());
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1).max(1)).unwrap_or_else(DiffPoly::zero)
}

/// `res_var(p, q)`.
pub fn sylvester_resultant(p: &DiffPoly, q: &DiffPoly, var: YVar) -> Result<DiffPoly> {
    Ok(det_expand(&sylvester_matrix(p, q, var)?))
}

/// `res_var(p, q)` taken with formal degrees `(m, n)`.
pub fn sylvester_resultant_formal(p: &DiffPoly, q: &DiffPoly, var: YVar, degrees: (u32, u32)) -> Result<DiffPoly> {
    Ok(det_expand(&sylvester_matrix_formal(p, q, var, degrees)?))
}

fn resultant(p: &DiffPoly, q: &DiffPoly, var: YVar, formal: Option<(u32, u32)>) -> Result<DiffPoly> {
    match formal {
        Some(deg) => sylvester_resultant_formal(p, q, var, deg),
        None => sylvester_resultant(p, q, var),
    }
}

/// Degree pairs used at the four stages `g, h1, h2, r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageDegrees(pub [(u32, u32); 4]);

impl StageDegrees {
    /// Degrees of the generic system, read off at a fixed random point;
    /// a random point of width `10^6` gives the generic degrees with
    /// overwhelming probability.
    pub fn generic(spec: &SystemSpec) -> Result<Self> {
        let s = crate::detkit::random_specialization(&spec.symbol_universe(), 0x5eed, crate::detkit::PROBE_RANGE);
        let rows = diffsys::row_polynomials(spec).map(|p| p.partial_specialize(&s));
        Ok(eliminate_rows_formal(&rows, None)?.degrees)
    }
}

/// Intermediate resultants of the elimination.
#[derive(Clone, Debug)]
pub struct IteratedElimination {
    /// `res_y2(δf1, δf2)`.
    pub g: DiffPoly,
    /// `res_y1(f1, f2)`.
    pub h1: DiffPoly,
    /// `res_y1(f1, g)`.
    pub h2: DiffPoly,
    /// `res_y(h1, h2)`.
    pub r: SymPoly,
    /// Degrees the four resultants were taken with.
    pub degrees: StageDegrees,
}

fn nonzero(p: DiffPoly, what: &str) -> Result<DiffPoly> {
    if p.is_zero() {
        Err(Error::IntermediateZero(what.to_string()))
    } else {
        Ok(p)
    }
}

/// Runs the elimination on explicit row polynomials `[δf1, δf2, f1, f2]`
/// with their actual degrees.
pub fn eliminate_rows(rows: &[DiffPoly; 4]) -> Result<IteratedElimination> {
    eliminate_rows_formal(rows, None)
}

/// As [`eliminate_rows`], taking each resultant with the given formal
/// degrees so the result is the specialization of the generic one.
pub fn eliminate_rows_formal(rows: &[DiffPoly; 4], formal: Option<&StageDegrees>) -> Result<IteratedElimination> {
    let [df1, df2, f1, f2] = rows;
    let deg = |p: &DiffPoly, v: YVar| p.degree_in(v).unwrap_or(0);
    let pick = |k: usize, p: &DiffPoly, q: &DiffPoly, v: YVar| formal.map_or((deg(p, v), deg(q, v)), |f| f.0[k]);
    let mut used = [(0, 0); 4];
    used[0] = pick(0, df1, df2, YVar::Y2);
    let g = nonzero(resultant(df1, df2, YVar::Y2, Some(used[0]))?, "res_y2(df1, df2)")?;
    used[1] = pick(1, f1, f2, YVar::Y1);
    let h1 = nonzero(resultant(f1, f2, YVar::Y1, Some(used[1]))?, "res_y1(f1, f2)")?;
    used[2] = pick(2, f1, &g, YVar::Y1);
    let h2 = nonzero(resultant(f1, &g, YVar::Y1, Some(used[2]))?, "res_y1(f1, g)")?;
    used[3] = pick(3, &h1, &h2, YVar::Y);
    let r = resultant(&h1, &h2, YVar::Y, Some(used[3]))?;
    let r = r.coeff(&diffsys::YMonomial::ONE);
    Ok(IteratedElimination { g, h1, h2, r, degrees: StageDegrees(used) })
}

/// Eliminates `y2, y1, y` from the generic system. With `s`, the symbols it
/// assigns are substituted first and every resultant keeps the generic
/// formal degrees, so the output is the generic result specialized.
pub fn eliminate_iterated(spec: &SystemSpec, s: Option<&Specialization>) -> Result<SymPoly> {
    let rows = diffsys::row_polynomials(spec);
    match s {
        Some(s) => {
            let formal = StageDegrees::generic(spec)?;
            Ok(eliminate_rows_formal(&rows.map(|p| p.partial_specialize(s)), Some(&formal))?.r)
        }
        None => Ok(eliminate_rows(&rows)?.r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detkit;
    use crate::diffsys::YMonomial;
    use crate::symcore::{rat, CoeffSymbol};

    fn sym(s: &str) -> SymPoly {
        s.parse().unwrap()
    }

    #[test]
    fn linear_resultant() {
        let s = CoeffSymbol::a(0, 0);
        let t = CoeffSymbol::b(0, 0);
        let y = DiffPoly::var(YVar::Y);
        let p = &y - &DiffPoly::constant(SymPoly::var(s));
        let q = &y - &DiffPoly::constant(SymPoly::var(t));
        let r = sylvester_resultant(&p, &q, YVar::Y).unwrap();
        let d = &SymPoly::var(t) - &SymPoly::var(s);
        assert!(r.coeff(&YMonomial::ONE) == d || r.coeff(&YMonomial::ONE) == -d);
        assert!(sylvester_resultant(&p, &p, YVar::Y).unwrap().is_zero());
        assert_eq!(sylvester_resultant(&p, &DiffPoly::constant(SymPoly::one()), YVar::Y).unwrap_err(), Error::DegreeZero);
    }

    #[test]
    fn y2_resultant_of_linear_system_is_cross_determinant() {
        let spec = SystemSpec::new(1, 1).unwrap();
        let [df1, df2, _, _] = diffsys::row_polynomials(&spec);
        let g = sylvester_resultant(&df1, &df2, YVar::Y2).unwrap();
        // df_i = c_i*y2 + r_i, so the resultant is c1*r2 - c2*r1
        let c1 = df1.coeffs_in(YVar::Y2);
        let c2 = df2.coeffs_in(YVar::Y2);
        let expect = &(&c1[1] * &c2[0]) - &(&c2[1] * &c1[0]);
        assert_eq!(g, expect);
        assert_eq!(c1[1].coeff(&YMonomial::ONE), sym("a(0,1)"));
    }

    #[test]
    fn expansion_matches_bareiss() {
        let spec = SystemSpec::new(1, 1).unwrap();
        let m = crate::macaulay::build_square_matrix(&spec).unwrap();
        let dense: Vec<Vec<DiffPoly>> = (0..4)
            .map(|r| (0..4).map(|c| DiffPoly::constant(m.get(r, c).cloned().unwrap_or_default())).collect())
            .collect();
        assert_eq!(det_expand(&dense).coeff(&YMonomial::ONE), detkit::det_symbolic(&m).unwrap());
    }

    #[test]
    fn oracle_vanishes_on_common_zeros() {
        let spec = SystemSpec::new(1, 1).unwrap();
        for seed in 0..10 {
            let s = detkit::common_zero_specialization(&spec, &detkit::random_point(seed, 4), seed);
            match eliminate_iterated(&spec, Some(&s)) {
                Ok(r) => assert!(r.is_zero()),
                Err(e) => assert!(matches!(e, Error::IntermediateZero(_))),
            }
        }
        let generic = detkit::random_specialization(&spec.symbol_universe(), 3, 100);
        assert!(!eliminate_iterated(&spec, Some(&generic)).unwrap().is_zero());
    }

    #[test]
    fn formal_degrees_survive_a_vanished_leading_coefficient() {
        let spec = SystemSpec::new(1, 1).unwrap();
        let mut s = detkit::random_specialization(&spec.symbol_universe(), 11, 30);
        s.insert(CoeffSymbol::a(1, 0), rat(0));
        let generic = eliminate_iterated(&spec, None).unwrap();
        assert_eq!(eliminate_iterated(&spec, Some(&s)).unwrap(), SymPoly::constant(generic.eval(&s).unwrap()));
    }

    #[test]
    fn collapse_is_reported() {
        let spec = SystemSpec::new(1, 1).unwrap();
        // f1 = f2 makes every resultant vanish
        let mut s = Specialization::over(spec.symbol_universe(), |_| rat(0));
        for (k, l) in [(0, 0), (1, 0), (0, 1)] {
            s.insert(CoeffSymbol::a(k, l), rat(1));
            s.insert(CoeffSymbol::b(k, l), rat(1));
        }
        assert!(matches!(eliminate_iterated(&spec, Some(&s)), Err(Error::IntermediateZero(_))));
    }
}
