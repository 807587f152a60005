use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use super::{oracle, stretch, CheckDef, Outcome};
use crate::certificate;
use crate::detkit;
use crate::diffsys::{SystemSpec, YMonomial};
use crate::error::{Error, Result};
use crate::macaulay::{self, PolyMatrix};
use crate::monomial_sets::{self, MainMonomials};
use crate::sparse_lp::{self, simplex, GrcResult, Liftings};
use crate::symcore::{rat, CoeffSymbol, Specialization};

const QUARTET: &[(u32, u32)] = &[(1, 1), (1, 2), (2, 2), (2, 3)];
const CERT_SPECS: &[(u32, u32)] = &[(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)];
const SIZE_SPECS: &[(u32, u32)] = &[(1, 1), (6, 6)];

/// Common-zero specializations tried per spec.
pub const VANISHING_TRIALS: u64 = 100;

pub static CHECKS: [CheckDef; 10] = [
    CheckDef { name: "sizes", criterion: 1, specs: SIZE_SPECS, optional: false, limit_seconds: 1.0, run: sizes },
    CheckDef { name: "carra-ferro", criterion: 2, specs: &[(2, 2)], optional: false, limit_seconds: 5.0, run: carra_ferro },
    CheckDef { name: "certificate", criterion: 3, specs: CERT_SPECS, optional: false, limit_seconds: 50.0, run: certificate_check },
    CheckDef { name: "vanishing", criterion: 4, specs: QUARTET, optional: false, limit_seconds: 60.0, run: vanishing },
    CheckDef { name: "nonvanishing", criterion: 5, specs: QUARTET, optional: false, limit_seconds: 10.0, run: nonvanishing },
    CheckDef { name: "linear", criterion: 6, specs: &[(1, 1)], optional: false, limit_seconds: 1.0, run: linear },
    CheckDef { name: "lp-partition", criterion: 7, specs: &[(2, 2)], optional: false, limit_seconds: 120.0, run: lp_partition },
    CheckDef { name: "basis", criterion: 8, specs: &[(2, 2)], optional: false, limit_seconds: 60.0, run: basis },
    CheckDef { name: "oracle", criterion: 9, specs: &[(1, 1)], optional: false, limit_seconds: 30.0, run: oracle_check },
    CheckDef { name: "stretch", criterion: 10, specs: &[(2, 2)], optional: true, limit_seconds: 600.0, run: stretch_check },
];

fn spec(d1: u32, d2: u32) -> SystemSpec {
    SystemSpec::new(d1, d2).expect("check specs are valid")
}

fn attempt(f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(Outcome::error)
}

fn sizes(_seed: u64) -> Outcome {
    attempt(|| {
        let mut bad = Vec::new();
        let mut rows = Vec::new();
        for d2 in 1..=6 {
            for d1 in 1..=d2 {
                let s = spec(d1, d2);
                let n = s.big_n();
                let d = s.big_d() as usize;
                let counts = monomial_sets::closed_form_sets(&s).sizes();
                let m = macaulay::build_square_matrix(&s)?;
                let good = n == (d + 1) * (d + 1)
                    && n == 4 * ((d1 + d2 - 1) as usize).pow(2)
                    && counts.iter().sum::<usize>() == n
                    && m.nrows() == n
                    && m.ncols() == n;
                if !good {
                    bad.push(format!("({d1},{d2})"));
                }
                rows.push(json!({ "spec": [d1, d2], "n": n, "counts": counts }));
            }
        }
        let s22 = monomial_sets::closed_form_sets(&spec(2, 2)).sizes();
        let pass = bad.is_empty() && spec(2, 2).big_n() == 36 && s22 == [10, 10, 10, 6];
        let detail = if pass {
            "21 specs square with N = (D+1)^2; (2,2) is 36x36 with counts (10,10,10,6)".to_string()
        } else {
            format!("size identity broken for {bad:?}; (2,2) counts {s22:?}")
        };
        Ok(Outcome::new(pass, detail, json!(rows)))
    })
}

fn carra_ferro(_seed: u64) -> Outcome {
    attempt(|| {
        let cf = macaulay::build_carra_ferro(2, 2, 1, 1)?;
        let (r, c) = (cf.matrix.nrows(), cf.matrix.ncols());
        let zero = cf.matrix.zero_columns();
        let y2_5 = YMonomial::new(0, 0, 5);
        let pass = (r, c) == (80, 56) && cf.big_d == 5 && cf.l == 56 && cf.l1 == 20 && cf.l2 == 20 && zero.contains(&y2_5);
        let zero_s: Vec<String> = zero.iter().map(|m| m.to_string()).collect();
        Ok(Outcome::new(
            pass,
            format!("{r}x{c}, D = {}, L = {}, L1 = {}, L2 = {}, zero columns {zero_s:?}", cf.big_d, cf.l, cf.l1, cf.l2),
            json!({ "rows": r, "cols": c, "D": cf.big_d, "L": cf.l, "L1": cf.l1, "L2": cf.l2, "zero_columns": zero_s }),
        ))
    })
}

fn certificate_check(_seed: u64) -> Outcome {
    attempt(|| {
        let mut problems = Vec::new();
        let mut witness = Vec::new();
        for &(d1, d2) in CERT_SPECS {
            let s = spec(d1, d2);
            let (m, cert) = match certificate::certify(&s) {
                Ok(v) => v,
                Err(e) => {
                    problems.push(format!("({d1},{d2}): {e}"));
                    continue;
                }
            };
            let exps = cert.exponents(&s);
            let raw = certificate::unique_monomial_coefficient(&m, &cert);
            let norm = certificate::normalized_unique_coefficient(&m, &cert);
            if exps != monomial_sets::closed_form_sets(&s).sizes().map(|n| n as u32) {
                problems.push(format!("({d1},{d2}): exponents {exps:?} differ from block counts"));
            }
            if !(norm.is_one() || (-&norm).is_one()) {
                problems.push(format!("({d1},{d2}): normalized coefficient {norm}"));
            }
            witness.push(json!({
                "spec": [d1, d2],
                "unique_monomial": cert.unique_monomial.to_string(),
                "exponents": exps,
                "raw_coefficient": raw.to_string(),
                "normalized_coefficient": norm.to_string(),
            }));
        }
        let s22 = spec(2, 2);
        let e22 = certificate::certify(&s22).map(|(_, c)| c.exponents(&s22)).ok();
        if e22 != Some([10, 10, 10, 6]) {
            problems.push(format!("(2,2) exponents {e22:?}, expected [10, 10, 10, 6]"));
        }
        let pass = problems.is_empty();
        let detail = if pass {
            "5 specs certified; (2,2) unique monomial exponents (10,10,10,6), normalized coefficient ±1".into()
        } else {
            problems.join("; ")
        };
        Ok(Outcome::new(pass, detail, json!(witness)))
    })
}

/// Seed of the `k`th common-zero trial.
pub fn trial_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(k)
}

/// Counts nonzero determinants of `m` over the common-zero trials.
fn vanishing_failures(m: &PolyMatrix, s: &SystemSpec, seed: u64) -> Result<Vec<u64>> {
    let mut failures = Vec::new();
    for k in 0..VANISHING_TRIALS {
        let ts = trial_seed(seed, k);
        let z = detkit::common_zero_specialization(s, &detkit::random_point(ts, 5), ts);
        if !detkit::det_specialized(m, &z)?.is_zero() {
            failures.push(ts);
        }
    }
    Ok(failures)
}

fn vanishing(seed: u64) -> Outcome {
    attempt(|| {
        let mut witness = Vec::new();
        let mut pass = true;
        for &(d1, d2) in QUARTET {
            let s = spec(d1, d2);
            let m = macaulay::build_square_matrix(&s)?;
            let failures = vanishing_failures(&m, &s, seed)?;
            pass &= failures.is_empty();
            witness.push(json!({ "spec": [d1, d2], "zeros": VANISHING_TRIALS as usize - failures.len(), "failing_seeds": failures }));
        }
        Ok(Outcome::new(pass, format!("{VANISHING_TRIALS} common-zero specializations per spec"), json!(witness)))
    })
}

fn probe(m: &PolyMatrix, s: &SystemSpec, seed: u64) -> Result<serde_json::Value> {
    let found = detkit::nonvanishing_probe(m, &s.symbol_universe(), seed)?;
    Ok(match found {
        Some((v, used)) => json!({ "spec": [s.d1, s.d2], "seed": used, "digits": v.numer().to_string().len() }),
        None => json!({ "spec": [s.d1, s.d2], "seed": seed, "nonzero": false }),
    })
}

fn nonvanishing(seed: u64) -> Outcome {
    attempt(|| {
        let mut witness = Vec::new();
        for &(d1, d2) in QUARTET {
            let s = spec(d1, d2);
            witness.push(probe(&macaulay::build_square_matrix(&s)?, &s, seed)?);
        }
        let pass = witness.iter().all(|w| w.get("nonzero").is_none());
        Ok(Outcome::new(pass, "random integer specialization gives det != 0 within 10 tries", json!(witness)))
    })
}

/// Specialization of `spec(1,1)` with every symbol zero except the listed
/// coefficients `(system, k, l) -> value` of `f1, f2`.
fn linear_fixture(assign: &[(u8, u32, u32, i64)]) -> Specialization {
    let s = spec(1, 1);
    let mut sp = Specialization::over(s.symbol_universe(), |_| BigRational::zero());
    for &(sys, k, l, v) in assign {
        let sym = if sys == 1 { CoeffSymbol::a(k, l) } else { CoeffSymbol::b(k, l) };
        sp.insert(sym, rat(v));
    }
    sp
}

fn linear(seed: u64) -> Outcome {
    attempt(|| {
        let s = spec(1, 1);
        let m = macaulay::build_square_matrix(&s)?;
        let labels: Vec<String> = m.rows().iter().map(|r| r.to_string()).collect();
        let cols: Vec<String> = m.cols().iter().map(|c| c.to_string()).collect();
        let layout = labels == ["1*df1", "1*df2", "1*f1", "1*f2"] && cols == ["y2", "y1", "y", "1"];
        // f1 = y1 + 1, f2 = y1 + y
        let unit = detkit::det_specialized(&m, &linear_fixture(&[(1, 0, 1, 1), (1, 0, 0, 1), (2, 0, 1, 1), (2, 1, 0, 1)]))?;
        // f1 = y1 + y, f2 = y1 - y
        let zero = detkit::det_specialized(&m, &linear_fixture(&[(1, 0, 1, 1), (1, 1, 0, 1), (2, 0, 1, 1), (2, 1, 0, -1)]))?;
        let sym = detkit::det_symbolic(&m)?;
        let universe = s.symbol_universe();
        let mut disagree = Vec::new();
        for k in 0..50 {
            let ts = trial_seed(seed, k);
            let sp = detkit::random_specialization(&universe, ts, 50);
            if sym.eval(&sp)? != detkit::det_specialized(&m, &sp)? {
                disagree.push(ts);
            }
        }
        let deg = sym.total_degree().unwrap_or(0);
        let unit_ok = unit.is_one() || (-&unit).is_one();
        let pass = layout && unit_ok && zero.is_zero() && disagree.is_empty() && deg <= 4;
        Ok(Outcome::new(
            pass,
            format!("layout {layout}, fixtures det = {unit} and {zero}, 50 symbolic/specialized agreements, degree {deg}"),
            json!({ "rows": labels, "cols": cols, "unit_det": unit.to_string(), "zero_det": zero.to_string(),
                    "degree": deg, "terms": sym.len(), "disagreeing_seeds": disagree }),
        ))
    })
}

static PAPER_GRC: OnceLock<std::result::Result<GrcResult, Error>> = OnceLock::new();

/// Row-content partition of `spec(2,2)` under the published liftings.
fn paper_grc() -> Result<&'static GrcResult> {
    PAPER_GRC
        .get_or_init(|| sparse_lp::grc_partition(&spec(2, 2), &Liftings::paper(), &sparse_lp::default_delta()))
        .as_ref()
        .map_err(Clone::clone)
}

fn lp_partition(seed: u64) -> Outcome {
    attempt(|| {
        let s = spec(2, 2);
        let delta = sparse_lp::default_delta();
        let mut problems = Vec::new();
        let report = sparse_lp::validate_liftings(&Liftings::paper());
        if !report.is_valid() {
            problems.push(format!("liftings violate {:?}", report.violated));
        }
        let e = monomial_sets::column_set(&s);
        let expected: BTreeSet<_> = e.iter().map(sparse_lp::lattice_point_of).collect();
        let pts = sparse_lp::lattice_points(&s, &delta)?;
        if pts.len() != 36 || pts != expected {
            problems.push(format!("{} lattice points, equal to (1,1,1)+E: {}", pts.len(), pts == expected));
        }
        let grc = paper_grc()?;
        if let Err(err) = grc.partition.validate(&e) {
            problems.push(format!("row-content partition: {err}"));
        }
        let mm = MainMonomials::for_spec(&s);
        let target = monomial_sets::partition_divisibility(&e, &mm);
        let moved = sparse_lp::apply_moves(&grc.partition, &sparse_lp::paper_moves(), &s)?;
        if moved.sets != target.sets {
            problems.push("moved partition differs from the divisibility partition".into());
        }
        let sparse = sparse_lp::build_sparse_matrix(&moved, &s)?;
        let square = macaulay::build_square_matrix(&s)?;
        if sparse.cols() != square.cols() || sparse.labeled_rows() != square.labeled_rows() {
            problems.push("moved matrix is not a row permutation of the square matrix".into());
        }
        let raw = sparse_lp::build_sparse_matrix(&grc.partition, &s)?;
        let failures = vanishing_failures(&raw, &s, seed)?;
        if !failures.is_empty() {
            problems.push(format!("raw matrix nonzero at common zeros, seeds {failures:?}"));
        }
        let nz = probe(&raw, &s, seed)?;
        if nz.get("nonzero").is_some() {
            problems.push("raw matrix determinant vanished on every probe".into());
        }
        let pass = problems.is_empty();
        let detail = if pass {
            format!("raw sizes {:?}, moves give the divisibility partition, raw matrix passes vanishing and nonvanishing", grc.partition.sizes())
        } else {
            problems.join("; ")
        };
        let diff = sparse_lp::partition_diff(&grc.partition, &target);
        Ok(Outcome::new(
            pass,
            detail,
            json!({
                "raw_sizes": grc.partition.sizes(),
                "moved_sizes": moved.sizes(),
                "raw_minus_target": diff.iter().map(|(a, _)| a.iter().map(|m| m.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "nonvanishing": nz,
            }),
        ))
    })
}

fn basis(_seed: u64) -> Outcome {
    attempt(|| {
        let s = spec(2, 2);
        let grc = paper_grc()?;
        let uncertified: Vec<_> = grc.assignments.iter().filter(|a| a.basis.is_none()).map(|a| a.point).collect();
        let a = sparse_lp::constraint_matrix(&s);
        let rank_a = simplex::rank(&a);
        let (_, codes) = sparse_lp::VET_LISTS[0];
        let rank_b11 = simplex::rank(&sparse_lp::basis_matrix(&a, &sparse_lp::vet_basis(&codes)));
        let shape = (a.len(), a.first().map_or(0, Vec::len));
        let pass = grc.assignments.len() == 36 && uncertified.is_empty() && rank_a == 7 && rank_b11 == 7 && shape == (7, 18);
        let used: BTreeSet<&str> = grc.assignments.iter().filter_map(|a| a.basis).collect();
        Ok(Outcome::new(
            pass,
            format!(
                "{}/36 points certified by a case-list basis, A is {}x{} of rank {rank_a}, rank(B11) = {rank_b11}",
                36 - uncertified.len(),
                shape.0,
                shape.1
            ),
            json!({ "uncertified": uncertified, "bases_used": used }),
        ))
    })
}

fn oracle_check(seed: u64) -> Outcome {
    attempt(|| {
        let s = spec(1, 1);
        let m = macaulay::build_square_matrix(&s)?;
        let mut mismatches = Vec::new();
        let mut collapsed = 0;
        for k in 0..VANISHING_TRIALS {
            let ts = trial_seed(seed, k);
            let z = detkit::common_zero_specialization(&s, &detkit::random_point(ts, 5), ts);
            let det_zero = detkit::det_specialized(&m, &z)?.is_zero();
            let oracle_zero = match oracle::eliminate_iterated(&s, Some(&z)) {
                Ok(r) => r.is_zero(),
                // a vanished intermediate makes every later resultant zero
                Err(Error::IntermediateZero(_)) => {
                    collapsed += 1;
                    true
                }
                Err(e) => return Err(e),
            };
            if !(det_zero && oracle_zero) {
                mismatches.push(ts);
            }
        }
        let universe = s.symbol_universe();
        let generic = detkit::random_specialization(&universe, seed, detkit::PROBE_RANGE);
        let det_g = detkit::det_specialized(&m, &generic)?;
        let oracle_g = oracle::eliminate_iterated(&s, Some(&generic))?;
        let pass = mismatches.is_empty() && !det_g.is_zero() && !oracle_g.is_zero();
        Ok(Outcome::new(
            pass,
            format!(
                "both vanish on {}/{VANISHING_TRIALS} common zeros ({collapsed} collapsed early), generic: det != 0 {}, oracle != 0 {}",
                VANISHING_TRIALS as usize - mismatches.len(),
                !det_g.is_zero(),
                !oracle_g.is_zero()
            ),
            json!({ "mismatching_seeds": mismatches, "collapsed": collapsed, "generic_seed": seed }),
        ))
    })
}

fn stretch_check(seed: u64) -> Outcome {
    attempt(|| {
        let report = stretch::probe(seed)?;
        let pass = report.attained();
        Ok(Outcome::new(pass, report.summary(), serde_json::to_value(&report).unwrap_or_default()))
    })
}
