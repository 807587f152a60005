//! Probe of the common factor of `det(D_{2,2})` and the iterated resultant
//! under `a(0,2) = b(0,2) = 1` with every derived symbol zero.
//!
//! Both sides are restricted to a random line `p + t q` in the remaining
//! ten symbols, interpolated in `t` modulo a large prime, and compared by
//! univariate gcd. Degrees along a random line equal total degrees of the
//! multivariate factors with high probability.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::oracle;
use crate::detkit;
use crate::diffsys::{self, DiffPoly, SystemSpec, YMonomial, YVar};
use crate::error::{Error, Result};
use crate::macaulay;
use crate::symcore::{rat, CoeffSymbol, Specialization};

/// Degree and term count of the factor being sought.
pub const TARGET_DEGREE: usize = 12;
pub const TARGET_TERMS: usize = 3210;

/// Interpolation nodes; above every degree bound involved (`det <= 36`,
/// iterated resultant `<= 52`).
const SAMPLES: u64 = 64;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StretchReport {
    pub seed: u64,
    pub prime: u64,
    /// Degree in `t` of `det(D_{2,2})` along the line.
    pub det_degree: usize,
    /// Degree in `t` of the iterated resultant along the line.
    pub oracle_degree: usize,
    /// Degree of `gcd(det, oracle)`.
    pub common_degree: usize,
    /// Degree of the gcd with `res_y(h1, f1(y, 0))`, the branch from the
    /// factor `y1` of `res_y2(δf1, δf2)`.
    pub constant_branch_degree: usize,
    /// Degree of the gcd with `res_y(h1, res_y1(f1, J))`, `J` the Jacobian
    /// branch.
    pub jacobian_branch_degree: usize,
    /// Degree of the part of the Jacobian-branch gcd that `det` also
    /// carries in its cofactor.
    pub repeated_degree: usize,
    /// Free symbols dividing the residual factor, with multiplicity.
    pub symbol_factors: Vec<(String, usize)>,
    /// Degree of the Jacobian-branch gcd with the repeated part and symbol
    /// factors removed.
    pub residual_degree: usize,
    /// Term count of the residual factor, when it could be recovered.
    pub terms: Option<usize>,
}

impl StretchReport {
    pub fn attained(&self) -> bool {
        self.residual_degree == TARGET_DEGREE && self.terms == Some(TARGET_TERMS)
    }

    pub fn summary(&self) -> String {
        format!(
            "along a random line: deg det = {}, deg oracle = {}, common factor degree {} (constant branch {}, Jacobian branch {}, repeated part {}), symbol factors {:?}, residual degree {}; term count {}",
            self.det_degree,
            self.oracle_degree,
            self.common_degree,
            self.constant_branch_degree,
            self.jacobian_branch_degree,
            self.repeated_degree,
            self.symbol_factors,
            self.residual_degree,
            self.terms.map_or("not recovered".to_string(), |n| n.to_string()),
        )
    }
}

/// Symbols left free by the specialization.
pub fn free_symbols(spec: &SystemSpec) -> Vec<CoeffSymbol> {
    spec.symbol_universe()
        .into_iter()
        .filter(|s| s.deriv == 0 && *s != CoeffSymbol::a(0, spec.d1) && *s != CoeffSymbol::b(0, spec.d2))
        .collect()
}

/// The fixed part: leading `y1` coefficients one, derived symbols zero.
pub fn base_specialization(spec: &SystemSpec) -> Specialization {
    let mut s = Specialization::over(spec.symbol_universe(), |_| BigRational::zero());
    s.insert(CoeffSymbol::a(0, spec.d1), rat(1));
    s.insert(CoeffSymbol::b(0, spec.d2), rat(1));
    s
}

fn modp(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

fn rat_modp(v: &BigRational, p: u64) -> Result<u64> {
    let d = modp(v.denom(), p);
    if d == 0 {
        return Err(Error::BadModulus(p));
    }
    Ok(mul(modp(v.numer(), p), inv(d, p), p))
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    r
}

/// Coefficients (constant first) of the polynomial through `(i, ys[i])`.
pub fn interpolate_modp(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = mul(sub(dd[i], dd[i - 1], p), inv(k as u64, p), p);
        }
    }
    // Horner on the Newton form with nodes 0, 1, ..., n-1
    let mut c = vec![0u64; n];
    for k in (0..n).rev() {
        let mut next = vec![0u64; n];
        for i in 0..n - 1 {
            next[i + 1] = c[i];
        }
        for i in 0..n {
            next[i] = sub(next[i], mul(k as u64 % p, c[i], p), p);
        }
        next[0] = (next[0] + dd[k]) % p;
        c = next;
    }
    trim(c)
}

fn trim(mut c: Vec<u64>) -> Vec<u64> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Degree of a trimmed coefficient vector; the zero polynomial has none.
pub fn degree(c: &[u64]) -> Option<usize> {
    c.len().checked_sub(1)
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let lead_inv = inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let f = mul(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - b.len();
        for (i, bv) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(f, *bv, p), p);
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Exact quotient `a / b` modulo `p`, or `None` when `b` does not divide.
pub fn div_exact_modp(a: &[u64], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    if b.is_empty() || r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lead_inv = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let f = mul(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - b.len();
        q[shift] = f;
        for (i, bv) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(f, *bv, p), p);
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r.is_empty().then_some(q)
}

/// Monic-free gcd modulo `p`.
pub fn gcd_modp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `p / y1`, assuming every term of `p` carries `y1`.
fn divide_by_y1(p: &DiffPoly) -> Option<DiffPoly> {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        if m.y1 == 0 {
            return None;
        }
        out.add_term(YMonomial::new(m.y, m.y1 - 1, m.y2), c.clone());
    }
    Some(out)
}

/// Formal degrees of every resultant taken by [`oracle_values`], in call
/// order; empty while being recorded.
#[derive(Default)]
struct Degrees {
    fixed: Vec<(u32, u32)>,
    recorded: Vec<(u32, u32)>,
}

impl Degrees {
    fn res(&mut self, p: &DiffPoly, q: &DiffPoly, var: YVar) -> Result<DiffPoly> {
        let k = self.recorded.len();
        let deg = match self.fixed.get(k) {
            Some(d) => *d,
            None => (p.degree_in(var).unwrap_or(0), q.degree_in(var).unwrap_or(0)),
        };
        self.recorded.push(deg);
        oracle::sylvester_resultant_formal(p, q, var, deg)
    }
}

/// Values of the iterated resultant and of its two branches at one point.
fn oracle_values(spec: &SystemSpec, s: &Specialization, deg: &mut Degrees) -> Result<[BigRational; 3]> {
    deg.recorded.clear();
    let [df1, df2, f1, f2] = diffsys::row_polynomials(spec).map(|p| p.partial_specialize(s));
    let constant = |p: &DiffPoly| p.coeff(&YMonomial::ONE).constant_term();
    let g = deg.res(&df1, &df2, YVar::Y2)?;
    let h1 = deg.res(&f1, &f2, YVar::Y1)?;
    let h2 = deg.res(&f1, &g, YVar::Y1)?;
    let r = constant(&deg.res(&h1, &h2, YVar::Y)?);
    let f1_at_rest = f1.coeffs_in(YVar::Y1).swap_remove(0);
    let r_a = constant(&deg.res(&h1, &f1_at_rest, YVar::Y)?);
    let jac = divide_by_y1(&g).ok_or_else(|| Error::IntermediateZero("res_y2(df1, df2) / y1".into()))?;
    let k = deg.res(&f1, &jac, YVar::Y1)?;
    let r_b = constant(&deg.res(&h1, &k, YVar::Y)?);
    Ok([r, r_a, r_b])
}

/// Integer point of the family: `base + t * dir` on the free symbols.
fn family_point(spec: &SystemSpec, free: &[CoeffSymbol], base: &[i64], dir: &[i64], t: i64) -> Specialization {
    let mut s = base_specialization(spec);
    for (i, sym) in free.iter().enumerate() {
        s.insert(*sym, rat(base[i] + t * dir[i]));
    }
    s
}

/// Runs the probe on the line chosen by `seed`.
pub fn probe(seed: u64) -> Result<StretchReport> {
    let spec = SystemSpec::new(2, 2)?;
    let m = macaulay::build_square_matrix(&spec)?;
    let free = free_symbols(&spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<i64> = free.iter().map(|_| rng.gen_range(-20..=20)).collect();
    let dir: Vec<i64> = free.iter().map(|_| rng.gen_range(-20..=20)).collect();
    let prime = detkit::large_primes(1)[0];
    // degrees of the family, read off at a wide random point of it
    let wide: Vec<i64> = free.iter().map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
    let mut deg = Degrees::default();
    oracle_values(&spec, &family_point(&spec, &free, &wide, &wide, 0), &mut deg)?;
    deg.fixed = std::mem::take(&mut deg.recorded);
    let mut series: [Vec<u64>; 4] = Default::default();
    for t in 0..SAMPLES as i64 {
        let s = family_point(&spec, &free, &base, &dir, t);
        series[0].push(rat_modp(&detkit::det_specialized(&m, &s)?, prime)?);
        for (k, v) in oracle_values(&spec, &s, &mut deg)?.iter().enumerate() {
            series[k + 1].push(rat_modp(v, prime)?);
        }
    }
    let [det, full, r_a, r_b] = series.map(|ys| interpolate_modp(&ys, prime));
    let dg = |c: &[u64]| degree(c).unwrap_or(0);
    let common = gcd_modp(&det, &full, prime);
    // part of gcd(det, Jacobian branch) that det carries only once
    let jacobian = gcd_modp(&det, &r_b, prime);
    let cofactor = div_exact_modp(&det, &jacobian, prime).expect("gcd divides");
    let repeated = gcd_modp(&jacobian, &cofactor, prime);
    let mut residual = div_exact_modp(&jacobian, &repeated, prime).expect("gcd divides");
    let mut symbol_factors = Vec::new();
    for (i, sym) in free.iter().enumerate() {
        let line = trim(vec![(base[i].rem_euclid(prime as i64)) as u64, (dir[i].rem_euclid(prime as i64)) as u64]);
        if degree(&line) != Some(1) {
            continue;
        }
        let mut k = 0;
        while let Some(q) = div_exact_modp(&residual, &line, prime) {
            residual = q;
            k += 1;
        }
        if k > 0 {
            symbol_factors.push((sym.to_string(), k));
        }
    }
    Ok(StretchReport {
        seed,
        prime,
        det_degree: dg(&det),
        oracle_degree: dg(&full),
        common_degree: dg(&common),
        constant_branch_degree: dg(&gcd_modp(&det, &r_a, prime)),
        jacobian_branch_degree: dg(&jacobian),
        repeated_degree: dg(&repeated),
        symbol_factors,
        residual_degree: dg(&residual),
        terms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_000_000_007;

    #[test]
    fn interpolation_recovers_coefficients() {
        // 3 - 2t + 5t^3
        let f = |t: u64| (3 + P - (2 * t) % P + 5 * t * t * t) % P;
        let ys: Vec<u64> = (0..8).map(f).collect();
        assert_eq!(interpolate_modp(&ys, P), vec![3, P - 2, 0, 5]);
    }

    #[test]
    fn gcd_of_products() {
        // (t - 1)(t - 2) and (t - 1)(t + 4)
        let a = vec![2, P - 3, 1];
        let b = vec![P - 4, 3, 1];
        let g = gcd_modp(&a, &b, P);
        assert_eq!(degree(&g), Some(1));
        assert_eq!(mul(g[0], inv(g[1], P), P), P - 1);
    }

    #[test]
    fn exact_division() {
        let a = vec![2, P - 3, 1];
        assert_eq!(div_exact_modp(&a, &[P - 1, 1], P), Some(vec![P - 2, 1]));
        assert_eq!(div_exact_modp(&a, &[1, 1], P), None);
    }

    #[test]
    fn free_symbols_of_quadratic_pair() {
        let spec = SystemSpec::new(2, 2).unwrap();
        assert_eq!(free_symbols(&spec).len(), 10);
    }
}
