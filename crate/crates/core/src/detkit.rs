//! Exact determinants: symbolic for small matrices, specialized (rational or
//! modular) for all sizes, and the common-zero specialization generator.
//!
//! Determinant values depend on the column order of the matrix, so callers
//! compare them up to sign.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diffsys::{self, SystemSpec};
use crate::error::{Error, Result};
use crate::macaulay::PolyMatrix;
use crate::symcore::{CoeffSymbol, Specialization, SymPoly};

/// Default largest size accepted by [`det_symbolic`].
pub const SYMBOLIC_CAP: usize = 8;

/// Attempts made by [`nonvanishing_probe`] before giving up.
pub const NONVANISHING_RETRIES: usize = 10;

/// Half-width of the interval used for random nonvanishing probes.
pub const PROBE_RANGE: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMode {
    Symbolic,
    SpecializedExact,
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetValue {
    Symbolic(SymPoly),
    Exact(BigRational),
    Residues(Vec<(u64, u64)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetResult {
    pub mode: DetMode,
    pub value: DetValue,
}

impl DetResult {
    pub const SIGN_CONVENTION: &'static str = "sign follows the descending column order; compare up to sign";
}

/// Integral-domain operations needed by fraction-free elimination.
trait Domain: Clone {
    fn is_zero(&self) -> bool;
    fn unit() -> Self;
    fn size(&self) -> usize;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, o: &Self) -> Result<Self>;
}

impl Domain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit() -> Self {
        One::one()
    }
    fn size(&self) -> usize {
        self.bits() as usize
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(o);
        if !Zero::is_zero(&r) {
            return Err(Error::NotDivisible);
        }
        Ok(q)
    }
}

impl Domain for SymPoly {
    fn is_zero(&self) -> bool {
        SymPoly::is_zero(self)
    }
    fn unit() -> Self {
        SymPoly::one()
    }
    fn size(&self) -> usize {
        self.len()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        SymPoly::exact_div(self, o)
    }
}

/// Bareiss elimination with full pivoting on the smallest nonzero entry.
/// Returns zero as soon as the remaining submatrix has no nonzero entry.
fn bareiss<T: Domain>(mut a: Vec<Vec<T>>, zero: T) -> Result<T> {
    let n = a.len();
    if n == 0 {
        return Ok(T::unit());
    }
    let mut negate = false;
    let mut prev = T::unit();
    for k in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, v) in row.iter().enumerate().skip(k) {
                if !v.is_zero() && best.is_none_or(|(_, _, s)| v.size() < s) {
                    best = Some((i, j, v.size()));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            return Ok(zero);
        };
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in (k + 1)..n {
                let mut v = row[j].mul(&pivot);
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = v.sub(&lead.mul(&pivot_row[j]));
                }
                row[j] = if v.is_zero() { v } else { v.exact_div(&prev)? };
            }
            row[k] = zero.clone();
        }
        prev = pivot;
    }
    Ok(if negate { prev.neg() } else { prev })
}

fn check_square(m: &PolyMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(())
}

/// Exact symbolic determinant, for matrices of size at most `cap`.
pub fn det_symbolic_capped(m: &PolyMatrix, cap: usize) -> Result<SymPoly> {
    check_square(m)?;
    if m.nrows() > cap {
        return Err(Error::CapExceeded { cap, size: m.nrows() });
    }
    let dense = (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m.get(r, c).cloned().unwrap_or_default()).collect())
        .collect();
    bareiss(dense, SymPoly::zero())
}

/// [`det_symbolic_capped`] with the default cap of 8.
pub fn det_symbolic(m: &PolyMatrix) -> Result<SymPoly> {
    det_symbolic_capped(m, SYMBOLIC_CAP)
}

/// Symbolic determinant of a dense matrix of polynomials, no size cap.
pub fn det_symbolic_dense(a: Vec<Vec<SymPoly>>) -> Result<SymPoly> {
    if a.iter().any(|r| r.len() != a.len()) {
        return Err(Error::NotSquare { rows: a.len(), cols: a.first().map_or(0, Vec::len) });
    }
    bareiss(a, SymPoly::zero())
}

/// Scales each row to integers. Returns the integer rows and the product of
/// the row scale factors, so `det(a) = det(rows) / scale`.
pub fn integer_rows(a: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    (rows, scale)
}

/// Exact determinant of a dense rational matrix.
pub fn det_rational(a: &[Vec<BigRational>]) -> Result<BigRational> {
    if a.iter().any(|r| r.len() != a.len()) {
        return Err(Error::NotSquare { rows: a.len(), cols: a.first().map_or(0, Vec::len) });
    }
    let (rows, scale) = integer_rows(a);
    let d = bareiss(rows, BigInt::zero())?;
    Ok(BigRational::new(d, scale))
}

/// Exact determinant of `m` under `s`.
pub fn det_specialized(m: &PolyMatrix, s: &Specialization) -> Result<BigRational> {
    check_square(m)?;
    det_rational(&m.specialize(s)?)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`, descending.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

fn residue(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Determinant modulo a prime `p` by Gaussian elimination.
pub fn det_mod_p(a: &[Vec<BigInt>], p: u64) -> u64 {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|v| residue(v, p)).collect()).collect();
    let mut det = 1 % p;
    for k in 0..n {
        let Some(pi) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if pi != k {
            m.swap(pi, k);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[k][k], p);
        let inv = pow_mod(m[k][k], p - 2, p);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = mul_mod(row[k], inv, p);
            for j in k..n {
                let t = mul_mod(f, pivot_row[j], p);
                row[j] = (row[j] + p - t) % p;
            }
        }
    }
    det
}

/// Residues of `det(m)` under integral `s`, one per modulus.
pub fn det_modular(m: &PolyMatrix, s: &Specialization, moduli: &[u64]) -> Result<Vec<u64>> {
    check_square(m)?;
    if let Some(&bad) = moduli.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::BadModulus(bad));
    }
    let dense = m.specialize(s)?;
    if dense.iter().flatten().any(|v| !v.is_integer()) {
        return Err(Error::InvalidSpec("modular determinant needs an integral specialization".into()));
    }
    let ints: Vec<Vec<BigInt>> = dense.iter().map(|r| r.iter().map(|v| v.to_integer()).collect()).collect();
    Ok(moduli.par_iter().map(|&p| det_mod_p(&ints, p)).collect())
}

/// Symmetric CRT recombination into `(-M/2, M/2]`.
pub fn crt(residues: &[(u64, u64)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(r, p) in residues {
        let pb = BigInt::from(p);
        let cur = residue(&x, p);
        let diff = (r + p - cur) % p;
        let inv = pow_mod(residue(&modulus, p), p - 2, p);
        let t = mul_mod(diff, inv, p);
        x += &modulus * BigInt::from(t);
        modulus *= pb;
    }
    if &x * 2 > modulus {
        x -= &modulus;
    }
    x
}

/// Ceiling of the Hadamard bound `prod_i ||row_i||_2`.
pub fn hadamard_bound(a: &[Vec<BigInt>]) -> BigInt {
    let sq: BigInt = a.iter().map(|r| r.iter().map(|v| v * v).sum::<BigInt>()).product();
    sq.sqrt() + 1
}

/// Exact determinant of an integer matrix by CRT over enough 62-bit primes
/// to exceed twice the Hadamard bound.
pub fn det_integer_crt(a: &[Vec<BigInt>]) -> BigInt {
    let target: BigInt = hadamard_bound(a) * BigInt::from(2);
    let count = (target.bits() as usize).div_ceil(61) + 1;
    let primes = large_primes(count);
    let residues: Vec<(u64, u64)> = primes.par_iter().map(|&p| (det_mod_p(a, p), p)).collect();
    crt(&residues)
}

/// Dispatches to the requested mode.
pub fn determinant(m: &PolyMatrix, mode: DetMode, s: Option<&Specialization>, moduli: &[u64]) -> Result<DetResult> {
    let need = || s.ok_or_else(|| Error::InvalidSpec("specialization required".into()));
    let value = match mode {
        DetMode::Symbolic => DetValue::Symbolic(det_symbolic(m)?),
        DetMode::SpecializedExact => DetValue::Exact(det_specialized(m, need()?)?),
        DetMode::Modular => {
            let r = det_modular(m, need()?, moduli)?;
            DetValue::Residues(r.into_iter().zip(moduli.iter().copied()).collect())
        }
    };
    Ok(DetResult { mode, value })
}

/// Uniform integer values in `[-range, range]` for every symbol of `universe`.
pub fn random_specialization(universe: &[CoeffSymbol], seed: u64, range: i64) -> Specialization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Specialization::over(universe.iter().copied(), |_| BigRational::from_integer(rng.gen_range(-range..=range).into()))
}

/// Random integer specialization at which `det(m) != 0`, retrying up to
/// [`NONVANISHING_RETRIES`] times. Returns the value and the seed used.
pub fn nonvanishing_probe(m: &PolyMatrix, universe: &[CoeffSymbol], seed: u64) -> Result<Option<(BigRational, u64)>> {
    for i in 0..NONVANISHING_RETRIES as u64 {
        let s = random_specialization(universe, seed.wrapping_add(i), PROBE_RANGE);
        let d = det_specialized(m, &s)?;
        if !d.is_zero() {
            return Ok(Some((d, seed.wrapping_add(i))));
        }
    }
    Ok(None)
}

/// Half-width of the random values used by [`common_zero_specialization`].
pub const COMMON_ZERO_RANGE: i64 = 9;

/// A specialization under which `f1, f2, δf1, δf2` all vanish at `point`.
///
/// Every symbol is drawn at random, then the constant coefficients
/// `a(0,0), b(0,0), δa(0,0), δb(0,0)` are solved for; each enters its
/// polynomial linearly with coefficient one.
pub fn common_zero_specialization(spec: &SystemSpec, point: &[BigRational; 3], seed: u64) -> Specialization {
    let universe = spec.symbol_universe();
    let mut s = random_specialization(&universe, seed, COMMON_ZERO_RANGE);
    let [df1, df2, f1, f2] = diffsys::row_polynomials(spec);
    let solve = |s: &mut Specialization, p: &diffsys::DiffPoly, sym: CoeffSymbol| {
        s.insert(sym, BigRational::zero());
        let v = p.eval_at(point).eval(s).expect("universe covers row polynomials");
        s.insert(sym, -v);
    };
    solve(&mut s, &f1, CoeffSymbol::a(0, 0));
    solve(&mut s, &f2, CoeffSymbol::b(0, 0));
    solve(&mut s, &df1, CoeffSymbol::a(0, 0).derived());
    solve(&mut s, &df2, CoeffSymbol::b(0, 0).derived());
    s
}

/// Random small integer point, deterministic in `seed`.
pub fn random_point(seed: u64, range: i64) -> [BigRational; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    [(); 3].map(|_| BigRational::from_integer(rng.gen_range(-range..=range).into()))
}

/// Exact sign of a rational.
pub fn sign_of(v: &BigRational) -> Sign {
    if v.is_zero() {
        Sign::NoSign
    } else if v.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffsys::YMonomial;
    use crate::macaulay::{build_square_matrix, RowLabel, RowPoly};
    use crate::symcore::rat;
    use std::collections::BTreeMap;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn d11() -> PolyMatrix {
        build_square_matrix(&SystemSpec::new(1, 1).unwrap()).unwrap()
    }

    fn fixture(f1: &[(CoeffSymbol, i64)], f2: &[(CoeffSymbol, i64)]) -> Specialization {
        let spec = SystemSpec::new(1, 1).unwrap();
        let mut s = Specialization::over(spec.symbol_universe(), |_| BigRational::zero());
        for (sym, v) in f1.iter().chain(f2) {
            s.insert(*sym, rat(*v));
        }
        s
    }

    #[test]
    fn diagonal_symbolic() {
        let syms = [CoeffSymbol::a(0, 0), CoeffSymbol::a(1, 0), CoeffSymbol::b(0, 0)];
        let rows = vec![RowLabel { poly: RowPoly::F1, multiplier: YMonomial::ONE }; 3];
        let cols = vec![YMonomial::new(2, 0, 0), YMonomial::new(1, 0, 0), YMonomial::ONE];
        let entries = (0..3).map(|i| BTreeMap::from([(i, SymPoly::var(syms[i]))])).collect();
        let m = PolyMatrix::from_entries(rows, cols, entries);
        let expect = &(&SymPoly::var(syms[0]) * &SymPoly::var(syms[1])) * &SymPoly::var(syms[2]);
        assert_eq!(det_symbolic(&m).unwrap(), expect);
    }

    #[test]
    fn linear_fixtures() {
        let d = d11();
        // f1 = y1 + 1, f2 = y1 + y
        let s = fixture(&[(CoeffSymbol::a(0, 1), 1), (CoeffSymbol::a(0, 0), 1)], &[(CoeffSymbol::b(0, 1), 1), (CoeffSymbol::b(1, 0), 1)]);
        let dense = d.specialize(&s).unwrap();
        let expect: Vec<Vec<BigRational>> =
            [[1, 0, 0, 0], [1, 1, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0]].iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        assert_eq!(dense, expect);
        assert_eq!(det_specialized(&d, &s).unwrap(), rat(-1));
        assert_eq!(det_symbolic(&d).unwrap().eval(&s).unwrap(), rat(-1));
        // f1 = y1 + y, f2 = y1 - y
        let s = fixture(&[(CoeffSymbol::a(0, 1), 1), (CoeffSymbol::a(1, 0), 1)], &[(CoeffSymbol::b(0, 1), 1), (CoeffSymbol::b(1, 0), -1)]);
        assert_eq!(det_specialized(&d, &s).unwrap(), rat(0));
        // all zeros
        assert_eq!(det_specialized(&d, &fixture(&[], &[])).unwrap(), rat(0));
    }

    #[test]
    fn symbolic_linear_determinant_shape() {
        let det = det_symbolic(&d11()).unwrap();
        assert_eq!(det.total_degree(), Some(4));
        assert!(det.symbols().len() <= 12);
        assert!(det.terms().all(|(m, _)| m.degree() == 4));
    }

    #[test]
    fn symbolic_cap() {
        let d = build_square_matrix(&SystemSpec::new(1, 2).unwrap()).unwrap();
        assert_eq!(det_symbolic(&d), Err(Error::CapExceeded { cap: 8, size: 16 }));
    }

    #[test]
    fn zero_column_gives_zero() {
        let rows = vec![RowLabel { poly: RowPoly::F1, multiplier: YMonomial::ONE }; 2];
        let cols = vec![YMonomial::new(1, 0, 0), YMonomial::ONE];
        let entries = vec![BTreeMap::from([(0, SymPoly::one())]), BTreeMap::from([(0, SymPoly::from_int(3))])];
        let m = PolyMatrix::from_entries(rows, cols, entries);
        assert!(det_symbolic(&m).unwrap().is_zero());
    }

    #[test]
    fn rational_rows_are_cleared() {
        let half = BigRational::new(1.into(), 2.into());
        let a = vec![vec![half.clone(), rat(1)], vec![rat(3), half]];
        assert_eq!(det_rational(&a).unwrap(), BigRational::new((-11).into(), 4.into()));
    }

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(4_611_686_018_427_387_847));
        assert!(!is_prime(3_215_031_751));
        let ps = large_primes(3);
        assert!(ps.iter().all(|&p| p < 1 << 62 && is_prime(p)));
    }

    #[test]
    fn crt_recombines_signed_values() {
        let ps = large_primes(3);
        for v in [BigInt::from(-1), BigInt::from(123_456_789_012_345i64) * BigInt::from(-98_765_432_109i64)] {
            let r: Vec<(u64, u64)> = ps.iter().map(|&p| (residue(&v, p), p)).collect();
            assert_eq!(crt(&r), v);
        }
    }

    #[test]
    fn modular_matches_exact() {
        let d = d11();
        let s = fixture(&[(CoeffSymbol::a(0, 1), 1), (CoeffSymbol::a(0, 0), 1)], &[(CoeffSymbol::b(0, 1), 1), (CoeffSymbol::b(1, 0), 1)]);
        let ps = large_primes(2);
        let r = det_modular(&d, &s, &ps).unwrap();
        assert_eq!(crt(&r.into_iter().zip(ps).collect::<Vec<_>>()), BigInt::from(-1));
        assert_eq!(det_modular(&d, &s, &[4]), Err(Error::BadModulus(4)));
        let even = int_matrix(&[&[2, 4], &[6, 10]]);
        assert_eq!(det_mod_p(&even, 2), 0);
        let spec = SystemSpec::new(1, 2).unwrap();
        let m = build_square_matrix(&spec).unwrap();
        for seed in 0..5 {
            let s = random_specialization(&spec.symbol_universe(), seed, 50);
            let exact = det_specialized(&m, &s).unwrap();
            let (ints, _) = integer_rows(&m.specialize(&s).unwrap());
            assert_eq!(BigRational::from_integer(det_integer_crt(&ints)), exact);
        }
    }

    #[test]
    fn common_zero_at_origin_clears_constants() {
        let spec = SystemSpec::new(2, 2).unwrap();
        let s = common_zero_specialization(&spec, &[rat(0), rat(0), rat(0)], 7);
        for sym in [CoeffSymbol::a(0, 0), CoeffSymbol::b(0, 0), CoeffSymbol::a(0, 0).derived(), CoeffSymbol::b(0, 0).derived()] {
            assert_eq!(s.get(&sym), Some(&rat(0)));
        }
    }

    #[test]
    fn common_zero_forces_vanishing() {
        let spec = SystemSpec::new(2, 2).unwrap();
        let point = [rat(1), rat(2), rat(3)];
        let s = common_zero_specialization(&spec, &point, 42);
        for p in diffsys::row_polynomials(&spec) {
            assert!(p.eval_at(&point).eval(&s).unwrap().is_zero());
        }
        let d = build_square_matrix(&spec).unwrap();
        assert_eq!(det_specialized(&d, &s).unwrap(), rat(0));
    }

    #[test]
    fn nonvanishing_linear() {
        let spec = SystemSpec::new(1, 2).unwrap();
        let m = build_square_matrix(&spec).unwrap();
        let (v, _) = nonvanishing_probe(&m, &spec.symbol_universe(), 1).unwrap().unwrap();
        assert!(!v.is_zero());
    }
}
