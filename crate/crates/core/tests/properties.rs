use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use diffres::certificate;
use diffres::detkit;
use diffres::diffsys::{self, DiffPoly, SystemSpec, YMonomial};
use diffres::macaulay;
use diffres::monomial_sets::{self, MainMonomials, Partition};
use diffres::sparse_lp::{self, Liftings};
use diffres::symcore::{rat, CoeffSymbol, Specialization, SymMonomial, SymPoly};

const POOL: [CoeffSymbol; 4] = [CoeffSymbol::a(0, 0), CoeffSymbol::a(1, 0), CoeffSymbol::b(0, 1), CoeffSymbol::a(0, 0).derived()];

fn monomial() -> impl Strategy<Value = SymMonomial> {
    prop::collection::vec((0..POOL.len(), 0u32..3), 0..3)
        .prop_map(|f| SymMonomial::from_factors(f.into_iter().map(|(i, e)| (POOL[i], e))))
}

fn sym_poly() -> impl Strategy<Value = SymPoly> {
    prop::collection::vec((monomial(), -5i64..=5), 0..4).prop_map(|ts| SymPoly::from_terms(ts.into_iter().map(|(m, c)| (m, rat(c)))))
}

fn nonzero_poly() -> impl Strategy<Value = SymPoly> {
    sym_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = Specialization> {
    prop::collection::vec((-20i64..=20, 1i64..=4), POOL.len()).prop_map(|v| {
        let mut s = Specialization::new();
        for (sym, (n, d)) in POOL.iter().zip(v) {
            s.insert(*sym, BigRational::new(n.into(), d.into()));
        }
        s
    })
}

/// Polynomials in `y, y1` only, so `δ` stays inside the alphabet.
fn diff_poly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), sym_poly()), 0..3).prop_map(|ts| {
        let mut p = DiffPoly::zero();
        for ((a, b), c) in ts {
            p.add_term(YMonomial::new(a, b, 0), c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in sym_poly(), q in sym_poly(), r in sym_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in sym_poly(), q in sym_poly(), r in sym_poly(), s in point()) {
        let lhs = (&(&p * &q) + &r).eval(&s).unwrap();
        prop_assert_eq!(lhs, p.eval(&s).unwrap() * q.eval(&s).unwrap() + r.eval(&s).unwrap());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in sym_poly(), q in nonzero_poly()) {
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn rendering_is_a_parse_fixed_point(p in sym_poly()) {
        let text = p.to_string();
        let back: SymPoly = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn delta_is_a_derivation(p in diff_poly(), q in diff_poly()) {
        let lhs = diffsys::delta(&(&p * &q)).unwrap();
        let rhs = &(&diffsys::delta(&p).unwrap() * &q) + &(&p * &diffsys::delta(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_json_round_trips(s in point()) {
        prop_assert_eq!(Specialization::from_json(&s.to_json(), None).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn symbolic_determinant_commutes_with_evaluation(entries in prop::collection::vec(sym_poly(), 9), s in point()) {
        let rows: Vec<Vec<SymPoly>> = entries.chunks(3).map(<[SymPoly]>::to_vec).collect();
        let det = detkit::det_symbolic_dense(rows.clone()).unwrap();
        let values: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|e| e.eval(&s).unwrap()).collect()).collect();
        prop_assert_eq!(det.eval(&s).unwrap(), detkit::det_rational(&values).unwrap());
    }

    #[test]
    fn linear_matrix_symbolic_and_specialized_agree(seed in any::<u64>()) {
        let spec = SystemSpec::new(1, 1).unwrap();
        let m = macaulay::build_square_matrix(&spec).unwrap();
        let s = detkit::random_specialization(&spec.symbol_universe(), seed, 1000);
        prop_assert_eq!(detkit::det_symbolic(&m).unwrap().eval(&s).unwrap(), detkit::det_specialized(&m, &s).unwrap());
    }

    #[test]
    fn modular_and_exact_determinants_agree(seed in any::<u64>(), k in 0usize..3) {
        let spec = [(1, 2), (2, 2), (1, 3)][k];
        let spec = SystemSpec::new(spec.0, spec.1).unwrap();
        let m = macaulay::build_square_matrix(&spec).unwrap();
        let s = detkit::random_specialization(&spec.symbol_universe(), seed, 50);
        let exact = detkit::det_specialized(&m, &s).unwrap();
        let (rows, scale) = detkit::integer_rows(&m.specialize(&s).unwrap());
        prop_assert_eq!(BigRational::new(detkit::det_integer_crt(&rows), scale), exact.clone());
        let primes = detkit::large_primes(2);
        for (r, p) in detkit::det_modular(&m, &s, &primes).unwrap().into_iter().zip(&primes) {
            let expect = ((exact.numer() % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
            prop_assert_eq!(BigInt::from(r), expect);
        }
    }

    #[test]
    fn ranking_specialization_isolates_the_unique_monomial(t in 2i64..200, k in 0usize..4) {
        let (d1, d2) = [(1, 1), (1, 2), (2, 2), (2, 3)][k];
        let spec = SystemSpec::new(d1, d2).unwrap();
        let (m, cert) = certificate::certify(&spec).unwrap();
        let v = [t, t * t, t * t * t, t * t * t * t];
        let det = detkit::det_specialized(&m, &certificate::isolating_specialization(&m, &spec, v)).unwrap();
        let powers = v.iter().zip(cert.exponents(&spec)).fold(rat(1), |acc, (&b, e)| acc * rat(b).pow(e as i32));
        prop_assert!(!det.is_zero());
        prop_assert_eq!(det, certificate::unique_monomial_coefficient(&m, &cert) * powers);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn row_content_partitions_cover_e_disjointly(bumps in prop::collection::vec(-1i64..=1, 12)) {
        let spec = SystemSpec::new(2, 2).unwrap();
        let base = Liftings::paper();
        let flat: Vec<i64> = (1..=4).flat_map(|i| (1..=3).map(move |j| (i, j))).map(|(i, j)| base.get(i, j)).zip(&bumps).map(|(v, b)| v + b).collect();
        let lift = Liftings::from_flat(&flat).unwrap();
        prop_assume!(sparse_lp::validate_liftings(&lift).is_valid());
        let r = sparse_lp::grc_partition(&spec, &lift, &sparse_lp::default_delta()).unwrap();
        prop_assert!(r.partition.validate(&monomial_sets::column_set(&spec)).is_ok());
        prop_assert_eq!(r.partition.sizes().iter().sum::<usize>(), 36);
    }
}

#[test]
fn delta_supports_and_coefficients() {
    for d2 in 1..=5 {
        for d1 in 1..=d2 {
            let spec = SystemSpec::new(d1, d2).unwrap();
            let [df1, df2, _, _] = diffsys::row_polynomials(&spec);
            for (p, d) in [(df1, d1), (df2, d2)] {
                let mut expect = monomial_sets::bset(3, d).elems.clone();
                expect.extend(monomial_sets::bset(3, d - 1).iter().map(|m| m.mul(&YMonomial::new(0, 0, 1))));
                assert_eq!(p.support(), expect);
                for (_, c) in p.terms() {
                    assert_eq!(c.total_degree(), Some(1));
                    assert!(c.is_integral());
                    assert!(c.symbols().iter().all(|s| s.deriv <= 1));
                }
            }
        }
    }
}

#[test]
fn partition_json_round_trips() {
    let spec = SystemSpec::new(2, 3).unwrap();
    let p = monomial_sets::partition_divisibility(&monomial_sets::column_set(&spec), &MainMonomials::for_spec(&spec));
    let back: Partition = serde_json::from_value(serde_json::to_value(&p).unwrap()).unwrap();
    assert_eq!(back, p);
}
