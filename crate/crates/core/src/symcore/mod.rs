//! Exact sparse polynomial arithmetic over the coefficient-symbol alphabet.
//!
//! Every matrix entry and every symbolic determinant in the crate is a
//! [`SymPoly`]. Coefficients are arbitrary-precision rationals and terms are
//! kept in graded-lex order, so rendering is deterministic.

mod parse;
mod poly;
mod specialization;
mod symbol;

pub use poly::SymPoly;
pub use specialization::Specialization;
pub use symbol::{CoeffSymbol, SymMonomial, System};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_traits::Zero;

    fn a0() -> SymPoly {
        SymPoly::var(CoeffSymbol::a(0, 0))
    }

    fn b0() -> SymPoly {
        SymPoly::var(CoeffSymbol::b(0, 0))
    }

    #[test]
    fn add_identity_and_cancellation() {
        let p = &a0() + &b0();
        assert_eq!(&p + &SymPoly::zero(), p);
        let two_a = a0().scale(&rat(2));
        assert!((&two_a + &two_a.scale(&rat(-1))).is_zero());
        assert_eq!(&(&a0() + &b0()) + &(&a0() - &b0()), two_a);
    }

    #[test]
    fn mul_examples() {
        let p = &a0() + &b0();
        assert_eq!(&p * &SymPoly::one(), p);
        assert_eq!(&a0() * &a0(), SymPoly::term(SymMonomial::from_factors([(CoeffSymbol::a(0, 0), 2)]), rat(1)));
        let sq = &p * &p;
        let expect = &(&(&a0() * &a0()) + &(&a0() * &b0()).scale(&rat(2))) + &(&b0() * &b0());
        assert_eq!(sq, expect);
    }

    #[test]
    fn eval_examples() {
        let s: Specialization = [(CoeffSymbol::a(0, 0), rat(3))].into_iter().collect();
        assert_eq!(SymPoly::zero().eval(&s).unwrap(), BigRational::zero());
        assert_eq!((&a0() * &a0()).eval(&s).unwrap(), rat(9));

        let s: Specialization = [
            (CoeffSymbol::a(0, 0), BigRational::new(1.into(), 2.into())),
            (CoeffSymbol::b(0, 0), rat(4)),
        ]
        .into_iter()
        .collect();
        let p = &(&a0() * &b0()).scale(&rat(2)) + &SymPoly::one();
        assert_eq!(p.eval(&s).unwrap(), rat(5));

        let partial: Specialization = [(CoeffSymbol::a(0, 0), rat(1))].into_iter().collect();
        assert_eq!(b0().eval(&partial), Err(Error::UnassignedSymbol(CoeffSymbol::b(0, 0))));
    }

    #[test]
    fn exact_div_examples() {
        let p = &a0() + &b0();
        assert_eq!(p.exact_div(&SymPoly::one()).unwrap(), p);
        let num = &(&a0() * &a0()) - &(&b0() * &b0());
        assert_eq!(num.exact_div(&(&a0() - &b0())).unwrap(), p);
        assert_eq!(a0().exact_div(&b0()), Err(Error::NotDivisible));
        assert_eq!(a0().exact_div(&SymPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn derive_follows_leibniz() {
        let a = CoeffSymbol::a(0, 2);
        let p = SymPoly::var(a).pow(2);
        let d = p.derive();
        let expect = (&SymPoly::var(a) * &SymPoly::var(a.derived())).scale(&rat(2));
        assert_eq!(d, expect);
    }

    #[test]
    fn substitute_replaces_symbol() {
        let x = CoeffSymbol::a(1, 1).derived();
        let p = &SymPoly::var(x) + &SymPoly::var(CoeffSymbol::a(2, 0)).scale(&rat(2));
        let repl = &SymPoly::var(CoeffSymbol::fresh(1, 1)) - &SymPoly::var(CoeffSymbol::a(2, 0)).scale(&rat(2));
        assert_eq!(p.substitute(x, &repl), SymPoly::var(CoeffSymbol::fresh(1, 1)));
    }

    #[test]
    fn render_is_graded_lex_descending() {
        let p: SymPoly = "b(0,0) + a(0,0)^2 + 2*a(0,0)*b(0,0) - 3".parse().unwrap();
        assert_eq!(p.to_string(), "a(0,0)^2 + 2*a(0,0)*b(0,0) + b(0,0) - 3");
    }
}
