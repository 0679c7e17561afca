//! Shuffle and quasi-shuffle algebra over words, regularization of multiple
//! zeta values, derivation and elimination of double-shuffle relations, and
//! arbitrary-precision numerical certification of the results.

pub mod bases;
pub mod commpoly;
pub mod constants;
pub mod error;
pub mod ncpoly;
pub mod numerics;
pub mod regularize;
pub mod relations;
pub mod words;

use std::fmt;

pub use num_rational::BigRational as Rational;

pub use bases::{mrs_factorize, pbw_pair, radford_decompose, BasisCache, DualBasisPair, Product};
pub use constants::{ConstPoly, ConstSymbol};
pub use error::{Error, Result};
pub use ncpoly::{NCPoly, TruncatedSeries};
pub use numerics::{BigReal, EvalContext};
pub use relations::{Provenance, Relation, RelationTable};
pub use words::{Alphabet, Composition, Letter, Morphism, Word};

/// A commutative coefficient ring containing the rationals.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn neg_ref(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.neg_ref());
    }
    /// `Some(r)` when the value is the rational constant `r`.
    fn as_rational(&self) -> Option<Rational>;
    fn write_text(&self) -> String;
}

impl Coeff for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn write_text(&self) -> String {
        self.to_string()
    }
}

/// Small-integer rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| Error::Parse(s.to_string()))
}

/// Writes a sum of `coefficient·item` terms, e.g. `2·x0x1 - 1/2·x1 + 3`.
pub(crate) fn write_sum<C: Coeff>(terms: impl Iterator<Item = (String, C)>, unit: &str) -> String {
    let mut out = String::new();
    for (item, c) in terms {
        let (negative, body) = match c.as_rational() {
            Some(r) => {
                let negative = r < Coeff::zero();
                let mag = if negative { -r } else { r };
                let body = if mag == Coeff::one() {
                    if item == unit { "1".to_string() } else { item }
                } else if item == unit {
                    mag.to_string()
                } else {
                    format!("{mag}·{item}")
                };
                (negative, body)
            }
            None => {
                let text = c.write_text();
                if item == unit {
                    (false, format!("({text})"))
                } else {
                    (false, format!("({text})·{item}"))
                }
            }
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
