//! Exact ordered-field scalars.
//!
//! Two realizations are provided: [`Rational`] (arbitrary-precision
//! rationals) and [`Cyclotomic`] (real numbers in a cyclotomic field, used
//! for the vertices of regular polygons). All geometry and linear
//! programming code is generic over [`Scalar`].

mod cyclotomic;
mod fixed;
mod rational;

pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use rational::{parse_rational, Rational};

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

/// Which scalar realization a configuration uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    /// Cyclotomic field of the given order.
    Cyclotomic(u32),
}

impl Display for ScalarKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarKind::Rational => write!(f, "rational"),
            ScalarKind::Cyclotomic(m) => write!(f, "cyclotomic:{m}"),
        }
    }
}

/// An exact ordered field.
///
/// Arithmetic takes operands by reference so that hot loops (elimination,
/// pivoting) avoid cloning big-number storage. Division by zero panics.
pub trait Scalar: Clone + Debug + Display + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }

    fn is_zero(&self) -> bool;

    /// Sign of the value: -1, 0 or +1.
    fn signum(&self) -> i8;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn inv(&self) -> Self {
        Self::one().div(self)
    }

    /// `self - a * b`, the elimination kernel.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.sub(&a.mul(b))
    }

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        match self.sub(other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Nearest `f64`, for display and plotting only.
    fn to_f64(&self) -> f64;

    /// Canonical exact text form used by every serializer.
    fn to_exact_string(&self) -> String;

    /// Exact text form inside a file whose header declares `kind`.
    fn to_exact_string_in(&self, kind: ScalarKind) -> String {
        let _ = kind;
        self.to_exact_string()
    }

    fn kind(&self) -> ScalarKind;
}

/// Sum of a sequence of scalars.
pub fn sum<'a, S: Scalar>(items: impl IntoIterator<Item = &'a S>) -> S {
    items.into_iter().fold(S::zero(), |acc, x| acc.add(x))
}
