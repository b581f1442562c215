use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::game::CoalitionGame;

/// Exact rational numbers backed by arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Number type a mixed profile is expressed in.
///
/// [`Rational`] gives the exact mode used for support enumeration and exact
/// verification; `f64` gives the float mode used by iterative dynamics.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for exact arithmetic.
    const EXACT: bool;

    /// Payoff of `player` at the profile with flat index `profile`.
    fn payoff(game: &CoalitionGame, profile: usize, player: usize) -> Self;

    /// Converts an exact rational into this number type.
    fn from_rational(value: &Rational) -> Self;

    /// Nearest `f64`.
    fn to_f64(&self) -> f64;

    /// Absolute value.
    fn magnitude(&self) -> Self;

    /// Whether a value should be treated as zero when pivoting.
    fn is_negligible(&self) -> bool;

    /// Whether a probability total is acceptably close to one.
    fn is_unit_total(&self) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn payoff(game: &CoalitionGame, profile: usize, player: usize) -> Self {
        game.payoffs().exact(profile, player).clone()
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn is_unit_total(&self) -> bool {
        self.is_one()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn payoff(game: &CoalitionGame, profile: usize, player: usize) -> Self {
        game.payoffs().approx(profile, player)
    }

    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-12
    }

    fn is_unit_total(&self) -> bool {
        (self - 1.0).abs() <= 1e-12
    }
}
