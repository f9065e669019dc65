//! Exact rational arithmetic, refined numeric types, the ball-relation
//! metric contract, and uniformly continuous function types.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::completion::Real;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. All arithmetic is exact.
pub type Rational = num::BigRational;

/// Builds `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Clamps a rational to the unit interval `[0, 1]`.
pub fn clamp_unit(q: &Rational) -> Rational {
    if q.is_negative() {
        Rational::zero()
    } else if *q > Rational::one() {
        Rational::one()
    } else {
        q.clone()
    }
}

/// A strictly positive rational, used for precision requests and ball radii.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosRational(Rational);

impl PosRational {
    pub fn new(value: Rational) -> Option<Self> {
        if value.is_positive() {
            Some(PosRational(value))
        } else {
            None
        }
    }

    /// Builds `n/d`; panics unless the ratio is positive.
    pub fn from_ints(n: i64, d: i64) -> Self {
        PosRational::new(rat(n, d)).expect("ratio must be positive")
    }

    /// The positive rational `10^-n`.
    pub fn pow10_recip(n: u32) -> Self {
        let ten = BigInt::from(10);
        PosRational(Rational::new(BigInt::one(), ten.pow(n)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn half(&self) -> Self {
        PosRational(&self.0 / rat_int(2))
    }

    pub fn plus(&self, other: &Self) -> Self {
        PosRational(&self.0 + &other.0)
    }

    pub fn times(&self, other: &Self) -> Self {
        PosRational(&self.0 * &other.0)
    }

    pub fn div_by(&self, other: &Self) -> Self {
        PosRational(&self.0 / &other.0)
    }

    pub fn min(&self, other: &Self) -> Self {
        if self.0 <= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A rational strictly between 0 and 1: the glue points of step functions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenUnit(Rational);

impl OpenUnit {
    pub fn new(value: Rational) -> Option<Self> {
        if value.is_positive() && value < Rational::one() {
            Some(OpenUnit(value))
        } else {
            None
        }
    }

    /// Builds `n/d`; panics unless the ratio is in `(0, 1)`.
    pub fn from_ints(n: i64, d: i64) -> Self {
        OpenUnit::new(rat(n, d)).expect("ratio must lie in (0,1)")
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `1 - o`, again in `(0, 1)`.
    pub fn complement(&self) -> OpenUnit {
        OpenUnit(Rational::one() - &self.0)
    }

    /// The rescaling coefficient `a/o` used by the left split.
    /// Requires `a < o`; violating the precondition is a programmer error.
    pub fn div(a: &OpenUnit, o: &OpenUnit) -> OpenUnit {
        assert!(a < o, "OpenUnit::div requires a < o (got {} / {})", a.0, o.0);
        OpenUnit(&a.0 / &o.0)
    }

    /// The rescaling coefficient `(a - o)/(1 - o)` used by the right split.
    /// Requires `o < a`.
    pub fn section(a: &OpenUnit, o: &OpenUnit) -> OpenUnit {
        assert!(
            o < a,
            "OpenUnit::section requires o < a (got {} at {})",
            a.0,
            o.0
        );
        OpenUnit((&a.0 - &o.0) / (Rational::one() - &o.0))
    }
}

impl fmt::Display for OpenUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The ball relation of the rational metric: `|x - y| <= eps`, decided exactly.
pub fn qball(eps: &PosRational, x: &Rational, y: &Rational) -> bool {
    (x - y).abs() <= *eps.value()
}

/// A decidable ball relation `B eps x y` on some space `X`.
///
/// The five metric axioms are a contract on the relation: reflexivity,
/// symmetry and the triangle law are testable directly; closedness holds
/// because every runtime ball is of the form `d <= eps` with computable
/// `d`; the fifth axiom defines the equivalence of the space.
#[derive(Clone)]
pub struct BallPredicate<X: ?Sized> {
    test: Arc<dyn Fn(&PosRational, &X, &X) -> bool + Send + Sync>,
}

impl<X: ?Sized> BallPredicate<X> {
    pub fn new(test: impl Fn(&PosRational, &X, &X) -> bool + Send + Sync + 'static) -> Self {
        BallPredicate { test: Arc::new(test) }
    }

    pub fn check(&self, eps: &PosRational, x: &X, y: &X) -> bool {
        (self.test)(eps, x, y)
    }
}

/// The rational metric as a first-class ball predicate.
pub fn qball_predicate() -> BallPredicate<Rational> {
    BallPredicate::new(|eps, x, y| qball(eps, x, y))
}

/// Renders the nearest multiple of `10^-n` to `x` with exactly `n`
/// fractional digits. Ties round away from zero.
pub fn decimal_round(x: &Rational, n: u32) -> String {
    let scale = BigInt::from(10).pow(n);
    let scaled = x * Rational::from_integer(scale);
    // round half away from zero: sign * floor(|scaled| + 1/2)
    let magnitude = (scaled.abs() + rat(1, 2)).floor().to_integer();
    let negative = x.is_negative() && !magnitude.is_zero();
    let digits = magnitude.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if n == 0 {
        out.push_str(&digits);
        return out;
    }
    let n = n as usize;
    if digits.len() > n {
        let (int_part, frac_part) = digits.split_at(digits.len() - n);
        out.push_str(int_part);
        out.push('.');
        out.push_str(frac_part);
    } else {
        out.push_str("0.");
        for _ in 0..(n - digits.len()) {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// A uniformly continuous function from rationals to rationals with an
/// explicit modulus: inputs within `modulus(eps)` of each other give
/// outputs within `eps`. Certified on `[0, 1]` only; evaluation clamps
/// its input to the unit interval.
#[derive(Clone)]
pub struct UcFunQQ {
    eval: Arc<dyn Fn(&Rational) -> Rational + Send + Sync>,
    modulus: Arc<dyn Fn(&PosRational) -> PosRational + Send + Sync>,
}

impl UcFunQQ {
    pub fn new(
        eval: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
        modulus: impl Fn(&PosRational) -> PosRational + Send + Sync + 'static,
    ) -> Self {
        UcFunQQ {
            eval: Arc::new(move |q| eval(&clamp_unit(q))),
            modulus: Arc::new(modulus),
        }
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        (self.eval)(q)
    }

    pub fn modulus(&self, eps: &PosRational) -> PosRational {
        (self.modulus)(eps)
    }
}

/// A uniformly continuous function from rationals to real numbers,
/// with the same modulus contract read against the real ball.
#[derive(Clone)]
pub struct UcFunQR {
    eval: Arc<dyn Fn(&Rational) -> Real + Send + Sync>,
    modulus: Arc<dyn Fn(&PosRational) -> PosRational + Send + Sync>,
}

impl UcFunQR {
    pub fn new(
        eval: impl Fn(&Rational) -> Real + Send + Sync + 'static,
        modulus: impl Fn(&PosRational) -> PosRational + Send + Sync + 'static,
    ) -> Self {
        UcFunQR {
            eval: Arc::new(move |q| eval(&clamp_unit(q))),
            modulus: Arc::new(modulus),
        }
    }

    pub fn eval(&self, q: &Rational) -> Real {
        (self.eval)(q)
    }

    pub fn modulus(&self, eps: &PosRational) -> PosRational {
        (self.modulus)(eps)
    }
}
