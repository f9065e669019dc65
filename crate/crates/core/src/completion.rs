//! The completion of a metric space as regular approximation functions,
//! and the real numbers as the completion of the rationals.
//!
//! An element of the completion is a pure function from a requested
//! precision `eps` to an approximation, subject to the regularity
//! contract: approximations at `eps1` and `eps2` lie within `eps1 + eps2`
//! of each other in the underlying ball relation. Regularity is a
//! contract verified by sampled tests, not carried as a proof object.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{Signed, Zero};

use crate::foundations::{decimal_round, qball, BallPredicate, PosRational, Rational};

/// A uniformly continuous function between metric spaces, packaged with
/// its modulus so it can be lifted through the completion.
#[derive(Clone)]
pub struct UcFn<X: ?Sized, Y> {
    eval: Arc<dyn Fn(&X) -> Y + Send + Sync>,
    modulus: Arc<dyn Fn(&PosRational) -> PosRational + Send + Sync>,
}

impl<X: ?Sized, Y> UcFn<X, Y> {
    pub fn new(
        eval: impl Fn(&X) -> Y + Send + Sync + 'static,
        modulus: impl Fn(&PosRational) -> PosRational + Send + Sync + 'static,
    ) -> Self {
        UcFn { eval: Arc::new(eval), modulus: Arc::new(modulus) }
    }

    /// A nonexpansive map: the modulus is the identity.
    pub fn nonexpansive(eval: impl Fn(&X) -> Y + Send + Sync + 'static) -> Self {
        UcFn::new(eval, PosRational::clone)
    }

    pub fn eval(&self, x: &X) -> Y {
        (self.eval)(x)
    }

    pub fn modulus(&self, eps: &PosRational) -> PosRational {
        (self.modulus)(eps)
    }
}

/// An element of the completion of `X`: a regular approximation function.
///
/// Queries are memoized per element, keyed on the requested precision;
/// the cache never changes results because the query function is pure.
pub struct Complete<X> {
    query_fn: Arc<dyn Fn(&PosRational) -> X + Send + Sync>,
    cache: Arc<Mutex<HashMap<Rational, X>>>,
}

impl<X> Clone for Complete<X> {
    fn clone(&self) -> Self {
        Complete { query_fn: self.query_fn.clone(), cache: self.cache.clone() }
    }
}

impl<X: Clone + Send + Sync + 'static> Complete<X> {
    pub fn new(query: impl Fn(&PosRational) -> X + Send + Sync + 'static) -> Self {
        Complete { query_fn: Arc::new(query), cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    /// Embeds a point of `X` in the completion: every query returns it.
    pub fn constant(x: X) -> Self {
        Complete::new(move |_| x.clone())
    }

    /// The approximation of this element to within `eps`.
    pub fn query(&self, eps: &PosRational) -> X {
        if let Some(hit) = self.cache.lock().unwrap().get(eps.value()) {
            return hit.clone();
        }
        let computed = (self.query_fn)(eps);
        let mut cache = self.cache.lock().unwrap();
        cache.entry(eps.value().clone()).or_insert_with(|| computed.clone());
        computed
    }

    /// Lifts a uniformly continuous function to the completion:
    /// the image queries the source at `modulus(eps)`.
    pub fn map_uc<Y: Clone + Send + Sync + 'static>(&self, f: UcFn<X, Y>) -> Complete<Y> {
        let source = self.clone();
        Complete::new(move |eps| f.eval(&source.query(&f.modulus(eps))))
    }

    /// Binds a uniformly continuous function into the completion:
    /// `bind f = join . map f`, flattened into a single query.
    pub fn bind_uc<Y: Clone + Send + Sync + 'static>(&self, f: UcFn<X, Complete<Y>>) -> Complete<Y> {
        let source = self.clone();
        Complete::new(move |eps| {
            let half = eps.half();
            f.eval(&source.query(&f.modulus(&half))).query(&half)
        })
    }

    /// Sampled check of the regularity contract: for every pair drawn
    /// from `grid`, the two approximations are within the summed radii.
    pub fn is_regular_on(&self, ball: &BallPredicate<X>, grid: &[PosRational]) -> bool {
        for e1 in grid {
            for e2 in grid {
                if !ball.check(&e1.plus(e2), &self.query(e1), &self.query(e2)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Flattens a completion of completions by splitting the precision budget.
pub fn join<X: Clone + Send + Sync + 'static>(m: &Complete<Complete<X>>) -> Complete<X> {
    let m = m.clone();
    Complete::new(move |eps| {
        let half = eps.half();
        m.query(&half).query(&half)
    })
}

/// The real numbers: the completion of the rationals under `qball`.
pub type Real = Complete<Rational>;

impl Real {
    pub fn from_rational(q: Rational) -> Real {
        Real::constant(q)
    }

    pub fn add(&self, other: &Real) -> Real {
        let (a, b) = (self.clone(), other.clone());
        Real::new(move |eps| {
            let half = eps.half();
            a.query(&half) + b.query(&half)
        })
    }

    pub fn neg(&self) -> Real {
        let a = self.clone();
        Real::new(move |eps| -a.query(eps))
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    pub fn abs(&self) -> Real {
        let a = self.clone();
        Real::new(move |eps| a.query(eps).abs())
    }

    /// Multiplies by an exact rational scalar; queries at `eps / |c|`.
    pub fn scale(&self, c: &Rational) -> Real {
        if c.is_zero() {
            return Real::constant(Rational::zero());
        }
        let a = self.clone();
        let c = c.clone();
        let inv = PosRational::new(c.abs()).unwrap();
        Real::new(move |eps| &c * a.query(&eps.div_by(&inv)))
    }
}

/// Approximate ball test for the completion: sound for separation when
/// it returns false, and never false for elements within `eps`. May
/// report true for elements up to `eps + 4*delta` apart.
pub fn ball_approx(eps: &PosRational, delta: &PosRational, x: &Real, y: &Real) -> bool {
    let radius = eps.plus(&delta.plus(delta));
    qball(&radius, &x.query(delta), &y.query(delta))
}

/// Renders `x` to `n` decimal digits with total error at most `10^-n`:
/// the query contributes at most half an ulp and the rounding the rest.
pub fn answer(n: u32, x: &Real) -> String {
    let approx = x.query(&PosRational::pow10_recip(n).half());
    decimal_round(&approx, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::{rat, rat_int};
    use proptest::prelude::*;

    fn pr(n: i64, d: i64) -> PosRational {
        PosRational::from_ints(n, d)
    }

    fn log_grid() -> Vec<PosRational> {
        (1..=8).map(|k| PosRational::pow10_recip(k)).collect()
    }

    fn close(eps: &PosRational, x: &Real, y: &Real) -> bool {
        ball_approx(eps, &pr(1, 10_000_000), x, y)
    }

    #[test]
    fn constant_queries_itself() {
        let x = Real::constant(rat(1, 2));
        assert_eq!(x.query(&PosRational::pow10_recip(9)), rat(1, 2));
        assert!(x.is_regular_on(&crate::foundations::qball_predicate(), &log_grid()));
    }

    #[test]
    fn map_uc_on_constants() {
        let x = Real::constant(rat_int(0));
        let inc = UcFn::nonexpansive(|q: &Rational| q + rat_int(1));
        assert_eq!(x.map_uc(inc).query(&pr(1, 100)), rat_int(1));

        let ident = UcFn::nonexpansive(|q: &Rational| q.clone());
        let y = Real::constant(rat(3, 7));
        assert_eq!(y.map_uc(ident).query(&pr(1, 5)), y.query(&pr(1, 5)));

        let abs = UcFn::nonexpansive(|q: &Rational| q.abs());
        assert_eq!(Real::constant(rat_int(-3)).map_uc(abs).query(&pr(1, 9)), rat_int(3));
    }

    #[test]
    fn join_collapses_nested_returns() {
        let q = rat(5, 9);
        let m = Complete::constant(Real::constant(q.clone()));
        let joined = join(&m);
        for eps in &[pr(1, 10), pr(1, 1000), pr(1, 1_000_000)] {
            assert_eq!(joined.query(eps), q);
        }
    }

    #[test]
    fn monad_laws_sampled() {
        // bind return a == a, and bind f (return a) == f a
        let a = Real::constant(rat(2, 3));
        let ret = UcFn::nonexpansive(|q: &Rational| Real::constant(q.clone()));
        let lhs = a.bind_uc(ret.clone());
        for eps in &[pr(1, 1000), pr(1, 1_000_000)] {
            assert!(close(eps, &lhs, &a));
        }

        let f = UcFn::new(
            |q: &Rational| Real::constant(q * rat(1, 2) + rat_int(1)),
            |eps: &PosRational| eps.clone(),
        );
        let applied = Real::constant(rat(1, 3)).bind_uc(f.clone());
        let direct = f.eval(&rat(1, 3));
        for eps in &[pr(1, 1000), pr(1, 1_000_000)] {
            assert!(close(eps, &applied, &direct));
        }
    }

    #[test]
    fn bind_associativity_sampled() {
        let f = UcFn::new(
            |q: &Rational| Real::constant(q + rat(1, 4)),
            |eps: &PosRational| eps.clone(),
        );
        let g = UcFn::new(
            |q: &Rational| Real::constant(q * rat(1, 3)),
            |eps: &PosRational| eps.times(&pr(3, 1)),
        );
        for n in [-5i64, 0, 3, 11] {
            let a = Real::constant(rat(n, 7));
            let lhs = a.bind_uc(f.clone()).bind_uc(g.clone());
            let (f2, g2) = (f.clone(), g.clone());
            let composed = UcFn::new(
                move |q: &Rational| f2.eval(q).bind_uc(g2.clone()),
                {
                    let (f3, g3) = (f.clone(), g.clone());
                    move |eps: &PosRational| f3.modulus(&g3.modulus(&eps.half()).min(&eps.half()))
                },
            );
            let rhs = a.bind_uc(composed);
            for eps in &[pr(1, 1000), pr(1, 1_000_000)] {
                assert!(close(eps, &lhs, &rhs));
            }
        }
    }

    #[test]
    fn real_arithmetic() {
        let sum = Real::constant(rat(1, 2)).add(&Real::constant(rat(1, 4)));
        assert_eq!(sum.query(&pr(1, 100)), rat(3, 4));

        assert_eq!(Real::constant(rat_int(-2)).abs().query(&pr(1, 10)), rat_int(2));

        let zero = Real::constant(rat(9, 5)).scale(&rat_int(0));
        assert_eq!(zero.query(&pr(1, 1_000_000)), rat_int(0));

        let scaled = Real::constant(rat(1, 3)).scale(&rat_int(-6));
        assert_eq!(scaled.query(&pr(1, 10)), rat_int(-2));
    }

    #[test]
    fn answer_examples() {
        assert_eq!(answer(3, &Real::constant(rat(1, 3))), "0.333");
        assert_eq!(answer(3, &Real::constant(rat(1, 2))), "0.500");
        assert_eq!(answer(0, &Real::constant(rat(1, 2))), "1");
    }

    #[test]
    fn ball_approx_examples() {
        let x = Real::constant(rat(4, 7));
        assert!(ball_approx(&pr(1, 1000), &pr(1, 100), &x, &x));
        assert!(!ball_approx(
            &pr(1, 1),
            &pr(1, 100),
            &Real::constant(rat_int(0)),
            &Real::constant(rat_int(3))
        ));
        assert!(ball_approx(
            &pr(1, 10),
            &pr(1, 1000),
            &Real::constant(rat_int(0)),
            &Real::constant(rat(1, 10))
        ));
    }

    #[test]
    fn queries_are_thread_safe() {
        let x = Real::constant(rat(1, 3)).add(&Real::constant(rat(1, 6)));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let x = x.clone();
                std::thread::spawn(move || x.query(&pr(1, 1_000_000)))
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), rat(1, 2));
        }
    }

    prop_compose! {
        fn arb_rat()(n in -60i64..60, d in 1i64..40) -> Rational {
            rat(n, d)
        }
    }

    fn arb_real() -> impl Strategy<Value = Real> {
        (arb_rat(), arb_rat(), 0usize..3).prop_map(|(a, b, k)| {
            let x = Real::constant(a);
            let y = Real::constant(b);
            match k {
                0 => x.add(&y),
                1 => x.sub(&y).abs(),
                _ => x.scale(&rat(2, 3)).add(&y.neg()),
            }
        })
    }

    proptest! {
        #[test]
        fn constructed_reals_are_regular(x in arb_real()) {
            prop_assert!(x.is_regular_on(&crate::foundations::qball_predicate(), &log_grid()));
        }

        #[test]
        fn answer_precision_consistency(x in arb_real(), n in 0u32..5) {
            // recomputing two digits deeper and truncating agrees to one ulp
            let coarse = answer(n, &x);
            let fine = answer(n + 2, &x);
            let to_scaled = |s: &str, digits: u32| -> num::BigInt {
                let neg = s.starts_with('-');
                let stripped: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
                let mut v: num::BigInt = stripped.parse().unwrap();
                let extra = digits - n;
                v /= num::BigInt::from(10).pow(extra);
                if neg { -v } else { v }
            };
            let a = to_scaled(&coarse, n);
            let b = to_scaled(&fine, n + 2);
            let diff = (a - b).abs();
            prop_assert!(diff <= num::BigInt::from(1));
        }
    }
}
