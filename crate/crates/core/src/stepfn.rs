//! Formal step functions on the unit interval.
//!
//! A step function is a finite binary tree: a constant leaf, or two
//! subtrees glued at a point in `(0, 1)`. `glue o f g` squeezes `f`
//! into `[0, o]` and `g` into `[o, 1]`. The trees are meant for folding,
//! not for evaluation at a point, and the representation is not
//! canonical: equality is the lifted pointwise relation, decided by
//! aligning partitions.

use std::fmt;
use std::sync::Arc;

use crate::foundations::{OpenUnit, Rational};

/// A step function with values in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepF<X> {
    Const(X),
    Glue(OpenUnit, Box<StepF<X>>, Box<StepF<X>>),
}

/// Rational step functions, the leaves of everything that gets integrated.
pub type StepQ = StepF<Rational>;

/// A liftable function stored inside a step function of functions.
pub type Lift<X, Y> = Arc<dyn Fn(&X) -> Y + Send + Sync>;

/// A curried two-argument liftable function.
pub type Lift2<X, Y, Z> = Lift<X, Lift<Y, Z>>;

pub fn lift<X, Y>(f: impl Fn(&X) -> Y + Send + Sync + 'static) -> Lift<X, Y> {
    Arc::new(f)
}

/// Curries a binary function into nested lifts.
pub fn lift2<X, Y: 'static, Z>(
    f: impl Fn(&X, &Y) -> Z + Clone + Send + Sync + 'static,
) -> Lift<X, Lift<Y, Z>>
where
    X: Clone + Send + Sync + 'static,
{
    Arc::new(move |x: &X| {
        let x = x.clone();
        let f = f.clone();
        lift(move |y: &Y| f(&x, y))
    })
}

impl<X> StepF<X> {
    pub fn constant(x: X) -> Self {
        StepF::Const(x)
    }

    pub fn glue(o: OpenUnit, left: StepF<X>, right: StepF<X>) -> Self {
        StepF::Glue(o, Box::new(left), Box::new(right))
    }

    /// Structural catamorphism: replaces `Const` by `leaf` and `Glue` by `node`.
    pub fn fold<Y, L, N>(&self, leaf: &L, node: &N) -> Y
    where
        L: Fn(&X) -> Y,
        N: Fn(&OpenUnit, Y, Y) -> Y,
    {
        match self {
            StepF::Const(x) => leaf(x),
            StepF::Glue(o, l, r) => node(o, l.fold(leaf, node), r.fold(leaf, node)),
        }
    }

    pub fn leaf_count(&self) -> u64 {
        self.fold(&|_| 1, &|_, l, r| l + r)
    }

    /// The leaf values in left-to-right order.
    pub fn leaves(&self) -> Vec<&X> {
        fn walk<'a, X>(s: &'a StepF<X>, out: &mut Vec<&'a X>) {
            match s {
                StepF::Const(x) => out.push(x),
                StepF::Glue(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Applies `f` to every leaf, preserving the partition structure.
    pub fn map<Y>(&self, f: impl Fn(&X) -> Y) -> StepF<Y> {
        fn go<X, Y, F: Fn(&X) -> Y>(s: &StepF<X>, f: &F) -> StepF<Y> {
            match s {
                StepF::Const(x) => StepF::Const(f(x)),
                StepF::Glue(o, l, r) => StepF::glue(o.clone(), go(l, f), go(r, f)),
            }
        }
        go(self, &f)
    }
}

impl<X: Clone> StepF<X> {
    /// The part of the function on `[0, a]`, rescaled to the full interval.
    pub fn split_left(&self, a: &OpenUnit) -> StepF<X> {
        match self {
            StepF::Const(x) => StepF::Const(x.clone()),
            StepF::Glue(o, l, r) => {
                if a < o {
                    l.split_left(&OpenUnit::div(a, o))
                } else if a == o {
                    (**l).clone()
                } else {
                    StepF::glue(
                        OpenUnit::div(o, a),
                        (**l).clone(),
                        r.split_left(&OpenUnit::section(a, o)),
                    )
                }
            }
        }
    }

    /// The part of the function on `[a, 1]`, rescaled to the full interval.
    pub fn split_right(&self, a: &OpenUnit) -> StepF<X> {
        match self {
            StepF::Const(x) => StepF::Const(x.clone()),
            StepF::Glue(o, l, r) => {
                if a < o {
                    StepF::glue(
                        OpenUnit::section(o, a),
                        l.split_right(&OpenUnit::div(a, o)),
                        (**r).clone(),
                    )
                } else if a == o {
                    (**r).clone()
                } else {
                    r.split_right(&OpenUnit::section(a, o))
                }
            }
        }
    }

    pub fn split(&self, a: &OpenUnit) -> (StepF<X>, StepF<X>) {
        (self.split_left(a), self.split_right(a))
    }
}

/// Applies a step function of functions to a step function of arguments
/// pointwise, splitting the argument at every glue point of `f`.
pub fn ap<X: Clone, Y>(f: &StepF<Lift<X, Y>>, x: &StepF<X>) -> StepF<Y> {
    match f {
        StepF::Const(g) => x.map(|v| g(v)),
        StepF::Glue(o, fl, fr) => {
            let (l, r) = x.split(o);
            StepF::glue(o.clone(), ap(fl, &l), ap(fr, &r))
        }
    }
}

/// Pointwise combination of two step functions over their common refinement.
pub fn map2<X, Y, Z>(
    f: impl Fn(&X, &Y) -> Z + Clone + Send + Sync + 'static,
    a: &StepF<X>,
    b: &StepF<Y>,
) -> StepF<Z>
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + 'static,
{
    let lifted: StepF<Lift<Y, Z>> = a.map(|x| {
        let x = x.clone();
        let f = f.clone();
        lift(move |y: &Y| f(&x, y))
    });
    ap(&lifted, b)
}

impl<X: Clone> StepF<StepF<X>> {
    /// The diagonal of a step function of step functions: the monad join.
    pub fn join(&self) -> StepF<X> {
        match self {
            StepF::Const(f) => f.clone(),
            StepF::Glue(o, f, g) => StepF::glue(
                o.clone(),
                f.map(|s| s.split_left(o)).join(),
                g.map(|s| s.split_right(o)).join(),
            ),
        }
    }
}

/// Folds conjunction over a step function of booleans: does the
/// property hold on all of `[0, 1]`?
pub fn fold_star(p: &StepF<bool>) -> bool {
    p.fold(&|b| *b, &|_, l, r| l && r)
}

/// Lifts a binary relation to step functions: it must hold pointwise
/// everywhere on the common refinement.
pub fn lift_rel2<X, Y>(
    rel: impl Fn(&X, &Y) -> bool + Clone + Send + Sync + 'static,
    f: &StepF<X>,
    g: &StepF<Y>,
) -> bool
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + 'static,
{
    fold_star(&map2(rel, f, g))
}

/// The lifted equivalence: pointwise equality everywhere.
pub fn step_eq<X>(f: &StepF<X>, g: &StepF<X>) -> bool
where
    X: Clone + PartialEq + Send + Sync + 'static,
{
    lift_rel2(|a: &X, b: &X| a == b, f, g)
}

/// The lifted partial order on rational step functions.
pub fn step_leq(f: &StepQ, g: &StepQ) -> bool {
    lift_rel2(|a: &Rational, b: &Rational| a <= b, f, g)
}

/// Resplits both functions onto a common partition: the results have
/// identical glue skeletons and are pointwise equivalent to the inputs.
pub fn align<X: Clone, Y: Clone>(f: &StepF<X>, g: &StepF<Y>) -> (StepF<X>, StepF<Y>) {
    match (f, g) {
        (StepF::Const(_), StepF::Const(_)) => (f.clone(), g.clone()),
        (StepF::Const(x), StepF::Glue(..)) => (g.map(|_| x.clone()), g.clone()),
        (StepF::Glue(..), StepF::Const(y)) => (f.clone(), f.map(|_| y.clone())),
        (StepF::Glue(o1, fl, fr), StepF::Glue(o2, gl, gr)) => {
            if o1 == o2 {
                let (al, bl) = align(fl, gl);
                let (ar, br) = align(fr, gr);
                (
                    StepF::glue(o1.clone(), al, ar),
                    StepF::glue(o1.clone(), bl, br),
                )
            } else if o1 < o2 {
                let (g_l, g_r) = g.split(o1);
                let (al, bl) = align(fl, &g_l);
                let (ar, br) = align(fr, &g_r);
                (
                    StepF::glue(o1.clone(), al, ar),
                    StepF::glue(o1.clone(), bl, br),
                )
            } else {
                let (f_l, f_r) = f.split(o2);
                let (al, bl) = align(&f_l, gl);
                let (ar, br) = align(&f_r, gr);
                (
                    StepF::glue(o2.clone(), al, ar),
                    StepF::glue(o2.clone(), bl, br),
                )
            }
        }
    }
}

/// True when the two trees have the same glue points in the same shape.
pub fn same_skeleton<X, Y>(f: &StepF<X>, g: &StepF<Y>) -> bool {
    match (f, g) {
        (StepF::Const(_), StepF::Const(_)) => true,
        (StepF::Glue(o1, fl, fr), StepF::Glue(o2, gl, gr)) => {
            o1 == o2 && same_skeleton(fl, gl) && same_skeleton(fr, gr)
        }
        _ => false,
    }
}

impl<X: fmt::Display> fmt::Display for StepF<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepF::Const(x) => write!(f, "const {}", x),
            StepF::Glue(o, l, r) => write!(f, "glue {} ({}) ({})", o, l, r),
        }
    }
}
