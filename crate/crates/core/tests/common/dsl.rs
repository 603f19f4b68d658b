//! Expression generators and a finite-difference oracle for the metric
//! language, shared by the property tests and the acceptance gate.

use cvlab::dsl::{parse_metric, BinaryOp, Expr, UnaryOp, Var};
use proptest::prelude::*;

/// Plain `f64` evaluation written directly from the function definitions;
/// shares nothing with the jet code.
pub fn eval(e: &Expr, t: f64, theta: f64) -> f64 {
    match e {
        Expr::Const(c) => *c,
        Expr::Var(Var::T) => t,
        Expr::Var(Var::Theta) => theta,
        Expr::Unary(op, a) => {
            let x = eval(a, t, theta);
            match op {
                UnaryOp::Neg => -x,
                UnaryOp::Exp => x.exp(),
                UnaryOp::Log => x.ln(),
                UnaryOp::Sqrt => x.sqrt(),
                UnaryOp::Sin => x.sin(),
                UnaryOp::Cos => x.cos(),
                UnaryOp::Cosh => x.cosh(),
                UnaryOp::Sinh => x.sinh(),
                UnaryOp::Tanh => x.tanh(),
            }
        }
        Expr::Binary(op, a, b) => {
            let (x, y) = (eval(a, t, theta), eval(b, t, theta));
            match op {
                BinaryOp::Add => x + y,
                BinaryOp::Sub => x - y,
                BinaryOp::Mul => x * y,
                BinaryOp::Div => x / y,
                BinaryOp::Pow => x.powf(y),
            }
        }
    }
}

/// Ridders' extrapolation of a symmetric difference quotient `q(h)` whose
/// error expands in even powers of `h`. Returns the estimate and its error.
fn ridders(q: &dyn Fn(f64) -> f64, h0: f64) -> (f64, f64) {
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    const NTAB: usize = 12;
    let mut a = [[0.0f64; NTAB]; NTAB];
    let mut h = h0;
    a[0][0] = q(h);
    let (mut best, mut err) = (a[0][0], f64::INFINITY);
    for i in 1..NTAB {
        h /= CON;
        a[0][i] = q(h);
        let mut fac = CON2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let e = (a[j][i] - a[j - 1][i])
                .abs()
                .max((a[j][i] - a[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = a[j][i];
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    (best, err)
}

/// First and second `t`-derivatives by finite differences of [`eval`],
/// each with its extrapolation error. Several starting steps are tried
/// since fast oscillation defeats a coarse one.
pub fn finite_differences(e: &Expr, t: f64, theta: f64) -> ((f64, f64), (f64, f64)) {
    let f = |x: f64| eval(e, x, theta);
    let best = |q: &dyn Fn(f64) -> f64, starts: &[f64]| {
        starts
            .iter()
            .map(|&h0| ridders(q, h0))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
    };
    let d1 = best(&|h| (f(t + h) - f(t - h)) / (2.0 * h), &[0.1, 0.025, 0.006]);
    let d2 = best(
        &|h| (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h),
        &[0.2, 0.05, 0.0125],
    );
    (d1, d2)
}

fn c(x: f64) -> Expr {
    Expr::Const(x)
}

fn sq(e: Expr) -> Expr {
    Expr::binary(BinaryOp::Pow, e, c(2.0))
}

fn tanh(e: Expr) -> Expr {
    Expr::unary(UnaryOp::Tanh, e)
}

/// `k + e^2`, bounded below by `k >= 0.5`.
fn guarded(k: f64, e: Expr) -> Expr {
    Expr::binary(BinaryOp::Add, c(k), sq(e))
}

/// Expressions that stay smooth and moderate for `t` in `[0.5, 2]`: every
/// division, log, sqrt and non-integer power sees an argument bounded away
/// from zero, and exponentials and powers only see bounded bases, so that
/// finite differences stay trustworthy.
pub fn tame_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.5f64..2.0).prop_map(Expr::Const),
        Just(Expr::Var(Var::T)),
        Just(Expr::Var(Var::Theta)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let k = 0.5f64..2.0;
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::binary(BinaryOp::Add, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::binary(BinaryOp::Sub, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::binary(BinaryOp::Mul, a, b)),
            (inner.clone(), k.clone(), inner.clone()).prop_map(|(a, k, b)| Expr::binary(
                BinaryOp::Div,
                a,
                guarded(k, b)
            )),
            inner.clone().prop_map(|a| Expr::unary(UnaryOp::Neg, a)),
            (k.clone(), inner.clone()).prop_map(|(k, a)| Expr::unary(UnaryOp::Sqrt, guarded(k, a))),
            (k.clone(), inner.clone()).prop_map(|(k, a)| Expr::unary(UnaryOp::Log, guarded(k, a))),
            inner
                .clone()
                .prop_map(|a| Expr::unary(UnaryOp::Exp, Expr::unary(UnaryOp::Sin, a))),
            inner.clone().prop_map(|a| Expr::unary(UnaryOp::Sin, a)),
            inner.clone().prop_map(|a| Expr::unary(UnaryOp::Cos, a)),
            inner.clone().prop_map(|a| Expr::unary(UnaryOp::Tanh, a)),
            inner
                .clone()
                .prop_map(|a| Expr::unary(UnaryOp::Sinh, Expr::unary(UnaryOp::Tanh, a))),
            inner
                .clone()
                .prop_map(|a| Expr::unary(UnaryOp::Cosh, Expr::unary(UnaryOp::Sin, a))),
            (k.clone(), inner.clone(), k.clone()).prop_map(|(k, a, p)| Expr::binary(
                BinaryOp::Pow,
                guarded(k, tanh(a)),
                c(p)
            )),
            (k.clone(), inner.clone(), 2u8..4).prop_map(|(k, a, n)| Expr::binary(
                BinaryOp::Pow,
                Expr::binary(BinaryOp::Add, c(k), tanh(a)),
                c(f64::from(n))
            )),
            (Just(Expr::Var(Var::T)), 2u8..4).prop_map(|(a, n)| Expr::binary(
                BinaryOp::Pow,
                a,
                c(f64::from(n))
            )),
            (k, inner).prop_map(|(k, a)| Expr::binary(
                BinaryOp::Pow,
                c(k + 0.1),
                Expr::unary(UnaryOp::Sin, a)
            )),
        ]
    })
}

/// Arbitrary trees (no domain guards) with nonnegative literals.
pub fn any_expr() -> impl Strategy<Value = Expr> {
    let literal = prop_oneof![
        (0u32..1000).prop_map(f64::from),
        0.0f64..1e6,
        prop::sample::select(vec![0.1, 1e-7, 2.5e-12, 6.02e23, 1e300, 0.3333333333333333]),
    ];
    let leaf = prop_oneof![
        literal.prop_map(Expr::Const),
        Just(Expr::Var(Var::T)),
        Just(Expr::Var(Var::Theta)),
    ];
    let unary = prop::sample::select(vec![
        UnaryOp::Neg,
        UnaryOp::Exp,
        UnaryOp::Log,
        UnaryOp::Sqrt,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Cosh,
        UnaryOp::Sinh,
        UnaryOp::Tanh,
    ]);
    let binary = prop::sample::select(vec![
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Pow,
    ]);
    leaf.prop_recursive(5, 64, 2, move |inner| {
        prop_oneof![
            (unary.clone(), inner.clone()).prop_map(|(op, a)| Expr::unary(op, a)),
            (binary.clone(), inner.clone(), inner).prop_map(|(op, a, b)| Expr::binary(op, a, b)),
        ]
    })
}

/// Allowed derivative error: `1e-6` relative or `1e-9` absolute,
/// whichever is looser.
fn allowed(x: f64) -> f64 {
    (1e-6 * x.abs()).max(1e-9)
}

/// Forward-mode value and derivatives of `e` against [`eval`] and
/// [`finite_differences`].
pub fn jet_agrees(e: &Expr, t: f64, theta: f64) -> Result<(), String> {
    let jet = e.eval_jet(t, theta).map_err(|err| format!("{e}: {err}"))?;
    let value = eval(e, t, theta);
    // powers may be formed differently, and trig of a large argument
    // amplifies the last-bit difference
    if (jet.value - value).abs() > 1e-9 * value.abs().max(1.0) {
        return Err(format!("value {} vs {value} for {e}", jet.value));
    }
    let ((d1, e1), (d2, e2)) = finite_differences(e, t, theta);
    // the oracle itself must be good to well below the comparison tolerance
    if e1 > 0.1 * allowed(d1) || e2 > 0.1 * allowed(d2) {
        return Err(format!(
            "finite differences unresolved ({e1:e}, {e2:e}) for {e}"
        ));
    }
    if (jet.d1 - d1).abs() > allowed(d1) {
        return Err(format!("d1 {} vs {d1} for {e} at t = {t}", jet.d1));
    }
    if (jet.d2 - d2).abs() > allowed(d2) {
        return Err(format!("d2 {} vs {d2} for {e} at t = {t}", jet.d2));
    }
    Ok(())
}

/// Printing then parsing gives back the same tree and the same text.
pub fn round_trips(e: &Expr) -> Result<(), String> {
    let text = e.to_string();
    let back = parse_metric(&text).map_err(|err| format!("{text}: {err}"))?;
    if &back.root != e {
        return Err(format!("{text} parses to a different tree"));
    }
    if back.serialize() != text {
        return Err(format!("{text} reprints as {}", back.serialize()));
    }
    Ok(())
}
