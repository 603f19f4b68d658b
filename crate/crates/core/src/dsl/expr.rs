use std::fmt;

use super::jet::Jet2;
use crate::error::DomainError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Cosh,
    Sinh,
    Tanh,
}

impl UnaryOp {
    /// Functions callable by name in the metric language.
    pub const FUNCTIONS: [UnaryOp; 8] = [
        UnaryOp::Exp,
        UnaryOp::Log,
        UnaryOp::Sqrt,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Cosh,
        UnaryOp::Sinh,
        UnaryOp::Tanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Cosh => "cosh",
            UnaryOp::Sinh => "sinh",
            UnaryOp::Tanh => "tanh",
        }
    }

    pub fn from_name(name: &str) -> Option<UnaryOp> {
        Self::FUNCTIONS.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, x: Jet2) -> Result<Jet2, DomainError> {
        Ok(match self {
            UnaryOp::Neg => -x,
            UnaryOp::Exp => x.exp(),
            UnaryOp::Log => x.ln()?,
            UnaryOp::Sqrt => x.sqrt()?,
            UnaryOp::Sin => x.sin(),
            UnaryOp::Cos => x.cos(),
            UnaryOp::Cosh => x.cosh(),
            UnaryOp::Sinh => x.sinh(),
            UnaryOp::Tanh => x.tanh(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }

    fn apply(self, a: Jet2, b: Jet2) -> Result<Jet2, DomainError> {
        match self {
            BinaryOp::Add => Ok(a + b),
            BinaryOp::Sub => Ok(a - b),
            BinaryOp::Mul => Ok(a * b),
            BinaryOp::Div => a.checked_div(b),
            BinaryOp::Pow => a.pow(b),
        }
    }
}

/// Expression tree node. Literals produced by the parser are never negative;
/// a leading minus is always a [`UnaryOp::Neg`] node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn unary(op: UnaryOp, arg: Expr) -> Expr {
        Expr::Unary(op, Box::new(arg))
    }

    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Unary(_, a) => 1 + a.depth(),
            Expr::Binary(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Evaluates with `t` active and `theta` passive.
    pub fn eval_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        let out = match self {
            Expr::Const(c) => Jet2::constant(*c),
            Expr::Var(Var::T) => Jet2::variable(t),
            Expr::Var(Var::Theta) => Jet2::constant(theta),
            Expr::Unary(op, a) => op.apply(a.eval_jet(t, theta)?)?,
            Expr::Binary(op, a, b) => op.apply(a.eval_jet(t, theta)?, b.eval_jet(t, theta)?)?,
        };
        out.finite("metric expression")
    }
}

impl fmt::Display for Expr {
    /// Canonical fully-parenthesized form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if *c < 0.0 => write!(f, "(-{})", -c),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(Var::T) => f.write_str("t"),
            Expr::Var(Var::Theta) => f.write_str("theta"),
            Expr::Unary(UnaryOp::Neg, a) => write!(f, "(-{a})"),
            Expr::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

/// A parsed metric coefficient `G(t, theta)` together with its source text.
#[derive(Debug, Clone)]
pub struct MetricExpr {
    pub root: Expr,
    pub source: String,
}

impl MetricExpr {
    pub fn eval_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        self.root.eval_jet(t, theta)
    }

    pub fn serialize(&self) -> String {
        self.root.to_string()
    }
}

/// Structural equality; the source text is ignored.
impl PartialEq for MetricExpr {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl fmt::Display for MetricExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_metric;

    fn jet(src: &str, t: f64) -> Jet2 {
        parse_metric(src).unwrap().eval_jet(t, 0.0).unwrap()
    }

    #[test]
    fn decaying_exponential() {
        assert_eq!(jet("exp(-2*t)", 0.0), Jet2::new(1.0, -2.0, 4.0));
    }

    #[test]
    fn square() {
        assert_eq!(jet("t^2", 3.0), Jet2::new(9.0, 6.0, 2.0));
    }

    #[test]
    fn theta_is_passive() {
        let j = parse_metric("t*sin(theta)")
            .unwrap()
            .eval_jet(2.0, 1.0)
            .unwrap();
        assert_eq!(j.d1, 1f64.sin());
        assert_eq!(j.d2, 0.0);
    }

    #[test]
    fn serialize_canonical_forms() {
        assert_eq!(parse_metric("t^2").unwrap().serialize(), "(t ^ 2)");
        assert_eq!(
            parse_metric("exp(-2*t)").unwrap().serialize(),
            "exp((-(2 * t)))"
        );
        assert_eq!(
            parse_metric("1.5e-3 + theta").unwrap().serialize(),
            "(0.0015 + theta)"
        );
    }

    #[test]
    fn domain_errors_surface() {
        let e = parse_metric("log(t - 5)").unwrap();
        assert!(matches!(
            e.eval_jet(1.0, 0.0),
            Err(DomainError::LogNonPositive(_))
        ));
        let e = parse_metric("1/(t-1)").unwrap();
        assert_eq!(e.eval_jet(1.0, 0.0), Err(DomainError::DivisionByZero));
        let e = parse_metric("exp(t^2)").unwrap();
        assert!(matches!(
            e.eval_jet(40.0, 0.0),
            Err(DomainError::NonFinite(_))
        ));
    }

    #[test]
    fn deterministic_bits() {
        let e = parse_metric("cosh(t)^2 * (1.5 + sin(theta)) / sqrt(1 + t^2)").unwrap();
        let a = e.eval_jet(0.7, 0.3).unwrap();
        let b = e.eval_jet(0.7, 0.3).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.d1.to_bits(), b.d1.to_bits());
        assert_eq!(a.d2.to_bits(), b.d2.to_bits());
    }
}
