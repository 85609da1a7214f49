//! Univariate expressions over a small closed grammar.
//!
//! The grammar is `+ - * /`, integer powers, `sin`, `cos`, `exp`, decimal
//! literals, the named constants `pi` and `e`, and the single variable `x`.
//! Every expression in this grammar has derivatives of all orders that are
//! again expressions in the grammar, so [`Expression::derivative`] is total.

mod parse;
mod simplify;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("exponent at position {position} must be an integer literal, got {found}")]
    NonIntegerExponent { position: usize, found: String },
    #[error("division by zero while evaluating at x = {x}")]
    DivisionByZero { x: f64 },
}

/// A node of the expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    /// `pi`, expanded to full double precision at evaluation time.
    Pi,
    /// `e`, Euler's number.
    E,
    Var,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Sin(Box<Node>),
    Cos(Box<Node>),
    Exp(Box<Node>),
}

impl Node {
    pub fn constant(c: f64) -> Node {
        Node::Const(c)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Node::Const(c) if *c == 0.0)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Node::Const(c) if *c == 1.0)
    }

    /// True when the subtree does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Node::Const(_) | Node::Pi | Node::E => true,
            Node::Var => false,
            Node::Neg(a) | Node::Pow(a, _) | Node::Sin(a) | Node::Cos(a) | Node::Exp(a) => {
                a.is_constant()
            }
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }

    /// Number of nodes in the subtree.
    pub fn size(&self) -> usize {
        match self {
            Node::Const(_) | Node::Pi | Node::E | Node::Var => 1,
            Node::Neg(a) | Node::Pow(a, _) | Node::Sin(a) | Node::Cos(a) | Node::Exp(a) => {
                1 + a.size()
            }
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, ExprError> {
        Ok(match self {
            Node::Const(c) => *c,
            Node::Pi => std::f64::consts::PI,
            Node::E => std::f64::consts::E,
            Node::Var => x,
            Node::Neg(a) => -a.eval(x)?,
            Node::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Node::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Node::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Node::Div(a, b) => {
                let num = a.eval(x)?;
                let den = b.eval(x)?;
                if den.abs() < f64::MIN_POSITIVE {
                    return Err(ExprError::DivisionByZero { x });
                }
                num / den
            }
            Node::Pow(a, n) => {
                let base = a.eval(x)?;
                if *n < 0 && base.abs() < f64::MIN_POSITIVE {
                    return Err(ExprError::DivisionByZero { x });
                }
                base.powi(*n)
            }
            Node::Sin(a) => a.eval(x)?.sin(),
            Node::Cos(a) => a.eval(x)?.cos(),
            Node::Exp(a) => a.eval(x)?.exp(),
        })
    }

    /// First derivative with respect to `x`, unsimplified.
    fn derive(&self) -> Node {
        use Node::*;
        match self {
            Const(_) | Pi | E => Const(0.0),
            Var => Const(1.0),
            Neg(a) => Neg(Box::new(a.derive())),
            Add(a, b) => Add(Box::new(a.derive()), Box::new(b.derive())),
            Sub(a, b) => Sub(Box::new(a.derive()), Box::new(b.derive())),
            Mul(a, b) => Add(
                Box::new(Mul(Box::new(a.derive()), b.clone())),
                Box::new(Mul(a.clone(), Box::new(b.derive()))),
            ),
            Div(a, b) => Div(
                Box::new(Sub(
                    Box::new(Mul(Box::new(a.derive()), b.clone())),
                    Box::new(Mul(a.clone(), Box::new(b.derive()))),
                )),
                Box::new(Pow(b.clone(), 2)),
            ),
            Pow(_, 0) => Const(0.0),
            Pow(a, n) => Mul(
                Box::new(Mul(
                    Box::new(Const(*n as f64)),
                    Box::new(Pow(a.clone(), n - 1)),
                )),
                Box::new(a.derive()),
            ),
            Sin(a) => Mul(Box::new(Cos(a.clone())), Box::new(a.derive())),
            Cos(a) => Mul(
                Box::new(Neg(Box::new(Sin(a.clone())))),
                Box::new(a.derive()),
            ),
            Exp(a) => Mul(Box::new(Exp(a.clone())), Box::new(a.derive())),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Node::Add(..) | Node::Sub(..) => 1,
            Node::Mul(..) | Node::Div(..) => 2,
            Node::Pow(..) => 3,
            Node::Neg(_) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let paren = self.precedence() < min_prec;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Node::Const(c) => {
                if c.is_sign_negative() {
                    write!(f, "({c})")?
                } else {
                    write!(f, "{c}")?
                }
            }
            Node::Pi => f.write_str("pi")?,
            Node::E => f.write_str("e")?,
            Node::Var => f.write_str("x")?,
            Node::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 4)?;
            }
            Node::Add(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 2)?;
            }
            Node::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" - ")?;
                b.fmt_at(f, 2)?;
            }
            Node::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str("*")?;
                b.fmt_at(f, 3)?;
            }
            Node::Div(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str("/")?;
                b.fmt_at(f, 3)?;
            }
            Node::Pow(a, n) => {
                // a negated base reads ambiguously even though it parses
                a.fmt_at(f, 5)?;
                if *n < 0 {
                    write!(f, "^({n})")?;
                } else {
                    write!(f, "^{n}")?;
                }
            }
            Node::Sin(a) => write!(f, "sin({a})")?,
            Node::Cos(a) => write!(f, "cos({a})")?,
            Node::Exp(a) => write!(f, "exp({a})")?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// A parsed univariate function of `x`.
///
/// Cloning is cheap; the tree is shared.
#[derive(Debug, Clone)]
pub struct Expression {
    root: Arc<Node>,
    source: String,
}

impl Expression {
    pub fn from_node(root: Node) -> Self {
        let source = root.to_string();
        Expression {
            root: Arc::new(root),
            source,
        }
    }

    pub(crate) fn with_source(root: Node, source: &str) -> Self {
        Expression {
            root: Arc::new(root),
            source: source.to_owned(),
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// The text this expression was parsed from, or its pretty-printed form
    /// for derived expressions.
    pub fn source_text(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, x: f64) -> Result<f64, ExprError> {
        self.root.eval(x)
    }

    pub fn simplify(&self) -> Expression {
        Expression::from_node(simplify::simplify(&self.root))
    }

    /// Exact `k`-th derivative. Each intermediate derivative is simplified
    /// so repeated differentiation stays compact.
    pub fn derivative(&self, k: usize) -> Expression {
        if k == 0 {
            return self.clone();
        }
        let mut node = (*self.root).clone();
        for _ in 0..k {
            node = simplify::simplify(&node.derive());
        }
        Expression::from_node(node)
    }

    /// Returns the value when the expression simplifies to a constant.
    pub fn as_constant(&self) -> Option<f64> {
        let simplified = simplify::simplify(&self.root);
        if simplified.is_constant() {
            simplified.eval(0.0).ok()
        } else {
            None
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl std::str::FromStr for Expression {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// `k`-th derivative of `e`.
pub fn differentiate(e: &Expression, k: usize) -> Expression {
    e.derivative(k)
}

pub fn eval(e: &Expression, x: f64) -> Result<f64, ExprError> {
    e.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn objective_function_tree() {
        let e = parse("exp(x)*sin(x)").unwrap();
        assert_eq!(
            *e.root(),
            Node::Mul(
                Box::new(Node::Exp(Box::new(Node::Var))),
                Box::new(Node::Sin(Box::new(Node::Var)))
            )
        );
        assert_eq!(e.eval(0.0).unwrap(), 0.0);
        let at = 1.5 * PI;
        assert!(rel_close(e.eval(at).unwrap(), -at.exp(), 1e-15));
    }

    #[test]
    fn zero_constant() {
        let e = parse("0").unwrap();
        assert_eq!(*e.root(), Node::Const(0.0));
        for x in [-3.0, 0.0, 7.5] {
            assert_eq!(e.eval(x).unwrap(), 0.0);
        }
    }

    #[test]
    fn node_polynomial_text_vanishes_at_node() {
        let e = parse("x^2 - (3*pi/2)*x").unwrap();
        let at = 3.0 * PI / 2.0;
        assert!(e.eval(at).unwrap().abs() < 1e-14);
        assert_eq!(parse("x^3").unwrap().eval(2.0).unwrap(), 8.0);
    }

    #[test]
    fn first_derivative_of_objective() {
        let d = parse("exp(x)*sin(x)").unwrap().derivative(1);
        for x in [-1.0f64, 0.3, 2.0, 4.0] {
            let expect = x.exp() * (x.cos() + x.sin());
            assert!(rel_close(d.eval(x).unwrap(), expect, 1e-14));
        }
    }

    #[test]
    fn constant_derivative_is_zero() {
        let d = parse("3.25").unwrap().derivative(1);
        assert_eq!(*d.root(), Node::Const(0.0));
        let d = parse("pi*e").unwrap().derivative(1);
        assert_eq!(*d.root(), Node::Const(0.0));
    }

    #[test]
    fn zeroth_derivative_is_identity() {
        let e = parse("sin(x)/x").unwrap();
        assert_eq!(e.derivative(0).root(), e.root());
    }

    #[test]
    fn quotient_and_negative_powers() {
        let e = parse("1/x + x^(-2)").unwrap();
        let d = e.derivative(1);
        let x: f64 = 1.7;
        assert!(rel_close(d.eval(x).unwrap(), -1.0 / (x * x) - 2.0 / x.powi(3), 1e-14));
        assert!(matches!(e.eval(0.0), Err(ExprError::DivisionByZero { .. })));
    }

    #[test]
    fn constant_detection() {
        assert_eq!(parse("x^2").unwrap().derivative(2).as_constant(), Some(2.0));
        assert_eq!(parse("x^3").unwrap().derivative(3).as_constant(), Some(6.0));
        assert_eq!(parse("exp(x)").unwrap().derivative(3).as_constant(), None);
    }

    #[test]
    fn pretty_print_reparses() {
        for text in [
            "exp(x)*sin(x)",
            "-x^2",
            "-(x^2)",
            "x - (x - 1)",
            "2/(x*3)",
            "x^(-3) + cos(-x)",
            "1e-5*x - 0.1",
        ] {
            let e = parse(text).unwrap();
            let again = parse(&e.to_string()).unwrap();
            for x in [0.3, 1.1, 2.9] {
                assert!(
                    rel_close(again.eval(x).unwrap(), e.eval(x).unwrap(), 1e-15),
                    "{text} -> {again}"
                );
            }
        }
    }

    #[test]
    fn unary_minus_binds_tighter_than_power() {
        let e = parse("-x^2").unwrap();
        assert_eq!(e.eval(3.0).unwrap(), 9.0);
        let e = parse("-(x^2)").unwrap();
        assert_eq!(e.eval(3.0).unwrap(), -9.0);
    }
}
