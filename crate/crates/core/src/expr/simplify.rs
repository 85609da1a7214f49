//! Rewrite-to-fixpoint simplifier.
//!
//! Rules: constant folding of literal arithmetic, zero/one elimination,
//! flattening of sums into coefficient-weighted terms with like terms merged,
//! and flattening of products into a coefficient times powers of distinct
//! factors. `sin`, `cos` and `exp` of constants and the named constants stay
//! symbolic.

use super::Node;

const MAX_PASSES: usize = 64;

pub(super) fn simplify(node: &Node) -> Node {
    let mut cur = node.clone();
    for _ in 0..MAX_PASSES {
        let next = pass(&cur);
        if next == cur {
            return next;
        }
        cur = next;
    }
    cur
}

fn pass(node: &Node) -> Node {
    use Node::*;
    let rebuilt = match node {
        Const(_) | Pi | E | Var => return node.clone(),
        Neg(a) => Neg(Box::new(pass(a))),
        Add(a, b) => Add(Box::new(pass(a)), Box::new(pass(b))),
        Sub(a, b) => Sub(Box::new(pass(a)), Box::new(pass(b))),
        Mul(a, b) => Mul(Box::new(pass(a)), Box::new(pass(b))),
        Div(a, b) => Div(Box::new(pass(a)), Box::new(pass(b))),
        Pow(a, n) => Pow(Box::new(pass(a)), *n),
        Sin(a) => Sin(Box::new(pass(a))),
        Cos(a) => Cos(Box::new(pass(a))),
        Exp(a) => Exp(Box::new(pass(a))),
    };
    rewrite(rebuilt)
}

fn rewrite(node: Node) -> Node {
    use Node::*;
    match node {
        Neg(a) => match *a {
            Const(c) => Const(-c),
            Neg(inner) => *inner,
            other => Neg(Box::new(other)),
        },
        Add(..) | Sub(..) => {
            let mut terms = Vec::new();
            let mut constant = 0.0;
            collect_terms(&node, 1.0, &mut terms, &mut constant);
            rebuild_sum(terms, constant)
        }
        Mul(..) => {
            let mut coef = 1.0;
            let mut factors = Vec::new();
            collect_factors(&node, &mut coef, &mut factors);
            rebuild_product(coef, factors)
        }
        Div(a, b) => match (*a, *b) {
            (num, _) if num.is_zero() => Const(0.0),
            (num, den) if den.is_one() => num,
            (Const(p), Const(q)) if q != 0.0 => Const(p / q),
            (num, den) => Div(Box::new(num), Box::new(den)),
        },
        Pow(_, 0) => Const(1.0),
        Pow(a, 1) => *a,
        Pow(a, n) => match *a {
            Const(c) if c != 0.0 || n > 0 => Const(c.powi(n)),
            Pow(base, m) => match m.checked_mul(n) {
                Some(mn) => Pow(base, mn),
                None => Pow(Box::new(Pow(base, m)), n),
            },
            other => Pow(Box::new(other), n),
        },
        other => other,
    }
}

fn collect_terms(node: &Node, sign: f64, terms: &mut Vec<(f64, Node)>, constant: &mut f64) {
    match node {
        Node::Add(a, b) => {
            collect_terms(a, sign, terms, constant);
            collect_terms(b, sign, terms, constant);
        }
        Node::Sub(a, b) => {
            collect_terms(a, sign, terms, constant);
            collect_terms(b, -sign, terms, constant);
        }
        Node::Neg(a) => collect_terms(a, -sign, terms, constant),
        Node::Const(c) => *constant += sign * c,
        Node::Mul(a, b) if matches!(**a, Node::Const(_)) => {
            let Node::Const(c) = **a else { unreachable!() };
            push_term(terms, sign * c, (**b).clone());
        }
        other => push_term(terms, sign, other.clone()),
    }
}

fn push_term(terms: &mut Vec<(f64, Node)>, coef: f64, term: Node) {
    match terms.iter_mut().find(|(_, t)| *t == term) {
        Some((c, _)) => *c += coef,
        None => terms.push((coef, term)),
    }
}

fn rebuild_sum(terms: Vec<(f64, Node)>, constant: f64) -> Node {
    let mut acc: Option<Node> = None;
    for (coef, term) in terms.into_iter().filter(|(c, _)| *c != 0.0) {
        let piece = if coef.abs() == 1.0 {
            term
        } else {
            Node::Mul(Box::new(Node::Const(coef.abs())), Box::new(term))
        };
        acc = Some(match acc {
            None if coef < 0.0 => Node::Neg(Box::new(piece)),
            None => piece,
            Some(lhs) if coef < 0.0 => Node::Sub(Box::new(lhs), Box::new(piece)),
            Some(lhs) => Node::Add(Box::new(lhs), Box::new(piece)),
        });
    }
    match acc {
        None => Node::Const(constant),
        Some(lhs) if constant == 0.0 => lhs,
        Some(lhs) if constant < 0.0 => Node::Sub(Box::new(lhs), Box::new(Node::Const(-constant))),
        Some(lhs) => Node::Add(Box::new(lhs), Box::new(Node::Const(constant))),
    }
}

fn collect_factors(node: &Node, coef: &mut f64, factors: &mut Vec<(Node, i32)>) {
    match node {
        Node::Mul(a, b) => {
            collect_factors(a, coef, factors);
            collect_factors(b, coef, factors);
        }
        Node::Neg(a) => {
            *coef = -*coef;
            collect_factors(a, coef, factors);
        }
        Node::Const(c) => *coef *= c,
        Node::Pow(base, n) => push_factor(factors, (**base).clone(), *n),
        other => push_factor(factors, other.clone(), 1),
    }
}

fn push_factor(factors: &mut Vec<(Node, i32)>, base: Node, n: i32) {
    match factors.iter_mut().find(|(b, _)| *b == base) {
        Some((_, m)) => match m.checked_add(n) {
            Some(sum) => *m = sum,
            None => factors.push((base, n)),
        },
        None => factors.push((base, n)),
    }
}

fn rebuild_product(coef: f64, factors: Vec<(Node, i32)>) -> Node {
    if coef == 0.0 {
        return Node::Const(0.0);
    }
    let body = factors
        .into_iter()
        .filter(|(_, n)| *n != 0)
        .map(|(base, n)| if n == 1 { base } else { Node::Pow(Box::new(base), n) })
        .reduce(|lhs, rhs| Node::Mul(Box::new(lhs), Box::new(rhs)));
    match body {
        None => Node::Const(coef),
        Some(body) if coef == 1.0 => body,
        Some(body) if coef == -1.0 => Node::Neg(Box::new(body)),
        Some(body) => Node::Mul(Box::new(Node::Const(coef)), Box::new(body)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn simp(text: &str) -> String {
        simplify(parse(text).unwrap().root()).to_string()
    }

    #[test]
    fn zero_and_one_elimination() {
        assert_eq!(simp("0*x + 1*sin(x)"), "sin(x)");
        assert_eq!(simp("x + 0"), "x");
        assert_eq!(simp("0 - x"), "-x");
        assert_eq!(simp("x/1"), "x");
        assert_eq!(simp("0/x"), "0");
        assert_eq!(simp("x^1 + x^0"), "x + 1");
    }

    #[test]
    fn folding_and_collection() {
        assert_eq!(simp("2*3 + 4"), "10");
        assert_eq!(simp("x + x"), "2*x");
        assert_eq!(simp("3*x - x*3"), "0");
        assert_eq!(simp("x*x*x"), "x^3");
        assert_eq!(simp("(x^2)^3"), "x^6");
        assert_eq!(simp("-(-x)"), "x");
        assert_eq!(simp("2*(-x)*3"), "(-6)*x");
    }

    #[test]
    fn transcendental_constants_stay_symbolic() {
        assert_eq!(simp("sin(1) + pi"), "sin(1) + pi");
        assert_eq!(simp("exp(0)"), "exp(0)");
    }

    #[test]
    fn repeated_derivatives_stay_small() {
        let e = parse("exp(x)*sin(x)").unwrap();
        for k in 1..=8 {
            assert!(e.derivative(k).root().size() <= 16, "k = {k}: {}", e.derivative(k));
        }
        assert_eq!(e.derivative(2).to_string(), "2*(exp(x)*cos(x))");
    }
}
