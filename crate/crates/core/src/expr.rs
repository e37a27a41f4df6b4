//! Expressions in a single variable `p`, used to define `f(p)` and `h(p)`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] power)?        right associative
//! atom   := 'p' | integer | '(' expr ')'
//! ```
//!
//! Exponents must be constant integers. `-p^2` parses as `-(p^2)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Exponents are bounded so a stray `p^100000` cannot exhaust memory.
pub const MAX_EXPONENT: i64 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Var,
    Lit(BigInt),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
}

/// Parsed expression tree over the variable `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeExpr {
    source: String,
    root: Node,
}

/// Failure to evaluate an expression at a particular prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    DivisionByZero,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

impl PrimeExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser {
            chars: text.char_indices().collect(),
            idx: 0,
            len: text.len(),
        };
        let root = parser.expr()?;
        parser.skip_ws();
        if let Some((pos, c)) = parser.peek() {
            return Err(parse_err(pos, format!("unexpected `{c}`")));
        }
        Ok(PrimeExpr {
            source: text.trim().to_string(),
            root,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, p: u64) -> std::result::Result<Rational, EvalError> {
        eval_node(&self.root, &Rational::from_integer(BigInt::from(p)))
    }

    /// True when the expression does not mention `p`.
    pub fn is_constant(&self) -> bool {
        !mentions_var(&self.root)
    }

    /// Value of a `p`-free expression.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            eval_node(&self.root, &Rational::zero()).ok()
        } else {
            None
        }
    }

    /// Upper estimate of the polynomial degree in `p` (used for growth bounds).
    ///
    /// Exact for monomials and for quotients whose denominator has no
    /// cancelling leading terms.
    pub fn degree(&self) -> i64 {
        degree(&self.root)
    }
}

impl fmt::Display for PrimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn mentions_var(n: &Node) -> bool {
    match n {
        Node::Var => true,
        Node::Lit(_) => false,
        Node::Neg(a) | Node::Pow(a, _) => mentions_var(a),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
            mentions_var(a) || mentions_var(b)
        }
    }
}

fn degree(n: &Node) -> i64 {
    match n {
        Node::Var => 1,
        Node::Lit(_) => 0,
        Node::Neg(a) => degree(a),
        Node::Add(a, b) | Node::Sub(a, b) => degree(a).max(degree(b)),
        Node::Mul(a, b) => degree(a) + degree(b),
        Node::Div(a, b) => degree(a) - degree(b),
        Node::Pow(a, e) => degree(a) * e,
    }
}

fn eval_node(n: &Node, p: &Rational) -> std::result::Result<Rational, EvalError> {
    Ok(match n {
        Node::Var => p.clone(),
        Node::Lit(v) => Rational::from_integer(v.clone()),
        Node::Neg(a) => -eval_node(a, p)?,
        Node::Add(a, b) => eval_node(a, p)? + eval_node(b, p)?,
        Node::Sub(a, b) => eval_node(a, p)? - eval_node(b, p)?,
        Node::Mul(a, b) => eval_node(a, p)? * eval_node(b, p)?,
        Node::Div(a, b) => {
            let d = eval_node(b, p)?;
            if d.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            eval_node(a, p)? / d
        }
        Node::Pow(a, e) => {
            let base = eval_node(a, p)?;
            if *e < 0 && base.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            let mag = num_traits::pow(base, e.unsigned_abs() as usize);
            if *e < 0 {
                mag.recip()
            } else {
                mag
            }
        }
    })
}

fn parse_err(pos: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        message: message.into(),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.idx), Some((_, c)) if c.is_whitespace()) {
            self.idx += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.idx).copied()
    }

    fn pos(&mut self) -> usize {
        self.peek().map_or(self.len, |(i, _)| i)
    }

    fn eat(&mut self, want: char) -> bool {
        if matches!(self.peek(), Some((_, c)) if c == want) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            Ok(Node::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let negate = self.eat('-');
        let exp = self.power()?;
        let exp = if negate { Node::Neg(Box::new(exp)) } else { exp };
        if mentions_var(&exp) {
            return Err(parse_err(pos, "non-integer exponent: exponent depends on p"));
        }
        let value = eval_node(&exp, &Rational::zero())
            .map_err(|e| parse_err(pos, format!("exponent: {e}")))?;
        if !value.is_integer() {
            return Err(parse_err(pos, format!("non-integer exponent {value}")));
        }
        let e = value
            .to_integer()
            .to_i64()
            .filter(|e| e.abs() <= MAX_EXPONENT)
            .ok_or_else(|| parse_err(pos, format!("exponent magnitude exceeds {MAX_EXPONENT}")))?;
        Ok(Node::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Node> {
        let Some((pos, c)) = self.peek() else {
            return Err(parse_err(self.len, "unexpected end of input"));
        };
        match c {
            'p' => {
                self.idx += 1;
                if let Some(&(_, next)) = self.chars.get(self.idx) {
                    if next.is_alphanumeric() || next == '_' {
                        return Err(parse_err(pos, "unknown identifier (only `p` is allowed)"));
                    }
                }
                Ok(Node::Var)
            }
            '(' => {
                self.idx += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    let at = self.pos();
                    return Err(parse_err(at, "expected `)`"));
                }
                Ok(inner)
            }
            c if c.is_ascii_digit() => {
                let start = self.idx;
                while matches!(self.chars.get(self.idx), Some((_, d)) if d.is_ascii_digit()) {
                    self.idx += 1;
                }
                if matches!(self.chars.get(self.idx), Some((_, '.'))) {
                    let at = self.chars[self.idx].0;
                    return Err(parse_err(at, "decimal literals are not supported; use a fraction"));
                }
                let digits: String = self.chars[start..self.idx].iter().map(|&(_, d)| d).collect();
                let v: BigInt = digits.parse().expect("ascii digits");
                Ok(Node::Lit(v))
            }
            other => Err(parse_err(pos, format!("unexpected `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use num_traits::One;

    fn at(text: &str, p: u64) -> Rational {
        PrimeExpr::parse(text).unwrap().eval(p).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(at("1/p", 5), rat(1, 5));
        assert_eq!(at("p^2 - 1", 3), rat(8, 1));
        assert_eq!(at("(p+1)/(p-1)", 2), rat(3, 1));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(at("-p^2", 3), rat(-9, 1));
        assert_eq!(at("(-p)^2", 3), rat(9, 1));
        assert_eq!(at("2^3^2", 7), rat(512, 1));
        assert_eq!(at("p - 1 - 1", 7), rat(5, 1));
        assert_eq!(at("12 / p / 2", 3), rat(2, 1));
        assert_eq!(at("1 + 2 * p", 3), rat(7, 1));
        assert_eq!(at("p^-1", 7), rat(1, 7));
        assert_eq!(at("p^(1-3)", 2), rat(1, 4));
        assert_eq!(at("  p\t*\np ", 11), rat(121, 1));
        assert_eq!(at("--p", 5), rat(5, 1));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match PrimeExpr::parse("p + * 2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match PrimeExpr::parse("(p + 1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(PrimeExpr::parse("").is_err());
        assert!(PrimeExpr::parse("q").is_err());
        assert!(PrimeExpr::parse("pp").is_err());
        assert!(PrimeExpr::parse("p 2").is_err());
        assert!(PrimeExpr::parse("1.5").is_err());
    }

    #[test]
    fn non_integer_exponents_rejected() {
        for bad in ["p^(1/2)", "p^p", "2^(p-1)"] {
            match PrimeExpr::parse(bad) {
                Err(Error::Parse { message, .. }) => assert!(message.contains("non-integer"), "{message}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
        assert!(PrimeExpr::parse("p^100000").is_err());
        assert!(PrimeExpr::parse("p^(4/2)").is_ok());
    }

    #[test]
    fn division_by_zero_is_per_prime() {
        let e = PrimeExpr::parse("1/(p-2)").unwrap();
        assert_eq!(e.eval(2), Err(EvalError::DivisionByZero));
        assert_eq!(e.eval(3).unwrap(), rat(1, 1));
        assert_eq!(PrimeExpr::parse("(p-3)^-1").unwrap().eval(3), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn constant_detection_and_degree() {
        let one = PrimeExpr::parse("2 - 1").unwrap();
        assert!(one.is_constant());
        assert!(one.constant_value().unwrap().is_one());
        assert!(!PrimeExpr::parse("p/p").unwrap().is_constant());
        assert_eq!(PrimeExpr::parse("p^2 - 1").unwrap().degree(), 2);
        assert_eq!(PrimeExpr::parse("1/p").unwrap().degree(), -1);
        assert_eq!(PrimeExpr::parse("(p+1)/(p-1)").unwrap().degree(), 0);
    }
}
