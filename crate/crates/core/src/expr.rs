//! Closed-form functions of one variable.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?          right associative
//! atom    := number | 'pi' | 'e' | VAR | FUNC '(' expr ')' | '(' expr ')'
//! FUNC    := sin cos tan sinh cosh tanh sech csch coth exp log sqrt arctan abs
//! ```
//!
//! Parsed expressions are immutable and can be evaluated concurrently, either
//! as plain values ([`Expression::eval`]) or as second-order jets
//! ([`Expression::eval_jet2`]).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::jet::Jet2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("unexpected variable `{found}` at byte {offset} (expected `{expected}`)")]
    WrongVariable {
        found: String,
        expected: String,
        offset: usize,
    },
    #[error("`{0}` cannot be used as the variable name")]
    InvalidVariableName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalError {
    #[error("{function} is undefined at {argument}")]
    Domain {
        function: &'static str,
        argument: f64,
    },
    #[error("evaluation overflowed to a non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Sech,
    Csch,
    Coth,
    Exp,
    Log,
    Sqrt,
    Arctan,
    Abs,
}

impl Function {
    pub const ALL: [Function; 14] = [
        Function::Sin,
        Function::Cos,
        Function::Tan,
        Function::Sinh,
        Function::Cosh,
        Function::Tanh,
        Function::Sech,
        Function::Csch,
        Function::Coth,
        Function::Exp,
        Function::Log,
        Function::Sqrt,
        Function::Arctan,
        Function::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Sinh => "sinh",
            Function::Cosh => "cosh",
            Function::Tanh => "tanh",
            Function::Sech => "sech",
            Function::Csch => "csch",
            Function::Coth => "coth",
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Sqrt => "sqrt",
            Function::Arctan => "arctan",
            Function::Abs => "abs",
        }
    }

    fn from_name(name: &str) -> Option<Function> {
        Function::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, x: f64) -> Result<f64, EvalError> {
        let domain = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(EvalError::Domain {
                    function: self.name(),
                    argument: x,
                })
            }
        };
        Ok(match self {
            Function::Sin => x.sin(),
            Function::Cos => x.cos(),
            Function::Tan => {
                domain(x.cos() != 0.0)?;
                x.tan()
            }
            Function::Sinh => x.sinh(),
            Function::Cosh => x.cosh(),
            Function::Tanh => x.tanh(),
            Function::Sech => 1.0 / x.cosh(),
            Function::Csch => {
                domain(x != 0.0)?;
                1.0 / x.sinh()
            }
            Function::Coth => {
                domain(x != 0.0)?;
                1.0 / x.tanh()
            }
            Function::Exp => x.exp(),
            Function::Log => {
                domain(x > 0.0)?;
                x.ln()
            }
            Function::Sqrt => {
                domain(x >= 0.0)?;
                x.sqrt()
            }
            Function::Arctan => x.atan(),
            Function::Abs => x.abs(),
        })
    }

    fn apply_jet(self, x: Jet2) -> Result<Jet2, EvalError> {
        let v = x.value;
        let domain = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(EvalError::Domain {
                    function: self.name(),
                    argument: v,
                })
            }
        };
        Ok(match self {
            Function::Sin => x.sin(),
            Function::Cos => x.cos(),
            Function::Tan => {
                domain(v.cos() != 0.0)?;
                x.tan()
            }
            Function::Sinh => x.sinh(),
            Function::Cosh => x.cosh(),
            Function::Tanh => x.tanh(),
            Function::Sech => x.sech(),
            Function::Csch => {
                domain(v != 0.0)?;
                x.csch()
            }
            Function::Coth => {
                domain(v != 0.0)?;
                x.coth()
            }
            Function::Exp => x.exp(),
            Function::Log => {
                domain(v > 0.0)?;
                x.ln()
            }
            // derivative of sqrt is unbounded at 0
            Function::Sqrt => {
                domain(v > 0.0)?;
                x.sqrt()
            }
            Function::Arctan => x.atan(),
            Function::Abs => {
                domain(v != 0.0)?;
                x.abs()
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }

    fn from_name(name: &str) -> Option<Constant> {
        match name {
            "pi" => Some(Constant::Pi),
            "e" => Some(Constant::E),
            _ => None,
        }
    }
}

/// Abstract syntax tree node.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Number(f64),
    Variable,
    Constant(Constant),
    Neg(Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    Call(Function, Box<Node>),
}

impl Node {
    fn contains_variable(&self) -> bool {
        match self {
            Node::Variable => true,
            Node::Number(_) | Node::Constant(_) => false,
            Node::Neg(a) | Node::Call(_, a) => a.contains_variable(),
            Node::Binary(_, a, b) => a.contains_variable() || b.contains_variable(),
        }
    }

    /// Integer exponent if this subtree is variable-free and integral.
    fn integer_exponent(&self) -> Option<i64> {
        if self.contains_variable() {
            return None;
        }
        let value = self.eval(0.0).ok()?;
        (value.fract() == 0.0 && value.abs() < 1e9).then_some(value as i64)
    }

    fn eval(&self, x: f64) -> Result<f64, EvalError> {
        match self {
            Node::Number(v) => Ok(*v),
            Node::Variable => Ok(x),
            Node::Constant(c) => Ok(c.value()),
            Node::Neg(a) => Ok(-a.eval(x)?),
            Node::Call(f, a) => f.apply(a.eval(x)?),
            Node::Binary(op, a, b) => {
                let lhs = a.eval(x)?;
                match op {
                    BinaryOp::Add => Ok(lhs + b.eval(x)?),
                    BinaryOp::Sub => Ok(lhs - b.eval(x)?),
                    BinaryOp::Mul => Ok(lhs * b.eval(x)?),
                    BinaryOp::Div => {
                        let rhs = b.eval(x)?;
                        if rhs == 0.0 {
                            return Err(EvalError::Domain {
                                function: "division",
                                argument: rhs,
                            });
                        }
                        Ok(lhs / rhs)
                    }
                    BinaryOp::Pow => match b.integer_exponent() {
                        Some(k) => {
                            if k < 0 && lhs == 0.0 {
                                return Err(EvalError::Domain {
                                    function: "power",
                                    argument: lhs,
                                });
                            }
                            Ok(Jet2::constant(lhs).powi(k).value)
                        }
                        None => {
                            if lhs <= 0.0 {
                                return Err(EvalError::Domain {
                                    function: "power",
                                    argument: lhs,
                                });
                            }
                            Ok(lhs.powf(b.eval(x)?))
                        }
                    },
                }
            }
        }
    }

    fn eval_jet(&self, x: f64) -> Result<Jet2, EvalError> {
        match self {
            Node::Number(v) => Ok(Jet2::constant(*v)),
            Node::Variable => Ok(Jet2::variable(x)),
            Node::Constant(c) => Ok(Jet2::constant(c.value())),
            Node::Neg(a) => Ok(-a.eval_jet(x)?),
            Node::Call(f, a) => f.apply_jet(a.eval_jet(x)?),
            Node::Binary(op, a, b) => {
                let lhs = a.eval_jet(x)?;
                match op {
                    BinaryOp::Add => Ok(lhs + b.eval_jet(x)?),
                    BinaryOp::Sub => Ok(lhs - b.eval_jet(x)?),
                    BinaryOp::Mul => Ok(lhs * b.eval_jet(x)?),
                    BinaryOp::Div => {
                        let rhs = b.eval_jet(x)?;
                        if rhs.value == 0.0 {
                            return Err(EvalError::Domain {
                                function: "division",
                                argument: 0.0,
                            });
                        }
                        Ok(lhs / rhs)
                    }
                    BinaryOp::Pow => match b.integer_exponent() {
                        Some(k) => {
                            if k < 0 && lhs.value == 0.0 {
                                return Err(EvalError::Domain {
                                    function: "power",
                                    argument: 0.0,
                                });
                            }
                            Ok(lhs.powi(k))
                        }
                        None => {
                            if lhs.value <= 0.0 {
                                return Err(EvalError::Domain {
                                    function: "power",
                                    argument: lhs.value,
                                });
                            }
                            Ok(lhs.powf(b.eval_jet(x)?))
                        }
                    },
                }
            }
        }
    }

    fn write(&self, var: &str, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Number(v) => write!(out, "{v:?}"),
            Node::Variable => out.write_str(var),
            Node::Constant(c) => out.write_str(c.name()),
            Node::Neg(a) => {
                out.write_str("(-")?;
                a.write(var, out)?;
                out.write_str(")")
            }
            Node::Call(f, a) => {
                write!(out, "{}(", f.name())?;
                a.write(var, out)?;
                out.write_str(")")
            }
            Node::Binary(op, a, b) => {
                out.write_str("(")?;
                a.write(var, out)?;
                write!(out, " {} ", op.symbol())?;
                b.write(var, out)?;
                out.write_str(")")
            }
        }
    }
}

/// A parsed closed-form function of a single named variable.
///
/// Equality is structural: two expressions are equal when their trees and
/// variable names agree, regardless of the source text.
#[derive(Debug, Clone)]
pub struct Expression {
    root: Arc<Node>,
    var: Arc<str>,
    source: Arc<str>,
}

impl Expression {
    /// Parse `text` as a function of the variable `var_name`.
    pub fn parse(text: &str, var_name: &str) -> Result<Expression, ParseError> {
        validate_variable_name(var_name)?;
        if text.trim().is_empty() {
            return Err(ParseError::Empty);
        }
        let tokens = lex(text)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            var: var_name,
            len: text.len(),
        };
        let root = parser.expr()?;
        if let Some(tok) = parser.peek() {
            return Err(ParseError::Syntax {
                offset: tok.offset,
                message: format!("unexpected {}", tok.kind.describe()),
            });
        }
        Ok(Expression {
            root: Arc::new(root),
            var: Arc::from(var_name),
            source: Arc::from(text),
        })
    }

    /// Shorthand for a constant function.
    pub fn constant(value: f64, var_name: &str) -> Expression {
        let node = if value < 0.0 {
            Node::Neg(Box::new(Node::Number(-value)))
        } else {
            Node::Number(value)
        };
        Expression {
            root: Arc::new(node),
            var: Arc::from(var_name),
            source: Arc::from(format!("{value:?}").as_str()),
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn variable(&self) -> &str {
        &self.var
    }

    /// The text this expression was parsed from.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn is_constant(&self) -> bool {
        !self.root.contains_variable()
    }

    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = self.root.eval(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    /// Value with exact first and second derivatives at `x`.
    pub fn eval_jet2(&self, x: f64) -> Result<Jet2, EvalError> {
        let jet = self.root.eval_jet(x)?;
        if jet.is_finite() {
            Ok(jet)
        } else {
            Err(EvalError::NonFinite)
        }
    }
}

impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.root == other.root
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.write(&self.var, f)
    }
}

/// Free-function form of [`Expression::parse`].
pub fn parse_expr(text: &str, var_name: &str) -> Result<Expression, ParseError> {
    Expression::parse(text, var_name)
}

/// Free-function form of [`Expression::eval_jet2`].
pub fn eval_jet2(e: &Expression, x: f64) -> Result<Jet2, EvalError> {
    e.eval_jet2(x)
}

fn validate_variable_name(name: &str) -> Result<(), ParseError> {
    let mut chars = name.chars();
    let valid_start = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let valid_rest = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid_start
        || !valid_rest
        || Constant::from_name(name).is_some()
        || Function::from_name(name).is_some()
    {
        return Err(ParseError::InvalidVariableName(name.to_string()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Number(v) => format!("number {v}"),
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Op(c) => format!("operator `{c}`"),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    // exponent only when digits follow; a bare trailing `e` is left to the parser
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let literal = &text[start..i];
                let value: f64 = literal.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("malformed number `{literal}`"),
                })?;
                if !value.is_finite() {
                    return Err(ParseError::Syntax {
                        offset: start,
                        message: format!("number `{literal}` is out of range"),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    offset: start,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text[start..i].to_string()),
                    offset: start,
                });
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                tokens.push(Token {
                    kind: TokenKind::Op(c as char),
                    offset: start,
                });
                i += 1;
            }
            b'(' => {
                tokens.push(Token {
                    kind: TokenKind::LParen,
                    offset: start,
                });
                i += 1;
            }
            b')' => {
                tokens.push(Token {
                    kind: TokenKind::RParen,
                    offset: start,
                });
                i += 1;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    var: &'a str,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        tok
    }

    fn peek_op(&self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Op(c),
                ..
            }) if ops.contains(c) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op) = self.peek_op(&['+', '-']) {
            self.pos += 1;
            let rhs = self.term()?;
            let op = if op == '+' {
                BinaryOp::Add
            } else {
                BinaryOp::Sub
            };
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek_op(&['*', '/']) {
            self.pos += 1;
            let rhs = self.unary()?;
            let op = if op == '*' {
                BinaryOp::Mul
            } else {
                BinaryOp::Div
            };
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.peek_op(&['-']).is_some() {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek_op(&['^']).is_some() {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Node::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn expect_rparen(&mut self, open: usize) -> Result<(), ParseError> {
        match self.next() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => Ok(()),
            Some(tok) => Err(ParseError::Syntax {
                offset: tok.offset,
                message: format!(
                    "expected `)` closing byte {open}, found {}",
                    tok.kind.describe()
                ),
            }),
            None => Err(ParseError::Syntax {
                offset: self.len,
                message: format!("unclosed `(` at byte {open}"),
            }),
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let tok = self.next().ok_or(ParseError::Syntax {
            offset: self.len,
            message: "unexpected end of input".to_string(),
        })?;
        match tok.kind {
            TokenKind::Number(v) => Ok(Node::Number(v)),
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect_rparen(tok.offset)?;
                Ok(inner)
            }
            TokenKind::Ident(name) => {
                let is_call = matches!(
                    self.peek(),
                    Some(Token {
                        kind: TokenKind::LParen,
                        ..
                    })
                );
                if is_call {
                    let func = Function::from_name(&name).ok_or(ParseError::UnknownIdentifier {
                        name: name.clone(),
                        offset: tok.offset,
                    })?;
                    let open = self.next().map(|t| t.offset).unwrap_or(tok.offset);
                    let arg = self.expr()?;
                    self.expect_rparen(open)?;
                    Ok(Node::Call(func, Box::new(arg)))
                } else if name == self.var {
                    Ok(Node::Variable)
                } else if let Some(c) = Constant::from_name(&name) {
                    Ok(Node::Constant(c))
                } else if Function::from_name(&name).is_some() {
                    Err(ParseError::Syntax {
                        offset: tok.offset,
                        message: format!("function `{name}` must be followed by `(`"),
                    })
                } else {
                    Err(ParseError::WrongVariable {
                        found: name,
                        expected: self.var.to_string(),
                        offset: tok.offset,
                    })
                }
            }
            other => Err(ParseError::Syntax {
                offset: tok.offset,
                message: format!("unexpected {}", other.describe()),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_call_is_one_node() {
        let e = Expression::parse("tanh(s)", "s").unwrap();
        assert_eq!(
            e.root(),
            &Node::Call(Function::Tanh, Box::new(Node::Variable))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let e = Expression::parse("2^3^2", "x").unwrap();
        assert_eq!(e.eval(0.0).unwrap(), 512.0);
        let e = Expression::parse("-x^2", "x").unwrap();
        assert_eq!(e.eval(3.0).unwrap(), -9.0);
        let e = Expression::parse("8/4/2 - 1 - 1", "x").unwrap();
        assert_eq!(e.eval(0.0).unwrap(), -1.0);
        let e = Expression::parse("2*pi + e", "x").unwrap();
        assert!(
            (e.eval(0.0).unwrap() - (2.0 * std::f64::consts::PI + std::f64::consts::E)).abs()
                < 1e-15
        );
        let e = Expression::parse("1.5e-3 * x", "x").unwrap();
        assert_eq!(e.eval(2.0).unwrap(), 3e-3);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match Expression::parse("sin(s", "s") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match Expression::parse("s + * 2", "s") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match Expression::parse("s $ 2", "s") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(Expression::parse("   ", "s"), Err(ParseError::Empty));
    }

    #[test]
    fn identifier_errors() {
        assert!(matches!(
            Expression::parse("foo(s)", "s"),
            Err(ParseError::UnknownIdentifier { ref name, offset: 0 }) if name == "foo"
        ));
        assert!(matches!(
            Expression::parse("2*t", "s"),
            Err(ParseError::WrongVariable { ref found, offset: 2, .. }) if found == "t"
        ));
        assert!(matches!(
            Expression::parse("s", "pi"),
            Err(ParseError::InvalidVariableName(_))
        ));
    }

    #[test]
    fn domain_errors() {
        let e = Expression::parse("log(x)", "x").unwrap();
        assert!(matches!(
            e.eval(-1.0),
            Err(EvalError::Domain {
                function: "log",
                ..
            })
        ));
        assert!(matches!(e.eval_jet2(0.0), Err(EvalError::Domain { .. })));
        let e = Expression::parse("abs(x)", "x").unwrap();
        assert_eq!(e.eval(0.0).unwrap(), 0.0);
        assert!(matches!(
            e.eval_jet2(0.0),
            Err(EvalError::Domain {
                function: "abs",
                ..
            })
        ));
        assert_eq!(e.eval_jet2(-2.0).unwrap(), Jet2::new(2.0, -1.0, 0.0));
        let e = Expression::parse("x^0.5", "x").unwrap();
        assert!(matches!(
            e.eval(-4.0),
            Err(EvalError::Domain {
                function: "power",
                ..
            })
        ));
        let e = Expression::parse("1/x", "x").unwrap();
        assert!(matches!(
            e.eval(0.0),
            Err(EvalError::Domain {
                function: "division",
                ..
            })
        ));
        let e = Expression::parse("exp(x)", "x").unwrap();
        assert_eq!(e.eval(1000.0), Err(EvalError::NonFinite));
    }

    #[test]
    fn integer_power_of_negative_base() {
        let e = Expression::parse("x^3 + x^(1+1)", "x").unwrap();
        let j = e.eval_jet2(-2.0).unwrap();
        assert_eq!(j, Jet2::new(-4.0, 12.0 - 4.0, -12.0 + 2.0));
    }

    #[test]
    fn tanh_jet_at_origin() {
        let e = Expression::parse("tanh(s)", "s").unwrap();
        assert_eq!(e.eval_jet2(0.0).unwrap(), Jet2::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn display_round_trips() {
        let e = Expression::parse("-2*arctan(tanh(s/2))^2 + 1e-5 - -s", "s").unwrap();
        let printed = e.to_string();
        let again = Expression::parse(&printed, "s").unwrap();
        assert_eq!(again.root(), e.root());
        assert_eq!(again.to_string(), printed);
    }
}
