//! Tokenizer and recursive-descent parser for the expression language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | primary
//! primary := INT ['/' INT] | WORD | '(' expr ')' | '[' expr ',' expr ']'
//!          | 'tr' '(' expr ')' | 'theta' '(' expr ';' expr ')' | 'delta' '(' INT ')'
//!          | 'ad' '(' expr ',' INT ')' '(' expr ')'
//!          | ('dA_x' | 'dA_y' | 'dF_x' | 'dF_y' | 'dL_x' | 'dL_y') '(' expr ')'
//!          | 'div' '(' expr ')' | 'phi' '(' expr ')' | 'tensor' '(' expr ';' expr ')'
//!          | 'der' '(' 'u' '(' 'x' ')' '=' expr ',' 'u' '(' 'y' ')' '=' expr ')'
//! ```
//!
//! A `WORD` is a nonempty string over `x` and `y`.

use std::fmt;

use krv_core::free_assoc::{Gen, Word, MAX_WORD_LEN};
use krv_core::linalg::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Assoc,
    Trace,
    Lie,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Scalar(Rational),
    Word(Word),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    AdPower { a: Box<Expr>, k: u32, b: Box<Expr> },
    Tr(Box<Expr>),
    Theta(Box<Expr>, Box<Expr>),
    Delta(u32),
    Partial { flavor: Flavor, gen: Gen, arg: Box<Expr> },
    Div(Box<Expr>),
    Phi(Box<Expr>),
    Der(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

/// A syntax tree node with the byte offset it starts at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

impl fmt::Display for Expr {
    /// Fully parenthesized source that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Scalar(c) => write!(f, "{c}"),
            ExprKind::Word(w) => write!(f, "{w}"),
            ExprKind::Sum(a, b) => write!(f, "({a} + {b})"),
            ExprKind::Difference(a, b) => write!(f, "({a} - {b})"),
            ExprKind::Neg(a) => write!(f, "-({a})"),
            ExprKind::Product(a, b) => write!(f, "({a} * {b})"),
            ExprKind::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            ExprKind::AdPower { a, k, b } => write!(f, "ad({a}, {k})({b})"),
            ExprKind::Tr(a) => write!(f, "tr({a})"),
            ExprKind::Theta(a, b) => write!(f, "theta({a}; {b})"),
            ExprKind::Delta(n) => write!(f, "delta({n})"),
            ExprKind::Partial { flavor, gen, arg } => {
                let d = match flavor {
                    Flavor::Assoc => "dA",
                    Flavor::Trace => "dF",
                    Flavor::Lie => "dL",
                };
                write!(f, "{d}_{gen}({arg})")
            }
            ExprKind::Div(a) => write!(f, "div({a})"),
            ExprKind::Phi(a) => write!(f, "phi({a})"),
            ExprKind::Der(a, b) => write!(f, "der(u(x) = {a}, u(y) = {b})"),
            ExprKind::Tensor(a, b) => write!(f, "tensor({a}; {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_alphanumeric() || *d == '_') {
                s.push(d);
                chars.next();
            }
            out.push((Tok::Ident(s), pos));
        } else if "+-*/()[],;=".contains(c) {
            out.push((Tok::Sym(c), pos));
            chars.next();
        } else {
            return Err(CliError::Syntax { pos, message: format!("unexpected character '{c}'") });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, CliError> {
        Err(CliError::Syntax { pos: self.pos(), message: format!("expected {expected}, found {}", self.peek()) })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), CliError> {
        if *self.peek() == Tok::Ident(name.to_string()) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("'{name}'"))
        }
    }

    fn small_int(&mut self) -> Result<u32, CliError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                u32::try_from(n).map_err(|_| CliError::Syntax { pos, message: "integer too large".into() })
            }
            _ => self.error("an integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        loop {
            let pos = lhs.pos;
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = Expr { kind: ExprKind::Sum(Box::new(lhs), Box::new(rhs)), pos };
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = Expr { kind: ExprKind::Difference(Box::new(lhs), Box::new(rhs)), pos };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            let rhs = self.unary()?;
            let pos = lhs.pos;
            lhs = Expr { kind: ExprKind::Product(Box::new(lhs), Box::new(rhs)), pos };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), pos });
        }
        self.primary()
    }

    fn unary_call(&mut self, pos: usize, make: impl FnOnce(Box<Expr>) -> ExprKind) -> Result<Expr, CliError> {
        self.expect('(')?;
        let arg = self.expr()?;
        self.expect(')')?;
        Ok(Expr { kind: make(Box::new(arg)), pos })
    }

    fn binary_call(
        &mut self,
        pos: usize,
        sep: char,
        make: impl FnOnce(Box<Expr>, Box<Expr>) -> ExprKind,
    ) -> Result<Expr, CliError> {
        self.expect('(')?;
        let a = self.expr()?;
        self.expect(sep)?;
        let b = self.expr()?;
        self.expect(')')?;
        Ok(Expr { kind: make(Box::new(a), Box::new(b)), pos })
    }

    fn primary(&mut self) -> Result<Expr, CliError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                let mut value = Rational::from_integer(n);
                if self.eat('/') {
                    let dpos = self.pos();
                    let Tok::Int(d) = self.peek().clone() else { return self.error("a denominator") };
                    self.bump();
                    if d.is_zero() {
                        return Err(CliError::Syntax { pos: dpos, message: "zero denominator".into() });
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(Expr { kind: ExprKind::Scalar(value), pos })
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Sym('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr { kind: ExprKind::Bracket(Box::new(a), Box::new(b)), pos })
            }
            Tok::Ident(name) => self.ident(name, pos),
            other => Err(CliError::Syntax { pos, message: format!("expected an expression, found {other}") }),
        }
    }

    fn ident(&mut self, name: String, pos: usize) -> Result<Expr, CliError> {
        if name.chars().all(|c| c == 'x' || c == 'y') {
            if name.len() > MAX_WORD_LEN {
                return Err(CliError::Syntax { pos, message: format!("word longer than {MAX_WORD_LEN} letters") });
            }
            let word = Word::parse(&name).expect("letters checked");
            return Ok(Expr { kind: ExprKind::Word(word), pos });
        }
        let partial = |flavor, gen| move |arg| ExprKind::Partial { flavor, gen, arg };
        match name.as_str() {
            "tr" => self.unary_call(pos, ExprKind::Tr),
            "div" => self.unary_call(pos, ExprKind::Div),
            "phi" => self.unary_call(pos, ExprKind::Phi),
            "theta" => self.binary_call(pos, ';', ExprKind::Theta),
            "tensor" => self.binary_call(pos, ';', ExprKind::Tensor),
            "dA_x" => self.unary_call(pos, partial(Flavor::Assoc, Gen::X)),
            "dA_y" => self.unary_call(pos, partial(Flavor::Assoc, Gen::Y)),
            "dF_x" => self.unary_call(pos, partial(Flavor::Trace, Gen::X)),
            "dF_y" => self.unary_call(pos, partial(Flavor::Trace, Gen::Y)),
            "dL_x" => self.unary_call(pos, partial(Flavor::Lie, Gen::X)),
            "dL_y" => self.unary_call(pos, partial(Flavor::Lie, Gen::Y)),
            "delta" => {
                self.expect('(')?;
                let n = self.small_int()?;
                self.expect(')')?;
                Ok(Expr { kind: ExprKind::Delta(n), pos })
            }
            "ad" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let k = self.small_int()?;
                self.expect(')')?;
                self.expect('(')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(Expr { kind: ExprKind::AdPower { a: Box::new(a), k, b: Box::new(b) }, pos })
            }
            "der" => {
                self.expect('(')?;
                let ux = self.der_image("x")?;
                self.expect(',')?;
                let uy = self.der_image("y")?;
                self.expect(')')?;
                Ok(Expr { kind: ExprKind::Der(Box::new(ux), Box::new(uy)), pos })
            }
            _ => Err(CliError::Syntax { pos, message: format!("unknown name '{name}'") }),
        }
    }

    fn der_image(&mut self, g: &str) -> Result<Expr, CliError> {
        self.expect_ident("u")?;
        self.expect('(')?;
        self.expect_ident(g)?;
        self.expect(')')?;
        self.expect('=')?;
        self.expr()
    }
}

/// Parses a whole expression; trailing input is a syntax error.
pub fn parse(src: &str) -> Result<Expr, CliError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("end of input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("x + 2*y*x").unwrap();
        let ExprKind::Sum(_, rhs) = e.kind else { panic!() };
        assert!(matches!(rhs.kind, ExprKind::Product(..)));
        let e = parse("-1/2*xy").unwrap();
        assert!(matches!(e.kind, ExprKind::Product(..)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("tr(x * )") {
            Err(CliError::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        match parse("x + #") {
            Err(CliError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("foo(x)"), Err(CliError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("1/0"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("x y"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(CliError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse("[ x , [y,x] ]").unwrap().to_string(), "[x, [y, x]]");
        assert_eq!(parse(" ad( y ,2 ) ( x ) ").unwrap().to_string(), "ad(y, 2)(x)");
    }

    #[test]
    fn canonical_form_reparses() {
        for src in [
            "x + 2*y*x - -xy",
            "der(u(x)=dF_y(tr(xy)), u(y) = -dF_x(tr(xy)))",
            "div(theta(x; ad(y,2)(x)))",
            "tensor(1; x) - 3/4*dA_x(xyx)",
            "phi(delta(4)) + dL_y([x,y])",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap().to_string(), e.to_string());
        }
    }
}
