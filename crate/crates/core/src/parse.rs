//! Inline expressions for tensor elements and series.
//!
//! ```text
//! expr   := ['+'|'-'] tensor (('+'|'-') tensor)*
//! tensor := product (('⊗' | '(x)') product)*
//! product:= power (('·' | '*' | '/' | juxtaposition) power)*
//! power  := atom ['^' integer]
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! Names are generators of the algebra or series variables. A tensor chain
//! must have exactly as many factors as the target arity, and each factor
//! may only involve the algebra. In arity 1 a bare generator is an element
//! of H; in higher arity it must appear inside a tensor chain. `(x)` reads
//! as `⊗` only when the target arity is at least 2.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::hopf::{HopfAlgebra, HopfElement, TensorElement};
use crate::rational::Rational;
use crate::series::Series;

const MAX_EXPONENT: u64 = 1000;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(u64),
    Name(String),
    Plus,
    Minus,
    Mul,
    Div,
    Pow,
    Tensor,
    Open,
    Close,
}

fn lex(src: &str, tensor_word: bool) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => {}
            '+' => out.push(Token::Plus),
            '-' | '−' => out.push(Token::Minus),
            '*' | '·' => out.push(Token::Mul),
            '/' => out.push(Token::Div),
            '^' => out.push(Token::Pow),
            '⊗' => out.push(Token::Tensor),
            '(' if tensor_word
                && chars.get(i + 1) == Some(&'x')
                && chars.get(i + 2) == Some(&')') =>
            {
                out.push(Token::Tensor);
                i += 2;
            }
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                let n = s
                    .parse::<u64>()
                    .ok()
                    .filter(|&n| n <= i64::MAX as u64)
                    .ok_or_else(|| Error::Parse(format!("number too large: {s}")))?;
                out.push(Token::Int(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                out.push(Token::Name(chars[start..=i].iter().collect()));
            }
            c => return Err(Error::Parse(format!("unexpected character '{c}'"))),
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Int(u64),
    Name(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
    Tensor(Vec<Node>),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Node, Error> {
        let mut lhs = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Node::Neg(Box::new(self.tensor()?))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.tensor()?
            }
            _ => self.tensor()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Node::Add(Box::new(lhs), Box::new(self.tensor()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.tensor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn tensor(&mut self) -> Result<Node, Error> {
        let mut factors = alloc::vec![self.product()?];
        while self.peek() == Some(&Token::Tensor) {
            self.pos += 1;
            factors.push(self.product()?);
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Node::Tensor(factors) })
    }

    fn product(&mut self) -> Result<Node, Error> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Mul) => {
                    self.pos += 1;
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some(Token::Div) => {
                    self.pos += 1;
                    lhs = Node::Div(Box::new(lhs), Box::new(self.power()?));
                }
                Some(Token::Int(_) | Token::Name(_) | Token::Open) => {
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Node, Error> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Pow) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(n)) if n <= MAX_EXPONENT => {
                    return Ok(Node::Pow(Box::new(base), n as u32))
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "expected an integer exponent of at most {MAX_EXPONENT}"
                    )))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, Error> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Node::Int(n)),
            Some(Token::Name(s)) => Ok(Node::Name(s)),
            Some(Token::Open) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

fn parse_tree(src: &str, tensor_word: bool) -> Result<Node, Error> {
    let mut p = Parser { tokens: lex(src, tensor_word)?, pos: 0 };
    if p.tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let node = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(node)
}

struct Context<'a> {
    algebra: &'a Arc<HopfAlgebra>,
    arity: usize,
    names: &'a [&'a str],
    order: u32,
}

impl Context<'_> {
    fn vars(&self) -> usize {
        self.names.len().max(1)
    }

    fn constant(&self, t: &TensorElement) -> Result<Series, Error> {
        Series::constant(t, self.vars(), self.order)
    }

    fn eval(&self, node: &Node) -> Result<Series, Error> {
        match node {
            Node::Int(n) => {
                let r = Rational::from_integer(*n as i64);
                self.constant(&TensorElement::unit(self.algebra, self.arity, r)?)
            }
            Node::Name(name) => {
                if let Some(v) = self.names.iter().position(|n| n == name) {
                    return Series::variable(self.algebra, self.arity, self.vars(), self.order, v);
                }
                let g = HopfElement::generator(self.algebra, name)
                    .ok_or_else(|| Error::Parse(format!("unknown name '{name}'")))?;
                if self.arity != 1 {
                    return Err(Error::Parse(format!(
                        "generator '{name}' outside a tensor product of {} factors",
                        self.arity
                    )));
                }
                self.constant(g.as_tensor())
            }
            Node::Neg(a) => Ok(self.eval(a)?.neg()),
            Node::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Node::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Node::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Node::Div(a, b) => {
                let d = self.eval(b)?;
                let inv = (d.max_total() <= 0)
                    .then(|| d.constant_term().as_scalar())
                    .flatten()
                    .and_then(|r| r.recip())
                    .ok_or_else(|| Error::Parse("can only divide by a nonzero number".into()))?;
                Ok(self.eval(a)?.scale(&inv))
            }
            Node::Pow(a, n) => self.eval(a)?.pow(*n),
            Node::Tensor(factors) => {
                if factors.len() != self.arity {
                    return Err(Error::Parse(format!(
                        "tensor product of {} factors in arity {}",
                        factors.len(),
                        self.arity
                    )));
                }
                let inner = Context { algebra: self.algebra, arity: 1, names: &[], order: 0 };
                let mut acc = TensorElement::unit(self.algebra, self.arity, Rational::one())?;
                for (slot, f) in factors.iter().enumerate() {
                    let s = inner.eval(f)?;
                    let e = s.constant_term().embed(self.arity, &[slot])?;
                    acc = acc.mul(&e)?;
                }
                self.constant(&acc)
            }
        }
    }
}

/// Parses an element of the `arity`-fold tensor power, e.g. `t (x) t^2`.
pub fn parse_element(
    algebra: &Arc<HopfAlgebra>,
    arity: usize,
    src: &str,
) -> Result<TensorElement, Error> {
    let tree = parse_tree(src, arity >= 2)?;
    let ctx = Context { algebra, arity, names: &[], order: 0 };
    Ok(ctx.eval(&tree)?.constant_term())
}

/// Parses a polynomial series in the variables `names`, e.g.
/// `2t⊗t + X + Y`. The result is stored at `order` and marked complete
/// unless some term had to be dropped.
pub fn parse_series(
    algebra: &Arc<HopfAlgebra>,
    arity: usize,
    names: &[&str],
    order: u32,
    src: &str,
) -> Result<Series, Error> {
    if names.is_empty() || names.len() > crate::series::MAX_VARS {
        return Err(Error::Parse(format!("{} variables (1 to 3 allowed)", names.len())));
    }
    let tree = parse_tree(src, arity >= 2)?;
    // Evaluate with headroom so that terms dropped at `order` lower the
    // precision instead of vanishing silently.
    let ctx = Context { algebra, arity, names, order: order.saturating_mul(2).max(order + 1) };
    Ok(ctx.eval(&tree)?.with_order(order))
}
