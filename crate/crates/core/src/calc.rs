//! Calculator expressions over exact rationals: `+ - *` with parentheses,
//! evaluated either as real intervals at a requested precision or as p-adic
//! balls.
//!
//! Directives trail the expression: `@eps 1/1000` selects interval mode at
//! that precision, `@padic 5 2` selects balls `c + O(5^2)`.

use std::fmt;

use num::{BigInt, BigRational, One, Signed};

use crate::error::{CoreError, Result};
use crate::padic::{padic_arith, PAdicBall, RingOp};
use crate::realnum::{add, embed_rational, mul, neg, CauchyReal, RationalInterval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Real { eps: BigRational },
    Padic { prime: u64, precision: i64 },
}

impl Default for Mode {
    fn default() -> Mode {
        Mode::Real {
            eps: BigRational::new(BigInt::one(), 1_000_000.into()),
        }
    }
}

pub struct Parsed {
    pub expr: Expr,
    pub mode: Mode,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    At(String),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn error(&self, msg: impl Into<String>) -> CoreError {
        CoreError::Parse {
            line: 1,
            msg: format!(
                "{} (column {}, in `{}`)",
                msg.into(),
                self.pos + 1,
                self.src
            ),
        }
    }

    fn next_token(&mut self) -> Result<Token> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        let Some(&c) = self.chars.get(self.pos) else {
            return Ok(Token::End);
        };
        self.pos += 1;
        match c {
            '+' => Ok(Token::Plus),
            '-' => Ok(Token::Minus),
            '*' => Ok(Token::Star),
            '/' => Ok(Token::Slash),
            '(' => Ok(Token::LParen),
            ')' => Ok(Token::RParen),
            '@' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .map(|c| c.is_ascii_alphanumeric())
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                Ok(Token::At(self.chars[start..self.pos].iter().collect()))
            }
            d if d.is_ascii_digit() => {
                let start = self.pos - 1;
                while self
                    .chars
                    .get(self.pos)
                    .map(|c| c.is_ascii_digit())
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                Ok(Token::Number(text.parse().expect("digits")))
            }
            other => Err(self.error(format!("unexpected character `{other}`"))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Token,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>> {
        let mut lexer = Lexer::new(src);
        let lookahead = lexer.next_token()?;
        Ok(Parser { lexer, lookahead })
    }

    fn advance(&mut self) -> Result<Token> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.lookahead, next))
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        if self.lookahead == t {
            self.advance()?;
            Ok(())
        } else {
            Err(self
                .lexer
                .error(format!("expected {t:?}, found {:?}", self.lookahead)))
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let Token::Number(n) = self.advance()? else {
            return Err(self.lexer.error("expected a number"));
        };
        if self.lookahead == Token::Slash {
            self.advance()?;
            let Token::Number(d) = self.advance()? else {
                return Err(self.lexer.error("expected a denominator"));
            };
            if d == BigInt::from(0) {
                return Err(self.lexer.error("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn signed_rational(&mut self) -> Result<BigRational> {
        if self.lookahead == Token::Minus {
            self.advance()?;
            Ok(-self.rational()?)
        } else {
            self.rational()
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.lookahead.clone() {
            Token::Minus => {
                self.advance()?;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Token::LParen => {
                self.advance()?;
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Token::Number(_) => Ok(Expr::Literal(self.rational()?)),
            other => Err(self.lexer.error(format!("unexpected {other:?}"))),
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        while self.lookahead == Token::Star {
            self.advance()?;
            e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            match self.lookahead {
                Token::Plus => {
                    self.advance()?;
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.advance()?;
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn mode(&mut self) -> Result<Mode> {
        let mut mode = Mode::default();
        while let Token::At(name) = self.lookahead.clone() {
            self.advance()?;
            match name.as_str() {
                "eps" => {
                    let eps = self.signed_rational()?;
                    if !eps.is_positive() {
                        return Err(CoreError::NonpositivePrecision(eps.to_string()));
                    }
                    mode = Mode::Real { eps };
                }
                "padic" => {
                    let p = self.signed_rational()?;
                    let k = self.signed_rational()?;
                    if !p.is_integer() || !k.is_integer() {
                        return Err(self.lexer.error("@padic takes integers"));
                    }
                    let prime: u64 = p
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.lexer.error("prime out of range"))?;
                    if !crate::padic::is_prime(prime) {
                        return Err(CoreError::NotPrime(prime));
                    }
                    let precision: i64 = k
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.lexer.error("precision out of range"))?;
                    mode = Mode::Padic { prime, precision };
                }
                other => return Err(self.lexer.error(format!("unknown directive @{other}"))),
            }
        }
        if self.lookahead != Token::End {
            return Err(self
                .lexer
                .error(format!("trailing input {:?}", self.lookahead)));
        }
        Ok(mode)
    }
}

pub fn parse(input: &str) -> Result<Parsed> {
    let mut p = Parser::new(input)?;
    let expr = p.expr()?;
    let mode = p.mode()?;
    Ok(Parsed { expr, mode })
}

/// Evaluates as a composed interval oracle.
pub fn eval_real(expr: &Expr) -> CauchyReal {
    match expr {
        Expr::Literal(q) => embed_rational(q.clone()),
        Expr::Neg(e) => neg(&eval_real(e)),
        Expr::Add(l, r) => add(&eval_real(l), &eval_real(r)),
        Expr::Sub(l, r) => add(&eval_real(l), &neg(&eval_real(r))),
        Expr::Mul(l, r) => mul(&eval_real(l), &eval_real(r)),
    }
}

/// Evaluates with every literal read as a ball `c + O(p^k)`.
pub fn eval_padic(expr: &Expr, prime: u64, precision: i64) -> Result<PAdicBall> {
    match expr {
        Expr::Literal(q) => PAdicBall::new(prime, q.clone(), precision),
        Expr::Neg(e) => {
            let b = eval_padic(e, prime, precision)?;
            padic_arith(RingOp::Neg, &b, &b)
        }
        Expr::Add(l, r) => padic_arith(
            RingOp::Add,
            &eval_padic(l, prime, precision)?,
            &eval_padic(r, prime, precision)?,
        ),
        Expr::Sub(l, r) => {
            let rhs = eval_padic(r, prime, precision)?;
            let neg_rhs = padic_arith(RingOp::Neg, &rhs, &rhs)?;
            padic_arith(RingOp::Add, &eval_padic(l, prime, precision)?, &neg_rhs)
        }
        Expr::Mul(l, r) => padic_arith(
            RingOp::Mul,
            &eval_padic(l, prime, precision)?,
            &eval_padic(r, prime, precision)?,
        ),
    }
}

/// One-call evaluation with deterministic formatting.
pub fn evaluate(input: &str) -> Result<String> {
    let parsed = parse(input)?;
    match parsed.mode {
        Mode::Real { eps } => {
            let iv: RationalInterval = eval_real(&parsed.expr).approximate(&eps)?;
            Ok(iv.to_string())
        }
        Mode::Padic { prime, precision } => {
            Ok(eval_padic(&parsed.expr, prime, precision)?.to_string())
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(q) => write!(f, "{q}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(l, r) => write!(f, "({l} + {r})"),
            Expr::Sub(l, r) => write!(f, "({l} - {r})"),
            Expr::Mul(l, r) => write!(f, "({l} * {r})"),
        }
    }
}
