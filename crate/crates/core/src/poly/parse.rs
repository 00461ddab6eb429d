//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! A single leading sign is accepted at the start of each `expr`. There is no
//! implicit multiplication.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiPoly, PolyError, Rational, MAX_VARS};

/// Per-variable degree limit for parsed input.
pub const MAX_PARSE_DEGREE: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, ch) = bytes[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_alphanumeric() || bytes[i].1 == '_') {
                i += 1;
            }
            let name: String = bytes[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(name), pos));
        } else {
            return Err(PolyError::Syntax {
                pos,
                expected: "expression".into(),
                found: format!("character `{ch}`"),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let pos = self.pos();
            let rhs = self.factor()?;
            check_degrees(&acc, &rhs, 1, pos)?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e = u32::try_from(&n).map_err(|_| PolyError::DegreeTooLarge { pos })?;
                check_degrees(&MultiPoly::zero(self.names), &base, e, pos)?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(PolyError::NegativeExponent { pos }),
            other => Err(PolyError::Syntax {
                pos,
                expected: "unsigned integer exponent".into(),
                found: other.describe(),
            }),
        }
    }

    fn base(&mut self) -> Result<MultiPoly, PolyError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => value /= Rational::from_integer(d),
                        Tok::Int(_) => {
                            return Err(PolyError::Syntax {
                                pos: dpos,
                                expected: "nonzero denominator".into(),
                                found: "`0`".into(),
                            })
                        }
                        other => {
                            return Err(PolyError::Syntax {
                                pos: dpos,
                                expected: "unsigned integer denominator".into(),
                                found: other.describe(),
                            })
                        }
                    }
                }
                Ok(MultiPoly::constant(self.names, value))
            }
            Tok::Ident(name) => {
                self.bump();
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(MultiPoly::var(self.names, i)),
                    None => Err(PolyError::UnknownVariable { name, pos }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("number, variable or `(`")),
        }
    }
}

/// Rejects products whose degree in some variable would exceed the limit.
fn check_degrees(a: &MultiPoly, b: &MultiPoly, times: u32, pos: usize) -> Result<(), PolyError> {
    for i in 0..a.nvars() {
        let total = u64::from(a.degree_in(i)) + u64::from(b.degree_in(i)) * u64::from(times);
        if total > u64::from(MAX_PARSE_DEGREE) {
            return Err(PolyError::DegreeTooLarge { pos });
        }
    }
    Ok(())
}

/// Parses `text` over the declared variables, in declaration order.
pub fn parse(text: &str, var_names: &[String]) -> Result<MultiPoly, PolyError> {
    if var_names.len() > MAX_VARS {
        return Err(PolyError::TooManyVariables(var_names.len()));
    }
    let toks = lex(text)?;
    let names: Vec<String> = if var_names.is_empty() {
        vec!["x1".to_string()]
    } else {
        var_names.to_vec()
    };
    let mut parser = Parser {
        toks,
        at: 0,
        names: &names,
    };
    let poly = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("operator or end of input"));
    }
    Ok(poly)
}

/// Default names `x1..xd`, where `d` is the highest index of an `x<k>`
/// identifier in `text`. Any other identifier is an unknown variable.
pub fn infer_var_names(text: &str) -> Result<Vec<String>, PolyError> {
    let mut highest = 0usize;
    for (tok, pos) in lex(text)? {
        if let Tok::Ident(name) = tok {
            let index = name
                .strip_prefix('x')
                .filter(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|rest| rest.parse::<usize>().ok())
                .filter(|&k| k >= 1);
            match index {
                Some(k) => highest = highest.max(k),
                None => return Err(PolyError::UnknownVariable { name, pos }),
            }
        }
    }
    if highest > MAX_VARS {
        return Err(PolyError::TooManyVariables(highest));
    }
    Ok(MultiPoly::default_names(highest.max(1)))
}
