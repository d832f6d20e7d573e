//! Expression and vector-field text parsing.
//!
//! Grammar (ASCII):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! atom    := integer | variable | '(' expr ')'
//! exponent:= ['-'] integer | '(' ['-'] integer ')'
//! ```
//!
//! Variables: `x`, `y`, primed derivatives (`y'`, `y''`, ...), the
//! indexed form `y^(j)`, and the `yj` digit shorthand. `y^(j)` is
//! claimed by the lexer as a jet variable, so powers of `y` itself must
//! be written `y^j` without parentheses (as the canonical renderer
//! does). `^` takes integer exponents only and binds tighter than
//! unary minus.

use num_bigint::BigInt;

use crate::ast::ExprAst;
use crate::error::{Error, ParseError, Result};
use crate::fields::VectorField;
use crate::rat::Rat;
use crate::vars::Var;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError { position: pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn read_digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Next token plus its starting position.
    fn next_token(&mut self) -> std::result::Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let c = self.src[self.pos];
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() {
            let digits = self.read_digits();
            let n = std::str::from_utf8(digits)
                .expect("ascii digits")
                .parse::<BigInt>()
                .map_err(|_| self.error(start, "bad integer literal"))?;
            return Ok((Tok::Int(n), start));
        }
        if c == b'x' {
            self.pos += 1;
            return Ok((Tok::Var(Var::X), start));
        }
        if c == b'y' {
            self.pos += 1;
            // primes: y', y'', ...
            if self.pos < self.src.len() && self.src[self.pos] == b'\'' {
                let mut order = 0u32;
                while self.pos < self.src.len() && self.src[self.pos] == b'\'' {
                    order += 1;
                    self.pos += 1;
                }
                return Ok((Tok::Var(Var::y(order)), start));
            }
            // digit shorthand: y2 means y''
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                let digits = self.read_digits();
                let order: u32 = std::str::from_utf8(digits)
                    .expect("ascii digits")
                    .parse()
                    .map_err(|_| self.error(start, "jet order too large"))?;
                return Ok((Tok::Var(Var::y(order)), start));
            }
            // indexed form: y^(j) is a variable, claimed here.
            if self.src[self.pos..].starts_with(b"^(") {
                let save = self.pos;
                self.pos += 2;
                let digits = self.read_digits();
                if !digits.is_empty() && self.pos < self.src.len() && self.src[self.pos] == b')' {
                    let order: u32 = std::str::from_utf8(digits)
                        .expect("ascii digits")
                        .parse()
                        .map_err(|_| self.error(start, "jet order too large"))?;
                    self.pos += 1;
                    return Ok((Tok::Var(Var::y(order)), start));
                }
                self.pos = save; // not y^(j); leave ^ for the parser
            }
            return Ok((Tok::Var(Var::Y), start));
        }
        Err(self.error(start, format!("unexpected character {:?}", c as char)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Tok,
    current_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> std::result::Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (current, current_pos) = lexer.next_token()?;
        Ok(Parser { lexer, current, current_pos })
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.current_pos, message: message.into() }
    }

    fn advance(&mut self) -> std::result::Result<(), ParseError> {
        let (tok, pos) = self.lexer.next_token()?;
        self.current = tok;
        self.current_pos = pos;
        Ok(())
    }

    fn expect(&mut self, tok: Tok, what: &str) -> std::result::Result<(), ParseError> {
        if self.current == tok {
            self.advance()
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn parse_expr(&mut self) -> std::result::Result<ExprAst, ParseError> {
        let mut terms = vec![self.parse_term()?];
        loop {
            match self.current {
                Tok::Plus => {
                    self.advance()?;
                    terms.push(self.parse_term()?);
                }
                Tok::Minus => {
                    self.advance()?;
                    terms.push(ExprAst::neg(self.parse_term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.into_iter().next().expect("one term")
        } else {
            ExprAst::Add(terms)
        })
    }

    fn parse_term(&mut self) -> std::result::Result<ExprAst, ParseError> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.current {
                Tok::Star => {
                    self.advance()?;
                    let rhs = self.parse_unary()?;
                    acc = match acc {
                        ExprAst::Mul(mut fs) => {
                            fs.push(rhs);
                            ExprAst::Mul(fs)
                        }
                        other => ExprAst::mul(vec![other, rhs]),
                    };
                }
                Tok::Slash => {
                    self.advance()?;
                    let rhs = self.parse_unary()?;
                    acc = ExprAst::div(acc, rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> std::result::Result<ExprAst, ParseError> {
        if self.current == Tok::Minus {
            self.advance()?;
            return Ok(ExprAst::neg(self.parse_unary()?));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> std::result::Result<ExprAst, ParseError> {
        let base = self.parse_atom()?;
        if self.current == Tok::Caret {
            self.advance()?;
            let exp = self.parse_exponent()?;
            return Ok(ExprAst::pow(base, exp));
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> std::result::Result<i64, ParseError> {
        let parenthesized = self.current == Tok::LParen;
        if parenthesized {
            self.advance()?;
        }
        let negative = self.current == Tok::Minus;
        if negative {
            self.advance()?;
        }
        let n = match &self.current {
            Tok::Int(n) => {
                let v: i64 = i64::try_from(n).map_err(|_| self.error("exponent too large"))?;
                self.advance()?;
                v
            }
            _ => return Err(self.error("expected an integer exponent")),
        };
        if parenthesized {
            self.expect(Tok::RParen, "')' after exponent")?;
        }
        Ok(if negative { -n } else { n })
    }

    fn parse_atom(&mut self) -> std::result::Result<ExprAst, ParseError> {
        match self.current.clone() {
            Tok::Int(n) => {
                self.advance()?;
                Ok(ExprAst::Num(Rat::from_integer(n)))
            }
            Tok::Var(v) => {
                self.advance()?;
                Ok(ExprAst::Var(v))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable, or '('")),
        }
    }
}

/// Parse an expression into its syntax tree.
pub fn parse_expr(src: &str) -> std::result::Result<ExprAst, ParseError> {
    let mut p = Parser::new(src)?;
    let ast = p.parse_expr()?;
    if p.current != Tok::Eof {
        return Err(p.error("trailing input"));
    }
    Ok(ast)
}

/// Parse `xi = <expr>; eta = <expr>` into a point vector field. The
/// coefficient expressions may involve x and y only.
pub fn parse_field(src: &str) -> Result<VectorField> {
    let err = |position: usize, message: &str| {
        Error::Parse(ParseError { position, message: message.into() })
    };
    let (xi_part, eta_part) = src
        .split_once(';')
        .ok_or_else(|| err(src.len(), "expected 'xi = <expr>; eta = <expr>'"))?;
    let eta_offset = xi_part.len() + 1;
    let strip = |part: &str, key: &str, offset: usize| -> Result<String> {
        let trimmed = part.trim_start();
        let key_pos = offset + (part.len() - trimmed.len());
        let rest = trimmed
            .strip_prefix(key)
            .ok_or_else(|| err(key_pos, &format!("expected '{key} ='")))?;
        let rest = rest.trim_start();
        let rest = rest
            .strip_prefix('=')
            .ok_or_else(|| err(key_pos + key.len(), &format!("expected '=' after '{key}'")))?;
        Ok(rest.to_string())
    };
    let xi_src = strip(xi_part, "xi", 0)?;
    let eta_src = strip(eta_part, "eta", eta_offset)?;
    let xi = parse_expr(&xi_src)?.lower()?;
    let eta = parse_expr(&eta_src)?.lower()?;
    VectorField::new(xi, eta)
}
