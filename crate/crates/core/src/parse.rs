//! Recursive-descent parsers for the ASCII formula syntax.
//!
//! ```text
//! formula  := joinmeet [ ("->" | "<->") formula ]      (Łukasiewicz only)
//! joinmeet := oplus (("/\" | "\/") oplus)*             (no mixing without parens)
//! oplus    := otimes ("(+)" otimes)*
//! otimes   := unary ("(*)" unary)*
//! unary    := "~" unary | atom
//! atom     := var | "(" formula ")"
//! var      := "X" [1-9][0-9]*
//! ```
//!
//! Chains of the same connective nest to the left.

use crate::error::{ParseError, ParseErrorKind};
use crate::formula::{iff, implies, BoolFormula, LukFormula, VarId};

pub fn parse_bool(text: &str) -> Result<BoolFormula, ParseError> {
    let f = Parser::new(text, Dialect::Bool)?.parse()?;
    Ok(to_bool(f))
}

pub fn parse_luk(text: &str) -> Result<LukFormula, ParseError> {
    Parser::new(text, Dialect::Luk)?.parse()
}

fn to_bool(f: LukFormula) -> BoolFormula {
    match f {
        LukFormula::Var(v) => BoolFormula::Var(v),
        LukFormula::Neg(a) => BoolFormula::not(to_bool(*a)),
        LukFormula::Meet(a, b) => BoolFormula::and(to_bool(*a), to_bool(*b)),
        LukFormula::Join(a, b) => BoolFormula::or(to_bool(*a), to_bool(*b)),
        LukFormula::Oplus(..) | LukFormula::Otimes(..) => {
            unreachable!("boolean lexer rejects (+) and (*)")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dialect {
    Bool,
    Luk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(VarId),
    Tilde,
    Oplus,
    Otimes,
    And,
    Or,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Var(v) => v.to_string(),
            Tok::Tilde => "~".into(),
            Tok::Oplus => "(+)".into(),
            Tok::Otimes => "(*)".into(),
            Tok::And => "/\\".into(),
            Tok::Or => "\\/".into(),
            Tok::Arrow => "->".into(),
            Tok::DoubleArrow => "<->".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn lex(text: &str, dialect: Dialect) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &text[i..];
        let start = i;
        let (tok, len) = match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' if rest.starts_with("(+)") => (Tok::Oplus, 3),
            b'(' if rest.starts_with("(*)") => (Tok::Otimes, 3),
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'~' => (Tok::Tilde, 1),
            b'/' if rest.starts_with("/\\") => (Tok::And, 2),
            b'\\' if rest.starts_with("\\/") => (Tok::Or, 2),
            b'-' if rest.starts_with("->") => (Tok::Arrow, 2),
            b'<' if rest.starts_with("<->") => (Tok::DoubleArrow, 3),
            b'X' => lex_var(text, i)?,
            _ => {
                let ch = rest.chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    start,
                    ParseErrorKind::UnexpectedChar,
                    format!("unexpected character {ch:?}"),
                ));
            }
        };
        if dialect == Dialect::Bool
            && matches!(
                tok,
                Tok::Oplus | Tok::Otimes | Tok::Arrow | Tok::DoubleArrow
            )
        {
            return Err(ParseError::new(
                start,
                ParseErrorKind::UnexpectedToken,
                format!("connective {} is not boolean", tok.describe()),
            ));
        }
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

fn lex_var(text: &str, start: usize) -> Result<(Tok, usize), ParseError> {
    let digits: &str = {
        let rest = &text[start + 1..];
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        &rest[..end]
    };
    if digits.is_empty() {
        return Err(ParseError::new(
            start,
            ParseErrorKind::UnexpectedChar,
            "variable name X must be followed by an index",
        ));
    }
    if digits.starts_with('0') {
        let kind = if digits.bytes().all(|b| b == b'0') {
            ParseErrorKind::ZeroVariable
        } else {
            ParseErrorKind::UnexpectedChar
        };
        return Err(ParseError::new(
            start,
            kind,
            format!("invalid variable index {digits}"),
        ));
    }
    let index: u32 = digits.parse().map_err(|_| {
        ParseError::new(
            start,
            ParseErrorKind::UnexpectedChar,
            format!("variable index {digits} too large"),
        )
    })?;
    let var = VarId::new(index).expect("nonzero index");
    Ok((Tok::Var(var), 1 + digits.len()))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str, dialect: Dialect) -> Result<Self, ParseError> {
        Ok(Self {
            toks: lex(text, dialect)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn parse(mut self) -> Result<LukFormula, ParseError> {
        let f = self.formula()?;
        if let Some((off, tok)) = self.peek() {
            return Err(ParseError::new(
                off,
                ParseErrorKind::TrailingInput,
                format!("unexpected {} after complete formula", tok.describe()),
            ));
        }
        Ok(f)
    }

    fn peek(&self) -> Option<(usize, Tok)> {
        self.toks.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek().map(|(_, t)| t) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<LukFormula, ParseError> {
        let lhs = self.joinmeet()?;
        if self.eat(Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(implies(lhs, rhs))
        } else if self.eat(Tok::DoubleArrow) {
            let rhs = self.formula()?;
            Ok(iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn joinmeet(&mut self) -> Result<LukFormula, ParseError> {
        let mut acc = self.oplus()?;
        let mut seen: Option<Tok> = None;
        while let Some((off, tok @ (Tok::And | Tok::Or))) = self.peek() {
            if seen.is_some_and(|s| s != tok) {
                return Err(ParseError::new(
                    off,
                    ParseErrorKind::MixedJoinMeet,
                    "mixing /\\ and \\/ requires parentheses",
                ));
            }
            seen = Some(tok);
            self.pos += 1;
            let rhs = self.oplus()?;
            acc = if tok == Tok::And {
                LukFormula::meet(acc, rhs)
            } else {
                LukFormula::join(acc, rhs)
            };
        }
        Ok(acc)
    }

    fn oplus(&mut self) -> Result<LukFormula, ParseError> {
        let mut acc = self.otimes()?;
        while self.eat(Tok::Oplus) {
            acc = LukFormula::oplus(acc, self.otimes()?);
        }
        Ok(acc)
    }

    fn otimes(&mut self) -> Result<LukFormula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(Tok::Otimes) {
            acc = LukFormula::otimes(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LukFormula, ParseError> {
        if self.eat(Tok::Tilde) {
            return Ok(LukFormula::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<LukFormula, ParseError> {
        match self.bump() {
            Some((_, Tok::Var(v))) => Ok(LukFormula::Var(v)),
            Some((open, Tok::LParen)) => {
                let inner = self.formula()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((off, tok)) => Err(ParseError::new(
                        off,
                        ParseErrorKind::UnexpectedToken,
                        format!(
                            "expected ) to close ( at byte {open}, found {}",
                            tok.describe()
                        ),
                    )),
                    None => Err(ParseError::new(
                        self.end,
                        ParseErrorKind::UnexpectedEnd,
                        format!("unclosed ( at byte {open}"),
                    )),
                }
            }
            Some((off, tok)) => Err(ParseError::new(
                off,
                ParseErrorKind::UnexpectedToken,
                format!("expected a variable or (, found {}", tok.describe()),
            )),
            None => Err(ParseError::new(
                self.end,
                ParseErrorKind::UnexpectedEnd,
                "unexpected end of input",
            )),
        }
    }
}
