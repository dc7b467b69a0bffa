//! Scalar literal parser.
//!
//! Grammar (whitespace ignored, `*` may be omitted before a name or `(`):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary | unary)*
//! unary := "-" unary | power
//! power := atom ("^" "-"? integer)?
//! atom  := integer | name | "(" expr ")"
//! ```
//!
//! Names resolve to the generator of any field in the tower.

use num_bigint::BigInt;

use super::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Int(s.parse().map_err(|_| format!("bad integer {s}"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldElement, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| e.to_string())?;
            } else if matches!(self.peek(), Some(Token::Name(_)) | Some(Token::Op('('))) {
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement, String> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<FieldElement, String> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let e = match self.tokens.get(self.pos) {
            Some(Token::Int(n)) => {
                self.pos += 1;
                u64::try_from(n.clone()).map_err(|_| "exponent too large".to_string())?
            }
            _ => return Err("expected integer exponent".into()),
        };
        let v = base.pow(e);
        if negative {
            v.inv().map_err(|e| e.to_string())
        } else {
            Ok(v)
        }
    }

    fn atom(&mut self) -> Result<FieldElement, String> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(self.field.from_bigint(&n))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                resolve_name(self.field, &name).ok_or_else(|| format!("unknown name {name:?}"))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err("expected ')'".into());
                }
                Ok(v)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

fn resolve_name(field: &Field, name: &str) -> Option<FieldElement> {
    let mut level = Some(field);
    while let Some(f) = level {
        if f.var_name() == Some(name) {
            return field.embed_from(&f.generator()?);
        }
        level = f.base();
    }
    None
}

pub(super) fn parse(field: &Field, text: &str) -> Result<FieldElement, FieldError> {
    let err = |msg: String| FieldError::Parse {
        input: text.to_string(),
        msg,
    };
    let tokens = tokenize(text).map_err(err)?;
    if tokens.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut p = Parser {
        field,
        tokens,
        pos: 0,
    };
    let v = p.expr().map_err(err)?;
    if p.pos != p.tokens.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}
