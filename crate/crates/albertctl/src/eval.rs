//! The prefix expression language of `albertctl eval`.
//!
//! ```text
//! expr  := op '(' args ')' | '[' scalar (',' scalar)* ']' | 'unit' | 'e' index
//! args  := expr (',' expr)*            (product, norm, cross, ...)
//!        | expr ';' expr (',' expr)*   (isotope-product, u-op)
//! ```
//!
//! Scalars inside lists are exact literals such as `-3/5`, `x^2+1` or
//! `(s+1)/(s^2)`, optionally double-quoted. `e3` is the fourth stored basis
//! vector. `tilde` and `cross` act on the degree-3 algebra `D` of a first
//! Tits construction (so `unit` there means `1_D`) and on the Jordan algebra
//! itself otherwise.

use albert_core::field::FieldElement;
use albert_core::linalg::{self, Vector};

use crate::config::Built;
use crate::error::CtlError;

#[derive(Debug, Clone)]
struct Node {
    text: String,
    kind: NodeKind,
}

#[derive(Debug, Clone)]
enum NodeKind {
    Call { name: String, groups: Vec<Vec<Node>> },
    List(Vec<String>),
    Unit,
    Basis(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sort {
    Jordan,
    /// The degree-3 algebra behind `tilde` and `cross`.
    Cubic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(FieldElement),
    Element(Vector),
    Coefficients { t: FieldElement, s: FieldElement, n: FieldElement },
}

impl Value {
    /// Canonical printed form: a bare scalar, or JSON with string scalars.
    pub fn render(&self) -> String {
        let strings = |v: &[FieldElement]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        match self {
            Value::Scalar(c) => c.to_string(),
            Value::Element(v) => serde_json::to_string(&strings(v)).expect("strings serialize"),
            Value::Coefficients { t, s, n } => serde_json::json!({
                "t": t.to_string(),
                "s": s.to_string(),
                "n": n.to_string(),
            })
            .to_string(),
        }
    }
}

fn err(text: &str, message: impl Into<String>) -> CtlError {
    CtlError::Eval {
        subterm: text.to_string(),
        message: message.into(),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CtlError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(&self.src[self.pos..], format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<Node, CtlError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('[') {
            let items = self.list()?;
            return Ok(Node {
                text: self.src[start..self.pos].to_string(),
                kind: NodeKind::List(items),
            });
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if name.is_empty() {
            return Err(err(&self.src[start..], "expected an expression"));
        }
        self.skip_ws();
        if self.peek() != Some('(') {
            let kind = if name == "unit" {
                NodeKind::Unit
            } else if let Some(i) = name.strip_prefix('e').and_then(|d| d.parse().ok()) {
                NodeKind::Basis(i)
            } else {
                return Err(err(name, "unknown literal"));
            };
            return Ok(Node {
                text: name.to_string(),
                kind,
            });
        }
        self.pos += 1;
        let mut groups = vec![vec![self.expr()?]];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    let e = self.expr()?;
                    groups.last_mut().expect("nonempty").push(e);
                }
                Some(';') => {
                    self.pos += 1;
                    groups.push(vec![self.expr()?]);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(err(&self.src[start..], "unterminated argument list")),
            }
        }
        Ok(Node {
            text: self.src[start..self.pos].to_string(),
            kind: NodeKind::Call {
                name: name.to_string(),
                groups,
            },
        })
    }

    /// Splits `[a, b, ...]` on commas outside parentheses and quotes.
    fn list(&mut self) -> Result<Vec<String>, CtlError> {
        let start = self.pos;
        self.expect('[')?;
        let mut items = Vec::new();
        let mut item = String::new();
        let (mut depth, mut quoted) = (0usize, false);
        loop {
            let Some(c) = self.peek() else {
                return Err(err(&self.src[start..], "unterminated list"));
            };
            self.pos += c.len_utf8();
            match c {
                '"' => quoted = !quoted,
                '(' if !quoted => {
                    depth += 1;
                    item.push(c);
                }
                ')' if !quoted => {
                    depth = depth.saturating_sub(1);
                    item.push(c);
                }
                ',' if !quoted && depth == 0 => items.push(std::mem::take(&mut item)),
                ']' if !quoted && depth == 0 => {
                    if !item.trim().is_empty() || !items.is_empty() {
                        items.push(item);
                    }
                    break;
                }
                _ => item.push(c),
            }
        }
        Ok(items.into_iter().map(|s| s.trim().to_string()).collect())
    }
}

fn parse(src: &str) -> Result<Node, CtlError> {
    let mut p = Parser { src, pos: 0 };
    let node = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(err(&src[p.pos..], "trailing input"));
    }
    Ok(node)
}

/// Parses and evaluates `src` against the built algebra.
pub fn eval_expr(built: &Built, src: &str) -> Result<Value, CtlError> {
    let node = parse(src)?;
    Evaluator { built }.eval(&node, Sort::Jordan)
}

struct Evaluator<'a> {
    built: &'a Built,
}

impl Evaluator<'_> {
    fn dim(&self, sort: Sort) -> usize {
        match (sort, self.built.degree_three()) {
            (Sort::Cubic, Some(d)) => d.table().dim(),
            _ => self.built.jordan().dim(),
        }
    }

    fn unit(&self, sort: Sort) -> Vector {
        match (sort, self.built.degree_three()) {
            (Sort::Cubic, Some(d)) => d.unit().clone(),
            _ => self.built.jordan().unit().clone(),
        }
    }

    fn element(&self, node: &Node, sort: Sort) -> Result<Vector, CtlError> {
        match self.eval(node, sort)? {
            Value::Element(v) if v.len() == self.dim(sort) => Ok(v),
            Value::Element(v) => Err(err(
                &node.text,
                format!("expected an element of dimension {}, got {}", self.dim(sort), v.len()),
            )),
            _ => Err(err(&node.text, "expected an algebra element")),
        }
    }

    fn eval(&self, node: &Node, sort: Sort) -> Result<Value, CtlError> {
        let field = self.built.field();
        let dim = self.dim(sort);
        let wrap = |e: albert_core::error::AlgebraError| err(&node.text, e.to_string());
        match &node.kind {
            NodeKind::Unit => Ok(Value::Element(self.unit(sort))),
            NodeKind::Basis(i) if *i < dim => Ok(Value::Element(linalg::basis_vector(field, dim, *i))),
            NodeKind::Basis(_) => Err(err(&node.text, format!("basis index out of range 0..{dim}"))),
            NodeKind::List(items) => {
                if items.len() != dim {
                    return Err(err(
                        &node.text,
                        format!("expected {dim} coordinates, got {}", items.len()),
                    ));
                }
                let coords = items
                    .iter()
                    .map(|s| field.parse(s).map_err(|e| err(s, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Value::Element(coords))
            }
            NodeKind::Call { name, groups } => {
                let arity: Vec<usize> = groups.iter().map(Vec::len).collect();
                let bad_arity = |expected: &str| err(&node.text, format!("{name} takes {expected}"));
                let a = self.built.normed();
                let j = a.jordan();
                match name.as_str() {
                    "product" | "norm" | "trace-coeff" | "adjoint" | "inverse" | "cross" | "tilde"
                        if groups.len() != 1 =>
                    {
                        Err(bad_arity("comma-separated arguments"))
                    }
                    "product" => {
                        if arity != [2] {
                            return Err(bad_arity("two arguments"));
                        }
                        let x = self.element(&groups[0][0], Sort::Jordan)?;
                        let y = self.element(&groups[0][1], Sort::Jordan)?;
                        Ok(Value::Element(j.product(&x, &y).map_err(wrap)?))
                    }
                    "norm" | "trace-coeff" | "adjoint" | "inverse" => {
                        if arity != [1] {
                            return Err(bad_arity("one argument"));
                        }
                        let x = self.element(&groups[0][0], Sort::Jordan)?;
                        Ok(match name.as_str() {
                            "norm" => Value::Scalar(a.norm(&x).map_err(wrap)?),
                            "trace-coeff" => {
                                let c = j.generic_coeffs(&x).map_err(wrap)?;
                                Value::Coefficients { t: c.t, s: c.s, n: c.n }
                            }
                            "adjoint" => Value::Element(j.adjoint(&x).map_err(wrap)?),
                            _ => Value::Element(j.inverse(&x).map_err(wrap)?),
                        })
                    }
                    "tilde" => {
                        if arity != [1] {
                            return Err(bad_arity("one argument"));
                        }
                        let u = self.element(&groups[0][0], Sort::Cubic)?;
                        Ok(Value::Element(self.tilde(&u).map_err(wrap)?))
                    }
                    "cross" => {
                        if arity != [2] {
                            return Err(bad_arity("two arguments"));
                        }
                        let u = self.element(&groups[0][0], Sort::Cubic)?;
                        let v = self.element(&groups[0][1], Sort::Cubic)?;
                        Ok(Value::Element(self.cross(&u, &v).map_err(wrap)?))
                    }
                    "isotope-product" => {
                        if arity != [1, 2] {
                            return Err(bad_arity("arguments (p; x, y)"));
                        }
                        let p = self.element(&groups[0][0], Sort::Jordan)?;
                        let x = self.element(&groups[1][0], Sort::Jordan)?;
                        let y = self.element(&groups[1][1], Sort::Jordan)?;
                        Ok(Value::Element(j.isotope_product(&p, &x, &y).map_err(wrap)?))
                    }
                    "u-op" => {
                        if arity != [1, 1] {
                            return Err(bad_arity("arguments (p; x)"));
                        }
                        let p = self.element(&groups[0][0], Sort::Jordan)?;
                        let x = self.element(&groups[1][0], Sort::Jordan)?;
                        let u = j.u_operator(&p).map_err(wrap)?;
                        Ok(Value::Element(u.mul_vec(&x).map_err(|e| err(&node.text, e.to_string()))?))
                    }
                    _ => Err(err(&node.text, format!("unknown operation {name:?}"))),
                }
            }
        }
    }

    fn tilde(&self, u: &[FieldElement]) -> Result<Vector, albert_core::error::AlgebraError> {
        if let Some(d) = self.built.degree_three() {
            return d.tilde(u);
        }
        let j = self.built.jordan();
        let t = j.generic_trace(u)?;
        Ok(linalg::sub(&j.table().scalar(&t), u))
    }

    /// Outside a first Tits construction this is the linearized adjoint
    /// `(u+v)# - u# - v#`.
    fn cross(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<Vector, albert_core::error::AlgebraError> {
        if let Some(d) = self.built.degree_three() {
            return d.cross_product(u, v);
        }
        let j = self.built.jordan();
        let sum = j.adjoint(&linalg::add(u, v))?;
        Ok(linalg::sub(&linalg::sub(&sum, &j.adjoint(u)?), &j.adjoint(v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_calls() {
        let n = parse("isotope-product(unit; [1, \"(s+1)/(s^2)\"], e2)").unwrap();
        let NodeKind::Call { name, groups } = n.kind else {
            panic!("not a call")
        };
        assert_eq!(name, "isotope-product");
        assert_eq!(groups.len(), 2);
        let NodeKind::List(items) = &groups[1][0].kind else {
            panic!("not a list")
        };
        assert_eq!(items, &["1", "(s+1)/(s^2)"]);
        assert!(matches!(groups[1][1].kind, NodeKind::Basis(2)));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("norm(unit").is_err());
        assert!(parse("norm(unit) x").is_err());
        assert!(parse("[1, 2").is_err());
        assert!(parse("bogus").is_err());
    }
}
