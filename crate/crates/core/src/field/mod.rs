//! Exact scalar fields.
//!
//! A [`Field`] is a cheap, shareable handle describing one level of a field
//! tower: the rationals, a prime field, a simple algebraic extension
//! `base[x]/(m(x))`, or a rational function field `base(s)`. Elements carry
//! their field handle and are always stored in canonical form, so equality of
//! elements is equality of representations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::MapAccess;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::tagged::{self, NoFields, Tagged};

mod parse;
pub(crate) mod rational;
pub mod poly;
pub mod roots;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported characteristic {0}: characteristic 2 and 3 are excluded")]
    UnsupportedCharacteristic(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("extension modulus must be monic")]
    NonMonicModulus,
    #[error("extension modulus of degree {0} is not supported (degree must be 2 or 3)")]
    UnsupportedDegree(usize),
    #[error("extension modulus is reducible over the base: {0} is a root")]
    ReducibleModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?}: {msg}")]
    Parse { input: String, msg: String },
    #[error("operation not supported over {0}")]
    Unsupported(String),
}

/// Serializable description of a field tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Rationals,
    Prime {
        p: u64,
    },
    /// `base[var]/(modulus)`; modulus coefficients are listed from the
    /// constant term upwards and must describe a monic polynomial.
    Extension {
        base: Box<FieldSpec>,
        modulus: Vec<String>,
        #[serde(default = "default_extension_var")]
        var: String,
    },
    FunctionField {
        base: Box<FieldSpec>,
        #[serde(default = "default_function_var")]
        var: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrimeSpec {
    p: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionSpec {
    base: Box<FieldSpec>,
    modulus: Vec<String>,
    #[serde(default = "default_extension_var")]
    var: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFieldSpec {
    base: Box<FieldSpec>,
    #[serde(default = "default_function_var")]
    var: String,
}

impl<'de> Tagged<'de> for FieldSpec {
    const KINDS: &'static [&'static str] = &["rationals", "prime", "extension", "function-field"];

    fn variant<M: MapAccess<'de>>(kind: &str, rest: M) -> Result<Self, M::Error> {
        Ok(match kind {
            "rationals" => {
                tagged::payload::<_, NoFields>(rest)?;
                FieldSpec::Rationals
            }
            "prime" => FieldSpec::Prime {
                p: tagged::payload::<_, PrimeSpec>(rest)?.p,
            },
            "extension" => {
                let e: ExtensionSpec = tagged::payload(rest)?;
                FieldSpec::Extension {
                    base: e.base,
                    modulus: e.modulus,
                    var: e.var,
                }
            }
            _ => {
                let f: FunctionFieldSpec = tagged::payload(rest)?;
                FieldSpec::FunctionField { base: f.base, var: f.var }
            }
        })
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        tagged::deserialize(d)
    }
}

fn default_extension_var() -> String {
    "x".to_string()
}

fn default_function_var() -> String {
    "s".to_string()
}

#[derive(Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension {
        base: Field,
        /// Monic, irreducible, coefficients low to high.
        modulus: Vec<FieldElement>,
        var: String,
    },
    FunctionField {
        base: Field,
        var: String,
    },
}

/// Shared handle to a field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Extension { base, modulus, var } => {
                write!(f, "{base}[{var}]/({})", poly::format_poly(modulus, var))
            }
            FieldKind::FunctionField { base, var } => write!(f, "{base}({var})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
    /// Residue polynomial, trimmed, degree below the modulus degree.
    Poly(Vec<FieldElement>),
    /// Reduced fraction with monic denominator; zero is `([], [1])`.
    Ratio(Vec<FieldElement>, Vec<FieldElement>),
}

/// An exact scalar in canonical form.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 || p == 3 {
            return Err(FieldError::UnsupportedCharacteristic(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// `base[var]/(modulus)` for a monic irreducible quadratic or cubic
    /// modulus (coefficients low to high).
    pub fn extension(
        base: &Field,
        modulus: Vec<FieldElement>,
        var: &str,
    ) -> Result<Field, FieldError> {
        let mut modulus = modulus;
        poly::trim(&mut modulus);
        let deg = poly::degree(&modulus).unwrap_or(0);
        if !(2..=3).contains(&deg) {
            return Err(FieldError::UnsupportedDegree(deg));
        }
        if !modulus[deg].is_one() {
            return Err(FieldError::NonMonicModulus);
        }
        if let Some(root) = roots::roots(base, &modulus)?.into_iter().next() {
            return Err(FieldError::ReducibleModulus(root.to_string()));
        }
        Ok(Field(Arc::new(FieldKind::Extension {
            base: base.clone(),
            modulus,
            var: var.to_string(),
        })))
    }

    pub fn function_field(base: &Field, var: &str) -> Field {
        Field(Arc::new(FieldKind::FunctionField {
            base: base.clone(),
            var: var.to_string(),
        }))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field, FieldError> {
        match spec {
            FieldSpec::Rationals => Ok(Field::rationals()),
            FieldSpec::Prime { p } => Field::prime(*p),
            FieldSpec::Extension { base, modulus, var } => {
                let base = Field::from_spec(base)?;
                let coeffs = modulus
                    .iter()
                    .map(|c| base.parse(c))
                    .collect::<Result<Vec<_>, _>>()?;
                Field::extension(&base, coeffs, var)
            }
            FieldSpec::FunctionField { base, var } => {
                let base = Field::from_spec(base)?;
                Ok(Field::function_field(&base, var))
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        match &*self.0 {
            FieldKind::Rationals => FieldSpec::Rationals,
            FieldKind::Prime(p) => FieldSpec::Prime { p: *p },
            FieldKind::Extension { base, modulus, var } => FieldSpec::Extension {
                base: Box::new(base.spec()),
                modulus: modulus.iter().map(|c| c.to_string()).collect(),
                var: var.clone(),
            },
            FieldKind::FunctionField { base, var } => FieldSpec::FunctionField {
                base: Box::new(base.spec()),
                var: var.clone(),
            },
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    /// The field this one is built over, if any.
    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldKind::Extension { base, .. } | FieldKind::FunctionField { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { base, .. } | FieldKind::FunctionField { base, .. } => {
                base.characteristic()
            }
        }
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            FieldKind::Prime(p) => Some(*p),
            FieldKind::Extension { base, modulus, .. } => {
                let q = base.order()?;
                q.checked_pow((modulus.len() - 1) as u32)
            }
            _ => None,
        }
    }

    fn elem(&self, repr: Repr) -> FieldElement {
        FieldElement {
            field: self.clone(),
            repr,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => self.elem(Repr::Rational(BigRational::zero())),
            FieldKind::Prime(_) => self.elem(Repr::Residue(0)),
            FieldKind::Extension { .. } => self.elem(Repr::Poly(Vec::new())),
            FieldKind::FunctionField { base, .. } => {
                self.elem(Repr::Ratio(Vec::new(), vec![base.one()]))
            }
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => self.elem(Repr::Rational(BigRational::from_integer(n.clone()))),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                self.elem(Repr::Residue(r))
            }
            FieldKind::Extension { base, .. } => self.embed(&base.from_bigint(n)),
            FieldKind::FunctionField { base, .. } => self.embed(&base.from_bigint(n)),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement, FieldError> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }

    /// Embeds an element of the immediate base field.
    pub fn embed(&self, c: &FieldElement) -> FieldElement {
        match &*self.0 {
            FieldKind::Extension { .. } => {
                let mut v = vec![c.clone()];
                poly::trim(&mut v);
                self.elem(Repr::Poly(v))
            }
            FieldKind::FunctionField { base, .. } => {
                let mut v = vec![c.clone()];
                poly::trim(&mut v);
                self.elem(Repr::Ratio(v, vec![base.one()]))
            }
            _ => {
                debug_assert!(c.field == *self);
                c.clone()
            }
        }
    }

    /// Embeds an element of any field below this one in the tower.
    pub fn embed_from(&self, c: &FieldElement) -> Option<FieldElement> {
        if c.field == *self {
            return Some(c.clone());
        }
        let base = self.base()?;
        base.embed_from(c).map(|b| self.embed(&b))
    }

    /// The adjoined generator (`x` of an extension, `s` of a function field).
    pub fn generator(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldKind::Extension { base, modulus, .. } => {
                let v = vec![base.zero(), base.one()];
                Some(self.residue(v, modulus))
            }
            FieldKind::FunctionField { base, .. } => {
                Some(self.elem(Repr::Ratio(vec![base.zero(), base.one()], vec![base.one()])))
            }
            _ => None,
        }
    }

    pub fn var_name(&self) -> Option<&str> {
        match &*self.0 {
            FieldKind::Extension { var, .. } | FieldKind::FunctionField { var, .. } => Some(var),
            _ => None,
        }
    }

    /// Builds an extension element from a polynomial in the generator.
    pub fn from_poly(&self, coeffs: Vec<FieldElement>) -> FieldElement {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => self.residue(coeffs, modulus),
            FieldKind::FunctionField { base, .. } => self.ratio(coeffs, vec![base.one()]),
            _ => panic!("from_poly called on a field without a generator"),
        }
    }

    /// Builds a function-field element from numerator and denominator
    /// polynomials. Panics if the denominator is zero or the field is not a
    /// function field.
    pub fn from_fraction(&self, num: Vec<FieldElement>, den: Vec<FieldElement>) -> FieldElement {
        self.ratio(num, den)
    }

    fn residue(&self, mut v: Vec<FieldElement>, modulus: &[FieldElement]) -> FieldElement {
        poly::trim(&mut v);
        if v.len() >= modulus.len() {
            v = poly::rem(&v, modulus);
        }
        self.elem(Repr::Poly(v))
    }

    fn ratio(&self, mut num: Vec<FieldElement>, mut den: Vec<FieldElement>) -> FieldElement {
        let base = self.base().expect("function field").clone();
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.elem(Repr::Ratio(num, vec![base.one()]));
        }
        if den.len() > 1 {
            let g = gcd_fast(&num, &den);
            if g.len() > 1 {
                num = poly::div_exact(&num, &g);
                den = poly::div_exact(&den, &g);
            }
        }
        let lc = den.last().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            num = poly::scale(&num, &inv);
            den = poly::scale(&den, &inv);
        }
        self.elem(Repr::Ratio(num, den))
    }

    /// Parses a scalar literal such as `-3/5`, `x^2+1` or `(s+1)/(s^2)`.
    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        parse::parse(self, text)
    }
}

/// Gcd with shortcuts for the denominators that dominate in practice
/// (constants and pure powers of the variable).
fn gcd_fast(num: &[FieldElement], den: &[FieldElement]) -> Vec<FieldElement> {
    let base = den[0].field.clone();
    if den.len() == 1 {
        return vec![base.one()];
    }
    if den[..den.len() - 1].iter().all(|c| c.is_zero()) {
        let k = den.len() - 1;
        let ord = num.iter().take_while(|c| c.is_zero()).count();
        let v = k.min(ord);
        let mut g = vec![base.zero(); v];
        g.push(base.one());
        return g;
    }
    poly::gcd(&base, num, den)
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
            Repr::Poly(v) => v.is_empty(),
            Repr::Ratio(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(r) => *r == 1,
            Repr::Poly(v) => v.len() == 1 && v[0].is_one(),
            Repr::Ratio(n, d) => n.len() == 1 && d.len() == 1 && n[0].is_one(),
        }
    }

    /// The value as a rational number, for elements of `Q`.
    pub fn to_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The residue in `0..p`, for prime-field elements.
    pub fn to_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            _ => None,
        }
    }

    /// Coefficients of the residue polynomial (extension fields).
    pub fn poly_coeffs(&self) -> Option<&[FieldElement]> {
        match &self.repr {
            Repr::Poly(v) => Some(v),
            _ => None,
        }
    }

    /// Numerator and monic denominator (function fields).
    pub fn fraction(&self) -> Option<(&[FieldElement], &[FieldElement])> {
        match &self.repr {
            Repr::Ratio(n, d) => Some((n, d)),
            _ => None,
        }
    }

    /// The element as a member of the immediate base field, if it lies there.
    pub fn to_base(&self) -> Option<FieldElement> {
        let base = self.field.base()?;
        match &self.repr {
            Repr::Poly(v) if v.len() <= 1 => Some(v.first().cloned().unwrap_or_else(|| base.zero())),
            Repr::Ratio(n, d) if n.len() <= 1 && d.len() == 1 => {
                Some(n.first().cloned().unwrap_or_else(|| base.zero()))
            }
            _ => None,
        }
    }

    /// Re-runs canonicalization on the stored representation.
    pub fn canonicalize(&self) -> FieldElement {
        match (&self.repr, self.field.kind()) {
            (Repr::Rational(q), _) => {
                let q = BigRational::new(q.numer().clone(), q.denom().clone());
                self.field.elem(Repr::Rational(q))
            }
            (Repr::Residue(r), FieldKind::Prime(p)) => self.field.elem(Repr::Residue(r % p)),
            (Repr::Poly(v), FieldKind::Extension { modulus, .. }) => {
                let v = v.iter().map(|c| c.canonicalize()).collect();
                self.field.residue(v, modulus)
            }
            (Repr::Ratio(n, d), _) => {
                let n = n.iter().map(|c| c.canonicalize()).collect();
                let d = d.iter().map(|c| c.canonicalize()).collect();
                self.field.ratio(n, d)
            }
            _ => unreachable!("representation does not match field"),
        }
    }

    fn prime(&self) -> u64 {
        match self.field.kind() {
            FieldKind::Prime(p) => *p,
            _ => unreachable!(),
        }
    }

    fn modulus(&self) -> &[FieldElement] {
        match self.field.kind() {
            FieldKind::Extension { modulus, .. } => modulus,
            _ => unreachable!(),
        }
    }

    fn base_field(&self) -> &Field {
        self.field.base().expect("tower field")
    }

    pub fn add_ref(&self, rhs: &FieldElement) -> FieldElement {
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(rational::add(a, b)),
            (Repr::Residue(a), Repr::Residue(b)) => Repr::Residue((a + b) % self.prime()),
            (Repr::Poly(a), Repr::Poly(b)) => Repr::Poly(poly::add(a, b)),
            (Repr::Ratio(n1, d1), Repr::Ratio(n2, d2)) => {
                if d1 == d2 {
                    return self.field.ratio(poly::add(n1, n2), d1.clone());
                }
                let num = poly::add(&poly::mul(n1, d2), &poly::mul(n2, d1));
                return self.field.ratio(num, poly::mul(d1, d2));
            }
            _ => panic!("field mismatch: {} vs {}", self.field, rhs.field),
        };
        self.field.elem(repr)
    }

    pub fn neg_ref(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(rational::neg(a)),
            Repr::Residue(a) => Repr::Residue(if *a == 0 { 0 } else { self.prime() - a }),
            Repr::Poly(a) => Repr::Poly(poly::neg(a)),
            Repr::Ratio(n, d) => Repr::Ratio(poly::neg(n), d.clone()),
        };
        self.field.elem(repr)
    }

    pub fn sub_ref(&self, rhs: &FieldElement) -> FieldElement {
        match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => {
                self.field.elem(Repr::Rational(rational::sub(a, b)))
            }
            (Repr::Poly(a), Repr::Poly(b)) => self.field.elem(Repr::Poly(poly::sub(a, b))),
            _ => self.add_ref(&rhs.neg_ref()),
        }
    }

    pub fn mul_ref(&self, rhs: &FieldElement) -> FieldElement {
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => {
                if b.is_one() {
                    Repr::Rational(a.clone())
                } else if a.is_one() {
                    Repr::Rational(b.clone())
                } else {
                    Repr::Rational(rational::mul(a, b))
                }
            }
            (Repr::Residue(a), Repr::Residue(b)) => Repr::Residue(a * b % self.prime()),
            (Repr::Poly(a), Repr::Poly(b)) => {
                let prod = poly::mul(a, b);
                return self.field.residue(prod, self.modulus());
            }
            (Repr::Ratio(n1, d1), Repr::Ratio(n2, d2)) => {
                if n1.is_empty() || n2.is_empty() {
                    return self.field.zero();
                }
                if d1.len() == 1 && d2.len() == 1 {
                    return self.field.elem(Repr::Ratio(poly::mul(n1, n2), d1.clone()));
                }
                return self.field.ratio(poly::mul(n1, n2), poly::mul(d1, d2));
            }
            _ => panic!("field mismatch: {} vs {}", self.field, rhs.field),
        };
        self.field.elem(repr)
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(rational::recip(a)),
            Repr::Residue(a) => Repr::Residue(pow_mod(*a, self.prime() - 2, self.prime())),
            Repr::Poly(a) => {
                let base = self.base_field();
                let (g, s, _) = poly::ext_gcd(base, a, self.modulus());
                debug_assert!(g.len() == 1);
                let ginv = g[0].inv()?;
                return Ok(self.field.residue(poly::scale(&s, &ginv), self.modulus()));
            }
            Repr::Ratio(n, d) => return Ok(self.field.ratio(d.clone(), n.clone())),
        };
        Ok(self.field.elem(repr))
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul_ref(&rhs.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True when printing needs no parentheses as a coefficient.
    fn is_atomic(&self) -> bool {
        match &self.repr {
            Repr::Rational(_) | Repr::Residue(_) => true,
            Repr::Poly(v) => v.len() <= 1 && v.first().is_none_or(|c| c.is_atomic()),
            Repr::Ratio(n, d) => d.len() == 1 && n.len() <= 1 && n.first().is_none_or(|c| c.is_atomic()),
        }
    }

    fn is_negative_literal(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_negative(),
            Repr::Poly(v) if v.len() == 1 => v[0].is_negative_literal(),
            Repr::Ratio(n, d) if n.len() == 1 && d.len() == 1 => n[0].is_negative_literal(),
            _ => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Poly(v) => {
                let var = self.field.var_name().unwrap_or("x");
                write!(f, "{}", poly::format_poly(v, var))
            }
            Repr::Ratio(n, d) => {
                let var = self.field.var_name().unwrap_or("s");
                if d.len() == 1 {
                    write!(f, "{}", poly::format_poly(n, var))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        poly::format_poly(n, var),
                        poly::format_poly(d, var)
                    )
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$impl_fn(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$impl_fn(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl std::ops::AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_ref(rhs);
    }
}

impl std::ops::SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = self.sub_ref(rhs);
    }
}
