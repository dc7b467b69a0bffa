//! Dense univariate polynomials over a [`Field`], stored as coefficient
//! vectors from the constant term upwards with no trailing zeros.

use super::{Field, FieldElement};

pub type Poly = Vec<FieldElement>;

pub fn trim(v: &mut Poly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(v: &[FieldElement]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn add(a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Poly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.add_ref(s);
    }
    trim(&mut out);
    out
}

pub fn neg(a: &[FieldElement]) -> Poly {
    a.iter().map(|c| c.neg_ref()).collect()
}

pub fn sub(a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => out.push(x.sub_ref(y)),
            (Some(x), None) => out.push(x.clone()),
            (None, Some(y)) => out.push(y.neg_ref()),
            (None, None) => unreachable!(),
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[FieldElement], c: &FieldElement) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x.mul_ref(c)).collect()
}

pub fn mul(a: &[FieldElement], b: &[FieldElement]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].field().zero();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[FieldElement], b: &[FieldElement]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lc_inv = b[db].inv().expect("nonzero leading coefficient");
    let monic_b = b[db].is_one();
    let mut r: Poly = a.to_vec();
    let zero = a[0].field().zero();
    let mut q = vec![zero; a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let c = if monic_b { top.clone() } else { top.mul_ref(&lc_inv) };
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] = r[k + j].sub_ref(&c.mul_ref(bj));
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[FieldElement], b: &[FieldElement]) -> Poly {
    divrem(a, b).1
}

pub fn div_exact(a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn monic(a: &[FieldElement]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(lc) if lc.is_one() => a.to_vec(),
        Some(lc) => scale(a, &lc.inv().expect("nonzero")),
    }
}

/// Monic gcd. `gcd(0, 0)` is the zero polynomial.
pub fn gcd(_base: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let mut x = monic(a);
    let mut y = monic(b);
    while !y.is_empty() {
        let r = monic(&rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(base: &Field, a: &[FieldElement], b: &[FieldElement]) -> (Poly, Poly, Poly) {
    let mut r0: Poly = a.to_vec();
    let mut r1: Poly = b.to_vec();
    let mut s0: Poly = vec![base.one()];
    let mut s1: Poly = Vec::new();
    let mut t0: Poly = Vec::new();
    let mut t1: Poly = vec![base.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(lc) = r0.last() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            r0 = scale(&r0, &inv);
            s0 = scale(&s0, &inv);
            t0 = scale(&t0, &inv);
        }
    }
    (r0, s0, t0)
}

pub fn eval(p: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    for c in p.iter().rev() {
        acc = acc.mul_ref(x).add_ref(c);
    }
    acc
}

pub fn derivative(p: &[FieldElement]) -> Poly {
    let mut out: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul_ref(&c.field().from_i64(i as i64)))
        .collect();
    trim(&mut out);
    out
}

/// Taylor shift: the coefficients of `p(t + c)` in `t`.
pub fn shift(p: &[FieldElement], c: &FieldElement) -> Poly {
    let mut out: Poly = p.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let add = out[j + 1].mul_ref(c);
            out[j] = out[j].add_ref(&add);
        }
    }
    trim(&mut out);
    out
}

/// `a^e mod m` for a nonzero modulus.
pub fn pow_mod(a: &[FieldElement], e: &num_bigint::BigUint, m: &[FieldElement]) -> Poly {
    let one = vec![m[0].field().one()];
    let mut acc = rem(&one, m);
    let base = rem(a, m);
    for bit in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc), m);
        if e.bit(bit) {
            acc = rem(&mul(&acc, &base), m);
        }
    }
    acc
}

pub fn format_poly(v: &[FieldElement], var: &str) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in v.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let monomial = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let (negative, body) = if c.is_atomic() {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        } else if c.is_negative_literal() {
            (true, c.neg_ref().to_string())
        } else {
            (false, format!("({c})"))
        };
        let term = if k == 0 {
            body
        } else if body == "1" {
            monomial
        } else {
            format!("{body}*{monomial}")
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        out.push_str(&term);
    }
    out
}
