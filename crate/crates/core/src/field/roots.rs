//! Roots of univariate polynomials in their coefficient field.
//!
//! Used for modulus irreducibility checks and for deciding whether a
//! minimal polynomial of degree at most 3 is irreducible.
//!
//! * prime fields: distinct-root gcd with `x^p - x` followed by
//!   equal-degree splitting;
//! * rationals: integer roots of the scaled monic polynomial, found mod a
//!   small prime and Hensel-lifted;
//! * function fields `K(s)`: the same idea with `s - s0` in place of the
//!   prime, lifting roots of the specialization at `s = s0`;
//! * small finite extensions: enumeration.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{self, Poly};
use super::{is_prime, Field, FieldElement, FieldError, FieldKind};

const ENUMERATION_LIMIT: u64 = 100_000;

/// Distinct roots of `p` in `field`, in no particular order.
pub fn roots(field: &Field, p: &[FieldElement]) -> Result<Vec<FieldElement>, FieldError> {
    let mut f: Poly = p.to_vec();
    poly::trim(&mut f);
    if f.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(field.zero());
        f.drain(..zeros);
    }
    if f.len() > 1 {
        let g = poly::gcd(field, &f, &poly::derivative(&f));
        let sqf = poly::monic(&poly::div_exact(&f, &g));
        out.extend(nonzero_roots(field, &sqf)?);
    }
    Ok(out)
}

/// True when a polynomial of degree 1..=3 has no root, i.e. is irreducible.
pub fn is_irreducible_low_degree(field: &Field, p: &[FieldElement]) -> Result<bool, FieldError> {
    match poly::degree(p) {
        Some(1) => Ok(true),
        Some(2) | Some(3) => Ok(roots(field, p)?.is_empty()),
        Some(d) => Err(FieldError::UnsupportedDegree(d)),
        None => Ok(false),
    }
}

/// Roots of a monic squarefree polynomial with nonzero constant term.
fn nonzero_roots(field: &Field, f: &[FieldElement]) -> Result<Vec<FieldElement>, FieldError> {
    if f.len() == 2 {
        return Ok(vec![f[0].neg_ref()]);
    }
    match field.kind() {
        FieldKind::Prime(p) => Ok(prime_roots(field, *p, f)),
        FieldKind::Rationals => Ok(rational_roots(field, f)),
        FieldKind::FunctionField { base, .. } => function_field_roots(field, base, f),
        FieldKind::Extension { .. } => {
            let all = elements(field).ok_or_else(|| FieldError::Unsupported(field.to_string()))?;
            Ok(all.into_iter().filter(|x| poly::eval(f, x).is_zero()).collect())
        }
    }
}

/// All elements of a small finite field.
pub fn elements(field: &Field) -> Option<Vec<FieldElement>> {
    if field.order()? > ENUMERATION_LIMIT {
        return None;
    }
    match field.kind() {
        FieldKind::Prime(p) => Some((0..*p).map(|i| field.from_i64(i as i64)).collect()),
        FieldKind::Extension { base, modulus, .. } => {
            let base_elems = elements(base)?;
            let deg = modulus.len() - 1;
            let mut acc: Vec<Poly> = vec![Vec::new()];
            for _ in 0..deg {
                let mut next = Vec::with_capacity(acc.len() * base_elems.len());
                for prefix in &acc {
                    for b in &base_elems {
                        let mut v = prefix.clone();
                        v.push(b.clone());
                        next.push(v);
                    }
                }
                acc = next;
            }
            Some(acc.into_iter().map(|v| field.from_poly(v)).collect())
        }
        _ => None,
    }
}

fn prime_roots(field: &Field, p: u64, f: &[FieldElement]) -> Vec<FieldElement> {
    // x^p - x mod f isolates the product of the linear factors
    let x = vec![field.zero(), field.one()];
    let xp = poly::pow_mod(&x, &BigUint::from(p), f);
    let g = poly::gcd(field, &poly::sub(&xp, &x), f);
    let mut out = Vec::new();
    split_linear(field, p, &g, &mut out);
    out
}

fn split_linear(field: &Field, p: u64, g: &[FieldElement], out: &mut Vec<FieldElement>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(g[0].neg_ref()),
        _ => {
            let e = BigUint::from((p - 1) / 2);
            for delta in 0..p {
                let shifted = vec![field.from_i64(delta as i64), field.one()];
                let h = poly::pow_mod(&shifted, &e, g);
                let h = poly::gcd(field, &poly::sub(&h, &[field.one()]), g);
                if h.len() > 1 && h.len() < g.len() {
                    let other = poly::div_exact(g, &h);
                    split_linear(field, p, &h, out);
                    split_linear(field, p, &other, out);
                    return;
                }
            }
        }
    }
}

fn big_eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

fn rational_roots(field: &Field, f: &[FieldElement]) -> Vec<FieldElement> {
    let n = f.len() - 1;
    let coeffs: Vec<_> = f.iter().map(|c| c.to_rational().unwrap().clone()).collect();
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let lead = ints[n].clone();
    // y = lead * x is an integer root of the monic polynomial g
    let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
    for (i, c) in ints.iter().enumerate().take(n) {
        g.push(c * num_traits::pow(lead.clone(), n - 1 - i));
    }
    g.push(BigInt::one());
    let bound: BigInt = g.iter().map(|c| c.abs()).max().unwrap() + 1;
    let dg: Vec<BigInt> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    let mut prime = 5u64;
    let modp_roots = loop {
        if is_prime(prime) {
            let pf = Field::prime(prime).expect("prime >= 5");
            let gp: Poly = g.iter().map(|c| pf.from_bigint(c)).collect();
            let dgp = poly::derivative(&gp);
            if poly::gcd(&pf, &gp, &dgp).len() == 1 {
                let rs = prime_roots(&pf, prime, &gp);
                break rs;
            }
        }
        prime += 1;
    };
    let p = BigInt::from(prime);
    let target = &bound * 2;
    let mut out = Vec::new();
    for r in modp_roots {
        let mut y = BigInt::from(r.to_residue().unwrap());
        let mut m = p.clone();
        while m <= target {
            m = &m * &m;
            let d = big_eval(&dg, &y);
            let Some(dinv) = mod_inverse(&d, &m) else { break };
            y = (&y - big_eval(&g, &y) * dinv).mod_floor(&m);
        }
        if y > &m / 2 {
            y -= &m;
        }
        if big_eval(&g, &y).is_zero() {
            let q = num_rational::BigRational::new(y, lead.clone());
            out.push(field.from_rational(&q).expect("nonzero denominator"));
        }
    }
    out
}

fn trunc_mul(a: &[FieldElement], b: &[FieldElement], n: usize) -> Poly {
    let mut prod = poly::mul(a, b);
    prod.truncate(n);
    poly::trim(&mut prod);
    prod
}

fn specialization_points(base: &Field) -> Result<Vec<FieldElement>, FieldError> {
    match base.kind() {
        FieldKind::Rationals => Ok((0..101)
            .map(|i: i64| base.from_i64(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }))
            .collect()),
        _ => elements(base).ok_or_else(|| FieldError::Unsupported(format!("{base}(s)"))),
    }
}

fn function_field_roots(
    field: &Field,
    base: &Field,
    f: &[FieldElement],
) -> Result<Vec<FieldElement>, FieldError> {
    let n = f.len() - 1;
    let fracs: Vec<(Poly, Poly)> = f
        .iter()
        .map(|c| {
            let (num, den) = c.fraction().unwrap();
            (num.to_vec(), den.to_vec())
        })
        .collect();
    let mut denom: Poly = vec![base.one()];
    for (_, d) in &fracs {
        let g = poly::gcd(base, &denom, d);
        denom = poly::mul(&denom, &poly::div_exact(d, &g));
    }
    let ints: Vec<Poly> = fracs
        .iter()
        .map(|(num, d)| poly::mul(num, &poly::div_exact(&denom, d)))
        .collect();
    // y = denom * x is a root of the monic g with polynomial coefficients,
    // hence itself a polynomial of degree at most max deg g_i
    let mut g: Vec<Poly> = Vec::with_capacity(n + 1);
    let mut power: Poly = vec![base.one()];
    let mut powers = vec![power.clone()];
    for _ in 1..n {
        power = poly::mul(&power, &denom);
        powers.push(power.clone());
    }
    for (i, c) in ints.iter().enumerate().take(n) {
        g.push(poly::mul(c, &powers[n - 1 - i]));
    }
    g.push(vec![base.one()]);
    let bound = g.iter().map(|c| c.len()).max().unwrap_or(1);

    for s0 in specialization_points(base)? {
        let special: Poly = {
            let mut v: Poly = g.iter().map(|c| poly::eval(c, &s0)).collect();
            poly::trim(&mut v);
            v
        };
        let dspecial = poly::derivative(&special);
        if poly::gcd(base, &special, &dspecial).len() != 1 {
            continue;
        }
        let start = roots(base, &special)?;
        let shifted: Vec<Poly> = g.iter().map(|c| poly::shift(c, &s0)).collect();
        let mut out = Vec::new();
        for rho in start {
            let dinv = poly::eval(&dspecial, &rho).inv()?;
            let mut y: Poly = vec![rho.clone()];
            for k in 1..=bound {
                let mut acc: Poly = vec![base.one()];
                for c in shifted[..n].iter().rev() {
                    acc = poly::add(&trunc_mul(&acc, &y, k + 1), c);
                    acc.truncate(k + 1);
                    poly::trim(&mut acc);
                }
                let ck = acc.get(k).cloned().unwrap_or_else(|| base.zero());
                y.resize(k, base.zero());
                y.push(ck.mul_ref(&dinv).neg_ref());
                poly::trim(&mut y);
            }
            let ys = poly::shift(&y, &s0.neg_ref());
            let candidate = field.from_fraction(ys, denom.clone());
            if poly::eval(f, &candidate).is_zero() {
                out.push(candidate);
            }
        }
        return Ok(out);
    }
    Err(FieldError::Unsupported(format!(
        "{field}: no squarefree specialization found"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_poly(field: &Field, cs: &[&str]) -> Poly {
        cs.iter().map(|c| field.parse(c).unwrap()).collect()
    }

    fn sorted_strings(v: &[FieldElement]) -> Vec<String> {
        let mut s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        s.sort();
        s
    }

    #[test]
    fn rational_roots_found() {
        let q = Field::rationals();
        // (2x - 3)(x + 5)(7x - 1) = 14x^3 + 47x^2 - 112x + 15
        let f = parse_poly(&q, &["15", "-112", "47", "14"]);
        assert_eq!(sorted_strings(&roots(&q, &f).unwrap()), vec!["-5", "1/7", "3/2"]);
        let g = parse_poly(&q, &["-1", "-2", "1", "1"]);
        assert!(roots(&q, &g).unwrap().is_empty());
    }

    #[test]
    fn large_rational_roots() {
        let q = Field::rationals();
        let r1 = q.parse("123456789/1000003").unwrap();
        let r2 = q.parse("-987654321987").unwrap();
        let f = poly::mul(
            &vec![r1.neg_ref(), q.one()],
            &vec![r2.neg_ref(), q.one()],
        );
        let f = poly::mul(&f, &parse_poly(&q, &["1", "0", "1"]));
        let rs = roots(&q, &f).unwrap();
        assert_eq!(rs.len(), 2);
        assert!(rs.contains(&r1) && rs.contains(&r2));
    }

    #[test]
    fn repeated_and_zero_roots() {
        let q = Field::rationals();
        // x^2 (x-1)^2
        let f = parse_poly(&q, &["0", "0", "1", "-2", "1"]);
        assert_eq!(sorted_strings(&roots(&q, &f).unwrap()), vec!["0", "1"]);
    }

    #[test]
    fn prime_field_roots() {
        let f7 = Field::prime(7).unwrap();
        // x^3 - 1 over F7 splits: 1, 2, 4
        let f = parse_poly(&f7, &["-1", "0", "0", "1"]);
        assert_eq!(sorted_strings(&roots(&f7, &f).unwrap()), vec!["1", "2", "4"]);
        let big = Field::prime(1_000_003).unwrap();
        let f = parse_poly(&big, &["-6", "11", "-6", "1"]);
        assert_eq!(sorted_strings(&roots(&big, &f).unwrap()), vec!["1", "2", "3"]);
    }

    #[test]
    fn function_field_roots_found() {
        let q = Field::rationals();
        let qs = Field::function_field(&q, "s");
        let r = qs.parse("(s^2+1)/(s-3)").unwrap();
        let t = qs.parse("s").unwrap();
        // (x - r)(x^2 - s), the quadratic factor has no root in Q(s)
        let f = poly::mul(&vec![r.neg_ref(), qs.one()], &vec![t.neg_ref(), qs.zero(), qs.one()]);
        let rs = roots(&qs, &f).unwrap();
        assert_eq!(rs, vec![r]);
        let cubic = vec![qs.parse("-2*s").unwrap(), qs.zero(), qs.zero(), qs.one()];
        assert!(is_irreducible_low_degree(&qs, &cubic).unwrap());
    }

    #[test]
    fn extension_roots_by_enumeration() {
        let f7 = Field::prime(7).unwrap();
        let f49 = Field::extension(&f7, parse_poly(&f7, &["1", "0", "1"]), "i").unwrap();
        // x^2 + 1 has roots +-i in F49
        let f = parse_poly(&f49, &["1", "0", "1"]);
        assert_eq!(roots(&f49, &f).unwrap().len(), 2);
    }
}
