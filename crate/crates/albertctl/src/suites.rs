//! Seeded property suites and their JSONL reports.

use std::collections::BTreeMap;
use std::time::Instant;

use albert_core::albert::NormedJordan;
use albert_core::error::AlgebraError;
use albert_core::field::{Field, FieldElement};
use albert_core::jordan::to_strings;
use albert_core::linalg::{self, Vector};
use albert_core::sample::{derive_seed, Sampler};
use albert_core::strops::StructureGroup;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{Built, RunConfig, SuiteName, SuiteSpec};

/// One failed sample with its inputs and observed values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub sample: u64,
    pub detail: String,
    pub values: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: u64,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub seed: u64,
    pub config_fingerprint: String,
    pub wall_time_ms: u64,
}

/// SHA-256 of the compact serialization of the (post-override) config.
pub fn fingerprint(cfg: &RunConfig) -> String {
    let canonical = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

type Check = Result<Option<Failure>, AlgebraError>;

fn failure(sample: u64, detail: &str, values: &[(&str, &[FieldElement])]) -> Option<Failure> {
    Some(Failure {
        sample,
        detail: detail.to_string(),
        values: values.iter().map(|(k, v)| (k.to_string(), to_strings(v))).collect(),
    })
}

fn invertible(a: &dyn NormedJordan, s: &mut Sampler) -> Result<Vector, AlgebraError> {
    let j = a.jordan();
    loop {
        let p = s.vector(j.field(), j.dim());
        if !a.norm(&p)?.is_zero() {
            return Ok(p);
        }
    }
}

/// Runs every configured suite in order.
pub fn run_all(cfg: &RunConfig, built: &Built) -> Vec<SuiteReport> {
    let fp = fingerprint(cfg);
    cfg.suites
        .iter()
        .enumerate()
        .map(|(i, spec)| run_suite(spec, derive_seed(cfg.seed, spec.name.as_str(), i as u64), built, &fp))
        .collect()
}

/// Runs one suite. Errors raised while checking a sample (for instance a
/// corrupted table whose elements have no cubic relation) count as failures
/// of that sample.
pub fn run_suite(spec: &SuiteSpec, seed: u64, built: &Built, fingerprint: &str) -> SuiteReport {
    let start = Instant::now();
    let failures = suite_failures(spec, seed, built).unwrap_or_else(|e| vec![error_failure(0, &e)]);
    SuiteReport {
        suite: spec.name.as_str().to_string(),
        samples: spec.samples,
        passed: failures.is_empty(),
        failures,
        seed,
        config_fingerprint: fingerprint.to_string(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

fn error_failure(sample: u64, e: &AlgebraError) -> Failure {
    Failure {
        sample,
        detail: format!("error: {e}"),
        values: BTreeMap::new(),
    }
}

fn suite_failures(spec: &SuiteSpec, seed: u64, built: &Built) -> Result<Vec<Failure>, AlgebraError> {
    Ok(match spec.name {
        SuiteName::Jordan => jordan(built, spec.samples, seed),
        SuiteName::Norm => sampled(spec.samples, seed, "norm", |t, s| norm(built, t, s))?,
        SuiteName::Similarity => {
            let sg = StructureGroup::new(built.normed())?;
            sampled(spec.samples, seed, "similarity", |t, s| similarity(&sg, t, s))?
        }
        SuiteName::Isotopy => {
            let sg = StructureGroup::new(built.normed())?;
            sampled(spec.samples, seed, "isotopy", |t, s| isotopy(&sg, t, s))?
        }
        SuiteName::Isotope => {
            let mut f = isotope_by_unit(built)?;
            f.extend(sampled(spec.samples, seed, "isotope", |t, s| isotope(built, t, s))?);
            f
        }
        SuiteName::Components => {
            let mut f = splitting(built)?;
            f.extend(sampled(spec.samples, seed, "components", |t, s| components(built, t, s))?);
            f
        }
    })
}

/// Evaluates `check` on independent per-sample streams; failures come back
/// ordered by sample index whatever the thread count.
fn sampled<F>(samples: u64, seed: u64, label: &str, check: F) -> Result<Vec<Failure>, AlgebraError>
where
    F: Fn(u64, &mut Sampler) -> Check + Sync,
{
    let found: Vec<Option<Failure>> = (0..samples)
        .into_par_iter()
        .map(|t| check(t, &mut Sampler::derived(seed, label, t)).unwrap_or_else(|e| Some(error_failure(t, &e))))
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn jordan(built: &Built, samples: u64, seed: u64) -> Vec<Failure> {
    let report = built.jordan().jordan_identity_suite(samples, seed);
    report
        .violations
        .into_iter()
        .map(|v| Failure {
            sample: v.sample,
            detail: "nonzero residual in (xy)(xx) - x(y(xx))".into(),
            values: BTreeMap::from([("x".into(), v.x), ("y".into(), v.y), ("residual".into(), v.residual)]),
        })
        .collect()
}

fn norm(built: &Built, t: u64, s: &mut Sampler) -> Check {
    let a = built.normed();
    let j = a.jordan();
    let f = j.field();
    let x = s.vector(f, j.dim());
    let n = a.norm(&x)?;
    if matches!(built, Built::Tits(_)) {
        let generic = j.norm(&x)?;
        if generic != n {
            return Ok(failure(t, "closed-form norm differs from the generic norm", &[
                ("x", &x),
                ("closed", &[n]),
                ("generic", &[generic]),
            ]));
        }
    }
    let l = s.nonzero_scalar(f);
    let nl = a.norm(&linalg::scale(&l, &x))?;
    if nl != &l.pow(3) * &n {
        return Ok(failure(t, "N(lx) != l^3 N(x)", &[("x", &x), ("l", &[l]), ("N(lx)", &[nl])]));
    }
    let prod = j.mul(&x, &j.adjoint(&x)?);
    if prod != j.table().scalar(&n) {
        return Ok(failure(t, "x * adjoint(x) != N(x) 1", &[("x", &x), ("product", &prod)]));
    }
    Ok(None)
}

fn similarity(sg: &StructureGroup<'_, dyn NormedJordan + '_>, t: u64, s: &mut Sampler) -> Check {
    let a = sg.algebra();
    let f = a.jordan().field().clone();
    let p = invertible(a, s)?;
    let verdict = sg.similarity_check(&a.jordan().u_operator(&p)?)?;
    let expected = a.norm(&p)?.pow(2);
    if verdict.multiplier.as_ref() != Some(&expected) {
        let got: Vec<FieldElement> = verdict.multiplier.into_iter().collect();
        return Ok(failure(t, "U_p is not a similarity with multiplier N(p)^2", &[
            ("p", &p),
            ("multiplier", &got),
        ]));
    }
    let l = s.nonzero_scalar(&f);
    let verdict = sg.similarity_check(&sg.homothety(&l))?;
    if verdict.multiplier != Some(l.pow(3)) {
        return Ok(failure(t, "homothety multiplier is not l^3", &[("l", &[l])]));
    }
    Ok(None)
}

fn isotopy(sg: &StructureGroup<'_, dyn NormedJordan + '_>, t: u64, s: &mut Sampler) -> Check {
    let a = sg.algebra();
    let j = a.jordan();
    let q = invertible(a, s)?;
    let l = s.nonzero_scalar(j.field());
    let g = sg.compose(&sg.homothety(&l), &j.u_operator(&q)?)?;
    let expected = j.inverse(&g.mul_vec(j.unit())?)?;
    match sg.isotopy_decompose(&g)? {
        Some(p) if p == expected => {}
        other => {
            let got = other.unwrap_or_default();
            return Ok(failure(t, "l U_q is not an isotopy onto A^(g(1)^-1)", &[
                ("q", &q),
                ("l", &[l]),
                ("p", &got),
            ]));
        }
    }
    if !sg.similarity_check(&g)?.is_similarity {
        return Ok(failure(t, "isotopy l U_q is not a similarity", &[("q", &q), ("l", &[l])]));
    }
    Ok(None)
}

fn isotope_by_unit(built: &Built) -> Result<Vec<Failure>, AlgebraError> {
    let j = built.jordan();
    if &j.isotope(j.unit())? != j {
        return Ok(failure(0, "isotope by the unit differs from the algebra", &[]).into_iter().collect());
    }
    Ok(Vec::new())
}

fn isotope(built: &Built, t: u64, s: &mut Sampler) -> Check {
    let a = built.normed();
    let j = a.jordan();
    let p = invertible(a, s)?;
    let iso = j.isotope(&p)?;
    let pinv = j.inverse(&p)?;
    if iso.unit() != &pinv {
        return Ok(failure(t, "isotope unit is not p^-1", &[("p", &p), ("unit", iso.unit())]));
    }
    let x = s.vector(j.field(), j.dim());
    let y = s.vector(j.field(), j.dim());
    if iso.mul(&x, &y) != j.isotope_product(&p, &x, &y)? {
        return Ok(failure(t, "isotope table disagrees with x(yp)+y(xp)-(xy)p", &[
            ("p", &p),
            ("x", &x),
            ("y", &y),
        ]));
    }
    let r = iso.jordan_residual(&x, &y);
    if !linalg::is_zero(&r) {
        return Ok(failure(t, "isotope violates the Jordan identity", &[
            ("p", &p),
            ("x", &x),
            ("y", &y),
            ("residual", &r),
        ]));
    }
    Ok(None)
}

fn splitting(built: &Built) -> Result<Vec<Failure>, AlgebraError> {
    let Some(d) = built.degree_three() else {
        return Ok(Vec::new());
    };
    Ok(match d.check_splitting_homomorphism() {
        Ok(()) => Vec::new(),
        Err(AlgebraError::Internal(msg)) => vec![Failure {
            sample: 0,
            detail: msg,
            values: BTreeMap::new(),
        }],
        Err(e) => return Err(e),
    })
}

fn components(built: &Built, t: u64, s: &mut Sampler) -> Check {
    if let Built::Reduced(h) = built {
        let c = h.c();
        let f = c.field();
        let x = s.vector(f, c.dim());
        let y = s.vector(f, c.dim());
        let lhs = c.norm(&c.product(&x, &y)?)?;
        if lhs != &c.norm(&x)? * &c.norm(&y)? {
            return Ok(failure(t, "N(xy) != N(x)N(y)", &[("x", &x), ("y", &y)]));
        }
        let xbar = c.conjugate(&x)?;
        if c.product(&x, &xbar)? != c.table().scalar(&c.norm(&x)?) {
            return Ok(failure(t, "x conj(x) != N(x) 1", &[("x", &x)]));
        }
        return Ok(None);
    }
    let Some(d) = built.degree_three() else {
        return Ok(None);
    };
    let f: &Field = d.field();
    let u = s.vector(f, 9);
    let w = s.vector(f, 9);
    let lhs = d.reduced_norm(&d.product(&u, &w)?)?;
    if lhs != &d.reduced_norm(&u)? * &d.reduced_norm(&w)? {
        return Ok(failure(t, "Nrd(uw) != Nrd(u)Nrd(w)", &[("u", &u), ("w", &w)]));
    }
    let (tr, sq, n) = (d.reduced_trace(&u)?, d.quadratic_trace(&u)?, d.reduced_norm(&u)?);
    let u2 = d.product(&u, &u)?;
    let u3 = d.product(&u2, &u)?;
    let ch = linalg::sub(
        &linalg::add(&linalg::sub(&u3, &linalg::scale(&tr, &u2)), &linalg::scale(&sq, &u)),
        &d.table().scalar(&n),
    );
    if !linalg::is_zero(&ch) {
        return Ok(failure(t, "Cayley-Hamilton residual is nonzero", &[("u", &u), ("residual", &ch)]));
    }
    Ok(None)
}
