//! Named reference constructions shared by tests and the CLI.
//!
//! The cyclic algebras use the simplest cubic field `L = K[x]/(x³+x²−2x−1)`
//! (the real subfield of the 7th cyclotomic field), its generator
//! `σ(x) = x²−2`, and `b = 2`. Over `ℚ` the algebra `(L/ℚ, σ, 2)` is a
//! division algebra because 2 is inert in `L` and so is not a norm.

use crate::albert::{ReducedAlbert, TitsFirstAlbert};
use crate::composition::CompositionAlgebra;
use crate::csa3::DegreeThreeAlgebra;
use crate::error::Result;
use crate::field::Field;

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 5] = ["split-f7", "split-q", "h3-zorn", "cyclic7-q", "division-qs"];

/// The algebra behind a named fixture.
pub enum Fixture {
    Tits(TitsFirstAlbert),
    Reduced(ReducedAlbert),
}

/// `L = base[x]/(x³+x²−2x−1)`.
pub fn cyclic7_field(base: &Field) -> Result<Field> {
    let modulus = [-1, -2, 1, 1].iter().map(|&c| base.from_i64(c)).collect();
    Ok(Field::extension(base, modulus, "x")?)
}

/// `(L/K, σ, 2)` with `σ(x) = x²−2`.
pub fn cyclic7(base: &Field) -> Result<DegreeThreeAlgebra> {
    let l = cyclic7_field(base)?;
    let sigma = l.parse("x^2-2")?;
    DegreeThreeAlgebra::cyclic(&l, &sigma, &base.from_i64(2))
}

/// `J(M₃(K), 1)`.
pub fn split(base: &Field) -> Result<TitsFirstAlbert> {
    TitsFirstAlbert::new(DegreeThreeAlgebra::matrix3(base), &base.one())
}

/// `J((L/K, σ, 2), μ)`.
pub fn cyclic_tits(base: &Field, mu: &str) -> Result<TitsFirstAlbert> {
    TitsFirstAlbert::new(cyclic7(base)?, &base.parse(mu)?)
}

/// `ℚ(s)`.
pub fn rational_function_field() -> Field {
    Field::function_field(&Field::rationals(), "s")
}

/// `J((L/ℚ, σ, 2) ⊗ ℚ(s), s)`.
pub fn division_qs() -> Result<TitsFirstAlbert> {
    cyclic_tits(&rational_function_field(), "s")
}

/// `H₃(Zorn(K), (1,1,1))`.
pub fn h3_zorn(base: &Field) -> Result<ReducedAlbert> {
    ReducedAlbert::new(
        CompositionAlgebra::zorn_split(base),
        [base.one(), base.one(), base.one()],
    )
}

pub fn by_name(name: &str) -> Option<Result<Fixture>> {
    let q = Field::rationals;
    let built = match name {
        "split-f7" => Field::prime(7)
            .map_err(Into::into)
            .and_then(|f| split(&f))
            .map(Fixture::Tits),
        "split-q" => split(&q()).map(Fixture::Tits),
        "h3-zorn" => h3_zorn(&q()).map(Fixture::Reduced),
        "cyclic7-q" => cyclic_tits(&q(), "2").map(Fixture::Tits),
        "division-qs" => division_qs().map(Fixture::Tits),
        _ => return None,
    };
    Some(built)
}
