//! Strict JSON run configuration and algebra construction.

use std::path::{Path, PathBuf};

use albert_core::albert::{NormedJordan, ReducedAlbert, TitsFirstAlbert};
use albert_core::composition::CompositionAlgebra;
use albert_core::csa3::DegreeThreeAlgebra;
use albert_core::error::AlgebraError;
use albert_core::field::{Field, FieldSpec};
use albert_core::fixtures::{self, Fixture};
use albert_core::jordan::JordanAlgebra;
use albert_core::table::{AlgebraTable, TableJson};
use albert_core::tagged::{self, NoFields, Tagged};
use serde::de::MapAccess;
use serde::{Deserialize, Deserializer, Serialize};
use serde_path_to_error::Segment;

use crate::error::CtlError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Named fixture; replaces `field` and `algebra`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub suites: Vec<SuiteSpec>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AlgebraSpec {
    Tits1 {
        #[serde(rename = "D")]
        d: DegreeThreeSpec,
        mu: String,
    },
    H3 {
        #[serde(rename = "C")]
        c: CompositionSpec,
        gamma: [String; 3],
    },
    PlusOfMatrix3 {},
    /// A structure-constant table in the format written by `build`.
    /// Relative paths resolve against the config file's directory.
    Table { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DegreeThreeSpec {
    Matrix3 {},
    /// `(L/K, σ, b)` with `L = K[var]/(modulus)`, coefficients low to high.
    Cyclic {
        modulus: Vec<String>,
        var: String,
        sigma: String,
        b: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CompositionSpec {
    Zorn {},
    /// Iterated doubling of the base field.
    CayleyDickson { params: Vec<String> },
}

// Payloads of the tagged variants, so that errors inside them keep their
// JSON path.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Tits1Payload {
    #[serde(rename = "D")]
    d: DegreeThreeSpec,
    mu: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct H3Payload {
    #[serde(rename = "C")]
    c: CompositionSpec,
    gamma: [String; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TablePayload {
    path: PathBuf,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclicPayload {
    modulus: Vec<String>,
    #[serde(default = "default_var")]
    var: String,
    sigma: String,
    b: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CayleyDicksonPayload {
    params: Vec<String>,
}

fn default_var() -> String {
    "x".to_string()
}

impl<'de> Tagged<'de> for AlgebraSpec {
    const KINDS: &'static [&'static str] = &["tits1", "h3", "plus-of-matrix3", "table"];

    fn variant<M: MapAccess<'de>>(kind: &str, rest: M) -> Result<Self, M::Error> {
        Ok(match kind {
            "tits1" => {
                let p: Tits1Payload = tagged::payload(rest)?;
                AlgebraSpec::Tits1 { d: p.d, mu: p.mu }
            }
            "h3" => {
                let p: H3Payload = tagged::payload(rest)?;
                AlgebraSpec::H3 { c: p.c, gamma: p.gamma }
            }
            "plus-of-matrix3" => {
                tagged::payload::<_, NoFields>(rest)?;
                AlgebraSpec::PlusOfMatrix3 {}
            }
            _ => AlgebraSpec::Table {
                path: tagged::payload::<_, TablePayload>(rest)?.path,
            },
        })
    }
}

impl<'de> Tagged<'de> for DegreeThreeSpec {
    const KINDS: &'static [&'static str] = &["matrix3", "cyclic"];

    fn variant<M: MapAccess<'de>>(kind: &str, rest: M) -> Result<Self, M::Error> {
        Ok(match kind {
            "matrix3" => {
                tagged::payload::<_, NoFields>(rest)?;
                DegreeThreeSpec::Matrix3 {}
            }
            _ => {
                let p: CyclicPayload = tagged::payload(rest)?;
                DegreeThreeSpec::Cyclic {
                    modulus: p.modulus,
                    var: p.var,
                    sigma: p.sigma,
                    b: p.b,
                }
            }
        })
    }
}

impl<'de> Tagged<'de> for CompositionSpec {
    const KINDS: &'static [&'static str] = &["zorn", "cayley-dickson"];

    fn variant<M: MapAccess<'de>>(kind: &str, rest: M) -> Result<Self, M::Error> {
        Ok(match kind {
            "zorn" => {
                tagged::payload::<_, NoFields>(rest)?;
                CompositionSpec::Zorn {}
            }
            _ => CompositionSpec::CayleyDickson {
                params: tagged::payload::<_, CayleyDicksonPayload>(rest)?.params,
            },
        })
    }
}

macro_rules! tagged_deserialize {
    ($($t:ty),*) => {$(
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                tagged::deserialize(d)
            }
        }
    )*};
}

tagged_deserialize!(AlgebraSpec, DegreeThreeSpec, CompositionSpec);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Jordan,
    Norm,
    Similarity,
    Isotopy,
    Isotope,
    Components,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Jordan => "jordan",
            SuiteName::Norm => "norm",
            SuiteName::Similarity => "similarity",
            SuiteName::Isotopy => "isotopy",
            SuiteName::Isotope => "isotope",
            SuiteName::Components => "components",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    pub name: SuiteName,
    pub samples: u64,
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Parses and validates a config. Schema violations report the JSON
/// pointer of the offending value.
pub fn parse_config(text: &str) -> Result<RunConfig, CtlError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| CtlError::Schema {
        pointer: pointer(e.path()),
        message: e.inner().to_string(),
    })?;
    validate(&cfg)?;
    Ok(cfg)
}

fn schema(pointer: &str, message: &str) -> CtlError {
    CtlError::Schema {
        pointer: pointer.to_string(),
        message: message.to_string(),
    }
}

fn validate(cfg: &RunConfig) -> Result<(), CtlError> {
    let field = cfg.field.as_ref().map(Field::from_spec).transpose()?;
    match (&cfg.fixture, &cfg.algebra) {
        (Some(name), None) => {
            if cfg.field.is_some() {
                return Err(schema("/field", "a fixture fixes its own field"));
            }
            if !fixtures::NAMES.contains(&name.as_str()) {
                return Err(CtlError::UnknownFixture(name.clone()));
            }
        }
        (Some(_), Some(_)) => return Err(schema("/algebra", "give either a fixture or an algebra")),
        (None, None) => return Err(schema("", "missing fixture or algebra")),
        (None, Some(AlgebraSpec::Table { .. })) => {}
        (None, Some(_)) => {
            if cfg.field.is_none() {
                return Err(schema("/field", "missing field"));
            }
        }
    }
    if let Some(AlgebraSpec::H3 {
        c: CompositionSpec::CayleyDickson { params },
        ..
    }) = &cfg.algebra
    {
        if params.len() != 3 {
            return Err(schema(
                "/algebra/C/params",
                "h3 needs an 8-dimensional composition algebra (three doubling parameters)",
            ));
        }
    }
    if matches!(cfg.algebra, Some(AlgebraSpec::Table { .. })) {
        if let Some(i) = cfg.suites.iter().position(|s| s.name == SuiteName::Components) {
            return Err(schema(
                &format!("/suites/{i}/name"),
                "the components suite needs a constructed algebra, not a table",
            ));
        }
    }
    // unsupported characteristics, bad moduli and zero parameters fail here
    if let (Some(field), Some(algebra)) = (field, &cfg.algebra) {
        let nonzero = |text: &str, what: &str| -> Result<(), CtlError> {
            if field.parse(text)?.is_zero() {
                return Err(AlgebraError::DegenerateParameter(format!("{what} is zero")).into());
            }
            Ok(())
        };
        match algebra {
            AlgebraSpec::Tits1 { d, mu } => {
                nonzero(mu, "mu")?;
                if let DegreeThreeSpec::Cyclic { b, .. } = d {
                    nonzero(b, "b")?;
                }
            }
            AlgebraSpec::H3 { c, gamma } => {
                for (i, g) in gamma.iter().enumerate() {
                    nonzero(g, &format!("gamma{}", i + 1))?;
                }
                if let CompositionSpec::CayleyDickson { params } = c {
                    for p in params {
                        nonzero(p, "doubling parameter")?;
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

pub fn load_config(path: &Path) -> Result<RunConfig, CtlError> {
    let text = std::fs::read_to_string(path).map_err(|e| CtlError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

/// A constructed algebra ready for the suites.
pub enum Built {
    Tits(TitsFirstAlbert),
    Reduced(ReducedAlbert),
    Plus {
        d: DegreeThreeAlgebra,
        jordan: JordanAlgebra,
    },
    Table(JordanAlgebra),
}

impl Built {
    pub fn normed(&self) -> &dyn NormedJordan {
        match self {
            Built::Tits(a) => a,
            Built::Reduced(a) => a,
            Built::Plus { jordan, .. } => jordan,
            Built::Table(j) => j,
        }
    }

    pub fn jordan(&self) -> &JordanAlgebra {
        self.normed().jordan()
    }

    pub fn field(&self) -> &Field {
        self.jordan().field()
    }

    /// The degree-3 algebra whose `tilde` and `cross` the CLI exposes.
    pub fn degree_three(&self) -> Option<&DegreeThreeAlgebra> {
        match self {
            Built::Tits(a) => Some(a.d()),
            Built::Plus { d, .. } => Some(d),
            _ => None,
        }
    }
}

impl From<Fixture> for Built {
    fn from(f: Fixture) -> Self {
        match f {
            Fixture::Tits(a) => Built::Tits(a),
            Fixture::Reduced(a) => Built::Reduced(a),
        }
    }
}

pub fn build_fixture(name: &str) -> Result<Built, CtlError> {
    match fixtures::by_name(name) {
        Some(r) => Ok(r?.into()),
        None => Err(CtlError::UnknownFixture(name.to_string())),
    }
}

/// Constructs the configured algebra; `base_dir` anchors relative table
/// paths.
pub fn build(cfg: &RunConfig, base_dir: &Path) -> Result<Built, CtlError> {
    if let Some(name) = &cfg.fixture {
        return build_fixture(name);
    }
    let spec = cfg.algebra.as_ref().ok_or_else(|| schema("", "missing fixture or algebra"))?;
    if let AlgebraSpec::Table { path } = spec {
        let path = base_dir.join(path);
        let text = std::fs::read_to_string(&path).map_err(|e| CtlError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        let json: TableJson = serde_json::from_str(&text).map_err(|e| CtlError::Schema {
            pointer: "/algebra/path".into(),
            message: format!("{}: {e}", path.display()),
        })?;
        if let Some(f) = &cfg.field {
            if f != &json.field {
                return Err(schema("/field", "field differs from the table's field"));
            }
        }
        let table = AlgebraTable::from_json(&json)?;
        return Ok(Built::Table(JordanAlgebra::new(table)?));
    }
    let field = Field::from_spec(cfg.field.as_ref().ok_or_else(|| schema("/field", "missing field"))?)?;
    Ok(match spec {
        AlgebraSpec::Tits1 { d, mu } => {
            Built::Tits(TitsFirstAlbert::new(degree_three(&field, d)?, &field.parse(mu)?)?)
        }
        AlgebraSpec::H3 { c, gamma } => {
            let c = match c {
                CompositionSpec::Zorn {} => CompositionAlgebra::zorn_split(&field),
                CompositionSpec::CayleyDickson { params } => {
                    let ps = params.iter().map(|p| field.parse(p)).collect::<Result<Vec<_>, _>>()?;
                    CompositionAlgebra::doubled(&field, &ps)?
                }
            };
            let g = [field.parse(&gamma[0])?, field.parse(&gamma[1])?, field.parse(&gamma[2])?];
            Built::Reduced(ReducedAlbert::new(c, g)?)
        }
        AlgebraSpec::PlusOfMatrix3 {} => {
            let d = DegreeThreeAlgebra::matrix3(&field);
            let jordan = JordanAlgebra::plus_construction(d.table())?;
            Built::Plus { d, jordan }
        }
        AlgebraSpec::Table { .. } => unreachable!("handled above"),
    })
}

fn degree_three(field: &Field, spec: &DegreeThreeSpec) -> Result<DegreeThreeAlgebra, CtlError> {
    match spec {
        DegreeThreeSpec::Matrix3 {} => Ok(DegreeThreeAlgebra::matrix3(field)),
        DegreeThreeSpec::Cyclic { modulus, var, sigma, b } => {
            let coeffs = modulus.iter().map(|c| field.parse(c)).collect::<Result<Vec<_>, _>>()?;
            let l = Field::extension(field, coeffs, var)?;
            Ok(DegreeThreeAlgebra::cyclic(&l, &l.parse(sigma)?, &field.parse(b)?)?)
        }
    }
}
