//! On-disk formats.
//!
//! JSON files carry the dims, `N`, the field, the basis order (`"lex"`) and
//! the vectors. Exact scalars are strings (`"p/q"`, or `{"re","im"}` for
//! Gaussian rationals); floating values are 17-significant-digit strings and
//! the file is tagged `"approx": true`. CSV (k = 2 only) writes each vector as
//! a `d_1 × d_2` block, blank line between blocks.

use std::str::FromStr;

use ces_core::constructions::{ProductVector, VandermondePoint};
use ces_core::field::{FieldTag, Fp, GaussianRational, Rational, Scalar};
use ces_core::linalg::StateVector;
use ces_core::verify::{Method, Metrics, Parameters, Verdict, VerificationReport, Witness};
use ces_core::Dims;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// A scalar that knows its JSON and CSV spelling.
pub trait WireScalar: Scalar {
    fn to_json(&self) -> Value;
    fn to_csv(&self) -> String;
}

impl WireScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn to_csv(&self) -> String {
        self.to_string()
    }
}

impl WireScalar for GaussianRational {
    fn to_json(&self) -> Value {
        serde_json::json!({ "re": self.re.to_string(), "im": self.im.to_string() })
    }
    fn to_csv(&self) -> String {
        format!("{}+{}i", self.re, self.im)
    }
}

impl WireScalar for Fp {
    fn to_json(&self) -> Value {
        Value::String(self.value().to_string())
    }
    fn to_csv(&self) -> String {
        self.value().to_string()
    }
}

pub fn approx(x: f64) -> String {
    format!("{x:.16e}")
}

impl WireScalar for Complex64 {
    fn to_json(&self) -> Value {
        serde_json::json!({ "re": approx(self.re), "im": approx(self.im) })
    }
    fn to_csv(&self) -> String {
        format!("{}{:+.16e}i", approx(self.re), self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorRecord {
    pub coeffs: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factors: Option<Vec<Vec<Value>>>,
}

impl VectorRecord {
    pub fn state<F: WireScalar>(v: &StateVector<F>) -> Self {
        VectorRecord {
            coeffs: v.coeffs().iter().map(|c| c.to_json()).collect(),
            factors: None,
        }
    }

    pub fn product<F: WireScalar>(v: &ProductVector<F>) -> Self {
        VectorRecord {
            coeffs: v.expand().coeffs().iter().map(|c| c.to_json()).collect(),
            factors: Some(
                v.factors()
                    .iter()
                    .map(|f| f.iter().map(|c| c.to_json()).collect())
                    .collect(),
            ),
        }
    }
}

/// One output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisFile {
    pub dims: Vec<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    pub field: String,
    pub index_order: String,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub approx: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub space: Option<String>,
    pub dim: usize,
    pub vectors: Vec<VectorRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub upb_spec: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<Value>,
}

impl BasisFile {
    pub fn new(dims: &Dims, field: FieldTag, vectors: Vec<VectorRecord>) -> Self {
        BasisFile {
            dims: dims.as_slice().to_vec(),
            n: dims.n_max(),
            field: field.to_string(),
            index_order: "lex".into(),
            approx: field == FieldTag::ComplexApprox,
            space: None,
            dim: vectors.len(),
            vectors,
            upb_spec: None,
            report: None,
        }
    }
}

pub fn to_json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// CSV matrix blocks for `k = 2`.
pub fn to_csv<F: WireScalar>(dims: &Dims, vectors: &[StateVector<F>]) -> Result<String, CliError> {
    if dims.k() != 2 {
        return Err(CliError::Invalid(format!("csv output needs k = 2, got dims {dims}")));
    }
    let cols = dims.as_slice()[1];
    let blocks: Vec<String> = vectors
        .iter()
        .map(|v| {
            v.coeffs()
                .chunks(cols)
                .map(|row| row.iter().map(|c| c.to_csv()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n")
        })
        .collect();
    let mut out = blocks.join("\n\n");
    out.push('\n');
    Ok(out)
}

/// Vectors read back from a [`BasisFile`].
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedVectors {
    Rational(Vec<StateVector<Rational>>),
    Gaussian(Vec<StateVector<GaussianRational>>),
    Fp(u64, Vec<StateVector<Fp>>),
}

fn parse_rational(v: &Value) -> Result<Rational, CliError> {
    let s = v
        .as_str()
        .ok_or_else(|| CliError::Invalid(format!("expected a scalar string, got {v}")))?;
    Rational::from_str(s).map_err(|e| CliError::Invalid(format!("bad rational {s:?}: {e}")))
}

fn parse_gaussian(v: &Value) -> Result<GaussianRational, CliError> {
    let part = |k: &str| {
        v.get(k)
            .ok_or_else(|| CliError::Invalid(format!("missing {k:?} in {v}")))
            .and_then(parse_rational)
    };
    Ok(GaussianRational::new(part("re")?, part("im")?))
}

pub fn parse_basis(file: &BasisFile) -> Result<(Dims, ParsedVectors), CliError> {
    let dims = Dims::new(file.dims.clone()).map_err(|e| CliError::Invalid(e.to_string()))?;
    if file.index_order != "lex" {
        return Err(CliError::Invalid(format!("unknown index order {:?}", file.index_order)));
    }
    fn build<F: Scalar>(
        dims: &Dims,
        file: &BasisFile,
        parse: impl Fn(&Value) -> Result<F, CliError>,
    ) -> Result<Vec<StateVector<F>>, CliError> {
        file.vectors
            .iter()
            .map(|r| {
                let coeffs = r.coeffs.iter().map(&parse).collect::<Result<Vec<F>, _>>()?;
                StateVector::new(dims, coeffs).map_err(|e| CliError::Invalid(e.to_string()))
            })
            .collect()
    }
    let parsed = match parse_field(&file.field)? {
        FieldTag::Rational => ParsedVectors::Rational(build(&dims, file, parse_rational)?),
        FieldTag::Gaussian => ParsedVectors::Gaussian(build(&dims, file, parse_gaussian)?),
        FieldTag::Fp(p) => ParsedVectors::Fp(
            p,
            build(&dims, file, |v| {
                let r = parse_rational(v)?;
                if !r.is_integer() {
                    return Err(CliError::Invalid(format!("non-integer residue {r}")));
                }
                Ok(Fp::new(r.to_integer().try_into().map_err(|_| CliError::Invalid("residue too large".into()))?, p))
            })?,
        ),
        FieldTag::ComplexApprox => {
            return Err(CliError::Invalid("approximate vectors are not parsed back".into()))
        }
    };
    Ok((dims, parsed))
}

/// `rational`, `gaussian`, `fp(p)` / `fp:p`, or `complex64-approx`.
pub fn parse_field(s: &str) -> Result<FieldTag, CliError> {
    match s {
        "rational" => Ok(FieldTag::Rational),
        "gaussian" => Ok(FieldTag::Gaussian),
        "complex64-approx" => Ok(FieldTag::ComplexApprox),
        _ => {
            let p = s
                .strip_prefix("fp(")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| s.strip_prefix("fp:"))
                .ok_or_else(|| CliError::Invalid(format!("unknown field {s:?}")))?;
            let p: u64 = p
                .parse()
                .map_err(|_| CliError::Invalid(format!("bad modulus in {s:?}")))?;
            if !ces_core::field::is_prime(p) {
                return Err(CliError::Invalid(format!("{p} is not prime")));
            }
            Ok(FieldTag::Fp(p))
        }
    }
}

pub fn point_json<F: WireScalar>(p: &VandermondePoint<F>) -> Value {
    match p {
        VandermondePoint::Finite(x) => x.to_json(),
        VandermondePoint::Infinity => Value::String("inf".into()),
    }
}

fn witness_json(w: &Witness) -> Value {
    let rec = match w {
        Witness::Exact(v) => VectorRecord::product(v),
        Witness::Approx(v) => VectorRecord::product(v),
    };
    serde_json::to_value(rec).expect("serializable")
}

pub fn report_json(r: &VerificationReport) -> Value {
    let method = match r.method {
        Method::FiniteField => "finite-field",
        Method::Als => "als",
    };
    let parameters = match &r.parameters {
        Parameters::FiniteField { prime, budget } => {
            serde_json::json!({ "prime": prime, "budget": budget.to_string() })
        }
        Parameters::Als(p) => serde_json::json!({
            "restarts": p.restarts,
            "max_sweeps": p.max_sweeps,
            "tol": approx(p.tol),
            "seed": p.seed,
            "witness_margin": approx(p.witness_margin),
        }),
    };
    let verdict = match r.verdict {
        Verdict::NoProductVectorFound => "no-product-vector-found",
        Verdict::WitnessFound => "witness-found",
    };
    let metrics = match &r.metrics {
        Metrics::FiniteField { enumerated } => serde_json::json!({
            "enumerated": enumerated.to_string(),
            "witness_count": r.witnesses.len(),
        }),
        Metrics::Als {
            best_overlap,
            best_restart,
            total_sweeps,
        } => serde_json::json!({
            "best_overlap": approx(*best_overlap),
            "approx": true,
            "best_restart": best_restart,
            "total_sweeps": total_sweeps,
        }),
    };
    let dims: Vec<Value> = r
        .certified_dims
        .iter()
        .map(|(f, d)| serde_json::json!({ "field": f.to_string(), "dim": d }))
        .collect();
    serde_json::json!({
        "method": method,
        "parameters": parameters,
        "verdict": verdict,
        "witnesses": r.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
        "metrics": metrics,
        "certified_dims": dims,
    })
}
