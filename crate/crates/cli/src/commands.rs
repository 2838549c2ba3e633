use std::fs;
use std::path::Path;
use std::str::FromStr;

use ces_core::constructions::{
    any_dim_upb, default_points, entangled_generators, example1_space, example2_spaces,
    level_generators, minimal_upb, onb_level, u_generators, ProductVector, UpbSpec,
    VandermondePoint,
};
use ces_core::field::{FieldTag, GaussianRational, Rational};
use ces_core::graded_index::{level_count_closed_form, level_counts};
use ces_core::linalg::{clear_denominators, reduce_mod_p, StateVector, Subspace};
use ces_core::verify::{
    classify_sperp, default_primes, verify_space, verify_upb, AlsParams, UpbCheckOptions,
    UpbVerification, DEFAULT_BUDGET,
};
use ces_core::Dims;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::args::{Cli, Command, DimsFormat, Format, MethodArg, VerifyArgs};
use crate::schema::{self, point_json, report_json, BasisFile, VectorRecord, WireScalar};
use crate::{CliError, Output};

pub fn parse_dims(s: &str) -> Result<Dims, CliError> {
    let d = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Invalid(format!("bad dimension {x:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dims::new(d)?)
}

/// A built-in space selectable with `--space`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    S,
    Sperp,
    Level(i64),
    Example1,
    Example2M,
    Example2Mperp,
    Example2R,
}

impl FromStr for Space {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "S" => Space::S,
            "Sperp" => Space::Sperp,
            "example1" => Space::Example1,
            "example2-M" => Space::Example2M,
            "example2-Mperp" => Space::Example2Mperp,
            "example2-R" => Space::Example2R,
            _ => match s.strip_prefix("level:") {
                Some(n) => Space::Level(
                    n.parse()
                        .map_err(|_| CliError::Invalid(format!("bad level in {s:?}")))?,
                ),
                None => return Err(CliError::Invalid(format!("unknown space {s:?}"))),
            },
        })
    }
}

impl Space {
    fn label(&self) -> String {
        match self {
            Space::S => "S".into(),
            Space::Sperp => "Sperp".into(),
            Space::Level(n) => format!("level:{n}"),
            Space::Example1 => "example1".into(),
            Space::Example2M => "example2-M".into(),
            Space::Example2Mperp => "example2-Mperp".into(),
            Space::Example2R => "example2-R".into(),
        }
    }

    /// Whether the space is known to contain a nonzero product vector.
    fn has_product_vectors(&self) -> bool {
        matches!(self, Space::Sperp | Space::Example2Mperp | Space::Example2R)
    }

    fn resolve_dims(&self, dims: Option<&str>) -> Result<Dims, CliError> {
        match self {
            Space::Example2M | Space::Example2Mperp | Space::Example2R => {
                let fixed = Dims::new(vec![4, 4])?;
                match dims.map(parse_dims).transpose()? {
                    Some(d) if d != fixed => Err(CliError::Invalid(format!(
                        "{} is defined for dims 4,4 only",
                        self.label()
                    ))),
                    _ => Ok(fixed),
                }
            }
            _ => {
                let d = parse_dims(dims.ok_or_else(|| CliError::Invalid("--dims is required".into()))?)?;
                if *self == Space::Example1 && d.k() != 2 {
                    return Err(CliError::Invalid("example1 needs k = 2".into()));
                }
                Ok(d)
            }
        }
    }

    /// Integer generators of the space, and the product vectors when the
    /// space is presented as a product family.
    fn generators(
        &self,
        dims: &Dims,
    ) -> Result<(Vec<StateVector<Rational>>, Option<Vec<ProductVector<Rational>>>), CliError> {
        Ok(match self {
            Space::S => (entangled_generators(dims, &()), None),
            Space::Sperp => (u_generators(dims, &()), None),
            Space::Level(n) => (level_generators(dims, *n, &())?, None),
            Space::Example1 => {
                let d = dims.as_slice();
                let s = example1_space(d[0], d[1])?;
                (clear_denominators(&s.rows().collect::<Vec<_>>()), None)
            }
            Space::Example2M => {
                let ex = example2_spaces();
                (clear_denominators(&ex.m.rows().collect::<Vec<_>>()), None)
            }
            Space::Example2Mperp => {
                let ex = example2_spaces();
                (clear_denominators(&ex.m_perp.rows().collect::<Vec<_>>()), None)
            }
            Space::Example2R => {
                let ex = example2_spaces();
                (ex.r.iter().map(|v| v.expand()).collect(), Some(ex.r))
            }
        })
    }
}

fn emit(text: String, out: Option<&Path>, summary: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
            Ok(summary)
        }
        None => Ok(text),
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Dims { dims, format } => cmd_dims(&parse_dims(&dims)?, format).map(ok),
        Command::Construct {
            dims,
            space,
            field,
            format,
            out,
        } => cmd_construct(dims.as_deref(), &space.parse()?, &field, format, out.as_deref()).map(ok),
        Command::Upb {
            dims,
            size,
            min,
            lambdas,
            verify,
            out,
        } => {
            let dims = parse_dims(&dims)?;
            let size = if min { None } else { size };
            cmd_upb(&dims, size, lambdas.as_deref(), &verify, out.as_deref())
        }
        Command::Verify {
            dims,
            space,
            verify,
            out,
        } => cmd_verify(dims.as_deref(), &space.parse()?, &verify, out.as_deref()),
        Command::Classify { dims, prime } => cmd_classify(&parse_dims(&dims)?, prime),
        Command::Onb { dims, level } => cmd_onb(&parse_dims(&dims)?, level).map(ok),
    }
}

fn ok(stdout: String) -> Output {
    Output { stdout, exit_code: 0 }
}

pub fn cmd_dims(dims: &Dims, format: DimsFormat) -> Result<String, CliError> {
    let a = level_counts(dims);
    let mut cum_a = 0u64;
    let mut cum_s = 0u64;
    let rows: Vec<(usize, u64, u64, u64, u64, Option<u64>)> = a
        .iter()
        .enumerate()
        .map(|(n, &an)| {
            cum_a += an;
            cum_s += an - 1;
            (n, an, an - 1, cum_a, cum_s, level_count_closed_form(dims, n as i64))
        })
        .collect();
    Ok(match format {
        DimsFormat::Table => {
            let mut s = format!(
                "dims {dims}  N = {}  total = {}  dim S = {}  dim Sperp = {}\n",
                dims.n_max(),
                dims.total(),
                dims.entangled_dim(),
                dims.n_max() + 1
            );
            s.push_str("n\ta_n\ta_n-1\tcum_a\tcum_(a_n-1)\tclosed_form\n");
            for (n, an, sn, ca, cs, cf) in rows {
                let cf = cf.map_or("-".to_string(), |v| v.to_string());
                s.push_str(&format!("{n}\t{an}\t{sn}\t{ca}\t{cs}\t{cf}\n"));
            }
            s
        }
        DimsFormat::Json => {
            let levels: Vec<Value> = rows
                .into_iter()
                .map(|(n, an, sn, ca, cs, cf)| {
                    json!({ "n": n, "a_n": an, "s_dim": sn, "cum_a": ca, "cum_s_dim": cs, "closed_form": cf })
                })
                .collect();
            schema::to_json_string(&json!({
                "dims": dims.as_slice(),
                "N": dims.n_max(),
                "total": dims.total(),
                "dim_S": dims.entangled_dim(),
                "dim_Sperp": dims.n_max() + 1,
                "levels": levels,
            }))
        }
    })
}

fn basis_output<F: WireScalar>(
    dims: &Dims,
    tag: FieldTag,
    rows: Vec<StateVector<F>>,
    space: &Space,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Csv => schema::to_csv(dims, &rows),
        Format::Json => {
            let mut file = BasisFile::new(dims, tag, rows.iter().map(VectorRecord::state).collect());
            file.space = Some(space.label());
            Ok(schema::to_json_string(&file))
        }
    }
}

pub fn cmd_construct(
    dims: Option<&str>,
    space: &Space,
    field: &str,
    format: Format,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let dims = space.resolve_dims(dims)?;
    if format == Format::Csv && dims.k() != 2 {
        return Err(CliError::Invalid(format!("csv output needs k = 2, got dims {dims}")));
    }
    let tag = schema::parse_field(field)?;
    let (gens, products) = space.generators(&dims)?;
    let text = match (tag, products) {
        (FieldTag::Rational, Some(products)) => match format {
            Format::Csv => schema::to_csv(&dims, &gens)?,
            Format::Json => {
                let mut file = BasisFile::new(
                    &dims,
                    FieldTag::Rational,
                    products.iter().map(VectorRecord::product).collect(),
                );
                file.space = Some(space.label());
                schema::to_json_string(&file)
            }
        },
        (FieldTag::Rational, None) => {
            let s = Subspace::span(&dims, &(), &gens)?;
            basis_output(&dims, tag, s.rows().collect(), space, format)?
        }
        (FieldTag::Gaussian, _) => {
            let g: Vec<StateVector<GaussianRational>> = gens
                .iter()
                .map(|v| {
                    let c = v
                        .coeffs()
                        .iter()
                        .map(|x| GaussianRational::new(x.clone(), <Rational as Zero>::zero()))
                        .collect();
                    StateVector::new(&dims, c).expect("same shape")
                })
                .collect();
            let s = Subspace::span(&dims, &(), &g)?;
            basis_output(&dims, tag, s.rows().collect(), space, format)?
        }
        (FieldTag::Fp(p), _) => {
            let s = reduce_mod_p(&dims, &gens, p)?;
            basis_output(&dims, tag, s.rows().collect(), space, format)?
        }
        (FieldTag::ComplexApprox, _) => {
            return Err(CliError::Invalid("construct works over exact fields only".into()))
        }
    };
    let summary = format!("wrote {} basis of {} for dims {dims}\n", space.label(), tag);
    emit(text, out, summary)
}

fn parse_points(s: &str) -> Result<Vec<VandermondePoint<Rational>>, CliError> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            if x == "inf" || x == "∞" {
                Ok(VandermondePoint::Infinity)
            } else {
                Rational::from_str(x)
                    .map(VandermondePoint::Finite)
                    .map_err(|_| CliError::Invalid(format!("bad lambda {x:?}")))
            }
        })
        .collect()
}

fn check_options(dims: &Dims, v: &VerifyArgs) -> Result<UpbCheckOptions, CliError> {
    let primes = match &v.primes {
        Some(s) => s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Invalid(format!("bad prime {p:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => default_primes(dims),
    };
    for &p in &primes {
        if !ces_core::field::is_prime(p) {
            return Err(CliError::Invalid(format!("{p} is not prime")));
        }
        if p as usize <= dims.n_max() {
            return Err(CliError::Invalid(format!("prime {p} must exceed N = {}", dims.n_max())));
        }
    }
    if v.restarts == 0 {
        return Err(CliError::Invalid("--restarts must be at least 1".into()));
    }
    let als = AlsParams {
        restarts: v.restarts,
        max_sweeps: v.max_sweeps,
        tol: v.tol,
        seed: v.seed,
        ..AlsParams::default()
    };
    Ok(match v.method {
        MethodArg::Ff => UpbCheckOptions {
            primes,
            budget: DEFAULT_BUDGET,
            als: None,
        },
        MethodArg::Als => UpbCheckOptions {
            primes: Vec::new(),
            budget: DEFAULT_BUDGET,
            als: Some(als),
        },
        MethodArg::Both => UpbCheckOptions {
            primes,
            budget: DEFAULT_BUDGET,
            als: Some(als),
        },
    })
}

fn upb_spec_json(spec: &UpbSpec<Rational>) -> Value {
    json!({
        "size": spec.size,
        "levels": spec.levels,
        "points": spec.points.iter().map(point_json).collect::<Vec<_>>(),
        "dropped": spec
            .dropped
            .iter()
            .map(|(n, idx)| json!({ "level": n, "index": idx.as_slice() }))
            .collect::<Vec<_>>(),
    })
}

fn upb_report_json(v: &UpbVerification) -> Value {
    json!({
        "is_upb": v.is_upb(),
        "count": v.count,
        "rank": v.rank,
        "independent": v.independent,
        "meets_minimum": v.meets_minimum,
        "complement_dim": v.complement_dim,
        "complement_checks": v.complement_checks.iter().map(report_json).collect::<Vec<_>>(),
    })
}

pub fn cmd_upb(
    dims: &Dims,
    size: Option<usize>,
    lambdas: Option<&str>,
    verify: &VerifyArgs,
    out: Option<&Path>,
) -> Result<Output, CliError> {
    let points = lambdas.map(|s| parse_points(s)).transpose()?;
    let opts = check_options(dims, verify)?;
    let (spec, vectors) = match size {
        Some(m) => {
            if dims.k() != 2 {
                return Err(CliError::Invalid(format!(
                    "--size needs k = 2 (dims {dims}); use --min"
                )));
            }
            any_dim_upb(dims, m, points, &())?
        }
        None => {
            let points = points.unwrap_or_else(|| default_points(dims, &()));
            let vectors = minimal_upb(dims, &points, &())?;
            let spec = UpbSpec {
                dims: dims.clone(),
                size: vectors.len(),
                levels: Vec::new(),
                points,
                dropped: Vec::new(),
            };
            (spec, vectors)
        }
    };
    let report = verify_upb(dims, &vectors, &opts)?;
    let mut file = BasisFile::new(
        dims,
        FieldTag::Rational,
        vectors.iter().map(VectorRecord::product).collect(),
    );
    file.space = Some(if size.is_some() { "upb".into() } else { "upb-min".into() });
    file.upb_spec = Some(upb_spec_json(&spec));
    file.report = Some(upb_report_json(&report));
    let summary = format!(
        "{} product vectors for dims {dims}: rank {}, complement dim {}, {}\n",
        vectors.len(),
        report.rank,
        report.complement_dim,
        if report.is_upb() { "unextendible" } else { "NOT unextendible" }
    );
    let stdout = emit(schema::to_json_string(&file), out, summary)?;
    Ok(Output {
        stdout,
        exit_code: if report.is_upb() { 0 } else { 3 },
    })
}

pub fn cmd_verify(
    dims: Option<&str>,
    space: &Space,
    verify: &VerifyArgs,
    out: Option<&Path>,
) -> Result<Output, CliError> {
    let dims = space.resolve_dims(dims)?;
    let opts = check_options(&dims, verify)?;
    let (gens, _) = space.generators(&dims)?;
    let dim = Subspace::span(&dims, &(), &gens)?.dim();
    let reports = verify_space(&dims, &gens, &opts)?;
    let expected = space.has_product_vectors();
    let consistent = reports
        .iter()
        .all(|r| r.found_product_vector() == expected && r.dims_consistent());
    let doc = json!({
        "dims": dims.as_slice(),
        "N": dims.n_max(),
        "index_order": "lex",
        "space": space.label(),
        "dim": dim,
        "expected": if expected { "product-vector" } else { "no-product-vector" },
        "consistent": consistent,
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    let summary = format!(
        "{} for dims {dims}: {} check(s), {}\n",
        space.label(),
        reports.len(),
        if consistent { "as expected" } else { "UNEXPECTED" }
    );
    let stdout = emit(schema::to_json_string(&doc), out, summary)?;
    Ok(Output {
        stdout,
        exit_code: if consistent { 0 } else { 3 },
    })
}

pub fn cmd_classify(dims: &Dims, prime: u64) -> Result<Output, CliError> {
    let rep = classify_sperp(dims, prime, DEFAULT_BUDGET)?;
    let doc = json!({
        "dims": dims.as_slice(),
        "N": dims.n_max(),
        "field": FieldTag::Fp(prime).to_string(),
        "index_order": "lex",
        "pass": rep.passed(),
        "found": rep.found.iter().map(VectorRecord::product).collect::<Vec<_>>(),
        "missing": rep.missing.iter().map(point_json).collect::<Vec<_>>(),
        "extraneous": rep.extraneous.iter().map(VectorRecord::product).collect::<Vec<_>>(),
    });
    Ok(Output {
        stdout: schema::to_json_string(&doc),
        exit_code: if rep.passed() { 0 } else { 3 },
    })
}

pub fn cmd_onb(dims: &Dims, level: i64) -> Result<String, CliError> {
    let basis = onb_level(dims, level)?;
    let mut file = BasisFile::new(
        dims,
        FieldTag::ComplexApprox,
        basis.iter().map(VectorRecord::state).collect(),
    );
    file.space = Some(format!("level:{level}"));
    Ok(schema::to_json_string(&file))
}
