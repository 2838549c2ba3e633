//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;

use ces_cli::schema::{parse_basis, BasisFile, ParsedVectors};
use ces_core::constructions::{
    any_dim_upb, default_points, entangled_subspace, example1_space, example2_spaces,
    minimal_upb, to_matrix, u_generators, ProductVector,
};
use ces_core::field::{Rational, Scalar};
use ces_core::graded_index::{level_count_closed_form, level_counts};
use ces_core::linalg::{clear_denominators, StateVector, Subspace};
use ces_core::verify::{
    classify_sperp, ff_product_vectors, max_product_overlap, orthonormalize, verify_upb, AlsParams,
    UpbCheckOptions, Verdict, DEFAULT_BUDGET,
};
use ces_core::Dims;
use num_complex::Complex64;

fn dims(d: &[usize]) -> Dims {
    Dims::new(d.to_vec()).unwrap()
}

const ALL_DIMS: &[&[usize]] = &[&[2, 2], &[2, 3], &[3, 3], &[4, 4], &[2, 2, 2], &[2, 3, 4], &[2, 2, 2, 2]];

fn float_basis(s: &Subspace<Rational>) -> Vec<StateVector<Complex64>> {
    orthonormalize(&s.rows().map(|r| r.to_complex()).collect::<Vec<_>>())
}

fn dimension_formula() {
    for d in ALL_DIMS {
        let d = dims(d);
        let s = entangled_subspace::<Rational>(&d, &());
        assert_eq!(s.dim(), d.total() - (d.n_max() + 1), "dim S for {d}");
        let u = Subspace::span(&d, &(), &u_generators(&d, &())).unwrap();
        assert!(s.orthocomplement().equal(&u).unwrap(), "S complement for {d}");
    }
}

fn level_count_formulas() {
    for d in ALL_DIMS {
        let d = dims(d);
        let a = level_counts(&d);
        for (n, &an) in a.iter().enumerate() {
            if let Some(cf) = level_count_closed_form(&d, n as i64) {
                assert_eq!(cf, an, "{d} level {n}");
            }
        }
    }
    assert_eq!(level_counts(&dims(&[2, 3])), vec![1, 2, 2, 1]);
    assert_eq!(level_counts(&dims(&[2, 2, 2, 2])), vec![1, 4, 6, 4, 1]);
}

fn oracle_on_s() {
    let mut tests = 0u128;
    for d in [&[2, 2][..], &[2, 3], &[3, 3], &[2, 2, 2]] {
        let d = dims(d);
        let gens = clear_denominators(&entangled_subspace::<Rational>(&d, &()).rows().collect::<Vec<_>>());
        for p in [5, 7] {
            let r = ff_product_vectors(&d, &gens, p, DEFAULT_BUDGET).unwrap();
            assert!(r.found.is_empty(), "{d} over F_{p}");
            tests += r.enumerated;
        }
    }
    assert!(tests <= 1_000_000, "{tests} membership tests");
}

fn sperp_classification() {
    for d in [&[2, 3][..], &[2, 2, 2]] {
        let d = dims(d);
        for p in [5, 7] {
            let r = classify_sperp(&d, p, DEFAULT_BUDGET).unwrap();
            assert!(r.passed(), "{d} at p = {p}");
            assert_eq!(r.found.len() as u64, p + 1);
        }
    }
}

fn minimal_upb_and_subsets() {
    for d in [&[2, 3][..], &[2, 2, 2]] {
        let d = dims(d);
        let vs = minimal_upb(&d, &default_points::<Rational>(&d, &()), &()).unwrap();
        let span = Subspace::span(&d, &(), &vs.iter().map(|v| v.expand()).collect::<Vec<_>>()).unwrap();
        assert_eq!(span.dim(), d.n_max() + 1);
        assert!(span.equal(&Subspace::span(&d, &(), &u_generators(&d, &())).unwrap()).unwrap());
        let opts = UpbCheckOptions::finite_field(vec![7]);
        assert!(verify_upb(&d, &vs, &opts).unwrap().is_upb());
        for skip in 0..vs.len() {
            let sub: Vec<ProductVector<Rational>> =
                vs.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| v.clone()).collect();
            let v = verify_upb(&d, &sub, &opts).unwrap();
            assert!(!v.is_upb(), "{d} without vector {skip}");
            let check = &v.complement_checks[0];
            assert_eq!(check.verdict, Verdict::WitnessFound);
            assert!(!check.witnesses.is_empty());
        }
    }
}

fn upb_every_size() {
    let d = dims(&[3, 3]);
    let s = entangled_subspace::<Rational>(&d, &());
    for m in 5..=9 {
        let (_, vs) = any_dim_upb(&d, m, None, &()).unwrap();
        let v = verify_upb(&d, &vs, &UpbCheckOptions::finite_field(vec![7])).unwrap();
        assert_eq!(v.rank, m);
        assert!(v.is_upb(), "m = {m}");
        let span = Subspace::span(&d, &(), &vs.iter().map(|v| v.expand()).collect::<Vec<_>>()).unwrap();
        assert!(s.contains(&span.orthocomplement()).unwrap(), "m = {m}");
    }
}

fn worked_examples() {
    let e1 = example1_space(3, 3).unwrap();
    assert_eq!(e1.dim(), 4);
    let d = dims(&[3, 3]);
    assert!(e1.equal(&entangled_subspace(&d, &())).unwrap());
    for v in e1.rows() {
        let m = to_matrix(&v);
        for n in 0..=4usize {
            let sum = (0..3)
                .filter(|&i| n >= i && n - i < 3)
                .fold(<Rational as Scalar>::zero(&()), |acc, i| acc + &m[i][n - i]);
            assert!(Scalar::is_zero(&sum));
        }
    }
    let ex = example2_spaces();
    let d = dims(&[4, 4]);
    assert_eq!(ex.m.dim(), 8);
    assert_eq!(ex.m_perp.dim(), 8);
    let r = Subspace::span(&d, &(), &ex.r.iter().map(|v| v.expand()).collect::<Vec<_>>()).unwrap();
    assert_eq!(r.dim(), 7);
    assert!(r.orthocomplement().equal(&entangled_subspace(&d, &())).unwrap());
}

fn als_verifier() {
    let d = dims(&[2, 2]);
    let out = max_product_overlap(&d, &float_basis(&entangled_subspace(&d, &())), &AlsParams::default()).unwrap();
    assert!((out.best_overlap - 0.5).abs() <= 1e-8, "singlet {}", out.best_overlap);

    let d = dims(&[2, 3]);
    let sperp = Subspace::span(&d, &(), &u_generators(&d, &())).unwrap();
    let out = max_product_overlap(&d, &float_basis(&sperp), &AlsParams::default()).unwrap();
    assert!(out.best_overlap >= 1.0 - 1e-8, "Sperp {}", out.best_overlap);
    let x = &out.witness.factors()[0];
    let factors: Vec<Vec<Complex64>> = if x[0].norm() < 1e-6 * x[1].norm() {
        d.as_slice()
            .iter()
            .map(|&n| (0..n).map(|j| if j + 1 == n { 1.0.into() } else { 0.0.into() }).collect())
            .collect()
    } else {
        let l = x[1] / x[0];
        d.as_slice().iter().map(|&n| (0..n).map(|j| l.powu(j as u32)).collect()).collect()
    };
    let z = ProductVector::new(&d, factors).unwrap().expand();
    let w = out.witness.expand();
    let ov = z.inner(&w).unwrap().norm() / (z.norm() * w.norm());
    assert!(ov >= 1.0 - 1e-6, "witness overlap with z {ov}");

    let d = dims(&[3, 3]);
    let params = AlsParams { restarts: 64, seed: 42, ..AlsParams::default() };
    let out = max_product_overlap(&d, &float_basis(&entangled_subspace(&d, &())), &params).unwrap();
    assert!(out.best_overlap <= 1.0 - 1e-3, "S (3,3) {}", out.best_overlap);
}

fn ces(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ces")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism_and_round_trip() {
    let runs: &[&[&str]] = &[
        &["dims", "--dims", "2,3", "--format", "json"],
        &["construct", "--dims", "3,3", "--space", "S"],
        &["construct", "--dims", "2,2,2", "--space", "Sperp", "--field", "gaussian"],
        &["construct", "--dims", "2,3", "--space", "level:1", "--field", "fp:5"],
        &["construct", "--space", "example2-R"],
        &["upb", "--dims", "3,3", "--size", "7"],
        &["upb", "--dims", "2,2,2", "--min", "--method", "both", "--restarts", "8", "--seed", "5"],
        &["verify", "--dims", "3,3", "--space", "S", "--method", "als", "--restarts", "16", "--seed", "42"],
        &["verify", "--dims", "2,3", "--space", "Sperp", "--method", "both", "--seed", "1"],
        &["classify", "--dims", "2,3", "--prime", "5"],
        &["onb", "--dims", "3,3", "--level", "2"],
    ];
    for args in runs {
        let (c1, a) = ces(args);
        let (c2, b) = ces(args);
        assert_eq!((c1, c2), (0, 0), "{args:?}");
        assert_eq!(a, b, "{args:?} output differs between runs");
    }
    for (d, space, field) in [
        ("3,3", "S", "rational"),
        ("2,2,2", "Sperp", "rational"),
        ("2,3", "level:1", "gaussian"),
        ("2,3,4", "S", "fp:5"),
        ("4,4", "example2-M", "rational"),
    ] {
        let (code, out) = ces(&["construct", "--dims", d, "--space", space, "--field", field]);
        assert_eq!(code, 0);
        let text = String::from_utf8(out).unwrap();
        let file: BasisFile = serde_json::from_str(&text).unwrap();
        let (dd, parsed) = parse_basis(&file).unwrap();
        let same = match parsed {
            ParsedVectors::Rational(v) => echelon_matches(&dd, &(), v),
            ParsedVectors::Gaussian(v) => echelon_matches(&dd, &(), v),
            ParsedVectors::Fp(p, v) => echelon_matches(&dd, &p, v),
        };
        assert!(same, "{space} {field} does not round-trip");
        let again = ces_cli::schema::to_json_string(&file);
        assert_eq!(again, text, "{space} {field} reserializes differently");
    }
}

fn echelon_matches<F: ces_core::field::ExactField>(d: &Dims, ctx: &F::Ctx, v: Vec<StateVector<F>>) -> bool {
    let s = Subspace::span(d, ctx, &v).unwrap();
    s.rows().collect::<Vec<_>>() == v
}

fn main() {
    let criteria: &[(&str, fn())] = &[
        ("dimension formula and complement of S", dimension_formula),
        ("level counts match closed forms", level_count_formulas),
        ("no product vectors in S over F_5 and F_7", oracle_on_s),
        ("product vectors of Sperp are the Vandermonde points", sperp_classification),
        ("minimal UPB spans Sperp and no proper subset is unextendible", minimal_upb_and_subsets),
        ("UPB of every size 5..9 for (3,3)", upb_every_size),
        ("worked examples 1 and 2", worked_examples),
        ("ALS verifier values and margin", als_verifier),
        ("CLI determinism and round-trip", determinism_and_round_trip),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(f));
        match result {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
