use ces_core::constructions::{
    any_dim_upb, default_points, entangled_subspace, example1_space, example2_spaces, gram,
    minimal_upb, s_perp, to_matrix, u_vector, z_vector, ProductVector, VandermondePoint,
};
use ces_core::field::{Rational, Scalar};
use ces_core::linalg::{StateVector, Subspace};
use ces_core::{Dims, MultiIndex};
use num_complex::Complex64;
use proptest::prelude::*;

fn dims(d: &[usize]) -> Dims {
    Dims::new(d.to_vec()).unwrap()
}

fn q(v: i64) -> Rational {
    Rational::from_i64(v, &())
}

fn fin(v: i64) -> VandermondePoint<Rational> {
    VandermondePoint::Finite(q(v))
}

fn span_of(d: &Dims, vs: &[ProductVector<Rational>]) -> Subspace<Rational> {
    let e: Vec<_> = vs.iter().map(|v| v.expand()).collect();
    Subspace::span(d, &(), &e).unwrap()
}

#[test]
fn u_vector_examples() {
    let d = dims(&[2, 2]);
    let u1 = u_vector::<Rational>(&d, 1, &()).unwrap();
    assert_eq!(u1.coeffs(), &[q(0), q(1), q(1), q(0)]);
    let d = dims(&[2, 3, 4]);
    let u0 = u_vector::<Rational>(&d, 0, &()).unwrap();
    assert_eq!(u0, StateVector::basis(&d, &MultiIndex(vec![0, 0, 0]), &()));
    let top = u_vector::<Rational>(&d, 6, &()).unwrap();
    assert_eq!(top, StateVector::basis(&d, &MultiIndex(vec![1, 2, 3]), &()));
    assert!(u_vector::<Rational>(&d, 7, &()).is_err());
}

#[test]
fn z_vector_examples() {
    let d = dims(&[2, 3, 2]);
    let z0 = z_vector(&d, &fin(0), &()).expand();
    assert_eq!(z0, StateVector::basis(&d, &MultiIndex(vec![0, 0, 0]), &()));
    let d = dims(&[2, 2]);
    let z1 = z_vector(&d, &fin(1), &());
    assert_eq!(z1.factors(), &[vec![q(1), q(1)], vec![q(1), q(1)]]);
    let sum = (0..=2)
        .map(|n| u_vector::<Rational>(&d, n, &()).unwrap())
        .reduce(|a, b| a.add(&b).unwrap())
        .unwrap();
    assert_eq!(z1.expand(), sum);
    let d = dims(&[2, 3]);
    let zinf = z_vector::<Rational>(&d, &VandermondePoint::Infinity, &()).expand();
    assert_eq!(zinf, StateVector::basis(&d, &MultiIndex(vec![1, 2]), &()));
}

#[test]
fn product_vector_rejects_zero_factor() {
    let d = dims(&[2, 2]);
    assert!(ProductVector::new(&d, vec![vec![q(1), q(0)], vec![q(0), q(0)]]).is_err());
    assert!(ProductVector::new(&d, vec![vec![q(1), q(0)]]).is_err());
}

#[test]
fn minimal_upb_examples() {
    let d = dims(&[2, 2, 2]);
    let upb = minimal_upb(&d, &[fin(0), fin(1), fin(2), fin(3)], &()).unwrap();
    let s = span_of(&d, &upb);
    assert_eq!(s.dim(), 4);
    assert!(s.equal(&s_perp(&d, &())).unwrap());
    let d = dims(&[2, 3]);
    let upb = minimal_upb(&d, &[VandermondePoint::Infinity, fin(0), fin(1), fin(2)], &()).unwrap();
    assert_eq!(span_of(&d, &upb).dim(), 4);
}

#[test]
fn gram_examples() {
    for d in [dims(&[2, 2]), dims(&[3, 2, 4])] {
        let g = gram(&[
            z_vector(&d, &fin(0), &()),
            z_vector(&d, &fin(1), &()),
            z_vector(&d, &VandermondePoint::Infinity, &()),
        ])
        .unwrap();
        assert_eq!(g[0][2], q(0));
        assert_eq!(g[0][1], q(1));
    }
    let d = dims(&[2, 3]);
    let g = gram(&minimal_upb(&d, &default_points::<Rational>(&d, &()), &()).unwrap()).unwrap();
    let off_diag_nonzero = (0..4).any(|i| (0..4).any(|j| i != j && !Scalar::is_zero(&g[i][j])));
    assert!(off_diag_nonzero);
}

#[test]
fn theorem5_for_every_admissible_size() {
    for d in [dims(&[2, 2]), dims(&[2, 3]), dims(&[3, 3]), dims(&[2, 5]), dims(&[3, 4]), dims(&[4, 4])] {
        let s = entangled_subspace::<Rational>(&d, &());
        for m in d.n_max() + 1..=d.total() {
            let (spec, vs) = any_dim_upb::<Rational>(&d, m, None, &()).unwrap();
            assert_eq!(vs.len(), m);
            assert_eq!(spec.size, m);
            let span = span_of(&d, &vs);
            assert_eq!(span.dim(), m);
            let c = span.orthocomplement();
            assert_eq!(c.dim(), d.total() - m);
            assert!(s.contains(&c).unwrap());
        }
    }
}

#[test]
fn example1_and_example2() {
    let e1 = example1_space(3, 3).unwrap();
    assert_eq!(e1.dim(), 4);
    assert!(e1.equal(&entangled_subspace(&dims(&[3, 3]), &())).unwrap());
    for v in e1.rows() {
        let m = to_matrix(&v);
        for n in 0..5usize {
            let s = (0..3)
                .filter(|&i| n >= i && n - i < 3)
                .fold(q(0), |acc, i| acc + m[i][n - i].clone());
            assert_eq!(s, q(0));
        }
    }

    let d = dims(&[4, 4]);
    let ex = example2_spaces();
    assert_eq!(ex.m.dim(), 8);
    assert_eq!(ex.m_perp.dim(), 8);
    let s = entangled_subspace::<Rational>(&d, &());
    assert!(s.contains(&ex.m).unwrap() && !ex.m.equal(&s).unwrap());
    let r = span_of(&d, &ex.r);
    assert_eq!(r.dim(), 7);
    assert!(ex.m_perp.contains(&r).unwrap());
    assert!(r.orthocomplement().equal(&s).unwrap());
    // the complement ties a02 = a11 = a20, not a22
    let a = |i: usize, j: usize| d.offset(&MultiIndex(vec![i, j]));
    let mut v = vec![q(0); 16];
    v[a(0, 2)] = q(1);
    v[a(1, 1)] = q(1);
    v[a(2, 0)] = q(1);
    assert!(ex.m_perp.member(&StateVector::new(&d, v).unwrap()).unwrap());
}

#[test]
fn scaled_vandermonde_tends_to_infinity_point() {
    for d in [dims(&[2, 3]), dims(&[3, 3, 2])] {
        let n = d.n_max() as i32;
        let zinf = z_vector::<Rational>(&d, &VandermondePoint::Infinity, &()).expand().to_complex();
        for lambda in [1e3f64, 1e6] {
            let z = z_vector(&d, &VandermondePoint::Finite(Complex64::new(lambda, 0.0)), &());
            let scaled: Vec<Complex64> = z.expand().coeffs().iter().map(|c| c / lambda.powi(n)).collect();
            let err = scaled
                .iter()
                .zip(zinf.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err <= 10.0 / lambda, "{d} λ={lambda}: {err}");
        }
    }
}

fn dims_upto_4096() -> impl Strategy<Value = Dims> {
    prop::collection::vec(2usize..=64, 2..=12).prop_filter_map("total ≤ 4096", |d| {
        let mut total = 1usize;
        let mut kept = Vec::new();
        for x in d {
            if total * x > 4096 {
                break;
            }
            total *= x;
            kept.push(x);
        }
        Dims::new(kept).ok()
    })
}

fn point_strategy() -> impl Strategy<Value = VandermondePoint<Rational>> {
    prop_oneof![
        1 => Just(VandermondePoint::Infinity),
        8 => (-20i64..20, 1i64..6).prop_map(|(a, b)| VandermondePoint::Finite(Rational::new(a.into(), b.into()))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_and_sperp_are_complements(d in dims_upto_4096()) {
        let s = entangled_subspace::<Rational>(&d, &());
        let sp = s_perp::<Rational>(&d, &());
        prop_assert_eq!(s.dim(), d.entangled_dim());
        prop_assert_eq!(s.dim() + sp.dim(), d.total());
        prop_assert!(s.orthocomplement().equal(&sp).unwrap());
    }
}

proptest! {
    #[test]
    fn vandermonde_factorization(
        dv in prop::collection::vec(2usize..5, 2..4),
        a in -9i64..10,
        b in 1i64..5,
    ) {
        let d = Dims::new(dv).unwrap();
        let lambda = Rational::new(a.into(), b.into());
        let z = z_vector(&d, &VandermondePoint::Finite(lambda.clone()), &()).expand();
        let mut acc = StateVector::zeros(&d, &());
        for n in 0..=d.n_max() {
            let u = u_vector::<Rational>(&d, n as i64, &()).unwrap();
            acc = acc.add(&u.scale(&num_traits::pow(lambda.clone(), n))).unwrap();
        }
        prop_assert_eq!(z, acc);
    }

    #[test]
    fn distinct_points_give_full_rank(
        dv in prop::collection::vec(2usize..4, 2..4),
        pts in prop::collection::vec(point_strategy(), 12),
    ) {
        let d = Dims::new(dv).unwrap();
        let mut distinct: Vec<VandermondePoint<Rational>> = Vec::new();
        for p in pts {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        prop_assume!(distinct.len() > d.n_max());
        distinct.truncate(d.n_max() + 1);
        let upb = minimal_upb(&d, &distinct, &()).unwrap();
        let span = span_of(&d, &upb);
        prop_assert_eq!(span.dim(), d.n_max() + 1);
        prop_assert!(span.equal(&s_perp(&d, &())).unwrap());
    }
}
