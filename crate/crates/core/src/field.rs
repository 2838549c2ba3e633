//! Scalar types: exact rationals, Gaussian rationals, prime-field residues and
//! double-precision complex numbers.
//!
//! A scalar carries a context (`Ctx`) describing which concrete field it
//! belongs to. For the prime field that is the modulus; the other fields have
//! a unit context. Vectors record the context of their coefficients so that
//! mixed-modulus arithmetic is caught at the vector boundary.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;

/// Which field a vector's coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rational,
    Gaussian,
    Fp(u64),
    ComplexApprox,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "rational"),
            FieldTag::Gaussian => write!(f, "gaussian"),
            FieldTag::Fp(p) => write!(f, "fp({p})"),
            FieldTag::ComplexApprox => write!(f, "complex64-approx"),
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;
    /// Complex conjugate; the identity on fields without a conjugation.
    fn conj(&self) -> Self;
    fn tag(ctx: &Self::Ctx) -> FieldTag;
}

/// Fields with exact arithmetic, on which echelon forms are canonical.
pub trait ExactField: Scalar {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
}

impl Scalar for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn from_i64(v: i64, _: &()) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn tag(_: &()) -> FieldTag {
        FieldTag::Rational
    }
}

impl ExactField for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Scalar for GaussianRational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Complex::new(Zero::zero(), Zero::zero())
    }
    fn one(_: &()) -> Self {
        Complex::new(One::one(), Zero::zero())
    }
    fn from_i64(v: i64, _: &()) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(v)), Zero::zero())
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn tag(_: &()) -> FieldTag {
        FieldTag::Gaussian
    }
}

impl ExactField for GaussianRational {
    fn inv(&self) -> Self {
        assert!(!Scalar::is_zero(self), "inverse of zero");
        Complex::inv(self)
    }
}

impl Scalar for Complex64 {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one(_: &()) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64, _: &()) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn tag(_: &()) -> FieldTag {
        FieldTag::ComplexApprox
    }
}

/// A residue modulo a prime `p`. The modulus travels with the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn same_field(&self, other: &Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed-modulus arithmetic: F_{} vs F_{}",
            self.modulus, other.modulus
        );
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.same_field(&rhs);
        Fp {
            value: ((self.value as u128 + rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.same_field(&rhs);
        Fp {
            value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Scalar for Fp {
    type Ctx = u64;

    fn zero(p: &u64) -> Self {
        Fp::new(0, *p)
    }
    fn one(p: &u64) -> Self {
        Fp::new(1, *p)
    }
    fn from_i64(v: i64, p: &u64) -> Self {
        Fp::new(v as i128, *p)
    }
    fn ctx(&self) -> u64 {
        self.modulus
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn conj(&self) -> Self {
        *self
    }
    fn tag(p: &u64) -> FieldTag {
        FieldTag::Fp(*p)
    }
}

impl ExactField for Fp {
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        // Fermat; the modulus is prime by construction of every F_p context.
        self.pow(self.modulus - 2)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// Rational → complex double. Used only to hand exact bases to the
/// numerical verifier.
pub trait ToComplex64 {
    fn to_complex64(&self) -> Complex64;
}

impl ToComplex64 for Rational {
    fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(self), 0.0)
    }
}

impl ToComplex64 for GaussianRational {
    fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
