//! Exact scalar arithmetic: arbitrary-precision rationals, Gaussian-rational
//! complex numbers, and quaternions in the 2x2 complex matrix model.
//!
//! A quaternion is stored as the pair (z, w) of complex entries of
//!
//! ```text
//!     [ z  -conj(w) ]
//!     [ w   conj(z) ]
//! ```
//!
//! and multiplication is literal matrix multiplication of these forms. In
//! this model the Hamilton basis is 1 = (1,0), i = (i,0), j = (0,1),
//! k = i*j = (0,-i), and the relations ij = k, jk = i, ki = j hold exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussComplex {
    pub re: Rational,
    pub im: Rational,
}

impl GaussComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussComplex { re, im }
    }

    pub fn zero() -> Self {
        GaussComplex::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussComplex::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussComplex::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussComplex::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussComplex::from_rational(int(n))
    }

    pub fn conj(&self) -> Self {
        GaussComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        GaussComplex::new(&self.re * s, &self.im * s)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(&n.recip()))
    }
}

impl fmt::Display for GaussComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for &GaussComplex {
    type Output = GaussComplex;
    fn add(self, rhs: &GaussComplex) -> GaussComplex {
        GaussComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussComplex {
    type Output = GaussComplex;
    fn sub(self, rhs: &GaussComplex) -> GaussComplex {
        GaussComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussComplex {
    type Output = GaussComplex;
    fn mul(self, rhs: &GaussComplex) -> GaussComplex {
        GaussComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussComplex {
    type Output = GaussComplex;
    fn neg(self) -> GaussComplex {
        GaussComplex::new(-self.re.clone(), -self.im.clone())
    }
}

/// Quaternion in the matrix model with rows (z, -conj w), (w, conj z).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quaternion {
    pub z: GaussComplex,
    pub w: GaussComplex,
}

impl Quaternion {
    pub fn new(z: GaussComplex, w: GaussComplex) -> Self {
        Quaternion { z, w }
    }

    pub fn zero() -> Self {
        Quaternion::new(GaussComplex::zero(), GaussComplex::zero())
    }

    pub fn one() -> Self {
        Quaternion::new(GaussComplex::one(), GaussComplex::zero())
    }

    pub fn unit_i() -> Self {
        Quaternion::new(GaussComplex::i(), GaussComplex::zero())
    }

    pub fn unit_j() -> Self {
        Quaternion::new(GaussComplex::zero(), GaussComplex::one())
    }

    pub fn unit_k() -> Self {
        Quaternion::new(GaussComplex::zero(), -&GaussComplex::i())
    }

    /// The Hamilton basis 1, i, j, k indexed 0..4.
    pub fn basis(alpha: usize) -> Self {
        match alpha {
            0 => Quaternion::one(),
            1 => Quaternion::unit_i(),
            2 => Quaternion::unit_j(),
            3 => Quaternion::unit_k(),
            _ => panic!("quaternion basis index out of range: {alpha}"),
        }
    }

    /// Embeds a complex scalar as z + 0*j.
    pub fn from_complex(c: GaussComplex) -> Self {
        Quaternion::new(c, GaussComplex::zero())
    }

    /// Builds a + b i + c j + d k.  In the matrix coordinates this is
    /// (a + b i, c - d i).
    pub fn from_reals(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion::new(GaussComplex::new(a, b), GaussComplex::new(c, -d))
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::from_reals(int(a), int(b), int(c), int(d))
    }

    /// Coordinates in the Hamilton basis 1, i, j, k.
    pub fn to_reals(&self) -> [Rational; 4] {
        [
            self.z.re.clone(),
            self.z.im.clone(),
            self.w.re.clone(),
            -self.w.im.clone(),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero() && self.w.is_zero()
    }

    /// Real (scalar) part.
    pub fn real_part(&self) -> Rational {
        self.z.re.clone()
    }

    /// Quaternion conjugation; equals the conjugate transpose of the matrix
    /// form.
    pub fn conj(&self) -> Self {
        Quaternion::new(self.z.conj(), -&self.w)
    }

    /// |q|^2, which is also the determinant of the matrix form.
    pub fn norm_sqr(&self) -> Rational {
        self.z.norm_sqr() + self.w.norm_sqr()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Quaternion::new(self.z.scale(s), self.w.scale(s))
    }

    /// The 2x2 complex matrix form, row major.
    pub fn matrix(&self) -> [[GaussComplex; 2]; 2] {
        [
            [self.z.clone(), -&self.w.conj()],
            [self.w.clone(), self.z.conj()],
        ]
    }

    /// Exact inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(&n.recip()))
    }
}

/// Quaternion product as the 2x2 complex matrix product of the matrix forms.
pub fn qmul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    Quaternion::new(
        &(&a.z * &b.z) - &(&a.w.conj() * &b.w),
        &(&a.w * &b.z) + &(&a.z.conj() * &b.w),
    )
}

/// Quaternion conjugation (free function mirroring `Quaternion::conj`).
pub fn qconj(a: &Quaternion) -> Quaternion {
    a.conj()
}

/// Exact quaternion inverse.
pub fn qinv(a: &Quaternion) -> Result<Quaternion> {
    a.inv()
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.z + &rhs.z, &self.w + &rhs.w)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.z - &rhs.z, &self.w - &rhs.w)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.z, -&self.w)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.to_reals();
        write!(f, "{a} + {b}i + {c}j + {d}k")
    }
}

/// 2x2 complex matrix product, used as the independent oracle for `qmul`.
pub fn mat2_mul(a: &[[GaussComplex; 2]; 2], b: &[[GaussComplex; 2]; 2]) -> [[GaussComplex; 2]; 2] {
    let entry = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}
