//! Deterministic random generation of exact inputs for the verification
//! harnesses.  All rationals have small height so that coefficient growth
//! stays bounded across chained exact operations.

use rand::Rng;

use crate::clifford::{project_32, Chirality, CliffordTensor, ThreeHalfSpinor};
use crate::pin2::{Branch, GroupTriple, Pin2Element, Spin4Element};
use crate::scalars::{rat, GaussComplex, Quaternion, Rational};

/// Small-height rational: numerator and denominator bounded well below the
/// 100 ceiling so that chained exact products stay within one machine word.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=12))
}

pub fn random_gauss<R: Rng>(rng: &mut R) -> GaussComplex {
    GaussComplex::new(random_rational(rng), random_rational(rng))
}

pub fn random_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::from_reals(
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
    )
}

pub fn random_tensor<R: Rng>(rng: &mut R, chirality: Chirality) -> CliffordTensor {
    CliffordTensor::new(std::array::from_fn(|_| random_quaternion(rng)), chirality)
}

pub fn random_three_half<R: Rng>(rng: &mut R, chirality: Chirality) -> ThreeHalfSpinor {
    project_32(&random_tensor(rng, chirality))
}

/// Exact unit quaternion from the rational parametrization of the sphere:
/// ((1 - n) + 2u) / (1 + n) with u imaginary and n = |u|^2.
pub fn unit_quaternion_from_imag(b: Rational, c: Rational, d: Rational) -> Quaternion {
    let n = &b * &b + &c * &c + &d * &d;
    let one = Rational::from_integer(1.into());
    let denom = (&one + &n).recip();
    let two = Rational::from_integer(2.into());
    Quaternion::from_reals(&one - &n, two.clone() * b, two.clone() * c, two * d).scale(&denom)
}

pub fn random_unit_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    let small = |rng: &mut R| rat(rng.gen_range(-6..=6), rng.gen_range(1..=6));
    unit_quaternion_from_imag(small(rng), small(rng), small(rng))
}

pub fn random_pin2<R: Rng>(rng: &mut R) -> Pin2Element {
    let t = rat(rng.gen_range(-12..=12), rng.gen_range(1..=12));
    let p = Pin2Element::unit_circle_point(&t);
    if rng.gen_bool(0.5) {
        p
    } else {
        Pin2Element::new(Branch::JCircle, p.z).expect("unit z stays unit")
    }
}

pub fn random_spin4<R: Rng>(rng: &mut R) -> Spin4Element {
    Spin4Element::new(random_unit_quaternion(rng), random_unit_quaternion(rng))
        .expect("construction yields exact unit quaternions")
}

pub fn random_triple<R: Rng>(rng: &mut R) -> GroupTriple {
    GroupTriple::new(random_spin4(rng), random_pin2(rng))
}
