//! Index pipeline for the twisted Rarita-Schwinger operator: truncated
//! Chern-character and A-hat arithmetic in a degree-graded ring over the
//! rationals, evaluated against the numeric invariants of a 4-manifold.
//!
//! Degree-4 classes are carried as rationals already evaluated against the
//! fundamental class; all top-degree monomials in the computation are
//! pinned to numbers by c2(s+-)[X] = -3 sigma/4 -+ chi/2 and
//! p1[X] = 3 sigma.

use crate::scalars::{int, rat, Rational};

/// Truncated graded class: a rational in degree 0, a multiple of the formal
/// line-bundle class c1 in degree 2, and an evaluated rational in degree 4.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedClass {
    pub deg0: Rational,
    /// coefficient of c1(L) in degree 2
    pub deg2: Rational,
    /// degree-4 part, already evaluated against [X]
    pub deg4: Rational,
}

impl GradedClass {
    pub fn new(deg0: Rational, deg2: Rational, deg4: Rational) -> Self {
        GradedClass { deg0, deg2, deg4 }
    }

    pub fn one() -> Self {
        GradedClass::new(int(1), int(0), int(0))
    }

    /// Truncated product; the only degree-2 pairing is c1 * c1 = c1sq.
    pub fn mul(&self, other: &GradedClass, c1sq: &Rational) -> GradedClass {
        GradedClass::new(
            &self.deg0 * &other.deg0,
            &self.deg0 * &other.deg2 + &self.deg2 * &other.deg0,
            &self.deg0 * &other.deg4
                + &self.deg4 * &other.deg0
                + &self.deg2 * &other.deg2 * c1sq,
        )
    }

    /// Evaluation against the fundamental class reads the top degree.
    pub fn evaluate(&self) -> Rational {
        self.deg4.clone()
    }
}

/// Numeric invariants feeding the pipeline.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ManifoldInvariants {
    pub sigma: i64,
    pub chi: i64,
    pub c1sq: i64,
}

/// ch(L) = 1 + c1 + c1^2/2.
pub fn ch_line(c1sq: i64) -> GradedClass {
    GradedClass::new(int(1), int(1), rat(c1sq, 2))
}

/// A-hat(TX) = 1 - p1/24 with p1[X] = 3 sigma.
pub fn ahat(sigma: i64) -> GradedClass {
    GradedClass::new(int(1), int(0), rat(-sigma, 8))
}

/// ch(T_C X (x) L) = ch(s+) ch(s-) ch(L) with ch(s+-) = 2 - c2(s+-); the
/// chi contributions of the two c2 terms cancel, leaving deg4 = 2 c1sq +
/// 3 sigma.
pub fn ch_tc_twisted(inv: &ManifoldInvariants) -> GradedClass {
    // c2(s+-)[X] = -3 sigma/4 -+ chi/2
    let c2_plus = int(inv.sigma) * rat(-3, 4) - rat(inv.chi, 2);
    let c2_minus = int(inv.sigma) * rat(-3, 4) + rat(inv.chi, 2);
    let spinor_part = GradedClass::new(int(4), int(0), (c2_plus + c2_minus) * int(-2));
    spinor_part.mul(&ch_line(inv.c1sq), &int(inv.c1sq))
}

/// Index of the twisted Dirac operator: -sigma/8 + c1^2/2.
pub fn index_dirac(inv: &ManifoldInvariants) -> Rational {
    let c1sq = int(inv.c1sq);
    ahat(inv.sigma)
        .mul(&ch_line(inv.c1sq), &c1sq)
        .evaluate()
}

/// Index of the twisted Rarita-Schwinger operator, computed both through
/// the full characteristic-class pipeline and through the closed form
/// 19 sigma/8 + 5 c1^2/2; a mismatch is an arithmetic bug and panics.
pub fn index_rs(inv: &ManifoldInvariants) -> Rational {
    let c1sq = int(inv.c1sq);
    let twisted = ahat(inv.sigma).mul(&ch_tc_twisted(inv), &c1sq).evaluate();
    let pipeline = twisted + index_dirac(inv);
    let closed = int(inv.sigma) * rat(19, 8) + int(inv.c1sq) * rat(5, 2);
    assert_eq!(
        pipeline, closed,
        "pipeline and closed-form index disagree: this is a bug"
    );
    pipeline
}

/// Whether the index is an integer, as it must be for invariants coming
/// from an actual manifold.
pub fn index_is_integral(inv: &ManifoldInvariants) -> bool {
    index_rs(inv).is_integer()
}
