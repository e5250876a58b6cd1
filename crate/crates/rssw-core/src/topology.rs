//! Manifold-level bookkeeping and the K-degree feasibility verdicts:
//! intersection-form invariants, representation counts, the exclusion logic
//! through the representation ring, and the margin formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::repring::{char_at_j, lambda_total, RepRingElement};
use crate::scalars::{int, rat, Rational};

/// Intersection form a E8 + b H; positive a means each E8 block contributes
/// +8 to the signature.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ManifoldData {
    pub e8_count: i64,
    pub h_count: u64,
}

impl ManifoldData {
    pub fn new(e8_count: i64, h_count: u64) -> Self {
        ManifoldData { e8_count, h_count }
    }

    pub fn b2(&self) -> i64 {
        8 * self.e8_count.abs() + 2 * self.h_count as i64
    }

    pub fn sigma(&self) -> i64 {
        8 * self.e8_count
    }

    pub fn b2_plus(&self) -> i64 {
        8 * self.e8_count.max(0) + self.h_count as i64
    }

    pub fn b2_minus(&self) -> i64 {
        8 * (-self.e8_count).max(0) + self.h_count as i64
    }

    /// Euler characteristic of the closed simply connected manifold.
    pub fn chi(&self) -> i64 {
        2 + self.b2()
    }

    pub fn is_indefinite(&self) -> bool {
        self.h_count >= 1 || self.e8_count == 0
    }
}

/// Derived invariants (b2, sigma, b2+, b2-).
pub fn invariants_of(m: &ManifoldData) -> (i64, i64, i64, i64) {
    (m.b2(), m.sigma(), m.b2_plus(), m.b2_minus())
}

/// Representation counts of the finite-dimensional model:
/// C = H^{r+k} + R^s maps to R = H^r + R^{s+m}, with t = r + k, q = s + m.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RepCounts {
    pub r: u64,
    pub s: u64,
    pub k: i64,
    pub m: u64,
}

impl RepCounts {
    pub fn t(&self) -> i64 {
        self.r as i64 + self.k
    }

    pub fn q(&self) -> u64 {
        self.s + self.m
    }
}

/// k = 19 sigma / 16 and m = b2+, with r, s free parameters.
pub fn rep_counts(m: &ManifoldData, r: u64, s: u64) -> Result<RepCounts> {
    let sigma = m.sigma();
    if (19 * sigma as i128) % 16 != 0 {
        return Err(Error::NotSpinSignature(sigma));
    }
    Ok(RepCounts {
        r,
        s,
        k: 19 * sigma / 16,
        m: m.b2_plus() as u64,
    })
}

/// Verdict of the equivariant-map obstruction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Feasibility {
    /// k <= 0: no obstruction arises.
    NotExcluded(NotExcludedReason),
    Excluded(ExclusionReason),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotExcludedReason {
    KZero,
    MAtLeast2kPlus1,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionReason {
    /// The required degree trace 2^{m-2k} is not an integer.
    TraceFraction,
    /// m = 2k forces trace 1, incompatible with the vanishing circle trace.
    Parity,
}

impl Feasibility {
    pub fn is_excluded(&self) -> bool {
        matches!(self, Feasibility::Excluded(_))
    }
}

type LambdaKey = (u32, u32);
static LAMBDA_TRACE_CACHE: Lazy<Mutex<HashMap<LambdaKey, BigInt>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The j-trace of a total lambda class, computed honestly through the
/// representation ring once per exponent pair and memoized.  The first
/// computation also verifies the collapse identity
/// (2-h)^nh (1-d)^nd = 2^{nh + nd - 1} (1 - d) for nd >= 1.
fn lambda_trace_at_j(num_h: u32, num_d: u32) -> BigInt {
    let mut cache = LAMBDA_TRACE_CACHE.lock().expect("lambda cache poisoned");
    if let Some(v) = cache.get(&(num_h, num_d)) {
        return v.clone();
    }
    let v = lambda_total(num_h, num_d);
    if num_d >= 1 {
        let collapsed = RepRingElement::one()
            .sub(&RepRingElement::d())
            .scale(&(BigInt::one() << (num_h + num_d - 1)));
        assert_eq!(v, collapsed, "lambda collapse identity failed");
    }
    let trace = char_at_j(&v);
    cache.insert((num_h, num_d), trace.clone());
    trace
}

/// The exclusion logic: computes lambda_V and lambda_W through the
/// representation ring, solves the j-trace equation for the required
/// degree trace 2^{m-2k}, and reads off the verdict.
pub fn kdegree_feasibility(c: &RepCounts) -> Feasibility {
    if c.k <= 0 {
        return Feasibility::NotExcluded(NotExcludedReason::KZero);
    }
    let k = c.k as u64;
    // traces at j of lambda_V and lambda_W; lambda_W = a_f lambda_V then
    // forces tr(a_f(j)) = 2^{m - 2k}
    let tv = lambda_trace_at_j((2 * c.r + 2 * k) as u32, c.s as u32);
    let tw = lambda_trace_at_j((2 * c.r) as u32, (c.s + c.m) as u32);
    assert_eq!(tv, BigInt::one() << (2 * c.r + 2 * k + c.s));
    assert_eq!(tw, BigInt::one() << (2 * c.r + c.s + c.m));
    debug_assert!(!tv.is_zero() && !tw.is_zero());

    if c.m < 2 * k {
        // 2^{m-2k} is a proper fraction: no integer trace exists
        Feasibility::Excluded(ExclusionReason::TraceFraction)
    } else if c.m == 2 * k {
        // trace 1 needs a0 - a1 = 1 and a0 + a1 = 0 simultaneously
        Feasibility::Excluded(ExclusionReason::Parity)
    } else {
        Feasibility::NotExcluded(NotExcludedReason::MAtLeast2kPlus1)
    }
}

/// Margin of the headline bound: b2 - 15 sigma / 4 - 2.  Negative margin
/// with positive signature excludes a compact moduli space; non-positive
/// signature makes the bound vacuous.
pub fn margin_15_4(m: &ManifoldData) -> Result<(Rational, bool)> {
    if !m.is_indefinite() {
        return Err(Error::DefiniteForm);
    }
    let margin = int(m.b2()) - int(m.sigma()) * rat(15, 4) - int(2);
    let vacuous = m.sigma() <= 0;
    Ok((margin, vacuous))
}

/// The 10/8-style margin b2 - 5 sigma / 4 - 2.
pub fn furuta_margin(m: &ManifoldData) -> Rational {
    int(m.b2()) - int(m.sigma()) * rat(5, 4) - int(2)
}

/// The window 15 sigma/4 + 2 <= b2 <= 17 sigma/2 - 2, both sides evaluated
/// exactly as closed inequalities.
pub fn slope_window(m: &ManifoldData) -> (bool, bool) {
    let b2 = int(m.b2());
    let lower = int(m.sigma()) * rat(15, 4) + int(2) <= b2;
    let upper = b2 <= int(m.sigma()) * rat(17, 2) - int(2);
    (lower, upper)
}

/// Virtual dimension of the moduli space: 19 sigma/4 - 1 - b2+.
pub fn virtual_dim(m: &ManifoldData) -> Rational {
    int(m.sigma()) * rat(19, 4) - int(1) - int(m.b2_plus())
}
