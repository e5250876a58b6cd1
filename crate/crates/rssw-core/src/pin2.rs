//! Exact Spin(4) x Pin(2) group elements, their actions on the fiber
//! modules, and the equivariance harness.
//!
//! The actions, with every product a quaternion (matrix) product:
//! - tangent vectors:   v |-> p_minus v p_plus^{-1};
//! - plus spinors:      s |-> p_plus  s p_0^{-1};
//! - minus spinors:     s |-> p_minus s p_0^{-1};
//! - tensors: both factors at once, re-expanded in the standard basis;
//! - the imaginary line is twisted: the j-circle branch of Pin(2)
//!   conjugates the complex unit, so imaginary-scaled vectors and the
//!   moment-map targets pick up the branch sign epsilon(p_0).
//!
//! The branch sign is forced by the module structure (it is the character
//! of the 1-dimensional twist representation) and is what makes every
//! identity below exact on both components of Pin(2).

use num_traits::{One, Zero};

use crate::clifford::{
    clifford_mult, mu, project_32, rho_contract, tensor_mult, CliffordTensor, Endo2, Spinor,
    TangentVector, ThreeHalfSpinor,
};
use crate::error::{Error, Result};
use crate::scalars::{qmul, GaussComplex, Quaternion, Rational};

/// The two topological components of Pin(2) = S^1 u j S^1 inside Sp(1).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Branch {
    Circle,
    JCircle,
}

/// Element of Pin(2): a unit complex parameter z on one of the two circles.
/// As a quaternion the circle branch is z and the j-circle branch is z * j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pin2Element {
    pub branch: Branch,
    pub z: GaussComplex,
}

impl Pin2Element {
    pub fn new(branch: Branch, z: GaussComplex) -> Result<Self> {
        if !z.norm_sqr().is_one() {
            return Err(Error::InvalidArgument(
                "Pin(2) parameter must have exact unit norm".into(),
            ));
        }
        Ok(Pin2Element { branch, z })
    }

    pub fn identity() -> Self {
        Pin2Element {
            branch: Branch::Circle,
            z: GaussComplex::one(),
        }
    }

    pub fn j() -> Self {
        Pin2Element {
            branch: Branch::JCircle,
            z: GaussComplex::one(),
        }
    }

    /// Rational point of the unit circle: z = ((1 - t^2) + 2t i) / (1 + t^2).
    pub fn unit_circle_point(t: &Rational) -> Self {
        let one = Rational::one();
        let t2 = t * t;
        let denom = (&one + &t2).recip();
        let two = Rational::from_integer(2.into());
        let z = GaussComplex::new((&one - &t2) * &denom, t * two * denom);
        Pin2Element {
            branch: Branch::Circle,
            z,
        }
    }

    /// Same circle point pushed to the j-circle branch.
    pub fn j_circle_point(t: &Rational) -> Self {
        let mut p = Pin2Element::unit_circle_point(t);
        p.branch = Branch::JCircle;
        p
    }

    /// The element as a quaternion: z on the circle branch, z * j on the
    /// j-circle branch.
    pub fn as_quaternion(&self) -> Quaternion {
        let zq = Quaternion::from_complex(self.z.clone());
        match self.branch {
            Branch::Circle => zq,
            Branch::JCircle => qmul(&zq, &Quaternion::unit_j()),
        }
    }

    pub fn inverse(&self) -> Pin2Element {
        match self.branch {
            Branch::Circle => Pin2Element {
                branch: Branch::Circle,
                z: self.z.conj(),
            },
            // (z j)^{-1} = -z j
            Branch::JCircle => Pin2Element {
                branch: Branch::JCircle,
                z: -&self.z,
            },
        }
    }

    pub fn mul(&self, other: &Pin2Element) -> Pin2Element {
        use Branch::*;
        let (branch, z) = match (self.branch, other.branch) {
            (Circle, Circle) => (Circle, &self.z * &other.z),
            (Circle, JCircle) => (JCircle, &self.z * &other.z),
            (JCircle, Circle) => (JCircle, &self.z * &other.z.conj()),
            (JCircle, JCircle) => (Circle, -&(&self.z * &other.z.conj())),
        };
        Pin2Element { branch, z }
    }

    /// Character of the twist representation on the imaginary line:
    /// +1 on the circle, -1 on the j-circle.
    pub fn epsilon(&self) -> i64 {
        match self.branch {
            Branch::Circle => 1,
            Branch::JCircle => -1,
        }
    }
}

/// Element of Spin(4) = Sp(1) x Sp(1): a pair of exact unit quaternions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spin4Element {
    pub p_minus: Quaternion,
    pub p_plus: Quaternion,
}

impl Spin4Element {
    pub fn new(p_minus: Quaternion, p_plus: Quaternion) -> Result<Self> {
        if !p_minus.norm_sqr().is_one() || !p_plus.norm_sqr().is_one() {
            return Err(Error::InvalidArgument(
                "Spin(4) factors must have exact unit norm".into(),
            ));
        }
        Ok(Spin4Element { p_minus, p_plus })
    }

    pub fn identity() -> Self {
        Spin4Element {
            p_minus: Quaternion::one(),
            p_plus: Quaternion::one(),
        }
    }

    pub fn mul(&self, other: &Spin4Element) -> Spin4Element {
        Spin4Element {
            p_minus: qmul(&self.p_minus, &other.p_minus),
            p_plus: qmul(&self.p_plus, &other.p_plus),
        }
    }
}

/// An element of Spin(4) x Pin(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupTriple {
    pub spin4: Spin4Element,
    pub p0: Pin2Element,
}

impl GroupTriple {
    pub fn new(spin4: Spin4Element, p0: Pin2Element) -> Self {
        GroupTriple { spin4, p0 }
    }

    pub fn identity() -> Self {
        GroupTriple {
            spin4: Spin4Element::identity(),
            p0: Pin2Element::identity(),
        }
    }

    pub fn mul(&self, other: &GroupTriple) -> GroupTriple {
        GroupTriple {
            spin4: self.spin4.mul(&other.spin4),
            p0: self.p0.mul(&other.p0),
        }
    }

    /// Whether both Spin(4) factors equal the Pin(2) slot.
    pub fn is_diagonal(&self) -> bool {
        let q = self.p0.as_quaternion();
        self.spin4.p_minus == q && self.spin4.p_plus == q
    }
}

/// Pin(2) embedded diagonally into Spin(4) x Pin(2).
pub fn diagonal_embed(p0: &Pin2Element) -> GroupTriple {
    let q = p0.as_quaternion();
    GroupTriple {
        spin4: Spin4Element {
            p_minus: q.clone(),
            p_plus: q,
        },
        p0: p0.clone(),
    }
}

/// Action on tangent vectors: p_minus v p_plus^{-1}, with the branch sign on
/// the imaginary line when the vector is imaginary-scaled.
pub fn act_tangent(g: &GroupTriple, v: &TangentVector) -> TangentVector {
    let p_plus_inv = g.spin4.p_plus.inv().expect("unit quaternion");
    let mut q = qmul(&qmul(&g.spin4.p_minus, &v.q), &p_plus_inv);
    if v.imaginary_scaled && g.p0.epsilon() < 0 {
        q = -&q;
    }
    TangentVector {
        q,
        imaginary_scaled: v.imaginary_scaled,
    }
}

/// Action on spinors: p_plus s p_0^{-1} on the plus chirality and
/// p_minus s p_0^{-1} on the minus chirality.
pub fn act_spinor(g: &GroupTriple, s: &Spinor) -> Spinor {
    let factor = match s.chirality {
        crate::clifford::Chirality::Plus => &g.spin4.p_plus,
        crate::clifford::Chirality::Minus => &g.spin4.p_minus,
    };
    let p0_inv = g.p0.inverse().as_quaternion();
    Spinor::new(qmul(&qmul(factor, &s.q), &p0_inv), s.chirality)
}

/// The exact 4x4 rational matrix of v |-> p_minus v p_plus^{-1} in the basis
/// 1, i, j, k; column alpha holds the coordinates of the image of e_alpha.
pub fn tangent_matrix(g: &GroupTriple) -> [[Rational; 4]; 4] {
    let mut cols: Vec<[Rational; 4]> = Vec::with_capacity(4);
    for alpha in 0..4 {
        let image = act_tangent(g, &TangentVector::basis(alpha));
        cols.push(image.q.to_reals());
    }
    std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
}

/// Action on tensors: both factors act and the result is re-expanded in the
/// standard basis, result_beta = sum_alpha A(g)_{beta alpha} (g . T_alpha).
pub fn act_tensor(g: &GroupTriple, t: &CliffordTensor) -> CliffordTensor {
    act_tensor_with(g, &tangent_matrix(g), t)
}

fn act_tensor_with(
    g: &GroupTriple,
    a: &[[Rational; 4]; 4],
    t: &CliffordTensor,
) -> CliffordTensor {
    let acted: Vec<Quaternion> = (0..4)
        .map(|alpha| act_spinor(g, &t.component(alpha)).q)
        .collect();
    let comps = std::array::from_fn(|beta| {
        let mut acc = Quaternion::zero();
        for (alpha, q) in acted.iter().enumerate() {
            if a[beta][alpha].is_zero() {
                continue;
            }
            acc = &acc + &q.scale(&a[beta][alpha]);
        }
        acc
    });
    CliffordTensor::new(comps, t.chirality)
}

/// Action on a 3/2-spinor; lands in ker rho again.
pub fn act_three_half(g: &GroupTriple, psi: &ThreeHalfSpinor) -> ThreeHalfSpinor {
    ThreeHalfSpinor::new(act_tensor(g, psi.tensor()))
        .expect("the kernel of rho is preserved by the action")
}

/// Induced action on moment-map values: conjugation by the matrix of the
/// chirality factor, with the branch sign of the imaginary line.
pub fn act_endo(g: &GroupTriple, factor: &Quaternion, e: &Endo2) -> Endo2 {
    let u = Endo2::from_quaternion(factor);
    let mut out = u.mul(e).mul(&u.conj_transpose());
    if g.p0.epsilon() < 0 {
        out = out.neg();
    }
    out
}

/// Which identity the harness checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquivarianceKind {
    Kernel,
    CliffMult,
    Projection,
    Mu,
}

/// Input data for one equivariance check.
#[derive(Clone, Debug)]
pub enum EquivarianceData {
    Kernel(ThreeHalfSpinor),
    CliffMult {
        a: TangentVector,
        psi: ThreeHalfSpinor,
    },
    Projection(CliffordTensor),
    Mu(ThreeHalfSpinor),
}

/// Verifies one fiberwise equivariance identity with literal equality.
///
/// - kernel: rho(g . psi) = 0 for psi in ker rho;
/// - cliffmult: g . (a . psi) = (g . a) . (g . psi);
/// - projection: pi(g . T) = g . pi(T), asserted for diagonal Pin(2)
///   elements only (non-diagonal input is refused);
/// - mu: mu(g . psi) equals the conjugated value with the branch sign.
pub fn check_equivariance(
    kind: EquivarianceKind,
    g: &GroupTriple,
    data: &EquivarianceData,
) -> Result<bool> {
    let matrix = tangent_matrix(g);
    match (kind, data) {
        (EquivarianceKind::Kernel, EquivarianceData::Kernel(psi)) => {
            Ok(rho_contract(&act_tensor_with(g, &matrix, psi.tensor())).is_zero())
        }
        (EquivarianceKind::CliffMult, EquivarianceData::CliffMult { a, psi }) => {
            let lhs = act_tensor_with(g, &matrix, &tensor_mult(a, psi.tensor()));
            let rhs = tensor_mult(&act_tangent(g, a), &act_tensor_with(g, &matrix, psi.tensor()));
            Ok(lhs == rhs)
        }
        (EquivarianceKind::Projection, EquivarianceData::Projection(t)) => {
            if !g.is_diagonal() {
                return Err(Error::NonDiagonalGroupElement);
            }
            let lhs = project_32(&act_tensor_with(g, &matrix, t));
            let rhs = act_tensor_with(g, &matrix, project_32(t).tensor());
            Ok(lhs.tensor() == &rhs)
        }
        (EquivarianceKind::Mu, EquivarianceData::Mu(psi)) => {
            let factor = match psi.chirality() {
                crate::clifford::Chirality::Plus => &g.spin4.p_plus,
                crate::clifford::Chirality::Minus => &g.spin4.p_minus,
            };
            let acted = ThreeHalfSpinor::new(act_tensor_with(g, &matrix, psi.tensor()))
                .expect("the kernel of rho is preserved by the action");
            let lhs = mu(&acted);
            let rhs = act_endo(g, factor, mu(psi).as_endo());
            Ok(lhs.as_endo() == &rhs)
        }
        _ => Err(Error::ShapeMismatch(format!(
            "data does not match kind {kind:?}"
        ))),
    }
}

/// Drives `clifford_mult` through a single spinor for the harness.
pub fn act_then_mult(g: &GroupTriple, v: &TangentVector, s: &Spinor) -> (Spinor, Spinor) {
    let lhs = act_spinor(g, &clifford_mult(v, s));
    let rhs = clifford_mult(&act_tangent(g, v), &act_spinor(g, s));
    (lhs, rhs)
}

/// Result of one row of the identity verification table.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct EquivarianceRow {
    pub kind: String,
    pub checks: usize,
    pub passes: usize,
    pub all_pass: bool,
}

/// 25 distinct small-height rational points for each circle branch.
pub fn circle_sample_points() -> Vec<Rational> {
    let mut pts = Vec::with_capacity(25);
    'outer: for q in 1..=6i64 {
        for p in -q..=q {
            let t = crate::scalars::rat(p, q);
            if !pts.contains(&t) {
                pts.push(t);
                if pts.len() == 25 {
                    break 'outer;
                }
            }
        }
    }
    pts
}

/// Runs all four equivariance checks over a fixed family of Pin(2)
/// elements (25 rational circle points per branch, diagonally embedded)
/// against `samples` random exact inputs each, returning one row per identity.
pub fn equivariance_suite(samples: usize, seed: u64) -> Vec<EquivarianceRow> {
    use crate::clifford::Chirality;
    use crate::sampling;
    use rand::SeedableRng;
    use rayon::prelude::*;

    let mut elements = Vec::with_capacity(50);
    for t in circle_sample_points() {
        elements.push(Pin2Element::unit_circle_point(&t));
        elements.push(Pin2Element::j_circle_point(&t));
    }

    let kinds = [
        EquivarianceKind::Kernel,
        EquivarianceKind::CliffMult,
        EquivarianceKind::Projection,
        EquivarianceKind::Mu,
    ];
    kinds
        .into_iter()
        .map(|kind| {
            let outcomes: Vec<bool> = elements
                .par_iter()
                .enumerate()
                .flat_map_iter(|(idx, p0)| {
                    // one deterministic stream per (kind, element) pair
                    let stream = seed
                        ^ (idx as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
                        ^ ((kind as u64) << 56);
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(stream);
                    let g = diagonal_embed(p0);
                    (0..samples)
                        .map(|_| {
                            let data = match kind {
                                EquivarianceKind::Kernel => EquivarianceData::Kernel(
                                    sampling::random_three_half(&mut rng, Chirality::Plus),
                                ),
                                EquivarianceKind::CliffMult => EquivarianceData::CliffMult {
                                    a: TangentVector::imaginary(sampling::random_quaternion(
                                        &mut rng,
                                    )),
                                    psi: sampling::random_three_half(&mut rng, Chirality::Plus),
                                },
                                EquivarianceKind::Projection => EquivarianceData::Projection(
                                    sampling::random_tensor(&mut rng, Chirality::Minus),
                                ),
                                EquivarianceKind::Mu => EquivarianceData::Mu(
                                    sampling::random_three_half(&mut rng, Chirality::Plus),
                                ),
                            };
                            check_equivariance(kind, &g, &data).unwrap_or(false)
                        })
                        .collect::<Vec<bool>>()
                })
                .collect();
            let checks = outcomes.len();
            let passes = outcomes.iter().filter(|b| **b).count();
            let name = match kind {
                EquivarianceKind::Kernel => "kernel",
                EquivarianceKind::CliffMult => "cliffmult",
                EquivarianceKind::Projection => "projection",
                EquivarianceKind::Mu => "mu",
            };
            EquivarianceRow {
                kind: name.to_string(),
                checks,
                passes,
                all_pass: checks == passes,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Chirality;
    use crate::sampling;
    use crate::scalars::{int, rat};
    use num_traits::Zero;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn circle_points_are_exactly_unit() {
        assert_eq!(
            Pin2Element::unit_circle_point(&int(0)).z,
            GaussComplex::one()
        );
        assert_eq!(Pin2Element::unit_circle_point(&int(1)).z, GaussComplex::i());
        let p = Pin2Element::unit_circle_point(&rat(1, 2));
        assert_eq!(p.z, GaussComplex::new(rat(3, 5), rat(4, 5)));
        assert!(p.z.norm_sqr().is_one());
    }

    #[test]
    fn pin2_group_law() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..50 {
            let a = sampling::random_pin2(&mut rng);
            let b = sampling::random_pin2(&mut rng);
            // the quaternion picture realizes the abstract group law
            assert_eq!(
                a.mul(&b).as_quaternion(),
                qmul(&a.as_quaternion(), &b.as_quaternion())
            );
            assert_eq!(
                a.mul(&a.inverse()).as_quaternion(),
                Quaternion::one()
            );
        }
        // j^2 = -1 lands on the circle branch
        let j = Pin2Element::j();
        let jj = j.mul(&j);
        assert_eq!(jj.branch, Branch::Circle);
        assert_eq!(jj.as_quaternion(), -&Quaternion::one());
    }

    #[test]
    fn diagonal_embedding() {
        assert_eq!(
            diagonal_embed(&Pin2Element::identity()),
            GroupTriple::identity()
        );
        let g = diagonal_embed(&Pin2Element::j());
        assert_eq!(g.spin4.p_minus, Quaternion::unit_j());
        assert_eq!(g.spin4.p_plus, Quaternion::unit_j());
        // j i j^{-1} = -i
        let v = act_tangent(&g, &TangentVector::basis(1));
        assert_eq!(v.q, -&Quaternion::unit_i());
    }

    #[test]
    fn tangent_action_examples() {
        let mut rng = StdRng::seed_from_u64(42);
        let id = GroupTriple::identity();
        let v = TangentVector::new(sampling::random_quaternion(&mut rng));
        assert_eq!(act_tangent(&id, &v), v);

        let g = GroupTriple::new(
            Spin4Element::new(Quaternion::unit_j(), Quaternion::unit_j()).unwrap(),
            Pin2Element::identity(),
        );
        assert_eq!(
            act_tangent(&g, &TangentVector::basis(1)).q,
            -&Quaternion::unit_i()
        );

        for _ in 0..100 {
            let g = sampling::random_triple(&mut rng);
            let v = TangentVector::new(sampling::random_quaternion(&mut rng));
            assert_eq!(act_tangent(&g, &v).q.norm_sqr(), v.q.norm_sqr());
        }
    }

    #[test]
    fn tangent_matrix_is_special_orthogonal() {
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..25 {
            let g = sampling::random_triple(&mut rng);
            let a = tangent_matrix(&g);
            // orthogonality: A^t A = I
            for i in 0..4 {
                for j in 0..4 {
                    let dot: Rational = (0..4).map(|k| &a[k][i] * &a[k][j]).sum();
                    assert_eq!(dot, if i == j { int(1) } else { int(0) });
                }
            }
            assert_eq!(det4(&a), int(1));
        }
    }

    fn det4(a: &[[Rational; 4]; 4]) -> Rational {
        let mut det = Rational::zero();
        // expansion over permutations of S4
        let perms: [( [usize;4], i64 );24] = PERMS4;
        for (p, sign) in perms {
            let mut term = int(sign);
            for (r, c) in p.iter().enumerate() {
                term *= a[r][*c].clone();
            }
            det += term;
        }
        det
    }

    const PERMS4: [([usize; 4], i64); 24] = [
        ([0, 1, 2, 3], 1),
        ([0, 1, 3, 2], -1),
        ([0, 2, 1, 3], -1),
        ([0, 2, 3, 1], 1),
        ([0, 3, 1, 2], 1),
        ([0, 3, 2, 1], -1),
        ([1, 0, 2, 3], -1),
        ([1, 0, 3, 2], 1),
        ([1, 2, 0, 3], 1),
        ([1, 2, 3, 0], -1),
        ([1, 3, 0, 2], -1),
        ([1, 3, 2, 0], 1),
        ([2, 0, 1, 3], 1),
        ([2, 0, 3, 1], -1),
        ([2, 1, 0, 3], -1),
        ([2, 1, 3, 0], 1),
        ([2, 3, 0, 1], 1),
        ([2, 3, 1, 0], -1),
        ([3, 0, 1, 2], -1),
        ([3, 0, 2, 1], 1),
        ([3, 1, 0, 2], 1),
        ([3, 1, 2, 0], -1),
        ([3, 2, 0, 1], -1),
        ([3, 2, 1, 0], 1),
    ];

    #[test]
    fn spinor_action_examples() {
        let mut rng = StdRng::seed_from_u64(44);
        let s = Spinor::new(sampling::random_quaternion(&mut rng), Chirality::Plus);
        assert_eq!(act_spinor(&GroupTriple::identity(), &s), s);

        // p0 = j, rest identity, s = 1: s j^{-1} = -j
        let g = GroupTriple::new(Spin4Element::identity(), Pin2Element::j());
        let s = Spinor::new(Quaternion::one(), Chirality::Plus);
        assert_eq!(act_spinor(&g, &s).q, -&Quaternion::unit_j());
    }

    #[test]
    fn complex_scaling_commutes_with_right_pin2_factor() {
        // left and right multiplication commute by associativity, so the
        // left scalar slot passes every p0 move
        let mut rng = StdRng::seed_from_u64(45);
        for _ in 0..100 {
            let s = Spinor::new(sampling::random_quaternion(&mut rng), Chirality::Plus);
            let c = Quaternion::from_complex(sampling::random_gauss(&mut rng));
            let p0 = sampling::random_pin2(&mut rng).as_quaternion();
            let lhs = qmul(&c, &qmul(&s.q, &p0));
            let rhs = qmul(&qmul(&c, &s.q), &p0);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn complex_scaling_commutes_with_circle_action() {
        // the column scaling coincides with the circle part of Pin(2)
        let mut rng = StdRng::seed_from_u64(46);
        for _ in 0..50 {
            let s = Spinor::new(sampling::random_quaternion(&mut rng), Chirality::Plus);
            let c = sampling::random_gauss(&mut rng);
            let t = rat(rng_range(&mut rng), 7);
            let g = GroupTriple::new(
                Spin4Element::identity(),
                Pin2Element::unit_circle_point(&t),
            );
            let lhs = act_spinor(&g, &s.scale_complex(&c));
            let rhs = act_spinor(&g, &s).scale_complex(&c);
            assert_eq!(lhs, rhs);
        }
    }

    fn rng_range(rng: &mut StdRng) -> i64 {
        use rand::Rng;
        rng.gen_range(-12..=12)
    }

    #[test]
    fn group_action_axiom() {
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..25 {
            let g = sampling::random_triple(&mut rng);
            let h = sampling::random_triple(&mut rng);
            let gh = g.mul(&h);

            let v = TangentVector::new(sampling::random_quaternion(&mut rng));
            assert_eq!(act_tangent(&gh, &v), act_tangent(&g, &act_tangent(&h, &v)));

            let iv = TangentVector::imaginary(sampling::random_quaternion(&mut rng));
            assert_eq!(
                act_tangent(&gh, &iv),
                act_tangent(&g, &act_tangent(&h, &iv))
            );

            for chirality in [Chirality::Plus, Chirality::Minus] {
                let s = Spinor::new(sampling::random_quaternion(&mut rng), chirality);
                assert_eq!(act_spinor(&gh, &s), act_spinor(&g, &act_spinor(&h, &s)));
                let t = sampling::random_tensor(&mut rng, chirality);
                assert_eq!(act_tensor(&gh, &t), act_tensor(&g, &act_tensor(&h, &t)));
            }
        }
    }

    #[test]
    fn basis_transport_example() {
        let mut rng = StdRng::seed_from_u64(48);
        // p_minus = i, p_plus = 1 sends e1 (x) psi to (i e1) (x) psi = e2 (x) psi
        let g = GroupTriple::new(
            Spin4Element::new(Quaternion::unit_i(), Quaternion::one()).unwrap(),
            Pin2Element::identity(),
        );
        let psi = Spinor::new(sampling::random_quaternion(&mut rng), Chirality::Plus);
        let t = CliffordTensor::basis_tensor(0, &psi);
        let moved = act_tensor(&g, &t);
        assert_eq!(moved, CliffordTensor::basis_tensor(1, &psi));
    }

    #[test]
    fn equivariance_identity_element() {
        let mut rng = StdRng::seed_from_u64(49);
        let id = GroupTriple::identity();
        let psi = sampling::random_three_half(&mut rng, Chirality::Plus);
        let a = TangentVector::imaginary(sampling::random_quaternion(&mut rng));
        let t = sampling::random_tensor(&mut rng, Chirality::Minus);
        assert!(check_equivariance(
            EquivarianceKind::Kernel,
            &id,
            &EquivarianceData::Kernel(psi.clone())
        )
        .unwrap());
        assert!(check_equivariance(
            EquivarianceKind::CliffMult,
            &id,
            &EquivarianceData::CliffMult {
                a,
                psi: psi.clone()
            }
        )
        .unwrap());
        assert!(check_equivariance(
            EquivarianceKind::Projection,
            &id,
            &EquivarianceData::Projection(t)
        )
        .unwrap());
        assert!(
            check_equivariance(EquivarianceKind::Mu, &id, &EquivarianceData::Mu(psi)).unwrap()
        );
    }

    #[test]
    fn all_kinds_hold_on_both_branches() {
        let mut rng = StdRng::seed_from_u64(50);
        let mut elements = Vec::new();
        for n in 1..=25i64 {
            elements.push(Pin2Element::unit_circle_point(&rat(n, 13)));
            elements.push(Pin2Element::j_circle_point(&rat(n, 9)));
        }
        for p0 in &elements {
            let g = diagonal_embed(p0);
            for _ in 0..4 {
                let psi = sampling::random_three_half(&mut rng, Chirality::Plus);
                let a = TangentVector::imaginary(sampling::random_quaternion(&mut rng));
                let t = sampling::random_tensor(&mut rng, Chirality::Minus);
                assert!(check_equivariance(
                    EquivarianceKind::Kernel,
                    &g,
                    &EquivarianceData::Kernel(psi.clone())
                )
                .unwrap());
                assert!(check_equivariance(
                    EquivarianceKind::CliffMult,
                    &g,
                    &EquivarianceData::CliffMult {
                        a,
                        psi: psi.clone()
                    }
                )
                .unwrap());
                assert!(check_equivariance(
                    EquivarianceKind::Projection,
                    &g,
                    &EquivarianceData::Projection(t)
                )
                .unwrap());
                assert!(check_equivariance(
                    EquivarianceKind::Mu,
                    &g,
                    &EquivarianceData::Mu(psi)
                )
                .unwrap());
            }
        }
    }

    #[test]
    fn kernel_and_cliffmult_hold_for_general_triples() {
        let mut rng = StdRng::seed_from_u64(51);
        for _ in 0..50 {
            let g = sampling::random_triple(&mut rng);
            let psi = sampling::random_three_half(&mut rng, Chirality::Plus);
            let a = TangentVector::imaginary(sampling::random_quaternion(&mut rng));
            assert!(check_equivariance(
                EquivarianceKind::Kernel,
                &g,
                &EquivarianceData::Kernel(psi.clone())
            )
            .unwrap());
            assert!(check_equivariance(
                EquivarianceKind::CliffMult,
                &g,
                &EquivarianceData::CliffMult { a, psi: psi.clone() }
            )
            .unwrap());
            assert!(
                check_equivariance(EquivarianceKind::Mu, &g, &EquivarianceData::Mu(psi)).unwrap()
            );
        }
    }

    #[test]
    fn projection_refuses_non_diagonal_elements() {
        let mut rng = StdRng::seed_from_u64(52);
        let g = GroupTriple::new(
            Spin4Element::new(Quaternion::unit_i(), Quaternion::one()).unwrap(),
            Pin2Element::identity(),
        );
        let t = sampling::random_tensor(&mut rng, Chirality::Minus);
        let r = check_equivariance(
            EquivarianceKind::Projection,
            &g,
            &EquivarianceData::Projection(t),
        );
        assert!(matches!(r, Err(Error::NonDiagonalGroupElement)));
    }

    #[test]
    fn mu_check_matches_displayed_form_on_circle_branch() {
        // with p_plus a circle point the branch sign is +1 and the check is
        // the literal conjugation identity
        let mut rng = StdRng::seed_from_u64(53);
        let p = Pin2Element::unit_circle_point(&rat(1, 3));
        let g = diagonal_embed(&p);
        assert_eq!(g.p0.epsilon(), 1);
        for _ in 0..20 {
            let psi = sampling::random_three_half(&mut rng, Chirality::Plus);
            let lhs = mu(&act_three_half(&g, &psi));
            let u = Endo2::from_quaternion(&g.spin4.p_plus);
            let rhs = u.mul(mu(&psi).as_endo()).mul(&u.conj_transpose());
            assert_eq!(lhs.as_endo(), &rhs);
        }
    }

    #[test]
    fn self_dual_identification_with_conjugation_action() {
        use crate::clifford::{rho2_selfdual, rho2_two_form, SelfDualForm, WEDGE_PAIRS};
        // the conjugation action p v p^{-1} on the imaginary quaternions
        // matches the induced action on self-dual coefficients
        let mut rng = StdRng::seed_from_u64(54);
        for _ in 0..25 {
            let p0 = sampling::random_pin2(&mut rng);
            let g = diagonal_embed(&p0);
            let a = tangent_matrix(&g);
            let coeffs: [Rational; 3] = std::array::from_fn(|_| sampling::random_rational(&mut rng));
            let form = SelfDualForm::new(coeffs.clone(), false);

            // transport the wedge expansion through Lambda^2 of A(g)
            let sd = crate::clifford::self_dual_basis_wedges();
            let mut wedge: Vec<Rational> = vec![Rational::zero(); 6];
            for (k, c) in coeffs.iter().enumerate() {
                for (idx, w) in sd[k].iter().enumerate() {
                    wedge[idx] += c * &int(*w);
                }
            }
            let mut transported = vec![Rational::zero(); 6];
            for (idx, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
                if wedge[idx].is_zero() {
                    continue;
                }
                // e_i ^ e_j maps to sum over r < s of minors
                for (out_idx, &(r, s)) in WEDGE_PAIRS.iter().enumerate() {
                    let minor = &(&a[r][i] * &a[s][j]) - &(&a[r][j] * &a[s][i]);
                    transported[out_idx] += &wedge[idx] * &minor;
                }
            }
            let wedge_arr: [Rational; 6] = std::array::from_fn(|i| transported[i].clone());
            let via_wedges = rho2_two_form(&wedge_arr);

            // conjugation route on the coefficient quaternion
            let q = form.as_imaginary_quaternion();
            let p = p0.as_quaternion();
            let conjugated = qmul(&qmul(&p, &q), &p.inv().unwrap());
            let via_conj = Endo2::from_quaternion(&conjugated);

            assert_eq!(via_wedges, via_conj);
            // sanity: the original form matches its own wedge expansion
            let mut orig: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
            for (k, c) in coeffs.iter().enumerate() {
                for (idx, w) in sd[k].iter().enumerate() {
                    orig[idx] += c * &int(*w);
                }
            }
            assert_eq!(rho2_two_form(&orig), rho2_selfdual(&form));
        }
    }

    #[test]
    fn moment_map_values_keep_their_trace_norm() {
        // the determinant of the traceless Hermitian value encodes the
        // trace norm exactly; it is preserved by the twisted action
        let mut rng = StdRng::seed_from_u64(55);
        let det = |e: &Endo2| -> GaussComplex {
            &(&e.m[0][0] * &e.m[1][1]) - &(&e.m[0][1] * &e.m[1][0])
        };
        for _ in 0..25 {
            let p0 = sampling::random_pin2(&mut rng);
            let g = diagonal_embed(&p0);
            let psi = sampling::random_three_half(&mut rng, Chirality::Plus);
            let before = crate::clifford::mu(&psi);
            let after = crate::clifford::mu(&act_three_half(&g, &psi));
            assert_eq!(det(before.as_endo()), det(after.as_endo()));
        }
    }

    #[test]
    fn j_acts_by_minus_one_on_the_twisted_line() {
        // the branch character: the imaginary-scaled zero-form line
        let j = diagonal_embed(&Pin2Element::j());
        let x = TangentVector::imaginary(Quaternion::one());
        // j 1 j^{-1} = 1, so only the twist sign acts
        let moved = act_tangent(&j, &x);
        assert_eq!(moved.q, -&Quaternion::one());
        assert_eq!(Pin2Element::j().epsilon(), -1);
        assert_eq!(Pin2Element::unit_circle_point(&rat(2, 3)).epsilon(), 1);
    }
}
