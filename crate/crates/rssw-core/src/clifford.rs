//! Fiberwise algebra of the model fiber: V = H acting on the spinor spaces
//! W+/W- by Clifford multiplication, the embedding iota, the 3/2-projection,
//! the quadratic moment map mu, and the translation between self-dual forms
//! and traceless endomorphisms.
//!
//! Conventions (pinned once, used everywhere):
//! - basis e1 = 1, e2 = i, e3 = j, e4 = k of V = H;
//! - rho(v) sends a plus spinor psi to the quaternion product v*psi and a
//!   minus spinor phi to -conj(v)*phi, so rho(e_a)rho(e_b) + rho(e_b)rho(e_a)
//!   = -2 delta_ab on both chiralities;
//! - the complex structure on spinors is column scaling of the matrix model,
//!   `Spinor::scale_complex`; it commutes with every left quaternion
//!   multiplication and preserves ker rho;
//! - an imaginary 1-form i*a is stored as the real vector a with a boolean
//!   flag, and Clifford multiplication by it applies the complex scaling
//!   after the quaternion product.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{qmul, GaussComplex, Quaternion, Rational};

/// Chirality label for spinors and tensors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// Element of V, optionally marked as the imaginary multiple i*a of the
/// stored real vector a.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangentVector {
    pub q: Quaternion,
    pub imaginary_scaled: bool,
}

impl TangentVector {
    pub fn new(q: Quaternion) -> Self {
        TangentVector {
            q,
            imaginary_scaled: false,
        }
    }

    pub fn imaginary(q: Quaternion) -> Self {
        TangentVector {
            q,
            imaginary_scaled: true,
        }
    }

    /// e1 = 1, e2 = i, e3 = j, e4 = k.
    pub fn basis(alpha: usize) -> Self {
        TangentVector::new(Quaternion::basis(alpha))
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }
}

/// Half-spinor: a quaternion fiber value with a chirality label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spinor {
    pub q: Quaternion,
    pub chirality: Chirality,
}

impl Spinor {
    pub fn new(q: Quaternion, chirality: Chirality) -> Self {
        Spinor { q, chirality }
    }

    pub fn zero(chirality: Chirality) -> Self {
        Spinor::new(Quaternion::zero(), chirality)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// Complex scalar action: scales both matrix columns, i.e. right
    /// multiplication by the embedded scalar.  Commutes with every left
    /// quaternion multiplication and preserves ker rho.
    pub fn scale_complex(&self, c: &GaussComplex) -> Spinor {
        Spinor::new(
            qmul(&self.q, &Quaternion::from_complex(c.clone())),
            self.chirality,
        )
    }

    /// Left quaternion multiplication, chirality unchanged.
    pub fn left_mul(&self, q: &Quaternion) -> Spinor {
        Spinor::new(qmul(q, &self.q), self.chirality)
    }

    pub fn add(&self, other: &Spinor) -> Spinor {
        assert_eq!(self.chirality, other.chirality, "chirality mismatch");
        Spinor::new(&self.q + &other.q, self.chirality)
    }
}

/// Hermitian inner product on a spinor fiber, conjugate-linear in the first
/// slot: <a,b> = conj(a.z) b.z + conj(a.w) b.w.
pub fn spinor_inner(a: &Spinor, b: &Spinor) -> GaussComplex {
    &(&a.q.z.conj() * &b.q.z) + &(&a.q.w.conj() * &b.q.w)
}

/// Element of V (x) W(+/-): four spinor components of equal chirality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordTensor {
    pub components: [Quaternion; 4],
    pub chirality: Chirality,
}

impl CliffordTensor {
    pub fn new(components: [Quaternion; 4], chirality: Chirality) -> Self {
        CliffordTensor {
            components,
            chirality,
        }
    }

    pub fn zero(chirality: Chirality) -> Self {
        CliffordTensor::new(std::array::from_fn(|_| Quaternion::zero()), chirality)
    }

    /// e_alpha (x) s.
    pub fn basis_tensor(alpha: usize, s: &Spinor) -> Self {
        let mut t = CliffordTensor::zero(s.chirality);
        t.components[alpha] = s.q.clone();
        t
    }

    pub fn component(&self, alpha: usize) -> Spinor {
        Spinor::new(self.components[alpha].clone(), self.chirality)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &CliffordTensor) -> CliffordTensor {
        assert_eq!(self.chirality, other.chirality, "chirality mismatch");
        CliffordTensor::new(
            std::array::from_fn(|i| &self.components[i] + &other.components[i]),
            self.chirality,
        )
    }

    pub fn sub(&self, other: &CliffordTensor) -> CliffordTensor {
        assert_eq!(self.chirality, other.chirality, "chirality mismatch");
        CliffordTensor::new(
            std::array::from_fn(|i| &self.components[i] - &other.components[i]),
            self.chirality,
        )
    }

    pub fn scale(&self, s: &Rational) -> CliffordTensor {
        CliffordTensor::new(
            std::array::from_fn(|i| self.components[i].scale(s)),
            self.chirality,
        )
    }

    /// Componentwise complex scalar action.
    pub fn scale_complex(&self, c: &GaussComplex) -> CliffordTensor {
        let q = Quaternion::from_complex(c.clone());
        CliffordTensor::new(
            std::array::from_fn(|i| qmul(&self.components[i], &q)),
            self.chirality,
        )
    }
}

/// Hermitian inner product on V (x) W, the componentwise sum of spinor
/// inner products.
pub fn inner_product(a: &CliffordTensor, b: &CliffordTensor) -> GaussComplex {
    assert_eq!(a.chirality, b.chirality, "chirality mismatch");
    let mut acc = GaussComplex::zero();
    for alpha in 0..4 {
        acc = &acc + &spinor_inner(&a.component(alpha), &b.component(alpha));
    }
    acc
}

/// Clifford multiplication rho(v): flips chirality; on plus spinors it is
/// the quaternion product v*s, on minus spinors -conj(v)*s.  An
/// imaginary-scaled v applies the complex scaling by i afterwards.
pub fn clifford_mult(v: &TangentVector, s: &Spinor) -> Spinor {
    let base = match s.chirality {
        Chirality::Plus => qmul(&v.q, &s.q),
        Chirality::Minus => -&qmul(&v.q.conj(), &s.q),
    };
    let out = Spinor::new(base, s.chirality.flip());
    if v.imaginary_scaled {
        out.scale_complex(&GaussComplex::i())
    } else {
        out
    }
}

/// rho contraction: sum over alpha of rho(e_alpha) applied to the alpha
/// component.  Output chirality is flipped.
pub fn rho_contract(t: &CliffordTensor) -> Spinor {
    let mut acc = Spinor::zero(t.chirality.flip());
    for alpha in 0..4 {
        acc = acc.add(&clifford_mult(&TangentVector::basis(alpha), &t.component(alpha)));
    }
    acc
}

/// Embedding iota: components -(1/4) rho(e_alpha) s.  Inverts rho_contract:
/// rho_contract(iota(s)) = s.
pub fn iota(s: &Spinor) -> CliffordTensor {
    let quarter = -Rational::new(1.into(), 4.into());
    let comps = std::array::from_fn(|alpha| {
        clifford_mult(&TangentVector::basis(alpha), s).q.scale(&quarter)
    });
    CliffordTensor::new(comps, s.chirality.flip())
}

/// Rarita-Schwinger field: an element of ker rho.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThreeHalfSpinor {
    tensor: CliffordTensor,
}

impl ThreeHalfSpinor {
    /// Validates the kernel condition exactly.
    pub fn new(tensor: CliffordTensor) -> Result<Self> {
        if !rho_contract(&tensor).is_zero() {
            return Err(Error::ShapeMismatch(
                "tensor is not in ker rho".to_string(),
            ));
        }
        Ok(ThreeHalfSpinor { tensor })
    }

    pub fn zero(chirality: Chirality) -> Self {
        ThreeHalfSpinor {
            tensor: CliffordTensor::zero(chirality),
        }
    }

    pub fn tensor(&self) -> &CliffordTensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> CliffordTensor {
        self.tensor
    }

    pub fn chirality(&self) -> Chirality {
        self.tensor.chirality
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn add(&self, other: &ThreeHalfSpinor) -> ThreeHalfSpinor {
        ThreeHalfSpinor {
            tensor: self.tensor.add(&other.tensor),
        }
    }

    pub fn scale(&self, s: &Rational) -> ThreeHalfSpinor {
        ThreeHalfSpinor {
            tensor: self.tensor.scale(s),
        }
    }

    /// Complex scaling stays in ker rho because it commutes with every left
    /// multiplication.
    pub fn scale_complex(&self, c: &GaussComplex) -> ThreeHalfSpinor {
        ThreeHalfSpinor {
            tensor: self.tensor.scale_complex(c),
        }
    }
}

/// Orthogonal projection onto ker rho: T - iota(rho(T)).  Idempotent, and
/// the complement is exactly the image of iota.
pub fn project_32(t: &CliffordTensor) -> ThreeHalfSpinor {
    let projected = t.sub(&iota(&rho_contract(t)));
    ThreeHalfSpinor::new(projected).expect("projection lands in ker rho")
}

/// 2x2 complex matrix acting on a spinor fiber, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endo2 {
    pub m: [[GaussComplex; 2]; 2],
}

impl Endo2 {
    pub fn zero() -> Self {
        Endo2 {
            m: std::array::from_fn(|_| std::array::from_fn(|_| GaussComplex::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut e = Endo2::zero();
        e.m[0][0] = GaussComplex::one();
        e.m[1][1] = GaussComplex::one();
        e
    }

    /// The matrix form of a quaternion, i.e. left multiplication in column
    /// coordinates.
    pub fn from_quaternion(q: &Quaternion) -> Self {
        Endo2 { m: q.matrix() }
    }

    pub fn add(&self, other: &Endo2) -> Endo2 {
        Endo2 {
            m: std::array::from_fn(|r| std::array::from_fn(|c| &self.m[r][c] + &other.m[r][c])),
        }
    }

    pub fn sub(&self, other: &Endo2) -> Endo2 {
        Endo2 {
            m: std::array::from_fn(|r| std::array::from_fn(|c| &self.m[r][c] - &other.m[r][c])),
        }
    }

    pub fn neg(&self) -> Endo2 {
        Endo2 {
            m: std::array::from_fn(|r| std::array::from_fn(|c| -&self.m[r][c])),
        }
    }

    pub fn mul(&self, other: &Endo2) -> Endo2 {
        Endo2 {
            m: crate::scalars::mat2_mul(&self.m, &other.m),
        }
    }

    pub fn scale_complex(&self, c: &GaussComplex) -> Endo2 {
        Endo2 {
            m: std::array::from_fn(|r| std::array::from_fn(|col| &self.m[r][col] * c)),
        }
    }

    pub fn scale(&self, s: &Rational) -> Endo2 {
        self.scale_complex(&GaussComplex::from_rational(s.clone()))
    }

    pub fn conj_transpose(&self) -> Endo2 {
        Endo2 {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    pub fn trace(&self) -> GaussComplex {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|row| row.iter().all(|e| e.is_zero()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.conj_transpose() == *self
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.conj_transpose() == self.neg()
    }
}

/// Traceless Hermitian endomorphism of the plus spinor fiber; the target of
/// the quadratic moment map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TracelessHermEndo(Endo2);

impl TracelessHermEndo {
    pub fn new(e: Endo2) -> Result<Self> {
        if !e.trace().is_zero() {
            return Err(Error::ShapeMismatch("endomorphism has nonzero trace".into()));
        }
        if !e.is_hermitian() {
            return Err(Error::ShapeMismatch("endomorphism is not Hermitian".into()));
        }
        Ok(TracelessHermEndo(e))
    }

    pub fn zero() -> Self {
        TracelessHermEndo(Endo2::zero())
    }

    pub fn as_endo(&self) -> &Endo2 {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &TracelessHermEndo) -> TracelessHermEndo {
        TracelessHermEndo(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &TracelessHermEndo) -> TracelessHermEndo {
        TracelessHermEndo(self.0.sub(&other.0))
    }

    pub fn scale(&self, s: &Rational) -> TracelessHermEndo {
        TracelessHermEndo(self.0.scale(s))
    }
}

/// Column outer product u v* of two spinor fiber values.
fn outer(u: &Quaternion, v: &Quaternion) -> Endo2 {
    let col = |q: &Quaternion| [q.z.clone(), q.w.clone()];
    let cu = col(u);
    let cv = col(v);
    Endo2 {
        m: std::array::from_fn(|r| std::array::from_fn(|c| &cu[r] * &cv[c].conj())),
    }
}

fn traceless_part(e: &Endo2) -> Endo2 {
    let half_tr = e.trace().scale(&Rational::new(1.into(), 2.into()));
    let mut correction = Endo2::zero();
    correction.m[0][0] = half_tr.clone();
    correction.m[1][1] = half_tr;
    e.sub(&correction)
}

/// Quadratic moment map: sum of the component outer products, traceless
/// part.  Hermitian and traceless by construction, and |c|^2-homogeneous
/// under the complex scaling.
pub fn mu(psi: &ThreeHalfSpinor) -> TracelessHermEndo {
    let mut acc = Endo2::zero();
    for alpha in 0..4 {
        let c = &psi.tensor().components[alpha];
        acc = acc.add(&outer(c, c));
    }
    TracelessHermEndo::new(traceless_part(&acc)).expect("mu is traceless Hermitian")
}

/// Polarization of mu: the traceless part of sum(psi_a phi_a* + phi_a psi_a*).
/// Satisfies mu(psi + phi) - mu(psi) - mu(phi) = mu_polarized(psi, phi).
pub fn mu_polarized(psi: &ThreeHalfSpinor, phi: &ThreeHalfSpinor) -> TracelessHermEndo {
    let mut acc = Endo2::zero();
    for alpha in 0..4 {
        let p = &psi.tensor().components[alpha];
        let q = &phi.tensor().components[alpha];
        acc = acc.add(&outer(p, q)).add(&outer(q, p));
    }
    TracelessHermEndo::new(traceless_part(&acc)).expect("polarization is traceless Hermitian")
}

/// Self-dual 2-form in the fixed basis
/// w1 = e1^e2 + e3^e4, w2 = e1^e3 - e2^e4, w3 = e1^e4 + e2^e3,
/// optionally carrying the imaginary scaling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SelfDualForm {
    pub coeffs: [Rational; 3],
    pub imaginary_scaled: bool,
}

impl SelfDualForm {
    pub fn new(coeffs: [Rational; 3], imaginary_scaled: bool) -> Self {
        SelfDualForm {
            coeffs,
            imaginary_scaled,
        }
    }

    pub fn zero(imaginary_scaled: bool) -> Self {
        SelfDualForm::new(std::array::from_fn(|_| Rational::zero()), imaginary_scaled)
    }

    pub fn basis(k: usize, imaginary_scaled: bool) -> Self {
        let mut f = SelfDualForm::zero(imaginary_scaled);
        f.coeffs[k] = Rational::one();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The coefficient vector as the imaginary quaternion c1 i + c2 j + c3 k.
    pub fn as_imaginary_quaternion(&self) -> Quaternion {
        Quaternion::from_reals(
            Rational::zero(),
            self.coeffs[0].clone(),
            self.coeffs[1].clone(),
            self.coeffs[2].clone(),
        )
    }
}

/// Ordered wedge index pairs for a general 2-form, (a,b) with a < b.
pub const WEDGE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The three self-dual basis forms as wedge coefficient 6-vectors.
pub fn self_dual_basis_wedges() -> [[i64; 6]; 3] {
    [
        [1, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, -1, 0],
        [0, 0, 1, 1, 0, 0],
    ]
}

/// The anti-self-dual basis forms as wedge coefficient 6-vectors.
pub fn anti_self_dual_basis_wedges() -> [[i64; 6]; 3] {
    [
        [1, 0, 0, 0, 0, -1],
        [0, 1, 0, 0, 1, 0],
        [0, 0, 1, -1, 0, 0],
    ]
}

/// The quaternion coefficient of the even Clifford action of a wedge
/// e_a ^ e_b: -(1/2) e_a conj(e_b).  Pure imaginary for a != b.
pub fn rho2_wedge_coefficient(a: usize, b: usize) -> Quaternion {
    let half = -Rational::new(1.into(), 2.into());
    qmul(&Quaternion::basis(a), &Quaternion::basis(b).conj()).scale(&half)
}

/// Even Clifford action of a general 2-form given by wedge coefficients in
/// the `WEDGE_PAIRS` order, as an endomorphism of the plus spinor fiber.
/// Annihilates the anti-self-dual forms.
pub fn rho2_two_form(wedge_coeffs: &[Rational; 6]) -> Endo2 {
    let mut q = Quaternion::zero();
    for (idx, &(a, b)) in WEDGE_PAIRS.iter().enumerate() {
        q = &q + &rho2_wedge_coefficient(a, b).scale(&wedge_coeffs[idx]);
    }
    Endo2::from_quaternion(&q)
}

/// Translation of a self-dual form into an endomorphism: left multiplication
/// by the imaginary quaternion of its coefficients, times i when the form is
/// imaginary-scaled.  Sends the basis w_k to left multiplication by i, j, k.
pub fn rho2_selfdual(omega: &SelfDualForm) -> Endo2 {
    let e = Endo2::from_quaternion(&omega.as_imaginary_quaternion());
    if omega.imaginary_scaled {
        e.scale_complex(&GaussComplex::i())
    } else {
        e
    }
}

/// Inverse translation.  Accepts traceless skew-Hermitian input (plain
/// self-dual form) or traceless Hermitian input (imaginary-scaled form);
/// anything else signals a convention bug.
pub fn rho2_inverse(e: &Endo2) -> Result<SelfDualForm> {
    if !e.trace().is_zero() {
        return Err(Error::NotInRho2Image("nonzero trace".into()));
    }
    let (skew, imaginary_scaled) = if e.is_skew_hermitian() {
        (e.clone(), false)
    } else if e.is_hermitian() {
        // divide by i: the Hermitian input is i times a skew form
        (e.scale_complex(&-&GaussComplex::i()), true)
    } else {
        return Err(Error::NotInRho2Image(
            "neither Hermitian nor skew-Hermitian".into(),
        ));
    };
    // skew = matrix of x i + y j + z k: entries (0,0) = x i, (1,0) = y - z i
    let x = skew.m[0][0].im.clone();
    let y = skew.m[1][0].re.clone();
    let z = -skew.m[1][0].im.clone();
    let form = SelfDualForm::new([x, y, z], imaginary_scaled);
    if rho2_selfdual(&form) != *e {
        return Err(Error::NotInRho2Image("reconstruction mismatch".into()));
    }
    Ok(form)
}

/// Componentwise Clifford multiplication of a tangent vector against a
/// tensor: (a . T)_alpha = rho(a) T_alpha.  Chirality flips.
pub fn tensor_mult(a: &TangentVector, t: &CliffordTensor) -> CliffordTensor {
    let comps = std::array::from_fn(|alpha| clifford_mult(a, &t.component(alpha)).q.clone());
    CliffordTensor::new(comps, t.chirality.flip())
}

/// Fiberwise quadratic term of the equations: the 3/2-projection of the
/// componentwise product of an imaginary 1-form against a 3/2-spinor.
pub fn quad_term(a: &TangentVector, psi: &ThreeHalfSpinor) -> ThreeHalfSpinor {
    assert!(
        a.imaginary_scaled,
        "quad_term expects an imaginary-scaled 1-form"
    );
    project_32(&tensor_mult(a, psi.tensor()))
}

/// Fiberwise linearization of the quadratic part at (psi, a) in the
/// direction (phi, b): the zeroth-order slots of the differential.
/// First slot: projection of b.psi + a.phi; second slot: the polarized
/// moment map, traceless Hermitian and symmetric in (psi, phi).
pub fn linearized_quadratic(
    psi: &ThreeHalfSpinor,
    a: &TangentVector,
    phi: &ThreeHalfSpinor,
    b: &TangentVector,
) -> (ThreeHalfSpinor, TracelessHermEndo) {
    assert!(
        a.imaginary_scaled && b.imaginary_scaled,
        "linearized_quadratic expects imaginary-scaled 1-forms"
    );
    let first = project_32(
        &tensor_mult(b, psi.tensor()).add(&tensor_mult(a, phi.tensor())),
    );
    let second = mu_polarized(psi, phi);
    (first, second)
}

/// Exact rank of a complex matrix by Gaussian elimination over the Gaussian
/// rationals.
pub fn complex_rank(mut rows: Vec<Vec<GaussComplex>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(pivot) = (row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pivot);
        let inv = rows[row][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            rows[row][c] = &rows[row][c] * &inv;
        }
        for r in 0..nrows {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let delta = &factor * &rows[row][c];
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

/// The 8x8 complex matrix of the 3/2-projection on V (x) W+ in the basis
/// e_alpha (x) {1, j}, using the column complex structure.
pub fn projection_matrix_plus() -> Vec<Vec<GaussComplex>> {
    let mut cols: Vec<Vec<GaussComplex>> = Vec::with_capacity(8);
    for alpha in 0..4 {
        for slot in 0..2 {
            let unit = if slot == 0 {
                Quaternion::one()
            } else {
                Quaternion::unit_j()
            };
            let t = CliffordTensor::basis_tensor(alpha, &Spinor::new(unit, Chirality::Plus));
            let p = project_32(&t);
            let mut col = Vec::with_capacity(8);
            for beta in 0..4 {
                let q = &p.tensor().components[beta];
                col.push(q.z.clone());
                col.push(q.w.clone());
            }
            cols.push(col);
        }
    }
    // transpose columns into rows
    (0..8)
        .map(|r| (0..8).map(|c| cols[c][r].clone()).collect())
        .collect()
}
