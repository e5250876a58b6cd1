//! Finite-dimensional laboratory for the global Kuranishi reduction of a
//! nonlinear map F = D + Q: spectral truncation, the correction map
//! phi = 1 + D^{-1} pi Q and its contraction inverse, the low-mode
//! approximations, and the zero-set correspondence.
//!
//! This is the only module that leaves exact arithmetic; every identity is
//! checked against an explicit tolerance.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Distance below which a cutoff is considered to collide with an
/// eigenvalue.
pub const TIE_TOL: f64 = 1e-6;

/// Symmetric bilinear map C x C -> R stored as one symmetric matrix per
/// output coordinate: Q(u, v)_i = u^T B_i v.
#[derive(Clone, Debug)]
pub struct QuadraticMap {
    rows: Vec<DMatrix<f64>>,
    dim_c: usize,
}

impl QuadraticMap {
    pub fn zero(dim_c: usize, dim_r: usize) -> Self {
        QuadraticMap {
            rows: (0..dim_r).map(|_| DMatrix::zeros(dim_c, dim_c)).collect(),
            dim_c,
        }
    }

    fn from_rows(rows: Vec<DMatrix<f64>>, dim_c: usize) -> Self {
        QuadraticMap { rows, dim_c }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|b| b.amax() == 0.0)
    }

    /// Q(v, v).
    pub fn eval(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.rows.len(), self.rows.iter().map(|b| (v.transpose() * b * v)[0]))
    }

    /// The symmetric bilinear value Q(u, v).
    pub fn bilinear(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.rows.len(), self.rows.iter().map(|b| (u.transpose() * b * v)[0]))
    }

    /// Differential at v: the matrix of h |-> 2 Q(v, h).
    pub fn differential(&self, v: &DVector<f64>) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.rows.len(), self.dim_c);
        for (i, b) in self.rows.iter().enumerate() {
            let bv = b * v;
            for j in 0..self.dim_c {
                d[(i, j)] = 2.0 * bv[j];
            }
        }
        d
    }

    fn scaled(&self, s: f64) -> QuadraticMap {
        QuadraticMap {
            rows: self.rows.iter().map(|b| b * s).collect(),
            dim_c: self.dim_c,
        }
    }

    /// Upper bound for the bilinear operator norm via Frobenius norms.
    fn norm_bound(&self) -> f64 {
        self.rows.iter().map(|b| b.norm().powi(2)).sum::<f64>().sqrt()
    }
}

/// Synthetic instance: linear part D with prescribed singular structure and
/// a quadratic part Q with a controlled contraction budget.
#[derive(Clone, Debug)]
pub struct KuranishiProblem {
    pub dim_c: usize,
    pub dim_r: usize,
    d: DMatrix<f64>,
    q: QuadraticMap,
    /// right singular frame (columns span C), dim_c x dim_c
    frame_c: DMatrix<f64>,
    /// left singular frame (columns span R), dim_r x dim_r
    frame_r: DMatrix<f64>,
    /// singular values, one per column of the thin part; zero-padded
    singulars: Vec<f64>,
}

/// Tolerances and the contraction budget of the laboratory.
#[derive(Clone, Copy, Debug)]
pub struct SandboxConfig {
    pub gamma_target: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub radius: f64,
}

impl Default for SandboxConfig {
    fn default() -> Self {
        SandboxConfig {
            gamma_target: 0.5,
            tol: 1e-10,
            max_iter: 200,
            radius: 1.0,
        }
    }
}

impl SandboxConfig {
    pub fn with_gamma(gamma_target: f64) -> Self {
        SandboxConfig {
            gamma_target,
            ..Default::default()
        }
    }
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    m.qr().q()
}

fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.gen_range(-1.0f64..1.0));
        let norm = v.norm();
        if norm > 1e-3 {
            return v / norm;
        }
    }
}

impl KuranishiProblem {
    /// Builds D from random orthogonal frames and an explicit list of
    /// nonzero singular values; the rest of the spectrum is zero.
    pub fn with_spectrum(
        seed: u64,
        dim_c: usize,
        dim_r: usize,
        singulars: &[f64],
        q_scale: f64,
        cfg: &SandboxConfig,
    ) -> Self {
        assert!(dim_c >= 1 && dim_r >= 1, "dimensions must be positive");
        assert!(
            singulars.len() <= dim_c.min(dim_r),
            "more singular values than the rank allows"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let frame_r = random_orthogonal(&mut rng, dim_r);
        let frame_c = random_orthogonal(&mut rng, dim_c);
        let mut sigma = DMatrix::zeros(dim_r, dim_c);
        for (i, s) in singulars.iter().enumerate() {
            sigma[(i, i)] = *s;
        }
        let d = &frame_r * sigma * frame_c.transpose();

        let raw = QuadraticMap::from_rows(
            (0..dim_r)
                .map(|_| {
                    let m = DMatrix::from_fn(dim_c, dim_c, |_, _| rng.gen_range(-1.0f64..1.0));
                    (&m + m.transpose()) * 0.5
                })
                .collect(),
            dim_c,
        );
        // rescale so that ||D^+|| * sup_{B(0,3R)} ||dQ|| <= q_scale * gamma
        let q = if q_scale == 0.0 {
            QuadraticMap::zero(dim_c, dim_r)
        } else {
            let sigma_min = singulars
                .iter()
                .copied()
                .filter(|s| *s > 0.0)
                .fold(f64::INFINITY, f64::min);
            let bound = raw.norm_bound() * 6.0 * cfg.radius / sigma_min;
            raw.scaled(q_scale * cfg.gamma_target / bound)
        };

        KuranishiProblem {
            dim_c,
            dim_r,
            d,
            q,
            frame_c,
            frame_r,
            singulars: singulars.to_vec(),
        }
    }

    /// Random instance: `kernel_dims` extra zero singular values beyond the
    /// rectangular defect, the rest drawn uniformly from `spectrum_range`.
    pub fn make(
        seed: u64,
        dim_c: usize,
        dim_r: usize,
        kernel_dims: usize,
        spectrum_range: (f64, f64),
        q_scale: f64,
        cfg: &SandboxConfig,
    ) -> Self {
        let rank = dim_c.min(dim_r).saturating_sub(kernel_dims);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let singulars: Vec<f64> = (0..rank)
            .map(|_| rng.gen_range(spectrum_range.0..spectrum_range.1))
            .collect();
        KuranishiProblem::with_spectrum(seed, dim_c, dim_r, &singulars, q_scale, cfg)
    }

    pub fn linear(&self) -> &DMatrix<f64> {
        &self.d
    }

    pub fn quadratic(&self) -> &QuadraticMap {
        &self.q
    }

    /// F(v) = D v + Q(v, v).
    pub fn functional(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.d * v + self.q.eval(v)
    }

    /// Eigenvalues of D^T D (ascending, zeros included).
    pub fn spectrum_c(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.singulars.iter().map(|x| x * x).collect();
        s.resize(self.dim_c, 0.0);
        s.sort_by(f64::total_cmp);
        s
    }

    /// Eigenvalues of D D^T (ascending, zeros included).
    pub fn spectrum_r(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.singulars.iter().map(|x| x * x).collect();
        s.resize(self.dim_r, 0.0);
        s.sort_by(f64::total_cmp);
        s
    }

    /// Replaces the quadratic part; used by the planted-zero builders.
    fn with_quadratic(mut self, q: QuadraticMap) -> Self {
        self.q = q;
        self
    }
}

/// Orthogonal splitting of domain and range at a spectral cutoff, with the
/// restricted inverse of D on the high part.
#[derive(Clone, Debug)]
pub struct SpectralSplit {
    pub cutoff: f64,
    pub proj_c_low: DMatrix<f64>,
    pub proj_c_high: DMatrix<f64>,
    pub proj_r_low: DMatrix<f64>,
    pub proj_r_high: DMatrix<f64>,
    /// D^{-1} on the high part composed with the high range projection
    pub d_high_inv: DMatrix<f64>,
    /// smallest retained eigenvalue of D^T D, infinite when nothing is high
    pub smallest_high: f64,
    pub dim_c_low: usize,
    pub dim_r_low: usize,
}

/// Splits at `cutoff`; errors when the cutoff collides with an eigenvalue.
pub fn spectral_split(p: &KuranishiProblem, cutoff: f64) -> Result<SpectralSplit> {
    for ev in p.spectrum_c() {
        if (ev - cutoff).abs() <= TIE_TOL {
            return Err(Error::CutoffNearEigenvalue {
                cutoff,
                eigenvalue: ev,
                tol: TIE_TOL,
            });
        }
    }
    let dims = p.singulars.len();
    let low_c: Vec<usize> = (0..p.dim_c)
        .filter(|&i| i >= dims || p.singulars[i] * p.singulars[i] <= cutoff)
        .collect();
    let high: Vec<usize> = (0..dims)
        .filter(|&i| p.singulars[i] * p.singulars[i] > cutoff)
        .collect();
    let low_r: Vec<usize> = (0..p.dim_r)
        .filter(|&i| i >= dims || p.singulars[i] * p.singulars[i] <= cutoff)
        .collect();

    let projector = |frame: &DMatrix<f64>, idx: &[usize]| -> DMatrix<f64> {
        let n = frame.nrows();
        let mut acc = DMatrix::zeros(n, n);
        for &i in idx {
            let col = frame.column(i);
            acc += &col * col.transpose();
        }
        acc
    };

    let proj_c_low = projector(&p.frame_c, &low_c);
    let proj_r_low = projector(&p.frame_r, &low_r);
    let proj_c_high = DMatrix::identity(p.dim_c, p.dim_c) - &proj_c_low;
    let proj_r_high = DMatrix::identity(p.dim_r, p.dim_r) - &proj_r_low;

    let mut d_high_inv = DMatrix::zeros(p.dim_c, p.dim_r);
    let mut smallest = f64::INFINITY;
    for &i in &high {
        let s = p.singulars[i];
        smallest = smallest.min(s * s);
        let vc = p.frame_c.column(i);
        let ur = p.frame_r.column(i);
        d_high_inv += (&vc * ur.transpose()) / s;
    }

    Ok(SpectralSplit {
        cutoff,
        dim_c_low: low_c.len(),
        dim_r_low: low_r.len(),
        proj_c_low,
        proj_c_high,
        proj_r_low,
        proj_r_high,
        d_high_inv,
        smallest_high: smallest,
    })
}

/// phi(v) = v + D^{-1} pi_high Q(v, v).
pub fn phi_apply(p: &KuranishiProblem, s: &SpectralSplit, v: &DVector<f64>) -> DVector<f64> {
    v + &s.d_high_inv * s.proj_r_high.clone() * p.q.eval(v)
}

/// Contraction iteration for the inverse of phi: v <- u - D^{-1} pi Q(v, v).
/// Returns the preimage and the iteration count.
pub fn phi_invert(
    p: &KuranishiProblem,
    s: &SpectralSplit,
    u: &DVector<f64>,
    cfg: &SandboxConfig,
) -> Result<(DVector<f64>, usize)> {
    let mut v = u.clone();
    for iter in 0..cfg.max_iter {
        let residual = (phi_apply(p, s, &v) - u).norm();
        if residual <= cfg.tol {
            return Ok((v, iter));
        }
        v = u - &s.d_high_inv * s.proj_r_high.clone() * p.q.eval(&v);
    }
    let residual = (phi_apply(p, s, &v) - u).norm();
    Err(Error::NonConvergence {
        residual,
        iterations: cfg.max_iter,
    })
}

/// Low-mode approximation f(u) = pi_low F(phi^{-1} u) for u in the low
/// domain subspace.
pub fn approx_f(
    p: &KuranishiProblem,
    s: &SpectralSplit,
    cfg: &SandboxConfig,
    u_low: &DVector<f64>,
) -> Result<DVector<f64>> {
    let drift = (&s.proj_c_high * u_low).norm();
    if drift > 1e-9 * u_low.norm().max(1.0) {
        return Err(Error::ShapeMismatch(format!(
            "input is not in the low subspace (high component {drift:.3e})"
        )));
    }
    let (v, _) = phi_invert(p, s, u_low, cfg)?;
    Ok(&s.proj_r_low * p.functional(&v))
}

/// Alternative low-mode approximation g(u) = pi_low (D u + Q(phi^{-1} u));
/// agrees with `approx_f` on the low subspace.
pub fn approx_g(
    p: &KuranishiProblem,
    s: &SpectralSplit,
    cfg: &SandboxConfig,
    u: &DVector<f64>,
) -> Result<DVector<f64>> {
    let (v, _) = phi_invert(p, s, u, cfg)?;
    Ok(&s.proj_r_low * (p.linear() * u + p.q.eval(&v)))
}

/// Zero-correspondence report: F(v) = 0 iff phi(v) lies in the low subspace
/// and the low part of F(v) vanishes.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroReport {
    pub norm_f: f64,
    pub norm_u_high: f64,
    pub norm_f_high: f64,
    pub tol: f64,
    pub biconditional_holds: bool,
}

pub fn verify_zero_correspondence(
    p: &KuranishiProblem,
    s: &SpectralSplit,
    cfg: &SandboxConfig,
    v: &DVector<f64>,
) -> ZeroReport {
    let f = p.functional(v);
    let u = phi_apply(p, s, v);
    let norm_f = f.norm();
    let norm_u_high = (&s.proj_c_high * u).norm();
    let norm_f_high = (&s.proj_r_high * &f).norm();
    let lhs = norm_f <= cfg.tol;
    let rhs = norm_u_high <= cfg.tol && norm_f_high <= cfg.tol;
    ZeroReport {
        norm_f,
        norm_u_high,
        norm_f_high,
        tol: cfg.tol,
        biconditional_holds: lhs == rhs,
    }
}

/// Measured contraction constant: the largest sampled operator norm of
/// D^{-1} pi_high dQ over the ball B(0, 3R).
pub fn measured_gamma(
    p: &KuranishiProblem,
    s: &SpectralSplit,
    cfg: &SandboxConfig,
    seed: u64,
    samples: usize,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51ed_2701);
    let mut sup: f64 = 0.0;
    for _ in 0..samples {
        let v = unit_vector(&mut rng, p.dim_c) * (3.0 * cfg.radius * rng.gen_range(0.0..1.0f64));
        let op = &s.d_high_inv * s.proj_r_high.clone() * p.q.differential(&v);
        sup = sup.max(operator_norm(&op));
    }
    sup
}

/// The largest sampled norm of pi_high dQ over the ball B(0, 3R); decreases
/// as the cutoff rises because the high projections are nested.
pub fn measured_high_dq(
    p: &KuranishiProblem,
    s: &SpectralSplit,
    cfg: &SandboxConfig,
    seed: u64,
    samples: usize,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51ed_2701);
    let mut sup: f64 = 0.0;
    for _ in 0..samples {
        let v = unit_vector(&mut rng, p.dim_c) * (3.0 * cfg.radius * rng.gen_range(0.0..1.0f64));
        let op = &s.proj_r_high * p.q.differential(&v);
        sup = sup.max(operator_norm(&op));
    }
    sup
}

fn operator_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().svd(false, false).singular_values.amax()
}

/// A planted-zero instance: the quadratic part is built so that a known
/// point v* in the low positive-spectrum subspace satisfies F(v*) = 0
/// exactly, while a generic rank-one term keeps the contraction machinery
/// nontrivial.
pub struct PlantedZero {
    pub problem: KuranishiProblem,
    pub split: SpectralSplit,
    pub v_star: DVector<f64>,
}

/// Builds the planted instance.  `generic` switches the extra rank-one term
/// (vanishing at v*) on or off; without it the zero set in the ball is
/// exactly {0, v*} whenever D is injective.
pub fn plant_zero(
    seed: u64,
    dim_c: usize,
    dim_r: usize,
    singulars: &[f64],
    cutoff: f64,
    cfg: &SandboxConfig,
    generic: bool,
) -> Result<PlantedZero> {
    let base = KuranishiProblem::with_spectrum(seed, dim_c, dim_r, singulars, 0.0, cfg);
    let split = spectral_split(&base, cutoff)?;

    // v*: combination of the low positive-spectrum right singular vectors
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd_1234);
    let low_pos: Vec<usize> = (0..singulars.len())
        .filter(|&i| singulars[i] > 0.0 && singulars[i] * singulars[i] <= cutoff)
        .collect();
    if low_pos.is_empty() {
        return Err(Error::InvalidArgument(
            "no positive spectrum below the cutoff to plant a zero in".into(),
        ));
    }
    let mut v_star = DVector::zeros(dim_c);
    for &i in &low_pos {
        v_star += base.frame_c.column(i) * rng.gen_range(-1.0f64..1.0);
    }
    v_star *= 0.5 * cfg.radius / v_star.norm();

    // u0 aligned with v*, w0 = -D v* / <v*, u0>^2 lands in the low range
    let u0 = &v_star / v_star.norm();
    let tau = v_star.dot(&u0);
    let w0 = -(base.linear() * &v_star) / (tau * tau);

    let mut rows: Vec<DMatrix<f64>> = (0..dim_r)
        .map(|i| (&u0 * u0.transpose()) * w0[i])
        .collect();

    if generic {
        // direction orthogonal to v*, value scaled into the gamma budget
        let mut p0 = unit_vector(&mut rng, dim_c);
        p0 -= &v_star * (p0.dot(&v_star) / v_star.norm_squared());
        let p0 = &p0 / p0.norm();
        let w1_dir = unit_vector(&mut rng, dim_r);
        let sigma_min = if split.smallest_high.is_finite() {
            split.smallest_high.sqrt()
        } else {
            1.0
        };
        let scale = cfg.gamma_target * sigma_min / (6.0 * cfg.radius);
        for (i, row) in rows.iter_mut().enumerate() {
            *row += (&p0 * p0.transpose()) * (w1_dir[i] * scale);
        }
    }

    let q = QuadraticMap::from_rows(rows, dim_c);
    let problem = base.with_quadratic(q);
    Ok(PlantedZero {
        problem,
        split,
        v_star,
    })
}

/// Picks `count` cutoffs strictly between distinct eigenvalues of the
/// spectrum, ascending, ending above the maximum.
pub fn safe_cutoffs(p: &KuranishiProblem, count: usize) -> Vec<f64> {
    let mut evs = p.spectrum_c();
    evs.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * TIE_TOL);
    let max = evs.last().copied().unwrap_or(0.0);
    let mut gaps: Vec<f64> = evs
        .windows(2)
        .filter(|w| w[1] - w[0] > 4.0 * TIE_TOL)
        .map(|w| 0.5 * (w[0] + w[1]))
        .collect();
    gaps.push(max + 1.0);
    if gaps.len() > count {
        // spread the selection across the available gaps
        let step = gaps.len() as f64 / count as f64;
        let picked: Vec<f64> = (0..count)
            .map(|i| gaps[((i as f64 + 0.5) * step) as usize % gaps.len()])
            .collect();
        picked
    } else {
        gaps
    }
}

/// One full verification run, serialized by the command line front end.
#[derive(Clone, Debug, Serialize)]
pub struct KuranishiReport {
    pub seed: u64,
    pub dim_c: usize,
    pub dim_r: usize,
    pub cutoff: f64,
    pub gamma_target: f64,
    pub measured_gamma: f64,
    pub spectrum_sharing_error: f64,
    pub inverse_identity_error: f64,
    pub roundtrip_max_error: f64,
    pub sandwich_min_norm: f64,
    pub sandwich_max_norm: f64,
    pub sandwich_ok: bool,
    pub fn_gn_max_error: f64,
    pub planted: ZeroReport,
    pub planted_approx_f_norm: f64,
    pub high_dq_sups: Vec<f64>,
    pub high_dq_monotone: bool,
}

/// Runs the whole battery on one seeded instance.
pub fn run_demo(
    seed: u64,
    dim_c: usize,
    dim_r: usize,
    gamma: f64,
    cutoff: f64,
    cfg_in: Option<SandboxConfig>,
) -> Result<KuranishiReport> {
    let cfg = cfg_in.unwrap_or_else(|| SandboxConfig::with_gamma(gamma));
    let p = KuranishiProblem::make(seed, dim_c, dim_r, 2, (0.5, 3.0), 1.0, &cfg);
    let s = spectral_split(&p, cutoff)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x000f_f1ce);

    // nonzero spectra of D^T D and D D^T agree
    let shared: Vec<f64> = p.spectrum_c().into_iter().filter(|e| *e > 1e-12).collect();
    let shared_r: Vec<f64> = p.spectrum_r().into_iter().filter(|e| *e > 1e-12).collect();
    let spectrum_sharing_error = shared
        .iter()
        .zip(shared_r.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
        .max(independent_spectrum_error(&p));

    // restricted inverse identities
    let dh = &s.proj_r_high * p.linear() * s.proj_c_high.clone();
    let left = (&s.d_high_inv * &dh - &s.proj_c_high).norm();
    let right = (&dh * &s.d_high_inv - &s.proj_r_high).norm();
    let inverse_identity_error = left.max(right);

    let measured = measured_gamma(&p, &s, &cfg, seed, 50);

    // phi round trip on random points of B(0, R)
    let mut roundtrip_max_error: f64 = 0.0;
    for _ in 0..100 {
        let v = unit_vector(&mut rng, dim_c) * (cfg.radius * rng.gen_range(0.0..1.0f64));
        let u = phi_apply(&p, &s, &v);
        let (back, _) = phi_invert(&p, &s, &u, &cfg)?;
        roundtrip_max_error = roundtrip_max_error.max((back - v).norm());
    }

    // ball sandwich at 200 boundary points, with the guaranteed budget
    let mut sandwich_min: f64 = f64::INFINITY;
    let mut sandwich_max: f64 = 0.0;
    for _ in 0..200 {
        let v = unit_vector(&mut rng, dim_c) * cfg.radius;
        let n = phi_apply(&p, &s, &v).norm();
        sandwich_min = sandwich_min.min(n);
        sandwich_max = sandwich_max.max(n);
    }
    let slack = 1e-9;
    let sandwich_ok = sandwich_min >= cfg.radius * (1.0 - cfg.gamma_target) - slack
        && sandwich_max <= cfg.radius * (1.0 + cfg.gamma_target) + slack;

    // f and g agree on the low subspace
    let mut fn_gn_max_error: f64 = 0.0;
    for _ in 0..25 {
        let u = &s.proj_c_low * unit_vector(&mut rng, dim_c) * (0.4 * cfg.radius);
        let f = approx_f(&p, &s, &cfg, &u)?;
        let g = approx_g(&p, &s, &cfg, &u)?;
        fn_gn_max_error = fn_gn_max_error.max((f - g).norm());
    }

    // planted zero: biconditional and the vanishing low-mode value; the
    // planted instance gets its own cutoff in the middle of its spectrum
    let singulars: Vec<f64> = {
        let mut srng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let rank = dim_c.min(dim_r).saturating_sub(2);
        (0..rank).map(|_| srng.gen_range(0.5..3.0)).collect()
    };
    let planted_cutoff = mid_spectrum_cutoff(&singulars);
    let planted = plant_zero(seed, dim_c, dim_r, &singulars, planted_cutoff, &cfg, true)?;
    let zero_cfg = SandboxConfig {
        tol: 1e-8,
        ..cfg
    };
    let planted_report =
        verify_zero_correspondence(&planted.problem, &planted.split, &zero_cfg, &planted.v_star);
    let u_star = phi_apply(&planted.problem, &planted.split, &planted.v_star);
    let u_star_low = &planted.split.proj_c_low * u_star;
    let planted_approx_f_norm =
        approx_f(&planted.problem, &planted.split, &cfg, &u_star_low)?.norm();

    // the high-mode differential shrinks monotonically along cutoffs
    let cuts = safe_cutoffs(&p, 5);
    let mut sups = Vec::new();
    for c in &cuts {
        let sc = spectral_split(&p, *c)?;
        sups.push(measured_high_dq(&p, &sc, &cfg, seed, 50));
    }
    let monotone = sups.windows(2).all(|w| w[1] <= w[0] + 1e-12);

    Ok(KuranishiReport {
        seed,
        dim_c,
        dim_r,
        cutoff,
        gamma_target: cfg.gamma_target,
        measured_gamma: measured,
        spectrum_sharing_error,
        inverse_identity_error,
        roundtrip_max_error,
        sandwich_min_norm: sandwich_min,
        sandwich_max_norm: sandwich_max,
        sandwich_ok,
        fn_gn_max_error,
        planted: planted_report,
        planted_approx_f_norm,
        high_dq_sups: sups,
        high_dq_monotone: monotone,
    })
}

/// A cutoff strictly between eigenvalues near the middle of a positive
/// singular spectrum.
fn mid_spectrum_cutoff(singulars: &[f64]) -> f64 {
    let mut squares: Vec<f64> = singulars.iter().map(|s| s * s).collect();
    squares.sort_by(f64::total_cmp);
    let mid = squares.len() / 2;
    for offset in 0..squares.len() {
        for i in [mid.saturating_sub(offset), (mid + offset).min(squares.len() - 1)] {
            if i + 1 < squares.len() && squares[i + 1] - squares[i] > 4.0 * TIE_TOL {
                return 0.5 * (squares[i] + squares[i + 1]);
            }
        }
    }
    squares.last().copied().unwrap_or(0.0) + 1.0
}

/// Largest deviation between the stored spectrum and an independent
/// symmetric eigensolve of D^T D.
fn independent_spectrum_error(p: &KuranishiProblem) -> f64 {
    let dtd = p.linear().transpose() * p.linear();
    let mut evs: Vec<f64> = dtd.symmetric_eigen().eigenvalues.iter().copied().collect();
    evs.sort_by(f64::total_cmp);
    let stored = p.spectrum_c();
    evs.iter()
        .zip(stored.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
}
