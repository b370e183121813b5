//! LP-backed face decision procedures.
//!
//! Two kinds of questions are answered here. For a finite polytope built on
//! curve points, `is_face` decides whether a vertex subset is exactly the
//! vertex set of a face by searching for a separating affine functional:
//! `A(v) = 0` on the subset and `A(w) >= 1` elsewhere (supporting
//! functionals scale freely, so feasibility needs no margin maximization).
//! For the continuous convex hull of the whole curve, `body_face_certificate`
//! searches for a nonnegative raked trigonometric polynomial with double
//! zeros exactly at the requested points; the LP over the raked coefficients
//! only guides the search, and every candidate is verified through the root
//! structure of the associated self-inversive polynomial plus a dense sign
//! scan before it is reported as a certificate.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::census::Polytope;
use crate::circle::{arc_distance, AnglePoint, ANGLE_DEDUP_TOL};
use crate::curve::sm_eval;
use crate::lp::{lp_solve, LinearProgram, LpError, LpSolution, Relation};
use crate::poly::{
    deform, find_roots, poly_from_multiset, selfinv_roots, simplex_seed_multiset, PolyError,
    RakedTrigPoly, RootMultiset, CIRCLE_TOL,
};

/// Default LP grid density per unit of curve order.
pub const GRID_PER_K: usize = 720;
/// Dense verification scan size.
pub const SCAN_POINTS: usize = 100_000;
/// Required curvature of a certificate at each double zero, relative to the
/// largest coefficient. Evaluation noise sits near 1e-13, so this still
/// cleanly separates tangencies from sign crossings even for certificates
/// with closely spaced zeros.
pub const TANGENCY_MIN: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    PolytopeFace,
    BodyFace,
}

/// The functional witnessing a face.
#[derive(Clone, Debug)]
pub enum Functional {
    /// affine coefficients `(α_0, α_1, ..., α_{2k})`
    Affine(Vec<f64>),
    /// a nonnegative raked trigonometric polynomial
    Raked(RakedTrigPoly),
}

/// Which search route produced a body certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertMethod {
    GridLp,
    SymmetrizedLp,
    Deformation,
    Factorized,
    Direct,
}

#[derive(Clone, Debug)]
pub struct FaceCertificate {
    pub kind: CertificateKind,
    pub functional: Functional,
    pub zero_set: Vec<AnglePoint>,
    pub margin: f64,
    pub verified: bool,
    pub dimension: usize,
    pub method: CertMethod,
}

#[derive(Clone, Debug)]
pub enum IsFaceOutcome {
    Face(FaceCertificate),
    NotAFace,
}

impl IsFaceOutcome {
    pub fn certificate(&self) -> Option<&FaceCertificate> {
        match self {
            IsFaceOutcome::Face(c) => Some(c),
            IsFaceOutcome::NotAFace => None,
        }
    }

    pub fn is_face(&self) -> bool {
        matches!(self, IsFaceOutcome::Face(_))
    }
}

fn affine_eval(alpha: &[f64], coords: &[f64]) -> f64 {
    alpha[0]
        + alpha[1..]
            .iter()
            .zip(coords)
            .map(|(a, x)| a * x)
            .sum::<f64>()
}

/// Affine dimension of a point collection, with a relative singular-value
/// cutoff.
pub fn affine_rank(points: &[Vec<f64>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows = points.len() - 1;
    let cols = points[0].len();
    let m = nalgebra::DMatrix::from_fn(rows, cols, |i, j| points[i + 1][j] - points[0][j]);
    let svd = m.svd(false, false);
    let smax = svd.singular_values.max();
    if smax <= 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > 1e-8 * smax.max(1.0))
        .count()
}

fn validate_subset(p: &Polytope, s: &[usize]) -> Result<Vec<usize>, OracleError> {
    if s.is_empty() {
        return Err(OracleError::BadInput("empty vertex subset".into()));
    }
    let n = p.len();
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() {
        return Err(OracleError::BadInput("duplicate vertex index".into()));
    }
    if sorted.iter().any(|&i| i >= n) {
        return Err(OracleError::BadInput("vertex index out of range".into()));
    }
    if sorted.len() == n {
        return Err(OracleError::BadInput(
            "subset equals the whole vertex set".into(),
        ));
    }
    Ok(sorted)
}

/// Decide whether `s` is exactly the vertex set of a face of `p`.
///
/// Feasibility of {A(v) = 0 on S, A(w) >= 1 off S} is equivalent to S being
/// a face's vertex set; the face dimension is the affine rank of the points
/// of S, not `|S| - 1`.
pub fn is_face(p: &Polytope, s: &[usize]) -> Result<IsFaceOutcome, OracleError> {
    let s = validate_subset(p, s)?;
    let dim_amb = 2 * p.k;
    let mut lp = LinearProgram::new(dim_amb + 1);
    let mut off = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        let mut row = Vec::with_capacity(dim_amb + 1);
        row.push(1.0);
        row.extend_from_slice(&v.coords);
        if s.binary_search(&i).is_ok() {
            lp.push(row, Relation::Eq, 0.0);
        } else {
            lp.push(row, Relation::Ge, 1.0);
            off.push(i);
        }
    }
    match lp_solve(&lp)? {
        LpSolution::Optimal { x: alpha, .. } => {
            let scale = alpha.iter().fold(1.0f64, |m, a| m.max(a.abs()));
            let mut margin = f64::INFINITY;
            let mut verified = true;
            for (i, v) in p.vertices().iter().enumerate() {
                let val = affine_eval(&alpha, &v.coords);
                if s.binary_search(&i).is_ok() {
                    if val.abs() > 1e-9 * scale {
                        verified = false;
                    }
                } else {
                    margin = margin.min(val);
                }
            }
            if margin < 1.0 - 1e-7 {
                verified = false;
            }
            let pts: Vec<Vec<f64>> = s.iter().map(|&i| p.vertices()[i].coords.clone()).collect();
            let zero_set = s.iter().map(|&i| p.vertices()[i].source_angle).collect();
            Ok(IsFaceOutcome::Face(FaceCertificate {
                kind: CertificateKind::PolytopeFace,
                functional: Functional::Affine(alpha),
                zero_set,
                margin,
                verified,
                dimension: affine_rank(&pts),
                method: CertMethod::GridLp,
            }))
        }
        LpSolution::Infeasible => Ok(IsFaceOutcome::NotAFace),
        LpSolution::Unbounded => Err(OracleError::BadInput(
            "feasibility program reported unbounded".into(),
        )),
    }
}

/// Is some proper face's vertex set a superset of `s`? Used to prune the
/// census: when false, no superset of `s` can be a face.
pub fn common_face_feasible(p: &Polytope, s: &[usize]) -> Result<bool, OracleError> {
    let s = validate_subset(p, s)?;
    let dim_amb = 2 * p.k;
    let mut lp = LinearProgram::new(dim_amb + 1);
    let mut sum_row = vec![0.0; dim_amb + 1];
    for (i, v) in p.vertices().iter().enumerate() {
        let mut row = Vec::with_capacity(dim_amb + 1);
        row.push(1.0);
        row.extend_from_slice(&v.coords);
        if s.binary_search(&i).is_ok() {
            lp.push(row, Relation::Eq, 0.0);
        } else {
            for (acc, x) in sum_row.iter_mut().zip(&row) {
                *acc += x;
            }
            lp.push(row, Relation::Ge, 0.0);
        }
    }
    lp.push(sum_row, Relation::Ge, 1.0);
    Ok(lp_solve(&lp)?.is_feasible())
}

// ---------------------------------------------------------------------------
// body-face certificates

#[derive(Clone, Debug)]
pub enum BodyCertOutcome {
    Certified(FaceCertificate),
    NotFound { reason: NotFoundReason },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotFoundReason {
    /// the guiding LP had no nonzero feasible functional
    LpInfeasible,
    /// LP candidates existed but none survived root verification
    VerificationFailed,
}

impl BodyCertOutcome {
    pub fn certificate(&self) -> Option<&FaceCertificate> {
        match self {
            BodyCertOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, BodyCertOutcome::Certified(_))
    }
}

/// Failure detail from certificate verification (for diagnostics).
#[derive(Clone, Debug)]
pub struct VerifyFailure {
    pub stage: &'static str,
    pub detail: String,
}

fn trig_row(k: usize, t: f64, deriv: usize) -> Vec<f64> {
    let phase = deriv as f64 * std::f64::consts::FRAC_PI_2;
    let mut row = Vec::with_capacity(2 * k + 1);
    row.push(if deriv == 0 { 1.0 } else { 0.0 });
    for j in 1..=k {
        let m = (2 * j - 1) as f64;
        let scale = m.powi(deriv as i32);
        row.push(scale * (m * t + phase).sin());
        row.push(scale * (m * t + phase).cos());
    }
    row
}

/// Verify that `a` is nonnegative with zero set exactly `targets`, every
/// zero a tangency (multiplicity exactly two). Combines per-target residual
/// and curvature checks, the root structure of the self-inversive image
/// (each target must carry exactly its double root and every remaining root
/// must stay off the unit circle), and an independent dense sign scan.
/// Returns the off-target margin.
pub fn verify_body_certificate(
    a: &RakedTrigPoly,
    targets: &[AnglePoint],
) -> Result<f64, VerifyFailure> {
    let scale = a.max_coeff();
    if scale <= 0.0 {
        return Err(VerifyFailure {
            stage: "scale",
            detail: "zero polynomial".into(),
        });
    }

    // residuals and tangency at every requested zero
    for &t in targets {
        let v = a.eval(t).abs();
        if v > 1e-8 * scale {
            return Err(VerifyFailure {
                stage: "residual",
                detail: format!("|A({})| = {:.3e}", t.radians(), v),
            });
        }
        let dv = a.deriv_eval(t, 1).abs();
        if dv > 1e-7 * scale {
            return Err(VerifyFailure {
                stage: "residual",
                detail: format!("|A'({})| = {:.3e}", t.radians(), dv),
            });
        }
        let curv = a.deriv_eval(t, 2);
        if curv < TANGENCY_MIN * scale {
            return Err(VerifyFailure {
                stage: "tangency",
                detail: format!("A''({}) = {:.3e}", t.radians(), curv),
            });
        }
    }

    // root structure of D(z): every root is either part of the (even) root
    // bundle at a target or stays off the unit circle
    let d = a.to_selfinv().map_err(|e| VerifyFailure {
        stage: "bridge",
        detail: e.to_string(),
    })?;
    let (coeffs, _stripped) = d.trimmed_for_roots();
    let roots = find_roots(&coeffs).map_err(|e| VerifyFailure {
        stage: "roots",
        detail: e.to_string(),
    })?;
    let target_pts: Vec<Complex64> = targets
        .iter()
        .map(|t| Complex64::from_polar(1.0, t.radians()))
        .collect();
    let mut min_gap = f64::INFINITY;
    for (i, zi) in target_pts.iter().enumerate() {
        for zj in &target_pts[i + 1..] {
            min_gap = min_gap.min((zi - zj).norm());
        }
    }
    // wide enough to absorb the numerical splitting of a double root (which
    // grows with the conditioning of clustered zeros), narrow enough never
    // to reach another target or the off-circle roots
    let r_match = (min_gap / 3.0).min(0.05);
    let mut counts = vec![0usize; targets.len()];
    let mut leftovers: Vec<Complex64> = Vec::new();
    for z in roots {
        let nearest = target_pts
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (z - w).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        match nearest {
            Some((i, dist)) if dist < r_match => counts[i] += 1,
            _ => leftovers.push(z),
        }
    }
    for (i, &c) in counts.iter().enumerate() {
        if c != 2 {
            return Err(VerifyFailure {
                stage: "roots",
                detail: format!(
                    "zero at {} carries {} roots (want exactly 2)",
                    targets[i].radians(),
                    c
                ),
            });
        }
    }
    let extra = RootMultiset::from_simple(&leftovers);
    for &(z, _) in extra.entries() {
        if (z.norm() - 1.0).abs() < CIRCLE_TOL {
            return Err(VerifyFailure {
                stage: "roots",
                detail: format!("extra on-circle root at angle {:.6}", z.arg()),
            });
        }
    }

    // independent dense sign scan; the exclusion radius shrinks for tightly
    // clustered targets so the region between zeros is still examined
    let mut min_arc_gap = f64::INFINITY;
    for (i, &ti) in targets.iter().enumerate() {
        for &tj in &targets[i + 1..] {
            min_arc_gap = min_arc_gap.min(arc_distance(ti, tj));
        }
    }
    let exclusion = (min_arc_gap / 2.0).min(0.02);
    let mut global_min = f64::INFINITY;
    let mut off_target_min = f64::INFINITY;
    let step = std::f64::consts::TAU / SCAN_POINTS as f64;
    for i in 0..SCAN_POINTS {
        let t = AnglePoint::new(i as f64 * step);
        let v = a.eval(t);
        global_min = global_min.min(v);
        let near = targets.iter().any(|&w| arc_distance(t, w) <= exclusion);
        if !near {
            off_target_min = off_target_min.min(v);
        }
    }
    if global_min < -1e-9 * scale {
        return Err(VerifyFailure {
            stage: "scan",
            detail: format!("sign scan minimum {:.3e}", global_min / scale),
        });
    }
    if off_target_min < 1e-13 * scale {
        return Err(VerifyFailure {
            stage: "scan",
            detail: format!(
                "no strict positivity away from targets ({:.3e})",
                off_target_min / scale
            ),
        });
    }
    Ok(off_target_min)
}

fn certificate_from(
    k: usize,
    a: RakedTrigPoly,
    targets: &[AnglePoint],
    method: CertMethod,
) -> Option<FaceCertificate> {
    let margin = verify_body_certificate(&a, targets).ok()?;
    let pts: Vec<Vec<f64>> = targets
        .iter()
        .map(|&t| sm_eval(k, t).expect("k >= 1").coords)
        .collect();
    Some(FaceCertificate {
        kind: CertificateKind::BodyFace,
        functional: Functional::Raked(a),
        zero_set: targets.to_vec(),
        margin,
        verified: true,
        dimension: affine_rank(&pts),
        method,
    })
}

fn orient_nonnegative(a: RakedTrigPoly, probes: usize) -> RakedTrigPoly {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..probes {
        let v = a.eval(AnglePoint::new(
            std::f64::consts::TAU * i as f64 / probes as f64,
        ));
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if -lo > hi {
        a.scaled(-1.0)
    } else {
        a
    }
}

/// LP search: equalities pin double zeros at the targets, the grid keeps the
/// polynomial nonnegative, and the objective pushes the grid sum up inside
/// the coefficient box.
fn certificate_lp(
    k: usize,
    targets: &[AnglePoint],
    grid_size: usize,
) -> Result<Option<RakedTrigPoly>, OracleError> {
    let nvars = 2 * k + 1;
    let mut lp = LinearProgram::new(nvars);
    for &t in targets {
        lp.push(trig_row(k, t.radians(), 0), Relation::Eq, 0.0);
        lp.push(trig_row(k, t.radians(), 1), Relation::Eq, 0.0);
    }
    let mut objective = vec![0.0; nvars];
    for g in 0..grid_size {
        let t = std::f64::consts::TAU * g as f64 / grid_size as f64;
        let row = trig_row(k, t, 0);
        for (acc, x) in objective.iter_mut().zip(&row) {
            *acc += x;
        }
        lp.push(row, Relation::Ge, 0.0);
    }
    // box |coef| <= 1 as rows, keeping the cone rows homogeneous
    for j in 0..nvars {
        let mut row = vec![0.0; nvars];
        row[j] = 1.0;
        lp.push(row.clone(), Relation::Le, 1.0);
        row[j] = -1.0;
        lp.push(row, Relation::Le, 1.0);
    }
    lp.objective = objective;
    match lp_solve(&lp) {
        Ok(LpSolution::Optimal { x, objective }) if objective > 1e-6 => {
            Ok(Some(RakedTrigPoly::from_flat(k, &x).expect("flat layout")))
        }
        Ok(LpSolution::Optimal { .. }) | Ok(LpSolution::Infeasible) => Ok(None),
        Ok(LpSolution::Unbounded) => Err(OracleError::BadInput(
            "certificate LP unbounded despite coefficient box".into(),
        )),
        // a stalled or residual-failed LP just means the guide produced no
        // candidate; the verification-backed repairs still run
        Err(LpError::Stalled { .. }) | Err(LpError::ResidualCheck { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Candidate for the tangency-determined case `|T| = k` via factorization:
/// write `D = P(z)^2 Q(z)` with `P = Π (z - e^{it_j})`, so the double zeros
/// at the targets are exact by construction, and solve the small linear
/// system that makes `D` raked. The cofactor `Q` ranges over self-inversive
/// polynomials with the matching unimodular factor, a real vector space of
/// dimension `4k - 2|T| - 1`; for `|T| = k` the raked conditions cut it to a
/// single ray. This avoids the ill-conditioned direct nullspace of the
/// evaluation matrix when the targets cluster.
/// Least-singular right direction of a (possibly wide) matrix: the thin SVD
/// omits the nullspace, so pad to square first.
fn least_singular_direction(m: nalgebra::DMatrix<f64>) -> Option<Vec<f64>> {
    let n = m.ncols();
    let rows = m.nrows().max(n);
    let mut padded = nalgebra::DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(&m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t?;
    Some(vt.row(vt.nrows() - 1).iter().copied().collect())
}

fn certificate_factorized(k: usize, targets: &[AnglePoint]) -> Option<RakedTrigPoly> {
    let s = targets.len();
    let q = 4 * k - 2 - 2 * s; // degree of the cofactor
    let one = Complex64::new(1.0, 0.0);

    // P and R = P^2
    let mut p = vec![one];
    for &t in targets {
        let zeta = Complex64::from_polar(1.0, t.radians());
        let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * zeta;
        }
        p = next;
    }
    let conv = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let r = conv(&p, &p);

    // self-inversive factor of P: z^s conj(P(1/conj z)) = c_p P
    let sum_t: f64 = targets.iter().map(|t| t.radians()).sum();
    let sign = if s.is_multiple_of(2) { 1.0 } else { -1.0 };
    let c_p = Complex64::from_polar(sign, -sum_t);

    // real basis of plain self-inversive polynomials of degree q, scaled by
    // c_p so that D = R Q is exactly self-inversive
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..q.div_ceil(2) {
        let mut v = vec![Complex64::new(0.0, 0.0); q + 1];
        v[j] = one;
        v[q - j] = one;
        basis.push(v);
        let mut w = vec![Complex64::new(0.0, 0.0); q + 1];
        w[j] = Complex64::new(0.0, 1.0);
        w[q - j] = Complex64::new(0.0, -1.0);
        basis.push(w);
    }
    if q.is_multiple_of(2) {
        let mut v = vec![Complex64::new(0.0, 0.0); q + 1];
        v[q / 2] = one;
        basis.push(v);
    }

    // raked conditions: odd coefficients of D below the middle vanish
    let odd_ps: Vec<usize> = (1..2 * k - 1).step_by(2).collect();
    let rows = 2 * odd_ps.len();
    let cols = basis.len();
    if cols < rows + 1 {
        return None;
    }
    let mut m = nalgebra::DMatrix::zeros(rows, cols);
    for (b, base) in basis.iter().enumerate() {
        let qb: Vec<Complex64> = base.iter().map(|c| c * c_p).collect();
        let d = conv(&r, &qb);
        for (i, &pw) in odd_ps.iter().enumerate() {
            m[(2 * i, b)] = d[pw].re;
            m[(2 * i + 1, b)] = d[pw].im;
        }
    }
    let u = least_singular_direction(m)?;
    let mut qpoly = vec![Complex64::new(0.0, 0.0); q + 1];
    for (b, base) in basis.iter().enumerate() {
        for (i, &c) in base.iter().enumerate() {
            qpoly[i] += c * c_p * u[b];
        }
    }
    let d = conv(&r, &qpoly);
    let dpoly = crate::poly::SelfInvPoly::new(d).ok()?;
    let a = dpoly.to_raked(k).ok()?;
    Some(orient_nonnegative(a, 8192))
}

/// Midpoint (on the shorter arc) and half-length of a two-point set.
fn pair_frame(t1: AnglePoint, t2: AnglePoint) -> (f64, f64) {
    let theta = arc_distance(t1, t2);
    let tau = theta / 2.0;
    let fwd = (t2.radians() - t1.radians()).rem_euclid(std::f64::consts::TAU);
    let mid = if (fwd - theta).abs() < 1e-9 {
        t1.radians() + tau
    } else {
        t2.radians() + tau
    };
    (mid, tau)
}

/// Constructive certificate for a symmetric pair `{±τ'}` via the root
/// deformation: start from the regular-simplex polynomial, deform its
/// roots of unity slightly off the threshold configuration, intersect with
/// a rotated copy to isolate a long edge, and deform that edge down to the
/// requested arc.
pub fn edge_certificate_by_deformation(k: usize, theta: f64) -> Option<RakedTrigPoly> {
    if k < 2 {
        return None;
    }
    let limit = (2 * k - 2) as f64 * PI / (2 * k - 1) as f64;
    if theta <= 0.0 || theta >= limit {
        return None;
    }
    let seed_multiset = simplex_seed_multiset(k);

    let mut eps = ((limit - theta) / 2.12).clamp(1e-8, 0.05);
    for _ in 0..80 {
        if let Some(a) = deformation_seed_attempt(k, &seed_multiset, eps, theta) {
            return Some(a);
        }
        eps *= 0.5;
        if eps < 1e-9 {
            break;
        }
    }
    None
}

fn deformation_seed_attempt(
    k: usize,
    seed: &RootMultiset,
    eps: f64,
    theta: f64,
) -> Option<RakedTrigPoly> {
    let deformed = deform(seed, 1.0 + eps).ok()?;
    let d1 = poly_from_multiset(&deformed).ok()?;
    if d1.coeffs().len() != 4 * k - 1 {
        return None;
    }
    let a1 = orient_nonnegative(d1.to_raked(k).ok()?, 2048);
    let (on, _) = deformed.on_circle_split(1e-9);
    let alphas: Vec<f64> = on.iter().map(|&(ang, _)| ang).collect();
    if alphas.len() != 2 * k - 2 {
        return None;
    }
    let (a_edge, a1_ang, ak_ang) = if k == 2 {
        (a1.clone(), alphas[0], alphas[1])
    } else {
        let delta = alphas[1] - alphas[0];
        let a2 = a1.rotate(delta);
        (a1.add(&a2), alphas[0], alphas[k - 1])
    };
    let mid = (a1_ang + ak_ang) / 2.0;
    let tau0 = (ak_ang - a1_ang) / 2.0;
    if 2.0 * tau0 <= theta + 1e-12 || tau0 >= PI / 2.0 {
        return None;
    }
    let a_sym = orient_nonnegative(a_edge.rotate(mid).symmetrized(), 4096);

    let tau_target = theta / 2.0;
    let lambda = tau_target.cos() / tau0.cos();
    let d_sym = a_sym.to_selfinv().ok()?;
    let m_sym = selfinv_roots(&d_sym).ok()?;
    let m_def = deform(&m_sym, lambda).ok()?;
    let d_target = poly_from_multiset(&m_def).ok()?;
    if d_target.coeffs().len() != 4 * k - 1 {
        return None;
    }
    let a = orient_nonnegative(d_target.to_raked(k).ok()?.symmetrized(), 4096);
    // zeros currently at ±τ' up to accumulated rounding; snap them exactly
    snap_symmetric_pair(k, a, tau_target)
}

/// Iteratively correct a symmetric pair certificate so its double zeros sit
/// at ±τ to full precision: locate the actual tangency angle via Newton on
/// the derivative and apply the tiny deformation that moves it onto τ.
fn snap_symmetric_pair(k: usize, mut a: RakedTrigPoly, tau: f64) -> Option<RakedTrigPoly> {
    for _ in 0..4 {
        let scale = a.max_coeff();
        if scale <= 0.0 {
            return None;
        }
        if a.eval(AnglePoint::new(tau)).abs() <= 1e-11 * scale
            && a.deriv_eval(AnglePoint::new(tau), 1).abs() <= 1e-10 * scale
        {
            return Some(a);
        }
        // actual zero angle near τ
        let mut th = tau;
        for _ in 0..60 {
            let d2 = a.deriv_eval(AnglePoint::new(th), 2);
            if d2.abs() < 1e-14 * scale {
                break;
            }
            let step = a.deriv_eval(AnglePoint::new(th), 1) / d2;
            th -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        if !(0.0..PI / 2.0 + 0.3).contains(&th) || th.cos().abs() < 1e-9 {
            return None;
        }
        let lambda = tau.cos() / th.cos();
        let d = a.to_selfinv().ok()?;
        let m = selfinv_roots(&d).ok()?;
        let moved = deform(&m, lambda).ok()?;
        let rebuilt = poly_from_multiset(&moved).ok()?;
        if rebuilt.coeffs().len() != 4 * k - 1 {
            return None;
        }
        a = orient_nonnegative(rebuilt.to_raked(k).ok()?.symmetrized(), 4096);
    }
    let scale = a.max_coeff();
    if a.eval(AnglePoint::new(tau)).abs() <= 1e-11 * scale {
        Some(a)
    } else {
        None
    }
}

/// Search for a verified body-face certificate for the points `t`.
///
/// The LP candidate is tried first; for pairs, a symmetrized repair of the
/// LP candidate and then the constructive deformation route follow; for the
/// tangency-determined count `|T| = k` the factorized solve pins the double
/// zeros exactly. Only root-verified certificates are returned.
pub fn body_face_certificate(
    k: usize,
    t: &[AnglePoint],
    grid_size: usize,
) -> Result<BodyCertOutcome, OracleError> {
    if k == 0 {
        return Err(OracleError::BadInput("k must be positive".into()));
    }
    if t.is_empty() || t.len() > 2 * k - 1 {
        return Err(OracleError::BadInput(format!(
            "need 1..={} points, got {}",
            2 * k - 1,
            t.len()
        )));
    }
    if grid_size < 8 {
        return Err(OracleError::BadInput("grid too small".into()));
    }
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i + 1..] {
            if arc_distance(a, b) < ANGLE_DEDUP_TOL {
                return Err(OracleError::BadInput("coincident points".into()));
            }
        }
    }

    let mut saw_candidate = false;
    if let Some(cand) = certificate_lp(k, t, grid_size)? {
        saw_candidate = true;
        if let Some(cert) = certificate_from(k, cand.clone(), t, CertMethod::GridLp) {
            return Ok(BodyCertOutcome::Certified(cert));
        }
        if t.len() == 2 {
            let (mid, _) = pair_frame(t[0], t[1]);
            let repaired = cand.rotate(mid).symmetrized().rotate(-mid);
            if let Some(cert) = certificate_from(k, repaired, t, CertMethod::SymmetrizedLp) {
                return Ok(BodyCertOutcome::Certified(cert));
            }
        }
    }
    if t.len() == 2 {
        let (mid, tau) = pair_frame(t[0], t[1]);
        if let Some(sym) = edge_certificate_by_deformation(k, 2.0 * tau) {
            saw_candidate = true;
            let positioned = sym.rotate(-mid);
            if let Some(cert) = certificate_from(k, positioned, t, CertMethod::Deformation) {
                return Ok(BodyCertOutcome::Certified(cert));
            }
        }
    }
    if t.len() == k {
        if let Some(cand) = certificate_factorized(k, t) {
            saw_candidate = true;
            if let Some(cert) = certificate_from(k, cand, t, CertMethod::Factorized) {
                return Ok(BodyCertOutcome::Certified(cert));
            }
        }
    }
    if t.len() == 1 {
        // the closed-form vertex certificate: 1 - cos(t - t0)
        let mut a = RakedTrigPoly::zero(k);
        a.c = 1.0;
        a.a[0] = -t[0].radians().sin();
        a.b[0] = -t[0].radians().cos();
        saw_candidate = true;
        if let Some(cert) = certificate_from(k, a, t, CertMethod::Direct) {
            return Ok(BodyCertOutcome::Certified(cert));
        }
    }
    Ok(BodyCertOutcome::NotFound {
        reason: if saw_candidate {
            NotFoundReason::VerificationFailed
        } else {
            NotFoundReason::LpInfeasible
        },
    })
}

/// Certificate search with the default grid `720 k`.
pub fn body_face_certificate_default(
    k: usize,
    t: &[AnglePoint],
) -> Result<BodyCertOutcome, OracleError> {
    body_face_certificate(k, t, GRID_PER_K * k)
}

// ---------------------------------------------------------------------------
// edge threshold estimation

#[derive(Clone, Debug)]
pub struct PsiEstimate {
    pub k: usize,
    pub lo: f64,
    pub hi: f64,
    /// arcs queried during bisection with the certificate outcome
    pub queries: Vec<(f64, bool)>,
    pub warnings: Vec<String>,
    /// the proven lower bound `(2k-2)π/(2k-1)`
    pub lower_bound: f64,
    /// the same value doubles as the conjectured exact threshold
    pub conjectured: f64,
}

/// Bracket the edge threshold ψ_k by bisection on the arc length, using
/// verified symmetric-pair certificates. The returned interval satisfies
/// `hi - lo <= tol`, the arc `lo` carries a verified edge certificate, and
/// the arc `hi` does not. Arcs within `tol` of the threshold are never
/// classified either way.
pub fn psi_estimate(k: usize, tol: f64) -> Result<PsiEstimate, OracleError> {
    psi_estimate_with_grid(k, tol, GRID_PER_K * k)
}

/// [`psi_estimate`] with an explicit certificate grid size.
pub fn psi_estimate_with_grid(
    k: usize,
    tol: f64,
    grid_size: usize,
) -> Result<PsiEstimate, OracleError> {
    if k < 2 {
        return Err(OracleError::BadInput("edge threshold needs k >= 2".into()));
    }
    if tol < 1e-3 {
        return Err(OracleError::BadInput("tolerance below 1e-3".into()));
    }
    let limit = (2 * k - 2) as f64 * PI / (2 * k - 1) as f64;
    if tol >= PI - limit {
        return Err(OracleError::BadInput(format!(
            "tolerance {tol} too coarse to separate the threshold from π"
        )));
    }

    let mut queries: Vec<(f64, bool)> = Vec::new();
    let mut warnings = Vec::new();
    let mut certify = |theta: f64| -> Result<bool, OracleError> {
        let tau = theta / 2.0;
        let t = [AnglePoint::new(-tau), AnglePoint::new(tau)];
        let ok = body_face_certificate(k, &t, grid_size)?.is_certified();
        queries.push((theta, ok));
        Ok(ok)
    };

    let mut lo = 0.8 * limit;
    let mut attempts = 0;
    while !certify(lo)? {
        warnings.push(format!(
            "no certificate at arc {lo:.6}; widening the bracket downward"
        ));
        lo *= 0.5;
        attempts += 1;
        if attempts > 6 {
            return Ok(PsiEstimate {
                k,
                lo: 0.0,
                hi: PI,
                queries,
                warnings,
                lower_bound: limit,
                conjectured: limit,
            });
        }
    }
    let mut hi = PI;
    if certify(hi)? {
        warnings.push("antipodal arc unexpectedly certified".into());
        return Err(OracleError::BadInput(
            "certificate verifier accepted an antipodal pair".into(),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if certify(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(PsiEstimate {
        k,
        lo,
        hi,
        queries,
        warnings,
        lower_bound: limit,
        conjectured: limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn body_cert_edge_k2() {
        // arc 1.0 < 2π/3: a verified edge certificate exists
        let t = [AnglePoint::new(-0.5), AnglePoint::new(0.5)];
        let out = body_face_certificate_default(2, &t).unwrap();
        let cert = out.certificate().expect("edge certified");
        assert!(cert.verified);
        assert_eq!(cert.dimension, 1);
        assert!(cert.margin > 0.0);
    }

    #[test]
    fn body_cert_rejects_long_arc_k2() {
        // arc 2.4 > 2π/3 ≈ 2.094: no certificate may verify
        let t = [AnglePoint::new(-1.2), AnglePoint::new(1.2)];
        let out = body_face_certificate_default(2, &t).unwrap();
        assert!(!out.is_certified());
    }

    #[test]
    fn vertex_certificates_for_every_order() {
        for k in 1..=4 {
            let t = [AnglePoint::new(1.234)];
            let out = body_face_certificate_default(k, &t).unwrap();
            let cert = out.certificate().expect("vertices are 0-faces");
            assert_eq!(cert.dimension, 0);
        }
    }

    #[test]
    fn body_cert_triple_k3() {
        let t = [
            AnglePoint::new(0.0),
            AnglePoint::new(0.1),
            AnglePoint::new(0.2),
        ];
        let out = body_face_certificate_default(3, &t).unwrap();
        let cert = out.certificate().expect("2-face certified");
        assert_eq!(cert.dimension, 2);
    }

    #[test]
    fn deformation_route_reaches_long_arcs() {
        // beyond what the plain grid LP certifies for k = 3
        let theta = 2.50;
        let a = edge_certificate_by_deformation(3, theta).expect("constructive certificate");
        let tau = theta / 2.0;
        let targets = [AnglePoint::new(-tau), AnglePoint::new(tau)];
        let margin = verify_body_certificate(&a, &targets).expect("verified");
        assert!(margin > 0.0);
    }

    #[test]
    fn rotation_invariance_of_body_certificates() {
        let mut state = 0x8c5530f7808816f1u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as f64 / u64::MAX as f64
        };
        for _ in 0..30 {
            let tau = 0.3 + 0.4 * next();
            let shift = TAU * next();
            let base = [AnglePoint::new(-tau), AnglePoint::new(tau)];
            let rot = [AnglePoint::new(-tau + shift), AnglePoint::new(tau + shift)];
            let a = body_face_certificate_default(2, &base)
                .unwrap()
                .is_certified();
            let b = body_face_certificate_default(2, &rot)
                .unwrap()
                .is_certified();
            assert_eq!(a, b, "tau={tau} shift={shift}");
        }
    }

    #[test]
    fn psi_k2_brackets_two_thirds_pi() {
        let est = psi_estimate(2, 0.01).unwrap();
        let psi2 = 2.0 * PI / 3.0;
        assert!(est.lo <= psi2 + 1e-9, "lo = {}", est.lo);
        assert!(est.hi >= psi2 - 1e-9, "hi = {}", est.hi);
        assert!(est.hi - est.lo <= 0.01 + 1e-12);
        assert!(est.hi < PI);
    }

    #[test]
    fn psi_rejects_bad_inputs() {
        assert!(psi_estimate(1, 0.01).is_err());
        assert!(psi_estimate(2, 1e-5).is_err());
        assert!(psi_estimate(2, 2.0).is_err());
    }
}
