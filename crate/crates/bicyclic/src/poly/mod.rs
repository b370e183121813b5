//! Raked trigonometric polynomials, raked self-inversive polynomials, and
//! root multisets.
//!
//! A raked trigonometric polynomial of degree 2k-1 is
//! `A(t) = c + Σ_j a_j sin((2j-1)t) + Σ_j b_j cos((2j-1)t)`: only odd
//! frequencies plus a constant. Substituting `z = e^{it}` gives
//! `A(t) = z^{1-2k} D(z)` for a degree-(4k-2) polynomial `D` that is
//! self-inversive (`D(z) = z^m conj(D(1/conj(z)))`) and "raked": every odd
//! coefficient except possibly the middle one vanishes. Root multisets of
//! such polynomials are closed under `ζ ↦ 1/conj(ζ)`, and rakedness is
//! equivalent to the odd power sums `s_1, s_3, ..., s_{2k-3}` vanishing.
//! The λ-deformation rescales `ζ + ζ^{-1}` pairwise and preserves all of
//! this structure.

mod aberth;

pub use aberth::{find_roots, RootFindError};

use num_complex::Complex64;
use thiserror::Error;

use crate::circle::{arc_distance, AnglePoint, Arc};

/// Roots closer than this are merged into one cluster (same zero).
pub const CLUSTER_RADIUS: f64 = 1e-6;
/// A cluster center within this of the unit circle counts as on-circle.
pub const CIRCLE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("coefficient vector length mismatch: {0}")]
    SizeMismatch(String),
    #[error("multiset size {got} does not match required {want}")]
    WrongMultisetSize { got: usize, want: usize },
    #[error("multiset is not closed under {0} within tolerance")]
    PairingViolation(&'static str),
    #[error("deformation parameter λ must be nonzero")]
    ZeroLambda,
    #[error("multiplicity of {0} must be even for the deformation")]
    OddUnitMultiplicity(f64),
    #[error(transparent)]
    RootFind(#[from] RootFindError),
}

// ---------------------------------------------------------------------------
// raked trigonometric polynomials

/// `A(t) = c + Σ_j a_j sin((2j-1)t) + Σ_j b_j cos((2j-1)t)`, degree 2k-1.
#[derive(Clone, Debug, PartialEq)]
pub struct RakedTrigPoly {
    pub k: usize,
    pub c: f64,
    /// sine coefficients `a_1..a_k`
    pub a: Vec<f64>,
    /// cosine coefficients `b_1..b_k`
    pub b: Vec<f64>,
}

impl RakedTrigPoly {
    pub fn new(k: usize, c: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self, PolyError> {
        if k == 0 || a.len() != k || b.len() != k {
            return Err(PolyError::SizeMismatch(format!(
                "k={k}, |a|={}, |b|={}",
                a.len(),
                b.len()
            )));
        }
        Ok(RakedTrigPoly { k, c, a, b })
    }

    pub fn zero(k: usize) -> Self {
        RakedTrigPoly {
            k,
            c: 0.0,
            a: vec![0.0; k],
            b: vec![0.0; k],
        }
    }

    /// Coefficients as a flat vector `(c, a_1, b_1, ..., a_k, b_k)`; the
    /// layout used by the LP certificate searches.
    pub fn from_flat(k: usize, flat: &[f64]) -> Result<Self, PolyError> {
        if flat.len() != 2 * k + 1 {
            return Err(PolyError::SizeMismatch(format!(
                "flat length {} for k={k}",
                flat.len()
            )));
        }
        let mut a = Vec::with_capacity(k);
        let mut b = Vec::with_capacity(k);
        for j in 0..k {
            a.push(flat[2 * j + 1]);
            b.push(flat[2 * j + 2]);
        }
        Ok(RakedTrigPoly {
            k,
            c: flat[0],
            a,
            b,
        })
    }

    pub fn eval(&self, t: AnglePoint) -> f64 {
        self.deriv_eval(t, 0)
    }

    /// Derivative of any order in closed form (phase shifts).
    pub fn deriv_eval(&self, t: AnglePoint, order: usize) -> f64 {
        let th = t.radians();
        let phase = order as f64 * std::f64::consts::FRAC_PI_2;
        let mut s = if order == 0 { self.c } else { 0.0 };
        for j in 1..=self.k {
            let m = (2 * j - 1) as f64;
            let scale = m.powi(order as i32);
            s += scale
                * (self.a[j - 1] * (m * th + phase).sin() + self.b[j - 1] * (m * th + phase).cos());
        }
        s
    }

    /// `A(t + delta)` as a raked polynomial; rotation preserves rakedness.
    pub fn rotate(&self, delta: f64) -> Self {
        let mut out = self.clone();
        for j in 1..=self.k {
            let m = (2 * j - 1) as f64;
            let (a, b) = (self.a[j - 1], self.b[j - 1]);
            out.a[j - 1] = a * (m * delta).cos() + b * (m * delta).sin();
            out.b[j - 1] = b * (m * delta).cos() - a * (m * delta).sin();
        }
        out
    }

    /// `A(t) + A(-t)`: the even symmetrization; sine terms cancel.
    pub fn symmetrized(&self) -> Self {
        RakedTrigPoly {
            k: self.k,
            c: 2.0 * self.c,
            a: vec![0.0; self.k],
            b: self.b.iter().map(|x| 2.0 * x).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        RakedTrigPoly {
            k: self.k,
            c: self.c * s,
            a: self.a.iter().map(|x| x * s).collect(),
            b: self.b.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        RakedTrigPoly {
            k: self.k,
            c: self.c + other.c,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn max_coeff(&self) -> f64 {
        self.a
            .iter()
            .chain(self.b.iter())
            .chain(std::iter::once(&self.c))
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.max_coeff() == 0.0
    }

    /// The bridge to the z-side: `D(z)` with `A(t) = z^{1-2k} D(z)`.
    pub fn to_selfinv(&self) -> Result<SelfInvPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let k = self.k;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 4 * k - 1];
        coeffs[2 * k - 1] = Complex64::new(self.c, 0.0);
        for j in 1..=k {
            let (a, b) = (self.a[j - 1], self.b[j - 1]);
            coeffs[2 * j + 2 * k - 2] += Complex64::new(b / 2.0, -a / 2.0);
            coeffs[2 * k - 2 * j] += Complex64::new(b / 2.0, a / 2.0);
        }
        Ok(SelfInvPoly { coeffs })
    }
}

// ---------------------------------------------------------------------------
// self-inversive polynomials

/// A complex polynomial stored by ascending coefficients, intended to
/// satisfy `D(z) = z^m conj(D(1/conj(z)))` up to a global unimodular factor.
#[derive(Clone, Debug)]
pub struct SelfInvPoly {
    coeffs: Vec<Complex64>,
}

impl SelfInvPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if coeffs.is_empty() || coeffs.iter().all(|c| c.norm() == 0.0) {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(SelfInvPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            p = p * z + c;
        }
        p
    }

    /// `Re(e^{-i(2k-1)t} D(e^{it}))`: recovers `A(t)` on the circle.
    pub fn bridge_eval(&self, k: usize, t: AnglePoint) -> f64 {
        let th = t.radians();
        let z = Complex64::from_polar(1.0, th);
        let rot = Complex64::from_polar(1.0, -((2 * k - 1) as f64) * th);
        (rot * self.eval(z)).re
    }

    /// Largest deviation from `d_p = ω conj(d_{m-p})` over all p, relative
    /// to the largest coefficient, with ω fitted from the largest pair.
    pub fn self_inversive_residual(&self) -> f64 {
        let m = self.degree();
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if max == 0.0 {
            return f64::INFINITY;
        }
        let p_star = (0..=m)
            .max_by(|&p, &q| {
                (self.coeffs[p].norm() * self.coeffs[m - p].norm())
                    .partial_cmp(&(self.coeffs[q].norm() * self.coeffs[m - q].norm()))
                    .unwrap()
            })
            .unwrap();
        let denom = self.coeffs[m - p_star].conj();
        if denom.norm() < 1e-300 {
            return f64::INFINITY;
        }
        let omega = self.coeffs[p_star] / denom;
        let omega = omega / omega.norm();
        (0..=m)
            .map(|p| (self.coeffs[p] - omega * self.coeffs[m - p].conj()).norm())
            .fold(0.0f64, f64::max)
            / max
    }

    /// Residuals of the raked condition: magnitudes of the odd coefficients
    /// other than the middle one, relative to the largest coefficient.
    pub fn raked_residual(&self) -> f64 {
        let m = self.degree();
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let mid = m.div_ceil(2);
        let mut worst = 0.0f64;
        for p in (1..m).step_by(2) {
            if p != mid {
                worst = worst.max(self.coeffs[p].norm());
            }
        }
        worst / max
    }

    /// Largest imaginary part relative to the largest coefficient.
    pub fn imag_residual(&self) -> f64 {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        self.coeffs
            .iter()
            .map(|c| c.im.abs())
            .fold(0.0f64, f64::max)
            / max
    }

    /// Inverse of the bridge when the degree is `4k-2`: recover the raked
    /// trig polynomial with `A(t) = z^{1-2k} D(z)`.
    pub fn to_raked(&self, k: usize) -> Result<RakedTrigPoly, PolyError> {
        if self.coeffs.len() != 4 * k - 1 {
            return Err(PolyError::SizeMismatch(format!(
                "degree {} is not {}",
                self.degree(),
                4 * k - 2
            )));
        }
        let c = self.coeffs[2 * k - 1].re;
        let mut a = Vec::with_capacity(k);
        let mut b = Vec::with_capacity(k);
        for j in 1..=k {
            let hi = self.coeffs[2 * j + 2 * k - 2];
            let lo = self.coeffs[2 * k - 2 * j];
            b.push((hi + lo).re);
            a.push((lo - hi).im);
        }
        RakedTrigPoly::new(k, c, a, b)
    }

    /// Coefficients trimmed for root finding: matched leading/trailing pairs
    /// below threshold are stripped (they correspond to one root escaping to
    /// infinity and one collapsing to zero, neither of which can lie on the
    /// unit circle). Returns the trimmed ascending coefficients and the
    /// number of stripped pairs.
    pub fn trimmed_for_roots(&self) -> (Vec<Complex64>, usize) {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let thresh = 1e-13 * max;
        let mut lo = 0;
        let mut hi = self.coeffs.len() - 1;
        let mut stripped = 0;
        while hi - lo >= 2 && self.coeffs[hi].norm() < thresh && self.coeffs[lo].norm() < thresh {
            hi -= 1;
            lo += 1;
            stripped += 1;
        }
        (self.coeffs[lo..=hi].to_vec(), stripped)
    }
}

// ---------------------------------------------------------------------------
// root multisets

/// On-circle zeros as (angle, multiplicity) next to the remaining entries.
pub type CircleSplit = (Vec<(f64, usize)>, Vec<(Complex64, usize)>);

/// A multiset of nonzero complex numbers with multiplicities.
#[derive(Clone, Debug)]
pub struct RootMultiset {
    entries: Vec<(Complex64, usize)>,
}

impl RootMultiset {
    pub fn new(entries: Vec<(Complex64, usize)>) -> Self {
        RootMultiset { entries }
    }

    pub fn from_simple(roots: &[Complex64]) -> Self {
        cluster_roots(roots, CLUSTER_RADIUS)
    }

    pub fn entries(&self) -> &[(Complex64, usize)] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Flattened list with every root repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.entries
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect()
    }

    pub fn power_sum(&self, p: i32) -> Complex64 {
        self.entries
            .iter()
            .map(|&(z, m)| z.powi(p) * m as f64)
            .sum()
    }

    fn find_matching(&self, target: Complex64, tol: f64) -> Option<usize> {
        self.entries
            .iter()
            .position(|&(z, _)| (z - target).norm() <= tol * (1.0 + target.norm()))
    }

    /// Closure under `ζ ↦ 1/ζ` with matching multiplicities.
    pub fn is_inversion_closed(&self, tol: f64) -> bool {
        self.entries.iter().all(|&(z, m)| {
            self.find_matching(z.inv(), tol)
                .map(|i| self.entries[i].1 == m)
                .unwrap_or(false)
        })
    }

    /// Closure under conjugation with matching multiplicities.
    pub fn is_conjugation_closed(&self, tol: f64) -> bool {
        self.entries.iter().all(|&(z, m)| {
            self.find_matching(z.conj(), tol)
                .map(|i| self.entries[i].1 == m)
                .unwrap_or(false)
        })
    }

    /// Closure under `ζ ↦ 1/conj(ζ)`: the self-inversive pairing.
    pub fn is_selfinv_closed(&self, tol: f64) -> bool {
        self.entries.iter().all(|&(z, m)| {
            self.find_matching(z.conj().inv(), tol)
                .map(|i| self.entries[i].1 == m)
                .unwrap_or(false)
        })
    }

    /// Split entries into on-circle (angle, multiplicity) and off-circle.
    pub fn on_circle_split(&self, circle_tol: f64) -> CircleSplit {
        let mut on = Vec::new();
        let mut off = Vec::new();
        for &(z, m) in &self.entries {
            if (z.norm() - 1.0).abs() < circle_tol {
                on.push((z.arg().rem_euclid(std::f64::consts::TAU), m));
            } else {
                off.push((z, m));
            }
        }
        on.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        (on, off)
    }
}

/// Single-linkage clustering of roots with the given merge radius.
fn cluster_roots(roots: &[Complex64], radius: f64) -> RootMultiset {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<Complex64>> = Default::default();
    for (i, &root) in roots.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(root);
    }
    let mut entries: Vec<(Complex64, usize)> = groups
        .into_values()
        .map(|g| {
            let m = g.len();
            let center = g.iter().sum::<Complex64>() / m as f64;
            (center, m)
        })
        .collect();
    entries.sort_by(|a, b| {
        (a.0.arg(), a.0.norm())
            .partial_cmp(&(b.0.arg(), b.0.norm()))
            .unwrap()
    });
    RootMultiset { entries }
}

/// All complex roots of `D`, clustered into a multiset. Fails loudly when
/// the iteration does not converge; never silently truncates.
///
/// Cluster centers of multiplicity m >= 2 are polished by Newton iteration
/// on the (m-1)-th derivative: the raw centers of numerically split
/// multiple roots keep only about half the working precision, which is not
/// enough for the power-sum identities downstream.
pub fn selfinv_roots(d: &SelfInvPoly) -> Result<RootMultiset, PolyError> {
    let (coeffs, _stripped) = d.trimmed_for_roots();
    let roots = find_roots(&coeffs)?;
    let mut ms = cluster_roots(&roots, CLUSTER_RADIUS);
    refine_multiple_roots(&coeffs, &mut ms);
    Ok(ms)
}

fn poly_derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn horner_pair(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn refine_multiple_roots(coeffs: &[Complex64], ms: &mut RootMultiset) {
    for (z, mult) in ms.entries.iter_mut() {
        if *mult < 2 {
            continue;
        }
        let mut dc = coeffs.to_vec();
        for _ in 0..(*mult - 1) {
            dc = poly_derivative(&dc);
        }
        if dc.len() < 2 {
            continue;
        }
        let mut x = *z;
        for _ in 0..40 {
            let (p, dp) = horner_pair(&dc, x);
            if dp.norm() < 1e-300 {
                break;
            }
            let step = p / dp;
            x -= step;
            if step.norm() < 1e-15 * (1.0 + x.norm()) {
                break;
            }
        }
        if (x - *z).norm() <= 10.0 * CLUSTER_RADIUS {
            *z = x;
        }
    }
}

/// Odd power sums `s_1, s_3, ..., s_{2k-3}` of the multiset; these all
/// vanish exactly when the multiset comes from a raked self-inversive
/// polynomial of degree `4k-2`.
pub fn power_sum_check(m: &RootMultiset, k: usize) -> Result<Vec<Complex64>, PolyError> {
    if m.total_multiplicity() != 4 * k - 2 {
        return Err(PolyError::WrongMultisetSize {
            got: m.total_multiplicity(),
            want: 4 * k - 2,
        });
    }
    Ok((1..k).map(|j| m.power_sum(2 * j as i32 - 1)).collect())
}

/// Power sums recovered from the coefficients alone via the Newton
/// identities `p d_{m-p} + Σ_{j=1..p} s_j d_{m-p+j} = 0`; independent of
/// any root finding, so it serves as the coefficient-side oracle.
pub fn newton_power_sums(d: &SelfInvPoly, count: usize) -> Vec<Complex64> {
    let m = d.degree();
    let lead = d.coeffs[m];
    let dn: Vec<Complex64> = d.coeffs.iter().map(|c| c / lead).collect();
    let count = count.min(m);
    let mut s = Vec::with_capacity(count);
    for p in 1..=count {
        let mut acc = Complex64::new(p as f64, 0.0) * dn[m - p];
        for j in 1..p {
            acc += s[j - 1] * dn[m - p + j];
        }
        // s_p * d_m with d_m = 1
        s.push(-acc);
    }
    s
}

/// The λ-deformation: every inversion pair `{ζ, ζ^{-1}}` is replaced by the
/// solution pair of `z + z^{-1} = λ (ζ + ζ^{-1})`.
///
/// Requires `M = M^{-1}` as a multiset and even multiplicities at ±1.
pub fn deform(m: &RootMultiset, lambda: f64) -> Result<RootMultiset, PolyError> {
    if lambda == 0.0 {
        return Err(PolyError::ZeroLambda);
    }
    if !m.is_inversion_closed(1e-6) {
        return Err(PolyError::PairingViolation("inversion"));
    }
    let mut remaining: Vec<(Complex64, usize)> = m.entries.to_vec();
    let mut pairs: Vec<(Complex64, usize)> = Vec::new(); // (ζ of the pair, count)
    while let Some(pos) = remaining.iter().position(|&(_, mult)| mult > 0) {
        let (z, mult) = remaining[pos];
        let unit = (z - Complex64::new(1.0, 0.0)).norm() < 1e-9
            || (z + Complex64::new(1.0, 0.0)).norm() < 1e-9;
        if unit {
            if mult % 2 != 0 {
                return Err(PolyError::OddUnitMultiplicity(z.re.signum()));
            }
            pairs.push((z, mult / 2));
            remaining[pos].1 = 0;
            continue;
        }
        let inv = z.inv();
        let partner = remaining
            .iter()
            .position(|&(w, mu)| mu > 0 && (w - inv).norm() <= 1e-6 * (1.0 + inv.norm()));
        match partner {
            Some(q) if q != pos => {
                let take = mult.min(remaining[q].1);
                if take != mult || remaining[q].1 != mult {
                    return Err(PolyError::PairingViolation("inversion multiplicity"));
                }
                pairs.push((z, take));
                remaining[pos].1 = 0;
                remaining[q].1 = 0;
            }
            _ => return Err(PolyError::PairingViolation("inversion partner")),
        }
    }
    let mut out: Vec<Complex64> = Vec::with_capacity(m.total_multiplicity());
    for (z, count) in pairs {
        let s = Complex64::new(lambda, 0.0) * (z + z.inv());
        let disc = (s * s - Complex64::new(4.0, 0.0)).sqrt();
        let r1 = (s + disc) / 2.0;
        // the companion solution; computed via the product z r2 = 1 for
        // stability when the discriminant cancels
        let r2 = if r1.norm() > 1e-12 {
            r1.inv()
        } else {
            (s - disc) / 2.0
        };
        for _ in 0..count {
            out.push(r1);
            out.push(r2);
        }
    }
    // collided pairs (e.g. a deformation landing exactly on ±1) carry
    // square-root rounding noise, so merge with the standard radius
    Ok(cluster_roots(&out, CLUSTER_RADIUS))
}

/// Monic polynomial with zero multiset `M`. Requires the self-inversive
/// pairing `conj(M) = M^{-1}` and even size. When `M` is additionally
/// conjugation-closed the imaginary rounding noise is removed, so the
/// result has genuinely real coefficients.
pub fn poly_from_multiset(m: &RootMultiset) -> Result<SelfInvPoly, PolyError> {
    if m.total_multiplicity() == 0 || !m.total_multiplicity().is_multiple_of(2) {
        return Err(PolyError::WrongMultisetSize {
            got: m.total_multiplicity(),
            want: m.total_multiplicity() + 1,
        });
    }
    if !m.is_selfinv_closed(1e-6) {
        return Err(PolyError::PairingViolation("self-inversive"));
    }
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for z in m.expanded() {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * z;
        }
        coeffs = next;
    }
    if m.is_conjugation_closed(1e-6) {
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        for c in coeffs.iter_mut() {
            if c.im.abs() < 1e-10 * max {
                c.im = 0.0;
            }
        }
    }
    SelfInvPoly::new(coeffs)
}

/// Outcome of the root localization diagnostic.
///
/// `None` when the hypothesis fails (the arc is too long or does not contain
/// exactly 2k distinct zeros); otherwise whether every remaining circle zero
/// lies on the antipodal arc.
pub fn root_localization_check(a: &RakedTrigPoly, omega: &Arc) -> Option<bool> {
    if omega.length >= std::f64::consts::PI {
        return None;
    }
    let d = a.to_selfinv().ok()?;
    let roots = selfinv_roots(&d).ok()?;
    let (on, _) = roots.on_circle_split(1e-6);
    let inside: Vec<f64> = on
        .iter()
        .map(|&(ang, _)| ang)
        .filter(|&ang| omega.contains(AnglePoint::new(ang)))
        .collect();
    if inside.len() != 2 * a.k {
        return None;
    }
    let antipodal = omega.antipode();
    Some(
        on.iter()
            .map(|&(ang, _)| AnglePoint::new(ang))
            .filter(|&p| !omega.contains(p))
            .all(|p| antipodal.contains(p)),
    )
}

/// Convenience: exact zero angles of `A` on the circle via the z-side roots,
/// collapsing clusters to (angle, multiplicity).
pub fn circle_zeros(a: &RakedTrigPoly, circle_tol: f64) -> Result<Vec<(f64, usize)>, PolyError> {
    let d = a.to_selfinv()?;
    let roots = selfinv_roots(&d)?;
    Ok(roots.on_circle_split(circle_tol).0)
}

/// Roots of unity of order `2k-1`, each doubled: the zero multiset of the
/// regular-simplex face polynomial, and the natural seed for deformations.
pub fn simplex_seed_multiset(k: usize) -> RootMultiset {
    let m = 2 * k - 1;
    RootMultiset::new(
        (0..m)
            .map(|j| {
                (
                    Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64),
                    2,
                )
            })
            .collect(),
    )
}

/// Does `angle` match one of `targets` within `tol` (arc distance)?
pub fn matches_target(angle: f64, targets: &[AnglePoint], tol: f64) -> bool {
    targets
        .iter()
        .any(|&t| arc_distance(AnglePoint::new(angle), t) < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// A(t) = 1 - cos((2k-1)t): the regular-simplex face polynomial.
    fn one_minus_cos(k: usize) -> RakedTrigPoly {
        let mut b = vec![0.0; k];
        b[k - 1] = -1.0;
        RakedTrigPoly::new(k, 1.0, vec![0.0; k], b).unwrap()
    }

    #[test]
    fn trig_eval_examples() {
        let a = one_minus_cos(2);
        assert!(a.eval(AnglePoint::new(0.0)).abs() < 1e-15);
        assert!(a.eval(AnglePoint::new(TAU / 3.0)).abs() < 1e-14);
        assert!((a.eval(AnglePoint::new(PI / 3.0)) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn antipode_sum_is_twice_constant() {
        let a = RakedTrigPoly::new(3, 0.7, vec![0.3, -1.1, 0.4], vec![0.2, 0.9, -0.5]).unwrap();
        for i in 0..100 {
            let t = AnglePoint::new(i as f64 * 0.0628);
            let s = a.eval(t) + a.eval(t.antipode());
            assert!((s - 2.0 * a.c).abs() < 1e-12);
        }
    }

    #[test]
    fn bridge_examples() {
        // 1 - cos 3t (k=2) maps to -(z^3 - 1)^2 / 2
        let d = one_minus_cos(2).to_selfinv().unwrap();
        let expect = [
            cx(-0.5, 0.0),
            cx(0.0, 0.0),
            cx(0.0, 0.0),
            cx(1.0, 0.0),
            cx(0.0, 0.0),
            cx(0.0, 0.0),
            cx(-0.5, 0.0),
        ];
        for (c, e) in d.coeffs().iter().zip(expect) {
            assert!((c - e).norm() < 1e-15);
        }

        // constant c maps to c z^{2k-1}
        let a = RakedTrigPoly::new(2, 3.5, vec![0.0; 2], vec![0.0; 2]).unwrap();
        let d = a.to_selfinv().unwrap();
        for (i, c) in d.coeffs().iter().enumerate() {
            let e = if i == 3 { 3.5 } else { 0.0 };
            assert!((c.re - e).abs() < 1e-15 && c.im.abs() < 1e-15);
        }

        // cos t (k=1) maps to (z^2 + 1)/2
        let a = RakedTrigPoly::new(1, 0.0, vec![0.0], vec![1.0]).unwrap();
        let d = a.to_selfinv().unwrap();
        let expect = [cx(0.5, 0.0), cx(0.0, 0.0), cx(0.5, 0.0)];
        for (c, e) in d.coeffs().iter().zip(expect) {
            assert!((c - e).norm() < 1e-15);
        }

        assert!(RakedTrigPoly::zero(2).to_selfinv().is_err());
    }

    #[test]
    fn bridge_agrees_on_grid() {
        let a = RakedTrigPoly::new(3, 0.4, vec![0.1, -0.6, 0.23], vec![-0.8, 0.35, 0.9]).unwrap();
        let d = a.to_selfinv().unwrap();
        for i in 0..1000 {
            let t = AnglePoint::new(TAU * i as f64 / 1000.0);
            assert!((a.eval(t) - d.bridge_eval(3, t)).abs() < 1e-12);
        }
        // and the inverse bridge recovers the coefficients
        let back = d.to_raked(3).unwrap();
        assert!((back.c - a.c).abs() < 1e-14);
        for j in 0..3 {
            assert!((back.a[j] - a.a[j]).abs() < 1e-14);
            assert!((back.b[j] - a.b[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn selfinv_roots_examples() {
        // (z^3 - 1)^2: cube roots of unity, multiplicity 2
        let d = SelfInvPoly::new(vec![
            cx(1.0, 0.0),
            cx(0.0, 0.0),
            cx(0.0, 0.0),
            cx(-2.0, 0.0),
            cx(0.0, 0.0),
            cx(0.0, 0.0),
            cx(1.0, 0.0),
        ])
        .unwrap();
        let m = selfinv_roots(&d).unwrap();
        assert_eq!(m.entries().len(), 3);
        for &(z, mult) in m.entries() {
            assert_eq!(mult, 2);
            assert!((z.norm() - 1.0).abs() < CIRCLE_TOL);
        }
        assert!(m.is_selfinv_closed(1e-7));

        // z^2 + 1
        let d = SelfInvPoly::new(vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)]).unwrap();
        let m = selfinv_roots(&d).unwrap();
        let (on, off) = m.on_circle_split(CIRCLE_TOL);
        assert_eq!(on.len(), 2);
        assert!(off.is_empty());
    }

    #[test]
    fn multiset_round_trip() {
        // {2, 1/2, i, -i} -> (z-2)(z-1/2)(z^2+1) = z^4 - 5/2 z^3 + 2 z^2 - 5/2 z + 1
        let m = RootMultiset::new(vec![
            (cx(2.0, 0.0), 1),
            (cx(0.5, 0.0), 1),
            (cx(0.0, 1.0), 1),
            (cx(0.0, -1.0), 1),
        ]);
        let d = poly_from_multiset(&m).unwrap();
        let expect = [
            cx(1.0, 0.0),
            cx(-2.5, 0.0),
            cx(2.0, 0.0),
            cx(-2.5, 0.0),
            cx(1.0, 0.0),
        ];
        for (c, e) in d.coeffs().iter().zip(expect) {
            assert!((c - e).norm() < 1e-14, "coeff {c} vs {e}");
        }
        let back = selfinv_roots(&d).unwrap();
        for &(z, mult) in m.entries() {
            let hit = back
                .entries()
                .iter()
                .find(|&&(w, _)| (w - z).norm() < 1e-8)
                .expect("root recovered");
            assert_eq!(hit.1, mult);
        }
    }

    #[test]
    fn poly_from_multiset_examples() {
        let m = RootMultiset::new(vec![(cx(0.0, 1.0), 1), (cx(0.0, -1.0), 1)]);
        let d = poly_from_multiset(&m).unwrap();
        let expect = [cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)];
        for (c, e) in d.coeffs().iter().zip(expect) {
            assert!((c - e).norm() < 1e-14);
        }

        let w = Complex64::from_polar(1.0, TAU / 3.0);
        let m = RootMultiset::new(vec![(cx(1.0, 0.0), 2), (w, 2), (w.conj(), 2)]);
        let d = poly_from_multiset(&m).unwrap();
        // (z^3 - 1)^2 = z^6 - 2 z^3 + 1
        let expect = [1.0, 0.0, 0.0, -2.0, 0.0, 0.0, 1.0];
        for (c, e) in d.coeffs().iter().zip(expect) {
            assert!((c - cx(e, 0.0)).norm() < 1e-12);
        }
        assert!(d.imag_residual() < 1e-12);
        assert!(d.self_inversive_residual() < 1e-12);
    }

    #[test]
    fn deform_identity_and_cube_roots() {
        let w = Complex64::from_polar(1.0, TAU / 3.0);
        let m = RootMultiset::new(vec![(cx(1.0, 0.0), 2), (w, 2), (w.conj(), 2)]);

        // λ = 1 keeps the multiset
        let m1 = deform(&m, 1.0).unwrap();
        assert_eq!(m1.total_multiplicity(), 6);
        for &(z, mult) in m.entries() {
            let hit = m1
                .entries()
                .iter()
                .find(|&&(y, _)| (y - z).norm() < 1e-9)
                .expect("kept");
            assert_eq!(hit.1, mult);
        }

        // λ = 1 + ε: real pair from 1, on-circle double pairs from the others
        let eps = 0.01;
        let md = deform(&m, 1.0 + eps).unwrap();
        assert_eq!(md.total_multiplicity(), 6);
        let (on, off) = md.on_circle_split(1e-9);
        assert_eq!(off.len(), 2, "two real simple roots near 1");
        let prod: Complex64 = off.iter().map(|&(z, _)| z).product();
        assert!((prod - cx(1.0, 0.0)).norm() < 1e-9, "product 1");
        let expect_angle = ((1.0 + eps) * (TAU / 3.0).cos()).acos();
        assert_eq!(on.len(), 2);
        for &(ang, mult) in &on {
            assert_eq!(mult, 2);
            let d = arc_distance(AnglePoint::new(ang), AnglePoint::new(expect_angle)).min(
                arc_distance(AnglePoint::new(ang), AnglePoint::new(-expect_angle)),
            );
            assert!(d < 1e-9);
        }
    }

    #[test]
    fn deform_pair_to_double_root_at_one() {
        let z = Complex64::from_polar(1.0, PI / 3.0);
        let m = RootMultiset::new(vec![(z, 1), (z.conj(), 1)]);
        let md = deform(&m, 2.0).unwrap();
        assert_eq!(md.entries().len(), 1);
        let (center, mult) = md.entries()[0];
        assert_eq!(mult, 2);
        assert!((center - cx(1.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn deform_rejects_bad_inputs() {
        let m = RootMultiset::new(vec![(cx(2.0, 0.0), 1), (cx(0.5, 0.0), 1)]);
        assert!(matches!(deform(&m, 0.0), Err(PolyError::ZeroLambda)));
        let bad = RootMultiset::new(vec![(cx(2.0, 0.0), 1), (cx(3.0, 0.0), 1)]);
        assert!(deform(&bad, 1.5).is_err());
        let odd_one = RootMultiset::new(vec![(cx(1.0, 0.0), 1), (cx(-1.0, 0.0), 1)]);
        assert!(deform(&odd_one, 1.5).is_err());
    }

    #[test]
    fn power_sum_examples() {
        let w = Complex64::from_polar(1.0, TAU / 3.0);
        let m = RootMultiset::new(vec![(cx(1.0, 0.0), 2), (w, 2), (w.conj(), 2)]);
        let s = power_sum_check(&m, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].norm() < 1e-12, "s_1 = 0 for the cube roots doubled");

        // symmetric-about-zero multiset of size 4k-2 = 10 for k = 3
        let m = RootMultiset::new(vec![
            (cx(1.0, 0.0), 2),
            (cx(-1.0, 0.0), 2),
            (cx(0.0, 1.0), 2),
            (cx(0.0, -1.0), 2),
            (cx(2.0, 0.0), 1),
            (cx(-2.0, 0.0), 1),
        ]);
        for s in power_sum_check(&m, 3).unwrap() {
            assert!(s.norm() < 1e-12);
        }

        let tiny = RootMultiset::new(vec![(cx(1.0, 0.0), 2)]);
        assert!(power_sum_check(&tiny, 2).is_err());
    }

    #[test]
    fn newton_sums_match_root_sums() {
        let a = RakedTrigPoly::new(3, 0.3, vec![0.0; 3], vec![0.7, -0.2, 0.9]).unwrap();
        let d = a.to_selfinv().unwrap();
        let roots = selfinv_roots(&d).unwrap();
        let coeff_side = newton_power_sums(&d, 5);
        for (p, s) in coeff_side.iter().enumerate() {
            let root_side = roots.power_sum(p as i32 + 1);
            assert!(
                (s - root_side).norm() < 1e-8,
                "power {} mismatch {} vs {}",
                p + 1,
                s,
                root_side
            );
        }
        // raked degree 10: s_1 = s_3 = 0 from the coefficients
        assert!(coeff_side[0].norm() < 1e-12);
        assert!(coeff_side[2].norm() < 1e-12);
    }

    #[test]
    fn binomial_identity_underlying_deformation() {
        // (x + 1/x)^{2n-1} = Σ_m C(2n-1, n+m-1) (x^{2m-1} + x^{1-2m})
        let binom = |n: u64, k: u64| -> f64 {
            if k > n {
                return 0.0;
            }
            let mut r = 1.0f64;
            for i in 0..k {
                r = r * (n - i) as f64 / (i + 1) as f64;
            }
            r
        };
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as f64 / u64::MAX as f64
        };
        for n in 1..=6usize {
            for _ in 0..100 {
                let x = Complex64::from_polar(0.5 + next(), next() * TAU);
                let lhs = (x + x.inv()).powi(2 * n as i32 - 1);
                let mut rhs = Complex64::new(0.0, 0.0);
                for m in 1..=n {
                    let c = binom(2 * n as u64 - 1, (n + m - 1) as u64);
                    rhs += Complex64::new(c, 0.0)
                        * (x.powi(2 * m as i32 - 1) + x.powi(1 - 2 * m as i32));
                }
                assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
            }
        }
    }

    #[test]
    fn localization_diagnostic() {
        // 1 - cos((2k-1)t) has 2k-1 distinct double zeros spread around the
        // circle, so no arc shorter than π contains 2k of them: not applicable
        let a = one_minus_cos(2);
        let omega = Arc::new(0.0, 1.0);
        assert_eq!(root_localization_check(&a, &omega), None);
        let too_long = Arc::new(0.0, 3.2);
        assert_eq!(root_localization_check(&a, &too_long), None);
    }

    #[test]
    fn nonnegative_poly_has_even_circle_multiplicities() {
        // grid-verified nonnegative polynomial: every circle zero is even
        let a = one_minus_cos(3);
        let zeros = circle_zeros(&a, CIRCLE_TOL).unwrap();
        assert_eq!(zeros.len(), 5);
        for &(ang, mult) in &zeros {
            assert_eq!(mult % 2, 0, "odd multiplicity at {ang}");
        }
    }
}
