//! Named verification suites behind the CLI `verify` command.
//!
//! Each suite bundles a family of checks around one structural claim and
//! reports one pass/fail line per check. All randomness is seeded, so runs
//! are reproducible.

use std::f64::consts::{PI, TAU};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::census::{build, enumerate_faces};
use crate::circle::{AnglePoint, SymmetricPointSet};
use crate::curve::{nonflatness_row_normalized, nonflatness_scaled, sm_eval};
use crate::fixtures::{load_instance, FixtureInstance};
use crate::oracle::{body_face_certificate_default, verify_body_certificate};
use crate::poly::{
    deform, newton_power_sums, poly_from_multiset, power_sum_check, selfinv_roots, RakedTrigPoly,
};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> Self {
        SuiteReport {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

// ---------------------------------------------------------------------------
// sampling helpers

/// Random real raked polynomial with cosine terms only, bounded away from
/// the degenerate cases (`D(0) = 0`, roots at ±1).
fn sample_real_raked(k: usize, rng: &mut ChaCha8Rng) -> RakedTrigPoly {
    loop {
        let c: f64 = rng.gen_range(-1.0..1.0);
        let b: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = vec![0.0; k];
        if b[k - 1].abs() < 0.05 {
            continue;
        }
        let poly = RakedTrigPoly::new(k, c, a, b).expect("sampled sizes");
        let at_zero = poly.eval(AnglePoint::new(0.0)).abs();
        let at_pi = poly.eval(AnglePoint::new(PI)).abs();
        if at_zero > 1e-3 && at_pi > 1e-3 {
            return poly;
        }
    }
}

/// Random raked polynomial with both sine and cosine terms and a leading
/// coefficient bounded away from zero.
fn sample_raked(k: usize, rng: &mut ChaCha8Rng) -> RakedTrigPoly {
    loop {
        let c: f64 = rng.gen_range(-1.0..1.0);
        let a: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if a[k - 1].abs() + b[k - 1].abs() < 0.05 {
            continue;
        }
        return RakedTrigPoly::new(k, c, a, b).expect("sampled sizes");
    }
}

/// `count` random points inside a random arc of length at most `max_arc`,
/// pairwise separated by at least `min_gap`.
fn sample_arc_points(
    count: usize,
    max_arc: f64,
    min_gap: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<AnglePoint> {
    loop {
        let base: f64 = rng.gen_range(0.0..TAU);
        let mut offs: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..max_arc)).collect();
        offs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        if offs.windows(2).any(|w| w[1] - w[0] < min_gap) {
            continue;
        }
        return offs
            .into_iter()
            .map(|o| AnglePoint::new(base + o))
            .collect();
    }
}

// ---------------------------------------------------------------------------
// suites

/// Full face classification of the 4-dimensional instance on `n` equally
/// spaced points: edges exactly at arcs under 2π/3 (plus threshold pairs
/// inside inscribed triangles), no faces across antipodes, inscribed
/// triangles as 2-faces, and an exact match with the committed hull fixture.
pub fn run_smilansky(n: usize, fixtures: Option<&Path>) -> SuiteReport {
    let mut report = SuiteReport::new(format!("smilansky(n={n})"));
    let x = match SymmetricPointSet::equally_spaced(n) {
        Ok(x) => x,
        Err(e) => {
            report.push("point set", false, e.to_string());
            return report;
        }
    };
    let p = match build(2, x.points()) {
        Ok(p) => p,
        Err(e) => {
            report.push("build", false, e.to_string());
            return report;
        }
    };
    report.push(
        "all singletons are vertices",
        p.non_vertex_exceptions.is_empty(),
        format!("exceptions: {:?}", p.non_vertex_exceptions),
    );
    let census = match enumerate_faces(&p, 3) {
        Ok(c) => c,
        Err(e) => {
            report.push("census", false, e.to_string());
            return report;
        }
    };

    // predicted edge set: arc < 2π/3, plus arc = 2π/3 when 3 | n
    let step = TAU / n as f64;
    let threshold = TAU / 3.0;
    let mut predicted: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = (j - i).min(n - (j - i));
            let arc = step * s as f64;
            if arc < threshold - 1e-12 || ((arc - threshold).abs() < 1e-12 && n.is_multiple_of(3)) {
                predicted.push(vec![i, j]);
            }
        }
    }
    predicted.sort();
    let got: Vec<Vec<usize>> = census
        .faces
        .iter()
        .filter(|f| f.vertex_set.len() == 2)
        .map(|f| f.vertex_set.clone())
        .collect();
    report.push(
        "edge set matches the arc rule",
        got == predicted,
        format!("{} edges vs {} predicted", got.len(), predicted.len()),
    );

    let mut antipodal_ok = true;
    for i in 0..n {
        if let Some(j) = p.antipodal_index(i) {
            if i < j {
                let has = got.iter().any(|e| e == &vec![i, j]);
                if has {
                    antipodal_ok = false;
                }
            }
        }
    }
    report.push(
        "no antipodal edges",
        antipodal_ok,
        "checked every antipodal pair",
    );

    if n.is_multiple_of(3) {
        let mut tri_ok = true;
        let mut count = 0;
        for i in 0..n / 3 {
            let tri = vec![i, i + n / 3, i + 2 * n / 3];
            let found = census
                .faces
                .iter()
                .find(|f| f.vertex_set == tri)
                .map(|f| f.dimension == 2)
                .unwrap_or(false);
            if found {
                count += 1;
            } else {
                tri_ok = false;
            }
        }
        report.push(
            "inscribed triangles are 2-faces",
            tri_ok,
            format!("{count} of {} triangles certified", n / 3),
        );
    }

    // central symmetry of the census
    let mut symmetric_ok = true;
    for rec in &census.faces {
        let image: Option<Vec<usize>> = rec
            .vertex_set
            .iter()
            .map(|&i| p.antipodal_index(i))
            .collect();
        match image {
            Some(mut img) => {
                img.sort_unstable();
                let found = census
                    .faces
                    .iter()
                    .find(|f| f.vertex_set == img)
                    .map(|f| f.dimension == rec.dimension)
                    .unwrap_or(false);
                if !found {
                    symmetric_ok = false;
                }
            }
            None => symmetric_ok = false,
        }
    }
    report.push(
        "census is closed under the antipodal map",
        symmetric_ok,
        "antipodal image of every face is a face of equal dimension",
    );

    match load_instance(fixtures, 2, n) {
        Ok(fx) => {
            let expected = fx.faces_sized(1, 3);
            let got = census.face_sets_with_singletons();
            report.push(
                "exact match with hull fixture",
                got == expected,
                format!("{} faces vs {} in fixture", got.len(), expected.len()),
            );
        }
        Err(e) => report.push("hull fixture", false, format!("unavailable: {e}")),
    }
    report
}

/// Deformation of random real raked self-inversive polynomials: the
/// reconstructed polynomial stays raked and real for every tested λ.
pub fn run_deformation(ks: &[usize], trials: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(format!("deformation(trials={trials})"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambdas = [0.5, 1.01, 2.0];
    for &k in ks {
        let mut failures = 0usize;
        let mut worst_raked = 0.0f64;
        let mut worst_imag = 0.0f64;
        for _ in 0..trials {
            let a = sample_real_raked(k, &mut rng);
            let d = a.to_selfinv().expect("nonzero sample");
            let roots = match selfinv_roots(&d) {
                Ok(r) => r,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            for &lambda in &lambdas {
                let deformed = match deform(&roots, lambda) {
                    Ok(m) => m,
                    Err(_) => {
                        failures += 1;
                        continue;
                    }
                };
                let rebuilt = match poly_from_multiset(&deformed) {
                    Ok(p) => p,
                    Err(_) => {
                        failures += 1;
                        continue;
                    }
                };
                let raked = rebuilt.raked_residual();
                let imag = rebuilt.imag_residual();
                worst_raked = worst_raked.max(raked);
                worst_imag = worst_imag.max(imag);
                if raked >= 1e-8 || imag >= 1e-8 {
                    failures += 1;
                }
                let sums = power_sum_check(&deformed, k).expect("size preserved");
                if sums.iter().any(|s| s.norm() >= 1e-8) {
                    failures += 1;
                }
            }
        }
        report.push(
            format!("k={k}: deformed polynomials stay raked and real"),
            failures == 0,
            format!(
                "{failures} failures; worst raked residual {worst_raked:.2e}, worst imaginary residual {worst_imag:.2e}"
            ),
        );
    }
    report
}

/// Newton identities: root-side odd power sums vanish and agree with the
/// coefficient-side recurrences for random raked polynomials.
pub fn run_newton(ks: &[usize], trials: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(format!("newton(trials={trials})"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &k in ks {
        let mut failures = 0usize;
        let mut worst_sum = 0.0f64;
        let mut worst_gap = 0.0f64;
        for _ in 0..trials {
            let a = sample_raked(k, &mut rng);
            let d = a.to_selfinv().expect("nonzero sample");
            let roots = match selfinv_roots(&d) {
                Ok(r) => r,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            let root_side = match power_sum_check(&roots, k) {
                Ok(s) => s,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            let coeff_side = newton_power_sums(&d, 2 * k.saturating_sub(1));
            for (j, s) in root_side.iter().enumerate() {
                worst_sum = worst_sum.max(s.norm());
                if s.norm() >= 1e-9 {
                    failures += 1;
                }
                let p = 2 * j + 1;
                let gap = (s - coeff_side[p - 1]).norm();
                worst_gap = worst_gap.max(gap);
                if gap >= 1e-8 {
                    failures += 1;
                }
            }
        }
        report.push(
            format!("k={k}: odd power sums vanish and match coefficients"),
            failures == 0,
            format!("{failures} failures; worst |s| {worst_sum:.2e}, worst agreement gap {worst_gap:.2e}"),
        );
    }
    report
}

/// The regular-simplex faces: `1 - cos((2k-1)t)` certifies the (2k-2)-face
/// on the regular (2k-1)-gon, whose embedded vertices are pairwise
/// equidistant.
pub fn run_delta0(ks: &[usize]) -> SuiteReport {
    let mut report = SuiteReport::new("delta0".to_string());
    for &k in ks {
        let m = 2 * k - 1;
        let mut b = vec![0.0; k];
        b[k - 1] = -1.0;
        let a = RakedTrigPoly::new(k, 1.0, vec![0.0; k], b).expect("sizes");
        let targets: Vec<AnglePoint> = (1..=m)
            .map(|j| AnglePoint::new(TAU * j as f64 / m as f64))
            .collect();
        let verified = verify_body_certificate(&a, &targets);
        report.push(
            format!("k={k}: simplex face certificate verifies"),
            verified.is_ok(),
            match &verified {
                Ok(margin) => format!("margin {margin:.3e}"),
                Err(e) => format!("{}: {}", e.stage, e.detail),
            },
        );

        let pts: Vec<Vec<f64>> = targets
            .iter()
            .map(|&t| sm_eval(k, t).expect("k >= 1").coords)
            .collect();
        let mut dmin = f64::INFINITY;
        let mut dmax = f64::NEG_INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d: f64 = pts[i]
                    .iter()
                    .zip(&pts[j])
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt();
                dmin = dmin.min(d);
                dmax = dmax.max(d);
            }
        }
        report.push(
            format!("k={k}: embedded vertices pairwise equidistant"),
            dmax - dmin < 1e-10,
            format!("spread {:.3e}", dmax - dmin),
        );
    }
    report
}

/// Non-flatness of the curve: the scaled derivative determinant stays above
/// 1e-6 at random angles for every k up to `kmax`.
pub fn run_noflat(kmax: usize, trials: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(format!("noflat(kmax={kmax})"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 1..=kmax {
        let mut min_scaled = f64::INFINITY;
        for _ in 0..trials {
            let t = AnglePoint::new(rng.gen_range(0.0..TAU));
            min_scaled = min_scaled.min(nonflatness_scaled(k, t));
        }
        let row_norm = nonflatness_row_normalized(k, AnglePoint::new(0.0));
        report.push(
            format!("k={k}: scaled derivative determinant above 1e-6"),
            min_scaled > 1e-6,
            format!("min scaled {min_scaled:.3e}; raw row-normalized {row_norm:.3e}"),
        );
    }
    report
}

/// Triples of the 6-dimensional body: random triples inside short arcs all
/// certify as 2-faces, and the equally spaced instance matches the counted
/// fixture and the expected density window.
pub fn run_b6_triples(
    n: usize,
    arc: f64,
    trials: usize,
    seed: u64,
    fixtures: Option<&Path>,
) -> SuiteReport {
    let mut report = SuiteReport::new(format!("b6(n={n}, arc={arc:.4})"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    if trials > 0 {
        let samples: Vec<Vec<AnglePoint>> = (0..trials)
            .map(|_| sample_arc_points(3, arc, 0.01, &mut rng))
            .collect();
        let failures = samples
            .par_iter()
            .filter(
                |t| !matches!(body_face_certificate_default(3, t), Ok(out) if out.is_certified()),
            )
            .count();
        report.push(
            format!("{trials} random triples within arc {arc:.3} certify"),
            failures == 0,
            format!("{failures} failures"),
        );
    }

    // grid triples within arccos(1/8) on the equally spaced instance
    let maxspan = (1.0f64 / 8.0).acos();
    let step = TAU / n as f64;
    let mut grid_triples: Vec<[usize; 3]> = Vec::new();
    for i in 0..n {
        for p in 1..n {
            for q in 1..n {
                if (p + q) as f64 * step > maxspan {
                    continue;
                }
                let mut t = [i, (i + p) % n, (i + p + q) % n];
                t.sort_unstable();
                grid_triples.push(t);
            }
        }
    }
    grid_triples.sort_unstable();
    grid_triples.dedup();
    let grid_failures = grid_triples
        .par_iter()
        .filter(|t| {
            let pts: Vec<AnglePoint> = t
                .iter()
                .map(|&i| AnglePoint::new(step * i as f64))
                .collect();
            !matches!(body_face_certificate_default(3, &pts), Ok(out) if out.is_certified())
        })
        .count();
    report.push(
        format!(
            "all {} short-arc triples of the spaced instance certify",
            grid_triples.len()
        ),
        grid_failures == 0,
        format!("{grid_failures} failures"),
    );

    let count = grid_triples.len() as f64;
    let total = crate::census::binomial(n as u64, 3) as f64;
    let ratio = count / total;
    report.push(
        "triple density in the expected window",
        (0.08..=0.159).contains(&ratio),
        format!("{count}/{total} = {ratio:.5}"),
    );

    if let Some(dir) = fixtures {
        let path = dir.join(format!("b6_n{n}_triples.json"));
        match FixtureInstance::load(&path) {
            Ok(fx) => {
                let expected = fx.triples();
                let got: Vec<Vec<usize>> = grid_triples.iter().map(|t| t.to_vec()).collect();
                report.push(
                    "triple list matches the fixture",
                    got == expected,
                    format!("{} vs {}", got.len(), expected.len()),
                );
            }
            Err(e) => report.push("triple fixture", false, format!("unavailable: {e}")),
        }
    }
    report
}

/// Local neighborliness: any k points inside a short arc span a (k-1)-face.
pub fn run_neighborly(k: usize, trials: usize, max_arc: f64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(format!("neighborly(k={k}, arc={max_arc})"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Vec<AnglePoint>> = (0..trials)
        .map(|_| sample_arc_points(k, max_arc, 0.01, &mut rng))
        .collect();
    let failures = samples
        .par_iter()
        .filter(|t| {
            !matches!(
                body_face_certificate_default(k, t),
                Ok(out) if out.certificate().map(|c| c.dimension == k - 1).unwrap_or(false)
            )
        })
        .count();
    report.push(
        format!(
            "{trials} random {k}-point sets certify as ({}-faces)",
            k - 1
        ),
        failures == 0,
        format!("{failures} failures"),
    );
    report
}
