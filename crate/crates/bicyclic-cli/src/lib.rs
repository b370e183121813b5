//! Command implementations behind the `bicyclic` binary.
//!
//! Every command produces a [`Report`]: a config echo, result payload, and a
//! list of claims checked against the closed-form bounds, each carrying the
//! bound value it was compared to and the margin. Reports serialize to a
//! versioned JSON schema (`"schema": 1`) and the census emits a flat CSV
//! with the columns `n,k,j,f_j,bound,ratio,status`. Wall-clock timing is
//! printed to the console only, so a rerun with the same seed writes a
//! byte-identical report file.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use bicyclic::census::{
    binomial, build, enumerate_faces, f_to_h, sandwich_report, ub1_bound, ub2_bound, ubt_face_bound,
};
use bicyclic::circle::SymmetricPointSet;
use bicyclic::fixtures::{fixtures_dir, load_instance};
use bicyclic::oracle::{psi_estimate_with_grid, GRID_PER_K};
use bicyclic::poly::{deform, poly_from_multiset, power_sum_check, simplex_seed_multiset};
use bicyclic::suites::{
    run_b6_triples, run_deformation, run_delta0, run_neighborly, run_newton, run_noflat,
    run_smilansky, SuiteReport,
};

/// Exit codes: 0 pass, 1 claim failure, 2 usage error, 3 numerical failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Pass,
    ClaimFailure,
    Usage,
    Numerical,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Pass => 0,
            ExitKind::ClaimFailure => 1,
            ExitKind::Usage => 2,
            ExitKind::Numerical => 3,
        }
    }
}

#[derive(Debug)]
pub struct CmdError {
    pub kind: ExitKind,
    pub message: String,
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> Self {
        CmdError {
            kind: ExitKind::Usage,
            message: msg.into(),
        }
    }

    fn numerical(msg: impl Into<String>) -> Self {
        CmdError {
            kind: ExitKind::Numerical,
            message: msg.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
}

impl Claim {
    fn upper(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Claim {
            name: name.into(),
            value,
            bound,
            margin: bound - value,
            pass: value <= bound,
        }
    }

    fn lower(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Claim {
            name: name.into(),
            value,
            bound,
            margin: value - bound,
            pass: value >= bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: serde_json::Value,
    pub summary: Vec<String>,
    pub results: serde_json::Value,
    pub claims: Vec<Claim>,
}

impl Report {
    fn new(command: &str, config: serde_json::Value) -> Self {
        Report {
            schema: 1,
            command: command.to_string(),
            config,
            summary: Vec::new(),
            results: serde_json::Value::Null,
            claims: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CmdError> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CmdError::numerical(format!("serialize: {e}")))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| CmdError::usage(format!("write {}: {e}", path.display())))?;
        Ok(())
    }

    pub fn print_human(&self) {
        println!("== {} ==", self.command);
        for line in &self.summary {
            println!("  {line}");
        }
        for claim in &self.claims {
            println!(
                "  [{}] {}: value {:.6} vs bound {:.6} (margin {:+.3e})",
                if claim.pass { "pass" } else { "FAIL" },
                claim.name,
                claim.value,
                claim.bound,
                claim.margin
            );
        }
    }
}

// ---------------------------------------------------------------------------
// census

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub k: usize,
    pub n: usize,
    pub cap: usize,
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub fixtures: Option<PathBuf>,
    pub seed: u64,
}

pub fn cmd_census(cfg: &CensusConfig) -> Result<Report, CmdError> {
    if cfg.k == 0 {
        return Err(CmdError::usage("--k must be positive"));
    }
    let x = SymmetricPointSet::equally_spaced(cfg.n)
        .map_err(|e| CmdError::usage(format!("--n: {e}")))?;
    let p = build(cfg.k, x.points()).map_err(|e| CmdError::numerical(e.to_string()))?;
    let census = enumerate_faces(&p, cfg.cap).map_err(|e| CmdError::numerical(e.to_string()))?;

    let d = 2 * cfg.k as u32;
    let mut report = Report::new(
        "census",
        json!({"k": cfg.k, "n": cfg.n, "cap": cfg.cap, "seed": cfg.seed}),
    );

    report.claims.push(Claim {
        name: "census complete through the vertex cap".into(),
        value: if census.partial { 0.0 } else { 1.0 },
        bound: 1.0,
        margin: 0.0,
        pass: !census.partial,
    });
    let f1 = census.f_vector[2] as f64;
    let ub1 = ub1_bound(d, cfg.n as u64).map_err(|e| CmdError::usage(e.to_string()))?;
    report
        .claims
        .push(Claim::upper("edge count within the cs edge bound", f1, ub1));
    let density = census.edge_density();
    report.claims.push(Claim::upper(
        "edge density within 1 - 2^{-d}",
        density,
        1.0 - 0.5f64.powi(d as i32),
    ));
    for j in 1..=(d as usize - 2) / 2 {
        if (j + 1) <= cfg.cap {
            let fj = census.f_vector[j + 1] as f64;
            let ub2 =
                ub2_bound(d, cfg.n as u64, j as u32).map_err(|e| CmdError::usage(e.to_string()))?;
            report.claims.push(Claim::upper(
                format!("f_{j} within the cs j-face bound"),
                fj,
                ub2,
            ));
        }
    }

    // committed hull oracle comparison, when available
    let dir = fixtures_dir(cfg.fixtures.as_deref());
    let fixture_match = match load_instance(Some(&dir), cfg.k, cfg.n) {
        Ok(fx) => {
            let expected = fx.faces_sized(1, cfg.cap);
            let got = census.face_sets_with_singletons();
            let ok = got == expected;
            report.claims.push(Claim {
                name: "exact match with hull fixture".into(),
                value: got.len() as f64,
                bound: expected.len() as f64,
                margin: 0.0,
                pass: ok,
            });
            Some(ok)
        }
        Err(_) => None,
    };

    report.summary.push(format!(
        "f-vector (f_-1..f_{}, through cap {}): {:?}",
        2 * cfg.k - 1,
        cfg.cap,
        census.f_vector
    ));
    report.summary.push(format!("edge density {:.6}", density));
    let h = if census.partial {
        None
    } else {
        // h-transform of the enumerated prefix is only meaningful on full
        // f-vectors; report it for the degenerate low-cap case as data
        f_to_h(&census.f_vector, 2 * cfg.k).ok()
    };

    report.results = json!({
        "f_vector": census.f_vector.iter().map(|&v| v as i64).collect::<Vec<_>>(),
        "edge_density": density,
        "partial": census.partial,
        "completed_sizes": census.completed_sizes,
        "centrally_symmetric": p.centrally_symmetric,
        "full_dimensional": p.is_full_dimensional(),
        "fixture_match": fixture_match,
        "h_prefix": h.map(|h| h.values.iter().map(|&v| v as i64).collect::<Vec<_>>()),
    });

    if let Some(csv) = &cfg.csv {
        let mut text = String::from("n,k,j,f_j,bound,ratio,status\n");
        for j in 1..2 * cfg.k {
            if j + 1 > cfg.cap {
                continue;
            }
            let fj = census.f_vector[j + 1];
            let bound = if j == 1 {
                ub1
            } else if j <= (d as usize - 2) / 2 {
                ub2_bound(d, cfg.n as u64, j as u32).unwrap_or(f64::NAN)
            } else {
                ubt_face_bound(d, cfg.n as u64, j)
                    .map(|v| v as f64)
                    .unwrap_or(f64::NAN)
            };
            let basis = binomial(cfg.n as u64, (j + 1) as u64) as f64;
            let status = if (fj as f64) <= bound { "pass" } else { "fail" };
            text += &format!(
                "{},{},{},{},{},{},{}\n",
                cfg.n,
                cfg.k,
                j,
                fj,
                bound,
                fj as f64 / basis,
                status
            );
        }
        std::fs::write(csv, text)
            .map_err(|e| CmdError::usage(format!("write {}: {e}", csv.display())))?;
    }
    if let Some(path) = &cfg.json {
        report.write_json(path)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// psi

#[derive(Clone, Debug)]
pub struct PsiConfig {
    pub k: usize,
    pub tol: f64,
    pub grid: Option<usize>,
    pub json: Option<PathBuf>,
}

pub fn cmd_psi(cfg: &PsiConfig) -> Result<Report, CmdError> {
    let grid = cfg.grid.unwrap_or(GRID_PER_K * cfg.k.max(1));
    let est = psi_estimate_with_grid(cfg.k, cfg.tol, grid).map_err(|e| match e {
        bicyclic::oracle::OracleError::BadInput(m) => CmdError::usage(m),
        other => CmdError::numerical(other.to_string()),
    })?;
    let mut report = Report::new("psi", json!({"k": cfg.k, "tol": cfg.tol, "grid": grid}));
    report.summary.push(format!(
        "edge threshold bracket: [{:.6}, {:.6}] (width {:.6})",
        est.lo,
        est.hi,
        est.hi - est.lo
    ));
    report.summary.push(format!(
        "proven lower bound (2k-2)π/(2k-1) = {:.6}",
        est.lower_bound
    ));
    report.summary.push(format!(
        "conjectured exact value {:.6} (conjecture, unproven)",
        est.conjectured
    ));
    report.claims.push(Claim::upper(
        "bracket width within tolerance",
        est.hi - est.lo,
        cfg.tol + 1e-12,
    ));
    report.claims.push(Claim::upper(
        "upper endpoint strictly below π",
        est.hi,
        PI - 1e-9,
    ));
    report.claims.push(Claim::lower(
        "certified endpoint reaches the proven lower bound minus tol",
        est.lo,
        est.lower_bound - cfg.tol,
    ));
    report.results = json!({
        "lo": est.lo,
        "hi": est.hi,
        "lower_bound": est.lower_bound,
        "conjectured_threshold": est.conjectured,
        "conjecture_label": "conjectured exact value (unproven)",
        "queries": est.queries,
        "warnings": est.warnings,
    });
    if !est.warnings.is_empty() {
        for w in &est.warnings {
            eprintln!("warning: {w}");
        }
    }
    if let Some(path) = &cfg.json {
        report.write_json(path)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// verify

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: String,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub trials: usize,
    pub arc: Option<f64>,
    pub seed: u64,
    pub fixtures: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

pub fn cmd_verify(cfg: &VerifyConfig) -> Result<Report, CmdError> {
    let dir = fixtures_dir(cfg.fixtures.as_deref());
    let suite: SuiteReport = match cfg.suite.as_str() {
        "smilansky" => run_smilansky(cfg.n.unwrap_or(12), Some(&dir)),
        "deformation" => {
            let ks = cfg.k.map(|k| vec![k]).unwrap_or_else(|| vec![2, 3, 4]);
            run_deformation(&ks, cfg.trials, cfg.seed)
        }
        "newton" => {
            let ks = cfg.k.map(|k| vec![k]).unwrap_or_else(|| vec![2, 3, 4]);
            run_newton(&ks, cfg.trials, cfg.seed)
        }
        "delta0" => {
            let ks = cfg.k.map(|k| vec![k]).unwrap_or_else(|| vec![2, 3, 4]);
            run_delta0(&ks)
        }
        "noflat" => run_noflat(cfg.k.unwrap_or(6), cfg.trials, cfg.seed),
        "b6" => run_b6_triples(
            cfg.n.unwrap_or(24),
            cfg.arc.unwrap_or((1.0f64 / 8.0).acos()),
            cfg.trials,
            cfg.seed,
            Some(&dir),
        ),
        "neighborly" => run_neighborly(
            cfg.k.unwrap_or(3),
            cfg.trials,
            cfg.arc.unwrap_or(0.1),
            cfg.seed,
        ),
        other => {
            return Err(CmdError::usage(format!(
                "unknown suite {other}; expected smilansky|deformation|newton|delta0|noflat|b6|neighborly"
            )))
        }
    };
    let mut report = Report::new(
        "verify",
        json!({
            "suite": cfg.suite, "k": cfg.k, "n": cfg.n,
            "trials": cfg.trials, "arc": cfg.arc, "seed": cfg.seed,
        }),
    );
    for check in &suite.checks {
        report.summary.push(format!(
            "[{}] {} — {}",
            if check.passed { "pass" } else { "FAIL" },
            check.label,
            check.detail
        ));
        report.claims.push(Claim {
            name: format!("{}: {}", suite.name, check.label),
            value: if check.passed { 1.0 } else { 0.0 },
            bound: 1.0,
            margin: 0.0,
            pass: check.passed,
        });
    }
    report.results = json!({
        "suite": suite.name,
        "checks": suite.checks.iter().map(|c| json!({
            "label": c.label, "passed": c.passed, "detail": c.detail,
        })).collect::<Vec<_>>(),
    });
    if let Some(path) = &cfg.json {
        report.write_json(path)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Clone, Debug)]
pub struct BoundsConfig {
    pub k: usize,
    pub j: usize,
    pub n_list: Vec<usize>,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

pub fn cmd_bounds(cfg: &BoundsConfig) -> Result<Report, CmdError> {
    let rows =
        sandwich_report(cfg.k, &cfg.n_list, cfg.j).map_err(|e| CmdError::usage(e.to_string()))?;
    let mut report = Report::new(
        "bounds",
        json!({"k": cfg.k, "j": cfg.j, "n_list": cfg.n_list}),
    );
    for row in &rows {
        if let Some(lower) = row.lower {
            report.claims.push(Claim::upper(
                format!("n={}: certified lower count within the upper bound", row.n),
                lower as f64,
                row.upper as f64,
            ));
        }
    }
    for r in &rows {
        report.summary.push(format!(
            "n={}: f_{} in [{}, {}] of basis {} (ratios {} .. {:.5})",
            r.n,
            r.j,
            r.lower.map(|v| v.to_string()).unwrap_or_else(|| "?".into()),
            r.upper,
            r.binom_basis,
            r.lower_ratio
                .map(|v| format!("{v:.5}"))
                .unwrap_or_else(|| "?".into()),
            r.upper_ratio,
        ));
    }
    report.results = json!({
        "rows": rows.iter().map(|r| json!({
            "n": r.n, "j": r.j,
            "lower": r.lower.map(|v| v as i64),
            "upper": r.upper as i64,
            "basis": r.binom_basis as i64,
            "lower_ratio": r.lower_ratio,
            "upper_ratio": r.upper_ratio,
        })).collect::<Vec<_>>(),
    });
    if let Some(csv) = &cfg.csv {
        let mut text = String::from("n,k,j,f_j,bound,ratio,status\n");
        for r in &rows {
            let (fj, ratio, status) = match (r.lower, r.lower_ratio) {
                (Some(l), Some(lr)) => (
                    l.to_string(),
                    lr.to_string(),
                    if l <= r.upper { "pass" } else { "fail" },
                ),
                _ => ("".into(), "".into(), "n/a"),
            };
            text += &format!(
                "{},{},{},{},{},{},{}\n",
                r.n, cfg.k, r.j, fj, r.upper, ratio, status
            );
        }
        std::fs::write(csv, text)
            .map_err(|e| CmdError::usage(format!("write {}: {e}", csv.display())))?;
    }
    if let Some(path) = &cfg.json {
        report.write_json(path)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// deform-demo

#[derive(Clone, Debug)]
pub struct DeformDemoConfig {
    pub k: usize,
    pub lambda: f64,
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

/// Deform the regular-simplex root configuration and emit the resulting
/// root walk as plot-ready two-column text (angle, modulus).
pub fn cmd_deform_demo(cfg: &DeformDemoConfig) -> Result<Report, CmdError> {
    if cfg.k < 2 {
        return Err(CmdError::usage("--k must be at least 2"));
    }
    if cfg.lambda == 0.0 {
        return Err(CmdError::usage("--lambda must be nonzero"));
    }
    let seed = simplex_seed_multiset(cfg.k);
    let deformed = deform(&seed, cfg.lambda).map_err(|e| CmdError::numerical(e.to_string()))?;
    let rebuilt = poly_from_multiset(&deformed).map_err(|e| CmdError::numerical(e.to_string()))?;
    let sums = power_sum_check(&deformed, cfg.k).map_err(|e| CmdError::numerical(e.to_string()))?;
    let worst_sum = sums.iter().map(|s| s.norm()).fold(0.0f64, f64::max);

    let mut report = Report::new("deform-demo", json!({"k": cfg.k, "lambda": cfg.lambda}));
    report.claims.push(Claim::upper(
        "deformed multiset keeps the odd power sums at zero",
        worst_sum,
        1e-8,
    ));
    report.claims.push(Claim::upper(
        "rebuilt polynomial is raked",
        rebuilt.raked_residual(),
        1e-8,
    ));
    report.claims.push(Claim::upper(
        "rebuilt polynomial is real",
        rebuilt.imag_residual(),
        1e-8,
    ));
    report.summary.push(format!(
        "deformed {} root pairs; worst odd power sum {:.3e}",
        seed.total_multiplicity() / 2,
        worst_sum
    ));
    let roots: Vec<(f64, f64)> = deformed
        .entries()
        .iter()
        .flat_map(|&(z, mult)| std::iter::repeat_n((z.arg(), z.norm()), mult))
        .collect();
    report.results = json!({
        "roots": roots.iter().map(|r| json!([r.0, r.1])).collect::<Vec<_>>(),
        "worst_odd_power_sum": worst_sum,
        "raked_residual": rebuilt.raked_residual(),
        "imag_residual": rebuilt.imag_residual(),
    });
    if let Some(out) = &cfg.out {
        let mut text = String::from("# angle modulus\n");
        for (ang, r) in &roots {
            text += &format!("{ang:.12} {r:.12}\n");
        }
        std::fs::write(out, text)
            .map_err(|e| CmdError::usage(format!("write {}: {e}", out.display())))?;
    }
    if let Some(path) = &cfg.json {
        report.write_json(path)?;
    }
    Ok(report)
}
