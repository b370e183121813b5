//! A dense two-phase tableau simplex for the small LPs used by the face
//! oracles: at most a couple hundred structural variables and a few
//! thousand rows.
//!
//! Variables may be free or box-bounded; rows are equalities or one-sided
//! inequalities. Free variables are split into differences of nonnegative
//! parts. Greater-equal rows with zero right-hand side are flipped into
//! less-equal rows so that certificate cone problems start from the
//! all-slack basis without artificials. Entering columns follow Dantzig's
//! rule and switch to Bland's rule after [`BLAND_AFTER`] pivots, which
//! guards against cycling on the heavily degenerate cone starts.

use thiserror::Error;

/// Reduced costs and pivot entries below this are treated as zero.
pub const PIVOT_TOL: f64 = 1e-10;
/// Switch from Dantzig to Bland's anti-cycling rule after this many pivots.
pub const BLAND_AFTER: usize = 5000;
/// Hard pivot budget; exceeding it is reported as a numerical stall.
pub const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Malformed(String),
    #[error("simplex stalled after {pivots} pivots")]
    Stalled { pivots: usize },
    #[error("optimal basis failed the feasibility residual check ({residual:.3e})")]
    ResidualCheck { residual: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// Maximization program over variables with optional bounds.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    /// maximize `objective · x`
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    /// per-variable lower bounds (`None` = unbounded below)
    pub lower: Vec<Option<f64>>,
    /// per-variable upper bounds (`None` = unbounded above)
    pub upper: Vec<Option<f64>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
            lower: vec![None; num_vars],
            upper: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        debug_assert_eq!(coeffs.len(), self.num_vars());
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
    }
}

#[derive(Clone, Debug)]
pub enum LpSolution {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn optimal(&self) -> Option<(&[f64], f64)> {
        match self {
            LpSolution::Optimal { x, objective } => Some((x, *objective)),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, LpSolution::Optimal { .. })
    }
}

/// How an original variable maps into the standardized column space.
#[derive(Clone, Copy)]
enum VarMap {
    /// x = lo + y[col]
    Shifted { col: usize, lo: f64 },
    /// x = up - y[col]
    Reflected { col: usize, up: f64 },
    /// x = y[pos] - y[neg]
    Split { pos: usize, neg: usize },
}

struct Standardized {
    /// rows in `a · y (rel) rhs` form with rhs >= 0 and rel in {Le, Ge, Eq}
    rows: Vec<Row>,
    var_map: Vec<VarMap>,
    num_cols: usize,
    objective: Vec<f64>,
    obj_shift: f64,
}

fn standardize(lp: &LinearProgram) -> Result<Standardized, LpError> {
    let n = lp.num_vars();
    if lp.lower.len() != n || lp.upper.len() != n {
        return Err(LpError::Malformed("bounds length mismatch".into()));
    }
    for row in &lp.rows {
        if row.coeffs.len() != n {
            return Err(LpError::Malformed("row length mismatch".into()));
        }
        if !row.rhs.is_finite() || row.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(LpError::Malformed("non-finite entry".into()));
        }
    }

    let mut var_map = Vec::with_capacity(n);
    let mut num_cols = 0;
    let mut extra_rows: Vec<Row> = Vec::new();
    for j in 0..n {
        match (lp.lower[j], lp.upper[j]) {
            (Some(lo), Some(up)) => {
                if up < lo {
                    return Err(LpError::Malformed(format!("empty bound box on var {j}")));
                }
                var_map.push(VarMap::Shifted { col: num_cols, lo });
                let mut coeffs = vec![0.0; n];
                coeffs[j] = 1.0;
                extra_rows.push(Row {
                    coeffs,
                    relation: Relation::Le,
                    rhs: up,
                });
                num_cols += 1;
            }
            (Some(lo), None) => {
                var_map.push(VarMap::Shifted { col: num_cols, lo });
                num_cols += 1;
            }
            (None, Some(up)) => {
                var_map.push(VarMap::Reflected { col: num_cols, up });
                num_cols += 1;
            }
            (None, None) => {
                var_map.push(VarMap::Split {
                    pos: num_cols,
                    neg: num_cols + 1,
                });
                num_cols += 2;
            }
        }
    }

    let transform_row = |row: &Row| -> Row {
        let mut coeffs = vec![0.0; num_cols];
        let mut rhs = row.rhs;
        for (&c, vm) in row.coeffs.iter().zip(&var_map) {
            if c == 0.0 {
                continue;
            }
            match *vm {
                VarMap::Shifted { col, lo } => {
                    coeffs[col] += c;
                    rhs -= c * lo;
                }
                VarMap::Reflected { col, up } => {
                    coeffs[col] -= c;
                    rhs -= c * up;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[pos] += c;
                    coeffs[neg] -= c;
                }
            }
        }
        Row {
            coeffs,
            relation: row.relation,
            rhs,
        }
    };

    let mut rows: Vec<Row> = lp
        .rows
        .iter()
        .chain(extra_rows.iter())
        .map(transform_row)
        .collect();

    // normalize row scale, then flip signs so rhs >= 0
    for row in rows.iter_mut() {
        let scale = row.coeffs.iter().fold(row.rhs.abs(), |m, c| m.max(c.abs()));
        if scale > 0.0 {
            for c in row.coeffs.iter_mut() {
                *c /= scale;
            }
            row.rhs /= scale;
        }
        if row.rhs < 0.0 {
            for c in row.coeffs.iter_mut() {
                *c = -*c;
            }
            row.rhs = -row.rhs;
            row.relation = match row.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        // a >= row with zero rhs is the same as <= with negated coefficients,
        // which admits a slack basis directly
        if row.relation == Relation::Ge && row.rhs == 0.0 {
            for c in row.coeffs.iter_mut() {
                *c = -*c;
            }
            row.relation = Relation::Le;
        }
    }

    let mut objective = vec![0.0; num_cols];
    let mut obj_shift = 0.0;
    for (&c, vm) in lp.objective.iter().zip(&var_map) {
        if c == 0.0 {
            continue;
        }
        match *vm {
            VarMap::Shifted { col, lo } => {
                objective[col] += c;
                obj_shift += c * lo;
            }
            VarMap::Reflected { col, up } => {
                objective[col] -= c;
                obj_shift += c * up;
            }
            VarMap::Split { pos, neg } => {
                objective[pos] += c;
                objective[neg] -= c;
            }
        }
    }

    Ok(Standardized {
        rows,
        var_map,
        num_cols,
        objective,
        obj_shift,
    })
}

struct Tableau {
    /// (m + 1) rows by (total + 1) columns, cost row last, rhs column last
    data: Vec<f64>,
    m: usize,
    total: usize,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * (self.total + 1) + c]
    }

    #[inline]
    fn at_mut(&mut self, r: usize, c: usize) -> &mut f64 {
        &mut self.data[r * (self.total + 1) + c]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.total + 1;
        let pv = self.at(row, col);
        let start = row * width;
        for c in 0..width {
            self.data[start + c] /= pv;
        }
        for r in 0..=self.m {
            if r == row {
                continue;
            }
            let factor = self.at(r, col);
            if factor.abs() <= 1e-300 {
                continue;
            }
            let (prow, rrow) = if r < row {
                let (lo, hi) = self.data.split_at_mut(start);
                (&hi[..width], &mut lo[r * width..r * width + width])
            } else {
                let (lo, hi) = self.data.split_at_mut(r * width);
                (&lo[start..start + width], &mut hi[..width])
            };
            for c in 0..width {
                rrow[c] -= factor * prow[c];
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Runs simplex iterations on the current cost row. `allowed` bounds the
    /// entering columns (artificials are excluded in phase 2).
    fn iterate(&mut self, allowed: usize) -> Result<bool, LpError> {
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(LpError::Stalled {
                    pivots: self.pivots,
                });
            }
            let bland = self.pivots > BLAND_AFTER;
            // entering column: cost row stores negated reduced costs for
            // maximization, so we look for entries above tolerance
            let mut enter: Option<usize> = None;
            let mut best = PIVOT_TOL;
            for c in 0..allowed {
                let rc = self.at(self.m, c);
                if rc > PIVOT_TOL {
                    if bland {
                        enter = Some(c);
                        break;
                    }
                    if rc > best {
                        best = rc;
                        enter = Some(c);
                    }
                }
            }
            let Some(col) = enter else {
                return Ok(true); // optimal
            };
            // ratio test
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            let mut best_pivot = 0.0;
            for r in 0..self.m {
                let a = self.at(r, col);
                if a > PIVOT_TOL {
                    let ratio = self.at(r, self.total) / a;
                    let better = if bland {
                        ratio < best_ratio - 1e-12
                            || (ratio < best_ratio + 1e-12
                                && leave.map(|l| self.basis[r] < self.basis[l]).unwrap_or(true))
                    } else {
                        ratio < best_ratio - 1e-12 || (ratio < best_ratio + 1e-12 && a > best_pivot)
                    };
                    if better {
                        best_ratio = ratio;
                        best_pivot = a;
                        leave = Some(r);
                    }
                }
            }
            let Some(row) = leave else {
                return Ok(false); // unbounded direction
            };
            self.pivot(row, col);
        }
    }
}

/// Solve the program; `Optimal` carries the maximizer and objective value.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let std_form = standardize(lp)?;
    let m = std_form.rows.len();
    let n = std_form.num_cols;

    // column layout: structural | slack/surplus | artificial | rhs
    let num_slack = std_form
        .rows
        .iter()
        .filter(|r| r.relation != Relation::Eq)
        .count();
    let num_art = std_form
        .rows
        .iter()
        .filter(|r| r.relation != Relation::Le)
        .count();
    let total = n + num_slack + num_art;
    let mut t = Tableau {
        data: vec![0.0; (m + 1) * (total + 1)],
        m,
        total,
        basis: vec![usize::MAX; m],
        pivots: 0,
    };

    let mut slack_at = n;
    let mut art_at = n + num_slack;
    let mut art_cols = Vec::with_capacity(num_art);
    for (r, row) in std_form.rows.iter().enumerate() {
        for (c, &v) in row.coeffs.iter().enumerate() {
            *t.at_mut(r, c) = v;
        }
        *t.at_mut(r, total) = row.rhs;
        match row.relation {
            Relation::Le => {
                *t.at_mut(r, slack_at) = 1.0;
                t.basis[r] = slack_at;
                slack_at += 1;
            }
            Relation::Ge => {
                *t.at_mut(r, slack_at) = -1.0;
                slack_at += 1;
                *t.at_mut(r, art_at) = 1.0;
                t.basis[r] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
            Relation::Eq => {
                *t.at_mut(r, art_at) = 1.0;
                t.basis[r] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
        }
    }

    let art_start = n + num_slack;
    if num_art > 0 {
        // phase 1: maximize -Σ artificials; cost row = Σ of artificial rows
        for r in 0..m {
            if t.basis[r] >= art_start {
                for c in 0..=total {
                    let v = t.at(r, c);
                    *t.at_mut(m, c) += v;
                }
            }
        }
        for &c in &art_cols {
            *t.at_mut(m, c) = 0.0;
        }
        let optimal = t.iterate(total)?;
        debug_assert!(optimal, "phase 1 is bounded by construction");
        let infeasibility = t.at(m, total);
        if infeasibility > 1e-7 {
            return Ok(LpSolution::Infeasible);
        }
        // drive leftover artificials out of the basis where possible
        for r in 0..m {
            if t.basis[r] >= art_start && t.at(r, total).abs() <= 1e-9 {
                if let Some(c) = (0..art_start).find(|&c| t.at(r, c).abs() > 1e-8) {
                    t.pivot(r, c);
                }
            }
        }
    }

    // phase 2 cost row: store c (negated reduced costs convention)
    for c in 0..=total {
        *t.at_mut(m, c) = 0.0;
    }
    for (c, &v) in std_form.objective.iter().enumerate() {
        *t.at_mut(m, c) = v;
    }
    // canonicalize against the current basis
    for r in 0..m {
        let b = t.basis[r];
        if b < total {
            let factor = t.at(m, b);
            if factor.abs() > 1e-300 {
                for c in 0..=total {
                    let v = t.at(r, c);
                    *t.at_mut(m, c) -= factor * v;
                }
            }
        }
    }
    let optimal = t.iterate(art_start)?;
    if !optimal {
        return Ok(LpSolution::Unbounded);
    }
    // rows still basic in an artificial carry value ~0; treat them as zero

    let mut y = vec![0.0; total];
    for r in 0..m {
        if t.basis[r] < total {
            y[t.basis[r]] = t.at(r, total);
        }
    }
    let x: Vec<f64> = std_form
        .var_map
        .iter()
        .map(|vm| match *vm {
            VarMap::Shifted { col, lo } => lo + y[col],
            VarMap::Reflected { col, up } => up - y[col],
            VarMap::Split { pos, neg } => y[pos] - y[neg],
        })
        .collect();

    // certify primal feasibility against the original rows
    let mut worst = 0.0f64;
    for row in &lp.rows {
        let lhs: f64 = row.coeffs.iter().zip(&x).map(|(c, v)| c * v).sum();
        let scale = row
            .coeffs
            .iter()
            .fold(1.0f64.max(row.rhs.abs()), |m, c| m.max(c.abs()));
        let viol = match row.relation {
            Relation::Eq => (lhs - row.rhs).abs(),
            Relation::Ge => (row.rhs - lhs).max(0.0),
            Relation::Le => (lhs - row.rhs).max(0.0),
        };
        worst = worst.max(viol / scale);
    }
    for (j, &v) in x.iter().enumerate() {
        if let Some(lo) = lp.lower[j] {
            worst = worst.max((lo - v).max(0.0) / 1.0f64.max(lo.abs()));
        }
        if let Some(up) = lp.upper[j] {
            worst = worst.max((v - up).max(0.0) / 1.0f64.max(up.abs()));
        }
    }
    if worst > 1e-9 {
        return Err(LpError::ResidualCheck { residual: worst });
    }

    let objective: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let _ = std_form.obj_shift;
    Ok(LpSolution::Optimal { x, objective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_x_with_upper_row() {
        // max x s.t. x <= 1
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.push(vec![1.0], Relation::Le, 1.0);
        let sol = lp_solve(&lp).unwrap();
        let (x, obj) = sol.optimal().unwrap();
        assert!((x[0] - 1.0).abs() < 1e-9);
        assert!((obj - 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_pair_of_rows() {
        // max x s.t. x <= 1, x >= 2
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.push(vec![1.0], Relation::Le, 1.0);
        lp.push(vec![1.0], Relation::Ge, 2.0);
        assert!(matches!(lp_solve(&lp).unwrap(), LpSolution::Infeasible));
    }

    #[test]
    fn unbounded_ray() {
        // max x s.t. x >= 0
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.push(vec![1.0], Relation::Ge, 0.0);
        assert!(matches!(lp_solve(&lp).unwrap(), LpSolution::Unbounded));
    }

    #[test]
    fn bounded_box_and_equality() {
        // max x + y s.t. x + y <= 1.5, x = 2y, 0 <= x,y <= 1
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.lower = vec![Some(0.0), Some(0.0)];
        lp.upper = vec![Some(1.0), Some(1.0)];
        lp.push(vec![1.0, 1.0], Relation::Le, 1.5);
        lp.push(vec![1.0, -2.0], Relation::Eq, 0.0);
        let sol = lp_solve(&lp).unwrap();
        let (x, obj) = sol.optimal().unwrap();
        assert!((x[0] - 1.0).abs() < 1e-8);
        assert!((x[1] - 0.5).abs() < 1e-8);
        assert!((obj - 1.5).abs() < 1e-8);
    }

    #[test]
    fn upper_bounded_only_variable() {
        // max x s.t. x <= 5 with no lower bound
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.upper = vec![Some(5.0)];
        let sol = lp_solve(&lp).unwrap();
        let (x, obj) = sol.optimal().unwrap();
        assert!((x[0] - 5.0).abs() < 1e-9);
        assert!((obj - 5.0).abs() < 1e-9);
    }

    #[test]
    fn free_variables_go_negative() {
        // max -x s.t. x >= -3  (free variable)
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![-1.0];
        lp.push(vec![1.0], Relation::Ge, -3.0);
        let sol = lp_solve(&lp).unwrap();
        let (x, obj) = sol.optimal().unwrap();
        assert!((x[0] + 3.0).abs() < 1e-8);
        assert!((obj - 3.0).abs() < 1e-8);
    }

    #[test]
    fn degenerate_cone_start() {
        // max x1 + x2 s.t. xi >= 0 (as cone rows), xi <= 1; free variables
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.push(vec![1.0, 0.0], Relation::Ge, 0.0);
        lp.push(vec![0.0, 1.0], Relation::Ge, 0.0);
        lp.push(vec![1.0, 0.0], Relation::Le, 1.0);
        lp.push(vec![0.0, 1.0], Relation::Le, 1.0);
        let sol = lp_solve(&lp).unwrap();
        let (x, obj) = sol.optimal().unwrap();
        assert!((x[0] - 1.0).abs() < 1e-8 && (x[1] - 1.0).abs() < 1e-8);
        assert!((obj - 2.0).abs() < 1e-8);
    }

    #[test]
    fn classic_two_phase() {
        // min 2x + 3y s.t. x + y >= 4, x - y <= 2, x,y >= 0
        // optimum at (4, 0)? check: minimize => maximize -(2x+3y);
        // x+y>=4, x-y<=2 -> best is x=3,y=1: cost 9 vs x=4,y=0 violates x-y<=2.
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![-2.0, -3.0];
        lp.lower = vec![Some(0.0), Some(0.0)];
        lp.push(vec![1.0, 1.0], Relation::Ge, 4.0);
        lp.push(vec![1.0, -1.0], Relation::Le, 2.0);
        let sol = lp_solve(&lp).unwrap();
        let (x, obj) = sol.optimal().unwrap();
        assert!((x[0] - 3.0).abs() < 1e-8, "{x:?}");
        assert!((x[1] - 1.0).abs() < 1e-8);
        assert!((obj + 9.0).abs() < 1e-8);
    }

    #[test]
    fn random_feasibility_residuals() {
        let mut state = 0xabcdef0123456789u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as f64 / u64::MAX as f64 * 2.0 - 1.0
        };
        for _ in 0..50 {
            let n = 4;
            let mut lp = LinearProgram::new(n);
            for j in 0..n {
                lp.objective[j] = next();
                lp.lower[j] = Some(-1.0);
                lp.upper[j] = Some(1.0);
            }
            for _ in 0..12 {
                let coeffs: Vec<f64> = (0..n).map(|_| next()).collect();
                lp.push(coeffs, Relation::Le, next().abs() + 0.1);
            }
            match lp_solve(&lp).unwrap() {
                LpSolution::Optimal { x, .. } => {
                    assert!(x.iter().all(|v| (-1.0 - 1e-9..=1.0 + 1e-9).contains(v)));
                }
                other => panic!("box-bounded program must be solvable: {other:?}"),
            }
        }
    }
}
