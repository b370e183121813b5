//! Polytope construction, face enumeration, f- and h-vectors, and the
//! closed-form face-number bounds.
//!
//! Enumeration walks subset sizes 2..cap breadth-first. A subset can only be
//! the vertex set of a face if every sub-pair (and sub-triple, for larger
//! sizes) is contained in some common proper face, so those feasibility
//! bits are computed once and used to prune. Every surviving subset gets an
//! exact LP decision. The census is keyed by full vertex sets: non-simplicial
//! faces are caught by their complete vertex list, never assembled from
//! simplices.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::circle::{arc_distance, AnglePoint, ANGLE_DEDUP_TOL};
use crate::curve::{sm_eval, CurvePoint};
use crate::oracle::{affine_rank, common_face_feasible, is_face, FaceCertificate, OracleError};

/// Subsets examined per size before the census is marked partial.
pub const SUBSET_BUDGET: usize = 2_000_000;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

// ---------------------------------------------------------------------------
// polytope construction

/// A bicyclic polytope: the convex hull of curve points over a finite angle
/// set, with the source angles retained.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub k: usize,
    vertices: Vec<CurvePoint>,
    pub centrally_symmetric: bool,
    /// affine rank of the vertex set; equals `2k` when full-dimensional
    pub affine_dimension: usize,
    /// input points that failed the singleton face check (normally empty)
    pub non_vertex_exceptions: Vec<usize>,
}

impl Polytope {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[CurvePoint] {
        &self.vertices
    }

    pub fn angles(&self) -> Vec<AnglePoint> {
        self.vertices.iter().map(|v| v.source_angle).collect()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension == 2 * self.k
    }

    /// Index of the vertex whose angle is antipodal to vertex `i`, if the
    /// angle set contains it.
    pub fn antipodal_index(&self, i: usize) -> Option<usize> {
        let target = self.vertices[i].source_angle.antipode();
        self.vertices
            .iter()
            .position(|v| arc_distance(v.source_angle, target) < ANGLE_DEDUP_TOL)
    }
}

/// Build `conv(SM_2k(X))`, verify every input point is a vertex via the
/// singleton face LP, and record exceptions.
pub fn build(k: usize, angles: &[AnglePoint]) -> Result<Polytope, CensusError> {
    if k == 0 {
        return Err(CensusError::BadInput("k must be positive".into()));
    }
    if angles.len() < 2 {
        return Err(CensusError::BadInput("need at least two points".into()));
    }
    for (i, &a) in angles.iter().enumerate() {
        for &b in &angles[i + 1..] {
            if arc_distance(a, b) < ANGLE_DEDUP_TOL {
                return Err(CensusError::BadInput(format!(
                    "duplicate angles {} and {}",
                    a.radians(),
                    b.radians()
                )));
            }
        }
    }
    let vertices: Vec<CurvePoint> = angles
        .iter()
        .map(|&t| sm_eval(k, t).expect("k validated"))
        .collect();
    let centrally_symmetric = angles.iter().all(|&t| {
        let a = t.antipode();
        angles.iter().any(|&s| arc_distance(s, a) < ANGLE_DEDUP_TOL)
    });
    let coords: Vec<Vec<f64>> = vertices.iter().map(|v| v.coords.clone()).collect();
    let affine_dimension = affine_rank(&coords);
    let mut poly = Polytope {
        k,
        vertices,
        centrally_symmetric,
        affine_dimension,
        non_vertex_exceptions: Vec::new(),
    };
    let singleton_checks: Vec<Result<bool, OracleError>> = (0..poly.len())
        .into_par_iter()
        .map(|i| Ok(is_face(&poly, &[i])?.is_face()))
        .collect();
    let mut exceptions = Vec::new();
    for (i, check) in singleton_checks.into_iter().enumerate() {
        if !check? {
            exceptions.push(i);
        }
    }
    poly.non_vertex_exceptions = exceptions;
    Ok(poly)
}

// ---------------------------------------------------------------------------
// face census

type PairScan = (Vec<usize>, Option<FaceRecord>, bool);

#[derive(Clone, Debug)]
pub struct FaceRecord {
    pub vertex_set: Vec<usize>,
    pub dimension: usize,
    pub certificate: FaceCertificate,
}

#[derive(Clone, Debug)]
pub struct FaceCensus {
    pub k: usize,
    pub n: usize,
    pub max_vertex_cap: usize,
    /// faces with 2..=cap vertices, keyed (and sorted) by vertex set
    pub faces: Vec<FaceRecord>,
    /// `f_{-1}, f_0, ..., f_{2k-1}`: counts of faces by dimension among the
    /// enumerated sizes
    pub f_vector: Vec<i128>,
    /// subset sizes fully enumerated (pruning is exact, so a size being
    /// listed means every face with that many vertices was found)
    pub completed_sizes: Vec<usize>,
    /// true when the subset budget stopped enumeration before `cap`
    pub partial: bool,
}

impl FaceCensus {
    pub fn edge_count(&self) -> i128 {
        self.f_vector[2]
    }

    /// `f_1 / C(n, 2)`.
    pub fn edge_density(&self) -> f64 {
        let pairs = binomial(self.n as u64, 2) as f64;
        self.f_vector[2] as f64 / pairs
    }

    pub fn faces_of_dimension(&self, d: usize) -> impl Iterator<Item = &FaceRecord> {
        self.faces.iter().filter(move |f| f.dimension == d)
    }

    /// Vertex sets of all enumerated faces (for fixture comparison),
    /// including singletons for certified vertices.
    pub fn face_sets_with_singletons(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.n).map(|i| vec![i]).collect();
        out.extend(self.faces.iter().map(|f| f.vertex_set.clone()));
        out.sort();
        out
    }
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    loop {
        out.push(cur.clone());
        // advance the combination
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn over_budget(n: usize, size: usize, budget: usize) -> bool {
    binomial(n as u64, size as u64) > budget as i128
}

/// Enumerate every face whose vertex count is at most `max_vertex_cap`.
pub fn enumerate_faces(p: &Polytope, max_vertex_cap: usize) -> Result<FaceCensus, CensusError> {
    enumerate_faces_with_budget(p, max_vertex_cap, SUBSET_BUDGET)
}

/// [`enumerate_faces`] with an explicit per-size subset budget; sizes whose
/// subset count exceeds it are skipped and the census is marked partial.
pub fn enumerate_faces_with_budget(
    p: &Polytope,
    max_vertex_cap: usize,
    budget: usize,
) -> Result<FaceCensus, CensusError> {
    if max_vertex_cap < 2 {
        return Err(CensusError::BadInput("cap must be at least 2".into()));
    }
    if over_budget(p.len(), 2, budget) {
        return Err(CensusError::BadInput(
            "even the pair layer exceeds the subset budget".into(),
        ));
    }
    let n = p.len();
    let mut faces: Vec<FaceRecord> = Vec::new();
    let mut completed_sizes = Vec::new();
    let mut partial = false;

    // pair layer: exact decisions plus the pruning bitmap
    let mut pair_cf = vec![vec![false; n]; n];
    {
        let pairs = subsets_of_size(n, 2);
        let results: Vec<Result<PairScan, OracleError>> = pairs
            .par_iter()
            .map(|s| match is_face(p, s)? {
                crate::oracle::IsFaceOutcome::Face(cert) => Ok((
                    s.clone(),
                    Some(FaceRecord {
                        vertex_set: s.clone(),
                        dimension: cert.dimension,
                        certificate: cert,
                    }),
                    true,
                )),
                crate::oracle::IsFaceOutcome::NotAFace => {
                    let cf = common_face_feasible(p, s)?;
                    Ok((s.clone(), None, cf))
                }
            })
            .collect();
        for res in results {
            let (s, rec, cf) = res?;
            pair_cf[s[0]][s[1]] = cf;
            pair_cf[s[1]][s[0]] = cf;
            if let Some(rec) = rec {
                faces.push(rec);
            }
        }
        completed_sizes.push(2);
    }

    // triple feasibility memo, filled lazily at size 4 and above
    let mut triple_cf: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut triple_faces: HashMap<Vec<usize>, bool> = HashMap::new();

    for size in 3..=max_vertex_cap.min(n.saturating_sub(1)) {
        if over_budget(n, size, budget) {
            partial = true;
            break;
        }
        let candidates: Vec<Vec<usize>> = subsets_of_size(n, size)
            .into_iter()
            .filter(|s| {
                for i in 0..s.len() {
                    for j in i + 1..s.len() {
                        if !pair_cf[s[i]][s[j]] {
                            return false;
                        }
                    }
                }
                true
            })
            .filter(|s| {
                if size < 4 {
                    return true;
                }
                // sub-triples must admit a common face as well
                let mut idx = vec![0; 3];
                sub_triples(s, &mut idx, |t| *triple_cf.get(t).unwrap_or(&true))
            })
            .collect();
        let results: Vec<(Vec<usize>, Option<FaceRecord>)> = candidates
            .par_iter()
            .map(|s| {
                Ok(match is_face(p, s)? {
                    crate::oracle::IsFaceOutcome::Face(cert) => (
                        s.clone(),
                        Some(FaceRecord {
                            vertex_set: s.clone(),
                            dimension: cert.dimension,
                            certificate: cert,
                        }),
                    ),
                    crate::oracle::IsFaceOutcome::NotAFace => (s.clone(), None),
                })
            })
            .collect::<Result<_, OracleError>>()?;
        if size == 3 && max_vertex_cap >= 4 {
            // feasibility of non-face triples feeds the next layer's pruning
            let missing: Vec<Vec<usize>> = results
                .iter()
                .filter(|(_, rec)| rec.is_none())
                .map(|(s, _)| s.clone())
                .collect();
            let cf_results: Vec<(Vec<usize>, bool)> = missing
                .par_iter()
                .map(|s| Ok((s.clone(), common_face_feasible(p, s)?)))
                .collect::<Result<_, OracleError>>()?;
            for (s, cf) in cf_results {
                triple_cf.insert(s, cf);
            }
        }
        for (s, rec) in results {
            if let Some(rec) = rec {
                if size == 3 {
                    triple_faces.insert(s.clone(), true);
                }
                faces.push(rec);
            }
        }
        completed_sizes.push(size);
    }

    faces.sort_by(|a, b| a.vertex_set.cmp(&b.vertex_set));

    let mut f_vector = vec![0i128; 2 * p.k + 1];
    f_vector[0] = 1; // the empty face
    f_vector[1] = (n - p.non_vertex_exceptions.len()) as i128;
    for rec in &faces {
        if rec.dimension + 1 < f_vector.len() {
            f_vector[rec.dimension + 1] += 1;
        }
    }

    // the closed-form ceilings hold for every centrally symmetric polytope;
    // a violation would mean an unsound certificate slipped through
    if p.centrally_symmetric && p.is_full_dimensional() {
        let d = (2 * p.k) as u32;
        let ub1 = ub1_bound(d, n as u64).expect("validated dims");
        assert!(
            f_vector[2] as f64 <= ub1,
            "edge count {} violates the cs bound {ub1}",
            f_vector[2]
        );
        for j in 2..=(2 * p.k).saturating_sub(2) / 2 {
            if j < max_vertex_cap {
                let ub2 = ub2_bound(d, n as u64, j as u32).expect("validated range");
                assert!(
                    (f_vector[j + 1] as f64) <= ub2,
                    "f_{j} = {} violates the cs bound {ub2}",
                    f_vector[j + 1]
                );
            }
        }
    }

    Ok(FaceCensus {
        k: p.k,
        n,
        max_vertex_cap,
        faces,
        f_vector,
        completed_sizes,
        partial,
    })
}

fn sub_triples<F: FnMut(&Vec<usize>) -> bool>(s: &[usize], _idx: &mut [usize], mut ok: F) -> bool {
    let n = s.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !ok(&vec![s[a], s[b], s[c]]) {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// bound formulas

/// Exact binomial coefficient in integer arithmetic.
pub fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: i128 = 1;
    for i in 0..k {
        num = num * (n - i) as i128 / (i + 1) as i128;
    }
    num
}

/// Edge bound for centrally symmetric d-polytopes: `n²/2 (1 - 2^{-d})`.
pub fn ub1_bound(d: u32, n: u64) -> Result<f64, CensusError> {
    if d < 2 || !d.is_multiple_of(2) || n < 2 {
        return Err(CensusError::BadInput(format!("d={d}, n={n}")));
    }
    Ok((n as f64).powi(2) / 2.0 * (1.0 - 0.5f64.powi(d as i32)))
}

/// j-face bound for centrally symmetric d-polytopes:
/// `n/(n-1) (1 - 2^{-d}) C(n, j+1)`, valid for `1 <= j <= (d-2)/2`.
pub fn ub2_bound(d: u32, n: u64, j: u32) -> Result<f64, CensusError> {
    if d < 2 || !d.is_multiple_of(2) || n < 2 {
        return Err(CensusError::BadInput(format!("d={d}, n={n}")));
    }
    if j < 1 || j > (d - 2) / 2 {
        return Err(CensusError::BadInput(format!(
            "j={j} outside 1..={}",
            (d - 2) / 2
        )));
    }
    Ok(n as f64 / (n as f64 - 1.0)
        * (1.0 - 0.5f64.powi(d as i32))
        * binomial(n, (j + 1) as u64) as f64)
}

/// The h-number ceiling `h_j <= C(n - d + j - 1, j)` for simplicial
/// d-polytopes with n vertices, `0 <= j <= d/2`.
pub fn ubt_hbound(d: u32, n: u64, j: u32) -> Result<i128, CensusError> {
    if d < 2 || !d.is_multiple_of(2) || j > d / 2 {
        return Err(CensusError::BadInput(format!("d={d}, j={j}")));
    }
    if n < d as u64 + 1 {
        return Err(CensusError::BadInput(format!("n={n} below d+1")));
    }
    Ok(binomial(n - d as u64 + j as u64 - 1, j as u64))
}

// ---------------------------------------------------------------------------
// f- and h-vectors

/// h-vector of a polytope boundary, exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub values: Vec<i128>,
}

impl HVector {
    pub fn is_symmetric(&self) -> bool {
        let v = &self.values;
        (0..v.len()).all(|i| v[i] == v[v.len() - 1 - i])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&h| h >= 0)
    }
}

/// f -> h via the binomial transform. `f` lists `f_{-1}=1, f_0, ..., f_{d-1}`.
pub fn f_to_h(f: &[i128], d: usize) -> Result<HVector, CensusError> {
    if f.len() != d + 1 {
        return Err(CensusError::BadInput(format!(
            "f-vector length {} != d+1 = {}",
            f.len(),
            d + 1
        )));
    }
    let mut values = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut h = 0i128;
        for (s, &fs) in f.iter().enumerate().take(i + 1) {
            let sign = if (i - s) % 2 == 0 { 1 } else { -1 };
            h += sign * binomial((d - s) as u64, (i - s) as u64) * fs;
        }
        values.push(h);
    }
    Ok(HVector { values })
}

/// h -> f, the exact inverse: `f_{j-1} = Σ_i C(d-i, d-j) h_i`.
pub fn h_to_f(h: &HVector, d: usize) -> Result<Vec<i128>, CensusError> {
    if h.values.len() != d + 1 {
        return Err(CensusError::BadInput(format!(
            "h-vector length {} != d+1 = {}",
            h.values.len(),
            d + 1
        )));
    }
    let mut f = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut v = 0i128;
        for i in 0..=j {
            v += binomial((d - i) as u64, (d - j) as u64) * h.values[i];
        }
        f.push(v);
    }
    Ok(f)
}

/// The exact f-vector ceiling from the simplicial upper bound: h-numbers
/// maximal (`h_i = C(n-d+i-1, i)` up to the middle, symmetric beyond) fed
/// through the h -> f transform.
pub fn ubt_face_bound(d: u32, n: u64, j: usize) -> Result<i128, CensusError> {
    if !d.is_multiple_of(2) || j >= d as usize {
        return Err(CensusError::BadInput(format!("d={d}, j={j}")));
    }
    let k = (d / 2) as usize;
    let mut h = vec![0i128; d as usize + 1];
    for (i, slot) in h.iter_mut().enumerate().take(k + 1) {
        *slot = ubt_hbound(d, n, i as u32)?;
    }
    for i in k + 1..=d as usize {
        h[i] = h[d as usize - i];
    }
    let f = h_to_f(&HVector { values: h }, d as usize)?;
    Ok(f[j + 1])
}

// ---------------------------------------------------------------------------
// sandwich tables

#[derive(Clone, Debug)]
pub struct SandwichRow {
    pub n: usize,
    pub j: usize,
    /// certified lower bound on `f_j` of the equally spaced instance, when
    /// one of the combinatorial counting rules applies
    pub lower: Option<i128>,
    /// simplicial upper bound on `f_j` for any polytope of this dimension
    pub upper: i128,
    pub binom_basis: i128,
    pub lower_ratio: Option<f64>,
    pub upper_ratio: f64,
}

/// Lower-bound count of j-faces of the equally spaced instance from the
/// arc-length face rules: pairs under the edge threshold for `j = 1`,
/// triples within `arccos(1/8)` for `j = 2, k = 3`.
pub fn arc_rule_lower(k: usize, n: usize, j: usize) -> Option<i128> {
    let step = std::f64::consts::TAU / n as f64;
    match j {
        1 => {
            let limit = (2 * k - 2) as f64 * std::f64::consts::PI / (2 * k - 1) as f64;
            let mut count = 0i128;
            for s in 1..=n / 2 {
                let arc = step * s as f64;
                let pairs = if 2 * s == n { n as i128 / 2 } else { n as i128 };
                if arc < limit - 1e-12 {
                    count += pairs;
                } else if k == 2 && (arc - limit).abs() < 1e-12 && n.is_multiple_of(3) {
                    // threshold pairs lie in inscribed triangles of the set
                    count += pairs;
                }
            }
            Some(count)
        }
        2 if k == 3 => {
            let maxspan = (1.0f64 / 8.0).acos();
            let mut count = 0i128;
            let mut s = 2;
            while step * s as f64 <= maxspan + 1e-12 {
                count += n as i128 * (s as i128 - 1);
                s += 1;
            }
            Some(count)
        }
        _ => None,
    }
}

/// Table of lower/upper sandwich values for `f_j` across instance sizes.
pub fn sandwich_report(
    k: usize,
    n_list: &[usize],
    j: usize,
) -> Result<Vec<SandwichRow>, CensusError> {
    if j >= 2 * k {
        return Err(CensusError::BadInput(format!("j={j} >= d={}", 2 * k)));
    }
    let d = (2 * k) as u32;
    let mut rows = Vec::new();
    for &n in n_list {
        let upper = ubt_face_bound(d, n as u64, j)?;
        let basis = if j < k {
            binomial(n as u64, (j + 1) as u64)
        } else {
            binomial(n as u64, k as u64)
        };
        let lower = arc_rule_lower(k, n, j);
        rows.push(SandwichRow {
            n,
            j,
            lower,
            upper,
            binom_basis: basis,
            lower_ratio: lower.map(|l| l as f64 / basis as f64),
            upper_ratio: upper as f64 / basis as f64,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::SymmetricPointSet;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(12, 3), 220);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(36, 2), 630);
    }

    #[test]
    fn ub1_examples() {
        assert!((ub1_bound(4, 12).unwrap() - 67.5).abs() < 1e-12);
        assert!((ub1_bound(2, 4).unwrap() - 6.0).abs() < 1e-12);
        assert!((ub1_bound(6, 100).unwrap() - 4921.875).abs() < 1e-9);
        assert!(ub1_bound(3, 10).is_err());
    }

    #[test]
    fn ub2_examples() {
        assert!((ub2_bound(6, 12, 2).unwrap() - 236.25).abs() < 1e-9);
        assert!((ub2_bound(4, 4, 1).unwrap() - 7.5).abs() < 1e-12);
        assert!(ub2_bound(4, 10, 2).is_err(), "j = d/2 rejected");
    }

    #[test]
    fn ubt_hbound_examples() {
        assert_eq!(ubt_hbound(4, 8, 2).unwrap(), 10);
        assert_eq!(ubt_hbound(4, 8, 0).unwrap(), 1);
        assert_eq!(ubt_hbound(6, 10, 3).unwrap(), 20);
        assert!(ubt_hbound(4, 8, 3).is_err());
    }

    #[test]
    fn f_h_simplex_and_cyclic() {
        // boundary of the 4-simplex
        let f = vec![1, 5, 10, 10, 5];
        let h = f_to_h(&f, 4).unwrap();
        assert_eq!(h.values, vec![1, 1, 1, 1, 1]);
        assert_eq!(h_to_f(&h, 4).unwrap(), f);

        // cyclic polytope on 8 vertices in dimension 4
        let f = vec![1, 8, 28, 40, 20];
        let h = f_to_h(&f, 4).unwrap();
        assert_eq!(h.values, vec![1, 4, 10, 4, 1]);
        assert!(h.is_symmetric() && h.is_nonnegative());
        assert_eq!(h_to_f(&h, 4).unwrap(), f);
    }

    #[test]
    fn f_h_round_trip_random() {
        let mut state = 0x6a09e667f3bcc908u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 1000) as i128
        };
        for _ in 0..100 {
            let d = 4 + 2 * (next() % 2) as usize;
            let mut f = vec![1i128];
            for _ in 0..d {
                f.push(next());
            }
            let h = f_to_h(&f, d).unwrap();
            assert_eq!(h_to_f(&h, d).unwrap(), f);
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(f_to_h(&[1, 2, 3], 4).is_err());
        assert!(h_to_f(&HVector { values: vec![1, 2] }, 4).is_err());
    }

    #[test]
    fn ubt_face_bound_matches_cyclic() {
        // the bound is tight on the cyclic polytope itself
        assert_eq!(ubt_face_bound(4, 8, 1).unwrap(), 28);
        assert_eq!(ubt_face_bound(4, 8, 2).unwrap(), 40);
        assert_eq!(ubt_face_bound(4, 8, 3).unwrap(), 20);
    }

    #[test]
    fn build_flags_and_exceptions() {
        let x = SymmetricPointSet::equally_spaced(8).unwrap();
        let p = build(2, x.points()).unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.centrally_symmetric);
        assert!(p.is_full_dimensional());
        assert!(p.non_vertex_exceptions.is_empty(), "all singletons certify");

        // the minimal symmetric set is degenerate but still has 2 vertices
        let x = SymmetricPointSet::equally_spaced(2).unwrap();
        let p = build(2, x.points()).unwrap();
        assert!(!p.is_full_dimensional());

        // duplicates rejected
        let dup = [AnglePoint::new(0.1), AnglePoint::new(0.1)];
        assert!(build(2, &dup).is_err());
    }

    #[test]
    fn arc_rule_matches_frozen_counts() {
        assert_eq!(arc_rule_lower(2, 12, 1), Some(48));
        assert_eq!(arc_rule_lower(2, 24, 1), Some(192));
        assert_eq!(arc_rule_lower(2, 36, 1), Some(432));
        assert_eq!(arc_rule_lower(3, 24, 2), Some(240));
    }

    #[test]
    fn sandwich_rows_are_consistent() {
        let rows = sandwich_report(2, &[12, 24, 36], 1).unwrap();
        for row in rows {
            let lower = row.lower.unwrap();
            assert!(lower <= row.upper, "lower {} > upper {}", lower, row.upper);
            assert!(row.lower_ratio.unwrap() <= row.upper_ratio);
        }
    }
}
