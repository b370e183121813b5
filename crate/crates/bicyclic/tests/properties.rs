//! Property-based invariants for the circle, curve, and polynomial layers.

use bicyclic::census::{f_to_h, h_to_f};
use bicyclic::circle::{arc_distance, AnglePoint, SymmetricPointSet};
use bicyclic::curve::sm_eval;
use bicyclic::poly::{poly_from_multiset, selfinv_roots, RakedTrigPoly, RootMultiset};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn angle() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

proptest! {
    #[test]
    fn prop_arc_distance_is_a_bounded_metric(a in angle(), b in angle(), c in angle()) {
        let (pa, pb, pc) = (AnglePoint::new(a), AnglePoint::new(b), AnglePoint::new(c));
        let dab = arc_distance(pa, pb);
        prop_assert!((0.0..=PI + 1e-12).contains(&dab));
        prop_assert!((dab - arc_distance(pb, pa)).abs() < 1e-12);
        prop_assert!(dab <= arc_distance(pa, pc) + arc_distance(pc, pb) + 1e-9);
    }

    #[test]
    fn prop_normalization_idempotent_and_antipode_involutive(a in angle()) {
        let p = AnglePoint::new(a);
        prop_assert_eq!(AnglePoint::new(p.radians()), p);
        prop_assert!(arc_distance(p.antipode().antipode(), p) < 1e-12);
        prop_assert!((arc_distance(p, p.antipode()) - PI).abs() < 1e-9);
    }

    #[test]
    fn prop_symmetrize_invariants(raw in prop::collection::vec(0.001..3.0f64, 1..6)) {
        // spread points into (0, π) so Y and Y+π cannot collide
        let mut y: Vec<AnglePoint> = Vec::new();
        let mut acc = 0.0;
        for r in &raw {
            acc += r / 7.0;
            y.push(AnglePoint::new(acc.min(3.1)));
        }
        y.dedup_by(|a, b| arc_distance(*a, *b) < 1e-6);
        if let Ok(s) = SymmetricPointSet::symmetrize(&y) {
            prop_assert_eq!(s.len() % 2, 0);
            prop_assert!(s.is_antipode_closed());
            // sorted and deduplicated
            for w in s.points().windows(2) {
                prop_assert!(w[0].radians() < w[1].radians());
            }
        }
    }

    #[test]
    fn prop_curve_antipodality_and_projection(a in angle(), k in 1usize..6) {
        let t = AnglePoint::new(a);
        let p = sm_eval(k, t).unwrap();
        let q = sm_eval(k, t.antipode()).unwrap();
        for (x, y) in p.coords.iter().zip(&q.coords) {
            prop_assert!((x + y).abs() < 1e-12);
        }
        let big = sm_eval(k + 1, t).unwrap();
        prop_assert_eq!(&big.coords[..2 * k], p.coords.as_slice());
    }

    #[test]
    fn prop_bridge_consistency(
        c in -1.0..1.0f64,
        coeffs in prop::collection::vec(-1.0..1.0f64, 6),
        t in angle(),
    ) {
        let a = RakedTrigPoly::new(
            3,
            c,
            coeffs[..3].to_vec(),
            coeffs[3..].to_vec(),
        ).unwrap();
        prop_assume!(a.max_coeff() > 1e-3);
        let d = a.to_selfinv().unwrap();
        let tp = AnglePoint::new(t);
        prop_assert!((a.eval(tp) - d.bridge_eval(3, tp)).abs() < 1e-12 * (1.0 + a.max_coeff()));
        // antipode identity
        prop_assert!((a.eval(tp) + a.eval(tp.antipode()) - 2.0 * a.c).abs() < 1e-12);
        // the bridge inverse recovers the coefficients
        let back = d.to_raked(3).unwrap();
        prop_assert!((back.c - a.c).abs() < 1e-12);
    }

    #[test]
    fn prop_multiset_round_trip(
        circle_angles in prop::collection::vec(0.0..TAU, 0..8),
        radial in prop::collection::vec((0.2..0.9f64, 0.0..TAU), 0..7),
    ) {
        // build a self-inversive-closed multiset: circle points are fixed by
        // ζ -> 1/conj(ζ); off-circle points enter with their partners
        let mut entries: Vec<(Complex64, usize)> = Vec::new();
        for &ang in &circle_angles {
            entries.push((Complex64::from_polar(1.0, ang), 1));
        }
        for &(r, ang) in &radial {
            let z = Complex64::from_polar(r, ang);
            entries.push((z, 1));
            entries.push((z.conj().inv(), 1));
        }
        // well-separated entries only (the clustering radius must not merge)
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                prop_assume!((entries[i].0 - entries[j].0).norm() > 1e-3);
            }
        }
        prop_assume!(entries.len() >= 2 && entries.len().is_multiple_of(2));
        let m = RootMultiset::new(entries.clone());
        let d = poly_from_multiset(&m).unwrap();
        let back = selfinv_roots(&d).unwrap();
        prop_assert_eq!(back.total_multiplicity(), m.total_multiplicity());
        for &(z, mult) in m.entries() {
            let hit = back.entries().iter().find(|&&(w, _)| (w - z).norm() < 1e-7);
            prop_assert!(hit.is_some(), "root {} lost", z);
            prop_assert_eq!(hit.unwrap().1, mult);
        }
    }

    #[test]
    fn prop_f_h_round_trip(f_tail in prop::collection::vec(0i128..10_000, 4), d in prop::sample::select(vec![4usize])) {
        let mut f = vec![1i128];
        f.extend(f_tail);
        let h = f_to_h(&f, d).unwrap();
        prop_assert_eq!(h_to_f(&h, d).unwrap(), f);
    }
}
