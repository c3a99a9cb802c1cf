//! Library results against the reference computations in `common`.

mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reeb_toolkit::cattorus::{alpha_n, relation_matrix, CAT_GENERATORS, CAT_RELATORS};
use reeb_toolkit::curves::{
    contact_defect, perturb_critical_surface, transverse_y, BottProfile, LutzCurve, MorseType, PerturbationBump,
};
use reeb_toolkit::zlinalg::{graph_first_betti, smith_normal_form, Multigraph};

#[test]
fn invariant_factors_agree_with_minor_gcds() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let m = random_matrix(&mut rng, 6, 20);
        let snf = smith_normal_form(&to_matrix(&m));
        let ours: Vec<BigInt> = snf.invariant_factors().into_iter().filter(|d| d.is_positive()).collect();
        assert_eq!(ours, invariant_factors_by_minors(&m), "{m:?}");
    }
}

#[test]
fn minor_oracle_sanity() {
    assert_eq!(invariant_factors_by_minors(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
    assert_eq!(invariant_factors_by_minors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), big(&[2, 6, 12]));
    assert!(invariant_factors_by_minors(&[vec![0, 0]]).is_empty());
}

#[test]
fn betti_numbers_agree_with_spanning_forest() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let v = rng.random_range(1..12);
        let e = rng.random_range(0..20);
        let edges: Vec<[usize; 2]> = (0..e)
            .map(|_| [rng.random_range(0..v), rng.random_range(0..v)])
            .collect();
        let g = Multigraph::new(v, edges.clone()).unwrap();
        assert_eq!(graph_first_betti(&g), betti_by_bfs(v, &edges));
    }
}

#[test]
fn cat_relators_by_letter_count() {
    let expanded = ["a b a^-1 b^-1", "a c b^-1 a^-2 c^-1", "b c b^-1 a^-1 c^-1"];
    let m = relation_matrix(&CAT_RELATORS, &CAT_GENERATORS).unwrap();
    for (i, w) in expanded.iter().enumerate() {
        assert_eq!(m.row(i), big(&letter_count(w, &CAT_GENERATORS)).as_slice());
    }
    assert_eq!(m.to_rows(), vec![big(&[0, 0, 0]), big(&[-1, -1, 0]), big(&[-1, 0, 0])]);
}

#[test]
fn transverse_field_solves_the_linear_system() {
    let f = BottProfile::square();
    let klein = LutzCurve::klein_normal(-2.0, 2.0).unwrap();
    let y = transverse_y(&klein, &f, 1.0).unwrap();
    assert_eq!(y, [-2.0, -2.0]);
    for n in 0..4 {
        let c = LutzCurve::alpha_n(n, 0.0, 3.0).unwrap();
        for k in 1..30 {
            let t = 0.1 * f64::from(k);
            let p = c.eval(t).unwrap();
            let y = transverse_y(&c, &f, t).unwrap();
            let want = solve2([[p.h1, p.h2], [p.dh1, p.dh2]], [0.0, f.derivative(t)]);
            let scale = 1.0 + want[0].abs().max(want[1].abs());
            assert!((y[0] - want[0]).abs() < 1e-12 * scale && (y[1] - want[1]).abs() < 1e-12 * scale);
        }
    }
}

#[test]
fn contact_defect_against_finite_differences() {
    const ALPHA0_AT_0: f64 = -0.860_817_881_928_008;
    let c = LutzCurve::alpha_n(0, -1.0, 3.0).unwrap();
    assert!((contact_defect(&c, 0.0).unwrap() - ALPHA0_AT_0).abs() < 1e-12);
    for n in 0..4 {
        let c = LutzCurve::alpha_n(n, -1.0, 3.0).unwrap();
        for k in 0..40 {
            let t = -0.95 + 0.1 * f64::from(k);
            let h1 = |s: f64| alpha_n(n, s).h1;
            let h2 = |s: f64| alpha_n(n, s).h2;
            let fd = h1(t) * central_diff(h2, t, 1e-5) - central_diff(h1, t, 1e-5) * h2(t);
            let d = contact_defect(&c, t).unwrap();
            assert!((d - fd).abs() < 1e-6 * (1.0 + d.abs()), "n={n} t={t}: {d} vs {fd}");
        }
    }
}

#[test]
fn alpha_one_h2_changes_sign() {
    let signs: Vec<bool> = (0..=10_000).map(|i| alpha_n(1, i as f64 / 10_000.0).h2 > 0.0).collect();
    assert!(signs.iter().any(|s| *s) && signs.iter().any(|s| !*s));
}

#[test]
fn perturbation_matches_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..3 {
        let delta = rng.random_range(0.5..2.0);
        let eps = delta * rng.random_range(0.05..0.45);
        let bump = PerturbationBump::new(delta, eps).unwrap();
        let grid = grid_critical_points(&bump);
        let ours = perturb_critical_surface(&bump).unwrap();
        assert_eq!(grid.len(), 2, "{grid:?}");
        assert_eq!(ours.points.len(), 2);
        for p in &ours.points {
            let hit = grid
                .iter()
                .find(|g| (g.r - p.r).abs() < 2.0 * delta / 2000.0 && angle_gap(g.theta, p.theta) < 0.01)
                .expect("grid finds every reported point");
            let kind = match p.kind {
                MorseType::Minimum => GridKind::Minimum,
                MorseType::Maximum => GridKind::Maximum,
                MorseType::Saddle => GridKind::Saddle,
                MorseType::Degenerate => panic!("degenerate point"),
            };
            assert_eq!(hit.kind, kind);
        }
    }
}
