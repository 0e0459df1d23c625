use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supcenter_core::centers::{
    self, center_set, check_scaling_identity, lemma_delta_bound, near_center_set,
    restricted_radius, solve_radius,
};
use supcenter_core::constraints::{
    ball_polytope, enumerate_vertices, enumerate_vertices_exhaustive,
};
use supcenter_core::constructive::{
    admissible_slack, construct_center, repair_near_center, RepairInput,
};
use supcenter_core::lp::distance_to_polytope;
use supcenter_core::p1::{relaxed_gap, worst_near_center_distance};
use supcenter_core::space::{farthest_radius, global_center, hausdorff, hausdorff_points};
use supcenter_core::{
    CenterProblem, FunctionFamily, Functional, Polytope, SubspaceSpec, Tolerances, Vector,
};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, m: usize, spread: f64) -> FunctionFamily {
    FunctionFamily::new(
        (0..m)
            .map(|_| Vector::new((0..n).map(|_| rng.gen_range(-spread..spread)).collect()))
            .collect(),
    )
    .unwrap()
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize, count: usize) -> SubspaceSpec {
    let fs = (0..count)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let w: Vec<f64> = (0..2)
                .map(|_| rng.gen_range(0.2..1.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 })
                .collect();
            Functional::normalized(vec![a, b], w).unwrap()
        })
        .collect();
    SubspaceSpec::new(n, fs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radius_is_lipschitz_in_the_family(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f1 = { let m = rng.gen_range(1..4); random_family(&mut rng, n, m, 2.0) };
        let f2 = { let m = rng.gen_range(1..4); random_family(&mut rng, n, m, 2.0) };
        let v = Vector::new((0..n).map(|_| rng.gen_range(-2.0..2.0)).collect());
        let dh = hausdorff(&f1, &f2).unwrap();
        let gap = (farthest_radius(&v, &f1).unwrap() - farthest_radius(&v, &f2).unwrap()).abs();
        prop_assert!(gap <= dh + 1e-9);
        let y = random_subspace(&mut rng, n, 1);
        let p1 = CenterProblem::unit_ball(&y, f1, tol()).unwrap();
        let p2 = CenterProblem::unit_ball(&y, f2, tol()).unwrap();
        let rgap = (restricted_radius(&p1).unwrap() - restricted_radius(&p2).unwrap()).abs();
        prop_assert!(rgap <= dh + 1e-9);
    }

    #[test]
    fn unconstrained_radius_is_half_the_spread(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = { let m = rng.gen_range(1..5); random_family(&mut rng, n, m, 3.0) };
        let (r, c) = global_center(&f);
        let (lp, _) = solve_radius(&f, &Polytope::cube(n, 100.0), &tol()).unwrap();
        prop_assert!((r - lp).abs() < 1e-9);
        prop_assert!((farthest_radius(&c, &f).unwrap() - r).abs() < 1e-12);
    }

    #[test]
    fn double_description_matches_active_sets(seed in any::<u64>(), n in 1usize..4, extra in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Polytope::cube(n, 1.0);
        for _ in 0..extra {
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            p.add_le(a, rng.gen_range(-0.3..1.0));
        }
        match (enumerate_vertices(&p, &tol()), enumerate_vertices_exhaustive(&p, &tol())) {
            (Ok(a), Ok(b)) => {
                // vertex sets, compared up to order
                prop_assert_eq!(a.len(), b.len());
                prop_assert!(hausdorff_points(&a, &b) < 1e-7);
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "disagree: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }

    #[test]
    fn lp_optimum_is_the_best_vertex(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Polytope::cube(n, 1.0);
        for _ in 0..3 {
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            p.add_le(a, rng.gen_range(0.1..1.0));
        }
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (val, _) = p.optimize(&c, true, &tol()).unwrap();
        let best = enumerate_vertices_exhaustive(&p, &tol())
            .unwrap()
            .iter()
            .map(|v| v.dot(&c))
            .fold(f64::INFINITY, f64::min);
        prop_assert!((val - best).abs() < 1e-9);
    }

    #[test]
    fn constructed_center_is_optimal(seed in any::<u64>(), n in 2usize..6, k in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_subspace(&mut rng, n, k.min(n - 1));
        let f = { let m = rng.gen_range(1..4); random_family(&mut rng, n, m, 2.5) };
        let c = construct_center(&f, &y, &tol()).unwrap();
        let lp = restricted_radius(&CenterProblem::unit_ball(&y, f.clone(), tol()).unwrap()).unwrap();
        prop_assert!(c.reduction.alpha <= lp + 1e-9);
        prop_assert!(farthest_radius(&c.h, &f).unwrap() <= lp + 1e-8);
        prop_assert!(y.residual(&c.h).unwrap() <= 1e-9);
        prop_assert!(c.h.sup_norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn repaired_points_are_centers(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_subspace(&mut rng, n, 1);
        let f = { let m = rng.gen_range(1..3); random_family(&mut rng, n, m, 1.5) };
        let eps = [0.2, 0.1, 0.05][rng.gen_range(0..3)];
        let slack = admissible_slack(&f, &y, eps, &tol()).unwrap();
        let p = CenterProblem::unit_ball(&y, f.clone(), tol()).unwrap();
        let near = near_center_set(&p, slack.delta).unwrap();
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (_, g) = near.optimize(&c, true, &tol()).unwrap();
        let out = repair_near_center(&RepairInput { g: g.clone(), eps, delta: slack.delta }, &f, &y, &tol()).unwrap();
        let cent = center_set(&p).unwrap().center_polytope;
        prop_assert!(distance_to_polytope(&out.h2, &cent, &tol()).unwrap().0 <= 1e-7);
        prop_assert!(g.dist(&out.h2) <= eps + 1e-9);
    }

    #[test]
    fn worst_distance_grows_with_delta(seed in any::<u64>(), n in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_subspace(&mut rng, n, 1);
        let f = random_family(&mut rng, n, 2, 1.5);
        let p = CenterProblem::unit_ball(&y, f, tol()).unwrap();
        let mut last = 0.0;
        for d in [0.0, 0.02, 0.1, 0.3] {
            let (w, _) = worst_near_center_distance(&p, d).unwrap();
            prop_assert!(w + 1e-9 >= last);
            last = w;
        }
    }

    #[test]
    fn explicit_slack_keeps_near_centers_close(seed in any::<u64>(), n in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_subspace(&mut rng, n, 1);
        let f = random_family(&mut rng, n, 2, 1.5);
        let p = CenterProblem::unit_ball(&y, f, tol()).unwrap();
        let r = restricted_radius(&p).unwrap();
        prop_assume!(r > 1e-3);
        let gamma = rng.gen_range(0.05..0.5);
        let eps = rng.gen_range(0.05..0.3);
        let delta = 0.9 * lemma_delta_bound(r, gamma, eps);
        let (gap, _) = relaxed_gap(&p, gamma, delta).unwrap();
        prop_assert!(gap <= eps + 1e-6);
    }

    #[test]
    fn scaling_identity(seed in any::<u64>(), n in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_subspace(&mut rng, n, 1);
        let f = random_family(&mut rng, n, 2, 2.0);
        let lambda = rng.gen_range(0.3..3.0);
        let rep = check_scaling_identity(&y, &f, lambda, 0.1, &tol(), 1e-6).unwrap();
        prop_assert!(rep.passed, "{:?}", rep);
    }
}

#[test]
fn subspace_box_is_never_binding() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let y = random_subspace(&mut rng, 4, 2);
        let f = random_family(&mut rng, 4, 3, 5.0);
        assert!(centers::verify_box_nonbinding(&y, &f, &tol()).unwrap() < 1e-7);
    }
}

#[test]
fn ball_and_center_set_agree_with_grid() {
    // V = B_Y for Y = { v1 = v2 } in R^3, grid over (a, a, c)
    let y = SubspaceSpec::new(
        3,
        vec![Functional::new(vec![0, 1], vec![0.5, -0.5]).unwrap()],
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let f = random_family(&mut rng, 3, 2, 2.0);
        let (r, _) = solve_radius(&f, &ball_polytope(&y, 1.0).unwrap(), &tol()).unwrap();
        let mut best = f64::INFINITY;
        for i in 0..=200 {
            for j in 0..=200 {
                let a = -1.0 + i as f64 / 100.0;
                let c = -1.0 + j as f64 / 100.0;
                best = best.min(farthest_radius(&Vector::from([a, a, c]), &f).unwrap());
            }
        }
        assert!(r <= best + 1e-12 && best - r <= 0.02);
    }
}
