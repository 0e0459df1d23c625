//! Randomized lemma suites behind `check-lemmas`.
//!
//! Every trial draws its own seed from the suite seed, so a failure message
//! names a seed that reproduces the trial alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supcenter_core::centers::{
    center_set, check_scaling_identity, check_threshold_equality, lemma_delta_bound,
    perturb_toward_center, restricted_radius, solve_radius,
};
use supcenter_core::constraints::ball_polytope;
use supcenter_core::constructive::{
    admissible_slack, construct_center, repair_near_center, RepairInput,
};
use supcenter_core::garkavi::{build_model, gauge_checks, projection_of_x0};
use supcenter_core::lp::distance_to_polytope;
use supcenter_core::p1::{p1_modulus, relaxed_gap, sequence_criterion_check, SequenceStrategy};
use supcenter_core::space::{farthest_radius, hausdorff};
use supcenter_core::{CenterProblem, FunctionFamily, Functional, SubspaceSpec, Tolerances, Vector};

use crate::commands::sample_near_centers;
use crate::error::CliError;
use crate::report::{Body, LemmasBody, Report, Status};

pub const SUITES: [&str; 7] = [
    "scaling",
    "perturb",
    "hausdorff",
    "construct",
    "repair",
    "p1",
    "garkavi",
];

const MAX_REPORTED_FAILURES: usize = 10;

/// A random instance with `n <= 4`, at most two functionals and a family of
/// one to three functions.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub n: usize,
    pub y: SubspaceSpec,
    pub family: FunctionFamily,
}

pub fn random_family(rng: &mut ChaCha8Rng, n: usize, m: usize, spread: f64) -> FunctionFamily {
    let members = (0..m)
        .map(|_| Vector::new((0..n).map(|_| rng.gen_range(-spread..spread)).collect()))
        .collect();
    FunctionFamily::new(members).expect("nonempty family of equal dimension")
}

pub fn random_functional(rng: &mut ChaCha8Rng, n: usize) -> Functional {
    let len = rng.gen_range(2..=n.min(3));
    let mut support: Vec<usize> = (0..n).collect();
    for i in 0..len {
        let j = rng.gen_range(i..n);
        support.swap(i, j);
    }
    support.truncate(len);
    let weights: Vec<f64> = (0..len)
        .map(|_| rng.gen_range(0.2..1.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    Functional::normalized(support, weights).expect("weights bounded away from zero")
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> RandomInstance {
    let n = rng.gen_range(2..=4);
    let k = rng.gen_range(0..=(n - 1).min(2));
    let fs = (0..k).map(|_| random_functional(rng, n)).collect();
    let y = SubspaceSpec::new(n, fs).expect("functionals on n points");
    let m = rng.gen_range(1..=3);
    let spread = rng.gen_range(0.5..2.5);
    let family = random_family(rng, n, m, spread);
    RandomInstance { n, y, family }
}

/// Outcome of one trial: the defect is the amount by which the worst
/// inequality misses its tolerance, so `defect <= 0` means a pass.
struct Trial {
    defect: f64,
    note: String,
}

type TrialFn = fn(&mut ChaCha8Rng, &Tolerances) -> supcenter_core::Result<Trial>;

fn trial_fn(suite: &str) -> Option<TrialFn> {
    Some(match suite {
        "scaling" => scaling_trial,
        "perturb" => perturb_trial,
        "hausdorff" => hausdorff_trial,
        "construct" => construct_trial,
        "repair" => repair_trial,
        "p1" => p1_trial,
        "garkavi" => garkavi_trial,
        _ => return None,
    })
}

pub fn run_suite(
    suite: &str,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Report, CliError> {
    let f = trial_fn(suite).ok_or_else(|| {
        CliError::Input(format!(
            "unknown suite `{suite}` (expected one of {})",
            SUITES.join(", ")
        ))
    })?;
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut failures = Vec::new();
    for t in 0..trials {
        let trial_seed: u64 = master.gen();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        match f(&mut rng, tol) {
            Ok(trial) => {
                worst = worst.max(trial.defect);
                if trial.defect <= 0.0 {
                    passed += 1;
                } else if failures.len() < MAX_REPORTED_FAILURES {
                    failures.push(format!("trial {t} (seed {trial_seed}): {}", trial.note));
                }
            }
            Err(e) => {
                worst = f64::INFINITY;
                if failures.len() < MAX_REPORTED_FAILURES {
                    failures.push(format!("trial {t} (seed {trial_seed}): {e}"));
                }
            }
        }
    }
    let mut summary = vec![format!(
        "suite {suite}: {passed}/{trials} trials pass (seed {seed})"
    )];
    summary.push(format!("worst defect {worst:.3e}"));
    summary.extend(failures.iter().cloned());
    Ok(Report::new(
        "check-lemmas",
        None,
        Status::from_bool(passed == trials),
        summary,
        Body::Lemmas(LemmasBody {
            suite: suite.into(),
            trials,
            seed,
            passed,
            worst_defect: worst,
            failures,
        }),
    ))
}

fn scaling_trial(rng: &mut ChaCha8Rng, tol: &Tolerances) -> supcenter_core::Result<Trial> {
    let inst = random_instance(rng);
    let lambda = rng.gen_range(0.25..4.0);
    let delta = rng.gen_range(0.01..0.3);
    let s = check_scaling_identity(&inst.y, &inst.family, lambda, delta, tol, 1e-6)?;
    let tau = inst.family.max_norm()
        + restricted_radius(&CenterProblem::subspace(
            &inst.y,
            inst.family.clone(),
            *tol,
        )?)?;
    let t = check_threshold_equality(&inst.y, &inst.family, tau + 1.0, tol, 1e-6)?;
    let defect = (s
        .distance
        .max(s.delta_distance)
        .max(t.inclusion_gap)
        .max(t.reverse_gap))
        - 1e-6;
    Ok(Trial {
        defect,
        note: format!(
            "lambda {lambda:.4}: scaling gaps {:.2e}/{:.2e}, threshold gaps {:.2e}/{:.2e}",
            s.distance, s.delta_distance, t.inclusion_gap, t.reverse_gap
        ),
    })
}

fn perturb_trial(rng: &mut ChaCha8Rng, tol: &Tolerances) -> supcenter_core::Result<Trial> {
    // the slack bound vanishes with R, so draw until the radius is visible
    let (inst, p, r) = loop {
        let inst = random_instance(rng);
        let p = CenterProblem::unit_ball(&inst.y, inst.family.clone(), *tol)?;
        let r = restricted_radius(&p)?;
        if r > 1e-3 {
            break (inst, p, r);
        }
    };
    let gamma = rng.gen_range(0.05..0.5);
    let eps = rng.gen_range(0.05..0.3);
    let delta = 0.9 * lemma_delta_bound(r, gamma, eps);
    let (gap, v) = relaxed_gap(&p, gamma, delta)?;
    let v2 = center_set(&p)?.representative;
    let moved =
        perturb_toward_center(&v, &v2, &inst.family, &p.constraint, gamma, delta, eps, tol)?;
    let r_after = farthest_radius(&moved.point, &inst.family)?;
    let defect = (gap - eps - 1e-6)
        .max(r_after - (r + gamma) - 1e-9)
        .max(moved.displacement - eps - 1e-9);
    Ok(Trial {
        defect,
        note: format!(
            "gamma {gamma:.3}, eps {eps:.3}, delta {delta:.3e}: gap {gap:.3e}, moved radius excess {:.3e}",
            r_after - r - gamma
        ),
    })
}

fn hausdorff_trial(rng: &mut ChaCha8Rng, tol: &Tolerances) -> supcenter_core::Result<Trial> {
    let inst = random_instance(rng);
    let m = rng.gen_range(1..=3);
    let spread = rng.gen_range(0.5..2.5);
    let other = random_family(rng, inst.n, m, spread);
    let h = hausdorff(&inst.family, &other)?;
    let v = Vector::new((0..inst.n).map(|_| rng.gen_range(-3.0..3.0)).collect());
    let point_gap = (farthest_radius(&v, &inst.family)? - farthest_radius(&v, &other)?).abs();
    let lambda = rng.gen_range(0.5..2.0);
    let ball = ball_polytope(&inst.y, lambda)?;
    let r1 = solve_radius(&inst.family, &ball, tol)?.0;
    let r2 = solve_radius(&other, &ball, tol)?.0;
    let radius_gap = (r1 - r2).abs();
    Ok(Trial {
        defect: point_gap.max(radius_gap) - h - 1e-9,
        note: format!("hausdorff {h:.6}, point gap {point_gap:.6}, radius gap {radius_gap:.6}"),
    })
}

fn construct_trial(rng: &mut ChaCha8Rng, tol: &Tolerances) -> supcenter_core::Result<Trial> {
    let inst = random_instance(rng);
    let c = construct_center(&inst.family, &inst.y, tol)?;
    let lp = restricted_radius(&CenterProblem::unit_ball(
        &inst.y,
        inst.family.clone(),
        *tol,
    )?)?;
    let excess = farthest_radius(&c.h, &inst.family)? - lp;
    let residual = inst.y.residual(&c.h)?;
    let defect = (excess - 1e-8)
        .max(residual - 1e-9)
        .max(c.h.sup_norm() - 1.0 - 1e-9)
        .max((c.radius - lp).abs() - 1e-9);
    Ok(Trial {
        defect,
        note: format!("radius {lp:.6}, excess {excess:.3e}, residual {residual:.3e}"),
    })
}

fn repair_trial(rng: &mut ChaCha8Rng, tol: &Tolerances) -> supcenter_core::Result<Trial> {
    let inst = random_instance(rng);
    let eps = [0.2, 0.1, 0.05][rng.gen_range(0..3)];
    let slack = admissible_slack(&inst.family, &inst.y, eps, tol)?;
    let p = CenterProblem::unit_ball(&inst.y, inst.family.clone(), *tol)?;
    let g = sample_near_centers(&p, slack.delta, 2, rng.gen())
        .map_err(|e| supcenter_core::Error::Certificate(e.to_string()))?
        .remove(1);
    let out = repair_near_center(
        &RepairInput {
            g: g.clone(),
            eps,
            delta: slack.delta,
        },
        &inst.family,
        &inst.y,
        tol,
    )?;
    let cent = center_set(&p)?.center_polytope;
    let dist = distance_to_polytope(&out.h2, &cent, tol)?.0;
    let moved = g.dist(&out.h2);
    Ok(Trial {
        defect: (dist - 1e-7).max(moved - eps - 1e-9),
        note: format!(
            "eps {eps}, delta {:.3e}: distance {dist:.3e}, displacement {moved:.6}",
            slack.delta
        ),
    })
}

fn p1_trial(rng: &mut ChaCha8Rng, tol: &Tolerances) -> supcenter_core::Result<Trial> {
    let inst = random_instance(rng);
    let eps = rng.gen_range(0.02..0.3);
    let mut defect = f64::NEG_INFINITY;
    let mut note = String::new();
    for (name, p) in [
        (
            "ball",
            CenterProblem::unit_ball(&inst.y, inst.family.clone(), *tol)?,
        ),
        (
            "subspace",
            CenterProblem::subspace(&inst.y, inst.family.clone(), *tol)?,
        ),
    ] {
        let m = p1_modulus(&p, eps, 1.0)?;
        let seq = sequence_criterion_check(&p, 5, rng.gen(), SequenceStrategy::Random)?;
        // a positive modulus and a passing sequence both count as zero defect
        let d = if m.delta > 0.0 && seq.passed {
            -m.delta
        } else {
            1.0
        };
        defect = defect.max(d);
        note.push_str(&format!(
            "{name}: delta* {:.3e}, sequence {} ",
            m.delta, seq.passed
        ));
    }
    Ok(Trial { defect, note })
}

fn garkavi_trial(rng: &mut ChaCha8Rng, _tol: &Tolerances) -> supcenter_core::Result<Trial> {
    let n = rng.gen_range(3..=4);
    let m = build_model(n, rng.gen_range(0..1000))?;
    let norm = gauge_checks(&m, 4, rng.gen(), 1e-7)?;
    let (proj, dist) = projection_of_x0(&m)?;
    let certs = m.certificates.iter().all(|c| c.passed);
    let defect = if certs && norm.passed {
        (proj - 1e-6).max(dist - 1e-7)
    } else {
        1.0
    };
    Ok(Trial {
        defect,
        note: format!(
            "N = {n}, seed {}: projection gap {proj:.2e}, distance gap {dist:.2e}",
            m.seed
        ),
    })
}
