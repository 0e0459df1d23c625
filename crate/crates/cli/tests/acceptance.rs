//! Acceptance criteria 1 to 9. Each prints one PASS or FAIL line; the process
//! exits nonzero if any criterion fails.
//!
//! Checks are made against oracles written here: a brute-force grid, the
//! farthest-distance radius evaluated directly, hand-built slab polytopes
//! enumerated by exhaustive active-set search, and the explicit slack bound.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supcenter::instance::{load, CenterInstance, ConstraintSpec, Instance};
use supcenter_core::centers::{center_set, perturb_toward_center, solve_radius};
use supcenter_core::constraints::{ball_polytope, enumerate_vertices_exhaustive};
use supcenter_core::constructive::{
    admissible_slack, construct_center, repair_near_center, RepairInput,
};
use supcenter_core::garkavi::{
    build_model, build_with, gauge_checks, half_ball_check, projection_of_x0, GarkaviParams,
};
use supcenter_core::lp::distance_to_polytope;
use supcenter_core::p1::p1_modulus;
use supcenter_core::{
    CenterProblem, Error, FunctionFamily, Functional, Polytope, SubspaceSpec, Tolerances, Vector,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tol() -> Tolerances {
    Tolerances::default()
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

// ---------------------------------------------------------------- oracles

fn radius_of(x: &[f64], family: &[Vec<f64>]) -> f64 {
    family
        .iter()
        .map(|f| {
            f.iter()
                .zip(x)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn hausdorff_sets(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let one = |p: &[Vec<f64>], q: &[Vec<f64>]| {
        p.iter()
            .map(|x| {
                q.iter()
                    .map(|y| sup_dist(x, y))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}

fn functional_value(support: &[usize], weights: &[f64], x: &[f64]) -> f64 {
    support.iter().zip(weights).map(|(&i, w)| w * x[i]).sum()
}

fn residual(y: &SubspaceSpec, x: &[f64]) -> f64 {
    y.functionals()
        .iter()
        .map(|f| functional_value(f.support(), f.weights(), x).abs())
        .fold(0.0, f64::max)
}

fn members(f: &FunctionFamily) -> Vec<Vec<f64>> {
    f.iter().map(|v| v.as_slice().to_vec()).collect()
}

/// `lambda-box ∩ Y ∩ S_r(F)` assembled row by row.
fn slab_in_ball(y: &SubspaceSpec, family: &[Vec<f64>], lambda: f64, r: f64) -> Polytope {
    let n = y.dim();
    let mut p = Polytope::cube(n, lambda);
    for f in y.functionals() {
        let mut row = vec![0.0; n];
        for (&i, &w) in f.support().iter().zip(f.weights()) {
            row[i] += w;
        }
        p.add_eq(row, 0.0);
    }
    for i in 0..n {
        let lo = family
            .iter()
            .map(|f| f[i])
            .fold(f64::NEG_INFINITY, f64::max)
            - r;
        let hi = family.iter().map(|f| f[i]).fold(f64::INFINITY, f64::min) + r;
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        p.add_le(e.clone(), hi);
        e[i] = -1.0;
        p.add_le(e, -lo);
    }
    p
}

fn oracle_vertices(p: &Polytope) -> Result<Vec<Vec<f64>>, String> {
    enumerate_vertices_exhaustive(p, &tol())
        .map(|vs| vs.into_iter().map(Vector::into_inner).collect())
        .map_err(|e| e.to_string())
}

fn lemma_bound(r: f64, gamma: f64, eps: f64) -> f64 {
    r.min(eps * gamma / (6.0 * r + 4.0 * gamma))
}

// -------------------------------------------------------------- instances

struct Drawn {
    n: usize,
    y: SubspaceSpec,
    family: Vec<Vec<f64>>,
}

impl Drawn {
    fn family(&self) -> FunctionFamily {
        FunctionFamily::new(self.family.iter().cloned().map(Vector::new).collect()).unwrap()
    }
}

fn draw_functional(rng: &mut ChaCha8Rng, n: usize) -> Functional {
    let len = rng.gen_range(2..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..len {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(len);
    let w = (0..len)
        .map(|_| rng.gen_range(0.2..1.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    Functional::normalized(idx, w).unwrap()
}

fn draw_family(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let m = rng.gen_range(1..=3);
    let spread = rng.gen_range(0.3..2.0);
    (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(-spread..spread)).collect())
        .collect()
}

fn draw(rng: &mut ChaCha8Rng, max_functionals: usize) -> Drawn {
    let n = rng.gen_range(2..=4);
    let k = rng.gen_range(0..=max_functionals.min(n - 1));
    let y = SubspaceSpec::new(n, (0..k).map(|_| draw_functional(rng, n)).collect()).unwrap();
    let family = draw_family(rng, n);
    Drawn { n, y, family }
}

fn center_instances() -> Vec<(String, CenterInstance)> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .filter_map(|p| match load(&p).unwrap() {
            Instance::Center(c) => Some((p.file_name().unwrap().to_string_lossy().into_owned(), c)),
            Instance::Garkavi(_) => None,
        })
        .collect()
}

// -------------------------------------------------------------- criteria

/// Brute-force grid with step 0.01 over `B_Y`; with one functional the
/// coordinate of largest weight is solved for, so `Y` is hit exactly.
fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let n = rng.gen_range(2..=4);
        let k = if n == 4 { 1 } else { rng.gen_range(0..=1) };
        let y =
            SubspaceSpec::new(n, (0..k).map(|_| draw_functional(&mut rng, n)).collect()).unwrap();
        let family = draw_family(&mut rng, n);
        let fam = FunctionFamily::new(family.iter().cloned().map(Vector::new).collect()).unwrap();
        let lp = solve_radius(&fam, &ball_polytope(&y, 1.0).unwrap(), &tol())
            .map_err(|e| e.to_string())?
            .0;

        let weights = y.functionals().first().map(|f| f.dense(n));
        let pivot = weights.as_ref().map(|w| {
            (0..n)
                .max_by(|&a, &b| w[a].abs().partial_cmp(&w[b].abs()).unwrap())
                .unwrap()
        });
        let free: Vec<usize> = (0..n).filter(|&i| Some(i) != pivot).collect();
        let steps = 201usize;
        let mut idx = vec![0usize; free.len()];
        let mut x = vec![0.0; n];
        let mut best = f64::INFINITY;
        'grid: loop {
            for (slot, &i) in free.iter().enumerate() {
                x[i] = -1.0 + idx[slot] as f64 * 0.01;
            }
            let feasible = match (pivot, &weights) {
                (Some(p), Some(w)) => {
                    let s: f64 = free.iter().map(|&i| w[i] * x[i]).sum();
                    x[p] = -s / w[p];
                    x[p].abs() <= 1.0 + 1e-12
                }
                _ => true,
            };
            if feasible {
                best = best.min(radius_of(&x, &family));
            }
            let mut slot = 0;
            loop {
                if slot == idx.len() {
                    break 'grid;
                }
                idx[slot] += 1;
                if idx[slot] < steps {
                    break;
                }
                idx[slot] = 0;
                slot += 1;
            }
        }
        if lp > best + 1e-9 {
            return Err(format!(
                "trial {trial}: LP radius {lp} above grid value {best}"
            ));
        }
        if best - lp > 0.02 {
            return Err(format!(
                "trial {trial}: grid value {best} exceeds LP radius {lp} by more than 0.02"
            ));
        }
        worst = worst.max(best - lp);
    }

    // worked instance: Y = {v1 = v2} in R^3, F = {e1, e2}
    let y = SubspaceSpec::new(
        3,
        vec![Functional::new(vec![0, 1], vec![0.5, -0.5]).unwrap()],
    )
    .unwrap();
    let f = FunctionFamily::new(vec![
        Vector::from([1.0, 0.0, 0.0]),
        Vector::from([0.0, 1.0, 0.0]),
    ])
    .unwrap();
    let rep =
        center_set(&CenterProblem::unit_ball(&y, f, tol()).unwrap()).map_err(|e| e.to_string())?;
    let got: Vec<Vec<f64>> = rep
        .center_polytope
        .vertices(&tol())
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(Vector::into_inner)
        .collect();
    let expected = vec![vec![0.5, 0.5, -0.5], vec![0.5, 0.5, 0.5]];
    if (rep.radius - 0.5).abs() > 1e-6 || got.len() != 2 || hausdorff_sets(&got, &expected) > 1e-6 {
        return Err(format!(
            "worked instance: radius {}, vertices {got:?}",
            rep.radius
        ));
    }
    Ok(format!(
        "50 grid instances, worst grid gap {worst:.4}; worked instance vertices match"
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let d = draw(&mut rng, 2);
        let lambda = rng.gen_range(0.25..4.0);
        let delta = rng.gen_range(0.01..0.3);
        let scaled: Vec<Vec<f64>> = d
            .family
            .iter()
            .map(|f| f.iter().map(|x| x / lambda).collect())
            .collect();
        let fam_scaled =
            FunctionFamily::new(scaled.iter().cloned().map(Vector::new).collect()).unwrap();
        let r1 = solve_radius(&fam_scaled, &ball_polytope(&d.y, 1.0).unwrap(), &tol())
            .map_err(|e| e.to_string())?
            .0;
        let r2 = solve_radius(&d.family(), &ball_polytope(&d.y, lambda).unwrap(), &tol())
            .map_err(|e| e.to_string())?
            .0;
        let mut gap = (lambda * r1 - r2).abs();
        for extra in [0.0, delta] {
            let left: Vec<Vec<f64>> =
                oracle_vertices(&slab_in_ball(&d.y, &scaled, 1.0, r1 + extra / lambda))?
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| x * lambda).collect())
                    .collect();
            let right = oracle_vertices(&slab_in_ball(&d.y, &d.family, lambda, r2 + extra))?;
            gap = gap.max(hausdorff_sets(&left, &right));
        }

        // above the threshold tau the ball constraint is inactive
        let big = 20.0 * (1.0 + d.family().max_norm());
        let ry = solve_radius(
            &d.family(),
            &slab_in_ball(&d.y, &d.family, big, 1e6),
            &tol(),
        )
        .map_err(|e| e.to_string())?
        .0;
        let tau = d.family().max_norm() + ry;
        let rt = solve_radius(
            &d.family(),
            &ball_polytope(&d.y, tau + 1.0).unwrap(),
            &tol(),
        )
        .map_err(|e| e.to_string())?
        .0;
        let a = oracle_vertices(&slab_in_ball(&d.y, &d.family, big, ry))?;
        let b = oracle_vertices(&slab_in_ball(&d.y, &d.family, tau + 1.0, rt))?;
        gap = gap.max((ry - rt).abs()).max(hausdorff_sets(&a, &b));

        if gap > 1e-6 {
            return Err(format!("trial {trial}: lambda {lambda}, gap {gap:.3e}"));
        }
        worst = worst.max(gap);
    }
    Ok(format!(
        "100 draws, worst scaling or threshold gap {worst:.2e}"
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst_ratio = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let d = draw(&mut rng, 2);
        let fam = d.family();
        let p = CenterProblem::unit_ball(&d.y, fam.clone(), tol()).unwrap();
        let rep = center_set(&p).map_err(|e| e.to_string())?;
        let r = rep.radius;
        if r <= 1e-3 {
            continue;
        }
        let gamma = rng.gen_range(0.05..0.5);
        let eps = rng.gen_range(0.05..0.3);
        let delta = 0.9 * lemma_bound(r, gamma, eps);
        let target = slab_in_ball(&d.y, &d.family, 1.0, r + gamma);
        let mut far = (0.0, Vec::new());
        for v in oracle_vertices(&slab_in_ball(&d.y, &d.family, 1.0, r + gamma + delta))? {
            let dist = distance_to_polytope(&Vector::new(v.clone()), &target, &tol())
                .map_err(|e| e.to_string())?
                .0;
            if dist >= far.0 {
                far = (dist, v);
            }
        }
        if far.0 > eps + 1e-6 {
            return Err(format!(
                "draw {done}: near set reaches {:.6} beyond eps {eps:.6}",
                far.0
            ));
        }
        worst_ratio = worst_ratio.max(far.0 / eps);

        let v = Vector::new(far.1.clone());
        let moved = perturb_toward_center(
            &v,
            &rep.representative,
            &fam,
            &p.constraint,
            gamma,
            delta,
            eps,
            &tol(),
        )
        .map_err(|e| format!("draw {done}: {e}"))?;
        let r_after = radius_of(moved.point.as_slice(), &d.family);
        let shift = sup_dist(moved.point.as_slice(), &far.1);
        if r_after > r + gamma + 1e-9 || shift > eps + 1e-9 {
            return Err(format!(
                "draw {done}: perturbed radius {r_after} vs {}, shift {shift} vs {eps}",
                r + gamma
            ));
        }
        done += 1;
    }
    Ok(format!(
        "100 draws, worst distance/eps ratio {worst_ratio:.3}; perturbations certified"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst = f64::NEG_INFINITY;
    for trial in 0..200 {
        let d = draw(&mut rng, 2);
        let other = draw_family(&mut rng, d.n);
        let h = hausdorff_sets(&d.family, &other);
        let x: Vec<f64> = (0..d.n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let point_gap = (radius_of(&x, &d.family) - radius_of(&x, &other)).abs();
        let lambda = rng.gen_range(0.5..2.0);
        let v = ball_polytope(&d.y, lambda).unwrap();
        let fam2 = FunctionFamily::new(other.iter().cloned().map(Vector::new).collect()).unwrap();
        let r1 = solve_radius(&d.family(), &v, &tol())
            .map_err(|e| e.to_string())?
            .0;
        let r2 = solve_radius(&fam2, &v, &tol())
            .map_err(|e| e.to_string())?
            .0;
        let margin = point_gap.max((r1 - r2).abs()) - h;
        if margin > 1e-9 {
            return Err(format!(
                "trial {trial}: gap exceeds Hausdorff distance {h} by {margin:.3e}"
            ));
        }
        worst = worst.max(margin);
    }
    Ok(format!(
        "200 draws, largest gap minus Hausdorff distance {worst:.2e}"
    ))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut worst = f64::NEG_INFINITY;
    for (file, inst) in center_instances() {
        let c =
            construct_center(&inst.family, &inst.y, &tol()).map_err(|e| format!("{file}: {e}"))?;
        let h = c.h.as_slice();
        let lp = solve_radius(&inst.family, &ball_polytope(&inst.y, 1.0).unwrap(), &tol())
            .map_err(|e| format!("{file}: {e}"))?
            .0;
        let excess = radius_of(h, &members(&inst.family)) - lp;
        let res = residual(&inst.y, h);
        let norm = h.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if res > 1e-9 || norm > 1.0 + 1e-9 || excess > 1e-8 {
            return Err(format!(
                "{file}: residual {res:.2e}, norm {norm}, excess {excess:.2e}"
            ));
        }
        worst = worst.max(excess);
        count += 1;
    }
    Ok(format!(
        "{count} corpus instances, worst r(h, F) - R {worst:.2e}"
    ))
}

fn criterion_6() -> Outcome {
    let mut trials = 0;
    let mut worst_dist = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for (file, inst) in center_instances() {
        let fam = members(&inst.family);
        let p = CenterProblem::unit_ball(&inst.y, inst.family.clone(), tol()).unwrap();
        let r = center_set(&p).map_err(|e| format!("{file}: {e}"))?.radius;
        let cent = slab_in_ball(&inst.y, &fam, 1.0, r);
        for eps in [0.2, 0.1, 0.05] {
            let slack = admissible_slack(&inst.family, &inst.y, eps, &tol())
                .map_err(|e| format!("{file}: {e}"))?;
            let verts = oracle_vertices(&slab_in_ball(&inst.y, &fam, 1.0, r + slack.delta))?;
            for k in 0..20 {
                let g: Vec<f64> = if k % 4 == 0 {
                    verts[rng.gen_range(0..verts.len())].clone()
                } else {
                    let w: Vec<f64> = verts.iter().map(|_| rng.gen::<f64>().powi(3)).collect();
                    let total: f64 = w.iter().sum();
                    (0..inst.dim())
                        .map(|i| verts.iter().zip(&w).map(|(v, wi)| v[i] * wi / total).sum())
                        .collect()
                };
                let out = repair_near_center(
                    &RepairInput {
                        g: Vector::new(g.clone()),
                        eps,
                        delta: slack.delta,
                    },
                    &inst.family,
                    &inst.y,
                    &tol(),
                )
                .map_err(|e| format!("{file}, eps {eps}: {e}"))?;
                let h2 = out.h2.as_slice();
                let dist = distance_to_polytope(&out.h2, &cent, &tol())
                    .map_err(|e| e.to_string())?
                    .0;
                let excess = radius_of(h2, &fam) - r;
                let shift = sup_dist(&g, h2);
                if dist > 1e-7
                    || excess > 1e-7
                    || residual(&inst.y, h2) > 1e-7
                    || shift > eps + 1e-9
                {
                    return Err(format!(
                        "{file}, eps {eps}: distance {dist:.2e}, excess {excess:.2e}, shift {shift} from {g:?}"
                    ));
                }
                worst_dist = worst_dist.max(dist);
                trials += 1;
            }
        }
    }
    Ok(format!(
        "{trials} repairs, worst distance to the center set {worst_dist:.2e}"
    ))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    let mut simplex = 0;
    let mut smallest = f64::INFINITY;
    for (file, inst) in center_instances() {
        let fam = members(&inst.family);
        let mut modes = vec![ConstraintSpec::Ball, ConstraintSpec::Subspace];
        if !modes.contains(&inst.constraint) {
            modes.push(inst.constraint);
        }
        for mode in modes {
            let p = inst.problem_with(mode, tol()).map_err(|e| e.to_string())?;
            let rep = center_set(&p).map_err(|e| format!("{file}: {e}"))?;
            for eps in [0.2, 0.1, 0.05] {
                let m = p1_modulus(&p, eps, 1.0).map_err(|e| format!("{file}: {e}"))?;
                if m.delta.is_nan() || m.delta <= 0.0 {
                    return Err(format!("{file} ({mode:?}), eps {eps}: modulus {}", m.delta));
                }
                // every vertex of the near set at delta* must be within eps
                let mut near = p.constraint.clone();
                let slab = slab_in_ball(
                    &SubspaceSpec::whole(inst.dim()),
                    &fam,
                    1e6,
                    rep.radius + m.delta,
                );
                near = near.intersect(&slab).map_err(|e| e.to_string())?;
                for v in near.vertices(&tol()).map_err(|e| e.to_string())? {
                    let d = distance_to_polytope(&v, &rep.center_polytope, &tol())
                        .map_err(|e| e.to_string())?
                        .0;
                    if d > eps + 1e-7 {
                        return Err(format!(
                            "{file} ({mode:?}), eps {eps}: vertex at distance {d} for delta {}",
                            m.delta
                        ));
                    }
                }
                smallest = smallest.min(m.delta);
                checked += 1;
            }
        }
        if inst.simplex {
            simplex += 1;
        }
    }
    if simplex == 0 {
        return Err("corpus has no simplex instances".into());
    }
    Ok(format!(
        "{checked} (instance, mode, eps) triples incl. {simplex} simplex instances, smallest delta* {smallest:.3e}"
    ))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for (n, seed) in [(3, 1), (4, 2), (5, 3)] {
        let m = build_model(n, seed).map_err(|e| format!("N = {n}: {e}"))?;
        if !(m.alpha > 0.75 && m.alpha < 1.0) || m.certificates.iter().any(|c| !c.passed) {
            return Err(format!("N = {n}: alpha {} or certificate failed", m.alpha));
        }
        for g in &m.generators {
            let v = m.gauge_norm(g).map_err(|e| e.to_string())?;
            if v > 1.0 + 1e-7 {
                return Err(format!("N = {n}: generator with gauge {v}"));
            }
        }
        let norm = gauge_checks(&m, 10, seed, 1e-7).map_err(|e| e.to_string())?;
        if !norm.passed {
            return Err(format!("N = {n}: gauge checks {norm:?}"));
        }
        let (proj, dist) = projection_of_x0(&m).map_err(|e| e.to_string())?;
        if proj > 1e-6 || dist > 1e-7 {
            return Err(format!(
                "N = {n}: projection gap {proj:.2e}, distance gap {dist:.2e}"
            ));
        }
        let hb = half_ball_check(&m, 20, &[0.0, 0.05, 0.1, 0.2], seed, 1e-7)
            .map_err(|e| e.to_string())?;
        if !hb.passed {
            return Err(format!("N = {n}: projection identity fails"));
        }
        let mut zero = GarkaviParams::new(n, seed);
        zero.theta = 0.0;
        match build_with(&zero) {
            Err(Error::Certificate(msg)) if msg.contains("disjointness") => {}
            other => {
                return Err(format!(
                    "N = {n}: zero margin build gave {:?}",
                    other.map(|m| m.alpha)
                ))
            }
        }
        notes.push(format!("N={n} alpha {:.4}", m.alpha));
    }
    Ok(notes.join(", "))
}

fn run_corpus_binary(out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_supcenter"))
        .args([
            "corpus",
            corpus_dir().to_str().unwrap(),
            "--json",
            out.to_str().unwrap(),
        ])
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("corpus run exited with {:?}", status.status.code()));
    }
    std::fs::read(out).map_err(|e| e.to_string())
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = run_corpus_binary(&dir.path().join("a.json"))?;
    let b = run_corpus_binary(&dir.path().join("b.json"))?;
    if a != b {
        return Err("two corpus runs produced different JSON".into());
    }
    Ok(format!(
        "two corpus runs produced identical JSON ({} bytes)",
        a.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("radius matches grid oracle", criterion_1),
        ("scaling identity and threshold equality", criterion_2),
        ("near sets stay within eps; perturbation", criterion_3),
        ("radius is 1-Lipschitz in the family", criterion_4),
        ("clamped center is optimal", criterion_5),
        ("repaired near-centers are centers", criterion_6),
        ("positive modulus in every mode", criterion_7),
        ("renormed space certificates", criterion_8),
        ("corpus runs are reproducible", criterion_9),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!(
                "criterion {} PASS {name}: {msg} [{:.1}s]",
                i + 1,
                t.elapsed().as_secs_f64()
            ),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {} FAIL {name}: {msg} [{:.1}s]",
                    i + 1,
                    t.elapsed().as_secs_f64()
                );
            }
        }
    }
    println!(
        "acceptance: {}/9 criteria pass in {:.1}s",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
