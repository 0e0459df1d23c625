use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supcenter_core::centers::{center_set, near_center_set, solve_radius};
use supcenter_core::constructive::{
    admissible_slack, construct_center, repair_near_center, simplex_mode, subcase, RepairInput,
    Subcase, SupportLayout,
};
use supcenter_core::garkavi::{
    build_with, covariance_gap, gauge_checks, half_ball_check, projection_of_x0, trend_report,
    GarkaviParams,
};
use supcenter_core::lp::distance_to_polytope;
use supcenter_core::p1::{p1_modulus, worst_near_center_distance};
use supcenter_core::space::farthest_radius;
use supcenter_core::{CenterProblem, Error, Tolerances, Vector};

use crate::error::CliError;
use crate::instance::{CenterInstance, ConstraintSpec, GarkaviInstance};
use crate::report::*;

pub const DEFAULT_EPS: [f64; 3] = [0.2, 0.1, 0.05];
pub const DEFAULT_DELTA: f64 = 0.1;
pub const DEFAULT_DELTA_MAX: f64 = 1.0;
pub const DEFAULT_SEED: u64 = 7;
pub const HALF_BALL_EPS: [f64; 4] = [0.0, 0.05, 0.1, 0.2];

/// Flags that override instance options.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub tol: Option<f64>,
    pub eps: Option<Vec<f64>>,
    pub delta: Option<f64>,
    pub delta_max: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

impl Settings {
    fn eps(&self, inst: &CenterInstance) -> Vec<f64> {
        self.eps
            .clone()
            .or_else(|| inst.options.eps.clone())
            .unwrap_or_else(|| DEFAULT_EPS.to_vec())
    }

    fn seed(&self, inst_seed: Option<u64>) -> u64 {
        self.seed.or(inst_seed).unwrap_or(DEFAULT_SEED)
    }
}

pub fn constraint_name(c: ConstraintSpec) -> String {
    match c {
        ConstraintSpec::Subspace => "subspace".into(),
        ConstraintSpec::Ball => "ball".into(),
        ConstraintSpec::ScaledBall { lambda } => format!("scaled_ball({lambda})"),
    }
}

fn coords(v: &Vector) -> Vec<f64> {
    v.as_slice().to_vec()
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

pub fn subcase_name(s: Subcase) -> String {
    match s {
        Subcase::Attained => "attained".into(),
        Subcase::Gap { .. } => "gap".into(),
    }
}

pub fn radius(inst: &CenterInstance, s: &Settings) -> Result<Report, CliError> {
    let p = inst.problem(inst.tolerances(s.tol))?;
    let (r, rep) = solve_radius(&p.family, &p.constraint, &p.tol)?;
    let summary = vec![format!(
        "radius {r:.12} ({})",
        constraint_name(inst.constraint)
    )];
    Ok(Report::new(
        "radius",
        Some(&inst.name),
        Status::Pass,
        summary,
        Body::Radius(RadiusBody {
            constraint: constraint_name(inst.constraint),
            radius: r,
            representative: coords(&rep),
        }),
    ))
}

/// The clamping construction for `V = B_Y`, with its certificates as numbers.
pub fn constructive_body(
    inst: &CenterInstance,
    tol: &Tolerances,
) -> Result<ConstructiveBody, CliError> {
    let c = construct_center(&inst.family, &inst.y, tol)?;
    let excess = farthest_radius(&c.h, &inst.family)? - c.radius;
    Ok(ConstructiveBody {
        layout: match c.reduction.layout {
            SupportLayout::Disjoint => "disjoint".into(),
            SupportLayout::Overlapping => "overlapping".into(),
        },
        subcase: subcase_name(subcase(c.radius, c.reduction.alpha)),
        alpha: c.reduction.alpha,
        radius: c.radius,
        excess,
        residual: inst.y.residual(&c.h)?,
        norm: c.h.sup_norm(),
        h: coords(&c.h),
    })
}

pub fn constructive_ok(c: &ConstructiveBody) -> bool {
    c.excess <= 1e-8 && c.residual <= 1e-9 && c.norm <= 1.0 + 1e-9 && c.alpha <= c.radius + 1e-9
}

fn centroid(vs: &[Vector], n: usize) -> Vector {
    let mut c = Vector::zeros(n);
    for v in vs {
        c = c.add(v);
    }
    c.scale(1.0 / vs.len().max(1) as f64)
}

pub fn center(inst: &CenterInstance, s: &Settings) -> Result<Report, CliError> {
    let tol = inst.tolerances(s.tol);
    let p = inst.problem(tol)?;
    let (rep, interpretation) = if inst.simplex {
        (simplex_mode(inst.dim(), &p)?.report, "affine_on_simplex")
    } else {
        (center_set(&p)?, "point_values")
    };
    let verts = rep.center_polytope.vertices(&tol)?;
    // the vertex centroid is a deterministic point of the center set
    let representative = centroid(&verts, inst.dim());
    let inside = distance_to_polytope(&representative, &rep.center_polytope, &tol)?.0 <= 1e-7;
    let constructive = constructive_body(inst, &tol)?;
    let ok = inside && constructive_ok(&constructive);
    let summary = vec![
        format!(
            "radius {:.12} ({})",
            rep.radius,
            constraint_name(inst.constraint)
        ),
        format!("representative {}", fmt_vec(representative.as_slice())),
        format!("center set has {} vertices", verts.len()),
        format!(
            "clamped center for B_Y: {} with r(h, F) - R = {:.3e} ({} supports, {} subcase)",
            fmt_vec(&constructive.h),
            constructive.excess,
            constructive.layout,
            constructive.subcase
        ),
    ];
    Ok(Report::new(
        "center",
        Some(&inst.name),
        Status::from_bool(ok),
        summary,
        Body::Center(CenterBody {
            constraint: constraint_name(inst.constraint),
            interpretation: interpretation.into(),
            radius: rep.radius,
            representative: coords(&representative),
            vertices: verts.iter().map(coords).collect(),
            constructive: Some(constructive),
        }),
    ))
}

pub fn near_center(inst: &CenterInstance, s: &Settings) -> Result<Report, CliError> {
    let p = inst.problem(inst.tolerances(s.tol))?;
    let delta = s.delta.or(inst.options.delta).unwrap_or(DEFAULT_DELTA);
    if !(delta >= 0.0) {
        return Err(CliError::Input(format!(
            "delta = {delta} must be nonnegative"
        )));
    }
    let r = solve_radius(&p.family, &p.constraint, &p.tol)?.0;
    let verts = near_center_set(&p, delta)?.vertices(&p.tol)?;
    let (worst, witness) = worst_near_center_distance(&p, delta)?;
    let summary = vec![
        format!("radius {r:.12}, delta {delta}"),
        format!("near-center set has {} vertices", verts.len()),
        format!(
            "worst distance to the center set {worst:.12} at {}",
            fmt_vec(witness.as_slice())
        ),
    ];
    Ok(Report::new(
        "near-center",
        Some(&inst.name),
        Status::Pass,
        summary,
        Body::NearCenter(NearCenterBody {
            constraint: constraint_name(inst.constraint),
            delta,
            radius: r,
            vertices: verts.iter().map(coords).collect(),
            worst_distance: worst,
            witness: coords(&witness),
        }),
    ))
}

/// Random points of `cent_{B_Y}(F, delta)`: every fourth is a vertex, the
/// rest are skewed convex combinations of vertices.
pub fn sample_near_centers(
    p: &CenterProblem,
    delta: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<Vector>, CliError> {
    let verts = near_center_set(p, delta)?.vertices(&p.tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i % 4 == 0 {
            out.push(verts[rng.gen_range(0..verts.len())].clone());
            continue;
        }
        let w: Vec<f64> = verts
            .iter()
            .map(|_| {
                let u: f64 = rng.gen();
                u * u * u * u
            })
            .collect();
        let total: f64 = w.iter().sum();
        let mut g = Vector::zeros(p.dim());
        for (v, wi) in verts.iter().zip(&w) {
            g = g.add(&v.scale(wi / total));
        }
        out.push(g);
    }
    Ok(out)
}

fn require_ball(inst: &CenterInstance, what: &str) -> Result<(), CliError> {
    if inst.constraint != ConstraintSpec::Ball {
        return Err(CliError::Input(format!(
            "{what} works on V = B_Y; instance `{}` uses {}",
            inst.name,
            constraint_name(inst.constraint)
        )));
    }
    Ok(())
}

pub fn repair(inst: &CenterInstance, s: &Settings) -> Result<Report, CliError> {
    require_ball(inst, "repair")?;
    let tol = inst.tolerances(s.tol);
    let eps = s.eps(inst)[0];
    let p = inst.problem(tol)?;
    let delta = match s.delta.or(inst.options.delta) {
        Some(d) => d,
        None => admissible_slack(&inst.family, &inst.y, eps, &tol)?.delta,
    };
    let g = match &inst.options.g {
        Some(g) => Vector::new(g.clone()),
        None => sample_near_centers(&p, delta, 2, s.seed(inst.options.seed))?.remove(1),
    };
    let out = repair_near_center(
        &RepairInput {
            g: g.clone(),
            eps,
            delta,
        },
        &inst.family,
        &inst.y,
        &tol,
    )
    .map_err(|e| match e {
        Error::Precondition(m) => CliError::Input(m),
        other => other.into(),
    })?;
    let cent = center_set(&p)?.center_polytope;
    let dist = distance_to_polytope(&out.h2, &cent, &tol)?.0;
    let ok = dist <= 1e-7 && out.displacement <= eps + 1e-9;
    let summary = vec![
        format!(
            "eps {eps}, delta {delta:.6e}, {} subcase",
            subcase_name(out.subcase)
        ),
        format!("g  {}", fmt_vec(g.as_slice())),
        format!("h2 {}", fmt_vec(out.h2.as_slice())),
        format!(
            "||g - h2|| = {:.12}, distance of h2 to the center set {dist:.3e}",
            out.displacement
        ),
    ];
    Ok(Report::new(
        "repair",
        Some(&inst.name),
        Status::from_bool(ok),
        summary,
        Body::Repair(RepairBody {
            eps,
            delta,
            subcase: subcase_name(out.subcase),
            alpha: out.alpha,
            radius: out.radius,
            g: coords(&g),
            z: coords(&out.z),
            g_prime: coords(&out.g_prime),
            f1: coords(&out.f1),
            f2: coords(&out.f2),
            h1: coords(&out.h1),
            h2: coords(&out.h2),
            displacement: out.displacement,
            distance_to_center: dist,
        }),
    ))
}

pub fn modulus_sweep(
    p: &CenterProblem,
    eps: &[f64],
    delta_max: f64,
) -> Result<Vec<ModulusEntryBody>, CliError> {
    eps.iter()
        .map(|&e| {
            let m = p1_modulus(p, e, delta_max)?;
            Ok(ModulusEntryBody {
                eps: e,
                delta: m.delta,
                probes: m.probes.len(),
                witness: m.witness.as_ref().map(coords),
                diagnostic: m.diagnostic,
            })
        })
        .collect()
}

pub fn p1_modulus_cmd(inst: &CenterInstance, s: &Settings) -> Result<Report, CliError> {
    let p = inst.problem(inst.tolerances(s.tol))?;
    let eps = s.eps(inst);
    let delta_max = s
        .delta_max
        .or(inst.options.delta_max)
        .unwrap_or(DEFAULT_DELTA_MAX);
    if !(delta_max > 0.0) {
        return Err(CliError::Input(format!(
            "delta_max = {delta_max} must be positive"
        )));
    }
    let entries = modulus_sweep(&p, &eps, delta_max)?;
    let r = solve_radius(&p.family, &p.constraint, &p.tol)?.0;
    let mut summary = vec![format!("radius {r:.12}, delta_max {delta_max}")];
    for e in &entries {
        summary.push(format!("eps {} -> delta* {:.6e}", e.eps, e.delta));
        if let Some(d) = &e.diagnostic {
            summary.push(format!("  diagnostic: {d}"));
        }
    }
    let ok = entries.iter().all(|e| e.delta > 0.0);
    Ok(Report::new(
        "p1-modulus",
        Some(&inst.name),
        Status::from_bool(ok),
        summary,
        Body::Modulus(ModulusBody {
            constraint: constraint_name(inst.constraint),
            radius: r,
            delta_max,
            entries,
        }),
    ))
}

/// Full Garkavi run: build, norm checks, projections, the two-sided
/// projection identity, covariance, the zero-margin failure and the trend.
pub fn garkavi_body(
    n: usize,
    seed: u64,
    theta: Option<f64>,
    samples: usize,
) -> Result<(GarkaviBody, bool), CliError> {
    let mut params = GarkaviParams::new(n, seed);
    if let Some(t) = theta {
        params.theta = t;
    }
    let m = build_with(&params)?;
    let norm = gauge_checks(&m, 10, seed, 1e-7)?;
    let (projection_gap, distance_gap) = projection_of_x0(&m)?;
    let hb = half_ball_check(&m, samples, &HALF_BALL_EPS, seed, 1e-7)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = Vector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
    let cov = covariance_gap(&m, &m.project_to_y(&r)?, -1.5, 0.1)?;
    let mut zero = params.clone();
    zero.theta = 0.0;
    let zero_margin_fails = match build_with(&zero) {
        Err(Error::Certificate(msg)) => msg.contains("disjointness"),
        _ => false,
    };
    let trend = trend_report(n, seed)?
        .into_iter()
        .map(|t| TrendBody {
            n: t.n,
            alpha: t.alpha,
            radius: t.radius,
            phi_at_center: t.phi_at_center,
        })
        .collect();
    let worst_outward = hb
        .projections
        .iter()
        .map(|c| c.outward)
        .fold(f64::NEG_INFINITY, f64::max);
    let worst_inward = hb.projections.iter().map(|c| c.inward).fold(0.0, f64::max);
    let worst_replay = hb
        .replays
        .iter()
        .map(|c| (c.distance.max(c.witness)) - (c.eta - 1.0))
        .fold(f64::NEG_INFINITY, f64::max);
    let certs_ok = m.certificates.iter().all(|c| c.passed);
    let ok = certs_ok
        && norm.passed
        && projection_gap <= 1e-6
        && distance_gap <= 1e-7
        && hb.passed
        && cov <= 1e-6
        && zero_margin_fails;
    let body = GarkaviBody {
        n,
        seed: m.seed,
        rejected_seeds: m.rejected_seeds.iter().map(|(s, _)| *s).collect(),
        alpha: m.alpha,
        gamma: m.gamma,
        theta: m.theta,
        facets: m.facets.len(),
        c1: m.c1,
        c2: m.c2,
        certificates: m
            .certificates
            .iter()
            .map(|c| CertificateBody {
                name: c.name.into(),
                value: c.value,
                bound: c.bound,
                passed: c.passed,
            })
            .collect(),
        homogeneity: norm.homogeneity,
        symmetry: norm.symmetry,
        triangle: norm.triangle,
        route_gap: norm.route_gap,
        projection_gap,
        distance_gap,
        projection_cases: hb.projections.len(),
        worst_outward,
        worst_inward,
        replays: hb.replays.len(),
        worst_replay,
        covariance_gap: cov,
        zero_margin_fails,
        trend,
    };
    Ok((body, ok))
}

pub fn garkavi_summary(b: &GarkaviBody) -> Vec<String> {
    let mut out = vec![
        format!(
            "N = {}, seed {}, alpha {:.6}, gamma {:.6}, theta {}, {} facets",
            b.n, b.seed, b.alpha, b.gamma, b.theta, b.facets
        ),
        format!(
            "norm equivalence {:.6} ||x|| <= gauge(x) <= {:.6} ||x||",
            b.c1, b.c2
        ),
    ];
    for c in &b.certificates {
        out.push(format!(
            "certificate {}: {} ({:.6e} vs {:.6e})",
            c.name,
            if c.passed { "ok" } else { "FAILED" },
            c.value,
            c.bound
        ));
    }
    out.push(format!(
        "gauge defects: homogeneity {:.2e}, symmetry {:.2e}, triangle {:.2e}, routes {:.2e}",
        b.homogeneity, b.symmetry, b.triangle, b.route_gap
    ));
    out.push(format!(
        "P_Y(x0) vs B_gamma: {:.2e}; |d(x0, Y) - 1| = {:.2e}",
        b.projection_gap, b.distance_gap
    ));
    out.push(format!(
        "projection identity on {} cases: outward {:.2e}, inward {:.2e}; {} replays, worst {:.2e}",
        b.projection_cases, b.worst_outward, b.worst_inward, b.replays, b.worst_replay
    ));
    out.push(format!("covariance gap {:.2e}", b.covariance_gap));
    out.push(format!(
        "zero margin build {}",
        if b.zero_margin_fails {
            "fails as expected"
        } else {
            "UNEXPECTEDLY succeeds"
        }
    ));
    for t in &b.trend {
        out.push(format!(
            "trend N = {}: rad_Y({{0, x0 + y0}}) = {:.6}, Phi(center) = {:.6}, alpha = {:.6}",
            t.n, t.radius, t.phi_at_center, t.alpha
        ));
    }
    out
}

pub fn garkavi(
    inst: Option<&GarkaviInstance>,
    n: Option<usize>,
    s: &Settings,
) -> Result<Report, CliError> {
    let (name, n, seed, theta) = match (inst, n) {
        (Some(g), n) => (
            Some(g.name.as_str()),
            n.unwrap_or(g.spec.n),
            s.seed.unwrap_or(g.spec.seed),
            g.spec.theta,
        ),
        (None, Some(n)) => (None, n, s.seed.unwrap_or(DEFAULT_SEED), None),
        (None, None) => {
            return Err(CliError::Input(
                "garkavi needs an instance file or --n".into(),
            ))
        }
    };
    if n < 3 {
        return Err(CliError::Input(format!("n = {n} is below 3")));
    }
    let samples = s.trials.unwrap_or(20);
    let (body, ok) = garkavi_body(n, seed, theta, samples)?;
    Ok(Report::new(
        "garkavi",
        name,
        Status::from_bool(ok),
        garkavi_summary(&body),
        Body::Garkavi(body),
    ))
}
