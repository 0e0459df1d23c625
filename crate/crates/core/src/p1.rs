//! Per-instance certificates that delta-near restricted centers stay close
//! to true restricted centers.
//!
//! The distance to the center set is convex, so over the polytope of
//! delta-near centers it peaks at a vertex. Every bound here is therefore an
//! exact vertex maximum rather than a sample.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centers::{center_set, near_center_set, restricted_radius, CenterProblem};
use crate::constraints::Polytope;
use crate::error::{Error, Result};
use crate::lp::distance_to_polytope;
use crate::space::{FunctionFamily, Vector};
use crate::tol::Tolerances;

/// Relative bisection resolution of the modulus search.
pub const MODULUS_RESOLUTION: f64 = 1e-4;

/// Largest distance from a vertex of `from` to `to`, with the vertex.
fn vertex_gap(from: &Polytope, to: &Polytope, tol: &Tolerances) -> Result<(f64, Vector)> {
    let mut best: Option<(f64, Vector)> = None;
    for v in from.vertices(tol)? {
        let (d, _) = distance_to_polytope(&v, to, tol)?;
        if best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, v));
        }
    }
    best.ok_or(Error::Infeasible)
}

/// `max { d(v, cent_V(F)) : v in cent_V(F, delta) }` with a maximizing vertex.
pub fn worst_near_center_distance(p: &CenterProblem, delta: f64) -> Result<(f64, Vector)> {
    let cent = center_set(p)?.center_polytope;
    worst_against(p, &cent, delta)
}

fn worst_against(p: &CenterProblem, cent: &Polytope, delta: f64) -> Result<(f64, Vector)> {
    let near = near_center_set(p, delta)?;
    vertex_gap(&near, cent, &p.tol)
}

/// Worst distance from `cent_V(F, gamma + delta)` to `cent_V(F, gamma)`.
pub fn relaxed_gap(p: &CenterProblem, gamma: f64, delta: f64) -> Result<(f64, Vector)> {
    let outer = near_center_set(p, gamma + delta)?;
    let inner = near_center_set(p, gamma)?;
    vertex_gap(&outer, &inner, &p.tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModulusProbe {
    pub delta: f64,
    pub worst: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModulusEntry {
    pub eps: f64,
    /// Estimated modulus; zero only when every probe failed.
    pub delta: f64,
    /// Probes in increasing `delta`.
    pub probes: Vec<ModulusProbe>,
    /// A vertex of `cent_V(F, delta)` realizing the worst distance there.
    pub witness: Option<Vector>,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModulusReport {
    pub radius: f64,
    pub delta_max: f64,
    pub entries: Vec<ModulusEntry>,
}

impl ModulusReport {
    pub fn all_positive(&self) -> bool {
        self.entries.iter().all(|e| e.delta > 0.0)
    }
}

/// Largest `delta` in `(0, delta_max]`, to bisection resolution, whose
/// near-center set lies within `eps` of the center set.
pub fn p1_modulus(p: &CenterProblem, eps: f64, delta_max: f64) -> Result<ModulusEntry> {
    for (name, value) in [("eps", eps), ("delta_max", delta_max)] {
        if !(value > 0.0) {
            return Err(Error::InvalidParameter { name, value });
        }
    }
    let cent = center_set(p)?.center_polytope;
    let accept = eps + p.tol.abs;
    let mut probes = Vec::new();
    let (w, v) = worst_against(p, &cent, delta_max)?;
    probes.push(ModulusProbe {
        delta: delta_max,
        worst: w,
    });
    let mut witness = None;
    let mut lo = 0.0;
    if w <= accept {
        lo = delta_max;
        witness = Some(v);
    } else {
        let mut hi = delta_max;
        let res = MODULUS_RESOLUTION * delta_max;
        while hi - lo > res {
            let mid = 0.5 * (lo + hi);
            let (w, v) = worst_against(p, &cent, mid)?;
            probes.push(ModulusProbe {
                delta: mid,
                worst: w,
            });
            if w <= accept {
                lo = mid;
                witness = Some(v);
            } else {
                hi = mid;
            }
        }
    }
    probes.sort_by(|a, b| a.delta.total_cmp(&b.delta));
    let diagnostic = (lo == 0.0).then(|| {
        format!(
            "no probed delta down to {} keeps the near-center set within {eps}; \
             a finite-dimensional instance should always admit one, so suspect the solver",
            probes[0].delta
        )
    });
    Ok(ModulusEntry {
        eps,
        delta: lo,
        probes,
        witness,
        diagnostic,
    })
}

/// [`p1_modulus`] over a grid of `eps`, sorted increasingly.
pub fn modulus_report(
    p: &CenterProblem,
    eps_grid: &[f64],
    delta_max: f64,
) -> Result<ModulusReport> {
    let mut grid = eps_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let entries = grid
        .iter()
        .map(|&e| p1_modulus(p, e, delta_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModulusReport {
        radius: restricted_radius(p)?,
        delta_max,
        entries,
    })
}

/// Cross-check of [`worst_near_center_distance`] by random convex
/// combinations of the near-center vertices. Never exceeds the vertex value.
pub fn sampled_worst_distance(
    p: &CenterProblem,
    delta: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let verts = near_center_set(p, delta)?.vertices(&p.tol)?;
    let cent = center_set(p)?.center_polytope;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let w: Vec<f64> = verts
            .iter()
            .map(|_| {
                let u: f64 = rng.gen();
                u * u * u * u
            })
            .collect();
        let total: f64 = w.iter().sum();
        let mut x = Vector::zeros(p.dim());
        for (v, wi) in verts.iter().zip(&w) {
            x = x.add(&v.scale(wi / total));
        }
        worst = worst.max(distance_to_polytope(&x, &cent, &p.tol)?.0);
    }
    Ok(worst)
}

/// How the sequence `v_n` with `r(v_n, F) <= R + 1/n` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceStrategy {
    /// Optimum of a seeded random linear objective over `cent_V(F, 1/n)`.
    Random,
    /// A point of the center set.
    Center,
    /// The worst vertex of `cent_V(F, 1/n)`.
    Witness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceStep {
    pub n: usize,
    pub delta: f64,
    pub radius_excess: f64,
    pub distance: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceReport {
    pub strategy: SequenceStrategy,
    pub steps: Vec<SequenceStep>,
    pub bounds_nonincreasing: bool,
    pub passed: bool,
}

/// Builds `v_1, ..., v_trials` with `r(v_n, F) <= R + 1/n` and checks
/// `d(v_n, cent) <= worst_near_center_distance(1/n)`, with the bounds
/// nonincreasing in `n`.
pub fn sequence_criterion_check(
    p: &CenterProblem,
    trials: usize,
    seed: u64,
    strategy: SequenceStrategy,
) -> Result<SequenceReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: 0.0,
        });
    }
    let rep = center_set(p)?;
    let cent = rep.center_polytope;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = Vec::with_capacity(trials);
    for n in 1..=trials {
        let delta = 1.0 / n as f64;
        let (bound, witness) = worst_against(p, &cent, delta)?;
        let v = match strategy {
            SequenceStrategy::Center => rep.representative.clone(),
            SequenceStrategy::Witness => witness,
            SequenceStrategy::Random => {
                let c: Vec<f64> = (0..p.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                near_center_set(p, delta)?.optimize(&c, true, &p.tol)?.1
            }
        };
        let r = crate::space::farthest_radius(&v, &p.family)?;
        let (distance, _) = distance_to_polytope(&v, &cent, &p.tol)?;
        steps.push(SequenceStep {
            n,
            delta,
            radius_excess: r - rep.radius,
            distance,
            bound,
        });
    }
    let slack = 1e-9;
    let bounds_nonincreasing = steps.windows(2).all(|w| w[1].bound <= w[0].bound + slack);
    let passed = bounds_nonincreasing
        && steps
            .iter()
            .all(|s| s.distance <= s.bound + slack && s.radius_excess <= s.delta + slack);
    Ok(SequenceReport {
        strategy,
        steps,
        bounds_nonincreasing,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RcpReport {
    pub radii: Vec<f64>,
    pub passed: bool,
}

/// Nonemptiness of `cent_V(F)` for every family. An infeasible `V` is an
/// error, not a failed check.
pub fn rcp_check(v: &Polytope, families: &[FunctionFamily], tol: &Tolerances) -> Result<RcpReport> {
    if !v.is_feasible(tol)? {
        return Err(Error::Infeasible);
    }
    let mut radii = Vec::with_capacity(families.len());
    for (i, f) in families.iter().enumerate() {
        let p = CenterProblem::new(f.clone(), v.clone(), *tol)?;
        let rep =
            center_set(&p).map_err(|e| Error::NumericalFailure(format!("family {i}: {e}")))?;
        if !rep.center_polytope.contains(&rep.representative, 1e-7) {
            return Err(Error::Certificate(format!(
                "family {i}: representative outside center set"
            )));
        }
        radii.push(rep.radius);
    }
    Ok(RcpReport {
        radii,
        passed: true,
    })
}
