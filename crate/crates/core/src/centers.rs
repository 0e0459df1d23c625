//! Restricted Chebyshev radius, center set and near-center sets over a
//! polytope `V`, the scaling and threshold identities relating `Y`, `B_Y`
//! and `lambda B_Y`, and the explicit perturbation toward a better center.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::constraints::{ball_polytope, Polytope, SubspaceSpec};
use crate::error::{Error, Result};
use crate::lp::{distance_to_polytope, LinearProgram};
use crate::space::{check_dim, farthest_radius, hausdorff_points, FunctionFamily, Vector};
use crate::tol::Tolerances;

/// Data of a restricted center problem: a finite family and a polyhedral
/// constraint set `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterProblem {
    pub family: FunctionFamily,
    pub constraint: Polytope,
    pub tol: Tolerances,
}

/// Radius, one center and the full center set `S_R(F) ∩ V`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterReport {
    pub radius: f64,
    pub representative: Vector,
    pub center_polytope: Polytope,
}

/// Half-width of the bounding box used for an unbounded subspace: ten times
/// the data magnitude.
pub fn subspace_box_half_width(family: &FunctionFamily) -> f64 {
    10.0 * family.max_norm().max(1.0)
}

impl CenterProblem {
    pub fn new(family: FunctionFamily, constraint: Polytope, tol: Tolerances) -> Result<Self> {
        check_dim(constraint.dim(), family.dim())?;
        Ok(CenterProblem {
            family,
            constraint,
            tol,
        })
    }

    /// `V = B_Y`.
    pub fn unit_ball(y: &SubspaceSpec, family: FunctionFamily, tol: Tolerances) -> Result<Self> {
        Self::scaled_ball(y, family, 1.0, tol)
    }

    /// `V = lambda B_Y`.
    pub fn scaled_ball(
        y: &SubspaceSpec,
        family: FunctionFamily,
        lambda: f64,
        tol: Tolerances,
    ) -> Result<Self> {
        Self::new(family, ball_polytope(y, lambda)?, tol)
    }

    /// `V = Y`, cut by a box of [`subspace_box_half_width`]. The box never
    /// touches a center: every center lies within `2 sup ||f||` of the origin.
    pub fn subspace(y: &SubspaceSpec, family: FunctionFamily, tol: Tolerances) -> Result<Self> {
        let w = subspace_box_half_width(&family);
        Self::new(family, ball_polytope(y, w)?, tol)
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }
}

/// `S_r(F)` as a polytope: `|v_i - f_i| <= r` for every member and point.
pub fn slab_polytope(family: &FunctionFamily, r: f64) -> Polytope {
    let n = family.dim();
    let hi = family.upper_envelope();
    let lo = family.lower_envelope();
    let mut p = Polytope::whole(n);
    // only the envelopes bind: v_i <= min_f f_i + r and v_i >= max_f f_i - r
    for i in 0..n {
        let mut up = vec![0.0; n];
        up[i] = 1.0;
        p.add_le(up, lo[i] + r);
        let mut down = vec![0.0; n];
        down[i] = -1.0;
        p.add_le(down, r - hi[i]);
    }
    p
}

/// Solves `min_{v in V} r(v, F)` as one LP in `(v, t)`.
pub fn solve_radius(
    family: &FunctionFamily,
    v: &Polytope,
    tol: &Tolerances,
) -> Result<(f64, Vector)> {
    check_dim(v.dim(), family.dim())?;
    let n = family.dim();
    let hi = family.upper_envelope();
    let lo = family.lower_envelope();
    let mut lp = LinearProgram::new(n + 1);
    lp.add_polytope(v, 0);
    for i in 0..n {
        // v_i - t <= min f_i  and  -v_i - t <= -max f_i
        let mut up = vec![0.0; n + 1];
        up[i] = 1.0;
        up[n] = -1.0;
        lp.add_le(up, lo[i]);
        let mut down = vec![0.0; n + 1];
        down[i] = -1.0;
        down[n] = -1.0;
        lp.add_le(down, -hi[i]);
    }
    lp.set_bounds(n, Some(0.0), None);
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let (_, x) = lp.minimize(c).solve(tol)?.optimal()?;
    let center = Vector::new(x[..n].to_vec());
    let r = farthest_radius(&center, family)?;
    Ok((r, center))
}

/// `rad_V(F)`.
pub fn restricted_radius(p: &CenterProblem) -> Result<f64> {
    Ok(solve_radius(&p.family, &p.constraint, &p.tol)?.0)
}

/// `cent_V(F)` with its radius and the LP representative.
pub fn center_set(p: &CenterProblem) -> Result<CenterReport> {
    let (radius, representative) = solve_radius(&p.family, &p.constraint, &p.tol)?;
    let center_polytope = p.constraint.intersect(&slab_polytope(&p.family, radius))?;
    Ok(CenterReport {
        radius,
        representative,
        center_polytope,
    })
}

/// `cent_V(F, delta) = S_{R + delta}(F) ∩ V`.
pub fn near_center_set(p: &CenterProblem, delta: f64) -> Result<Polytope> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
        });
    }
    let r = restricted_radius(p)?;
    p.constraint.intersect(&slab_polytope(&p.family, r + delta))
}

/// Checks that the bounding box used for `V = Y` is not binding: the radius
/// with a box twice as large must agree.
pub fn verify_box_nonbinding(
    y: &SubspaceSpec,
    family: &FunctionFamily,
    tol: &Tolerances,
) -> Result<f64> {
    let w = subspace_box_half_width(family);
    let (r1, _) = solve_radius(family, &ball_polytope(y, w)?, tol)?;
    let (r2, _) = solve_radius(family, &ball_polytope(y, 2.0 * w)?, tol)?;
    let gap = (r1 - r2).abs();
    if gap > 1e-7 {
        return Err(Error::Certificate(format!(
            "bounding box binds: radius {r1} with box {w}, {r2} with box {}",
            2.0 * w
        )));
    }
    Ok(gap)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub lambda: f64,
    /// Hausdorff distance between the vertex sets of
    /// `lambda cent_{B_Y}(B / lambda)` and `cent_{lambda B_Y}(B)`.
    pub distance: f64,
    pub delta: f64,
    /// Same for `lambda cent_{B_Y}(B / lambda, delta / lambda)` and
    /// `cent_{lambda B_Y}(B, delta)`.
    pub delta_distance: f64,
    pub passed: bool,
}

/// Scaling identity of restricted centers and near-centers under
/// `V = lambda B_Y`.
pub fn check_scaling_identity(
    y: &SubspaceSpec,
    family: &FunctionFamily,
    lambda: f64,
    delta: f64,
    tol: &Tolerances,
    threshold: f64,
) -> Result<ScalingReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
        });
    }
    let unit = CenterProblem::unit_ball(y, family.scale(1.0 / lambda), *tol)?;
    let big = CenterProblem::scaled_ball(y, family.clone(), lambda, *tol)?;
    let left: Vec<Vector> = center_set(&unit)?
        .center_polytope
        .vertices(tol)?
        .iter()
        .map(|v| v.scale(lambda))
        .collect();
    let right = center_set(&big)?.center_polytope.vertices(tol)?;
    let distance = hausdorff_points(&left, &right);
    let left_d: Vec<Vector> = near_center_set(&unit, delta / lambda)?
        .vertices(tol)?
        .iter()
        .map(|v| v.scale(lambda))
        .collect();
    let right_d = near_center_set(&big, delta)?.vertices(tol)?;
    let delta_distance = hausdorff_points(&left_d, &right_d);
    Ok(ScalingReport {
        lambda,
        distance,
        delta,
        delta_distance,
        passed: distance <= threshold && delta_distance <= threshold,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    /// `sup ||b|| + rad_Y(B)`
    pub tau: f64,
    pub lambda: f64,
    /// Largest distance from a vertex of `cent_Y(B)` to `cent_{lambda B_Y}(B)`.
    pub inclusion_gap: f64,
    /// Largest distance from a vertex of `cent_{lambda B_Y}(B)` to `cent_Y(B)`.
    pub reverse_gap: f64,
    /// `Some(ok)` when `lambda >= tau`.
    pub inclusion: Option<bool>,
    /// `Some(ok)` when `lambda > tau`.
    pub equality: Option<bool>,
}

/// Inclusion `cent_Y(B) ⊆ cent_{lambda B_Y}(B)` for `lambda >= tau` and
/// equality for `lambda > tau`, checked by vertex containment both ways.
pub fn check_threshold_equality(
    y: &SubspaceSpec,
    family: &FunctionFamily,
    lambda: f64,
    tol: &Tolerances,
    threshold: f64,
) -> Result<ThresholdReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
        });
    }
    let sub = CenterProblem::subspace(y, family.clone(), *tol)?;
    let sub_report = center_set(&sub)?;
    let tau = family.max_norm() + sub_report.radius;
    let ball = center_set(&CenterProblem::scaled_ball(
        y,
        family.clone(),
        lambda,
        *tol,
    )?)?;
    let gap = |from: &Polytope, to: &Polytope| -> Result<f64> {
        let mut worst = 0.0f64;
        for v in from.vertices(tol)? {
            worst = worst.max(distance_to_polytope(&v, to, tol)?.0);
        }
        Ok(worst)
    };
    let inclusion_gap = gap(&sub_report.center_polytope, &ball.center_polytope)?;
    let reverse_gap = gap(&ball.center_polytope, &sub_report.center_polytope)?;
    let inclusion = (lambda >= tau).then_some(inclusion_gap <= threshold);
    let equality = (lambda > tau).then_some(inclusion_gap <= threshold && reverse_gap <= threshold);
    Ok(ThresholdReport {
        tau,
        lambda,
        inclusion_gap,
        reverse_gap,
        inclusion,
        equality,
    })
}

/// `min{R, eps gamma / (6R + 4 gamma)}`: any slack strictly below this makes
/// `cent_V(B, gamma + delta)` lie within `eps` of `cent_V(B, gamma)`.
pub fn lemma_delta_bound(radius: f64, gamma: f64, eps: f64) -> f64 {
    radius.min(eps * gamma / (6.0 * radius + 4.0 * gamma))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    pub point: Vector,
    /// Interpolation weight `2 delta / (2 delta + gamma)`.
    pub weight: f64,
    /// `r(point, B)`
    pub radius_after: f64,
    /// `||v - point||`
    pub displacement: f64,
}

/// Moves `v in cent_V(B, gamma + delta)` toward `v2 in cent_V(B, gamma / 2)`
/// by the weight `2 delta / (2 delta + gamma)`, landing in
/// `cent_V(B, gamma)` within `eps` of `v`.
#[allow(clippy::too_many_arguments)]
pub fn perturb_toward_center(
    v: &Vector,
    v2: &Vector,
    family: &FunctionFamily,
    constraint: &Polytope,
    gamma: f64,
    delta: f64,
    eps: f64,
    tol: &Tolerances,
) -> Result<Perturbation> {
    for (name, value) in [("gamma", gamma), ("delta", delta), ("eps", eps)] {
        if !(value > 0.0) {
            return Err(Error::InvalidParameter { name, value });
        }
    }
    check_dim(family.dim(), v.dim())?;
    check_dim(family.dim(), v2.dim())?;
    let (radius, _) = solve_radius(family, constraint, tol)?;
    let bound = lemma_delta_bound(radius, gamma, eps);
    if !(delta < bound) {
        return Err(Error::Precondition(format!(
            "delta = {delta} is not below min(R, eps*gamma/(6R+4gamma)) = {bound} (R = {radius})"
        )));
    }
    let slack = tol.abs * (1.0 + radius);
    if !constraint.contains(v, slack) || !constraint.contains(v2, slack) {
        return Err(Error::Precondition("v and v' must lie in V".into()));
    }
    let rv = farthest_radius(v, family)?;
    if rv > radius + gamma + delta + slack {
        return Err(Error::Precondition(format!(
            "r(v, B) = {rv} exceeds R + gamma + delta = {}",
            radius + gamma + delta
        )));
    }
    let rv2 = farthest_radius(v2, family)?;
    if rv2 > radius + gamma / 2.0 + slack {
        return Err(Error::Precondition(format!(
            "r(v', B) = {rv2} exceeds R + gamma/2 = {}",
            radius + gamma / 2.0
        )));
    }
    let weight = 2.0 * delta / (2.0 * delta + gamma);
    let point = v.lerp(v2, weight);
    let radius_after = farthest_radius(&point, family)?;
    let displacement = v.dist(&point);
    if radius_after > radius + gamma + tol.abs {
        return Err(Error::Certificate(format!(
            "r(v~, B) = {radius_after} exceeds R + gamma = {}",
            radius + gamma
        )));
    }
    if displacement > eps + tol.abs {
        return Err(Error::Certificate(format!(
            "||v - v~|| = {displacement} exceeds eps = {eps}"
        )));
    }
    Ok(Perturbation {
        point,
        weight,
        radius_after,
        displacement,
    })
}
