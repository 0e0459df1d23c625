//! Explicit restricted centers for `V = B_Y`, where `Y` is cut out by
//! finitely supported normalized functionals.
//!
//! The problem reduces to the support points. With one coordinate per
//! (functional, support point) pair, the reduced constraint set is
//!
//! ```text
//! A = { gamma in [-1, 1]^d : sum_k w_k gamma_k = 0 for each functional,
//!                            gamma_a = gamma_b when a and b name the same point }
//! ```
//!
//! and `alpha = min_{gamma in A} max_f max_k |gamma_k - f(point_k)|`. A center
//! of `F` in `B_Y` is then obtained from the minimizer `eta` by two
//! pointwise clamps, and a near-center is moved to a true center by a
//! similar clamp sandwich.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::centers::{center_set, lemma_delta_bound, solve_radius, CenterProblem, CenterReport};
use crate::constraints::{Polytope, SubspaceSpec};
use crate::error::{Error, Result};
use crate::lp::distance_to_polytope;
use crate::p1::p1_modulus;
use crate::space::{farthest_radius, FunctionFamily, Vector};
use crate::tol::Tolerances;

/// Tolerance for telling `R = alpha` apart from `R > alpha`.
pub const SUBCASE_TOL: f64 = 1e-9;

/// Whether two functionals share a support point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportLayout {
    Disjoint,
    Overlapping,
}

/// The problem on the support points.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteReduction {
    /// Original point index of each reduced coordinate.
    pub coords: Vec<usize>,
    /// Pairs of reduced coordinates tied to the same point.
    pub ties: Vec<(usize, usize)>,
    pub layout: SupportLayout,
    /// The family restricted to `coords`. `None` when there are no
    /// functionals.
    pub family: Option<FunctionFamily>,
    /// The reduced constraint set `A`.
    pub constraint: Polytope,
    pub alpha: f64,
    pub eta: Vector,
}

impl FiniteReduction {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `x_g`: the values of `g` at the reduced coordinates.
    pub fn restrict(&self, g: &Vector) -> Vector {
        Vector::new(self.coords.iter().map(|&k| g[k]).collect())
    }

    /// Values `z` on the support points and zero elsewhere.
    pub fn extend(&self, z: &Vector, n: usize) -> Vector {
        let mut g = Vector::zeros(n);
        for (&k, &zi) in self.coords.iter().zip(z.iter()) {
            g.as_mut_slice()[k] = zi;
        }
        g
    }

    /// The reduced problem `(F~, A)`, if there is one.
    pub fn problem(&self, tol: &Tolerances) -> Result<Option<CenterProblem>> {
        match &self.family {
            None => Ok(None),
            Some(f) => Ok(Some(CenterProblem::new(
                f.clone(),
                self.constraint.clone(),
                *tol,
            )?)),
        }
    }
}

/// Builds the reduction and solves for `alpha` and `eta`.
pub fn finite_reduction(
    family: &FunctionFamily,
    y: &SubspaceSpec,
    tol: &Tolerances,
) -> Result<FiniteReduction> {
    crate::space::check_dim(y.dim(), family.dim())?;
    let mut coords = Vec::new();
    let mut rows = Vec::new();
    for mu in y.functionals() {
        let start = coords.len();
        coords.extend_from_slice(mu.support());
        rows.push((start, mu.weights().to_vec()));
    }
    let d = coords.len();
    let mut ties = Vec::new();
    for b in 0..d {
        if let Some(a) = (0..b).find(|&a| coords[a] == coords[b]) {
            ties.push((a, b));
        }
    }
    let layout = if ties.is_empty() {
        SupportLayout::Disjoint
    } else {
        SupportLayout::Overlapping
    };
    let mut constraint = Polytope::cube(d, 1.0);
    for (start, w) in &rows {
        let mut row = vec![0.0; d];
        row[*start..start + w.len()].copy_from_slice(w);
        constraint.add_eq(row, 0.0);
    }
    for &(a, b) in &ties {
        let mut row = vec![0.0; d];
        row[a] = 1.0;
        row[b] = -1.0;
        constraint.add_eq(row, 0.0);
    }
    if d == 0 {
        return Ok(FiniteReduction {
            coords,
            ties,
            layout,
            family: None,
            constraint,
            alpha: 0.0,
            eta: Vector::zeros(0),
        });
    }
    let reduced = FunctionFamily::new(
        family
            .iter()
            .map(|f| Vector::new(coords.iter().map(|&k| f[k]).collect()))
            .collect(),
    )?;
    let (alpha, eta) = solve_radius(&reduced, &constraint, tol)?;
    Ok(FiniteReduction {
        coords,
        ties,
        layout,
        family: Some(reduced),
        constraint,
        alpha,
        eta,
    })
}

/// Checks `sup_F f - R <= h <= inf_F f + R` pointwise, naming the first
/// violated point.
pub fn check_center_inequalities(
    h: &Vector,
    family: &FunctionFamily,
    radius: f64,
    slack: f64,
) -> Result<()> {
    let hi = family.upper_envelope();
    let lo = family.lower_envelope();
    for i in 0..h.dim() {
        if h[i] < hi[i] - radius - slack {
            return Err(Error::Certificate(format!(
                "point {i}: h = {} below sup f - R = {}",
                h[i],
                hi[i] - radius
            )));
        }
        if h[i] > lo[i] + radius + slack {
            return Err(Error::Certificate(format!(
                "point {i}: h = {} above inf f + R = {}",
                h[i],
                lo[i] + radius
            )));
        }
    }
    Ok(())
}

fn check_in_ball(h: &Vector, y: &SubspaceSpec, slack: f64, what: &str) -> Result<()> {
    let res = y.residual(h)?;
    if res > slack {
        return Err(Error::Certificate(format!(
            "{what}: functional residual {res}"
        )));
    }
    let norm = h.sup_norm();
    if norm > 1.0 + slack {
        return Err(Error::Certificate(format!("{what}: norm {norm} exceeds 1")));
    }
    Ok(())
}

/// All stages of the explicit center construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub radius: f64,
    pub reduction: FiniteReduction,
    /// `eta` on the support points, zero elsewhere.
    pub g: Vector,
    /// `min(g, inf_F f + R)`
    pub h0: Vector,
    /// `max(h0, sup_F f - R)`, a center of `F` in `B_Y`.
    pub h: Vector,
}

/// Runs the construction and certifies the result.
pub fn construct_center(
    family: &FunctionFamily,
    y: &SubspaceSpec,
    tol: &Tolerances,
) -> Result<Construction> {
    let problem = CenterProblem::unit_ball(y, family.clone(), *tol)?;
    let (radius, _) = solve_radius(&problem.family, &problem.constraint, tol)?;
    let reduction = finite_reduction(family, y, tol)?;
    if reduction.alpha > radius + 1e-9 {
        return Err(Error::Certificate(format!(
            "alpha = {} exceeds R = {radius}",
            reduction.alpha
        )));
    }
    let n = family.dim();
    let g = reduction.extend(&reduction.eta, n);
    let lo = family.lower_envelope();
    let hi = family.upper_envelope();
    let h0 = g.zip_with(&lo, |gi, l| gi.min(l + radius));
    let h = h0.zip_with(&hi, |v, u| v.max(u - radius));

    let slack = 1e-9;
    check_center_inequalities(&h, family, radius, slack)?;
    check_in_ball(&h, y, slack, "constructed center")?;
    let r = farthest_radius(&h, family)?;
    if r > radius + 1e-8 {
        return Err(Error::Certificate(format!(
            "r(h, F) = {r} exceeds R = {radius}"
        )));
    }
    Ok(Construction {
        radius,
        reduction,
        g,
        h0,
        h,
    })
}

/// A center of `F` in `B_Y` built by clamping.
pub fn constructive_center(
    family: &FunctionFamily,
    y: &SubspaceSpec,
    tol: &Tolerances,
) -> Result<Vector> {
    Ok(construct_center(family, y, tol)?.h)
}

/// Which regime the repair runs in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Subcase {
    /// `R = alpha`: move to a center of the reduced problem.
    Attained,
    /// `R > alpha`: move to a `beta`-near center of the reduced problem,
    /// `beta = R - alpha`.
    Gap { beta: f64 },
}

pub fn subcase(radius: f64, alpha: f64) -> Subcase {
    if (radius - alpha).abs() <= SUBCASE_TOL {
        Subcase::Attained
    } else {
        Subcase::Gap {
            beta: radius - alpha,
        }
    }
}

/// A near-center to repair.
#[derive(Debug, Clone, PartialEq)]
pub struct RepairInput {
    pub g: Vector,
    pub eps: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Repair {
    pub subcase: Subcase,
    pub radius: f64,
    pub alpha: f64,
    /// Nearest point to `x_g` in the reduced (near-)center set.
    pub z: Vector,
    pub g_prime: Vector,
    pub f1: Vector,
    pub f2: Vector,
    pub h1: Vector,
    pub h2: Vector,
    /// `||g - h2||`
    pub displacement: f64,
}

/// The slack `delta` the subcase rule admits for a given `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlackChoice {
    pub subcase: Subcase,
    pub delta: f64,
}

/// Chooses `delta` so that every `delta`-near center of `F` in `B_Y` can be
/// repaired within `eps`.
///
/// When `R = alpha` the reduced problem's own modulus (searched on
/// `(0, eps]`) is used. When `R > alpha` the explicit bound
/// `min{alpha, eps beta / (6 alpha + 4 beta)}` is halved; if `alpha`
/// vanishes its first term is replaced by `beta / 2`.
pub fn admissible_slack(
    family: &FunctionFamily,
    y: &SubspaceSpec,
    eps: f64,
    tol: &Tolerances,
) -> Result<SlackChoice> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
        });
    }
    let problem = CenterProblem::unit_ball(y, family.clone(), *tol)?;
    let (radius, _) = solve_radius(&problem.family, &problem.constraint, tol)?;
    let reduction = finite_reduction(family, y, tol)?;
    let sc = subcase(radius, reduction.alpha);
    let delta = match (sc, reduction.problem(tol)?) {
        (_, None) => 0.5 * eps,
        (Subcase::Attained, Some(p)) => p1_modulus(&p, eps, eps)?.delta,
        (Subcase::Gap { beta }, Some(_)) => {
            let a = reduction.alpha;
            let bound = if a > SUBCASE_TOL {
                lemma_delta_bound(a, beta, eps)
            } else {
                (0.5 * beta).min(eps * beta / (6.0 * a + 4.0 * beta))
            };
            0.5 * bound
        }
    };
    if !(delta > 0.0) {
        return Err(Error::NumericalFailure(format!(
            "no positive slack found for eps = {eps}"
        )));
    }
    Ok(SlackChoice { subcase: sc, delta })
}

/// Moves a `delta`-near center `g` of `F` in `B_Y` to a true center within
/// `eps` of it.
pub fn repair_near_center(
    input: &RepairInput,
    family: &FunctionFamily,
    y: &SubspaceSpec,
    tol: &Tolerances,
) -> Result<Repair> {
    let RepairInput { g, eps, delta } = input;
    let (eps, delta) = (*eps, *delta);
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
        });
    }
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
        });
    }
    crate::space::check_dim(family.dim(), g.dim())?;
    let slack = 1e-9;
    if y.residual(g)? > slack || g.sup_norm() > 1.0 + slack {
        return Err(Error::Precondition("g lies outside B_Y".into()));
    }
    let problem = CenterProblem::unit_ball(y, family.clone(), *tol)?;
    let (radius, _) = solve_radius(&problem.family, &problem.constraint, tol)?;
    let rg = farthest_radius(g, family)?;
    if rg > radius + delta + slack {
        return Err(Error::Precondition(format!(
            "g is not a delta-near center: r(g, F) = {rg} > R + delta = {}",
            radius + delta
        )));
    }
    let reduction = finite_reduction(family, y, tol)?;
    let sc = subcase(radius, reduction.alpha);
    let x_g = reduction.restrict(g);
    let z = match (&reduction.family, sc) {
        (None, _) => Vector::zeros(0),
        (Some(rf), sc) => {
            let level = match sc {
                Subcase::Attained => reduction.alpha,
                Subcase::Gap { beta } => reduction.alpha + beta,
            };
            let target = reduction
                .constraint
                .intersect(&crate::centers::slab_polytope(rf, level))?;
            let (_, z) = distance_to_polytope(&x_g, &target, tol)?;
            let gap = x_g.dist(&z);
            if gap > eps + slack {
                return Err(Error::Precondition(format!(
                    "slack too large: reduced near-center lies {gap} from the reduced target set, eps = {eps}"
                )));
            }
            z
        }
    };
    let n = family.dim();
    let g_prime = reduction.extend(&z, n);
    let lo = family.lower_envelope();
    let hi = family.upper_envelope();
    let f1 = Vector::new(
        (0..n)
            .map(|i| (hi[i] - radius).max(g[i] - eps).max(-1.0))
            .collect(),
    );
    let f2 = Vector::new(
        (0..n)
            .map(|i| (lo[i] + radius).min(g[i] + eps).min(1.0))
            .collect(),
    );
    let h1 = f1.zip_with(&g_prime, f64::max);
    let h2 = h1.zip_with(&f2, f64::min);

    check_center_inequalities(&h2, family, radius, slack)?;
    check_in_ball(&h2, y, slack, "repaired center")?;
    let displacement = g.dist(&h2);
    if displacement > eps + slack {
        return Err(Error::Certificate(format!(
            "||g - h2|| = {displacement} exceeds eps = {eps}"
        )));
    }
    Ok(Repair {
        subcase: sc,
        radius,
        alpha: reduction.alpha,
        z,
        g_prime,
        f1,
        f2,
        h1,
        h2,
        displacement,
    })
}

/// How a center report is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpretation {
    /// Functions on a finite set of points.
    PointValues,
    /// Affine functions on a simplex, given by their vertex values.
    AffineOnSimplex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexReport {
    pub vertex_count: usize,
    pub mode: Interpretation,
    pub report: CenterReport,
}

/// The center problem for affine functions on a simplex with
/// `vertex_count` vertices. Affine functions are determined by, and attain
/// their sup norm at, vertex values, so this is the point-value problem on
/// the vertices.
pub fn simplex_mode(vertex_count: usize, problem: &CenterProblem) -> Result<SimplexReport> {
    crate::space::check_dim(vertex_count, problem.dim())?;
    Ok(SimplexReport {
        vertex_count,
        mode: Interpretation::AffineOnSimplex,
        report: center_set(problem)?,
    })
}

/// Value at a point with barycentric coordinates `lambda` of the affine
/// function with the given vertex values.
pub fn affine_eval(vertex_values: &Vector, lambda: &[f64]) -> Result<f64> {
    crate::space::check_dim(vertex_values.dim(), lambda.len())?;
    if lambda.iter().any(|&l| l < 0.0) || (lambda.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(
            "barycentric coordinates must be nonnegative and sum to 1".into(),
        ));
    }
    Ok(vertex_values.dot(lambda))
}
