//! A finite-dimensional model of Garkavi's renorming.
//!
//! `X = R^N` with the sup norm and `Y = ker x*` for a finitely supported
//! normalized `x*`. A linear `Phi` on `Y` with `sup_{B_Y} Phi = 1`, a point
//! `y0` and a radius `gamma` are chosen so that `B[y0, gamma] ∩ Y` sits
//! strictly inside `{Phi > 3/4}`, and `alpha` is the minimum of `Phi` there.
//! The new unit ball is
//!
//! ```text
//! B = conv(U ∪ V ∪ -V),   U = { y in B_Y : |Phi(y)| <= alpha - theta },
//!                         V = x0 + B_gamma,   B_gamma = gamma B_Y,
//! ```
//!
//! with `x*(x0) = 1`. In finite dimension the minimum defining `alpha` is
//! attained, so `U` would touch `B[y0, gamma]` at `theta = 0`; the margin
//! `theta` keeps them apart.
//!
//! The gauge of `B` is available two ways: a lifted LP over scaled copies of
//! `U`, `V` and `-V`, and the maximum of `a . x` over the facet normals `a`
//! of `B` (the vertices of its polar).

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraints::{ball_polytope, enumerate_vertices, Functional, Polytope, SubspaceSpec};
use crate::error::{Error, Result};
use crate::lp::LinearProgram;
use crate::space::{check_dim, hausdorff_points, Vector};
use crate::tol::Tolerances;

/// Default margin between `U` and `B[y0, gamma] ∩ Y`.
pub const DEFAULT_THETA: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct GarkaviParams {
    pub n: usize,
    pub seed: u64,
    pub theta: f64,
    /// Consecutive seeds tried before giving up.
    pub max_attempts: u64,
    pub tol: Tolerances,
}

impl GarkaviParams {
    pub fn new(n: usize, seed: u64) -> Self {
        GarkaviParams {
            n,
            seed,
            theta: DEFAULT_THETA,
            max_attempts: 32,
            tol: Tolerances::default(),
        }
    }
}

/// One LP-backed check made while building the model.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

impl Certificate {
    fn below(name: &'static str, value: f64, bound: f64) -> Self {
        Certificate {
            name,
            value,
            bound,
            passed: value < bound,
        }
    }

    fn above(name: &'static str, value: f64, bound: f64) -> Self {
        Certificate {
            name,
            value,
            bound,
            passed: value > bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GarkaviModel {
    pub n: usize,
    /// The seed the model was built from.
    pub seed: u64,
    /// Seeds tried first and rejected, with the reason.
    pub rejected_seeds: Vec<(u64, String)>,
    pub xstar: Functional,
    pub y: SubspaceSpec,
    /// Dense weights of `Phi`, scaled so that `max_{B_Y} Phi = 1`.
    pub phi: Vector,
    pub x0: Vector,
    pub y0: Vector,
    pub gamma: f64,
    pub alpha: f64,
    pub theta: f64,
    pub u: Polytope,
    pub v: Polytope,
    pub neg_v: Polytope,
    pub b_gamma: Polytope,
    /// Vertices of `U`, `V` and `-V`; their hull is `B`.
    pub generators: Vec<Vector>,
    /// Outer normals `a` with `B = { x : a . x <= 1 }`.
    pub facets: Vec<Vector>,
    /// `c1 ||x|| <= gauge(x) <= c2 ||x||`.
    pub c1: f64,
    pub c2: f64,
    pub certificates: Vec<Certificate>,
    pub tol: Tolerances,
}

enum Attempt {
    Built(Box<GarkaviModel>),
    Rejected(String),
}

/// Builds the model for `R^n` from `seed`, moving to later seeds when the
/// random choices fail the interiority certificates.
pub fn build_model(n: usize, seed: u64) -> Result<GarkaviModel> {
    build_with(&GarkaviParams::new(n, seed))
}

pub fn build_with(params: &GarkaviParams) -> Result<GarkaviModel> {
    if params.n < 3 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: params.n as f64,
        });
    }
    if !(params.theta >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: params.theta,
        });
    }
    let mut rejected = Vec::new();
    for k in 0..params.max_attempts {
        let seed = params.seed.wrapping_add(k);
        match attempt(params, seed)? {
            Attempt::Built(mut m) => {
                m.rejected_seeds = rejected;
                return Ok(*m);
            }
            Attempt::Rejected(why) => rejected.push((seed, why)),
        }
    }
    Err(Error::Certificate(format!(
        "no admissible seed among {} attempts starting at {}",
        params.max_attempts, params.seed
    )))
}

fn unit(n: usize, i: usize, s: f64) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = s;
    e
}

fn attempt(params: &GarkaviParams, seed: u64) -> Result<Attempt> {
    let n = params.n;
    let tol = params.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    let k = rng.gen_range(2..=3.min(n));
    let mut support = idx[..k].to_vec();
    support.sort_unstable();
    let weights: Vec<f64> = (0..k)
        .map(|_| {
            let m: f64 = rng.gen_range(0.2..1.0);
            if rng.gen::<bool>() {
                m
            } else {
                -m
            }
        })
        .collect();
    let xstar = Functional::normalized(support, weights)?;
    let y = SubspaceSpec::new(n, vec![xstar.clone()])?;
    let ball = ball_polytope(&y, 1.0)?;

    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (scale, ystar) = ball.optimize(&raw, false, &tol)?;
    if scale < 1e-3 {
        return Ok(Attempt::Rejected(format!(
            "Phi nearly vanishes on Y (max {scale})"
        )));
    }
    let phi = Vector::new(raw.iter().map(|w| w / scale).collect());
    let s: f64 = rng.gen_range(0.85..0.92);
    let y0 = ystar.scale(s);

    let mut gamma = s - 0.75;
    for i in 0..n {
        let (ci, _) = ball.optimize(&unit(n, i, 1.0), false, &tol)?;
        if ci > 1e-12 {
            gamma = gamma.min((1.0 - s * ystar[i].abs()) / ci);
        }
    }
    gamma *= 0.5;
    if !(gamma > 1e-6) {
        return Ok(Attempt::Rejected(format!("gamma = {gamma} too small")));
    }

    let mut near = y.polytope();
    near.add_ball(&y0, gamma);
    let (alpha, _) = near.optimize(phi.as_slice(), true, &tol)?;
    let mut certificates = Vec::new();
    certificates.push(Certificate::above("alpha exceeds 3/4", alpha, 0.75));
    certificates.push(Certificate::below("alpha below 1", alpha, 1.0));
    let mut reach = 0.0f64;
    for i in 0..n {
        for sgn in [1.0, -1.0] {
            reach = reach.max(near.optimize(&unit(n, i, sgn), false, &tol)?.0);
        }
    }
    certificates.push(Certificate::below(
        "B[y0,gamma] ∩ Y inside the open unit ball",
        reach,
        1.0,
    ));
    if let Some(c) = certificates.iter().find(|c| !c.passed) {
        return Ok(Attempt::Rejected(format!(
            "{}: {} vs {}",
            c.name, c.value, c.bound
        )));
    }

    let theta = params.theta;
    let level = alpha - theta;
    let mut u = ball.clone();
    u.add_le(phi.as_slice().to_vec(), level);
    u.add_le(phi.scale(-1.0).into_inner(), level);
    let touching = u.intersect(&near)?.is_feasible(&tol)?;
    if touching {
        return Err(Error::Certificate(format!(
            "disjointness fails: U = {{|Phi| <= alpha - theta}} meets B[y0, gamma] ∩ Y \
             (alpha = {alpha}, theta = {theta})"
        )));
    }
    certificates.push(Certificate {
        name: "U disjoint from B[y0,gamma] ∩ Y",
        value: theta,
        bound: 0.0,
        passed: true,
    });
    certificates.push(Certificate::below("B_gamma inside U", gamma, level));

    let (kx, wk) =
        xstar
            .support()
            .iter()
            .zip(xstar.weights())
            .fold((0, 0.0f64), |best, (&k, &w)| {
                if w.abs() > best.1.abs() {
                    (k, w)
                } else {
                    best
                }
            });
    let x0 = Vector::new(unit(n, kx, 1.0 / wk));
    let xs_x0 = crate::constraints::eval(&xstar, &x0)?;
    certificates.push(Certificate::below("x*(x0) = 1", (xs_x0 - 1.0).abs(), 1e-12));

    let b_gamma = ball_polytope(&y, gamma)?;
    let v = b_gamma.translated(&x0);
    let neg_v = b_gamma.translated(&x0.scale(-1.0));

    let mut generators = enumerate_vertices(&u, &tol)?;
    let bg = enumerate_vertices(&b_gamma, &tol)?;
    generators.extend(bg.iter().map(|b| x0.add(b)));
    generators.extend(bg.iter().map(|b| x0.add(b).scale(-1.0)));

    let mut polar = Polytope::whole(n);
    for g in &generators {
        polar.add_le(g.as_slice().to_vec(), 1.0);
    }
    let facets = enumerate_vertices(&polar, &tol)?;

    let c1 = 1.0 / generators.iter().fold(0.0f64, |m, g| m.max(g.sup_norm()));
    let mut c2 = 0.0f64;
    for mask in 0u32..(1 << n) {
        let corner: Vec<f64> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 })
            .collect();
        c2 = c2.max(facet_gauge(&facets, &corner));
    }

    let mut m = GarkaviModel {
        n,
        seed,
        rejected_seeds: Vec::new(),
        xstar,
        y,
        phi,
        x0,
        y0,
        gamma,
        alpha,
        theta,
        u,
        v,
        neg_v,
        b_gamma,
        generators,
        facets,
        c1,
        c2,
        certificates,
        tol,
    };
    // every generator is on the boundary or inside, and x0 is on it
    let worst = m
        .generators
        .iter()
        .fold(0.0f64, |w, g| w.max(m.gauge_facets(g)));
    m.certificates
        .push(Certificate::below("generators inside B", worst, 1.0 + 1e-9));
    let g0 = m.gauge_norm(&m.x0.clone())?;
    m.certificates
        .push(Certificate::below("gauge(x0) = 1", (g0 - 1.0).abs(), 1e-7));
    if let Some(c) = m.certificates.iter().find(|c| !c.passed) {
        return Err(Error::Certificate(format!(
            "{}: {} vs {}",
            c.name, c.value, c.bound
        )));
    }
    Ok(Attempt::Built(Box::new(m)))
}

fn facet_gauge(facets: &[Vector], x: &[f64]) -> f64 {
    facets.iter().fold(0.0f64, |m, a| m.max(a.dot(x)))
}

/// Optimal decomposition `x = u + q x0 + w' - r x0 - w''` with `u in pU`,
/// `w' in q B_gamma`, `w'' in r B_gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub value: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub u: Vector,
    pub w_plus: Vector,
    pub w_minus: Vector,
}

impl GarkaviModel {
    /// Minkowski gauge of `B` by the lifted LP.
    pub fn gauge_norm(&self, x: &Vector) -> Result<f64> {
        Ok(self.decompose(x)?.value)
    }

    /// Minkowski gauge of `B` as `max_a a . x` over facet normals.
    pub fn gauge_facets(&self, x: &Vector) -> f64 {
        facet_gauge(&self.facets, x.as_slice())
    }

    pub fn decompose(&self, x: &Vector) -> Result<Decomposition> {
        check_dim(self.n, x.dim())?;
        let n = self.n;
        if x.sup_norm() == 0.0 {
            let z = Vector::zeros(n);
            return Ok(Decomposition {
                value: 0.0,
                p: 0.0,
                q: 0.0,
                r: 0.0,
                u: z.clone(),
                w_plus: z.clone(),
                w_minus: z,
            });
        }
        let (iu, iw1, iw2, ip, iq, ir) = (0, n, 2 * n, 3 * n, 3 * n + 1, 3 * n + 2);
        let nv = 3 * n + 3;
        let mut lp = LinearProgram::new(nv);
        for i in 0..n {
            let mut row = vec![0.0; nv];
            row[iu + i] = 1.0;
            row[iw1 + i] = 1.0;
            row[iw2 + i] = -1.0;
            row[iq] = self.x0[i];
            row[ir] = -self.x0[i];
            lp.add_eq(row, x[i]);
        }
        let xs = self.xstar.dense(n);
        for off in [iu, iw1, iw2] {
            let mut row = vec![0.0; nv];
            row[off..off + n].copy_from_slice(&xs);
            lp.add_eq(row, 0.0);
        }
        let level = self.alpha - self.theta;
        for (off, scale_var, r) in [(iu, ip, 1.0), (iw1, iq, self.gamma), (iw2, ir, self.gamma)] {
            for i in 0..n {
                for s in [1.0, -1.0] {
                    let mut row = vec![0.0; nv];
                    row[off + i] = s;
                    row[scale_var] = -r;
                    lp.add_le(row, 0.0);
                }
            }
        }
        for s in [1.0, -1.0] {
            let mut row = vec![0.0; nv];
            for i in 0..n {
                row[iu + i] = s * self.phi[i];
            }
            row[ip] = -level;
            lp.add_le(row, 0.0);
        }
        for j in [ip, iq, ir] {
            lp.set_bounds(j, Some(0.0), None);
        }
        let mut c = vec![0.0; nv];
        c[ip] = 1.0;
        c[iq] = 1.0;
        c[ir] = 1.0;
        let (value, sol) = lp.minimize(c).solve(&self.tol)?.optimal()?;
        let take = |off: usize| Vector::new(sol[off..off + n].to_vec());
        Ok(Decomposition {
            value,
            p: sol[ip],
            q: sol[iq],
            r: sol[ir],
            u: take(iu),
            w_plus: take(iw1),
            w_minus: take(iw2),
        })
    }

    /// A point of `Y`: `r - x*(r) x0`.
    pub fn project_to_y(&self, r: &Vector) -> Result<Vector> {
        let t = crate::constraints::eval(&self.xstar, r)?;
        Ok(r.sub(&self.x0.scale(t)))
    }

    /// `min { gauge(x - p) : p in P }` over a polytope `P`, with a nearest point.
    pub fn gauge_distance(&self, x: &Vector, target: &Polytope) -> Result<(f64, Vector)> {
        check_dim(self.n, x.dim())?;
        let n = self.n;
        let mut lp = LinearProgram::new(n + 1);
        lp.add_polytope(target, 0);
        for a in &self.facets {
            // a . (x - p) <= t
            let mut row: Vec<f64> = a.iter().map(|ai| -ai).collect();
            row.push(-1.0);
            lp.add_le(row, -a.dot(x.as_slice()));
        }
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        let (d, sol) = lp.minimize(c).solve(&self.tol)?.optimal()?;
        Ok((d.max(0.0), Vector::new(sol[..n].to_vec())))
    }

    /// `d_B(x, Y)` with a nearest point.
    pub fn distance_to_y(&self, x: &Vector) -> Result<(f64, Vector)> {
        self.gauge_distance(x, &self.y.polytope())
    }

    /// `P_Y(x, eps) = { y in Y : gauge(x - y) <= d_B(x, Y) + eps }`.
    pub fn metric_projection(&self, x: &Vector, eps: f64) -> Result<Polytope> {
        if !(eps >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "eps",
                value: eps,
            });
        }
        let (d, _) = self.distance_to_y(x)?;
        let mut p = self.y.polytope();
        for a in &self.facets {
            p.add_le(a.scale(-1.0).into_inner(), d + eps - a.dot(x.as_slice()));
        }
        Ok(p)
    }

    /// `B ∩ Y`.
    pub fn unit_ball_of_y(&self) -> Polytope {
        let mut p = self.y.polytope();
        for a in &self.facets {
            p.add_le(a.as_slice().to_vec(), 1.0);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormCheck {
    pub samples: usize,
    /// `|gauge(t x) - |t| gauge(x)|`
    pub homogeneity: f64,
    /// `|gauge(-x) - gauge(x)|`
    pub symmetry: f64,
    /// `max(0, gauge(x + y) - gauge(x) - gauge(y))`
    pub triangle: f64,
    /// `|lifted LP - facet maximum|`
    pub route_gap: f64,
    /// Worst violation of `c1 ||x|| <= gauge(x) <= c2 ||x||`.
    pub equivalence: f64,
    pub passed: bool,
}

/// Norm axioms of the gauge on random samples, to tolerance `threshold`.
pub fn gauge_checks(
    m: &GarkaviModel,
    samples: usize,
    seed: u64,
    threshold: f64,
) -> Result<NormCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw =
        |scale: f64| Vector::new((0..m.n).map(|_| rng.gen_range(-scale..scale)).collect());
    let (mut hom, mut sym, mut tri, mut gap, mut eqv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let x = draw(2.0);
        let z = draw(2.0);
        let t = draw(3.0)[0];
        let gx = m.gauge_norm(&x)?;
        let gz = m.gauge_norm(&z)?;
        hom = hom.max((m.gauge_norm(&x.scale(t))? - t.abs() * gx).abs());
        sym = sym.max((m.gauge_norm(&x.scale(-1.0))? - gx).abs());
        tri = tri.max(m.gauge_norm(&x.add(&z))? - gx - gz);
        gap = gap.max((gx - m.gauge_facets(&x)).abs());
        let nx = x.sup_norm();
        eqv = eqv.max(m.c1 * nx - gx).max(gx - m.c2 * nx);
    }
    let passed = hom <= threshold
        && sym <= threshold
        && tri <= threshold
        && gap <= threshold
        && eqv <= threshold;
    Ok(NormCheck {
        samples,
        homogeneity: hom,
        symmetry: sym,
        triangle: tri.max(0.0),
        route_gap: gap,
        equivalence: eqv.max(0.0),
        passed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionCase {
    pub lambda: f64,
    pub eps: f64,
    /// Largest `d_B(v, P_Y(x)) - eps` over vertices `v` of `P_Y(x, eps)`.
    pub outward: f64,
    /// Largest violation of `P_Y(x, eps)` by `p + eps c` for vertices `p` of
    /// `P_Y(x)` and `c` of `B ∩ Y`.
    pub inward: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayCase {
    pub eps: f64,
    /// `gauge(y - x0)`
    pub eta: f64,
    /// `d_B(y, B_gamma)` by LP.
    pub distance: f64,
    /// `gauge(y - b)` for the `B_gamma` point read off the decomposition.
    pub witness: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfBallReport {
    pub projections: Vec<ProjectionCase>,
    pub replays: Vec<ReplayCase>,
    pub passed: bool,
}

/// Compares `P_Y(x, eps)` with `{ y in Y : d_B(y, P_Y(x)) <= eps }` by
/// vertex containment both ways, and replays the decomposition bound
/// `d_B(y, B_gamma) <= gauge(y - x0) - 1`.
pub fn half_ball_check(
    m: &GarkaviModel,
    samples: usize,
    eps_list: &[f64],
    seed: u64,
    threshold: f64,
) -> Result<HalfBallReport> {
    if eps_list.is_empty() {
        return Err(Error::Precondition("empty eps list".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = &m.tol;
    let ball_y = m.unit_ball_of_y().vertices(tol)?;
    let mut projections = Vec::with_capacity(samples);
    for i in 0..samples {
        let eps = eps_list[i % eps_list.len()];
        let r = Vector::new((0..m.n).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let y = m.project_to_y(&r)?;
        let mag: f64 = rng.gen_range(0.3..2.0);
        let lambda = if rng.gen::<bool>() { mag } else { -mag };
        let x = y.add(&m.x0.scale(lambda));
        let exact = m.metric_projection(&x, 0.0)?;
        let relaxed = m.metric_projection(&x, eps)?;
        let mut outward = f64::NEG_INFINITY;
        for v in relaxed.vertices(tol)? {
            outward = outward.max(m.gauge_distance(&v, &exact)?.0 - eps);
        }
        let mut inward = 0.0f64;
        for p in exact.vertices(tol)? {
            for c in &ball_y {
                inward = inward.max(relaxed.violation(p.add(&c.scale(eps)).as_slice()));
            }
        }
        projections.push(ProjectionCase {
            lambda,
            eps,
            outward,
            inward,
            passed: outward <= threshold && inward <= threshold,
        });
    }

    let mut replays = Vec::new();
    for (i, &eps) in eps_list.iter().filter(|e| **e > 0.0).enumerate() {
        let target = 1.0 + eps * (0.25 + 0.5 * (i % 2) as f64 + 0.25 * rng.gen::<f64>());
        replays.push(replay(m, target.min(1.0 + eps), eps, &mut rng, threshold)?);
    }
    let passed = projections.iter().all(|c| c.passed) && replays.iter().all(|c| c.passed);
    Ok(HalfBallReport {
        projections,
        replays,
        passed,
    })
}

/// Finds `y in Y` with `gauge(y - x0) = target` along a random ray from a
/// point of `B_gamma`, then bounds `d_B(y, B_gamma)` two ways.
fn replay(
    m: &GarkaviModel,
    target: f64,
    eps: f64,
    rng: &mut ChaCha8Rng,
    threshold: f64,
) -> Result<ReplayCase> {
    let draw =
        |rng: &mut ChaCha8Rng| Vector::new((0..m.n).map(|_| rng.gen_range(-1.0..1.0)).collect());
    let start = {
        let s = m.project_to_y(&draw(rng))?;
        let norm = s.sup_norm();
        if norm > 0.0 {
            s.scale(0.5 * m.gamma / norm)
        } else {
            s
        }
    };
    let mut dir = m.project_to_y(&draw(rng))?;
    if dir.sup_norm() == 0.0 {
        dir = m.project_to_y(&Vector::constant(m.n, 1.0))?;
    }
    let along = |t: f64| start.add(&dir.scale(t));
    let f = |t: f64| m.gauge_facets(&along(t).sub(&m.x0));
    let mut hi = 1.0;
    while f(hi) < target {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::NumericalFailure(
                "gauge does not grow along the ray".into(),
            ));
        }
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let y = along(hi);
    let dec = m.decompose(&y.sub(&m.x0))?;
    let eta = dec.value;
    let (distance, _) = m.gauge_distance(&y, &m.b_gamma)?;
    let b = if dec.r > 0.0 {
        dec.w_minus.scale(-1.0 / dec.r)
    } else {
        Vector::zeros(m.n)
    };
    let witness = m.gauge_facets(&y.sub(&b));
    let bound = eta - 1.0;
    Ok(ReplayCase {
        eps,
        eta,
        distance,
        witness,
        passed: distance <= bound + threshold
            && witness <= bound + threshold
            && bound <= eps + threshold,
    })
}

/// Hausdorff distance between the vertex sets of `P_Y(y + lambda x0, delta)`
/// and `y + lambda P_Y(x0, delta / |lambda|)`.
pub fn covariance_gap(m: &GarkaviModel, y: &Vector, lambda: f64, delta: f64) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
        });
    }
    let tol = &m.tol;
    if m.y.residual(y)? > 1e-9 {
        return Err(Error::Precondition("y must lie in Y".into()));
    }
    let left = m
        .metric_projection(&y.add(&m.x0.scale(lambda)), delta)?
        .vertices(tol)?;
    let right: Vec<Vector> = m
        .metric_projection(&m.x0, delta / lambda.abs())?
        .vertices(tol)?
        .iter()
        .map(|v| y.add(&v.scale(lambda)))
        .collect();
    Ok(hausdorff_points(&left, &right))
}

/// Hausdorff distance between the vertex sets of `P_Y(x0)` and `B_gamma`,
/// and `|d_B(x0, Y) - 1|`.
pub fn projection_of_x0(m: &GarkaviModel) -> Result<(f64, f64)> {
    let p = m.metric_projection(&m.x0, 0.0)?.vertices(&m.tol)?;
    let b = m.b_gamma.vertices(&m.tol)?;
    let (d, _) = m.distance_to_y(&m.x0)?;
    Ok((hausdorff_points(&p, &b), (d - 1.0).abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendRow {
    pub n: usize,
    pub alpha: f64,
    /// `rad_Y({0, x0 + y0})` in the gauge norm.
    pub radius: f64,
    /// `Phi` at the LP center.
    pub phi_at_center: f64,
}

/// Centers of `{0, x0 + y0}` in `Y` for `n = 3..=n_max`. In infinite
/// dimension no center exists; here one always does, and the rows only
/// record how `Phi` at the center compares with `alpha`.
pub fn trend_report(n_max: usize, seed: u64) -> Result<Vec<TrendRow>> {
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let m = build_model(n, seed)?;
        let target = m.x0.add(&m.y0);
        let mut lp = LinearProgram::new(n + 1);
        lp.add_eq(
            {
                let mut r = m.xstar.dense(n);
                r.push(0.0);
                r
            },
            0.0,
        );
        for a in &m.facets {
            // a . y <= t  and  a . (target - y) <= t
            let mut row = a.as_slice().to_vec();
            row.push(-1.0);
            lp.add_le(row, 0.0);
            let mut row: Vec<f64> = a.iter().map(|x| -x).collect();
            row.push(-1.0);
            lp.add_le(row, -a.dot(target.as_slice()));
        }
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        let (radius, sol) = lp.minimize(c).solve(&m.tol)?.optimal()?;
        let center = Vector::new(sol[..n].to_vec());
        rows.push(TrendRow {
            n,
            alpha: m.alpha,
            radius,
            phi_at_center: m.phi.dot(center.as_slice()),
        });
    }
    Ok(rows)
}
