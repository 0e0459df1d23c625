//! Finitely supported functionals, the subspaces they cut out, and bounded
//! polytopes in H-representation with exact vertex enumeration.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{affine_hull, independent_rows, solve_square, AffineHull};
use crate::lp::{LinearProgram, LpStatus};
use crate::space::{check_dim, Vector};
use crate::tol::Tolerances;

/// A linear constraint row `coeffs . x (= or <=) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, rhs: f64) -> Self {
        Constraint { coeffs, rhs }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `coeffs . x - rhs`
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.eval(x) - self.rhs
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

/// A finitely supported signed measure `sum_k w_k delta_{s_k}` of total
/// variation one.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional {
    support: Vec<usize>,
    weights: Vec<f64>,
}

/// Tolerance on the total variation of a "normalized" functional.
pub const NORMALIZATION_TOL: f64 = 1e-9;

impl Functional {
    /// Requires `sum |w| = 1` within [`NORMALIZATION_TOL`].
    pub fn new(support: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        let f = Self::raw(support, weights)?;
        let norm = f.norm();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(f)
    }

    /// Accepts any nonzero weights and rescales them to total variation one.
    pub fn normalized(support: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        let mut f = Self::raw(support, weights)?;
        let norm = f.norm();
        for w in &mut f.weights {
            *w /= norm;
        }
        Ok(f)
    }

    fn raw(support: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if support.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: support.len(),
                found: weights.len(),
            });
        }
        if support.is_empty() {
            return Err(Error::InvalidParameter {
                name: "support length",
                value: 0.0,
            });
        }
        for (i, s) in support.iter().enumerate() {
            if support[..i].contains(s) {
                return Err(Error::DuplicateSupport { index: *s });
            }
        }
        if let Some(w) = weights.iter().find(|w| **w == 0.0 || !w.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "weight",
                value: *w,
            });
        }
        Ok(Functional { support, weights })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total variation `sum |w|`.
    pub fn norm(&self) -> f64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.support.iter().find(|&&k| k >= n) {
            Some(&k) => Err(Error::IndexOutOfRange { index: k, len: n }),
            None => Ok(()),
        }
    }

    /// Weights spread into a dense row of length `n`.
    pub fn dense(&self, n: usize) -> Vec<f64> {
        let mut row = vec![0.0; n];
        for (&k, &w) in self.support.iter().zip(&self.weights) {
            row[k] = w;
        }
        row
    }
}

/// `sum_k w_k v(s_k)`.
pub fn eval(mu: &Functional, v: &Vector) -> Result<f64> {
    mu.check_range(v.dim())?;
    Ok(mu
        .support
        .iter()
        .zip(&mu.weights)
        .map(|(&k, &w)| w * v[k])
        .sum())
}

/// `Y = intersection of ker(mu_i)`; an empty list means the whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceSpec {
    dim: usize,
    functionals: Vec<Functional>,
}

impl SubspaceSpec {
    pub fn new(dim: usize, functionals: Vec<Functional>) -> Result<Self> {
        for f in &functionals {
            f.check_range(dim)?;
        }
        Ok(SubspaceSpec { dim, functionals })
    }

    pub fn whole(dim: usize) -> Self {
        SubspaceSpec {
            dim,
            functionals: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    /// Largest `|mu_i(v)|`.
    pub fn residual(&self, v: &Vector) -> Result<f64> {
        check_dim(self.dim, v.dim())?;
        let mut worst = 0.0f64;
        for f in &self.functionals {
            worst = worst.max(eval(f, v)?.abs());
        }
        Ok(worst)
    }

    pub fn contains(&self, v: &Vector, tol: f64) -> Result<bool> {
        Ok(self.residual(v)? <= tol)
    }

    /// `Y` as equalities only (unbounded).
    pub fn polytope(&self) -> Polytope {
        let mut p = Polytope::whole(self.dim);
        for f in &self.functionals {
            p.add_eq(f.dense(self.dim), 0.0);
        }
        p
    }
}

pub fn subspace_membership(y: &SubspaceSpec, v: &Vector, tol: f64) -> Result<bool> {
    y.contains(v, tol)
}

/// `lambda B_Y = { v in Y : ||v|| <= lambda }`.
pub fn ball_polytope(y: &SubspaceSpec, lambda: f64) -> Result<Polytope> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
        });
    }
    let mut p = y.polytope();
    p.add_box(lambda);
    Ok(p)
}

/// A convex polyhedron `{ x : E x = e, A x <= b }` with an optional cache of
/// its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
    vertices: Option<Vec<Vector>>,
}

impl Polytope {
    /// The whole space (no constraints).
    pub fn whole(dim: usize) -> Self {
        Polytope {
            dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            vertices: None,
        }
    }

    /// `[-r, r]^dim`
    pub fn cube(dim: usize, r: f64) -> Self {
        let mut p = Self::whole(dim);
        p.add_box(r);
        p
    }

    /// `{x}`
    pub fn point(x: &Vector) -> Self {
        let mut p = Self::whole(x.dim());
        for i in 0..x.dim() {
            let mut row = vec![0.0; x.dim()];
            row[i] = 1.0;
            p.add_eq(row, x[i]);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn add_eq(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.dim);
        self.vertices = None;
        self.equalities.push(Constraint::new(coeffs, rhs));
    }

    /// `coeffs . x <= rhs`
    pub fn add_le(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.dim);
        self.vertices = None;
        self.inequalities.push(Constraint::new(coeffs, rhs));
    }

    /// `|x_i| <= r` for every coordinate.
    pub fn add_box(&mut self, r: f64) {
        for i in 0..self.dim {
            let mut up = vec![0.0; self.dim];
            up[i] = 1.0;
            self.add_le(up, r);
            let mut down = vec![0.0; self.dim];
            down[i] = -1.0;
            self.add_le(down, r);
        }
    }

    /// `|x_i - c_i| <= r` for every coordinate.
    pub fn add_ball(&mut self, center: &Vector, r: f64) {
        for i in 0..self.dim {
            let mut up = vec![0.0; self.dim];
            up[i] = 1.0;
            self.add_le(up, center[i] + r);
            let mut down = vec![0.0; self.dim];
            down[i] = -1.0;
            self.add_le(down, r - center[i]);
        }
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        check_dim(self.dim, other.dim)?;
        let mut p = self.clone();
        p.vertices = None;
        p.equalities.extend(other.equalities.iter().cloned());
        p.inequalities.extend(other.inequalities.iter().cloned());
        Ok(p)
    }

    /// `{ lambda x : x in P }` for `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Polytope {
        let map = |c: &Constraint| Constraint::new(c.coeffs.clone(), c.rhs * lambda);
        Polytope {
            dim: self.dim,
            equalities: self.equalities.iter().map(map).collect(),
            inequalities: self.inequalities.iter().map(map).collect(),
            vertices: self
                .vertices
                .as_ref()
                .map(|vs| vs.iter().map(|v| v.scale(lambda)).collect()),
        }
    }

    /// `{ x + t : x in P }`.
    pub fn translated(&self, t: &Vector) -> Polytope {
        let map = |c: &Constraint| Constraint::new(c.coeffs.clone(), c.rhs + c.eval(t));
        Polytope {
            dim: self.dim,
            equalities: self.equalities.iter().map(map).collect(),
            inequalities: self.inequalities.iter().map(map).collect(),
            vertices: self
                .vertices
                .as_ref()
                .map(|vs| vs.iter().map(|v| v.add(t)).collect()),
        }
    }

    /// Largest constraint violation at `x` (0 when feasible).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let eq = self
            .equalities
            .iter()
            .fold(0.0f64, |m, c| m.max(c.residual(x).abs()));
        self.inequalities
            .iter()
            .fold(eq, |m, c| m.max(c.residual(x)))
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        x.dim() == self.dim && self.violation(x) <= tol
    }

    /// Rank of the constraints (equalities plus inequalities) active at `x`.
    pub fn active_rank(&self, x: &Vector, tol: f64) -> usize {
        let rows: Vec<&[f64]> = self
            .equalities
            .iter()
            .map(|c| c.coeffs.as_slice())
            .chain(
                self.inequalities
                    .iter()
                    .filter(|c| c.residual(x).abs() <= tol * (1.0 + c.scale()))
                    .map(|c| c.coeffs.as_slice()),
            )
            .collect();
        independent_rows(&rows, 1e-9).len()
    }

    pub fn cached_vertices(&self) -> Option<&[Vector]> {
        self.vertices.as_deref()
    }

    /// Enumerates and stores the vertex list; later calls reuse it.
    pub fn cache_vertices(&mut self, tol: &Tolerances) -> Result<&[Vector]> {
        if self.vertices.is_none() {
            self.vertices = Some(enumerate_vertices(self, tol)?);
        }
        Ok(self.vertices.as_deref().unwrap_or(&[]))
    }

    /// Vertex list, from the cache when present.
    pub fn vertices(&self, tol: &Tolerances) -> Result<Vec<Vector>> {
        match &self.vertices {
            Some(v) => Ok(v.clone()),
            None => enumerate_vertices(self, tol),
        }
    }

    /// LP over this polytope: optimum of `c . x` (minimize when `min`).
    pub fn optimize(&self, c: &[f64], min: bool, tol: &Tolerances) -> Result<(f64, Vector)> {
        let mut lp = LinearProgram::new(self.dim);
        lp.add_polytope(self, 0);
        let lp = if min {
            lp.minimize(c.to_vec())
        } else {
            lp.maximize(c.to_vec())
        };
        let (v, x) = lp.solve(tol)?.optimal()?;
        Ok((v, Vector::new(x)))
    }

    pub fn is_feasible(&self, tol: &Tolerances) -> Result<bool> {
        let mut lp = LinearProgram::new(self.dim);
        lp.add_polytope(self, 0);
        Ok(lp.solve(tol)?.status == LpStatus::Optimal)
    }
}

fn unit_rows(cs: &[Constraint]) -> Result<Vec<Constraint>> {
    let mut out: Vec<Constraint> = Vec::with_capacity(cs.len());
    for c in cs {
        let s = c.scale();
        if s == 0.0 {
            if c.rhs < -1e-12 {
                return Err(Error::Infeasible);
            }
            continue;
        }
        let r = Constraint::new(c.coeffs.iter().map(|x| x / s).collect(), c.rhs / s);
        match out.iter_mut().find(|o| o.coeffs == r.coeffs) {
            Some(o) => o.rhs = o.rhs.min(r.rhs),
            None => out.push(r),
        }
    }
    Ok(out)
}

/// All extreme points of a bounded polyhedron.
///
/// Implicit equalities are detected by LP and folded into the affine hull,
/// the remaining full-dimensional system is enumerated by the double
/// description method on its homogenization, and each vertex is finally
/// re-solved from its active constraints.
pub fn enumerate_vertices(p: &Polytope, tol: &Tolerances) -> Result<Vec<Vector>> {
    let n = p.dim;
    let mut eqs: Vec<Constraint> = Vec::new();
    for c in &p.equalities {
        let s = c.scale();
        if s == 0.0 {
            if c.rhs.abs() > 1e-12 {
                return Err(Error::Infeasible);
            }
        } else {
            eqs.push(Constraint::new(
                c.coeffs.iter().map(|x| x / s).collect(),
                c.rhs / s,
            ));
        }
    }
    let ineqs = unit_rows(&p.inequalities)?;
    let mut implicit = vec![false; ineqs.len()];
    let (hull, reduced) = loop {
        let all_eqs: Vec<(&[f64], f64)> = eqs
            .iter()
            .map(|c| (c.coeffs.as_slice(), c.rhs))
            .chain(
                ineqs
                    .iter()
                    .zip(&implicit)
                    .filter(|(_, imp)| **imp)
                    .map(|(c, _)| (c.coeffs.as_slice(), c.rhs)),
            )
            .collect();
        let hull = affine_hull(n, &all_eqs, 1e-9).ok_or(Error::Infeasible)?;
        let reduced = reduce(&hull, &ineqs, &implicit)?;
        let d = hull.directions.len();
        if d == 0 || reduced.is_empty() {
            break (hull, reduced);
        }
        let newly = find_implicit(&reduced, d, tol)?;
        if newly.is_empty() {
            break (hull, reduced);
        }
        for r in newly {
            implicit[reduced[r].source] = true;
        }
    };
    let d = hull.directions.len();
    let mut raw: Vec<Vec<f64>> = Vec::new();
    if d == 0 {
        raw.push(hull.base.clone());
    } else {
        if reduced.is_empty() {
            return Err(Error::Unbounded);
        }
        for z in double_description(&reduced, d, tol)? {
            raw.push(hull.point(&z));
        }
    }
    let mut out: Vec<Vector> = Vec::new();
    for x in raw {
        let x = polish(p, &eqs, &ineqs, x, tol);
        if p.violation(&x) > 1e-6 * (1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()))) {
            return Err(Error::NumericalFailure(format!(
                "vertex enumeration produced an infeasible point (violation {:e})",
                p.violation(&x)
            )));
        }
        let v = Vector::new(x);
        if !out.iter().any(|o| o.dist(&v) <= tol.dedup) {
            out.push(v);
        }
    }
    out.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Inequality expressed in hull coordinates: `g . z <= h`.
#[derive(Debug, Clone)]
struct ReducedRow {
    g: Vec<f64>,
    h: f64,
    source: usize,
}

fn reduce(hull: &AffineHull, ineqs: &[Constraint], implicit: &[bool]) -> Result<Vec<ReducedRow>> {
    let mut out = Vec::new();
    for (i, c) in ineqs.iter().enumerate() {
        if implicit[i] {
            continue;
        }
        let g: Vec<f64> = hull.directions.iter().map(|d| c.eval(d)).collect();
        let h = c.rhs - c.eval(&hull.base);
        let s = g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if s <= 1e-11 {
            if h < -1e-9 {
                return Err(Error::Infeasible);
            }
            continue;
        }
        out.push(ReducedRow {
            g: g.iter().map(|x| x / s).collect(),
            h: h / s,
            source: i,
        });
    }
    Ok(out)
}

/// Indices (into `rows`) of inequalities that hold with equality on the
/// whole polytope.
fn find_implicit(rows: &[ReducedRow], d: usize, tol: &Tolerances) -> Result<Vec<usize>> {
    let hmax = rows.iter().fold(0.0f64, |m, r| m.max(r.h.abs()));
    let thresh = tol.abs * (1.0 + hmax);
    // max s subject to g.z + s <= h, s <= 1
    let mut lp = LinearProgram::new(d + 1);
    for r in rows {
        let mut row = r.g.clone();
        row.push(1.0);
        lp.add_le(row, r.h);
    }
    lp.set_bounds(d, None, Some(1.0));
    let mut c = vec![0.0; d + 1];
    c[d] = 1.0;
    let sol = lp.maximize(c).solve(tol)?;
    let (s, _) = match sol.status {
        LpStatus::Infeasible => return Err(Error::Infeasible),
        LpStatus::Unbounded => return Err(Error::NumericalFailure("interior LP unbounded".into())),
        LpStatus::Optimal => (sol.value, sol.x),
    };
    if s > thresh {
        return Ok(Vec::new());
    }
    let slack =
        |z: &[f64], r: &ReducedRow| r.h - r.g.iter().zip(z).map(|(a, b)| a * b).sum::<f64>();
    let mut strict = vec![false; rows.len()];
    let mut base = LinearProgram::new(d);
    for r in rows {
        base.add_le(r.g.clone(), r.h);
    }
    let mut out = Vec::new();
    for i in 0..rows.len() {
        if strict[i] {
            continue;
        }
        let sol = base.clone().minimize(rows[i].g.clone()).solve(tol)?;
        match sol.status {
            LpStatus::Infeasible => return Err(Error::Infeasible),
            LpStatus::Unbounded => {
                strict[i] = true;
            }
            LpStatus::Optimal => {
                for (j, r) in rows.iter().enumerate() {
                    if slack(&sol.x, r) > thresh {
                        strict[j] = true;
                    }
                }
                if !strict[i] {
                    out.push(i);
                }
            }
        }
    }
    Ok(out)
}

struct Ray {
    v: Vec<f64>,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn normalize(v: &mut [f64]) {
    let s = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if s > 0.0 {
        for x in v.iter_mut() {
            *x /= s;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Double description on the cone `{ (z, t) : g.z - h t <= 0, t >= 0 }`;
/// returns the vertices `z / t` of `{ z : g.z <= h }`.
fn double_description(rows: &[ReducedRow], d: usize, tol: &Tolerances) -> Result<Vec<Vec<f64>>> {
    let dim = d + 1;
    let mut cons: Vec<Vec<f64>> = Vec::with_capacity(rows.len() + 1);
    let mut t_row = vec![0.0; dim];
    t_row[d] = -1.0;
    cons.push(t_row);
    for r in rows {
        let mut c = r.g.clone();
        c.push(-r.h);
        normalize(&mut c);
        cons.push(c);
    }
    let words = cons.len().div_ceil(64);
    let eps = tol.abs;
    let mut lineality: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    for (ci, c) in cons.iter().enumerate() {
        let best = lineality
            .iter()
            .enumerate()
            .map(|(i, l)| (i, dot(c, l)))
            .fold(None::<(usize, f64)>, |acc, (i, v)| match acc {
                Some((_, bv)) if bv.abs() >= v.abs() => acc,
                _ => Some((i, v)),
            });
        if let Some((li, lv)) = best.filter(|(_, v)| v.abs() > eps) {
            let mut pivot = lineality.swap_remove(li);
            for l in lineality.iter_mut() {
                let f = dot(c, l) / lv;
                for (x, p) in l.iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
            }
            for r in rays.iter_mut() {
                let f = dot(c, &r.v) / lv;
                for (x, p) in r.v.iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
                normalize(&mut r.v);
                bit_set(&mut r.zeros, ci);
            }
            if lv > 0.0 {
                for x in pivot.iter_mut() {
                    *x = -*x;
                }
            }
            normalize(&mut pivot);
            let mut zeros = vec![0u64; words];
            for k in 0..ci {
                bit_set(&mut zeros, k);
            }
            rays.push(Ray { v: pivot, zeros });
            continue;
        }
        let vals: Vec<f64> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > eps).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.abs() <= eps {
                    bit_set(&mut r.zeros, ci);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < -eps).collect();
        let pointed_dim = dim - lineality.len();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p]
                    .zeros
                    .iter()
                    .zip(&rays[q].zeros)
                    .map(|(a, b)| a & b)
                    .collect();
                let count: u32 = common.iter().map(|w| w.count_ones()).sum();
                if (count as usize) + 2 < pointed_dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| {
                    k != p && k != q && common.iter().zip(&r.zeros).all(|(cm, z)| cm & !z == 0)
                });
                if blocked {
                    continue;
                }
                let (vp, vq) = (vals[p], vals[q]);
                let mut v: Vec<f64> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(a, b)| vp * a - vq * b)
                    .collect();
                normalize(&mut v);
                let mut zeros = common;
                bit_set(&mut zeros, ci);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v > eps {
                continue;
            }
            if v.abs() <= eps {
                bit_set(&mut r.zeros, ci);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
        if rays.len() > 200_000 {
            return Err(Error::NumericalFailure(
                "double description exceeded 200000 intermediate rays".into(),
            ));
        }
    }
    let finite: Vec<Vec<f64>> = rays
        .iter()
        .filter(|r| r.v[d] > eps)
        .map(|r| r.v[..d].iter().map(|x| x / r.v[d]).collect())
        .collect();
    if finite.is_empty() {
        return Err(Error::Infeasible);
    }
    if !lineality.is_empty() || rays.iter().any(|r| r.v[d] <= eps) {
        return Err(Error::Unbounded);
    }
    Ok(finite)
}

/// Re-solves a vertex from a maximal independent set of its active
/// constraints; keeps the raw point if that does not improve feasibility.
fn polish(
    p: &Polytope,
    eqs: &[Constraint],
    ineqs: &[Constraint],
    x: Vec<f64>,
    tol: &Tolerances,
) -> Vec<f64> {
    let n = x.len();
    let active: Vec<&Constraint> = eqs
        .iter()
        .chain(ineqs.iter().filter(|c| c.residual(&x).abs() <= 1e-7))
        .collect();
    let rows: Vec<&[f64]> = active.iter().map(|c| c.coeffs.as_slice()).collect();
    let pick = independent_rows(&rows, 1e-9);
    if pick.len() != n {
        return x;
    }
    let a: Vec<Vec<f64>> = pick.iter().map(|&i| active[i].coeffs.clone()).collect();
    let b: Vec<f64> = pick.iter().map(|&i| active[i].rhs).collect();
    match solve_square(&a, &b, 1e-12) {
        Some(y) => {
            let moved = x
                .iter()
                .zip(&y)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            if moved <= 1e-6 && p.violation(&y) <= p.violation(&x).max(tol.abs) {
                y
            } else {
                x
            }
        }
        None => x,
    }
}

/// Vertex enumeration by brute force over all square subsystems of active
/// constraints. Exponential; meant as an independent cross-check on small
/// polytopes.
pub fn enumerate_vertices_exhaustive(p: &Polytope, tol: &Tolerances) -> Result<Vec<Vector>> {
    let n = p.dim;
    let eq_rows: Vec<&[f64]> = p.equalities.iter().map(|c| c.coeffs.as_slice()).collect();
    let eq_pick = independent_rows(&eq_rows, 1e-9);
    let need = n - eq_pick.len();
    let m = p.inequalities.len();
    let mut out: Vec<Vector> = Vec::new();
    let mut idx: Vec<usize> = (0..need).collect();
    if need > m {
        return Err(Error::Unbounded);
    }
    loop {
        let mut a: Vec<Vec<f64>> = eq_pick
            .iter()
            .map(|&i| p.equalities[i].coeffs.clone())
            .collect();
        let mut b: Vec<f64> = eq_pick.iter().map(|&i| p.equalities[i].rhs).collect();
        for &i in &idx {
            a.push(p.inequalities[i].coeffs.clone());
            b.push(p.inequalities[i].rhs);
        }
        if let Some(x) = solve_square(&a, &b, 1e-10) {
            let v = Vector::new(x);
            if p.violation(&v) <= 1e-9 * (1.0 + v.sup_norm())
                && !out.iter().any(|o| o.dist(&v) <= tol.dedup)
            {
                out.push(v);
            }
        }
        // next combination
        let mut k = need;
        loop {
            if k == 0 {
                out.sort_by(|a, b| {
                    a.iter()
                        .zip(b.iter())
                        .map(|(x, y)| x.total_cmp(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(core::cmp::Ordering::Equal)
                });
                return if out.is_empty() {
                    Err(Error::Infeasible)
                } else {
                    Ok(out)
                };
            }
            k -= 1;
            if idx[k] < m - need + k {
                idx[k] += 1;
                for j in k + 1..need {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::hausdorff_points;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn mu12() -> Functional {
        Functional::new(vec![0, 1], vec![0.5, -0.5]).unwrap()
    }

    fn pts(v: &[&[f64]]) -> Vec<Vector> {
        v.iter().map(|x| Vector::from(*x)).collect()
    }

    #[test]
    fn eval_examples() {
        let mu = Functional::new(vec![1, 2], vec![0.5, -0.5]).unwrap();
        assert_eq!(eval(&mu, &Vector::from([0.0, 1.0, 1.0])).unwrap(), 0.0);
        assert_eq!(eval(&mu, &Vector::from([0.0, 1.0, 0.0])).unwrap(), 0.5);
        assert_eq!(eval(&mu, &Vector::zeros(3)).unwrap(), 0.0);
        assert!(matches!(
            eval(&mu, &Vector::zeros(2)),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn functional_validation() {
        assert!(matches!(
            Functional::new(vec![0, 1], vec![0.5, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
        let f = Functional::normalized(vec![0, 1], vec![2.0, -2.0]).unwrap();
        assert_eq!(f.weights(), &[0.5, -0.5]);
        assert!(matches!(
            Functional::new(vec![0, 0], vec![0.5, -0.5]),
            Err(Error::DuplicateSupport { index: 0 })
        ));
        assert!(Functional::new(vec![0, 1], vec![1.0, 0.0]).is_err());
        assert!(SubspaceSpec::new(2, vec![Functional::new(vec![3], vec![1.0]).unwrap()]).is_err());
    }

    #[test]
    fn membership() {
        let y = SubspaceSpec::new(3, vec![mu12()]).unwrap();
        assert!(subspace_membership(&y, &Vector::from([1.0, 1.0, 0.0]), 1e-9).unwrap());
        assert!(!subspace_membership(&y, &Vector::from([1.0, 0.0, 0.0]), 1e-9).unwrap());
        assert!(subspace_membership(&y, &Vector::zeros(3), 0.0).unwrap());
    }

    #[test]
    fn ball_of_hyperplane() {
        let y = SubspaceSpec::new(3, vec![mu12()]).unwrap();
        let b = ball_polytope(&y, 1.0).unwrap();
        let v = enumerate_vertices(&b, &tol()).unwrap();
        let want = pts(&[
            &[-1.0, -1.0, -1.0],
            &[-1.0, -1.0, 1.0],
            &[1.0, 1.0, -1.0],
            &[1.0, 1.0, 1.0],
        ]);
        assert_eq!(v, want);
        let v2 = enumerate_vertices(&ball_polytope(&y, 2.0).unwrap(), &tol()).unwrap();
        let scaled: Vec<Vector> = want.iter().map(|w| w.scale(2.0)).collect();
        assert!(hausdorff_points(&v2, &scaled) < 1e-12);
        assert!(ball_polytope(&y, 0.0).is_err());
    }

    #[test]
    fn square_vertices() {
        let sq = ball_polytope(&SubspaceSpec::whole(2), 1.0).unwrap();
        let v = enumerate_vertices(&sq, &tol()).unwrap();
        assert_eq!(
            v,
            pts(&[&[-1.0, -1.0], &[-1.0, 1.0], &[1.0, -1.0], &[1.0, 1.0]])
        );
        for x in &v {
            assert_eq!(sq.active_rank(x, 1e-9), 2);
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = Polytope::whole(1);
        p.add_le(vec![1.0], -2.0);
        p.add_le(vec![-1.0], -2.0);
        assert_eq!(enumerate_vertices(&p, &tol()), Err(Error::Infeasible));
        let mut q = Polytope::whole(2);
        q.add_le(vec![-1.0, 0.0], 0.0);
        q.add_le(vec![0.0, -1.0], 0.0);
        assert_eq!(enumerate_vertices(&q, &tol()), Err(Error::Unbounded));
        let mut slab = Polytope::whole(2);
        slab.add_le(vec![1.0, 0.0], 1.0);
        slab.add_le(vec![-1.0, 0.0], 1.0);
        assert_eq!(enumerate_vertices(&slab, &tol()), Err(Error::Unbounded));
    }

    #[test]
    fn lower_dimensional_via_opposing_inequalities() {
        // segment {(0.5, 0.5, c) : |c| <= 0.5} written only with inequalities
        let mut p = Polytope::cube(3, 1.0);
        p.add_le(vec![1.0, 0.0, 0.0], 0.5);
        p.add_le(vec![-1.0, 0.0, 0.0], -0.5);
        p.add_le(vec![0.0, 1.0, 0.0], 0.5);
        p.add_le(vec![0.0, -1.0, 0.0], -0.5);
        p.add_le(vec![0.0, 0.0, 1.0], 0.5);
        p.add_le(vec![0.0, 0.0, -1.0], 0.5);
        let v = enumerate_vertices(&p, &tol()).unwrap();
        assert_eq!(v, pts(&[&[0.5, 0.5, -0.5], &[0.5, 0.5, 0.5]]));
    }

    #[test]
    fn matches_exhaustive_on_cross_polytope_section() {
        // octahedron-like body with degenerate vertices
        let mut p = Polytope::whole(3);
        for s0 in [-1.0, 1.0] {
            for s1 in [-1.0, 1.0] {
                for s2 in [-1.0, 1.0] {
                    p.add_le(vec![s0, s1, s2], 1.0);
                }
            }
        }
        p.add_box(0.8);
        p.add_le(vec![1.0, 1.0, 0.0], 0.9);
        let a = enumerate_vertices(&p, &tol()).unwrap();
        let b = enumerate_vertices_exhaustive(&p, &tol()).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(hausdorff_points(&a, &b) < 1e-12);
    }

    #[test]
    fn single_point() {
        let x = Vector::from([0.25, -1.0]);
        let v = enumerate_vertices(&Polytope::point(&x), &tol()).unwrap();
        assert_eq!(v, vec![x]);
    }
}
