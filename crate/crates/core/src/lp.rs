//! Dense two-phase simplex with Bland's pivot rule, plus the sup-norm
//! distance from a point to a polytope.

#![allow(clippy::needless_range_loop)]

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::constraints::{Constraint, Polytope};
use crate::error::{Error, Result};
use crate::linalg::solve_square;
use crate::space::{check_dim, Vector};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value; NaN unless optimal.
    pub value: f64,
    /// Optimizer; empty unless optimal.
    pub x: Vec<f64>,
}

impl LpSolution {
    /// `(value, x)` or the matching error for a non-optimal status.
    pub fn optimal(self) -> Result<(f64, Vec<f64>)> {
        match self.status {
            LpStatus::Optimal => Ok((self.value, self.x)),
            LpStatus::Infeasible => Err(Error::Infeasible),
            LpStatus::Unbounded => Err(Error::Unbounded),
        }
    }
}

/// `min/max c.x` subject to equalities, `<=` inequalities and optional
/// variable bounds. Variables without bounds are free.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    n: usize,
    objective: Vec<f64>,
    sense: Sense,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
    lower: Vec<Option<f64>>,
    upper: Vec<Option<f64>>,
}

impl LinearProgram {
    /// Feasibility problem over `n` free variables.
    pub fn new(n: usize) -> Self {
        LinearProgram {
            n,
            objective: vec![0.0; n],
            sense: Sense::Minimize,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn minimize(mut self, c: Vec<f64>) -> Self {
        assert_eq!(c.len(), self.n);
        self.objective = c;
        self.sense = Sense::Minimize;
        self
    }

    pub fn maximize(mut self, c: Vec<f64>) -> Self {
        assert_eq!(c.len(), self.n);
        self.objective = c;
        self.sense = Sense::Maximize;
        self
    }

    pub fn set_objective(&mut self, c: Vec<f64>, sense: Sense) {
        assert_eq!(c.len(), self.n);
        self.objective = c;
        self.sense = sense;
    }

    pub fn add_eq(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.n);
        self.equalities.push(Constraint { coeffs, rhs });
    }

    /// `coeffs . x <= rhs`
    pub fn add_le(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.n);
        self.inequalities.push(Constraint { coeffs, rhs });
    }

    /// `coeffs . x >= rhs`
    pub fn add_ge(&mut self, coeffs: Vec<f64>, rhs: f64) {
        let neg = coeffs.iter().map(|c| -c).collect();
        self.add_le(neg, -rhs);
    }

    pub fn set_bounds(&mut self, j: usize, lower: Option<f64>, upper: Option<f64>) {
        self.lower[j] = lower;
        self.upper[j] = upper;
    }

    /// Adds the constraints of `p` acting on variables `offset..offset+p.dim()`.
    pub fn add_polytope(&mut self, p: &Polytope, offset: usize) {
        let pad = |c: &Constraint| {
            let mut row = vec![0.0; self.n];
            row[offset..offset + c.coeffs.len()].copy_from_slice(&c.coeffs);
            row
        };
        for c in p.equalities() {
            let row = pad(c);
            self.equalities.push(Constraint {
                coeffs: row,
                rhs: c.rhs,
            });
        }
        for c in p.inequalities() {
            let row = pad(c);
            self.inequalities.push(Constraint {
                coeffs: row,
                rhs: c.rhs,
            });
        }
    }

    pub fn solve(&self, tol: &Tolerances) -> Result<LpSolution> {
        Simplex::build(self, tol).run(self, tol)
    }
}

/// How an original variable is expressed through nonnegative columns.
#[derive(Debug, Clone)]
struct VarMap {
    offset: f64,
    cols: Vec<(usize, f64)>,
}

struct Simplex {
    rows: usize,
    cols: usize,
    /// first artificial column
    art_start: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    /// untouched copies of the normalized system, for polishing
    a0: Vec<f64>,
    b0: Vec<f64>,
    row_alive: Vec<bool>,
    basis: Vec<usize>,
    vars: Vec<VarMap>,
    bmax: f64,
}

const PIVOT_TOL: f64 = 1e-10;

impl Simplex {
    fn build(lp: &LinearProgram, _tol: &Tolerances) -> Simplex {
        let mut vars = Vec::with_capacity(lp.n);
        let mut std_n = 0;
        let mut bound_rows: Vec<(usize, f64)> = Vec::new(); // (std col, ub) meaning y <= ub
        for j in 0..lp.n {
            match (lp.lower[j], lp.upper[j]) {
                (Some(l), u) => {
                    vars.push(VarMap {
                        offset: l,
                        cols: vec![(std_n, 1.0)],
                    });
                    if let Some(u) = u {
                        bound_rows.push((std_n, u - l));
                    }
                    std_n += 1;
                }
                (None, Some(u)) => {
                    vars.push(VarMap {
                        offset: u,
                        cols: vec![(std_n, -1.0)],
                    });
                    std_n += 1;
                }
                (None, None) => {
                    vars.push(VarMap {
                        offset: 0.0,
                        cols: vec![(std_n, 1.0), (std_n + 1, -1.0)],
                    });
                    std_n += 2;
                }
            }
        }
        let translate = |c: &Constraint| -> (Vec<f64>, f64) {
            let mut row = vec![0.0; std_n];
            let mut rhs = c.rhs;
            for (j, &coef) in c.coeffs.iter().enumerate() {
                if coef == 0.0 {
                    continue;
                }
                rhs -= coef * vars[j].offset;
                for &(col, s) in &vars[j].cols {
                    row[col] += coef * s;
                }
            }
            (row, rhs)
        };
        // (row over std vars, rhs, is_inequality)
        let mut rows: Vec<(Vec<f64>, f64, bool)> = Vec::new();
        for c in &lp.equalities {
            let (r, b) = translate(c);
            rows.push((r, b, false));
        }
        for c in &lp.inequalities {
            let (r, b) = translate(c);
            rows.push((r, b, true));
        }
        for &(col, ub) in &bound_rows {
            let mut r = vec![0.0; std_n];
            r[col] = 1.0;
            rows.push((r, ub, true));
        }
        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.2).count();
        // rows needing an artificial: equalities and inequalities with negative rhs
        let needs_art: Vec<bool> = rows.iter().map(|r| !r.2 || r.1 < 0.0).collect();
        let n_art = needs_art.iter().filter(|x| **x).count();
        let art_start = std_n + n_slack;
        let cols = art_start + n_art;
        let mut a = vec![0.0; m * cols];
        let mut b = vec![0.0; m];
        let mut basis = vec![0; m];
        let mut slack = std_n;
        let mut art = art_start;
        for (i, (r, rhs, ineq)) in rows.iter().enumerate() {
            let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
            for (k, v) in r.iter().enumerate() {
                a[i * cols + k] = sign * v;
            }
            b[i] = sign * rhs;
            if *ineq {
                a[i * cols + slack] = sign;
                if !needs_art[i] {
                    basis[i] = slack;
                }
                slack += 1;
            }
            if needs_art[i] {
                a[i * cols + art] = 1.0;
                basis[i] = art;
                art += 1;
            }
        }
        let bmax = b.iter().fold(0.0f64, |s, x| s.max(x.abs()));
        Simplex {
            rows: m,
            cols,
            art_start,
            a0: a.clone(),
            b0: b.clone(),
            a,
            b,
            row_alive: vec![true; m],
            basis,
            vars,
            bmax,
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.cols + j]
    }

    fn pivot(&mut self, r: usize, c: usize, d: &mut [f64], obj: &mut f64) {
        let cols = self.cols;
        let p = self.a[r * cols + c];
        for k in 0..cols {
            self.a[r * cols + k] /= p;
        }
        self.b[r] /= p;
        self.a[r * cols + c] = 1.0;
        for i in 0..self.rows {
            if i == r || !self.row_alive[i] {
                continue;
            }
            let f = self.a[i * cols + c];
            if f != 0.0 {
                for k in 0..cols {
                    let v = self.a[r * cols + k];
                    if v != 0.0 {
                        self.a[i * cols + k] -= f * v;
                    }
                }
                self.a[i * cols + c] = 0.0;
                self.b[i] -= f * self.b[r];
            }
        }
        let f = d[c];
        if f != 0.0 {
            for k in 0..cols {
                d[k] -= f * self.a[r * cols + k];
            }
            d[c] = 0.0;
            *obj -= f * self.b[r];
        }
        self.basis[r] = c;
    }

    /// Reduced costs and objective value for cost vector `c`.
    fn price(&self, c: &[f64]) -> (Vec<f64>, f64) {
        let mut d = c.to_vec();
        let mut obj = 0.0;
        for i in 0..self.rows {
            if !self.row_alive[i] {
                continue;
            }
            let cb = c[self.basis[i]];
            if cb != 0.0 {
                for k in 0..self.cols {
                    d[k] -= cb * self.at(i, k);
                }
                obj += cb * self.b[i];
            }
        }
        (d, obj)
    }

    /// Bland's rule iterations. Returns false when unbounded.
    fn iterate(
        &mut self,
        d: &mut [f64],
        obj: &mut f64,
        allowed: usize,
        tol: &Tolerances,
        budget: &mut usize,
    ) -> Result<bool> {
        loop {
            let Some(enter) = (0..allowed).find(|&j| d[j] < -tol.optimality) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                if !self.row_alive[i] {
                    continue;
                }
                let aij = self.at(i, enter);
                if aij > PIVOT_TOL {
                    let ratio = self.b[i].max(0.0) / aij;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            let tie = (ratio - lr).abs() <= 1e-12 * (1.0 + lr.abs());
                            if ratio < lr && !tie || tie && self.basis[i] < self.basis[li] {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            if *budget == 0 {
                return Err(Error::NumericalFailure(format!(
                    "simplex exceeded its iteration budget ({} rows, {} columns)",
                    self.rows, self.cols
                )));
            }
            *budget -= 1;
            self.pivot(r, enter, d, obj);
        }
    }

    fn run(mut self, lp: &LinearProgram, tol: &Tolerances) -> Result<LpSolution> {
        let mut budget = 200 * (self.rows + self.cols) + 1000;
        if self.art_start < self.cols {
            let mut c = vec![0.0; self.cols];
            for x in &mut c[self.art_start..] {
                *x = 1.0;
            }
            let (mut d, mut obj) = self.price(&c);
            let cols = self.cols;
            self.iterate(&mut d, &mut obj, cols, tol, &mut budget)?;
            let infeas: f64 = (0..self.rows)
                .filter(|&i| self.row_alive[i] && self.basis[i] >= self.art_start)
                .map(|i| self.b[i].abs())
                .sum();
            if infeas > tol.feasibility * (1.0 + self.bmax) {
                return Ok(LpSolution {
                    status: LpStatus::Infeasible,
                    value: f64::NAN,
                    x: Vec::new(),
                });
            }
            // drive remaining artificials out of the basis
            for i in 0..self.rows {
                if !self.row_alive[i] || self.basis[i] < self.art_start {
                    continue;
                }
                let best = (0..self.art_start)
                    .map(|j| (j, self.at(i, j).abs()))
                    .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                if best.1 > 1e-9 {
                    self.pivot(i, best.0, &mut d, &mut obj);
                } else {
                    self.row_alive[i] = false;
                }
            }
        }
        let sign = match lp.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let mut c = vec![0.0; self.cols];
        for (j, vm) in self.vars.iter().enumerate() {
            for &(col, s) in &vm.cols {
                c[col] += sign * lp.objective[j] * s;
            }
        }
        let (mut d, mut obj) = self.price(&c);
        let allowed = self.art_start;
        if !self.iterate(&mut d, &mut obj, allowed, tol, &mut budget)? {
            return Ok(LpSolution {
                status: LpStatus::Unbounded,
                value: f64::NAN,
                x: Vec::new(),
            });
        }
        let y = self.polished_basic_solution();
        let x: Vec<f64> = self
            .vars
            .iter()
            .map(|vm| vm.offset + vm.cols.iter().map(|&(col, s)| s * y[col]).sum::<f64>())
            .collect();
        let value = lp.objective.iter().zip(&x).map(|(c, x)| c * x).sum();
        Ok(LpSolution {
            status: LpStatus::Optimal,
            value,
            x,
        })
    }

    /// Re-solves `B y_B = b` from the original data for the final basis,
    /// falling back to the tableau values if that system is ill-conditioned.
    fn polished_basic_solution(&self) -> Vec<f64> {
        let mut tableau = vec![0.0; self.cols];
        let alive: Vec<usize> = (0..self.rows).filter(|&i| self.row_alive[i]).collect();
        for &i in &alive {
            tableau[self.basis[i]] = self.b[i].max(0.0);
        }
        let m = alive.len();
        let bcols: Vec<usize> = alive.iter().map(|&i| self.basis[i]).collect();
        let mat: Vec<Vec<f64>> = alive
            .iter()
            .map(|&i| bcols.iter().map(|&c| self.a0[i * self.cols + c]).collect())
            .collect();
        let rhs: Vec<f64> = alive.iter().map(|&i| self.b0[i]).collect();
        if m == 0 {
            return tableau;
        }
        match solve_square(&mat, &rhs, 1e-11) {
            Some(sol) => {
                let close = sol
                    .iter()
                    .zip(&bcols)
                    .all(|(v, &c)| *v > -1e-9 && (v - tableau[c]).abs() <= 1e-7 * (1.0 + v.abs()));
                if !close {
                    return tableau;
                }
                let mut y = vec![0.0; self.cols];
                for (v, &c) in sol.iter().zip(&bcols) {
                    y[c] = v.max(0.0);
                }
                y
            }
            None => tableau,
        }
    }
}

/// Minimum sup-norm distance from `x` to the polytope `p`, with a nearest
/// point.
pub fn distance_to_polytope(x: &Vector, p: &Polytope, tol: &Tolerances) -> Result<(f64, Vector)> {
    check_dim(p.dim(), x.dim())?;
    let n = p.dim();
    let mut lp = LinearProgram::new(n + 1);
    lp.add_polytope(p, 0);
    for i in 0..n {
        let mut up = vec![0.0; n + 1];
        up[i] = 1.0;
        up[n] = -1.0;
        lp.add_le(up, x[i]);
        let mut down = vec![0.0; n + 1];
        down[i] = -1.0;
        down[n] = -1.0;
        lp.add_le(down, -x[i]);
    }
    lp.set_bounds(n, Some(0.0), None);
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let (_, sol) = lp.minimize(c).solve(tol)?.optimal()?;
    let nearest = Vector::new(sol[..n].to_vec());
    // report the realized distance of the returned point
    let d = x.dist(&nearest);
    Ok((d, nearest))
}
