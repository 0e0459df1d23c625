//! Finite sup-norm space: vectors, farthest-point radius, slabs, Hausdorff
//! distance and the closed-form global Chebyshev center.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Deref, Index};

use crate::error::{Error, Result};

/// A finite labeled point set `S`; vectors are real functions on `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupSpace {
    labels: Vec<String>,
}

impl SupSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter {
                name: "n",
                value: 0.0,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(SupSpace { labels })
    }

    /// Space with labels `s1, ..., sn`.
    pub fn with_dim(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| alloc::format!("s{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check(&self, v: &Vector) -> Result<()> {
        check_dim(self.dim(), v.dim())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A real function on a finite point set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        Vector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(alloc::vec![0.0; n])
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Vector(alloc::vec![c; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn sup_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    /// `(1 - t) self + t other`.
    pub fn lerp(&self, other: &Vector, t: f64) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (1.0 - t) * a + t * b)
                .collect(),
        )
    }

    pub fn dot(&self, w: &[f64]) -> f64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// Sup-norm distance.
    pub fn dist(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        )
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

impl From<&[f64]> for Vector {
    fn from(v: &[f64]) -> Self {
        Vector(v.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    fn from(v: [f64; N]) -> Self {
        Vector(v.to_vec())
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// A nonempty finite family of vectors over one ambient space (a finite set
/// or a finite net of a compact set).
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionFamily {
    members: Vec<Vector>,
}

impl FunctionFamily {
    pub fn new(members: Vec<Vector>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        let n = first.dim();
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                value: 0.0,
            });
        }
        for m in &members {
            check_dim(n, m.dim())?;
        }
        Ok(FunctionFamily { members })
    }

    pub fn singleton(v: Vector) -> Result<Self> {
        Self::new(alloc::vec![v])
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> &[Vector] {
        &self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Vector> {
        self.members.iter()
    }

    /// `sup_{b in B} ||b||`.
    pub fn max_norm(&self) -> f64 {
        self.members.iter().fold(0.0, |m, b| m.max(b.sup_norm()))
    }

    /// Pointwise `sup_{f in F} f`.
    pub fn upper_envelope(&self) -> Vector {
        let mut out = self.members[0].clone();
        for m in &self.members[1..] {
            for (o, x) in out.as_mut_slice().iter_mut().zip(m.iter()) {
                *o = o.max(*x);
            }
        }
        out
    }

    /// Pointwise `inf_{f in F} f`.
    pub fn lower_envelope(&self) -> Vector {
        let mut out = self.members[0].clone();
        for m in &self.members[1..] {
            for (o, x) in out.as_mut_slice().iter_mut().zip(m.iter()) {
                *o = o.min(*x);
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> FunctionFamily {
        FunctionFamily {
            members: self.members.iter().map(|m| m.scale(s)).collect(),
        }
    }

    /// Values of every member at the given points.
    pub fn restrict(&self, points: &[usize]) -> FunctionFamily {
        FunctionFamily {
            members: self
                .members
                .iter()
                .map(|m| Vector(points.iter().map(|&k| m[k]).collect()))
                .collect(),
        }
    }
}

pub fn sup_norm(v: &Vector) -> f64 {
    v.sup_norm()
}

/// `r(x, B) = max_{b in B} ||x - b||`.
pub fn farthest_radius(x: &Vector, family: &FunctionFamily) -> Result<f64> {
    check_dim(family.dim(), x.dim())?;
    Ok(family.iter().fold(0.0, |m, b| m.max(x.dist(b))))
}

/// Membership in `S_lambda(B) = { x : r(x, B) <= lambda }`, up to `tol`.
pub fn in_slab(x: &Vector, family: &FunctionFamily, lambda: f64, tol: f64) -> Result<bool> {
    if !(lambda >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
        });
    }
    Ok(farthest_radius(x, family)? <= lambda + tol)
}

fn directed_hausdorff(a: &[Vector], b: &[Vector]) -> f64 {
    a.iter().fold(0.0, |worst, x| {
        let nearest = b.iter().fold(f64::INFINITY, |m, y| m.min(x.dist(y)));
        worst.max(nearest)
    })
}

/// Hausdorff distance between finite sets, as the larger of the two directed
/// max-min distances.
pub fn hausdorff(a: &FunctionFamily, b: &FunctionFamily) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    Ok(hausdorff_points(a.members(), b.members()))
}

/// [`hausdorff`] on raw point lists; empty lists are at distance 0 from each
/// other and at infinite distance from anything else.
pub fn hausdorff_points(a: &[Vector], b: &[Vector]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        _ => directed_hausdorff(a, b).max(directed_hausdorff(b, a)),
    }
}

/// Unrestricted Chebyshev center: coordinatewise interval midpoints.
pub fn global_center(family: &FunctionFamily) -> (f64, Vector) {
    let hi = family.upper_envelope();
    let lo = family.lower_envelope();
    let center = hi.zip_with(&lo, |h, l| 0.5 * (h + l));
    let radius = hi
        .iter()
        .zip(lo.iter())
        .fold(0.0f64, |m, (h, l)| m.max(0.5 * (h - l)));
    (radius, center)
}
