/// Numerical tolerances threaded through every computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute tolerance for membership and inequality checks.
    pub abs: f64,
    /// LP primal feasibility.
    pub feasibility: f64,
    /// LP reduced-cost optimality.
    pub optimality: f64,
    /// Radius under which two vertices are considered the same point.
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs: 1e-9,
            feasibility: 1e-9,
            optimality: 1e-9,
            dedup: 1e-7,
        }
    }
}

impl Tolerances {
    /// Same defaults but with every absolute threshold set to `abs`
    /// (the dedup radius keeps its ratio to `abs`).
    pub fn with_abs(abs: f64) -> Self {
        Tolerances {
            abs,
            feasibility: abs,
            optimality: abs,
            dedup: abs * 100.0,
        }
    }
}
