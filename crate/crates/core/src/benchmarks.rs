//! The six benchmark test functions, their bounds, and known optima.
//!
//! All functions are minimized. Evaluation is total: points outside the
//! bounds are evaluated like any other (bound repair is the engine's job,
//! not the oracle's).

use crate::error::{Error, Result};
use crate::genome::Bounds;

/// Identifier of one of the six test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionId {
    /// Sphere (De Jong's first function): unimodal, separable.
    F1,
    /// Axis-parallel hyper-ellipsoid (weighted sphere): unimodal, separable.
    F2,
    /// Rotated hyper-ellipsoid (Schwefel 1.2): unimodal, non-separable.
    F3,
    /// Normalized Schwefel: multimodal, separable, deceptive.
    F4,
    /// Generalized Rastrigin: highly multimodal, separable.
    F5,
    /// Rosenbrock's valley (banana function): unimodal, non-separable.
    F6,
}

impl FunctionId {
    pub const ALL: [FunctionId; 6] = [
        FunctionId::F1,
        FunctionId::F2,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::F5,
        FunctionId::F6,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            FunctionId::F1 => "F1",
            FunctionId::F2 => "F2",
            FunctionId::F3 => "F3",
            FunctionId::F4 => "F4",
            FunctionId::F5 => "F5",
            FunctionId::F6 => "F6",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FunctionId::F1 => "sphere",
            FunctionId::F2 => "axis-parallel hyper-ellipsoid",
            FunctionId::F3 => "rotated hyper-ellipsoid",
            FunctionId::F4 => "normalized schwefel",
            FunctionId::F5 => "rastrigin",
            FunctionId::F6 => "rosenbrock",
        }
    }
}

impl std::fmt::Display for FunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(FunctionId::F1),
            "F2" => Ok(FunctionId::F2),
            "F3" => Ok(FunctionId::F3),
            "F4" => Ok(FunctionId::F4),
            "F5" => Ok(FunctionId::F5),
            "F6" => Ok(FunctionId::F6),
            _ => Err(Error::invalid(format!("unknown function '{s}'"))),
        }
    }
}

/// Which Schwefel form F4 evaluates.
///
/// The normalized form divides the sum by the dimension, which makes the
/// global minimum value independent of D (about -418.9829 at x = 420.968 in
/// every coordinate). The raw form is the plain sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchwefelVariant {
    #[default]
    Normalized,
    Raw,
}

/// A function together with everything a run needs to know about it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionSpec {
    pub id: FunctionId,
    pub dimension: usize,
    pub bounds: Bounds,
    /// Coordinate value of the global minimum, repeated over all dimensions.
    pub optimum_point: f64,
    /// Objective value at the global minimum.
    pub optimum_value: f64,
}

/// Coordinate of the Schwefel global minimum.
const SCHWEFEL_OPT_X: f64 = 420.968;

/// Per-coordinate Schwefel term value at the optimum; also the optimum of
/// the normalized form for any dimension. Approximately -418.9829.
fn schwefel_optimum_value() -> f64 {
    -SCHWEFEL_OPT_X * SCHWEFEL_OPT_X.sqrt().sin()
}

/// Evaluates `id` at `x`, with F4 in its normalized form.
pub fn evaluate(id: FunctionId, x: &[f64]) -> Result<f64> {
    evaluate_with(id, x, SchwefelVariant::Normalized)
}

/// Evaluates `id` at `x` with an explicit Schwefel variant for F4.
pub fn evaluate_with(id: FunctionId, x: &[f64], schwefel: SchwefelVariant) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::invalid("cannot evaluate an empty genome"));
    }
    let value = match id {
        // f(x) = sum x_i^2
        FunctionId::F1 => x.iter().map(|xi| xi * xi).sum(),
        // f(x) = sum i * x_i^2, i starting at 1
        FunctionId::F2 => x
            .iter()
            .enumerate()
            .map(|(i, xi)| (i + 1) as f64 * xi * xi)
            .sum(),
        // f(x) = sum over i of (sum_{j<=i} x_j)^2
        FunctionId::F3 => {
            let mut prefix = 0.0;
            let mut total = 0.0;
            for xi in x {
                prefix += xi;
                total += prefix * prefix;
            }
            total
        }
        // f(x) = sum -x_i * sin(sqrt(|x_i|)), optionally divided by D
        FunctionId::F4 => {
            let sum: f64 = x.iter().map(|xi| -xi * xi.abs().sqrt().sin()).sum();
            match schwefel {
                SchwefelVariant::Normalized => sum / x.len() as f64,
                SchwefelVariant::Raw => sum,
            }
        }
        // f(x) = 10D + sum (x_i^2 - 10 cos(2 pi x_i))
        FunctionId::F5 => {
            10.0 * x.len() as f64
                + x.iter()
                    .map(|xi| xi * xi - 10.0 * (2.0 * std::f64::consts::PI * xi).cos())
                    .sum::<f64>()
        }
        // f(x) = sum 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2
        FunctionId::F6 => {
            if x.len() < 2 {
                return Err(Error::invalid(
                    "rosenbrock needs at least 2 dimensions, got 1",
                ));
            }
            x.windows(2)
                .map(|w| {
                    let (a, b) = (w[0], w[1]);
                    100.0 * (b - a * a) * (b - a * a) + (1.0 - a) * (1.0 - a)
                })
                .sum()
        }
    };
    Ok(value)
}

/// Returns bounds, optimum coordinate, and optimum value for `id` at the
/// given dimension.
pub fn spec_of(id: FunctionId, dimension: usize) -> Result<FunctionSpec> {
    if dimension < 1 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if id == FunctionId::F6 && dimension < 2 {
        return Err(Error::invalid(
            "rosenbrock needs at least 2 dimensions, got 1",
        ));
    }
    let (half_width, optimum_point, optimum_value) = match id {
        FunctionId::F1 => (5.12, 0.0, 0.0),
        FunctionId::F2 => (5.12, 0.0, 0.0),
        FunctionId::F3 => (65.536, 0.0, 0.0),
        FunctionId::F4 => (500.0, SCHWEFEL_OPT_X, schwefel_optimum_value()),
        FunctionId::F5 => (5.12, 0.0, 0.0),
        FunctionId::F6 => (2.048, 1.0, 0.0),
    };
    Ok(FunctionSpec {
        id,
        dimension,
        bounds: Bounds::symmetric(half_width).expect("half widths are positive"),
        optimum_point,
        optimum_value,
    })
}
