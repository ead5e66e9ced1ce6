//! Core value types: bounds, genomes, individuals, and populations.

use crate::benchmarks::FunctionSpec;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Closed box constraint applied to every gene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    lower: f64,
    upper: f64,
}

impl Bounds {
    /// Requires `lower < upper`; NaN endpoints are rejected.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower >= upper {
            return Err(Error::invalid(format!(
                "bounds require lower < upper, got [{lower}, {upper}]"
            )));
        }
        Ok(Bounds { lower, upper })
    }

    /// Symmetric box `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64) -> Result<Self> {
        Bounds::new(-half_width, half_width)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// Maps `x` to `min(upper, max(lower, x))`.
    pub fn clamp_value(&self, x: f64) -> f64 {
        x.clamp(self.lower, self.upper)
    }
}

/// Fixed-length vector of real-valued genes; the unit of crossover and
/// mutation. The length is set at construction and never changes.
#[derive(Debug, Clone, PartialEq)]
pub struct Genome {
    genes: Vec<f64>,
}

impl Genome {
    pub fn new(genes: Vec<f64>) -> Self {
        Genome { genes }
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn genes(&self) -> &[f64] {
        &self.genes
    }

    pub fn into_genes(self) -> Vec<f64> {
        self.genes
    }
}

impl From<Vec<f64>> for Genome {
    fn from(genes: Vec<f64>) -> Self {
        Genome::new(genes)
    }
}

impl std::ops::Index<usize> for Genome {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.genes[i]
    }
}

/// A genome plus its cached objective value. `fitness` is `None` until the
/// objective has been applied; when present it is exactly the objective of
/// `genome`, never stale.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn unevaluated(genome: Genome) -> Self {
        Individual {
            genome,
            fitness: None,
        }
    }

    pub fn evaluated(genome: Genome, fitness: f64) -> Self {
        Individual {
            genome,
            fitness: Some(fitness),
        }
    }
}

/// Ordered collection of individuals plus the run-level counters the engine
/// maintains: the generation number and how many objective evaluations have
/// been spent so far.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: u64,
    pub evaluations_used: u64,
}

impl Population {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Index of the best (lowest-fitness) evaluated member, ties broken by
    /// position. `None` if any member is unevaluated.
    pub fn best_index(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, ind) in self.members.iter().enumerate() {
            let f = ind.fitness?;
            match best {
                Some((_, fb)) if f >= fb => {}
                _ => best = Some((i, f)),
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Creates `n` individuals with genes drawn independently and uniformly over
/// the function's bounds. All fitness markers start unevaluated; generation
/// and evaluation counters start at zero.
pub fn init_population(spec: &FunctionSpec, n: usize, rng: &mut RngStream) -> Result<Population> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "population size must be at least 2, got {n}"
        )));
    }
    let bounds = spec.bounds;
    let members = (0..n)
        .map(|_| {
            let genes = (0..spec.dimension)
                .map(|_| rng.uniform(bounds.lower(), bounds.upper()))
                .collect();
            Individual::unevaluated(Genome::new(genes))
        })
        .collect();
    Ok(Population {
        members,
        generation: 0,
        evaluations_used: 0,
    })
}

/// Clamps every gene to the box; in-bounds genomes come back unchanged.
pub fn clamp(genome: &Genome, bounds: Bounds) -> Genome {
    Genome::new(
        genome
            .genes()
            .iter()
            .map(|&g| bounds.clamp_value(g))
            .collect(),
    )
}
