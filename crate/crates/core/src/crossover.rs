//! The six crossover operators, as pure functions from two parent genomes
//! (plus randomness) to one or two children.
//!
//! Raw operator output is deliberately not clamped to any bounds here; the
//! engine repairs children after mutation. Each randomized operator comes in
//! two forms: one that draws its own random choices from an [`RngStream`],
//! and an explicit-choice form (`*_at` / `*_with`) that takes the choices as
//! arguments. The random form delegates to the explicit one, and the choices
//! made are echoed in [`CrossoverOutcome::choice`], so tests and exhaustive
//! enumeration exercise exactly the code path used in runs.

use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::rng::RngStream;

/// One of the six crossover operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CrossoverKind {
    /// Cut both parents at one point, swap the tails (SPC).
    SinglePoint,
    /// Cut at two points, exchange the middle segment (TPC).
    TwoPoint,
    /// Per-gene weighted average between the parents (IC).
    Intermediate,
    /// Step from the worse parent past the better one (HC).
    Heuristic,
    /// Blend both parents with one random weight (AC).
    Arithmetic,
    /// Join the parents into a ring, cut it, read off both ways (RC).
    Ring,
}

impl CrossoverKind {
    /// Canonical comparison order: SPC, TPC, IC, HC, AC, RC.
    pub const ALL: [CrossoverKind; 6] = [
        CrossoverKind::SinglePoint,
        CrossoverKind::TwoPoint,
        CrossoverKind::Intermediate,
        CrossoverKind::Heuristic,
        CrossoverKind::Arithmetic,
        CrossoverKind::Ring,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            CrossoverKind::SinglePoint => "SPC",
            CrossoverKind::TwoPoint => "TPC",
            CrossoverKind::Intermediate => "IC",
            CrossoverKind::Heuristic => "HC",
            CrossoverKind::Arithmetic => "AC",
            CrossoverKind::Ring => "RC",
        }
    }
}

impl std::fmt::Display for CrossoverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for CrossoverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spc" | "single-point" => Ok(CrossoverKind::SinglePoint),
            "tpc" | "two-point" => Ok(CrossoverKind::TwoPoint),
            "ic" | "intermediate" => Ok(CrossoverKind::Intermediate),
            "hc" | "heuristic" => Ok(CrossoverKind::Heuristic),
            "ac" | "arithmetic" => Ok(CrossoverKind::Arithmetic),
            "rc" | "ring" => Ok(CrossoverKind::Ring),
            _ => Err(Error::invalid(format!("unknown operator '{s}'"))),
        }
    }
}

/// Tunable ratios for the intermediate and heuristic operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverParams {
    /// Scale of the per-gene step in intermediate crossover. At 1.0 children
    /// stay inside the hypercube spanned by the parents.
    pub ic_ratio: f64,
    /// How far past the better parent the heuristic child lands.
    pub hc_ratio: f64,
}

impl Default for CrossoverParams {
    fn default() -> Self {
        CrossoverParams {
            ic_ratio: 1.0,
            hc_ratio: 1.2,
        }
    }
}

impl CrossoverParams {
    pub fn validate(&self) -> Result<()> {
        if self.ic_ratio.is_nan() || self.ic_ratio < 0.0 {
            return Err(Error::invalid(format!(
                "ic_ratio must be >= 0, got {}",
                self.ic_ratio
            )));
        }
        if self.hc_ratio.is_nan() || self.hc_ratio <= 0.0 {
            return Err(Error::invalid(format!(
                "hc_ratio must be > 0, got {}",
                self.hc_ratio
            )));
        }
        Ok(())
    }
}

/// The random choice an operator made, echoed for introspection.
#[derive(Debug, Clone, PartialEq)]
pub enum CrossoverChoice {
    SinglePoint { cut: usize },
    TwoPoint { cuts: (usize, usize) },
    Intermediate { weights: Vec<f64> },
    Heuristic,
    Arithmetic { alpha: f64 },
    Ring { cut: usize },
}

/// One or two children plus the random choice that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverOutcome {
    pub children: Vec<Genome>,
    pub choice: CrossoverChoice,
}

fn check_same_length(p1: &Genome, p2: &Genome) -> Result<usize> {
    if p1.len() != p2.len() {
        return Err(Error::invalid(format!(
            "parent genomes must have equal length, got {} and {}",
            p1.len(),
            p2.len()
        )));
    }
    Ok(p1.len())
}

/// Single-point crossover: swap everything beyond a random cut.
///
/// The cut is uniform over the interior points `{1, …, D-1}`, so a genome
/// needs at least two genes.
pub fn single_point(p1: &Genome, p2: &Genome, rng: &mut RngStream) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    if d < 2 {
        return Err(Error::invalid(
            "single-point crossover needs length >= 2 (no interior cut exists)",
        ));
    }
    let cut = 1 + rng.below(d - 1);
    single_point_at(p1, p2, cut)
}

/// Single-point crossover at an explicit cut in `{1, …, D-1}`.
pub fn single_point_at(p1: &Genome, p2: &Genome, cut: usize) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    if cut == 0 || cut >= d {
        return Err(Error::invalid(format!(
            "cut must be an interior point in 1..{d}, got {cut}"
        )));
    }
    let splice = |head: &Genome, tail: &Genome| {
        let mut genes = head.genes()[..cut].to_vec();
        genes.extend_from_slice(&tail.genes()[cut..]);
        Genome::new(genes)
    };
    Ok(CrossoverOutcome {
        children: vec![splice(p1, p2), splice(p2, p1)],
        choice: CrossoverChoice::SinglePoint { cut },
    })
}

/// Two-point crossover: exchange the segment between two random cuts.
///
/// The cut pair is uniform over all `i < j` from the interior points
/// `{1, …, D-1}`, so a genome needs at least three genes.
pub fn two_point(p1: &Genome, p2: &Genome, rng: &mut RngStream) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    if d < 3 {
        return Err(Error::invalid(
            "two-point crossover needs length >= 3 (no two distinct interior cuts exist)",
        ));
    }
    // Two draws without replacement give a uniform unordered pair.
    let m = d - 1;
    let a = rng.below(m);
    let mut b = rng.below(m - 1);
    if b >= a {
        b += 1;
    }
    let (i, j) = (1 + a.min(b), 1 + a.max(b));
    two_point_at(p1, p2, i, j)
}

/// Two-point crossover at explicit cuts `1 <= i < j <= D-1`.
pub fn two_point_at(p1: &Genome, p2: &Genome, i: usize, j: usize) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    if i == 0 || i >= j || j >= d {
        return Err(Error::invalid(format!(
            "cuts must satisfy 1 <= i < j <= {}, got ({i}, {j})",
            d - 1
        )));
    }
    let swap_mid = |outer: &Genome, mid: &Genome| {
        let mut genes = outer.genes().to_vec();
        genes[i..j].copy_from_slice(&mid.genes()[i..j]);
        Genome::new(genes)
    };
    Ok(CrossoverOutcome {
        children: vec![swap_mid(p1, p2), swap_mid(p2, p1)],
        choice: CrossoverChoice::TwoPoint { cuts: (i, j) },
    })
}

/// Intermediate crossover: per-gene weighted average.
///
/// Draws one uniform weight in `[0, 1)` per gene; the first child moves from
/// `p1` toward `p2` by `weight * ic_ratio` of the gap, the second child uses
/// the mirrored move from `p2` toward `p1`.
pub fn intermediate(
    p1: &Genome,
    p2: &Genome,
    params: &CrossoverParams,
    rng: &mut RngStream,
) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    let weights: Vec<f64> = (0..d).map(|_| rng.next_f64()).collect();
    intermediate_with(p1, p2, params, weights)
}

/// Intermediate crossover with explicit per-gene weights.
pub fn intermediate_with(
    p1: &Genome,
    p2: &Genome,
    params: &CrossoverParams,
    weights: Vec<f64>,
) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    if weights.len() != d {
        return Err(Error::invalid(format!(
            "expected {d} weights, got {}",
            weights.len()
        )));
    }
    let blend = |from: &Genome, toward: &Genome| {
        Genome::new(
            from.genes()
                .iter()
                .zip(toward.genes())
                .zip(&weights)
                .map(|((&a, &b), &w)| a + w * params.ic_ratio * (b - a))
                .collect(),
        )
    };
    Ok(CrossoverOutcome {
        children: vec![blend(p1, p2), blend(p2, p1)],
        choice: CrossoverChoice::Intermediate { weights },
    })
}

/// Heuristic crossover: one child on the line through both parents, placed
/// `hc_ratio` of the way from the worse parent past the better one.
///
/// Deterministic; the caller must pass the fitter parent first.
pub fn heuristic(
    better: &Genome,
    worse: &Genome,
    params: &CrossoverParams,
) -> Result<CrossoverOutcome> {
    check_same_length(better, worse)?;
    let child = Genome::new(
        worse
            .genes()
            .iter()
            .zip(better.genes())
            .map(|(&w, &b)| w + params.hc_ratio * (b - w))
            .collect(),
    );
    Ok(CrossoverOutcome {
        children: vec![child],
        choice: CrossoverChoice::Heuristic,
    })
}

/// Arithmetic crossover: both children are weighted means of the parents
/// with a single random weight per mating.
pub fn arithmetic(p1: &Genome, p2: &Genome, rng: &mut RngStream) -> Result<CrossoverOutcome> {
    check_same_length(p1, p2)?;
    let alpha = rng.next_f64();
    arithmetic_with(p1, p2, alpha)
}

/// Arithmetic crossover with an explicit weight.
pub fn arithmetic_with(p1: &Genome, p2: &Genome, alpha: f64) -> Result<CrossoverOutcome> {
    check_same_length(p1, p2)?;
    let blend = |a: &Genome, b: &Genome| {
        Genome::new(
            a.genes()
                .iter()
                .zip(b.genes())
                .map(|(&x, &y)| alpha * x + (1.0 - alpha) * y)
                .collect(),
        )
    };
    Ok(CrossoverOutcome {
        children: vec![blend(p1, p2), blend(p2, p1)],
        choice: CrossoverChoice::Arithmetic { alpha },
    })
}

/// Ring crossover: both parents joined into a ring of length 2D, cut at a
/// random position; one child is read clockwise from the cut, the other
/// anti-clockwise.
///
/// The cut may fall on any of the 2D ring positions, including the two
/// parent junctions, so exact parent copies are possible children.
pub fn ring(p1: &Genome, p2: &Genome, rng: &mut RngStream) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    if d == 0 {
        return Err(Error::invalid("ring crossover needs length >= 1"));
    }
    let cut = rng.below(2 * d);
    ring_at(p1, p2, cut)
}

/// Ring crossover at an explicit cut in `{0, …, 2D-1}`.
pub fn ring_at(p1: &Genome, p2: &Genome, cut: usize) -> Result<CrossoverOutcome> {
    let d = check_same_length(p1, p2)?;
    if d == 0 {
        return Err(Error::invalid("ring crossover needs length >= 1"));
    }
    let len = 2 * d;
    if cut >= len {
        return Err(Error::invalid(format!(
            "ring cut must be in 0..{len}, got {cut}"
        )));
    }
    let at = |i: usize| {
        if i < d {
            p1[i]
        } else {
            p2[i - d]
        }
    };
    let clockwise = (0..d).map(|k| at((cut + k) % len)).collect();
    let anticlockwise = (0..d).map(|k| at((cut + len - 1 - k) % len)).collect();
    Ok(CrossoverOutcome {
        children: vec![Genome::new(clockwise), Genome::new(anticlockwise)],
        choice: CrossoverChoice::Ring { cut },
    })
}

/// Dispatches one mating through the operator `kind`.
///
/// For the heuristic operator the pair must already be ordered best-first;
/// every other operator treats the parents symmetrically.
pub fn apply(
    kind: CrossoverKind,
    p1: &Genome,
    p2: &Genome,
    params: &CrossoverParams,
    rng: &mut RngStream,
) -> Result<CrossoverOutcome> {
    match kind {
        CrossoverKind::SinglePoint => single_point(p1, p2, rng),
        CrossoverKind::TwoPoint => two_point(p1, p2, rng),
        CrossoverKind::Intermediate => intermediate(p1, p2, params, rng),
        CrossoverKind::Heuristic => heuristic(p1, p2, params),
        CrossoverKind::Arithmetic => arithmetic(p1, p2, rng),
        CrossoverKind::Ring => ring(p1, p2, rng),
    }
}
