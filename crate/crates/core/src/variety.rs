//! Brute-force enumeration of every child a structural crossover operator
//! can produce from one fixed parent pair.
//!
//! Parents use all-distinct symbolic genes (`1..=d` and `d+1..=2d`), so a
//! deduplicated child set measures the operator's structural variety rather
//! than accidental value collisions. Only the cut-based operators are
//! enumerable; the blending operators produce continuum-valued children, so
//! counting them is meaningless. The enumeration calls the same `*_at`
//! operator entry points the engine uses.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::crossover::{ring_at, single_point_at, two_point_at, CrossoverKind};
use crate::error::{Error, Result};
use crate::genome::Genome;

/// Largest genome length the enumeration accepts. Counts grow slowly, but
/// there is nothing to learn past this point.
pub const MAX_ENUMERATION_LENGTH: usize = 12;

/// Every distinct child one operator can produce at one genome length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffspringSet {
    pub operator: CrossoverKind,
    pub parent_length: usize,
    /// Distinct children over symbolic genes.
    pub children: BTreeSet<Vec<u64>>,
    /// Total (cut choice, child) enumerations before deduplication.
    pub raw_count: usize,
}

impl OffspringSet {
    pub fn distinct_count(&self) -> usize {
        self.children.len()
    }
}

/// Fixed symbolic parents for length `d`: `[1..=d]` and `[d+1..=2d]`.
pub fn symbolic_parents(d: usize) -> (Genome, Genome) {
    let p1 = Genome::new((1..=d).map(|v| v as f64).collect());
    let p2 = Genome::new((d + 1..=2 * d).map(|v| v as f64).collect());
    (p1, p2)
}

fn to_symbols(genome: &Genome) -> Vec<u64> {
    genome.genes().iter().map(|&g| g as u64).collect()
}

/// Enumerates every random choice `op` can make at genome length `d` and
/// collects the deduplicated child set.
///
/// Supports the structural operators only (single-point, two-point, ring);
/// `d` must be within `1..=MAX_ENUMERATION_LENGTH` and at least the
/// operator's minimum genome length.
pub fn enumerate_offspring(op: CrossoverKind, d: usize) -> Result<OffspringSet> {
    if !matches!(
        op,
        CrossoverKind::SinglePoint | CrossoverKind::TwoPoint | CrossoverKind::Ring
    ) {
        return Err(Error::invalid(format!(
            "{op} produces continuum-valued children; only SPC, TPC, and RC can be enumerated"
        )));
    }
    if !(1..=MAX_ENUMERATION_LENGTH).contains(&d) {
        return Err(Error::invalid(format!(
            "enumeration length must be in 1..={MAX_ENUMERATION_LENGTH}, got {d}"
        )));
    }
    let (p1, p2) = symbolic_parents(d);
    let mut children = BTreeSet::new();
    let mut raw_count = 0;
    let mut take = |outcome: crate::crossover::CrossoverOutcome| {
        for child in &outcome.children {
            children.insert(to_symbols(child));
            raw_count += 1;
        }
    };
    match op {
        CrossoverKind::SinglePoint => {
            for cut in 1..d {
                take(single_point_at(&p1, &p2, cut)?);
            }
        }
        CrossoverKind::TwoPoint => {
            for i in 1..d {
                for j in (i + 1)..d {
                    take(two_point_at(&p1, &p2, i, j)?);
                }
            }
        }
        CrossoverKind::Ring => {
            for cut in 0..2 * d {
                take(ring_at(&p1, &p2, cut)?);
            }
        }
        _ => unreachable!(),
    }
    if raw_count == 0 {
        // No admissible cut at this length (SPC below 2, TPC below 3).
        return Err(Error::invalid(format!(
            "{op} has no admissible cut at length {d}"
        )));
    }
    Ok(OffspringSet {
        operator: op,
        parent_length: d,
        children,
        raw_count,
    })
}

/// Plain-text table of distinct-children counts per operator and length,
/// with the RC/SPC ratio. Lengths where an operator has no admissible cut
/// show `n/a`.
pub fn variety_report(d_min: usize, d_max: usize) -> Result<String> {
    if d_min < 1 || d_min > d_max || d_max > MAX_ENUMERATION_LENGTH {
        return Err(Error::invalid(format!(
            "need 1 <= d_min <= d_max <= {MAX_ENUMERATION_LENGTH}, got ({d_min}, {d_max})"
        )));
    }
    let count = |op, d| enumerate_offspring(op, d).map(|s| s.distinct_count()).ok();
    let cell = |c: Option<usize>| match c {
        Some(v) => v.to_string(),
        None => "n/a".to_string(),
    };
    let mut out = String::new();
    writeln!(
        out,
        "{:>3}  {:>8}  {:>8}  {:>8}  {:>8}",
        "d", "SPC", "TPC", "RC", "RC/SPC"
    )
    .unwrap();
    for d in d_min..=d_max {
        let spc = count(CrossoverKind::SinglePoint, d);
        let tpc = count(CrossoverKind::TwoPoint, d);
        let rc = count(CrossoverKind::Ring, d);
        let ratio = match (rc, spc) {
            (Some(r), Some(s)) if s > 0 => format!("{:.2}", r as f64 / s as f64),
            _ => "n/a".to_string(),
        };
        writeln!(
            out,
            "{:>3}  {:>8}  {:>8}  {:>8}  {:>8}",
            d,
            cell(spc),
            cell(tpc),
            cell(rc),
            ratio
        )
        .unwrap();
    }
    Ok(out)
}
