//! Multi-run experiment harness: a (function × operator) grid of independent
//! seeded runs, aggregated into best/worst/average statistics with CSV and
//! plain-text table output.
//!
//! Trial seeds are derived per (master seed, function, operator, trial), so
//! adding functions or operators to a plan, or reordering it, never changes
//! the results of existing cells. Trials may run in parallel; results are
//! assembled in plan order either way, and the serial and parallel paths
//! produce bitwise-identical statistics.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::benchmarks::FunctionId;
use crate::crossover::CrossoverKind;
use crate::engine::{self, GaConfig};
use crate::error::{Error, Result};
use crate::rng::derive_seed;

/// Name of the trial-seed derivation, echoed in CSV rows so an artifact
/// records how to reproduce each run.
pub const SEED_SCHEME: &str = "fnv1a-splitmix64(master,function/operator,trial)";

/// A grid of (function, operator) cells to run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub functions: Vec<FunctionId>,
    pub operators: Vec<CrossoverKind>,
    pub runs_per_cell: usize,
    pub base_config: GaConfig,
    pub master_seed: u64,
}

impl ExperimentPlan {
    /// The full six-function, six-operator grid at default settings with 30
    /// runs per cell.
    pub fn full_grid(master_seed: u64) -> Self {
        ExperimentPlan {
            functions: FunctionId::ALL.to_vec(),
            operators: CrossoverKind::ALL.to_vec(),
            runs_per_cell: 30,
            base_config: GaConfig::default(),
            master_seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(Error::invalid("experiment needs at least one function"));
        }
        if self.operators.is_empty() {
            return Err(Error::invalid("experiment needs at least one operator"));
        }
        if self.runs_per_cell < 1 {
            return Err(Error::invalid("runs_per_cell must be at least 1"));
        }
        self.base_config.validate()
    }

    /// Seed of one trial; a pure function of (master, function, operator,
    /// trial index), independent of plan order.
    pub fn trial_seed(&self, function: FunctionId, operator: CrossoverKind, trial: usize) -> u64 {
        let label = format!("{}/{}", function.tag(), operator.tag());
        derive_seed(self.master_seed, &label, trial as u64)
    }
}

/// Statistics of one (function, operator) cell over its trials' final best
/// values.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub function: FunctionId,
    pub operator: CrossoverKind,
    pub best: f64,
    pub worst: f64,
    pub average: f64,
    pub all_bests: Vec<f64>,
}

fn aggregate(function: FunctionId, operator: CrossoverKind, all_bests: Vec<f64>) -> CellStats {
    let mut best = f64::INFINITY;
    let mut worst = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &b in &all_bests {
        best = best.min(b);
        worst = worst.max(b);
        sum += b;
    }
    CellStats {
        function,
        operator,
        best,
        worst,
        average: sum / all_bests.len() as f64,
        all_bests,
    }
}

fn run_cell(
    plan: &ExperimentPlan,
    f: FunctionId,
    op: CrossoverKind,
    parallel: bool,
) -> Result<CellStats> {
    let trial = |k: usize| -> Result<f64> {
        let cfg = GaConfig {
            crossover: op,
            seed: plan.trial_seed(f, op, k),
            ..plan.base_config.clone()
        };
        engine::run(&cfg, f).map(|r| r.best_value)
    };
    let bests: Result<Vec<f64>> = if parallel {
        (0..plan.runs_per_cell).into_par_iter().map(trial).collect()
    } else {
        (0..plan.runs_per_cell).map(trial).collect()
    };
    Ok(aggregate(f, op, bests?))
}

fn run_grid(plan: &ExperimentPlan, parallel: bool) -> Result<Vec<CellStats>> {
    plan.validate()?;
    let mut cells = Vec::with_capacity(plan.functions.len() * plan.operators.len());
    for &f in &plan.functions {
        for &op in &plan.operators {
            cells.push(run_cell(plan, f, op, parallel)?);
        }
    }
    Ok(cells)
}

/// Runs the whole plan, trials in parallel, cells in plan order
/// (function-major, operator-minor).
pub fn run_experiment(plan: &ExperimentPlan) -> Result<Vec<CellStats>> {
    run_grid(plan, true)
}

/// Single-threaded reference execution; identical output to
/// [`run_experiment`].
pub fn run_experiment_serial(plan: &ExperimentPlan) -> Result<Vec<CellStats>> {
    run_grid(plan, false)
}

/// Renders a value with six significant digits, plain decimal where that is
/// readable and scientific notation for extreme magnitudes.
fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0.00000".to_string();
    }
    let a = v.abs();
    if !(1e-4..1e6).contains(&a) {
        return format!("{v:.5e}");
    }
    let mut exp = a.log10().floor() as i32;
    // log10 can land a hair on the wrong side of an integer.
    if 10f64.powi(exp + 1) <= a {
        exp += 1;
    } else if 10f64.powi(exp) > a {
        exp -= 1;
    }
    let decimals = (5 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Emits one CSV row per cell with six-significant-digit values. Byte
/// output is deterministic for fixed input.
pub fn emit_csv(stats: &[CellStats]) -> Result<String> {
    if stats.is_empty() {
        return Err(Error::invalid("no cells to emit"));
    }
    let mut out = String::from("function,operator,best,worst,average,runs,seed_scheme\n");
    for cell in stats {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            cell.function.tag(),
            cell.operator.tag(),
            sig6(cell.best),
            sig6(cell.worst),
            sig6(cell.average),
            cell.all_bests.len(),
            SEED_SCHEME
        )
        .unwrap();
    }
    Ok(out)
}

/// Renders a human-readable grid: one block per function with Best / Worst
/// / Average rows and one column per operator, in canonical order.
///
/// The stats must cover the full cartesian product of the functions and
/// operators that appear; a missing combination is an error naming it.
pub fn emit_table(stats: &[CellStats]) -> Result<String> {
    if stats.is_empty() {
        return Err(Error::invalid("no cells to emit"));
    }
    let functions: BTreeSet<FunctionId> = stats.iter().map(|c| c.function).collect();
    let operators: BTreeSet<CrossoverKind> = stats.iter().map(|c| c.operator).collect();
    let lookup = |f: FunctionId, op: CrossoverKind| -> Result<&CellStats> {
        stats
            .iter()
            .find(|c| c.function == f && c.operator == op)
            .ok_or(Error::MissingCell {
                function: f.tag().to_string(),
                operator: op.tag().to_string(),
            })
    };
    let mut out = String::new();
    for (fi, &f) in functions.iter().enumerate() {
        if fi > 0 {
            out.push('\n');
        }
        writeln!(out, "{} ({})", f.tag(), f.name()).unwrap();
        write!(out, "{:<9}", "").unwrap();
        for &op in &operators {
            write!(out, "{:>13}", op.tag()).unwrap();
        }
        out.push('\n');
        for (label, pick) in [("Best", 0usize), ("Worst", 1), ("Average", 2)] {
            write!(out, "{label:<9}").unwrap();
            for &op in &operators {
                let cell = lookup(f, op)?;
                let value = match pick {
                    0 => cell.best,
                    1 => cell.worst,
                    _ => cell.average,
                };
                write!(out, "{:>13}", sig6(value)).unwrap();
            }
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_plan() -> ExperimentPlan {
        ExperimentPlan {
            functions: vec![FunctionId::F1],
            operators: vec![CrossoverKind::Ring],
            runs_per_cell: 3,
            base_config: GaConfig {
                population_size: 6,
                dimension: 4,
                eval_budget: 60,
                elite_count: 1,
                ..Default::default()
            },
            master_seed: 42,
        }
    }

    #[test]
    fn single_run_statistics_collapse() {
        let mut plan = tiny_plan();
        plan.runs_per_cell = 1;
        let cells = run_experiment(&plan).unwrap();
        assert_eq!(cells.len(), 1);
        let c = &cells[0];
        assert_eq!(c.best, c.worst);
        assert_eq!(c.best, c.average);
        assert_eq!(c.all_bests.len(), 1);
    }

    #[test]
    fn experiments_are_deterministic() {
        let plan = tiny_plan();
        assert_eq!(
            run_experiment(&plan).unwrap(),
            run_experiment(&plan).unwrap()
        );
    }

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        let mut plan = tiny_plan();
        plan.operators = vec![CrossoverKind::SinglePoint, CrossoverKind::Ring];
        plan.runs_per_cell = 5;
        let par = run_experiment(&plan).unwrap();
        let ser = run_experiment_serial(&plan).unwrap();
        assert_eq!(par.len(), ser.len());
        for (a, b) in par.iter().zip(&ser) {
            assert_eq!(a.best.to_bits(), b.best.to_bits());
            assert_eq!(a.worst.to_bits(), b.worst.to_bits());
            assert_eq!(a.average.to_bits(), b.average.to_bits());
        }
    }

    #[test]
    fn cell_results_do_not_depend_on_plan_shape() {
        let small = tiny_plan();
        let mut large = tiny_plan();
        large.operators = vec![
            CrossoverKind::SinglePoint,
            CrossoverKind::Ring,
            CrossoverKind::Arithmetic,
        ];
        large.functions = vec![FunctionId::F1, FunctionId::F2];
        let small_cells = run_experiment(&small).unwrap();
        let large_cells = run_experiment(&large).unwrap();
        let small_rc = &small_cells[0];
        let large_rc = large_cells
            .iter()
            .find(|c| c.function == FunctionId::F1 && c.operator == CrossoverKind::Ring)
            .unwrap();
        assert_eq!(small_rc, large_rc);
    }

    #[test]
    fn statistics_are_ordered() {
        let mut plan = tiny_plan();
        plan.runs_per_cell = 8;
        for cell in run_experiment(&plan).unwrap() {
            assert!(cell.best <= cell.average);
            assert!(cell.average <= cell.worst);
            assert_eq!(
                cell.best,
                cell.all_bests.iter().copied().fold(f64::INFINITY, f64::min)
            );
            assert_eq!(
                cell.worst,
                cell.all_bests
                    .iter()
                    .copied()
                    .fold(f64::NEG_INFINITY, f64::max)
            );
        }
    }

    #[test]
    fn empty_plans_are_rejected() {
        let mut plan = tiny_plan();
        plan.functions.clear();
        assert!(run_experiment(&plan).is_err());
        let mut plan = tiny_plan();
        plan.operators.clear();
        assert!(run_experiment(&plan).is_err());
        let mut plan = tiny_plan();
        plan.runs_per_cell = 0;
        assert!(run_experiment(&plan).is_err());
    }

    fn sample_cell() -> CellStats {
        CellStats {
            function: FunctionId::F1,
            operator: CrossoverKind::Ring,
            best: 0.0027,
            worst: 6.163,
            average: 0.3299,
            all_bests: vec![0.0; 30],
        }
    }

    #[test]
    fn csv_renders_six_significant_digits() {
        let csv = emit_csv(&[sample_cell()]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "function,operator,best,worst,average,runs,seed_scheme"
        );
        let row = lines.next().unwrap();
        assert!(
            row.starts_with("F1,RC,0.00270000,6.16300,0.329900,30,"),
            "unexpected row: {row}"
        );
    }

    #[test]
    fn csv_is_byte_deterministic_and_rejects_empty_input() {
        let cells = [sample_cell()];
        assert_eq!(emit_csv(&cells).unwrap(), emit_csv(&cells).unwrap());
        assert!(emit_csv(&[]).is_err());
    }

    #[test]
    fn csv_round_trips_at_six_digits() {
        let mut plan = tiny_plan();
        plan.operators = vec![CrossoverKind::Heuristic, CrossoverKind::Ring];
        let cells = run_experiment(&plan).unwrap();
        let csv = emit_csv(&cells).unwrap();
        for (line, cell) in csv.lines().skip(1).zip(&cells) {
            let fields: Vec<&str> = line.split(',').collect();
            for (text, value) in fields[2..5]
                .iter()
                .zip([cell.best, cell.worst, cell.average])
            {
                let parsed: f64 = text.parse().unwrap();
                assert_eq!(sig6(parsed), sig6(value), "{text} round-trips badly");
            }
        }
    }

    #[test]
    fn sig6_covers_magnitudes() {
        assert_eq!(sig6(0.0), "0.00000");
        assert_eq!(sig6(0.0027), "0.00270000");
        assert_eq!(sig6(6.163), "6.16300");
        assert_eq!(sig6(0.3299), "0.329900");
        assert_eq!(sig6(-418.9829), "-418.983");
        assert_eq!(sig6(123456.4), "123456");
        assert_eq!(sig6(1.0), "1.00000");
        assert!(sig6(1.5e-7).contains('e'));
        assert!(sig6(2.5e8).contains('e'));
    }

    #[test]
    fn table_lays_out_blocks_rows_and_columns() {
        let mut plan = tiny_plan();
        plan.functions = vec![FunctionId::F1, FunctionId::F2];
        plan.operators = vec![CrossoverKind::SinglePoint, CrossoverKind::Ring];
        let cells = run_experiment(&plan).unwrap();
        let table = emit_table(&cells).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        // Two blocks of (title + header + 3 rows) separated by a blank line.
        assert_eq!(lines.len(), 11);
        assert!(lines[0].starts_with("F1"));
        assert!(lines[1].contains("SPC") && lines[1].contains("RC"));
        assert!(lines[2].starts_with("Best"));
        assert!(lines[3].starts_with("Worst"));
        assert!(lines[4].starts_with("Average"));
        assert!(lines[6].starts_with("F2"));
    }

    #[test]
    fn table_of_single_cell_grid() {
        let table = emit_table(&[sample_cell()]).unwrap();
        assert_eq!(table.lines().count(), 5);
    }

    #[test]
    fn table_names_the_missing_cell() {
        let mut cells = vec![sample_cell()];
        cells.push(CellStats {
            function: FunctionId::F3,
            operator: CrossoverKind::Ring,
            ..sample_cell()
        });
        cells.push(CellStats {
            function: FunctionId::F1,
            operator: CrossoverKind::Heuristic,
            ..sample_cell()
        });
        // Grid is {F1, F3} x {HC, RC} but (F3, HC) is absent.
        let err = emit_table(&cells).unwrap_err();
        assert_eq!(
            err,
            Error::MissingCell {
                function: "F3".to_string(),
                operator: "HC".to_string()
            }
        );
    }
}
