//! The generational GA loop: rank scaling, stochastic universal sampling,
//! crossover dispatch, Gaussian mutation, elitism, bound repair, all under a
//! hard objective-evaluation budget.
//!
//! Budget accounting: evaluating the initial population counts toward the
//! budget, and the run stops the moment the budget is spent. A generation
//! whose children no longer fit is truncated — the children that could not
//! be evaluated are replaced by the next-ranked members of the previous
//! generation, so the population size never changes.

use crate::benchmarks::{evaluate, spec_of, FunctionId};
use crate::crossover::{self, CrossoverKind, CrossoverParams};
use crate::error::{Error, Result};
use crate::genome::{clamp, init_population, Bounds, Genome, Individual, Population};
use crate::rng::RngStream;

/// Linear-ranking selection pressure: the best individual's weight. Weights
/// run linearly down to `2 - SELECTION_PRESSURE` for the worst.
const SELECTION_PRESSURE: f64 = 2.0;

/// Full configuration of a single GA run.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub dimension: usize,
    /// Probability that a selected pair is recombined rather than copied.
    pub crossover_rate: f64,
    /// Per-gene mutation probability.
    pub mutation_rate: f64,
    /// Mutation standard deviation as a fraction of the bound width.
    pub mutation_sigma_fraction: f64,
    /// Number of best individuals copied unchanged each generation.
    pub elite_count: usize,
    /// Total permitted objective evaluations, initialization included.
    pub eval_budget: u64,
    pub crossover: CrossoverKind,
    pub crossover_params: CrossoverParams,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 20,
            dimension: 30,
            crossover_rate: 0.8,
            mutation_rate: 0.01,
            mutation_sigma_fraction: 0.1,
            elite_count: 2,
            eval_budget: 10_000,
            crossover: CrossoverKind::Ring,
            crossover_params: CrossoverParams::default(),
            seed: 42,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::invalid(format!(
                "population_size must be at least 2, got {}",
                self.population_size
            )));
        }
        if self.dimension < 1 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::invalid(format!(
                "crossover_rate must be in [0, 1], got {}",
                self.crossover_rate
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::invalid(format!(
                "mutation_rate must be in [0, 1], got {}",
                self.mutation_rate
            )));
        }
        if self.mutation_sigma_fraction.is_nan() || self.mutation_sigma_fraction <= 0.0 {
            return Err(Error::invalid(format!(
                "mutation_sigma_fraction must be > 0, got {}",
                self.mutation_sigma_fraction
            )));
        }
        if self.elite_count >= self.population_size {
            return Err(Error::invalid(format!(
                "elite_count ({}) must be smaller than population_size ({})",
                self.elite_count, self.population_size
            )));
        }
        if self.eval_budget < self.population_size as u64 {
            return Err(Error::invalid(format!(
                "eval_budget ({}) must cover the initial population ({})",
                self.eval_budget, self.population_size
            )));
        }
        self.crossover_params.validate()
    }
}

/// Summary of one completed run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Best objective value ever seen during the run.
    pub best_value: f64,
    pub best_genome: Genome,
    /// Best fitness of each population, generation 0 first. With at least
    /// one elite this trace is monotone nonincreasing and ends at
    /// `best_value`.
    pub best_by_generation: Vec<f64>,
    pub evaluations_used: u64,
    pub seed: u64,
}

/// Maps raw objective values (lower is better) to linear-ranking selection
/// weights that sum to the number of values.
///
/// The best individual gets weight `SELECTION_PRESSURE`, the worst gets
/// `2 - SELECTION_PRESSURE`, everyone in between interpolates linearly by
/// rank. Ties keep their original order. Only ranks matter, so any strictly
/// monotone transform of the objective leaves the weights unchanged.
pub fn rank_scale(values: &[f64]) -> Vec<f64> {
    assert!(!values.is_empty(), "rank_scale needs at least one value");
    let n = values.len();
    if n == 1 {
        return vec![1.0];
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("no NaN fitness"));
    let sp = SELECTION_PRESSURE;
    let mut weights = vec![0.0; n];
    for (rank0, &idx) in order.iter().enumerate() {
        // rank0 = 0 is the best individual.
        let r = (rank0 + 1) as f64;
        weights[idx] = 2.0 - sp + 2.0 * (sp - 1.0) * (n as f64 - r) / (n as f64 - 1.0);
    }
    weights
}

/// Stochastic universal sampling: `count` equally spaced pointers over the
/// cumulative weights, one random offset.
pub fn sus_select(weights: &[f64], count: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    let step = sus_step(weights, count)?;
    let offset = rng.uniform(0.0, step);
    sus_select_with_offset(weights, count, offset)
}

/// SUS with an explicit pointer offset in `[0, sum / count)`.
///
/// Each index is selected either `floor` or `ceil` of `count * w_i / sum`
/// times — the low-variance guarantee that distinguishes SUS from repeated
/// roulette spins.
pub fn sus_select_with_offset(weights: &[f64], count: usize, offset: f64) -> Result<Vec<usize>> {
    let step = sus_step(weights, count)?;
    if !(0.0..step).contains(&offset) {
        return Err(Error::invalid(format!(
            "offset must be in [0, {step}), got {offset}"
        )));
    }
    let mut selected = Vec::with_capacity(count);
    let mut idx = 0;
    let mut cumulative = weights[0];
    for k in 0..count {
        let pointer = offset + k as f64 * step;
        while pointer >= cumulative && idx + 1 < weights.len() {
            idx += 1;
            cumulative += weights[idx];
        }
        selected.push(idx);
    }
    Ok(selected)
}

fn sus_step(weights: &[f64], count: usize) -> Result<f64> {
    if count == 0 {
        return Err(Error::invalid("selection count must be positive"));
    }
    if weights.is_empty() {
        return Err(Error::invalid("weights must be nonempty"));
    }
    if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
        return Err(Error::invalid("weights must be nonnegative"));
    }
    let sum: f64 = weights.iter().sum();
    if sum <= 0.0 {
        return Err(Error::invalid("weights must not all be zero"));
    }
    Ok(sum / count as f64)
}

/// Gaussian mutation: each gene independently gains Normal(0, sigma^2)
/// noise with probability `p_m`, where sigma is `sigma_fraction` of the
/// bound width; mutated genes are clamped back into the box.
pub fn gaussian_mutate(
    genome: &Genome,
    bounds: Bounds,
    p_m: f64,
    sigma_fraction: f64,
    rng: &mut RngStream,
) -> Genome {
    let sigma = sigma_fraction * bounds.width();
    Genome::new(
        genome
            .genes()
            .iter()
            .map(|&gene| {
                if rng.chance(p_m) {
                    bounds.clamp_value(gene + rng.normal(sigma))
                } else {
                    gene
                }
            })
            .collect(),
    )
}

/// Indices of `pop` ordered best-first (ascending fitness, stable on ties).
/// Every member must be evaluated.
fn ranked_indices(pop: &Population) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pop.size()).collect();
    order.sort_by(|&a, &b| {
        let fa = pop.members[a].fitness.expect("member evaluated");
        let fb = pop.members[b].fitness.expect("member evaluated");
        fa.partial_cmp(&fb).expect("no NaN fitness")
    });
    order
}

/// Advances the population by one generation.
///
/// The `elite_count` best members are copied unchanged; the remaining slots
/// are filled by SUS-selected pairs that are crossed over with probability
/// `crossover_rate` (or passed through as copies), then mutated and clamped
/// to `bounds`. New children are evaluated until the budget runs out;
/// children that no longer fit are replaced by the next-ranked members of
/// the current generation, so the population keeps its size.
pub fn step<F>(
    pop: &Population,
    cfg: &GaConfig,
    objective: &F,
    bounds: Bounds,
    rng: &mut RngStream,
) -> Result<Population>
where
    F: Fn(&Genome) -> f64,
{
    if pop.evaluations_used >= cfg.eval_budget {
        return Err(Error::BudgetExhausted {
            used: pop.evaluations_used,
            budget: cfg.eval_budget,
        });
    }
    let n = pop.size();
    let ranked = ranked_indices(pop);
    let elite_count = cfg.elite_count.min(n);
    let slots = n - elite_count;

    let mut next: Vec<Individual> = ranked[..elite_count]
        .iter()
        .map(|&i| pop.members[i].clone())
        .collect();

    // Breed raw children for the open slots.
    let fitnesses: Vec<f64> = pop
        .members
        .iter()
        .map(|m| m.fitness.expect("member evaluated"))
        .collect();
    let weights = rank_scale(&fitnesses);
    let mut children: Vec<Genome> = Vec::with_capacity(slots);
    while children.len() < slots {
        let pair = sus_select(&weights, 2, rng)?;
        let (a, b) = (pair[0], pair[1]);
        let offspring = if rng.chance(cfg.crossover_rate) {
            let (first, second) = if cfg.crossover == CrossoverKind::Heuristic {
                // Heuristic crossover wants the fitter parent first.
                if fitnesses[a] <= fitnesses[b] {
                    (a, b)
                } else {
                    (b, a)
                }
            } else {
                (a, b)
            };
            crossover::apply(
                cfg.crossover,
                &pop.members[first].genome,
                &pop.members[second].genome,
                &cfg.crossover_params,
                rng,
            )?
            .children
        } else {
            vec![pop.members[a].genome.clone(), pop.members[b].genome.clone()]
        };
        for child in offspring {
            if children.len() < slots {
                children.push(child);
            }
            // A second child past the last slot is dropped.
        }
    }

    let remaining = cfg.eval_budget - pop.evaluations_used;
    let admitted = (slots as u64).min(remaining) as usize;
    let mut new_evals = 0u64;
    for child in children.into_iter().take(admitted) {
        let repaired = clamp(
            &gaussian_mutate(
                &child,
                bounds,
                cfg.mutation_rate,
                cfg.mutation_sigma_fraction,
                rng,
            ),
            bounds,
        );
        let fitness = objective(&repaired);
        next.push(Individual::evaluated(repaired, fitness));
        new_evals += 1;
    }

    // Budget ran dry mid-generation: keep size n with the next-ranked
    // members of the current generation.
    let mut backfill = ranked[elite_count..].iter();
    while next.len() < n {
        let &i = backfill.next().expect("previous generation has n members");
        next.push(pop.members[i].clone());
    }

    Ok(Population {
        members: next,
        generation: pop.generation + 1,
        evaluations_used: pop.evaluations_used + new_evals,
    })
}

/// Runs the full GA on one benchmark function.
///
/// Initializes the population (those evaluations count toward the budget),
/// then steps generations until the budget is exhausted. Returns the
/// best-ever individual and the per-generation best trace.
pub fn run(cfg: &GaConfig, id: FunctionId) -> Result<RunResult> {
    cfg.validate()?;
    let spec = spec_of(id, cfg.dimension)?;
    let objective =
        move |g: &Genome| evaluate(id, g.genes()).expect("dimension validated by spec_of");

    let mut rng = RngStream::seed_from(cfg.seed);
    let mut pop = init_population(&spec, cfg.population_size, &mut rng)?;
    for member in &mut pop.members {
        member.fitness = Some(objective(&member.genome));
    }
    pop.evaluations_used = pop.size() as u64;

    let mut best_value = f64::INFINITY;
    let mut best_genome = pop.members[0].genome.clone();
    let mut best_by_generation = Vec::new();
    let mut note_best = |pop: &Population, trace: &mut Vec<f64>| {
        let idx = pop.best_index().expect("population evaluated");
        let fit = pop.members[idx].fitness.expect("member evaluated");
        trace.push(fit);
        if fit < best_value {
            best_value = fit;
            best_genome = pop.members[idx].genome.clone();
        }
    };
    note_best(&pop, &mut best_by_generation);

    while pop.evaluations_used < cfg.eval_budget {
        pop = step(&pop, cfg, &objective, spec.bounds, &mut rng)?;
        note_best(&pop, &mut best_by_generation);
    }

    Ok(RunResult {
        best_value,
        best_genome,
        best_by_generation,
        evaluations_used: pop.evaluations_used,
        seed: cfg.seed,
    })
}
