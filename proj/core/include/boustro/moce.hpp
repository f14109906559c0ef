#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "boustro/pareto.hpp"
#include "boustro/rng.hpp"
#include "boustro/scenario.hpp"
#include "boustro/speed_opt.hpp"

namespace boustro {

/// Sampling distribution of the cross-entropy loop: independent Bernoulli
/// probabilities for each binary traversal slot (trackline j, slot k) and a
/// normal distribution over the duration budget T.
struct MoceState {
    std::size_t trackline_count = 0;
    int z = 0;
    std::vector<double> bernoulli_p;  // row-major trackline_count x z
    double t_mean = 0.0;              // s
    double t_std = 0.0;               // s
    int generation = 0;
    double p_floor = 0.01;
    double t_std_floor = 60.0;  // s

    double p(std::size_t j, int k) const { return bernoulli_p[j * z + k]; }
};

struct MoceConfig {
    int population = 500;
    double elite_fraction = 0.1;
    double smoothing = 0.7;
    int max_generations = 200;
    int stagnation_patience = 20;
    std::uint64_t rng_seed = 0;

    double p_init = 0.1;
    double p_floor = 0.01;
    double t_std_floor = 60.0;  // s
    std::size_t archive_capacity = 64;
    unsigned threads = 0;  // 0 = hardware concurrency
    SolverOptions solver;
};

/// One sampled solution: binary slots, aggregated traversal counts, budget,
/// and (after evaluation) the inner-solver result and objective pair.
struct CandidateSample {
    std::vector<std::uint8_t> bits;  // trackline_count x z
    std::vector<int> delta;          // per trackline, sum over slots
    double budget = 0.0;             // s
    ObjectivePair evaluation;
    SpeedSolution speeds;
    bool valid = false;

    bool all_zero() const;
    /// Full-length plan (counts + speeds); inactive tracklines get speed 0.
    PathPlan to_plan() const;
};

MoceState initial_state(const Scenario& scenario, const MoceConfig& config);

/// Draws delta bits and a budget, repairing infeasible draws by dropping the
/// most expensive traversals and resampling empty selections (bounded
/// retries, then the all-zero candidate).
CandidateSample sample_candidate(const MoceState& state, const Scenario& scenario, Rng& rng);

/// Runs the inner speed solver on (delta, budget) and fills evaluation.
/// All-zero candidates evaluate to (sum of priors, 0) without a solve.
/// Propagates NoConvergence.
void evaluate_candidate(CandidateSample& candidate, const EffortMatrix& effort,
                        const std::vector<double>& priors, const AuvLimits& limits,
                        const SolverOptions& solver = {});

/// Ranks by (non-domination rank, crowding distance) and returns the top
/// ceil(elite_fraction * population). Objective ranges for the crowding
/// normalization come from the archive when it spans a range.
std::vector<CandidateSample> select_elites(const std::vector<CandidateSample>& population,
                                           const ParetoArchive& archive,
                                           double elite_fraction);

/// Smoothed cross-entropy update toward the elite statistics; probabilities
/// and t_std are clamped to their floors.
MoceState update_state(const MoceState& state, const std::vector<CandidateSample>& elites,
                       double smoothing);

struct MoceProgress {
    int generation = 0;
    std::size_t archive_size = 0;
    double best_p_nd = 0.0;
    double elapsed_seconds = 0.0;
    std::size_t discarded = 0;  // candidates dropped on inner-solver failure
    const ParetoArchive& archive;
};
using ProgressHook = std::function<void(const MoceProgress&)>;

/// The full hierarchical loop: sample -> inner solve -> archive insert ->
/// elite select -> state update, until max_generations or until the archive
/// stagnates. Deterministic given (scenario, config), for any thread count:
/// per-candidate streams are derived from (seed, generation, index) and
/// archive insertion happens in index order after each generation.
ParetoArchive run_moce(const Scenario& scenario, const MoceConfig& config,
                       const ProgressHook& hook = {});

}  // namespace boustro
