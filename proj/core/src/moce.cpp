#include "boustro/moce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "boustro/parallel.hpp"

namespace boustro {

bool CandidateSample::all_zero() const {
    return std::all_of(delta.begin(), delta.end(), [](int d) { return d == 0; });
}

PathPlan CandidateSample::to_plan() const {
    PathPlan plan;
    plan.counts = delta;
    plan.speeds.assign(delta.size(), 0.0);
    std::size_t a = 0;
    for (std::size_t j = 0; j < delta.size(); ++j) {
        if (delta[j] > 0) plan.speeds[j] = 1.0 / speeds.mu[a++];
    }
    return plan;
}

MoceState initial_state(const Scenario& scenario, const MoceConfig& config) {
    MoceState state;
    state.trackline_count = scenario.tracklines.size();
    state.z = scenario.limits.z_max;
    state.p_floor = config.p_floor;
    state.t_std_floor = config.t_std_floor;
    const double p = std::clamp(config.p_init, config.p_floor, 1.0 - config.p_floor);
    state.bernoulli_p.assign(state.trackline_count * static_cast<std::size_t>(state.z), p);
    state.t_mean = scenario.limits.t_max / 2.0;
    state.t_std = std::max(scenario.limits.t_max / 4.0, config.t_std_floor);
    state.generation = 0;
    return state;
}

namespace {

// Normal draw forced into [lo, hi]. Clamping (rather than resampling) puts
// point mass on the interval ends, so the vertex budgets T_lo and T_hi - the
// extremes of the speed trade-off - actually get sampled and archived.
double truncated_normal(Rng& rng, double mean, double stddev, double lo, double hi) {
    if (hi <= lo) return lo;
    return std::clamp(rng.normal(mean, stddev), lo, hi);
}

}  // namespace

CandidateSample sample_candidate(const MoceState& state, const Scenario& scenario, Rng& rng) {
    const std::size_t m = state.trackline_count;
    const auto z = static_cast<std::size_t>(state.z);
    const double v_min = scenario.limits.v_min;
    const double v_max = scenario.limits.v_max;
    const double t_max = scenario.limits.t_max;

    CandidateSample c;
    for (int retry = 0; retry < 100; ++retry) {
        c.bits.assign(m * z, 0);
        c.delta.assign(m, 0);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < z; ++k)
                if (rng.bernoulli(state.bernoulli_p[j * z + k])) {
                    c.bits[j * z + k] = 1;
                    ++c.delta[j];
                }
        if (c.all_zero()) continue;

        double t_lo = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            t_lo += c.delta[j] * scenario.tracklines[j].length() / v_max;

        if (t_lo > t_max) {
            // Repair: drop the most expensive traversals until the fastest
            // possible path fits the budget cap.
            struct Slot {
                double cost;
                std::size_t j, k;
            };
            std::vector<Slot> set_bits;
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < z; ++k)
                    if (c.bits[j * z + k])
                        set_bits.push_back({scenario.tracklines[j].length() / v_max, j, k});
            std::sort(set_bits.begin(), set_bits.end(), [](const Slot& a, const Slot& b) {
                if (a.cost != b.cost) return a.cost > b.cost;
                if (a.j != b.j) return a.j < b.j;
                return a.k < b.k;
            });
            for (const auto& slot : set_bits) {
                if (t_lo <= t_max) break;
                c.bits[slot.j * z + slot.k] = 0;
                --c.delta[slot.j];
                t_lo -= slot.cost;
            }
            if (c.all_zero()) continue;
        }

        double t_hi = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            t_hi += c.delta[j] * scenario.tracklines[j].length() / v_min;
        c.budget = truncated_normal(rng, state.t_mean, state.t_std, t_lo,
                                    std::min(t_hi, t_max));
        return c;
    }

    // Persistent empty draws: return the explicit zero candidate.
    c.bits.assign(m * z, 0);
    c.delta.assign(m, 0);
    c.budget = 0.0;
    return c;
}

void evaluate_candidate(CandidateSample& candidate, const EffortMatrix& effort,
                        const std::vector<double>& priors, const AuvLimits& limits,
                        const SolverOptions& solver) {
    if (candidate.all_zero()) {
        candidate.evaluation.p_nd = std::accumulate(priors.begin(), priors.end(), 0.0);
        candidate.evaluation.duration = 0.0;
        candidate.speeds = SpeedSolution{};
        candidate.valid = true;
        return;
    }
    SpeedProblem problem =
        make_speed_problem(candidate.delta, effort, priors, limits, candidate.budget);
    candidate.speeds = solve_speeds(problem, solver);
    double duration = 0.0;
    for (std::size_t a = 0; a < problem.effective_lengths.size(); ++a)
        duration += problem.effective_lengths[a] * candidate.speeds.mu[a];
    candidate.evaluation = ObjectivePair{candidate.speeds.p_nd_star, duration};
    candidate.valid = true;
}

namespace {

struct RankedIndex {
    std::size_t index;
    int rank;
    double crowding;
};

}  // namespace

std::vector<CandidateSample> select_elites(const std::vector<CandidateSample>& population,
                                           const ParetoArchive& archive,
                                           double elite_fraction) {
    const std::size_t n = population.size();
    if (n == 0) return {};
    std::size_t want = static_cast<std::size_t>(
        std::ceil(elite_fraction * static_cast<double>(n)));
    want = std::clamp<std::size_t>(want, 1, n);

    // Fast non-dominated sort.
    std::vector<std::vector<std::size_t>> dominates_set(n);
    std::vector<int> dominated_by(n, 0);
    std::vector<int> rank(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = population[i].evaluation;
            const auto& b = population[j].evaluation;
            if (dominates(a, b)) {
                dominates_set[i].push_back(j);
                ++dominated_by[j];
            } else if (dominates(b, a)) {
                dominates_set[j].push_back(i);
                ++dominated_by[i];
            }
        }
    }
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominated_by[i] == 0) {
            rank[i] = 0;
            current.push_back(i);
        }
    int level = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current)
            for (std::size_t j : dominates_set[i])
                if (--dominated_by[j] == 0) {
                    rank[j] = level + 1;
                    next.push_back(j);
                }
        current = std::move(next);
        ++level;
    }

    // Normalization ranges; prefer the archive extent when it spans one.
    double dur_range = 0.0;
    double p_range = 0.0;
    if (archive.size() >= 2) {
        dur_range = archive.entries().back().objectives.duration -
                    archive.entries().front().objectives.duration;
        p_range = archive.entries().front().objectives.p_nd -
                  archive.entries().back().objectives.p_nd;
    }

    std::vector<RankedIndex> ranked(n);
    for (std::size_t i = 0; i < n; ++i) ranked[i] = {i, rank[i], 0.0};

    // Crowding distance within each rank.
    std::vector<std::vector<std::size_t>> fronts(static_cast<std::size_t>(level) + 1);
    for (std::size_t i = 0; i < n; ++i)
        fronts[static_cast<std::size_t>(rank[i])].push_back(i);
    for (auto& front : fronts) {
        if (front.empty()) continue;
        std::sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
            return population[a].evaluation.duration < population[b].evaluation.duration;
        });
        double dr = dur_range;
        double pr = p_range;
        if (dr <= 0.0)
            dr = population[front.back()].evaluation.duration -
                 population[front.front()].evaluation.duration;
        if (pr <= 0.0)
            pr = population[front.front()].evaluation.p_nd -
                 population[front.back()].evaluation.p_nd;
        for (std::size_t t = 0; t < front.size(); ++t) {
            if (t == 0 || t + 1 == front.size()) {
                ranked[front[t]].crowding = std::numeric_limits<double>::infinity();
                continue;
            }
            double crowding = 0.0;
            if (dr > 0.0)
                crowding += (population[front[t + 1]].evaluation.duration -
                             population[front[t - 1]].evaluation.duration) /
                            dr;
            if (pr > 0.0)
                crowding += (population[front[t - 1]].evaluation.p_nd -
                             population[front[t + 1]].evaluation.p_nd) /
                            pr;
            ranked[front[t]].crowding = crowding;
        }
    }

    std::sort(ranked.begin(), ranked.end(), [](const RankedIndex& a, const RankedIndex& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        if (a.crowding != b.crowding) return a.crowding > b.crowding;
        return a.index < b.index;
    });

    std::vector<CandidateSample> elites;
    elites.reserve(want);
    for (std::size_t t = 0; t < want; ++t) elites.push_back(population[ranked[t].index]);
    return elites;
}

MoceState update_state(const MoceState& state, const std::vector<CandidateSample>& elites,
                       double smoothing) {
    MoceState out = state;
    if (elites.empty()) return out;
    const double alpha = smoothing;
    const double count = static_cast<double>(elites.size());

    for (std::size_t idx = 0; idx < out.bernoulli_p.size(); ++idx) {
        double mean_bit = 0.0;
        for (const auto& e : elites) mean_bit += e.bits[idx];
        mean_bit /= count;
        const double p = (1.0 - alpha) * state.bernoulli_p[idx] + alpha * mean_bit;
        out.bernoulli_p[idx] = std::clamp(p, state.p_floor, 1.0 - state.p_floor);
    }

    double mean_t = 0.0;
    for (const auto& e : elites) mean_t += e.budget;
    mean_t /= count;
    double var_t = 0.0;
    for (const auto& e : elites) var_t += (e.budget - mean_t) * (e.budget - mean_t);
    const double std_t = std::sqrt(var_t / count);

    out.t_mean = (1.0 - alpha) * state.t_mean + alpha * mean_t;
    out.t_std = std::max((1.0 - alpha) * state.t_std + alpha * std_t, state.t_std_floor);
    return out;
}

ParetoArchive run_moce(const Scenario& scenario, const MoceConfig& config,
                       const ProgressHook& hook) {
    if (config.population < 10)
        throw ValidationError("population", "population must be at least 10");
    if (!(config.elite_fraction > 0.0) || !(config.elite_fraction < 1.0))
        throw ValidationError("elite_fraction", "elite_fraction must be in (0, 1)");
    if (!(config.smoothing > 0.0) || config.smoothing > 1.0)
        throw ValidationError("smoothing", "smoothing must be in (0, 1]");

    const EffortMatrix effort = build_effort_matrix(scenario);
    const std::vector<double> priors = scenario.priors();

    ParetoArchive archive(config.archive_capacity);
    // The empty path is always feasible; it anchors the zero-duration end of
    // the front so budget-limited queries interpolate sensibly.
    archive.insert(ObjectivePair{scenario.prior_mass(), 0.0},
                   PathPlan{std::vector<int>(scenario.tracklines.size(), 0),
                            std::vector<double>(scenario.tracklines.size(), 0.0)});

    MoceState state = initial_state(scenario, config);
    const auto start = std::chrono::steady_clock::now();

    int stagnation = 0;
    for (int gen = 0; gen < config.max_generations; ++gen) {
        const auto n = static_cast<std::size_t>(config.population);
        std::vector<CandidateSample> population(n);
        parallel_for(n, config.threads, [&](std::size_t i) {
            Rng rng(derive_stream(config.rng_seed, static_cast<std::uint64_t>(gen), i));
            population[i] = sample_candidate(state, scenario, rng);
            try {
                evaluate_candidate(population[i], effort, priors, scenario.limits,
                                   config.solver);
            } catch (const NoConvergence&) {
                population[i].valid = false;
            }
        });

        bool changed = false;
        std::size_t discarded = 0;
        std::vector<CandidateSample> valid;
        valid.reserve(n);
        for (auto& c : population) {
            if (!c.valid) {
                ++discarded;
                continue;
            }
            const InsertOutcome outcome = archive.insert(c.evaluation, c.to_plan());
            changed = changed || outcome.kind != InsertKind::dominated;
            valid.push_back(std::move(c));
        }

        if (!valid.empty()) {
            const auto elites = select_elites(valid, archive, config.elite_fraction);
            state = update_state(state, elites, config.smoothing);
        }
        state.generation = gen + 1;

        if (hook) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            hook(MoceProgress{gen, archive.size(), archive.best_p_nd(), elapsed, discarded,
                              archive});
        }

        stagnation = changed ? 0 : stagnation + 1;
        if (stagnation >= config.stagnation_patience) break;
    }
    return archive;
}

}  // namespace boustro
