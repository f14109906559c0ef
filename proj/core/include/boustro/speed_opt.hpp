#pragma once

#include <cstddef>
#include <vector>

#include "boustro/objective.hpp"

namespace boustro {

struct EmptySelection : Error {
    using Error::Error;
};

/// The convex inner problem: minimize the non-detection probability over
/// inverse speeds mu of the selected tracklines, subject to the box
/// [mu_lo, mu_hi] and the duration equality sum(effective_lengths * mu) = budget.
/// Multiple traversals are folded into the effective lengths/chords, one
/// speed per trackline.
struct SpeedProblem {
    std::vector<int> active;                // trackline indices with counts > 0
    std::vector<double> effective_lengths;  // counts[j] * l_j, per active entry
    std::vector<double> effective_chords;   // row-major source_count x active: counts[j] * l_ij
    std::size_t source_count = 0;
    std::vector<double> priors;
    double tau = 0.0;
    double budget = 0.0;  // s
    double mu_lo = 0.0;   // 1 / v_max
    double mu_hi = 0.0;   // 1 / v_min
};

SpeedProblem make_speed_problem(const std::vector<int>& counts, const EffortMatrix& em,
                                const std::vector<double>& priors, const AuvLimits& limits,
                                double budget);

struct BudgetInterval {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// [sum counts_j*l_j/v_max, sum counts_j*l_j/v_min]; throws EmptySelection
/// when no trackline is selected.
BudgetInterval feasible_budget_interval(const std::vector<int>& counts,
                                        const std::vector<double>& lengths, double v_min,
                                        double v_max);

struct SpeedSolution {
    std::vector<double> mu;  // s/m, one per active trackline
    double p_nd_star = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct InfeasibleBudget : Error {
    double t_lo;
    double t_hi;
    InfeasibleBudget(double lo, double hi, const std::string& what)
        : Error(what), t_lo(lo), t_hi(hi) {}
};

struct NoConvergence : Error {
    SpeedSolution best;
    NoConvergence(SpeedSolution b, const std::string& what) : Error(what), best(std::move(b)) {}
};

struct SolverOptions {
    double barrier_init = 1.0;
    double barrier_decrease = 0.2;
    double newton_tol = 1e-10;  // Newton decrement^2 / 2 per barrier stage
    double gap_tol = 1e-9;      // duality-gap proxy 2 q sigma
    int max_newton_steps = 200;
};

/// Logarithmic-barrier Newton method on mu with the equality constraint
/// eliminated through a Householder null-space basis. Budgets at the ends of
/// the feasible interval return the forced vertex directly.
SpeedSolution solve_speeds(const SpeedProblem& problem, const SolverOptions& options = {});

}  // namespace boustro
