#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "boustro/scenario.hpp"

namespace boustro {

/// A boustrophedon plan over a fixed trackline set: per-trackline traversal
/// counts and speeds. Speeds are meaningful only where counts[j] > 0.
struct PathPlan {
    std::vector<int> counts;
    std::vector<double> speeds;  // m/s
};

/// Checks the plan box constraints against the limits (0 <= count <= z_max,
/// v_min <= v <= v_max wherever count > 0). Throws ValidationError.
void validate_plan(const PathPlan& plan, const AuvLimits& limits);

/// Cached geometry of one scenario: chord(i, j) is the length of trackline j
/// inside spill i, trackline_lengths[j] the full trackline length.
struct EffortMatrix {
    std::size_t source_count = 0;
    std::size_t trackline_count = 0;
    std::vector<double> chords;  // row-major source_count x trackline_count
    std::vector<double> trackline_lengths;

    double chord(std::size_t i, std::size_t j) const {
        return chords[i * trackline_count + j];
    }
    double& chord(std::size_t i, std::size_t j) {
        return chords[i * trackline_count + j];
    }
};

EffortMatrix build_effort_matrix(const std::vector<LeakSource>& sources,
                                 const std::vector<Trackline>& tracklines);
EffortMatrix build_effort_matrix(const Scenario& scenario);

/// Non-detection probability, path duration and the per-source effort
/// exponents E_i they both derive from.
struct PlanEvaluation {
    double p_nd = 0.0;
    double duration = 0.0;  // s, vertical connectors excluded
    std::vector<double> per_source_exponent;
};

/// P_ND = sum_i prior_i * exp(-E_i) with E_i = (1/tau) sum_j (l_ij / v_j) c_j,
/// duration = sum_j (l_j / v_j) c_j.
PlanEvaluation evaluate_plan(const PathPlan& plan, const EffortMatrix& em,
                             const std::vector<double>& priors, double tau);

/// Updated leak probabilities after an unsuccessful search:
/// prior_i * exp(-E_i). Deliberately unnormalized; see docs/format.md.
std::vector<double> posterior_update(const std::vector<double>& priors,
                                     const PlanEvaluation& eval);

/// P_ND as a function of inverse speeds mu (full-length vector, entries with
/// counts[j] == 0 ignored), plus its analytic gradient in mu.
double nondetection_from_mu(const EffortMatrix& em, const std::vector<int>& counts,
                            const std::vector<double>& mu,
                            const std::vector<double>& priors, double tau);
std::vector<double> nondetection_gradient_mu(const EffortMatrix& em,
                                             const std::vector<int>& counts,
                                             const std::vector<double>& mu,
                                             const std::vector<double>& priors,
                                             double tau);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Simulation oracle for the analytic non-detection probability: per sample,
/// each source leaks with its prior, each present leak is detected with
/// probability 1 - exp(-dwell_i / tau); the statistic is the number of
/// present-but-undetected leaks, whose mean is exactly P_ND.
MonteCarloEstimate monte_carlo_nondetection(const PathPlan& plan, const Scenario& scenario,
                                            std::size_t samples, std::uint64_t seed);

/// Extra operator-facing figure: duration including the vertical connectors
/// between consecutive distinct traveled tracklines at v_max. Not part of the
/// optimization objective.
double duration_with_verticals(const PathPlan& plan, const Scenario& scenario);

}  // namespace boustro
