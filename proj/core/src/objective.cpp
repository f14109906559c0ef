#include "boustro/objective.hpp"

#include <cmath>
#include <string>

#include "boustro/rng.hpp"

namespace boustro {

void validate_plan(const PathPlan& plan, const AuvLimits& limits) {
    if (plan.counts.size() != plan.speeds.size())
        throw ValidationError("plan", "counts and speeds must have equal length");
    for (std::size_t j = 0; j < plan.counts.size(); ++j) {
        if (plan.counts[j] < 0 || plan.counts[j] > limits.z_max)
            throw ValidationError("counts", "traversal count out of [0, z_max] at trackline " +
                                                std::to_string(j));
        if (plan.counts[j] > 0 &&
            (plan.speeds[j] < limits.v_min - 1e-9 || plan.speeds[j] > limits.v_max + 1e-9))
            throw ValidationError("speeds", "speed out of [v_min, v_max] at trackline " +
                                                std::to_string(j));
    }
}

EffortMatrix build_effort_matrix(const std::vector<LeakSource>& sources,
                                 const std::vector<Trackline>& tracklines) {
    EffortMatrix em;
    em.source_count = sources.size();
    em.trackline_count = tracklines.size();
    em.chords.assign(em.source_count * em.trackline_count, 0.0);
    em.trackline_lengths.reserve(tracklines.size());
    for (const auto& t : tracklines) em.trackline_lengths.push_back(t.length());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const ConvexPolygon& spill = sources[i].spill;
        for (std::size_t j = 0; j < tracklines.size(); ++j) {
            const Trackline& t = tracklines[j];
            em.chord(i, j) = clip_segment_length(spill, t.y, t.x_start, t.x_end);
        }
    }
    return em;
}

EffortMatrix build_effort_matrix(const Scenario& scenario) {
    return build_effort_matrix(scenario.sources, scenario.tracklines);
}

PlanEvaluation evaluate_plan(const PathPlan& plan, const EffortMatrix& em,
                             const std::vector<double>& priors, double tau) {
    PlanEvaluation out;
    out.per_source_exponent.assign(em.source_count, 0.0);
    for (std::size_t j = 0; j < em.trackline_count; ++j) {
        const int c = plan.counts[j];
        if (c <= 0) continue;
        const double time_per_meter = static_cast<double>(c) / plan.speeds[j];
        out.duration += em.trackline_lengths[j] * time_per_meter;
        for (std::size_t i = 0; i < em.source_count; ++i)
            out.per_source_exponent[i] += em.chord(i, j) * time_per_meter;
    }
    for (std::size_t i = 0; i < em.source_count; ++i) {
        out.per_source_exponent[i] /= tau;
        out.p_nd += priors[i] * std::exp(-out.per_source_exponent[i]);
    }
    return out;
}

std::vector<double> posterior_update(const std::vector<double>& priors,
                                     const PlanEvaluation& eval) {
    std::vector<double> post(priors.size());
    for (std::size_t i = 0; i < priors.size(); ++i)
        post[i] = priors[i] * std::exp(-eval.per_source_exponent[i]);
    return post;
}

double nondetection_from_mu(const EffortMatrix& em, const std::vector<int>& counts,
                            const std::vector<double>& mu,
                            const std::vector<double>& priors, double tau) {
    double p = 0.0;
    for (std::size_t i = 0; i < em.source_count; ++i) {
        double exponent = 0.0;
        for (std::size_t j = 0; j < em.trackline_count; ++j) {
            if (counts[j] <= 0) continue;
            exponent += em.chord(i, j) * mu[j] * counts[j];
        }
        p += priors[i] * std::exp(-exponent / tau);
    }
    return p;
}

std::vector<double> nondetection_gradient_mu(const EffortMatrix& em,
                                             const std::vector<int>& counts,
                                             const std::vector<double>& mu,
                                             const std::vector<double>& priors,
                                             double tau) {
    std::vector<double> grad(em.trackline_count, 0.0);
    for (std::size_t i = 0; i < em.source_count; ++i) {
        double exponent = 0.0;
        for (std::size_t j = 0; j < em.trackline_count; ++j) {
            if (counts[j] <= 0) continue;
            exponent += em.chord(i, j) * mu[j] * counts[j];
        }
        const double w = priors[i] * std::exp(-exponent / tau) / tau;
        for (std::size_t j = 0; j < em.trackline_count; ++j) {
            if (counts[j] <= 0) continue;
            grad[j] -= w * em.chord(i, j) * counts[j];
        }
    }
    return grad;
}

MonteCarloEstimate monte_carlo_nondetection(const PathPlan& plan, const Scenario& scenario,
                                            std::size_t samples, std::uint64_t seed) {
    // Recompute dwell times from geometry rather than going through a cached
    // effort matrix, so the oracle shares as little code with the analytic
    // path as possible.
    const std::size_t n = scenario.sources.size();
    std::vector<double> detect_prob(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double dwell = 0.0;
        for (std::size_t j = 0; j < scenario.tracklines.size(); ++j) {
            if (plan.counts[j] <= 0) continue;
            const Trackline& t = scenario.tracklines[j];
            const double chord =
                clip_segment_length(scenario.sources[i].spill, t.y, t.x_start, t.x_end);
            dwell += chord / plan.speeds[j] * plan.counts[j];
        }
        detect_prob[i] = 1.0 - std::exp(-dwell / scenario.limits.tau);
    }

    Rng rng(seed);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        int undetected = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!rng.bernoulli(scenario.sources[i].prior)) continue;
            if (!rng.bernoulli(detect_prob[i])) ++undetected;
        }
        sum += undetected;
        sum_sq += static_cast<double>(undetected) * undetected;
    }

    MonteCarloEstimate out;
    const double ns = static_cast<double>(samples);
    out.estimate = sum / ns;
    if (samples > 1) {
        const double var = std::max(0.0, (sum_sq - ns * out.estimate * out.estimate) / (ns - 1.0));
        out.std_error = std::sqrt(var / ns);
    }
    return out;
}

double duration_with_verticals(const PathPlan& plan, const Scenario& scenario) {
    double total = 0.0;
    double prev_y = 0.0;
    bool have_prev = false;
    for (std::size_t j = 0; j < scenario.tracklines.size(); ++j) {
        if (plan.counts[j] <= 0) continue;
        const Trackline& t = scenario.tracklines[j];
        total += t.length() / plan.speeds[j] * plan.counts[j];
        if (have_prev) total += std::abs(t.y - prev_y) / scenario.limits.v_max;
        prev_y = t.y;
        have_prev = true;
    }
    return total;
}

}  // namespace boustro
