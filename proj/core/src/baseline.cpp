#include "boustro/baseline.hpp"

#include <string>

#include "boustro/objective.hpp"

namespace boustro {

BaselinePoint regular_plan(const Scenario& scenario, int k, double v,
                           double offset_fraction) {
    if (k < 1) throw ValidationError("trackline_counts", "trackline count must be >= 1");
    if (v < scenario.limits.v_min - 1e-9 || v > scenario.limits.v_max + 1e-9)
        throw ValidationError("speed_grid",
                              "baseline speed " + std::to_string(v) + " outside AUV limits");

    BaselinePoint point;
    point.trackline_count = k;
    point.speed = v;
    const double cell = scenario.area.height() / k;
    for (int i = 0; i < k; ++i) {
        point.tracklines.push_back(
            Trackline{scenario.area.y_min + (i + offset_fraction) * cell,
                      scenario.area.x_min, scenario.area.x_max});
    }
    point.plan.counts.assign(static_cast<std::size_t>(k), 1);
    point.plan.speeds.assign(static_cast<std::size_t>(k), v);

    const EffortMatrix em = build_effort_matrix(scenario.sources, point.tracklines);
    std::vector<double> priors;
    priors.reserve(scenario.sources.size());
    for (const auto& s : scenario.sources) priors.push_back(s.prior);
    const PlanEvaluation eval = evaluate_plan(point.plan, em, priors, scenario.limits.tau);
    point.objectives = ObjectivePair{eval.p_nd, eval.duration};
    return point;
}

std::vector<BaselinePoint> baseline_sweep(const Scenario& scenario,
                                          const BaselineConfig& config) {
    std::vector<BaselinePoint> points;
    for (int k : config.trackline_counts) {
        for (double v : config.speed_grid) {
            BaselinePoint p = regular_plan(scenario, k, v, config.offset_fraction);
            if (p.objectives.duration <= scenario.limits.t_max) points.push_back(std::move(p));
        }
    }
    return points;
}

std::vector<ObjectivePair> scale_for_auvs(const std::vector<ObjectivePair>& front, int n) {
    if (n < 1) throw ValidationError("auvs", "AUV count must be >= 1");
    std::vector<ObjectivePair> scaled;
    scaled.reserve(front.size());
    for (const auto& o : front)
        scaled.push_back(ObjectivePair{o.p_nd, o.duration / static_cast<double>(n)});
    return scaled;
}

std::vector<ObjectivePair> scale_for_auvs(const ParetoArchive& archive, int n) {
    std::vector<ObjectivePair> front;
    front.reserve(archive.size());
    for (const auto& e : archive.entries()) front.push_back(e.objectives);
    return scale_for_auvs(front, n);
}

}  // namespace boustro
