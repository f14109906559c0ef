#pragma once

#include <vector>

#include "boustro/pareto.hpp"
#include "boustro/scenario.hpp"

namespace boustro {

/// Sweep configuration for the non-optimized comparison planner: regularly
/// spaced tracklines, one constant speed over the whole path.
struct BaselineConfig {
    std::vector<int> trackline_counts;
    std::vector<double> speed_grid;  // m/s, within [v_min, v_max]
    int auv_count = 1;
    double offset_fraction = 0.5;  // trackline position within each cell, 0.5 = midpoints
};

struct BaselinePoint {
    int trackline_count = 0;
    double speed = 0.0;  // m/s
    std::vector<Trackline> tracklines;
    PathPlan plan;
    ObjectivePair objectives;
};

/// k tracklines equally spaced over the area height (midpoint offset by
/// default), each traversed once at speed v; evaluated against the
/// scenario's spill areas.
BaselinePoint regular_plan(const Scenario& scenario, int k, double v,
                           double offset_fraction = 0.5);

/// Full (k, v) sweep. Points whose duration exceeds t_max are dropped: they
/// are infeasible for the same AUV the optimized planner is bound to.
std::vector<BaselinePoint> baseline_sweep(const Scenario& scenario,
                                          const BaselineConfig& config);

/// n-AUV emulation: the same plans flown by n vehicles split the wall-clock
/// time, so each point's reported duration divides by n. No re-optimization.
std::vector<ObjectivePair> scale_for_auvs(const std::vector<ObjectivePair>& front, int n);
std::vector<ObjectivePair> scale_for_auvs(const ParetoArchive& archive, int n);

}  // namespace boustro
