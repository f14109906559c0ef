#include "boustro/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace boustro {

bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
    return a.p_nd <= b.p_nd && a.duration <= b.duration &&
           (a.p_nd < b.p_nd || a.duration < b.duration);
}

bool objectives_equal(const ObjectivePair& a, const ObjectivePair& b, double p_nd_tol,
                      double duration_tol) {
    return std::abs(a.p_nd - b.p_nd) <= p_nd_tol &&
           std::abs(a.duration - b.duration) <= duration_tol;
}

InsertOutcome ParetoArchive::insert(const ObjectivePair& objectives, PathPlan plan) {
    for (const auto& e : entries_) {
        if (objectives_equal(e.objectives, objectives) || dominates(e.objectives, objectives))
            return InsertOutcome{InsertKind::dominated, 0};
    }

    const std::size_t before = entries_.size();
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const ArchiveEntry& e) {
                                      return dominates(objectives, e.objectives);
                                  }),
                   entries_.end());
    const std::size_t removed = before - entries_.size();

    const auto pos = std::lower_bound(entries_.begin(), entries_.end(), objectives.duration,
                                      [](const ArchiveEntry& e, double d) {
                                          return e.objectives.duration < d;
                                      });
    entries_.insert(pos, ArchiveEntry{objectives, std::move(plan)});

    if (entries_.size() > capacity_) crowding_prune();
    return InsertOutcome{removed > 0 ? InsertKind::replaced : InsertKind::accepted, removed};
}

double ParetoArchive::best_p_nd() const {
    if (entries_.empty()) return std::numeric_limits<double>::infinity();
    return entries_.back().objectives.p_nd;  // sorted: last has lowest p_nd
}

double ParetoArchive::interpolated_p_nd(double duration) const {
    if (entries_.empty()) return std::numeric_limits<double>::infinity();
    if (duration <= entries_.front().objectives.duration)
        return entries_.front().objectives.p_nd;
    if (duration >= entries_.back().objectives.duration)
        return entries_.back().objectives.p_nd;
    const auto hi = std::lower_bound(entries_.begin(), entries_.end(), duration,
                                     [](const ArchiveEntry& e, double d) {
                                         return e.objectives.duration < d;
                                     });
    const auto lo = hi - 1;
    const double d0 = lo->objectives.duration;
    const double d1 = hi->objectives.duration;
    if (d1 <= d0) return std::min(lo->objectives.p_nd, hi->objectives.p_nd);
    const double t = (duration - d0) / (d1 - d0);
    return lo->objectives.p_nd + t * (hi->objectives.p_nd - lo->objectives.p_nd);
}

void ParetoArchive::crowding_prune() {
    while (entries_.size() > capacity_ && entries_.size() > 2) {
        const std::size_t n = entries_.size();
        const double dur_range =
            entries_.back().objectives.duration - entries_.front().objectives.duration;
        const double p_range =
            entries_.front().objectives.p_nd - entries_.back().objectives.p_nd;

        double min_crowding = std::numeric_limits<double>::infinity();
        std::size_t victim = 0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double crowding = 0.0;
            if (dur_range > 0.0)
                crowding += (entries_[i + 1].objectives.duration -
                             entries_[i - 1].objectives.duration) /
                            dur_range;
            if (p_range > 0.0)
                crowding += (entries_[i - 1].objectives.p_nd -
                             entries_[i + 1].objectives.p_nd) /
                            p_range;
            if (crowding < min_crowding) {
                min_crowding = crowding;
                victim = i;
            }
        }
        if (victim == 0) break;  // no interior entry
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    }
}

}  // namespace boustro
