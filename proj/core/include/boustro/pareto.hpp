#pragma once

#include <cstddef>
#include <vector>

#include "boustro/objective.hpp"

namespace boustro {

/// The two objectives: non-detection probability and path duration, both
/// minimized.
struct ObjectivePair {
    double p_nd = 0.0;
    double duration = 0.0;  // s
};

/// a dominates b iff a is no worse in both objectives and strictly better in
/// at least one. An equal pair never dominates.
bool dominates(const ObjectivePair& a, const ObjectivePair& b);

/// Floating-point tie detection; ties keep the archive incumbent.
bool objectives_equal(const ObjectivePair& a, const ObjectivePair& b,
                      double p_nd_tol = 1e-12, double duration_tol = 1e-6);

enum class InsertKind { accepted, dominated, replaced };

struct InsertOutcome {
    InsertKind kind = InsertKind::dominated;
    std::size_t removed = 0;  // entries displaced by the candidate
};

struct ArchiveEntry {
    ObjectivePair objectives;
    PathPlan plan;
};

/// Bounded set of mutually non-dominated (objectives, plan) entries, kept
/// sorted by ascending duration (hence strictly descending p_nd). Accessed
/// by a single owner; evaluation workers hand candidates to that owner.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity = 64)
        : capacity_(capacity < 2 ? 2 : capacity) {}

    InsertOutcome insert(const ObjectivePair& objectives, PathPlan plan);

    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t capacity() const { return capacity_; }

    /// Tightening the capacity does not prune eagerly; call crowding_prune().
    void set_capacity(std::size_t capacity) { capacity_ = capacity < 2 ? 2 : capacity; }

    /// Best p_nd in the archive (the right end of the front); +inf when empty.
    double best_p_nd() const;

    /// Front value at the given duration, linearly interpolated between
    /// neighbors; clamped to the end values outside the covered range.
    double interpolated_p_nd(double duration) const;

    /// Removes lowest-crowding interior entries until size == capacity.
    /// Endpoints (min duration, min p_nd) are always kept.
    void crowding_prune();

private:
    std::size_t capacity_;
    std::vector<ArchiveEntry> entries_;
};

}  // namespace boustro
