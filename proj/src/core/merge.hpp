#pragma once

// Lower envelope of m x-monotone chains by linear search with
// never-retreating cursors: O(n + mk) for n total input vertices and k
// output vertices. One cursor p_i per chain marks the first edge that is not
// yet known to be occluded; following the active chain, each emitted vertex
// costs one bounded-work look at every other chain, and cursor advances are
// paid for once across the whole run.

#include <cstdint>
#include <optional>
#include <vector>

#include "core/envelope.hpp"

namespace lenv {

struct MergeCounters {
    std::uint64_t cursor_increments = 0;
    std::uint64_t intersection_tests = 0;
    std::uint64_t vertices_emitted = 0;
    std::uint64_t restarts = 0;
    std::uint64_t chains = 0;                // m
    std::uint64_t total_input_vertices = 0;  // n

    MergeCounters& operator+=(const MergeCounters& o);
};

struct MergeOutcome {
    std::optional<Envelope> envelope;  // present iff the merge completed
    MergeCounters counters;

    bool completed() const { return envelope.has_value(); }
    bool aborted() const { return !envelope.has_value(); }
};

// Live state of one merge run. current always lies on the active chain's
// edge (cursor-1, cursor); cursors only grow.
struct MergeState {
    const std::vector<Envelope>* chains = nullptr;
    std::vector<std::size_t> cursors;  // p_i in [1, |V_i|]; |V_i| = exhausted
    std::size_t active = 0;
    Point current;                     // v*, the last envelope vertex
    std::optional<Rational> dip_floor; // lowest y reached at current.x (default current.y);
                                       // the envelope dips at most once per x, so a drop
                                       // event must land strictly below this
    std::optional<Point> best;         // best event point of the last sweep
    std::optional<std::size_t> next;   // chain owning best
};

enum class AdvanceDecision { stop, advance };

// Whether chain i's cursor must stay (stop) or be incremented (advance):
// stop when the edge ends past the active segment in x, when it yields an
// envelope event, or when the event must wait until current reaches the
// active segment's far endpoint. Preconditions: i != state.active and
// cursors[i] < |V_i|. Predicate calls are tallied into counters when given.
AdvanceDecision advance_condition(const MergeState& state, std::size_t i,
                                  MergeCounters* counters = nullptr);

// Chain whose first vertex is leftmost; ties by lowest y, then smallest
// first-edge slope, then source id, then chain index.
std::size_t select_initial_active(const std::vector<Envelope>& chains);

// Exact pointwise minimum of the chains, with gap edges over maximal
// uncovered x-intervals. When abort_threshold is given, returns an aborted
// outcome as soon as more than that many vertices have been emitted.
// Throws std::invalid_argument on an empty list or an invalid chain.
MergeOutcome merge_envelopes(const std::vector<Envelope>& chains,
                             std::optional<std::uint64_t> abort_threshold = std::nullopt);

}  // namespace lenv
