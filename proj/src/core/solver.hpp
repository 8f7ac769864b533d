#pragma once

// End-to-end lower envelopes of arbitrary (possibly intersecting) segments:
// a brute-force reference, a divide-and-conquer baseline built on the chain
// merge, and the output-sensitive doubling wrapper that squares its output
// budget until an iteration survives.

#include <chrono>
#include <cstdint>
#include <vector>

#include "core/merge.hpp"

namespace lenv {

// Parsed input segments with stable ids 0..n-1. Vertical and zero-length
// segments are rejected upstream (at parse or generation).
struct SegmentSet {
    std::vector<Segment> segments;

    std::size_t size() const { return segments.size(); }
    bool empty() const { return segments.empty(); }
};

struct IterationRecord {
    std::uint64_t t = 0;
    std::uint64_t kappa = 0;   // output budget 2^(2^t)
    std::uint64_t groups = 0;  // ceil(n / kappa)
    bool completed = false;
};

struct RunReport {
    std::vector<IterationRecord> iterations;  // last entry is the completed one
    std::uint64_t final_k = 0;
    MergeCounters totals;  // aggregated over all group solves and merges
    std::chrono::duration<double> wall_time{0};
};

// Reference result by exhaustive interval evaluation: every endpoint and
// pairwise-crossing x is a breakpoint; on each interval the minimum segment
// wins (ties to the smaller id). Roughly cubic; test scale only.
Envelope envelope_bruteforce(const SegmentSet& input);

// Recursive halving with pairwise merge_envelopes; counters aggregated over
// all merges.
std::pair<Envelope, MergeCounters> envelope_divide_conquer(const SegmentSet& input);

// ceil(n/kappa) contiguous-by-id groups, each of size <= kappa.
std::vector<SegmentSet> partition_segments(const SegmentSet& input, std::uint64_t kappa);

// Doubling loop: per round, solve groups of size kappa and merge the group
// envelopes with abort threshold kappa; kappa squares each round. A round
// with a single group skips the merge but still honors the size gate.
// Honors ENVELOPE_THREADS for per-group solving (0 = auto, default 1).
std::pair<Envelope, RunReport> envelope_output_sensitive(const SegmentSet& input);

// Output size k.
std::uint64_t envelope_size(const Envelope& e);

}  // namespace lenv
