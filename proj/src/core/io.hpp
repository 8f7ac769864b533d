#pragma once

// File formats, document rendering, and the verification driver.
//
// Segments file: one "x1 y1 x2 y2" line per segment (rational literals:
// integer, decimal, or p/q); '#' starts a comment, blank lines are ignored.
// Chains file: blocks of "x y" vertex lines separated by a blank line, with
// an optional "GAP" line between two vertices marking a gap edge.
// Envelope documents are JSON with a fixed key order; byte-identical for
// identical inputs.

#include <optional>
#include <string>
#include <vector>

#include "core/solver.hpp"
#include "core/workload.hpp"

namespace lenv {

// Throws ParseError (with 1-based line numbers) on malformed lines,
// vertical segments, and zero-length segments. Ids follow file order.
SegmentSet parse_segments(const std::string& text);

std::string format_segments(const SegmentSet& set);

// Each block is validated and canonicalized; throws ParseError on chains
// that violate the envelope invariants.
std::vector<Envelope> parse_chains(const std::string& text);

// {"vertices": [{"x": "p/q", ...}], "edges": [{"kind", "source"}], ...};
// counters and run_report blocks included when given. Timing is never
// emitted, so a repeated run serializes identically.
std::string envelope_doc_json(const Envelope& env, const MergeCounters* counters = nullptr,
                              const RunReport* report = nullptr);

// merge-chains result: {"aborted": ..., ...}; counters always present on an
// abort (they are the only payload), behind include_stats otherwise.
std::string merge_doc_json(const MergeOutcome& outcome, bool include_stats);

// kind,n,k,iterations,<counters...>[,wall_ms]; wall_ms only on request since
// it is not reproducible run to run.
std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timings);

// Standalone SVG: input segments light gray, solid envelope edges bold,
// gap edges dashed. Rationals are rendered as decimals for display only.
std::string render_svg(const Envelope& env, const SegmentSet* input = nullptr);

struct VerifyResult {
    bool agree = false;
    std::string report;  // one line per check
};

// Triple agreement (brute force, divide and conquer, output-sensitive) plus
// pointwise spot checks of the result against the minimum over all segments
// at `samples` random x values.
VerifyResult verify_instance(const SegmentSet& input, std::uint64_t samples = 100);

}  // namespace lenv
