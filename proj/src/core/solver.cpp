#include "core/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace lenv {

Envelope envelope_bruteforce(const SegmentSet& input) {
    if (input.empty()) throw std::invalid_argument("envelope_bruteforce: empty segment set");
    const auto& segs = input.segments;

    std::vector<Rational> xs;
    xs.reserve(segs.size() * 2);
    for (const Segment& s : segs) {
        xs.push_back(s.a.x);
        xs.push_back(s.b.x);
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            IntersectionResult r = segment_intersection(segs[i], segs[j]);
            if (r.is_point()) xs.push_back(r.point.x);
            // Overlap endpoints are segment endpoints, already collected.
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    EnvelopeBuilder out;
    Rational half(1, 2);
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
        const Rational& xl = xs[j];
        const Rational& xr = xs[j + 1];
        Rational mid = (xl + xr) * half;
        const Segment* winner = nullptr;
        Rational wy;
        for (const Segment& s : segs) {
            if (mid < s.a.x || s.b.x < mid) continue;
            Rational y = eval_at(s, mid);
            if (!winner || y < wy || (y == wy && s.id < winner->id)) {
                winner = &s;
                wy = y;
            }
        }
        if (!winner) continue;  // uncovered interval; a gap edge is emitted later
        Point pl{xl, eval_at(*winner, xl)};
        Point pr{xr, eval_at(*winner, xr)};
        if (!out.started()) {
            out.start(pl);
        } else if (!(out.last() == pl)) {
            // Vertical connector at a jump, gap edge over uncovered distance.
            EdgeKind kind = out.last().x == pl.x ? EdgeKind::solid : EdgeKind::gap;
            out.extend(pl, kind, std::nullopt);
        }
        out.extend(pr, EdgeKind::solid,
                   winner->id >= 0 ? std::optional<std::int64_t>(winner->id) : std::nullopt);
    }
    // A one-segment set still has two breakpoints, so the builder started.
    return out.finish();
}

namespace {

std::pair<Envelope, MergeCounters> solve_range(const std::vector<Segment>& segs, std::size_t lo,
                                               std::size_t hi) {
    if (hi - lo == 1) return {Envelope::from_segment(segs[lo]), MergeCounters{}};
    std::size_t mid = lo + (hi - lo) / 2;
    auto [left, lc] = solve_range(segs, lo, mid);
    auto [right, rc] = solve_range(segs, mid, hi);
    MergeOutcome merged = merge_envelopes({std::move(left), std::move(right)});
    lc += rc;
    lc += merged.counters;
    return {std::move(*merged.envelope), lc};
}

}  // namespace

std::pair<Envelope, MergeCounters> envelope_divide_conquer(const SegmentSet& input) {
    if (input.empty()) throw std::invalid_argument("envelope_divide_conquer: empty segment set");
    return solve_range(input.segments, 0, input.segments.size());
}

std::vector<SegmentSet> partition_segments(const SegmentSet& input, std::uint64_t kappa) {
    if (kappa < 1) throw std::invalid_argument("partition_segments: kappa must be >= 1");
    std::vector<SegmentSet> groups;
    const auto& segs = input.segments;
    for (std::size_t lo = 0; lo < segs.size(); lo += kappa) {
        std::size_t hi = std::min(segs.size(), lo + static_cast<std::size_t>(kappa));
        SegmentSet g;
        g.segments.assign(segs.begin() + lo, segs.begin() + hi);
        groups.push_back(std::move(g));
    }
    return groups;
}

namespace {

std::size_t worker_count(std::size_t groups) {
    const char* env = std::getenv("ENVELOPE_THREADS");
    if (!env || !*env) return 1;
    unsigned long v = std::strtoul(env, nullptr, 10);
    std::size_t n = v == 0 ? std::max(1u, std::thread::hardware_concurrency()) : v;
    return std::min(n, groups);
}

std::uint64_t kappa_for(std::uint64_t t) {
    // 2^(2^t), saturated at the t = 6 guard.
    if (t >= 6) return ~0ull;
    return 1ull << (1ull << t);
}

}  // namespace

std::pair<Envelope, RunReport> envelope_output_sensitive(const SegmentSet& input) {
    if (input.empty()) throw std::invalid_argument("envelope_output_sensitive: empty segment set");
    const auto start_time = std::chrono::steady_clock::now();
    RunReport report;

    for (std::uint64_t t = 0; t <= 6; ++t) {
        std::uint64_t kappa = kappa_for(t);
        std::vector<SegmentSet> groups = partition_segments(input, kappa);

        if (groups.size() == 1) {
            auto [env, counters] = envelope_divide_conquer(input);
            report.totals += counters;
            bool fits = envelope_size(env) <= kappa;
            report.iterations.push_back({t, kappa, 1, fits});
            if (fits) {
                report.final_k = envelope_size(env);
                report.wall_time = std::chrono::steady_clock::now() - start_time;
                return {std::move(env), std::move(report)};
            }
            continue;
        }

        std::vector<std::pair<Envelope, MergeCounters>> solved(groups.size());
        std::size_t workers = worker_count(groups.size());
        if (workers <= 1) {
            for (std::size_t g = 0; g < groups.size(); ++g)
                solved[g] = envelope_divide_conquer(groups[g]);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t g = w; g < groups.size(); g += workers)
                        solved[g] = envelope_divide_conquer(groups[g]);
                });
            }
            for (auto& th : pool) th.join();
        }

        std::vector<Envelope> chains;
        chains.reserve(solved.size());
        for (auto& [env, counters] : solved) {
            report.totals += counters;  // joined in group order: deterministic
            chains.push_back(std::move(env));
        }

        MergeOutcome merged = merge_envelopes(chains, kappa);
        report.totals += merged.counters;
        report.iterations.push_back({t, kappa, groups.size(), merged.completed()});
        if (merged.completed()) {
            report.final_k = envelope_size(*merged.envelope);
            report.wall_time = std::chrono::steady_clock::now() - start_time;
            return {std::move(*merged.envelope), std::move(report)};
        }
    }
    throw std::logic_error("envelope_output_sensitive: budget guard exceeded");
}

std::uint64_t envelope_size(const Envelope& e) { return e.size(); }

}  // namespace lenv
