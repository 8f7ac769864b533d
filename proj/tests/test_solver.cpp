#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "core/solver.hpp"
#include "core/workload.hpp"

using namespace lenv;

namespace {

Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }

SegmentSet make_set(std::vector<std::array<long, 4>> coords) {
    SegmentSet set;
    for (const auto& c : coords)
        set.segments.emplace_back(pt(c[0], c[1]), pt(c[2], c[3]),
                                  static_cast<std::int64_t>(set.segments.size()));
    return set;
}

SegmentSet random_set(std::uint64_t n, std::uint64_t seed) {
    GenSpec spec;
    spec.kind = GenKind::random;
    spec.n = n;
    spec.seed = seed;
    return gen_random(spec);
}

// Four mutually crossing segments whose envelope has exactly 7 vertices
// (verified against the brute-force reference below).
SegmentSet seven_vertex_instance() {
    return make_set({{2, 7, 5, 11}, {0, 8, 12, 4}, {0, 12, 6, 2}, {2, 0, 4, 10}});
}

// Definitional check: the envelope value equals the minimum over all
// segments covering x, at many sampled x.
void check_dense_sampling(const Envelope& env, const SegmentSet& set, std::uint64_t seed,
                          int samples = 200) {
    Rational lo = set.segments.front().a.x, hi = set.segments.front().b.x;
    for (const Segment& s : set.segments) {
        if (s.a.x < lo) lo = s.a.x;
        if (hi < s.b.x) hi = s.b.x;
    }
    std::uint64_t state = seed;
    for (int i = 0; i < samples; ++i) {
        Rational x = lo + (hi - lo) * Rational(static_cast<long>(splitmix64(state) % 999983),
                                               999983);
        std::optional<Rational> direct;
        for (const Segment& s : set.segments) {
            if (x < s.a.x || s.b.x < x) continue;
            Rational y = eval_at(s, x);
            if (!direct || y < *direct) direct = y;
        }
        CHECK(env.value_at(x) == direct);
    }
}

std::uint64_t iteration_bound(std::uint64_t k) {
    // ceil(log2 log2 max(4, k)) + 1
    std::uint64_t v = std::max<std::uint64_t>(4, k);
    std::uint64_t loglog = 0;
    for (std::uint64_t cover = 4; cover < v; cover *= cover) ++loglog;
    return loglog + 1 + 1;
}

}  // namespace

TEST_CASE("brute force handles the tiny cases") {
    SegmentSet one = make_set({{0, 0, 1, 1}});
    Envelope e = envelope_bruteforce(one);
    CHECK(e == Envelope::from_segment(one.segments[0]));
    CHECK(envelope_size(e) == 2);

    SegmentSet x = make_set({{0, 0, 2, 2}, {0, 2, 2, 0}});
    Envelope ex = envelope_bruteforce(x);
    CHECK(ex.vertices() == std::vector<Point>{pt(0, 0), pt(1, 1), pt(2, 0)});
    CHECK(envelope_size(ex) == 3);

    CHECK_THROWS_AS(envelope_bruteforce(SegmentSet{}), std::invalid_argument);
}

TEST_CASE("brute force agrees with dense pointwise sampling") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        SegmentSet set = random_set(8, seed * 17);
        check_dense_sampling(envelope_bruteforce(set), set, seed);
    }
}

TEST_CASE("divide and conquer equals the brute force") {
    SegmentSet one = make_set({{0, 0, 1, 1}});
    CHECK(envelope_divide_conquer(one).first == envelope_bruteforce(one));

    SegmentSet x = make_set({{0, 0, 2, 2}, {0, 2, 2, 0}});
    CHECK(envelope_divide_conquer(x).first == envelope_bruteforce(x));

    SegmentSet big = random_set(64, 424242);
    auto [env, counters] = envelope_divide_conquer(big);
    CHECK(env == envelope_bruteforce(big));
    CHECK(counters.intersection_tests > 0);

    CHECK_THROWS_AS(envelope_divide_conquer(SegmentSet{}), std::invalid_argument);
}

TEST_CASE("partition_segments makes contiguous groups") {
    SegmentSet five = random_set(5, 3);
    auto groups = partition_segments(five, 2);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].size() == 2);
    CHECK(groups[1].size() == 2);
    CHECK(groups[2].size() == 1);
    CHECK(groups[1].segments[0].id == 2);

    CHECK(partition_segments(random_set(4, 3), 4).size() == 1);
    CHECK(partition_segments(SegmentSet{}, 2).empty());
    CHECK_THROWS_AS(partition_segments(five, 0), std::invalid_argument);
}

TEST_CASE("output-sensitive: a single segment completes immediately") {
    auto [env, report] = envelope_output_sensitive(make_set({{0, 0, 1, 1}}));
    CHECK(envelope_size(env) == 2);
    REQUIRE(report.iterations.size() == 1);
    CHECK(report.iterations[0].t == 0);
    CHECK(report.iterations[0].kappa == 2);
    CHECK(report.iterations[0].completed);
    CHECK(report.final_k == 2);
}

TEST_CASE("output-sensitive: the 7-vertex instance runs the full doubling ladder") {
    SegmentSet set = seven_vertex_instance();
    // Construction check: mutually crossing, and the reference says k = 7.
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            CHECK_FALSE(segment_intersection(set.segments[i], set.segments[j]).empty());
    Envelope oracle = envelope_bruteforce(set);
    REQUIRE(envelope_size(oracle) == 7);

    auto [env, report] = envelope_output_sensitive(set);
    CHECK(env == oracle);
    REQUIRE(report.iterations.size() == 3);
    CHECK(report.iterations[0].t == 0);
    CHECK(report.iterations[0].kappa == 2);
    CHECK(report.iterations[0].groups == 2);
    CHECK_FALSE(report.iterations[0].completed);
    CHECK(report.iterations[1].t == 1);
    CHECK(report.iterations[1].kappa == 4);
    CHECK_FALSE(report.iterations[1].completed);
    CHECK(report.iterations[2].t == 2);
    CHECK(report.iterations[2].kappa == 16);
    CHECK(report.iterations[2].completed);
    CHECK(report.final_k == 7);
}

TEST_CASE("triple agreement with schedule and size bounds on random instances") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        std::uint64_t n = 1 + (seed * 13) % 32;
        SegmentSet set = random_set(n, seed * 1009);
        Envelope oracle = envelope_bruteforce(set);
        auto [dc, dc_counters] = envelope_divide_conquer(set);
        auto [os, report] = envelope_output_sensitive(set);
        CHECK_MESSAGE(dc == oracle, "seed ", seed);
        CHECK_MESSAGE(os == oracle, "seed ", seed);
        std::uint64_t k = envelope_size(oracle);
        CHECK(k <= 6 * n);
        CHECK(report.iterations.size() <= iteration_bound(k));
        CHECK(report.final_k == k);
        CHECK(report.iterations.back().completed);
        for (std::size_t i = 0; i + 1 < report.iterations.size(); ++i)
            CHECK_FALSE(report.iterations[i].completed);
    }
}

TEST_CASE("abort thresholds are monotone in kappa") {
    SegmentSet set = seven_vertex_instance();
    std::vector<Envelope> chains;
    for (const Segment& s : set.segments) chains.push_back(Envelope::from_segment(s));
    Envelope full = *merge_envelopes(chains).envelope;
    CHECK(merge_envelopes(chains, 6).aborted());
    for (std::uint64_t kappa = 7; kappa <= 12; ++kappa) {
        MergeOutcome out = merge_envelopes(chains, kappa);
        REQUIRE(out.completed());
        CHECK(*out.envelope == full);
    }
}

TEST_CASE("per-group threading does not change the result") {
    SegmentSet set = random_set(48, 777);
    auto [base_env, base_report] = envelope_output_sensitive(set);
    setenv("ENVELOPE_THREADS", "4", 1);
    auto [par_env, par_report] = envelope_output_sensitive(set);
    unsetenv("ENVELOPE_THREADS");
    CHECK(par_env == base_env);
    CHECK(par_report.totals.intersection_tests == base_report.totals.intersection_tests);
    CHECK(par_report.totals.cursor_increments == base_report.totals.cursor_increments);
    CHECK(par_report.iterations.size() == base_report.iterations.size());
}

TEST_CASE("triple agreement survives coarse-grid degeneracies") {
    // Small integer coordinates make duplicates, shared endpoints, collinear
    // overlaps and concurrent crossings common; all tie rules get exercised.
    std::uint64_t state = 2026;
    for (int trial = 0; trial < 800; ++trial) {
        std::uint64_t n = 2 + splitmix64(state) % 11;
        SegmentSet set;
        for (std::uint64_t i = 0; i < n; ++i) {
            long x1 = static_cast<long>(splitmix64(state) % 7);
            long y1 = static_cast<long>(splitmix64(state) % 7);
            long x2 = static_cast<long>(splitmix64(state) % 7);
            long y2 = static_cast<long>(splitmix64(state) % 7);
            if (x1 == x2) {
                x2 = (x2 + 1) % 7;
                if (x1 == x2) x2 = (x2 + 1) % 7;
            }
            set.segments.emplace_back(pt(x1, y1), pt(x2, y2), static_cast<std::int64_t>(i));
        }
        Envelope oracle = envelope_bruteforce(set);
        auto [dc, dc_counters] = envelope_divide_conquer(set);
        auto [os, report] = envelope_output_sensitive(set);
        CHECK_MESSAGE(dc == oracle, "trial ", trial);
        CHECK_MESSAGE(os == oracle, "trial ", trial);
    }
}

TEST_CASE("output sensitivity shows up in the counters at fixed n") {
    GenSpec small;
    small.kind = GenKind::small_k;
    small.n = 256;
    small.seed = 5;
    GenSpec para;
    para.kind = GenKind::parabola;
    para.n = 256;
    para.seed = 5;
    auto [senv, sreport] = envelope_output_sensitive(gen_small_k(small));
    auto [penv, preport] = envelope_output_sensitive(gen_parabola(para));
    CHECK(envelope_size(senv) <= 4);
    CHECK(envelope_size(penv) >= 256);
    CHECK(sreport.totals.intersection_tests < preport.totals.intersection_tests);
}
