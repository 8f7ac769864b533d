#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "core/io.hpp"
#include "core/merge.hpp"
#include "core/solver.hpp"
#include "core/workload.hpp"

using namespace lenv;

namespace {

Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }
Point pt(Rational x, Rational y) { return Point{std::move(x), std::move(y)}; }

Envelope seg_chain(long x1, long y1, long x2, long y2, std::int64_t id) {
    return Envelope::from_segment(Segment(pt(x1, y1), pt(x2, y2), id));
}

std::vector<Envelope> to_chains(const SegmentSet& set) {
    std::vector<Envelope> chains;
    chains.reserve(set.size());
    for (const Segment& s : set.segments) chains.push_back(Envelope::from_segment(s));
    return chains;
}

SegmentSet random_set(std::uint64_t n, std::uint64_t seed) {
    GenSpec spec;
    spec.kind = GenKind::random;
    spec.n = n;
    spec.seed = seed;
    return gen_random(spec);
}

// Three ways a vertex can be legitimate: an input chain vertex, a crossing
// of two input edges, or a cut of one input edge at a run boundary's x.
void check_provenance(const Envelope& out, const std::vector<Envelope>& chains) {
    auto on_edge = [](const Envelope& c, const Point& p) {
        int hits = 0;
        const auto& vs = c.vertices();
        for (std::size_t e = 0; e < c.edges().size(); ++e) {
            if (c.edges()[e].kind != EdgeKind::solid) continue;
            const Point& u = vs[e];
            const Point& w = vs[e + 1];
            if (p.x < u.x || w.x < p.x) continue;
            if (u.x == w.x && (p.y < u.y || p.y > w.y) && (p.y < w.y || p.y > u.y)) continue;
            if (orientation(u, w, p) == 0) ++hits;
        }
        return hits;
    };
    for (const Point& p : out.vertices()) {
        bool is_input_vertex = false;
        bool shares_x = false;
        int edge_hits = 0;
        for (const Envelope& c : chains) {
            for (const Point& v : c.vertices()) {
                if (v == p) is_input_vertex = true;
                if (v.x == p.x) shares_x = true;
            }
            edge_hits += on_edge(c, p);
        }
        bool ok = is_input_vertex || edge_hits >= 2 || (edge_hits == 1 && shares_x);
        CHECK_MESSAGE(ok, "vertex without provenance: ", point_str(p));
    }
}

void check_counters(const MergeCounters& c) {
    CHECK(c.cursor_increments <= c.total_input_vertices);
    CHECK(c.intersection_tests <= 4 * (c.cursor_increments + c.chains * c.vertices_emitted));
}

// Exact pointwise-minimum check at random x samples, gaps included.
void check_pointwise(const Envelope& out, const std::vector<Envelope>& chains,
                     std::uint64_t seed, int samples = 100) {
    Rational lo = out.front().x, hi = out.back().x;
    std::uint64_t state = seed;
    for (int i = 0; i < samples; ++i) {
        std::uint64_t g = splitmix64(state) % 100000;
        Rational x = lo + (hi - lo) * Rational(static_cast<long>(g), 100000);
        std::optional<Rational> expect;
        for (const Envelope& c : chains) {
            auto y = c.value_at(x);
            if (y && (!expect || *y < *expect)) expect = y;
        }
        CHECK(out.value_at(x) == expect);
    }
}

MergeOutcome merged(const std::vector<Envelope>& chains) {
    MergeOutcome out = merge_envelopes(chains);
    REQUIRE(out.completed());
    check_counters(out.counters);
    return out;
}

}  // namespace

TEST_CASE("select_initial_active picks lowest start, leftmost first") {
    std::vector<Envelope> a{seg_chain(0, 0, 4, 2, 0), seg_chain(0, 1, 4, -5, 1)};
    CHECK(select_initial_active(a) == 0);

    std::vector<Envelope> b{seg_chain(0, 5, 4, 5, 0), seg_chain(2, 0, 4, 0, 1)};
    CHECK(select_initial_active(b) == 0);
    // The leftmost-start policy yields the true envelope on this instance.
    SegmentSet set;
    set.segments.emplace_back(pt(0, 5), pt(4, 5), 0);
    set.segments.emplace_back(pt(2, 0), pt(4, 0), 1);
    CHECK(*merged(b).envelope == envelope_bruteforce(set));

    // Shared first vertex: the smaller slope stays lowest to the right.
    std::vector<Envelope> c{seg_chain(0, 0, 1, 2, 0), seg_chain(0, 0, 1, 1, 1)};
    CHECK(select_initial_active(c) == 1);
    SegmentSet set2;
    set2.segments.emplace_back(pt(0, 0), pt(1, 2), 0);
    set2.segments.emplace_back(pt(0, 0), pt(1, 1), 1);
    CHECK(*merged(c).envelope == envelope_bruteforce(set2));

    CHECK_THROWS_AS(select_initial_active({}), std::invalid_argument);
}

TEST_CASE("advance_condition spec traces") {
    auto run = [](Envelope other) {
        std::vector<Envelope> chains{seg_chain(0, 0, 2, 0, 0), std::move(other)};
        MergeState st;
        st.chains = &chains;
        st.cursors = {1, 1};
        st.active = 0;
        st.current = pt(0, 0);
        return advance_condition(st, 1);
    };
    // Ends past the active segment in x.
    CHECK(run(seg_chain(3, 1, 4, 1, 1)) == AdvanceDecision::stop);
    // Proper intersection with the active segment.
    CHECK(run(Envelope::from_segment(
              Segment(Point{Rational(1), Rational(-1)}, Point{Rational(3, 2), Rational(1)}, 1))) ==
          AdvanceDecision::stop);
    // Strictly above: occluded, the cursor moves on.
    CHECK(run(Envelope::from_segment(
              Segment(Point{Rational(1, 2), Rational(1)}, Point{Rational(3, 2), Rational(2)},
                      1))) == AdvanceDecision::advance);
}

TEST_CASE("merging a single chain returns it unchanged") {
    Envelope e = seg_chain(0, 0, 1, 1, 7);
    MergeOutcome out = merged({e});
    CHECK(*out.envelope == e);
    CHECK(out.counters.vertices_emitted == 2);
    CHECK(out.counters.chains == 1);

    // Also with a vertical piece and a gap.
    Envelope fancy({pt(0, 0), pt(1, 0), pt(1, 2), pt(2, 2), pt(3, 0), pt(4, 0)},
                   {EnvelopeEdge{EdgeKind::solid, 0}, EnvelopeEdge{EdgeKind::solid, std::nullopt},
                    EnvelopeEdge{EdgeKind::solid, 1}, EnvelopeEdge{EdgeKind::gap, std::nullopt},
                    EnvelopeEdge{EdgeKind::solid, 2}});
    CHECK(*merged({fancy}).envelope == fancy);
}

TEST_CASE("symmetric X crossing switches source at the midpoint") {
    MergeOutcome out = merged({seg_chain(0, 0, 1, 1, 0), seg_chain(0, 1, 1, 0, 1)});
    const Envelope& e = *out.envelope;
    CHECK(e.vertices() ==
          std::vector<Point>{pt(0, 0), pt(Rational(1, 2), Rational(1, 2)), pt(1, 0)});
    REQUIRE(e.edges().size() == 2);
    CHECK(e.edges()[0] == EnvelopeEdge{EdgeKind::solid, 0});
    CHECK(e.edges()[1] == EnvelopeEdge{EdgeKind::solid, 1});
}

TEST_CASE("disjoint spans produce one gap edge") {
    MergeOutcome out = merged({seg_chain(0, 0, 1, 0, 0), seg_chain(2, 0, 3, 0, 1)});
    const Envelope& e = *out.envelope;
    CHECK(e.vertices() == std::vector<Point>{pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)});
    REQUIRE(e.edges().size() == 3);
    CHECK(e.edges()[0].kind == EdgeKind::solid);
    CHECK(e.edges()[1].kind == EdgeKind::gap);
    CHECK(e.edges()[2].kind == EdgeKind::solid);
    CHECK(out.counters.restarts >= 1);
}

TEST_CASE("three chains against the oracle, degeneracies included") {
    // Chain 2 is a two-edge horizontal path; chain 1 passes exactly through
    // its middle vertex (2,1), so three pieces meet at one point.
    Envelope poly({pt(0, 1), pt(2, 1), pt(4, 1)},
                  {EnvelopeEdge{EdgeKind::solid, 2}, EnvelopeEdge{EdgeKind::solid, 3}});
    std::vector<Envelope> chains{seg_chain(0, 0, 4, 4, 0), seg_chain(0, 3, 4, -1, 1), poly};

    SegmentSet set;
    set.segments.emplace_back(pt(0, 0), pt(4, 4), 0);
    set.segments.emplace_back(pt(0, 3), pt(4, -1), 1);
    set.segments.emplace_back(pt(0, 1), pt(2, 1), 2);
    set.segments.emplace_back(pt(2, 1), pt(4, 1), 3);

    MergeOutcome out = merged(chains);
    CHECK(*out.envelope == envelope_bruteforce(set));
    CHECK(out.envelope->vertices() ==
          std::vector<Point>{pt(0, 0), pt(1, 1), pt(2, 1), pt(4, -1)});
    check_pointwise(*out.envelope, chains, 404);
}

TEST_CASE("abort threshold stops the merge at the third vertex") {
    std::vector<Envelope> x{seg_chain(0, 0, 1, 1, 0), seg_chain(0, 1, 1, 0, 1)};
    MergeOutcome out = merge_envelopes(x, 2);
    CHECK(out.aborted());
    CHECK(out.counters.vertices_emitted == 3);

    // Consistency: a completed thresholded merge equals the plain result.
    MergeOutcome plain = merge_envelopes(x);
    MergeOutcome wide = merge_envelopes(x, 64);
    REQUIRE(wide.completed());
    CHECK(*wide.envelope == *plain.envelope);
}

TEST_CASE("merge rejects bad input") {
    CHECK_THROWS_AS(merge_envelopes({}), std::invalid_argument);
    Envelope bad({pt(0, 0), pt(2, 1), pt(1, 0)},
                 {EnvelopeEdge{EdgeKind::solid, 0}, EnvelopeEdge{EdgeKind::solid, 1}});
    CHECK_THROWS_AS(merge_envelopes({bad}), std::invalid_argument);
}

TEST_CASE("jump down when a lower chain enters mid-span") {
    // One high shelf over [0,10]; a low chain covering [0,1] and [9,10].
    Envelope low({pt(0, 0), pt(1, 0), pt(9, 0), pt(10, 0)},
                 {EnvelopeEdge{EdgeKind::solid, 1}, EnvelopeEdge{EdgeKind::gap, std::nullopt},
                  EnvelopeEdge{EdgeKind::solid, 2}});
    std::vector<Envelope> chains{seg_chain(0, 5, 10, 5, 0), low};
    MergeOutcome out = merged(chains);

    SegmentSet set;
    set.segments.emplace_back(pt(0, 5), pt(10, 5), 0);
    set.segments.emplace_back(pt(0, 0), pt(1, 0), 1);
    set.segments.emplace_back(pt(9, 0), pt(10, 0), 2);
    CHECK(*out.envelope == envelope_bruteforce(set));

    CHECK(out.envelope->vertices() == std::vector<Point>{pt(0, 0), pt(1, 0), pt(1, 5), pt(9, 5),
                                                         pt(9, 0), pt(10, 0)});
    // The two vertical connectors carry no source.
    CHECK(out.envelope->edges()[1] == EnvelopeEdge{EdgeKind::solid, std::nullopt});
    CHECK(out.envelope->edges()[3] == EnvelopeEdge{EdgeKind::solid, std::nullopt});
    check_pointwise(*out.envelope, chains, 7);
    check_provenance(*out.envelope, chains);
}

TEST_CASE("collinear overlap keeps the smaller source id") {
    // id 1 spans [0,4]; id 0 duplicates its middle [1,3].
    std::vector<Envelope> chains{seg_chain(1, 0, 3, 0, 0), seg_chain(0, 0, 4, 0, 1)};
    MergeOutcome out = merged(chains);
    SegmentSet set;
    set.segments.emplace_back(pt(1, 0), pt(3, 0), 0);
    set.segments.emplace_back(pt(0, 0), pt(4, 0), 1);
    CHECK(*out.envelope == envelope_bruteforce(set));
    REQUIRE(out.envelope->edges().size() == 3);
    CHECK(out.envelope->edges()[0].source == 1);
    CHECK(out.envelope->edges()[1].source == 0);
    CHECK(out.envelope->edges()[2].source == 1);
}

TEST_CASE("random instances: merge of single-segment chains equals the oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        std::uint64_t n = 1 + seed % 24;
        SegmentSet set = random_set(n, seed * 1337);
        auto chains = to_chains(set);
        MergeOutcome out = merge_envelopes(chains);
        REQUIRE(out.completed());
        check_counters(out.counters);
        Envelope oracle = envelope_bruteforce(set);
        CHECK_MESSAGE(*out.envelope == oracle, "seed ", seed);
        if (seed % 7 == 0) {
            check_pointwise(*out.envelope, chains, seed);
            check_provenance(*out.envelope, chains);
        }
    }
}

TEST_CASE("random instances: merging oracle-built group envelopes equals the oracle") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        SegmentSet set = random_set(16 + seed, seed * 71);
        // Group envelopes come from the brute-force path, so this exercises
        // multi-vertex chains with gaps without trusting the merge itself.
        std::vector<Envelope> chains;
        std::size_t groups = 4;
        std::size_t per = (set.size() + groups - 1) / groups;
        for (std::size_t g = 0; g < groups; ++g) {
            SegmentSet part;
            for (std::size_t i = g * per; i < std::min(set.size(), (g + 1) * per); ++i)
                part.segments.push_back(set.segments[i]);
            if (!part.empty()) chains.push_back(envelope_bruteforce(part));
        }
        MergeOutcome out = merge_envelopes(chains);
        REQUIRE(out.completed());
        check_counters(out.counters);
        CHECK_MESSAGE(*out.envelope == envelope_bruteforce(set), "seed ", seed);
        if (seed % 5 == 0) check_pointwise(*out.envelope, chains, seed);
    }
}

TEST_CASE("permutation invariance of the canonical result") {
    SegmentSet set = random_set(12, 2024);
    auto chains = to_chains(set);
    Envelope base = *merged(chains).envelope;
    std::uint64_t state = 5;
    for (int round = 0; round < 5; ++round) {
        for (std::size_t i = chains.size(); i > 1; --i)
            std::swap(chains[i - 1], chains[splitmix64(state) % i]);
        CHECK(*merged(chains).envelope == base);
    }
}

TEST_CASE("idempotence and re-merge associativity") {
    SegmentSet set = random_set(9, 99);
    auto chains = to_chains(set);
    Envelope whole = *merged(chains).envelope;
    CHECK(*merged({whole}).envelope == whole);

    std::vector<Envelope> ab{chains[0], chains[1]};
    Envelope merged_ab = *merged(ab).envelope;
    std::vector<Envelope> rest{merged_ab};
    rest.insert(rest.end(), chains.begin() + 2, chains.end());
    CHECK(*merged(rest).envelope == whole);
}

TEST_CASE("translation equivariance") {
    SegmentSet set = random_set(10, 321);
    auto chains = to_chains(set);
    Envelope base = *merged(chains).envelope;
    Rational dx(7, 3), dy(-11, 5);
    std::vector<Envelope> moved;
    for (const Envelope& c : chains) moved.push_back(c.translated(dx, dy));
    CHECK(*merged(moved).envelope == base.translated(dx, dy));
}

TEST_CASE("cursors never retreat and stay within the input size") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        SegmentSet set = random_set(20, seed);
        MergeOutcome out = merged(to_chains(set));
        CHECK(out.counters.cursor_increments <= out.counters.total_input_vertices);
    }
}
