#include "core/workload.hpp"

#include <stdexcept>
#include <utility>

namespace lenv {

const char* kind_name(GenKind k) {
    switch (k) {
        case GenKind::random: return "random";
        case GenKind::small_k: return "smallk";
        case GenKind::parabola: return "parabola";
        case GenKind::disjoint_spans: return "disjoint";
    }
    return "?";
}

std::optional<GenKind> kind_from_name(const std::string& name) {
    if (name == "random") return GenKind::random;
    if (name == "smallk") return GenKind::small_k;
    if (name == "parabola") return GenKind::parabola;
    if (name == "disjoint") return GenKind::disjoint_spans;
    return std::nullopt;
}

BBox default_bbox() { return BBox{Rational(0), Rational(0), Rational(1), Rational(1)}; }

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kGridSteps = 1ull << 16;  // grid pitch: span / 2^16

void check_spec(const GenSpec& spec, GenKind expected, std::uint64_t min_n) {
    if (spec.kind != expected) throw std::invalid_argument("generator called with wrong kind");
    if (spec.n < min_n)
        throw std::invalid_argument("generator needs n >= " + std::to_string(min_n));
    if (!(spec.bbox.xmin < spec.bbox.xmax) || !(spec.bbox.ymin < spec.bbox.ymax))
        throw std::invalid_argument("malformed bbox");
}

// min + span * g / 2^16, g in [0, 2^16]
Rational grid_coord(const Rational& min, const Rational& span, std::uint64_t g) {
    return min + span * Rational(static_cast<long>(g), static_cast<long>(kGridSteps));
}

std::uint64_t grid_draw(std::uint64_t& state) { return splitmix64(state) % (kGridSteps + 1); }

}  // namespace

SegmentSet gen_random(const GenSpec& spec) {
    check_spec(spec, GenKind::random, 1);
    const Rational sx = spec.bbox.xmax - spec.bbox.xmin;
    const Rational sy = spec.bbox.ymax - spec.bbox.ymin;
    std::uint64_t state = spec.seed;
    SegmentSet out;
    out.segments.reserve(spec.n);
    for (std::uint64_t i = 0; i < spec.n; ++i) {
        for (;;) {
            std::uint64_t gx1 = grid_draw(state), gy1 = grid_draw(state);
            std::uint64_t gx2 = grid_draw(state), gy2 = grid_draw(state);
            if (gx1 == gx2) continue;  // vertical: re-roll
            Point a{grid_coord(spec.bbox.xmin, sx, gx1), grid_coord(spec.bbox.ymin, sy, gy1)};
            Point b{grid_coord(spec.bbox.xmin, sx, gx2), grid_coord(spec.bbox.ymin, sy, gy2)};
            out.segments.emplace_back(a, b, static_cast<std::int64_t>(i));
            break;
        }
    }
    return out;
}

SegmentSet gen_small_k(const GenSpec& spec) {
    check_spec(spec, GenKind::small_k, 2);
    const Rational sx = spec.bbox.xmax - spec.bbox.xmin;
    const Rational sy = spec.bbox.ymax - spec.bbox.ymin;
    std::uint64_t state = spec.seed;
    SegmentSet out;
    out.segments.reserve(spec.n);
    out.segments.emplace_back(Point{spec.bbox.xmin, spec.bbox.ymin},
                              Point{spec.bbox.xmax, spec.bbox.ymin}, 0);
    const Rational quarter(1, 4);
    for (std::uint64_t i = 1; i < spec.n; ++i) {
        for (;;) {
            std::uint64_t gx1 = grid_draw(state), gy1 = grid_draw(state);
            std::uint64_t gx2 = grid_draw(state), gy2 = grid_draw(state);
            if (gx1 == gx2) continue;
            // y confined to the upper three quarters: strictly above the base
            Rational y1 = spec.bbox.ymin + sy * (quarter + Rational(3, 4) * Rational(static_cast<long>(gy1), static_cast<long>(kGridSteps)));
            Rational y2 = spec.bbox.ymin + sy * (quarter + Rational(3, 4) * Rational(static_cast<long>(gy2), static_cast<long>(kGridSteps)));
            Point a{grid_coord(spec.bbox.xmin, sx, gx1), y1};
            Point b{grid_coord(spec.bbox.xmin, sx, gx2), y2};
            out.segments.emplace_back(a, b, static_cast<std::int64_t>(i));
            break;
        }
    }
    return out;
}

SegmentSet gen_parabola(const GenSpec& spec) {
    check_spec(spec, GenKind::parabola, 1);
    const Rational sx = spec.bbox.xmax - spec.bbox.xmin;
    const Rational sy = spec.bbox.ymax - spec.bbox.ymin;
    const long n = static_cast<long>(spec.n);

    // Chord i supports the line through (u_i, u_i^2) and (u_{i+1}, u_{i+1}^2)
    // with u equally spaced in [-1, 1], extended a quarter step past both
    // arc points. A line sits below the arc outside its own chord interval,
    // so each segment keeps a private stretch of the envelope while the
    // overhangs make neighboring segments cross and occlude one another.
    std::vector<Segment> chords;
    chords.reserve(spec.n);
    const Rational overhang = Rational(1, 2 * n);  // quarter of the 2/n step
    auto chord = [&](long i) {
        Rational u0 = Rational(2 * i, n) - Rational(1);
        Rational u1 = Rational(2 * (i + 1), n) - Rational(1);
        Rational t0 = u0 - overhang, t1 = u1 + overhang;
        auto on_line = [&](const Rational& t) {
            Rational y = (u0 + u1) * t - u0 * u1;
            return Point{spec.bbox.xmin + sx * (t + Rational(1)) * Rational(1, 2),
                         spec.bbox.ymin + sy * y};
        };
        return Segment(on_line(t0), on_line(t1), 0);
    };
    for (long i = 0; i < n; ++i) chords.push_back(chord(i));

    // Deterministic shuffle, then ids in storage order.
    std::uint64_t state = spec.seed;
    for (std::size_t i = chords.size(); i > 1; --i) {
        std::size_t j = splitmix64(state) % i;
        std::swap(chords[i - 1], chords[j]);
    }
    for (std::size_t i = 0; i < chords.size(); ++i)
        chords[i].id = static_cast<std::int64_t>(i);

    return SegmentSet{std::move(chords)};
}

SegmentSet gen_disjoint_spans(const GenSpec& spec) {
    check_spec(spec, GenKind::disjoint_spans, 1);
    const Rational sx = spec.bbox.xmax - spec.bbox.xmin;
    const Rational sy = spec.bbox.ymax - spec.bbox.ymin;
    const long n = static_cast<long>(spec.n);
    std::uint64_t state = spec.seed;
    SegmentSet out;
    out.segments.reserve(spec.n);
    for (long i = 0; i < n; ++i) {
        // Middle 3/4 of slot i: a quarter slot of uncovered space follows.
        Rational slot_lo = spec.bbox.xmin + sx * Rational(i, n);
        Rational slot = sx * Rational(1, n);
        Rational x1 = slot_lo + slot * Rational(1, 8);
        Rational x2 = slot_lo + slot * Rational(7, 8);
        Rational y1 = grid_coord(spec.bbox.ymin, sy, grid_draw(state));
        Rational y2 = grid_coord(spec.bbox.ymin, sy, grid_draw(state));
        out.segments.emplace_back(Point{x1, y1}, Point{x2, y2}, i);
    }
    return out;
}

SegmentSet generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenKind::random: return gen_random(spec);
        case GenKind::small_k: return gen_small_k(spec);
        case GenKind::parabola: return gen_parabola(spec);
        case GenKind::disjoint_spans: return gen_disjoint_spans(spec);
    }
    throw std::invalid_argument("unknown generator kind");
}

std::vector<BenchRow> scaling_report(const std::vector<std::uint64_t>& sizes,
                                     const std::vector<GenKind>& kinds, std::uint64_t seed) {
    std::vector<BenchRow> rows;
    for (GenKind kind : kinds) {
        for (std::uint64_t n : sizes) {
            GenSpec spec;
            spec.kind = kind;
            spec.n = kind == GenKind::small_k && n < 2 ? 2 : n;
            spec.seed = seed;
            SegmentSet set = generate(spec);
            auto [env, report] = envelope_output_sensitive(set);
            BenchRow row;
            row.kind = kind;
            row.n = spec.n;
            row.k = envelope_size(env);
            row.iterations = report.iterations.size();
            row.totals = report.totals;
            row.wall_seconds = report.wall_time.count();
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace lenv
