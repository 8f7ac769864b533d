#include "core/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace lenv {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

Rational parse_rat(const std::string& tok, std::size_t lineno) {
    try {
        return rational_parse(tok);
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()), lineno);
    }
}

}  // namespace

SegmentSet parse_segments(const std::string& text) {
    SegmentSet out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() != 4)
            throw ParseError("expected 'x1 y1 x2 y2', got " + std::to_string(toks.size()) +
                                 " fields",
                             lineno);
        Point a{parse_rat(toks[0], lineno), parse_rat(toks[1], lineno)};
        Point b{parse_rat(toks[2], lineno), parse_rat(toks[3], lineno)};
        if (a == b) throw ParseError("zero-length segment", lineno);
        if (a.x == b.x) throw ParseError("vertical segment", lineno);
        out.segments.emplace_back(a, b, static_cast<std::int64_t>(out.segments.size()));
    }
    return out;
}

std::string format_segments(const SegmentSet& set) {
    std::string out;
    for (const Segment& s : set.segments) {
        out += rational_compact_str(s.a.x) + " " + rational_compact_str(s.a.y) + " " +
               rational_compact_str(s.b.x) + " " + rational_compact_str(s.b.y) + "\n";
    }
    return out;
}

std::vector<Envelope> parse_chains(const std::string& text) {
    std::vector<Envelope> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    EnvelopeBuilder builder;
    bool pending_gap = false;
    bool in_block = false;
    std::size_t block_line = 0;

    auto flush = [&] {
        if (!in_block) return;
        if (builder.vertex_count() < 2)
            throw ParseError("chain needs at least two vertices", block_line);
        if (pending_gap) throw ParseError("chain ends with a dangling GAP", block_line);
        Envelope env = builder.finish();
        auto diags = validate_chain(env);
        if (!diags.empty()) throw ParseError("invalid chain: " + diags.front().rule, block_line);
        out.push_back(std::move(env));
        builder = EnvelopeBuilder{};
        in_block = false;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(strip_comment(line));
        if (toks.empty()) {
            flush();
            continue;
        }
        if (toks.size() == 1 && toks[0] == "GAP") {
            if (!in_block) throw ParseError("GAP before any vertex", lineno);
            if (pending_gap) continue;
            pending_gap = true;
            continue;
        }
        if (toks.size() != 2) throw ParseError("expected 'x y' or 'GAP'", lineno);
        Point p{parse_rat(toks[0], lineno), parse_rat(toks[1], lineno)};
        if (!in_block) {
            builder.start(p);
            in_block = true;
            block_line = lineno;
        } else {
            const Point& last = builder.last();
            if (p.x < last.x) throw ParseError("vertices must be x-monotone", lineno);
            builder.extend(p, pending_gap ? EdgeKind::gap : EdgeKind::solid, std::nullopt);
            pending_gap = false;
        }
    }
    flush();
    return out;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson vertices_json(const Envelope& env) {
    ojson arr = ojson::array();
    for (const Point& p : env.vertices())
        arr.push_back({{"x", p.x.fraction_str()}, {"y", p.y.fraction_str()}});
    return arr;
}

ojson edges_json(const Envelope& env) {
    ojson arr = ojson::array();
    for (const EnvelopeEdge& e : env.edges()) {
        ojson o;
        o["kind"] = e.kind == EdgeKind::solid ? "solid" : "gap";
        o["source"] = e.source ? ojson(*e.source) : ojson(nullptr);
        arr.push_back(std::move(o));
    }
    return arr;
}

ojson counters_json(const MergeCounters& c) {
    ojson o;
    o["cursor_increments"] = c.cursor_increments;
    o["intersection_tests"] = c.intersection_tests;
    o["vertices_emitted"] = c.vertices_emitted;
    o["restarts"] = c.restarts;
    o["chains"] = c.chains;
    o["total_input_vertices"] = c.total_input_vertices;
    return o;
}

ojson report_json(const RunReport& r) {
    ojson o;
    ojson its = ojson::array();
    for (const IterationRecord& it : r.iterations) {
        its.push_back({{"t", it.t},
                       {"kappa", it.kappa},
                       {"groups", it.groups},
                       {"outcome", it.completed ? "completed" : "aborted"}});
    }
    o["iterations"] = std::move(its);
    o["final_k"] = r.final_k;
    o["totals"] = counters_json(r.totals);
    return o;
}

std::string dump_doc(const ojson& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string envelope_doc_json(const Envelope& env, const MergeCounters* counters,
                              const RunReport* report) {
    ojson doc;
    doc["vertices"] = vertices_json(env);
    doc["edges"] = edges_json(env);
    if (counters) doc["counters"] = counters_json(*counters);
    if (report) doc["run_report"] = report_json(*report);
    return dump_doc(doc);
}

std::string merge_doc_json(const MergeOutcome& outcome, bool include_stats) {
    ojson doc;
    doc["aborted"] = outcome.aborted();
    if (outcome.completed()) {
        doc["vertices"] = vertices_json(*outcome.envelope);
        doc["edges"] = edges_json(*outcome.envelope);
    }
    if (include_stats || outcome.aborted()) doc["counters"] = counters_json(outcome.counters);
    return dump_doc(doc);
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timings) {
    std::string out =
        "kind,n,k,iterations,cursor_increments,intersection_tests,vertices_emitted,restarts,"
        "chains,total_input_vertices";
    if (include_timings) out += ",wall_ms";
    out += "\n";
    char buf[64];
    for (const BenchRow& r : rows) {
        out += kind_name(r.kind);
        std::snprintf(buf, sizeof buf, ",%" PRIu64 ",%" PRIu64 ",%" PRIu64, r.n, r.k,
                      r.iterations);
        out += buf;
        const MergeCounters& c = r.totals;
        std::snprintf(buf, sizeof buf, ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64,
                      c.cursor_increments, c.intersection_tests, c.vertices_emitted, c.restarts);
        out += buf;
        std::snprintf(buf, sizeof buf, ",%" PRIu64 ",%" PRIu64, c.chains,
                      c.total_input_vertices);
        out += buf;
        if (include_timings) {
            std::snprintf(buf, sizeof buf, ",%.3f", r.wall_seconds * 1000.0);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string render_svg(const Envelope& env, const SegmentSet* input) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    auto see = [&](const Point& p) {
        double x = p.x.to_double(), y = p.y.to_double();
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
        } else {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    };
    for (const Point& p : env.vertices()) see(p);
    if (input)
        for (const Segment& s : input->segments) {
            see(s.a);
            see(s.b);
        }
    double w = xmax - xmin, h = ymax - ymin;
    if (w <= 0) w = 1;
    if (h <= 0) h = 1;
    double pad = 0.05 * std::max(w, h);
    xmin -= pad;
    ymin -= pad;
    w += 2 * pad;
    h += 2 * pad;
    // Flip y so larger y is up.
    auto X = [&](const Point& p) { return fmt(p.x.to_double() - xmin); };
    auto Y = [&](const Point& p) { return fmt(ymin + h - p.y.to_double()); };
    double thin = std::max(w, h) / 400.0, bold = thin * 3;

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(w) + " " +
                      fmt(h) + "\">\n";
    if (input) {
        for (const Segment& s : input->segments) {
            svg += "  <path class=\"seg\" d=\"M " + X(s.a) + " " + Y(s.a) + " L " + X(s.b) + " " +
                   Y(s.b) + "\" stroke=\"#c8c8c8\" stroke-width=\"" + fmt(thin) +
                   "\" fill=\"none\"/>\n";
        }
    }
    const auto& vs = env.vertices();
    const auto& es = env.edges();
    for (std::size_t e = 0; e < es.size(); ++e) {
        if (es[e].kind != EdgeKind::gap) continue;
        svg += "  <path class=\"gap\" d=\"M " + X(vs[e]) + " " + Y(vs[e]) + " L " + X(vs[e + 1]) +
               " " + Y(vs[e + 1]) + "\" stroke=\"#888888\" stroke-width=\"" + fmt(thin) +
               "\" stroke-dasharray=\"" + fmt(4 * thin) + " " + fmt(3 * thin) +
               "\" fill=\"none\"/>\n";
    }
    // One bold path per maximal run of solid edges.
    std::size_t e = 0;
    while (e < es.size()) {
        if (es[e].kind != EdgeKind::solid) {
            ++e;
            continue;
        }
        std::string d = "M " + X(vs[e]) + " " + Y(vs[e]);
        while (e < es.size() && es[e].kind == EdgeKind::solid) {
            d += " L " + X(vs[e + 1]) + " " + Y(vs[e + 1]);
            ++e;
        }
        svg += "  <path class=\"env\" d=\"" + d + "\" stroke=\"#1f4e9c\" stroke-width=\"" +
               fmt(bold) + "\" fill=\"none\" stroke-linejoin=\"round\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

VerifyResult verify_instance(const SegmentSet& input, std::uint64_t samples) {
    VerifyResult res;
    if (input.empty()) {
        res.report = "FAIL empty segment set\n";
        return res;
    }
    Envelope oracle = envelope_bruteforce(input);
    auto [dc, dc_counters] = envelope_divide_conquer(input);
    auto [os, os_report] = envelope_output_sensitive(input);

    bool dc_ok = dc == oracle;
    bool os_ok = os == oracle;
    res.report += std::string(dc_ok ? "PASS" : "FAIL") + " divide-and-conquer matches oracle\n";
    res.report += std::string(os_ok ? "PASS" : "FAIL") + " output-sensitive matches oracle\n";

    // Spot checks: envelope value vs direct minimum over all segments.
    Rational lo = input.segments.front().a.x, hi = input.segments.front().b.x;
    for (const Segment& s : input.segments) {
        if (s.a.x < lo) lo = s.a.x;
        if (hi < s.b.x) hi = s.b.x;
    }
    std::uint64_t state = 0x5eed0f00dull;
    bool sample_ok = true;
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::uint64_t g = splitmix64(state) >> 16;  // 48-bit fraction
        Rational x = lo + (hi - lo) * Rational(mpq_class(mpz_class(static_cast<unsigned long>(g)),
                                                         mpz_class(1L << 48)));
        std::optional<Rational> direct;
        for (const Segment& s : input.segments) {
            if (x < s.a.x || s.b.x < x) continue;
            Rational y = eval_at(s, x);
            if (!direct || y < *direct) direct = y;
        }
        if (oracle.value_at(x) != direct) {
            sample_ok = false;
            break;
        }
    }
    res.report += std::string(sample_ok ? "PASS" : "FAIL") + " pointwise minimum spot checks (" +
                  std::to_string(samples) + " samples)\n";

    res.agree = dc_ok && os_ok && sample_ok;
    return res;
}

}  // namespace lenv
