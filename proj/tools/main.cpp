// Command-line front end; all computation goes through the lenv C API.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lenv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

[[noreturn]] void die(const std::string& msg) {
    std::cerr << "lenv: " << msg << "\n";
    std::exit(kExitError);
}

void check(lenv_status st) {
    if (st != LENV_OK) die(lenv_last_error());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const char* data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) die("cannot write '" + path + "'");
    out << data;
}

struct StringOut {
    char* s = nullptr;
    ~StringOut() { lenv_string_free(s); }
};

using SegmentsPtr = std::unique_ptr<lenv_segments, decltype(&lenv_segments_free)>;
using ChainsPtr = std::unique_ptr<lenv_chains, decltype(&lenv_chains_free)>;

SegmentsPtr load_segments(const std::string& path) {
    lenv_segments* set = nullptr;
    check(lenv_segments_parse(read_file(path).c_str(), &set));
    return SegmentsPtr(set, lenv_segments_free);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lower envelopes of 2D segments, exactly and output-sensitively"};
    app.require_subcommand(1);

    // compute
    std::string c_algo = "chan", c_in, c_out, c_svg;
    bool c_stats = false;
    auto* compute = app.add_subcommand("compute", "compute the lower envelope of a segments file");
    compute->add_option("--algo", c_algo, "algorithm: oracle, dc or chan")
        ->check(CLI::IsMember({"oracle", "dc", "chan"}));
    compute->add_option("-i,--input", c_in, "segments file")->required();
    compute->add_option("-o,--output", c_out, "envelope document output (default stdout)");
    compute->add_option("--svg", c_svg, "also render an SVG to this path");
    compute->add_flag("--stats", c_stats, "include counters / run report in the document");

    // merge-chains
    std::string m_in, m_out;
    std::uint64_t m_abort = 0;
    auto* merge = app.add_subcommand("merge-chains", "merge monotone chains from a chains file");
    merge->add_option("-i,--input", m_in, "chains file")->required();
    merge->add_option("-o,--output", m_out, "envelope document output (default stdout)");
    merge->add_option("--abort", m_abort, "abort once the output exceeds this many vertices");

    // gen
    std::string g_kind = "random", g_out, g_bbox;
    std::uint64_t g_n = 16, g_seed = 1;
    auto* gen = app.add_subcommand("gen", "generate a deterministic segments file");
    gen->add_option("--kind", g_kind, "random, smallk, parabola or disjoint")
        ->check(CLI::IsMember({"random", "smallk", "parabola", "disjoint"}));
    gen->add_option("-n", g_n, "number of segments")->required();
    gen->add_option("--seed", g_seed, "PRNG seed");
    gen->add_option("--bbox", g_bbox, "bounding box 'xmin ymin xmax ymax'");
    gen->add_option("-o,--output", g_out, "segments file output (default stdout)");

    // verify
    std::string v_in;
    std::uint64_t v_samples = 100;
    auto* verify = app.add_subcommand("verify", "cross-check all three algorithms on a file");
    verify->add_option("-i,--input", v_in, "segments file")->required();
    verify->add_option("--samples", v_samples, "pointwise spot-check count");

    // bench
    std::string b_sizes, b_kinds = "random", b_out;
    std::uint64_t b_seed = 1;
    bool b_timings = false;
    auto* bench = app.add_subcommand("bench", "scaling table over generated instances");
    bench->add_option("--sizes", b_sizes, "comma-separated instance sizes")->required();
    bench->add_option("--kinds", b_kinds, "comma-separated generator kinds");
    bench->add_option("--seed", b_seed, "PRNG seed");
    bench->add_flag("--timings", b_timings, "append a wall_ms column (not reproducible)");
    bench->add_option("-o,--output", b_out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    if (compute->parsed()) {
        auto set = load_segments(c_in);
        lenv_result* result = nullptr;
        check(lenv_compute(set.get(), c_algo.c_str(), &result));
        StringOut doc;
        check(lenv_result_doc(result, c_stats ? 1 : 0, &doc.s));
        write_output(c_out, doc.s);
        if (!c_svg.empty()) {
            StringOut svg;
            check(lenv_result_svg(result, set.get(), &svg.s));
            write_output(c_svg, svg.s);
        }
        return kExitOk;
    }

    if (merge->parsed()) {
        lenv_chains* chains = nullptr;
        check(lenv_chains_parse(read_file(m_in).c_str(), &chains));
        ChainsPtr owned(chains, lenv_chains_free);
        lenv_result* result = nullptr;
        check(lenv_merge_chains(chains, m_abort, &result));
        StringOut doc;
        check(lenv_result_doc(result, 1, &doc.s));
        write_output(m_out, doc.s);
        return kExitOk;
    }

    if (gen->parsed()) {
        lenv_segments* set = nullptr;
        check(lenv_segments_generate(g_kind.c_str(), g_n, g_seed,
                                     g_bbox.empty() ? nullptr : g_bbox.c_str(), &set));
        SegmentsPtr owned(set, lenv_segments_free);
        StringOut text;
        check(lenv_segments_format(set, &text.s));
        write_output(g_out, text.s);
        return kExitOk;
    }

    if (verify->parsed()) {
        auto set = load_segments(v_in);
        int agree = 0;
        StringOut report;
        check(lenv_verify(set.get(), v_samples, &agree, &report.s));
        std::cout << report.s;
        return agree ? kExitOk : kExitMismatch;
    }

    if (bench->parsed()) {
        StringOut csv;
        check(lenv_bench(b_sizes.c_str(), b_kinds.c_str(), b_seed, b_timings ? 1 : 0, &csv.s));
        write_output(b_out, csv.s);
        return kExitOk;
    }

    return kExitError;
}
