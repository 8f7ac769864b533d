#include "lenv.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "core/errors.hpp"
#include "core/io.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
lenv_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const lenv::ParseError& e) {
        g_last_error = e.what();
        return LENV_ERR_PARSE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return LENV_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LENV_ERR_NOMEM;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LENV_ERR_INTERNAL;
    }
}

lenv_status invalid(const char* msg) {
    g_last_error = msg;
    return LENV_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct lenv_segments {
    lenv::SegmentSet set;
};

struct lenv_chains {
    std::vector<lenv::Envelope> chains;
};

struct lenv_result {
    std::optional<lenv::Envelope> envelope;
    lenv::MergeCounters counters;
    bool have_counters = false;
    lenv::RunReport report;
    bool have_report = false;
    bool from_merge = false;  // document carries the "aborted" flag
};

extern "C" {

const char* lenv_last_error(void) { return g_last_error.c_str(); }

lenv_status lenv_segments_parse(const char* text, lenv_segments** out) {
    if (!text || !out) return invalid("null argument");
    return guarded([&] {
        auto handle = std::make_unique<lenv_segments>();
        handle->set = lenv::parse_segments(text);
        *out = handle.release();
        return LENV_OK;
    });
}

lenv_status lenv_segments_generate(const char* kind, uint64_t n, uint64_t seed, const char* bbox,
                                   lenv_segments** out) {
    if (!kind || !out) return invalid("null argument");
    return guarded([&] {
        lenv::GenSpec spec;
        auto k = lenv::kind_from_name(kind);
        if (!k) throw std::invalid_argument("unknown generator kind '" + std::string(kind) + "'");
        spec.kind = *k;
        spec.n = n;
        spec.seed = seed;
        if (bbox && *bbox) {
            std::istringstream in(bbox);
            std::string t0, t1, t2, t3, extra;
            if (!(in >> t0 >> t1 >> t2 >> t3) || (in >> extra))
                throw std::invalid_argument("bbox must be 'xmin ymin xmax ymax'");
            spec.bbox = lenv::BBox{lenv::rational_parse(t0), lenv::rational_parse(t1),
                                   lenv::rational_parse(t2), lenv::rational_parse(t3)};
        }
        auto handle = std::make_unique<lenv_segments>();
        handle->set = lenv::generate(spec);
        *out = handle.release();
        return LENV_OK;
    });
}

lenv_status lenv_segments_format(const lenv_segments* set, char** text_out) {
    if (!set || !text_out) return invalid("null argument");
    return guarded([&] {
        *text_out = dup_string(lenv::format_segments(set->set));
        return LENV_OK;
    });
}

size_t lenv_segments_count(const lenv_segments* set) { return set ? set->set.size() : 0; }

void lenv_segments_free(lenv_segments* set) { delete set; }

lenv_status lenv_compute(const lenv_segments* set, const char* algo, lenv_result** out) {
    if (!set || !algo || !out) return invalid("null argument");
    return guarded([&] {
        auto result = std::make_unique<lenv_result>();
        std::string name(algo);
        if (name == "oracle") {
            result->envelope = lenv::envelope_bruteforce(set->set);
        } else if (name == "dc") {
            auto [env, counters] = lenv::envelope_divide_conquer(set->set);
            result->envelope = std::move(env);
            result->counters = counters;
            result->have_counters = true;
        } else if (name == "chan") {
            auto [env, report] = lenv::envelope_output_sensitive(set->set);
            result->envelope = std::move(env);
            result->counters = report.totals;
            result->have_counters = true;
            result->report = std::move(report);
            result->have_report = true;
        } else {
            throw std::invalid_argument("unknown algorithm '" + name +
                                        "' (expected oracle, dc or chan)");
        }
        *out = result.release();
        return LENV_OK;
    });
}

lenv_status lenv_chains_parse(const char* text, lenv_chains** out) {
    if (!text || !out) return invalid("null argument");
    return guarded([&] {
        auto handle = std::make_unique<lenv_chains>();
        handle->chains = lenv::parse_chains(text);
        *out = handle.release();
        return LENV_OK;
    });
}

size_t lenv_chains_count(const lenv_chains* chains) { return chains ? chains->chains.size() : 0; }

void lenv_chains_free(lenv_chains* chains) { delete chains; }

lenv_status lenv_merge_chains(const lenv_chains* chains, uint64_t abort_threshold,
                              lenv_result** out) {
    if (!chains || !out) return invalid("null argument");
    return guarded([&] {
        std::optional<std::uint64_t> limit;
        if (abort_threshold > 0) limit = abort_threshold;
        lenv::MergeOutcome outcome = lenv::merge_envelopes(chains->chains, limit);
        auto result = std::make_unique<lenv_result>();
        result->from_merge = true;
        result->counters = outcome.counters;
        result->have_counters = true;
        if (outcome.completed()) result->envelope = std::move(*outcome.envelope);
        *out = result.release();
        return LENV_OK;
    });
}

void lenv_result_free(lenv_result* result) { delete result; }

int lenv_result_aborted(const lenv_result* result) {
    return result && !result->envelope ? 1 : 0;
}

uint64_t lenv_result_size(const lenv_result* result) {
    return result && result->envelope ? lenv::envelope_size(*result->envelope) : 0;
}

lenv_status lenv_result_doc(const lenv_result* result, int include_stats, char** json_out) {
    if (!result || !json_out) return invalid("null argument");
    return guarded([&] {
        std::string doc;
        if (result->from_merge) {
            lenv::MergeOutcome outcome;
            outcome.counters = result->counters;
            if (result->envelope) outcome.envelope = *result->envelope;
            doc = lenv::merge_doc_json(outcome, include_stats != 0);
        } else {
            doc = lenv::envelope_doc_json(
                *result->envelope,
                include_stats && result->have_counters ? &result->counters : nullptr,
                include_stats && result->have_report ? &result->report : nullptr);
        }
        *json_out = dup_string(doc);
        return LENV_OK;
    });
}

lenv_status lenv_result_svg(const lenv_result* result, const lenv_segments* input,
                            char** svg_out) {
    if (!result || !svg_out) return invalid("null argument");
    if (!result->envelope) return invalid("aborted result has no envelope to render");
    return guarded([&] {
        *svg_out = dup_string(lenv::render_svg(*result->envelope, input ? &input->set : nullptr));
        return LENV_OK;
    });
}

lenv_status lenv_verify(const lenv_segments* set, uint64_t samples, int* agree,
                        char** report_out) {
    if (!set || !agree) return invalid("null argument");
    return guarded([&] {
        lenv::VerifyResult res = lenv::verify_instance(set->set, samples);
        *agree = res.agree ? 1 : 0;
        if (report_out) *report_out = dup_string(res.report);
        return LENV_OK;
    });
}

lenv_status lenv_bench(const char* sizes_csv, const char* kinds_csv, uint64_t seed,
                       int include_timings, char** csv_out) {
    if (!sizes_csv || !kinds_csv || !csv_out) return invalid("null argument");
    return guarded([&] {
        std::vector<std::uint64_t> sizes;
        std::vector<lenv::GenKind> kinds;
        std::string tok;
        std::istringstream sin(sizes_csv);
        while (std::getline(sin, tok, ',')) {
            if (tok.empty()) continue;
            char* end = nullptr;
            unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
            if (!end || *end || v == 0)
                throw std::invalid_argument("bad size '" + tok + "' in sizes list");
            sizes.push_back(v);
        }
        std::istringstream kin(kinds_csv);
        while (std::getline(kin, tok, ',')) {
            if (tok.empty()) continue;
            auto k = lenv::kind_from_name(tok);
            if (!k) throw std::invalid_argument("unknown generator kind '" + tok + "'");
            kinds.push_back(*k);
        }
        if (sizes.empty() || kinds.empty())
            throw std::invalid_argument("bench needs at least one size and one kind");
        auto rows = lenv::scaling_report(sizes, kinds, seed);
        *csv_out = dup_string(lenv::bench_csv(rows, include_timings != 0));
        return LENV_OK;
    });
}

void lenv_string_free(char* s) { std::free(s); }

}  // extern "C"
