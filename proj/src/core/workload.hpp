#pragma once

// Deterministic instance generators and the scaling-measurement harness.
// All generators are pure functions of their GenSpec: same spec, same bytes.
// The PRNG is SplitMix64, fixed as part of the external contract so any
// reimplementation produces identical instances.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/solver.hpp"

namespace lenv {

enum class GenKind { random, small_k, parabola, disjoint_spans };

const char* kind_name(GenKind k);
std::optional<GenKind> kind_from_name(const std::string& name);

struct BBox {
    Rational xmin, ymin, xmax, ymax;
};

BBox default_bbox();  // unit square

struct GenSpec {
    GenKind kind = GenKind::random;
    std::uint64_t n = 1;
    std::uint64_t seed = 1;
    BBox bbox = default_bbox();
};

// SplitMix64 step; the sole randomness source of the generators.
std::uint64_t splitmix64(std::uint64_t& state);

// n segments with endpoints on a 2^16 grid inside the bbox; vertical draws
// re-rolled.
SegmentSet gen_random(const GenSpec& spec);

// One long low segment spanning the bbox under n-1 segments kept strictly
// above it by construction; the true envelope is the base segment.
SegmentSet gen_small_k(const GenSpec& spec);

// Chords of a convex arc at equally spaced abscissae: every segment carries
// a piece of the envelope, so k >= n. Stored in a seed-shuffled order so the
// contiguous-id partitions of the doubling loop overlap in x.
SegmentSet gen_parabola(const GenSpec& spec);

// n segments over pairwise-disjoint x-spans with uncovered space between:
// exercises gap handling; the envelope keeps all segments and n-1 gaps.
SegmentSet gen_disjoint_spans(const GenSpec& spec);

SegmentSet generate(const GenSpec& spec);

struct BenchRow {
    GenKind kind = GenKind::random;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t iterations = 0;
    MergeCounters totals;
    double wall_seconds = 0;
};

// One output-sensitive run per (kind, n).
std::vector<BenchRow> scaling_report(const std::vector<std::uint64_t>& sizes,
                                     const std::vector<GenKind>& kinds, std::uint64_t seed);

}  // namespace lenv
