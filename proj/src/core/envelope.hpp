#pragma once

// The x-monotone chain type shared by every algorithm in the library: both
// the inputs and the output of the chain merge are Envelopes.
//
// An Envelope is a vertex sequence with one labeled edge between consecutive
// vertices. Solid edges are geometry (optionally tagged with the id of the
// source segment they lie on); gap edges mark maximal x-intervals where the
// underlying partial function is undefined. Jump discontinuities are
// represented by vertical solid edges with no source id.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace lenv {

enum class EdgeKind { solid, gap };

struct EnvelopeEdge {
    EdgeKind kind = EdgeKind::solid;
    std::optional<std::int64_t> source;

    bool operator==(const EnvelopeEdge&) const = default;
};

struct ChainDiagnostic {
    std::size_t index;  // offending vertex or edge index
    std::string rule;
};

class Envelope {
public:
    Envelope() = default;
    Envelope(std::vector<Point> vertices, std::vector<EnvelopeEdge> edges);

    static Envelope from_segment(const Segment& s);

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<EnvelopeEdge>& edges() const { return edges_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    const Point& front() const { return vertices_.front(); }
    const Point& back() const { return vertices_.back(); }

    // Value of the represented partial function at x: the minimum y over all
    // solid edges covering x (vertical pieces contribute their lower end).
    std::optional<Rational> value_at(const Rational& x) const;

    Envelope translated(const Rational& dx, const Rational& dy) const;

    bool operator==(const Envelope& o) const {
        return vertices_ == o.vertices_ && edges_ == o.edges_;
    }

private:
    std::vector<Point> vertices_;
    std::vector<EnvelopeEdge> edges_;
};

// Empty result iff all Envelope invariants hold (x-monotonicity, no
// zero-length edges, gap placement rules, canonical form).
std::vector<ChainDiagnostic> validate_chain(const Envelope& candidate);

// Incremental construction with canonicalization: consecutive duplicate
// vertices are dropped and collinear solid edges with the same source are
// merged. finish() asserts the invariants in debug builds.
class EnvelopeBuilder {
public:
    void start(Point first);
    void extend(const Point& to, EdgeKind kind, std::optional<std::int64_t> source);
    bool started() const { return !vertices_.empty(); }
    const Point& last() const { return vertices_.back(); }
    std::size_t vertex_count() const { return vertices_.size(); }
    Envelope finish();

private:
    std::vector<Point> vertices_;
    std::vector<EnvelopeEdge> edges_;
};

}  // namespace lenv
