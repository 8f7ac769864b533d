#include "core/envelope.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace lenv {

Envelope::Envelope(std::vector<Point> vertices, std::vector<EnvelopeEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (vertices_.empty() ? !edges_.empty() : edges_.size() + 1 != vertices_.size())
        throw std::invalid_argument("envelope edge/vertex count mismatch");
}

Envelope Envelope::from_segment(const Segment& s) {
    std::optional<std::int64_t> src;
    if (s.id >= 0) src = s.id;
    return Envelope({s.a, s.b}, {EnvelopeEdge{EdgeKind::solid, src}});
}

std::optional<Rational> Envelope::value_at(const Rational& x) const {
    std::optional<Rational> best;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].kind != EdgeKind::solid) continue;
        const Point& u = vertices_[e];
        const Point& w = vertices_[e + 1];
        if (x < u.x || x > w.x) continue;
        Rational y = u.x == w.x ? (u.y < w.y ? u.y : w.y) : eval_at(Segment(u, w), x);
        if (!best || y < *best) best = y;
    }
    return best;
}

Envelope Envelope::translated(const Rational& dx, const Rational& dy) const {
    std::vector<Point> vs;
    vs.reserve(vertices_.size());
    for (const Point& p : vertices_) vs.push_back(Point{p.x + dx, p.y + dy});
    return Envelope(std::move(vs), edges_);
}

std::vector<ChainDiagnostic> validate_chain(const Envelope& candidate) {
    std::vector<ChainDiagnostic> out;
    const auto& vs = candidate.vertices();
    const auto& es = candidate.edges();

    if (vs.size() < 2) {
        out.push_back({0, "chain needs at least two vertices (a lone point has no edge)"});
        return out;
    }

    for (std::size_t j = 0; j + 1 < vs.size(); ++j) {
        if (vs[j + 1].x < vs[j].x)
            out.push_back({j, "x-monotonicity violated"});
        if (vs[j] == vs[j + 1])
            out.push_back({j, "zero-length edge"});
    }
    for (std::size_t e = 0; e < es.size(); ++e) {
        if (es[e].kind == EdgeKind::gap) {
            if (!(vs[e].x < vs[e + 1].x))
                out.push_back({e, "gap edge must strictly increase in x"});
            if (es[e].source)
                out.push_back({e, "gap edge carries a source id"});
            if (e + 1 < es.size() && es[e + 1].kind == EdgeKind::gap)
                out.push_back({e, "consecutive gap edges"});
        }
    }
    if (!es.empty()) {
        if (es.front().kind != EdgeKind::solid) out.push_back({0, "first edge must be solid"});
        if (es.back().kind != EdgeKind::solid)
            out.push_back({es.size() - 1, "last edge must be solid"});
    }
    // Canonical form: no mergeable consecutive solid edges.
    for (std::size_t e = 0; e + 1 < es.size(); ++e) {
        if (es[e].kind != EdgeKind::solid || es[e + 1].kind != EdgeKind::solid) continue;
        if (es[e].source != es[e + 1].source) continue;
        if (orientation(vs[e], vs[e + 1], vs[e + 2]) != 0) continue;
        if (vs[e].x == vs[e + 1].x && vs[e + 1].x == vs[e + 2].x) {
            bool up1 = vs[e].y < vs[e + 1].y, up2 = vs[e + 1].y < vs[e + 2].y;
            if (up1 != up2) continue;  // direction reversal: a genuine turn
        }
        out.push_back({e, "collinear same-source solid edges not merged"});
    }
    return out;
}

void EnvelopeBuilder::start(Point first) {
    assert(vertices_.empty());
    vertices_.push_back(std::move(first));
}

void EnvelopeBuilder::extend(const Point& to, EdgeKind kind, std::optional<std::int64_t> source) {
    assert(!vertices_.empty());
    const Point& last = vertices_.back();
    if (to == last) return;  // zero-length: nothing to add

    if (kind == EdgeKind::solid && !edges_.empty() && edges_.back().kind == EdgeKind::solid &&
        edges_.back().source == source && vertices_.size() >= 2) {
        const Point& a = vertices_[vertices_.size() - 2];
        if (orientation(a, last, to) == 0) {
            bool mergeable = true;
            if (a.x == last.x && last.x == to.x)
                mergeable = (a.y < last.y) == (last.y < to.y);
            if (mergeable) {
                vertices_.back() = to;
                return;
            }
        }
    }
    vertices_.push_back(to);
    edges_.push_back(EnvelopeEdge{kind, kind == EdgeKind::gap ? std::nullopt : std::move(source)});
}

Envelope EnvelopeBuilder::finish() {
    Envelope result(std::move(vertices_), std::move(edges_));
    assert(validate_chain(result).empty());
    vertices_.clear();
    edges_.clear();
    return result;
}

}  // namespace lenv
