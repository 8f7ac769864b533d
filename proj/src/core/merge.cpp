#include "core/merge.hpp"

#include <cassert>
#include <stdexcept>

namespace lenv {

MergeCounters& MergeCounters::operator+=(const MergeCounters& o) {
    cursor_increments += o.cursor_increments;
    intersection_tests += o.intersection_tests;
    vertices_emitted += o.vertices_emitted;
    restarts += o.restarts;
    chains += o.chains;
    total_input_vertices += o.total_input_vertices;
    return *this;
}

namespace {

// Direction of a traversed edge, dx >= 0 on x-monotone chains. Vertical
// edges order as -infinity (down) or +infinity (up).
struct TravDir {
    Rational dx, dy;
};

TravDir edge_dir(const Point& u, const Point& w) { return {w.x - u.x, w.y - u.y}; }

int cmp_dir(const TravDir& a, const TravDir& b) {
    bool av = a.dx.is_zero(), bv = b.dx.is_zero();
    if (av || bv) {
        int ar = av ? (a.dy.sign() > 0 ? 1 : -1) : 0;
        int br = bv ? (b.dy.sign() > 0 ? 1 : -1) : 0;
        return ar < br ? -1 : (ar > br ? 1 : 0);
    }
    Rational lhs = a.dy * b.dx, rhs = b.dy * a.dx;
    if (lhs < rhs) return -1;
    if (rhs < lhs) return 1;
    return 0;
}

// nullopt sorts last: unlabeled edges lose label ties.
int cmp_src(const std::optional<std::int64_t>& a, const std::optional<std::int64_t>& b) {
    if (a == b) return 0;
    if (!a) return 1;
    if (!b) return -1;
    return *a < *b ? -1 : 1;
}

// Sweep order of event points on the active segment: smallest x first,
// smallest y breaking ties (the rule for a vertical active segment).
int cmp_sweep(const Point& p, const Point& q) {
    if (p.x < q.x) return -1;
    if (q.x < p.x) return 1;
    if (p.y < q.y) return -1;
    if (q.y < p.y) return 1;
    return 0;
}

struct Candidate {
    Point at;      // where the envelope leaves the active segment
    Point resume;  // where the winning chain continues (below at for drops)
    TravDir dir;   // direction of the continuing edge
    std::optional<std::int64_t> source;
    std::size_t chain = 0;
    std::size_t resume_cursor = 0;  // resume lies on edge (resume_cursor-1, resume_cursor)
};

bool candidate_less(const Candidate& a, const Candidate& b) {
    if (int c = cmp_sweep(a.at, b.at); c != 0) return c < 0;
    if (a.resume.y < b.resume.y) return true;
    if (b.resume.y < a.resume.y) return false;
    if (int c = cmp_dir(a.dir, b.dir); c != 0) return c < 0;
    if (int c = cmp_src(a.source, b.source); c != 0) return c < 0;
    return a.chain < b.chain;
}

struct Examined {
    std::optional<Candidate> candidate;  // accepted event on this edge, if any
    bool stop = false;                   // cursor must not advance past this edge
};

// Looks at chain i's current edge against the active segment. An event is
// accepted only if the winning chain is strictly lower immediately to the
// right of the event point than the active chain: lower resume point, then
// smaller slope, then smaller source id. Events exactly at the active
// segment's far endpoint are deferred; they re-surface against the next
// active segment once current has advanced there.
Examined examine_edge(const std::vector<Envelope>& chains, const MergeState& st, std::size_t i,
                      MergeCounters* counters) {
    const Envelope& chain = chains[i];
    const std::size_t p = st.cursors[i];
    const Point& u = chain.vertices()[p - 1];
    const Point& w = chain.vertices()[p];

    const Envelope& ac = chains[st.active];
    const std::size_t pa = st.cursors[st.active];
    const Point& far = ac.vertices()[pa];

    Examined out;

    if (chain.edges()[p - 1].kind == EdgeKind::gap) {
        out.stop = far.x < w.x;  // park on the gap, else skip past it for free
        return out;
    }

    const bool x_parked = far.x < w.x;

    const Segment sstar(st.current, far);
    const TravDir active_dir = edge_dir(st.current, far);
    const std::optional<std::int64_t>& active_src = ac.edges()[pa - 1].source;

    if (counters) counters->intersection_tests += 2;
    const IntersectionResult inter = segment_intersection(Segment(u, w), sstar);
    const IntersectionResult ray = ray_up_intersection(u, sstar);

    std::optional<Candidate> best;
    bool deferred = false;

    auto consider = [&](const Point& at, const Point& resume) {
        if (at == far) {
            deferred = true;
            return;
        }
        Candidate c;
        c.at = at;
        c.resume = resume;
        c.chain = i;
        if (resume == w) {
            // Continues on the next edge; a trailing touch is not an event.
            if (p + 1 >= chain.size() || chain.edges()[p].kind == EdgeKind::gap) return;
            c.dir = edge_dir(w, chain.vertices()[p + 1]);
            c.source = chain.edges()[p].source;
            c.resume_cursor = p + 1;
        } else {
            c.dir = edge_dir(u, w);
            c.source = chain.edges()[p - 1].source;
            c.resume_cursor = p;
        }
        bool accept;
        if (c.resume.y < at.y) {
            accept = true;
        } else if (at.y < c.resume.y) {
            accept = false;
        } else if (int dc = cmp_dir(c.dir, active_dir); dc != 0) {
            accept = dc < 0;
        } else {
            accept = cmp_src(c.source, active_src) < 0;
        }
        if (!accept) return;
        if (!best || candidate_less(c, *best)) best = c;
    };

    if (inter.is_point()) {
        consider(inter.point, inter.point);
    } else if (inter.is_overlap()) {
        // Collinear overlap: pure label tie. Take the overlap end nearest
        // current along the active segment's traversal.
        bool from_low = !sstar.vertical() || st.current.y < far.y;
        const Point& start = from_low ? inter.point : inter.overlap_end;
        consider(start, start);
    }

    // Emergence below: the edge's left vertex sits strictly under the active
    // segment (chain start or just past a gap), so the envelope drops to it.
    // At the current x only a drop below everything already visited counts,
    // which keeps drop/climb alternations at one x from cycling.
    const Point* hit = nullptr;
    if (ray.is_point()) hit = &ray.point;
    else if (ray.is_overlap()) hit = &ray.point;  // lowest point of the overlap
    if (hit && !(*hit == u)) {
        const Rational& floor_y = st.dip_floor ? *st.dip_floor : st.current.y;
        if (st.current.x < hit->x || u.y < floor_y) consider(*hit, u);
    }

    out.candidate = best;
    out.stop = x_parked || deferred || best.has_value();
    return out;
}

// Advances chain i's cursor past occluded edges and returns the event on the
// edge it parks at, if any.
std::optional<Candidate> sweep_chain(MergeState& st, const std::vector<Envelope>& chains,
                                     std::size_t i, MergeCounters& counters) {
    const Envelope& chain = chains[i];
    while (st.cursors[i] < chain.size()) {
        Examined ex = examine_edge(chains, st, i, &counters);
        if (ex.stop) return ex.candidate;
        ++st.cursors[i];
        ++counters.cursor_increments;
    }
    return std::nullopt;
}

struct RestartTarget {
    Point start;
    TravDir dir;
    std::optional<std::int64_t> source;
    std::size_t chain = 0;
    std::size_t cursor_after = 0;
};

bool restart_less(const RestartTarget& a, const RestartTarget& b) {
    if (int c = cmp_sweep(a.start, b.start); c != 0) return c < 0;
    if (int c = cmp_dir(a.dir, b.dir); c != 0) return c < 0;
    if (int c = cmp_src(a.source, b.source); c != 0) return c < 0;
    return a.chain < b.chain;
}

// The covered region ended at current: find the lowest continuation at or to
// the right of it. Cursors are pushed past fully consumed edges, which keeps
// the scan O(m) amortized.
std::optional<RestartTarget> scan_restart(MergeState& st, const std::vector<Envelope>& chains,
                                          MergeCounters& counters) {
    std::optional<RestartTarget> best;
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const Envelope& c = chains[i];
        std::size_t& p = st.cursors[i];
        while (p < c.size() && !(st.current.x < c.vertices()[p].x)) {
            ++p;
            ++counters.cursor_increments;
        }
        if (p >= c.size()) continue;
        const Point& u = c.vertices()[p - 1];
        const Point& w = c.vertices()[p];
        RestartTarget t;
        t.chain = i;
        if (c.edges()[p - 1].kind == EdgeKind::gap) {
            t.start = w;  // first vertex after the gap
            t.dir = edge_dir(w, c.vertices()[p + 1]);
            t.source = c.edges()[p].source;
            t.cursor_after = p + 1;
        } else if (st.current.x < u.x) {
            t.start = u;  // chain not yet entered
            t.dir = edge_dir(u, w);
            t.source = c.edges()[p - 1].source;
            t.cursor_after = p;
        } else {
            // Straddling edge: cut it at the current x.
            t.start = Point{st.current.x, eval_at(Segment(u, w), st.current.x)};
            t.dir = edge_dir(u, w);
            t.source = c.edges()[p - 1].source;
            t.cursor_after = p;
        }
        if (!best || restart_less(t, *best)) best = t;
    }
    return best;
}

}  // namespace

AdvanceDecision advance_condition(const MergeState& state, std::size_t i,
                                  MergeCounters* counters) {
    if (!state.chains) throw std::invalid_argument("advance_condition: no chains bound");
    const auto& chains = *state.chains;
    if (i == state.active) throw std::invalid_argument("advance_condition: i is the active chain");
    if (state.cursors[i] >= chains[i].size())
        throw std::invalid_argument("advance_condition: chain exhausted");
    return examine_edge(chains, state, i, counters).stop ? AdvanceDecision::stop
                                                         : AdvanceDecision::advance;
}

std::size_t select_initial_active(const std::vector<Envelope>& chains) {
    if (chains.empty()) throw std::invalid_argument("select_initial_active: empty chain list");
    std::size_t best = 0;
    for (std::size_t i = 0; i < chains.size(); ++i) {
        if (chains[i].size() < 2)
            throw std::invalid_argument("select_initial_active: degenerate chain");
        if (i == 0) continue;
        const Envelope& a = chains[i];
        const Envelope& b = chains[best];
        RestartTarget ta{a.front(), edge_dir(a.vertices()[0], a.vertices()[1]),
                         a.edges()[0].source, i, 1};
        RestartTarget tb{b.front(), edge_dir(b.vertices()[0], b.vertices()[1]),
                         b.edges()[0].source, best, 1};
        if (restart_less(ta, tb)) best = i;
    }
    return best;
}

MergeOutcome merge_envelopes(const std::vector<Envelope>& chains,
                             std::optional<std::uint64_t> abort_threshold) {
    if (chains.empty()) throw std::invalid_argument("merge_envelopes: empty chain list");

    MergeCounters counters;
    counters.chains = chains.size();
    for (const Envelope& c : chains) {
        auto diags = validate_chain(c);
        if (!diags.empty())
            throw std::invalid_argument("merge_envelopes: invalid chain: " + diags.front().rule +
                                        " at index " + std::to_string(diags.front().index));
        counters.total_input_vertices += c.size();
    }

    MergeState st;
    st.chains = &chains;
    st.cursors.assign(chains.size(), 1);
    st.active = select_initial_active(chains);
    st.current = chains[st.active].front();

    EnvelopeBuilder out;
    out.start(st.current);
    counters.vertices_emitted = out.vertex_count();
    auto over_limit = [&] {
        counters.vertices_emitted = out.vertex_count();
        return abort_threshold && counters.vertices_emitted > *abort_threshold;
    };
    if (over_limit()) return {std::nullopt, counters};

    auto bump_cursor = [&](std::size_t chain, std::size_t to) {
        if (st.cursors[chain] < to) {
            counters.cursor_increments += to - st.cursors[chain];
            st.cursors[chain] = to;
        }
    };
    st.dip_floor = st.current.y;
    auto advance_current = [&](const Point& p) {
        if (p.x == st.current.x) {
            if (p.y < *st.dip_floor) st.dip_floor = p.y;
        } else {
            st.dip_floor = p.y;
        }
        st.current = p;
    };

    for (;;) {
        const Envelope& ac = chains[st.active];
        const std::size_t pa = st.cursors[st.active];

        if (pa >= ac.size() || ac.edges()[pa - 1].kind == EdgeKind::gap) {
            auto target = scan_restart(st, chains, counters);
            if (!target) break;  // no coverage remains anywhere
            ++counters.restarts;
            if (!(target->start == st.current)) {
                EdgeKind kind =
                    target->start.x == st.current.x ? EdgeKind::solid : EdgeKind::gap;
                out.extend(target->start, kind, std::nullopt);
                if (over_limit()) return {std::nullopt, counters};
            }
            bump_cursor(target->chain, target->cursor_after);
            st.active = target->chain;
            advance_current(target->start);
            continue;
        }

        st.best.reset();
        st.next.reset();
        std::optional<Candidate> best;
        for (std::size_t i = 0; i < chains.size(); ++i) {
            if (i == st.active) continue;
            auto cand = sweep_chain(st, chains, i, counters);
            if (cand && (!best || candidate_less(*cand, *best))) best = *cand;
        }

        if (!best) {
            const Point& far = ac.vertices()[pa];
            out.extend(far, EdgeKind::solid, ac.edges()[pa - 1].source);
            advance_current(far);
            ++st.cursors[st.active];
            ++counters.cursor_increments;
            if (over_limit()) return {std::nullopt, counters};
        } else {
            st.best = best->at;
            st.next = best->chain;
            out.extend(best->at, EdgeKind::solid, ac.edges()[pa - 1].source);
            if (over_limit()) return {std::nullopt, counters};
            if (!(best->resume == best->at)) {
                // Jump discontinuity: vertical connector down to the winner.
                out.extend(best->resume, EdgeKind::solid, std::nullopt);
                if (over_limit()) return {std::nullopt, counters};
            }
            bump_cursor(best->chain, best->resume_cursor);
            st.active = best->chain;
            advance_current(best->at);
            advance_current(best->resume);
        }
    }

    counters.vertices_emitted = out.vertex_count();
    return {out.finish(), counters};
}

}  // namespace lenv
