#pragma once

#include "ripsbox/scalar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace ripsbox {

using EdgeId = int;
using BandId = int;
using CellId = int;

struct Edge {
    EdgeId id{-1};
    Scalar len;
};

/// A point of the real graph.
struct Pt {
    EdgeId edge{-1};
    Scalar off;

    bool operator==(const Pt& o) const { return edge == o.edge && off == o.off; }
    bool operator<(const Pt& o) const {
        if (edge != o.edge) return edge < o.edge;
        return off < o.off;
    }
    std::string key() const { return std::to_string(edge) + "@" + off.key(); }
};

/// Oriented subarc of one edge. Parameter t in [0,len] maps to
/// start + t when fwd, start + len - t otherwise.
struct Segment {
    EdgeId edge{-1};
    Scalar start;
    Scalar len;
    bool fwd{true};

    Scalar end() const { return start + len; }
    Pt at(const Scalar& t) const {
        return Pt{edge, fwd ? start + t : start + len - t};
    }
    /// Parameter of a point known to lie on this segment.
    Scalar param_of(const Pt& p) const {
        return fwd ? p.off - start : start + len - p.off;
    }
    bool contains(const Pt& p) const {
        return p.edge == edge && p.off >= start && p.off <= end();
    }
    bool contains_interior(const Pt& p) const {
        return p.edge == edge && p.off > start && p.off < end();
    }
    bool contains_seg(const Segment& s) const {
        return s.edge == edge && s.start >= start && s.end() <= end();
    }
    Segment reversed() const { return Segment{edge, start, len, !fwd}; }
    /// Subsegment by parameter range [t0,t1], inheriting orientation.
    Segment sub(const Scalar& t0, const Scalar& t1) const {
        if (fwd) return Segment{edge, start + t0, t1 - t0, true};
        return Segment{edge, start + len - t1, t1 - t0, false};
    }
    bool is_degenerate() const { return len.sign() == 0; }

    bool operator==(const Segment& o) const {
        return edge == o.edge && start == o.start && len == o.len && fwd == o.fwd;
    }
    bool same_arc(const Segment& o) const {
        return edge == o.edge && start == o.start && len == o.len;
    }
};

/// Overlap of two segments on the same edge as a plain interval, if nonempty.
inline std::optional<std::pair<Scalar, Scalar>> arc_overlap(const Segment& a, const Segment& b) {
    if (a.edge != b.edge) return std::nullopt;
    Scalar lo = max(a.start, b.start);
    Scalar hi = min(a.end(), b.end());
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

/// Piecewise isometry from intervals of old edges to intervals of new edges.
/// Every move records one; they compose, and they are total on the surviving
/// geometry plus collapsed regions (which relocate to their dual positions).
struct SegMap {
    EdgeId src{-1};
    Scalar s0, s1;   // closed interval on src
    EdgeId dst{-1};
    Scalar d0;       // image of s0 (of s1 when flipped)
    bool flip{false};

    bool covers(const Pt& p) const { return p.edge == src && p.off >= s0 && p.off <= s1; }
    Pt map(const Pt& p) const {
        return Pt{dst, flip ? d0 + (s1 - p.off) : d0 + (p.off - s0)};
    }
};

struct Relocation {
    std::vector<SegMap> maps;

    bool identity() const { return maps.empty(); }

    std::optional<Pt> apply(const Pt& p) const {
        for (const auto& m : maps)
            if (m.covers(p)) return m.map(p);
        return std::nullopt;
    }
    /// Relocate a whole arc; requires the arc to fit inside one map.
    std::optional<Segment> apply(const Segment& s) const {
        Pt a{s.edge, s.start}, b{s.edge, s.end()};
        for (const auto& m : maps) {
            if (m.covers(a) && m.covers(b)) {
                Pt ia = m.map(a), ib = m.map(b);
                bool f = s.fwd != m.flip;
                Scalar lo = min(ia.off, ib.off);
                return Segment{m.dst, lo, s.len, f};
            }
        }
        return std::nullopt;
    }
};

/// Identity-on-everything-else relocation applied to points not covered by
/// any map: the caller decides whether untouched points survive unchanged.
inline Pt relocate_or_keep(const Relocation& r, const Pt& p) {
    auto q = r.apply(p);
    return q ? *q : p;
}

/// The real graph: an ordered list of disjoint edges, plus an endpoint gluing
/// table used only while a fold sequence holds the graph in a simplicial
/// forest state. Machine-ready states have an empty gluing table (A1).
class RealGraph {
public:
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(EdgeId e) const { return index_.count(e) > 0; }
    const Edge& edge(EdgeId e) const { return edges_[index_.at(e)]; }
    Scalar edge_len(EdgeId e) const { return edge(e).len; }

    EdgeId add_edge(Scalar len) {
        EdgeId id = next_edge_id_++;
        index_[id] = edges_.size();
        edges_.push_back(Edge{id, std::move(len)});
        return id;
    }
    /// Insert replacement edges at the position of `at`, preserving the
    /// global linear order used by the machine.
    std::vector<EdgeId> replace_edge(EdgeId at, const std::vector<Scalar>& lens) {
        size_t pos = index_.at(at);
        std::vector<Edge> out;
        std::vector<EdgeId> ids;
        out.reserve(edges_.size() + lens.size());
        for (size_t i = 0; i < edges_.size(); ++i) {
            if (i == pos) {
                for (const auto& l : lens) {
                    EdgeId id = next_edge_id_++;
                    ids.push_back(id);
                    out.push_back(Edge{id, l});
                }
            } else {
                out.push_back(edges_[i]);
            }
        }
        edges_ = std::move(out);
        reindex();
        return ids;
    }
    void remove_edge(EdgeId e) {
        edges_.erase(edges_.begin() + index_.at(e));
        reindex();
        drop_gluings_of(e);
    }
    void set_edge_len(EdgeId e, Scalar len) { edges_[index_.at(e)].len = std::move(len); }

    Scalar total_length() const {
        Scalar t;
        for (const auto& e : edges_) t = t + e.len;
        return t;
    }

    // -- endpoint gluing (simplicial-forest states) --
    struct End {
        EdgeId edge{-1};
        int side{0};  // 0 = offset 0, 1 = offset len
        bool operator==(const End& o) const = default;
        bool operator<(const End& o) const {
            return edge != o.edge ? edge < o.edge : side < o.side;
        }
    };
    const std::vector<std::vector<End>>& gluings() const { return glue_; }
    bool glued() const { return !glue_.empty(); }
    void glue(End a, End b) {
        int ia = class_of(a), ib = class_of(b);
        if (ia >= 0 && ib >= 0) {
            if (ia == ib) return;
            auto& dst = glue_[ia];
            dst.insert(dst.end(), glue_[ib].begin(), glue_[ib].end());
            glue_.erase(glue_.begin() + ib);
        } else if (ia >= 0) {
            glue_[ia].push_back(b);
        } else if (ib >= 0) {
            glue_[ib].push_back(a);
        } else {
            glue_.push_back({a, b});
        }
    }
    void clear_gluings() { glue_.clear(); }
    int class_of(const End& e) const {
        for (size_t i = 0; i < glue_.size(); ++i)
            for (const auto& m : glue_[i])
                if (m == e) return static_cast<int>(i);
        return -1;
    }
    /// Rewrite gluing entries when an edge is replaced by ordered pieces.
    void remap_gluings(EdgeId old, EdgeId first, EdgeId last) {
        for (auto& cls : glue_)
            for (auto& m : cls)
                if (m.edge == old) m.edge = (m.side == 0) ? first : last;
    }

    int next_edge_id() const { return next_edge_id_; }
    void set_next_edge_id(int v) { next_edge_id_ = v; }

private:
    void reindex() {
        index_.clear();
        for (size_t i = 0; i < edges_.size(); ++i) index_[edges_[i].id] = i;
    }
    void drop_gluings_of(EdgeId e) {
        for (auto& cls : glue_) {
            cls.erase(std::remove_if(cls.begin(), cls.end(),
                                     [&](const End& m) { return m.edge == e; }),
                      cls.end());
        }
        glue_.erase(std::remove_if(glue_.begin(), glue_.end(),
                                   [](const auto& c) { return c.size() < 2; }),
                    glue_.end());
    }

    std::vector<Edge> edges_;
    std::map<EdgeId, size_t> index_;
    std::vector<std::vector<End>> glue_;
    int next_edge_id_{0};
};

}  // namespace ripsbox
