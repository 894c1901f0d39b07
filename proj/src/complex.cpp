#include "ripsbox/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace ripsbox {

std::string cell_kind_name(CellKind k) {
    switch (k) {
        case CellKind::Vertex: return "vertex";
        case CellKind::Arc: return "arc";
        case CellKind::Disk: return "disk";
        case CellKind::SubdivisionCell: return "subdivision-cell";
        case CellKind::SubdivisionAnnulus: return "subdivision-annulus";
        case CellKind::Cone: return "cone";
    }
    return "vertex";
}

std::optional<CellKind> cell_kind_from(const std::string& s) {
    if (s == "vertex") return CellKind::Vertex;
    if (s == "arc") return CellKind::Arc;
    if (s == "disk") return CellKind::Disk;
    if (s == "subdivision-cell") return CellKind::SubdivisionCell;
    if (s == "subdivision-annulus") return CellKind::SubdivisionAnnulus;
    if (s == "cone") return CellKind::Cone;
    return std::nullopt;
}

std::vector<BaseRef> BandComplex::base_refs(bool positive_only) const {
    std::vector<BaseRef> out;
    for (const auto& [id, b] : bands) {
        if (positive_only && band_weight(b) == Weight::Zero) continue;
        out.push_back({id, Side::Bottom});
        out.push_back({id, Side::Top});
    }
    return out;
}

// ---------------------------------------------------------------------------
// blocks and complexity

std::vector<Block> compute_blocks(const BandComplex& Y) {
    struct Iv {
        Scalar lo, hi;
        BaseRef ref;
    };
    std::map<EdgeId, std::vector<Iv>> per_edge;
    for (const auto& [id, b] : Y.bands) {
        for (Side s : {Side::Bottom, Side::Top}) {
            const Segment& seg = b.raw(s);
            if (seg.is_degenerate()) continue;
            per_edge[seg.edge].push_back({seg.start, seg.end(), {id, s}});
        }
    }
    std::vector<Block> blocks;
    for (auto& [edge, ivs] : per_edge) {
        std::sort(ivs.begin(), ivs.end(), [](const Iv& a, const Iv& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            if (a.hi != b.hi) return a.hi < b.hi;
            return a.ref < b.ref;
        });
        size_t i = 0;
        while (i < ivs.size()) {
            Block blk;
            blk.edge = edge;
            blk.start = ivs[i].lo;
            blk.end = ivs[i].hi;
            blk.bases.push_back(ivs[i].ref);
            size_t j = i + 1;
            // interiors connect only on strict overlap; touching endpoints
            // leave the union of interiors disconnected
            while (j < ivs.size() && ivs[j].lo < blk.end) {
                blk.end = max(blk.end, ivs[j].hi);
                blk.bases.push_back(ivs[j].ref);
                ++j;
            }
            blocks.push_back(std::move(blk));
            i = j;
        }
    }
    return blocks;
}

Rat block_complexity(const Block& blk, const BandComplex& Y) {
    Rat sum(0);
    for (const auto& ref : blk.bases) sum = sum + weight_value(Y.weight_of(ref.band));
    Rat c = sum - Rat(2);
    return c.sign() > 0 ? c : Rat(0);
}

Rat complexity(const BandComplex& Y) {
    Rat total(0);
    for (const auto& blk : compute_blocks(Y)) total = total + block_complexity(blk, Y);
    return total;
}

// ---------------------------------------------------------------------------
// components

namespace {
struct UnionFind {
    std::map<EdgeId, EdgeId> parent;
    EdgeId find(EdgeId x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        EdgeId r = find(it->second);
        parent[x] = r;
        return r;
    }
    void unite(EdgeId a, EdgeId b) { parent[find(a)] = find(b); }
};
}  // namespace

std::vector<std::vector<EdgeId>> components(const BandComplex& Y) {
    UnionFind uf;
    for (const auto& e : Y.graph.edges()) uf.find(e.id);
    for (const auto& [id, b] : Y.bands) uf.unite(b.bottom.edge, b.top.edge);
    for (const auto& cls : Y.graph.gluings())
        for (size_t i = 1; i < cls.size(); ++i) uf.unite(cls[0].edge, cls[i].edge);

    std::map<EdgeId, std::vector<EdgeId>> groups;
    for (const auto& e : Y.graph.edges()) groups[uf.find(e.id)].push_back(e.id);

    // order components by the graph position of their first edge
    std::vector<std::vector<EdgeId>> out;
    std::set<EdgeId> seen;
    for (const auto& e : Y.graph.edges()) {
        EdgeId root = uf.find(e.id);
        if (seen.count(root)) continue;
        seen.insert(root);
        out.push_back(groups[root]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// free subarcs

namespace {

Scalar base_midpoint_off(const Segment& s) { return s.start + s.len / Scalar(2); }

}  // namespace

std::vector<FreeSubarc> find_free_subarcs(const BandComplex& Y,
                                          const std::set<EdgeId>& restrict_edges) {
    std::vector<FreeSubarc> out;
    // closed obstruction intervals per edge, per positive base occurrence
    struct Obs {
        Scalar lo, hi;
        BaseRef ref;
    };
    std::map<EdgeId, std::vector<Obs>> obs;
    for (const auto& [id, b] : Y.bands) {
        if (band_weight(b) == Weight::Zero) continue;
        for (Side s : {Side::Bottom, Side::Top}) {
            const Segment& seg = b.raw(s);
            obs[seg.edge].push_back({seg.start, seg.end(), {id, s}});
        }
    }

    for (const auto& [id, b] : Y.bands) {
        Weight w = band_weight(b);
        if (w == Weight::Zero) continue;
        if (!restrict_edges.empty() && !restrict_edges.count(b.bottom.edge)) continue;

        auto emit_for_base = [&](Side side) {
            const Segment& base = b.raw(side);
            // collect forbidden closed intervals within the open base interior
            std::vector<std::pair<Scalar, Scalar>> forb;
            for (const auto& o : obs[base.edge]) {
                if (o.ref.band == id) {
                    if (w == Weight::Half) continue;          // own coinciding bases
                    if (o.ref.side == side) continue;          // the base itself
                }
                Scalar lo = max(o.lo, base.start);
                Scalar hi = min(o.hi, base.end());
                if (lo > hi) continue;
                forb.push_back({lo, hi});
            }
            if (w == Weight::Half) {
                Scalar m = base_midpoint_off(base);
                forb.push_back({m, m});  // interior of J may not contain the midpoint
            }
            std::sort(forb.begin(), forb.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first < b.first : a.second < b.second;
            });
            // sweep the closed base, removing forbidden material from its interior
            Scalar cur = base.start;
            auto emit = [&](const Scalar& lo, const Scalar& hi) {
                if (lo >= hi) return;
                FreeSubarc fs;
                fs.base = {id, side};
                fs.arc = Segment{base.edge, lo, hi - lo, true};
                Segment effb = b.eff(side);
                Scalar ta = effb.param_of(Pt{base.edge, lo});
                Scalar tb = effb.param_of(Pt{base.edge, hi});
                fs.t0 = min(ta, tb);
                fs.t1 = max(ta, tb);
                bool whole = (lo == base.start && hi == base.end());
                bool half = false;
                if (w == Weight::Half) {
                    Scalar m = base_midpoint_off(base);
                    half = (lo == base.start && hi == m) || (lo == m && hi == base.end());
                }
                bool touches_end = (lo == base.start || hi == base.end());
                if (w == Weight::Half) touches_end = touches_end || lo == base_midpoint_off(base) ||
                                                     hi == base_midpoint_off(base);
                if (whole || half)
                    fs.kind = FreeSubarc::Kind::Isolated;
                else if (touches_end)
                    fs.kind = FreeSubarc::Kind::SemiIsolated;
                else
                    fs.kind = FreeSubarc::Kind::Other;
                out.push_back(std::move(fs));
            };
            for (const auto& [lo, hi] : forb) {
                if (lo > cur) emit(cur, lo);
                cur = max(cur, hi);
                if (cur >= base.end()) break;
            }
            if (cur < base.end()) emit(cur, base.end());
        };

        emit_for_base(Side::Bottom);
        // a weight-1/2 band has coinciding bases; report them once
        if (w != Weight::Half) emit_for_base(Side::Top);
    }
    std::sort(out.begin(), out.end(), [](const FreeSubarc& a, const FreeSubarc& b) {
        if (!(a.base == b.base)) return a.base < b.base;
        return a.arc.start < b.arc.start;
    });
    return out;
}

std::vector<FreeSubarc> find_free_subarcs(const BandComplex& Y) {
    return find_free_subarcs(Y, {});
}

// ---------------------------------------------------------------------------
// generalized bands

namespace {

/// True when a cell attaching region meets the closed arc; such arcs cannot
/// serve as generalized-band junctions.
bool cell_touches_arc(const BandComplex& Y, const Segment& arc) {
    auto on_arc = [&](const Pt& p) {
        return p.edge == arc.edge && p.off >= arc.start && p.off <= arc.end();
    };
    for (const auto& [cid, cell] : Y.cells) {
        for (const auto& r : cell.regions) {
            if (r.pt && on_arc(*r.pt)) return true;
            if (r.path) {
                Pt cur = r.path->start;
                if (on_arc(cur)) return true;
                for (const auto& st : r.path->steps) {
                    auto it = Y.bands.find(st.band);
                    if (it == Y.bands.end()) continue;
                    cur = it->second.at(st.up ? Side::Top : Side::Bottom, st.enter);
                    if (on_arc(cur)) return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

std::vector<GeneralizedBand> compute_generalized_bands(const BandComplex& Y) {
    std::vector<BandId> ones;
    for (const auto& [id, b] : Y.bands)
        if (band_weight(b) == Weight::One) ones.push_back(id);

    // successor of B: unique weight-1 band B' != B whose bottom occupies the
    // same arc as top(B), with the junction interior clean
    auto junction_ok = [&](const Segment& arc, BandId a, BandId c) {
        for (const auto& [id, b] : Y.bands) {
            if (id == a || id == c) continue;
            if (band_weight(b) == Weight::Zero) continue;
            for (Side s : {Side::Bottom, Side::Top}) {
                const Segment& seg = b.raw(s);
                if (seg.edge != arc.edge) continue;
                if (max(seg.start, arc.start) < min(seg.end(), arc.end())) return false;
            }
        }
        if (cell_touches_arc(Y, arc)) return false;
        return true;
    };

    std::map<BandId, std::pair<BandId, bool>> succ;  // band -> (next, flip)
    std::map<BandId, BandId> pred;
    for (BandId a : ones) {
        const Band& A = Y.bands.at(a);
        Segment topA = A.eff(Side::Top);
        for (BandId c : ones) {
            if (c == a) continue;
            const Band& C = Y.bands.at(c);
            if (!C.bottom.same_arc(topA)) continue;
            if (!junction_ok(topA, a, c)) continue;
            succ[a] = {c, C.bottom.fwd != topA.fwd};
            pred[c] = a;
            break;  // uniqueness is forced by the junction condition
        }
    }

    std::vector<GeneralizedBand> out;
    std::set<BandId> used;
    auto build_chain = [&](BandId start) {
        GeneralizedBand gb;
        BandId cur = start;
        bool acc_flip = false;
        gb.bands.push_back(cur);
        used.insert(cur);
        while (true) {
            auto it = succ.find(cur);
            if (it == succ.end()) break;
            BandId nxt = it->second.first;
            if (used.count(nxt)) break;  // guards a cycle tail
            gb.link_flip.push_back(it->second.second);
            acc_flip = acc_flip != it->second.second;
            gb.bands.push_back(nxt);
            used.insert(nxt);
            cur = nxt;
        }
        const Band& first = Y.bands.at(gb.bands.front());
        const Band& last = Y.bands.at(gb.bands.back());
        gb.bottom = first.bottom;
        Segment t = last.eff(Side::Top);
        gb.top = acc_flip ? t.reversed() : t;
        out.push_back(std::move(gb));
    };

    for (BandId a : ones)
        if (!pred.count(a) && !used.count(a)) build_chain(a);
    // leftover bands sit on cycles; each is reported as its own unit
    for (BandId a : ones) {
        if (used.count(a)) continue;
        GeneralizedBand gb;
        gb.bands = {a};
        gb.bottom = Y.bands.at(a).bottom;
        gb.top = Y.bands.at(a).eff(Side::Top);
        out.push_back(std::move(gb));
        used.insert(a);
    }
    std::sort(out.begin(), out.end(),
              [](const GeneralizedBand& a, const GeneralizedBand& b) { return a.key() < b.key(); });
    return out;
}

std::optional<GeneralizedBand> generalized_band_of(const BandComplex& Y, BandId b) {
    for (auto& gb : compute_generalized_bands(Y))
        for (BandId c : gb.bands)
            if (c == b) return gb;
    return std::nullopt;
}

Pt generalized_dual(const BandComplex& Y, const GeneralizedBand& gb, Side from, const Pt& p) {
    Pt cur = p;
    if (from == Side::Bottom) {
        for (BandId id : gb.bands) cur = Y.bands.at(id).dual(Side::Bottom, cur);
    } else {
        for (auto it = gb.bands.rbegin(); it != gb.bands.rend(); ++it)
            cur = Y.bands.at(*it).dual(Side::Top, cur);
    }
    return cur;
}

Segment generalized_dual_arc(const BandComplex& Y, const GeneralizedBand& gb, Side from,
                             const Segment& arc) {
    Pt a = generalized_dual(Y, gb, from, Pt{arc.edge, arc.start});
    Pt b = generalized_dual(Y, gb, from, Pt{arc.edge, arc.end()});
    Scalar lo = min(a.off, b.off);
    bool fwd = arc.fwd ? (a.off < b.off) : !(a.off < b.off);
    return Segment{a.edge, lo, arc.len, fwd};
}

// ---------------------------------------------------------------------------
// leaves

std::vector<Pt> pt_class(const BandComplex& Y, const Pt& p) {
    std::vector<Pt> out{p};
    if (!Y.graph.glued()) return out;
    for (const auto& cls : Y.graph.gluings()) {
        bool member = false;
        for (const auto& m : cls) {
            if (!Y.graph.has_edge(m.edge)) continue;
            Scalar off = m.side == 0 ? Scalar(0) : Y.graph.edge_len(m.edge);
            if (p.edge == m.edge && p.off == off) member = true;
        }
        if (!member) continue;
        for (const auto& m : cls) {
            if (!Y.graph.has_edge(m.edge)) continue;
            Scalar off = m.side == 0 ? Scalar(0) : Y.graph.edge_len(m.edge);
            Pt q{m.edge, off};
            if (!(q == p)) out.push_back(q);
        }
        break;
    }
    return out;
}

Pt canonical_pt(const BandComplex& Y, const Pt& p) {
    auto cls = pt_class(Y, p);
    Pt best = cls.front();
    for (const auto& q : cls)
        if (q < best) best = q;
    return best;
}

namespace {

/// Fiber neighbors of a graph point: the matching point of every base
/// occurrence containing it (any representation of a glued point).
void fiber_neighbors(const BandComplex& Y, const Pt& p, bool skip_weight0,
                     const std::function<void(const Pt&, BandId, Side)>& visit) {
    for (const Pt& rep : pt_class(Y, p)) {
        for (const auto& [id, b] : Y.bands) {
            if (skip_weight0 && band_weight(b) == Weight::Zero) continue;
            for (Side s : {Side::Bottom, Side::Top}) {
                if (b.raw(s).contains(rep)) visit(b.dual(s, rep), id, s);
            }
        }
    }
}

}  // namespace

LeafReport explore_leaf(const BandComplex& Y, const Pt& p, int budget, bool skip_weight0) {
    LeafReport rep;
    Pt start = canonical_pt(Y, p);
    std::map<std::string, Pt> visited;
    std::deque<Pt> queue;
    visited[start.key()] = start;
    queue.push_back(start);
    bool exhausted = false;
    while (!queue.empty()) {
        Pt cur = queue.front();
        queue.pop_front();
        fiber_neighbors(Y, cur, skip_weight0, [&](const Pt& q0, BandId, Side) {
            if (exhausted) return;
            if (rep.traversals >= budget) {
                exhausted = true;
                return;
            }
            ++rep.traversals;
            Pt q = canonical_pt(Y, q0);
            if (!visited.count(q.key())) {
                visited[q.key()] = q;
                queue.push_back(q);
            }
        });
        if (exhausted) break;
    }
    rep.closed = !exhausted;
    for (auto& [k, q] : visited) rep.visited.push_back(q);
    std::sort(rep.visited.begin(), rep.visited.end());
    fiber_neighbors(Y, start, skip_weight0,
                    [&](const Pt&, BandId, Side) { ++rep.direction_count; });
    return rep;
}

bool leafmates(const BandComplex& Y, const Pt& p, const Pt& q, int budget) {
    Pt cp = canonical_pt(Y, p), cq = canonical_pt(Y, q);
    if (cp == cq) return true;
    LeafReport rep = explore_leaf(Y, cp, budget);
    for (const auto& v : rep.visited)
        if (v == cq) return true;
    return false;
}

IndexReport index_at(const BandComplex& Y, const Pt& q, int budget) {
    IndexReport rep;
    struct Germ {
        BandId band;
        Side side;
        Pt far;
    };
    std::vector<Germ> germs;
    fiber_neighbors(Y, q, /*skip_weight0=*/true,
                    [&](const Pt& far, BandId b, Side s) { germs.push_back({b, s, far}); });
    rep.directions_total = static_cast<int>(germs.size());

    // union-find over germs; explorations that touch merge into one direction
    std::vector<int> parent(germs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    std::map<std::string, int> owner;  // visited point -> germ class
    std::vector<bool> exhausted(germs.size(), false);

    for (size_t g = 0; g < germs.size(); ++g) {
        const Pt& start = germs[g].far;
        if (start == q) continue;  // instant loop back; finite direction
        auto it = owner.find(start.key());
        if (it != owner.end()) {
            unite(static_cast<int>(g), it->second);
            continue;
        }
        owner[start.key()] = static_cast<int>(g);
        std::deque<Pt> queue{start};
        int steps = 0;
        while (!queue.empty()) {
            Pt cur = queue.front();
            queue.pop_front();
            bool over = false;
            fiber_neighbors(Y, cur, true, [&](const Pt& nxt, BandId, Side) {
                if (over) return;
                if (steps >= budget) {
                    over = true;
                    return;
                }
                ++steps;
                if (nxt == q) return;  // never traverse through q
                auto o = owner.find(nxt.key());
                if (o != owner.end()) {
                    if (find(o->second) != find(static_cast<int>(g)))
                        unite(static_cast<int>(g), o->second);
                    return;
                }
                owner[nxt.key()] = static_cast<int>(g);
                queue.push_back(nxt);
            });
            if (over) {
                exhausted[g] = true;
                break;
            }
        }
    }

    std::map<int, bool> cls_infinite;
    for (size_t g = 0; g < germs.size(); ++g) {
        int c = find(static_cast<int>(g));
        cls_infinite[c] = cls_infinite[c] || exhausted[g];
    }
    int inf = 0;
    for (auto& [c, e] : cls_infinite)
        if (e) ++inf;
    rep.directions_infinite = inf;
    rep.index = inf - 2;
    rep.certified = (inf == 0);
    return rep;
}

// ---------------------------------------------------------------------------
// validation

namespace {

/// Budgeted pushing-closure: traversal through a base is blocked at a strict
/// base endpoint lying in the interior of its edge (no two-sided room).
LeafReport pushing_closure(const BandComplex& Y, const Pt& p, int budget) {
    LeafReport rep;
    std::map<std::string, Pt> visited;
    std::deque<Pt> queue;
    visited[p.key()] = p;
    queue.push_back(p);
    bool exhausted = false;
    while (!queue.empty() && !exhausted) {
        Pt cur = queue.front();
        queue.pop_front();
        for (const auto& [id, b] : Y.bands) {
            for (Side s : {Side::Bottom, Side::Top}) {
                const Segment& seg = b.raw(s);
                if (!seg.contains(cur)) continue;
                bool at_base_end = (cur.off == seg.start || cur.off == seg.end());
                bool at_edge_end =
                    (cur.off.sign() == 0 || cur.off == Y.graph.edge_len(cur.edge));
                if (at_base_end && !at_edge_end) continue;
                if (rep.traversals >= budget) {
                    exhausted = true;
                    break;
                }
                ++rep.traversals;
                Pt q = b.dual(s, cur);
                if (!visited.count(q.key())) {
                    visited[q.key()] = q;
                    queue.push_back(q);
                }
            }
            if (exhausted) break;
        }
    }
    rep.closed = !exhausted;
    for (auto& [k, v] : visited) rep.visited.push_back(v);
    return rep;
}

}  // namespace

ValidationReport validate_complex(const BandComplex& Y, int leaf_budget) {
    ValidationReport rep;
    rep.a1_suspended = Y.a1_suspended;
    rep.structure_ok = true;
    rep.cells_ok = true;

    for (const auto& e : Y.graph.edges()) {
        if (e.len.sign() <= 0) {
            rep.structure_ok = false;
            rep.issues.push_back({"edge-length", "edge " + std::to_string(e.id)});
        }
    }
    for (const auto& [id, b] : Y.bands) {
        if (!(b.bottom.len == b.top.len)) {
            rep.structure_ok = false;
            rep.issues.push_back({"base-length", "band " + std::to_string(id)});
        }
        if (b.bottom.len.sign() <= 0) {
            rep.structure_ok = false;
            rep.issues.push_back({"degenerate-band", "band " + std::to_string(id)});
        }
        for (Side s : {Side::Bottom, Side::Top}) {
            const Segment& seg = b.raw(s);
            if (!Y.graph.has_edge(seg.edge) || seg.start.sign() < 0 ||
                seg.end() > Y.graph.edge_len(seg.edge)) {
                rep.structure_ok = false;
                rep.issues.push_back({"base-bounds", "band " + std::to_string(id)});
            }
        }
    }

    // cell attaching regions must resolve against current geometry
    for (const auto& [cid, cell] : Y.cells) {
        for (const auto& r : cell.regions) {
            if (r.pt) {
                if (!Y.graph.has_edge(r.pt->edge) || r.pt->off.sign() < 0 ||
                    r.pt->off > Y.graph.edge_len(r.pt->edge)) {
                    rep.cells_ok = false;
                    rep.issues.push_back({"cell-point", "cell " + std::to_string(cid)});
                }
            } else if (r.path) {
                Pt cur = r.path->start;
                if (!Y.graph.has_edge(cur.edge) || cur.off.sign() < 0 ||
                    cur.off > Y.graph.edge_len(cur.edge)) {
                    rep.cells_ok = false;
                    rep.issues.push_back({"cell-path-start", "cell " + std::to_string(cid)});
                    continue;
                }
                for (const auto& st : r.path->steps) {
                    auto it = Y.bands.find(st.band);
                    if (it == Y.bands.end()) {
                        rep.cells_ok = false;
                        rep.issues.push_back({"cell-path-band", "cell " + std::to_string(cid)});
                        break;
                    }
                    const Band& b = it->second;
                    if (st.enter.sign() < 0 || st.enter > b.width()) {
                        rep.cells_ok = false;
                        rep.issues.push_back({"cell-path-param", "cell " + std::to_string(cid)});
                        break;
                    }
                    Pt entry = b.at(st.up ? Side::Bottom : Side::Top, st.enter);
                    if (!(entry == cur)) {
                        rep.cells_ok = false;
                        rep.issues.push_back({"cell-path-vertical", "cell " + std::to_string(cid)});
                        break;
                    }
                    cur = b.at(st.up ? Side::Top : Side::Bottom, st.enter);
                }
            }
        }
    }

    // (A1): every edge is a single block spanning it, or meets no bands
    rep.a1 = !Y.graph.glued();
    auto blocks = compute_blocks(Y);
    std::map<EdgeId, std::vector<const Block*>> by_edge;
    for (const auto& blk : blocks) by_edge[blk.edge].push_back(&blk);
    for (const auto& e : Y.graph.edges()) {
        auto it = by_edge.find(e.id);
        if (it == by_edge.end()) continue;
        if (it->second.size() != 1 || !(it->second[0]->start.sign() == 0) ||
            !(it->second[0]->end == e.len)) {
            rep.a1 = false;
            if (!Y.a1_suspended)
                rep.issues.push_back({"a1", "edge " + std::to_string(e.id)});
        }
    }

    // (A2), budgeted heuristic on band boundary fibers (flagged, not exact):
    // a boundary fiber whose pushing closure is compact while the full leaf
    // closure reaches strictly further is suspect.
    for (const auto& [id, b] : Y.bands) {
        if (band_weight(b) == Weight::Zero) continue;
        for (const Scalar& t : {Scalar(0), b.width()}) {
            Pt p = b.at(Side::Bottom, t);
            LeafReport push = pushing_closure(Y, p, leaf_budget);
            if (!push.closed) continue;
            LeafReport full = explore_leaf(Y, p, leaf_budget);
            if (!full.closed || full.visited.size() > push.visited.size()) {
                rep.a2_suspects.push_back("band " + std::to_string(id) + " fiber@" + t.str());
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// canonical state

CanonicalState canonical_state(const BandComplex& Y, const std::vector<EdgeId>& component) {
    CanonicalState st;
    std::set<EdgeId> comp(component.begin(), component.end());

    // canonical edge order: graph order restricted to the component
    for (const auto& e : Y.graph.edges())
        if (comp.count(e.id)) st.edge_order.push_back(e.id);
    std::map<EdgeId, int> edge_idx;
    for (size_t i = 0; i < st.edge_order.size(); ++i)
        edge_idx[st.edge_order[i]] = static_cast<int>(i);

    // endpoint ranks per edge make the key scale-free
    std::map<EdgeId, std::vector<Scalar>> marks;
    for (EdgeId e : st.edge_order) {
        marks[e].push_back(Scalar(0));
        marks[e].push_back(Y.graph.edge_len(e));
    }
    std::vector<const Band*> comp_bands;
    for (const auto& [id, b] : Y.bands) {
        if (!comp.count(b.bottom.edge)) continue;
        comp_bands.push_back(&b);
        for (Side s : {Side::Bottom, Side::Top}) {
            marks[b.raw(s).edge].push_back(b.raw(s).start);
            marks[b.raw(s).edge].push_back(b.raw(s).end());
        }
    }
    for (auto& [e, v] : marks) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    auto rank = [&](EdgeId e, const Scalar& x) {
        const auto& v = marks[e];
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == x) return static_cast<int>(i);
        return -1;
    };

    struct BandKey {
        int be, bs0, bs1, te, ts0, ts1;
        bool bf, tf, orient;
        std::string str() const {
            std::ostringstream os;
            os << be << ":" << bs0 << "-" << bs1 << (bf ? "f" : "r") << ">" << te << ":" << ts0
               << "-" << ts1 << (tf ? "f" : "r") << (orient ? "p" : "m");
            return os.str();
        }
    };
    std::vector<BandKey> keys;
    for (const Band* b : comp_bands) {
        BandKey k;
        k.be = edge_idx[b->bottom.edge];
        k.bs0 = rank(b->bottom.edge, b->bottom.start);
        k.bs1 = rank(b->bottom.edge, b->bottom.end());
        k.bf = b->bottom.fwd;
        k.te = edge_idx[b->top.edge];
        k.ts0 = rank(b->top.edge, b->top.start);
        k.ts1 = rank(b->top.edge, b->top.end());
        k.tf = b->top.fwd;
        k.orient = b->orient;
        keys.push_back(k);
    }
    std::vector<std::string> key_strs;
    for (auto& k : keys) key_strs.push_back(k.str());
    std::sort(key_strs.begin(), key_strs.end());

    std::ostringstream os;
    os << "E" << st.edge_order.size();
    for (EdgeId e : st.edge_order) os << "[" << marks[e].size() << "]";
    for (auto& s : key_strs) os << "|" << s;
    st.key = os.str();

    // the exact length ray: every mark position and edge length, canonical order
    for (EdgeId e : st.edge_order)
        for (const auto& m : marks[e]) st.ray.push_back(m);
    return st;
}

bool projectively_equal(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) return false;
    // find reference index with both entries nonzero
    int ref = -1;
    for (size_t i = 0; i < a.size(); ++i) {
        bool az = a[i].is_zero(), bz = b[i].is_zero();
        if (az != bz) return false;
        if (!az && ref < 0) ref = static_cast<int>(i);
    }
    if (ref < 0) return true;
    // positive ratio required
    if ((a[ref].sign() > 0) != (b[ref].sign() > 0)) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] * b[ref] == b[i] * a[ref])) return false;
    }
    return true;
}

}  // namespace ripsbox
