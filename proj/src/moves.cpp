#include "ripsbox/moves.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace ripsbox {

std::string move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::M2: return "M2";
        case MoveKind::M3: return "M3";
        case MoveKind::M4: return "M4";
        case MoveKind::M5: return "M5";
        case MoveKind::M6: return "M6";
        case MoveKind::M7: return "M7";
        case MoveKind::M8: return "M8";
        case MoveKind::M9: return "M9";
        case MoveKind::M11: return "M11";
        case MoveKind::Fold: return "fold";
        case MoveKind::CollapseWide: return "collapse-wide";
        case MoveKind::CollapseGeneral: return "collapse-general";
    }
    return "M2";
}

MoveKind move_kind_from(const std::string& s) {
    if (s == "M2") return MoveKind::M2;
    if (s == "M3") return MoveKind::M3;
    if (s == "M4") return MoveKind::M4;
    if (s == "M5") return MoveKind::M5;
    if (s == "M6") return MoveKind::M6;
    if (s == "M7") return MoveKind::M7;
    if (s == "M8") return MoveKind::M8;
    if (s == "M9") return MoveKind::M9;
    if (s == "M11") return MoveKind::M11;
    if (s == "fold") return MoveKind::Fold;
    if (s == "collapse-wide") return MoveKind::CollapseWide;
    if (s == "collapse-general") return MoveKind::CollapseGeneral;
    throw MoveError("unknown move kind: " + s);
}

// ---------------------------------------------------------------------------
// relocation plumbing

namespace {

std::set<EdgeId> reloc_sources(const Relocation& r) {
    std::set<EdgeId> s;
    for (const auto& m : r.maps) s.insert(m.src);
    return s;
}

/// Apply a relocation to every base segment and cell region. Entities on
/// affected edges must land inside a single map; anything else is untouched.
void relocate_all(BandComplex& Y, const Relocation& r) {
    if (r.identity()) return;
    std::set<EdgeId> affected = reloc_sources(r);
    for (auto& [id, b] : Y.bands) {
        for (Side s : {Side::Bottom, Side::Top}) {
            Segment& seg = b.raw(s);
            if (!affected.count(seg.edge)) continue;
            auto ns = r.apply(seg);
            if (!ns)
                throw MoveError("relocation split a base of band " + std::to_string(id));
            seg = *ns;
        }
    }
    for (auto& [cid, cell] : Y.cells) {
        for (auto& reg : cell.regions) {
            if (reg.pt && affected.count(reg.pt->edge)) {
                auto np = r.apply(*reg.pt);
                if (!np) throw MoveError("relocation lost a cell point");
                reg.pt = *np;
            }
            if (reg.path && affected.count(reg.path->start.edge)) {
                auto np = r.apply(reg.path->start);
                if (!np) throw MoveError("relocation lost a path start");
                reg.path->start = *np;
            }
        }
    }
}

Pt canonical_glued(const BandComplex& Y, const Pt& p) {
    for (const auto& cls : Y.graph.gluings()) {
        for (const auto& m : cls) {
            Scalar off = m.side == 0 ? Scalar(0) : Y.graph.edge_len(m.edge);
            if (p.edge == m.edge && p.off == off) {
                const auto& rep = cls.front();
                Scalar roff = rep.side == 0 ? Scalar(0) : Y.graph.edge_len(rep.edge);
                return Pt{rep.edge, roff};
            }
        }
    }
    return p;
}

}  // namespace

Relocation compose(const Relocation& a, const Relocation& b) {
    if (a.identity()) return b;
    if (b.identity()) return a;
    Relocation c;
    for (const auto& m : a.maps) {
        // split the image interval of m by b's coverage on m.dst
        struct Cut {
            Scalar lo, hi;
            const SegMap* via;
        };
        std::vector<Cut> cuts;
        Scalar ilo = m.d0, ihi = m.d0 + (m.s1 - m.s0);
        for (const auto& bm : b.maps) {
            if (bm.src != m.dst) continue;
            Scalar lo = max(ilo, bm.s0), hi = min(ihi, bm.s1);
            if (!(lo < hi)) continue;
            cuts.push_back({lo, hi, &bm});
        }
        std::sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) {
            return x.lo != y.lo ? x.lo < y.lo : x.hi < y.hi;
        });
        auto src_of = [&](const Scalar& img) {
            return m.flip ? m.s1 - (img - m.d0) : m.s0 + (img - m.d0);
        };
        auto emit = [&](const Scalar& lo, const Scalar& hi, const SegMap* via) {
            if (!(lo < hi)) return;
            Scalar sa = src_of(lo), sb = src_of(hi);
            SegMap nm;
            nm.src = m.src;
            nm.s0 = min(sa, sb);
            nm.s1 = max(sa, sb);
            if (!via) {
                nm.dst = m.dst;
                nm.flip = m.flip;
                nm.d0 = lo;  // image interval keeps its position
            } else {
                Pt plo = via->map(Pt{m.dst, lo});
                Pt phi = via->map(Pt{m.dst, hi});
                nm.dst = via->dst;
                nm.flip = (m.flip != via->flip);
                nm.d0 = min(plo.off, phi.off);
            }
            c.maps.push_back(nm);
        };
        Scalar cur = ilo;
        for (const auto& ct : cuts) {
            if (ct.lo > cur) emit(cur, ct.lo, nullptr);
            emit(max(cur, ct.lo), ct.hi, ct.via);
            cur = max(cur, ct.hi);
        }
        if (cur < ihi) emit(cur, ihi, nullptr);
    }
    // b-maps act on regions a never touched
    for (const auto& bm : b.maps) c.maps.push_back(bm);
    return c;
}

Relocation records_relocation(const Records& rec) {
    Relocation acc;
    for (const auto& r : rec) acc = compose(acc, r.reloc);
    return acc;
}

std::map<BandId, BandId> records_band_parents(const Records& rec) {
    std::map<BandId, BandId> out;
    for (const auto& r : rec) {
        if (r.kind == MoveKind::M2 && r.created.size() >= 2 && !r.destroyed.empty()) {
            out[r.created[0]] = r.destroyed.front();
            out[r.created[1]] = r.destroyed.front();
        } else if (r.kind == MoveKind::M5 && !r.destroyed.empty()) {
            for (int c : r.created) out[c] = r.destroyed.front();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// (M2)

std::pair<BandId, BandId> subdivide_band(BandComplex& Y, BandId bid, const Scalar& x,
                                         Records& rec) {
    const Band B = Y.bands.at(bid);
    const Scalar w = B.width();
    if (!(x.sign() > 0) || !(x < w)) throw MoveError("M2: split parameter not interior");

    auto piece = [&](const Scalar& t0, const Scalar& t1) {
        Band nb;
        nb.bottom = B.eff(Side::Bottom).sub(t0, t1);
        Segment efftop = B.eff(Side::Top).sub(t0, t1);
        nb.orient = B.orient;
        nb.top = B.orient ? efftop : efftop.reversed();
        return nb;
    };
    Band pa = piece(Scalar(0), x);
    Band pb = piece(x, w);
    Weight wt = band_weight(B);
    Y.bands.erase(bid);
    BandId ida = Y.add_band(pa.bottom, pa.top, pa.orient);
    BandId idb = Y.add_band(pb.bottom, pb.top, pb.orient);

    // remap leaf paths through the split band
    for (auto& [cid, cell] : Y.cells) {
        for (auto& reg : cell.regions) {
            if (!reg.path) continue;
            for (auto& st : reg.path->steps) {
                if (st.band != bid) continue;
                if (st.enter <= x) {
                    st.band = ida;
                } else {
                    st.band = idb;
                    st.enter = st.enter - x;
                }
            }
        }
    }

    Pt base_pt = B.at(Side::Bottom, x);
    LeafPath p1{base_pt, {PathStep{ida, x, true}}};
    LeafPath p2{base_pt, {PathStep{idb, Scalar(0), true}}};
    CellKind ck = (wt == Weight::Zero) ? CellKind::SubdivisionAnnulus : CellKind::SubdivisionCell;
    CellId cid = Y.add_cell(ck, {Region::leaf(p1), Region::leaf(p2)});

    MoveRecord r;
    r.kind = MoveKind::M2;
    r.band = bid;
    r.x0 = x;
    r.created = {ida, idb, cid};
    r.destroyed = {bid};
    rec.push_back(std::move(r));
    return {ida, idb};
}

// ---------------------------------------------------------------------------
// (M3)

void cut_graph(BandComplex& Y, const Pt& z, Records& rec) {
    for (const auto& [id, b] : Y.bands)
        for (Side s : {Side::Bottom, Side::Top})
            if (b.raw(s).contains_interior(z))
                throw MoveError("M3: point interior to a base of band " + std::to_string(id));

    MoveRecord r;
    r.kind = MoveKind::M3;
    r.pt = z;
    Scalar L = Y.graph.edge_len(z.edge);
    if (z.off.sign() == 0 || z.off == L) {
        // already an endpoint: only the cone is recorded
        CellId cid = Y.add_cell(CellKind::Cone, {Region::point(z)});
        r.created = {cid};
        rec.push_back(std::move(r));
        return;
    }
    auto ids = Y.graph.replace_edge(z.edge, {z.off, L - z.off});
    Relocation reloc;
    reloc.maps.push_back(SegMap{z.edge, Scalar(0), z.off, ids[0], Scalar(0), false});
    reloc.maps.push_back(SegMap{z.edge, z.off, L, ids[1], Scalar(0), false});
    relocate_all(Y, reloc);
    CellId cid = Y.add_cell(
        CellKind::Cone,
        {Region::point(Pt{ids[0], z.off}), Region::point(Pt{ids[1], Scalar(0)})});
    r.created = {ids[0], ids[1], cid};
    r.reloc = reloc;
    rec.push_back(std::move(r));
}

namespace {

void unglue_class(BandComplex& Y, size_t idx, Records& rec) {
    auto cls = Y.graph.gluings().at(idx);
    std::vector<Region> regions;
    for (const auto& m : cls) {
        Scalar off = m.side == 0 ? Scalar(0) : Y.graph.edge_len(m.edge);
        regions.push_back(Region::point(Pt{m.edge, off}));
    }
    auto glue = Y.graph.gluings();
    glue.erase(glue.begin() + idx);
    Y.graph.clear_gluings();
    for (auto& c : glue)
        for (size_t i = 1; i < c.size(); ++i) Y.graph.glue(c[0], c[i]);
    CellId cid = Y.add_cell(CellKind::Cone, regions);
    MoveRecord r;
    r.kind = MoveKind::M3;
    r.flag = true;
    r.note = "unglue";
    r.regions = std::move(regions);
    r.created = {cid};
    rec.push_back(std::move(r));
}

}  // namespace

// ---------------------------------------------------------------------------
// (M4)

void slide(BandComplex& Y, BaseRef carried, BaseRef carrier, Records& rec) {
    if (carried.band == carrier.band) throw MoveError("M4: band cannot carry itself");
    const Band& C = Y.bands.at(carrier.band);
    Band& B = Y.bands.at(carried.band);
    const Segment cseg = C.raw(carrier.side);
    Segment s = B.raw(carried.side);
    if (!cseg.contains_seg(s)) throw MoveError("M4: carried base not inside carrier base");

    Pt p0 = C.dual(carrier.side, s.at(Scalar(0)));
    Pt p1 = C.dual(carrier.side, s.at(s.len));
    Segment ns;
    ns.edge = p0.edge;
    ns.len = s.len;
    if (p0.off <= p1.off) {
        ns.start = p0.off;
        ns.fwd = true;
    } else {
        ns.start = p1.off;
        ns.fwd = false;
    }
    B.raw(carried.side) = ns;

    MoveRecord r;
    r.kind = MoveKind::M4;
    r.band = carried.band;
    r.side = side_index(carried.side);
    r.band2 = carrier.band;
    r.side2 = side_index(carrier.side);
    rec.push_back(std::move(r));
}

// ---------------------------------------------------------------------------
// (M6)(M7)(M8)

BandId attach_band(BandComplex& Y, Segment bottom, Segment top, bool orient, Records& rec) {
    if (!(bottom.len == top.len)) throw MoveError("M6: base lengths differ");
    if (bottom.len.sign() <= 0) throw MoveError("M6: degenerate band");
    BandId id = Y.add_band(std::move(bottom), std::move(top), orient);
    MoveRecord r;
    r.kind = MoveKind::M6;
    r.seg = Y.bands.at(id).bottom;
    r.seg2 = Y.bands.at(id).top;
    r.flag = orient;
    r.created = {id};
    rec.push_back(std::move(r));
    return id;
}

EdgeId attach_arc(BandComplex& Y, const Scalar& len, Records& rec) {
    if (len.sign() <= 0) throw MoveError("M7: arc length must be positive");
    EdgeId id = Y.graph.add_edge(len);
    MoveRecord r;
    r.kind = MoveKind::M7;
    r.seg = Segment{id, Scalar(0), len, true};
    r.created = {id};
    rec.push_back(std::move(r));
    return id;
}

void extend_edge(BandComplex& Y, EdgeId e, const Scalar& amount, bool at_start, Records& rec) {
    if (amount.sign() <= 0) throw MoveError("M7: extension must be positive");
    Scalar L = Y.graph.edge_len(e);
    Y.graph.set_edge_len(e, L + amount);
    Relocation reloc;
    if (at_start) {
        reloc.maps.push_back(SegMap{e, Scalar(0), L, e, amount, false});
        relocate_all(Y, reloc);
    }
    MoveRecord r;
    r.kind = MoveKind::M7;
    r.note = "extend";
    r.seg = Segment{e, Scalar(0), amount, true};
    r.flag = at_start;
    r.x0 = amount;
    r.reloc = reloc;
    rec.push_back(std::move(r));
}

CellId attach_cell(BandComplex& Y, CellKind kind, std::vector<Region> regions, Records& rec) {
    if (kind == CellKind::Disk) {
        // the attaching loop must have measure zero: graph hops degenerate
        Pt cur;
        bool have = false;
        for (const auto& reg : regions) {
            if (reg.pt) {
                if (have && !(canonical_glued(Y, *reg.pt) == cur))
                    throw MoveError("M8: positive-measure graph excursion");
                cur = canonical_glued(Y, *reg.pt);
                have = true;
            } else if (reg.path) {
                Pt s = canonical_glued(Y, reg.path->start);
                if (have && !(s == cur)) throw MoveError("M8: positive-measure graph excursion");
                Pt end = reg.path->start;
                for (const auto& st : reg.path->steps) {
                    const Band& b = Y.bands.at(st.band);
                    end = b.at(st.up ? Side::Top : Side::Bottom, st.enter);
                }
                cur = canonical_glued(Y, end);
                have = true;
            }
        }
    }
    CellId id = Y.add_cell(kind, regions);
    MoveRecord r;
    r.kind = MoveKind::M8;
    r.cell_kind = static_cast<int>(kind);
    r.regions = std::move(regions);
    r.created = {id};
    rec.push_back(std::move(r));
    return id;
}

// ---------------------------------------------------------------------------
// collapse machinery

namespace {

/// Collapse the subband of `bid` over fiber parameters [u0,u1], removing the
/// graph arc under the `from` base. Precondition: that arc meets no other
/// base and carries no unrelocated cell; weight-0 preprocessing already done.
void collapse_constituent(BandComplex& Y, BandId bid, Side from, const Scalar& u0,
                          const Scalar& u1, Records& rec) {
    const Band B = Y.bands.at(bid);
    const Scalar w = B.width();
    if (u0.sign() < 0 || u1 > w || !(u0 < u1)) throw MoveError("M5: bad parameter range");

    Pt a0 = B.at(from, u0), a1 = B.at(from, u1);
    EdgeId E = a0.edge;
    Scalar lo = min(a0.off, a1.off), hi = max(a0.off, a1.off);
    Scalar L = Y.graph.edge_len(E);
    if (Y.graph.class_of({E, 0}) >= 0 || Y.graph.class_of({E, 1}) >= 0)
        if (lo.sign() == 0 || hi == L)
            throw MoveError("M5: collapsing against a glued endpoint");

    // dual images, computed before surgery
    Pt dlo = B.dual(from, Pt{E, lo});
    Pt dhi = B.dual(from, Pt{E, hi});

    // remnant pieces of the band, in pre-surgery coordinates
    auto piece = [&](const Scalar& t0, const Scalar& t1) {
        Band nb;
        nb.bottom = B.eff(Side::Bottom).sub(t0, t1);
        Segment efftop = B.eff(Side::Top).sub(t0, t1);
        nb.orient = B.orient;
        nb.top = B.orient ? efftop : efftop.reversed();
        return nb;
    };
    std::vector<std::pair<Scalar, Scalar>> keep;
    if (u0.sign() > 0) keep.push_back({Scalar(0), u0});
    if (u1 < w) keep.push_back({u1, w});
    std::vector<Band> pieces;
    for (auto& [t0, t1] : keep) pieces.push_back(piece(t0, t1));

    Y.bands.erase(bid);

    // graph surgery: remove the open arc (lo,hi) from E
    Relocation reloc;
    std::vector<Scalar> lens;
    bool left = lo.sign() > 0, right = hi < L;
    if (left) lens.push_back(lo);
    if (right) lens.push_back(L - hi);
    std::vector<EdgeId> ids;
    if (!lens.empty()) {
        ids = Y.graph.replace_edge(E, lens);
    } else {
        Y.graph.remove_edge(E);
    }
    EdgeId nl = left ? ids[0] : -1;
    EdgeId nr = right ? ids[left ? 1 : 0] : -1;
    if (left) reloc.maps.push_back(SegMap{E, Scalar(0), lo, nl, Scalar(0), false});
    if (right) reloc.maps.push_back(SegMap{E, hi, L, nr, Scalar(0), false});

    // the removed arc relocates to its dual position
    {
        Scalar tlo = min(dlo.off, dhi.off);
        EdgeId dedge = dlo.edge;
        bool flip;
        // offset direction: image of the lo endpoint
        flip = dlo.off > dhi.off;
        Scalar target0 = tlo;
        // compose with the surviving-piece maps when the dual lies on E
        if (dedge == E) {
            Scalar thi = max(dlo.off, dhi.off);
            if (thi <= lo && left) {
                dedge = nl;
            } else if (tlo >= hi && right) {
                dedge = nr;
                target0 = target0 - hi;
            } else {
                throw MoveError("M5: dual arc overlaps the collapsed arc");
            }
        }
        reloc.maps.push_back(SegMap{E, lo, hi, dedge, target0, flip});
    }
    relocate_all(Y, reloc);

    // instantiate remnants from relocated coordinates
    std::vector<int> created;
    for (auto& nb : pieces) {
        auto nbm = reloc.apply(nb.bottom);
        auto ntm = reloc.apply(nb.top);
        Segment bm = nbm ? *nbm : nb.bottom;
        Segment tm = ntm ? *ntm : nb.top;
        BandId nid = Y.add_band(bm, tm, nb.orient);
        created.push_back(nid);
    }

    // leaf paths through the collapsed band
    bool has_left = u0.sign() > 0, has_right = u1 < w;
    for (auto& [cid, cell] : Y.cells) {
        for (auto& reg : cell.regions) {
            if (!reg.path) continue;
            auto& steps = reg.path->steps;
            std::vector<PathStep> out;
            for (auto& st : steps) {
                if (st.band != bid) {
                    out.push_back(st);
                    continue;
                }
                if (has_left && st.enter <= u0) {
                    out.push_back(PathStep{created[0], st.enter, st.up});
                } else if (has_right && st.enter >= u1) {
                    out.push_back(
                        PathStep{created[has_left ? 1 : 0], st.enter - u1, st.up});
                }
                // traversal through the collapsed part: elide
            }
            steps = std::move(out);
        }
    }

    MoveRecord r;
    r.kind = MoveKind::M5;
    r.band = bid;
    r.side = side_index(from);
    r.x0 = u0;
    r.x1 = u1;
    r.created = created;
    r.destroyed = {bid};
    r.reloc = reloc;
    rec.push_back(std::move(r));
}

/// Subdivide and slide weight-0 bands until none meets the open arc
/// (lo,hi) of the `from` base of carrier band `bid`.
void preprocess_weight0(BandComplex& Y, BandId bid, Side from, Records& rec) {
    while (true) {
        const Band& B = Y.bands.at(bid);
        Segment base = B.raw(from);
        Scalar lo = base.start, hi = base.end();
        bool acted = false;
        for (auto it = Y.bands.begin(); it != Y.bands.end(); ++it) {
            auto& [cid, C] = *it;
            if (cid == bid) continue;
            if (band_weight(C) != Weight::Zero) continue;
            const Segment carc = C.bottom;  // both bases coincide
            if (carc.edge != base.edge) continue;
            Scalar olo = max(carc.start, lo), ohi = min(carc.end(), hi);
            if (!(olo < ohi)) continue;
            // split at crossing points, or slide when fully inside
            if (carc.start < lo || carc.end() > hi) {
                Scalar cut = (carc.start < lo) ? lo : hi;
                Scalar t = C.eff(Side::Bottom).param_of(Pt{carc.edge, cut});
                subdivide_band(Y, cid, t, rec);
            } else {
                slide(Y, {cid, Side::Bottom}, {bid, from}, rec);
                slide(Y, {cid, Side::Top}, {bid, from}, rec);
            }
            acted = true;
            break;
        }
        if (!acted) return;
    }
}

/// Split a weight-1/2 band into weight 1, 1/2, 0 pieces so that the free
/// subarc at fiber parameters [u0,u1] sits inside a weight-1 band. Returns
/// the weight-1 piece and the parameter range of J inside it.
std::tuple<BandId, Scalar, Scalar> mobius_preprocess(BandComplex& Y, BandId bid,
                                                     const Scalar& u0, const Scalar& u1,
                                                     Records& rec) {
    const Scalar w = Y.bands.at(bid).width();
    Scalar half = w / Scalar(2);
    bool lower = u1 <= half;
    if (!lower && !(u0 >= half)) throw MoveError("M5: free subarc crosses the midpoint");
    Scalar near = lower ? u1 : u0;       // endpoint of J nearest the midpoint
    Scalar mirror = w - near;
    Scalar c0 = min(near, mirror), c1 = max(near, mirror);

    BandId flank_lo = bid, flank_hi = bid;
    if (c0.sign() > 0 && c0 < w) {
        auto [a, b] = subdivide_band(Y, bid, c0, rec);
        flank_lo = a;
        flank_hi = b;
    }
    if (c1 > c0 && c1 < w) {
        auto [a, b] = subdivide_band(Y, flank_hi, c1 - c0, rec);
        // a is the middle (Mobius) piece, b the upper flank
        flank_hi = b;
        (void)a;
    }
    // flank containing J and its mirror flank
    BandId F = lower ? flank_lo : flank_hi;
    BandId M = lower ? flank_hi : flank_lo;
    if (F == M) throw MoveError("M5: degenerate mobius split");
    // the mirror flank's coinciding base slides across F and becomes weight 0
    const Band& fb = Y.bands.at(F);
    Segment ftop = fb.raw(Side::Top);
    const Band& mb = Y.bands.at(M);
    Side mside = mb.raw(Side::Bottom).same_arc(ftop) ? Side::Bottom : Side::Top;
    slide(Y, {M, mside}, {F, Side::Top}, rec);
    if (band_weight(Y.bands.at(M)) != Weight::Zero)
        throw MoveError("M5: mobius mirror flank did not become an annulus");

    Scalar j0 = lower ? u0 : u0 - c1;
    Scalar j1 = lower ? u1 : u1 - c1;
    return {F, j0, j1};
}

}  // namespace

void collapse_from_free_subarc(BandComplex& Y, const FreeSubarc& J, Records& rec,
                               bool renormalize) {
    BandId bid = J.base.band;
    Side side = J.base.side;
    Scalar u0 = J.t0, u1 = J.t1;
    if (!(u0 < u1)) throw MoveError("M5: degenerate free subarc");

    Weight wt = Y.weight_of(bid);
    if (wt == Weight::Zero) throw MoveError("M5: free subarc in a weight-0 band");
    if (wt == Weight::Half) {
        auto [nb, j0, j1] = mobius_preprocess(Y, bid, u0, u1, rec);
        bid = nb;
        side = Side::Bottom;
        u0 = j0;
        u1 = j1;
    }

    // the generalized band is collapsed as a unit, starting from the J end
    auto gb = generalized_band_of(Y, bid);
    if (!gb) throw MoveError("M5: band is not part of a generalized band");
    std::vector<BandId> order = gb->bands;
    bool from_bottom;
    if (order.front() == bid && Y.bands.at(bid).raw(Side::Bottom).same_arc(
                                    Y.bands.at(bid).raw(side))) {
        from_bottom = true;
    } else if (order.back() == bid &&
               Y.bands.at(bid).raw(Side::Top).same_arc(Y.bands.at(bid).raw(side))) {
        from_bottom = false;
        std::reverse(order.begin(), order.end());
    } else {
        throw MoveError("M5: free subarc not on an end base of its generalized band");
    }

    Scalar cu0 = u0, cu1 = u1;
    size_t n = order.size();
    for (size_t i = 0; i < n; ++i) {
        BandId cur = order[i];
        Side from = from_bottom ? Side::Bottom : Side::Top;
        const Band& B = Y.bands.at(cur);
        // dual arc endpoints, used to find J in the next constituent
        Pt q0 = B.at(other(from), cu0);
        Pt q1 = B.at(other(from), cu1);
        preprocess_weight0(Y, cur, from, rec);
        size_t mark = rec.size();
        collapse_constituent(Y, cur, from, cu0, cu1, rec);
        if (i + 1 < n) {
            const Relocation& rl = rec[mark].reloc;
            Pt r0 = relocate_or_keep(rl, q0);
            Pt r1 = relocate_or_keep(rl, q1);
            const Band& N = Y.bands.at(order[i + 1]);
            Side nfrom = from_bottom ? Side::Bottom : Side::Top;
            Scalar t0 = N.param(nfrom, r0);
            Scalar t1 = N.param(nfrom, r1);
            cu0 = min(t0, t1);
            cu1 = max(t0, t1);
        }
    }
    if (renormalize && !Y.a1_suspended) normalize_a1(Y, rec);
}

// ---------------------------------------------------------------------------
// (M9) (M11)

void subdivide_at_point(BandComplex& Y, const Pt& q, Records& rec) {
    MoveRecord marker;
    marker.kind = MoveKind::M9;
    marker.pt = q;
    rec.push_back(marker);
    while (true) {
        bool acted = false;
        for (auto& [id, b] : Y.bands) {
            for (Side s : {Side::Bottom, Side::Top}) {
                if (!b.raw(s).contains_interior(q)) continue;
                Scalar t = b.eff(s).param_of(q);
                subdivide_band(Y, id, t, rec);
                acted = true;
                break;
            }
            if (acted) break;
        }
        if (!acted) return;
    }
}

std::pair<EdgeId, BandId> duplicate_segment(BandComplex& Y, const Segment& c, Records& rec) {
    if (c.len.sign() <= 0) throw MoveError("M11: degenerate segment");
    MoveRecord marker;
    marker.kind = MoveKind::M11;
    marker.seg = c;
    rec.push_back(marker);
    EdgeId e = attach_arc(Y, c.len, rec);
    BandId b = attach_band(Y, Segment{c.edge, c.start, c.len, c.fwd},
                           Segment{e, Scalar(0), c.len, true}, true, rec);
    return {e, b};
}

// ---------------------------------------------------------------------------
// folds

std::pair<EdgeId, EdgeId> split_edge_glued(BandComplex& Y, EdgeId e, const Scalar& x,
                                           Records& rec) {
    Scalar L = Y.graph.edge_len(e);
    if (!(x.sign() > 0) || !(x < L)) throw MoveError("edge split not interior");
    auto ids = Y.graph.replace_edge(e, {x, L - x});
    Y.graph.remap_gluings(e, ids[0], ids[1]);
    Relocation reloc;
    reloc.maps.push_back(SegMap{e, Scalar(0), x, ids[0], Scalar(0), false});
    reloc.maps.push_back(SegMap{e, x, L, ids[1], Scalar(0), false});
    relocate_all(Y, reloc);
    Y.graph.glue({ids[0], 1}, {ids[1], 0});
    Y.a1_suspended = true;

    MoveRecord r;
    r.kind = MoveKind::Fold;
    r.note = "edge-split";
    r.pt = Pt{e, x};
    r.created = {ids[0], ids[1]};
    r.reloc = reloc;
    rec.push_back(std::move(r));
    return {ids[0], ids[1]};
}

void identify_edges(BandComplex& Y, EdgeId keep, EdgeId gone, bool flip, Records& rec) {
    if (keep == gone) throw MoveError("identify: same edge");
    Scalar L = Y.graph.edge_len(keep);
    if (!(L == Y.graph.edge_len(gone))) throw MoveError("identify: length mismatch");
    Relocation reloc;
    reloc.maps.push_back(SegMap{gone, Scalar(0), L, keep, Scalar(0), flip});
    relocate_all(Y, reloc);
    // endpoint gluings of `gone` transfer to the matching ends of `keep`
    auto glue = Y.graph.gluings();
    Y.graph.clear_gluings();
    for (auto& cls : glue) {
        for (auto& m : cls) {
            if (m.edge == gone) {
                m.edge = keep;
                if (flip) m.side = 1 - m.side;
            }
        }
        for (size_t i = 1; i < cls.size(); ++i)
            if (!(cls[i] == cls[0])) Y.graph.glue(cls[0], cls[i]);
    }
    Y.graph.remove_edge(gone);

    MoveRecord r;
    r.kind = MoveKind::Fold;
    r.note = "edge-identify";
    r.seg = Segment{gone, Scalar(0), L, true};
    r.seg2 = Segment{keep, Scalar(0), L, true};
    r.flag = flip;
    r.destroyed = {gone};
    r.reloc = reloc;
    rec.push_back(std::move(r));
}

void glue_ends(BandComplex& Y, RealGraph::End a, RealGraph::End b, Records& rec) {
    Y.graph.glue(a, b);
    Y.a1_suspended = true;
    MoveRecord r;
    r.kind = MoveKind::Fold;
    r.note = "glue";
    r.band = a.edge;
    r.side = a.side;
    r.band2 = b.edge;
    r.side2 = b.side;
    rec.push_back(std::move(r));
}

namespace {

/// Merge band `gone` into band `keep`; their `ks`/`gs` bases lie on one arc
/// and their opposite bases lie on one arc, with matching attaching maps.
void merge_bands(BandComplex& Y, BandId keep, Side ks, BandId gone, Side gs, Records& rec) {
    const Band K = Y.bands.at(keep);
    const Band G = Y.bands.at(gone);
    if (!K.raw(ks).same_arc(G.raw(gs))) throw MoveError("merge: shared base arc mismatch");
    if (!K.raw(other(ks)).same_arc(G.raw(other(gs))))
        throw MoveError("merge: dual base arc mismatch");
    // attaching maps must agree: duals of both endpoints of the shared arc
    Segment arc = K.raw(ks);
    for (const Scalar& off : {arc.start, arc.end()}) {
        Pt x{arc.edge, off};
        if (!(K.dual(ks, x) == G.dual(gs, x))) throw MoveError("merge: fold not well-defined");
    }
    // remap leaf paths of `gone` through the identification
    for (auto& [cid, cell] : Y.cells) {
        for (auto& reg : cell.regions) {
            if (!reg.path) continue;
            for (auto& st : reg.path->steps) {
                if (st.band != gone) continue;
                Pt entry = G.at(st.up ? Side::Bottom : Side::Top, st.enter);
                Pt onarc = G.at(gs, st.enter);
                Scalar t = K.param(ks, onarc);
                Side entry_side_in_k =
                    (st.up ? Side::Bottom : Side::Top) == gs ? ks : other(ks);
                st.band = keep;
                st.enter = t;
                st.up = (entry_side_in_k == Side::Bottom);
                (void)entry;
            }
        }
    }
    Y.bands.erase(gone);
    MoveRecord r;
    r.kind = MoveKind::Fold;
    r.note = "band-merge";
    r.band = keep;
    r.side = side_index(ks);
    r.band2 = gone;
    r.side2 = side_index(gs);
    r.destroyed = {gone};
    rec.push_back(std::move(r));
}

/// Split band `bid` so that one piece has exactly [lo,hi] as its `side` base
/// arc; returns that piece.
BandId isolate_subband(BandComplex& Y, BandId bid, Side side, const Scalar& lo,
                       const Scalar& hi, Records& rec) {
    BandId cur = bid;
    // cut at hi first, then lo, tracking the piece containing [lo,hi]
    const Band* B = &Y.bands.at(cur);
    Segment base = B->raw(side);
    Scalar ta = B->eff(side).param_of(Pt{base.edge, lo});
    Scalar tb = B->eff(side).param_of(Pt{base.edge, hi});
    Scalar t0 = min(ta, tb), t1 = max(ta, tb);
    if (t1 < B->width()) {
        auto [a, b] = subdivide_band(Y, cur, t1, rec);
        cur = a;
        (void)b;
    }
    B = &Y.bands.at(cur);
    if (t0.sign() > 0) {
        auto [a, b] = subdivide_band(Y, cur, t0, rec);
        cur = b;
        (void)a;
    }
    return cur;
}

}  // namespace

void fold_bands(BandComplex& Y, BaseRef r1, BaseRef r2, Records& rec) {
    if (r1.band == r2.band) throw MoveError("fold: distinct bands required");
    MoveRecord marker;
    marker.kind = MoveKind::Fold;
    marker.note = "fold";
    marker.band = r1.band;
    marker.side = side_index(r1.side);
    marker.band2 = r2.band;
    marker.side2 = side_index(r2.side);
    rec.push_back(marker);

    const Band& B1 = Y.bands.at(r1.band);
    const Band& B2 = Y.bands.at(r2.band);
    auto ov = arc_overlap(B1.raw(r1.side), B2.raw(r2.side));
    if (!ov || !(ov->first < ov->second)) throw MoveError("fold: bases do not overlap");
    Scalar lo = ov->first, hi = ov->second;

    BandId p1 = isolate_subband(Y, r1.band, r1.side, lo, hi, rec);
    BandId p2 = isolate_subband(Y, r2.band, r2.side, lo, hi, rec);

    const Band& P1 = Y.bands.at(p1);
    const Band& P2 = Y.bands.at(p2);
    Segment arc = P1.raw(r1.side);
    // dual arcs of the overlap
    Pt d1a = P1.dual(r1.side, Pt{arc.edge, lo}), d1b = P1.dual(r1.side, Pt{arc.edge, hi});
    Pt d2a = P2.dual(r2.side, Pt{arc.edge, lo}), d2b = P2.dual(r2.side, Pt{arc.edge, hi});

    bool identified = (d1a == d2a && d1b == d2b);
    if (!identified) {
        Scalar l1 = min(d1a.off, d1b.off), h1 = max(d1a.off, d1b.off);
        Scalar l2 = min(d2a.off, d2b.off), h2 = max(d2a.off, d2b.off);
        if (d1a.edge == d2a.edge && max(l1, l2) < min(h1, h2))
            throw MoveError("fold: dual positions overlap without being identified");
        // isolate both dual arcs as whole edges and identify them
        auto isolate_edge = [&](EdgeId e, const Scalar& a, const Scalar& b) {
            EdgeId cur = e;
            Scalar alo = a, ahi = b;
            if (ahi < Y.graph.edge_len(cur)) {
                auto [x, y] = split_edge_glued(Y, cur, ahi, rec);
                cur = x;
                (void)y;
            }
            if (alo.sign() > 0) {
                auto [x, y] = split_edge_glued(Y, cur, alo, rec);
                cur = y;
                (void)x;
            }
            return cur;
        };
        EdgeId e1 = isolate_edge(d1a.edge, l1, h1);
        // recompute the second dual arc; the first isolation may have moved it
        const Band& P2b = Y.bands.at(p2);
        Segment arc2 = P2b.raw(r2.side);
        Pt e2a = P2b.dual(r2.side, Pt{arc2.edge, min(arc2.start, arc2.end())});
        Pt e2b = P2b.dual(r2.side, Pt{arc2.edge, max(arc2.start, arc2.end())});
        EdgeId e2 = isolate_edge(e2a.edge, min(e2a.off, e2b.off), max(e2a.off, e2b.off));
        if (e1 == e2) throw MoveError("fold: dual arcs coincide unexpectedly");
        // orientation of the identification from the band maps
        const Band& P1c = Y.bands.at(p1);
        const Band& P2c = Y.bands.at(p2);
        Segment arcc = P1c.raw(r1.side);
        Pt u1 = P1c.dual(r1.side, Pt{arcc.edge, arcc.start});
        Pt u2 = P2c.dual(r2.side, Pt{arcc.edge, arcc.start});
        Pt v1 = P1c.dual(r1.side, Pt{arcc.edge, arcc.end()});
        Pt v2 = P2c.dual(r2.side, Pt{arcc.edge, arcc.end()});
        bool flip = ((u1.off < v1.off) != (u2.off < v2.off));
        identify_edges(Y, e1, e2, flip, rec);
        (void)u2;
    }
    merge_bands(Y, p1, r1.side, p2, r2.side, rec);
}

void fold_generalized(BandComplex& Y, const GeneralizedBand& g1, Side s1,
                      const GeneralizedBand& g2, Side s2, Records& rec) {
    if (g1.length() != g2.length()) throw MoveError("fold: generalized lengths differ");
    BandId b1 = (s1 == Side::Bottom) ? g1.bands.front() : g1.bands.back();
    BandId b2 = (s2 == Side::Bottom) ? g2.bands.front() : g2.bands.back();
    fold_bands(Y, {b1, s1}, {b2, s2}, rec);
}

// ---------------------------------------------------------------------------
// collapse of a generalized band (Process III)

void collapse_band(BandComplex& Y, const GeneralizedBand& gb, bool wide, Records& rec) {
    Segment barc = gb.bottom;
    Segment tarc = gb.top;
    if (barc.same_arc(tarc)) throw MoveError("collapse-band: unit has weight 0");

    auto blocks = compute_blocks(Y);
    const Block* blk = nullptr;
    Side side = Side::Bottom;
    auto find_block = [&](const Segment& s) -> const Block* {
        for (const auto& b : blocks)
            if (b.edge == s.edge && b.start <= s.start && s.end() <= b.end) return &b;
        return nullptr;
    };
    if (wide) {
        const Block* bb = find_block(barc);
        const Block* tb = find_block(tarc);
        if (bb && bb->start == barc.start && bb->end == barc.end()) {
            blk = bb;
            side = Side::Bottom;
        } else if (tb && tb->start == tarc.start && tb->end == tarc.end()) {
            blk = tb;
            side = Side::Top;
        } else {
            throw MoveError("collapse-band: no wide base");
        }
    } else {
        blk = find_block(barc);
        side = Side::Bottom;
        if (!blk) throw MoveError("collapse-band: base not in a block");
    }

    MoveRecord marker;
    marker.kind = wide ? MoveKind::CollapseWide : MoveKind::CollapseGeneral;
    marker.band = gb.bands.front();
    marker.side = side_index(side);
    rec.push_back(marker);

    Segment base = (side == Side::Bottom) ? barc : tarc;
    std::set<BandId> unit(gb.bands.begin(), gb.bands.end());

    // slide every other base in the block across the unit, splitting bands
    // that overflow past the base in general mode
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& [id, b] : Y.bands) {
            if (unit.count(id)) continue;
            for (Side s : {Side::Bottom, Side::Top}) {
                Segment seg = b.raw(s);
                if (seg.edge != base.edge) continue;
                Scalar olo = max(seg.start, base.start), ohi = min(seg.end(), base.end());
                if (!(olo < ohi)) continue;
                if (seg.start >= base.start && seg.end() <= base.end()) {
                    // chained slide through the unit
                    BandId carrier_piece = (side == Side::Bottom) ? gb.bands.front()
                                                                  : gb.bands.back();
                    Side carrier_side = side;
                    std::vector<BandId> orderv = gb.bands;
                    if (side == Side::Top) std::reverse(orderv.begin(), orderv.end());
                    BaseRef moving{id, s};
                    for (BandId cpid : orderv) {
                        slide(Y, moving, {cpid, carrier_side}, rec);
                    }
                    (void)carrier_piece;
                } else {
                    if (wide) throw MoveError("collapse-band: overflow base in wide mode");
                    Scalar cut = (seg.start < base.start) ? base.start : base.end();
                    Scalar t = b.eff(s).param_of(Pt{seg.edge, cut});
                    subdivide_band(Y, id, t, rec);
                }
                progress = true;
                break;
            }
            if (progress) break;
        }
    }

    // in general mode the block remnants outside the base glue to the dual
    Scalar L = Y.graph.edge_len(base.edge);
    bool left_rem = base.start.sign() > 0;
    bool right_rem = base.end() < L;
    Pt glue_lo, glue_hi;
    if (!wide && (left_rem || right_rem)) {
        glue_lo = generalized_dual(Y, gb, side, Pt{base.edge, base.start});
        glue_hi = generalized_dual(Y, gb, side, Pt{base.edge, base.end()});
    }

    // the base must be free now; collapse the whole unit from it
    {
        const Band& endb =
            Y.bands.at((side == Side::Bottom) ? gb.bands.front() : gb.bands.back());
        for (const auto& [oid, ob] : Y.bands) {
            if (unit.count(oid)) continue;
            if (band_weight(ob) == Weight::Zero) continue;  // handled by preprocessing
            for (Side s : {Side::Bottom, Side::Top}) {
                const Segment& seg = ob.raw(s);
                if (seg.edge != base.edge) continue;
                if (max(seg.start, base.start) < min(seg.end(), base.end()))
                    throw MoveError("collapse-band: base not freed by slides");
            }
        }
        (void)endb;
    }
    FreeSubarc J;
    J.base = {(side == Side::Bottom) ? gb.bands.front() : gb.bands.back(), side};
    J.arc = base;
    J.t0 = Scalar(0);
    J.t1 = base.len;
    size_t mark = rec.size();
    collapse_from_free_subarc(Y, J, rec, /*renormalize=*/wide);

    if (!wide && (left_rem || right_rem)) {
        Relocation total;
        for (size_t i = mark; i < rec.size(); ++i) total = compose(total, rec[i].reloc);
        auto attach_glue = [&](const Pt& target_pre, bool left) {
            Pt target = relocate_or_keep(total, target_pre);
            // the remnant piece keeps the boundary point; find its edge
            Pt cutpt_pre{base.edge, left ? base.start : base.end()};
            Pt cutpt = relocate_or_keep(total, cutpt_pre);
            if (cutpt == target) return;  // already identified by relocation
            // split the dual edge at the target to expose an endpoint
            Scalar tl = Y.graph.edge_len(target.edge);
            RealGraph::End tend{target.edge, 0};
            if (target.off.sign() == 0) {
                tend = {target.edge, 0};
            } else if (target.off == tl) {
                tend = {target.edge, 1};
            } else {
                auto [e1, e2] = split_edge_glued(Y, target.edge, target.off, rec);
                tend = {e1, 1};
                cutpt = relocate_or_keep(rec.back().reloc, cutpt);
            }
            Scalar cl = Y.graph.edge_len(cutpt.edge);
            RealGraph::End cend{cutpt.edge, cutpt.off.sign() == 0 ? 0 : 1};
            if (!(cutpt.off.sign() == 0) && !(cutpt.off == cl))
                throw MoveError("collapse-band: remnant cut point not an endpoint");
            glue_ends(Y, cend, tend, rec);
            (void)left;
        };
        if (left_rem) attach_glue(glue_lo, true);
        if (right_rem) attach_glue(glue_hi, false);
        Y.a1_suspended = true;
    }
}

BandId fuse_bands(BandComplex& Y, BandId left, BandId right, Records& rec) {
    const Band L = Y.bands.at(left);
    const Band R = Y.bands.at(right);
    Scalar wl = L.width(), wr = R.width();
    if (!(L.at(Side::Bottom, wl) == R.at(Side::Bottom, Scalar(0))) ||
        !(L.at(Side::Top, wl) == R.at(Side::Top, Scalar(0))))
        throw MoveError("fuse: attaching maps do not continue");
    Segment lb = L.eff(Side::Bottom), rb = R.eff(Side::Bottom);
    Segment lt = L.eff(Side::Top), rt = R.eff(Side::Top);
    if (lb.edge != rb.edge || lt.edge != rt.edge || lb.fwd != rb.fwd || lt.fwd != rt.fwd)
        throw MoveError("fuse: bases not aligned");

    auto join = [&](const Pt& a, const Pt& b, const Scalar& len) {
        Segment s;
        s.edge = a.edge;
        s.len = len;
        if (a.off <= b.off) {
            s.start = a.off;
            s.fwd = true;
        } else {
            s.start = b.off;
            s.fwd = false;
        }
        return s;
    };
    Segment nbot = join(L.at(Side::Bottom, Scalar(0)), R.at(Side::Bottom, wr), wl + wr);
    Segment ntop = join(L.at(Side::Top, Scalar(0)), R.at(Side::Top, wr), wl + wr);

    Y.bands.erase(left);
    Y.bands.erase(right);
    BandId nid = Y.add_band(nbot, ntop, true);

    std::vector<int> destroyed{left, right};
    for (auto& [cid, cell] : Y.cells) {
        for (auto& reg : cell.regions) {
            if (!reg.path) continue;
            for (auto& st : reg.path->steps) {
                if (st.band == left) {
                    st.band = nid;
                } else if (st.band == right) {
                    st.band = nid;
                    st.enter = st.enter + wl;
                }
            }
        }
    }
    // subdivision cells that now join a fiber to itself are absorbed
    std::vector<CellId> drop;
    for (const auto& [cid, cell] : Y.cells) {
        if (cell.kind != CellKind::SubdivisionCell && cell.kind != CellKind::SubdivisionAnnulus)
            continue;
        if (cell.regions.size() != 2) continue;
        bool degenerate = true;
        for (const auto& reg : cell.regions) {
            if (!reg.path || reg.path->steps.size() != 1 ||
                reg.path->steps[0].band != nid || !(reg.path->steps[0].enter == wl))
                degenerate = false;
        }
        if (degenerate) drop.push_back(cid);
    }
    for (CellId c : drop) {
        Y.cells.erase(c);
        destroyed.push_back(c);
    }

    MoveRecord r;
    r.kind = MoveKind::Fold;
    r.note = "band-fuse";
    r.band = left;
    r.band2 = right;
    r.created = {nid};
    r.destroyed = destroyed;
    rec.push_back(std::move(r));
    return nid;
}

// ---------------------------------------------------------------------------
// (A1) normalization

void normalize_a1(BandComplex& Y, Records& rec) {
    while (!Y.graph.gluings().empty()) unglue_class(Y, 0, rec);
    bool acted = true;
    while (acted) {
        acted = false;
        auto blocks = compute_blocks(Y);
        std::map<EdgeId, std::vector<const Block*>> by_edge;
        for (const auto& b : blocks) by_edge[b.edge].push_back(&b);
        for (const auto& e : Y.graph.edges()) {
            auto it = by_edge.find(e.id);
            if (it == by_edge.end()) continue;
            for (const Block* b : it->second) {
                if (b->start.sign() > 0) {
                    cut_graph(Y, Pt{e.id, b->start}, rec);
                    acted = true;
                    break;
                }
                if (b->end < e.len) {
                    cut_graph(Y, Pt{e.id, b->end}, rec);
                    acted = true;
                    break;
                }
            }
            if (acted) break;
        }
    }
    Y.a1_suspended = false;
}

// ---------------------------------------------------------------------------
// replay

void apply_record(BandComplex& Y, const MoveRecord& r) {
    Records scratch;
    switch (r.kind) {
        case MoveKind::M2:
            subdivide_band(Y, r.band, r.x0, scratch);
            break;
        case MoveKind::M3:
            if (r.flag) {
                // unglue: locate the gluing class containing the endpoints
                for (size_t i = 0; i < Y.graph.gluings().size(); ++i) {
                    const auto& cls = Y.graph.gluings()[i];
                    bool match = false;
                    for (const auto& m : cls) {
                        Scalar off = m.side == 0 ? Scalar(0) : Y.graph.edge_len(m.edge);
                        for (const auto& reg : r.regions)
                            if (reg.pt && reg.pt->edge == m.edge && reg.pt->off == off)
                                match = true;
                    }
                    if (match) {
                        unglue_class(Y, i, scratch);
                        break;
                    }
                }
            } else {
                cut_graph(Y, r.pt, scratch);
            }
            break;
        case MoveKind::M4:
            slide(Y, {r.band, r.side == 0 ? Side::Bottom : Side::Top},
                  {r.band2, r.side2 == 0 ? Side::Bottom : Side::Top}, scratch);
            break;
        case MoveKind::M5:
            collapse_constituent(Y, r.band, r.side == 0 ? Side::Bottom : Side::Top, r.x0,
                                 r.x1, scratch);
            break;
        case MoveKind::M6:
            attach_band(Y, r.seg, r.seg2, r.flag, scratch);
            break;
        case MoveKind::M7:
            if (r.note == "extend")
                extend_edge(Y, r.seg.edge, r.x0, r.flag, scratch);
            else
                attach_arc(Y, r.seg.len, scratch);
            break;
        case MoveKind::M8:
            attach_cell(Y, static_cast<CellKind>(r.cell_kind), r.regions, scratch);
            break;
        case MoveKind::Fold:
            if (r.note == "edge-split")
                split_edge_glued(Y, r.pt.edge, r.pt.off, scratch);
            else if (r.note == "edge-identify")
                identify_edges(Y, r.seg2.edge, r.seg.edge, r.flag, scratch);
            else if (r.note == "glue")
                glue_ends(Y, {r.band, r.side}, {r.band2, r.side2}, scratch);
            else if (r.note == "band-merge")
                merge_bands(Y, r.band, r.side == 0 ? Side::Bottom : Side::Top, r.band2,
                            r.side2 == 0 ? Side::Bottom : Side::Top, scratch);
            else if (r.note == "band-fuse")
                fuse_bands(Y, r.band, r.band2, scratch);
            break;
        case MoveKind::M9:
        case MoveKind::M11:
        case MoveKind::CollapseWide:
        case MoveKind::CollapseGeneral:
            break;  // markers
    }
}

void apply_records(BandComplex& Y, const Records& rec) {
    for (const auto& r : rec) apply_record(Y, r);
}

}  // namespace ripsbox
