#include "ripsbox/machine.hpp"

#include <algorithm>

namespace ripsbox {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Simplicial: return "simplicial";
        case Verdict::Surface: return "surface";
        case Verdict::Toral: return "toral";
        case Verdict::Thin: return "thin";
        case Verdict::BudgetExhausted: return "budget-exhausted";
    }
    return "budget-exhausted";
}

std::map<BandId, std::set<BandId>> step_ancestry(const BandComplex& before,
                                                 const Records& records) {
    std::map<BandId, std::set<BandId>> anc;
    for (const auto& [id, b] : before.bands) anc[id] = {id};
    for (const auto& r : records) {
        switch (r.kind) {
            case MoveKind::M2:
                if (r.created.size() >= 2 && !r.destroyed.empty()) {
                    auto src = anc[r.destroyed.front()];
                    anc[r.created[0]] = src;
                    anc[r.created[1]] = src;
                    anc.erase(r.destroyed.front());
                }
                break;
            case MoveKind::M5:
                if (!r.destroyed.empty()) {
                    auto src = anc[r.destroyed.front()];
                    for (int c : r.created) anc[c] = src;
                    anc.erase(r.destroyed.front());
                }
                break;
            case MoveKind::M6:
                if (!r.created.empty()) anc[r.created.front()] = {};
                break;
            case MoveKind::Fold:
                if (r.note == "band-merge") {
                    anc[r.band].insert(anc[r.band2].begin(), anc[r.band2].end());
                    anc.erase(r.band2);
                }
                break;
            default:
                break;
        }
    }
    return anc;
}

namespace {

std::set<EdgeId> component_edges(const BandComplex& Y, const std::vector<EdgeId>& comp) {
    return std::set<EdgeId>(comp.begin(), comp.end());
}

bool has_positive_band(const BandComplex& Y, const std::set<EdgeId>& edges) {
    for (const auto& [id, b] : Y.bands)
        if (edges.count(b.bottom.edge) && band_weight(b) != Weight::Zero) return true;
    return false;
}

int positive_genband_count(const BandComplex& Y, const std::set<EdgeId>& edges) {
    int n = 0;
    for (const auto& gb : compute_generalized_bands(Y))
        if (edges.empty() || edges.count(gb.bottom.edge)) ++n;
    // weight-1/2 bands count as their own generalized bands
    for (const auto& [id, b] : Y.bands)
        if (band_weight(b) == Weight::Half && (edges.empty() || edges.count(b.bottom.edge))) ++n;
    return n;
}

Scalar max_band_width(const BandComplex& Y, const std::set<EdgeId>& edges) {
    Scalar m(0);
    for (const auto& [id, b] : Y.bands) {
        if (!edges.empty() && !edges.count(b.bottom.edge)) continue;
        if (band_weight(b) == Weight::Zero) continue;
        m = max(m, b.width());
    }
    return m;
}

/// Generalized-band view used for image tracking: weight-1 chains plus
/// weight-1/2 singletons.
struct UnitView {
    std::vector<BandId> bands;
    int length;
};

std::vector<UnitView> unit_views(const BandComplex& Y) {
    std::vector<UnitView> out;
    for (const auto& gb : compute_generalized_bands(Y))
        out.push_back({gb.bands, gb.length()});
    for (const auto& [id, b] : Y.bands)
        if (band_weight(b) == Weight::Half) out.push_back({{id}, 1});
    return out;
}

bool step_is_increasing(const BandComplex& before, const BandComplex& after,
                        const Records& records) {
    auto anc = step_ancestry(before, records);
    auto units_before = unit_views(before);
    auto units_after = unit_views(after);
    std::map<BandId, int> unit_of_before;
    for (size_t i = 0; i < units_before.size(); ++i)
        for (BandId b : units_before[i].bands) unit_of_before[b] = static_cast<int>(i);
    for (const auto& ua : units_after) {
        std::set<int> ancestors;
        for (BandId b : ua.bands) {
            auto it = anc.find(b);
            if (it == anc.end()) continue;
            for (BandId ob : it->second) {
                auto u = unit_of_before.find(ob);
                if (u != unit_of_before.end()) ancestors.insert(u->second);
            }
        }
        for (int ui : ancestors)
            if (ua.length > units_before[ui].length) return true;
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Process I

StepOutcome process_I_step(BandComplex& Y, const std::vector<EdgeId>& component) {
    StepOutcome out;
    out.process = "I";
    auto edges = component_edges(Y, component);
    auto frees = find_free_subarcs(Y, edges);
    if (frees.empty()) return out;

    auto pick_rank = [](const FreeSubarc& f) {
        switch (f.kind) {
            case FreeSubarc::Kind::Isolated: return 0;
            case FreeSubarc::Kind::SemiIsolated: return 1;
            default: return 2;
        }
    };
    const FreeSubarc* best = &frees.front();
    for (const auto& f : frees) {
        if (pick_rank(f) < pick_rank(*best)) best = &f;
    }
    switch (best->kind) {
        case FreeSubarc::Kind::Isolated: out.kind = CollapseKind::I1; break;
        case FreeSubarc::Kind::SemiIsolated: out.kind = CollapseKind::I2; break;
        default: out.kind = CollapseKind::I3; break;
    }
    collapse_from_free_subarc(Y, *best, out.records);
    out.acted = true;
    return out;
}

// ---------------------------------------------------------------------------
// Process II

namespace {

std::vector<IIUnit> unit_end_bases(const BandComplex& Y) {
    std::vector<IIUnit> out;
    for (const auto& gb : compute_generalized_bands(Y)) {
        if (gb.bottom.same_arc(gb.top)) continue;  // cycle-degenerate, weight 0 as a unit
        out.push_back({gb.bands, Side::Bottom, gb.bottom, false});
        out.push_back({gb.bands, Side::Top, gb.top, false});
    }
    for (const auto& [id, b] : Y.bands) {
        if (band_weight(b) != Weight::Half) continue;
        out.push_back({{id}, Side::Bottom, b.bottom, true});
    }
    std::sort(out.begin(), out.end(), [](const IIUnit& a, const IIUnit& b) {
        if (a.end_band() != b.end_band()) return a.end_band() < b.end_band();
        return side_index(a.side) < side_index(b.side);
    });
    return out;
}

int edge_order_index(const BandComplex& Y, EdgeId e) {
    int i = 0;
    for (const auto& ed : Y.graph.edges()) {
        if (ed.id == e) return i;
        ++i;
    }
    return -1;
}

Pt ii_unit_dual(const BandComplex& Y, const IIUnit& u, const Pt& p) {
    GeneralizedBand gb;
    gb.bands = u.chain;
    return generalized_dual(Y, gb, u.side, p);
}

}  // namespace

std::optional<IIPlan> plan_process_II(const BandComplex& Y,
                                      const std::vector<EdgeId>& component) {
    auto edges = component_edges(Y, component);
    EdgeId first = -1;
    for (const auto& e : Y.graph.edges()) {
        if (edges.count(e.id)) {
            first = e.id;
            break;
        }
    }
    if (first < 0) return std::nullopt;
    IIPlan plan;
    plan.z = Pt{first, Scalar(0)};

    auto units = unit_end_bases(Y);
    // the longest base of positive weight containing z, weight 1 if possible
    bool have_one = false;
    for (const auto& u : units)
        if (!u.mobius && u.arc.contains(plan.z)) have_one = true;
    const IIUnit* carrier = nullptr;
    for (const auto& u : units) {
        if (!u.arc.contains(plan.z)) continue;
        if (have_one && u.mobius) continue;
        if (!carrier || u.arc.len > carrier->arc.len) carrier = &u;
    }
    if (!carrier) return std::nullopt;
    plan.carrier = *carrier;

    for (const auto& u : units) {
        if (!plan.carrier.arc.contains_seg(u.arc)) continue;
        bool own = false;
        for (BandId cb : plan.carrier.chain)
            for (BandId xb : u.chain)
                if (cb == xb) own = true;
        if (own) continue;
        // midpoint displacement test in the linear order
        Scalar mid = u.arc.start + u.arc.len / Scalar(2);
        Pt old_pos{u.arc.edge, mid};
        Pt new_pos = ii_unit_dual(Y, plan.carrier, old_pos);
        int oi = edge_order_index(Y, old_pos.edge), ni = edge_order_index(Y, new_pos.edge);
        bool away = (ni > oi) || (ni == oi && new_pos.off > old_pos.off);
        if (away) plan.slides.push_back(u);
    }
    return plan;
}

void execute_ii_slide(BandComplex& Y, const IIPlan& plan, const IIUnit& u, Records& rec) {
    std::vector<BandId> orderv = plan.carrier.chain;
    if (plan.carrier.side == Side::Top) std::reverse(orderv.begin(), orderv.end());
    auto slide_ref = [&](BaseRef moving) {
        for (BandId cpid : orderv) slide(Y, moving, {cpid, plan.carrier.side}, rec);
    };
    BandId eb = u.end_band();
    if (u.mobius) {
        slide_ref({eb, Side::Bottom});
        slide_ref({eb, Side::Top});
    } else {
        slide_ref({eb, u.side});
    }
}

std::optional<FreeSubarc> ii_initial_free(const BandComplex& Y, const IIPlan& plan,
                                          const std::vector<EdgeId>& component) {
    auto edges = component_edges(Y, component);
    auto frees = find_free_subarcs(Y, edges);
    BandId end_band = plan.carrier.end_band();
    for (const auto& f : frees) {
        if (f.base.band != end_band) continue;
        if (!(f.arc.edge == plan.z.edge)) continue;
        if (!(f.arc.start == plan.z.off)) continue;
        return f;
    }
    return std::nullopt;
}

StepOutcome process_II_step(BandComplex& Y, const std::vector<EdgeId>& component) {
    StepOutcome out;
    out.process = "II";
    auto plan = plan_process_II(Y, component);
    if (!plan) return out;
    for (const auto& u : plan->slides) execute_ii_slide(Y, *plan, u, out.records);
    auto initial = ii_initial_free(Y, *plan, component);
    if (!initial) throw MoveError("process II: no free initial segment after slides");
    collapse_from_free_subarc(Y, *initial, out.records);
    out.kind = std::nullopt;
    out.acted = true;
    return out;
}

// ---------------------------------------------------------------------------
// the driver

RunResult run_machine(const BandComplex& Y0, const Budgets& budgets) {
    RunResult res;
    res.trace.initial = Y0;
    BandComplex Y = Y0;

    int step = 0;
    // recurrence bookkeeping per canonical key
    struct Seen {
        int step;
        std::vector<Scalar> ray;
        std::string process;
    };
    std::map<std::string, std::vector<Seen>> seen;

    auto comps = components(Y);
    std::vector<std::set<EdgeId>> pending;
    for (auto& c : comps) pending.push_back(std::set<EdgeId>(c.begin(), c.end()));
    size_t comp_order = 0;

    while (!pending.empty()) {
        std::set<EdgeId> cur = pending.front();
        pending.erase(pending.begin());
        bool component_done = false;
        while (!component_done) {
            // drop edges that no longer exist
            std::set<EdgeId> alive;
            for (EdgeId e : cur)
                if (Y.graph.has_edge(e)) alive.insert(e);
            cur = alive;
            if (cur.empty()) break;

            if (!has_positive_band(Y, cur)) break;  // static: simplicial regime

            if (step >= budgets.max_steps) {
                res.trace.budget_exhausted = true;
                res.trace.stop_reason = "max-steps";
                component_done = true;
                break;
            }

            BandComplex before = Y;
            std::vector<EdgeId> comp_vec(cur.begin(), cur.end());
            StepOutcome so;
            try {
                so = process_I_step(Y, comp_vec);
                if (!so.acted) so = process_II_step(Y, comp_vec);
            } catch (const MoveError& e) {
                res.trace.stop_reason = std::string("stalled: ") + e.what();
                component_done = true;
                break;
            }
            if (!so.acted) break;

            ++step;
            for (auto& r : so.records) res.trace.records.push_back({step, r});
            res.trace.ancestry[step] = step_ancestry(before, so.records);

            // track the component's surviving and newly created edges
            std::set<EdgeId> next = cur;
            for (const auto& r : so.records)
                for (const auto& m : r.reloc.maps)
                    if (next.count(m.src)) next.insert(m.dst);
            std::set<EdgeId> next_alive;
            for (EdgeId e : next)
                if (Y.graph.has_edge(e)) next_alive.insert(e);
            cur = next_alive;

            StepStat st;
            st.step = step;
            st.process = so.process;
            st.kind = so.kind;
            st.complexity_before = complexity(before);
            st.complexity_after = complexity(Y);
            st.genband_count = positive_genband_count(Y, cur);
            st.delta_bands =
                st.genband_count - positive_genband_count(before, component_edges(before, comp_vec));
            st.max_width = max_band_width(Y, cur);
            st.increasing = step_is_increasing(before, Y, so.records);

            // canonical state and recurrence detection
            if (!cur.empty()) {
                std::vector<EdgeId> cv(cur.begin(), cur.end());
                CanonicalState cs = canonical_state(Y, cv);
                st.canon_key = cs.key;
                auto& hist = seen[cs.key];
                for (const auto& h : hist) {
                    if (projectively_equal(h.ray, cs.ray)) {
                        Recurrence rc;
                        rc.first_step = h.step;
                        rc.second_step = step;
                        rc.process = so.process;
                        // contraction factor from the reference entries
                        for (size_t i = 0; i < cs.ray.size(); ++i) {
                            if (!h.ray[i].is_zero()) {
                                rc.ratio = cs.ray[i] / h.ray[i];
                                break;
                            }
                        }
                        res.trace.recurrences.push_back(rc);
                        break;
                    }
                }
                bool had_rec = !res.trace.recurrences.empty() &&
                               res.trace.recurrences.back().second_step == step;
                hist.push_back({step, cs.ray, so.process});
                res.trace.stats.push_back(st);
                if ((step % budgets.snapshot_every) == 0 || had_rec) {
                    if (static_cast<int>(res.trace.snapshots.size()) < budgets.max_snapshots)
                        res.trace.snapshots[step] = Y;
                }
                if (had_rec && so.process == "II" && !budgets.full_budget) {
                    component_done = true;  // surface/toral regime certified
                }
            } else {
                res.trace.stats.push_back(st);
            }

            // the component may have split; requeue the pieces
            if (!cur.empty()) {
                auto now = components(Y);
                std::vector<std::set<EdgeId>> touching;
                for (auto& c : now) {
                    std::set<EdgeId> cs(c.begin(), c.end());
                    for (EdgeId e : cur)
                        if (cs.count(e)) {
                            touching.push_back(cs);
                            break;
                        }
                }
                if (touching.size() == 1) {
                    cur = touching.front();
                } else if (touching.size() > 1) {
                    cur = touching.front();
                    for (size_t i = 1; i < touching.size(); ++i)
                        pending.insert(pending.begin(), touching[i]);
                } else {
                    break;  // fully collapsed away
                }
            }
        }
        ++comp_order;
        if (res.trace.budget_exhausted) break;
    }
    (void)comp_order;

    res.trace.snapshots[step] = Y;
    res.final = Y;
    if (res.trace.stop_reason.empty())
        res.trace.stop_reason = res.trace.budget_exhausted ? "max-steps" : "stabilized";
    return res;
}

// ---------------------------------------------------------------------------
// classification

namespace {

std::vector<Pt> sample_interior_points(const BandComplex& Y, const std::set<EdgeId>& edges) {
    std::vector<Pt> pts;
    for (const auto& [id, b] : Y.bands) {
        if (band_weight(b) == Weight::Zero) continue;
        if (!edges.empty() && !edges.count(b.bottom.edge)) continue;
        const Segment& s = b.bottom;
        pts.push_back(Pt{s.edge, s.start + s.len / Scalar(2)});
        pts.push_back(Pt{s.edge, s.start + s.len / Scalar(4)});
    }
    return pts;
}

}  // namespace

ClassificationReport classify_component(const MachineTrace& trace, const BandComplex& final,
                                        int component_index, const Budgets& budgets) {
    ClassificationReport rep;
    rep.component_index = component_index;

    auto comps = components(final);
    std::set<EdgeId> edges;
    if (component_index < static_cast<int>(comps.size()))
        edges = std::set<EdgeId>(comps[component_index].begin(), comps[component_index].end());

    if (!has_positive_band(final, edges)) {
        rep.verdict = Verdict::Simplicial;
        // cross-check with a leaf table on the initial complex
        bool all_closed = true;
        for (const auto& [id, b] : trace.initial.bands) {
            if (band_weight(b) == Weight::Zero) continue;
            for (const Scalar& t : {Scalar(0), b.width()}) {
                LeafReport lr = explore_leaf(trace.initial, b.at(Side::Bottom, t),
                                             budgets.leaf_budget);
                if (!lr.closed) all_closed = false;
            }
        }
        rep.certified = true;
        rep.certificate = all_closed ? "machine-terminated; all boundary-fiber leaves compact"
                                     : "machine-terminated; some initial leaves exceeded budget";
        return rep;
    }

    // the surviving regime: inspect the recorded recurrences and tail stats
    const Recurrence* rec_ii = nullptr;
    const Recurrence* rec_i = nullptr;
    for (const auto& rc : trace.recurrences) {
        if (rc.process == "II" && !rec_ii) rec_ii = &rc;
        if (rc.process == "I" && !rec_i) rec_i = &rc;
    }

    if (rec_ii) {
        // surface vs toral by positive-index witnesses at the recurrent states
        bool witnesses = false;
        auto probe = [&](const BandComplex& Yp) {
            int found = 0;
            for (const auto& p : sample_interior_points(Yp, {})) {
                IndexReport ir = index_at(Yp, p, budgets.leaf_budget);
                if (ir.index > 0) ++found;
            }
            return found;
        };
        int w1 = 0, w2 = 0;
        auto s1 = trace.snapshots.find(rec_ii->first_step);
        auto s2 = trace.snapshots.find(rec_ii->second_step);
        if (s1 != trace.snapshots.end()) w1 = probe(s1->second);
        if (s2 != trace.snapshots.end()) w2 = probe(s2->second);
        witnesses = (w1 > 0 && w2 > 0);
        rep.verdict = witnesses ? Verdict::Toral : Verdict::Surface;
        rep.certified = true;
        rep.certificate = "process-II recurrence at steps " +
                          std::to_string(rec_ii->first_step) + "->" +
                          std::to_string(rec_ii->second_step);
        if (!witnesses)
            rep.notes.push_back(
                "rank-2 toral systems present index 0 everywhere; surface verdict is "
                "torus-compatible");
        else
            rep.notes.push_back("positive-index witnesses persist at both recurrent states");
        return rep;
    }

    // Process I persistence: the thin signature
    std::vector<const StepStat*> tail;
    int n = static_cast<int>(trace.stats.size());
    for (int i = std::max(0, n - std::max(10, n / 4)); i < n; ++i) tail.push_back(&trace.stats[i]);
    bool all_I = !tail.empty();
    for (const auto* st : tail) all_I = all_I && st->process == "I";
    bool const_cx = true;
    for (size_t i = 1; i < tail.size(); ++i)
        const_cx = const_cx && tail[i]->complexity_after == tail[0]->complexity_after;
    bool width_decays = tail.size() >= 2 && tail.back()->max_width < tail.front()->max_width;
    int increasing_count = 0, i3_count = 0;
    for (const auto* st : tail) {
        if (st->increasing) ++increasing_count;
        if (st->kind && *st->kind == CollapseKind::I3) ++i3_count;
    }

    if (all_I && const_cx && width_decays && increasing_count >= 1) {
        rep.verdict = Verdict::Thin;
        rep.certified = rec_i != nullptr;
        rep.certificate = "process-I persistence: constant complexity " +
                          tail[0]->complexity_after.str() + ", " + std::to_string(i3_count) +
                          " I3-collapses and " + std::to_string(increasing_count) +
                          " increasing collapses in the tail, widths decaying";
        if (rec_i)
            rep.notes.push_back("projective recurrence of the process-I state at steps " +
                                std::to_string(rec_i->first_step) + "->" +
                                std::to_string(rec_i->second_step));
        return rep;
    }

    rep.verdict = Verdict::BudgetExhausted;
    rep.certificate = "no regime certified within budget";
    return rep;
}

std::vector<ClassificationReport> classify_all(const MachineTrace& trace,
                                               const BandComplex& final,
                                               const Budgets& budgets) {
    std::vector<ClassificationReport> out;
    auto comps = components(final);
    for (size_t i = 0; i < comps.size(); ++i)
        out.push_back(classify_component(trace, final, static_cast<int>(i), budgets));
    return out;
}

// ---------------------------------------------------------------------------
// thin structure

ThinAnalysis thin_analysis(const MachineTrace& trace, int from_step, int to_step) {
    ThinAnalysis ta;
    auto itf = trace.snapshots.find(from_step);
    auto itt = trace.snapshots.find(to_step);
    if (itf == trace.snapshots.end() || itt == trace.snapshots.end())
        throw MoveError("thin_analysis: snapshots not retained for the window");
    const BandComplex& Yf = itf->second;
    const BandComplex& Yt = itt->second;

    // compose ancestry across the window
    std::map<BandId, std::set<BandId>> anc;
    for (const auto& [id, b] : Yt.bands) anc[id] = {id};
    for (int s = to_step; s > from_step; --s) {
        auto it = trace.ancestry.find(s);
        if (it == trace.ancestry.end()) continue;
        const auto& stepanc = it->second;
        for (auto& [nid, set0] : anc) {
            std::set<BandId> up;
            for (BandId mid : set0) {
                auto f = stepanc.find(mid);
                if (f != stepanc.end())
                    up.insert(f->second.begin(), f->second.end());
                else
                    up.insert(mid);
            }
            set0 = std::move(up);
        }
    }

    auto gb_from = compute_generalized_bands(Yf);
    auto gb_to = compute_generalized_bands(Yt);
    std::map<BandId, int> from_unit;
    for (size_t i = 0; i < gb_from.size(); ++i)
        for (BandId b : gb_from[i].bands) from_unit[b] = static_cast<int>(i);

    int shorts = 0, longs = 0;
    std::optional<int> Ls, minlong;
    std::set<int> used_from;
    bool bij = true;
    std::set<BandId> short_keys;
    for (const auto& g : gb_to) {
        std::set<int> ancestors;
        for (BandId b : g.bands) {
            auto it = anc.find(b);
            if (it == anc.end()) continue;
            for (BandId ob : it->second) {
                auto u = from_unit.find(ob);
                if (u != from_unit.end()) ancestors.insert(u->second);
            }
        }
        ThinBandInfo info;
        info.key = g.key();
        info.length = g.length();
        info.width = g.width();
        bool is_short = ancestors.size() == 1 &&
                        gb_from[*ancestors.begin()].length() == g.length();
        info.is_short = is_short;
        if (is_short) {
            ++shorts;
            short_keys.insert(g.key());
            if (!Ls || g.length() > *Ls) Ls = g.length();
            if (used_from.count(*ancestors.begin())) bij = false;
            used_from.insert(*ancestors.begin());
        } else {
            ++longs;
            if (!minlong || g.length() < *minlong) minlong = g.length();
        }
        ta.bands.push_back(info);
    }
    ta.short_count = shorts;
    ta.long_count = longs;
    ta.max_short_length = Ls;
    ta.min_long_length = minlong;
    ta.bijection_ok = bij;

    // e-point approximations: connected components of the union of bases
    {
        std::map<EdgeId, std::vector<std::pair<Scalar, Scalar>>> ivs;
        for (const auto& g : gb_to) {
            ivs[g.bottom.edge].push_back({g.bottom.start, g.bottom.end()});
            ivs[g.top.edge].push_back({g.top.start, g.top.end()});
        }
        for (auto& [e, v] : ivs) {
            std::sort(v.begin(), v.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            size_t i = 0;
            while (i < v.size()) {
                Scalar lo = v[i].first, hi = v[i].second;
                size_t j = i + 1;
                while (j < v.size() && v[j].first <= hi) {
                    hi = max(hi, v[j].second);
                    ++j;
                }
                ta.e_point_intervals.push_back({e, lo});
                i = j;
            }
        }
    }

    // islands: components of (short bands + the blocks they meet); remaining
    // blocks hold e-points and count as contractible type-2 islands
    auto blocks = compute_blocks(Yt);
    auto block_idx_of = [&](const Segment& arc) {
        for (size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].edge == arc.edge && blocks[i].start <= arc.start &&
                arc.end() <= blocks[i].end)
                return static_cast<int>(i);
        return -1;
    };
    std::map<int, std::set<BandId>> block_to_shorts;
    std::map<BandId, std::vector<int>> short_blocks;
    for (const auto& g : gb_to) {
        if (!short_keys.count(g.key())) continue;
        int bi = block_idx_of(g.bottom), ti = block_idx_of(g.top);
        if (bi >= 0) block_to_shorts[bi].insert(g.key());
        if (ti >= 0) block_to_shorts[ti].insert(g.key());
        short_blocks[g.key()] = {bi, ti};
    }
    std::set<BandId> unseen = short_keys;
    std::set<int> blocks_used;
    while (!unseen.empty()) {
        Island isl;
        isl.type = 1;
        std::vector<BandId> stack{*unseen.begin()};
        while (!stack.empty()) {
            BandId s = stack.back();
            stack.pop_back();
            if (!unseen.count(s)) continue;
            unseen.erase(s);
            isl.short_bands.push_back(s);
            for (int bi : short_blocks[s]) {
                if (bi < 0 || blocks_used.count(bi)) continue;
                blocks_used.insert(bi);
                isl.blocks.push_back({blocks[bi].edge, blocks[bi].start});
                for (BandId nb : block_to_shorts[bi]) stack.push_back(nb);
            }
        }
        std::sort(isl.short_bands.begin(), isl.short_bands.end());
        ta.islands.push_back(isl);
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks_used.count(static_cast<int>(i))) continue;
        Island isl;
        isl.type = 2;
        isl.blocks.push_back({blocks[i].edge, blocks[i].start});
        ta.islands.push_back(isl);
    }
    return ta;
}

// ---------------------------------------------------------------------------
// shortening

ShorteningReport shortening_report(const MachineTrace& trace,
                                   const std::vector<ShortLoopGenerator>& gens, int k) {
    ShorteningReport rep;
    const Recurrence* window = nullptr;
    for (const auto& rc : trace.recurrences)
        if (rc.process == "I") {
            window = &rc;
            break;
        }
    if (!window) throw MoveError("shortening: no periodic window detected in the trace");
    if (k < 1) throw MoveError("shortening: k must be positive");
    int period = window->second_step - window->first_step;
    int last_needed = window->first_step + k * period;
    int max_step = trace.stats.empty() ? 0 : trace.stats.back().step;
    if (last_needed > max_step)
        throw MoveError("shortening: requested k exceeds the recorded trace");

    Scalar lam = window->ratio;
    if (!(lam.sign() > 0) || !(lam < Scalar(1)))
        throw MoveError("shortening: window ratio is not a contraction");
    rep.ratio = lam;
    rep.windows_used = k;

    Scalar lam_k(1);
    std::vector<Scalar> lam_pows;
    for (int j = 1; j <= k; ++j) {
        lam_k = lam_k * lam;
        lam_pows.push_back(lam_k);
    }

    Scalar before_total(0), after_total(0);
    for (const auto& g : gens) {
        Scalar exc(0);
        for (const auto& s : g.excursions) exc = exc + s.len;
        Scalar before = exc + g.complement_measure;
        Scalar after = exc * lam_k + g.complement_measure;
        rep.rows.push_back({g.name, before, after});
        before_total = before_total + before;
        after_total = after_total + after;
    }
    for (int j = 0; j < k; ++j) {
        Scalar t(0);
        for (const auto& g : gens) {
            Scalar exc(0);
            for (const auto& s : g.excursions) exc = exc + s.len;
            t = t + exc * lam_pows[j] + g.complement_measure;
        }
        rep.window_totals.push_back(t);
    }
    rep.shortened = after_total < before_total;
    return rep;
}

}  // namespace ripsbox
