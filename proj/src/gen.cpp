#include "ripsbox/gen.hpp"

#include <random>
#include <sstream>

namespace ripsbox {

BandComplex gen_rotation(const Scalar& alpha) {
    if (!(alpha.sign() > 0) || !(alpha < Scalar(1)))
        throw MoveError("rotation parameter must lie in (0,1)");
    BandComplex Y;
    Y.d = alpha.disc();
    EdgeId e = Y.graph.add_edge(Scalar(1));
    Scalar one(1);
    Scalar beta = one - alpha;
    Y.add_band(Segment{e, Scalar(0), beta, true}, Segment{e, alpha, beta, true}, true);
    Y.add_band(Segment{e, beta, alpha, true}, Segment{e, Scalar(0), alpha, true}, true);
    return Y;
}

BandComplex gen_rot_rational(long long p, long long q) {
    return gen_rotation(Scalar(Rat(p, q)));
}

BandComplex gen_rot_quadratic(std::int64_t d, const Rat& a, const Rat& b) {
    return gen_rotation(Scalar(a, b, d));
}

BandComplex gen_iet(const std::vector<int>& perm, const std::vector<Scalar>& lens) {
    if (perm.size() != lens.size() || perm.empty()) throw MoveError("iet: bad data");
    size_t n = lens.size();
    Scalar total(0);
    for (const auto& l : lens) {
        if (l.sign() <= 0) throw MoveError("iet: lengths must be positive");
        total = total + l;
    }
    BandComplex Y;
    for (const auto& l : lens)
        if (!l.is_rational()) Y.d = l.disc();
    EdgeId e = Y.graph.add_edge(total);
    // bottom positions in order; top positions by permutation rank
    std::vector<Scalar> bot(n), top(n);
    Scalar x(0);
    for (size_t i = 0; i < n; ++i) {
        bot[i] = x;
        x = x + lens[i];
    }
    for (size_t i = 0; i < n; ++i) {
        Scalar y(0);
        for (size_t j = 0; j < n; ++j)
            if (perm[j] < perm[i]) y = y + lens[j];
        top[i] = y;
    }
    for (size_t i = 0; i < n; ++i)
        Y.add_band(Segment{e, bot[i], lens[i], true}, Segment{e, top[i], lens[i], true}, true);
    return Y;
}

BandComplex gen_itm(const std::vector<Scalar>& cuts, const std::vector<Scalar>& trans) {
    if (cuts.size() + 1 != trans.size()) throw MoveError("itm: need one translation per branch");
    BandComplex Y;
    for (const auto& s : cuts)
        if (!s.is_rational()) Y.d = s.disc();
    for (const auto& s : trans)
        if (!s.is_rational()) Y.d = s.disc();
    EdgeId e = Y.graph.add_edge(Scalar(1));
    Scalar prev(0);
    for (size_t i = 0; i < trans.size(); ++i) {
        Scalar next = (i < cuts.size()) ? cuts[i] : Scalar(1);
        if (!(prev < next)) throw MoveError("itm: cuts must increase");
        Scalar len = next - prev;
        Scalar dst = prev + trans[i];
        if (dst.sign() < 0 || dst + len > Scalar(1)) throw MoveError("itm: image leaves the edge");
        Y.add_band(Segment{e, prev, len, true}, Segment{e, dst, len, true}, true);
        prev = next;
    }
    return Y;
}

PairState gen_cover(const BandComplex& base, int degree,
                    const std::map<BandId, std::vector<int>>& plan) {
    if (degree < 1) throw MoveError("cover: degree must be positive");
    PairState P;
    P.dst = base;
    P.src.d = base.d;
    // sheet copies of every edge, grouped by sheet then base order
    std::map<std::pair<EdgeId, int>, EdgeId> copy_of;
    for (int s = 0; s < degree; ++s) {
        for (const auto& e : base.graph.edges()) {
            EdgeId c = P.src.graph.add_edge(e.len);
            copy_of[{e.id, s}] = c;
            P.iota.edges[c] = EdgeMap{c, Segment{e.id, Scalar(0), e.len, true}};
        }
    }
    for (const auto& [bid, b] : base.bands) {
        auto it = plan.find(bid);
        std::vector<int> sigma;
        if (it != plan.end()) {
            sigma = it->second;
        } else {
            for (int s = 0; s < degree; ++s) sigma.push_back(s);
        }
        if (static_cast<int>(sigma.size()) != degree)
            throw MoveError("cover: permutation size must equal the degree");
        for (int s = 0; s < degree; ++s) {
            Segment bb = b.bottom, tt = b.top;
            bb.edge = copy_of.at({b.bottom.edge, s});
            tt.edge = copy_of.at({b.top.edge, sigma[s]});
            BandId nb = P.src.add_band(bb, tt, b.orient);
            P.iota.bands[nb] = BandMap{nb, bid, Scalar(0), false};
        }
    }
    return P;
}

PairState gen_fig12_pair() {
    PairState P;
    // downstairs: one edge with a weight-0 annulus over it
    EdgeId t = P.dst.graph.add_edge(Scalar(1));
    BandId bp = P.dst.add_band(Segment{t, Scalar(0), Scalar(1), true},
                               Segment{t, Scalar(0), Scalar(1), true}, true);
    // upstairs: two edges, two weight-1 bands forming the connected double cover
    EdgeId s0 = P.src.graph.add_edge(Scalar(1));
    EdgeId s1 = P.src.graph.add_edge(Scalar(1));
    BandId b1 = P.src.add_band(Segment{s0, Scalar(0), Scalar(1), true},
                               Segment{s1, Scalar(0), Scalar(1), true}, true);
    BandId b2 = P.src.add_band(Segment{s1, Scalar(0), Scalar(1), true},
                               Segment{s0, Scalar(0), Scalar(1), true}, true);
    P.iota.edges[s0] = EdgeMap{s0, Segment{t, Scalar(0), Scalar(1), true}};
    P.iota.edges[s1] = EdgeMap{s1, Segment{t, Scalar(0), Scalar(1), true}};
    P.iota.bands[b1] = BandMap{b1, bp, Scalar(0), false};
    P.iota.bands[b2] = BandMap{b2, bp, Scalar(0), false};
    return P;
}

// ---------------------------------------------------------------------------
// thin search

namespace {

bool thin_signature(const MachineTrace& trace, const BandComplex& final) {
    if (trace.stats.size() < 60) return false;
    // every step Process I, complexity eventually constant, many I3 collapses,
    // widths far below the starting scale, and nothing terminated
    bool any_positive = false;
    for (const auto& [id, b] : final.bands)
        if (band_weight(b) != Weight::Zero) any_positive = true;
    if (!any_positive) return false;
    int i3 = 0;
    for (const auto& st : trace.stats) {
        if (st.process != "I") return false;
        if (st.kind && *st.kind == CollapseKind::I3) ++i3;
    }
    size_t n = trace.stats.size();
    const Rat cx = trace.stats[n / 2].complexity_after;
    if (cx.sign() <= 0) return false;
    for (size_t i = n / 2; i < n; ++i)
        if (!(trace.stats[i].complexity_after == cx)) return false;
    if (i3 < 50) return false;
    Scalar eps(Rat(1, BigInt(1) << 20));
    if (!(trace.stats.back().max_width < eps)) return false;
    return true;
}

}  // namespace

ThinSearchResult thin_search(std::uint64_t seed, int max_attempts, const Budgets& budgets) {
    ThinSearchResult res;
    std::ostringstream log;
    std::mt19937_64 rng(seed);

    // The enumeration covers small two- and three-branch interval translation
    // systems over Q(sqrt d). Purely rational systems always terminate (each
    // collapse removes at least 1/lcm of measure), so the grid is quadratic.
    const std::int64_t ds[] = {2, 3, 5};
    auto small_scalar = [&](std::int64_t d) {
        // (a + b sqrt d)/c with small a, b, c
        long long c = 1 + static_cast<long long>(rng() % 4);
        long long a = static_cast<long long>(rng() % (2 * c + 1));
        long long b = static_cast<long long>(rng() % 3) - 1;
        return Scalar(Rat(a, c), Rat(b, c), d);
    };

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::int64_t d = ds[rng() % 3];
        int branches = 2 + static_cast<int>(rng() % 2);
        std::vector<Scalar> cuts, trans;
        bool ok = true;
        // strictly increasing interior cuts
        std::vector<Scalar> cs;
        for (int i = 0; i + 1 < branches; ++i) {
            Scalar c = small_scalar(d);
            if (!(c.sign() > 0) || !(c < Scalar(1))) ok = false;
            cs.push_back(c);
        }
        std::sort(cs.begin(), cs.end());
        for (size_t i = 1; i < cs.size(); ++i)
            if (!(cs[i - 1] < cs[i])) ok = false;
        if (!ok) continue;
        cuts = cs;
        std::vector<Scalar> bounds = cuts;
        bounds.insert(bounds.begin(), Scalar(0));
        bounds.push_back(Scalar(1));
        for (int i = 0; i < branches; ++i) {
            Scalar lo = bounds[i], hi = bounds[i + 1];
            Scalar t = small_scalar(d) - small_scalar(d);
            if (lo + t < Scalar(0) || hi + t > Scalar(1)) {
                ok = false;
                break;
            }
            if (t.is_zero()) {
                ok = false;
                break;
            }
            trans.push_back(t);
        }
        if (!ok) continue;

        BandComplex Y;
        try {
            Y = gen_itm(cuts, trans);
        } catch (const MoveError&) {
            continue;
        }
        ValidationReport vr = validate_complex(Y, budgets.leaf_budget / 4);
        if (!vr.ok()) continue;

        // quick prefilter, then the full signature run
        Budgets pre = budgets;
        pre.max_steps = 30;
        pre.snapshot_every = 1000;
        RunResult quick = run_machine(Y, pre);
        bool survived = true;
        for (const auto& st : quick.trace.stats)
            if (st.process != "I") survived = false;
        bool still_positive = false;
        for (const auto& [id, b] : quick.final.bands)
            if (band_weight(b) != Weight::Zero) still_positive = true;
        if (!survived || !still_positive || static_cast<int>(quick.trace.stats.size()) < 30)
            continue;

        Budgets full = budgets;
        full.max_steps = 200;
        full.full_budget = true;
        full.snapshot_every = 50;
        RunResult rr;
        try {
            rr = run_machine(Y, full);
        } catch (...) {
            continue;
        }
        ++res.attempts;
        if (thin_signature(rr.trace, rr.final)) {
            res.found = true;
            res.complex = Y;
            log << "attempt " << attempt << ": accepted d=" << d << " branches=" << branches
                << "\n";
            res.log = log.str();
            return res;
        }
    }
    log << "exhausted " << max_attempts << " attempts without a thin signature\n";
    res.log = log.str();
    return res;
}

}  // namespace ripsbox
