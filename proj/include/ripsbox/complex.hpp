#pragma once

#include "ripsbox/geometry.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ripsbox {

enum class Side { Bottom = 0, Top = 1 };
inline Side other(Side s) { return s == Side::Bottom ? Side::Top : Side::Bottom; }
inline int side_index(Side s) { return s == Side::Bottom ? 0 : 1; }

enum class Weight { Zero, Half, One };
inline Rat weight_value(Weight w) {
    switch (w) {
        case Weight::Zero: return Rat(0);
        case Weight::Half: return Rat(1, 2);
        default: return Rat(1);
    }
}

struct BaseRef {
    BandId band{-1};
    Side side{Side::Bottom};
    bool operator==(const BaseRef& o) const = default;
    bool operator<(const BaseRef& o) const {
        return band != o.band ? band < o.band : side_index(side) < side_index(o.side);
    }
};

/// A band b x I attached along two length-equal bases. The fiber over
/// parameter t runs from bottom.at(t) to the effective top point: top.at(t)
/// when orientation-preserving, top.at(len - t) otherwise.
struct Band {
    BandId id{-1};
    Segment bottom;
    Segment top;
    bool orient{true};  // true = preserving

    const Scalar& width() const { return bottom.len; }
    const Segment& raw(Side s) const { return s == Side::Bottom ? bottom : top; }
    Segment& raw(Side s) { return s == Side::Bottom ? bottom : top; }
    /// Base with the parameterization actually used by the attaching map.
    Segment eff(Side s) const {
        if (s == Side::Bottom) return bottom;
        return orient ? top : top.reversed();
    }
    Pt at(Side s, const Scalar& t) const { return eff(s).at(t); }
    Scalar param(Side s, const Pt& p) const { return eff(s).param_of(p); }
    /// The band involution: p on base `s` maps to the matching point
    /// of the opposite base.
    Pt dual(Side s, const Pt& p) const { return at(other(s), param(s, p)); }
};

inline Weight band_weight(const Band& b) {
    Segment et = b.eff(Side::Top);
    if (et == b.bottom) return Weight::Zero;
    if (et == b.bottom.reversed()) return Weight::Half;
    return Weight::One;
}

enum class CellKind { Vertex, Arc, Disk, SubdivisionCell, SubdivisionAnnulus, Cone };

std::string cell_kind_name(CellKind k);
std::optional<CellKind> cell_kind_from(const std::string& s);

/// One vertical traversal of a leaf path: enter `band` at fiber parameter
/// `enter`, moving bottom-to-top when `up`.
struct PathStep {
    BandId band{-1};
    Scalar enter;
    bool up{true};
};

struct LeafPath {
    Pt start;
    std::vector<PathStep> steps;
};

/// An attaching region: either a point of the real graph or a leaf path.
struct Region {
    std::optional<Pt> pt;
    std::optional<LeafPath> path;

    static Region point(Pt p) { return Region{p, std::nullopt}; }
    static Region leaf(LeafPath lp) { return Region{std::nullopt, std::move(lp)}; }
};

struct CellEntry {
    CellId id{-1};
    CellKind kind{CellKind::Vertex};
    std::vector<Region> regions;
};

/// Closure of a connected component of the union of base interiors.
struct Block {
    EdgeId edge{-1};
    Scalar start, end;
    std::vector<BaseRef> bases;  // bases whose interior lies in this block

    Scalar len() const { return end - start; }
    bool contains_off(const Scalar& x) const { return x >= start && x <= end; }
};

/// Maximal chain of weight-1 bands whose junctions meet no other positive
/// weight base and carry no cell attaching region.
struct GeneralizedBand {
    std::vector<BandId> bands;      // bottom to top
    std::vector<bool> link_flip;    // parameter reversal across junction i -> i+1
    Segment bottom;                 // effective bottom base of the chain
    Segment top;                    // effective top base of the chain

    int length() const { return static_cast<int>(bands.size()); }
    const Scalar& width() const { return bottom.len; }
    BandId key() const { return bands.front(); }
};

struct LeafReport {
    bool closed{false};
    int traversals{0};
    std::vector<Pt> visited;
    int direction_count{0};
};

struct IndexReport {
    int index{0};
    bool certified{false};
    int directions_total{0};
    int directions_infinite{0};
};

struct ValidationIssue {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    bool a1{false};
    bool a1_suspended{false};
    bool structure_ok{false};
    bool cells_ok{false};
    std::vector<std::string> a2_suspects;  // budgeted heuristic, flagged
    std::vector<ValidationIssue> issues;

    bool ok() const { return structure_ok && cells_ok && (a1 || a1_suspended); }
};

struct FreeSubarc {
    BaseRef base;
    Segment arc;            // subarc of the base on the graph
    Scalar t0, t1;          // parameter interval within the effective base
    enum class Kind { Isolated, SemiIsolated, Other } kind{Kind::Other};
};

/// The rewriting state: real graph + band table + cell ledger over one
/// quadratic field. Snapshots are value types; moves return new snapshots.
class BandComplex {
public:
    RealGraph graph;
    std::map<BandId, Band> bands;
    std::map<CellId, CellEntry> cells;
    std::int64_t d{0};
    bool a1_suspended{false};

    BandId add_band(Segment bottom, Segment top, bool orient) {
        BandId id = next_band_id++;
        bands[id] = Band{id, std::move(bottom), std::move(top), orient};
        return id;
    }
    CellId add_cell(CellKind kind, std::vector<Region> regions) {
        CellId id = next_cell_id++;
        cells[id] = CellEntry{id, kind, std::move(regions)};
        return id;
    }
    const Band& band(BandId b) const { return bands.at(b); }

    std::vector<BaseRef> base_refs(bool positive_only = false) const;
    Weight weight_of(BandId b) const { return band_weight(bands.at(b)); }

    int next_band_id{0};
    int next_cell_id{0};
};

// ---- queries ----

std::vector<Block> compute_blocks(const BandComplex& Y);
Rat complexity(const BandComplex& Y);
Rat block_complexity(const Block& blk, const BandComplex& Y);

/// Component partition of the underlying union of bands: sets of edge ids
/// connected through bands (and gluings while in a forest state), ordered by
/// smallest edge position in the graph order.
std::vector<std::vector<EdgeId>> components(const BandComplex& Y);

std::vector<FreeSubarc> find_free_subarcs(const BandComplex& Y);
std::vector<FreeSubarc> find_free_subarcs(const BandComplex& Y,
                                          const std::set<EdgeId>& restrict_edges);

std::vector<GeneralizedBand> compute_generalized_bands(const BandComplex& Y);
/// Generalized band containing a given weight-1 band, if any.
std::optional<GeneralizedBand> generalized_band_of(const BandComplex& Y, BandId b);

LeafReport explore_leaf(const BandComplex& Y, const Pt& p, int budget,
                        bool skip_weight0 = false);
bool leafmates(const BandComplex& Y, const Pt& p, const Pt& q, int budget);

/// All representations of a point (itself plus glued partners) and the
/// canonical one; identity outside forest states.
std::vector<Pt> pt_class(const BandComplex& Y, const Pt& p);
Pt canonical_pt(const BandComplex& Y, const Pt& p);

IndexReport index_at(const BandComplex& Y, const Pt& q, int budget);

ValidationReport validate_complex(const BandComplex& Y, int leaf_budget = 2000);

/// Chain dual map along a generalized band: point on one end base to the
/// matching point of the other end base.
Pt generalized_dual(const BandComplex& Y, const GeneralizedBand& gb, Side from, const Pt& p);
Segment generalized_dual_arc(const BandComplex& Y, const GeneralizedBand& gb, Side from,
                             const Segment& arc);

/// Deterministic canonical fingerprint of one component: scale-free
/// combinatorial key plus the exact length ray, used for periodicity
/// detection up to projective rescaling.
struct CanonicalState {
    std::string key;
    std::vector<Scalar> ray;
    std::vector<EdgeId> edge_order;  // component edges in canonical order
};
CanonicalState canonical_state(const BandComplex& Y, const std::vector<EdgeId>& component);
bool projectively_equal(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

}  // namespace ripsbox
