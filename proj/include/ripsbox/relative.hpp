#pragma once

#include "ripsbox/machine.hpp"

namespace ripsbox {

/// Graph part of a morphism: each source edge maps isometrically onto a
/// segment of one target edge (finer subdivisions are normalized away at
/// load time by subdividing source edges).
struct EdgeMap {
    EdgeId src{-1};
    Segment image;  // image.len == len(src); image.fwd gives the direction
};

/// Band part: the source band maps homeomorphically into the target band,
/// bottom to bottom and top to top; fiber parameter t of the source goes to
/// off + t, or off + (w - t) when flipped.
struct BandMap {
    BandId src{-1};
    BandId dst{-1};
    Scalar off;
    bool flip{false};
};

struct Morphism {
    std::map<EdgeId, EdgeMap> edges;
    std::map<BandId, BandMap> bands;
    std::map<CellId, CellId> cells;

    Pt map_pt(const Pt& p) const {
        const EdgeMap& em = edges.at(p.edge);
        return em.image.at(p.off);
    }
    std::optional<Segment> map_seg(const Segment& s) const {
        auto it = edges.find(s.edge);
        if (it == edges.end()) return std::nullopt;
        Pt a = it->second.image.at(s.start);
        Pt b = it->second.image.at(s.end());
        Scalar lo = min(a.off, b.off);
        bool f = s.fwd == it->second.image.fwd;
        return Segment{a.edge, lo, s.len, f};
    }
};

enum class MorphismGrade { None, Immersion, GraphLike, PartialCover, AlmostPartialCover,
                           LocalIsomorphism };
std::string grade_name(MorphismGrade g);

struct GradeReport {
    bool structurally_valid{false};
    bool graph_immersion{false};
    bool immersion{false};
    bool submersion{false};
    bool graph_like{false};
    bool partial_cover{false};
    bool almost_partial_cover{false};
    bool almost_certified{false};  // limit-set membership is budget-checked
    bool local_isomorphism{false};
    std::optional<int> degree;  // constant fiber cardinality when local iso
    MorphismGrade grade{MorphismGrade::None};
    std::vector<std::string> issues;
};

struct PairState {
    BandComplex src;
    BandComplex dst;
    Morphism iota;

    /// pre-weight 0 and pre-weight 1/2 bands: weight-1 source generalized
    /// bands mapping into weight-0 / weight-1/2 target bands
    int count_preweight() const;
};

struct PairRecord {
    bool on_src{false};
    MoveRecord rec;
};
using PairRecords = std::vector<PairRecord>;

struct PairTrace {
    std::vector<std::pair<int, PairRecord>> records;
    std::vector<std::string> log;
    int process_iii_steps{0};
    int last_preweight{0};
    bool budget_exhausted{false};
};

GradeReport check_morphism_properties(const PairState& P, const Budgets& budgets);

/// Structural validation of the pair: graph map isometric, band maps commute
/// with the attaching maps, widths and weights compatible.
std::vector<std::string> validate_pair(const PairState& P);

/// (A3): make every source generalized band map level-preserving onto a
/// sub-generalized band of equal length.
void normalize_to_generalized_morphism(PairState& P, PairRecords& rec);

/// (A4): alternate graph folds and band folds until the morphism is an
/// immersion. Returns the number of fold events.
int fold_to_immersion(PairState& P, PairRecords& rec);

/// (M10): subdivide the target at p and the source at every preimage.
void subdivide_pair(PairState& P, const Pt& p, PairRecords& rec);

struct RelStepOutcome {
    bool acted{false};
    std::string process;
    PairRecords records;
};

RelStepOutcome rel_process_I_step(PairState& P, const std::vector<EdgeId>& dst_component);
RelStepOutcome rel_process_II_step(PairState& P, const std::vector<EdgeId>& dst_component);
RelStepOutcome rel_process_III_step(PairState& P);

struct PairComponentReport {
    int dst_component{0};
    std::vector<int> src_components;
    Verdict dst_type{Verdict::BudgetExhausted};
    std::string src_verdict;  // "simplicial" | "same-type-minimal" | "budget-exhausted"
    MorphismGrade grade{MorphismGrade::None};
    std::optional<int> cover_degree;
    bool finite_cover{false};
    std::string witness;  // limit-point witness on the Lemma 5.8 path
    std::vector<std::string> notes;
};

struct PairRunResult {
    PairState final;
    PairTrace trace;
    std::vector<PairComponentReport> reports;
};

PairRunResult run_relative_machine(const PairState& P0, const Budgets& budgets);

enum class CompleteMode { UpToZero, PartialToCover, AlmostToPartial };

struct CompletionResult {
    std::vector<int> added_edges;
    std::vector<int> added_bands;
};

/// Extend the source along the target to upgrade the morphism grade:
/// almost partial cover -> partial cover -> finite cover, and the weight-0
/// completion. Deterministic lowest-identifier pairing of leftover blocks.
CompletionResult complete_cover(PairState& P, CompleteMode mode, PairRecords& rec);

std::vector<PairComponentReport> classify_pair(const PairRunResult& run, const Budgets& budgets);

// ---- GD skeleton and the partial order ----

struct GDVertex {
    bool foliated{false};
    int component{-1};          // foliated: component index
    Verdict type{Verdict::BudgetExhausted};
    std::vector<CellId> cells;  // rigid: member cells
};

struct GDSkeleton {
    std::vector<GDVertex> vertices;
    std::vector<std::pair<int, int>> edges;  // (rigid idx, foliated idx)
    int foliated_count{0};
    int rigid_count{0};
};

GDSkeleton gd_skeleton(const BandComplex& X, const Budgets& budgets);

enum class OrderVerdict { Less, NotLessCertified, Unknown };
std::string order_verdict_name(OrderVerdict v);

struct OrderReport {
    OrderVerdict verdict{OrderVerdict::Unknown};
    std::string criterion;  // which clause fired
    GDSkeleton delta_src, delta_dst;
    std::vector<std::string> notes;
};

OrderReport gd_and_partial_order(const PairState& P, const Budgets& budgets);

/// Verify a chain X1 < X2 < ... : every link LESS, with the nonnegative
/// potential (vertex count, type ranks, |Euler characteristic|) strictly
/// decreasing; returns the decreasing potential values.
struct ChainReport {
    bool all_less{false};
    bool potential_decreasing{false};
    std::vector<std::string> link_criteria;
    std::vector<long long> potentials;
};
ChainReport check_order_chain(const std::vector<PairState>& links, const Budgets& budgets);

}  // namespace ripsbox
