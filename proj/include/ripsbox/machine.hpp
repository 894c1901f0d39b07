#pragma once

#include "ripsbox/moves.hpp"

#include <optional>

namespace ripsbox {

struct Budgets {
    int max_steps{200};
    int leaf_budget{2000};
    int snapshot_every{1};
    bool full_budget{false};  // keep stepping after a detected recurrence
    int max_snapshots{512};   // soft retention cap (RIPSBOX_MAX_MEM)
};

enum class CollapseKind { I1, I2, I3 };
inline std::string collapse_kind_name(CollapseKind k) {
    switch (k) {
        case CollapseKind::I1: return "I1";
        case CollapseKind::I2: return "I2";
        default: return "I3";
    }
}

struct StepStat {
    int step{0};
    std::string process;  // "I" or "II"
    std::optional<CollapseKind> kind;
    bool increasing{false};
    int delta_bands{0};  // a_{i+1} - a_i over positive-weight generalized bands
    Rat complexity_before, complexity_after;
    int genband_count{0};
    Scalar max_width;
    std::string canon_key;
};

struct Recurrence {
    int first_step{0};
    int second_step{0};
    std::string process;
    Scalar ratio;  // scale factor from first to second state
};

struct MachineTrace {
    std::vector<std::pair<int, MoveRecord>> records;  // (step, record)
    std::vector<StepStat> stats;
    std::vector<Recurrence> recurrences;
    std::map<int, BandComplex> snapshots;  // step -> state after that step
    BandComplex initial;
    std::map<int, std::map<BandId, std::set<BandId>>> ancestry;  // per step: new -> originals
    bool budget_exhausted{false};
    std::string stop_reason;
};

enum class Verdict { Simplicial, Surface, Toral, Thin, BudgetExhausted };
std::string verdict_name(Verdict v);

struct ClassificationReport {
    int component_index{0};
    Verdict verdict{Verdict::BudgetExhausted};
    bool certified{false};
    std::string certificate;
    std::vector<std::string> notes;
};

struct StepOutcome {
    bool acted{false};
    std::string process;
    std::optional<CollapseKind> kind;
    Records records;
};

/// One Process I step on a component: pick the maximal free subarc by the
/// priority isolated > semi-isolated > any, and collapse along the whole
/// generalized band. Returns acted=false when no free subarc exists.
StepOutcome process_I_step(BandComplex& Y, const std::vector<EdgeId>& component);

/// One Process II step: slide from the longest positive base at the initial
/// point of the component, then collapse its maximal free initial segment.
StepOutcome process_II_step(BandComplex& Y, const std::vector<EdgeId>& component);

/// The data of one Process II step, shared with the relative machine.
struct IIUnit {
    std::vector<BandId> chain;  // constituents, bottom to top
    Side side{Side::Bottom};    // which end base
    Segment arc;
    bool mobius{false};
    BandId end_band() const {
        return side == Side::Bottom ? chain.front() : chain.back();
    }
};
struct IIPlan {
    Pt z;
    IIUnit carrier;
    std::vector<IIUnit> slides;  // bases to slide across the carrier
};
std::optional<IIPlan> plan_process_II(const BandComplex& Y,
                                      const std::vector<EdgeId>& component);
void execute_ii_slide(BandComplex& Y, const IIPlan& plan, const IIUnit& u, Records& rec);
/// The maximal free initial segment of the carrier base after the slides.
std::optional<FreeSubarc> ii_initial_free(const BandComplex& Y, const IIPlan& plan,
                                          const std::vector<EdgeId>& component);

struct RunResult {
    BandComplex final;
    MachineTrace trace;
};

RunResult run_machine(const BandComplex& Y0, const Budgets& budgets);

ClassificationReport classify_component(const MachineTrace& trace, const BandComplex& final,
                                        int component_index, const Budgets& budgets);
std::vector<ClassificationReport> classify_all(const MachineTrace& trace,
                                               const BandComplex& final,
                                               const Budgets& budgets);

// ---- thin structure ----

struct ThinBandInfo {
    BandId key{-1};  // first constituent at the window end
    int length{0};
    Scalar width;
    bool is_short{false};
};

struct Island {
    int type{1};
    std::vector<BandId> short_bands;  // keys of member short generalized bands
    std::vector<std::pair<EdgeId, Scalar>> blocks;  // (edge, start) of member blocks
};

struct ThinAnalysis {
    std::vector<ThinBandInfo> bands;
    int short_count{0};
    int long_count{0};
    std::optional<int> max_short_length;   // the L_s threshold observed
    std::optional<int> min_long_length;
    std::vector<Island> islands;
    std::vector<std::pair<EdgeId, Scalar>> e_point_intervals;  // shrinking intervals
    bool bijection_ok{false};  // short bands match across the window
    std::vector<std::string> notes;
};

/// Analyze a window of consecutive thin-regime snapshots [from_step, to_step].
ThinAnalysis thin_analysis(const MachineTrace& trace, int from_step, int to_step);

// ---- shortening ----

struct ShortLoopGenerator {
    std::string name;
    std::vector<Segment> excursions;  // graph parts, inside the tracked arc
    Scalar complement_measure;        // content outside the thin component
};

struct ShorteningRow {
    std::string name;
    Scalar before;
    Scalar after;
};

struct ShorteningReport {
    int windows_used{0};
    Scalar ratio;  // per-window contraction factor
    std::vector<ShorteningRow> rows;
    std::vector<Scalar> window_totals;  // total measure after each window
    bool shortened{false};
};

/// Transport generator measures through k periodic windows of a thin run.
ShorteningReport shortening_report(const MachineTrace& trace,
                                   const std::vector<ShortLoopGenerator>& gens, int k);

/// Ancestry of bands across one step's records: surviving/created band ->
/// the set of step-input bands its material came from.
std::map<BandId, std::set<BandId>> step_ancestry(const BandComplex& before,
                                                 const Records& records);

}  // namespace ripsbox
