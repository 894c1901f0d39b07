#pragma once

#include "ripsbox/complex.hpp"

#include <string>
#include <vector>

namespace ripsbox {

struct MoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MoveKind {
    M2,              // subdivide a band at a fiber
    M3,              // cut the graph (or remove a gluing)
    M4,              // slide a base across a carrier
    M5,              // collapse a subband from a free subarc (one constituent)
    M6,              // attach a band
    M7,              // add or extend an arc of the graph
    M8,              // attach a cell along a measure-zero loop
    M9,              // marker: subdivide X at a point (expands to M2s)
    M11,             // marker: duplicate a segment (expands to M7+M6)
    Fold,            // fold primitive or marker; detail in note
    CollapseWide,    // marker for collapse of a wide generalized band
    CollapseGeneral  // marker for collapse of a general band
};

std::string move_kind_name(MoveKind k);
MoveKind move_kind_from(const std::string& s);

/// One replayable event. Composite operations are recorded as a marker
/// followed by the primitive records that realize them; replaying the
/// primitives from the initial complex reproduces the final one bit-exactly.
struct MoveRecord {
    MoveKind kind{MoveKind::M2};
    BandId band{-1};
    BandId band2{-1};
    int side{0};
    int side2{0};
    Pt pt;
    Scalar x0, x1;
    Segment seg;
    Segment seg2;
    bool flag{false};
    int cell_kind{0};
    std::vector<Region> regions;
    std::vector<int> created;
    std::vector<int> destroyed;
    Relocation reloc;
    std::string note;

    bool is_marker() const {
        return kind == MoveKind::M9 || kind == MoveKind::M11 ||
               kind == MoveKind::CollapseWide || kind == MoveKind::CollapseGeneral ||
               (kind == MoveKind::Fold && note == "fold");
    }
};

using Records = std::vector<MoveRecord>;

// ---- primitive moves ----

/// (M2) Split a band down the fiber at parameter x (0 < x < width); adds a
/// subdivision cell (an annulus when the band has weight 0).
std::pair<BandId, BandId> subdivide_band(BandComplex& Y, BandId b, const Scalar& x, Records& rec);

/// (M3) Cut the graph at z; z may not meet the interior of any base.
void cut_graph(BandComplex& Y, const Pt& z, Records& rec);

/// (M4) Slide a carried base across the carrier band from one carrier base
/// to the dual one. The carried segment must lie inside the carrier base.
void slide(BandComplex& Y, BaseRef carried, BaseRef carrier, Records& rec);

/// (M6) Attach a band along two length-equal segments.
BandId attach_band(BandComplex& Y, Segment bottom, Segment top, bool orient, Records& rec);

/// (M7) Add a fresh arc to the graph.
EdgeId attach_arc(BandComplex& Y, const Scalar& len, Records& rec);
/// (M7) Lengthen an edge at one end; offsets shift when extending the start.
void extend_edge(BandComplex& Y, EdgeId e, const Scalar& amount, bool at_start, Records& rec);

/// (M8) Attach a cell along a loop of measure zero.
CellId attach_cell(BandComplex& Y, CellKind kind, std::vector<Region> regions, Records& rec);

// ---- composite moves ----

/// (M5) Collapse from a free subarc, treating the generalized band that
/// contains it as a unit. Weight-0 bands meeting J are subdivided and slid
/// out of the way first; a weight-1/2 band is first split into weight
/// 1, 1/2, 0 pieces so that J sits in a weight-1 band. Ends with an (A1)
/// normalization pass unless suppressed or the complex is in a glued state.
void collapse_from_free_subarc(BandComplex& Y, const FreeSubarc& J, Records& rec,
                               bool renormalize = true);

/// (M9) Subdivide X at a point: every band with q interior to a base is
/// split at the matching fiber, lowest band identifier first.
void subdivide_at_point(BandComplex& Y, const Pt& q, Records& rec);

/// (M11) Duplicate a segment c: fresh edge of equal length plus a new band
/// attached along c and its copy. Returns (new edge, new band).
std::pair<EdgeId, BandId> duplicate_segment(BandComplex& Y, const Segment& c, Records& rec);

/// Fold two distinct bands along an overlap o of two of their bases.
/// The dual positions of o must be identified or lie in different blocks;
/// identifying them may put the graph into a glued (forest) state.
void fold_bands(BandComplex& Y, BaseRef b1, BaseRef b2, Records& rec);

/// Fold two equal-length generalized bands along the overlap of end bases.
void fold_generalized(BandComplex& Y, const GeneralizedBand& g1, Side s1,
                      const GeneralizedBand& g2, Side s2, Records& rec);

/// Collapse a generalized band of positive weight (Process III workhorse).
/// wide mode requires one base to coincide with its block; general mode may
/// leave the graph glued and flags the complex for renormalization.
void collapse_band(BandComplex& Y, const GeneralizedBand& gb, bool wide, Records& rec);

/// Restore (A1): drop gluings (recording cuts) and cut edges so each edge is
/// exactly one block or naked.
void normalize_a1(BandComplex& Y, Records& rec);

/// Inverse of (M2): fuse two horizontally adjacent bands whose attaching
/// maps continue each other; absorbs the subdivision cell at the joint.
BandId fuse_bands(BandComplex& Y, BandId left, BandId right, Records& rec);

// ---- fold-support primitives (recorded under kind Fold with a detail note) ----

/// Representation split of an edge at an interior point, keeping the two
/// pieces glued at the split.
std::pair<EdgeId, EdgeId> split_edge_glued(BandComplex& Y, EdgeId e, const Scalar& x, Records& rec);

/// Identify edge `gone` isometrically onto edge `keep` (equal lengths);
/// all content of `gone` relocates. flip reverses the identification.
void identify_edges(BandComplex& Y, EdgeId keep, EdgeId gone, bool flip, Records& rec);

void glue_ends(BandComplex& Y, RealGraph::End a, RealGraph::End b, Records& rec);

// ---- replay ----

void apply_record(BandComplex& Y, const MoveRecord& r);
void apply_records(BandComplex& Y, const Records& rec);

Relocation compose(const Relocation& a, const Relocation& b);
Relocation records_relocation(const Records& rec);

/// Parent band of each band created by these records (splits and remnants).
std::map<BandId, BandId> records_band_parents(const Records& rec);

}  // namespace ripsbox
