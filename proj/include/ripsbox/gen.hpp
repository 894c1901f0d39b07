#pragma once

#include "ripsbox/relative.hpp"

#include <cstdint>

namespace ripsbox {

/// Rotation by alpha on the unit circle, as two bands over one edge:
/// [0,1-a] -> [a,1] and [1-a,1] -> [0,a].
BandComplex gen_rotation(const Scalar& alpha);
BandComplex gen_rot_rational(long long p, long long q);
BandComplex gen_rot_quadratic(std::int64_t d, const Rat& a, const Rat& b);

/// Interval exchange suspension: bottom intervals in order, top intervals
/// arranged by the permutation (perm[i] = position of interval i on top).
BandComplex gen_iet(const std::vector<int>& perm, const std::vector<Scalar>& lens);

/// Interval translation system on [0,1]: branch i covers [cuts[i-1],cuts[i]]
/// and translates by trans[i]; images must stay inside the edge.
BandComplex gen_itm(const std::vector<Scalar>& cuts, const std::vector<Scalar>& trans);

/// Connected degree-n cover with one sheet permutation per base band.
PairState gen_cover(const BandComplex& base, int degree,
                    const std::map<BandId, std::vector<int>>& plan);

/// The two-pre-weight-0 configuration: a weight-0 annulus downstairs, two
/// weight-1 bands forming its connected double cover upstairs.
PairState gen_fig12_pair();

struct ThinSearchResult {
    bool found{false};
    BandComplex complex;
    std::string log;
    int attempts{0};
};

/// Bounded search over small quadratic interval translation systems for one
/// whose 200-step run shows the thin signature.
ThinSearchResult thin_search(std::uint64_t seed, int max_attempts, const Budgets& budgets);

}  // namespace ripsbox
