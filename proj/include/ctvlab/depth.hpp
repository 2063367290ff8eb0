#pragma once

#include "ctvlab/geometry.hpp"

namespace ctvlab {

// Exact halfspace (Tukey) depth value with a witness: the closed halfspace
// { x : <x, witness_normal> >= witness_offset } contains the queried
// point/flat and carries cloud weight exactly `value`.
struct DepthValue {
    Rat value;
    VecQ witness_normal;
    Rat witness_offset;
};

inline constexpr int kMaxDepthDim = 6;

// Minimum over all closed halfspaces with q on the boundary of the cloud
// weight inside.  Exact for arbitrary (also degenerate) configurations;
// supported for ambient dimension <= 6.
DepthValue tukey_depth(const MassCloud& cloud, const VecQ& q);

// Closed-halfspace weight of { x : <x, normal> >= offset }; used to replay
// witnesses independently of the search that produced them.
Rat halfspace_weight(const MassCloud& cloud, const VecQ& normal, const Rat& offset);

// Depth of an affine flat: minimum cloud weight over closed halfspaces
// containing the flat.  Equals the Tukey depth of the projected base point in
// the cloud projected to the orthogonal complement of the flat's direction,
// because halfspaces containing the flat are exactly those with normal
// orthogonal to its direction and boundary through it.
DepthValue flat_depth(const MassCloud& cloud, const ComplexFlat& flat);

} // namespace ctvlab
