#pragma once

#include <vector>

#include "ctvlab/geometry.hpp"

namespace ctvlab {

// Rational chart on the Grassmannian of complex (d-k)-subspaces of C^d.  The
// subspace W is the complex column span of the d x (d-k) matrix carrying the
// identity on the rows of `index_set` and the parameters Z on the complement.
// Every subspace transverse to the complement coordinate subspace lies in
// exactly one such chart, so the charts jointly cover the Grassmannian.
struct GrassmannChart {
    int d = 0;
    int k = 0;
    std::vector<int> index_set; // |I| = d-k, increasing
    MatQ z_re, z_im;            // (d-k) x k

    int subspace_dim() const { return d - k; }

    // Realified complex spanning vectors of W, one column per basis vector.
    MatQ complex_spanning(const ComplexStructure& cs) const;

    // Real basis of W as interleaved pairs {v, Jv}; 2(d-k) columns.
    MatQ real_basis(const ComplexStructure& cs) const;

    std::string describe() const;
};

std::vector<std::vector<int>> index_subsets(int d, int size);

// v0 + i v1 interpreted as a complex combination of the complex structure
// carried by `pairs` (columns alternating b, Jb): returns sum_j x_j b_j + y_j (J b_j).
VecQ complex_combination(const MatQ& pairs, const VecQ& re, const VecQ& im);

} // namespace ctvlab
