#pragma once

#include "ctvlab/geometry.hpp"

namespace ctvlab {

// Optimality test instances: measures are symmetric rational point batteries
// standing in for small balls.
struct GadgetInstance {
    std::string construction; // "tight-depth" | "too-many-measures"
    int d = 0;
    int k = 0;
    Rat epsilon;
    int battery_size = 1;
    std::vector<MassCloud> measures;
};

// Cross-polytope style battery: `size` points of radius `rho` around the
// center (the center itself when size == 1).
MatQ battery_points(const VecQ& center, const Rat& rho, int size);

// Measure 0 sits on 2(d-k)+1 batteries of radius eps^3 at the displayed
// centers; measures 1..k are batteries of radius eps at e_1..e_k.
GadgetInstance make_tight_depth_instance(int d, int k, const Rat& eps, int battery_size);

// k+2 batteries at 0, e_1, ..., e_{k+1}: a stress case on which no complex
// k-flat can be deep for all measures at once for small eps.
GadgetInstance make_too_many_measures_instance(int d, int k, const Rat& eps, int battery_size = 1);

// Halfspace { x : n·x <= base - r * sqrt(norm2) }; the offset is irrational,
// membership and distance tests reduce to rational sign comparisons.
struct TranslatedHalfspace {
    VecQ normal;
    Rat base;
    Rat r;
    Rat norm2;

    bool contains(const VecQ& x) const;
};

struct SeparationResult {
    int j;
    TranslatedHalfspace halfspace;
};

// Exact test r < R(m), where R(m) is the inradius of conv{e_0..e_m} with
// e_0 = -e_1-...-e_m.  Single radical cleared by squaring; see docs/inradius.md.
bool below_inradius(int m, const Rat& r);

// The separation construction: returns j with q in the inward-translated
// facet halfspace H_{j,r}; guarantees e_j in H_{j,r} and the open r-balls
// around the other vertices disjoint from it.  Requires m >= 2, 0 < r < R(m).
SeparationResult separating_halfspace(int m, const Rat& r, const VecQ& q);

// Re-verifies all three postconditions of a separation result exactly.
bool verify_separation(int m, const Rat& r, const VecQ& q, const SeparationResult& sep);

// Samples rational tuples y in B_eps(0) x B_eps(e_1) x ... x B_eps(e_k),
// builds the projection with fiber V_y over the intersection point, and
// checks |pi_y(v)|^2 <= 4 on a fixed battery of rational unit vectors.
// Degenerate samples count as failures.
bool projection_norm_check(int d, int k, const Rat& eps, int samples, std::uint64_t seed,
                           int* failures = nullptr);

} // namespace ctvlab
