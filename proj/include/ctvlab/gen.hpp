#pragma once

#include "ctvlab/gadgets.hpp"
#include "ctvlab/tverberg.hpp"

namespace ctvlab {

enum class Genericity { generic, clustered, gadget };

Genericity genericity_from_string(const std::string& name);
std::string genericity_name(Genericity g);

// Deterministic for a fixed seed.  "generic" draws rational coordinates with
// denominators <= 2^16 and rejects configurations with affinely dependent
// small subsets or duplicate points.
std::vector<MassCloud> generate_measures(int d, const std::vector<int>& sizes, std::uint64_t seed,
                                         Genericity genericity, int k_hint = 1);

// Tverberg instances.  "clustered" plants every part through one common
// rational point (antipodal pairs and centered triangles), then shuffles the
// point order; "generic" draws unstructured points, for exploration.
TvInstance generate_tverberg(int d, int k, const std::vector<int>& part_counts, std::uint64_t seed,
                             Genericity genericity, TvInstance::Variant variant, bool colored);

} // namespace ctvlab
