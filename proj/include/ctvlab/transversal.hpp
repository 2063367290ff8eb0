#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ctvlab/charts.hpp"
#include "ctvlab/depth.hpp"
#include "ctvlab/regions.hpp"

namespace ctvlab {

struct SearchConfig {
    long budget = 100000;     // chart samples
    Rat grid_step = Rat(1, 8); // coarse grid step per parameter
    int restarts = 16;         // refinement candidates kept between rounds
    int workers = 0;           // 0 = available parallelism
    std::uint64_t seed = 0;
};

struct SearchTrace {
    std::uint64_t seed = 0;
    long samples = 0;
    std::string chart;
};

struct TransversalCert {
    ComplexFlat flat;
    std::vector<DepthValue> depths; // per measure, order preserved
    Rat bound;
    SearchTrace trace;
    bool exploratory = false; // measure count differs from the theorem's k+1
};

// Best candidate when the budget is exhausted; failure does not contradict
// the theorems, only the budget.
struct BestEffort {
    std::optional<ComplexFlat> flat;
    Rat best_min_depth = 0;
    long samples = 0;
};

using SearchOutcome = std::variant<TransversalCert, BestEffort>;

// Complex central k-transversal search: a complex k-flat with
// flat_depth >= 1/(2d-2k+1) for every measure, verified exactly.
// Requires d-k <= 2 (centerpoint regions live in dimension 2(d-k)).
SearchOutcome search_transversal(const std::vector<MassCloud>& measures, int d, int k,
                                 const SearchConfig& config = {});

// Odd-codimension search: a complex-plus-line flat of real dimension 2k-1
// with every flat_depth >= 1/(2d-2k+2).  Requires d-k == 1.
SearchOutcome search_odd_transversal(const std::vector<MassCloud>& measures, int d, int k,
                                     const SearchConfig& config = {});

struct FlagCert {
    std::vector<ComplexFlat> flats;               // V_k, ..., V_{d-1}
    std::vector<std::vector<DepthValue>> depths;  // level k: one per mu_0..mu_k; above: one
    std::vector<Rat> bounds;                      // per level
    SearchTrace trace;
};

using FlagOutcome = std::variant<FlagCert, BestEffort>;

// Nested transversal flag: V_k ⊆ ... ⊆ V_{d-1} with V_k deep for mu_0..mu_k
// and V_i deep for mu_i at level bound 1/(2d-2i+1).  Requires d-k <= 2.
FlagOutcome search_flag_transversal(const std::vector<MassCloud>& measures, int d, int k,
                                    const SearchConfig& config = {});

// Recomputes every depth from scratch and checks kind and bound claims;
// independent of the search internals.  On failure the first violated clause
// is reported through `diagnostic`.
bool verify_transversal(const TransversalCert& cert, const std::vector<MassCloud>& measures, int d,
                        int k, bool odd_family, std::string* diagnostic = nullptr);

bool verify_flag(const FlagCert& cert, const std::vector<MassCloud>& measures, int d, int k,
                 std::string* diagnostic = nullptr);

// Budgeted sweep reporting the largest exactly-verified min-depth over all
// sampled flats (used for optimality-evidence regressions).
struct MaxMinReport {
    Rat best = 0;
    std::optional<ComplexFlat> flat;
    long samples = 0;
};
MaxMinReport max_min_depth_search(const std::vector<MassCloud>& measures, int d, int k,
                                  const SearchConfig& config = {});

} // namespace ctvlab
