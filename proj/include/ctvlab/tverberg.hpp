#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ctvlab/transversal.hpp"

namespace ctvlab {

// Partition-search instance: point sets P_0..P_m in R^{2d}, part counts r_i,
// optional coloring, and the flat family the common transversal must belong to.
struct TvInstance {
    enum class Variant { complex, complex_plus_line };

    int d = 0;
    int k = 0;
    Variant variant = Variant::complex;
    std::vector<MatQ> sets;            // points as columns
    std::vector<int> part_counts;      // r_i
    std::vector<std::vector<int>> colors; // per set; empty vector = uncolored

    int expected_size(int r) const
    {
        const int codim = variant == Variant::complex ? 2 * d - 2 * k + 1 : 2 * d - 2 * k + 2;
        return (r - 1) * codim + 1;
    }
    bool colored() const;
    // Theorem hypotheses: r_i powers of one prime (complex), powers of two
    // (plus-line), equal primes with small color classes (colorful).
    bool within_theorem() const;
    void validate() const; // throws input_error naming the violated count
};

struct TverbergCert {
    ComplexFlat flat;
    VecQ q; // common projected point, ambient coordinates, lies on the flat
    std::vector<std::vector<std::vector<int>>> partitions; // per set, per part, point indices
    std::vector<std::vector<std::vector<Rat>>> witnesses;  // convex coefficients per part
    SearchTrace trace;
    bool exploratory = false;
};

struct TvBestEffort {
    long samples = 0;
    Rat best_margin = 1; // smallest joint infeasibility margin seen
};

using TvOutcome = std::variant<TverbergCert, TvBestEffort>;

// Stream of set partitions of {0..n-1} into exactly r nonempty parts in
// restricted-growth-string order, rainbow-filtered when a coloring is given.
class PartitionStream {
public:
    PartitionStream(int n, int r, const std::vector<int>* coloring = nullptr);
    std::optional<std::vector<std::vector<int>>> next();

private:
    bool advance();
    bool admissible() const;
    int n_, r_;
    const std::vector<int>* coloring_;
    std::vector<int> rgs_;
    bool fresh_ = true, done_ = false;
};

Int stirling_second(int n, int r);

// Single-direction feasibility: given the projection basis of W and one
// partition per set, decide by exact simplex whether some q lies in every
// part's projected hull; returns q (in W coordinates) and the convex
// coefficients on success.
struct DirectionWitness {
    VecQ q_coords;
    std::vector<std::vector<std::vector<Rat>>> coefficients;
};
std::optional<DirectionWitness> feasible_given_direction(
    const TvInstance& instance, const MatQ& basis,
    const std::vector<std::vector<std::vector<int>>>& partitions);

TvOutcome search_tv(const TvInstance& instance, const SearchConfig& config = {});

bool verify_tv(const TverbergCert& cert, const TvInstance& instance, std::string* diagnostic = nullptr);

} // namespace ctvlab
