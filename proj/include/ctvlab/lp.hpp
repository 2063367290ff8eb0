#pragma once

#include <optional>
#include <vector>

#include "ctvlab/dense.hpp"

namespace ctvlab {

// Linear constraint system over Q.  Rows are a·x <= b or a·x == b; variables
// are free or restricted to x >= 0.  Feasibility answers are exact.
struct ExactLP {
    enum class Row { le, eq };

    MatQ a;                     // m x n
    VecQ b;                     // m
    std::vector<Row> row_type;  // m
    std::vector<bool> nonneg;   // n; true = x_j >= 0, false = free
    VecQ objective;             // size n to minimize, or size 0 for pure feasibility

    int rows() const { return static_cast<int>(a.rows()); }
    int cols() const { return static_cast<int>(a.cols()); }
    void validate() const;
};

struct LpResult {
    enum class Status { feasible, infeasible, unbounded };

    Status status = Status::infeasible;
    VecQ point;   // feasible/optimal point when status == feasible
    Rat value;    // objective value when an objective was given
    // Farkas certificate when infeasible: y with y_i >= 0 on <= rows,
    // yᵀA >= 0 on nonneg columns, yᵀA == 0 on free columns, yᵀb < 0.
    VecQ farkas;
};

// Exact rational simplex with Bland's rule (phase 1 feasibility, optional
// phase 2 objective).  Deterministic; terminates on every input.
LpResult lp_solve(const ExactLP& lp);

inline LpResult lp_feasible(const ExactLP& lp)
{
    ExactLP probe = lp;
    probe.objective = VecQ();
    return lp_solve(probe);
}

// Replays a Farkas certificate against the system; true iff it certifies
// infeasibility.
bool farkas_certifies(const ExactLP& lp, const VecQ& y);

// Lexicographic-minimum point of { A x <= b } ∩ [lo, hi], or nullopt when
// empty.  Incremental with a seeded shuffle (Seidel style); exact and
// deterministic for a fixed seed.  Intended for dimensions <= 4.
std::optional<VecQ> lex_feasible(const std::vector<std::pair<VecQ, Rat>>& constraints,
                                 const VecQ& lo, const VecQ& hi,
                                 std::uint64_t shuffle_seed = 0x5eed);

} // namespace ctvlab
