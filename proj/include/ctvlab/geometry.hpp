#pragma once

#include <string>
#include <vector>

#include "ctvlab/dense.hpp"

namespace ctvlab {

// C^d realified as R^{2d} with interleaved coordinates: complex coordinate j
// occupies real slots (2j, 2j+1).  J is multiplication by i:
// e_{2j} -> e_{2j+1}, e_{2j+1} -> -e_{2j}.
struct ComplexStructure {
    int d = 0;

    explicit ComplexStructure(int d_) : d(d_)
    {
        if (d < 1) throw input_error("complex dimension must be >= 1");
    }

    int real_dim() const { return 2 * d; }

    VecQ apply_j(const VecQ& v) const
    {
        check(v);
        VecQ out(2 * d);
        for (int j = 0; j < d; ++j) {
            out(2 * j) = -v(2 * j + 1);
            out(2 * j + 1) = v(2 * j);
        }
        return out;
    }

    MatQ apply_j(const MatQ& cols) const
    {
        MatQ out(cols.rows(), cols.cols());
        for (int c = 0; c < cols.cols(); ++c) out.col(c) = apply_j(VecQ(cols.col(c)));
        return out;
    }

    // Realification of the complex standard basis vector e_j.
    VecQ complex_basis_vector(int j) const
    {
        VecQ v = VecQ::Zero(2 * d);
        v(2 * j) = 1;
        return v;
    }

    void check(const VecQ& v) const
    {
        if (v.size() != 2 * d) throw input_error("vector has wrong ambient dimension");
    }
};

// True iff J maps span(basis columns) into itself.
bool is_j_invariant(const ComplexStructure& cs, const MatQ& basis);

// Splits a basis of a J-invariant subspace into complex pairs
// {b_1, J b_1, ..., b_r, J b_r}.  Throws logic_error if not J-invariant.
MatQ complexify_basis(const ComplexStructure& cs, const MatQ& basis);

// An affine flat in R^{2d} whose direction space carries one of the two kinds
// used by the transversal theorems.
//
//   complex(k):            direction = J-invariant span, real dimension 2k,
//                          columns stored as pairs (v, Jv).
//   complex_plus_line(k):  direction = J-invariant part of real dimension
//                          2(k-1) followed by one extra line orthogonal to it,
//                          real dimension 2k-1.
struct ComplexFlat {
    enum class Kind { complex_k, complex_plus_line };

    ComplexStructure space;
    VecQ base;
    MatQ directions; // columns
    Kind kind = Kind::complex_k;
    int k = 0;

    int real_direction_dim() const { return static_cast<int>(directions.cols()); }

    static std::string kind_name(Kind k)
    {
        return k == Kind::complex_k ? "complex" : "complex-plus-line";
    }
};

// Builds a complex k-flat from C-independent complex spanning vectors given as
// realified columns; the stored basis is {v_1, Jv_1, ..., v_k, Jv_k}.
// Rejects dependent input naming the first offending column.
ComplexFlat make_complex_flat(const ComplexStructure& cs, const VecQ& base, const MatQ& spanning);

// Builds a complex-plus-line flat of real dimension 2k-1 from k-1 complex
// spanning vectors and one extra line direction.  The line is orthogonalized
// against the complex part (span preserved); a line inside the complex part is
// rejected.
ComplexFlat make_complex_plus_line_flat(const ComplexStructure& cs, const VecQ& base,
                                        const MatQ& complex_spanning, const VecQ& line);

// Structural validation used by certificate verifiers; returns a diagnostic
// for the first violated clause, or nullopt when the flat is well formed.
std::optional<std::string> flat_structure_violation(const ComplexFlat& flat);

// Projection of x onto the orthogonal complement of span(direction columns),
// via normal equations.  Idempotent, kernel = the span.
VecQ orthogonal_project(const MatQ& directions, const VecQ& x);

// Finitely many weighted points; weights are positive and sum to exactly 1.
struct MassCloud {
    MatQ points; // columns
    std::vector<Rat> weights;

    MassCloud() = default;
    MassCloud(MatQ pts, std::vector<Rat> w);

    int dim() const { return static_cast<int>(points.rows()); }
    int size() const { return static_cast<int>(points.cols()); }

    static MassCloud uniform(MatQ pts);
};

} // namespace ctvlab
