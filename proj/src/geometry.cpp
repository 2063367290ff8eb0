#include "ctvlab/geometry.hpp"

namespace ctvlab {

bool is_j_invariant(const ComplexStructure& cs, const MatQ& basis)
{
    for (int c = 0; c < basis.cols(); ++c) {
        VecQ jv = cs.apply_j(VecQ(basis.col(c)));
        if (!in_span(basis, jv)) return false;
    }
    return true;
}

MatQ complexify_basis(const ComplexStructure& cs, const MatQ& basis)
{
    const int n = static_cast<int>(basis.cols());
    if (n % 2 != 0) throw std::logic_error("complexify_basis: odd dimension");
    MatQ result(basis.rows(), n);
    int filled = 0;
    while (filled < n) {
        // first original column independent from what we have so far
        int pick = -1;
        for (int c = 0; c < n; ++c) {
            MatQ ext(basis.rows(), filled + 1);
            ext.leftCols(filled) = result.leftCols(filled);
            ext.col(filled) = basis.col(c);
            if (rank_of(ext) == filled + 1) { pick = c; break; }
        }
        if (pick < 0) throw std::logic_error("complexify_basis: exhausted columns");
        VecQ v = basis.col(pick);
        VecQ jv = cs.apply_j(v);
        if (!in_span(basis, jv))
            throw std::logic_error("complexify_basis: span is not J-invariant");
        result.col(filled) = v;
        result.col(filled + 1) = jv;
        filled += 2;
    }
    return result;
}

ComplexFlat make_complex_flat(const ComplexStructure& cs, const VecQ& base, const MatQ& spanning)
{
    cs.check(base);
    const int k = static_cast<int>(spanning.cols());
    MatQ dirs(cs.real_dim(), 2 * k);
    for (int c = 0; c < k; ++c) {
        VecQ v = spanning.col(c);
        cs.check(v);
        dirs.col(2 * c) = v;
        dirs.col(2 * c + 1) = cs.apply_j(v);
        if (rank_of(MatQ(dirs.leftCols(2 * c + 2))) != 2 * c + 2)
            throw input_error("dependent spanning set at index " + std::to_string(c));
    }
    ComplexFlat flat{cs, base, dirs, ComplexFlat::Kind::complex_k, k};
    return flat;
}

ComplexFlat make_complex_plus_line_flat(const ComplexStructure& cs, const VecQ& base,
                                        const MatQ& complex_spanning, const VecQ& line)
{
    ComplexFlat complex_part = make_complex_flat(cs, base, complex_spanning);
    const MatQ& cdirs = complex_part.directions;
    VecQ line_perp = project_onto_complement(cdirs, line);
    if (line_perp.isZero())
        throw input_error("line direction lies inside the complex part");
    ComplexFlat flat{cs, base, MatQ(cs.real_dim(), cdirs.cols() + 1),
                     ComplexFlat::Kind::complex_plus_line,
                     static_cast<int>(complex_spanning.cols()) + 1};
    flat.directions.leftCols(cdirs.cols()) = cdirs;
    flat.directions.col(cdirs.cols()) = primitive(line_perp);
    return flat;
}

std::optional<std::string> flat_structure_violation(const ComplexFlat& flat)
{
    const int n = flat.real_direction_dim();
    if (flat.base.size() != flat.space.real_dim()) return "base point has wrong dimension";
    if (flat.directions.rows() != flat.space.real_dim()) return "direction basis has wrong dimension";
    if (rank_of(flat.directions) != n) return "direction basis is dependent";
    if (flat.kind == ComplexFlat::Kind::complex_k) {
        if (n != 2 * flat.k) return "complex flat has wrong direction dimension";
        if (!is_j_invariant(flat.space, flat.directions))
            return "kind-violation: direction span is not J-invariant";
    } else {
        if (n != 2 * flat.k - 1) return "complex-plus-line flat has wrong direction dimension";
        MatQ complex_part = flat.directions.leftCols(n - 1);
        VecQ line = flat.directions.col(n - 1);
        if (n > 1 && !is_j_invariant(flat.space, complex_part))
            return "kind-violation: complex part is not J-invariant";
        for (int c = 0; c < complex_part.cols(); ++c) {
            Rat dot = complex_part.col(c).dot(line);
            if (dot != 0) return "kind-violation: line is not orthogonal to the complex part";
        }
    }
    return std::nullopt;
}

VecQ orthogonal_project(const MatQ& directions, const VecQ& x)
{
    return project_onto_complement(directions, x);
}

MassCloud::MassCloud(MatQ pts, std::vector<Rat> w) : points(std::move(pts)), weights(std::move(w))
{
    if (points.cols() == 0) throw input_error("mass cloud must contain at least one point");
    if (static_cast<int>(weights.size()) != points.cols())
        throw input_error("mass cloud weight count does not match point count");
    Rat total = 0;
    for (const Rat& w_i : weights) {
        if (w_i <= 0) throw input_error("mass cloud weights must be positive");
        total += w_i;
    }
    if (total != 1) throw input_error("mass cloud weights must sum to exactly 1");
}

MassCloud MassCloud::uniform(MatQ pts)
{
    const int n = static_cast<int>(pts.cols());
    if (n == 0) throw input_error("mass cloud must contain at least one point");
    return MassCloud(std::move(pts), std::vector<Rat>(n, Rat(1, n)));
}

} // namespace ctvlab
