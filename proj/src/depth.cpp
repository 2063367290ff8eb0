#include "ctvlab/depth.hpp"

#include <algorithm>
#include <map>

namespace ctvlab {

namespace {

struct SidedMin {
    Rat weight;
    VecQ normal; // nonzero; in the coordinates of the subproblem
};

// Weighted directions with positive-multiple duplicates merged; subset
// enumeration runs over distinct lines.
struct DirectionSet {
    std::vector<VecQ> vecs;
    std::vector<Rat> weights;
};

DirectionSet dedupe(const std::vector<VecQ>& vecs, const std::vector<Rat>& weights)
{
    DirectionSet out;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        bool merged = false;
        for (std::size_t j = 0; j < out.vecs.size(); ++j) {
            // same ray iff primitive forms agree
            if (primitive(out.vecs[j]) == primitive(vecs[i])) {
                out.weights[j] += weights[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.vecs.push_back(vecs[i]);
            out.weights.push_back(weights[i]);
        }
    }
    return out;
}

// min over u != 0 of the weight of { i : <u, d_i> >= 0 }, with a witness u
// realizing the minimum exactly.  Recursive descent over the central
// arrangement of the d_i; dimension of the subproblem strictly decreases.
SidedMin min_sided_weight(const std::vector<VecQ>& dirs_in, const std::vector<Rat>& weights_in, int dim)
{
    DirectionSet set = dedupe(dirs_in, weights_in);
    const auto& dirs = set.vecs;
    const auto& weights = set.weights;
    const int n = static_cast<int>(dirs.size());

    Rat total = 0;
    for (const Rat& w : weights) total += w;

    MatQ as_matrix(dim, n);
    for (int i = 0; i < n; ++i) as_matrix.col(i) = dirs[i];
    const int r = rank_of(as_matrix);

    SidedMin best{total + 1, VecQ()};

    if (r < dim) {
        // Some u is orthogonal to everything: all points sit on the boundary.
        MatQ perp = kernel_basis(MatQ(as_matrix.transpose()));
        best = {total, VecQ(perp.col(0))};
        if (r == 0) return best;
        // Remaining candidates live in span(dirs); work in that basis.
        MatQ span_basis(dim, r);
        int got = 0;
        for (int i = 0; i < n && got < r; ++i) {
            span_basis.col(got) = dirs[i];
            if (rank_of(MatQ(span_basis.leftCols(got + 1))) == got + 1) ++got;
        }
        std::vector<VecQ> coords(n);
        for (int i = 0; i < n; ++i) coords[i] = projection_coords(span_basis, dirs[i]);
        SidedMin inner = min_sided_weight(coords, weights, r);
        if (inner.weight < best.weight) {
            // Lift u' with <u', d_i> = <u_inner, coords_i>.
            MatQ gram = span_basis.transpose() * span_basis;
            auto lifted = solve_exact(gram, inner.normal);
            best = {inner.weight, VecQ(span_basis * *lifted)};
        }
        return best;
    }

    if (dim == 1) {
        Rat pos = 0, neg = 0;
        for (int i = 0; i < n; ++i) {
            if (dirs[i](0) > 0) pos += weights[i];
            else neg += weights[i];
        }
        VecQ plus(1), minus(1);
        plus(0) = 1;
        minus(0) = -1;
        return pos <= neg ? SidedMin{pos, plus} : SidedMin{neg, minus};
    }

    // Candidate rays: kernels of (dim-1)-subsets of distinct lines with rank
    // dim-1; every full-dimensional cell of the (essential) arrangement has
    // such a ray in its closure.
    std::vector<int> subset(dim - 1);
    std::vector<int> stack{0};
    auto consider = [&](const VecQ& u0) {
        for (int sign = 0; sign < 2; ++sign) {
            VecQ u = sign == 0 ? u0 : VecQ(-u0);
            Rat strict = 0;
            std::vector<VecQ> boundary;
            std::vector<Rat> bweights;
            std::vector<Rat> dots(n);
            for (int i = 0; i < n; ++i) {
                dots[i] = u.dot(dirs[i]);
                if (dots[i] > 0) strict += weights[i];
                else if (dots[i] == 0) {
                    boundary.push_back(dirs[i]);
                    bweights.push_back(weights[i]);
                }
            }
            SidedMin inner = min_sided_weight(boundary, bweights, dim);
            Rat candidate = strict + inner.weight;
            if (candidate >= best.weight) continue;
            // Perturb u toward the inner witness without flipping any strict sign.
            Rat delta = 1;
            for (int i = 0; i < n; ++i) {
                if (dots[i] == 0) continue;
                Rat drift = inner.normal.dot(dirs[i]);
                if ((dots[i] > 0 && drift < 0) || (dots[i] < 0 && drift > 0)) {
                    Rat bound = -dots[i] / drift; // positive
                    if (bound < delta) delta = bound;
                }
            }
            best = {candidate, VecQ(u + (delta / 2) * inner.normal)};
        }
    };

    // Enumerate (dim-1)-subsets of lines.
    std::vector<int> idx(dim - 1, 0);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == dim - 1) {
            MatQ rows(dim - 1, dim);
            for (int i = 0; i < dim - 1; ++i) rows.row(i) = dirs[idx[i]].transpose();
            MatQ kernel = kernel_basis(rows);
            if (kernel.cols() != 1) return; // rank-deficient subset
            consider(VecQ(kernel.col(0)));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);

    return best;
}

} // namespace

Rat halfspace_weight(const MassCloud& cloud, const VecQ& normal, const Rat& offset)
{
    Rat total = 0;
    for (int i = 0; i < cloud.size(); ++i)
        if (normal.dot(cloud.points.col(i)) >= offset) total += cloud.weights[i];
    return total;
}

DepthValue tukey_depth(const MassCloud& cloud, const VecQ& q)
{
    const int dim = cloud.dim();
    if (dim > kMaxDepthDim)
        throw input_error("unsupported dimension for tukey_depth: " + std::to_string(dim) +
                          " (max " + std::to_string(kMaxDepthDim) + ")");
    if (q.size() != dim) throw input_error("query point has wrong dimension");

    Rat at_q = 0;
    std::vector<VecQ> dirs;
    std::vector<Rat> weights;
    for (int i = 0; i < cloud.size(); ++i) {
        VecQ d = cloud.points.col(i) - q;
        if (d.isZero()) at_q += cloud.weights[i];
        else {
            dirs.push_back(d);
            weights.push_back(cloud.weights[i]);
        }
    }
    DepthValue out;
    if (dirs.empty()) {
        out.value = at_q;
        out.witness_normal = VecQ::Zero(dim);
        out.witness_normal(0) = 1;
        out.witness_offset = out.witness_normal.dot(q);
        return out;
    }
    SidedMin m = min_sided_weight(dirs, weights, dim);
    out.value = at_q + m.weight;
    out.witness_normal = primitive(m.normal);
    out.witness_offset = out.witness_normal.dot(q);
    return out;
}

DepthValue flat_depth(const MassCloud& cloud, const ComplexFlat& flat)
{
    if (cloud.dim() != flat.space.real_dim())
        throw input_error("flat and cloud ambient dimensions disagree");
    if (auto bad = flat_structure_violation(flat))
        throw input_error("invalid flat: " + *bad);

    const MatQ& dirs = flat.directions;
    if (dirs.cols() == 0) return tukey_depth(cloud, flat.base);

    MatQ complement = kernel_basis(MatQ(dirs.transpose()));
    const int m = static_cast<int>(complement.cols());
    if (m == 0) { // flat is the whole space; only the full space contains it
        DepthValue out;
        out.value = 1;
        out.witness_normal = VecQ::Zero(cloud.dim());
        out.witness_offset = 0;
        return out;
    }
    if (m > kMaxDepthDim)
        throw input_error("unsupported dimension for flat_depth projection: " + std::to_string(m));

    MatQ projected(m, cloud.size());
    for (int i = 0; i < cloud.size(); ++i)
        projected.col(i) = projection_coords(complement, VecQ(cloud.points.col(i)));
    MassCloud shadow(projected, cloud.weights);
    DepthValue inner = tukey_depth(shadow, projection_coords(complement, flat.base));

    // Lift the witness: N = C (CᵀC)^{-1} n reproduces the projected dot
    // products and is orthogonal to the flat's direction.
    MatQ gram = complement.transpose() * complement;
    auto lifted = solve_exact(gram, inner.witness_normal);
    DepthValue out;
    out.value = inner.value;
    out.witness_normal = primitive(VecQ(complement * *lifted));
    out.witness_offset = out.witness_normal.dot(flat.base);
    return out;
}

} // namespace ctvlab
