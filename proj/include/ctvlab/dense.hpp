#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ctvlab/scalar.hpp"

namespace ctvlab {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VecQ = Vec<Rat>;
using MatQ = Mat<Rat>;

// Row echelon form by exact Gauss-Jordan with first-nonzero pivoting.
// Returns the rank; `pivots` (optional) receives the pivot column of each row.
template <typename Derived>
int row_reduce(Eigen::MatrixBase<Derived>& m, std::vector<int>* pivots = nullptr)
{
    using S = typename Derived::Scalar;
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    if (pivots) pivots->clear();
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        if (pivot != rank) m.row(pivot).swap(m.row(rank));
        const S inv = S(1) / m(rank, col);
        m.row(rank) *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m(r, col) == 0) continue;
            m.row(r) -= m(r, col) * m.row(rank);
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

template <typename Derived>
int rank_of(const Eigen::MatrixBase<Derived>& m)
{
    Mat<typename Derived::Scalar> work = m;
    return row_reduce(work);
}

// Basis of the null space of `m`, returned as matrix columns (may have 0 columns).
template <typename Derived>
Mat<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m)
{
    using S = typename Derived::Scalar;
    Mat<S> work = m;
    std::vector<int> pivots;
    const int rank = row_reduce(work, &pivots);
    const int cols = static_cast<int>(m.cols());
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    Mat<S> basis = Mat<S>::Zero(cols, cols - rank);
    int out = 0;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        basis(free, out) = S(1);
        for (int r = 0; r < rank; ++r) basis(pivots[r], out) = -work(r, free);
        ++out;
    }
    return basis;
}

// Solves A x = b when A has full column rank and the system is consistent.
template <typename S>
std::optional<Vec<S>> solve_exact(const Mat<S>& a, const Vec<S>& b)
{
    const int cols = static_cast<int>(a.cols());
    Mat<S> work(a.rows(), cols + 1);
    work.leftCols(cols) = a;
    work.col(cols) = b;
    std::vector<int> pivots;
    const int rank = row_reduce(work, &pivots);
    for (int r = 0; r < rank; ++r)
        if (pivots[r] == cols) return std::nullopt; // inconsistent
    if (rank < cols) return std::nullopt;           // underdetermined
    Vec<S> x(cols);
    for (int r = 0; r < rank; ++r) x(pivots[r]) = work(r, cols);
    return x;
}

template <typename S>
bool in_span(const Mat<S>& basis, const Vec<S>& v)
{
    if (v.isZero()) return true;
    if (basis.cols() == 0) return false;
    Mat<S> ext(basis.rows(), basis.cols() + 1);
    ext.leftCols(basis.cols()) = basis;
    ext.col(basis.cols()) = v;
    return rank_of(ext) == rank_of(basis);
}

// Coordinates of the orthogonal projection of x onto span(basis), in that basis.
// Normal equations keep everything rational; basis columns must be independent.
template <typename S>
Vec<S> projection_coords(const Mat<S>& basis, const Vec<S>& x)
{
    Mat<S> gram = basis.transpose() * basis;
    Vec<S> rhs = basis.transpose() * x;
    auto coords = solve_exact(gram, rhs);
    if (!coords) throw std::logic_error("projection_coords: dependent basis");
    return *coords;
}

// x minus its orthogonal projection onto span(basis): the component in the
// orthogonal complement of the span.
template <typename S>
Vec<S> project_onto_complement(const Mat<S>& basis, const Vec<S>& x)
{
    if (basis.cols() == 0) return x;
    return x - basis * projection_coords(basis, x);
}

// Exact inverse of a nonsingular square matrix by Gauss-Jordan.
template <typename S>
Mat<S> inverse_exact(const Mat<S>& a)
{
    const int n = static_cast<int>(a.rows());
    Mat<S> work(n, 2 * n);
    work.leftCols(n) = a;
    work.rightCols(n) = Mat<S>::Identity(n, n);
    if (row_reduce(work) != n) throw std::logic_error("inverse_exact: singular matrix");
    return work.rightCols(n);
}

// Scales a rational vector to a primitive integer vector; direction preserved.
inline VecQ primitive(const VecQ& v)
{
    Int lcm_den = 1;
    for (int i = 0; i < v.size(); ++i)
        lcm_den = lcm(lcm_den, rat_den(v(i)));
    Int gcd_num = 0;
    VecQ scaled = v;
    for (int i = 0; i < v.size(); ++i) {
        scaled(i) = v(i) * Rat(lcm_den);
        gcd_num = gcd(gcd_num, rat_num(scaled(i)));
    }
    if (gcd_num == 0) return scaled;
    for (int i = 0; i < v.size(); ++i) scaled(i) /= Rat(gcd_num);
    return scaled;
}

// Primitive vector with canonical sign: first nonzero entry positive.
inline VecQ canonical_direction(const VecQ& v)
{
    VecQ p = primitive(v);
    for (int i = 0; i < p.size(); ++i) {
        if (p(i) == 0) continue;
        if (p(i) < 0) p = -p;
        break;
    }
    return p;
}

} // namespace ctvlab
