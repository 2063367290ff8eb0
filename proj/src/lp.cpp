#include "ctvlab/lp.hpp"

#include <algorithm>
#include <numeric>

namespace ctvlab {

void ExactLP::validate() const
{
    if (a.rows() != b.size() || static_cast<int>(row_type.size()) != rows() ||
        static_cast<int>(nonneg.size()) != cols())
        throw input_error("malformed LP: inconsistent dimensions");
    if (objective.size() != 0 && objective.size() != cols())
        throw input_error("malformed LP: objective has wrong dimension");
}

namespace {

// Dense tableau for the standardized system  [A' | S | R] z = b', z >= 0,
// where free variables have been split and rows flipped so that b' >= 0.
struct Tableau {
    MatQ body;               // m x (n_total + 1), last column = rhs
    std::vector<int> basis;  // basic column per row
    int n_total = 0;

    Rat& rhs(int r) { return body(r, n_total); }
    const Rat& rhs(int r) const { return body(r, n_total); }

    void pivot(int row, int col)
    {
        const Rat inv = Rat(1) / body(row, col);
        body.row(row) *= inv;
        for (int r = 0; r < body.rows(); ++r) {
            if (r == row || body(r, col) == 0) continue;
            body.row(r) -= body(r, col) * body.row(row);
        }
        basis[row] = col;
    }
};

// Minimizes cost over the tableau with Bland's rule (least-index entering,
// least-basis-index tie break on leaving).  Returns false iff unbounded;
// `reduced` receives the reduced costs at termination.
bool simplex_min(Tableau& t, const VecQ& cost, VecQ& reduced)
{
    const int m = static_cast<int>(t.body.rows());
    reduced = cost;
    for (int r = 0; r < m; ++r) {
        const Rat cb = cost(t.basis[r]);
        if (cb == 0) continue;
        for (int c = 0; c < t.n_total; ++c) reduced(c) -= cb * t.body(r, c);
    }
    for (;;) {
        int enter = -1;
        for (int c = 0; c < t.n_total; ++c)
            if (reduced(c) < 0) { enter = c; break; }
        if (enter < 0) return true;
        int leave = -1;
        Rat best_ratio = 0;
        for (int r = 0; r < m; ++r) {
            if (t.body(r, enter) <= 0) continue;
            Rat ratio = t.rhs(r) / t.body(r, enter);
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[r] < t.basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return false;
        const Rat coeff = reduced(enter);
        t.pivot(leave, enter);
        for (int c = 0; c < t.n_total; ++c) reduced(c) -= coeff * t.body(leave, c);
    }
}

Rat basic_cost(const Tableau& t, const VecQ& cost)
{
    Rat total = 0;
    for (int r = 0; r < static_cast<int>(t.body.rows()); ++r)
        total += cost(t.basis[r]) * t.rhs(r);
    return total;
}

} // namespace

LpResult lp_solve(const ExactLP& lp)
{
    lp.validate();
    const int m = lp.rows();
    const int n = lp.cols();

    // Column layout: one column per nonneg variable, two per free variable
    // (x = u - w), then one slack per <= row, then one artificial per row.
    std::vector<int> var_col(n), var_negcol(n, -1);
    int col = 0;
    for (int j = 0; j < n; ++j) {
        var_col[j] = col++;
        if (!lp.nonneg[j]) var_negcol[j] = col++;
    }
    std::vector<int> slack_col(m, -1);
    for (int i = 0; i < m; ++i)
        if (lp.row_type[i] == ExactLP::Row::le) slack_col[i] = col++;
    const int n_struct = col;
    const int n_total = n_struct + m;

    Tableau t;
    t.n_total = n_total;
    t.body = MatQ::Zero(m, n_total + 1);
    t.basis.resize(m);
    std::vector<bool> flipped(m, false);
    for (int i = 0; i < m; ++i) {
        const Rat sign = lp.b(i) < 0 ? Rat(-1) : Rat(1);
        flipped[i] = lp.b(i) < 0;
        for (int j = 0; j < n; ++j) {
            t.body(i, var_col[j]) = sign * lp.a(i, j);
            if (var_negcol[j] >= 0) t.body(i, var_negcol[j]) = -sign * lp.a(i, j);
        }
        if (slack_col[i] >= 0) t.body(i, slack_col[i]) = sign;
        t.body(i, n_struct + i) = 1;
        t.rhs(i) = sign * lp.b(i);
        t.basis[i] = n_struct + i;
    }

    VecQ phase1 = VecQ::Zero(n_total);
    for (int i = 0; i < m; ++i) phase1(n_struct + i) = 1;
    VecQ reduced;
    simplex_min(t, phase1, reduced); // bounded: cost is >= 0 on the feasible cone

    LpResult result;
    if (basic_cost(t, phase1) > 0) {
        result.status = LpResult::Status::infeasible;
        // Phase-1 dual read off the reduced costs under the artificial
        // columns: y_i = 1 - reduced(artificial_i) in flipped orientation.
        result.farkas = VecQ(m);
        for (int i = 0; i < m; ++i) {
            Rat y = Rat(1) - reduced(n_struct + i);
            result.farkas(i) = flipped[i] ? y : -y;
        }
        return result;
    }

    // Drive leftover artificials out of the basis.  Rows that offer no
    // structural pivot are identically zero (redundant) and stay inert.
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < n_struct) continue;
        int piv = -1;
        for (int c = 0; c < n_struct; ++c)
            if (t.body(r, c) != 0) { piv = c; break; }
        if (piv >= 0) t.pivot(r, piv);
    }
    // Artificial columns are dead from here on.
    t.body.middleCols(n_struct, m).setZero();

    if (lp.objective.size() != 0) {
        VecQ phase2 = VecQ::Zero(n_total);
        for (int j = 0; j < n; ++j) {
            phase2(var_col[j]) = lp.objective(j);
            if (var_negcol[j] >= 0) phase2(var_negcol[j]) = -lp.objective(j);
        }
        if (!simplex_min(t, phase2, reduced)) {
            result.status = LpResult::Status::unbounded;
            return result;
        }
    }

    result.status = LpResult::Status::feasible;
    result.point = VecQ::Zero(n);
    for (int r = 0; r < m; ++r) {
        const int c = t.basis[r];
        for (int j = 0; j < n; ++j) {
            if (c == var_col[j]) result.point(j) += t.rhs(r);
            else if (c == var_negcol[j]) result.point(j) -= t.rhs(r);
        }
    }
    if (lp.objective.size() != 0) result.value = lp.objective.dot(result.point);
    return result;
}

bool farkas_certifies(const ExactLP& lp, const VecQ& y)
{
    if (y.size() != lp.rows()) return false;
    for (int i = 0; i < lp.rows(); ++i)
        if (lp.row_type[i] == ExactLP::Row::le && y(i) < 0) return false;
    VecQ combo = lp.a.transpose() * y;
    for (int j = 0; j < lp.cols(); ++j) {
        if (lp.nonneg[j] ? combo(j) < 0 : combo(j) != 0) return false;
    }
    return y.dot(lp.b) < 0;
}

namespace {

struct LexProblem {
    MatQ objective; // lexicographic functional rows over current variables
    std::vector<std::pair<VecQ, Rat>> cons;
    VecQ lo, hi;
};

// Lexmin of the box alone: rows of F pin coordinates successively; coordinates
// untouched by any row fall back to their lower bound.
VecQ box_lexmin(const MatQ& f, const VecQ& lo, const VecQ& hi)
{
    const int dim = static_cast<int>(lo.size());
    VecQ x(dim);
    std::vector<bool> pinned(dim, false);
    for (int r = 0; r < f.rows(); ++r)
        for (int j = 0; j < dim; ++j) {
            if (pinned[j] || f(r, j) == 0) continue;
            x(j) = f(r, j) > 0 ? lo(j) : hi(j);
            pinned[j] = true;
        }
    for (int j = 0; j < dim; ++j)
        if (!pinned[j]) x(j) = lo(j);
    return x;
}

std::optional<VecQ> lex_solve(const LexProblem& p, SplitMix64& rng)
{
    const int dim = static_cast<int>(p.lo.size());
    if (dim == 0) {
        for (const auto& [a, b] : p.cons)
            if (b < 0) return std::nullopt;
        return VecQ(0);
    }
    for (int j = 0; j < dim; ++j)
        if (p.lo(j) > p.hi(j)) return std::nullopt;

    std::vector<int> order(p.cons.size());
    std::iota(order.begin(), order.end(), 0);
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);

    VecQ x = box_lexmin(p.objective, p.lo, p.hi);
    for (std::size_t step = 0; step < order.size(); ++step) {
        const auto& [a, b] = p.cons[order[step]];
        if (a.dot(x) <= b) continue;

        // Unique lex optimum => the new optimum is tight here; substitute one
        // variable away and recurse on the processed prefix.
        int piv = -1;
        for (int j = dim - 1; j >= 0; --j)
            if (a(j) != 0) { piv = j; break; }
        if (piv < 0) return std::nullopt;

        auto reduce_row = [&](const VecQ& row, const Rat& rhs) {
            const Rat factor = row(piv) / a(piv);
            VecQ out(dim - 1);
            int outj = 0;
            for (int j = 0; j < dim; ++j) {
                if (j == piv) continue;
                out(outj++) = row(j) - factor * a(j);
            }
            return std::make_pair(out, rhs - factor * b);
        };

        LexProblem sub;
        sub.lo = VecQ(dim - 1);
        sub.hi = VecQ(dim - 1);
        int outj = 0;
        for (int j = 0; j < dim; ++j) {
            if (j == piv) continue;
            sub.lo(outj) = p.lo(j);
            sub.hi(outj) = p.hi(j);
            ++outj;
        }
        sub.objective = MatQ(p.objective.rows(), dim - 1);
        for (int r = 0; r < p.objective.rows(); ++r) {
            VecQ row = p.objective.row(r).transpose();
            sub.objective.row(r) = reduce_row(row, Rat(0)).first.transpose();
        }
        {
            VecQ unit = VecQ::Zero(dim);
            unit(piv) = 1;
            sub.cons.push_back(reduce_row(unit, p.hi(piv)));
            sub.cons.push_back(reduce_row(-unit, -p.lo(piv)));
        }
        for (std::size_t prev = 0; prev < step; ++prev) {
            const auto& [pa, pb] = p.cons[order[prev]];
            sub.cons.push_back(reduce_row(pa, pb));
        }

        auto rest = lex_solve(sub, rng);
        if (!rest) return std::nullopt;
        VecQ full(dim);
        outj = 0;
        Rat acc = b;
        for (int j = 0; j < dim; ++j) {
            if (j == piv) continue;
            full(j) = (*rest)(outj++);
            acc -= a(j) * full(j);
        }
        full(piv) = acc / a(piv);
        x = full;
    }
    return x;
}

} // namespace

std::optional<VecQ> lex_feasible(const std::vector<std::pair<VecQ, Rat>>& constraints,
                                 const VecQ& lo, const VecQ& hi, std::uint64_t shuffle_seed)
{
    LexProblem p;
    p.cons = constraints;
    p.lo = lo;
    p.hi = hi;
    p.objective = MatQ::Identity(lo.size(), lo.size());
    SplitMix64 rng(shuffle_seed);
    return lex_solve(p, rng);
}

} // namespace ctvlab
