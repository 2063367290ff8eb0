#include "ctvlab/schur.hpp"

#include <algorithm>

namespace ctvlab {

Partition::Partition(std::vector<int> p) : parts(std::move(p))
{
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw input_error("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw input_error("partition parts must be weakly decreasing");
    }
}

int Partition::weight() const
{
    int w = 0;
    for (int p : parts) w += p;
    return w;
}

bool Partition::fits_in(int max_rows, int max_cols) const
{
    if (rows() > max_rows) return false;
    return parts.empty() || parts[0] <= max_cols;
}

Partition Partition::conjugate() const
{
    if (parts.empty()) return {};
    std::vector<int> conj(parts[0], 0);
    for (int p : parts)
        for (int i = 0; i < p; ++i) ++conj[i];
    return Partition(conj);
}

void SchurClass::add(const Partition& p, Int c)
{
    c = mod_reduce(std::move(c), ring.modulus);
    auto it = coeffs.find(p);
    if (it == coeffs.end()) {
        if (c != 0) coeffs.emplace(p, std::move(c));
        return;
    }
    it->second = mod_reduce(it->second + c, ring.modulus);
    if (it->second == 0) coeffs.erase(it);
}

SchurClass schur_unit(const SchurRing& ring)
{
    SchurClass c{ring, {}};
    c.add(Partition(), 1);
    return c;
}

SchurClass schur_single(const SchurRing& ring, const Partition& p, Int coeff)
{
    if (!p.fits_in(ring.max_rows(), ring.max_cols()))
        throw input_error("partition does not fit the ring's rectangle");
    SchurClass c{ring, {}};
    c.add(p, std::move(coeff));
    return c;
}

SchurClass schur_add(const SchurClass& a, const SchurClass& b)
{
    if (!(a.ring == b.ring)) throw input_error("schur class ring mismatch");
    SchurClass out = a;
    for (const auto& [p, c] : b.coeffs) out.add(p, c);
    return out;
}

std::vector<Partition> pieri_column(const Partition& lambda, int j, int max_rows, int max_cols)
{
    // Add a vertical strip of j boxes: at most one box per row, result weakly
    // decreasing, at most max_rows rows, truncated at max_cols columns.
    std::vector<Partition> out;
    std::vector<int> padded(max_rows, 0);
    for (int i = 0; i < lambda.rows() && i < max_rows; ++i) padded[i] = lambda.parts[i];
    if (lambda.rows() > max_rows) return out;

    std::vector<int> cur(max_rows, 0);
    auto rec = [&](auto&& self, int row, int left) -> void {
        if (max_rows - row < left) return;
        if (row == max_rows) {
            if (left != 0) return;
            std::vector<int> parts;
            for (int v : cur)
                if (v > 0) parts.push_back(v);
            Partition mu{parts};
            if (mu.fits_in(max_rows, max_cols)) out.push_back(std::move(mu));
            return;
        }
        for (int add = 0; add <= 1 && add <= left; ++add) {
            cur[row] = padded[row] + add;
            if (cur[row] == 0 && left - add > 0) { // rows below would be longer
                continue;
            }
            if (row > 0 && cur[row] > cur[row - 1]) continue;
            self(self, row + 1, left - add);
        }
        cur[row] = 0;
    };
    rec(rec, 0, j);
    return out;
}

namespace {

// Dual Jacobi-Trudi expansion of s_mu into signed products of elementary
// classes: s_mu = det( e_{mu'_s - s + t} ), expanded over permutations.
struct ETerm {
    int sign;
    std::vector<int> es; // e-indices, zeros skipped
};

std::vector<ETerm> elementary_decomposition(const Partition& mu, int max_e)
{
    std::vector<ETerm> out;
    const int ell = mu.parts.empty() ? 0 : mu.parts[0];
    if (ell == 0) {
        out.push_back({1, {}});
        return out;
    }
    Partition conj = mu.conjugate();
    std::vector<int> perm(ell);
    for (int i = 0; i < ell; ++i) perm[i] = i;
    do {
        int sign = 1;
        for (int i = 0; i < ell; ++i)
            for (int j = i + 1; j < ell; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        std::vector<int> es;
        bool dead = false;
        for (int s = 0; s < ell; ++s) {
            int e = conj.col(s) - (s + 1) + (perm[s] + 1);
            if (e < 0 || e > max_e) { dead = true; break; }
            if (e > 0) es.push_back(e);
        }
        if (!dead) out.push_back({sign, std::move(es)});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

SchurClass schur_multiply(const SchurClass& a, const SchurClass& b)
{
    if (!(a.ring == b.ring)) throw input_error("schur class ring mismatch");
    const SchurRing& ring = a.ring;
    SchurClass out{ring, {}};
    for (const auto& [mu, cb] : b.coeffs) {
        for (const auto& term : elementary_decomposition(mu, ring.max_rows())) {
            // Apply the e-sequence to every term of a via Pieri steps.
            SchurClass acc{ring, {}};
            for (const auto& [lam, ca] : a.coeffs) acc.add(lam, ca * cb * term.sign);
            for (int e : term.es) {
                SchurClass next{ring, {}};
                for (const auto& [lam, c] : acc.coeffs)
                    for (const auto& mu2 : pieri_column(lam, e, ring.max_rows(), ring.max_cols()))
                        next.add(mu2, c);
                acc = std::move(next);
                if (acc.is_zero()) break;
            }
            out = schur_add(out, acc);
        }
    }
    return out;
}

SchurClass schur_power(const SchurClass& a, int e)
{
    SchurClass out = schur_unit(a.ring);
    for (int i = 0; i < e; ++i) out = schur_multiply(out, a);
    return out;
}

std::vector<Poly> presentation_ideal(int k, int d)
{
    if (!(1 <= k && k <= d)) throw input_error("presentation_ideal requires 1 <= k <= d");
    // Inverse of 1 + c_1 + ... + c_k by homogeneous recursion:
    // B_0 = 1, B_t = -sum_{i=1..min(k,t)} c_i B_{t-i}  (deg c_i = i).
    std::vector<Poly> b;
    b.push_back(Poly::constant(k, 1));
    for (int t = 1; t <= d; ++t) {
        Poly bt = Poly::zero(k);
        for (int i = 1; i <= std::min(k, t); ++i)
            bt = poly_add(bt, poly_scale(poly_mul(Poly::variable(k, i - 1), b[t - i]), -1));
        b.push_back(std::move(bt));
    }
    std::vector<Poly> gens;
    for (int t = d - k + 1; t <= d; ++t) gens.push_back(b[t]);
    return gens;
}

Poly splitting_pullback(const Poly& chern_poly, int k)
{
    // e_j(u_1..u_k) built by the coefficient recursion of prod (1 + u_i X).
    std::vector<Poly> es(k + 1, Poly::zero(k));
    es[0] = Poly::constant(k, 1);
    for (int i = 0; i < k; ++i) {
        for (int j = std::min(i + 1, k); j >= 1; --j)
            es[j] = poly_add(es[j], poly_mul(es[j - 1], Poly::variable(k, i)));
    }
    std::vector<Poly> images;
    for (int j = 1; j <= chern_poly.nvars; ++j)
        images.push_back(j <= k ? es[j] : Poly::zero(k));
    return poly_substitute(chern_poly, images, k);
}

EulerPowerReport euler_power_nonvanishing(int n, int d, int m, unsigned p)
{
    if (!(1 <= n && n <= d)) throw input_error("euler_power_nonvanishing requires 1 <= n <= d");
    if (m < 0) throw input_error("euler_power_nonvanishing requires m >= 0");
    SchurRing ring{n, d, p};
    if (m == 0) return {true, schur_unit(ring)};
    if (ring.max_cols() == 0) // G_d(C^d) is a point: c_n is already zero there
        return {false, SchurClass{ring, {}}};
    SchurClass euler = schur_single(ring, Partition(std::vector<int>(n, 1)));
    SchurClass power = schur_power(euler, m);
    return {!power.is_zero(), power};
}

bool projectivization_nonvanishing(int n, int d, int m)
{
    if (!(1 <= n && n < d)) throw input_error("projectivization_nonvanishing requires 1 <= n < d");
    if (m < 0) throw input_error("projectivization_nonvanishing requires m >= 0");
    const SchurRing ring{n, d, 2};
    const int rank = 2 * (d - n); // realified rank of the complement bundle

    // Complement Stiefel-Whitney classes: w_{2i} = c_i(complement) = s_{(i)} mod 2.
    std::vector<SchurClass> comp_w;
    comp_w.push_back(schur_unit(ring));
    for (int i = 1; i <= d - n; ++i)
        comp_w.push_back(schur_single(ring, Partition(std::vector<int>{i})));

    const SchurClass w_top = schur_single(ring, Partition(std::vector<int>(n, 1)));

    std::vector<SchurClass> module(rank, SchurClass{ring, {}});
    module[0] = schur_unit(ring);
    for (int step = 0; step < m; ++step) {
        std::vector<SchurClass> next(rank, SchurClass{ring, {}});
        for (int r = 0; r < rank; ++r) {
            if (module[r].is_zero()) continue;
            SchurClass lifted = schur_multiply(module[r], w_top);
            if (r + 1 < rank) {
                next[r + 1] = schur_add(next[r + 1], lifted);
            } else {
                // x^rank = sum_{i=1}^{d-n} x^{rank-2i} w_{2i}(complement)
                for (int i = 1; i <= d - n; ++i)
                    next[rank - 2 * i] =
                        schur_add(next[rank - 2 * i], schur_multiply(lifted, comp_w[i]));
            }
        }
        module = std::move(next);
    }
    for (const auto& c : module)
        if (!c.is_zero()) return true;
    return false;
}

std::vector<Int> rectangle_degree_counts(int k, int d)
{
    std::vector<Int> counts(k * (d - k) + 1, 0);
    std::vector<int> parts;
    auto rec = [&](auto&& self, int row, int prev, int total) -> void {
        counts[total] += 1;
        if (row == k) return;
        for (int v = 1; v <= prev; ++v) {
            if (total + v > k * (d - k)) break;
            parts.push_back(v);
            self(self, row + 1, v, total + v);
            parts.pop_back();
        }
    };
    rec(rec, 0, d - k, 0);
    return counts;
}

std::vector<Int> gaussian_binomial(int d, int k)
{
    // [d, k]_q via [n, k]_q = [n-1, k-1]_q + q^k [n-1, k]_q.
    std::vector<std::vector<std::vector<Int>>> table(d + 1);
    for (int n = 0; n <= d; ++n) {
        table[n].resize(std::min(n, k) + 1);
        for (int j = 0; j <= std::min(n, k); ++j) {
            std::vector<Int>& cell = table[n][j];
            if (j == 0 || j == n) {
                cell = {Int(1)};
                continue;
            }
            cell = table[n - 1][j - 1];
            if (j < n && j < static_cast<int>(table[n - 1].size())) {
                const std::vector<Int>& shifted = table[n - 1][j];
                if (cell.size() < shifted.size() + j) cell.resize(shifted.size() + j, 0);
                for (std::size_t i = 0; i < shifted.size(); ++i) cell[i + j] += shifted[i];
            }
        }
    }
    return table[d][k];
}

} // namespace ctvlab
