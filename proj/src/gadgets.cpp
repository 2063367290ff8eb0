#include "ctvlab/gadgets.hpp"

namespace ctvlab {

namespace {

Rat det_exact(MatQ m)
{
    const int n = static_cast<int>(m.rows());
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) return 0;
        if (pivot != col) {
            m.row(pivot).swap(m.row(col));
            det = -det;
        }
        det *= m(col, col);
        const Rat inv = Rat(1) / m(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (m(r, col) == 0) continue;
            m.row(r) -= m(r, col) * inv * m.row(col);
        }
    }
    return det;
}

std::vector<VecQ> simplex_vertices(int m)
{
    std::vector<VecQ> v;
    VecQ e0 = VecQ::Zero(m);
    for (int i = 0; i < m; ++i) e0(i) = -1;
    v.push_back(e0);
    for (int i = 0; i < m; ++i) {
        VecQ e = VecQ::Zero(m);
        e(i) = 1;
        v.push_back(e);
    }
    return v;
}

// Squared (m-1)-volume of the facet spanned by the given vertices,
// times ((m-1)!)^2: the Gram determinant of its edge vectors.
Rat facet_gram(const std::vector<VecQ>& verts)
{
    const int n = static_cast<int>(verts.size()) - 1;
    MatQ edges(verts[0].size(), n);
    for (int i = 0; i < n; ++i) edges.col(i) = verts[i + 1] - verts[0];
    return det_exact(MatQ(edges.transpose() * edges));
}

Int factorial(int n)
{
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

VecQ facet_normal(int m, int j)
{
    // Boundary through all vertices except e_j, normalized to value 1 there.
    VecQ n(m);
    if (j == 0) {
        for (int i = 0; i < m; ++i) n(i) = 1;
    } else {
        for (int i = 0; i < m; ++i) n(i) = 1;
        n(j - 1) = -m;
    }
    return n;
}

} // namespace

MatQ battery_points(const VecQ& center, const Rat& rho, int size)
{
    if (size < 1) throw input_error("battery size must be >= 1");
    const int dim = static_cast<int>(center.size());
    if (size == 1) {
        MatQ one(dim, 1);
        one.col(0) = center;
        return one;
    }
    MatQ pts(dim, size);
    for (int t = 0; t < size; ++t) {
        VecQ p = center;
        const int axis = (t / 2) % dim;
        p(axis) += (t % 2 == 0 ? rho : -rho);
        pts.col(t) = p;
    }
    return pts;
}

GadgetInstance make_tight_depth_instance(int d, int k, const Rat& eps, int battery_size)
{
    if (!(0 <= k && k < d && d <= 3)) throw input_error("tight-depth gadget requires 0 <= k < d <= 3");
    if (!(eps > 0 && eps < Rat(1, 4))) throw input_error("epsilon must lie in (0, 1/4)");
    if (battery_size < 1) throw input_error("battery size must be >= 1");
    const ComplexStructure cs(d);
    const Rat eps2 = eps * eps, eps3 = eps2 * eps;

    GadgetInstance g{"tight-depth", d, k, eps, battery_size, {}};

    // Measure 0: batteries of radius eps^3 at x_1 = eps^2 e_{k+1},
    // x_2 = eps^2 i e_{k+1}, ..., x_0 = -(x_1 + ... + x_{2(d-k)}).
    std::vector<VecQ> centers;
    VecQ x0 = VecQ::Zero(2 * d);
    for (int j = k; j < d; ++j) {
        VecQ real_dir = cs.complex_basis_vector(j);
        VecQ imag_dir = cs.apply_j(real_dir);
        centers.push_back(eps2 * real_dir);
        centers.push_back(eps2 * imag_dir);
        x0 -= eps2 * real_dir + eps2 * imag_dir;
    }
    centers.insert(centers.begin(), x0);
    MatQ pts(2 * d, static_cast<int>(centers.size()) * battery_size);
    int at = 0;
    for (const auto& c : centers) {
        MatQ b = battery_points(c, eps3, battery_size);
        for (int i = 0; i < b.cols(); ++i) pts.col(at++) = b.col(i);
    }
    g.measures.push_back(MassCloud::uniform(pts));

    for (int j = 0; j < k; ++j)
        g.measures.push_back(
            MassCloud::uniform(battery_points(cs.complex_basis_vector(j), eps, battery_size)));
    return g;
}

GadgetInstance make_too_many_measures_instance(int d, int k, const Rat& eps, int battery_size)
{
    if (!(0 <= k && k < d && d <= 3))
        throw input_error("too-many-measures gadget requires 0 <= k < d <= 3");
    if (!(eps > 0 && eps < Rat(1, 4))) throw input_error("epsilon must lie in (0, 1/4)");
    const ComplexStructure cs(d);

    GadgetInstance g{"too-many-measures", d, k, eps, battery_size, {}};
    g.measures.push_back(MassCloud::uniform(battery_points(VecQ::Zero(2 * d), eps, battery_size)));
    for (int j = 0; j <= k; ++j)
        g.measures.push_back(
            MassCloud::uniform(battery_points(cs.complex_basis_vector(j), eps, battery_size)));
    return g;
}

bool TranslatedHalfspace::contains(const VecQ& x) const
{
    // n·x <= base - r*sqrt(norm2)  <=>  r*sqrt(norm2) <= base - n·x.
    Rat slack = base - normal.dot(x);
    if (slack < 0) return false;
    return r * r * norm2 <= slack * slack;
}

bool below_inradius(int m, const Rat& r)
{
    if (m < 2) throw input_error("separating_halfspace requires m >= 2");
    if (r <= 0) return false;
    auto verts = simplex_vertices(m);
    // a0, a* are squared facet volumes (times ((m-1)!)^2); facets 1..m are
    // congruent by coordinate symmetry.
    std::vector<VecQ> f0(verts.begin() + 1, verts.end());
    std::vector<VecQ> fstar;
    for (int i = 0; i < m; ++i) fstar.push_back(verts[i]); // drop e_m
    const Int fm1 = factorial(m - 1);
    const Rat scale = Rat(1) / Rat(fm1 * fm1);
    Rat a0 = facet_gram(f0) * scale;
    Rat astar = facet_gram(fstar) * scale;
    // volume of the simplex: |det(e_i - e_0)| / m! = (m+1)/m!
    const Int fm = factorial(m);
    Rat vol = Rat(Int(m + 1)) / Rat(fm);

    // r < R = m*vol / (sqrt(a0) + m*sqrt(a*)):
    // r^2 (a0 + m^2 a* + 2m sqrt(a0 a*)) < m^2 vol^2.
    Rat r2 = r * r;
    Rat t = Rat(m * m) * vol * vol - r2 * (a0 + Rat(m * m) * astar);
    if (t <= 0) return false;
    return 4 * Rat(m * m) * r2 * r2 * a0 * astar < t * t;
}

SeparationResult separating_halfspace(int m, const Rat& r, const VecQ& q)
{
    if (m < 2) throw input_error("separating_halfspace requires m >= 2");
    if (q.size() != m) throw input_error("query point has wrong dimension");
    if (!below_inradius(m, r))
        throw input_error("hypothesis violation: r is not below the inscribed radius R(m)");
    for (int j = 0; j <= m; ++j) {
        VecQ n = facet_normal(m, j);
        TranslatedHalfspace h{n, Rat(1), r, Rat(n.dot(n))};
        if (h.contains(q)) return {j, h};
    }
    throw std::logic_error("separating_halfspace: translated facets failed to cover");
}

bool verify_separation(int m, const Rat& r, const VecQ& q, const SeparationResult& sep)
{
    auto verts = simplex_vertices(m);
    const TranslatedHalfspace& h = sep.halfspace;
    if (sep.j < 0 || sep.j > m) return false;
    if (h.normal != facet_normal(m, sep.j) || h.base != 1 || h.r != r) return false;
    if (h.norm2 != h.normal.dot(h.normal)) return false;
    if (!h.contains(q)) return false;
    if (!h.contains(verts[sep.j])) return false;
    // Open r-balls around the other vertices miss the halfspace iff their
    // distance to it is >= r, i.e. n·e_l - 1 + r*sqrt(norm2) >= r*sqrt(norm2).
    for (int l = 0; l <= m; ++l) {
        if (l == sep.j) continue;
        if (h.normal.dot(verts[l]) < 1) return false;
    }
    return true;
}

bool projection_norm_check(int d, int k, const Rat& eps, int samples, std::uint64_t seed, int* failures)
{
    if (!(1 <= k && k < d)) throw input_error("projection_norm_check requires 1 <= k < d");
    if (eps < 0) throw input_error("epsilon must be nonnegative");
    const ComplexStructure cs(d);
    SplitMix64 rng(seed);

    // Fixed battery of rational unit vectors: coordinate vectors and 3-4-5
    // combinations in every coordinate plane.
    std::vector<VecQ> unit_battery;
    for (int i = 0; i < 2 * d; ++i) {
        VecQ e = VecQ::Zero(2 * d);
        e(i) = 1;
        unit_battery.push_back(e);
        unit_battery.push_back(VecQ(-e));
    }
    for (int i = 0; i < 2 * d; ++i)
        for (int j = i + 1; j < 2 * d; ++j)
            for (int si = -1; si <= 1; si += 2)
                for (int sj = -1; sj <= 1; sj += 2) {
                    VecQ v = VecQ::Zero(2 * d);
                    v(i) = Rat(3 * si, 5);
                    v(j) = Rat(4 * sj, 5);
                    unit_battery.push_back(v);
                }

    MatQ u_basis(2 * d, 2 * (d - k));
    for (int j = k; j < d; ++j) {
        u_basis.col(2 * (j - k)) = cs.complex_basis_vector(j);
        u_basis.col(2 * (j - k) + 1) = cs.apply_j(VecQ(cs.complex_basis_vector(j)));
    }

    int failed = 0;
    for (int s = 0; s < samples; ++s) {
        // y_0 near 0, y_j near e_j, inside the eps-balls by construction.
        std::vector<VecQ> y;
        for (int j = 0; j <= k; ++j) {
            VecQ c = j == 0 ? VecQ(VecQ::Zero(2 * d)) : cs.complex_basis_vector(j - 1);
            for (int i = 0; i < 2 * d; ++i) c(i) += eps * rng.symmetric_unit(64) / (2 * d);
            y.push_back(c);
        }
        MatQ dirs(2 * d, 2 * k);
        for (int j = 1; j <= k; ++j) {
            VecQ diff = y[j] - y[0];
            dirs.col(2 * (j - 1)) = diff;
            dirs.col(2 * (j - 1) + 1) = cs.apply_j(diff);
        }
        MatQ m(2 * d, 2 * d);
        m.leftCols(2 * k) = dirs;
        m.rightCols(2 * (d - k)) = u_basis;
        if (rank_of(m) != 2 * d) { // V_y not transversal to U
            ++failed;
            continue;
        }
        MatQ m_inv = inverse_exact(m);
        bool ok = true;
        for (const auto& v : unit_battery) {
            VecQ beta = m_inv * v;
            VecQ image = u_basis * beta.tail(2 * (d - k));
            if (image.dot(image) > 4) { ok = false; break; }
        }
        if (!ok) ++failed;
    }
    if (failures) *failures = failed;
    return failed == 0;
}

} // namespace ctvlab
