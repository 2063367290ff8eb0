#include "ctvlab/regions.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "ctvlab/lp.hpp"

namespace ctvlab {

namespace {

struct VecLess {
    bool operator()(const VecQ& x, const VecQ& y) const
    {
        if (x.size() != y.size()) return x.size() < y.size();
        for (int i = 0; i < x.size(); ++i) {
            if (x(i) < y(i)) return true;
            if (x(i) > y(i)) return false;
        }
        return false;
    }
};

// Weighted t-quantile of projections: the largest value c with
// weight{ <u,p_i> >= c } >= t.
Rat quantile_offset(const std::vector<Rat>& values, const std::vector<Rat>& weights, const Rat& t)
{
    std::vector<int> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return values[i] > values[j]; });
    Rat cum = 0;
    for (int i : order) {
        cum += weights[i];
        if (cum >= t) return values[i];
    }
    return values[order.back()]; // t <= 1 and weights sum to 1, so unreachable
}

void add_equality_pin(std::vector<HalfspaceLE>& out, const VecQ& normal, const Rat& offset)
{
    out.push_back({normal, offset});
    out.push_back({VecQ(-normal), -offset});
}

} // namespace

std::vector<HalfspaceLE> depth_region_constraints(const MatQ& points, const std::vector<Rat>& weights,
                                                  const Rat& t)
{
    const int dim = static_cast<int>(points.rows());
    const int n = static_cast<int>(points.cols());
    if (n == 0) throw input_error("depth region of an empty cloud");
    if (t <= 0 || t > 1) throw input_error("depth threshold must satisfy 0 < t <= 1");

    std::vector<HalfspaceLE> out;
    const VecQ base = points.col(0);

    // Affine hull of the points; for t > 0 the region is contained in it.
    MatQ hull(dim, 0);
    for (int i = 1; i < n; ++i) {
        VecQ d = points.col(i) - base;
        if (d.isZero()) continue;
        MatQ ext(dim, hull.cols() + 1);
        ext.leftCols(hull.cols()) = hull;
        ext.col(hull.cols()) = d;
        if (rank_of(ext) == ext.cols()) hull = ext;
    }
    const int a = static_cast<int>(hull.cols());

    if (a < dim) {
        MatQ perp = kernel_basis(MatQ(hull.transpose()));
        for (int c = 0; c < perp.cols(); ++c) {
            VecQ nu = canonical_direction(VecQ(perp.col(c)));
            add_equality_pin(out, nu, nu.dot(base));
        }
    }
    if (a == 0) return out; // single location: region = {base}

    // Hull coordinates of the points.
    MatQ coords(a, n);
    for (int i = 0; i < n; ++i)
        coords.col(i) = projection_coords(hull, VecQ(points.col(i) - base));

    // Distinct difference lines.
    std::map<VecQ, bool, VecLess> lines;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            VecQ d = coords.col(i) - coords.col(j);
            if (!d.isZero()) lines.emplace(canonical_direction(d), true);
        }
    std::vector<VecQ> dir_list;
    dir_list.reserve(lines.size());
    for (const auto& [v, _] : lines) dir_list.push_back(v);
    const int nd = static_cast<int>(dir_list.size());

    // Candidate facet normals: kernels of (a-1)-subsets of difference lines.
    std::map<VecQ, Rat, VecLess> tightest; // canonical normal -> min offset
    auto add_normal = [&](const VecQ& u) {
        for (int sign = 0; sign < 2; ++sign) {
            VecQ v = sign == 0 ? u : VecQ(-u);
            std::vector<Rat> vals(n);
            for (int i = 0; i < n; ++i) vals[i] = v.dot(coords.col(i));
            Rat c = quantile_offset(vals, weights, t);
            auto it = tightest.find(v);
            if (it == tightest.end()) tightest.emplace(v, c);
            else if (c < it->second) it->second = c;
        }
    };

    if (a == 1) {
        VecQ one(1);
        one(0) = 1;
        add_normal(one);
    } else {
        std::vector<int> idx(a - 1);
        auto rec = [&](auto&& self, int pos, int start) -> void {
            if (pos == a - 1) {
                MatQ rows(a - 1, a);
                for (int i = 0; i < a - 1; ++i) rows.row(i) = dir_list[idx[i]].transpose();
                MatQ kernel = kernel_basis(rows);
                if (kernel.cols() == 1) add_normal(canonical_direction(VecQ(kernel.col(0))));
                return;
            }
            for (int i = start; i < nd; ++i) {
                idx[pos] = i;
                self(self, pos + 1, i + 1);
            }
        };
        rec(rec, 0, 0);
    }

    // Map hull-coordinate constraints u·y <= c back to ambient x = base + H y:
    // normal A = H (HᵀH)^{-1} u, offset c + A·base.
    MatQ gram = hull.transpose() * hull;
    for (const auto& [u, c] : tightest) {
        auto lifted = solve_exact(gram, u);
        VecQ ambient = hull * *lifted;
        out.push_back({ambient, c + ambient.dot(base)});
    }
    return out;
}

MatQ dd_vertices(const std::vector<HalfspaceLE>& constraints, const VecQ& lo, const VecQ& hi)
{
    const int dim = static_cast<int>(lo.size());

    std::vector<HalfspaceLE> active; // box faces first, then processed constraints
    for (int j = 0; j < dim; ++j) {
        VecQ e = VecQ::Zero(dim);
        e(j) = 1;
        active.push_back({e, hi(j)});
        active.push_back({VecQ(-e), -lo(j)});
    }

    std::vector<VecQ> verts;
    for (int corner = 0; corner < (1 << dim); ++corner) {
        VecQ v(dim);
        for (int j = 0; j < dim; ++j) v(j) = (corner >> j) & 1 ? hi(j) : lo(j);
        verts.push_back(v);
    }
    if (dim == 0) verts.assign(1, VecQ(0));

    for (const auto& h : constraints) {
        std::vector<Rat> slack(verts.size());
        bool any_out = false;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            slack[i] = h.b - h.a.dot(verts[i]);
            if (slack[i] < 0) any_out = true;
        }
        active.push_back(h);
        if (!any_out) continue;

        std::vector<std::vector<int>> tight(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t c = 0; c < active.size(); ++c)
                if (active[c].a.dot(verts[i]) == active[c].b) tight[i].push_back(static_cast<int>(c));

        std::vector<VecQ> next;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (slack[i] >= 0) next.push_back(verts[i]);

        // Candidate new vertices: crossings of polytope edges with the cut.
        // Two vertices span an edge iff their common tight constraints have
        // rank dim-1 (the edge line), which is exact under degeneracy.
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (slack[i] < 0) continue;
            for (std::size_t j = 0; j < verts.size(); ++j) {
                if (slack[j] >= 0) continue;
                std::vector<int> shared;
                std::set_intersection(tight[i].begin(), tight[i].end(), tight[j].begin(), tight[j].end(),
                                      std::back_inserter(shared));
                if (static_cast<int>(shared.size()) < dim - 1) continue;
                MatQ rows(static_cast<int>(shared.size()), dim);
                for (std::size_t r = 0; r < shared.size(); ++r)
                    rows.row(static_cast<int>(r)) = active[shared[r]].a.transpose();
                if (rank_of(rows) != dim - 1) continue;
                const Rat lambda = slack[i] / (slack[i] - slack[j]);
                next.push_back(VecQ(verts[i] + lambda * (verts[j] - verts[i])));
            }
        }

        std::sort(next.begin(), next.end(), [](const VecQ& x, const VecQ& y) { return VecLess()(x, y); });
        next.erase(std::unique(next.begin(), next.end(), [](const VecQ& x, const VecQ& y) { return x == y; }),
                   next.end());
        verts = std::move(next);
        if (verts.empty()) break;
    }

    MatQ out(dim, static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) out.col(static_cast<int>(i)) = verts[i];
    return out;
}

DepthRegion centerpoint_region(const MassCloud& cloud, const Rat& t)
{
    const int dim = cloud.dim();
    if (dim > kMaxRegionDim)
        throw input_error("unsupported dimension for centerpoint_region: " + std::to_string(dim) +
                          " (max " + std::to_string(kMaxRegionDim) + ")");

    DepthRegion region;
    region.threshold = t;
    region.halfspaces = depth_region_constraints(cloud.points, cloud.weights, t);

    VecQ lo(dim), hi(dim);
    for (int j = 0; j < dim; ++j) {
        lo(j) = cloud.points(j, 0);
        hi(j) = cloud.points(j, 0);
        for (int i = 1; i < cloud.size(); ++i) {
            lo(j) = std::min(lo(j), cloud.points(j, i));
            hi(j) = std::max(hi(j), cloud.points(j, i));
        }
    }
    region.vertices = dd_vertices(region.halfspaces, lo, hi);

    if (region.vertices.cols() == 0) {
        // Disambiguate by an LP probe; within the bounding box the double
        // description cannot drop a nonempty region.
        ExactLP lp;
        const int m = static_cast<int>(region.halfspaces.size());
        lp.a = MatQ(m, dim);
        lp.b = VecQ(m);
        for (int i = 0; i < m; ++i) {
            lp.a.row(i) = region.halfspaces[i].a.transpose();
            lp.b(i) = region.halfspaces[i].b;
        }
        lp.row_type.assign(m, ExactLP::Row::le);
        lp.nonneg.assign(dim, false);
        region.empty = lp_feasible(lp).status == LpResult::Status::infeasible;
        if (!region.empty)
            throw std::logic_error("centerpoint_region: vertex enumeration lost a feasible region");
    } else {
        for (int c = 0; c < region.vertices.cols(); ++c) {
            DepthValue check = tukey_depth(cloud, VecQ(region.vertices.col(c)));
            if (check.value < t)
                throw std::logic_error("centerpoint_region: vertex fails its depth re-check");
        }
    }
    return region;
}

VecQ centerpoint_barycenter(const MassCloud& cloud, const Rat& t)
{
    DepthRegion region = centerpoint_region(cloud, t);
    if (region.vertices.cols() == 0)
        throw input_error("no-barycenter: centerpoint region is empty");
    VecQ sum = VecQ::Zero(cloud.dim());
    for (int c = 0; c < region.vertices.cols(); ++c) sum += region.vertices.col(c);
    return sum / Rat(region.vertices.cols());
}

} // namespace ctvlab
