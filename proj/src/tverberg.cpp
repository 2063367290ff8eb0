#include "ctvlab/tverberg.hpp"

#include <algorithm>
#include <map>

#include "search_internal.hpp"

namespace ctvlab {

namespace {

bool is_power_of(int value, int p)
{
    if (value < 1) return false;
    while (value % p == 0) value /= p;
    return value == 1;
}

std::optional<int> common_prime_power_base(const std::vector<int>& rs)
{
    for (int p = 2; p <= 64; ++p) {
        bool prime = p >= 2;
        for (int q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (!prime) continue;
        bool all = true;
        for (int r : rs)
            if (!is_power_of(r, p)) all = false;
        if (all) return p;
    }
    return std::nullopt;
}

// H-representation of the convex hull of 2d points (columns): edge halfplanes
// for full-dimensional hulls, line-plus-caps for segments, coordinate pins for
// a single location.
std::vector<HalfspaceLE> hull_constraints_2d(const MatQ& pts)
{
    std::vector<VecQ> uniq;
    for (int i = 0; i < pts.cols(); ++i) {
        VecQ p = pts.col(i);
        bool seen = false;
        for (const auto& u : uniq)
            if (u == p) { seen = true; break; }
        if (!seen) uniq.push_back(p);
    }
    std::vector<HalfspaceLE> out;
    if (uniq.size() == 1) {
        for (int j = 0; j < 2; ++j) {
            VecQ e = VecQ::Zero(2);
            e(j) = 1;
            out.push_back({e, uniq[0](j)});
            out.push_back({VecQ(-e), -uniq[0](j)});
        }
        return out;
    }

    std::sort(uniq.begin(), uniq.end(), [](const VecQ& a, const VecQ& b) {
        return a(0) != b(0) ? a(0) < b(0) : a(1) < b(1);
    });
    auto cross = [](const VecQ& o, const VecQ& a, const VecQ& b) {
        return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
    };
    // Monotone chain; collinear points are dropped from the chain.
    std::vector<VecQ> hull;
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t base = hull.size();
        for (std::size_t i = 0; i < uniq.size(); ++i) {
            const VecQ& p = pass == 0 ? uniq[i] : uniq[uniq.size() - 1 - i];
            while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
                hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
    }

    if (hull.size() <= 2) { // all points collinear: segment between extremes
        const VecQ& p = uniq.front();
        const VecQ& q = uniq.back();
        VecQ e = q - p;
        VecQ n(2);
        n(0) = e(1);
        n(1) = -e(0);
        out.push_back({n, n.dot(p)});
        out.push_back({VecQ(-n), -n.dot(p)});
        out.push_back({VecQ(-e), -e.dot(p)});
        out.push_back({e, e.dot(q)});
        return out;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const VecQ& p = hull[i];
        const VecQ& q = hull[(i + 1) % hull.size()];
        VecQ e = q - p;
        VecQ n(2); // interior is left of the CCW edge
        n(0) = e(1);
        n(1) = -e(0);
        out.push_back({n, n.dot(p)});
    }
    return out;
}

struct BBox {
    VecQ lo, hi;
    bool valid = false;

    static BBox of(const MatQ& pts)
    {
        BBox b;
        b.lo = pts.rowwise().minCoeff();
        b.hi = pts.rowwise().maxCoeff();
        b.valid = true;
        return b;
    }
    BBox meet(const BBox& o) const
    {
        BBox b;
        b.lo = lo.cwiseMax(o.lo);
        b.hi = hi.cwiseMin(o.hi);
        b.valid = true;
        for (int j = 0; j < lo.size(); ++j)
            if (b.lo(j) > b.hi(j)) b.valid = false;
        return b;
    }
};

} // namespace

bool TvInstance::colored() const
{
    for (const auto& c : colors)
        if (!c.empty()) return true;
    return false;
}

bool TvInstance::within_theorem() const
{
    if (static_cast<int>(sets.size()) != k + 1) return false;
    if (variant == Variant::complex_plus_line) {
        for (int r : part_counts)
            if (!is_power_of(r, 2)) return false;
        return true;
    }
    if (colored()) {
        // Optimal colorful hypothesis: equal prime part counts, classes <= p-1.
        const int p = part_counts.empty() ? 0 : part_counts[0];
        for (int r : part_counts)
            if (r != p) return false;
        for (int q = 2; q < p; ++q)
            if (p % q == 0) return false;
        if (p < 2) return false;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            std::map<int, int> class_size;
            for (int c : colors[i]) ++class_size[c];
            for (const auto& [c, sz] : class_size)
                if (sz > p - 1) return false;
        }
        return true;
    }
    return common_prime_power_base(part_counts).has_value();
}

void TvInstance::validate() const
{
    if (!(0 <= k && k < d)) throw input_error("tverberg instance requires 0 <= k < d");
    if (sets.empty()) throw input_error("tverberg instance has no point sets");
    if (sets.size() != part_counts.size())
        throw input_error("part count list does not match the number of sets");
    if (!colors.empty() && colors.size() != sets.size())
        throw input_error("color list does not match the number of sets");
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (part_counts[i] < 1) throw input_error("part counts must be >= 1");
        if (sets[i].rows() != 2 * d) throw input_error("point set ambient dimension is not 2d");
        const int want = expected_size(part_counts[i]);
        if (static_cast<int>(sets[i].cols()) != want)
            throw input_error("set " + std::to_string(i) + " has " + std::to_string(sets[i].cols()) +
                              " points, size formula requires " + std::to_string(want));
        if (!colors.empty() && !colors[i].empty() &&
            static_cast<int>(colors[i].size()) != sets[i].cols())
            throw input_error("coloring of set " + std::to_string(i) + " has wrong length");
    }
}

PartitionStream::PartitionStream(int n, int r, const std::vector<int>* coloring)
    : n_(n), r_(r), coloring_(coloring), rgs_(n, 0)
{
    if (n < r || r < 1) done_ = true;
}

bool PartitionStream::advance()
{
    // Next restricted growth string: rgs_[i] <= 1 + max(prefix).
    for (int i = n_ - 1; i >= 1; --i) {
        int prefix_max = 0;
        for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs_[j]);
        if (rgs_[i] <= prefix_max && rgs_[i] < r_ - 1) {
            ++rgs_[i];
            for (int j = i + 1; j < n_; ++j) rgs_[j] = 0;
            return true;
        }
    }
    return false;
}

bool PartitionStream::admissible() const
{
    int top = 0;
    for (int v : rgs_) top = std::max(top, v);
    if (top != r_ - 1) return false;
    if (coloring_ && !coloring_->empty()) {
        for (int part = 0; part < r_; ++part) {
            std::vector<int> seen;
            for (int i = 0; i < n_; ++i) {
                if (rgs_[i] != part) continue;
                int c = (*coloring_)[i];
                if (std::find(seen.begin(), seen.end(), c) != seen.end()) return false;
                seen.push_back(c);
            }
        }
    }
    return true;
}

std::optional<std::vector<std::vector<int>>> PartitionStream::next()
{
    while (!done_) {
        if (!fresh_) {
            if (!advance()) {
                done_ = true;
                break;
            }
        }
        fresh_ = false;
        if (admissible()) {
            std::vector<std::vector<int>> parts(r_);
            for (int i = 0; i < n_; ++i) parts[rgs_[i]].push_back(i);
            return parts;
        }
    }
    return std::nullopt;
}

Int stirling_second(int n, int r)
{
    if (r < 0 || r > n) return 0;
    std::vector<std::vector<Int>> s(n + 1, std::vector<Int>(r + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, r); ++j) s[i][j] = s[i - 1][j - 1] + Int(j) * s[i - 1][j];
    return s[n][r];
}

std::optional<DirectionWitness> feasible_given_direction(
    const TvInstance& instance, const MatQ& basis,
    const std::vector<std::vector<std::vector<int>>>& partitions)
{
    instance.validate();
    if (partitions.size() != instance.sets.size())
        throw input_error("partition tuple does not match the number of sets");
    for (std::size_t i = 0; i < partitions.size(); ++i)
        if (static_cast<int>(partitions[i].size()) != instance.part_counts[i])
            throw input_error("partition tuple shape does not match part counts");

    detail::Projector proj(basis);
    const int m = static_cast<int>(basis.cols());

    // Variables: q (free, m), then one nonneg coefficient per point.
    int n_lambda = 0;
    for (const auto& s : instance.sets) n_lambda += static_cast<int>(s.cols());
    int total_parts = 0;
    for (int r : instance.part_counts) total_parts += r;

    const int n_vars = m + n_lambda;
    const int n_rows = total_parts * (m + 1);
    ExactLP lp;
    lp.a = MatQ::Zero(n_rows, n_vars);
    lp.b = VecQ::Zero(n_rows);
    lp.row_type.assign(n_rows, ExactLP::Row::eq);
    lp.nonneg.assign(n_vars, true);
    for (int j = 0; j < m; ++j) lp.nonneg[j] = false;

    int row = 0, lambda_base = m;
    std::vector<MatQ> coords;
    for (std::size_t i = 0; i < instance.sets.size(); ++i)
        coords.push_back(proj.cloud_coords(instance.sets[i]));
    for (std::size_t i = 0; i < instance.sets.size(); ++i) {
        for (const auto& part : partitions[i]) {
            for (int j : part) lp.a(row, lambda_base + j) = 1;
            lp.b(row) = 1;
            ++row;
            for (int c = 0; c < m; ++c) {
                for (int j : part) lp.a(row, lambda_base + j) = coords[i](c, j);
                lp.a(row, c) = -1;
                lp.b(row) = 0;
                ++row;
            }
        }
        lambda_base += static_cast<int>(instance.sets[i].cols());
    }

    LpResult res = lp_solve(lp);
    if (res.status != LpResult::Status::feasible) return std::nullopt;

    DirectionWitness w;
    w.q_coords = res.point.head(m);
    lambda_base = m;
    for (std::size_t i = 0; i < instance.sets.size(); ++i) {
        std::vector<std::vector<Rat>> per_set;
        for (const auto& part : partitions[i]) {
            std::vector<Rat> lambdas;
            for (int j : part) lambdas.push_back(res.point(lambda_base + j));
            per_set.push_back(std::move(lambdas));
        }
        w.coefficients.push_back(std::move(per_set));
        lambda_base += static_cast<int>(instance.sets[i].cols());
    }
    return w;
}

namespace {

// Per-set candidate at a fixed direction: a partition together with the
// H-representation and bounding box of the common region of its projected
// part hulls (2-dimensional path).
struct SetCandidate {
    std::vector<std::vector<int>> partition;
    std::vector<HalfspaceLE> cons;
    BBox box;
};

std::vector<SetCandidate> set_candidates_2d(const MatQ& coords, int r, const std::vector<int>* coloring,
                                            std::uint64_t seed)
{
    std::vector<SetCandidate> out;
    PartitionStream stream(static_cast<int>(coords.cols()), r, coloring);
    while (auto parts = stream.next()) {
        SetCandidate cand;
        cand.partition = *parts;
        bool boxed = false;
        bool dead = false;
        for (const auto& part : *parts) {
            MatQ pts(2, static_cast<int>(part.size()));
            for (std::size_t j = 0; j < part.size(); ++j) pts.col(static_cast<int>(j)) = coords.col(part[j]);
            BBox pb = BBox::of(pts);
            cand.box = boxed ? cand.box.meet(pb) : pb;
            boxed = true;
            if (!cand.box.valid) { dead = true; break; }
            for (auto& h : hull_constraints_2d(pts)) cand.cons.push_back(h);
        }
        if (dead) continue;
        if (!lex_feasible(
                 [&] {
                     std::vector<std::pair<VecQ, Rat>> cs;
                     for (const auto& h : cand.cons) cs.push_back({h.a, h.b});
                     return cs;
                 }(),
                 cand.box.lo, cand.box.hi, seed))
            continue;
        out.push_back(std::move(cand));
    }
    return out;
}

} // namespace

TvOutcome search_tv(const TvInstance& instance, const SearchConfig& config)
{
    instance.validate();
    const int d = instance.d, k = instance.k;
    const ComplexStructure cs(d);
    const bool odd = instance.variant == TvInstance::Variant::complex_plus_line;
    const int mdim = odd ? 2 * (d - k) + 1 : 2 * (d - k);
    if (mdim > 4) throw input_error("unsupported dimension: projected search space exceeds 4");
    if (odd && k < 1) throw input_error("complex-plus-line variant requires k >= 1");
    const bool exploratory = !instance.within_theorem();
    const int n_sets = static_cast<int>(instance.sets.size());

    auto subsets = index_subsets(d, d - k);
    int configs = static_cast<int>(subsets.size());
    int nparams = 2 * (d - k) * k;
    const int line_dim = 2 * k;
    if (odd) {
        configs *= line_dim;
        nparams += line_dim - 1;
    }

    struct Geometry {
        MatQ basis;
        VecQ v0; // only for the plus-line variant
        std::string desc;
    };
    auto basis_of = [&](const detail::Sample& s) -> Geometry {
        if (!odd) {
            GrassmannChart chart = detail::chart_from(d, k, subsets[s.config], s.params);
            return {chart.real_basis(cs), VecQ(), chart.describe()};
        }
        const int chart_idx = s.config / line_dim;
        const int pivot = s.config % line_dim;
        const int chart_params = 2 * (d - k) * k;
        GrassmannChart chart =
            detail::chart_from(d, k, subsets[chart_idx], VecQ(s.params.head(chart_params)));
        MatQ w_basis = chart.real_basis(cs);
        MatQ plane = kernel_basis(MatQ(w_basis.transpose()));
        MatQ pairs = complexify_basis(cs, plane);
        VecQ line_coords(line_dim);
        int at = 0;
        for (int j = 0; j < line_dim; ++j)
            line_coords(j) = j == pivot ? Rat(1) : s.params(chart_params + at++);
        VecQ v0 = pairs * line_coords;
        MatQ u(cs.real_dim(), w_basis.cols() + 1);
        u.col(0) = v0;
        u.rightCols(w_basis.cols()) = w_basis;
        return {u, v0, chart.describe() + " + line"};
    };

    using PartitionTuple = std::vector<std::vector<std::vector<int>>>;

    // Canonical-order scan of partition tuples at one direction; returns the
    // first tuple whose projected part hulls share a point.  The margin is the
    // smallest joint relaxation seen (steers grid refinement only).
    auto scan = [&](const Geometry& g, PartitionTuple* hit, Rat* margin) -> bool {
        detail::Projector proj(g.basis);
        if (margin) *margin = 1;

        if (mdim == 2) {
            std::vector<std::vector<SetCandidate>> cand(n_sets);
            for (int i = 0; i < n_sets; ++i) {
                const std::vector<int>* coloring =
                    instance.colors.empty() || instance.colors[i].empty() ? nullptr
                                                                          : &instance.colors[i];
                cand[i] = set_candidates_2d(proj.cloud_coords(instance.sets[i]),
                                            instance.part_counts[i], coloring, config.seed ^ 0x72);
                if (cand[i].empty()) return false;
            }
            int margins_left = 64;
            std::vector<int> pick(n_sets, 0);
            std::vector<const SetCandidate*> chosen(n_sets);
            auto rec = [&](auto&& self, int at, BBox box) -> bool {
                if (at == n_sets) {
                    std::vector<std::pair<VecQ, Rat>> joint;
                    for (const auto* c : chosen)
                        for (const auto& h : c->cons) joint.push_back({h.a, h.b});
                    detail::EvalOutcome out =
                        detail::solve_margin(joint, box.lo, box.hi, config.seed ^ 0x7f);
                    if (margin && out.margin < *margin) *margin = out.margin;
                    if (out.margin != 0) return false;
                    if (hit) {
                        hit->clear();
                        for (const auto* c : chosen) hit->push_back(c->partition);
                    }
                    return true;
                }
                for (const auto& c : cand[at]) {
                    BBox next = at == 0 ? c.box : box.meet(c.box);
                    if (!next.valid) continue;
                    if (at + 1 == n_sets && margins_left <= 0) continue;
                    if (at + 1 == n_sets) --margins_left;
                    chosen[at] = &c;
                    if (self(self, at + 1, next)) return true;
                }
                return false;
            };
            return rec(rec, 0, BBox{});
        }

        // General path: per-set LP prefilter, then full joint LPs in order.
        std::vector<std::vector<std::vector<std::vector<int>>>> filtered(n_sets);
        for (int i = 0; i < n_sets; ++i) {
            const std::vector<int>* coloring =
                instance.colors.empty() || instance.colors[i].empty() ? nullptr : &instance.colors[i];
            TvInstance solo = instance;
            solo.sets = {instance.sets[i]};
            solo.part_counts = {instance.part_counts[i]};
            solo.colors.clear();
            PartitionStream stream(static_cast<int>(instance.sets[i].cols()),
                                   instance.part_counts[i], coloring);
            while (auto parts = stream.next())
                if (feasible_given_direction(solo, g.basis, {*parts})) filtered[i].push_back(*parts);
            if (filtered[i].empty()) return false;
        }
        std::vector<int> pick(n_sets, 0);
        for (;;) {
            PartitionTuple tuple;
            for (int i = 0; i < n_sets; ++i) tuple.push_back(filtered[i][pick[i]]);
            if (feasible_given_direction(instance, g.basis, tuple)) {
                if (hit) *hit = tuple;
                if (margin) *margin = 0;
                return true;
            }
            int i = 0;
            for (; i < n_sets; ++i) {
                if (++pick[i] < static_cast<int>(filtered[i].size())) break;
                pick[i] = 0;
            }
            if (i == n_sets) return false;
        }
    };

    auto eval = [&](const detail::Sample& s) -> detail::EvalOutcome {
        Geometry g = basis_of(s);
        Rat margin;
        bool ok = scan(g, nullptr, &margin);
        return {ok ? Rat(0) : (margin == 0 ? Rat(1) : margin), VecQ()};
    };

    detail::DriverResult r = detail::run_driver(configs, nparams, config, eval);
    if (!r.success) {
        TvBestEffort be;
        be.samples = r.samples;
        be.best_margin = r.has_best ? r.best_margin : Rat(1);
        return be;
    }

    Geometry g = basis_of(r.sample);
    PartitionTuple tuple;
    if (!scan(g, &tuple, nullptr))
        throw std::logic_error("search_tv: successful sample failed to replay");
    auto witness = feasible_given_direction(instance, g.basis, tuple);
    if (!witness) throw std::logic_error("search_tv: witness LP failed to replay");

    VecQ q_ambient = g.basis * witness->q_coords;
    ComplexFlat flat = [&] {
        if (!odd) return detail::flat_from_projection(cs, g.basis, witness->q_coords, k);
        MatQ full(cs.real_dim(), g.basis.cols() + 1);
        full.leftCols(g.basis.cols()) = g.basis;
        full.col(g.basis.cols()) = cs.apply_j(g.v0);
        MatQ complex_part = kernel_basis(MatQ(full.transpose()));
        MatQ spanning(cs.real_dim(), k - 1);
        if (k > 1) {
            MatQ pairs = complexify_basis(cs, complex_part);
            for (int j = 0; j < k - 1; ++j) spanning.col(j) = pairs.col(2 * j);
        }
        return make_complex_plus_line_flat(cs, q_ambient, spanning, cs.apply_j(g.v0));
    }();

    TverbergCert cert{flat, q_ambient, tuple, witness->coefficients,
                      {config.seed, r.samples, g.desc}, exploratory};
    std::string diag;
    if (!verify_tv(cert, instance, &diag))
        throw std::logic_error("search_tv produced an unverifiable certificate: " + diag);
    return cert;
}

bool verify_tv(const TverbergCert& cert, const TvInstance& instance, std::string* diagnostic)
{
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };
    try {
        instance.validate();
    } catch (const input_error& e) {
        return fail(e.what());
    }
    const int n_sets = static_cast<int>(instance.sets.size());
    const bool odd = instance.variant == TvInstance::Variant::complex_plus_line;

    if (cert.flat.space.d != instance.d) return fail("flat ambient dimension mismatch");
    const auto want_kind = odd ? ComplexFlat::Kind::complex_plus_line : ComplexFlat::Kind::complex_k;
    if (cert.flat.kind != want_kind || cert.flat.k != instance.k)
        return fail("flat kind does not match the instance variant");
    if (auto bad = flat_structure_violation(cert.flat)) return fail(*bad);
    if (cert.q.size() != 2 * instance.d) return fail("common point has wrong dimension");
    if (!in_span(cert.flat.directions, VecQ(cert.q - cert.flat.base)))
        return fail("common point does not lie on the flat");

    if (static_cast<int>(cert.partitions.size()) != n_sets ||
        static_cast<int>(cert.witnesses.size()) != n_sets)
        return fail("partition or witness list does not match the number of sets");

    for (int i = 0; i < n_sets; ++i) {
        const int n = static_cast<int>(instance.sets[i].cols());
        const auto& parts = cert.partitions[i];
        if (static_cast<int>(parts.size()) != instance.part_counts[i])
            return fail("set " + std::to_string(i) + ": wrong number of parts");
        std::vector<int> seen(n, 0);
        for (const auto& part : parts) {
            if (part.empty()) return fail("set " + std::to_string(i) + ": empty part");
            for (int j : part) {
                if (j < 0 || j >= n) return fail("set " + std::to_string(i) + ": index out of range");
                if (seen[j]++) return fail("set " + std::to_string(i) + ": index used twice");
            }
        }
        for (int j = 0; j < n; ++j)
            if (!seen[j]) return fail("set " + std::to_string(i) + ": index missing from partition");

        if (!instance.colors.empty() && !instance.colors[i].empty()) {
            for (const auto& part : parts) {
                std::vector<int> cs_seen;
                for (int j : part) {
                    int c = instance.colors[i][j];
                    if (std::find(cs_seen.begin(), cs_seen.end(), c) != cs_seen.end())
                        return fail("set " + std::to_string(i) + ": part repeats a color");
                    cs_seen.push_back(c);
                }
            }
        }

        if (cert.witnesses[i].size() != parts.size())
            return fail("set " + std::to_string(i) + ": witness count mismatch");
        for (std::size_t p = 0; p < parts.size(); ++p) {
            const auto& lambdas = cert.witnesses[i][p];
            if (lambdas.size() != parts[p].size())
                return fail("set " + std::to_string(i) + ": witness length mismatch");
            Rat total = 0;
            VecQ combo = VecQ::Zero(2 * instance.d);
            for (std::size_t j = 0; j < lambdas.size(); ++j) {
                if (lambdas[j] < 0) return fail("set " + std::to_string(i) + ": negative coefficient");
                total += lambdas[j];
                combo += lambdas[j] * instance.sets[i].col(parts[p][j]);
            }
            if (total != 1) return fail("set " + std::to_string(i) + ": coefficients do not sum to 1");
            if (!in_span(cert.flat.directions, VecQ(combo - cert.q)))
                return fail("set " + std::to_string(i) + ": combination does not reproduce q on the flat");
        }
    }
    return true;
}

} // namespace ctvlab
