#include "ctvlab/transversal.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "ctvlab/lp.hpp"
#include "ctvlab/parallel.hpp"
#include "search_internal.hpp"

namespace ctvlab {

namespace {

void check_measures(const std::vector<MassCloud>& measures, int d)
{
    if (measures.empty()) throw input_error("at least one measure is required");
    for (const auto& m : measures)
        if (m.dim() != 2 * d) throw input_error("measure ambient dimension does not match d");
}

} // namespace

SearchOutcome search_transversal(const std::vector<MassCloud>& measures, int d, int k,
                                 const SearchConfig& config)
{
    if (!(0 <= k && k < d)) throw input_error("search_transversal requires 0 <= k < d");
    if (d - k > 2)
        throw input_error("unsupported dimension: centerpoint regions need 2(d-k) <= 4");
    check_measures(measures, d);
    const ComplexStructure cs(d);
    const Rat t(1, 2 * d - 2 * k + 1);
    const bool exploratory = static_cast<int>(measures.size()) != k + 1;

    auto subsets = index_subsets(d, d - k);
    const int nparams = 2 * (d - k) * k;

    auto eval = [&](const detail::Sample& s) -> detail::EvalOutcome {
        GrassmannChart chart = detail::chart_from(d, k, subsets[s.config], s.params);
        detail::Projector proj(chart.real_basis(cs));
        detail::JointSystem joint;
        for (const auto& mu : measures) {
            MatQ coords = proj.cloud_coords(mu.points);
            joint.grow_box(coords);
            joint.add_region(coords, mu.weights, t);
        }
        return detail::solve_margin(joint.cons, joint.lo, joint.hi, config.seed ^ 0x7a11);
    };

    detail::DriverResult r = detail::run_driver(static_cast<int>(subsets.size()), nparams, config, eval);
    if (!r.success) {
        BestEffort be;
        be.samples = r.samples;
        if (r.has_best) {
            GrassmannChart chart = detail::chart_from(d, k, subsets[r.best_sample.config], r.best_sample.params);
            detail::Projector proj(chart.real_basis(cs));
            ComplexFlat flat = detail::flat_from_projection(cs, proj.basis, r.best_q, k);
            Rat worst = 1;
            for (const auto& mu : measures) worst = std::min(worst, flat_depth(mu, flat).value);
            be.flat = flat;
            be.best_min_depth = worst;
        }
        return be;
    }

    GrassmannChart chart = detail::chart_from(d, k, subsets[r.sample.config], r.sample.params);
    detail::Projector proj(chart.real_basis(cs));
    TransversalCert cert{detail::flat_from_projection(cs, proj.basis, r.q, k),
                         {},
                         t,
                         {config.seed, r.samples, chart.describe()},
                         exploratory};
    for (const auto& mu : measures) {
        DepthValue dv = flat_depth(mu, cert.flat);
        if (dv.value < t) throw std::logic_error("search_transversal produced an unverifiable flat");
        cert.depths.push_back(dv);
    }
    return cert;
}

SearchOutcome search_odd_transversal(const std::vector<MassCloud>& measures, int d, int k,
                                     const SearchConfig& config)
{
    if (!(1 <= k && k < d)) throw input_error("search_odd_transversal requires 1 <= k < d");
    if (d - k != 1)
        throw input_error("unsupported dimension: odd-codimension regions need 2(d-k)+1 <= 4");
    check_measures(measures, d);
    const ComplexStructure cs(d);
    const Rat t(1, 2 * d - 2 * k + 2);
    const bool exploratory = static_cast<int>(measures.size()) != k + 1;

    auto subsets = index_subsets(d, d - k);
    const int chart_params = 2 * (d - k) * k;
    const int line_dim = 2 * k;                 // the leftover complex plane, realified
    const int line_params = line_dim - 1;       // RP^{2k-1} chart
    const int configs = static_cast<int>(subsets.size()) * line_dim;
    const int nparams = chart_params + line_params;

    struct Geometry {
        MatQ u_basis;
        VecQ v0;
        MatQ plane_pairs;
        GrassmannChart chart;
    };
    auto build = [&](const detail::Sample& s) -> Geometry {
        const int chart_idx = s.config / line_dim;
        const int pivot = s.config % line_dim;
        GrassmannChart chart = detail::chart_from(d, k, subsets[chart_idx], VecQ(s.params.head(chart_params)));
        MatQ w_basis = chart.real_basis(cs);
        MatQ plane = kernel_basis(MatQ(w_basis.transpose()));     // complex k-dim, realified
        MatQ pairs = complexify_basis(cs, plane);
        VecQ line_coords(line_dim);
        int at = 0;
        for (int j = 0; j < line_dim; ++j)
            line_coords(j) = j == pivot ? Rat(1) : s.params(chart_params + at++);
        VecQ v0 = pairs * line_coords;
        MatQ u(cs.real_dim(), w_basis.cols() + 1);
        u.col(0) = v0;
        u.rightCols(w_basis.cols()) = w_basis;
        return {u, v0, pairs, chart};
    };

    auto eval = [&](const detail::Sample& s) -> detail::EvalOutcome {
        Geometry g = build(s);
        detail::Projector proj(g.u_basis);
        detail::JointSystem joint;
        for (const auto& mu : measures) {
            MatQ coords = proj.cloud_coords(mu.points);
            joint.grow_box(coords);
            joint.add_region(coords, mu.weights, t);
        }
        return detail::solve_margin(joint.cons, joint.lo, joint.hi, config.seed ^ 0x0dd);
    };

    auto make_flat = [&](const detail::Sample& s, const VecQ& q) {
        Geometry g = build(s);
        VecQ base = g.u_basis * q;
        // Direction = U^perp = (complex span of {v0} ∪ W)^perp ⊕ span{J v0}.
        MatQ full(cs.real_dim(), g.u_basis.cols() + 1);
        full.leftCols(g.u_basis.cols()) = g.u_basis;
        full.col(g.u_basis.cols()) = cs.apply_j(g.v0);
        MatQ complex_part = kernel_basis(MatQ(full.transpose())); // 2(k-1) cols, J-invariant
        MatQ spanning(cs.real_dim(), k - 1);
        if (k > 1) {
            MatQ pairs = complexify_basis(cs, complex_part);
            for (int j = 0; j < k - 1; ++j) spanning.col(j) = pairs.col(2 * j);
        }
        return make_complex_plus_line_flat(cs, base, spanning, cs.apply_j(g.v0));
    };

    detail::DriverResult r = detail::run_driver(configs, nparams, config, eval);
    if (!r.success) {
        BestEffort be;
        be.samples = r.samples;
        if (r.has_best) {
            ComplexFlat flat = make_flat(r.best_sample, r.best_q);
            Rat worst = 1;
            for (const auto& mu : measures) worst = std::min(worst, flat_depth(mu, flat).value);
            be.flat = flat;
            be.best_min_depth = worst;
        }
        return be;
    }

    TransversalCert cert{make_flat(r.sample, r.q),
                         {},
                         t,
                         {config.seed, r.samples, build(r.sample).chart.describe() + " + line"},
                         exploratory};
    for (const auto& mu : measures) {
        DepthValue dv = flat_depth(mu, cert.flat);
        if (dv.value < t) throw std::logic_error("search_odd_transversal produced an unverifiable flat");
        cert.depths.push_back(dv);
    }
    return cert;
}

FlagOutcome search_flag_transversal(const std::vector<MassCloud>& measures, int d, int k,
                                    const SearchConfig& config)
{
    if (!(0 <= k && k < d)) throw input_error("search_flag_transversal requires 0 <= k < d");
    if (d - k > 2)
        throw input_error("unsupported dimension: centerpoint regions need 2(d-k) <= 4");
    if (static_cast<int>(measures.size()) != d)
        throw input_error("flag search expects exactly d measures");
    check_measures(measures, d);
    const ComplexStructure cs(d);

    auto bound_at = [&](int level) { return Rat(1, 2 * d - 2 * level + 1); };

    auto finish = [&](const std::vector<MatQ>& u_bases, const VecQ& ambient_base, long samples,
                      const std::string& desc) -> FlagCert {
        // u_bases[j] spans U_{d-i} for level i = k + j; V_i = base + U_{d-i}^perp.
        FlagCert cert;
        cert.trace = {config.seed, samples, desc};
        for (std::size_t j = 0; j < u_bases.size(); ++j) {
            const int level = k + static_cast<int>(j);
            ComplexFlat flat = [&] {
                if (u_bases[j].cols() == static_cast<int>(2 * d))
                    return ComplexFlat{cs, ambient_base, MatQ(cs.real_dim(), 0),
                                       ComplexFlat::Kind::complex_k, 0};
                MatQ dir = kernel_basis(MatQ(u_bases[j].transpose()));
                MatQ pairs = complexify_basis(cs, dir);
                MatQ spanning(cs.real_dim(), pairs.cols() / 2);
                for (int c = 0; c < spanning.cols(); ++c) spanning.col(c) = pairs.col(2 * c);
                return make_complex_flat(cs, ambient_base, spanning);
            }();
            std::vector<DepthValue> level_depths;
            const int first = level == k ? 0 : level;
            for (int i = first; i <= level; ++i) {
                if (level != k && i != level) continue;
                DepthValue dv = flat_depth(measures[i], flat);
                if (dv.value < bound_at(level))
                    throw std::logic_error("flag search produced an unverifiable level");
                level_depths.push_back(dv);
            }
            cert.flats.push_back(std::move(flat));
            cert.depths.push_back(std::move(level_depths));
            cert.bounds.push_back(bound_at(level));
        }
        return cert;
    };

    if (k == 0) {
        // The top-level projection is the identity, so the canonical level-0
        // point is fixed before any chart is sampled.
        VecQ p0 = centerpoint_barycenter(measures[0], bound_at(0));
        if (d == 1) return finish({MatQ::Identity(2, 2)}, p0, 0, "trivial");

        // d == 2: one chart parameter family for U_1.
        auto subsets = index_subsets(d, 1);
        auto eval = [&](const detail::Sample& s) -> detail::EvalOutcome {
            GrassmannChart chart = detail::chart_from(d, d - 1, subsets[s.config], s.params);
            detail::Projector proj(chart.real_basis(cs));
            MatQ coords = proj.cloud_coords(measures[1].points);
            VecQ q1 = proj.coords(p0);
            Rat margin = 0;
            for (const auto& h : depth_region_constraints(coords, measures[1].weights, bound_at(1))) {
                Rat violation = h.a.dot(q1) - h.b;
                if (violation > margin) margin = violation;
            }
            return {margin, q1};
        };
        detail::DriverResult r = detail::run_driver(static_cast<int>(subsets.size()), 2 * (d - 1), config, eval);
        if (!r.success) {
            BestEffort be;
            be.samples = r.samples;
            be.best_min_depth = 0;
            return be;
        }
        GrassmannChart chart = detail::chart_from(d, d - 1, subsets[r.sample.config], r.sample.params);
        return finish({MatQ::Identity(2 * d, 2 * d), chart.real_basis(cs)}, p0, r.samples,
                      chart.describe());
    }

    // k >= 1: sample a nested frame (v_1, ..., v_{d-k}); all level conditions
    // are linear in the coordinates q of the common base point in U_{d-k}.
    struct FrameSpec {
        std::vector<int> pivots; // pivot choice at each nesting level
    };
    std::vector<FrameSpec> frames;
    {
        std::vector<int> limits;
        for (int j = 0; j < d - k; ++j) limits.push_back(d - j);
        std::vector<int> cur(d - k, 0);
        for (;;) {
            frames.push_back({cur});
            int j = 0;
            for (; j < d - k; ++j) {
                if (++cur[j] < limits[j]) break;
                cur[j] = 0;
            }
            if (j == d - k) break;
        }
    }
    int nparams = 0;
    for (int j = 0; j < d - k; ++j) nparams += 2 * (d - 1 - j);

    struct Frame {
        std::vector<VecQ> vs;          // v_1..v_{d-k}, realified
        std::vector<MatQ> u_bases;     // U_{d-k}, U_{d-k-1}, ..., U_1 as needed per level
    };
    auto build_frame = [&](const detail::Sample& s) -> Frame {
        Frame f;
        MatQ ambient_pairs(cs.real_dim(), 2 * d); // complex basis of the current orthocomplement
        for (int j = 0; j < d; ++j) {
            ambient_pairs.col(2 * j) = cs.complex_basis_vector(j);
            ambient_pairs.col(2 * j + 1) = cs.apply_j(VecQ(cs.complex_basis_vector(j)));
        }
        MatQ free_pairs = ambient_pairs;
        int at = 0;
        for (int j = 0; j < d - k; ++j) {
            const int cdim = d - j;
            const int pivot = frames[s.config].pivots[j];
            VecQ re = VecQ::Zero(cdim), im = VecQ::Zero(cdim);
            re(pivot) = 1;
            for (int l = 0; l < cdim; ++l) {
                if (l == pivot) continue;
                re(l) = s.params(at++);
                im(l) = s.params(at++);
            }
            VecQ v = complex_combination(free_pairs, re, im);
            f.vs.push_back(v);
            if (j + 1 < d - k) {
                // orthocomplement of v inside the current free space
                MatQ all(cs.real_dim(), 2);
                all.col(0) = v;
                all.col(1) = cs.apply_j(v);
                MatQ perp = kernel_basis(MatQ(all.transpose()));
                // intersect with span(free_pairs): both J-invariant
                MatQ joint(cs.real_dim(), 0);
                {
                    // span(free) ∩ span(perp): columns free * alpha with free*alpha in span(perp)
                    MatQ stack(cs.real_dim(), free_pairs.cols() + perp.cols());
                    stack.leftCols(free_pairs.cols()) = free_pairs;
                    stack.rightCols(perp.cols()) = -perp;
                    MatQ nullsp = kernel_basis(stack);
                    MatQ inter(cs.real_dim(), nullsp.cols());
                    for (int c = 0; c < nullsp.cols(); ++c)
                        inter.col(c) = free_pairs * nullsp.col(c).head(free_pairs.cols());
                    // reduce to a basis
                    MatQ basis(cs.real_dim(), 0);
                    for (int c = 0; c < inter.cols(); ++c) {
                        if (inter.col(c).isZero()) continue;
                        MatQ ext(cs.real_dim(), basis.cols() + 1);
                        ext.leftCols(basis.cols()) = basis;
                        ext.col(basis.cols()) = inter.col(c);
                        if (rank_of(ext) == ext.cols()) basis = ext;
                    }
                    joint = basis;
                }
                free_pairs = complexify_basis(cs, joint);
            }
        }
        // U_j = span{v_1..v_j}: build realified bases for the levels we need.
        auto u_of = [&](int count) {
            MatQ u(cs.real_dim(), 2 * count);
            for (int j = 0; j < count; ++j) {
                u.col(2 * j) = f.vs[j];
                u.col(2 * j + 1) = cs.apply_j(f.vs[j]);
            }
            return u;
        };
        for (int level = k; level <= d - 1; ++level) f.u_bases.push_back(u_of(d - level));
        return f;
    };

    const Rat t_top = bound_at(k);
    auto eval = [&](const detail::Sample& s) -> detail::EvalOutcome {
        Frame f = build_frame(s);
        detail::Projector top(f.u_bases[0]);
        detail::JointSystem joint;
        for (int i = 0; i <= k; ++i) {
            MatQ coords = top.cloud_coords(measures[i].points);
            joint.grow_box(coords);
            joint.add_region(coords, measures[i].weights, t_top);
        }
        for (int level = k + 1; level <= d - 1; ++level) {
            detail::Projector sub(f.u_bases[level - k]);
            MatQ coords = sub.cloud_coords(measures[level].points);
            MatQ map = sub.gram_inv * (sub.basis.transpose() * top.basis); // q -> U_{d-level} coords
            joint.add_region_composed(coords, measures[level].weights, bound_at(level), map);
        }
        return detail::solve_margin(joint.cons, joint.lo, joint.hi, config.seed ^ 0xf1a6);
    };

    detail::DriverResult r = detail::run_driver(static_cast<int>(frames.size()), nparams, config, eval);
    if (!r.success) {
        BestEffort be;
        be.samples = r.samples;
        be.best_min_depth = 0;
        return be;
    }
    Frame f = build_frame(r.sample);
    VecQ base = f.u_bases[0] * r.q;
    return finish(f.u_bases, base, r.samples, "frame");
}

bool verify_transversal(const TransversalCert& cert, const std::vector<MassCloud>& measures, int d,
                        int k, bool odd_family, std::string* diagnostic)
{
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };
    if (cert.flat.space.d != d) return fail("flat ambient dimension does not match d");
    if (cert.flat.k != k) return fail("flat k does not match the requested family");
    const auto want_kind =
        odd_family ? ComplexFlat::Kind::complex_plus_line : ComplexFlat::Kind::complex_k;
    if (cert.flat.kind != want_kind) return fail("flat kind does not match the requested family");
    if (auto bad = flat_structure_violation(cert.flat)) return fail(*bad);
    const Rat expected = odd_family ? Rat(1, 2 * d - 2 * k + 2) : Rat(1, 2 * d - 2 * k + 1);
    if (cert.bound != expected) return fail("certificate bound differs from the theorem bound");
    if (cert.depths.size() != measures.size()) return fail("depth list does not match measure count");
    for (std::size_t i = 0; i < measures.size(); ++i) {
        if (measures[i].dim() != 2 * d) return fail("measure ambient dimension does not match d");
        DepthValue fresh = flat_depth(measures[i], cert.flat);
        if (fresh.value != cert.depths[i].value)
            return fail("stored depth value differs from recomputation for measure " + std::to_string(i));
        if (cert.depths[i].value < cert.bound)
            return fail("depth below the claimed bound for measure " + std::to_string(i));
        // Witness soundness: the stored halfspace contains the flat and
        // reproduces the stored weight exactly.
        const VecQ& n = cert.depths[i].witness_normal;
        if (n.size() != 2 * d) return fail("witness normal has wrong dimension");
        for (int c = 0; c < cert.flat.directions.cols(); ++c)
            if (n.dot(cert.flat.directions.col(c)) != 0)
                return fail("witness halfspace does not contain the flat (direction leak)");
        if (n.dot(cert.flat.base) < cert.depths[i].witness_offset)
            return fail("witness halfspace does not contain the flat's base point");
        if (halfspace_weight(measures[i], n, cert.depths[i].witness_offset) != cert.depths[i].value)
            return fail("witness halfspace weight does not reproduce the stored value");
    }
    return true;
}

bool verify_flag(const FlagCert& cert, const std::vector<MassCloud>& measures, int d, int k,
                 std::string* diagnostic)
{
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };
    const int levels = d - k;
    if (static_cast<int>(cert.flats.size()) != levels) return fail("flag has wrong number of levels");
    if (static_cast<int>(measures.size()) != d) return fail("flag expects d measures");
    for (int j = 0; j < levels; ++j) {
        const int level = k + j;
        const ComplexFlat& flat = cert.flats[j];
        if (flat.kind != ComplexFlat::Kind::complex_k || flat.k != level)
            return fail("level " + std::to_string(level) + " has the wrong kind");
        if (auto bad = flat_structure_violation(flat)) return fail(*bad);
        if (cert.bounds[j] != Rat(1, 2 * d - 2 * level + 1))
            return fail("level " + std::to_string(level) + " claims the wrong bound");
        std::vector<int> idx;
        if (level == k)
            for (int i = 0; i <= k; ++i) idx.push_back(i);
        else
            idx.push_back(level);
        if (cert.depths[j].size() != idx.size())
            return fail("level " + std::to_string(level) + " has wrong depth count");
        for (std::size_t c = 0; c < idx.size(); ++c) {
            DepthValue fresh = flat_depth(measures[idx[c]], flat);
            if (fresh.value != cert.depths[j][c].value)
                return fail("level " + std::to_string(level) + " depth differs from recomputation");
            if (fresh.value < cert.bounds[j])
                return fail("level " + std::to_string(level) + " depth below its bound");
        }
        if (j > 0) {
            // nesting: V_{level-1} ⊆ V_level
            const ComplexFlat& prev = cert.flats[j - 1];
            VecQ delta = prev.base - flat.base;
            if (!in_span(flat.directions, delta)) return fail("flag levels are not nested (base)");
            for (int c = 0; c < prev.directions.cols(); ++c)
                if (!in_span(flat.directions, VecQ(prev.directions.col(c))))
                    return fail("flag levels are not nested (directions)");
        }
    }
    return true;
}

MaxMinReport max_min_depth_search(const std::vector<MassCloud>& measures, int d, int k,
                                  const SearchConfig& config)
{
    if (!(0 <= k && k < d)) throw input_error("max_min_depth_search requires 0 <= k < d");
    if (d - k > 2) throw input_error("unsupported dimension for max_min_depth_search");
    check_measures(measures, d);
    const ComplexStructure cs(d);

    auto subsets = index_subsets(d, d - k);
    const int nparams = 2 * (d - k) * k;

    MaxMinReport report;
    std::mutex guard;
    SearchConfig sweep = config;
    sweep.workers = 1; // deterministic best-so-far reduction

    // Ladder of thresholds; the exact depth of each feasible flat is what gets
    // reported, the ladder only steers the per-sample feasibility search.
    std::vector<Rat> ladder;
    for (int j = 1; j <= 60; ++j) ladder.push_back(Rat(j, 120));

    auto eval = [&](const detail::Sample& s) -> detail::EvalOutcome {
        GrassmannChart chart = detail::chart_from(d, k, subsets[s.config], s.params);
        detail::Projector proj(chart.real_basis(cs));
        std::vector<MatQ> coords;
        coords.reserve(measures.size());
        for (const auto& mu : measures) coords.push_back(proj.cloud_coords(mu.points));

        auto feasible_at = [&](const Rat& t) -> std::optional<VecQ> {
            detail::JointSystem joint;
            for (std::size_t i = 0; i < measures.size(); ++i) {
                joint.grow_box(coords[i]);
                joint.add_region(coords[i], measures[i].weights, t);
            }
            detail::EvalOutcome out = detail::solve_margin(joint.cons, joint.lo, joint.hi, config.seed ^ 0xbe57);
            if (out.margin == 0) return out.q;
            return std::nullopt;
        };

        int lo = 0, hi = static_cast<int>(ladder.size()) - 1, best_idx = -1;
        VecQ best_q;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (auto q = feasible_at(ladder[mid])) {
                best_idx = mid;
                best_q = *q;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        if (best_idx >= 0) {
            ComplexFlat flat = detail::flat_from_projection(cs, proj.basis, best_q, k);
            Rat worst = 1;
            for (const auto& mu : measures) worst = std::min(worst, flat_depth(mu, flat).value);
            std::lock_guard<std::mutex> lock(guard);
            if (!report.flat || worst > report.best) {
                report.best = worst;
                report.flat = flat;
            }
            return {Rat(1) - ladder[best_idx], VecQ()};
        }
        return {Rat(1), VecQ()}; // margin never reaches 0: the driver sweeps the whole budget
    };

    detail::DriverResult r = detail::run_driver(static_cast<int>(subsets.size()), nparams, sweep, eval);
    report.samples = r.samples;
    return report;
}

} // namespace ctvlab
