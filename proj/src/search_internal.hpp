#pragma once

// Shared internals of the chart-sampling searches: deterministic sample
// driver, projection helpers, and the margin feasibility solve.

#include <algorithm>
#include <vector>

#include "ctvlab/charts.hpp"
#include "ctvlab/lp.hpp"
#include "ctvlab/parallel.hpp"
#include "ctvlab/regions.hpp"
#include "ctvlab/transversal.hpp"

namespace ctvlab::detail {

constexpr int kParamLo = -2;
constexpr int kParamHi = 2;

struct Sample {
    int config = 0;
    VecQ params;
};

struct EvalOutcome {
    Rat margin;  // 0 = the joint region system is feasible
    VecQ q;      // minimizer coordinates (without the margin variable)
};

struct Projector {
    MatQ basis;
    MatQ gram_inv;

    explicit Projector(MatQ b) : basis(std::move(b))
    {
        gram_inv = inverse_exact(MatQ(basis.transpose() * basis));
    }

    VecQ coords(const VecQ& ambient) const { return gram_inv * (basis.transpose() * ambient); }

    MatQ cloud_coords(const MatQ& points) const
    {
        MatQ out(basis.cols(), points.cols());
        for (int i = 0; i < points.cols(); ++i) out.col(i) = coords(VecQ(points.col(i)));
        return out;
    }
};

// Minimal sigma with { a·y - sigma <= b } over the box; sigma = 0 iff the
// original system is feasible, and then y is its lexmin point.
EvalOutcome solve_margin(const std::vector<std::pair<VecQ, Rat>>& cons, const VecQ& lo, const VecQ& hi,
                         std::uint64_t seed)
{
    const int m = static_cast<int>(lo.size());
    VecQ mid = (lo + hi) / 2;
    Rat sigma_hi = 0;
    std::vector<std::pair<VecQ, Rat>> lifted;
    lifted.reserve(cons.size());
    for (const auto& [a, b] : cons) {
        VecQ a2(m + 1);
        a2(0) = -1;
        a2.tail(m) = a;
        lifted.push_back({a2, b});
        Rat at_mid = a.dot(mid) - b;
        if (at_mid > sigma_hi) sigma_hi = at_mid;
    }
    VecQ lo2(m + 1), hi2(m + 1);
    lo2(0) = 0;
    hi2(0) = sigma_hi + 1;
    lo2.tail(m) = lo;
    hi2.tail(m) = hi;
    auto x = lex_feasible(lifted, lo2, hi2, seed);
    if (!x) throw std::logic_error("margin system cannot be infeasible");
    return {(*x)(0), VecQ(x->tail(m))};
}

// Joint constraint system of the per-measure depth regions in shared
// coordinates, each constraint list optionally composed with a linear map.
struct JointSystem {
    std::vector<std::pair<VecQ, Rat>> cons;
    VecQ lo, hi;
    bool box_ready = false;

    void grow_box(const MatQ& coords)
    {
        if (!box_ready) {
            lo = coords.rowwise().minCoeff();
            hi = coords.rowwise().maxCoeff();
            box_ready = true;
            return;
        }
        for (int j = 0; j < lo.size(); ++j) {
            lo(j) = std::min(lo(j), Rat(coords.row(j).minCoeff()));
            hi(j) = std::max(hi(j), Rat(coords.row(j).maxCoeff()));
        }
    }

    void add_region(const MatQ& coords, const std::vector<Rat>& weights, const Rat& t)
    {
        for (auto& h : depth_region_constraints(coords, weights, t))
            cons.push_back({h.a, h.b});
    }

    void add_region_composed(const MatQ& coords, const std::vector<Rat>& weights, const Rat& t,
                             const MatQ& map)
    {
        for (auto& h : depth_region_constraints(coords, weights, t))
            cons.push_back({VecQ(map.transpose() * h.a), h.b});
    }
};

std::vector<Rat> grid_values(const Rat& step)
{
    std::vector<Rat> v;
    for (Rat x = kParamLo; x <= kParamHi; x += step) v.push_back(x);
    return v;
}

void append_grid(std::vector<Sample>& out, int config, int nparams, const Rat& step)
{
    std::vector<Rat> values = grid_values(step);
    VecQ p = VecQ::Constant(nparams, Rat(kParamLo));
    std::vector<int> idx(nparams, 0);
    for (;;) {
        VecQ cur(nparams);
        for (int j = 0; j < nparams; ++j) cur(j) = values[idx[j]];
        out.push_back({config, cur});
        int j = 0;
        for (; j < nparams; ++j) {
            if (++idx[j] < static_cast<int>(values.size())) break;
            idx[j] = 0;
        }
        if (j == nparams) break;
    }
}

double pow_count(int base, int exp)
{
    double r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

struct DriverResult {
    bool success = false;
    Sample sample;
    VecQ q;
    long samples = 0;
    Rat best_margin;
    Sample best_sample;
    VecQ best_q;
    bool has_best = false;
};

template <typename EvalFn>
DriverResult run_driver(int configs, int nparams, const SearchConfig& cfg, EvalFn&& eval)
{
    DriverResult result;
    long remaining = std::max<long>(cfg.budget, 1);

    struct Scored {
        Rat margin;
        Sample sample;
        VecQ q;
    };
    std::vector<Scored> leaders;

    auto process_batch = [&](const std::vector<Sample>& batch) -> bool {
        const long n = std::min<long>(static_cast<long>(batch.size()), remaining);
        if (n <= 0) return false;
        std::vector<EvalOutcome> outs(n);
        parallel_for(n, cfg.workers, [&](long i) { outs[i] = eval(batch[i]); });
        remaining -= n;
        result.samples += n;
        for (long i = 0; i < n; ++i) {
            if (outs[i].margin == 0) {
                result.success = true;
                result.sample = batch[i];
                result.q = outs[i].q;
                return true;
            }
            if (!result.has_best || outs[i].margin < result.best_margin) {
                result.has_best = true;
                result.best_margin = outs[i].margin;
                result.best_sample = batch[i];
                result.best_q = outs[i].q;
            }
            leaders.push_back({outs[i].margin, batch[i], outs[i].q});
        }
        std::stable_sort(leaders.begin(), leaders.end(),
                         [](const Scored& a, const Scored& b) { return a.margin < b.margin; });
        if (static_cast<int>(leaders.size()) > cfg.restarts)
            leaders.resize(cfg.restarts);
        return false;
    };

    auto run_in_chunks = [&](std::vector<Sample>& samples) -> bool {
        const std::size_t chunk = 256;
        for (std::size_t at = 0; at < samples.size(); at += chunk) {
            if (remaining <= 0) return false;
            std::vector<Sample> batch(samples.begin() + at,
                                      samples.begin() + std::min(samples.size(), at + chunk));
            if (process_batch(batch)) return true;
        }
        return false;
    };

    // Coarse pass: full grid at the configured step, coarsened until the
    // sample count fits the budget.
    Rat step = cfg.grid_step;
    while (step < 2 && configs * pow_count(static_cast<int>(4 / step.convert_to<double>()) + 1, nparams) >
                           static_cast<double>(std::max<long>(remaining / 2, 512)))
        step *= 2;
    {
        std::vector<Sample> coarse;
        for (int c = 0; c < configs; ++c) append_grid(coarse, c, nparams, step);
        if (run_in_chunks(coarse)) return result;
    }

    // Refinement: local grids of halved step around the running leaders.
    Rat local = step / 2;
    for (int round = 0; round < 6 && remaining > 0 && nparams > 0; ++round) {
        std::vector<Scored> snapshot = leaders;
        std::vector<Sample> refined;
        const long cells = static_cast<long>(pow_count(5, nparams));
        for (const auto& lead : snapshot) {
            for (long offset = 0; offset < cells; ++offset) {
                VecQ p = lead.sample.params;
                long rest = offset;
                for (int j = 0; j < nparams; ++j) {
                    int o = static_cast<int>(rest % 5) - 2;
                    rest /= 5;
                    p(j) += Rat(o) * local;
                    if (p(j) < kParamLo) p(j) = kParamLo;
                    if (p(j) > kParamHi) p(j) = kParamHi;
                }
                refined.push_back({lead.sample.config, p});
            }
        }
        if (run_in_chunks(refined)) return result;
        local /= 2;
    }

    // Seeded random tail until the budget runs out.
    SplitMix64 rng(cfg.seed ^ 0x9e3779b9ULL);
    while (remaining > 0 && nparams > 0) {
        std::vector<Sample> batch;
        const long n = std::min<long>(remaining, 256);
        for (long i = 0; i < n; ++i) {
            VecQ p(nparams);
            for (int j = 0; j < nparams; ++j) p(j) = 2 * rng.symmetric_unit(256);
            batch.push_back({static_cast<int>(rng.below(configs)), p});
        }
        if (process_batch(batch)) return result;
    }
    return result;
}

GrassmannChart chart_from(int d, int k, const std::vector<int>& index_set, const VecQ& params)
{
    GrassmannChart chart;
    chart.d = d;
    chart.k = k;
    chart.index_set = index_set;
    const int m = d - k;
    chart.z_re = MatQ::Zero(m, k);
    chart.z_im = MatQ::Zero(m, k);
    int at = 0;
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < k; ++c) {
            chart.z_re(r, c) = params(at++);
            chart.z_im(r, c) = params(at++);
        }
    return chart;
}

ComplexFlat flat_from_projection(const ComplexStructure& cs, const MatQ& basis, const VecQ& q, int k)
{
    VecQ base = basis * q;
    if (k == 0) return ComplexFlat{cs, base, MatQ(cs.real_dim(), 0), ComplexFlat::Kind::complex_k, 0};
    MatQ dir = kernel_basis(MatQ(basis.transpose()));
    MatQ pairs = complexify_basis(cs, dir);
    MatQ spanning(cs.real_dim(), k);
    for (int j = 0; j < k; ++j) spanning.col(j) = pairs.col(2 * j);
    return make_complex_flat(cs, base, spanning);
}


} // namespace ctvlab::detail
