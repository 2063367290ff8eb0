#include "ctvlab/gen.hpp"

#include <algorithm>
#include <map>

namespace ctvlab {

namespace {

VecQ random_point(SplitMix64& rng, int dim, std::uint64_t den = 1u << 16)
{
    VecQ p(dim);
    for (int i = 0; i < dim; ++i) p(i) = rng.symmetric_unit(den);
    return p;
}

// Degeneracy filter: duplicate points or an affinely dependent subset of
// size <= dim+1 (checked on all (dim+1)-subsets for the desk-scale sizes).
bool looks_generic(const MatQ& pts)
{
    const int dim = static_cast<int>(pts.rows());
    const int n = static_cast<int>(pts.cols());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pts.col(i) == pts.col(j)) return false;
    if (n <= dim + 1) return true;
    std::vector<int> idx(dim + 1);
    auto rec = [&](auto&& self, int pos, int start) -> bool {
        if (pos == dim + 1) {
            MatQ diffs(dim, dim);
            for (int c = 1; c <= dim; ++c) diffs.col(c - 1) = pts.col(idx[c]) - pts.col(idx[0]);
            return rank_of(diffs) == dim;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            if (!self(self, pos + 1, i + 1)) return false;
        }
        return true;
    };
    return rec(rec, 0, 0);
}

MatQ generic_points(SplitMix64& rng, int dim, int n)
{
    for (int attempt = 0; attempt < 256; ++attempt) {
        MatQ pts(dim, n);
        for (int i = 0; i < n; ++i) pts.col(i) = random_point(rng, dim);
        if (looks_generic(pts)) return pts;
    }
    throw std::logic_error("generic point sampling kept hitting degeneracies");
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, SplitMix64& rng)
{
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
        std::swap(v[i], v[rng.below(static_cast<std::uint64_t>(i) + 1)]);
}

} // namespace

Genericity genericity_from_string(const std::string& name)
{
    if (name == "generic") return Genericity::generic;
    if (name == "clustered") return Genericity::clustered;
    if (name == "gadget") return Genericity::gadget;
    throw input_error("unknown genericity: " + name);
}

std::string genericity_name(Genericity g)
{
    switch (g) {
        case Genericity::generic: return "generic";
        case Genericity::clustered: return "clustered";
        default: return "gadget";
    }
}

std::vector<MassCloud> generate_measures(int d, const std::vector<int>& sizes, std::uint64_t seed,
                                         Genericity genericity, int k_hint)
{
    if (d < 1) throw input_error("d must be >= 1");
    if (sizes.empty()) throw input_error("at least one measure size is required");
    const ComplexStructure cs(d);
    SplitMix64 rng(seed);

    std::vector<MassCloud> out;
    if (genericity == Genericity::generic) {
        for (int n : sizes) {
            if (n < 1) throw input_error("measure sizes must be >= 1");
            out.push_back(MassCloud::uniform(generic_points(rng, 2 * d, n)));
        }
        return out;
    }
    if (genericity == Genericity::gadget)
        throw input_error("gadget instances come from the gadget subcommand");

    // Clustered: points near a common complex k_hint-flat, with small jitter.
    if (!(0 <= k_hint && k_hint < d)) throw input_error("cluster flat dimension must satisfy 0 <= k < d");
    MatQ spanning(2 * d, k_hint);
    for (int c = 0; c < k_hint; ++c) spanning.col(c) = random_point(rng, 2 * d, 64);
    VecQ base = random_point(rng, 2 * d, 64);
    ComplexFlat flat = make_complex_flat(cs, base, spanning);
    const Rat jitter(1, 128);
    for (int n : sizes) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 256) throw std::logic_error("clustered sampling kept hitting degeneracies");
            MatQ pts(2 * d, n);
            for (int i = 0; i < n; ++i) {
                VecQ on_flat = base;
                for (int c = 0; c < flat.directions.cols(); ++c)
                    on_flat += rng.symmetric_unit(64) * flat.directions.col(c);
                pts.col(i) = on_flat + jitter * random_point(rng, 2 * d, 64);
            }
            if (!looks_generic(pts)) continue;
            out.push_back(MassCloud::uniform(pts));
            break;
        }
    }
    return out;
}

TvInstance generate_tverberg(int d, int k, const std::vector<int>& part_counts, std::uint64_t seed,
                             Genericity genericity, TvInstance::Variant variant, bool colored)
{
    TvInstance instance;
    instance.d = d;
    instance.k = k;
    instance.variant = variant;
    instance.part_counts = part_counts;
    SplitMix64 rng(seed);

    if (genericity == Genericity::generic) {
        for (int r : part_counts)
            instance.sets.push_back(generic_points(rng, 2 * d, instance.expected_size(r)));
    } else if (genericity == Genericity::clustered) {
        // One common rational point; every planted part contains it in its
        // hull (antipodal pairs, centered triangles for odd leftovers).
        VecQ p = random_point(rng, 2 * d, 64);
        for (int r : part_counts) {
            const int n = instance.expected_size(r);
            std::vector<VecQ> pts;
            int produced = 0;
            for (int part = 0; part < r; ++part) {
                int size = n / r + (part < n % r ? 1 : 0);
                if (size < 1) throw input_error("part counts exceed the set size");
                // sizes are >= 2 whenever r >= 2 by the size formula; a size-1
                // part must contain p itself.
                if (size == 1) {
                    pts.push_back(p);
                } else if (size % 2 == 0) {
                    for (int pair = 0; pair < size / 2; ++pair) {
                        VecQ v = random_point(rng, 2 * d, 64);
                        while (v.isZero()) v = random_point(rng, 2 * d, 64);
                        pts.push_back(p + v);
                        pts.push_back(p - v);
                    }
                } else {
                    VecQ a = random_point(rng, 2 * d, 64), b = random_point(rng, 2 * d, 64);
                    pts.push_back(p + a);
                    pts.push_back(p + b);
                    pts.push_back(p - a - b); // centroid at p
                    for (int pair = 0; pair < (size - 3) / 2; ++pair) {
                        VecQ v = random_point(rng, 2 * d, 64);
                        while (v.isZero()) v = random_point(rng, 2 * d, 64);
                        pts.push_back(p + v);
                        pts.push_back(p - v);
                    }
                }
                produced += size;
            }
            if (produced != n) throw std::logic_error("planted part sizes do not add up");
            seeded_shuffle(pts, rng);
            MatQ m(2 * d, n);
            for (int i = 0; i < n; ++i) m.col(i) = pts[i];
            instance.sets.push_back(std::move(m));
        }
    } else {
        throw input_error("gadget instances come from the gadget subcommand");
    }

    if (colored) {
        // Greedy palette: classes stay <= p-1, parts in RGS index order stay
        // rainbow for the identity partition used at generation time.  After
        // the shuffle above the coloring is only constrained by class sizes,
        // which is what the theorem hypothesis needs.
        const int p = part_counts.empty() ? 2 : part_counts[0];
        for (std::size_t i = 0; i < instance.sets.size(); ++i) {
            const int n = static_cast<int>(instance.sets[i].cols());
            std::map<int, int> class_size;
            std::vector<int> cols;
            for (int j = 0; j < n; ++j) {
                int c = 0;
                while (class_size[c] >= std::max(1, p - 1)) ++c;
                cols.push_back(c);
                ++class_size[c];
            }
            seeded_shuffle(cols, rng);
            instance.colors.push_back(std::move(cols));
        }
    }
    instance.validate();
    return instance;
}

} // namespace ctvlab
