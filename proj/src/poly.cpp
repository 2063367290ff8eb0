#include "ctvlab/poly.hpp"

#include <sstream>

namespace ctvlab {

Poly Poly::constant(int nvars, Int c, unsigned modulus)
{
    Poly p = zero(nvars);
    p.add_term(std::vector<int>(nvars, 0), std::move(c), modulus);
    return p;
}

Poly Poly::variable(int nvars, int index, int exponent)
{
    Poly p = zero(nvars);
    std::vector<int> mono(nvars, 0);
    mono[index] = exponent;
    p.add_term(mono, 1);
    return p;
}

Int Poly::coefficient(const std::vector<int>& mono) const
{
    auto it = terms.find(mono);
    return it == terms.end() ? Int(0) : it->second;
}

void Poly::add_term(const std::vector<int>& mono, Int coeff, unsigned modulus)
{
    if (static_cast<int>(mono.size()) != nvars) throw std::logic_error("monomial arity mismatch");
    coeff = mod_reduce(std::move(coeff), modulus);
    auto it = terms.find(mono);
    if (it == terms.end()) {
        if (coeff != 0) terms.emplace(mono, std::move(coeff));
        return;
    }
    it->second = mod_reduce(it->second + coeff, modulus);
    if (it->second == 0) terms.erase(it);
}

int Poly::weighted_degree(const std::vector<int>& var_degrees) const
{
    int best = -1;
    for (const auto& [mono, c] : terms) {
        int deg = 0;
        for (int i = 0; i < nvars; ++i) deg += mono[i] * var_degrees[i];
        best = std::max(best, deg);
    }
    return best;
}

bool Poly::is_homogeneous(const std::vector<int>& var_degrees, int* degree) const
{
    int seen = -1;
    for (const auto& [mono, c] : terms) {
        int deg = 0;
        for (int i = 0; i < nvars; ++i) deg += mono[i] * var_degrees[i];
        if (seen < 0) seen = deg;
        else if (deg != seen) return false;
    }
    if (degree) *degree = seen;
    return true;
}

std::string Poly::to_string(const std::vector<std::string>& names) const
{
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : terms) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Int a = abs(c);
        bool printed = false;
        if (a != 1) {
            os << a.str();
            printed = true;
        }
        for (int i = 0; i < nvars; ++i) {
            if (mono[i] == 0) continue;
            if (printed) os << "*";
            os << names[i];
            if (mono[i] > 1) os << "^" << mono[i];
            printed = true;
        }
        if (!printed) os << "1";
    }
    return os.str();
}

Poly poly_add(const Poly& a, const Poly& b, unsigned modulus)
{
    Poly out = a;
    for (const auto& [mono, c] : b.terms) out.add_term(mono, c, modulus);
    return out;
}

Poly poly_scale(const Poly& a, const Int& c, unsigned modulus)
{
    Poly out = Poly::zero(a.nvars);
    for (const auto& [mono, v] : a.terms) out.add_term(mono, v * c, modulus);
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned modulus)
{
    Poly out = Poly::zero(a.nvars);
    std::vector<int> mono(a.nvars);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            for (int i = 0; i < a.nvars; ++i) mono[i] = ma[i] + mb[i];
            out.add_term(mono, ca * cb, modulus);
        }
    return out;
}

Poly poly_pow(const Poly& a, int e, unsigned modulus)
{
    Poly out = Poly::constant(a.nvars, 1, modulus);
    for (int i = 0; i < e; ++i) out = poly_mul(out, a, modulus);
    return out;
}

Poly poly_substitute(const Poly& p, const std::vector<Poly>& images, int target_nvars,
                     unsigned modulus)
{
    Poly out = Poly::zero(target_nvars);
    for (const auto& [mono, c] : p.terms) {
        Poly term = Poly::constant(target_nvars, c, modulus);
        for (int i = 0; i < p.nvars; ++i)
            for (int e = 0; e < mono[i]; ++e) term = poly_mul(term, images[i], modulus);
        out = poly_add(out, term, modulus);
    }
    return out;
}

} // namespace ctvlab
