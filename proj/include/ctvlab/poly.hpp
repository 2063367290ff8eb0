#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctvlab/scalar.hpp"

namespace ctvlab {

// Sparse multivariate polynomial with arbitrary-precision integer
// coefficients, optionally reduced modulo a prime.  Terms are kept in
// lexicographic exponent order, so iteration and printing are canonical.
struct Poly {
    int nvars = 0;
    std::map<std::vector<int>, Int> terms;

    static Poly zero(int nvars) { return Poly{nvars, {}}; }
    static Poly constant(int nvars, Int c, unsigned modulus = 0);
    static Poly variable(int nvars, int index, int exponent = 1);

    bool is_zero() const { return terms.empty(); }
    Int coefficient(const std::vector<int>& mono) const;
    void add_term(const std::vector<int>& mono, Int coeff, unsigned modulus = 0);

    // Weighted degree under per-variable degrees; -1 for the zero polynomial.
    int weighted_degree(const std::vector<int>& var_degrees) const;
    bool is_homogeneous(const std::vector<int>& var_degrees, int* degree = nullptr) const;

    std::string to_string(const std::vector<std::string>& names) const;
};

Poly poly_add(const Poly& a, const Poly& b, unsigned modulus = 0);
Poly poly_scale(const Poly& a, const Int& c, unsigned modulus = 0);
Poly poly_mul(const Poly& a, const Poly& b, unsigned modulus = 0);
Poly poly_pow(const Poly& a, int e, unsigned modulus = 0);

// Substitutes images[i] (over `target_nvars` variables) for variable i.
Poly poly_substitute(const Poly& p, const std::vector<Poly>& images, int target_nvars,
                     unsigned modulus = 0);

inline Int mod_reduce(Int v, unsigned modulus)
{
    if (modulus == 0) return v;
    Int m(modulus);
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

} // namespace ctvlab
