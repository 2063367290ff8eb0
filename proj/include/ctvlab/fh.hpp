#pragma once

#include <optional>

#include "ctvlab/poly.hpp"

namespace ctvlab {

enum class Group { circle, z2 };

// An index ideal: either a monomial ideal given by generator exponent vectors
// or a principal ideal with one fully expanded homogeneous generator.
struct IdealSpec {
    enum class Kind { monomial, principal };

    Kind kind = Kind::monomial;
    std::vector<std::string> variables;
    std::vector<int> degrees; // per variable
    unsigned modulus = 0;     // 0 = integer coefficients
    std::vector<std::vector<int>> monomial_generators;
    Poly principal{0, {}};
};

// Index of the product of unit spheres: (u_1^d, ..., u_n^d) over Z with
// deg u_i = 2 for the circle action, (t_1^{2d}, ..., t_n^{2d}) over F_2 with
// deg t_i = 1 for the Z_2 action.
IdealSpec index_product_of_spheres(int n, int d, Group group);

// Principal index of the representation sphere: the fully expanded top Chern
// (circle) or top Stiefel-Whitney (Z_2) class of the representation bundle.
// Circle: u_1^{d-1} ... u_n^{d-n} * prod_{i<j} (u_i - u_j), requires n <= d.
// Z_2:    t_1^{a_1} ... t_n^{a_n} * prod_{i<j} (t_i^2 + t_j^2) over F_2.
IdealSpec index_representation_sphere(int n, int d, Group group,
                                      const std::optional<std::vector<int>>& exponents = std::nullopt);

bool monomial_in_monomial_ideal(const std::vector<int>& exponent, const IdealSpec& ideal);

struct KeyTermReport {
    Group group = Group::circle;
    int n = 0, d = 0;
    std::vector<int> exponents;    // z2 only
    std::vector<int> key_monomial; // exponent vector
    Int coefficient;
    bool survives = false;             // the coefficient is a unit
    bool not_in_ideal = false;         // key monomial outside the product ideal
    bool contradiction_established = false;
    bool within_hypothesis = false;    // requested parameters satisfy the theorem's pre
};

// Mechanizes the final index step: extracts the designated key monomial from
// the expanded principal generator, checks that its coefficient is a unit and
// that the monomial avoids the product-of-spheres ideal.  Out-of-hypothesis
// parameters are computed anyway and flagged.
KeyTermReport key_term_survives(int n, int d, Group group,
                                const std::optional<std::vector<int>>& exponents = std::nullopt);

} // namespace ctvlab
