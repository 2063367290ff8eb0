#pragma once

#include "ctvlab/poly.hpp"

namespace ctvlab {

// Weakly decreasing positive integer parts; the empty partition is the unit.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int weight() const;
    int rows() const { return static_cast<int>(parts.size()); }
    int col(int i) const { return i < rows() ? parts[i] : 0; }
    bool fits_in(int max_rows, int max_cols) const;
    Partition conjugate() const;

    auto operator<=>(const Partition&) const = default;
};

// Cohomology ring parameters of G_k(C^d): classes live on partitions inside
// the k x (d-k) rectangle, with integer coefficients (modulus 0) or mod p.
struct SchurRing {
    int k = 0;
    int d = 0;
    unsigned modulus = 0;

    int max_rows() const { return k; }
    int max_cols() const { return d - k; }
    bool operator==(const SchurRing&) const = default;
};

// Finitely supported coefficient map on rectangle partitions; zero
// coefficients are never stored.
struct SchurClass {
    SchurRing ring;
    std::map<Partition, Int> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(const Partition& p, Int c);
};

SchurClass schur_unit(const SchurRing& ring);
SchurClass schur_single(const SchurRing& ring, const Partition& p, Int c = 1);
SchurClass schur_add(const SchurClass& a, const SchurClass& b);

// Littlewood-Richardson product realized by iterated Pieri steps on one
// factor's elementary-class decomposition (dual Jacobi-Trudi), with rectangle
// truncation implementing the presentation ideal.
SchurClass schur_multiply(const SchurClass& a, const SchurClass& b);
SchurClass schur_power(const SchurClass& a, int e);

// Vertical-strip Pieri step: e_j * s_lambda inside the ring's rectangle.
std::vector<Partition> pieri_column(const Partition& lambda, int j, int max_rows, int max_cols);

// Generators of the presentation ideal I_k of H*(G_k(C^d)): the homogeneous
// parts of (1 + c_1 + ... + c_k)^{-1} of (halved) degrees d-k+1 .. d, as
// polynomials in c_1..c_k with deg c_i = i.
std::vector<Poly> presentation_ideal(int k, int d);

// Substitution c_j -> e_j(u_1..u_k); a ring map onto symmetric polynomials.
Poly splitting_pullback(const Poly& chern_poly, int k);

struct EulerPowerReport {
    bool nonzero = false;
    SchurClass survivor;
};

// Is (e(gamma_n))^m = (s_{(1^n)})^m nonzero in H*(G_n(C^d); F_p)?
EulerPowerReport euler_power_nonvanishing(int n, int d, int m, unsigned p);

// Mod-2 Euler-class power check on the real projectivization of the
// complement bundle: works in the free module with basis 1, x, ...,
// x^{2(d-n)-1} over H*(G_n(C^d); F_2), reducing x-powers by the relation
// x^{2(d-n)} = sum_i x^{2(d-n)-2i} w_{2i}(complement); returns whether
// (w_{2n} x)^m survives.
bool projectivization_nonvanishing(int n, int d, int m);

// Number of rectangle partitions by halved degree 0..k(d-k).
std::vector<Int> rectangle_degree_counts(int k, int d);

// Coefficients of the Gaussian binomial [d, k]_q via the Pascal recurrence.
std::vector<Int> gaussian_binomial(int d, int k);

} // namespace ctvlab
