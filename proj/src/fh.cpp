#include "ctvlab/fh.hpp"

namespace ctvlab {

namespace {

std::vector<std::string> var_names(int n, const std::string& stem)
{
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
    return names;
}

} // namespace

IdealSpec index_product_of_spheres(int n, int d, Group group)
{
    if (n < 1 || d < 1) throw input_error("index_product_of_spheres requires n, d >= 1");
    IdealSpec spec;
    spec.kind = IdealSpec::Kind::monomial;
    if (group == Group::circle) {
        spec.variables = var_names(n, "u");
        spec.degrees.assign(n, 2);
        spec.modulus = 0;
        for (int i = 0; i < n; ++i) {
            std::vector<int> g(n, 0);
            g[i] = d;
            spec.monomial_generators.push_back(std::move(g));
        }
    } else {
        spec.variables = var_names(n, "t");
        spec.degrees.assign(n, 1);
        spec.modulus = 2;
        for (int i = 0; i < n; ++i) {
            std::vector<int> g(n, 0);
            g[i] = 2 * d;
            spec.monomial_generators.push_back(std::move(g));
        }
    }
    return spec;
}

IdealSpec index_representation_sphere(int n, int d, Group group,
                                      const std::optional<std::vector<int>>& exponents)
{
    if (n < 1 || d < 1) throw input_error("index_representation_sphere requires n, d >= 1");
    IdealSpec spec;
    spec.kind = IdealSpec::Kind::principal;
    if (group == Group::circle) {
        if (n > d) throw input_error("circle representation index requires n <= d");
        spec.variables = var_names(n, "u");
        spec.degrees.assign(n, 2);
        spec.modulus = 0;
        std::vector<int> prefix(n, 0);
        for (int i = 0; i < n; ++i) prefix[i] = d - 1 - i;
        Poly gen = Poly::zero(n);
        gen.add_term(prefix, 1);
        // Vandermonde factors grouped by the larger index keep intermediate
        // expansions at factorial size.
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                Poly factor = poly_add(Poly::variable(n, i), poly_scale(Poly::variable(n, j), -1));
                gen = poly_mul(gen, factor);
            }
        spec.principal = std::move(gen);
    } else {
        std::vector<int> a;
        if (exponents) {
            a = *exponents;
            if (static_cast<int>(a.size()) != n)
                throw input_error("exponent vector must have length n");
            for (int v : a)
                if (v < 0) throw input_error("exponents must be nonnegative");
        } else {
            for (int i = 1; i <= n; ++i) a.push_back(2 * (d - i)); // circle specialization
        }
        spec.variables = var_names(n, "t");
        spec.degrees.assign(n, 1);
        spec.modulus = 2;
        Poly gen = Poly::zero(n);
        gen.add_term(a, 1, 2);
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                Poly factor = poly_add(Poly::variable(n, i, 2), Poly::variable(n, j, 2), 2);
                gen = poly_mul(gen, factor, 2);
            }
        spec.principal = std::move(gen);
    }
    return spec;
}

bool monomial_in_monomial_ideal(const std::vector<int>& exponent, const IdealSpec& ideal)
{
    if (ideal.kind != IdealSpec::Kind::monomial)
        throw input_error("monomial membership needs a monomial ideal");
    if (exponent.size() != ideal.variables.size())
        throw input_error("monomial arity does not match the ideal's variables");
    for (const auto& g : ideal.monomial_generators) {
        bool divides = true;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] > exponent[i]) { divides = false; break; }
        if (divides) return true;
    }
    return false;
}

KeyTermReport key_term_survives(int n, int d, Group group,
                                const std::optional<std::vector<int>>& exponents)
{
    KeyTermReport report;
    report.group = group;
    report.n = n;
    report.d = d;

    IdealSpec product = index_product_of_spheres(n, d, group);
    IdealSpec principal = index_representation_sphere(n, d, group, exponents);

    if (group == Group::circle) {
        report.within_hypothesis = n <= d;
        report.key_monomial.assign(n, d - 1); // (u_1 ... u_n)^{d-1}
    } else {
        std::vector<int> a;
        if (exponents) a = *exponents;
        else
            for (int i = 1; i <= n; ++i) a.push_back(2 * (d - i));
        report.exponents = a;
        report.within_hypothesis = true;
        for (int i = 0; i < n; ++i)
            if (a[i] + 2 * i > 2 * d - 1) report.within_hypothesis = false;
        for (int i = 0; i < n; ++i) report.key_monomial.push_back(a[i] + 2 * i);
    }

    report.coefficient = principal.principal.coefficient(report.key_monomial);
    report.survives = group == Group::circle ? (report.coefficient == 1 || report.coefficient == -1)
                                             : report.coefficient == 1;
    report.not_in_ideal = !monomial_in_monomial_ideal(report.key_monomial, product);
    report.contradiction_established = report.survives && report.not_in_ideal;
    return report;
}

} // namespace ctvlab
