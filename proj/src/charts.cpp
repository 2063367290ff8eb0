#include "ctvlab/charts.hpp"

#include <sstream>

namespace ctvlab {

MatQ GrassmannChart::complex_spanning(const ComplexStructure& cs) const
{
    const int m = subspace_dim();
    std::vector<bool> in_index(d, false);
    for (int i : index_set) in_index[i] = true;
    std::vector<int> complement;
    for (int j = 0; j < d; ++j)
        if (!in_index[j]) complement.push_back(j);

    MatQ spanning(cs.real_dim(), m);
    for (int c = 0; c < m; ++c) {
        VecQ v = VecQ::Zero(cs.real_dim());
        v(2 * index_set[c]) = 1; // real part 1 on the pivot coordinate
        for (int l = 0; l < k; ++l) {
            v(2 * complement[l]) = z_re(c, l);
            v(2 * complement[l] + 1) = z_im(c, l);
        }
        spanning.col(c) = v;
    }
    return spanning;
}

MatQ GrassmannChart::real_basis(const ComplexStructure& cs) const
{
    MatQ spanning = complex_spanning(cs);
    MatQ basis(cs.real_dim(), 2 * spanning.cols());
    for (int c = 0; c < spanning.cols(); ++c) {
        basis.col(2 * c) = spanning.col(c);
        basis.col(2 * c + 1) = cs.apply_j(VecQ(spanning.col(c)));
    }
    return basis;
}

std::string GrassmannChart::describe() const
{
    std::ostringstream os;
    os << "I={";
    for (std::size_t i = 0; i < index_set.size(); ++i)
        os << (i ? "," : "") << index_set[i];
    os << "} Z=[";
    for (int r = 0; r < z_re.rows(); ++r)
        for (int c = 0; c < z_re.cols(); ++c)
            os << (r + c ? " " : "") << rat_to_string(z_re(r, c)) << "+" << rat_to_string(z_im(r, c)) << "i";
    os << "]";
    return os.str();
}

std::vector<std::vector<int>> index_subsets(int d, int size)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < d; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

VecQ complex_combination(const MatQ& pairs, const VecQ& re, const VecQ& im)
{
    const int m = static_cast<int>(pairs.cols()) / 2;
    VecQ out = VecQ::Zero(pairs.rows());
    for (int j = 0; j < m; ++j)
        out += re(j) * pairs.col(2 * j) + im(j) * pairs.col(2 * j + 1);
    return out;
}

} // namespace ctvlab
