#include "ctvlab/svg.hpp"

#include <algorithm>
#include <sstream>

namespace ctvlab {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kPad = 40.0;
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Frame {
    double min_x, min_y, scale;

    double x(double v) const { return kPad + (v - min_x) * scale; }
    double y(double v) const { return kCanvas - kPad - (v - min_y) * scale; }
};

Frame fit(const std::vector<VecQ>& pts)
{
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& p : pts) {
        double px = p(0).convert_to<double>(), py = p(1).convert_to<double>();
        lo_x = std::min(lo_x, px);
        hi_x = std::max(hi_x, px);
        lo_y = std::min(lo_y, py);
        hi_y = std::max(hi_y, py);
    }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    return {lo_x, lo_y, (kCanvas - 2 * kPad) / span};
}

// Coordinates of everything in the 2-dim complement of the flat's direction.
struct Shadow {
    MatQ basis;
    MatQ gram_inv;

    explicit Shadow(const ComplexFlat& flat)
    {
        basis = flat.directions.cols() == 0
                    ? MatQ(MatQ::Identity(flat.space.real_dim(), flat.space.real_dim()))
                    : kernel_basis(MatQ(flat.directions.transpose()));
        if (basis.cols() != 2)
            throw input_error("plotting needs a 2-dimensional projection (complement of the flat)");
        gram_inv = inverse_exact(MatQ(basis.transpose() * basis));
    }

    VecQ coords(const VecQ& ambient) const { return gram_inv * (basis.transpose() * ambient); }
};

void emit_header(std::ostringstream& os)
{
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
       << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void emit_line_through(std::ostringstream& os, const Frame& f, double nx, double ny, double c,
                       const char* color)
{
    // n·p = c in plot coordinates; clip against a generous box.
    double lo = -1e6, hi = 1e6;
    double x1, y1, x2, y2;
    if (std::abs(ny) > std::abs(nx)) {
        x1 = lo; x2 = hi;
        y1 = (c - nx * x1) / ny;
        y2 = (c - nx * x2) / ny;
    } else {
        y1 = lo; y2 = hi;
        x1 = (c - ny * y1) / nx;
        x2 = (c - ny * y2) / nx;
    }
    os << "<line x1=\"" << f.x(x1) << "\" y1=\"" << f.y(y1) << "\" x2=\"" << f.x(x2) << "\" y2=\""
       << f.y(y2) << "\" stroke=\"" << color << "\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";
}

void emit_cross(std::ostringstream& os, const Frame& f, double px, double py, const char* color)
{
    const double r = 7;
    os << "<line x1=\"" << f.x(px) - r << "\" y1=\"" << f.y(py) - r << "\" x2=\"" << f.x(px) + r
       << "\" y2=\"" << f.y(py) + r << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<line x1=\"" << f.x(px) - r << "\" y1=\"" << f.y(py) + r << "\" x2=\"" << f.x(px) + r
       << "\" y2=\"" << f.y(py) - r << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
}

} // namespace

std::string transversal_svg(const std::vector<MassCloud>& measures, const TransversalCert& cert)
{
    Shadow shadow(cert.flat);
    std::vector<VecQ> all;
    std::vector<std::vector<VecQ>> per_measure;
    for (const auto& mu : measures) {
        std::vector<VecQ> pts;
        for (int i = 0; i < mu.size(); ++i) {
            pts.push_back(shadow.coords(VecQ(mu.points.col(i))));
            all.push_back(pts.back());
        }
        per_measure.push_back(std::move(pts));
    }
    VecQ q = shadow.coords(cert.flat.base);
    all.push_back(q);

    Frame f = fit(all);
    std::ostringstream os;
    emit_header(os);
    for (std::size_t m = 0; m < per_measure.size(); ++m) {
        const char* color = kPalette[m % 6];
        for (const auto& p : per_measure[m])
            os << "<circle cx=\"" << f.x(p(0).convert_to<double>()) << "\" cy=\""
               << f.y(p(1).convert_to<double>()) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    }
    for (std::size_t m = 0; m < cert.depths.size(); ++m) {
        // Witness normals live in the complement span; render their boundary
        // lines in shadow coordinates: n·x = offset becomes (Bᵀn)·y = offset - n·base_shift.
        VecQ n = cert.depths[m].witness_normal;
        VecQ n_coords = shadow.basis.transpose() * n; // pairing with basis coords
        emit_line_through(os, f, n_coords(0).convert_to<double>(), n_coords(1).convert_to<double>(),
                          cert.depths[m].witness_offset.convert_to<double>(), kPalette[m % 6]);
    }
    emit_cross(os, f, q(0).convert_to<double>(), q(1).convert_to<double>(), "#000000");
    os << "</svg>\n";
    return os.str();
}

std::string tverberg_svg(const TvInstance& instance, const TverbergCert& cert)
{
    Shadow shadow(cert.flat);
    std::vector<VecQ> all;
    std::vector<std::vector<VecQ>> per_set;
    for (const auto& s : instance.sets) {
        std::vector<VecQ> pts;
        for (int i = 0; i < s.cols(); ++i) {
            pts.push_back(shadow.coords(VecQ(s.col(i))));
            all.push_back(pts.back());
        }
        per_set.push_back(std::move(pts));
    }
    VecQ q = shadow.coords(cert.q);
    all.push_back(q);

    Frame f = fit(all);
    std::ostringstream os;
    emit_header(os);
    for (std::size_t s = 0; s < per_set.size(); ++s) {
        const char* color = kPalette[s % 6];
        for (std::size_t part = 0; part < cert.partitions[s].size(); ++part) {
            const auto& indices = cert.partitions[s][part];
            os << "<polygon points=\"";
            for (int i : indices)
                os << f.x(per_set[s][i](0).convert_to<double>()) << ","
                   << f.y(per_set[s][i](1).convert_to<double>()) << " ";
            os << "\" fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"" << color
               << "\" stroke-width=\"1\"/>\n";
        }
        for (const auto& p : per_set[s])
            os << "<circle cx=\"" << f.x(p(0).convert_to<double>()) << "\" cy=\""
               << f.y(p(1).convert_to<double>()) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    }
    emit_cross(os, f, q(0).convert_to<double>(), q(1).convert_to<double>(), "#000000");
    os << "</svg>\n";
    return os.str();
}

} // namespace ctvlab
