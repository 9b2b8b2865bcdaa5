#include "qcharmlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "qcharmlab/errors.hpp"

namespace qcharmlab {

namespace {

struct Box {
    double min_x{0}, min_y{0}, max_x{0}, max_y{0};

    void grow(Complex p) {
        min_x = std::min(min_x, p.real());
        max_x = std::max(max_x, p.real());
        min_y = std::min(min_y, p.imag());
        max_y = std::max(max_y, p.imag());
    }
};

std::ofstream open_svg(const std::string& path, const Box& box,
                       const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path);
    const double pad = 0.05 * std::max(box.max_x - box.min_x, box.max_y - box.min_y);
    out << std::setprecision(10);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!comment.empty()) out << "<!-- " << comment << " -->\n";
    // Flip the y-axis so the math orientation matches the screen.
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        << "viewBox=\"" << box.min_x - pad << " " << -(box.max_y + pad) << " "
        << (box.max_x - box.min_x + 2 * pad) << " "
        << (box.max_y - box.min_y + 2 * pad) << "\">\n";
    return out;
}

void polyline(std::ofstream& out, const std::vector<Complex>& pts,
              const std::string& stroke, double width, bool closed) {
    out << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\""
        << stroke << "\" stroke-width=\"" << width << "\" points=\"";
    for (const Complex& p : pts) out << p.real() << "," << -p.imag() << " ";
    out << "\"/>\n";
}

// Blue (negative) through white (zero) to red (positive).
std::string diverging_color(double v, double scale) {
    double t = scale > 0 ? std::clamp(v / scale, -1.0, 1.0) : 0.0;
    int r = 255, g = 255, b = 255;
    if (t >= 0) {
        g = b = static_cast<int>(255 * (1 - t));
    } else {
        r = g = static_cast<int>(255 * (1 + t));
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

void write_circle_image_svg(const std::string& path, const HarmonicMap& map,
                            const JordanCurve& curve) {
    const int n_theta = 256;
    std::vector<Complex> boundary(n_theta);
    Box box;
    for (int j = 0; j < n_theta; ++j) {
        boundary[j] = curve.point(j * curve.length() / n_theta);
        box.grow(boundary[j]);
    }
    auto out = open_svg(path, box,
                        "images of concentric circles (gray) and radial rays "
                        "(light gray) under the harmonic map; target curve in black");
    polyline(out, boundary, "#000000", 0.01, true);
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.97}) {
        std::vector<Complex> img(n_theta);
        for (int j = 0; j < n_theta; ++j) {
            img[j] = map.eval(std::polar(r, kTwoPi * j / n_theta));
        }
        polyline(out, img, "#777777", 0.006, true);
    }
    for (int k = 0; k < 16; ++k) {
        std::vector<Complex> ray(64);
        for (int i = 0; i < 64; ++i) {
            ray[i] = map.eval(std::polar(0.97 * (i + 1) / 64.0, kTwoPi * k / 16.0));
        }
        polyline(out, ray, "#bbbbbb", 0.004, false);
    }
    out << "</svg>\n";
}

void write_audit_heatmap_svg(const std::string& path, const BarrierAudit& audit) {
    Box box{-1, -1, 1, 1};
    double scale = 0;
    for (const AuditRow& row : audit.rows) {
        scale = std::max(scale, std::fabs(row.lap_phi));
    }
    auto out = open_svg(
        path, box,
        "barrier Laplacian over the collar preimage; color scale: blue = -" +
            std::to_string(scale) + ", white = 0, red = +" + std::to_string(scale));
    out << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" "
           "stroke-width=\"0.005\"/>\n";
    for (const AuditRow& row : audit.rows) {
        out << "<circle cx=\"" << row.z.real() << "\" cy=\"" << -row.z.imag()
            << "\" r=\"0.004\" fill=\"" << diverging_color(row.lap_phi, scale)
            << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace qcharmlab
