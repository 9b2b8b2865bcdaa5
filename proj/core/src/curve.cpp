#include "qcharmlab/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qcharmlab/errors.hpp"

namespace qcharmlab {

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0,
    0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
    auto orient = [](Complex a, Complex b, Complex c) {
        double v = cross(b - a, c - a);
        if (v > 1e-14) return 1;
        if (v < -1e-14) return -1;
        return 0;
    };
    int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    auto on_segment = [](Complex a, Complex b, Complex c) {
        return std::min(a.real(), b.real()) - 1e-14 <= c.real() &&
               c.real() <= std::max(a.real(), b.real()) + 1e-14 &&
               std::min(a.imag(), b.imag()) - 1e-14 <= c.imag() &&
               c.imag() <= std::max(a.imag(), b.imag()) + 1e-14;
    };
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

double polygon_signed_area(std::span<const Complex> pts) {
    double area2 = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Complex a = pts[i], b = pts[(i + 1) % pts.size()];
        area2 += cross(a, b);
    }
    return 0.5 * area2;
}

}  // namespace

// Periodic interpolant over t in [0, 2*pi). Trig polynomials store a
// two-sided coefficient spectrum; splines store per-segment cubics.
struct JordanCurve::Interpolant {
    CurveKind kind;

    // Trig: coeffs_[k + half] is the coefficient of e^{ikt}, k in
    // [-half, half].
    std::vector<Complex> trig_coeffs;
    int trig_half{0};

    // Spline: node values and second derivatives at uniform nodes.
    std::vector<Complex> sp_values;
    std::vector<Complex> sp_second;
    int sp_n{0};

    Complex eval(double t, int derivative) const {
        return kind == CurveKind::TrigPoly ? eval_trig(t, derivative)
                                           : eval_spline(t, derivative);
    }

    Complex eval_trig(double t, int derivative) const {
        const Complex e = std::polar(1.0, t);
        const Complex einv = std::conj(e);
        // Horner over positive and negative frequencies separately.
        Complex pos = 0, neg = 0;
        for (int k = trig_half; k >= 1; --k) {
            Complex factor_p = 1, factor_n = 1;
            if (derivative >= 1) {
                factor_p = Complex(0, k);
                factor_n = Complex(0, -k);
            }
            if (derivative == 2) {
                factor_p *= Complex(0, k);
                factor_n *= Complex(0, -k);
            }
            pos = (pos + factor_p * trig_coeffs[trig_half + k]) * e;
            neg = (neg + factor_n * trig_coeffs[trig_half - k]) * einv;
        }
        Complex c0 = derivative == 0 ? trig_coeffs[trig_half] : Complex(0);
        return c0 + pos + neg;
    }

    Complex eval_spline(double t, int derivative) const {
        const double h = kTwoPi / sp_n;
        double u = wrap_angle(t) / h;
        int j = std::min(static_cast<int>(u), sp_n - 1);
        double x = (u - j) * h;  // offset within segment, [0, h]
        const Complex pj = sp_values[j], pj1 = sp_values[(j + 1) % sp_n];
        const Complex mj = sp_second[j], mj1 = sp_second[(j + 1) % sp_n];
        const double a = (h - x), b = x;
        switch (derivative) {
            case 0:
                return mj * (a * a * a) / (6 * h) + mj1 * (b * b * b) / (6 * h) +
                       (pj / h - mj * h / 6.0) * a + (pj1 / h - mj1 * h / 6.0) * b;
            case 1:
                return -mj * (a * a) / (2 * h) + mj1 * (b * b) / (2 * h) -
                       (pj / h - mj * h / 6.0) + (pj1 / h - mj1 * h / 6.0);
            default:
                return mj * a / h + mj1 * b / h;
        }
    }
};

namespace {

std::vector<Complex> trig_analyze(std::span<const Complex> pts) {
    const int m = static_cast<int>(pts.size());
    const int half = m / 2;
    std::vector<Complex> coeffs(2 * half + 1, Complex(0));
    for (int k = -half; k <= half; ++k) {
        Complex acc = 0;
        for (int j = 0; j < m; ++j) {
            acc += pts[j] * std::polar(1.0, -k * kTwoPi * j / m);
        }
        coeffs[k + half] = acc / static_cast<double>(m);
    }
    if (m % 2 == 0) {
        // The +half and -half sums alias to the same Nyquist coefficient;
        // split it evenly so the pair contributes it exactly once.
        Complex nyq = coeffs[2 * half];
        coeffs[2 * half] = 0.5 * nyq;
        coeffs[0] = 0.5 * nyq;
    }
    return coeffs;
}

// Periodic cubic spline second derivatives: cyclic tridiagonal system
// solved with the Sherman-Morrison correction.
std::vector<Complex> spline_second_derivatives(std::span<const Complex> p) {
    const int n = static_cast<int>(p.size());
    const double h = kTwoPi / n;
    std::vector<Complex> rhs(n);
    for (int j = 0; j < n; ++j) {
        rhs[j] = 6.0 * (p[(j + 1) % n] - 2.0 * p[j] + p[(j + n - 1) % n]) / (h * h);
    }
    const double diag = 4.0, off = 1.0;

    // Thomas algorithm for tridiag(off, b_j, off) x = d, no wraparound.
    auto thomas = [&](std::vector<double> b, std::vector<Complex> d) {
        std::vector<double> c(n, off);
        for (int j = 1; j < n; ++j) {
            double w = off / b[j - 1];
            b[j] -= w * c[j - 1];
            d[j] -= w * d[j - 1];
        }
        std::vector<Complex> x(n);
        x[n - 1] = d[n - 1] / b[n - 1];
        for (int j = n - 2; j >= 0; --j) {
            x[j] = (d[j] - off * x[j + 1]) / b[j];
        }
        return x;
    };

    const double gamma = -diag;
    std::vector<double> b(n, diag);
    b[0] = diag - gamma;
    b[n - 1] = diag - off * off / gamma;
    std::vector<Complex> u_rhs(n, Complex(0));
    u_rhs[0] = gamma;
    u_rhs[n - 1] = off;
    std::vector<Complex> y = thomas(b, rhs);
    std::vector<Complex> q = thomas(b, u_rhs);
    Complex factor = (y[0] + off / gamma * y[n - 1]) /
                     (1.0 + q[0] + off / gamma * q[n - 1]);
    std::vector<Complex> x(n);
    for (int j = 0; j < n; ++j) x[j] = y[j] - factor * q[j];
    return x;
}

}  // namespace

JordanCurve JordanCurve::build(std::span<const Complex> points, CurveKind kind) {
    const int m = static_cast<int>(points.size());
    if (m < 8) {
        throw Error(ErrorCode::DegenerateInput,
                    "need at least 8 points, got " + std::to_string(m));
    }
    for (int i = 0; i < m; ++i) {
        if (std::abs(points[i] - points[(i + 1) % m]) < 1e-12) {
            throw Error(ErrorCode::DegenerateInput,
                        "duplicate consecutive points at index " + std::to_string(i));
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            // Skip adjacent segments (they share an endpoint).
            if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
            if (segments_intersect(points[i], points[(i + 1) % m], points[j],
                                   points[(j + 1) % m])) {
                throw Error(ErrorCode::SelfIntersecting,
                            "sample polygon segments " + std::to_string(i) + " and " +
                                std::to_string(j) + " cross");
            }
        }
    }
    double area = polygon_signed_area(points);
    double perim = 0;
    for (int i = 0; i < m; ++i) perim += std::abs(points[(i + 1) % m] - points[i]);
    if (std::fabs(area) < 1e-8 * perim * perim) {
        throw Error(ErrorCode::DegenerateInput, "points are nearly collinear");
    }
    if (area < 0) {
        throw Error(ErrorCode::DegenerateInput,
                    "sample polygon is clockwise; counterclockwise input required");
    }

    JordanCurve curve;
    curve.kind_ = kind;
    curve.input_points_.assign(points.begin(), points.end());

    auto interp = std::make_shared<Interpolant>();
    interp->kind = kind;
    if (kind == CurveKind::TrigPoly) {
        interp->trig_coeffs = trig_analyze(points);
        interp->trig_half = static_cast<int>(interp->trig_coeffs.size()) / 2;
    } else {
        interp->sp_values.assign(points.begin(), points.end());
        interp->sp_second = spline_second_derivatives(points);
        interp->sp_n = m;
    }
    curve.interp_ = interp;

    // Cumulative arc length over a fine uniform t-grid.
    curve.n_tab_ = std::max(4096, 16 * m);
    curve.arclen_table_.assign(curve.n_tab_ + 1, 0.0);
    const double ht = kTwoPi / curve.n_tab_;
    double min_speed = std::numeric_limits<double>::infinity();
    for (int i = 0; i < curve.n_tab_; ++i) {
        double t0 = i * ht, t1 = (i + 1) * ht;
        double seg = 0;
        for (int g = 0; g < 5; ++g) {
            double t = 0.5 * (t0 + t1) + 0.5 * ht * kGlNodes[g];
            double speed = std::abs(interp->eval(t, 1));
            min_speed = std::min(min_speed, speed);
            seg += kGlWeights[g] * speed;
        }
        curve.arclen_table_[i + 1] = curve.arclen_table_[i] + seg * 0.5 * ht;
    }
    curve.length_ = curve.arclen_table_.back();
    if (!(curve.length_ > 0) || min_speed < 1e-10 * curve.length_) {
        throw Error(ErrorCode::DegenerateInput,
                    "interpolant speed vanishes; input too irregular");
    }

    const int n_poly = std::max(2048, 8 * m);
    curve.dense_polygon_.resize(n_poly);
    for (int i = 0; i < n_poly; ++i) {
        curve.dense_polygon_[i] = interp->eval(i * kTwoPi / n_poly, 0);
    }
    return curve;
}

Complex JordanCurve::param_point(double t) const { return interp_->eval(t, 0); }
Complex JordanCurve::param_velocity(double t) const { return interp_->eval(t, 1); }
Complex JordanCurve::param_acceleration(double t) const { return interp_->eval(t, 2); }

double JordanCurve::segment_arclength(double t0, double t1) const {
    double acc = 0;
    for (int g = 0; g < 5; ++g) {
        double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * kGlNodes[g];
        acc += kGlWeights[g] * std::abs(interp_->eval(t, 1));
    }
    return acc * 0.5 * (t1 - t0);
}

double JordanCurve::arclength_of_param(double t) const {
    t = wrap_angle(t);
    const double ht = kTwoPi / n_tab_;
    int i = std::min(static_cast<int>(t / ht), n_tab_ - 1);
    return arclen_table_[i] + segment_arclength(i * ht, t);
}

double JordanCurve::param_of_arclength(double s) const {
    s = wrap_periodic(s, length_);
    auto it = std::upper_bound(arclen_table_.begin(), arclen_table_.end(), s);
    int i = std::max(0, static_cast<int>(it - arclen_table_.begin()) - 1);
    const double ht = kTwoPi / n_tab_;
    double t = i * ht;
    double base = arclen_table_[i];
    // Newton on S(t) = s within the bracketing table cell.
    for (int iter = 0; iter < 6; ++iter) {
        double f = base + segment_arclength(i * ht, t) - s;
        double speed = std::abs(interp_->eval(t, 1));
        double step = f / speed;
        t -= step;
        t = std::clamp(t, i * ht, (i + 1) * ht);
        if (std::fabs(step) < 1e-15) break;
    }
    return t;
}

Complex JordanCurve::point(double s) const {
    return interp_->eval(param_of_arclength(s), 0);
}

Complex JordanCurve::tangent(double s) const {
    Complex v = interp_->eval(param_of_arclength(s), 1);
    return v / std::abs(v);
}

Complex JordanCurve::inner_normal(double s) const {
    // Counterclockwise orientation: the interior is to the left of the
    // tangent, i.e. rotate the tangent by +90 degrees.
    return Complex(0, 1) * tangent(s);
}

double JordanCurve::curvature(double s) const {
    double t = param_of_arclength(s);
    Complex v = interp_->eval(t, 1);
    Complex a = interp_->eval(t, 2);
    double speed = std::abs(v);
    return cross(v, a) / (speed * speed * speed);
}

CurvePoint JordanCurve::at(double s) const {
    double t = param_of_arclength(s);
    Complex v = interp_->eval(t, 1);
    Complex acc = interp_->eval(t, 2);
    double speed = std::abs(v);
    CurvePoint cp;
    cp.position = interp_->eval(t, 0);
    cp.arclength = wrap_periodic(s, length_);
    cp.tangent = v / speed;
    cp.inner_normal = Complex(0, 1) * cp.tangent;
    cp.curvature = cross(v, acc) / (speed * speed * speed);
    return cp;
}

double JordanCurve::max_curvature(int n_samples) const {
    double best = 0;
    for (int i = 0; i < n_samples; ++i) {
        double s = i * length_ / n_samples;
        best = std::max(best, std::fabs(curvature(s)));
    }
    return best;
}

bool JordanCurve::contains(Complex z) const {
    // Ray-crossing test against the dense polygon.
    bool inside = false;
    const auto& poly = dense_polygon_;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Complex& a = poly[i];
        const Complex& b = poly[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            double x_cross = a.real() + (z.imag() - a.imag()) *
                                            (b.real() - a.real()) /
                                            (b.imag() - a.imag());
            if (z.real() < x_cross) inside = !inside;
        }
    }
    return inside;
}

void JordanCurve::dense_samples(int n, std::vector<double>& s_out,
                                std::vector<Complex>& p_out) const {
    s_out.resize(n);
    p_out.resize(n);
    const double ds = length_ / n;
    for (int i = 0; i < n; ++i) {
        double s = i * ds;
        s_out[i] = s;
        p_out[i] = interp_->eval(param_of_arclength(s), 0);
    }
}

JordanCurve build_curve(std::span<const Complex> points, CurveKind kind) {
    return JordanCurve::build(points, kind);
}

double curvature_at(const JordanCurve& curve, double s) { return curve.curvature(s); }

double kappa0(const JordanCurve& curve, int n_samples) {
    return curve.max_curvature(n_samples);
}

JordanCurve load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open curve file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    std::vector<Complex> pts;
    CurveKind kind = CurveKind::TrigPoly;
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json doc = nlohmann::json::parse(text);
        for (const auto& xy : doc.at("points")) {
            pts.emplace_back(xy.at(0).get<double>(), xy.at(1).get<double>());
        }
        std::string k = doc.value("kind", "trig_poly");
        if (k == "periodic_spline") kind = CurveKind::PeriodicSpline;
        else if (k != "trig_poly")
            throw Error(ErrorCode::ConfigError, "unknown curve kind " + k);
    } else {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::istringstream ls(line);
            double x, y;
            if (ls >> x >> y) pts.emplace_back(x, y);
        }
    }
    return JordanCurve::build(pts, kind);
}

}  // namespace qcharmlab
