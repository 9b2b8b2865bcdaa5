// C^{1,1} Jordan curves: periodic interpolation through sample points,
// arc-length parametrization, curvature, and containment tests.
//
// Both interpolant kinds (trigonometric polynomial, periodic cubic spline)
// are C^2, so curvature exists everywhere and the essential-sup quantities
// reduce to dense sampling.

#ifndef QCHARMLAB_CURVE_HPP
#define QCHARMLAB_CURVE_HPP

#include <memory>
#include <span>
#include <vector>

#include "qcharmlab/types.hpp"

namespace qcharmlab {

enum class CurveKind { TrigPoly, PeriodicSpline };

// A point on the curve together with its local frame.
struct CurvePoint {
    Complex position;
    double arclength{0};    // s in [0, L)
    Complex tangent;        // unit, d(position)/ds
    Complex inner_normal;   // unit, points into the bounded component
    double curvature{0};    // signed; +1 for the ccw unit circle
};

class JordanCurve {
  public:
    // Interpolates the points with the chosen periodic interpolant and
    // arc-length reparametrizes. Throws SelfIntersecting if the sample
    // polygon is not simple, DegenerateInput for too few / collinear /
    // duplicated points or a clockwise polygon.
    static JordanCurve build(std::span<const Complex> points, CurveKind kind);

    double length() const { return length_; }
    CurveKind kind() const { return kind_; }
    const std::vector<Complex>& input_points() const { return input_points_; }

    // Construction-parameter interface, t in [0, 2*pi).
    Complex param_point(double t) const;
    Complex param_velocity(double t) const;      // dg/dt
    Complex param_acceleration(double t) const;  // d2g/dt2
    double arclength_of_param(double t) const;   // s(t), s(0) = 0
    double param_of_arclength(double s) const;   // inverse of s(t)

    // Arc-length interface, s in [0, L).
    Complex point(double s) const;
    Complex tangent(double s) const;       // unit by chain rule
    Complex inner_normal(double s) const;  // i * tangent (ccw curves)
    double curvature(double s) const;
    CurvePoint at(double s) const;

    // Max |curvature| over n equispaced arc-length samples.
    double max_curvature(int n_samples = 4096) const;

    // Winding-number containment test against a dense sample polygon.
    bool contains(Complex z) const;

    // Dense equispaced arc-length samples used by distance queries.
    void dense_samples(int n, std::vector<double>& s_out,
                       std::vector<Complex>& p_out) const;

  private:
    JordanCurve() = default;

    struct Interpolant;
    std::shared_ptr<const Interpolant> interp_;

    CurveKind kind_{CurveKind::TrigPoly};
    double length_{0};
    std::vector<Complex> input_points_;

    // Cumulative arc length at n_tab_+1 equispaced t nodes over [0, 2*pi].
    std::vector<double> arclen_table_;
    int n_tab_{0};

    // Polygon for containment tests.
    std::vector<Complex> dense_polygon_;

    double segment_arclength(double t0, double t1) const;
};

// Free-function spelling of the module operations.
JordanCurve build_curve(std::span<const Complex> points, CurveKind kind);
double curvature_at(const JordanCurve& curve, double s);
double kappa0(const JordanCurve& curve, int n_samples = 4096);

// Reads "x y" pairs (one per line, # comments allowed) or a JSON document
// {"points": [[x, y], ...], "kind": "trig_poly" | "periodic_spline"}.
JordanCurve load_curve_file(const std::string& path);

}  // namespace qcharmlab

#endif
