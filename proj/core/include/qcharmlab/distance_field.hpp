// Distance/foot-point/normal/Hessian queries for the interior of a
// JordanCurve. Foot points come from a coarse scan over precomputed
// arc-length samples followed by Newton refinement of |g(s) - z|^2.

#ifndef QCHARMLAB_DISTANCE_FIELD_HPP
#define QCHARMLAB_DISTANCE_FIELD_HPP

#include <vector>

#include "qcharmlab/curve.hpp"
#include "qcharmlab/types.hpp"

namespace qcharmlab {

struct FootResult {
    double distance{0};
    CurvePoint foot;
};

// Curvature, nonzero Hessian eigenvalue, and the rotation O (as an angle)
// whose rows are the tangent and the inner normal at the foot point, so
// that O maps the tangent to e1 and the inner normal to e2. The full
// Hessian of the distance function is O^T diag(eigenvalue, 0) O.
struct HessianFrame {
    double kappa_foot{0};
    double eigenvalue{0};      // -kappa / (1 - kappa d)
    double rotation_angle{0};  // O = Mat2::rotation(rotation_angle)
    double distance{0};

    Mat2 rotation() const { return Mat2::rotation(rotation_angle); }
    Mat2 reconstruct() const;
};

class DistanceField {
  public:
    // coarse_samples: number of arc-length candidates in the global scan.
    // The curve is held by value (it is a cheap shared-interpolant handle),
    // so the field never dangles.
    explicit DistanceField(const JordanCurve& curve, int coarse_samples = 1024);

    const JordanCurve& curve() const { return curve_; }
    double kappa0() const { return kappa0_; }
    double reach() const { return reach_; }
    double collar_depth() const { return 0.5 / kappa0_; }  // d < 1/(2 kappa0)

    // Throws OutsideDomain if z is not strictly interior, AmbiguousFoot if
    // two separated minimizers tie within 1e-9.
    FootResult query(Complex z) const;

    // Inner normal at the foot point (= gradient of the distance function).
    Complex grad(Complex z) const;

    // Throws SingularCollar if 1 - kappa*d <= 0 at the foot.
    HessianFrame hessian_frame(Complex z) const;

    bool is_inside(Complex z) const;

    // Nearest-point projection without the interior requirement; used for
    // boundary values that sit on the curve itself. No ambiguity check.
    CurvePoint project(Complex z) const;

    // Refine a foot point from a known nearby arc length (no global scan).
    // Safe only for hints within the reach of the previous answer.
    FootResult query_with_hint(Complex z, double s_hint) const;

  private:
    JordanCurve curve_;
    std::vector<double> s_samples_;
    std::vector<double> t_samples_;
    std::vector<Complex> p_samples_;
    double kappa0_{0};
    double reach_{0};

    // Newton/bisection polish of the squared-distance minimizer, started
    // from construction parameter t_start. Returns the refined parameter.
    double refine_foot(Complex z, double t_start) const;
    void estimate_reach();
};

}  // namespace qcharmlab

#endif
