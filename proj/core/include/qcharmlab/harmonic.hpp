// Harmonic extension of boundary correspondences: w = g + conj(h) stored as
// a two-sided coefficient sequence, with exact term-wise derivatives. The
// Poisson integral form is kept in test code as the independent oracle.

#ifndef QCHARMLAB_HARMONIC_HPP
#define QCHARMLAB_HARMONIC_HPP

#include <optional>
#include <vector>

#include "qcharmlab/curve.hpp"
#include "qcharmlab/types.hpp"

namespace qcharmlab {

// Poisson kernel P(r, x) = (1 - r^2) / (2 pi (1 - 2 r cos x + r^2)).
// Throws InvalidRadius for r >= 1.
double poisson_kernel(double r, double x);

// Monotone phase map theta -> s(theta), degree 1, orientation preserving.
struct PhaseMap {
    enum class Kind {
        Uniform,           // s = L (theta + offset) / 2 pi
        ParamUniform,      // s = arclength at construction parameter theta
        PerturbedUniform,  // s = L (theta + amplitude sin(mode theta + phase)) / 2 pi
        Tabulated,         // periodic cubic interpolation of (theta_j, s_j)
    };

    Kind kind{Kind::Uniform};
    double offset{0};     // Uniform
    double amplitude{0};  // PerturbedUniform; requires |amplitude * mode| < 1
    int mode{1};
    double phase{0};
    std::vector<double> table;  // Tabulated: s_j at theta_j = 2 pi j / table.size()

    static PhaseMap uniform(double offset = 0);
    static PhaseMap param_uniform();
    static PhaseMap perturbed_uniform(double amplitude, int mode, double phase = 0);
    static PhaseMap tabulated(std::vector<double> s_values);
};

struct BoundaryCorrespondence {
    const JordanCurve* curve{nullptr};
    PhaseMap phase;
    int n{0};
    std::vector<Complex> samples;  // F(e^{i theta_j}), theta_j = 2 pi j / n

    // Samples the curve at s(theta_j). Throws NotHomeomorphism if the phase
    // map is not strictly increasing of degree 1.
    static BoundaryCorrespondence make(const JordanCurve& curve,
                                       const PhaseMap& phase, int n);

    double s_of_theta(double theta) const;
};

struct GradientSample {
    Complex z;
    Complex wz;
    Complex wzbar;

    double grad_norm() const { return std::abs(wz) + std::abs(wzbar); }
    double l_norm() const { return std::fabs(std::abs(wz) - std::abs(wzbar)); }
    double jacobian() const { return std::norm(wz) - std::norm(wzbar); }

    // Real Jacobian matrix [[u_x, u_y], [v_x, v_y]].
    Mat2 matrix() const;
};

class HarmonicMap {
  public:
    // Discrete Fourier analysis of n boundary samples (n a power of two,
    // n >= 64 when coming from poisson_extend). Coefficients below
    // 1e-13 * max are dropped.
    static HarmonicMap from_boundary_samples(const std::vector<Complex>& samples);

    // Direct construction: pos[k] multiplies z^k (k >= 0), neg[k] multiplies
    // conj(z)^{k+1}.
    static HarmonicMap from_coefficients(std::vector<Complex> pos,
                                         std::vector<Complex> neg);

    Complex eval(Complex z) const;
    GradientSample gradient(Complex z) const;

    // d w / d r at e^{i theta}: sum |n| c_n e^{i n theta}. Throws
    // BoundaryDivergence if the coefficient tail is not summable enough.
    Complex radial_derivative(double theta) const;

    Complex coefficient(int k) const;  // c_k, zero outside stored range
    int max_order() const;
    Complex base_value() const { return coefficient(0); }  // w(0)

    bool alias_warning() const { return alias_warning_; }
    double alias_ratio() const { return alias_ratio_; }

    // Throws BoundaryDivergence unless the high-order tail of |n c_n| is
    // below 1e-8 (absolute, after trimming).
    void require_boundary_differentiable() const;

  private:
    HarmonicMap() = default;
    std::vector<Complex> pos_;  // c_0, c_1, ...
    std::vector<Complex> neg_;  // c_{-1}, c_{-2}, ...
    bool alias_warning_{false};
    double alias_ratio_{0};
    int nyquist_order_{0};  // 0 marks an exact finite series
};

// Harmonic extension of the boundary correspondence. The sample count must
// be a power of two >= 64. Sets the alias warning when coefficients near
// the Nyquist order exceed 1e-8 of the peak.
HarmonicMap poisson_extend(const BoundaryCorrespondence& f);

}  // namespace qcharmlab

#endif
