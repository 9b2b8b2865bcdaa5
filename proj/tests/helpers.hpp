// Shared fixtures for the test binaries.

#ifndef QCHARMLAB_TESTS_HELPERS_HPP
#define QCHARMLAB_TESTS_HELPERS_HPP

#include <cmath>
#include <vector>

#include "qcharmlab/curve.hpp"
#include "qcharmlab/harmonic.hpp"
#include "qcharmlab/types.hpp"

namespace qctest {

using qcharmlab::Complex;
using qcharmlab::kTwoPi;

inline std::vector<Complex> circle_points(int n, double radius = 1.0) {
    std::vector<Complex> pts(n);
    for (int j = 0; j < n; ++j) pts[j] = std::polar(radius, kTwoPi * j / n);
    return pts;
}

inline std::vector<Complex> ellipse_points(int n, double a, double b) {
    std::vector<Complex> pts(n);
    for (int j = 0; j < n; ++j) {
        double t = kTwoPi * j / n;
        pts[j] = Complex(a * std::cos(t), b * std::sin(t));
    }
    return pts;
}

inline std::vector<Complex> perturbed_circle_points(int n, double eps, int mode) {
    std::vector<Complex> pts(n);
    for (int j = 0; j < n; ++j) {
        double t = kTwoPi * j / n;
        pts[j] = std::polar(1.0 + eps * std::cos(mode * t), t);
    }
    return pts;
}

inline qcharmlab::JordanCurve unit_circle(int n = 64) {
    return qcharmlab::JordanCurve::build(circle_points(n),
                                         qcharmlab::CurveKind::TrigPoly);
}

inline qcharmlab::JordanCurve ellipse(double a, double b, int n = 64) {
    return qcharmlab::JordanCurve::build(ellipse_points(n, a, b),
                                         qcharmlab::CurveKind::TrigPoly);
}

// Exact affine map z + k conj(z) as a finite coefficient series.
inline qcharmlab::HarmonicMap affine_map(double k) {
    return qcharmlab::HarmonicMap::from_coefficients({Complex(0), Complex(1)},
                                                     {Complex(k)});
}

// Boundary samples of z + k conj(z) on the unit circle.
inline std::vector<Complex> affine_samples(int n, double k) {
    std::vector<Complex> samples(n);
    for (int j = 0; j < n; ++j) {
        Complex t = std::polar(1.0, kTwoPi * j / n);
        samples[j] = t + k * std::conj(t);
    }
    return samples;
}

}  // namespace qctest

#endif
