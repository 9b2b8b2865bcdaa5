#include <doctest.h>

#include <limits>

#include "helpers.hpp"
#include "qcharmlab/distance_field.hpp"
#include "qcharmlab/errors.hpp"

using namespace qcharmlab;

namespace {

// Brute-force distance oracle over dense samples of the exact ellipse.
struct BruteFoot {
    double d;
    Complex p;
};

BruteFoot brute_force_ellipse(double a, double b, Complex z, int n = 1000000) {
    BruteFoot best{std::numeric_limits<double>::infinity(), {}};
    for (int i = 0; i < n; ++i) {
        double t = kTwoPi * i / n;
        Complex p(a * std::cos(t), b * std::sin(t));
        double d = std::abs(p - z);
        if (d < best.d) best = {d, p};
    }
    return best;
}

}  // namespace

TEST_CASE("disk distance basics") {
    auto circle = qctest::unit_circle();
    DistanceField field(circle);

    auto fr = field.query(Complex(0.3, 0));
    CHECK(std::fabs(fr.distance - 0.7) < 1e-9);
    CHECK(std::abs(fr.foot.position - Complex(1, 0)) < 1e-9);

    CHECK_THROWS_WITH_AS(field.query(Complex(0, 0)),
                         doctest::Contains("AmbiguousFoot"), Error);
    CHECK_THROWS_WITH_AS(field.query(Complex(1.5, 0)),
                         doctest::Contains("OutsideDomain"), Error);
}

TEST_CASE("disk gradient is the inner normal") {
    DistanceField field(qctest::unit_circle());
    CHECK(std::abs(field.grad(Complex(0.3, 0)) - Complex(-1, 0)) < 1e-9);
    CHECK(std::abs(field.grad(Complex(0, 0.5)) - Complex(0, -1)) < 1e-9);
    CHECK(std::fabs(std::abs(field.grad(Complex(0.2, -0.4))) - 1.0) < 1e-8);
}

TEST_CASE("ellipse distance matches brute-force oracle") {
    double a = 4.0 / 3.0, b = 2.0 / 3.0;
    DistanceField field(qctest::ellipse(a, b));
    for (Complex z : {Complex(1.0, 0), Complex(0.4, 0.3), Complex(-0.8, -0.2)}) {
        auto fr = field.query(z);
        auto oracle = brute_force_ellipse(a, b, z);
        CHECK(std::fabs(fr.distance - oracle.d) < 1e-6);
        // (1, 0) is the center of the osculating circle at (a, 0): the
        // squared distance is quartically flat there, so the foot location
        // itself is conditioning-limited for both methods.
        double foot_tol = (z == Complex(1.0, 0)) ? 1e-3 : 1e-5;
        CHECK(std::abs(fr.foot.position - oracle.p) < foot_tol);
    }
}

TEST_CASE("ellipse gradient matches finite differences") {
    DistanceField field(qctest::ellipse(4.0 / 3.0, 2.0 / 3.0));
    const double h = 1e-6;
    for (Complex z : {Complex(1.25, 0.0), Complex(0.5, 0.3), Complex(-0.2, 0.5)}) {
        Complex g = field.grad(z);
        double gx = (field.query(z + h).distance - field.query(z - h).distance) /
                    (2 * h);
        double gy = (field.query(z + Complex(0, h)).distance -
                     field.query(z - Complex(0, h)).distance) /
                    (2 * h);
        CHECK(std::abs(g - Complex(gx, gy)) < 1e-5);
        CHECK(std::fabs(std::abs(g) - 1.0) < 1e-8);
        // Eikonal property for the finite-difference gradient itself.
        CHECK(std::fabs(std::hypot(gx, gy) - 1.0) < 1e-4);
    }
}

TEST_CASE("disk Hessian eigenvalue is -1/r") {
    DistanceField field(qctest::unit_circle());
    for (double r : {0.5, 0.7, 0.9}) {
        auto frame = field.hessian_frame(Complex(r, 0));
        CHECK(std::fabs(frame.eigenvalue + 1.0 / r) < 1e-6);
    }
    auto frame = field.hessian_frame(Complex(0.5, 0));
    CHECK(std::fabs(frame.eigenvalue + 2.0) < 1e-8);
    // Reconstructed Hessian for z = 0.5: d = 1 - |z| has Hessian
    // diag(0, -1/|z|) there (curvature only in the tangential direction).
    Mat2 H = frame.reconstruct();
    CHECK(std::fabs(H.a - 0.0) < 1e-8);
    CHECK(std::fabs(H.b - 0.0) < 1e-8);
    CHECK(std::fabs(H.d + 2.0) < 1e-8);
}

TEST_CASE("ellipse Hessian closed form at (1.2, 0)") {
    DistanceField field(qctest::ellipse(4.0 / 3.0, 2.0 / 3.0));
    auto frame = field.hessian_frame(Complex(1.2, 0));
    CHECK(std::fabs(frame.kappa_foot - 3.0) < 1e-3);
    CHECK(std::fabs(frame.distance - 2.0 / 15.0) < 1e-6);
    CHECK(std::fabs(frame.eigenvalue + 5.0) < 2e-3);
}

TEST_CASE("Hessian reconstruction matches finite differences") {
    const double h = 1e-4;
    auto fd_hessian = [&](const DistanceField& field, Complex z) {
        auto d = [&](Complex p) { return field.query(p).distance; };
        double dxx = (d(z + h) - 2 * d(z) + d(z - h)) / (h * h);
        double dyy = (d(z + Complex(0, h)) - 2 * d(z) + d(z - Complex(0, h))) /
                     (h * h);
        double dxy = (d(z + Complex(h, h)) - d(z + Complex(h, -h)) -
                      d(z + Complex(-h, h)) + d(z + Complex(-h, -h))) /
                     (4 * h * h);
        return Mat2{dxx, dxy, dxy, dyy};
    };

    DistanceField circle(qctest::unit_circle());
    DistanceField ell(qctest::ellipse(4.0 / 3.0, 2.0 / 3.0));
    struct Probe {
        const DistanceField* f;
        Complex z;
    };
    for (const Probe& p : {Probe{&circle, {0.6, 0.2}}, Probe{&circle, {-0.3, 0.6}},
                           Probe{&ell, {1.1, 0.1}}, Probe{&ell, {0.0, 0.5}}}) {
        Mat2 H = p.f->hessian_frame(p.z).reconstruct();
        Mat2 F = fd_hessian(*p.f, p.z);
        CHECK(std::fabs(H.a - F.a) < 5e-4);
        CHECK(std::fabs(H.b - F.b) < 5e-4);
        CHECK(std::fabs(H.d - F.d) < 5e-4);
    }
}

TEST_CASE("reach and curvature relation") {
    for (const JordanCurve& curve :
         {qctest::unit_circle(), qctest::ellipse(4.0 / 3.0, 2.0 / 3.0),
          JordanCurve::build(qctest::perturbed_circle_points(64, 0.08, 3),
                             CurveKind::TrigPoly)}) {
        DistanceField field(curve);
        CHECK(field.reach() * field.kappa0() <= 1.0 + 1e-3);
        CHECK(field.collar_depth() * field.kappa0() == doctest::Approx(0.5));
        // Unique feet inside the collar: sampled interior points resolve.
        for (int i = 0; i < 32; ++i) {
            double s = curve.length() * i / 32;
            auto cp = curve.at(s);
            Complex z = cp.position + 0.5 * field.collar_depth() * cp.inner_normal;
            auto fr = field.query(z);
            CHECK(circular_distance(fr.foot.arclength, s, curve.length()) < 1e-5);
        }
    }
}
