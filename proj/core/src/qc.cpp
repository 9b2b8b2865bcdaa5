#include "qcharmlab/qc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qcharmlab/errors.hpp"

namespace qcharmlab {

namespace {

struct GridSweep {
    double K_max{1};
    double k_max{0};
    Complex worst_point;
};

GridSweep sweep_dilatation(const HarmonicMap& map, GridSpec grid) {
    GridSweep out;
    const auto radii = clustered_radii(grid.n_radial);
    for (double r : radii) {
        for (int j = 0; j < grid.n_angular; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / grid.n_angular);
            const GradientSample g = map.gradient(z);
            const double jac = g.jacobian();
            if (jac <= 0) {
                std::ostringstream msg;
                msg << "J_w = " << jac << " at z = " << z.real() << " + "
                    << z.imag() << "i";
                throw Error(ErrorCode::OrientationFailure, msg.str());
            }
            const double k = std::abs(g.wzbar) / std::abs(g.wz);
            if (k > out.k_max) {
                out.k_max = k;
                out.worst_point = z;
            }
        }
    }
    out.K_max = (1.0 + out.k_max) / (1.0 - out.k_max);
    return out;
}

}  // namespace

QcProfile dilatation_profile(const HarmonicMap& map, GridSpec grid) {
    if (grid.n_radial < 32 || grid.n_angular < 256) {
        throw Error(ErrorCode::ConfigError, "dilatation grid must be >= 32 x 256");
    }
    GridSweep sweep = sweep_dilatation(map, grid);
    GridSpec used = grid;
    bool converged = false;
    for (int round = 0; round < 3; ++round) {
        GridSpec finer = used.doubled();
        GridSweep refined = sweep_dilatation(map, finer);
        double change = std::fabs(refined.K_max - sweep.K_max);
        sweep = refined;
        used = finer;
        if (change < 1e-3) {
            converged = true;
            break;
        }
    }

    QcProfile profile;
    profile.grid = used;
    profile.k_global = sweep.k_max;
    profile.K_global = sweep.K_max;
    profile.worst_point = sweep.worst_point;
    profile.refinement_converged = converged;

    // Boundary restriction: dilatation and Jacobian on |z| = 1.
    const int nb = std::max(1024, grid.n_angular);
    double k_boundary = 0;
    double min_jac = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nb; ++j) {
        const Complex t = std::polar(1.0, kTwoPi * j / nb);
        const GradientSample g = map.gradient(t);
        min_jac = std::min(min_jac, g.jacobian());
        if (std::abs(g.wz) > 0) {
            k_boundary = std::max(k_boundary, std::abs(g.wzbar) / std::abs(g.wz));
        }
    }
    profile.K_boundary = (1.0 + k_boundary) / (1.0 - k_boundary);
    profile.min_boundary_jacobian = min_jac;
    profile.certified = min_jac > 1e-10;
    return profile;
}

QcCheckResult check_qc_inequality(const HarmonicMap& map, double K, GridSpec grid) {
    QcCheckResult result;
    result.pass = true;
    const auto radii = clustered_radii(grid.n_radial);
    for (double r : radii) {
        for (int j = 0; j < grid.n_angular; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / grid.n_angular);
            const GradientSample g = map.gradient(z);
            const double grad2 = g.grad_norm() * g.grad_norm();
            const double jac = g.jacobian();
            const double ratio = jac > 0 ? grad2 / jac
                                         : std::numeric_limits<double>::infinity();
            if (ratio > result.worst_ratio) {
                result.worst_ratio = ratio;
                result.worst_point = z;
            }
            if (grad2 > K * jac + 1e-12) result.pass = false;
        }
    }
    return result;
}

DiffeoCertificate certify_diffeomorphism(const HarmonicMap& map,
                                         int boundary_samples) {
    DiffeoCertificate cert;
    cert.n_samples = boundary_samples;
    cert.min_jacobian = std::numeric_limits<double>::infinity();
    for (int j = 0; j < boundary_samples; ++j) {
        const double theta = kTwoPi * j / boundary_samples;
        const GradientSample g = map.gradient(std::polar(1.0, theta));
        const double jac = g.jacobian();
        if (jac < cert.min_jacobian) {
            cert.min_jacobian = jac;
            cert.argmin_theta = theta;
        }
    }
    cert.certified = cert.min_jacobian > 1e-10;
    return cert;
}

Moebius Moebius::through(Complex z1, Complex z2, Complex z3, Complex w1,
                         Complex w2, Complex w3) {
    // T maps (z1, z2, z3) to (0, 1, inf); the result is S^{-1} T.
    auto standard = [](Complex p1, Complex p2, Complex p3) {
        return Moebius{p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1)};
    };
    Moebius T = standard(z1, z2, z3);
    Moebius S = standard(w1, w2, w3);
    Moebius Sinv{S.d, -S.b, -S.c, S.a};
    return Moebius{Sinv.a * T.a + Sinv.b * T.c, Sinv.a * T.b + Sinv.b * T.d,
                   Sinv.c * T.a + Sinv.d * T.c, Sinv.c * T.b + Sinv.d * T.d};
}

HarmonicMap moebius_normalize(const HarmonicMap& map, const DistanceField& field,
                              int n_samples) {
    const DiffeoCertificate cert = certify_diffeomorphism(map, 512);
    if (!cert.certified) {
        throw Error(ErrorCode::OrientationFailure,
                    "cannot normalize: boundary Jacobian min = " +
                        std::to_string(cert.min_jacobian));
    }
    const JordanCurve& curve = field.curve();
    const double L = curve.length();

    // Lifted boundary phase sigma(theta): arc length of the image point.
    auto sigma = [&](double theta) {
        return field.project(map.eval(std::polar(1.0, theta))).arclength;
    };
    const int coarse = 2048;
    std::vector<double> lift(coarse + 1);
    double prev = sigma(0.0);
    lift[0] = prev;
    for (int j = 1; j <= coarse; ++j) {
        double s = sigma(kTwoPi * j / coarse);
        double step = s - prev;
        if (step < -0.5 * L) step += L;
        lift[j] = lift[j - 1] + step;
        prev = s;
    }

    // Boundary preimages of the trisection points, anchored at s = 0.
    Complex preimages[3];
    for (int k = 0; k < 3; ++k) {
        const double target = lift[0] + wrap_periodic(k * L / 3.0 - lift[0], L);
        int j = 0;
        while (j < coarse && lift[j + 1] < target) ++j;
        double lo = kTwoPi * j / coarse, hi = kTwoPi * (j + 1) / coarse;
        double s_lo = lift[j];
        for (int iter = 0; iter < 60; ++iter) {
            double mid = 0.5 * (lo + hi);
            double s_mid = sigma(mid);
            double delta = s_mid - wrap_periodic(s_lo, L);
            if (delta < -0.5 * L) delta += L;
            if (delta > 0.5 * L) delta -= L;
            double lifted = s_lo + delta;
            if (lifted < target) {
                lo = mid;
                s_lo = lifted;
            } else {
                hi = mid;
            }
            if (hi - lo < 1e-12) break;
        }
        preimages[k] = std::polar(1.0, 0.5 * (lo + hi));
    }

    const Complex omega = std::polar(1.0, kTwoPi / 3.0);
    Moebius m = Moebius::through(Complex(1, 0), omega, std::conj(omega),
                                 preimages[0], preimages[1], preimages[2]);

    std::vector<Complex> samples(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        Complex t = m.apply(std::polar(1.0, kTwoPi * j / n_samples));
        t /= std::abs(t);  // pin to the circle against rounding drift
        samples[j] = map.eval(t);
    }
    return HarmonicMap::from_boundary_samples(samples);
}

}  // namespace qcharmlab
