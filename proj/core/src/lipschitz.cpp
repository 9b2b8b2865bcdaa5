#include "qcharmlab/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qcharmlab/errors.hpp"
#include "qcharmlab/parallel.hpp"

namespace qcharmlab {

namespace {

// Distance of w(z) to the curve without the ambiguity/interior guards;
// root scans near the disk center hit equidistant points legitimately.
double image_depth(const HarmonicMap& map, const DistanceField& field, Complex z) {
    const Complex w = map.eval(z);
    return std::abs(w - field.project(w).position);
}

}  // namespace

double compute_rho(const HarmonicMap& map, const DistanceField& field,
                   const BarrierSpec& spec, int n_angles) {
    const double depth = spec.collar_bound;
    const double r_max = 1.0 - 1e-9;
    const int n_scan = 128;

    std::vector<double> roots(n_angles, -1.0);
    parallel_for(n_angles, [&](std::size_t a) {
        const double theta = kTwoPi * static_cast<double>(a) / n_angles;
        const Complex dir = std::polar(1.0, theta);
        double prev_r = 0.0;
        double prev_d = image_depth(map, field, Complex(0, 0) + 1e-12 * dir);
        double lo = -1, hi = -1;
        for (int i = 1; i <= n_scan; ++i) {
            double r = r_max * i / n_scan;
            double d = image_depth(map, field, r * dir);
            if ((prev_d - depth) * (d - depth) <= 0 && prev_d != d) {
                lo = prev_r;
                hi = r;  // keep the last crossing
            }
            prev_r = r;
            prev_d = d;
        }
        if (lo < 0) return;
        double f_lo = image_depth(map, field, lo * dir) - depth;
        for (int iter = 0; iter < 50; ++iter) {
            double mid = 0.5 * (lo + hi);
            double f_mid = image_depth(map, field, mid * dir) - depth;
            if ((f_lo <= 0) == (f_mid <= 0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
            if (hi - lo < 1e-8) break;
        }
        roots[a] = 0.5 * (lo + hi);
    });

    double rho = -1;
    for (int a = 0; a < n_angles; ++a) {
        if (roots[a] < 0) {
            std::ostringstream msg;
            msg << "ray at angle " << kTwoPi * a / n_angles
                << " never reaches collar depth " << depth;
            throw Error(ErrorCode::CollarEscape, msg.str());
        }
        rho = std::max(rho, roots[a]);
    }
    return rho;
}

HopfCertificate hopf_bound(const HarmonicMap& map, const DistanceField& field,
                           const BarrierSpec& spec, const BarrierAudit& audit,
                           int n_circle_samples) {
    if (!audit.pass) {
        throw Error(ErrorCode::NotSubharmonic,
                    "subharmonicity audit failed; Hopf bound unavailable");
    }
    HopfCertificate cert;
    cert.A = spec.A;
    cert.K = spec.K;
    cert.kappa0 = spec.kappa0;
    cert.rho = compute_rho(map, field, spec);

    double m_rho = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_circle_samples; ++j) {
        const Complex z = std::polar(cert.rho, kTwoPi * j / n_circle_samples);
        const double d = field.query(map.eval(z)).distance;
        m_rho = std::max(m_rho, (-1.0 + std::exp(-spec.A * d)) / spec.A);
    }
    cert.M_rho = m_rho;
    if (!(m_rho < 0)) {
        throw Error(ErrorCode::SignError,
                    "max of phi on |z| = rho is " + std::to_string(m_rho));
    }
    const double denom =
        cert.rho * cert.rho * (1.0 - std::exp(1.0 / (cert.rho * cert.rho) - 1.0));
    cert.hopf_constant = 2.0 * cert.M_rho / denom;
    return cert;
}

double boundary_colip(const HarmonicMap& map, const BarrierSpec& spec,
                      const HopfCertificate& cert, int n_angles) {
    const double bound = std::exp(-spec.K * spec.K) * cert.hopf_constant;
    for (int j = 0; j < n_angles; ++j) {
        const double theta = kTwoPi * j / n_angles;
        const double dr = std::abs(map.radial_derivative(theta));
        if (dr < bound - 1e-12) {
            std::ostringstream msg;
            msg << "|dw/dr| = " << dr << " < bound " << bound << " at theta = "
                << theta;
            throw Error(ErrorCode::VerificationFailure, msg.str());
        }
    }
    return bound;
}

InteriorExtension interior_extension(const HarmonicMap& map, double colip_boundary,
                                     double K, GridSpec grid) {
    InteriorExtension out;
    out.theoretical_colip = colip_boundary / K;
    out.min_l_grad = std::numeric_limits<double>::infinity();
    const auto radii = clustered_radii(grid.n_radial, 1.0 - 1e-6);
    for (double r : radii) {
        for (int j = 0; j < grid.n_angular; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / grid.n_angular);
            const GradientSample g = map.gradient(z);
            const double wz_mag = std::abs(g.wz);
            if (wz_mag <= 1e-12) {
                throw Error(ErrorCode::LewyViolation,
                            "|w_z| vanishes at an interior grid point");
            }
            const double ab =
                std::abs(g.wzbar) / wz_mag + out.theoretical_colip / wz_mag;
            if (ab > out.ab_max) {
                out.ab_max = ab;
                out.ab_argmax = z;
            }
            out.min_l_grad = std::min(out.min_l_grad, g.l_norm());
        }
    }
    if (out.ab_max > 1.0 + 1e-8) {
        std::ostringstream msg;
        msg << "|a| + |b| = " << out.ab_max << " at z = " << out.ab_argmax.real()
            << " + " << out.ab_argmax.imag() << "i";
        throw Error(ErrorCode::MaxPrincipleFailure, msg.str());
    }
    if (out.min_l_grad < out.theoretical_colip - 1e-8) {
        throw Error(ErrorCode::VerificationFailure,
                    "l(grad w) = " + std::to_string(out.min_l_grad) +
                        " below the certified bound " +
                        std::to_string(out.theoretical_colip));
    }
    return out;
}

EmpiricalBiLip empirical_bilipschitz(const HarmonicMap& map, int n_pairs,
                                     std::uint64_t seed) {
    EmpiricalBiLip out;
    out.n_pairs = n_pairs;
    out.seed = seed;
    double lip = 0;
    double colip = std::numeric_limits<double>::infinity();
    auto feed = [&](Complex z1, Complex z2) {
        const double dz = std::abs(z1 - z2);
        if (dz < 1e-12) return;
        const double q = std::abs(map.eval(z1) - map.eval(z2)) / dz;
        lip = std::max(lip, q);
        colip = std::min(colip, q);
    };

    Rng rng(seed);
    for (int i = 0; i < n_pairs; ++i) {
        feed(rng.next_in_disk(1.0 - 1e-9), rng.next_in_disk(1.0 - 1e-9));
    }

    // Structured families: extremal directions of near-affine maps are
    // missed by pure random pairs.
    const double delta = 1e-5;
    const double radii[] = {0.1, 0.3, 0.5, 0.7, 0.9, 0.999, 1.0 - 1e-4};
    const int n_dirs = 512;
    for (double r : radii) {
        for (int j = 0; j < n_dirs; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / n_dirs);
            feed(z, z + delta);                       // axis-aligned
            feed(z, z + Complex(0, delta));           // axis-aligned
            feed(z, z * std::polar(1.0, delta));      // tangential
            feed(z, z + delta * z / std::abs(z));     // radial
        }
    }
    out.lip = lip;
    out.colip = colip;
    return out;
}

}  // namespace qcharmlab
