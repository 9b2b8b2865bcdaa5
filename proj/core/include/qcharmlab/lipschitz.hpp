// The boundary derivative bound chain: collar radius rho, the quantitative
// Hopf constant, the boundary co-Lipschitz bound, its interior extension
// through the holomorphic pair (a, b), and empirical bi-Lipschitz sampling.

#ifndef QCHARMLAB_LIPSCHITZ_HPP
#define QCHARMLAB_LIPSCHITZ_HPP

#include <cstdint>

#include "qcharmlab/barrier.hpp"
#include "qcharmlab/distance_field.hpp"
#include "qcharmlab/harmonic.hpp"

namespace qcharmlab {

struct HopfCertificate {
    double rho{0};            // max{|z| : d(w(z)) = 1/(2 kappa0)}
    double M_rho{0};          // max of phi_w on |z| = rho (negative)
    double hopf_constant{0};  // 2 M_rho / (rho^2 (1 - e^{1/rho^2 - 1}))
    double A{0};
    double K{1};
    double kappa0{0};
};

// Largest root of d(w(r e^{i theta})) = 1/(2 kappa0) over rays; scan plus
// bisection, no monotonicity assumed. Throws CollarEscape if some ray never
// reaches the collar depth.
double compute_rho(const HarmonicMap& map, const DistanceField& field,
                   const BarrierSpec& spec, int n_angles = 1024);

// Requires a passed subharmonicity audit. Throws NotSubharmonic if the
// audit failed, SignError if max phi on |z| = rho is nonnegative.
HopfCertificate hopf_bound(const HarmonicMap& map, const DistanceField& field,
                           const BarrierSpec& spec, const BarrierAudit& audit,
                           int n_circle_samples = 2048);

// e^{-K^2} * hopf_constant, checked against |dw/dr| at n boundary angles.
// Throws VerificationFailure with the witness angle if the sampled
// inequality fails.
double boundary_colip(const HarmonicMap& map, const BarrierSpec& spec,
                      const HopfCertificate& cert, int n_angles = 2048);

struct InteriorExtension {
    double ab_max{0};             // max over grid of |a(z)| + |b(z)|
    double theoretical_colip{0};  // C / K
    double min_l_grad{0};         // min over grid of l(grad w)
    Complex ab_argmax;
};

// a = conj(w_zbar)/w_z, b = (C/K)/w_z. Throws LewyViolation if |w_z| ~ 0,
// MaxPrincipleFailure if |a| + |b| exceeds 1 + 1e-8, VerificationFailure if
// l(grad w) dips below C/K - 1e-8 on the grid.
InteriorExtension interior_extension(const HarmonicMap& map, double colip_boundary,
                                     double K, GridSpec grid);

struct EmpiricalBiLip {
    double lip{0};
    double colip{0};
    int n_pairs{0};
    std::uint64_t seed{0};
};

// Difference quotients over seeded random pairs plus structured families
// (radial, tangential, axis-aligned, near-boundary).
EmpiricalBiLip empirical_bilipschitz(const HarmonicMap& map, int n_pairs,
                                     std::uint64_t seed);

struct LipschitzReport {
    double theoretical_colip{0};
    double empirical_lip{0};
    double empirical_colip{0};
    double ab_check{0};
    double boundary_bound{0};
    int n_pairs{0};
    std::uint64_t seed{0};
};

}  // namespace qcharmlab

#endif
