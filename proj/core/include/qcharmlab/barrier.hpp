// The composed distance observable chi = -d(w(z)), its gradient sandwich,
// the collar Laplacian identity, the exponential barrier phi_w, and the
// grid subharmonicity audit.

#ifndef QCHARMLAB_BARRIER_HPP
#define QCHARMLAB_BARRIER_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qcharmlab/distance_field.hpp"
#include "qcharmlab/harmonic.hpp"
#include "qcharmlab/types.hpp"

namespace qcharmlab {

struct BarrierSpec {
    double A{0};             // barrier exponent, (2 kappa0 + B) K^2
    double B{0};             // PDE constant; 0 for harmonic maps
    double kappa0{0};
    double K{1};             // dilatation bound in use
    double collar_bound{0};  // 1 / (2 kappa0)

    static BarrierSpec make(double kappa0, double K, double B = 0);
};

// chi(z) = -d(w(z)); negative inside, OutsideDomain if w(z) escapes.
double chi(const HarmonicMap& map, const DistanceField& field, Complex z);

struct SandwichSample {
    double grad_chi{0};
    double grad_w{0};
    bool pass{false};  // grad_chi <= grad_w <= K grad_chi, 1e-9 slack
};

SandwichSample gradient_sandwich(const HarmonicMap& map, const DistanceField& field,
                                 Complex z, double K);

// Collar Laplacian of chi: curvature term from the distance Hessian frame
// plus the <grad d, Delta w> term (identically zero for harmonic maps;
// supply laplacian_w for B > 0 inputs).
double laplacian_chi_formula(
    const HarmonicMap& map, const DistanceField& field, Complex z,
    const std::function<Complex(Complex)>* laplacian_w = nullptr);

struct LaplacianChi {
    double formula{0};
    double fd{0};         // central second differences, step h
    double fd_half{0};    // step h/2, Richardson guard
};

LaplacianChi laplacian_chi(const HarmonicMap& map, const DistanceField& field,
                           Complex z, double h = 1e-4);

struct BarrierValue {
    double phi{0};        // -1/A + e^{-A d(w(z))} / A
    double laplacian{0};  // g''(chi) |grad chi|^2 + g'(chi) lap chi
};

BarrierValue barrier(const HarmonicMap& map, const DistanceField& field,
                     const BarrierSpec& spec, Complex z);

struct AuditRow {
    Complex z;
    double chi{0};
    double grad_chi{0};
    double grad_w{0};
    double lap_chi_formula{0};
    double lap_chi_fd{0};  // only when the audit runs with finite differences
    double lap_phi{0};
    bool sandwich_pass{false};
};

struct BarrierAudit {
    std::vector<AuditRow> rows;
    GridSpec grid;
    double min_lap_phi{0};
    double max_abs_lap_phi{0};
    Complex argmin;
    bool pass{false};  // min_lap_phi >= -1e-8 (1 + max |lap phi|)
    bool with_fd{false};
    int sandwich_failures{0};
};

// Evaluates the barrier Laplacian on the grid points that land in the
// collar preimage w^{-1}({d < 1/(2 kappa0)}). Throws EmptyCollar if no
// grid point qualifies.
BarrierAudit audit_subharmonicity(const HarmonicMap& map, const DistanceField& field,
                                  const BarrierSpec& spec, GridSpec grid,
                                  bool with_fd = false);

}  // namespace qcharmlab

#endif
