// Quasiconformality profile, the |grad|^2 <= K J check, diffeomorphism
// certification through boundary Jacobian positivity, and Moebius
// normalization against arc-length trisection of the target curve.

#ifndef QCHARMLAB_QC_HPP
#define QCHARMLAB_QC_HPP

#include "qcharmlab/distance_field.hpp"
#include "qcharmlab/harmonic.hpp"
#include "qcharmlab/types.hpp"

namespace qcharmlab {

struct QcProfile {
    double K_global{1};
    double k_global{0};  // Beltrami magnitude max
    double K_boundary{1};
    double min_boundary_jacobian{0};
    GridSpec grid;
    Complex worst_point;   // where K_global is attained
    bool certified{false};  // min_boundary_jacobian > 1e-10
    bool refinement_converged{false};
};

// Grid max of pointwise dilatation, with grid-doubling until the change in
// K_global drops below 1e-3. Throws OrientationFailure if the Jacobian is
// nonpositive at any grid point.
QcProfile dilatation_profile(const HarmonicMap& map, GridSpec grid);

struct QcCheckResult {
    bool pass{false};
    double worst_ratio{0};  // max of |grad w|^2 / J_w
    Complex worst_point;
};

// Verifies |grad w|^2 <= K J_w + 1e-12 on the grid.
QcCheckResult check_qc_inequality(const HarmonicMap& map, double K, GridSpec grid);

struct DiffeoCertificate {
    bool certified{false};
    double min_jacobian{0};
    double argmin_theta{0};
    int n_samples{0};
};

// Boundary Jacobian positivity at n equispaced angles of S^1.
DiffeoCertificate certify_diffeomorphism(const HarmonicMap& map, int boundary_samples);

// Disk automorphism (az + b) / (conj(b) z + conj(a)), |a|^2 - |b|^2 = 1
// up to scale; stored as a general Moebius transform.
struct Moebius {
    Complex a{1}, b{0}, c{0}, d{1};

    Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
    static Moebius through(Complex z1, Complex z2, Complex z3, Complex w1,
                           Complex w2, Complex w3);
};

// Precomposes the map with the disk automorphism taking the cube roots of
// unity to the boundary preimages of the arc-length trisection points of
// the target curve (anchored at the curve's arc-length origin), then
// re-expands the coefficients from n_samples boundary values.
HarmonicMap moebius_normalize(const HarmonicMap& map, const DistanceField& field,
                              int n_samples = 1024);

}  // namespace qcharmlab

#endif
