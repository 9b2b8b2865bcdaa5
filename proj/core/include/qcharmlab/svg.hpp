// Write-only SVG plot artifacts.

#ifndef QCHARMLAB_SVG_HPP
#define QCHARMLAB_SVG_HPP

#include <string>

#include "qcharmlab/barrier.hpp"
#include "qcharmlab/curve.hpp"
#include "qcharmlab/harmonic.hpp"

namespace qcharmlab {

// Images of concentric circles and radial rays under the map, drawn over
// the target curve.
void write_circle_image_svg(const std::string& path, const HarmonicMap& map,
                            const JordanCurve& curve);

// Heatmap of the barrier Laplacian over the collar preimage in the z-plane.
// The color scale is documented in a comment at the top of the file.
void write_audit_heatmap_svg(const std::string& path, const BarrierAudit& audit);

}  // namespace qcharmlab

#endif
