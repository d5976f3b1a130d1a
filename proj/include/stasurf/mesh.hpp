#pragma once
/** \file
 * \brief Sampling the immersion on a grid, finite-difference audits of the
 *        sampled frame, and CSV / OBJ export.
 */

#include "stasurf/weierstrass.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stasurf {

struct SkippedNode {
    int index;
    cplx z;
    std::string reason;
};

/// One slot per grid node (row-major); empty slots are listed in `skipped`.
/// All positions share one base point, the first usable node.
struct Mesh {
    Grid grid;
    std::vector<std::optional<ImmersionSample>> nodes;
    std::vector<SkippedNode> skipped;

    std::vector<ImmersionSample> samples() const;
};

/// Rows are walked node to node with straight segments, rerouted around a
/// blocking pole by a small detour when needed. Row anchors are chained
/// serially; rows then run independently, so the output does not depend on
/// the schedule.
Mesh sample_mesh(const WeierstrassData& data, const Grid& grid, Exec exec = Exec::Parallel);

/// Central-difference step used by the frame audit.
inline double fd_step(cplx z) { return 1e-4 * (1.0 + std::abs(z)); }

struct FrameResiduals {
    double lambda2 = 0.0;    ///< closed form
    double lambda2_fd = 0.0; ///< (<x_u, x_u> + <x_v, x_v>) / 4
    double metric_rel = 0.0;
    double conformal_rel = 0.0; ///< max(|E - G|, |F|) / lambda^2
    /// max_k |Laplacian x_k| over the local second-derivative scale
    /// max_k |grad x_k| / (1 + |z|).
    double harmonic_rel = 0.0;
};

/// Throws DomainError when the stencil meets a pole or leaves the domain.
FrameResiduals frame_residuals(const WeierstrassData& data, cplx z);

struct MeshAudit {
    int points = 0;
    double max_null = 0.0;      ///< |sum phi^2| / max|phi|^2
    double min_spacelike = 0.0; ///< smallest |phi1|^2 + |phi2|^2 + |phi3|^2 - |phi4|^2
    double max_metric_rel = 0.0;
    double max_conformal_rel = 0.0;
    double max_harmonic_rel = 0.0;
    double max_gauss_chordal = 0.0;
    double max_r4_null = 0.0; ///< |sum phi*^2| / max|phi|^2
    std::array<double, 4> x_spread{};
    /// Nodes whose stencil could not be evaluated.
    int fd_skipped = 0;
};

/// Reductions run serially in node order after the per-node work.
MeshAudit audit_mesh(const WeierstrassData& data, const Mesh& mesh, Exec exec = Exec::Parallel);

/// u,v,x1,x2,x3,x4,lambda2 per sampled node.
void write_csv(std::ostream& os, const Mesh& mesh);
/// Vertices (x1, x2, x3) with x4 as a comment line, quads for complete cells.
void write_obj(std::ostream& os, const Mesh& mesh);

} // namespace stasurf
