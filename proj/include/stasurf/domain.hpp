#pragma once
/** \file
 * \brief Parameter domains of Weierstrass data and the sampling grids laid
 *        over them.
 */

#include "stasurf/cplane.hpp"

#include <string>
#include <vector>

namespace stasurf {

enum class DomainKind { Plane, Disk, SphereMinusPoints, AnnulusLike };

std::string to_string(DomainKind k);

/// Plane: C. Disk: |z| < radius. SphereMinusPoints: the Riemann sphere minus
/// the punctures (infinity belongs to the domain unless listed).
/// AnnulusLike: C minus the (finite) punctures.
struct Domain {
    DomainKind kind = DomainKind::Plane;
    double radius = 1.0;
    std::vector<ExtendedComplex> punctures;

    static Domain plane() { return {}; }
    static Domain disk(double r);
    static Domain sphere_minus(std::vector<ExtendedComplex> pts);
    static Domain plane_minus(std::vector<cplx> pts);

    /// Throws std::invalid_argument for coincident punctures (chordal <= 1e-9)
    /// or a non-positive disk radius.
    void validate() const;

    /// Finite z lies in the domain, keeping chordal distance > clearance from
    /// every puncture.
    bool contains(cplx z, double clearance = 0.0) const;
    bool contains_infinity() const;
    bool simply_connected() const;
};

/// Rectangle [u0, u1] x [v0, v1] with nu x nv nodes, or a polar patch
/// center + r e^{i t}, r in [r0, r1] (nr nodes), t in [t0, t1] (nt nodes).
/// Nodes run row-major: the outer index is v (or r), the inner u (or t).
struct Grid {
    enum class Kind { Rectangle, Polar } kind = Kind::Rectangle;
    double a0 = -1.0, a1 = 1.0; ///< u range, or t range for polar grids
    double b0 = -1.0, b1 = 1.0; ///< v range, or r range for polar grids
    int na = 0, nb = 0;         ///< nodes along the inner / outer index
    cplx center{};

    static Grid rectangle(double u0, double u1, double v0, double v1, int nu, int nv);
    static Grid polar(cplx center, double r0, double r1, int nr, double t0, double t1, int nt);

    int size() const { return na * nb; }
    bool empty() const { return size() == 0; }
    /// Node (i, j): outer index i < nb, inner index j < na.
    cplx node(int i, int j) const;
    cplx node(int k) const { return node(k / na, k % na); }
};

} // namespace stasurf
