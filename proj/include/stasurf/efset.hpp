#pragma once
/** \file
 * \brief The anti-holomorphic fixed-point set E_f = { z : f(z) = conj(z) } of a
 *        rational function, and the admissibility bounds it imposes on the
 *        relation psi2 = f(psi1).
 */

#include "stasurf/rational.hpp"
#include "stasurf/verdict.hpp"

#include <array>
#include <optional>
#include <vector>

namespace stasurf {

inline constexpr double kEfTolerance = 1e-8;
inline constexpr double kEfDedupe = 1e-7;

enum class EfKind { FinitePoints, Curve, Empty };

std::string to_string(EfKind k);

/// Circle or line solving f(z) = conj(z) when conj(f) o f is the identity.
/// Geometry is re-fitted through three solved sample points.
struct EfLocus {
    bool is_line = false;
    cplx center{};       ///< circle centre, or a point of the line
    double radius = 0.0; ///< circle radius (0 for a line)
    cplx direction{};    ///< unit direction of the line (0 for a circle)
    std::array<ExtendedComplex, 3> samples{};
    double max_sample_residual = 0.0;
};

struct EfSet {
    EfKind kind = EfKind::Empty;
    /// Finite points sorted by (re, im), then infinity if present.
    std::vector<ExtendedComplex> points;
    ExtendedCount cardinality = ExtendedCount::finite(0);
    std::optional<EfLocus> locus;
    /// Largest chordal residual among accepted points (0 if none).
    double worst_accepted = 0.0;
    /// Smallest chordal residual among rejected candidates (1 if none).
    double best_rejected = 1.0;
    /// Number of fixed points of conj(f) o f examined.
    int candidates = 0;
};

/// chordal(f(z), conj(z)).
double ef_residual(const RationalFunction& f, const ExtendedComplex& z);

/// Solve f(z) = conj(z) on the sphere. Candidates are the fixed points of
/// conj_coeffs(f) o f; those within chordal `tol` of the equation are kept.
EfSet ef_solve(const RationalFunction& f, double tol = kEfTolerance);

struct BoundCheck {
    Verdict verdict = Verdict::Inapplicable;
    std::string detail;
};

struct AdmissibilityReport {
    int m = 0;
    ExtendedCount ef_count = ExtendedCount::finite(0);
    BoundCheck degree_bound;   ///< m <= 5
    BoundCheck ef_bounds;      ///< m - 1 <= |E_f| <= (m + 3) / 2, for m >= 2
    BoundCheck budget;         ///< the |E_f| omitted values fit the budget
    /// m - |E_f| + 3; empty when E_f is infinite.
    std::optional<int> exceptional_budget;
};

AdmissibilityReport admissibility_check(int m, ExtendedCount ef_count);

} // namespace stasurf
