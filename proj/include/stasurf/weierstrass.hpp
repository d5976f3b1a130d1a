#pragma once
/** \file
 * \brief Weierstrass data (psi1, psi2, dh) of a space-like stationary surface
 *        in R^{3,1} and the immersion they generate,
 *
 *            x = 2 Re int (psi1 + psi2, -i (psi1 - psi2), 1 - psi1 psi2, 1 + psi1 psi2) dh,
 *
 *        with its regularity and period conditions, induced metric, Gauss
 *        map recovery and the Lorentz (Moebius) action on the data.
 */

#include "stasurf/contour.hpp"
#include "stasurf/domain.hpp"
#include "stasurf/exec.hpp"
#include "stasurf/verdict.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stasurf {

using Vec4 = std::array<double, 4>;
using PhiForms = std::array<cplx, 4>;

/// u1 v1 + u2 v2 + u3 v3 - u4 v4
inline double minkowski(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

/// phi1^2 + phi2^2 + phi3^2 - phi4^2 (zero for every valid datum).
cplx null_residual(const PhiForms& phi);
/// |phi1|^2 + |phi2|^2 + |phi3|^2 - |phi4|^2 (positive at regular points).
double spacelike_norm(const PhiForms& phi);

/// Weierstrass data on a domain. psi2 is either given directly or through a
/// relation psi2 = f o psi1, in which case the E_f machinery applies. For
/// all-rational data the four phi coefficients are kept as exact rational
/// functions, so removable points (a pole of psi meeting a zero of dh)
/// evaluate cleanly.
class WeierstrassData {
public:
    static WeierstrassData direct(Meromorphic psi1, Meromorphic psi2, Holomorphic1Form dh, Domain domain);
    static WeierstrassData related(Meromorphic psi1, RationalFunction f, Holomorphic1Form dh, Domain domain);

    const Meromorphic& psi1() const { return psi1_; }
    const Meromorphic& psi2() const { return psi2_; }
    const Holomorphic1Form& dh() const { return dh_; }
    const Domain& domain() const { return domain_; }
    /// f with psi2 = f o psi1, when the data were built that way.
    const std::optional<RationalFunction>& relation() const { return relation_; }

    bool is_rational() const { return phi_.has_value(); }
    /// Exact phi coefficient functions (rational data only).
    const std::array<RationalFunction, 4>& phi_rational() const;
    /// Finite poles of the phi coefficients (rational data only; empty otherwise).
    const std::vector<cplx>& integrand_poles() const { return poles_; }

    bool completeness_asserted = false;

private:
    friend WeierstrassData lorentz_action(const WeierstrassData& data, const MobiusTransform& s);
    WeierstrassData(Meromorphic psi1, Meromorphic psi2, Holomorphic1Form dh, Domain domain,
                    std::optional<RationalFunction> relation);

    Meromorphic psi1_;
    Meromorphic psi2_;
    Holomorphic1Form dh_;
    Domain domain_;
    std::optional<RationalFunction> relation_;
    std::optional<std::array<RationalFunction, 4>> phi_;
    std::vector<cplx> poles_;
};

/// Below this chordal distance psi1 and conj(psi2) count as equal.
inline constexpr double kRegularityTolerance = 1e-9;
/// Period residuals must stay below this.
inline constexpr double kPeriodTolerance = 1e-9;

struct RegularityReport {
    Verdict condition1 = Verdict::Pass; ///< psi1 != conj(psi2), poles apart
    Verdict condition2 = Verdict::Pass; ///< zeros of dh = poles of psi1, psi2 with order
    Verdict verdict = Verdict::Pass;
    double min_chordal = 1.0; ///< over the sampled nodes
    cplx argmin{};
    int sampled = 0;
    /// Located, human-readable findings.
    std::vector<std::string> issues;
};

/// Condition (1) is sampled on the grid nodes inside the domain; for rational
/// data coinciding poles are found exactly, and with a relation psi2 = f o psi1
/// the exact preimages of E_f are added. Condition (2) is exact for rational
/// data (divisor orders, including infinity when it lies in the domain) and
/// reported Inapplicable otherwise.
RegularityReport check_regularity(const WeierstrassData& data, const Grid& grid, Exec exec = Exec::Parallel);

struct LoopPeriods {
    Contour loop;
    /// |int psi1 dh + conj(int psi2 dh)|, |Re int dh|, |Re int psi1 psi2 dh|
    std::optional<std::array<double, 3>> exact; ///< residue calculus (rational data)
    std::array<double, 3> quadrature{};
    Verdict verdict = Verdict::Pass;
};

struct PeriodReport {
    std::vector<LoopPeriods> loops;
    Verdict verdict = Verdict::Pass; ///< Pass when there are no loops
};

/// Throws DomainError when a loop passes within kPoleClearance of a pole.
PeriodReport check_periods(const WeierstrassData& data, const std::vector<Contour>& loops);

/// Throws DomainError at a pole of the integrand or outside the domain.
PhiForms phi_forms(const WeierstrassData& data, cplx z);

/// int_a^b phi dz along the straight segment; throws DomainError when the
/// segment passes within kPoleClearance of a pole or leaves the domain.
PhiForms integrate_phi(const WeierstrassData& data, cplx a, cplx b);

struct ImmersionSample {
    cplx z;
    Vec4 x{};
    double lambda2 = 0.0;
};

/// x(z) = x(base) + 2 Re int_path phi, with x(base) = 0. The path's first
/// vertex is the base point and its last vertex z.
ImmersionSample immerse(const WeierstrassData& data, const Polyline& path);
ImmersionSample immerse(const WeierstrassData& data, cplx z, cplx base);

/// lambda^2 = 2 |psi1 - conj(psi2)|^2 |g|^2 = |phi1|^2 + |phi2|^2 + |phi3|^2 - |phi4|^2.
/// With x = 2 Re int phi the pulled-back metric is <x_u, x_u> |dz|^2 = 2 lambda^2 |dz|^2.
double induced_metric(const WeierstrassData& data, cplx z);

/// The point of the Gauss map encoded by a null vector phi. Throws DomainError
/// for the zero vector or a non-null one.
std::pair<ExtendedComplex, ExtendedComplex> gauss_from_phi(const PhiForms& phi);

/// The Lorentz transformation induced by S acting on the data.
WeierstrassData lorentz_action(const WeierstrassData& data, const MobiusTransform& s);

/// (phi1, phi2, phi3, i phi4): the associated minimal surface in R^4.
PhiForms to_minimal_r4(const PhiForms& phi);

struct CompletenessProbe {
    std::vector<double> lengths; ///< int lambda |dz| along each truncated ray
    std::vector<bool> exceeds;
    double cutoff = 0.0;
    bool all_exceed = true;
    std::string label = "evidence, not proof";
};

CompletenessProbe completeness_probe(const WeierstrassData& data, const std::vector<Polyline>& rays, double cutoff);

} // namespace stasurf
