#pragma once
/** \file
 * \brief Value distribution of Gauss maps: ramification profiles, the
 *        ramification / exceptional-value / unicity bounds for surfaces with
 *        psi2 = f(psi1), and the numerical probes behind them (Schwarz lemma,
 *        the auxiliary metric inequality, the negatively curved metric dtau^2).
 */

#include "stasurf/efset.hpp"
#include "stasurf/weierstrass.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace stasurf {

struct RamificationQuery {
    RationalFunction psi;
    Domain domain;
    std::vector<ExtendedComplex> targets;
};

struct TargetProfile {
    ExtendedComplex a;
    /// Smallest multiplicity of a root of psi - a in the domain; infinite when
    /// psi omits a there.
    ExtendedCount e = ExtendedCount::infinite();
    int preimages = 0; ///< distinct in-domain roots
};

struct RamificationReport {
    std::vector<TargetProfile> targets;
    double gamma = 0.0; ///< sum (1 - 1/e)
};

/// Throws std::invalid_argument for a constant psi or coincident targets.
/// Disk domains: roots are located exactly and each multiplicity confirmed by
/// argument-principle counts on small circles (NumericError on disagreement).
RamificationReport ramification_profile(const RamificationQuery& q);

double gamma_sum(const RamificationReport& r);
double gamma_sum(const std::vector<ExtendedCount>& e);

struct RamiAudit {
    double gamma1 = 0.0, gamma2 = 0.0;
    Verdict verdict = Verdict::Pass;
};

/// min(gamma1, gamma2) <= 3 or gamma1 = gamma2 = 4.
RamiAudit audit_theorem_rami(const RamificationReport& r1, const RamificationReport& r2);

struct TheoremAAudit {
    int m = 0;
    int ef_count = 0;
    int q = 0;
    double gamma = 0.0;     ///< |E_f| + sum (1 - 1/e_j)
    double bound = 0.0;     ///< m - |E_f| + 3
    int hypothesis_min = 0; ///< q must exceed m - 2|E_f| + 3
    bool hypothesis_met = false;
    /// "general", or the special routes for entire graphs (sum <= 2) and the
    /// elliptic / R^3-minimal case (sum <= 4).
    std::string route;
    double route_value = 0.0; ///< the quantity compared on the route
    double route_bound = 0.0;
    int omitted = 0;        ///< targets with e = inf
    int omitted_bound = 0;  ///< m - |E_f| + 3, the exceptional-value count bound
    bool omitted_ok = true;
    Verdict verdict = Verdict::Pass;
};

/// Throws DomainError when a target lies in E_f. Inapplicable when E_f is a
/// curve. A violated bound is Contradiction when completeness is asserted,
/// Fail otherwise.
TheoremAAudit audit_theorem_A(const RationalFunction& f, const EfSet& ef, const RamificationReport& report,
                              bool completeness_asserted);

struct CriticalValue {
    ExtendedComplex a;
    int e = 1; ///< min multiplicity over the preimages of a
    std::vector<std::pair<ExtendedComplex, int>> critical_points; ///< (point, local degree > 1)
};

struct DefectReport {
    int degree = 0;
    std::vector<CriticalValue> values;
    double sum = 0.0;     ///< sum over critical values of (1 - 1/e)
    int rh_total = 0;     ///< sum over critical points of (local degree - 1)
    int rh_expected = 0;  ///< 2 deg - 2
    Verdict verdict = Verdict::Pass;
};

/// Local degree of psi at p (1 at regular points).
int local_degree(const RationalFunction& psi, const ExtendedComplex& p);

/// Throws std::invalid_argument for constant psi.
DefectReport rational_defect_bound(const RationalFunction& psi);

struct SharedValueReport {
    bool identical = false;
    std::vector<ExtendedComplex> shared;       ///< sorted, each verified by preimage comparison
    std::vector<ExtendedComplex> both_omitted; ///< reported separately
    bool omitted_counted = false;
    int q = 0;
};

/// In-domain preimages of a under psi (distinct points).
std::vector<ExtendedComplex> preimages(const RationalFunction& psi, const ExtendedComplex& a, const Domain& domain);

SharedValueReport shared_values(const RationalFunction& psi, const RationalFunction& psi_hat, const Domain& domain,
                                bool count_omitted = false);

struct TheoremBAudit {
    int m = 0;
    int ef_count = 0;
    int q = 0;
    int threshold = 0; ///< m - |E_f| + 6
    std::string route;
    Verdict verdict = Verdict::Pass;
};

TheoremBAudit audit_theorem_B(const RationalFunction& f, const EfSet& ef, const SharedValueReport& shared,
                              bool both_complete_asserted);

struct SchwarzCheckConfig {
    double radius = 1.0;
    int nr = 40, nt = 64; ///< polar sample grid, r < radius
};

struct SchwarzResult {
    double max_ratio = 0.0;
    cplx argmax{};
    int samples = 0;
};

/// max |f'(z)| lambda(f(z)) (R^2 - |z|^2) / (2R) with lambda(w) = 2 / (1 - |w|^2).
/// Throws DomainError when a sample leaves the unit disk.
SchwarzResult schwarz_check(const Meromorphic& f, const SchwarzCheckConfig& cfg, Exec exec = Exec::Parallel);

struct NegCurvatureProbeConfig {
    RationalFunction f, f_hat;
    std::vector<ExtendedComplex> targets;
    double eps = 0.05;
    Grid grid;
    Domain domain = Domain::plane(); ///< grid nodes and preimages outside it are ignored

    /// Throws std::invalid_argument unless q > 4 and q - 4 > q eps > 0.
    void validate() const;
};

struct ShrinkSequence {
    cplx point;
    bool shared = false;       ///< f_hat also takes the target value here
    std::vector<double> radii;
    std::vector<double> mu2;   ///< max over a circle of each radius, relative
    bool decreasing = false;
    bool below = false;        ///< reached mu^2 < 1e-8
};

struct NegCurvatureReport {
    double a0 = 0.0;
    double mu2_scale = 0.0;   ///< max mu^2 over the grid; thresholds below are relative to it
    int samples = 0;          ///< points with mu^2 > 1e-6 (relative)
    int negative = 0;
    double max_curvature = -INFINITY;
    cplx argmax{};
    std::vector<ShrinkSequence> shrink;
    Verdict verdict = Verdict::Pass;
};

/// mu^2 = |f, f^|^2 lambda lambda^ |f'| |f^'| / ((1 + |f|^2)(1 + |f^|^2)),
/// lambda = (prod |f, a_i| log(a0 / |f, a_i|^2))^(-1 + eps).
double dtau_density(const NegCurvatureProbeConfig& cfg, double a0, cplx z);

NegCurvatureReport neg_curvature_probe(const NegCurvatureProbeConfig& cfg, Exec exec = Exec::Parallel);

struct AuxMetricReport {
    std::optional<MobiusTransform> normalization; ///< applied to put infinity in E_f
    int m = 0, l = 0, s = 0;
    double c = 0.0;             ///< sup of the bounding ratio over the sphere
    int samples = 0;
    double min_residual = 1.0;  ///< min (C^2 rhs - ds^2) / (C^2 rhs)
    cplx argmin{};
    Verdict verdict = Verdict::Pass;
};

/// ds^2 = |f(psi) - conj(psi)|^2 |dh|^2 <= C^2 prod|psi - c_i|^2 (1 + |psi|^2)^(m - l) |omega|^2.
/// Throws DomainError when E_f is empty or a curve, or the data carry no relation.
AuxMetricReport aux_metric_bound(const WeierstrassData& data, const Grid& grid, Exec exec = Exec::Parallel);

} // namespace stasurf
