// One line per acceptance criterion; exit status 0 iff all pass.

#include "oracles.hpp"
#include "random_data.hpp"

#include "stasurf/errors.hpp"
#include "stasurf/gallery.hpp"
#include "stasurf/report.hpp"
#include "stasurf/valuedist.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <unistd.h>

using namespace stasurf;
using nlohmann::ordered_json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Log {
    bool ok = true;
    std::ostringstream first;
    int failures = 0;
    void check(bool cond, const std::string& what) {
        if (cond)
            return;
        if (failures++ == 0)
            first << what;
        ok = false;
    }
    Outcome done(const std::string& summary) const {
        if (ok)
            return {true, summary};
        return {false, std::to_string(failures) + " failure(s), first: " + first.str()};
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

const std::vector<RunResult>& gallery_runs() {
    static const std::vector<RunResult> runs = [] {
        std::vector<RunResult> r;
        for (const auto& e : gallery())
            r.push_back(analyze(e.parsed()));
        return r;
    }();
    return runs;
}

const ordered_json& audit_of(std::size_t i) { return gallery_runs()[i].report["frame"]["audit"]; }

Outcome c1_normal_forms() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> par(0.2, 2.0);
    Log log;
    int runs = 0;
    for (int family = 0; family < 4; ++family) {
        for (int k = 0; k <= 100; ++k) {
            MobiusTransform s = MobiusTransform::identity();
            std::optional<int> expected;
            const double u = k == 0 ? 1.0 : par(rng);
            switch (family) {
            case 0: break;
            case 1: s = {std::exp(u), 0.0, 0.0, std::exp(-u)}; expected = 2; break;
            case 2: s = {0.0, 1.0, -1.0, 0.0}; expected = 0; break;
            case 3: s = {1.0, u, 0.0, 1.0}; expected = 1; break;
            }
            if (k > 0) {
                const MobiusTransform t = testdata::random_sl2(rng);
                s = t.conj() * s * t.inverse();
            }
            const EfSet ef = ef_solve(RationalFunction::from_mobius(s));
            ++runs;
            const std::string tag = "family " + std::to_string(family) + " draw " + std::to_string(k);
            if (expected)
                log.check(ef.kind != EfKind::Curve && ef.cardinality == ExtendedCount::finite(*expected),
                          tag + ": |E| = " + std::to_string(ef.points.size()));
            else
                log.check(ef.kind == EfKind::Curve, tag + ": not a curve");
        }
    }
    const double s = seconds_since(t0);
    log.check(s < 5.0, "took " + fmt(s) + " s");
    return log.done(std::to_string(runs) + " maps (identity/hyperbolic/elliptic/parabolic -> inf/2/0/1), " + fmt(s) +
                    " s");
}

Outcome c2_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(202);
    Log log;
    int points = 0;
    for (int t = 0; t < 100; ++t) {
        const RationalFunction f = testdata::random_rational(rng, 1 + t % 5);
        const EfSet ef = ef_solve(f);
        const auto ref = oracle::ef_bruteforce(f, 600, 1e-6);
        points += static_cast<int>(ref.size());
        log.check(ef.kind == EfKind::FinitePoints || ef.kind == EfKind::Empty, "trial " + std::to_string(t) + ": curve");
        log.check(oracle::same_point_sets(ef.points, ref, 1e-5),
                  "trial " + std::to_string(t) + ": " + std::to_string(ef.points.size()) + " vs oracle " +
                      std::to_string(ref.size()));
    }
    const double s = seconds_since(t0);
    log.check(s < 60.0, "took " + fmt(s) + " s");
    return log.done("100 random f of degree 1..5, " + std::to_string(points) + " points matched within 1e-5, " +
                    fmt(s) + " s");
}

Outcome c3_z_squared() {
    Log log;
    const RationalFunction f(Polynomial{0.0, 0.0, 1.0});
    const EfSet ef = ef_solve(f);
    // polar oracle: r^2 e^{2it} = r e^{-it} gives r in {0, 1}, 3t = 0 mod 2 pi, plus infinity
    std::vector<ExtendedComplex> expect{ExtendedComplex(0.0), ExtendedComplex::infinity()};
    for (int k = 0; k < 3; ++k)
        expect.emplace_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0));
    log.check(ef.points.size() == 5, std::to_string(ef.points.size()) + " points");
    log.check(oracle::same_point_sets(ef.points, expect, 1e-12), "points differ from the polar oracle");
    const AdmissibilityReport a = admissibility_check(2, ef.cardinality);
    log.check(a.ef_bounds.verdict == Verdict::Fail, "bound not flagged: " + a.ef_bounds.detail);
    return log.done("E = {0, 1, e^{+-2pi i/3}, inf}; bound flagged (" + a.ef_bounds.detail + ")");
}

Outcome c4_null_spacelike() {
    Log log;
    double worst = 0.0, low = INFINITY;
    int pts = 0;
    for (std::size_t i = 0; i < gallery().size(); ++i) {
        const ordered_json& a = audit_of(i);
        worst = std::max(worst, a["max_null_residual"].get<double>());
        low = std::min(low, a["min_spacelike"].get<double>());
        pts += a["points"].get<int>();
        log.check(a["points"].get<int>() > 0, gallery()[i].name + ": no regular points");
    }
    log.check(worst < 1e-12, "null residual " + fmt(worst));
    log.check(low > 0.0, "space-like norm " + fmt(low));
    return log.done(std::to_string(pts) + " gallery points, max null residual " + fmt(worst) +
                    ", min space-like norm " + fmt(low));
}

Outcome c5_metric() {
    Log log;
    double m = 0.0, c = 0.0, h = 0.0;
    for (std::size_t i = 0; i < gallery().size(); ++i) {
        const ordered_json& a = audit_of(i);
        m = std::max(m, a["max_metric_rel"].get<double>());
        c = std::max(c, a["max_conformal_rel"].get<double>());
        h = std::max(h, a["max_harmonic_rel"].get<double>());
    }
    log.check(m < 1e-5, "metric " + fmt(m));
    log.check(c < 1e-4, "conformality " + fmt(c));
    log.check(h < 1e-4, "harmonicity " + fmt(h));
    return log.done("max metric rel " + fmt(m) + ", conformal " + fmt(c) + ", harmonic " + fmt(h));
}

Outcome c6_periods() {
    Log log;
    const PeriodReport cat = check_periods(gallery_entry("catenoid-r3").parsed().data, {Circle{0.0, 1.0}});
    const PeriodReport broken = check_periods(gallery_entry("broken-period").parsed().data, {Circle{0.0, 1.0}});
    double quad = 0.0;
    for (const auto& l : cat.loops) {
        log.check(l.exact.has_value(), "catenoid: no residue-exact residuals");
        if (l.exact)
            log.check((*l.exact)[0] == 0.0 && (*l.exact)[1] == 0.0 && (*l.exact)[2] == 0.0,
                      "catenoid exact residual nonzero");
        for (const double q : l.quadrature)
            quad = std::max(quad, q);
    }
    log.check(quad < 1e-9, "catenoid quadrature " + fmt(quad));
    log.check(cat.verdict == Verdict::Pass, "catenoid verdict");
    log.check(broken.verdict == Verdict::Fail, "broken-period passes");
    double first = NAN;
    if (!broken.loops.empty() && broken.loops[0].exact)
        first = (*broken.loops[0].exact)[0];
    log.check(std::abs(first - 2.0 * std::numbers::pi) < 1e-12, "broken residual " + fmt(first));
    return log.done("catenoid exact 0, quadrature " + fmt(quad) + "; broken-period first residual " + fmt(first) +
                    " = |2 pi i|");
}

Outcome c7_embedding() {
    Log log;
    std::string detail;
    for (std::size_t i = 0; i < gallery().size(); ++i) {
        const int emb = gallery()[i].expect.embedding;
        if (emb == 0)
            continue;
        const double s = audit_of(i)["x_spread"][emb > 0 ? 3 : 2].get<double>();
        log.check(s < 1e-10, gallery()[i].name + " spread " + fmt(s));
        detail += (detail.empty() ? "" : ", ") + gallery()[i].name + (emb > 0 ? " x4 " : " x3 ") + fmt(s);
    }
    return log.done(detail);
}

Outcome c8_gauss() {
    Log log;
    double worst = 0.0;
    for (std::size_t i = 0; i < gallery().size(); ++i)
        worst = std::max(worst, audit_of(i)["max_gauss_chordal"].get<double>());
    log.check(worst < 1e-10, "gallery chordal " + fmt(worst));
    // phi3 + phi4 = 0 puts one Gauss value at infinity; phi1 = phi2 = 0 puts both there
    const cplx i{0.0, 1.0};
    const double t = 0.75;
    const auto [a1, a2] = gauss_from_phi({1.0, i, t, -t});
    log.check(chordal(a1, ExtendedComplex(-t)) < 1e-10 && a2.is_infinite(), "branch phi1 - i phi2 = 0");
    const auto [b1, b2] = gauss_from_phi({1.0, -i, t, -t});
    log.check(b1.is_infinite() && chordal(b2, ExtendedComplex(-t)) < 1e-10, "branch phi1 + i phi2 = 0");
    const auto [c1, c2] = gauss_from_phi({0.0, 0.0, 1.0, -1.0});
    log.check(c1.is_infinite() && c2.is_infinite(), "branch phi1 = phi2 = 0");
    const WeierstrassData cat = gallery_entry("catenoid-r3").parsed().data;
    const cplx w{0.4, 0.3};
    const auto [d1, d2] = gauss_from_phi(phi_forms(cat, w));
    log.check(chordal(d1, cat.psi1()(w)) < 1e-10 && chordal(d2, cat.psi2()(w)) < 1e-10, "generic branch");
    return log.done("gallery max chordal " + fmt(worst) + "; 3 degenerate branches + generic exact");
}

Outcome c9_lorentz() {
    Log log;
    std::mt19937_64 rng(909);
    double worst = 0.0;
    int checks = 0;
    for (const auto& e : gallery()) {
        const SurfaceConfig c = e.parsed();
        const Grid g = effective_grid(c, {});
        std::vector<cplx> nodes;
        for (int k = 0; k < g.size(); k += 7)
            if (c.data.domain().contains(g.node(k), 1e-6))
                nodes.push_back(g.node(k));
        for (int t = 0; t < 20; ++t) {
            const MobiusTransform s = testdata::random_sl2(rng);
            const WeierstrassData moved = lorentz_action(c.data, s);
            for (const cplx z : nodes) {
                double l0 = 0.0, l1 = 0.0;
                try {
                    l0 = induced_metric(c.data, z);
                    l1 = induced_metric(moved, z);
                } catch (const std::exception&) {
                    continue;
                }
                const double rel = std::abs(l1 - l0) / l0;
                worst = std::max(worst, rel);
                ++checks;
                log.check(rel < 1e-9, e.name + " at " + to_json(z).dump() + ": " + fmt(rel));
            }
        }
    }
    log.check(checks > 1000, "only " + std::to_string(checks) + " checks");
    return log.done(std::to_string(checks) + " point checks, 20 actions per entry, max rel " + fmt(worst));
}

// Taylor coefficients of h at p by repeated synthetic division; the local
// degree is the first coefficient that dominates on a small circle.
int deflation_multiplicity(const Polynomial& h, cplx p) {
    std::vector<cplx> c(h.coefficients().begin(), h.coefficients().end());
    std::vector<cplx> taylor;
    while (!c.empty()) {
        std::vector<cplx> q(c.size() - 1);
        cplx acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) {
            acc = acc * p + c[k];
            if (k > 0)
                q[k - 1] = acc;
        }
        taylor.push_back(acc);
        c = std::move(q);
    }
    const double r = 1e-4 * (1.0 + std::abs(p));
    double best = 0.0;
    for (std::size_t k = 0; k < taylor.size(); ++k)
        best = std::max(best, std::abs(taylor[k]) * std::pow(r, static_cast<double>(k)));
    for (std::size_t k = 0; k < taylor.size(); ++k)
        if (std::abs(taylor[k]) * std::pow(r, static_cast<double>(k)) >= 1e-3 * best)
            return static_cast<int>(k);
    return -1;
}

int deflation_degree(const RationalFunction& psi, const ExtendedComplex& a, const ExtendedComplex& p) {
    Polynomial num = psi.numerator(), den = psi.denominator();
    cplx at = 0.0;
    if (p.is_infinite()) {
        const int d = std::max(num.degree(), den.degree());
        const auto reverse = [d](const Polynomial& x) {
            std::vector<cplx> c(static_cast<std::size_t>(d) + 1, 0.0);
            const auto& src = x.coefficients();
            for (std::size_t k = 0; k < src.size(); ++k)
                c[static_cast<std::size_t>(d) - k] = src[k];
            return Polynomial(std::move(c));
        };
        num = reverse(num);
        den = reverse(den);
    } else {
        at = p.value();
    }
    const Polynomial h = a.is_infinite() ? den : num - Polynomial::constant(a.value()) * den;
    return deflation_multiplicity(h, at);
}

Outcome c10_defect() {
    Log log;
    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<int> deg(2, 5);
    double worst = 0.0;
    int crit = 0;
    for (int t = 0; t < 100; ++t) {
        const RationalFunction psi = testdata::random_rational(rng, deg(rng));
        const DefectReport d = rational_defect_bound(psi);
        worst = std::max(worst, d.sum);
        const std::string tag = "trial " + std::to_string(t);
        log.check(d.sum <= 2.0 + 1e-12, tag + ": sum " + fmt(d.sum));
        log.check(d.rh_total == d.rh_expected && d.rh_expected == 2 * d.degree - 2,
                  tag + ": RH " + std::to_string(d.rh_total));
        for (const auto& cv : d.values)
            for (const auto& [p, k] : cv.critical_points) {
                ++crit;
                const int oracle = deflation_degree(psi, cv.a, p);
                log.check(k == oracle, tag + ": local degree " + std::to_string(k) + " vs deflation " +
                                           std::to_string(oracle));
            }
    }
    return log.done("100 maps of degree 2..5, max sum " + fmt(worst) + ", " + std::to_string(crit) +
                    " critical points matched, RH exact");
}

bool has_contradiction(const ordered_json& j) {
    if (j.is_string())
        return j.get<std::string>() == to_string(Verdict::Contradiction);
    if (j.is_structured())
        for (const auto& v : j)
            if (has_contradiction(v))
                return true;
    return false;
}

Outcome c11_audits() {
    Log log;
    for (std::size_t i = 0; i < gallery().size(); ++i)
        log.check(!has_contradiction(gallery_runs()[i].report), gallery()[i].name + ": CONTRADICTION");

    std::mt19937_64 rng(1111);
    std::uniform_int_distribution<int> deg(1, 5);
    const Domain sphere = Domain::sphere_minus({});
    int pairs = 0, max_q = 0, min_threshold = 1 << 20;
    while (pairs < 1000) {
        RationalFunction f = testdata::random_rational(rng, deg(rng));
        EfSet ef = ef_solve(f);
        if (ef.kind == EfKind::Curve || admissibility_check(f.degree(), ef.cardinality).budget.verdict != Verdict::Pass)
            continue;
        const RationalFunction psi = testdata::random_rational(rng, deg(rng));
        const RationalFunction psi_hat = testdata::random_rational(rng, deg(rng));
        if (psi.approx_equal(psi_hat))
            continue;
        const SharedValueReport s = shared_values(psi, psi_hat, sphere);
        const TheoremBAudit b = audit_theorem_B(f, ef, s, true);
        ++pairs;
        max_q = std::max(max_q, s.q);
        min_threshold = std::min(min_threshold, b.threshold);
        if (s.q >= b.threshold)
            std::cerr << "shared-value hit: q = " << s.q << " threshold " << b.threshold << "\n";
        log.check(s.q < b.threshold && b.verdict == Verdict::Pass,
                  "pair " + std::to_string(pairs) + ": q " + std::to_string(s.q));
    }
    return log.done("no CONTRADICTION in the gallery; 1000 pairs, max q " + std::to_string(max_q) +
                    " < min threshold " + std::to_string(min_threshold));
}

Outcome c12_schwarz() {
    Log log;
    const double id = schwarz_check(Meromorphic(RationalFunction::identity()), {}).max_ratio;
    log.check(std::abs(id - 1.0) <= 1e-9, "identity " + fmt(id));
    const double sq = schwarz_check(Meromorphic(RationalFunction(Polynomial{0.0, 0.0, 1.0})), {}).max_ratio;
    log.check(sq <= 1.0 + 1e-6, "z^2 " + fmt(sq));
    std::mt19937_64 rng(1212);
    std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> deg(1, 4);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        RationalFunction b(Polynomial{std::polar(1.0, ang(rng))});
        const int n = deg(rng);
        for (int k = 0; k < n; ++k) {
            const cplx a = std::polar(rad(rng), ang(rng));
            b = b * RationalFunction(Polynomial::linear_factor(a), Polynomial{1.0, -std::conj(a)});
        }
        worst = std::max(worst, schwarz_check(Meromorphic(b), {}).max_ratio);
    }
    log.check(worst <= 1.0 + 1e-6, "Blaschke " + fmt(worst));
    return log.done("identity |ratio - 1| = " + fmt(std::abs(id - 1.0)) + ", z^2 " + fmt(sq) + ", 50 Blaschke max " +
                    fmt(worst));
}

Outcome c13_probe() {
    Log log;
    std::string detail;
    for (const auto& p : shipped_probes()) {
        const NegCurvatureReport r = neg_curvature_probe(p.config);
        log.check(r.samples > 0 && r.negative == r.samples,
                  p.name + ": " + std::to_string(r.negative) + "/" + std::to_string(r.samples) + " negative");
        int shared = 0;
        for (const auto& s : r.shrink)
            if (s.shared) {
                ++shared;
                log.check(s.decreasing && s.below, p.name + ": mu^2 does not vanish at a shared preimage");
            }
        log.check(shared > 0, p.name + ": no shared preimage in the window");
        log.check(r.verdict == Verdict::Pass, p.name + ": " + to_string(r.verdict));
        detail += (detail.empty() ? "" : "; ") + p.name + " " + std::to_string(r.negative) + "/" +
                  std::to_string(r.samples) + " negative, max K " + fmt(r.max_curvature) + ", " +
                  std::to_string(shared) + " shrink points";
    }
    return log.done(detail + " (mu^2 thresholds relative to its grid max)");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome c14_determinism() {
    Log log;
    const auto base = std::filesystem::temp_directory_path() / ("stasurf-acceptance-" + std::to_string(::getpid()));
    std::filesystem::remove_all(base);
    const GalleryRun a = run_gallery(base / "a");
    const GalleryRun b = run_gallery(base / "b");
    log.check(a.problems.empty() && b.problems.empty(),
              "gallery expectations: " + (a.problems.empty() ? std::string() : a.problems.front()));
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(base / "a")) {
        ++files;
        const auto other = base / "b" / entry.path().filename();
        log.check(std::filesystem::exists(other) && slurp(entry.path()) == slurp(other),
                  entry.path().filename().string() + " differs");
    }
    log.check(files >= 3 * static_cast<int>(gallery().size()), "only " + std::to_string(files) + " files");
    std::filesystem::remove_all(base);
    return log.done(std::to_string(files) + " files (reports, CSV, OBJ, probes) byte-identical across two runs");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"E_f normal forms", c1_normal_forms},
        {"E_f oracle equivalence", c2_oracle},
        {"f = z^2 fixed set and bound", c3_z_squared},
        {"null identity and space-like inequality", c4_null_spacelike},
        {"metric, conformality, harmonicity", c5_metric},
        {"catenoid and broken periods", c6_periods},
        {"embedding constraints", c7_embedding},
        {"Gauss round trip", c8_gauss},
        {"Lorentz invariance", c9_lorentz},
        {"rational defect bound", c10_defect},
        {"value-distribution audits", c11_audits},
        {"Schwarz check", c12_schwarz},
        {"dtau^2 probe", c13_probe},
        {"determinism", c14_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
                  << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
