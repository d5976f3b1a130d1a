#include "stasurf/efset.hpp"

#include "stasurf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace stasurf {

namespace {

// Real 2x2 Newton step for G(z) = f(z) - conj(z): with a = f'(z),
// a d - conj(d) = -G  gives  d = (conj(a) G + conj(G)) / (1 - |a|^2).
cplx polish(const RationalFunction& f, const RationalFunction& df, cplx z) {
    const auto resid = [&f](cplx w) { return std::abs(f.evaluate(w) - std::conj(w)); };
    double best = resid(z);
    for (int it = 0; it < 30 && best > 0.0; ++it) {
        const cplx g = f.evaluate(z) - std::conj(z);
        const cplx a = df.evaluate(z);
        const double den = 1.0 - std::norm(a);
        if (std::abs(den) < 1e-14 || !std::isfinite(g.real()) || !std::isfinite(a.real()))
            break;
        const cplx step = (std::conj(a) * g + std::conj(g)) / den;
        // Damped: near a pole of f the full step can overshoot.
        bool improved = false;
        for (double t = 1.0; t > 1e-3; t *= 0.5) {
            const cplx cand = z + t * step;
            const double r = resid(cand);
            if (r < best) {
                z = cand;
                best = r;
                improved = true;
                break;
            }
        }
        if (!improved)
            break;
    }
    return z;
}

bool sphere_less(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.is_infinite() || b.is_infinite())
        return a.is_finite() && b.is_infinite();
    const cplx x = a.value(), y = b.value();
    if (x.real() != y.real())
        return x.real() < y.real();
    return x.imag() < y.imag();
}

cplx circumcenter(cplx a, cplx b, cplx c) {
    const cplx ab = b - a, ac = c - a;
    const double d = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
    const double nb = std::norm(ab), nc = std::norm(ac);
    return a + cplx{(ac.imag() * nb - ab.imag() * nc) / d, (ab.real() * nc - ac.real() * nb) / d};
}

// f = (a z + b) / (c z + d) with conj(f) o f = id. Some k in {1, i} turns
// k (c|z|^2 + d conj(z) - a z - b) into the real form A|z|^2 + B conj(z) + conj(B) z + C.
EfSet involution_locus(const RationalFunction& f) {
    const cplx a = f.numerator().coefficient(1), b = f.numerator().coefficient(0);
    const cplx c = f.denominator().coefficient(1), d = f.denominator().coefficient(0);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});

    cplx best_k{};
    double best_res = std::numeric_limits<double>::infinity();
    for (const cplx k : {cplx{1.0, 0.0}, cplx{0.0, 1.0}}) {
        const double res = std::abs((k * c).imag()) + std::abs((k * b).imag()) + std::abs(k * a + std::conj(k * d));
        if (res < best_res) {
            best_res = res;
            best_k = k;
        }
    }
    if (best_res > 1e-9 * scale)
        throw NumericError("ef_solve: involution has no real circle equation (residual " + std::to_string(best_res) +
                           ")");
    const double A = (best_k * c).real();
    const cplx B = best_k * d;
    const double C = -(best_k * b).real();

    EfSet out;
    EfLocus locus;
    std::array<ExtendedComplex, 3> pts;
    if (std::abs(A) <= 1e-12 * scale) {
        // 2 Re(conj(B) z) = -C, together with infinity.
        if (std::abs(B) <= 1e-12 * scale) {
            out.kind = EfKind::Empty;
            return out;
        }
        const cplx z0 = -C * B / (2.0 * std::norm(B));
        const cplx dir = cplx{0.0, 1.0} * B / std::abs(B);
        pts = {ExtendedComplex(z0), ExtendedComplex(z0 + dir), ExtendedComplex::infinity()};
        locus.is_line = true;
        locus.center = pts[0].value();
        locus.direction = (pts[1].value() - pts[0].value()) / std::abs(pts[1].value() - pts[0].value());
    } else {
        const double r2 = (std::norm(B) - A * C) / (A * A);
        if (r2 < -1e-12 * std::max(1.0, std::norm(B / A))) {
            out.kind = EfKind::Empty;
            return out;
        }
        const cplx ctr = -B / A;
        const double r = std::sqrt(std::max(r2, 0.0));
        if (r == 0.0)
            throw NumericError("ef_solve: degenerate involution locus");
        pts = {ExtendedComplex(ctr + r), ExtendedComplex(ctr + cplx{0.0, r}), ExtendedComplex(ctr - r)};
        locus.center = circumcenter(pts[0].value(), pts[1].value(), pts[2].value());
        locus.radius = std::abs(pts[0].value() - locus.center);
    }
    locus.samples = pts;
    for (const auto& p : pts)
        locus.max_sample_residual = std::max(locus.max_sample_residual, ef_residual(f, p));
    if (locus.max_sample_residual > kEfTolerance)
        throw NumericError("ef_solve: sampled involution locus fails the defining equation");
    out.kind = EfKind::Curve;
    out.cardinality = ExtendedCount::infinite();
    out.worst_accepted = locus.max_sample_residual;
    out.locus = locus;
    return out;
}

} // namespace

std::string to_string(EfKind k) {
    switch (k) {
    case EfKind::FinitePoints: return "points";
    case EfKind::Curve: return "curve";
    case EfKind::Empty: return "empty";
    }
    return "?";
}

double ef_residual(const RationalFunction& f, const ExtendedComplex& z) { return chordal(f(z), z.conj()); }

EfSet ef_solve(const RationalFunction& f, double tol) {
    if (f.is_constant()) {
        EfSet out;
        out.kind = EfKind::FinitePoints;
        out.points = {ExtendedComplex::from_value(std::conj(f.evaluate(0.0)))};
        out.cardinality = ExtendedCount::finite(1);
        out.candidates = 1;
        return out;
    }
    const RationalFunction F = f.conjugate_coeffs().compose(f);
    if (F.is_identity())
        return involution_locus(f);

    std::vector<ExtendedComplex> candidates;
    const Polynomial fixed = F.numerator() - Polynomial{0.0, 1.0} * F.denominator();
    if (fixed.degree() >= 1) {
        const RationalFunction df = f.derivative();
        // Multiplicities are irrelevant here, only good starting points. Tight
        // clusters of 2-cycles can defeat the certified factorization; plain
        // simultaneous iteration still lands near every root.
        std::vector<cplx> starts;
        try {
            for (const auto& r : roots_with_multiplicity(fixed))
                starts.push_back(r.value);
        } catch (const NumericError&) {
            starts = simple_roots(fixed);
        }
        for (const cplx r : starts)
            candidates.push_back(ExtendedComplex::from_value(polish(f, df, r)));
    }
    if (F.numerator().degree() > F.denominator().degree())
        candidates.push_back(ExtendedComplex::infinity());

    EfSet out;
    out.candidates = static_cast<int>(candidates.size());
    for (const auto& c : candidates) {
        const double res = ef_residual(f, c);
        if (res > tol) {
            out.best_rejected = std::min(out.best_rejected, res);
            continue;
        }
        out.worst_accepted = std::max(out.worst_accepted, res);
        const bool dup = std::any_of(out.points.begin(), out.points.end(),
                                     [&](const ExtendedComplex& p) { return chordal(p, c) <= kEfDedupe; });
        if (!dup)
            out.points.push_back(c);
    }
    std::sort(out.points.begin(), out.points.end(), sphere_less);
    out.kind = out.points.empty() ? EfKind::Empty : EfKind::FinitePoints;
    out.cardinality = ExtendedCount::finite(static_cast<int>(out.points.size()));
    return out;
}

AdmissibilityReport admissibility_check(int m, ExtendedCount ef) {
    if (m < 0)
        throw std::invalid_argument("admissibility_check: negative degree");
    AdmissibilityReport rep;
    rep.m = m;
    rep.ef_count = ef;

    rep.degree_bound.verdict = m <= 5 ? Verdict::Pass : Verdict::Fail;
    rep.degree_bound.detail = "m = " + std::to_string(m) + (m <= 5 ? " <= 5" : " > 5");

    if (m < 2) {
        rep.ef_bounds.verdict = Verdict::Inapplicable;
        rep.ef_bounds.detail = "only stated for m >= 2";
    } else if (ef.is_infinite()) {
        rep.ef_bounds.verdict = Verdict::Fail;
        rep.ef_bounds.detail = "|E_f| infinite exceeds (m + 3) / 2";
    } else {
        const int e = ef.value();
        const bool ok = m - 1 <= e && 2 * e <= m + 3;
        rep.ef_bounds.verdict = ok ? Verdict::Pass : Verdict::Fail;
        rep.ef_bounds.detail = std::to_string(m - 1) + " <= " + std::to_string(e) + " <= " +
                               std::to_string(m + 3) + "/2" + (ok ? "" : " violated");
    }

    if (ef.is_infinite()) {
        rep.budget.verdict = Verdict::Inapplicable;
        rep.budget.detail = "E_f is a curve";
    } else {
        const int e = ef.value();
        rep.exceptional_budget = m - e + 3;
        // Every point of E_f is omitted, so the budget must cover them.
        const bool ok = e <= *rep.exceptional_budget;
        rep.budget.verdict = ok ? Verdict::Pass : Verdict::Fail;
        rep.budget.detail = "|E_f| = " + std::to_string(e) + (ok ? " <= " : " > ") + "budget " +
                            std::to_string(*rep.exceptional_budget);
    }
    return rep;
}

} // namespace stasurf
