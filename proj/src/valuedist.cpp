#include "stasurf/valuedist.hpp"

#include "stasurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace stasurf {

namespace {

using Fiber = std::vector<std::pair<ExtendedComplex, int>>;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool less_point(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.is_infinite() != b.is_infinite())
        return b.is_infinite();
    if (a.is_infinite())
        return false;
    const cplx x = a.value(), y = b.value();
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
}

bool in_domain(const ExtendedComplex& p, const Domain& dom) {
    return p.is_infinite() ? dom.contains_infinity() : dom.contains(p.value(), 1e-8);
}

std::vector<Root> roots_robust(const Polynomial& p) {
    try {
        return roots_with_multiplicity(p);
    } catch (const NumericError&) {
        // a tight cluster the square-free split could not resolve: count by proximity
        std::vector<Root> out;
        for (const cplx r : simple_roots(p)) {
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](const Root& q) { return std::abs(q.value - r) <= 1e-6 * (1.0 + std::abs(r)); });
            if (it == out.end())
                out.push_back({r, 1});
            else
                ++it->multiplicity;
        }
        return out;
    }
}

// Numerator of psi - a, with the top coefficients that cancelled to rounding removed.
Polynomial shifted_numerator(const RationalFunction& psi, cplx a) {
    const Polynomial& p = psi.numerator();
    const Polynomial& q = psi.denominator();
    const double scale = std::max(p.norm(), std::abs(a) * q.norm());
    return (p - Polynomial::constant(a) * q).truncated(1e-13, scale);
}

// psi^{-1}(a) on the whole sphere with multiplicities.
Fiber fiber(const RationalFunction& psi, const ExtendedComplex& a) {
    if (psi.is_constant())
        throw std::invalid_argument("fiber: constant function");
    Fiber out;
    const Polynomial h = a.is_infinite() ? psi.denominator() : shifted_numerator(psi, a.value());
    if (h.degree() >= 1)
        for (const auto& r : roots_robust(h))
            out.emplace_back(ExtendedComplex(r.value), r.multiplicity);
    if (approx_equal(psi(ExtendedComplex::infinity()), a, 1e-9))
        out.emplace_back(ExtendedComplex::infinity(), local_degree(psi, ExtendedComplex::infinity()));
    return out;
}

RationalFunction reciprocal_arg(const RationalFunction& psi) {
    return psi.compose(RationalFunction(Polynomial::constant(1.0), Polynomial{0.0, 1.0}));
}

} // namespace

int local_degree(const RationalFunction& psi, const ExtendedComplex& p) {
    if (psi.is_constant())
        throw std::invalid_argument("local_degree: constant function");
    if (p.is_infinite())
        return local_degree(reciprocal_arg(psi), ExtendedComplex(0.0));
    const cplx z = p.value();
    const Polynomial& q = psi.denominator();
    if (q.degree() >= 1 && order_at(q, z) > 0)
        return order_at(q, z);
    const RationalFunction d = psi.derivative();
    return 1 + (d.numerator().degree() >= 1 ? order_at(d.numerator(), z) : 0);
}

std::vector<ExtendedComplex> preimages(const RationalFunction& psi, const ExtendedComplex& a, const Domain& domain) {
    std::vector<ExtendedComplex> out;
    for (const auto& [p, k] : fiber(psi, a))
        if (in_domain(p, domain))
            out.push_back(p);
    std::sort(out.begin(), out.end(), less_point);
    return out;
}

RamificationReport ramification_profile(const RamificationQuery& q) {
    if (q.psi.is_constant())
        throw std::invalid_argument("ramification_profile: psi must be nonconstant");
    for (std::size_t i = 0; i < q.targets.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (chordal(q.targets[i], q.targets[j]) <= 1e-9)
                throw std::invalid_argument("ramification_profile: coincident targets " + q.targets[i].to_string());
    q.domain.validate();

    RamificationReport rep;
    for (const auto& a : q.targets) {
        TargetProfile t{a, ExtendedCount::infinite(), 0};
        Fiber inside;
        for (const auto& pk : fiber(q.psi, a))
            if (in_domain(pk.first, q.domain))
                inside.push_back(pk);

        if (q.domain.kind == DomainKind::Disk) {
            const double R = q.domain.radius;
            // the argument principle on the whole disk and on small circles
            const Meromorphic g = a.is_infinite() ? Meromorphic(RationalFunction(q.psi.denominator(), q.psi.numerator()))
                                                  : Meromorphic(q.psi);
            const cplx target = a.is_infinite() ? cplx{0.0} : a.value();
            int total = 0;
            for (const auto& [p, k] : inside)
                total += k;
            if (count_zeros_in_disk(g, target, 0.0, R) != total)
                throw NumericError("ramification_profile: root count disagrees with the argument principle at " +
                                   a.to_string());
            const Fiber all = fiber(q.psi, a);
            for (const auto& [p, k] : inside) {
                double rho = R - std::abs(p.value());
                for (const auto& [o, ko] : all)
                    if (o.is_finite() && o.value() != p.value())
                        rho = std::min(rho, std::abs(o.value() - p.value()));
                for (const auto& pole : q.psi.poles())
                    if (std::abs(pole.value - p.value()) > 0.0)
                        rho = std::min(rho, std::abs(pole.value - p.value()));
                if (count_zeros_in_disk(g, target, p.value(), 0.5 * rho) != k)
                    throw NumericError("ramification_profile: local multiplicity disagrees at " + p.to_string());
            }
        }
        for (const auto& [p, k] : inside) {
            ++t.preimages;
            if (t.e.is_infinite() || k < t.e.value())
                t.e = ExtendedCount::finite(k);
        }
        rep.targets.push_back(t);
    }
    rep.gamma = gamma_sum(rep);
    return rep;
}

double gamma_sum(const std::vector<ExtendedCount>& e) {
    double s = 0.0;
    for (const auto& x : e)
        s += x.is_infinite() ? 1.0 : 1.0 - 1.0 / x.value();
    return s;
}

double gamma_sum(const RamificationReport& r) {
    std::vector<ExtendedCount> e;
    for (const auto& t : r.targets)
        e.push_back(t.e);
    return gamma_sum(e);
}

RamiAudit audit_theorem_rami(const RamificationReport& r1, const RamificationReport& r2) {
    RamiAudit a;
    a.gamma1 = gamma_sum(r1);
    a.gamma2 = gamma_sum(r2);
    constexpr double tol = 1e-12;
    const bool ok = std::min(a.gamma1, a.gamma2) <= 3.0 + tol ||
                    (std::abs(a.gamma1 - 4.0) <= tol && std::abs(a.gamma2 - 4.0) <= tol);
    a.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return a;
}

TheoremAAudit audit_theorem_A(const RationalFunction& f, const EfSet& ef, const RamificationReport& report,
                              bool completeness_asserted) {
    TheoremAAudit a;
    a.m = f.degree();
    a.q = static_cast<int>(report.targets.size());
    if (ef.cardinality.is_infinite()) {
        a.route = "E_f infinite";
        a.verdict = Verdict::Inapplicable;
        return a;
    }
    for (const auto& t : report.targets)
        for (const auto& c : ef.points)
            if (chordal(t.a, c) <= 1e-8)
                throw DomainError("audit_theorem_A: target " + t.a.to_string() + " lies in E_f");

    const int l = ef.cardinality.value();
    a.ef_count = l;
    const double sum = gamma_sum(report);
    a.gamma = l + sum;
    a.bound = a.m - l + 3;
    a.hypothesis_min = a.m - 2 * l + 3;
    for (const auto& t : report.targets)
        a.omitted += t.e.is_infinite() ? 1 : 0;
    a.omitted += l; // the values of E_f are omitted by every such psi1
    a.omitted_bound = a.m - l + 3;
    a.omitted_ok = a.omitted <= a.omitted_bound;

    if (a.m == 0 || (a.m == 1 && l == 2)) {
        a.route = "entire graph";
        a.route_value = sum;
        a.route_bound = 2.0;
        a.hypothesis_met = true;
    } else if (a.m == 1 && l == 0) {
        a.route = "elliptic (minimal in R^3)";
        a.route_value = sum;
        a.route_bound = 4.0;
        a.hypothesis_met = true;
    } else {
        a.route = "general";
        a.route_value = a.gamma;
        a.route_bound = a.bound;
        a.hypothesis_met = a.q > a.hypothesis_min;
    }
    if (!a.hypothesis_met) {
        a.verdict = Verdict::HypothesisNotMet;
        return a;
    }
    const bool ok = a.route_value <= a.route_bound + 1e-12 && a.omitted_ok;
    a.verdict = ok ? Verdict::Pass : (completeness_asserted ? Verdict::Contradiction : Verdict::Fail);
    return a;
}

DefectReport rational_defect_bound(const RationalFunction& psi) {
    if (psi.is_constant())
        throw std::invalid_argument("rational_defect_bound: psi must be nonconstant");
    DefectReport rep;
    const int d = psi.degree();
    rep.degree = d;
    rep.rh_expected = 2 * d - 2;

    // W = P'Q - PQ' vanishes to order (local degree - 1) at every finite
    // critical point, poles included.
    const Polynomial& p = psi.numerator();
    const Polynomial& q = psi.denominator();
    const Polynomial w1 = p.derivative() * q;
    const Polynomial w2 = p * q.derivative();
    const Polynomial w = (w1 - w2).truncated(1e-13, std::max(w1.norm(), w2.norm()));

    std::vector<std::pair<ExtendedComplex, int>> crit;
    if (w.degree() >= 1)
        for (const auto& r : roots_robust(w))
            crit.emplace_back(ExtendedComplex(r.value), r.multiplicity + 1);
    if (const int k = local_degree(psi, ExtendedComplex::infinity()); k > 1)
        crit.emplace_back(ExtendedComplex::infinity(), k);

    for (const auto& [z, k] : crit) {
        rep.rh_total += k - 1;
        ExtendedComplex v = z.is_infinite() ? psi(z) : ExtendedComplex::from_value(psi.evaluate(z.value()));
        if (v.is_finite() && chordal(v, ExtendedComplex::infinity()) < 1e-7)
            v = ExtendedComplex::infinity();
        auto it = std::find_if(rep.values.begin(), rep.values.end(),
                               [&](const CriticalValue& c) { return chordal(c.a, v) <= 1e-6; });
        if (it == rep.values.end()) {
            rep.values.push_back({v, 1, {}});
            it = rep.values.end() - 1;
        }
        it->critical_points.emplace_back(z, k);
    }
    for (auto& cv : rep.values) {
        int covered = 0, lo = d;
        for (const auto& [z, k] : cv.critical_points) {
            covered += k;
            lo = std::min(lo, k);
        }
        // a preimage that is not critical has local degree 1
        cv.e = covered == d ? lo : 1;
        std::sort(cv.critical_points.begin(), cv.critical_points.end(),
                  [](const auto& x, const auto& y) { return less_point(x.first, y.first); });
        rep.sum += 1.0 - 1.0 / cv.e;
    }
    std::sort(rep.values.begin(), rep.values.end(),
              [](const CriticalValue& x, const CriticalValue& y) { return less_point(x.a, y.a); });
    rep.verdict = rep.sum <= 2.0 + 1e-12 && rep.rh_total == rep.rh_expected ? Verdict::Pass : Verdict::Fail;
    return rep;
}

SharedValueReport shared_values(const RationalFunction& psi, const RationalFunction& psi_hat, const Domain& domain,
                                bool count_omitted) {
    SharedValueReport rep;
    rep.omitted_counted = count_omitted;
    if (psi.approx_equal(psi_hat)) {
        rep.identical = true;
        return rep;
    }
    const auto same_set = [](const std::vector<ExtendedComplex>& x, const std::vector<ExtendedComplex>& y) {
        if (x.size() != y.size())
            return false;
        for (const auto& p : x)
            if (std::none_of(y.begin(), y.end(), [&](const ExtendedComplex& o) { return chordal(p, o) <= 1e-7; }))
                return false;
        return true;
    };
    const auto add_unique = [](std::vector<ExtendedComplex>& v, const ExtendedComplex& p) {
        if (std::none_of(v.begin(), v.end(), [&](const ExtendedComplex& o) { return chordal(p, o) <= 1e-8; }))
            v.push_back(p);
    };

    // Points where psi = psi_hat on the sphere: roots of P Q^ - P^ Q (common
    // poles included), and infinity.
    std::vector<ExtendedComplex> meet;
    const Polynomial c1 = psi.numerator() * psi_hat.denominator();
    const Polynomial c2 = psi_hat.numerator() * psi.denominator();
    const Polynomial cross = (c1 - c2).truncated(1e-13, std::max(c1.norm(), c2.norm()));
    if (cross.degree() >= 1)
        for (const cplx r : simple_roots(cross))
            meet.emplace_back(r);
    const ExtendedComplex at_inf = psi(ExtendedComplex::infinity());
    if (chordal(at_inf, psi_hat(ExtendedComplex::infinity())) <= 1e-9)
        meet.push_back(ExtendedComplex::infinity());

    std::vector<ExtendedComplex> candidates;
    for (const auto& z : meet) {
        if (!in_domain(z, domain))
            continue;
        ExtendedComplex v = z.is_infinite() ? at_inf : ExtendedComplex::from_value(psi.evaluate(z.value()));
        if (v.is_finite() && chordal(v, ExtendedComplex::infinity()) < 1e-9)
            v = ExtendedComplex::infinity();
        add_unique(candidates, v);
    }
    for (const auto& a : candidates) {
        const auto x = preimages(psi, a, domain);
        const auto y = preimages(psi_hat, a, domain);
        if (!x.empty() && same_set(x, y))
            add_unique(rep.shared, a);
    }

    // values omitted by both: images of the points removed from the sphere
    std::vector<ExtendedComplex> removed = domain.punctures;
    if (!domain.contains_infinity() && domain.kind != DomainKind::Disk)
        add_unique(removed, ExtendedComplex::infinity());
    if (domain.kind != DomainKind::Disk) {
        std::vector<ExtendedComplex> images;
        for (const auto& p : removed)
            for (const RationalFunction* g : {&psi, &psi_hat})
                add_unique(images, (*g)(p));
        for (const auto& a : images)
            if (preimages(psi, a, domain).empty() && preimages(psi_hat, a, domain).empty())
                add_unique(rep.both_omitted, a);
    }
    std::sort(rep.shared.begin(), rep.shared.end(), less_point);
    std::sort(rep.both_omitted.begin(), rep.both_omitted.end(), less_point);
    rep.q = static_cast<int>(rep.shared.size()) + (count_omitted ? static_cast<int>(rep.both_omitted.size()) : 0);
    return rep;
}

TheoremBAudit audit_theorem_B(const RationalFunction& f, const EfSet& ef, const SharedValueReport& shared,
                              bool both_complete_asserted) {
    TheoremBAudit b;
    b.m = f.degree();
    b.q = shared.q;
    if (ef.cardinality.is_infinite()) {
        b.route = "E_f infinite";
        b.verdict = Verdict::Inapplicable;
        return b;
    }
    b.ef_count = ef.cardinality.value();
    b.threshold = b.m - b.ef_count + 6;
    if (b.m == 0 || (b.m == 1 && b.ef_count == 2))
        b.route = "entire graph";
    else if (b.m == 1 && b.ef_count == 0)
        b.route = "elliptic (minimal in R^3)";
    else
        b.route = "general";
    if (shared.identical) {
        b.route = "identical";
        b.verdict = Verdict::Inapplicable;
        return b;
    }
    if (b.q >= b.threshold)
        b.verdict = both_complete_asserted ? Verdict::Contradiction : Verdict::Fail;
    return b;
}

SchwarzResult schwarz_check(const Meromorphic& f, const SchwarzCheckConfig& cfg, Exec exec) {
    if (!(cfg.radius > 0.0) || cfg.nr < 1 || cfg.nt < 1)
        throw std::invalid_argument("schwarz_check: bad configuration");
    const double R = cfg.radius;
    const int n = cfg.nr * cfg.nt;
    std::vector<double> ratio(static_cast<std::size_t>(n));
    std::vector<cplx> node(static_cast<std::size_t>(n));
    for_each_index(n, exec, [&](int k) {
        const double r = R * (k / cfg.nt) / cfg.nr;
        const cplx z = std::polar(r, 2.0 * std::numbers::pi * (k % cfg.nt) / cfg.nt);
        const cplx w = f.value(z);
        if (!finite(w) || std::abs(w) >= 1.0)
            throw DomainError("schwarz_check: f(" + ExtendedComplex(z).to_string() + ") leaves the unit disk");
        node[static_cast<std::size_t>(k)] = z;
        ratio[static_cast<std::size_t>(k)] =
            std::abs(f.derivative(z)) * 2.0 / (1.0 - std::norm(w)) * (R * R - std::norm(z)) / (2.0 * R);
    });
    SchwarzResult out;
    out.samples = n;
    for (int k = 0; k < n; ++k)
        if (ratio[static_cast<std::size_t>(k)] > out.max_ratio) {
            out.max_ratio = ratio[static_cast<std::size_t>(k)];
            out.argmax = node[static_cast<std::size_t>(k)];
        }
    return out;
}

void NegCurvatureProbeConfig::validate() const {
    const int q = static_cast<int>(targets.size());
    if (q <= 4)
        throw std::invalid_argument("neg_curvature_probe: needs more than four targets");
    if (!(q - 4 > q * eps && q * eps > 0.0))
        throw std::invalid_argument("neg_curvature_probe: eps outside the window q - 4 > q eps > 0");
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < i; ++j)
            if (chordal(targets[i], targets[j]) <= 1e-9)
                throw std::invalid_argument("neg_curvature_probe: coincident targets");
    if (f.is_constant() || f_hat.is_constant() || f.approx_equal(f_hat))
        throw std::invalid_argument("neg_curvature_probe: f and f_hat must be distinct and nonconstant");
}

namespace {

// |f'| / (1 + |f|^2), through 1/f where |f| > 1
struct SphereDensity {
    RationalFunction f, df, inv, dinv;
    explicit SphereDensity(const RationalFunction& g)
        : f(g), df(g.derivative()), inv(RationalFunction(g.denominator(), g.numerator())), dinv(inv.derivative()) {}
    double operator()(cplx z) const {
        const cplx v = f.evaluate(z);
        if (finite(v) && std::abs(v) <= 1.0)
            return std::abs(df.evaluate(z)) / (1.0 + std::norm(v));
        const cplx u = inv.evaluate(z);
        return std::abs(dinv.evaluate(z)) / (1.0 + std::norm(u));
    }
};

double log_mu2(const NegCurvatureProbeConfig& cfg, const SphereDensity& sf, const SphereDensity& sh, double a0,
               cplx z) {
    const ExtendedComplex fz = cfg.f(ExtendedComplex(z));
    const ExtendedComplex hz = cfg.f_hat(ExtendedComplex(z));
    double acc = 2.0 * std::log(chordal(fz, hz));
    for (const ExtendedComplex* v : {&fz, &hz})
        for (const auto& a : cfg.targets) {
            const double s = chordal(*v, a);
            acc += (-1.0 + cfg.eps) * (std::log(s) + std::log(std::log(a0 / (s * s))));
        }
    acc += std::log(sf(z)) + std::log(sh(z));
    return acc;
}

} // namespace

double dtau_density(const NegCurvatureProbeConfig& cfg, double a0, cplx z) {
    const double l = log_mu2(cfg, SphereDensity(cfg.f), SphereDensity(cfg.f_hat), a0, z);
    return std::isnan(l) ? 0.0 : std::exp(l);
}

NegCurvatureReport neg_curvature_probe(const NegCurvatureProbeConfig& cfg, Exec exec) {
    cfg.validate();
    const SphereDensity sf(cfg.f), sh(cfg.f_hat);
    const int n = cfg.grid.size();
    const int q = static_cast<int>(cfg.targets.size());

    NegCurvatureReport rep;
    double smax = 0.0;
    for (int k = 0; k < n; ++k) {
        const cplx z = cfg.grid.node(k);
        if (!cfg.domain.contains(z, 1e-8))
            continue;
        for (const RationalFunction* g : {&cfg.f, &cfg.f_hat})
            for (const auto& a : cfg.targets) {
                const double s = chordal((*g)(ExtendedComplex(z)), a);
                smax = std::max(smax, s * s);
            }
    }
    // log factors must dominate: log(a0 / s^2) >= 2 (1 - eps) q / ((1 - eps) q - 4), plus a margin
    const double need = 1.0 + 2.0 * (1.0 - cfg.eps) * q / ((1.0 - cfg.eps) * q - 4.0);
    rep.a0 = 2.0 * std::max(smax, 1e-300);
    while (std::log(rep.a0 / std::max(smax, 1e-300)) < need)
        rep.a0 *= 2.0;

    // points where log mu^2 is singular or the metric vanishes
    std::vector<cplx> special;
    const auto add_roots = [&](const Polynomial& p) {
        if (p.degree() >= 1)
            for (const cplx r : simple_roots(p))
                special.push_back(r);
    };
    for (const RationalFunction* g : {&cfg.f, &cfg.f_hat}) {
        for (const auto& a : cfg.targets)
            add_roots(a.is_infinite() ? g->denominator() : shifted_numerator(*g, a.value()));
        add_roots(g->derivative().numerator());
    }
    add_roots(cfg.f.numerator() * cfg.f_hat.denominator() - cfg.f_hat.numerator() * cfg.f.denominator());

    // mu^2 is only defined up to a constant factor, which leaves the sign of
    // the curvature alone; the thresholds are taken relative to the grid max.
    const double a0 = rep.a0;
    std::vector<double> l0(static_cast<std::size_t>(n), -INFINITY), dist(static_cast<std::size_t>(n), 1.0);
    for_each_index(n, exec, [&](int idx) {
        const cplx z = cfg.grid.node(idx);
        double d = 1.0;
        for (const cplx s : special)
            d = std::min(d, std::abs(z - s));
        dist[static_cast<std::size_t>(idx)] = d;
        if (!cfg.domain.contains(z, 1e-8))
            return;
        const double l = log_mu2(cfg, sf, sh, a0, z);
        if (std::isfinite(l))
            l0[static_cast<std::size_t>(idx)] = l;
    });
    double lmax = -INFINITY;
    for (const double l : l0)
        lmax = std::max(lmax, l);
    rep.mu2_scale = std::exp(lmax);

    struct Sample {
        bool counted = false;
        double k = 0.0;
    };
    std::vector<Sample> out(static_cast<std::size_t>(n));
    for_each_index(n, exec, [&](int idx) {
        const cplx z = cfg.grid.node(idx);
        const double d = dist[static_cast<std::size_t>(idx)];
        const double l = l0[static_cast<std::size_t>(idx)];
        if (d < 1e-6 || !(l - lmax > std::log(1e-6)))
            return;
        const double h = 1e-3 * (1.0 + std::abs(z)) * std::min(1.0, 0.5 * d);
        double lap = -4.0 * l;
        for (const cplx e : {cplx{h, 0.0}, cplx{-h, 0.0}, cplx{0.0, h}, cplx{0.0, -h}})
            lap += log_mu2(cfg, sf, sh, a0, z + e);
        lap /= h * h;
        // K = -Laplacian(log mu) / mu^2 with log mu = (log mu^2) / 2, in units of the scaled metric
        out[static_cast<std::size_t>(idx)] = {true, -0.5 * lap / std::exp(l - lmax)};
    });
    for (int k = 0; k < n; ++k) {
        const Sample& s = out[static_cast<std::size_t>(k)];
        if (!s.counted)
            continue;
        ++rep.samples;
        rep.negative += s.k < 0.0 ? 1 : 0;
        if (s.k > rep.max_curvature) {
            rep.max_curvature = s.k;
            rep.argmax = cfg.grid.node(k);
        }
    }

    // continuity at the preimages of the targets inside the grid window
    double lo_re = INFINITY, hi_re = -INFINITY, lo_im = INFINITY, hi_im = -INFINITY;
    for (int k = 0; k < n; ++k) {
        const cplx z = cfg.grid.node(k);
        lo_re = std::min(lo_re, z.real());
        hi_re = std::max(hi_re, z.real());
        lo_im = std::min(lo_im, z.imag());
        hi_im = std::max(hi_im, z.imag());
    }
    for (const auto& a : cfg.targets)
        for (const auto& [p, mult] : fiber(cfg.f, a)) {
            if (p.is_infinite() || !in_domain(p, cfg.domain))
                continue;
            const cplx z0 = p.value();
            if (z0.real() < lo_re || z0.real() > hi_re || z0.imag() < lo_im || z0.imag() > hi_im)
                continue;
            ShrinkSequence seq;
            seq.point = z0;
            seq.shared = chordal(cfg.f_hat(p), a) <= 1e-9;
            const double floor = 1e-15 * (1.0 + std::abs(z0));
            for (double r = 1e-2; r >= floor || (z0 == 0.0 && r > 1e-250); r *= 0.1) {
                double m = 0.0;
                for (int t = 0; t < 16; ++t)
                    m = std::max(m, std::exp(log_mu2(cfg, sf, sh, a0,
                                                     z0 + std::polar(r, 2.0 * std::numbers::pi * (t + 0.5) / 16)) -
                                             lmax));
                seq.radii.push_back(r);
                seq.mu2.push_back(m);
                if (m < 1e-8)
                    break;
            }
            seq.decreasing = seq.mu2.size() >= 2;
            for (std::size_t i = 1; i < seq.mu2.size(); ++i)
                seq.decreasing = seq.decreasing && seq.mu2[i] < seq.mu2[i - 1];
            seq.below = !seq.mu2.empty() && seq.mu2.back() < 1e-8;
            rep.shrink.push_back(std::move(seq));
        }
    std::sort(rep.shrink.begin(), rep.shrink.end(), [](const ShrinkSequence& x, const ShrinkSequence& y) {
        return less_point(ExtendedComplex(x.point), ExtendedComplex(y.point));
    });

    bool ok = rep.negative == rep.samples;
    for (const auto& s : rep.shrink)
        if (s.shared)
            ok = ok && s.decreasing && s.below;
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return rep;
}

AuxMetricReport aux_metric_bound(const WeierstrassData& data, const Grid& grid, Exec exec) {
    if (!data.relation())
        throw DomainError("aux_metric_bound: data carry no relation psi2 = f(psi1)");
    if (data.relation()->is_constant())
        throw DomainError("aux_metric_bound: inapplicable, the relation is constant");
    const EfSet ef = ef_solve(*data.relation());
    if (ef.kind != EfKind::FinitePoints || ef.points.empty())
        throw DomainError("aux_metric_bound: inapplicable, E_f must be finite and nonempty");

    AuxMetricReport rep;
    std::vector<ExtendedComplex> epts = ef.points;
    std::optional<WeierstrassData> moved;
    if (!epts.back().is_infinite()) {
        const cplx c = epts.front().value();
        const MobiusTransform s(0.0, 1.0, -1.0, c);
        rep.normalization = s;
        moved = lorentz_action(data, s);
        for (auto& p : epts)
            p = s(p);
    }
    const WeierstrassData& d = moved ? *moved : data;
    // the normalized relation fixes infinity only up to rounding in its top coefficient
    const RationalFunction& moved_f = *d.relation();
    const double fscale = std::max(moved_f.numerator().norm(), moved_f.denominator().norm());
    const RationalFunction f(moved_f.numerator(), moved_f.denominator().truncated(1e-12, fscale));
    const Polynomial& P = f.numerator();
    const Polynomial& Q = f.denominator();
    if (P.degree() <= Q.degree())
        throw NumericError("aux_metric_bound: normalization failed to fix infinity");
    rep.m = f.degree();
    std::vector<cplx> cs;
    for (const auto& p : epts)
        if (p.is_finite())
            cs.push_back(p.value());
    rep.l = static_cast<int>(cs.size());
    std::vector<Root> bs;
    if (Q.degree() >= 1)
        bs = roots_robust(Q);
    rep.s = static_cast<int>(bs.size());
    const double half = 0.5 * (rep.m - rep.l);

    // log of |f(z) - conj z| prod|z - c|^-1 prod|z - b|^r (1 + |z|^2)^-(m-l)/2
    const auto log_ratio = [&](cplx z) {
        double acc = std::log(std::abs(f.evaluate(z) - std::conj(z)));
        for (const cplx c : cs)
            acc -= std::log(std::abs(z - c));
        for (const auto& b : bs)
            acc += b.multiplicity * std::log(std::abs(z - b.value));
        acc -= half * std::log1p(std::norm(z));
        return std::isnan(acc) ? -INFINITY : acc;
    };
    const auto on_sphere = [](double th, double ph) { return std::polar(std::tan(0.5 * th), ph); };
    constexpr int nth = 181, nph = 360;
    constexpr double kThMin = 1e-9;
    const double pi = std::numbers::pi;
    std::vector<double> val(static_cast<std::size_t>(nth * nph));
    for_each_index(nth * nph, exec, [&](int k) {
        const double th = pi * (k / nph + 1) / (nth + 1);
        const double ph = 2.0 * pi * (k % nph) / nph;
        val[static_cast<std::size_t>(k)] = log_ratio(on_sphere(th, ph));
    });
    std::vector<int> order(val.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = static_cast<int>(k);
    std::partial_sort(order.begin(), order.begin() + 16, order.end(), [&](int x, int y) {
        return val[static_cast<std::size_t>(x)] > val[static_cast<std::size_t>(y)] ||
               (val[static_cast<std::size_t>(x)] == val[static_cast<std::size_t>(y)] && x < y);
    });
    double best = val[static_cast<std::size_t>(order[0])];
    for (int i = 0; i < 16; ++i) {
        const int k = order[static_cast<std::size_t>(i)];
        double th = pi * (k / nph + 1) / (nth + 1);
        double ph = 2.0 * pi * (k % nph) / nph;
        double v = val[static_cast<std::size_t>(k)];
        // compass refinement in (theta, phi)
        for (double step = pi / (nth + 1); step > 1e-13; step *= 0.5) {
            bool moved_here = true;
            for (int guard = 0; moved_here && guard < 200; ++guard) {
                moved_here = false;
                for (int dir = 0; dir < 8; ++dir) {
                    const double t2 = std::clamp(th + step * std::cos(dir * pi / 4), kThMin, pi - kThMin);
                    const double p2 = ph + step * std::sin(dir * pi / 4);
                    const double v2 = log_ratio(on_sphere(t2, p2));
                    if (v2 > v) {
                        th = t2;
                        ph = p2;
                        v = v2;
                        moved_here = true;
                    }
                }
            }
        }
        best = std::max(best, v);
    }
    rep.c = std::exp(best) * (1.0 + 1e-9);

    const int n = grid.size();
    struct Out {
        bool used = false;
        double residual = 0.0;
    };
    std::vector<Out> out(static_cast<std::size_t>(n));
    const double logc2 = 2.0 * std::log(rep.c);
    for_each_index(n, exec, [&](int k) {
        const cplx z = grid.node(k);
        if (!d.domain().contains(z))
            return;
        const cplx psi = d.psi1().value(z);
        const cplx g = d.dh().coefficient.value(z);
        if (!finite(psi) || !finite(g) || g == 0.0)
            return;
        const cplx fpsi = f.evaluate(psi);
        if (!finite(fpsi))
            return;
        const double lds = 2.0 * std::log(std::abs(fpsi - std::conj(psi)));
        double lr = logc2 + 2.0 * half * std::log1p(std::norm(psi));
        for (const cplx c : cs)
            lr += 2.0 * std::log(std::abs(psi - c));
        for (const auto& b : bs)
            lr -= 2.0 * b.multiplicity * std::log(std::abs(psi - b.value));
        // the common |dh|^2 factor cancels
        if (!std::isfinite(lds) || !std::isfinite(lr))
            return;
        out[static_cast<std::size_t>(k)] = {true, -std::expm1(lds - lr)};
    });
    for (int k = 0; k < n; ++k) {
        const Out& o = out[static_cast<std::size_t>(k)];
        if (!o.used)
            continue;
        ++rep.samples;
        if (o.residual < rep.min_residual) {
            rep.min_residual = o.residual;
            rep.argmin = grid.node(k);
        }
    }
    rep.verdict = rep.min_residual >= -1e-9 ? Verdict::Pass : Verdict::Fail;
    return rep;
}

} // namespace stasurf
