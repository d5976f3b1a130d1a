#include "stasurf/weierstrass.hpp"

#include "stasurf/efset.hpp"
#include "stasurf/errors.hpp"
#include "stasurf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace stasurf {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string at(cplx z) { return ExtendedComplex::from_value(z).to_string(); }

double segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

PhiForms phi_from(cplx p1, cplx p2, cplx g) {
    return {(p1 + p2) * g, -kI * (p1 - p2) * g, (1.0 - p1 * p2) * g, (1.0 + p1 * p2) * g};
}

// Raw integrand, no domain checks.
PhiForms phi_raw(const WeierstrassData& d, cplx z) {
    if (d.is_rational()) {
        const auto& r = d.phi_rational();
        return {r[0].evaluate(z), r[1].evaluate(z), r[2].evaluate(z), r[3].evaluate(z)};
    }
    return phi_from(d.psi1().value(z), d.psi2().value(z), d.dh().coefficient.value(z));
}

bool all_finite(const PhiForms& p) {
    return std::all_of(p.begin(), p.end(), [](cplx c) { return finite(c); });
}

Meromorphic product(const Meromorphic& a, const Meromorphic& b) {
    if (a.is_rational() && b.is_rational())
        return Meromorphic(a.rational() * b.rational());
    return Meromorphic([a, b](cplx z) { return a.value(z) * b.value(z); },
                       [a, b](cplx z) { return a.derivative(z) * b.value(z) + a.value(z) * b.derivative(z); });
}

// S o psi, with psi = infinity sent to a / c.
Meromorphic mobius_of(const MobiusTransform& s, const Meromorphic& psi) {
    if (psi.is_rational())
        return Meromorphic(RationalFunction::from_mobius(s).compose(psi.rational()));
    const auto value = [s, psi](cplx z) {
        const cplx w = psi.value(z);
        if (!finite(w))
            return s.c() == 0.0 ? cplx{INFINITY, 0.0} : s.a() / s.c();
        return (s.a() * w + s.b()) / (s.c() * w + s.d());
    };
    const auto deriv = [s, psi](cplx z) {
        const cplx den = s.c() * psi.value(z) + s.d();
        return psi.derivative(z) / (den * den);
    };
    return Meromorphic(value, deriv);
}

// c psi + d
Meromorphic affine_of(cplx c, cplx d, const Meromorphic& psi) {
    if (psi.is_rational())
        return Meromorphic(RationalFunction::constant(c) * psi.rational() + RationalFunction::constant(d));
    return Meromorphic([c, d, psi](cplx z) { return c * psi.value(z) + d; },
                       [c, psi](cplx z) { return c * psi.derivative(z); });
}

// The image of the disk is open and connected: it meets the curve iff
// psi1 takes values on both sides of it (or on it).
std::optional<ExtendedComplex> curve_hit_in_disk(const RationalFunction& psi, const EfLocus& c, double radius) {
    const auto side = [&](const ExtendedComplex& w) {
        if (w.is_infinite())
            return c.is_line ? 0.0 : 1.0;
        const cplx v = w.value();
        const double s = c.is_line ? std::imag((v - c.center) * std::conj(c.direction))
                                   : (std::abs(v - c.center) - c.radius) / (1.0 + c.radius);
        return std::abs(s) <= 1e-12 * (1.0 + std::abs(v)) ? 0.0 : s;
    };
    constexpr int nr = 200, nt = 400;
    int sign = 0;
    for (int i = 0; i <= nr; ++i)
        for (int j = 0; j < (i == 0 ? 1 : nt); ++j) {
            const cplx z = std::polar(radius * (1.0 - 1e-12) * i / nr, 2.0 * std::numbers::pi * j / nt);
            const double s = side(psi(ExtendedComplex(z)));
            const int sg = s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
            if (sg == 0 || (sign != 0 && sg != sign))
                return ExtendedComplex(z);
            sign = sg;
        }
    return std::nullopt;
}

int pole_order(const RationalFunction& f, const ExtendedComplex& p) {
    if (f.is_zero())
        return 0;
    return std::max(0, -divisor_at(f, p));
}

// Order of the 1-form g dz at p; at infinity dz has a double pole.
int form_order(const RationalFunction& g, const ExtendedComplex& p) {
    const int k = divisor_at(g, p);
    return p.is_infinite() ? k - 2 : k;
}

} // namespace

cplx null_residual(const PhiForms& p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - p[3] * p[3]; }

double spacelike_norm(const PhiForms& p) {
    return std::norm(p[0]) + std::norm(p[1]) + std::norm(p[2]) - std::norm(p[3]);
}

WeierstrassData::WeierstrassData(Meromorphic psi1, Meromorphic psi2, Holomorphic1Form dh, Domain domain,
                                 std::optional<RationalFunction> relation)
    : psi1_(std::move(psi1)), psi2_(std::move(psi2)), dh_(std::move(dh)), domain_(std::move(domain)),
      relation_(std::move(relation)) {
    domain_.validate();
    if (psi1_.is_rational() && psi2_.is_rational() && dh_.coefficient.is_rational()) {
        const RationalFunction& p1 = psi1_.rational();
        const RationalFunction& p2 = psi2_.rational();
        const RationalFunction& g = dh_.coefficient.rational();
        const RationalFunction one = RationalFunction::constant(1.0);
        const RationalFunction pp = p1 * p2;
        phi_ = std::array<RationalFunction, 4>{(p1 + p2) * g, RationalFunction::constant(-kI) * ((p1 - p2) * g),
                                               (one - pp) * g, (one + pp) * g};
        for (const auto& r : *phi_)
            for (const auto& p : r.poles()) {
                const bool seen = std::any_of(poles_.begin(), poles_.end(),
                                              [&](cplx q) { return std::abs(q - p.value) <= 1e-9 * (1.0 + std::abs(q)); });
                if (!seen)
                    poles_.push_back(p.value);
            }
    }
}

WeierstrassData WeierstrassData::direct(Meromorphic psi1, Meromorphic psi2, Holomorphic1Form dh, Domain domain) {
    return {std::move(psi1), std::move(psi2), std::move(dh), std::move(domain), std::nullopt};
}

WeierstrassData WeierstrassData::related(Meromorphic psi1, RationalFunction f, Holomorphic1Form dh, Domain domain) {
    Meromorphic psi2 = psi1.is_rational()
                           ? Meromorphic(f.compose(psi1.rational()))
                           : Meromorphic(
                                 [f, psi1](cplx z) {
                                     const cplx w = psi1.value(z);
                                     if (!finite(w)) {
                                         const ExtendedComplex v = f(ExtendedComplex::infinity());
                                         return v.is_infinite() ? cplx{INFINITY, 0.0} : v.value();
                                     }
                                     return f.evaluate(w);
                                 },
                                 [df = f.derivative(), psi1](cplx z) { return df.evaluate(psi1.value(z)) * psi1.derivative(z); });
    return {std::move(psi1), std::move(psi2), std::move(dh), std::move(domain), std::move(f)};
}

const std::array<RationalFunction, 4>& WeierstrassData::phi_rational() const {
    if (!phi_)
        throw std::logic_error("WeierstrassData: black-box data have no rational phi forms");
    return *phi_;
}

PhiForms phi_forms(const WeierstrassData& data, cplx z) {
    if (!data.domain().contains(z))
        throw DomainError("phi_forms: " + at(z) + " lies outside the domain");
    const PhiForms p = phi_raw(data, z);
    if (!all_finite(p))
        throw DomainError("phi_forms: pole of the integrand at " + at(z));
    return p;
}

PhiForms integrate_phi(const WeierstrassData& data, cplx a, cplx b) {
    const Domain& dom = data.domain();
    if (!dom.contains(a) || !dom.contains(b))
        throw DomainError("integrate_phi: segment " + at(a) + " -> " + at(b) + " leaves the domain");
    for (const auto& p : dom.punctures)
        if (p.is_finite() && segment_distance(p.value(), a, b) < kPoleClearance)
            throw DomainError("integrate_phi: segment passes puncture " + p.to_string());
    for (const cplx p : data.integrand_poles())
        if (segment_distance(p, a, b) < kPoleClearance)
            throw DomainError("integrate_phi: segment passes pole " + at(p));
    const PhiForms out = integrate_segment<PhiForms>([&](cplx z) { return phi_raw(data, z); }, a, b);
    if (!all_finite(out))
        throw DomainError("integrate_phi: integrand not finite on " + at(a) + " -> " + at(b));
    return out;
}

ImmersionSample immerse(const WeierstrassData& data, const Polyline& path) {
    const auto& v = path.vertices;
    if (v.empty())
        throw std::invalid_argument("immerse: empty path");
    ImmersionSample s;
    s.z = v.back();
    for (std::size_t k = 1; k < v.size(); ++k) {
        const PhiForms d = integrate_phi(data, v[k - 1], v[k]);
        for (int i = 0; i < 4; ++i)
            s.x[i] += 2.0 * d[i].real();
    }
    s.lambda2 = induced_metric(data, s.z);
    return s;
}

ImmersionSample immerse(const WeierstrassData& data, cplx z, cplx base) { return immerse(data, Polyline{{base, z}}); }

double induced_metric(const WeierstrassData& data, cplx z) {
    const cplx p1 = data.psi1().value(z);
    const cplx p2 = data.psi2().value(z);
    const cplx g = data.dh().coefficient.value(z);
    if (finite(p1) && finite(p2) && finite(g))
        return 2.0 * std::norm(p1 - std::conj(p2)) * std::norm(g);
    // removable point: a pole of psi against a zero of g
    const PhiForms p = phi_raw(data, z);
    if (!all_finite(p))
        throw DomainError("induced_metric: pole of the integrand at " + at(z));
    return spacelike_norm(p);
}

std::pair<ExtendedComplex, ExtendedComplex> gauss_from_phi(const PhiForms& phi) {
    double scale = 0.0;
    for (const cplx c : phi)
        scale = std::max(scale, std::abs(c));
    if (scale == 0.0 || !std::isfinite(scale))
        throw DomainError("gauss_from_phi: phi must be a finite nonzero vector");
    if (std::abs(null_residual(phi)) > 1e-10 * scale * scale)
        throw DomainError("gauss_from_phi: phi is not null");
    const cplx s = phi[2] + phi[3];
    const cplx p = phi[0] + kI * phi[1];
    const cplx m = phi[0] - kI * phi[1];
    const double tiny = 1e-12 * scale;
    if (std::abs(s) > tiny)
        return {ExtendedComplex::from_value(p / s), ExtendedComplex::from_value(m / s)};
    const cplx t = phi[3] - phi[2];
    if (std::abs(m) > tiny && std::abs(m) >= std::abs(p))
        return {ExtendedComplex::from_value(t / m), ExtendedComplex::infinity()};
    if (std::abs(p) > tiny)
        return {ExtendedComplex::infinity(), ExtendedComplex::from_value(t / p)};
    return {ExtendedComplex::infinity(), ExtendedComplex::infinity()};
}

PhiForms to_minimal_r4(const PhiForms& phi) { return {phi[0], phi[1], phi[2], kI * phi[3]}; }

WeierstrassData lorentz_action(const WeierstrassData& data, const MobiusTransform& s) {
    const MobiusTransform sb = s.conj();
    Meromorphic psi1 = mobius_of(s, data.psi1());
    Meromorphic psi2 = mobius_of(sb, data.psi2());
    const Meromorphic factor = product(affine_of(s.c(), s.d(), data.psi1()), affine_of(sb.c(), sb.d(), data.psi2()));
    Holomorphic1Form dh(product(factor, data.dh().coefficient));
    std::optional<RationalFunction> f;
    if (data.relation())
        f = RationalFunction::from_mobius(sb).compose(
            data.relation()->compose(RationalFunction::from_mobius(s.inverse())));
    WeierstrassData out(std::move(psi1), std::move(psi2), std::move(dh), data.domain(), std::move(f));
    out.completeness_asserted = data.completeness_asserted;
    return out;
}

RegularityReport check_regularity(const WeierstrassData& data, const Grid& grid, Exec exec) {
    RegularityReport rep;
    const Domain& dom = data.domain();

    // (1) sampled: chordal(psi1, conj psi2) over the nodes inside the domain
    const int n = grid.size();
    std::vector<double> dist(static_cast<std::size_t>(n), -1.0);
    for_each_index(n, exec, [&](int k) {
        const cplx z = grid.node(k);
        if (!dom.contains(z))
            return;
        dist[static_cast<std::size_t>(k)] = chordal(data.psi1()(z), data.psi2()(z).conj());
    });
    for (int k = 0; k < n; ++k) {
        const double d = dist[static_cast<std::size_t>(k)];
        if (d < 0.0)
            continue;
        ++rep.sampled;
        if (d < rep.min_chordal) {
            rep.min_chordal = d;
            rep.argmin = grid.node(k);
        }
    }
    if (rep.sampled > 0 && rep.min_chordal <= kRegularityTolerance) {
        rep.condition1 = Verdict::Fail;
        rep.issues.push_back("condition (1): psi1 = conj(psi2) at " + at(rep.argmin));
    }

    std::vector<ExtendedComplex> in_domain;
    const auto inside = [&](const ExtendedComplex& p) {
        return p.is_infinite() ? dom.contains_infinity() : dom.contains(p.value());
    };

    const bool rational = data.psi1().is_rational() && data.psi2().is_rational();
    if (rational) {
        const RationalFunction& p1 = data.psi1().rational();
        const RationalFunction& p2 = data.psi2().rational();
        std::vector<ExtendedComplex> common;
        if (!p1.is_zero() && !p2.is_zero()) {
            for (const auto& e : divisor(p1))
                if (e.order < 0 && divisor_at(p2, e.point) < 0 && inside(e.point))
                    common.push_back(e.point);
        }
        for (const auto& p : common) {
            rep.condition1 = Verdict::Fail;
            rep.issues.push_back("condition (1): psi1 and psi2 share a pole at " + p.to_string());
        }
    }

    // psi2 = f(psi1) with psi1 hitting E_f
    if (data.relation() && data.psi1().is_rational()) {
        const RationalFunction& p1 = data.psi1().rational();
        const EfSet ef = ef_solve(*data.relation());
        if (ef.kind == EfKind::Curve && !p1.is_constant()) {
            if (dom.kind != DomainKind::Disk || !ef.locus) {
                rep.condition1 = Verdict::Fail;
                rep.issues.push_back("condition (1): E_f is a curve and psi1 is nonconstant, so psi1 meets it");
            } else if (const auto hit = curve_hit_in_disk(p1, *ef.locus, dom.radius)) {
                rep.condition1 = Verdict::Fail;
                rep.issues.push_back("condition (1): psi1 meets the curve E_f near " + hit->to_string());
            }
        }
        for (const auto& c : ef.points) {
            std::vector<ExtendedComplex> pre;
            if (p1.is_constant()) {
                if (approx_equal(p1(ExtendedComplex(0.0)), c))
                    pre.push_back(ExtendedComplex(0.0));
            } else {
                const Polynomial h = c.is_infinite() ? p1.denominator()
                                                     : p1.numerator() - Polynomial::constant(c.value()) * p1.denominator();
                if (h.degree() >= 1)
                    for (const cplx r : simple_roots(h))
                        pre.push_back(ExtendedComplex(r));
                if (dom.contains_infinity() && approx_equal(p1(ExtendedComplex::infinity()), c))
                    pre.push_back(ExtendedComplex::infinity());
            }
            for (const auto& z : pre)
                if (inside(z)) {
                    rep.condition1 = Verdict::Fail;
                    rep.issues.push_back("condition (1): psi1(" + z.to_string() + ") = " + c.to_string() +
                                         " lies in E_f");
                }
        }
    }

    // (2) exact divisor matching
    if (rational && data.dh().coefficient.is_rational()) {
        const RationalFunction& p1 = data.psi1().rational();
        const RationalFunction& p2 = data.psi2().rational();
        const RationalFunction& g = data.dh().coefficient.rational();
        if (g.is_zero()) {
            rep.condition2 = Verdict::Fail;
            rep.issues.push_back("condition (2): dh vanishes identically");
        } else {
            std::vector<ExtendedComplex> pts;
            const auto add = [&](const ExtendedComplex& p) {
                if (!inside(p))
                    return;
                for (const auto& q : pts)
                    if (approx_equal(p, q, 1e-9))
                        return;
                pts.push_back(p);
            };
            for (const auto& e : divisor(g))
                add(e.point);
            for (const RationalFunction* f : {&p1, &p2})
                if (!f->is_zero())
                    for (const auto& e : divisor(*f))
                        if (e.order < 0)
                            add(e.point);
            if (dom.contains_infinity())
                add(ExtendedComplex::infinity());
            std::sort(pts.begin(), pts.end(), [](const ExtendedComplex& a, const ExtendedComplex& b) {
                if (a.is_infinite() != b.is_infinite())
                    return b.is_infinite();
                if (a.is_infinite())
                    return false;
                const cplx x = a.value(), y = b.value();
                return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
            });
            for (const auto& p : pts) {
                const int k1 = pole_order(p1, p);
                const int k2 = pole_order(p2, p);
                const int want = std::max(k1, k2);
                const int have = form_order(g, p);
                if (k1 > 0 && k2 > 0 && k1 != k2)
                    rep.issues.push_back("condition (2): psi1 and psi2 have poles of orders " + std::to_string(k1) +
                                         " and " + std::to_string(k2) + " at " + p.to_string() +
                                         "; matched against the larger");
                if (have != want) {
                    rep.condition2 = Verdict::Fail;
                    rep.issues.push_back("condition (2): dh has order " + std::to_string(have) + " at " +
                                         p.to_string() + " where psi1, psi2 have pole order " + std::to_string(want));
                }
            }
        }
    } else {
        rep.condition2 = Verdict::Inapplicable;
    }

    if (rep.condition1 == Verdict::Fail || rep.condition2 == Verdict::Fail)
        rep.verdict = Verdict::Fail;
    else
        rep.verdict = Verdict::Pass;
    return rep;
}

PeriodReport check_periods(const WeierstrassData& data, const std::vector<Contour>& loops) {
    PeriodReport rep;
    const Meromorphic& g = data.dh().coefficient;
    const Meromorphic a = product(data.psi1(), g);
    const Meromorphic b = product(data.psi2(), g);
    const Meromorphic c = product(product(data.psi1(), data.psi2()), g);
    const auto residuals = [](cplx i1, cplx i2, cplx i3, cplx i4) {
        return std::array<double, 3>{std::abs(i1 + std::conj(i2)), std::abs(i3.real()), std::abs(i4.real())};
    };
    for (const auto& loop : loops) {
        LoopPeriods lp{loop, std::nullopt, {}, Verdict::Pass};
        lp.quadrature = residuals(contour_integral(a, loop), contour_integral(b, loop), contour_integral(g, loop),
                                  contour_integral(c, loop));
        if (a.is_rational() && b.is_rational() && c.is_rational() && g.is_rational())
            lp.exact = residuals(residue_integral(a.rational(), loop), residue_integral(b.rational(), loop),
                                 residue_integral(g.rational(), loop), residue_integral(c.rational(), loop));
        const auto& r = lp.exact ? *lp.exact : lp.quadrature;
        if (std::any_of(r.begin(), r.end(), [](double v) { return !(v < kPeriodTolerance); })) {
            lp.verdict = Verdict::Fail;
            rep.verdict = Verdict::Fail;
        }
        rep.loops.push_back(std::move(lp));
    }
    return rep;
}

CompletenessProbe completeness_probe(const WeierstrassData& data, const std::vector<Polyline>& rays, double cutoff) {
    CompletenessProbe out;
    out.cutoff = cutoff;
    const auto density = [&](cplx z) { return cplx{std::sqrt(std::max(0.0, induced_metric(data, z)))}; };
    for (const auto& ray : rays) {
        double len = 0.0;
        for (std::size_t k = 1; k < ray.vertices.size(); ++k) {
            const cplx a = ray.vertices[k - 1], b = ray.vertices[k];
            if (a == b)
                continue;
            const cplx i = integrate_segment<cplx>(density, a, b, 1e-10, 1e-14);
            len += (i * std::abs(b - a) / (b - a)).real();
        }
        out.lengths.push_back(len);
        out.exceeds.push_back(len > cutoff);
        out.all_exceed = out.all_exceed && len > cutoff;
    }
    return out;
}

} // namespace stasurf
