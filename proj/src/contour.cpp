#include "stasurf/contour.hpp"

#include "stasurf/errors.hpp"
#include "stasurf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace stasurf {

namespace {

constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

double segment_distance(cplx a, cplx b, cplx z) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(z - a);
    const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

void require_clearance(const RationalFunction& f, const Contour& c) {
    for (const auto& p : f.poles())
        if (distance_to_contour(c, p.value) < kPoleClearance)
            throw DomainError("pole at " + ExtendedComplex(p.value).to_string() + " lies on the contour");
}

} // namespace

double distance_to_contour(const Contour& c, cplx z) {
    if (const auto* circ = std::get_if<Circle>(&c))
        return std::abs(std::abs(z - circ->center) - circ->radius);
    const auto& v = std::get<Polyline>(c).vertices;
    if (v.empty())
        return std::numeric_limits<double>::infinity();
    double d = std::abs(z - v.front());
    for (std::size_t k = 1; k < v.size(); ++k)
        d = std::min(d, segment_distance(v[k - 1], v[k], z));
    return d;
}

int winding_number(const Contour& c, cplx z) {
    if (distance_to_contour(c, z) < kPoleClearance)
        throw DomainError("winding_number: point on the contour");
    if (const auto* circ = std::get_if<Circle>(&c))
        return std::abs(z - circ->center) < circ->radius ? 1 : 0;
    const auto& pl = std::get<Polyline>(c);
    if (!pl.closed())
        throw std::invalid_argument("winding_number: polyline is not closed");
    double total = 0.0;
    for (std::size_t k = 1; k < pl.vertices.size(); ++k)
        total += std::arg((pl.vertices[k] - z) / (pl.vertices[k - 1] - z));
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

cplx residue(const RationalFunction& f, cplx b) {
    const Polynomial& q = f.denominator();
    if (q.degree() < 1)
        return {};
    const int k = order_at(q, b);
    if (k == 0)
        return {};
    Polynomial qb = q;
    for (int j = 0; j < k; ++j)
        qb = divmod(qb, Polynomial::linear_factor(b)).quotient;
    // P(b+t) / Qb(b+t) as a power series in t up to t^{k-1}.
    const Polynomial p = f.numerator().shifted(b);
    const Polynomial s = qb.shifted(b);
    const cplx s0 = s.coefficient(0);
    if (s0 == cplx{})
        throw NumericError("residue: pole order underestimated");
    std::vector<cplx> c(static_cast<std::size_t>(k));
    for (int n = 0; n < k; ++n) {
        cplx acc = p.coefficient(n);
        for (int j = 1; j <= n; ++j)
            acc -= s.coefficient(j) * c[static_cast<std::size_t>(n - j)];
        c[static_cast<std::size_t>(n)] = acc / s0;
    }
    return c.back();
}

cplx residue_integral(const RationalFunction& f, const Contour& c) {
    cplx sum{};
    for (const auto& p : f.poles()) {
        const int w = winding_number(c, p.value);
        if (w != 0)
            sum += static_cast<double>(w) * residue(f, p.value);
    }
    return kTwoPiI * sum;
}

cplx contour_integral(const Holomorphic1Form& omega, const Contour& c) {
    const Meromorphic& g = omega.coefficient;
    if (g.is_rational())
        require_clearance(g.rational(), c);
    const auto f = [&g](cplx z) {
        const cplx v = g.value(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("contour_integral: integrand not finite at " + ExtendedComplex(z).to_string());
        return v;
    };
    if (const auto* circ = std::get_if<Circle>(&c))
        return integrate_circle(f, circ->center, circ->radius).value;
    const auto& v = std::get<Polyline>(c).vertices;
    cplx acc{};
    for (std::size_t k = 1; k < v.size(); ++k)
        acc += integrate_segment<cplx>(f, v[k - 1], v[k]);
    return acc;
}

int count_zeros_in_disk(const Meromorphic& f, cplx a, cplx center, double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("count_zeros_in_disk: radius must be positive");
    const Circle circ{center, radius};
    int poles_inside = 0;
    if (f.is_rational()) {
        const RationalFunction& r = f.rational();
        const RationalFunction h = r - RationalFunction::constant(a);
        if (h.is_zero())
            throw DomainError("count_zeros_in_disk: f - a vanishes identically");
        for (const auto& z : h.zeros())
            if (distance_to_contour(circ, z.value) < kPoleClearance)
                throw DomainError("count_zeros_in_disk: zero of f - a on the boundary circle");
        for (const auto& p : h.poles()) {
            if (distance_to_contour(circ, p.value) < kPoleClearance)
                throw DomainError("count_zeros_in_disk: pole of f on the boundary circle");
            if (std::abs(p.value - center) < radius)
                poles_inside += p.multiplicity;
        }
    }
    const auto integrand = [&](cplx z) {
        const cplx d = f.value(z) - a;
        if (std::abs(d) == 0.0)
            throw DomainError("count_zeros_in_disk: zero of f - a on the boundary circle");
        return f.derivative(z) / d;
    };
    const cplx n = integrate_circle(integrand, center, radius, 1e-10, 1 << 16).value / kTwoPiI;
    const double rounded = std::round(n.real());
    if (std::abs(n - cplx{rounded}) > 0.1)
        throw NumericError("count_zeros_in_disk: winding integral " + ExtendedComplex(n).to_string() +
                           " is not near an integer");
    return static_cast<int>(rounded) + poles_inside;
}

} // namespace stasurf
