#include "stasurf/cplane.hpp"

#include "stasurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stasurf {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

ExtendedComplex::ExtendedComplex(cplx z) : z_(z) {
    if (!finite(z))
        throw std::invalid_argument("ExtendedComplex: non-finite value; use infinity()");
}

ExtendedComplex ExtendedComplex::infinity() {
    ExtendedComplex p;
    p.infinite_ = true;
    return p;
}

ExtendedComplex ExtendedComplex::from_value(cplx z) {
    return finite(z) ? ExtendedComplex(z) : infinity();
}

cplx ExtendedComplex::value() const {
    if (infinite_)
        throw std::logic_error("ExtendedComplex::value at infinity");
    return z_;
}

ExtendedComplex ExtendedComplex::conj() const {
    return infinite_ ? infinity() : ExtendedComplex(std::conj(z_));
}

std::string ExtendedComplex::to_string() const {
    if (infinite_)
        return "inf";
    std::ostringstream os;
    os.precision(17);
    os << z_.real() << (z_.imag() < 0 ? "-" : "+") << std::abs(z_.imag()) << "i";
    return os.str();
}

double chordal(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.is_infinite() && b.is_infinite())
        return 0.0;
    if (b.is_infinite())
        return 1.0 / std::hypot(1.0, std::abs(a.value()));
    if (a.is_infinite())
        return 1.0 / std::hypot(1.0, std::abs(b.value()));
    const cplx za = a.value(), zb = b.value();
    const double ha = std::hypot(1.0, std::abs(za)), hb = std::hypot(1.0, std::abs(zb));
    // Scaled first so that huge finite inputs cannot overflow.
    return std::abs(za / ha / hb - zb / hb / ha);
}

bool approx_equal(const ExtendedComplex& a, const ExtendedComplex& b, double tol) {
    return chordal(a, b) <= tol;
}

MobiusTransform::MobiusTransform(cplx a, cplx b, cplx c, cplx d) : m_{a, b, c, d} {
    const cplx det = a * d - b * c;
    double scale = 0.0;
    for (const auto& e : m_)
        scale = std::max(scale, std::abs(e));
    if (!(scale > 0.0) || std::abs(det) <= 1e-14 * scale * scale || !finite(det))
        throw std::invalid_argument("MobiusTransform: singular matrix");
    const cplx s = std::sqrt(det);
    for (auto& e : m_)
        e /= s;
}

ExtendedComplex MobiusTransform::operator()(const ExtendedComplex& z) const {
    const auto [a, b, c, d] = m_;
    if (z.is_infinite())
        return c == cplx{} ? ExtendedComplex::infinity() : ExtendedComplex::from_value(a / c);
    const cplx w = z.value();
    const cplx den = c * w + d;
    if (den == cplx{})
        return ExtendedComplex::infinity();
    return ExtendedComplex::from_value((a * w + b) / den);
}

MobiusTransform MobiusTransform::operator*(const MobiusTransform& r) const {
    const auto& l = m_;
    return {l[0] * r.m_[0] + l[1] * r.m_[2], l[0] * r.m_[1] + l[1] * r.m_[3],
            l[2] * r.m_[0] + l[3] * r.m_[2], l[2] * r.m_[1] + l[3] * r.m_[3]};
}

MobiusTransform MobiusTransform::inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

MobiusTransform MobiusTransform::conj() const {
    return {std::conj(m_[0]), std::conj(m_[1]), std::conj(m_[2]), std::conj(m_[3])};
}

MobiusTransform MobiusTransform::negated() const {
    MobiusTransform n = *this;
    for (auto& e : n.m_)
        e = -e;
    return n;
}

ExtendedComplex mobius_apply(const MobiusTransform& s, const ExtendedComplex& z) { return s(z); }

std::string to_string(DegeneracyType t) {
    switch (t) {
    case DegeneracyType::Identity: return "identity";
    case DegeneracyType::Hyperbolic: return "hyperbolic";
    case DegeneracyType::Elliptic: return "elliptic";
    case DegeneracyType::Parabolic: return "parabolic";
    }
    return "?";
}

std::optional<int> DegeneracyClass::expected_fixed_count() const {
    switch (type) {
    case DegeneracyType::Identity: return std::nullopt;
    case DegeneracyType::Hyperbolic: return 2;
    case DegeneracyType::Elliptic: return 0;
    case DegeneracyType::Parabolic: return 1;
    }
    return std::nullopt;
}

// conj(T S T^{-1})-type conjugation sends A = conj(S) S to T A T^{-1}, so the
// similarity class of A (trace plus the A == I test) is the invariant.
DegeneracyClass classify_conjugate_similarity(const MobiusTransform& s) {
    const MobiusTransform sb = s.conj();
    const cplx a11 = sb.a() * s.a() + sb.b() * s.c();
    const cplx a12 = sb.a() * s.b() + sb.b() * s.d();
    const cplx a21 = sb.c() * s.a() + sb.d() * s.c();
    const cplx a22 = sb.c() * s.b() + sb.d() * s.d();
    const cplx tau = a11 + a22;

    const double norm = std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22), 1.0});
    if (std::abs(tau.imag()) > kClassifyTolerance * norm)
        throw NumericError("classify_conjugate_similarity: trace(conj(S) S) has imaginary part " +
                           std::to_string(tau.imag()));

    DegeneracyClass out;
    const double t = tau.real();
    out.invariant = t;
    if (t < -2.0 - kClassifyTolerance * norm)
        throw NumericError("classify_conjugate_similarity: trace(conj(S) S) < -2");

    if (std::abs(t - 2.0) <= kClassifyTolerance * norm) {
        const double off = std::max({std::abs(a11 - 1.0), std::abs(a12), std::abs(a21), std::abs(a22 - 1.0)});
        out.type = off <= kClassifyTolerance * norm ? DegeneracyType::Identity : DegeneracyType::Parabolic;
        out.invariant = 2.0;
        return out;
    }
    if (t > 2.0) {
        out.type = DegeneracyType::Hyperbolic;
        out.parameter = 0.5 * std::acosh(t / 2.0);
        return out;
    }
    out.type = DegeneracyType::Elliptic;
    out.parameter = 0.5 * std::acos(std::clamp(t / 2.0, -1.0, 1.0));
    return out;
}

double q11_pairing(const ExtendedComplex& w1, const ExtendedComplex& w2, cplx dw1, cplx dw2) {
    if (w1.is_infinite() || w2.is_infinite())
        throw DomainError("q11_pairing: chart coordinates must be finite");
    if (approx_equal(w2, w1.conj()))
        throw DomainError("q11_pairing: degenerate point w2 = conj(w1)");
    const cplx den = std::conj(w1.value()) - w2.value();
    return (4.0 * std::conj(dw1) * dw2 / (den * den)).real();
}

} // namespace stasurf
