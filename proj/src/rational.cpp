#include "stasurf/rational.hpp"

#include "stasurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stasurf {

namespace {

// The Euclidean gcd proposes a common factor; it is accepted root by root,
// only where both polynomials really vanish to the claimed order.
Polynomial common_factor(const Polynomial& a, const Polynomial& b) {
    const Polynomial g = gcd(a, b);
    if (g.degree() < 1)
        return g;
    std::vector<Root> roots;
    try {
        roots = roots_with_multiplicity(g);
    } catch (const NumericError&) {
        return Polynomial::constant(1.0);
    }
    // Orders are judged on the dilated polynomials, where magnitude_at is an
    // honest scale even for high degree.
    const double s = std::max(root_scale(a), root_scale(b));
    const Polynomial as = a.dilated(s), bs = b.dilated(s);
    Polynomial out = Polynomial::constant(1.0);
    for (const auto& r : roots) {
        const int k = std::min({r.multiplicity, order_at(as, r.value / s, 1e-9), order_at(bs, r.value / s, 1e-9)});
        if (k > 0)
            out = out * Polynomial::linear_factor(r.value).pow(k);
    }
    return out;
}

} // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw std::invalid_argument("RationalFunction: zero denominator");
    if (num_.is_zero()) {
        den_ = Polynomial::constant(1.0);
        return;
    }
    const Polynomial g = common_factor(num_, den_);
    if (g.degree() >= 1) {
        num_ = divmod(num_, g).quotient;
        den_ = divmod(den_, g).quotient;
    }
    make_monic();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den, Coprime)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw std::invalid_argument("RationalFunction: zero denominator");
    if (num_.is_zero())
        den_ = Polynomial::constant(1.0);
    make_monic();
}

void RationalFunction::make_monic() {
    const cplx lead = den_.leading();
    num_ = (1.0 / lead) * num_;
    den_ = den_.monic();
}

RationalFunction RationalFunction::from_mobius(const MobiusTransform& s) {
    return {Polynomial({s.b(), s.a()}), Polynomial({s.d(), s.c()})};
}

int RationalFunction::degree() const {
    if (num_.is_zero())
        return 0;
    return std::max(num_.degree(), den_.degree());
}

ExtendedComplex RationalFunction::operator()(const ExtendedComplex& z) const {
    if (z.is_infinite()) {
        if (num_.is_zero())
            return ExtendedComplex(0.0);
        const int dp = num_.degree(), dq = den_.degree();
        if (dp > dq)
            return ExtendedComplex::infinity();
        if (dp < dq)
            return ExtendedComplex(0.0);
        return ExtendedComplex::from_value(num_.leading() / den_.leading());
    }
    const cplx w = z.value();
    const cplx q = den_(w);
    if (q == cplx{})
        return ExtendedComplex::infinity();
    return ExtendedComplex::from_value(num_(w) / q);
}

int RationalFunction::order_at_infinity() const {
    if (num_.is_zero())
        throw std::invalid_argument("order_at_infinity: zero function");
    return den_.degree() - num_.degree();
}

RationalFunction RationalFunction::derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFunction RationalFunction::conjugate_coeffs() const {
    return {num_.conjugate(), den_.conjugate(), Coprime{}};
}

RationalFunction RationalFunction::compose(const RationalFunction& inner) const {
    // Homogenize: P(U/V)/Q(U/V) = sum p_k U^k V^{n-k} / sum q_k U^k V^{n-k}.
    // With both sides in lowest terms the result is too: a shared root needs
    // U = V = 0, or V = 0 with p_n = q_n = 0. Running a numerical gcd over
    // these heavily cancelling expansions only invents false factors.
    const int n = std::max(num_.is_zero() ? 0 : num_.degree(), den_.degree());
    const Polynomial& u = inner.num_;
    const Polynomial& v = inner.den_;
    std::vector<Polynomial> up(static_cast<std::size_t>(n) + 1), vp(static_cast<std::size_t>(n) + 1);
    up[0] = vp[0] = Polynomial::constant(1.0);
    for (int k = 1; k <= n; ++k) {
        up[static_cast<std::size_t>(k)] = up[static_cast<std::size_t>(k - 1)] * u;
        vp[static_cast<std::size_t>(k)] = vp[static_cast<std::size_t>(k - 1)] * v;
    }
    Polynomial p, q;
    for (int k = 0; k <= n; ++k) {
        const Polynomial term = up[static_cast<std::size_t>(k)] * vp[static_cast<std::size_t>(n - k)];
        p = p + num_.coefficient(k) * term;
        q = q + den_.coefficient(k) * term;
    }
    return {p, q, Coprime{}};
}

bool RationalFunction::approx_equal(const RationalFunction& other, double rel_tol) const {
    const Polynomial dp = num_ - other.num_;
    const Polynomial dq = den_ - other.den_;
    const double scale = std::max({num_.norm(), den_.norm(), other.num_.norm(), other.den_.norm()});
    return dp.norm() <= rel_tol * scale && dq.norm() <= rel_tol * scale;
}

bool RationalFunction::is_identity(double rel_tol) const {
    const Polynomial diff = num_ - Polynomial({0.0, 1.0}) * den_;
    return diff.norm() <= rel_tol * std::max(num_.norm(), den_.norm());
}

std::vector<Root> RationalFunction::zeros(double tol) const {
    if (num_.degree() < 1)
        return {};
    return roots_with_multiplicity(num_, tol);
}

std::vector<Root> RationalFunction::poles(double tol) const {
    if (den_.degree() < 1)
        return {};
    return roots_with_multiplicity(den_, tol);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero())
        throw std::invalid_argument("RationalFunction: division by zero function");
    return {a.num_ * b.den_, a.den_ * b.num_};
}

RationalFunction operator*(cplx s, const RationalFunction& f) {
    return {s * f.num_, f.den_, RationalFunction::Coprime{}};
}

RationalFunction conjugate_coeffs(const RationalFunction& f) { return f.conjugate_coeffs(); }

int divisor_at(const RationalFunction& f, const ExtendedComplex& a) {
    if (f.is_zero())
        throw std::invalid_argument("divisor_at: zero function");
    if (a.is_infinite())
        return f.order_at_infinity();
    const cplx z = a.value();
    const int zero_order = f.numerator().degree() >= 1 ? order_at(f.numerator(), z) : 0;
    const int pole_order = f.denominator().degree() >= 1 ? order_at(f.denominator(), z) : 0;
    return zero_order - pole_order;
}

Divisor divisor(const RationalFunction& f) {
    if (f.is_zero())
        throw std::invalid_argument("divisor: zero function");
    Divisor out;
    for (const auto& r : f.zeros())
        out.push_back({ExtendedComplex(r.value), r.multiplicity});
    for (const auto& r : f.poles())
        out.push_back({ExtendedComplex(r.value), -r.multiplicity});
    if (const int k = f.order_at_infinity(); k != 0)
        out.push_back({ExtendedComplex::infinity(), k});
    return out;
}

Meromorphic::Meromorphic(RationalFunction f)
    : rational_(std::move(f)), value_([r = *rational_](cplx z) { return r.evaluate(z); }),
      derivative_([d = rational_->derivative()](cplx z) { return d.evaluate(z); }) {}

Meromorphic::Meromorphic(Evaluator value, Evaluator derivative)
    : value_(std::move(value)), derivative_(std::move(derivative)) {}

const RationalFunction& Meromorphic::rational() const {
    if (!rational_)
        throw std::logic_error("Meromorphic: black-box function has no rational form");
    return *rational_;
}

ExtendedComplex Meromorphic::operator()(cplx z) const {
    if (rational_)
        return (*rational_)(ExtendedComplex(z));
    return ExtendedComplex::from_value(value_(z));
}

cplx Meromorphic::value(cplx z) const { return value_(z); }

cplx Meromorphic::derivative(cplx z) const { return derivative_(z); }

} // namespace stasurf
