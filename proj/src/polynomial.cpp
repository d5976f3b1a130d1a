#include "stasurf/polynomial.hpp"

#include "stasurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace stasurf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Synthetic division by (z - a): returns quotient coefficients, sets remainder.
std::vector<cplx> deflate(std::span<const cplx> c, cplx a, cplx& remainder) {
    const std::size_t n = c.size();
    std::vector<cplx> q(n - 1);
    cplx acc = c[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        q[k] = acc;
        acc = acc * a + c[k];
    }
    remainder = acc;
    return q;
}

bool lexi_less(cplx a, cplx b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == cplx{})
        c_.pop_back();
}

Polynomial Polynomial::monomial(cplx c, int k) {
    std::vector<cplx> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

cplx Polynomial::coefficient(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size()))
        return {};
    return c_[static_cast<std::size_t>(k)];
}

cplx Polynomial::leading() const { return c_.empty() ? cplx{} : c_.back(); }

cplx Polynomial::operator()(cplx z) const {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

double Polynomial::magnitude_at(cplx z) const {
    const double r = std::abs(z);
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * r + std::abs(*it);
    return acc;
}

double Polynomial::norm() const {
    double m = 0.0;
    for (const auto& c : c_)
        m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1)
        return {};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::conjugate() const {
    std::vector<cplx> d(c_.size());
    std::transform(c_.begin(), c_.end(), d.begin(), [](cplx c) { return std::conj(c); });
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (c_.empty())
        return {};
    const cplx l = c_.back();
    std::vector<cplx> d(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k)
        d[k] = c_[k] / l;
    d.back() = 1.0;
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(cplx b) const {
    std::vector<cplx> work = c_;
    std::vector<cplx> out;
    out.reserve(c_.size());
    while (!work.empty()) {
        cplx rem;
        if (work.size() == 1) {
            out.push_back(work[0]);
            break;
        }
        work = deflate(work, b, rem);
        out.push_back(rem);
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::truncated(double rel_tol, double scale) const {
    std::vector<cplx> d = c_;
    while (!d.empty() && std::abs(d.back()) <= rel_tol * scale)
        d.pop_back();
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-() const { return cplx{-1.0} * *this; }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k)
        d[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k)
        d[k] += b.c_[k];
    return Polynomial(std::move(d));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<cplx> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            d[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(d));
}

Polynomial operator*(cplx s, const Polynomial& p) {
    std::vector<cplx> d(p.c_.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        d[k] = s * p.c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::pow(int k) const {
    Polynomial out = constant(1.0);
    for (int i = 0; i < k; ++i)
        out = out * *this;
    return out;
}

DivMod divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero())
        throw std::invalid_argument("divmod: division by the zero polynomial");
    const int dn = num.degree(), dd = den.degree();
    if (num.is_zero() || dn < dd)
        return {Polynomial{}, num};
    std::vector<cplx> r(num.coefficients().begin(), num.coefficients().end());
    const auto dc = den.coefficients();
    const cplx lead = den.leading();
    std::vector<cplx> q(static_cast<std::size_t>(dn - dd) + 1);
    for (int k = dn - dd; k >= 0; --k) {
        const cplx coef = r[static_cast<std::size_t>(k + dd)] / lead;
        q[static_cast<std::size_t>(k)] = coef;
        for (int j = 0; j < dd; ++j)
            r[static_cast<std::size_t>(k + j)] -= coef * dc[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(k + dd)] = 0.0;
    }
    r.resize(static_cast<std::size_t>(std::max(dd, 0)));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

double root_scale(const Polynomial& p) {
    const int n = p.degree();
    if (n < 1)
        return 1.0;
    const auto c = p.coefficients();
    double r = 0.0;
    for (int k = 1; k <= n; ++k)
        r = std::max(r, std::pow(std::abs(c[static_cast<std::size_t>(n - k)] / c.back()), 1.0 / k));
    if (!(r > 0.0) || !std::isfinite(r))
        return 1.0;
    return std::exp2(std::round(std::log2(r)));
}

Polynomial Polynomial::dilated(double s) const {
    std::vector<cplx> c = c_;
    double f = 1.0;
    for (auto& x : c) {
        x *= f;
        f *= s;
    }
    return Polynomial(std::move(c));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b, double rel_tol) {
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    // Euclid on a(s t), b(s t) with roots of unit size, mapped back at the end.
    const double s = std::max(root_scale(a), root_scale(b));
    if (s != 1.0)
        return gcd_unscaled(a.dilated(s), b.dilated(s), rel_tol).dilated(1.0 / s).monic();
    return gcd_unscaled(a, b, rel_tol);
}

Polynomial gcd_unscaled(const Polynomial& a, const Polynomial& b, double rel_tol) {
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    Polynomial x = a.degree() >= b.degree() ? a.monic() : b.monic();
    Polynomial y = a.degree() >= b.degree() ? b.monic() : a.monic();
    while (!y.is_zero()) {
        const double scale = std::max(x.norm(), y.norm());
        Polynomial r = divmod(x, y).remainder;
        r = r.norm() <= rel_tol * scale ? Polynomial{} : r.truncated(rel_tol, scale);
        x = std::move(y);
        y = r.monic();
    }
    return x;
}

namespace {

// Yun's algorithm on a polynomial whose roots are already of unit scale.
std::vector<Polynomial> yun(const Polynomial& p, double tol) {
    std::vector<Polynomial> factors;
    const auto negligible = [tol](const Polynomial& x, double scale) {
        return x.norm() <= tol * scale ? Polynomial{} : x.truncated(tol, scale);
    };
    const Polynomial dp = p.derivative();
    const Polynomial a0 = gcd_unscaled(p, dp, tol);
    Polynomial b = divmod(p, a0).quotient;
    Polynomial c = divmod(dp, a0).quotient;
    Polynomial bd = b.derivative();
    Polynomial d = negligible(c - bd, std::max(c.norm(), bd.norm()));
    while (b.degree() >= 1) {
        const Polynomial a = gcd_unscaled(b, d, tol);
        factors.push_back(a);
        b = divmod(b, a).quotient;
        c = divmod(d, a).quotient;
        bd = b.derivative();
        d = negligible(c - bd, std::max(c.norm(), bd.norm()));
        if (factors.size() > static_cast<std::size_t>(p.degree()))
            throw NumericError("square_free_decomposition: did not terminate");
    }
    return factors;
}

} // namespace

std::vector<Polynomial> square_free_decomposition(const Polynomial& p, double rel_tol) {
    if (p.degree() < 1)
        return {};
    // Work with q(t) = p(s t), whose roots have modulus ~1, then map back.
    const double s = root_scale(p);
    auto factors = yun(p.dilated(s).monic(), rel_tol);
    for (auto& f : factors)
        f = f.dilated(1.0 / s).monic();
    return factors;
}

std::vector<cplx> simple_roots(const Polynomial& p) {
    const int n = p.degree();
    if (n < 1)
        return {};
    const Polynomial q = p.monic();
    const auto c = q.coefficients();
    if (n == 1)
        return {-c[0]};

    double radius = 0.0;
    for (int k = 1; k <= n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(n - k)]), 1.0 / k));
    if (radius == 0.0)
        radius = 1.0;
    const cplx centre = -c[static_cast<std::size_t>(n - 1)] / static_cast<double>(n);

    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] =
            centre + radius * std::polar(1.0, 2.0 * std::numbers::pi * k / n + 0.7);
    std::vector<bool> done(z.size(), false);
    const Polynomial dq = q.derivative();

    constexpr int kMaxIter = 500;
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
        bool all = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (done[k])
                continue;
            const cplx val = q(z[k]);
            if (std::abs(val) <= 4.0 * kEps * q.magnitude_at(z[k])) {
                done[k] = true;
                continue;
            }
            cplx der = dq(z[k]);
            if (der == cplx{})
                der = cplx{kEps, kEps};
            const cplx ratio = val / der;
            cplx sum{};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k)
                    sum += 1.0 / (z[k] - z[j]);
            const cplx w = ratio / (1.0 - ratio * sum);
            z[k] -= w;
            if (std::abs(w) <= 4.0 * kEps * std::abs(z[k]))
                done[k] = true;
            else
                all = false;
        }
        if (all && std::all_of(done.begin(), done.end(), [](bool b) { return b; }))
            break;
    }
    if (iter == kMaxIter)
        throw NumericError("simple_roots: Aberth iteration did not converge (degree " + std::to_string(n) + ")");

    for (auto& r : z) {
        for (int k = 0; k < 2; ++k) {
            const cplx der = dq(r);
            if (der == cplx{})
                break;
            const cplx cand = r - q(r) / der;
            if (std::abs(q(cand)) < std::abs(q(r)))
                r = cand;
            else
                break;
        }
    }
    return z;
}

namespace {

constexpr double kMultiplicityTolerance = 1e-6;

double coefficient_scale(const Polynomial& p, cplx r) {
    return p.norm() * std::pow(std::max(1.0, std::abs(r)), p.degree());
}

// Newton on p^{(m-1)}, where a root of multiplicity m is simple.
cplx polish(const Polynomial& p, cplx r, int m) {
    Polynomial d = p;
    for (int k = 1; k < m; ++k)
        d = d.derivative();
    const Polynomial dd = d.derivative();
    for (int it = 0; it < 3; ++it) {
        const cplx der = dd(r);
        if (der == cplx{})
            break;
        const cplx cand = r - d(r) / der;
        if (!(std::abs(d(cand)) < std::abs(d(r))))
            break;
        r = cand;
    }
    return r;
}

std::optional<std::vector<Root>> try_roots(const Polynomial& p, double gcd_tol, double tol) {
    std::vector<Root> out;
    std::vector<Polynomial> factors;
    try {
        factors = square_free_decomposition(p, gcd_tol);
    } catch (const NumericError&) {
        return std::nullopt;
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].degree() < 1)
            continue;
        const int m = static_cast<int>(k) + 1;
        for (const cplx r0 : simple_roots(factors[k])) {
            const cplx r = polish(p, r0, m);
            auto same = std::find_if(out.begin(), out.end(), [&](const Root& e) {
                return std::abs(e.value - r) <= 1e-10 * (1.0 + std::abs(r));
            });
            if (same != out.end())
                same->multiplicity += m;
            else
                out.push_back({r, m});
        }
    }
    int total = 0;
    for (const auto& r : out) {
        total += r.multiplicity;
        if (std::abs(p(r.value)) > tol * coefficient_scale(p, r.value))
            return std::nullopt;
    }
    if (total != p.degree())
        return std::nullopt;
    // A claimed m-fold root must kill p', ..., p^{(m-1)}; a root with a close
    // neighbour must not look like a piece of a split cluster (tiny p^{(m)}).
    for (const auto& r : out) {
        Polynomial d = p;
        for (int k = 1; k <= r.multiplicity; ++k) {
            d = d.derivative();
            const double rel = std::abs(d(r.value)) / d.magnitude_at(r.value);
            if (k < r.multiplicity && rel > kMultiplicityTolerance)
                return std::nullopt;
            if (k == r.multiplicity && rel < kMultiplicityTolerance) {
                const bool crowded = std::any_of(out.begin(), out.end(), [&](const Root& o) {
                    return &o != &r && std::abs(o.value - r.value) < 1e-3 * (1.0 + std::abs(r.value));
                });
                if (crowded)
                    return std::nullopt;
            }
        }
    }
    return out;
}

} // namespace

std::vector<Root> roots_with_multiplicity(const Polynomial& p, double tol) {
    if (p.degree() < 1)
        throw std::invalid_argument("roots_with_multiplicity: degree must be >= 1");
    // The gcd truncation starts at kGcdTolerance and is loosened only when the
    // resulting factorization fails the residual / multiplicity validation.
    for (const double gcd_tol : {kGcdTolerance, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
        if (auto out = try_roots(p, gcd_tol, tol)) {
            std::sort(out->begin(), out->end(),
                      [](const Root& a, const Root& b) { return lexi_less(a.value, b.value); });
            return *out;
        }
    }
    throw NumericError("roots_with_multiplicity: no consistent square-free factorization (degree " +
                       std::to_string(p.degree()) + ")");
}

int order_at(const Polynomial& p, cplx a, double rel_tol) {
    if (p.is_zero())
        throw std::invalid_argument("order_at: zero polynomial");
    std::vector<cplx> c(p.coefficients().begin(), p.coefficients().end());
    int k = 0;
    while (c.size() >= 2) {
        const double scale = Polynomial(c).magnitude_at(a);
        cplx rem;
        auto q = deflate(c, a, rem);
        if (std::abs(rem) > rel_tol * scale)
            break;
        c = std::move(q);
        ++k;
    }
    return k;
}

} // namespace stasurf
