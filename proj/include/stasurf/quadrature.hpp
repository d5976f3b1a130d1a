#pragma once
/** \file
 * \brief Gauss-Legendre quadrature for complex line integrals.
 *
 * The integrand is the coefficient F of a 1-form F(z) dz; values may be a
 * single complex number or a fixed-size array of them (the immersion
 * integrates all four phi components in one pass).
 */

#include "stasurf/cplane.hpp"
#include "stasurf/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace stasurf {

namespace gl16 {
// Positive half of the symmetric 16-point rule on [-1, 1].
inline constexpr std::array<std::array<double, 2>, 8> kHalf{{
    {0.09501250983763745, 0.18945061045506859},
    {0.2816035507792589, 0.1826034150449236},
    {0.45801677765722737, 0.16915651939500262},
    {0.6178762444026438, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.8656312023878318, 0.09515851168249259},
    {0.9445750230732326, 0.062253523938647706},
    {0.9894009349916499, 0.027152459411754037},
}};
} // namespace gl16

inline double value_norm(cplx v) { return std::abs(v); }

template <std::size_t N>
double value_norm(const std::array<cplx, N>& v) {
    double m = 0.0;
    for (const auto& c : v)
        m = std::max(m, std::abs(c));
    return m;
}

template <std::size_t N>
std::array<cplx, N>& operator+=(std::array<cplx, N>& a, const std::array<cplx, N>& b) {
    for (std::size_t k = 0; k < N; ++k)
        a[k] += b[k];
    return a;
}

template <std::size_t N>
std::array<cplx, N> operator*(cplx s, const std::array<cplx, N>& a) {
    std::array<cplx, N> out;
    for (std::size_t k = 0; k < N; ++k)
        out[k] = s * a[k];
    return out;
}

template <std::size_t N>
std::array<cplx, N> operator-(const std::array<cplx, N>& a, const std::array<cplx, N>& b) {
    std::array<cplx, N> out;
    for (std::size_t k = 0; k < N; ++k)
        out[k] = a[k] - b[k];
    return out;
}

/// One GL16 panel of  int_a^b F(z) dz  along the straight segment.
template <class V, class F>
V gl16_segment(const F& f, cplx a, cplx b) {
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    V acc{};
    for (const auto& [x, w] : gl16::kHalf) {
        acc += cplx{w} * f(mid + x * half);
        acc += cplx{w} * f(mid - x * half);
    }
    return half * acc;
}

namespace detail {
template <class V, class F>
V adaptive(const F& f, cplx a, cplx b, const V& whole, double tol, int depth) {
    const cplx m = 0.5 * (a + b);
    const V left = gl16_segment<V>(f, a, m);
    const V right = gl16_segment<V>(f, m, b);
    V sum = left;
    sum += right;
    if (value_norm(sum - whole) <= tol)
        return sum;
    if (depth == 0)
        throw NumericError("integrate_segment: adaptive subdivision limit reached");
    V out = adaptive<V>(f, a, m, left, 0.5 * tol, depth - 1);
    out += adaptive<V>(f, m, b, right, 0.5 * tol, depth - 1);
    return out;
}
} // namespace detail

/// Adaptive bisection: a panel is accepted when its GL16 estimate agrees with
/// the sum over its two halves to the local share of
/// max(abs_tol, rel_tol * |coarse estimate|).
template <class V, class F>
V integrate_segment(const F& f, cplx a, cplx b, double rel_tol = 1e-13, double abs_tol = 1e-15) {
    if (a == b)
        return V{};
    const V whole = gl16_segment<V>(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * value_norm(whole));
    return detail::adaptive<V>(f, a, b, whole, tol, 40);
}

struct CircleQuadrature {
    cplx value;
    int panels;
    double last_change;
};

/// Counterclockwise  oint F(z) dz  over |z - c| = r with composite GL16 in the
/// angle; panel count doubles until successive estimates differ by less than
/// rel_tol * max(1, |I|).
template <class F>
CircleQuadrature integrate_circle(const F& f, cplx c, double r, double rel_tol = 1e-10, int max_panels = 1 << 14) {
    const auto estimate = [&](int panels) {
        const double h = 2.0 * std::numbers::pi / panels;
        cplx acc{};
        for (int p = 0; p < panels; ++p) {
            const double mid = (p + 0.5) * h;
            for (const auto& [x, w] : gl16::kHalf) {
                for (const double t : {mid + 0.5 * h * x, mid - 0.5 * h * x}) {
                    const cplx e = std::polar(1.0, t);
                    acc += w * f(c + r * e) * cplx{0.0, r} * e;
                }
            }
        }
        return 0.5 * h * acc;
    };
    int panels = 4;
    cplx prev = estimate(panels);
    while (true) {
        panels *= 2;
        const cplx next = estimate(panels);
        const double change = std::abs(next - prev);
        if (!std::isfinite(change))
            throw DomainError("integrate_circle: integrand not finite on the contour");
        if (change < rel_tol * std::max(1.0, std::abs(next)))
            return {next, panels, change};
        if (panels >= max_panels)
            throw NumericError("integrate_circle: no convergence with " + std::to_string(panels) + " panels");
        prev = next;
    }
}

} // namespace stasurf
