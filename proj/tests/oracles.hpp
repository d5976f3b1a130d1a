#pragma once
// Independent brute-force references used to cross-check the library.

#include "stasurf/efset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using stasurf::cplx;
using stasurf::ExtendedComplex;
using stasurf::RationalFunction;

// Chart 0 is z itself, chart 1 is w = 1/z, so the grids cover the sphere
// with bounded distortion.
inline ExtendedComplex chart_point(int chart, cplx u) {
    if (chart == 0)
        return ExtendedComplex::from_value(u);
    return u == cplx{} ? ExtendedComplex::infinity() : ExtendedComplex::from_value(1.0 / u);
}

inline double chart_residual(const RationalFunction& f, int chart, cplx u) {
    return stasurf::ef_residual(f, chart_point(chart, u));
}

namespace detail {

// f(z) - conj(z) written in the chart coordinate: in chart 1 this is
// 1/f(1/u) - conj(u), whose modulus is comparable to the chordal residual.
inline cplx chart_map(const RationalFunction& f, int chart, cplx u) {
    const ExtendedComplex v = f(chart_point(chart, u));
    if (chart == 0)
        return v.is_infinite() ? cplx{1e300, 0.0} : v.value() - std::conj(u);
    if (v.is_infinite())
        return -std::conj(u);
    return v.value() == cplx{} ? cplx{1e300, 0.0} : 1.0 / v.value() - std::conj(u);
}

// A few Newton steps on the real 2-vector chart_map with a finite-difference
// Jacobian; only kept while the residual falls.
inline cplx newton_polish(const RationalFunction& f, int chart, cplx u) {
    double best = std::abs(chart_map(f, chart, u));
    for (int it = 0; it < 20 && best > 0.0; ++it) {
        const double e = 1e-7 * (1.0 + std::abs(u));
        const cplx g = chart_map(f, chart, u);
        const cplx gx = (chart_map(f, chart, u + e) - chart_map(f, chart, u - e)) / (2.0 * e);
        const cplx gy = (chart_map(f, chart, u + cplx{0.0, e}) - chart_map(f, chart, u - cplx{0.0, e})) / (2.0 * e);
        const double det = gx.real() * gy.imag() - gy.real() * gx.imag();
        if (det == 0.0 || !std::isfinite(det))
            break;
        const cplx cand = u - cplx{(gy.imag() * g.real() - gy.real() * g.imag()) / det,
                                   (gx.real() * g.imag() - gx.imag() * g.real()) / det};
        const double r = std::abs(chart_map(f, chart, cand));
        if (!(r < best) || !std::isfinite(std::abs(cand)))
            break;
        u = cand;
        best = r;
    }
    return u;
}

// Polishes a candidate and records it if it is a genuine zero.
inline void report(const RationalFunction& f, int chart, cplx u, const std::function<bool(cplx)>& keep,
                   std::vector<ExtendedComplex>& found) {
    u = newton_polish(f, chart, u);
    const double best = chart_residual(f, chart, u);
    if (best > 1e-10 || !keep(u))
        return;
    const auto p = chart_point(chart, u);
    const auto dup = std::find_if(found.begin(), found.end(),
                                  [&](const ExtendedComplex& q) { return stasurf::chordal(p, q) < 1e-4; });
    if (dup == found.end())
        found.push_back(p);
    else if (best < stasurf::ef_residual(f, *dup))
        *dup = p;
}

// Scans an n x n grid centred at c with half-width w. Two kinds of candidate:
// local minima of the residual, refined by compass search and kept when they
// pass `accept`; and cells whose corner-value linearization puts a zero
// inside, which catches basins narrower than the grid where f is steep.
// Low minima are also re-scanned on a finer grid (`zoom` levels), which
// separates zeros closer together than the grid spacing. Every candidate is
// finished by Newton: compass search stalls in the long valleys of nearly
// degenerate zeros.
inline void scan(const RationalFunction& f, int chart, cplx c, double w, int n, double refine, double accept,
                 const std::function<bool(cplx)>& keep, std::vector<ExtendedComplex>& found, int zoom = 2) {
    const double h = 2.0 * w / (n - 1);
    const auto at = [&](int i, int j) { return c + cplx{-w + i * h, -w + j * h}; };
    const auto idx = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
    std::vector<double> r(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    std::vector<cplx> g(r.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            r[idx(i, j)] = chart_residual(f, chart, at(i, j));
            g[idx(i, j)] = chart_map(f, chart, at(i, j));
        }

    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            const cplx g0 = g[idx(i, j)];
            const cplx gx = (g[idx(i + 1, j)] - g0) / h;
            const cplx gy = (g[idx(i, j + 1)] - g0) / h;
            const double det = gx.real() * gy.imag() - gy.real() * gx.imag();
            if (det == 0.0 || !std::isfinite(det) || std::abs(g0) > 1e100)
                continue;
            const double dx = -(gy.imag() * g0.real() - gy.real() * g0.imag()) / det;
            const double dy = -(gx.real() * g0.imag() - gx.imag() * g0.real()) / det;
            if (dx >= -0.5 * h && dx <= 1.5 * h && dy >= -0.5 * h && dy <= 1.5 * h)
                report(f, chart, at(i, j) + cplx{dx, dy}, keep, found);
        }
    }

    for (int i = 1; i + 1 < n; ++i) {
        for (int j = 1; j + 1 < n; ++j) {
            const double v = r[idx(i, j)];
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1 && is_min; ++dj)
                    if ((di || dj) && r[idx(i + di, j + dj)] < v)
                        is_min = false;
            if (!is_min)
                continue;
            if (zoom > 0 && v <= 0.05)
                scan(f, chart, at(i, j), 3.0 * h, 61, refine, accept, keep, found, zoom - 1);
            cplx u = at(i, j);
            double best = v;
            // Capped: when infinity solves the equation, the residual keeps
            // decreasing as a z-chart walk heads off towards it.
            int moves = 0;
            for (double step = h; step >= refine && moves < 4000;) {
                bool moved = false;
                // 16 directions: residual valleys are narrow when |f'| is near 1.
                for (int k = 0; k < 16; ++k) {
                    const cplx d = std::polar(1.0, k * 0.39269908169872414);
                    const double t = chart_residual(f, chart, u + step * d);
                    if (t < best) {
                        best = t;
                        u += step * d;
                        moved = true;
                        ++moves;
                        break;
                    }
                }
                if (!moved)
                    step *= 0.5;
            }
            if (best <= accept)
                report(f, chart, u, keep, found);
        }
    }
}

} // namespace detail

/// Solutions of f(z) = conj(z): grid local minima of the chordal residual on
/// two n x n chart grids over [-1.2, 1.2]^2, refined by compass search down to
/// step `refine`, kept when the refined residual is below `accept`. Solutions
/// hugging a pole sit in basins finer than the grid, so each pole (and each
/// large zero) also gets nested local grids.
inline std::vector<ExtendedComplex> ef_bruteforce(const RationalFunction& f, int n = 600, double refine = 1e-6,
                                                  double accept = 1e-4) {
    std::vector<ExtendedComplex> found;
    // Points outside the chart's unit disk belong to the other chart.
    const auto in_disk = [](cplx u) { return std::abs(u) <= 1.0 + 1e-3; };
    // Odd n puts 0 and infinity on the grid.
    n |= 1;
    for (int chart = 0; chart < 2; ++chart)
        detail::scan(f, chart, 0.0, 1.2, n, refine, accept, in_disk, found);
    // The same happens in chart 1 around large zeros of f, the poles of 1/f(1/u).
    const auto any = [](cplx) { return true; };
    for (const auto& p : f.poles())
        for (const double w : {5e-2, 5e-3, 5e-4})
            detail::scan(f, 0, p.value, w * (1.0 + std::abs(p.value)), 101, refine, accept, any, found);
    for (const auto& z : f.zeros()) {
        if (std::abs(z.value) <= 1.0)
            continue;
        const cplx c = 1.0 / z.value;
        for (const double w : {5e-2, 5e-3, 5e-4})
            detail::scan(f, 1, c, w * (1.0 + std::abs(c)), 101, refine, accept, any, found);
    }
    return found;
}

/// Every point of `a` has a partner in `b` within chordal `tol` and vice versa.
inline bool same_point_sets(const std::vector<ExtendedComplex>& a, const std::vector<ExtendedComplex>& b,
                            double tol) {
    const auto covered = [tol](const std::vector<ExtendedComplex>& x, const std::vector<ExtendedComplex>& y) {
        return std::all_of(x.begin(), x.end(), [&](const ExtendedComplex& p) {
            return std::any_of(y.begin(), y.end(),
                               [&](const ExtendedComplex& q) { return stasurf::chordal(p, q) <= tol; });
        });
    };
    return a.size() == b.size() && covered(a, b) && covered(b, a);
}

} // namespace oracle
