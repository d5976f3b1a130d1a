#pragma once

#include "stasurf/rational.hpp"

#include <random>

namespace testdata {

using stasurf::cplx;

inline cplx gaussian(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng)};
}

inline stasurf::MobiusTransform random_sl2(std::mt19937_64& rng) {
    while (true) {
        const cplx a = gaussian(rng), b = gaussian(rng), c = gaussian(rng), d = gaussian(rng);
        if (std::abs(a * d - b * c) > 0.1)
            return {a, b, c, d};
    }
}

inline stasurf::Polynomial random_poly(std::mt19937_64& rng, int degree) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c)
        x = gaussian(rng);
    return stasurf::Polynomial(std::move(c));
}

/// Polynomial with prescribed roots (possibly repeated) and random leading coefficient.
inline stasurf::Polynomial poly_from_roots(std::mt19937_64& rng, const std::vector<cplx>& roots) {
    stasurf::Polynomial p = stasurf::Polynomial::constant(gaussian(rng) + cplx{1.5, 0.0});
    for (const cplx r : roots)
        p = p * stasurf::Polynomial::linear_factor(r);
    return p;
}

/// Random rational function with max(deg P, deg Q) == degree exactly.
inline stasurf::RationalFunction random_rational(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<int> pick(0, degree);
    while (true) {
        int dp = pick(rng), dq = pick(rng);
        if (std::max(dp, dq) != degree)
            (pick(rng) % 2 ? dp : dq) = degree;
        stasurf::RationalFunction f(random_poly(rng, dp), random_poly(rng, dq));
        if (f.degree() == degree)
            return f;
    }
}

} // namespace testdata
