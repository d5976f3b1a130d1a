#pragma once
/** \file
 * \brief Rational functions on the Riemann sphere and a meromorphic-function
 *        wrapper that also admits black-box (evaluation-only) functions.
 */

#include "stasurf/cplane.hpp"
#include "stasurf/polynomial.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace stasurf {

/// P/Q in lowest terms with Q monic. Degree is max(deg P, deg Q).
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}
    /// Throws std::invalid_argument if `den` is the zero polynomial.
    RationalFunction(Polynomial num, Polynomial den = Polynomial::constant(1.0));

    static RationalFunction constant(cplx c) { return {Polynomial::constant(c)}; }
    static RationalFunction identity() { return {Polynomial({0.0, 1.0})}; }
    static RationalFunction from_mobius(const MobiusTransform& s);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }

    int degree() const;
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return degree() == 0; }

    ExtendedComplex operator()(const ExtendedComplex& z) const;
    /// Finite evaluation; the result is non-finite at a pole.
    cplx evaluate(cplx z) const { return num_(z) / den_(z); }

    /// nu_f(inf) = deg Q - deg P.
    int order_at_infinity() const;

    RationalFunction derivative() const;
    RationalFunction conjugate_coeffs() const;
    /// (*this) o inner
    RationalFunction compose(const RationalFunction& inner) const;

    /// Coefficientwise comparison of the canonical forms.
    bool approx_equal(const RationalFunction& other, double rel_tol = 1e-9) const;
    bool is_identity(double rel_tol = 1e-9) const;

    /// Finite zeros / poles with multiplicity.
    std::vector<Root> zeros(double tol = 1e-8) const;
    std::vector<Root> poles(double tol = 1e-8) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(cplx s, const RationalFunction& f);

private:
    // For num and den already known to be coprime: only normalizes.
    struct Coprime {};
    RationalFunction(Polynomial num, Polynomial den, Coprime);
    void make_monic();

    Polynomial num_;
    Polynomial den_;
};

RationalFunction conjugate_coeffs(const RationalFunction& f);

/// nu_f(a): order of zero (> 0), minus order of pole (< 0), or 0.
int divisor_at(const RationalFunction& f, const ExtendedComplex& a);

struct DivisorEntry {
    ExtendedComplex point;
    int order;
};
using Divisor = std::vector<DivisorEntry>;

/// Full divisor of a nonzero rational function on the sphere, including infinity.
Divisor divisor(const RationalFunction& f);

/// A meromorphic function given either exactly (rational) or as an evaluator
/// pair (value, derivative). Exact divisor queries require the rational form.
class Meromorphic {
public:
    using Evaluator = std::function<cplx(cplx)>;

    Meromorphic(RationalFunction f);
    Meromorphic(Evaluator value, Evaluator derivative);

    bool is_rational() const { return rational_.has_value(); }
    /// Throws std::logic_error for black-box functions.
    const RationalFunction& rational() const;

    ExtendedComplex operator()(cplx z) const;
    /// Raw finite evaluation (non-finite at poles).
    cplx value(cplx z) const;
    cplx derivative(cplx z) const;

private:
    std::optional<RationalFunction> rational_;
    Evaluator value_;
    Evaluator derivative_;
};

} // namespace stasurf
