#pragma once
/** \file
 * \brief Dense complex polynomials, Euclidean gcd, square-free factorization
 *        and Aberth-Ehrlich root finding.
 */

#include "stasurf/cplane.hpp"

#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace stasurf {

/// Degree reported by the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Relative truncation used by the Euclidean gcd.
inline constexpr double kGcdTolerance = 1e-12;

/// Coefficients in ascending degree order; trailing exact zeros are trimmed,
/// so the leading coefficient of a nonzero polynomial is nonzero.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);
    Polynomial(std::initializer_list<cplx> coeffs) : Polynomial(std::vector<cplx>(coeffs)) {}

    static Polynomial constant(cplx c) { return Polynomial({c}); }
    static Polynomial monomial(cplx c, int k);
    /// z - r
    static Polynomial linear_factor(cplx r) { return Polynomial({-r, 1.0}); }

    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::span<const cplx> coefficients() const { return c_; }
    cplx coefficient(int k) const;
    cplx leading() const;

    cplx operator()(cplx z) const;
    /// Sum |c_k| |z|^k, the natural scale for judging |p(z)| against zero.
    double magnitude_at(cplx z) const;
    /// Largest coefficient modulus.
    double norm() const;

    Polynomial derivative() const;
    Polynomial conjugate() const;
    Polynomial monic() const;
    /// Taylor coefficients about b: q(t) = p(b + t).
    Polynomial shifted(cplx b) const;
    /// q(t) = p(s t).
    Polynomial dilated(double s) const;
    /// Drops leading coefficients with |c| <= rel_tol * scale.
    Polynomial truncated(double rel_tol, double scale) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(cplx s, const Polynomial& p);

    Polynomial pow(int k) const;

private:
    void trim();
    std::vector<cplx> c_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

/// Long division; throws std::invalid_argument for a zero divisor.
DivMod divmod(const Polynomial& num, const Polynomial& den);

/// Power of two close to the largest root modulus (Fujiwara-type bound).
double root_scale(const Polynomial& p);

/// Monic gcd by Euclidean remainders, each truncated relative to the operand
/// norms at `rel_tol`. The variable is first dilated by the larger root scale
/// of the operands. gcd(0, 0) is the zero polynomial.
Polynomial gcd(const Polynomial& a, const Polynomial& b, double rel_tol = kGcdTolerance);

/// The same remainder sequence without the dilation.
Polynomial gcd_unscaled(const Polynomial& a, const Polynomial& b, double rel_tol = kGcdTolerance);

/// Yun's algorithm: factors[k] is the monic product of the roots of
/// multiplicity k + 1 (possibly the constant 1). The variable is rescaled by a
/// power of two so that roots have modulus ~1 before the gcd steps.
std::vector<Polynomial> square_free_decomposition(const Polynomial& p, double rel_tol = kGcdTolerance);

/// All roots of a square-free polynomial (Aberth-Ehrlich with Newton polishing).
/// Throws NumericError if the iteration cap is reached.
std::vector<cplx> simple_roots(const Polynomial& p);

struct Root {
    cplx value;
    int multiplicity;
};

/// Roots with exact multiplicities from square-free factorization.
/// Each root satisfies |p(r)| <= tol * norm(p) * max(1, |r|)^deg and the
/// multiplicities sum to deg p. Each claimed m-fold root is also checked
/// against the derivatives p', ..., p^{(m)}. The gcd tolerance is loosened
/// from 1e-12 in decades up to 1e-6 until a factorization validates;
/// otherwise NumericError is thrown.
/// Sorted by real part, then imaginary part.
std::vector<Root> roots_with_multiplicity(const Polynomial& p, double tol = 1e-8);

/// Number of times (z - a) divides p, judged by synthetic-division remainders
/// no larger than rel_tol * magnitude_at(a).
int order_at(const Polynomial& p, cplx a, double rel_tol = 1e-10);

} // namespace stasurf
