#pragma once
/** \file
 * \brief Extended complex plane, chordal metric and the Moebius group.
 *
 * Points of the Riemann sphere are represented by ExtendedComplex, which keeps
 * the point at infinity as a dedicated tag. Moebius transforms are stored as
 * unit-determinant 2x2 complex matrices; S and -S act identically.
 */

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace stasurf {

using cplx = std::complex<double>;

/// Equality tolerance for points of the extended plane (chordal distance).
inline constexpr double kPointTolerance = 1e-10;

class ExtendedComplex {
public:
    ExtendedComplex() = default;
    /// Throws std::invalid_argument for NaN or overflowed components.
    ExtendedComplex(cplx z);
    ExtendedComplex(double re, double im = 0.0) : ExtendedComplex(cplx{re, im}) {}

    static ExtendedComplex infinity();
    /// Maps non-finite values (overflow, 1/0) to the point at infinity.
    static ExtendedComplex from_value(cplx z);

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }
    /// Finite value; throws std::logic_error at infinity.
    cplx value() const;

    ExtendedComplex conj() const;

    std::string to_string() const;

private:
    cplx z_{};
    bool infinite_ = false;
};

/// Chordal distance on the Riemann sphere, in [0, 1].
double chordal(const ExtendedComplex& a, const ExtendedComplex& b);

/// Equality up to chordal distance `tol`.
bool approx_equal(const ExtendedComplex& a, const ExtendedComplex& b, double tol = kPointTolerance);

class MobiusTransform {
public:
    /// Normalizes to ad - bc = 1; throws std::invalid_argument if singular.
    MobiusTransform(cplx a, cplx b, cplx c, cplx d);

    static MobiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx a() const { return m_[0]; }
    cplx b() const { return m_[1]; }
    cplx c() const { return m_[2]; }
    cplx d() const { return m_[3]; }

    cplx determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    cplx trace() const { return m_[0] + m_[3]; }

    ExtendedComplex operator()(const ExtendedComplex& z) const;

    MobiusTransform operator*(const MobiusTransform& rhs) const;
    MobiusTransform inverse() const;
    /// Entrywise complex conjugate.
    MobiusTransform conj() const;
    MobiusTransform negated() const;

private:
    std::array<cplx, 4> m_;
};

ExtendedComplex mobius_apply(const MobiusTransform& s, const ExtendedComplex& z);

enum class DegeneracyType { Identity, Hyperbolic, Elliptic, Parabolic };

std::string to_string(DegeneracyType t);

/// Normal form of a matrix under S ~ +-conj(T) S T^{-1}.
struct DegeneracyClass {
    DegeneracyType type = DegeneracyType::Identity;
    /// u > 0 for Hyperbolic, alpha in (0, pi/2] for Elliptic, 0 otherwise.
    double parameter = 0.0;
    /// trace(conj(S) S), real for S in SL(2,C).
    double invariant = 2.0;

    /// Number of solutions of M_S(z) = conj(z); nullopt encodes infinitely many.
    std::optional<int> expected_fixed_count() const;
};

/// Tolerance for the tau == 2 and conj(S) S == I comparisons.
inline constexpr double kClassifyTolerance = 1e-9;

DegeneracyClass classify_conjugate_similarity(const MobiusTransform& s);

/// Metric of Q_{1,1}^+ in the (w1, w2) chart: Re[4 conj(dw1) dw2 / (conj(w1) - w2)^2].
/// Throws DomainError when w2 = conj(w1) or a chart coordinate is infinite.
double q11_pairing(const ExtendedComplex& w1, const ExtendedComplex& w2, cplx dw1, cplx dw2);

} // namespace stasurf
