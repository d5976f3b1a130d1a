#pragma once
/** \file
 * \brief Closed contours, holomorphic 1-forms, residues and zero counting.
 */

#include "stasurf/rational.hpp"

#include <variant>
#include <vector>

namespace stasurf {

struct Circle {
    cplx center;
    double radius;
};

/// Piecewise-linear path through the vertices; closed iff front == back.
struct Polyline {
    std::vector<cplx> vertices;
    bool closed() const { return vertices.size() >= 2 && vertices.front() == vertices.back(); }
};

using Contour = std::variant<Circle, Polyline>;

/// Minimum clearance between a contour and a pole of the integrand.
inline constexpr double kPoleClearance = 1e-6;

/// g(z) dz, with g rational (exact poles) or black-box (evaluation only).
struct Holomorphic1Form {
    Meromorphic coefficient;

    Holomorphic1Form(Meromorphic g) : coefficient(std::move(g)) {}
    Holomorphic1Form(RationalFunction g) : coefficient(std::move(g)) {}
};

double distance_to_contour(const Contour& c, cplx z);

/// Winding number of a closed contour around z (throws DomainError if z is
/// within kPoleClearance of the contour).
int winding_number(const Contour& c, cplx z);

/// Residue of f at b: the t^{-1} Laurent coefficient of f(b + t).
cplx residue(const RationalFunction& f, cplx b);

/// 2 pi i * sum of winding(b) * Res_b f over the finite poles. Exact oracle for
/// closed contours; the contour must keep kPoleClearance from every pole.
cplx residue_integral(const RationalFunction& f, const Contour& c);

/// Quadrature of  int_c omega. Throws DomainError when a pole lies within
/// kPoleClearance of the contour (rational forms) or the integrand is not
/// finite at a node (black-box forms).
cplx contour_integral(const Holomorphic1Form& omega, const Contour& c);

/// Zeros of f - a inside |z - center| < radius, counted with multiplicity, by
/// the argument principle. Rational f: the known pole count inside is added
/// back. Black-box f is assumed holomorphic on the closed disk.
/// Throws DomainError for a zero or pole on the circle and NumericError when
/// the winding integral is more than 0.1 from an integer.
int count_zeros_in_disk(const Meromorphic& f, cplx a, cplx center, double radius);

} // namespace stasurf
