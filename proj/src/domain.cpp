#include "stasurf/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace stasurf {

std::string to_string(DomainKind k) {
    switch (k) {
    case DomainKind::Plane: return "plane";
    case DomainKind::Disk: return "disk";
    case DomainKind::SphereMinusPoints: return "sphere-minus-points";
    case DomainKind::AnnulusLike: return "plane-minus-points";
    }
    return "?";
}

Domain Domain::disk(double r) {
    Domain d;
    d.kind = DomainKind::Disk;
    d.radius = r;
    d.validate();
    return d;
}

Domain Domain::sphere_minus(std::vector<ExtendedComplex> pts) {
    Domain d;
    d.kind = DomainKind::SphereMinusPoints;
    d.punctures = std::move(pts);
    d.validate();
    return d;
}

Domain Domain::plane_minus(std::vector<cplx> pts) {
    Domain d;
    d.kind = DomainKind::AnnulusLike;
    for (const cplx p : pts)
        d.punctures.emplace_back(p);
    d.validate();
    return d;
}

void Domain::validate() const {
    if (kind == DomainKind::Disk && !(radius > 0.0))
        throw std::invalid_argument("Domain: disk radius must be positive");
    for (std::size_t i = 0; i < punctures.size(); ++i) {
        if (kind == DomainKind::AnnulusLike && punctures[i].is_infinite())
            throw std::invalid_argument("Domain: plane-minus-points punctures must be finite");
        for (std::size_t j = 0; j < i; ++j)
            if (chordal(punctures[i], punctures[j]) <= 1e-9)
                throw std::invalid_argument("Domain: coincident punctures " + punctures[i].to_string());
    }
}

bool Domain::contains(cplx z, double clearance) const {
    if (kind == DomainKind::Disk && !(std::abs(z) < radius))
        return false;
    for (const auto& p : punctures)
        if (chordal(p, ExtendedComplex(z)) <= clearance)
            return false;
    return true;
}

bool Domain::contains_infinity() const {
    if (kind != DomainKind::SphereMinusPoints)
        return false;
    for (const auto& p : punctures)
        if (p.is_infinite())
            return false;
    return true;
}

bool Domain::simply_connected() const {
    switch (kind) {
    case DomainKind::Plane:
    case DomainKind::Disk: return true;
    case DomainKind::SphereMinusPoints: return punctures.size() <= 1;
    case DomainKind::AnnulusLike: return punctures.empty();
    }
    return false;
}

Grid Grid::rectangle(double u0, double u1, double v0, double v1, int nu, int nv) {
    if (nu < 0 || nv < 0)
        throw std::invalid_argument("Grid: negative node count");
    Grid g;
    g.kind = Kind::Rectangle;
    g.a0 = u0;
    g.a1 = u1;
    g.b0 = v0;
    g.b1 = v1;
    g.na = nu;
    g.nb = nv;
    return g;
}

Grid Grid::polar(cplx center, double r0, double r1, int nr, double t0, double t1, int nt) {
    if (nr < 0 || nt < 0)
        throw std::invalid_argument("Grid: negative node count");
    if (r0 < 0.0 || r1 < 0.0)
        throw std::invalid_argument("Grid: negative radius");
    Grid g;
    g.kind = Kind::Polar;
    g.center = center;
    g.a0 = t0;
    g.a1 = t1;
    g.b0 = r0;
    g.b1 = r1;
    g.na = nt;
    g.nb = nr;
    return g;
}

namespace {
double lerp(double x0, double x1, int k, int n) { return n <= 1 ? x0 : x0 + (x1 - x0) * k / (n - 1); }
} // namespace

cplx Grid::node(int i, int j) const {
    const double a = lerp(a0, a1, j, na);
    const double b = lerp(b0, b1, i, nb);
    if (kind == Kind::Rectangle)
        return {a, b};
    return center + std::polar(b, a);
}

} // namespace stasurf
