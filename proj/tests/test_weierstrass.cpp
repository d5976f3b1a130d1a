#include "doctest.h"
#include "random_data.hpp"

#include "stasurf/errors.hpp"
#include "stasurf/mesh.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace stasurf;

namespace {

const Polynomial Z{0.0, 1.0};
const Polynomial ONE{1.0};
const cplx I{0.0, 1.0};

RationalFunction z() { return RationalFunction::identity(); }
RationalFunction inv(cplx c = 1.0) { return RationalFunction(Polynomial::constant(c), Z); }

WeierstrassData catenoid() {
    return WeierstrassData::direct(z(), inv(-1.0), inv(1.0), Domain::plane_minus({0.0}));
}

WeierstrassData enneper() {
    return WeierstrassData::direct(z(), inv(-1.0), RationalFunction(Z), Domain::plane());
}

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

} // namespace

TEST_CASE("phi forms of the catenoid and Enneper data") {
    const PhiForms c = phi_forms(catenoid(), 1.0);
    CHECK(close(c[0], 0.0));
    CHECK(close(c[1], -2.0 * I));
    CHECK(close(c[2], 2.0));
    CHECK(close(c[3], 0.0));
    CHECK(induced_metric(catenoid(), 1.0) == doctest::Approx(8.0));

    for (const cplx w : {cplx{0.3, -0.7}, cplx{2.0, 1.0}, cplx{0.0, 0.0}}) {
        const PhiForms e = phi_forms(enneper(), w);
        CHECK(close(e[0], w * w - 1.0));
        CHECK(close(e[1], -I * (w * w + 1.0)));
        CHECK(close(e[2], 2.0 * w));
        CHECK(close(e[3], 0.0));
        CHECK(std::abs(null_residual(e)) < 1e-12);
    }
    CHECK_THROWS_AS(phi_forms(catenoid(), 0.0), DomainError);
}

TEST_CASE("regularity conditions") {
    const Grid g = Grid::rectangle(-1, 1, -1, 1, 21, 21);
    const auto cat = check_regularity(catenoid(), g);
    CHECK(cat.verdict == Verdict::Pass);
    CHECK(cat.condition2 == Verdict::Pass);

    const auto same = check_regularity(WeierstrassData::direct(z(), z(), RationalFunction(ONE), Domain::plane()), g);
    CHECK(same.condition1 == Verdict::Fail);
    CHECK(std::abs(same.argmin.imag()) < 1e-12);

    const auto zero = check_regularity(
        WeierstrassData::direct(z(), RationalFunction(), RationalFunction(ONE), Domain::plane()), g);
    CHECK(zero.condition1 == Verdict::Fail);
    CHECK(std::abs(zero.argmin) < 1e-12);

    // dh = dz has no zero where psi2 = -1/z has its pole
    const auto bad = check_regularity(WeierstrassData::direct(z(), inv(-1.0), RationalFunction(ONE), Domain::plane()), g);
    CHECK(bad.condition2 == Verdict::Fail);
    CHECK(check_regularity(enneper(), g).verdict == Verdict::Pass);

    // related data: f = z + 1 has E_f = {inf}; psi1 = z reaches inf only outside C
    const auto rel = WeierstrassData::related(z(), RationalFunction(Polynomial{1.0, 1.0}), RationalFunction(ONE),
                                              Domain::plane());
    CHECK(check_regularity(rel, g).condition1 == Verdict::Pass);
    const auto rel0 = WeierstrassData::related(z(), RationalFunction(Polynomial{0.0, 4.0}), RationalFunction(ONE),
                                               Domain::plane());
    CHECK(check_regularity(rel0, Grid::rectangle(2, 3, 2, 3, 3, 3)).condition1 == Verdict::Fail);
}

TEST_CASE("period residuals") {
    const std::vector<Contour> loop{Circle{0.0, 1.0}};
    const auto cat = check_periods(catenoid(), loop);
    REQUIRE(cat.loops.size() == 1);
    REQUIRE(cat.loops[0].exact);
    for (const double r : *cat.loops[0].exact)
        CHECK(r == 0.0);
    for (const double r : cat.loops[0].quadrature)
        CHECK(r < 1e-9);
    CHECK(cat.verdict == Verdict::Pass);

    const auto broken = WeierstrassData::direct(z(), inv(-1.0), RationalFunction(ONE, Z * Z), Domain::plane_minus({0.0}));
    const auto rep = check_periods(broken, loop);
    CHECK(rep.verdict == Verdict::Fail);
    CHECK((*rep.loops[0].exact)[0] == doctest::Approx(2.0 * std::numbers::pi));

    CHECK(check_periods(enneper(), {}).verdict == Verdict::Pass);
    CHECK_THROWS_AS(check_periods(catenoid(), {Circle{1.0, 1.0}}), DomainError);
}

TEST_CASE("immersion embeddings") {
    // psi2 = -1/psi1: x4 constant; psi2 = 1/psi1: x3 constant
    const auto max = WeierstrassData::direct(z(), inv(1.0), RationalFunction(Z), Domain::plane());
    for (const cplx w : {cplx{0.5, 0.5}, cplx{-1.0, 0.2}, cplx{0.1, -2.0}}) {
        CHECK(std::abs(immerse(enneper(), w, 0.0).x[3]) < 1e-12);
        CHECK(std::abs(immerse(max, w, 0.0).x[2]) < 1e-12);
    }
    // homotopic paths agree
    const cplx w{1.2, -0.4};
    const auto a = immerse(enneper(), w, 0.0);
    const auto b = immerse(enneper(), Polyline{{0.0, {0.0, 1.0}, {1.5, 1.0}, w}});
    for (int k = 0; k < 4; ++k)
        CHECK(a.x[k] == doctest::Approx(b.x[k]).epsilon(1e-12));
    // the catenoid around the puncture
    const auto c1 = immerse(catenoid(), Polyline{{1.0, {0.0, 1.0}, -1.0}});
    const auto c2 = immerse(catenoid(), Polyline{{1.0, {0.0, -1.0}, -1.0}});
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(c1.x[k] - c2.x[k]) < 1e-9);
    CHECK_THROWS_AS(immerse(catenoid(), -1.0, 1.0), DomainError);
}

TEST_CASE("gauss map branches") {
    const auto wd = catenoid();
    for (const cplx w : {cplx{0.4, 0.3}, cplx{-2.0, 1.0}}) {
        const auto [g1, g2] = gauss_from_phi(phi_forms(wd, w));
        CHECK(chordal(g1, wd.psi1()(w)) < 1e-12);
        CHECK(chordal(g2, wd.psi2()(w)) < 1e-12);
    }
    const double t = 0.75;
    const auto [a1, a2] = gauss_from_phi({1.0, I, t, -t});
    CHECK(approx_equal(a1, -t));
    CHECK(a2.is_infinite());
    const auto [b1, b2] = gauss_from_phi({1.0, -I, t, -t});
    CHECK(b1.is_infinite());
    CHECK(approx_equal(b2, -t));
    const auto [c1, c2] = gauss_from_phi({0.0, 0.0, 1.0, -1.0});
    CHECK(c1.is_infinite());
    CHECK(c2.is_infinite());
    CHECK_THROWS_AS(gauss_from_phi({1.0, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(gauss_from_phi({0.0, 0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("lorentz action keeps the metric") {
    std::mt19937_64 rng(11);
    const auto wd = catenoid();
    const auto id = lorentz_action(wd, MobiusTransform::identity());
    CHECK(id.psi1().rational().approx_equal(wd.psi1().rational()));
    CHECK(id.dh().coefficient.rational().approx_equal(wd.dh().coefficient.rational()));
    for (int t = 0; t < 20; ++t) {
        const auto s = testdata::random_sl2(rng);
        const auto moved = lorentz_action(wd, s);
        for (const cplx w : {cplx{0.4, 0.3}, cplx{-2.0, 1.0}, cplx{0.1, -0.9}}) {
            const double l0 = induced_metric(wd, w);
            CHECK(std::abs(induced_metric(moved, w) - l0) <= 1e-9 * l0);
        }
    }
    const double e = std::exp(0.5);
    const auto hyp = lorentz_action(wd, MobiusTransform(e, 0.0, 0.0, 1.0 / e));
    CHECK(close(hyp.psi1().value(2.0), std::exp(1.0) * 2.0));
    CHECK(close(hyp.psi2().value(2.0), -0.5 * std::exp(1.0)));
}

TEST_CASE("related data under lorentz action") {
    std::mt19937_64 rng(5);
    const auto f = RationalFunction(Polynomial{1.0, 1.0});
    const auto wd = WeierstrassData::related(z(), f, RationalFunction(ONE), Domain::plane());
    const auto s = testdata::random_sl2(rng);
    const auto moved = lorentz_action(wd, s);
    REQUIRE(moved.relation());
    const cplx w{0.3, 0.8};
    const ExtendedComplex lhs = (*moved.relation())(moved.psi1()(w));
    CHECK(chordal(lhs, moved.psi2()(w)) < 1e-10);
}

TEST_CASE("r4 correspondence") {
    const PhiForms e = phi_forms(enneper(), {0.3, 0.2});
    CHECK(to_minimal_r4(e) == e);
    const PhiForms c = to_minimal_r4(phi_forms(catenoid(), {0.7, -0.4}));
    const cplx sq = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
    CHECK(std::abs(sq) < 1e-12);
}

TEST_CASE("completeness probe") {
    std::vector<Polyline> rays{Polyline{{1.0, 1e-3}}};
    const auto p = completeness_probe(catenoid(), rays, 100.0);
    CHECK(p.all_exceed);
    CHECK(p.label == "evidence, not proof");
    const auto flat = WeierstrassData::direct(RationalFunction::constant(2.0), RationalFunction::constant(-0.5),
                                              RationalFunction(ONE), Domain::plane());
    CHECK(completeness_probe(flat, {Polyline{{0.0, 1e4}}}, 1e3).all_exceed);
    const auto disk = WeierstrassData::direct(z(), inv(-1.0), RationalFunction(Z), Domain::disk(1.0));
    const auto d = completeness_probe(disk, {Polyline{{0.0, 0.999999}}}, 100.0);
    CHECK_FALSE(d.all_exceed);
    CHECK(d.lengths[0] < 10.0);
}

TEST_CASE("mesh sampling") {
    const auto m = sample_mesh(enneper(), Grid::rectangle(-1, 1, -1, 1, 11, 11));
    CHECK(m.samples().size() == 121);
    CHECK(m.skipped.empty());
    const auto a = audit_mesh(enneper(), m);
    CHECK(a.x_spread[3] < 1e-10);
    CHECK(a.max_metric_rel < 1e-5);
    CHECK(a.max_conformal_rel < 1e-5);
    CHECK(a.max_harmonic_rel < 1e-4);
    CHECK(a.max_null < 1e-12);

    CHECK(sample_mesh(enneper(), Grid::rectangle(0, 1, 0, 1, 0, 0)).samples().empty());

    const auto cm = sample_mesh(catenoid(), Grid::polar(0.0, 0.5, 2.0, 9, 0.0, 2.0 * std::numbers::pi, 17));
    CHECK(cm.skipped.empty());
    const auto ca = audit_mesh(catenoid(), cm);
    CHECK(ca.max_conformal_rel < 1e-6);
    CHECK(ca.max_metric_rel < 1e-5);
    CHECK(ca.min_spacelike > 0.0);
    CHECK(ca.max_gauss_chordal < 1e-10);

    // a rectangle through the puncture: the node at 0 is skipped, the rest sampled
    const auto pm = sample_mesh(catenoid(), Grid::rectangle(-1, 1, -1, 1, 5, 5));
    REQUIRE(pm.skipped.size() == 1);
    CHECK(pm.skipped[0].index == 12);
}

TEST_CASE("mesh kernels agree and exports are stable") {
    const Grid g = Grid::rectangle(-1, 1, -1, 1, 9, 7);
    const auto s = sample_mesh(catenoid(), g, Exec::Serial);
    const auto p = sample_mesh(catenoid(), g, Exec::Parallel);
    REQUIRE(s.nodes.size() == p.nodes.size());
    std::ostringstream a, b, c, d;
    write_csv(a, s);
    write_csv(b, p);
    CHECK(a.str() == b.str());
    write_obj(c, s);
    write_obj(d, p);
    CHECK(c.str() == d.str());
    CHECK(a.str().rfind("u,v,x1,x2,x3,x4,lambda2\n", 0) == 0);
}
