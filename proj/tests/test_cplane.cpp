#include "doctest.h"
#include "random_data.hpp"

#include "stasurf/cplane.hpp"
#include "stasurf/errors.hpp"

#include <cmath>
#include <numbers>

using namespace stasurf;

namespace {
const ExtendedComplex inf = ExtendedComplex::infinity();
}

TEST_CASE("chordal distance known values") {
    CHECK(chordal(0.0, inf) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(chordal(1.0, -1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(chordal(0.0, 1.0) == doctest::Approx(0.7071067811865476).epsilon(1e-15));
    CHECK(chordal(inf, inf) == 0.0);
    CHECK(chordal(cplx{3, 4}, cplx{3, 4}) == 0.0);
}

TEST_CASE("chordal is a metric on random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto pick = [&]() -> ExtendedComplex {
            if (rng() % 17 == 0)
                return inf;
            return testdata::gaussian(rng, 3.0);
        };
        const auto a = pick(), b = pick(), c = pick();
        CHECK(chordal(a, b) >= 0.0);
        CHECK(chordal(a, b) <= 1.0 + 1e-15);
        CHECK(chordal(a, b) == doctest::Approx(chordal(b, a)).epsilon(1e-14));
        CHECK(chordal(a, c) <= chordal(a, b) + chordal(b, c) + 1e-12);
    }
}

TEST_CASE("extended complex rejects non-finite values") {
    CHECK_THROWS_AS(ExtendedComplex(cplx{NAN, 0.0}), std::invalid_argument);
    CHECK(ExtendedComplex::from_value(cplx{INFINITY, 0.0}).is_infinite());
    CHECK(inf.conj().is_infinite());
    CHECK_THROWS(inf.value());
}

TEST_CASE("mobius_apply examples") {
    CHECK(approx_equal(mobius_apply(MobiusTransform::identity(), cplx{2, 3}), cplx{2, 3}));
    CHECK(approx_equal(mobius_apply({1, 1, 0, 1}, 0.0), 1.0));
    CHECK(approx_equal(mobius_apply({0, 1, -1, 0}, 2.0), -0.5));
    CHECK(mobius_apply({0, 1, -1, 0}, 0.0).is_infinite());
    CHECK(approx_equal(mobius_apply({2, 0, 1, 1}, inf), 2.0));
    CHECK(mobius_apply({1, 1, 0, 1}, inf).is_infinite());
}

TEST_CASE("mobius transforms normalize to unit determinant") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto s = testdata::random_sl2(rng);
        CHECK(std::abs(s.determinant() - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(MobiusTransform(1, 2, 2, 4), std::invalid_argument);
}

TEST_CASE("mobius action is a group action") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto s1 = testdata::random_sl2(rng), s2 = testdata::random_sl2(rng);
        const ExtendedComplex z = (i % 50 == 0) ? inf : ExtendedComplex(testdata::gaussian(rng));
        CHECK(approx_equal(mobius_apply(MobiusTransform::identity(), z), z, 0.0));
        CHECK(approx_equal(mobius_apply(s1 * s2, z), mobius_apply(s1, mobius_apply(s2, z)), 1e-10));
        CHECK(approx_equal(mobius_apply(s1.negated(), z), mobius_apply(s1, z), 1e-12));
        CHECK(approx_equal(mobius_apply(s1.inverse(), mobius_apply(s1, z)), z, 1e-9));
    }
}

TEST_CASE("classifier normal forms") {
    const double e = std::numbers::e;
    const auto hyp = classify_conjugate_similarity({e, 0, 0, 1 / e});
    CHECK(hyp.type == DegeneracyType::Hyperbolic);
    CHECK(hyp.parameter == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hyp.expected_fixed_count() == 2);

    const auto ell = classify_conjugate_similarity({0, 1, -1, 0});
    CHECK(ell.type == DegeneracyType::Elliptic);
    CHECK(ell.parameter == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK(ell.expected_fixed_count() == 0);

    const auto par = classify_conjugate_similarity({1, 1, 0, 1});
    CHECK(par.type == DegeneracyType::Parabolic);
    CHECK(par.expected_fixed_count() == 1);

    const auto id = classify_conjugate_similarity(MobiusTransform::identity());
    CHECK(id.type == DegeneracyType::Identity);
    CHECK_FALSE(id.expected_fixed_count().has_value());

    // z -> e^{-2i alpha} / z
    const double alpha = 0.3;
    const auto ell2 = classify_conjugate_similarity({0, std::polar(1.0, -alpha), std::polar(1.0, alpha), 0});
    CHECK(ell2.type == DegeneracyType::Elliptic);
    CHECK(ell2.parameter == doctest::Approx(alpha).epsilon(1e-12));
}

TEST_CASE("classifier trace is real and invariant under conjugate similarity") {
    std::mt19937_64 rng(7);
    const double e = std::numbers::e;
    const std::vector<MobiusTransform> forms{MobiusTransform::identity(), {e, 0, 0, 1 / e}, {0, 1, -1, 0},
                                             {1, 1, 0, 1}};
    for (int i = 0; i < 400; ++i) {
        const auto s = testdata::random_sl2(rng);
        const auto sb = s.conj();
        const cplx tau = sb.a() * s.a() + sb.b() * s.c() + sb.c() * s.b() + sb.d() * s.d();
        CHECK(std::abs(tau.imag()) <= 1e-12 * std::max(1.0, std::abs(tau)));

        const auto& base = forms[static_cast<std::size_t>(i) % forms.size()];
        const auto t = testdata::random_sl2(rng);
        const auto conj_sim = (t.conj() * base * t.inverse()).negated();
        const auto c1 = classify_conjugate_similarity(base);
        const auto c2 = classify_conjugate_similarity(conj_sim);
        CHECK(c1.type == c2.type);
        CHECK(c1.parameter == doctest::Approx(c2.parameter).epsilon(1e-6));
    }
}

TEST_CASE("q11 pairing") {
    CHECK(q11_pairing(0.0, 1.0, 1.0, 1.0) == doctest::Approx(4.0));
    CHECK(q11_pairing(0.0, cplx{0, 1}, 1.0, 1.0) == doctest::Approx(-4.0));
    CHECK_THROWS_AS(q11_pairing(0.0, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(q11_pairing(inf, 0.0, 1.0, 1.0), DomainError);
}
