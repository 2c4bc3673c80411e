#include "support.hpp"

#include "lacuna/operators.hpp"
#include "lacuna/packets.hpp"

#include <doctest.h>

using namespace lacuna;

TEST_CASE("analytic projection is (I + (i/pi) H) / 2") {
    for (std::size_t n : {64u, 128u})
        for (int t = 0; t < 5; ++t) {
            const auto f = test::random_field(n, 100 + t);
            const Direction v(std::cos(0.3 + t), std::sin(0.3 + t));
            const auto rhs = 0.5 * (f + cplx(0, 1.0 / kPi) * hilbert_dir(f, v));
            CHECK(test::rel_diff(analytic_proj(f, v), rhs) < 1e-10);
        }
}

// Zero mean: the origin lies on every critical line.
static Field2D mean_zero(Field2D f) {
    auto s = dft(f);
    s.at(0, 0) = 0;
    return idft(s);
}

TEST_CASE("projections are idempotent") {
    const auto f = mean_zero(test::random_field(64, 7));
    const auto b = quadrant_proj(f);
    CHECK(test::rel_diff(quadrant_proj(b), b) < 1e-12);
    // Off the critical line only: 1/2 there squares to 1/4.
    const Direction v(1.0, -std::sqrt(2.0));
    const auto p = analytic_proj(f, v);
    CHECK(test::rel_diff(analytic_proj(p, v), p) < 1e-12);
}

TEST_CASE("H_v squares to -pi^2 off the line") {
    const auto f = mean_zero(test::random_field(32, 9));
    const Direction v(1.0, -std::sqrt(3.0));
    const auto hh = hilbert_dir(hilbert_dir(f, v), v);
    CHECK(test::rel_diff(hh, -kPi * kPi * f) < 1e-12);
}

TEST_CASE("directional operators depend on direction only") {
    const auto f = test::random_field(32, 11);
    CHECK(test::rel_diff(hilbert_dir(f, Direction(0.5, -1)), hilbert_dir(f, Direction(2.0, -4))) < 1e-14);
    CHECK(test::rel_diff(hilbert_dir(f, Direction(0.5, -1)), -1.0 * hilbert_dir(f, Direction(-0.5, 1))) < 1e-14);
    CHECK_THROWS_AS(Direction(0, 0), Error);
}

TEST_CASE("quadrant projection keeps exactly the closed quadrant") {
    const auto f = test::random_field(16, 12);
    const auto s = dft(f), b = dft(quadrant_proj(f));
    for (int k1 = -8; k1 < 8; ++k1)
        for (int k2 = -8; k2 < 8; ++k2) {
            const cplx want = k1 >= 0 && k2 >= 0 ? s.at(k1, k2) : cplx(0);
            CHECK(std::abs(b.at(k1, k2) - want) < 1e-12);
        }
}

TEST_CASE("lacunary sets") {
    const auto s = make_lacunary(8);
    CHECK(s.size() == 8);
    CHECK(s.a[0] == doctest::Approx(1.0 / 3.0));
    CHECK_NOTHROW(validate_lacunary(s, LacunaryMode::Normalized));
    LacunarySet bad{2.0, {0.5, 0.3}};
    CHECK_THROWS_AS(validate_lacunary(bad, LacunaryMode::Theorem), Error);
    CHECK_THROWS_AS(make_lacunary(0), Error);
}

TEST_CASE("equispaced families are nested") {
    const auto e4 = equispaced_directions(4), e8 = equispaced_directions(8);
    for (std::size_t i = 0; i < e4.size(); ++i) {
        CHECK(e4[i].v1() == doctest::Approx(e8[2 * i].v1()));
        CHECK(e4[i].v2() == doctest::Approx(e8[2 * i].v2()));
    }
}

TEST_CASE("cone trichotomy thresholds") {
    const double a = 0.25;
    CHECK(cone_classify(a, 0.1, 1.0) == ConeLabel::Keep);
    CHECK(cone_classify(a, 0.6, 1.0) == ConeLabel::Kill);
    CHECK(cone_classify(a, 0.25, 1.0) == ConeLabel::Transition);
    CHECK(to_string(ConeLabel::Transition) == "transition");
}

TEST_CASE("parallel maximal kernels agree with the serial references") {
    const auto f = test::random_field(64, 21);
    const auto dirs = make_lacunary(6).directions();
    for (auto kind : {DirectionalKind::H, DirectionalKind::P})
        CHECK(test::max_abs_diff(maximal_directional(f, dirs, kind), reference::maximal_directional(f, dirs, kind)) < 1e-12);
    const auto small = test::random_field(16, 22);
    CHECK(test::max_abs_diff(strong_maximal(small), reference::strong_maximal(small)) < 1e-12);
}

TEST_CASE("maximal directional of one direction is the modulus") {
    const auto f = test::random_field(32, 23);
    const std::vector<Direction> one{Direction(1, -2)};
    CHECK(test::max_abs_diff(maximal_directional(f, one, DirectionalKind::H), abs_field(hilbert_dir(f, one[0]))) < 1e-12);
}

TEST_CASE("strong maximal function bounds") {
    Field2D c(32);
    for (auto& v : c.values()) v = 2.0;
    const auto mc = strong_maximal(c);
    for (auto v : mc.values()) CHECK(v.real() == doctest::Approx(2.0));
    // The one-sample rectangle already gives M f >= |f| / 4; M never exceeds sup |f|.
    const auto f = test::random_field(32, 24);
    const auto m = strong_maximal(f);
    double top = 0;
    for (auto v : f.values()) top = std::max(top, std::abs(v));
    for (std::size_t k = 0; k < f.values().size(); ++k) {
        CHECK(m.values()[k].real() >= std::abs(f.values()[k]) * 0.25 - 1e-12);
        CHECK(m.values()[k].real() <= top + 1e-12);
    }
}
