#include "lacuna/carleson.hpp"
#include "lacuna/experiments.hpp"

#include <doctest.h>

#include <random>

using namespace lacuna;

// Weight supported in [0, 1/8)^2 with sides 1/8 .. 1/32.
static CarlesonWeight corner_weight(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    CarlesonWeight a;
    std::uniform_real_distribution<double> v(0.1, 1.0);
    while (a.size() < count) {
        const int n1 = -3 - static_cast<int>(rng() % 3), n2 = -3 - static_cast<int>(rng() % 3);
        a.set({n1, n2, static_cast<long>(rng() % (1u << (-n1 - 3))), static_cast<long>(rng() % (1u << (-n2 - 3))), 0}, v(rng));
    }
    return a;
}

TEST_CASE("weights") {
    CarlesonWeight a;
    CHECK(a.empty());
    CHECK_THROWS_AS(a.set({-1, -1, 0, 0, 0}, -1.0), Error);
    a.set({-1, -1, 0, 0, 0}, 2.0);
    CHECK(a.get({-1, -1, 0, 0, 0}) == 2.0);
    CHECK(a.get({-1, -1, 1, 0, 0}) == 0.0);
    CHECK(a.scaled(0.5).get({-1, -1, 0, 0, 0}) == 1.0);
}

TEST_CASE("F_U sums exactly the rectangles inside U") {
    CarlesonWeight a;
    a.set({-2, -2, 0, 0, 0}, 1.0);
    a.set({-1, -1, 1, 1, 0}, 3.0);
    const auto u = OpenSet::from_rectangles({{-1, -1, 0, 0, 0}}, 16);
    const auto f = f_u(a, u);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) CHECK(f(i, j).real() == (i < 4 && j < 4 ? 1.0 : 0.0));
    const auto empty = f_u(a, OpenSet::from_rectangles({{-2, -2, 3, 3, 0}}, 16));
    for (auto v : empty.values()) CHECK(v == cplx(0));

    // Raster oracle at n = 64.
    const auto w = random_weight(9, 10, 5);
    const auto u2 = OpenSet::from_rectangles({{-1, 0, 0, 0, 0}, {-2, -2, 3, 1, 0}}, 64);
    const auto g = f_u(w, u2);
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j < 64; ++j) {
            double s = 0;
            for (const auto& [r, v] : w.entries()) {
                const auto b = pixel_box(r, 64);
                bool inside = true;
                for (long x = b.i0; x < b.i1; ++x)
                    for (long y = b.j0; y < b.j1; ++y) inside = inside && u2(x, y);
                if (inside && long(i) >= b.i0 && long(i) < b.i1 && long(j) >= b.j0 && long(j) < b.j1) s += v;
            }
            CHECK(g(i, j).real() == doctest::Approx(s));
        }
}

TEST_CASE("single-rectangle closed forms") {
    CarlesonWeight a;
    a.set({-1, -1, 0, 1, 0}, 1.0);  // |R0| = 1/4
    CHECK(cm_norm(a, 1) == doctest::Approx(1.0));
    CHECK(cm_norm(a, 2) == doctest::Approx(2.0));
    CHECK(cm_norm(a, 0) == doctest::Approx(1.0));
    CHECK(cm_norm(a.scaled(3), 1.5) == doctest::Approx(3 * cm_norm(a, 1.5)));
    CHECK(cm_norm(CarlesonWeight{}, 1) == 0.0);
}

TEST_CASE("exact CM norms against the subset and raster oracles") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = random_weight(100 + s, 10, 4);
        for (double p : {0.0, 0.5, 1.0, 2.0}) CHECK(cm_norm(a, p) == doctest::Approx(reference::cm_norm(a, p)).epsilon(1e-12));
        CHECK(cm_norm(a, 1, CmMode::Heuristic) <= cm_norm(a, 1) * (1 + 1e-12));
        const auto c = corner_weight(200 + s, 6);
        for (double p : {1.0, 2.0}) CHECK(cm_norm(c, p) == doctest::Approx(reference::cm_norm_pixels(c, p, 32)).epsilon(1e-12));
    }
}

TEST_CASE("CM norm is monotone in the weight for p >= 1") {
    const auto a = random_weight(7, 10, 4);
    CarlesonWeight b = a;
    b.set(a.support().front(), a.get(a.support().front()) + 0.5);
    for (double p : {1.0, 1.5, 2.0}) CHECK(cm_norm(b, p) >= cm_norm(a, p));
}

TEST_CASE("John-Nirenberg certificates") {
    CarlesonWeight single;
    single.set({-2, -1, 1, 0, 0}, 1.0);
    const auto one = jn_certificate(single, 1.0, 0.2);
    CHECK(one.valid);
    CHECK(one.rounds.size() == 1);
    CHECK(one.rounds[0].e == 0.0);
    CHECK(check_certificate(one));

    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto b = random_weight(300 + s, 12, 5);
        for (double p : {1.0, 1.5}) {
            const auto c = jn_certificate(b.scaled(1.0 / cm_norm(b, p)), p, 0.05);
            std::string why;
            CHECK(c.valid);
            CHECK_MESSAGE(check_certificate(c, &why), why);
            double drops = 0;
            for (const auto& r : c.rounds) drops += r.drop;
            CHECK(drops == doctest::Approx(c.total));
            CHECK(c.constant == doctest::Approx(c.total / c.u0));
        }
    }
    CHECK_THROWS_AS(jn_certificate(single, 2.5, 0.1), Error);
    CHECK_THROWS_AS(jn_certificate(single, 1.0, 0.6), Error);
}

TEST_CASE("eps = 0.49 halving failure on striped weights") {
    // Heavy unit-height columns on every other pixel column: E has density 1/2 everywhere.
    CarlesonWeight a;
    for (long m = 0; m < 64; m += 2) a.set({-6, 0, m, 0, 0}, 10.0);
    const auto c = jn_certificate(a, 1.0, 0.49);
    CHECK(!c.valid);
    CHECK(c.failed_round == 0);
    CHECK(c.failure.find("halving") != std::string::npos);
    CHECK(check_certificate(c));
}

TEST_CASE("tampered certificates are rejected") {
    const auto b = random_weight(5, 12, 5);
    auto c = jn_certificate(b.scaled(1.0 / cm_norm(b, 1.0)), 1.0, 0.05);
    REQUIRE(check_certificate(c));
    auto t = c;
    t.total *= 1.5;
    CHECK(!check_certificate(t));
    t = c;
    t.rounds[0].halving = !t.rounds[0].halving;
    CHECK(!check_certificate(t));
}

TEST_CASE("mu_R") {
    const auto whole = OpenSet::whole(64);
    const auto r = mu_r(whole, {-3, -3, 2, 2, 0});
    CHECK(r.capped);
    const auto u = OpenSet::from_rectangles({{-2, -2, 1, 1, 0}}, 64);
    const auto m = mu_r(u, {-2, -2, 1, 1, 0});
    CHECK(m.mu >= 1.0);
    CHECK(!m.capped);
    CHECK_THROWS_AS(mu_r(u, {-1, -1, 1, 1, 0}), Error);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto a = random_weight(400 + s, 8, 5);
        const auto v = OpenSet::from_rectangles(a.support(), 64);
        for (const auto& q : maximal_rectangles(v)) {
            const auto x = mu_r(v, q), y = reference::mu_r(v, q);
            CHECK(x.mu == y.mu);
            CHECK(x.capped == y.capped);
        }
    }
}

TEST_CASE("maximal rectangles cover U and are maximal") {
    const auto u = OpenSet::from_rectangles({{-1, -2, 0, 0, 0}, {-2, -1, 0, 0, 0}}, 16);
    const auto rs = maximal_rectangles(u);
    CHECK(rs.size() == 2);
    CHECK(OpenSet::from_rectangles(rs, 16) == u);
    CHECK(maximal_rectangles(OpenSet::whole(16)).size() == 1);
}

TEST_CASE("Journe covering checks") {
    const auto zero = journe_verify(CarlesonWeight{}, 0.25);
    CHECK(zero.hypothesis);
    CHECK(zero.cm1 == 0.0);
    // Saturated single rectangle.
    const DyadicRectangle r0{-2, -2, 1, 2, 0};
    const auto u = OpenSet::from_rectangles({r0}, 64);
    CarlesonWeight a;
    a.set(r0, std::pow(mu_r(u, r0).mu, -0.25) * r0.area());
    const auto rep = journe_verify(a, 0.25);
    CHECK(rep.hypothesis);
    CHECK(rep.worst_slack == doctest::Approx(1.0));
    CHECK(rep.cm1 == doctest::Approx(a.get(r0)));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rep2 = journe_verify(journe_weight(s, 0.25), 0.25);
        CHECK(rep2.hypothesis);
        CHECK(rep2.near_disjoint);
        CHECK(rep2.partition_exact);
        for (const auto& c : rep2.classes) CHECK(c.sum_area <= 2 * c.union_area * (1 + 1e-12));
    }
}
