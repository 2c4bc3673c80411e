#include "support.hpp"

#include "lacuna/experiments.hpp"
#include "lacuna/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace lacuna;

TEST_CASE("f2d round trip and layout") {
    const auto f = test::random_field(16, 1, 2.5);
    std::stringstream buf;
    io::write_field(buf, f);
    const auto bytes = buf.str();
    CHECK(bytes.size() == 4 + 8 + 16 * 16 * 16);
    CHECK(static_cast<unsigned char>(bytes[0]) == 16);
    CHECK(bytes[1] == 0);
    const auto g = io::read_field(buf);
    CHECK(g.n() == 16);
    CHECK(g.period() == 2.5);
    CHECK(test::max_abs_diff(f, g) == 0.0);
    std::stringstream cut(bytes.substr(0, 100));
    CHECK_THROWS_AS(io::read_field(cut), Error);
}

TEST_CASE("direction sets") {
    const auto s = make_lacunary(5);
    std::stringstream buf;
    io::write_directions(buf, s);
    CHECK(buf.str().rfind("lambda=", 0) == 0);
    const auto t = io::read_directions(buf);
    CHECK(t.ratio == s.ratio);
    CHECK(t.a == s.a);
    std::stringstream bad("lambda=2\n0.5\n0.3\n");
    CHECK_THROWS_AS(io::read_directions(bad), Error);
    std::stringstream noheader("0.5\n");
    CHECK_THROWS_AS(io::read_directions(noheader), Error);
}

TEST_CASE("coefficient maps and collections") {
    const auto f = test::random_field(64, 2);
    const auto c = analysis(f, ShiftedGrid::base(64), 1);
    std::stringstream buf;
    io::write_coefficients(buf, c);
    CHECK(io::read_coefficients(buf) == c);

    std::mt19937_64 rng(3);
    auto s = test::random_collection(rng, 7);
    s.add({-1, -1, 0, 0, 0}, 1.0, -1);
    std::stringstream cb;
    io::write_collection(cb, s);
    const auto t = io::read_collection(cb);
    CHECK(t.rects() == s.rects());
    CHECK(t.coeffs() == s.coeffs());
    CHECK(t.signs() == s.signs());
    std::stringstream bad("0 -1 -1 0 0 1 0 2\n");
    CHECK_THROWS_AS(io::read_collection(bad), Error);
}

TEST_CASE("weights") {
    const auto a = random_weight(4, 9, 4);
    std::stringstream buf;
    io::write_weights(buf, a);
    const auto b = io::read_weights(buf);
    CHECK(b.entries() == a.entries());
    std::stringstream outside("-1 -1 2 0 1.0\n");
    CHECK_THROWS_AS(io::read_weights(outside), Error);
    std::stringstream negative("-1 -1 0 0 -1.0\n");
    CHECK_THROWS_AS(io::read_weights(negative), Error);
}

TEST_CASE("certificates round trip and stay checkable") {
    const auto b = random_weight(6, 12, 5);
    const auto c = jn_certificate(b.scaled(1.0 / cm_norm(b, 1.0)), 1.0, 0.05);
    std::stringstream buf;
    io::write_certificate(buf, c);
    const auto d = io::read_certificate(buf);
    CHECK(d.rounds.size() == c.rounds.size());
    CHECK(d.total == c.total);
    CHECK(d.valid == c.valid);
    CHECK(check_certificate(d));

    CarlesonWeight stripes;
    for (long m = 0; m < 64; m += 2) stripes.set({-6, 0, m, 0, 0}, 10.0);
    const auto f = jn_certificate(stripes, 1.0, 0.49);
    std::stringstream fb;
    io::write_certificate(fb, f);
    const auto g = io::read_certificate(fb);
    CHECK(!g.valid);
    CHECK(g.failure == f.failure);
    CHECK(check_certificate(g));
}
