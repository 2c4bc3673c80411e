#include "support.hpp"

#include "lacuna/fft.hpp"
#include "lacuna/grid.hpp"

#include <doctest.h>

#include <limits>

using namespace lacuna;

// Direct O(n^4) evaluation of c_k = (L / n^2) sum_x f(x) e^{-2 pi i k.x / L}.
static SpectralField2D naive_dft(const Field2D& f) {
    const std::size_t n = f.n();
    SpectralField2D s(n, f.period());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            cplx acc = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    acc += f(i, j) * std::polar(1.0, -2 * kPi * static_cast<double>(a * i + b * j) / n);
            s.raw(a, b) = acc * f.period() / static_cast<double>(n * n);
        }
    return s;
}

TEST_CASE("dft matches the direct sum and inverts") {
    for (double period : {1.0, 2.5}) {
        const auto f = test::random_field(8, 3, period);
        const auto s = dft(f), ref = naive_dft(f);
        double err = 0;
        for (std::size_t k = 0; k < s.values().size(); ++k) err = std::max(err, std::abs(s.values()[k] - ref.values()[k]));
        CHECK(err < 1e-12);
        CHECK(test::max_abs_diff(idft(s), f) < 1e-12);
    }
}

TEST_CASE("Parseval holds in the chosen normalization") {
    const auto f = test::random_field(32, 5, 3.0);
    CHECK(dft(f).l2_norm() == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("frequency indexing") {
    CHECK(signed_frequency(0, 8) == 0);
    CHECK(signed_frequency(3, 8) == 3);
    CHECK(signed_frequency(4, 8) == -4);
    CHECK(signed_frequency(7, 8) == -1);
    for (int k = -4; k < 4; ++k) CHECK(signed_frequency(frequency_index(k, 8), 8) == k);
}

TEST_CASE("a pure exponential sits on one coefficient") {
    const double L = 2.0;
    const auto f = Field2D::from_function(16, L, [&](double x, double y) { return std::polar(1.0, 2 * kPi * (3 * x - 2 * y) / L); });
    const auto s = dft(f);
    CHECK(std::abs(s.at(3, -2) - cplx(L)) < 1e-12);
    double rest = 0;
    for (auto v : s.values()) rest += std::norm(v);
    CHECK(rest == doctest::Approx(L * L));
}

TEST_CASE("norms and inner products") {
    Field2D one(16, 2.0);
    for (auto& v : one.values()) v = 1.0;
    CHECK(lp_norm(one, 1) == doctest::Approx(4.0));
    CHECK(lp_norm(one, 2) == doctest::Approx(2.0));
    CHECK(lp_norm(one, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
    const auto f = test::random_field(16, 1), g = test::random_field(16, 2);
    CHECK(std::abs(inner_product(f, g) - inner_product(dft(f), dft(g))) < 1e-12);
    CHECK(energy_l2(f) == doctest::Approx(l2_norm(f) * l2_norm(f)));
}

TEST_CASE("shape errors") {
    CHECK_THROWS_AS(Field2D(12), Error);
    CHECK_THROWS_AS(Field2D(16, -1.0), Error);
}
