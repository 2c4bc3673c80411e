#pragma once

#include "lacuna/grid.hpp"

#include <random>

namespace lacuna::test {

inline Field2D random_field(std::size_t n, std::uint64_t seed, double period = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Field2D f(n, period);
    for (auto& v : f.values()) v = {g(rng), g(rng)};
    return f;
}

inline double rel_diff(const Field2D& a, const Field2D& b) {
    const double nb = l2_norm(b);
    return l2_norm(a - b) / (nb > 0 ? nb : 1.0);
}

inline double max_abs_diff(const Field2D& a, const Field2D& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
    return m;
}

}  // namespace lacuna::test

#include "lacuna/combinatorics.hpp"

namespace lacuna::test {

// Random base-grid rectangles with sides 2^-4 .. 2^-1 and coefficients of size ~ 0.3 sqrt|R|.
inline RectCollection random_collection(std::mt19937_64& rng, std::size_t count) {
    RectCollection s;
    std::uniform_int_distribution<int> scale(-4, -1);
    std::normal_distribution<double> g;
    while (s.size() < count) {
        const int a = scale(rng), b = scale(rng);
        const long m1 = std::uniform_int_distribution<long>(0, (1L << -a) - 1)(rng);
        const long m2 = std::uniform_int_distribution<long>(0, (1L << -b) - 1)(rng);
        const DyadicRectangle r{a, b, m1, m2, 0};
        s.add(r, cplx(g(rng), g(rng)) * std::sqrt(r.area()) * 0.3);
    }
    return s;
}

inline std::size_t maximal_count(const RectCollection& s) {
    std::size_t c = 0;
    for (const auto& r : s.rects()) {
        bool inside = false;
        for (const auto& q : s.rects()) inside = inside || (q != r && contained_in(r, q));
        c += !inside;
    }
    return c;
}

}  // namespace lacuna::test
