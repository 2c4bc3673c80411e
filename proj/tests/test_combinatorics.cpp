#include "support.hpp"

#include "lacuna/combinatorics.hpp"

#include <doctest.h>

using namespace lacuna;

TEST_CASE("collections stay sorted and duplicate free") {
    RectCollection s;
    s.add({-1, -2, 1, 0, 0}, 1.0);
    s.add({-1, -1, 0, 0, 0}, 2.0, -1);
    CHECK(s.size() == 2);
    CHECK(s.rect(0) < s.rect(1));
    CHECK(s.contains({-1, -1, 0, 0, 0}));
    s.add({-1, -1, 0, 0, 0}, 3.0);  // re-adding replaces
    CHECK(s.size() == 2);
    CHECK(s.coeff(1) == cplx(3.0));
    CHECK(s.sign(1) == 1);
    CHECK_THROWS_AS(s.add({-1, -1, 1, 0, 0}, 1.0, 0), Error);
    CHECK(s.minus(s.subset({0})).size() == 1);
}

TEST_CASE("shadow measure against the raster oracle") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto s = test::random_collection(rng, 8);
        CHECK(shadow_measure(s) == doctest::Approx(shadow_measure_raster(s, 64)).epsilon(1e-12));
    }
}

TEST_CASE("slope filters") {
    std::mt19937_64 rng(2);
    const auto s = test::random_collection(rng, 20);
    std::size_t last = s.size() + 1;
    for (double th : {0.125, 0.5, 1.0, 2.0, 8.0}) {
        const auto f = slope_filter(s, th);
        CHECK(f.size() <= last);
        last = f.size();
        for (const auto& r : f.rects()) CHECK(r.slope() >= th);
    }
    CHECK(slope_level_filter(s, 1).size() == slope_filter(s, 2.0).size());
}

TEST_CASE("energy of a single rectangle is |c| / sqrt|R|") {
    RectCollection s;
    s.add({-2, -1, 1, 1, 0}, cplx(0.3, 0.4));
    CHECK(energy(s) == doctest::Approx(0.5 / std::sqrt(0.125)));
}

TEST_CASE("exact energy equals the exhaustive subset search") {
    std::mt19937_64 rng(3);
    int tested = 0;
    while (tested < 30) {
        const auto s = test::random_collection(rng, 10);
        if (test::maximal_count(s) > 6) continue;
        ++tested;
        const double e = energy(s);
        CHECK(e == doctest::Approx(reference::energy(s)).epsilon(1e-12));
        CHECK(energy(s, EnergyMode::Heuristic) <= e * (1 + 1e-12));
    }
}

TEST_CASE("energy is monotone under inclusion") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        const auto s = test::random_collection(rng, 12);
        CHECK(energy(s.subset({0, 2, 4, 6})) <= energy(s) * (1 + 1e-12));
    }
}

TEST_CASE("charge") {
    RectCollection none;
    CHECK(!has_charge(none, 0.5));
    RectCollection one;
    one.add({-1, -1, 0, 0, 0}, 0.3 * 0.5);  // energy 0.3
    CHECK(has_charge(one, 0.5));
    CHECK(!has_charge(one, 0.2));
}

TEST_CASE("charge decompositions pass their audits") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        const auto s = test::random_collection(rng, 20);
        const auto d = charge_decompose(s, 6);
        const auto a = audit_decomposition(d, s);
        CHECK(a.disjoint);
        CHECK(a.charged);
        CHECK(a.recovers_input);
        for (const auto& level : d.levels)
            for (const auto& fam : level.families) CHECK(fam.size() <= kMaxFamilySize);
    }
}

TEST_CASE("scale chains are minimal") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        const auto s = test::random_collection(rng, 12);
        REQUIRE(slope_levels(s).size() <= 8);
        const auto chain = scale_chain(s, 5);
        CHECK(verify_chain(s, chain));
        CHECK(slope_filter(s, std::ldexp(1.0, chain.j0)).empty());
        for (std::size_t v = 1; v < chain.levels.size(); ++v) {
            CHECK(std::includes(chain.levels[v].begin(), chain.levels[v].end(), chain.levels[v - 1].begin(), chain.levels[v - 1].end()));
            CHECK(brute_force_min_cuts(s, chain.levels[v - 1], static_cast<int>(v)) == chain.levels[v].size());
        }
    }
}

TEST_CASE("model sums stay inside the enlarged shadow") {
    std::mt19937_64 rng(7);
    RectCollection s;
    for (const auto& r : test::random_collection(rng, 20).rects())
        if (r.n1 <= -2 && r.n2 <= -2 && s.size() < 6) s.add(r, cplx(1.0, 0.5));
    const auto f = test::random_field(64, 8);
    SigmaParams sigma;
    const auto out = model_sum(f, s, sigma, ModelMode::Fixed);
    CHECK(out.all_finite());
    CHECK(containment_margin(out, s, sigma) > 0.0);
    const auto mx = model_sum(f, s, sigma, ModelMode::Maximal);
    for (std::size_t k = 0; k < mx.values().size(); ++k) CHECK(mx.values()[k].real() >= std::abs(out.values()[k]) - 1e-9);
}
