#include "support.hpp"

#include "lacuna/diagonal.hpp"

#include <doctest.h>

using namespace lacuna;

TEST_CASE("band scale pairs have slopes in [a/2, 2a]") {
    const auto g = ShiftedGrid::base(256);
    const auto dirs = make_lacunary(8);
    for (double a : dirs.a)
        for (const auto& [n1, n2] : band_scale_pairs(g, a)) {
            const double sl = std::ldexp(1.0, n1 - n2);
            CHECK(sl >= a / 2);
            CHECK(sl <= 2 * a);
            CHECK(g.resolvable(0, n1));
            CHECK(g.resolvable(1, n2));
        }
    CHECK(band_scale_pairs(g, dirs.a[7]).empty());
    CHECK_THROWS_AS(band_operator(test::random_field(256, 1), dirs, 8, 1), Error);
}

TEST_CASE("band operator equals synthesis of the band coefficients") {
    const auto f = test::random_field(128, 2);
    const auto g = ShiftedGrid::base(128);
    const auto dirs = make_lacunary(3);
    const auto all = analysis(f, g, 1);
    for (int k = 1; k <= 3; ++k) {
        const auto pairs = band_scale_pairs(g, dirs.a[k - 1]);
        if (pairs.empty()) continue;
        CoefficientMap band;
        for (const auto& [r, c] : all)
            if (std::find(pairs.begin(), pairs.end(), std::pair{r.n1, r.n2}) != pairs.end()) band[r] = c;
        for (int flavor : {1, 2})
            CHECK(test::rel_diff(band_operator(f, dirs, k, flavor), synthesize(band, g, flavor)) < 1e-12);
    }
}

TEST_CASE("rectangle square function is the pointwise sum over containing rectangles") {
    const auto f = test::random_field(64, 3);
    const auto g = ShiftedGrid::base(64);
    const auto c = analysis(f, g, 1);
    const auto sq = rectangle_square_function(c, g);
    for (std::size_t i : {0u, 17u, 40u})
        for (std::size_t j : {3u, 33u, 63u}) {
            const double x = i / 64.0, y = j / 64.0;
            double s = 0;
            for (const auto& [r, v] : c)
                if (x >= r.x0() && x < r.x1() && y >= r.y0() && y < r.y1()) s += std::norm(v) / r.area();
            CHECK(sq(i, j).real() == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
        }
    CHECK(test::rel_diff(square_function(f, SquareVariant::Rectangle), sq) < 1e-14);
}

TEST_CASE("band square function energy is the sum of band energies") {
    const auto f = test::random_field(128, 4);
    const auto dirs = make_lacunary(4);
    const auto sq = square_function(f, SquareVariant::Band, 1, dirs);
    double want = 0;
    const auto g = ShiftedGrid::base(128);
    for (int k = 1; k <= 4; ++k)
        if (!band_scale_pairs(g, dirs.a[k - 1]).empty()) want += energy_l2(band_operator(f, dirs, k, 1));
    CHECK(energy_l2(sq) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("transition packet is P_v of the packet") {
    const auto g = ShiftedGrid::base(128);
    const DyadicRectangle r{-4, -3, 3, 5, 0};
    const double a = nearest_generator_slope(r.slope());
    const auto direct = analytic_proj(wave_packet(g, r, 1).field, Direction::cone(a));
    CHECK(test::rel_diff(idft(transition_packet_spectrum(g, r, a)), direct) < 1e-12);
}

TEST_CASE("cone trichotomy on packets") {
    const auto g = ShiftedGrid::base(128);
    const auto dirs = make_lacunary(8);
    std::size_t intermediate = 0;
    for (double a : dirs.a)
        for (int n1 : g.scales(0))
            for (int n2 : g.scales(1)) {
                const DyadicRectangle r{n1, n2, 1, 2, 0};
                const auto phi = wave_packet(g, r, 1).field;
                const auto pv = analytic_proj(phi, Direction::cone(a));
                switch (cone_classify(a, r)) {
                    case ConeLabel::Keep: CHECK(l2_norm(pv - phi) <= 1e-10); break;
                    case ConeLabel::Kill: CHECK(l2_norm(pv) <= 1e-10); break;
                    case ConeLabel::Transition:
                        intermediate += l2_norm(pv - phi) > 1e-3 && l2_norm(pv) > 1e-3;
                        break;
                }
            }
    CHECK(intermediate >= 1);
}

TEST_CASE("diagonal bound probe") {
    const auto f = test::random_field(128, 5);
    // One direction: the ratio is the plain norm ratio of P_v Phi_1 f.
    LacunarySet one{1.9, {1.0 / 3.0}};
    const auto rep = diagonal_bound_probe(f, one, 2.0);
    const auto pf = analytic_proj(band_operator(f, one, 1, 1), Direction::cone(one.a[0]));
    CHECK(rep.ratio == doctest::Approx(lp_norm(pf, 2) / lp_norm(f, 2)).epsilon(1e-12));
    // Spectrum outside every band.
    SpectralField2D s(128);
    s.at(-5, -7) = 1.0;
    s.at(0, 3) = 2.0;
    CHECK(diagonal_bound_probe(idft(s), make_lacunary(4), 2.0).ratio <= 1e-8);
    const auto wide = diagonal_bound_probe(f, make_lacunary(8), 2.0);
    CHECK(!wide.bands_empty.empty());
    CHECK(wide.bands_used.size() + wide.bands_empty.size() == 8);
}

TEST_CASE("envelope of a transition packet") {
    const auto g = ShiftedGrid::base(1024);
    const DyadicRectangle r{-6, -6, 5, 5, 0};
    const auto env = envelope_check(g, r, nearest_generator_slope(r.slope()));
    CHECK(env.center_ratio > 0.0);
    CHECK(env.along_tail_factor >= 1.8);
    CHECK(env.across_exponent > env.along_exponent);
}

TEST_CASE("split families") {
    const DyadicRectangle r{-3, -4, 2, 5, 0};
    for (int ell = 0; ell <= 3; ++ell) {
        const auto fam = split_family(r, 1, ell);
        CHECK(fam.size() == (1u << ell));
        double area = 0;
        for (const auto& q : fam) {
            CHECK(contained_in(q, r));
            CHECK(q.n1 == r.n1);
            area += q.area();
        }
        CHECK(area == doctest::Approx(r.area()));
    }
    CHECK(split_family(r, 2, 2)[3].n1 == r.n1 - 2);
    CHECK_THROWS_AS(split_family(r, 3, 1), Error);
}

TEST_CASE("region masks partition the annulus") {
    const DyadicRectangle r{-5, -4, 16, 8, 0};
    const auto v1 = region_mask(r, 4, Region::V1, 256), v2 = region_mask(r, 4, Region::V2, 256),
               full = region_mask(r, 4, Region::Full, 256);
    std::size_t n1 = 0;
    for (std::size_t k = 0; k < full.size(); ++k) {
        CHECK(!(v1[k] && v2[k]));
        CHECK(full[k] == (v1[k] || v2[k]));
        n1 += v1[k];
    }
    CHECK(n1 > 0);
    CHECK_THROWS_AS(region_mask(r, 64, Region::Full, 256), Error);
}

TEST_CASE("localization probe basics") {
    const DyadicRectangle r{-5, -4, 16, 8, 0};
    ProbeConfig cfg{1024, 4, 1};
    const auto a = localization_probe(r, 4, 1, Region::V2, cfg), b = localization_probe(r, 4, 1, Region::V2, cfg);
    CHECK(a.value == b.value);
    CHECK(a.value > 0.0);
    CHECK_THROWS_AS(localization_probe({-9, -9, 0, 0, 0}, 4, 2, Region::V2, cfg), Error);
}
