#include "lacuna/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lacuna {

std::vector<std::pair<int, int>> band_scale_pairs(const ShiftedGrid& g, double a) {
    std::vector<std::pair<int, int>> out;
    for (int e1 : g.scales(0))
        for (int e2 : g.scales(1))
            if (cone_classify(a, g.side(0, e1), g.side(1, e2)) == ConeLabel::Transition) out.emplace_back(e1, e2);
    return out;
}

Field2D band_operator(const CoefficientMap& coeffs, const ShiftedGrid& g, double a, int flavor) {
    const auto pairs = band_scale_pairs(g, a);
    if (pairs.empty()) throw Error("band_operator: band empty in the scale window");
    CoefficientMap band;
    for (const auto& [r, c] : coeffs)
        if (std::find(pairs.begin(), pairs.end(), std::pair{r.n1, r.n2}) != pairs.end()) band.emplace(r, c);
    return synthesize(band, g, flavor);
}

Field2D band_operator(const Field2D& f, const LacunarySet& dirs, int k, int flavor) {
    if (k < 1 || k > static_cast<int>(dirs.size())) throw Error("band_operator: band index out of range");
    const auto g = ShiftedGrid::base(f.n(), f.period());
    const double a = dirs.a[k - 1];
    if (band_scale_pairs(g, a).empty()) throw Error("band_operator: band empty in the scale window");
    return band_operator(analysis(f, g, 1), g, a, flavor);
}

Field2D rectangle_square_function(const CoefficientMap& coeffs, const ShiftedGrid& g) {
    const std::size_t n = g.n;
    std::vector<double> acc(n * n, 0.0);
    const double h = g.period / static_cast<double>(n);
    for (const auto& [r, c] : coeffs) {
        const RealRect q = g.rect(r);
        const double w = std::norm(c) / q.area();
        if (w == 0.0) continue;
        const auto lo = [h](double x) { return static_cast<long>(std::ceil(x / h - 1e-9)); };
        for (long i = lo(q.x0); i < lo(q.x1); ++i)
            for (long j = lo(q.y0); j < lo(q.y1); ++j) {
                const long ii = ((i % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
                const long jj = ((j % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
                acc[ii * n + jj] += w;
            }
    }
    Field2D out(n, g.period);
    for (std::size_t k = 0; k < n * n; ++k) out.values()[k] = std::sqrt(acc[k]);
    return out;
}

Field2D square_function(const Field2D& f, SquareVariant variant, int flavor, const LacunarySet& dirs) {
    const auto g = ShiftedGrid::base(f.n(), f.period());
    if (variant == SquareVariant::Rectangle) return rectangle_square_function(analysis(f, g, flavor), g);
    const auto coeffs = analysis(f, g, 1);
    std::vector<double> acc(f.n() * f.n(), 0.0);
    for (double a : dirs.a) {
        if (band_scale_pairs(g, a).empty()) continue;
        const auto phi = band_operator(coeffs, g, a, flavor);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += std::norm(phi.values()[k]);
    }
    Field2D out(f.n(), f.period());
    for (std::size_t k = 0; k < acc.size(); ++k) out.values()[k] = std::sqrt(acc[k]);
    return out;
}

DiagonalReport diagonal_bound_probe(const Field2D& f, const LacunarySet& dirs, double p) {
    if (!(p >= 1.0)) throw Error("diagonal_bound_probe: p must be >= 1");
    const double ps = std::max(2.0, p);
    const auto g = ShiftedGrid::base(f.n(), f.period());
    const auto coeffs = analysis(f, g, 1);
    DiagonalReport rep;
    std::vector<double> acc(f.n() * f.n(), 0.0);
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        const double a = dirs.a[k];
        if (band_scale_pairs(g, a).empty()) {
            rep.bands_empty.push_back(static_cast<int>(k + 1));
            continue;
        }
        rep.bands_used.push_back(static_cast<int>(k + 1));
        const auto pf = analytic_proj(band_operator(coeffs, g, a, 1), Direction::cone(a));
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::pow(std::abs(pf.values()[i]), ps);
    }
    Field2D gf(f.n(), f.period());
    for (std::size_t i = 0; i < acc.size(); ++i) gf.values()[i] = std::pow(acc[i], 1.0 / ps);
    const double nf = lp_norm(f, p);
    if (nf == 0.0) throw Error("diagonal_bound_probe: zero field");
    rep.ratio = lp_norm(gf, p) / nf;
    return rep;
}

SpectralField2D transition_packet_spectrum(const ShiftedGrid& g, const DyadicRectangle& r, double a) {
    auto s = packet_spectrum(g, r, 1);
    const Direction v = Direction::cone(a);
    multiply_in_place(s, [&](int k1, int k2) {
        const int side = v.side(k1, k2);
        return cplx(side > 0 ? 1.0 : (side == 0 ? 0.5 : 0.0));
    });
    return s;
}

namespace {

struct SparseSpectrum {
    std::vector<int> k1, k2;
    std::vector<cplx> c;
    double period = 1.0;

    explicit SparseSpectrum(const SpectralField2D& s) : period(s.period()) {
        const std::size_t n = s.n();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (s.raw(i, j) != cplx(0.0)) {
                    k1.push_back(signed_frequency(i, n));
                    k2.push_back(signed_frequency(j, n));
                    c.push_back(s.raw(i, j));
                }
    }

    cplx eval(double x1, double x2) const {
        cplx acc = 0.0;
        const double w = 2.0 * kPi / period;
        for (std::size_t t = 0; t < c.size(); ++t) acc += c[t] * std::polar(1.0, w * (k1[t] * x1 + k2[t] * x2));
        return acc / period;
    }
};

double tail_exponent(const std::vector<double>& v, std::size_t from, std::size_t to) {
    if (to <= from || v[to] <= 0 || v[from] <= 0) return 0.0;
    return std::log2(v[from] / v[to]) / static_cast<double>(to - from);
}

}  // namespace

PacketEnvelope envelope_check(const ShiftedGrid& g, const DyadicRectangle& r, double a) {
    const SparseSpectrum sp(transition_packet_spectrum(g, r, a));
    const RealRect q = g.rect(r);
    const double norm = std::sqrt(q.area());
    PacketEnvelope e;
    e.rect = r;
    e.a = a;
    e.center_ratio = std::abs(sp.eval(q.cx(), q.cy())) * norm;
    const double len = std::hypot(a, 1.0);
    const double u1 = a / len, u2 = -1.0 / len;
    const double s = std::max(q.width(), q.height());
    for (double t = s; t <= g.period / 4.0 + 1e-12; t *= 2.0) {
        e.distances.push_back(t / s);
        e.along.push_back(std::abs(sp.eval(q.cx() + t * u1, q.cy() + t * u2)) * norm);
        e.across.push_back(std::abs(sp.eval(q.cx() - t * u2, q.cy() + t * u1)) * norm);
    }
    const std::size_t m = e.along.size();
    if (m >= 2) {
        e.along_tail_factor = e.along[m - 2] / e.along[m - 1];
        e.along_exponent = tail_exponent(e.along, m >= 3 ? m - 3 : 0, m - 1);
        e.across_exponent = tail_exponent(e.across, 0, std::min<std::size_t>(2, m - 1));
        if (m >= 3) e.along_exponent = std::min(e.along_exponent, tail_exponent(e.along, 0, 2));
    }
    return e;
}

double nearest_generator_slope(double slope) {
    if (!(slope > 0)) throw Error("nearest_generator_slope: slope must be positive");
    const double k = std::round(std::log2(2.0 / 3.0) - std::log2(slope));
    return (2.0 / 3.0) * std::exp2(-k);
}

std::vector<DyadicRectangle> split_family(const DyadicRectangle& r, int j, int ell) {
    if (j != 1 && j != 2) throw Error("split_family: j must be 1 or 2");
    if (ell < 0) throw Error("split_family: l must be nonnegative");
    std::vector<DyadicRectangle> out;
    for (long t = 0; t < (1L << ell); ++t) {
        DyadicRectangle q = r;
        if (j == 1) {
            q.n2 = r.n2 - ell;
            q.m2 = (r.m2 << ell) + t;
        } else {
            q.n1 = r.n1 - ell;
            q.m1 = (r.m1 << ell) + t;
        }
        out.push_back(q);
    }
    return out;
}

std::string to_string(Region r) {
    switch (r) {
        case Region::V1: return "V1";
        case Region::V2: return "V2";
        case Region::Full: return "full";
    }
    return "?";
}

std::vector<char> region_mask(const DyadicRectangle& r, double mu, Region region, std::size_t n) {
    const double s1 = r.side1(), s2 = r.side2();
    if (!(mu >= 1.0)) throw Error("region_mask: mu must be >= 1");
    if (2.0 * mu * std::max(s1, s2) > 0.5) throw Error("localization geometry outside domain");
    const double c1 = 0.5 * (r.x0() + r.x1()), c2 = 0.5 * (r.y0() + r.y1());
    const double h = 1.0 / static_cast<double>(n);
    const auto wrap = [](double d) { return d - std::round(d); };
    std::vector<char> mask(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double d1 = std::abs(wrap(h * static_cast<double>(i) - c1));
        for (std::size_t j = 0; j < n; ++j) {
            const double d2 = std::abs(wrap(h * static_cast<double>(j) - c2));
            const bool outer = d1 < 2 * mu * s1 && d2 < 2 * mu * s2;
            const bool inner = d1 < mu * s1 && d2 < mu * s2;
            const bool v1 = d1 > mu * s1 && d1 < 2 * mu * s1 && d2 < std::sqrt(mu) * s2;
            bool in = false;
            switch (region) {
                case Region::V1: in = v1; break;
                case Region::V2: in = outer && !inner && !v1; break;
                case Region::Full: in = outer && !inner; break;
            }
            mask[i * n + j] = in;
        }
    }
    return mask;
}

ProbeResult localization_probe(const DyadicRectangle& r, double mu, int ell, Region region, const ProbeConfig& cfg) {
    const auto g = ShiftedGrid::base(cfg.n, 1.0);
    const auto mask = region_mask(r, mu, region, cfg.n);
    const auto members = split_family(r, 1, ell);
    std::vector<SpectralField2D> spectra;
    for (const auto& q : members) {
        if (!g.resolvable(0, q.n1) || !g.resolvable(1, q.n2)) throw Error("localization geometry unresolvable on grid");
        spectra.push_back(transition_packet_spectrum(g, q, nearest_generator_slope(q.slope())));
    }
    const std::size_t n = cfg.n;
    const auto score = [&](const Field2D& f) {
        const auto F = dft(f);
        double s = 0.0;
        for (const auto& sp : spectra) s += std::norm(inner_product(sp, F));
        const double norm = region == Region::V1 ? energy_l2(f) : r.area();
        return norm > 0 ? s / norm : 0.0;
    };
    ProbeResult best;
    std::size_t cells = 0;
    for (char m : mask) cells += m != 0;
    if (cells == 0) return best;
    // Aligned candidates: the phase of one member packet on the region.
    for (const auto& sp : spectra) {
        const auto phi = idft(sp);
        Field2D f(n, 1.0);
        for (std::size_t k = 0; k < n * n; ++k)
            if (mask[k]) {
                const cplx z = phi.values()[k];
                f.values()[k] = std::abs(z) > 0 ? z / std::abs(z) : cplx(1.0);
            }
        const double v = score(f);
        if (v > best.value) best = {v, 0};
    }
    for (int t = 0; t < cfg.restarts; ++t) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(t) + 1;
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(0.5);
        Field2D f(n, 1.0);
        for (std::size_t k = 0; k < n * n; ++k)
            if (mask[k]) f.values()[k] = coin(rng) ? 1.0 : -1.0;
        const double v = score(f);
        if (v > best.value) best = {v, seed};
    }
    return best;
}

}  // namespace lacuna
