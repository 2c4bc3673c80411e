#include "lacuna/packets.hpp"

#include "lacuna/fft.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <utility>

namespace lacuna {

namespace {

// C-infinity step from 0 at t = 0 to 1 at t = 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double wrap_centered(double d, double period) {
    d = std::fmod(d, period);
    if (d < -0.5 * period) d += period;
    if (d >= 0.5 * period) d -= period;
    return d;
}

}  // namespace

double phi1_hat(double eta) {
    if (eta <= 0.75 || eta >= 1.75) return 0.0;
    if (eta < 0.875) return smooth_step((eta - 0.75) * 8.0);
    if (eta <= 1.625) return 1.0;
    return smooth_step((1.75 - eta) * 8.0);
}

double phi2_hat(double eta) { return eta * std::exp(-0.5 * eta * eta); }

cplx phi2(double x) {
    const double c = std::pow(2.0 * kPi, 1.5);
    return {0.0, c * x * std::exp(-2.0 * kPi * kPi * x * x)};
}

double phi1_norm_sq() {
    static const double value = [] {
        // plateau of length 3/4 plus two transitions, each (1/8) int_0^1 s(t)^2 dt
        const int steps = 200000;
        double s = 0.0;
        for (int i = 1; i < steps; ++i) {
            const double v = smooth_step(static_cast<double>(i) / steps);
            s += v * v;
        }
        s += 0.5;  // endpoint t = 1 with trapezoid weight
        return 0.75 + 0.25 * s / steps;
    }();
    return value;
}

double phi2_norm_sq() { return 0.5 * std::sqrt(kPi); }

double phi2_effective_support() {
    static const double value = [] {
        double lo = 1.0 / (2.0 * kPi), hi = 4.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (std::abs(phi2(mid)) > 1e-14 ? lo : hi) = mid;
        }
        return hi;
    }();
    return value;
}

MotherPackets build_mothers(std::size_t n, double period) {
    if (n < 64 || !is_power_of_two(n)) throw Error("build_mothers: n must be a power of two >= 64");
    if (!(period > 0.0)) throw Error("build_mothers: period must be positive");
    MotherPackets m;
    m.samples = n;
    m.width = 16.0;
    m.effective_support = phi2_effective_support();
    m.phi1.resize(n);
    m.phi2.resize(n);
    const double h = m.width / static_cast<double>(n);
    const int quad = 4000;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -0.5 * m.width + h * static_cast<double>(i);
        cplx acc = 0.0;
        for (int q = 1; q < quad; ++q) {
            const double eta = 0.75 + static_cast<double>(q) / quad;
            acc += phi1_hat(eta) * std::polar(1.0, 2.0 * kPi * eta * x);
        }
        m.phi1[i] = acc / static_cast<double>(quad);
        if (std::abs(x) <= m.effective_support) {
            m.phi2[i] = phi2(x);
        } else {
            residual = std::max(residual, std::abs(phi2(x)));
        }
    }
    auto& r = m.report;
    r.phi1_envelope = r.phi2_positive = r.phi2_bound = true;
    for (long k = -static_cast<long>(n) / 2; k < static_cast<long>(n) / 2; ++k) {
        const double eta = static_cast<double>(k) / m.width;
        const double p1 = phi1_hat(eta);
        const double lower = (eta >= 0.875 && eta <= 1.625) ? 1.0 : 0.0;
        const double upper = (eta >= 0.75 && eta <= 1.75) ? 1.0 : 0.0;
        if (p1 < lower || p1 > upper) r.phi1_envelope = false;
        const double p2 = phi2_hat(eta);
        if (eta > 0 && !(p2 > 0)) r.phi2_positive = false;
        const double a = std::abs(eta);
        if (a > 0 && std::abs(p2) > std::min(a, 1.0 / a)) r.phi2_bound = false;
        if (a == 0 && p2 != 0) r.phi2_bound = false;
    }
    r.truncation_residual = residual;
    if (!r.ok()) throw Error("build_mothers: envelope violation");
    return m;
}

ShiftedGrid ShiftedGrid::base(std::size_t n, double period) {
    ShiftedGrid g;
    g.n = n;
    g.period = period;
    return g;
}

double ShiftedGrid::side(int axis, int nexp) const { return lambda[axis] * std::ldexp(1.0, nexp); }

double ShiftedGrid::center(int axis, int nexp, long m) const {
    return y[axis] + side(axis, nexp) * (static_cast<double>(m) + 0.5);
}

long ShiftedGrid::positions(int axis, int nexp) const {
    return static_cast<long>(std::ceil(period / side(axis, nexp) - 1e-9));
}

bool ShiftedGrid::resolvable(int axis, int nexp) const {
    const double s = side(axis, nexp);
    return s * static_cast<double>(n) / period >= 4.0 - 1e-12 && s <= period / 4.0 + 1e-12;
}

std::vector<int> ShiftedGrid::scales(int axis) const {
    std::vector<int> out;
    for (int e = -64; e <= 64; ++e)
        if (resolvable(axis, e)) out.push_back(e);
    return out;
}

RealRect ShiftedGrid::rect(const DyadicRectangle& r) const {
    const double s1 = side(0, r.n1), s2 = side(1, r.n2);
    return {y[0] + s1 * static_cast<double>(r.m1), y[0] + s1 * static_cast<double>(r.m1 + 1),
            y[1] + s2 * static_cast<double>(r.m2), y[1] + s2 * static_cast<double>(r.m2 + 1)};
}

void ShiftedGrid::validate() const {
    if (!is_power_of_two(n) || n < 8) throw Error("ShiftedGrid: n must be a power of two >= 8");
    for (double l : lambda)
        if (!(l >= 1.0 && l < 2.0)) throw Error("ShiftedGrid: lambda must lie in [1,2)");
}

double packet_kappa(double side, std::size_t n, double period) {
    double s = 0.0;
    const long half = static_cast<long>(n) / 2;
    for (long k = -half; k < half; ++k) {
        const double v = phi1_hat(side * static_cast<double>(k) / period);
        s += v * v;
    }
    s *= side / period;
    if (s == 0.0) throw Error("packet_kappa: packet has no frequencies on the grid");
    return std::sqrt(phi1_norm_sq() / s);
}

std::vector<cplx> axis_spectrum(int flavor, double side, double center, std::size_t n, double period) {
    std::vector<cplx> a(n);
    double target = 0.0;
    if (flavor == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const double k = signed_frequency(i, n);
            const double v = phi1_hat(side * k / period);
            if (v != 0.0) a[i] = v * std::polar(1.0, -2.0 * kPi * std::fmod(center * k / period, 1.0));
        }
        target = phi1_norm_sq();
    } else if (flavor == 2) {
        const double h = period / static_cast<double>(n);
        const double supp = phi2_effective_support();
        for (std::size_t i = 0; i < n; ++i) {
            const double d = wrap_centered(h * static_cast<double>(i) - center, period) / side;
            if (std::abs(d) <= supp) a[i] = phi2(d);
        }
        fft::transform_1d(a, -1);
        target = phi2_norm_sq();
    } else {
        throw Error("axis_spectrum: flavor must be 1 or 2");
    }
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    if (s == 0.0) throw Error("axis_spectrum: packet vanishes on the grid");
    const double scale = std::sqrt(target / s);
    for (auto& v : a) v *= scale;
    return a;
}

namespace {

void check_rect(const ShiftedGrid& g, const DyadicRectangle& r) {
    if (r.grid != g.id) throw Error("unknown rectangle key: grid id mismatch");
    if (!g.resolvable(0, r.n1) || !g.resolvable(1, r.n2))
        throw Error("rectangle scale outside the resolvable window");
    if (r.m1 < 0 || r.m1 >= g.positions(0, r.n1) || r.m2 < 0 || r.m2 >= g.positions(1, r.n2))
        throw Error("unknown rectangle key: position outside the grid");
}

// Axis spectra for every resolvable scale and position of one axis.
struct AxisBank {
    std::vector<int> scales;
    std::vector<std::vector<std::vector<cplx>>> spectra;  // [scale][m][k]
    std::vector<std::vector<std::size_t>> support;        // nonzero k indices per scale

    AxisBank(const ShiftedGrid& g, int axis, int flavor) : scales(g.scales(axis)) {
        for (int e : scales) {
            const long count = g.positions(axis, e);
            std::vector<std::vector<cplx>> per(count);
            for (long m = 0; m < count; ++m)
                per[m] = axis_spectrum(flavor, g.side(axis, e), g.center(axis, e, m), g.n, g.period);
            std::vector<std::size_t> sup;
            for (std::size_t k = 0; k < g.n; ++k)
                if (per[0][k] != cplx(0.0)) sup.push_back(k);
            spectra.push_back(std::move(per));
            support.push_back(std::move(sup));
        }
    }

    std::size_t index_of(int e) const {
        const auto it = std::find(scales.begin(), scales.end(), e);
        if (it == scales.end()) throw Error("rectangle scale outside the resolvable window");
        return static_cast<std::size_t>(it - scales.begin());
    }
};

}  // namespace

SpectralField2D packet_spectrum(const ShiftedGrid& g, const DyadicRectangle& r, int flavor) {
    check_rect(g, r);
    const auto a1 = axis_spectrum(flavor, g.side(0, r.n1), g.center(0, r.n1, r.m1), g.n, g.period);
    const auto a2 = axis_spectrum(flavor, g.side(1, r.n2), g.center(1, r.n2, r.m2), g.n, g.period);
    SpectralField2D s(g.n, g.period);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) s.raw(i, j) = a1[i] * a2[j];
    return s;
}

WavePacket wave_packet(const ShiftedGrid& g, const DyadicRectangle& r, int flavor) {
    return {r, flavor, idft(packet_spectrum(g, r, flavor))};
}

CoefficientMap analysis(const Field2D& f, const ShiftedGrid& g, int flavor) {
    if (f.n() != g.n || f.period() != g.period) throw Error("analysis: field does not match grid");
    const auto spectrum = dft(f);
    const AxisBank b1(g, 0, flavor), b2(g, 1, flavor);
    const long pairs = static_cast<long>(b1.scales.size() * b2.scales.size());
    std::vector<std::vector<cplx>> blocks(pairs);
#pragma omp parallel for schedule(dynamic)
    for (long p = 0; p < pairs; ++p) {
        const std::size_t s1 = p / b2.scales.size(), s2 = p % b2.scales.size();
        const auto& A1 = b1.spectra[s1];
        const auto& A2 = b2.spectra[s2];
        const auto& S1 = b1.support[s1];
        const auto& S2 = b2.support[s2];
        const std::size_t M1 = A1.size(), M2 = A2.size();
        std::vector<cplx> t(M1 * S2.size());
        for (std::size_t m1 = 0; m1 < M1; ++m1)
            for (std::size_t k1 : S1) {
                const cplx w = std::conj(A1[m1][k1]);
                for (std::size_t b = 0; b < S2.size(); ++b) t[m1 * S2.size() + b] += w * spectrum.raw(k1, S2[b]);
            }
        auto& out = blocks[p];
        out.assign(M1 * M2, 0.0);
        for (std::size_t m1 = 0; m1 < M1; ++m1)
            for (std::size_t m2 = 0; m2 < M2; ++m2) {
                cplx acc = 0.0;
                for (std::size_t b = 0; b < S2.size(); ++b) acc += t[m1 * S2.size() + b] * std::conj(A2[m2][S2[b]]);
                out[m1 * M2 + m2] = acc;
            }
    }
    CoefficientMap map;
    for (long p = 0; p < pairs; ++p) {
        const std::size_t s1 = p / b2.scales.size(), s2 = p % b2.scales.size();
        const long M2 = static_cast<long>(b2.spectra[s2].size());
        for (std::size_t idx = 0; idx < blocks[p].size(); ++idx)
            map.emplace(DyadicRectangle{b1.scales[s1], b2.scales[s2], static_cast<long>(idx) / M2,
                                        static_cast<long>(idx) % M2, g.id},
                        blocks[p][idx]);
    }
    return map;
}

Field2D synthesize(const CoefficientMap& coeffs, const ShiftedGrid& g, int flavor) {
    SpectralField2D total(g.n, g.period);
    if (coeffs.empty()) return idft(total);
    for (const auto& [r, c] : coeffs) check_rect(g, r);
    const AxisBank b1(g, 0, flavor), b2(g, 1, flavor);

    // Group entries by scale pair; the map order keeps each group contiguous.
    auto it = coeffs.begin();
    while (it != coeffs.end()) {
        auto end = it;
        while (end != coeffs.end() && end->first.n1 == it->first.n1 && end->first.n2 == it->first.n2) ++end;
        const std::size_t s1 = b1.index_of(it->first.n1), s2 = b2.index_of(it->first.n2);
        const auto& A1 = b1.spectra[s1];
        const auto& A2 = b2.spectra[s2];
        const auto& S1 = b1.support[s1];
        const auto& S2 = b2.support[s2];
        // u[m1][k2] = sum_m2 c(m1, m2) a2_m2(k2)
        std::vector<long> rows;
        std::vector<std::vector<cplx>> u;
        for (auto e = it; e != end; ++e) {
            if (rows.empty() || rows.back() != e->first.m1) {
                rows.push_back(e->first.m1);
                u.emplace_back(S2.size());
            }
            const auto& a2 = A2[e->first.m2];
            auto& row = u.back();
            for (std::size_t b = 0; b < S2.size(); ++b) row[b] += e->second * a2[S2[b]];
        }
        const long nk1 = static_cast<long>(S1.size());
#pragma omp parallel for
        for (long a = 0; a < nk1; ++a) {
            const std::size_t k1 = S1[a];
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const cplx w = A1[rows[r]][k1];
                for (std::size_t b = 0; b < S2.size(); ++b) total.raw(k1, S2[b]) += w * u[r][b];
            }
        }
        it = end;
    }
    return idft(total);
}

double bessel_ratio(const Field2D& f, const ShiftedGrid& g) {
    const double e = energy_l2(f);
    if (e == 0.0) throw Error("bessel_ratio: zero field");
    double s = 0.0;
    for (const auto& [r, c] : analysis(f, g, 1)) s += std::norm(c);
    return s / e;
}

namespace reference {

CoefficientMap analysis(const Field2D& f, const ShiftedGrid& g, int flavor) {
    CoefficientMap map;
    for (int e1 : g.scales(0))
        for (int e2 : g.scales(1))
            for (long m1 = 0; m1 < g.positions(0, e1); ++m1)
                for (long m2 = 0; m2 < g.positions(1, e2); ++m2) {
                    const DyadicRectangle r{e1, e2, m1, m2, g.id};
                    map.emplace(r, inner_product(f, wave_packet(g, r, flavor).field));
                }
    return map;
}

Field2D synthesize(const CoefficientMap& coeffs, const ShiftedGrid& g, int flavor) {
    Field2D out(g.n, g.period);
    for (const auto& [r, c] : coeffs) out += c * wave_packet(g, r, flavor).field;
    return out;
}

}  // namespace reference

}  // namespace lacuna
