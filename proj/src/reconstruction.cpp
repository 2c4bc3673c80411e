#include "lacuna/packets.hpp"

#include "lacuna/fft.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lacuna {

namespace {

double mother_hat(int flavor, double eta) { return flavor == 1 ? phi1_hat(eta) : phi2_hat(eta); }

// Averaged one-dimensional plane operator, as an n x n matrix acting on torus
// coefficients (column k by frequency_index) and returning samples (row i).
// For one (lambda, y) and one scale l the packets at centers y + l/2 + l Z act on
// e^{2 pi i k x / L} as, after Poisson summation,
//   sum_q conj(phi1^(u)) phi^j(u - q) e^{2 pi i q c0 / l} e^{2 pi i x (k/L - q/l)},  u = l k / L.
std::vector<cplx> plane_axis_matrix(int flavor, const std::vector<double>& lambdas, const std::vector<double>& ys,
                                    std::size_t n, double period) {
    std::vector<cplx> e(n * n);
    const double h = period / static_cast<double>(n);
    const int half = static_cast<int>(n / 2);
    const int lo = static_cast<int>(std::floor(std::log2(0.75 * period / half))) - 1;
    const int hi = static_cast<int>(std::ceil(std::log2(1.75 * period))) + 1;
    const double inv_lambdas = 1.0 / static_cast<double>(lambdas.size());
    const double inv_ys = 1.0 / static_cast<double>(ys.size());
    const long cols = half;
#pragma omp parallel for schedule(dynamic)
    for (long k = 1; k < cols; ++k) {
        const std::size_t col = frequency_index(static_cast<int>(k), n);
        for (double lam : lambdas)
            for (int nexp = lo; nexp <= hi; ++nexp) {
                const double l = lam * std::ldexp(1.0, nexp);
                const double u = l * static_cast<double>(k) / period;
                const double a = phi1_hat(u);
                if (a == 0.0) continue;
                const long qlo = flavor == 1 ? 0 : static_cast<long>(std::floor(u - 9.0));
                const long qhi = flavor == 1 ? 0 : static_cast<long>(std::ceil(u + 9.0));
                for (long q = qlo; q <= qhi; ++q) {
                    const double b = mother_hat(flavor, u - static_cast<double>(q));
                    if (b == 0.0) continue;
                    cplx ybar = 0.0;
                    for (double y : ys) ybar += std::polar(1.0, 2.0 * kPi * std::fmod(q * (y + 0.5 * l) / l, 1.0));
                    ybar *= inv_ys;
                    const cplx w = a * b * ybar * inv_lambdas;
                    const double freq = static_cast<double>(k) / period - static_cast<double>(q) / l;
                    for (std::size_t i = 0; i < n; ++i)
                        e[i * n + col] += w * std::polar(1.0, 2.0 * kPi * std::fmod(freq * h * static_cast<double>(i), 1.0));
                }
            }
    }
    return e;
}

// out = (1/L) E1 C E2^T with C the torus coefficients of f.
Field2D apply_plane(const Field2D& f, const std::vector<cplx>& e1, const std::vector<cplx>& e2) {
    const std::size_t n = f.n();
    const auto spectrum = dft(f);
    std::vector<cplx> t(n * n);
    const long rows = static_cast<long>(n);
#pragma omp parallel for
    for (long i = 0; i < rows; ++i)
        for (std::size_t k1 = 0; k1 < n; ++k1) {
            const cplx w = e1[i * n + k1];
            if (w == cplx(0.0)) continue;
            for (std::size_t k2 = 0; k2 < n; ++k2) t[i * n + k2] += w * spectrum.raw(k1, k2);
        }
    Field2D out(n, f.period());
    const double inv = 1.0 / f.period();
#pragma omp parallel for
    for (long i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k2 = 0; k2 < n; ++k2) acc += t[i * n + k2] * e2[j * n + k2];
            out(i, j) = acc * inv;
        }
    return out;
}

void check_flavor(int flavor) {
    if (flavor != 1 && flavor != 2) throw Error("flavor must be 1 or 2");
}

}  // namespace

Field2D plane_synthesis(const Field2D& f, int flavor, const double lambda[2], const double y[2]) {
    check_flavor(flavor);
    const auto e1 = plane_axis_matrix(flavor, {lambda[0]}, {y[0]}, f.n(), f.period());
    const auto e2 = plane_axis_matrix(flavor, {lambda[1]}, {y[1]}, f.n(), f.period());
    return apply_plane(f, e1, e2);
}

Reconstruction average_reconstruction(const Field2D& f, int flavor, int n_dil, int n_tr) {
    check_flavor(flavor);
    if (n_dil < 1 || n_tr < 1) throw Error("average_reconstruction: grid sizes must be positive");
    std::vector<double> lambdas, ys;
    for (int i = 0; i < n_dil; ++i) lambdas.push_back(std::exp2(static_cast<double>(i) / n_dil));
    for (int t = 0; t < n_tr; ++t) ys.push_back(f.period() * t / n_tr);
    // The averaging grid is a product, so the average factors into one matrix per axis.
    const auto e = plane_axis_matrix(flavor, lambdas, ys, f.n(), f.period());
    Reconstruction r{apply_plane(f, e, e), 0.0, 0.0, 0.0};
    const double ff = energy_l2(f);
    if (ff == 0.0) throw Error("average_reconstruction: zero field");
    r.fit = inner_product(r.average, f) / ff;
    r.residual = l2_norm(r.average - r.fit * f) / std::sqrt(ff);
    r.relative_norm = l2_norm(r.average) / std::sqrt(ff);
    return r;
}

Psi cross_correlation_psi(std::size_t samples, double width) {
    if (!is_power_of_two(samples) || samples < 64) throw Error("cross_correlation_psi: bad sample count");
    Psi psi;
    psi.width = width;
    const std::size_t m = samples;
    const double h = width / static_cast<double>(m);
    // phi1 is band limited, so its periodization is sampled exactly from its spectrum.
    std::vector<cplx> p1(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int k = signed_frequency(i, m);
        p1[i] = phi1_hat(k / width) / width;
    }
    fft::transform_1d(p1, +1);
    std::vector<cplx> p2(m);
    const double supp = phi2_effective_support();
    for (std::size_t i = 0; i < m; ++i) {
        double x = h * static_cast<double>(i);
        if (x >= 0.5 * width) x -= width;
        if (std::abs(x) <= supp) p2[i] = phi2(x);
    }
    // psi(x_i) = h sum_t conj(phi1(x_t)) phi2(x_i + x_t), directly.
    psi.values.assign(m, 0.0);
    const long mm = static_cast<long>(m);
#pragma omp parallel for
    for (long i = 0; i < mm; ++i) {
        cplx acc = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            const cplx b = p2[(i + t) % m];
            if (b != cplx(0.0)) acc += std::conj(p1[t]) * b;
        }
        psi.values[i] = acc * h;
    }
    psi.spectrum = psi.values;
    fft::transform_1d(psi.spectrum, -1);
    for (auto& v : psi.spectrum) v *= h;
    return psi;
}

RealRect sigma_map(const DyadicRectangle& r, const double lambda[2], const double y[2], const DeltaRule& delta) {
    for (int a = 0; a < 2; ++a)
        if (!(lambda[a] > 1.0 && lambda[a] <= 2.0) && lambda[a] != 1.0)
            throw Error("sigma_map: lambda must lie in (1,2] or equal 1");
    const double s1 = r.side1(), s2 = r.side2();
    double d1 = 0.0, d2 = 0.0;
    if (delta) {
        d1 = delta(0, r.n1, r.m1);
        d2 = delta(1, r.n2, r.m2);
        if (d1 < 0 || d1 > s1 || d2 < 0 || d2 > s2) throw Error("sigma_map: delta out of [0, |r|]");
    }
    return {lambda[0] * r.x0() + y[0] * s1 + d1, lambda[0] * r.x1() + y[0] * s1 + d1,
            lambda[1] * r.y0() + y[1] * s2 + d2, lambda[1] * r.y1() + y[1] * s2 + d2};
}

namespace {

// int sqrt(la lb) phi^a(la xi) phi^b(lb xi) e^{-2 pi i (ca - cb) xi} d xi
cplx line_packet_inner(int fa, double la, double ca, int fb, double lb, double cb) {
    const auto range = [](int f, double l) {
        return f == 1 ? std::pair{0.75 / l, 1.75 / l} : std::pair{-10.0 / l, 10.0 / l};
    };
    const auto [a0, a1] = range(fa, la);
    const auto [b0, b1] = range(fb, lb);
    const double lo = std::max(a0, b0), hi = std::min(a1, b1);
    if (hi <= lo) return 0.0;
    const double shift = ca - cb;
    const long steps = 4000 + static_cast<long>(64.0 * std::abs(shift) * (hi - lo));
    const double d = (hi - lo) / static_cast<double>(steps);
    cplx acc = 0.0;
    for (long i = 0; i <= steps; ++i) {
        const double xi = lo + d * static_cast<double>(i);
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        const double v = mother_hat(fa, la * xi) * mother_hat(fb, lb * xi);
        if (v != 0.0) acc += w * v * std::polar(1.0, -2.0 * kPi * shift * xi);
    }
    return acc * d * std::sqrt(la * lb);
}

}  // namespace

cplx plane_packet_inner(int flavor_a, const RealRect& p, int flavor_b, const RealRect& q) {
    check_flavor(flavor_a);
    check_flavor(flavor_b);
    return line_packet_inner(flavor_a, p.width(), p.cx(), flavor_b, q.width(), q.cx()) *
           line_packet_inner(flavor_a, p.height(), p.cy(), flavor_b, q.height(), q.cy());
}

}  // namespace lacuna
