#include "lacuna/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

// |f| is treated as constant on pixels [i, i+1). A dyadic interval of w pixels
// starting at m w doubles to [m w - w/2, (m+1) w + w/2); for w = 1 the half
// pixels at either end enter with weight 1/2.

namespace lacuna {

namespace {

struct WeightedRange {
    double weight;
    long begin;
    long end;
};

// Doubled interval as a combination of whole-pixel ranges.
std::array<WeightedRange, 2> doubled(long m, long w) {
    if (w == 1) return {{{0.5, m - 1, m + 2}, {0.5, m, m + 1}}};
    return {{{1.0, m * w - w / 2, (m + 1) * w + w / 2}, {0.0, 0, 0}}};
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Periodic summed-area table: G(x, y) = sum over i < x, j < y of the periodic
// extension, for arbitrary integers x, y.
class PeriodicSat {
public:
    explicit PeriodicSat(const std::vector<double>& a, long n) : n_(n), pre_((n + 1) * (n + 1), 0.0) {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                pre_[(i + 1) * (n + 1) + j + 1] = a[i * n + j] + pre_[i * (n + 1) + j + 1] +
                                                  pre_[(i + 1) * (n + 1) + j] - pre_[i * (n + 1) + j];
    }

    double g(long x, long y) const {
        const long qx = floor_div(x, n_), qy = floor_div(y, n_);
        const long rx = x - qx * n_, ry = y - qy * n_;
        const double t = at(n_, n_);
        return static_cast<double>(qx * qy) * t + static_cast<double>(qx) * at(n_, ry) +
               static_cast<double>(qy) * at(rx, n_) + at(rx, ry);
    }

    double sum(long x0, long x1, long y0, long y1) const { return g(x1, y1) - g(x0, y1) - g(x1, y0) + g(x0, y0); }

private:
    double at(long i, long j) const { return pre_[i * (n_ + 1) + j]; }
    long n_;
    std::vector<double> pre_;
};

int log2_exact(std::size_t n) {
    int l = 0;
    while ((std::size_t{1} << l) < n) ++l;
    return l;
}

}  // namespace

Field2D strong_maximal(const Field2D& f) {
    const long n = static_cast<long>(f.n());
    const int levels = log2_exact(f.n()) + 1;
    std::vector<double> a(n * n);
    for (long i = 0; i < n * n; ++i) a[i] = std::abs(f.values()[i]);
    const PeriodicSat sat(a, n);

    // block[s1][s2] holds the doubled average for each dyadic rectangle at that scale pair.
    std::vector<std::vector<double>> block(levels * levels);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < levels * levels; ++s) {
        const long w1 = 1L << (s / levels), w2 = 1L << (s % levels);
        const long b1 = n / w1, b2 = n / w2;
        auto& out = block[s];
        out.assign(b1 * b2, 0.0);
        for (long m1 = 0; m1 < b1; ++m1) {
            const auto r1 = doubled(m1, w1);
            for (long m2 = 0; m2 < b2; ++m2) {
                const auto r2 = doubled(m2, w2);
                double acc = 0.0;
                for (const auto& x : r1)
                    for (const auto& y : r2)
                        if (x.weight != 0.0 && y.weight != 0.0)
                            acc += x.weight * y.weight * sat.sum(x.begin, x.end, y.begin, y.end);
                out[m1 * b2 + m2] = acc / static_cast<double>(4 * w1 * w2);
            }
        }
    }

    Field2D out(f.n(), f.period());
#pragma omp parallel for
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            double best = 0.0;
            for (int s1 = 0; s1 < levels; ++s1)
                for (int s2 = 0; s2 < levels; ++s2) {
                    const long b2 = n >> s2;
                    best = std::max(best, block[s1 * levels + s2][(i >> s1) * b2 + (j >> s2)]);
                }
            out(i, j) = best;
        }
    return out;
}

namespace reference {

// Direct enumeration: for every pixel, every scale pair, sum the weighted window.
Field2D strong_maximal(const Field2D& f) {
    const long n = static_cast<long>(f.n());
    const int levels = log2_exact(f.n()) + 1;
    const auto wrap = [n](long i) { return ((i % n) + n) % n; };
    // Pixel weight within the doubled interval [c - w, c + w) in half-pixel units.
    const auto weight = [](long p, long lo2, long hi2) {
        // pixel p covers [2p, 2p + 2) in half units
        const long a = std::max(2 * p, lo2), b = std::min(2 * p + 2, hi2);
        return b > a ? 0.5 * static_cast<double>(b - a) : 0.0;
    };
    Field2D out(f.n(), f.period());
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            double best = 0.0;
            for (int s1 = 0; s1 < levels; ++s1)
                for (int s2 = 0; s2 < levels; ++s2) {
                    const long w1 = 1L << s1, w2 = 1L << s2;
                    const long m1 = i / w1, m2 = j / w2;
                    const long lo1 = 2 * m1 * w1 - w1, hi1 = 2 * (m1 + 1) * w1 + w1;
                    const long lo2 = 2 * m2 * w2 - w2, hi2 = 2 * (m2 + 1) * w2 + w2;
                    double acc = 0.0;
                    for (long p = floor_div(lo1, 2) - 1; p <= hi1 / 2; ++p) {
                        const double wp = weight(p, lo1, hi1);
                        if (wp == 0.0) continue;
                        for (long q = floor_div(lo2, 2) - 1; q <= hi2 / 2; ++q) {
                            const double wq = weight(q, lo2, hi2);
                            if (wq != 0.0) acc += wp * wq * std::abs(f(wrap(p), wrap(q)));
                        }
                    }
                    best = std::max(best, acc / static_cast<double>(4 * w1 * w2));
                }
            out(i, j) = best;
        }
    return out;
}

}  // namespace reference

}  // namespace lacuna
