#include "lacuna/grid.hpp"

#include "lacuna/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lacuna {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Field2D::Field2D(std::size_t n, double period) : n_(n), period_(period), values_(n * n) {
    if (!is_power_of_two(n) || n < 8)
        throw Error("Field2D: n must be a power of two >= 8, got " + std::to_string(n));
    if (!(period > 0.0) || !std::isfinite(period)) throw Error("Field2D: period must be positive");
}

bool Field2D::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Field2D& Field2D::operator+=(const Field2D& rhs) {
    if (!same_shape(rhs)) throw Error("Field2D: shape mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
    return *this;
}

Field2D& Field2D::operator-=(const Field2D& rhs) {
    if (!same_shape(rhs)) throw Error("Field2D: shape mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
    return *this;
}

Field2D& Field2D::operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
}

SpectralField2D::SpectralField2D(std::size_t n, double period) : n_(n), period_(period), values_(n * n) {
    if (!is_power_of_two(n) || n < 8)
        throw Error("SpectralField2D: n must be a power of two >= 8");
}

double SpectralField2D::l2_norm() const {
    double s = 0.0;
    for (const auto& c : values_) s += std::norm(c);
    return std::sqrt(s);
}

SpectralField2D dft(const Field2D& f) {
    SpectralField2D s(f.n(), f.period());
    std::copy(f.values().begin(), f.values().end(), s.values().begin());
    fft::transform_2d(s.values(), f.n(), -1);
    const double scale = f.period() / static_cast<double>(f.n() * f.n());
    for (auto& c : s.values()) c *= scale;
    return s;
}

Field2D idft(const SpectralField2D& s) {
    Field2D f(s.n(), s.period());
    std::copy(s.values().begin(), s.values().end(), f.values().begin());
    fft::transform_2d(f.values(), s.n(), +1);
    const double scale = 1.0 / s.period();
    for (auto& v : f.values()) v *= scale;
    return f;
}

void multiply_in_place(SpectralField2D& s, const std::function<cplx(int, int)>& fn) {
    const std::size_t n = s.n();
    for (std::size_t a = 0; a < n; ++a) {
        const int k1 = signed_frequency(a, n);
        for (std::size_t b = 0; b < n; ++b) s.raw(a, b) *= fn(k1, signed_frequency(b, n));
    }
}

Field2D apply_integer_multiplier(const Field2D& f, const std::function<cplx(int, int)>& fn) {
    auto s = dft(f);
    multiply_in_place(s, fn);
    return idft(s);
}

Field2D apply_multiplier(const Field2D& f, const Multiplier& m) {
    const double w = 2.0 * kPi / f.period();
    return apply_integer_multiplier(f, [&](int k1, int k2) {
        return m.rule(w * k1, w * k2);
    });
}

double lp_norm(const Field2D& f, double p) {
    if (std::isinf(p) && p > 0) {
        double m = 0.0;
        for (const auto& v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1");
    double s = 0.0;
    if (p == 2.0) {
        for (const auto& v : f.values()) s += std::norm(v);
        return std::sqrt(s * f.cell_area());
    }
    for (const auto& v : f.values()) s += std::pow(std::abs(v), p);
    return std::pow(s * f.cell_area(), 1.0 / p);
}

double l2_norm(const Field2D& f) { return lp_norm(f, 2.0); }

double energy_l2(const Field2D& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    return s * f.cell_area();
}

cplx inner_product(const Field2D& f, const Field2D& g) {
    if (!f.same_shape(g)) throw Error("inner_product: shape mismatch");
    cplx s = 0.0;
    auto a = f.values();
    auto b = g.values();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s * f.cell_area();
}

cplx inner_product(const SpectralField2D& f, const SpectralField2D& g) {
    if (f.n() != g.n() || f.period() != g.period()) throw Error("inner_product: shape mismatch");
    cplx s = 0.0;
    auto a = f.values();
    auto b = g.values();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

Field2D abs_field(const Field2D& f) {
    Field2D out(f.n(), f.period());
    auto a = f.values();
    auto b = out.values();
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = std::abs(a[i]);
    return out;
}

}  // namespace lacuna
