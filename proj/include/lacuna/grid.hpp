#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacuna {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(std::size_t n);

/// Signed integer frequency stored at array index `idx` (origin at index 0).
inline int signed_frequency(std::size_t idx, std::size_t n) {
    const auto k = static_cast<long>(idx);
    return static_cast<int>(k < static_cast<long>(n / 2) ? k : k - static_cast<long>(n));
}

inline std::size_t frequency_index(int k, std::size_t n) {
    const long nn = static_cast<long>(n);
    return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

/// Complex samples on an n x n periodic grid of side `period`.
/// Sample (i, j) sits at x = (i L / n, j L / n); storage is row-major in i.
class Field2D {
public:
    Field2D() = default;
    explicit Field2D(std::size_t n, double period = 1.0);

    template <class Fn>
    static Field2D from_function(std::size_t n, double period, Fn&& fn) {
        Field2D f(n, period);
        const double h = period / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                f(i, j) = fn(h * static_cast<double>(i), h * static_cast<double>(j));
        return f;
    }

    std::size_t n() const { return n_; }
    double period() const { return period_; }
    double spacing() const { return period_ / static_cast<double>(n_); }
    double cell_area() const { return spacing() * spacing(); }

    cplx& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

    std::span<cplx> values() { return values_; }
    std::span<const cplx> values() const { return values_; }

    bool same_shape(const Field2D& other) const {
        return n_ == other.n_ && period_ == other.period_;
    }
    bool all_finite() const;

    Field2D& operator+=(const Field2D& rhs);
    Field2D& operator-=(const Field2D& rhs);
    Field2D& operator*=(cplx s);

    friend Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
    friend Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
    friend Field2D operator*(cplx s, Field2D a) { return a *= s; }

private:
    std::size_t n_ = 0;
    double period_ = 1.0;
    std::vector<cplx> values_;
};

/// Fourier coefficients of a Field2D, indexed by signed integer frequencies
/// (k1, k2) in [-n/2, n/2)^2; physical frequency is (2 pi / L) k.
///
/// Normalization: c_k = (L / n^2) sum_x f(x) e^{-2 pi i k.x / L}, so that
/// f = (1/L) sum_k c_k e^{2 pi i k.x / L} and the quadrature L2 norm of f
/// equals the l2 norm of the coefficients.
class SpectralField2D {
public:
    SpectralField2D() = default;
    explicit SpectralField2D(std::size_t n, double period = 1.0);

    std::size_t n() const { return n_; }
    double period() const { return period_; }

    cplx& at(int k1, int k2) { return values_[frequency_index(k1, n_) * n_ + frequency_index(k2, n_)]; }
    const cplx& at(int k1, int k2) const {
        return values_[frequency_index(k1, n_) * n_ + frequency_index(k2, n_)];
    }
    cplx& raw(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
    const cplx& raw(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

    std::span<cplx> values() { return values_; }
    std::span<const cplx> values() const { return values_; }

    double l2_norm() const;

private:
    std::size_t n_ = 0;
    double period_ = 1.0;
    std::vector<cplx> values_;
};

/// Fourier multiplier: a rule on physical frequencies xi in R^2 with a bound on |rule|.
struct Multiplier {
    std::function<cplx(double, double)> rule;
    double bound = 1.0;
};

SpectralField2D dft(const Field2D& f);
Field2D idft(const SpectralField2D& s);

Field2D apply_multiplier(const Field2D& f, const Multiplier& m);

/// Multiplies coefficient (k1, k2) by fn(k1, k2); integer-frequency variant used internally
/// where exact sign tests on k matter.
Field2D apply_integer_multiplier(const Field2D& f, const std::function<cplx(int, int)>& fn);
void multiply_in_place(SpectralField2D& s, const std::function<cplx(int, int)>& fn);

/// Riemann-sum L^p norm, (L/n)^{2/p} (sum |f|^p)^{1/p}; p = infinity gives the max modulus.
double lp_norm(const Field2D& f, double p);
double l2_norm(const Field2D& f);

/// <f, g> = integral f conj(g), Riemann sum.
cplx inner_product(const Field2D& f, const Field2D& g);
cplx inner_product(const SpectralField2D& f, const SpectralField2D& g);

/// Sum of |f|^2 weighted by the cell area, i.e. ||f||_2^2.
double energy_l2(const Field2D& f);

Field2D abs_field(const Field2D& f);

}  // namespace lacuna
