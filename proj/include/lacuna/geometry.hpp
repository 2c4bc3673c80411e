#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>

namespace lacuna {

/// Dyadic rectangle r1 x r2 addressed by scale exponents and positions.
/// On the base grid (lambda = 1, y = 0) of the unit torus, side j is 2^{n_j} and
/// the rectangle is prod_j [m_j 2^{n_j}, (m_j + 1) 2^{n_j}).
struct DyadicRectangle {
    int n1 = 0;
    int n2 = 0;
    long m1 = 0;
    long m2 = 0;
    int grid = 0;

    friend auto operator<=>(const DyadicRectangle&, const DyadicRectangle&) = default;

    double side1() const { return std::ldexp(1.0, n1); }
    double side2() const { return std::ldexp(1.0, n2); }
    double area() const { return std::ldexp(1.0, n1 + n2); }
    /// sl(R) = |r1| / |r2|.
    double slope() const { return std::ldexp(1.0, n1 - n2); }

    double x0() const { return static_cast<double>(m1) * side1(); }
    double x1() const { return static_cast<double>(m1 + 1) * side1(); }
    double y0() const { return static_cast<double>(m2) * side2(); }
    double y1() const { return static_cast<double>(m2 + 1) * side2(); }
};

/// Axis-aligned rectangle with real coordinates [x0, x1) x [y0, y1).
struct RealRect {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    double cx() const { return 0.5 * (x0 + x1); }
    double cy() const { return 0.5 * (y0 + y1); }
};

inline RealRect to_real(const DyadicRectangle& r) { return {r.x0(), r.x1(), r.y0(), r.y1()}; }

/// Dyadic containment (base grid): r ⊆ s.
inline bool contained_in(const DyadicRectangle& r, const DyadicRectangle& s) {
    if (r.n1 > s.n1 || r.n2 > s.n2) return false;
    return (r.m1 >> (s.n1 - r.n1)) == s.m1 && (r.m2 >> (s.n2 - r.n2)) == s.m2;
}

inline bool intersects(const DyadicRectangle& r, const DyadicRectangle& s) {
    const auto nested = [](int na, long ma, int nb, long mb) {
        return na <= nb ? (ma >> (nb - na)) == mb : (mb >> (na - nb)) == ma;
    };
    return nested(r.n1, r.m1, s.n1, s.m1) && nested(r.n2, r.m2, s.n2, s.m2);
}

/// Pixel span [begin, end) of a dyadic interval at scale 2^n, position m, on a
/// raster with `pixels` cells per unit length. Requires 2^n * pixels >= 1.
struct PixelSpan {
    long begin = 0;
    long end = 0;
};

inline PixelSpan pixel_span(int n, long m, std::size_t pixels) {
    const long w = static_cast<long>(std::ldexp(static_cast<double>(pixels), n));
    return {m * w, (m + 1) * w};
}

}  // namespace lacuna
