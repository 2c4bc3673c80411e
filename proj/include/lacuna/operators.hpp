#pragma once

#include "lacuna/geometry.hpp"
#include "lacuna/grid.hpp"

#include <span>
#include <string>
#include <vector>

namespace lacuna {

/// Nonzero vector v in R^2. Operators built from v depend only on its direction.
class Direction {
public:
    Direction(double v1, double v2);

    /// Direction realizing the cone trichotomy for slope a: its half-plane
    /// projection keeps packets of rectangles with sl(R) < a/2 and kills those
    /// with sl(R) > 2a. Physically this is v = (a, -1); see README "Conventions".
    static Direction cone(double a) { return {a, -1.0}; }
    /// Reflection of cone(a) through x2 -> -x2; the (1, a_k) family up to the same transposition.
    static Direction theorem(double a) { return {a, 1.0}; }

    double v1() const { return v1_; }
    double v2() const { return v2_; }

    /// Sign of v . k for an integer frequency k (0 on the critical line).
    int side(int k1, int k2) const {
        const double d = v1_ * k1 + v2_ * k2;
        return (d > 0) - (d < 0);
    }

private:
    double v1_;
    double v2_;
};

enum class LacunaryMode { Theorem, Normalized };
enum class DirectionConvention { Cone, Theorem };

/// Slopes a_1 > a_2 > ... > a_K > 0 with lacunarity ratio `ratio`.
struct LacunarySet {
    double ratio = 2.0;
    std::vector<double> a;

    std::size_t size() const { return a.size(); }
    std::vector<Direction> directions(DirectionConvention c = DirectionConvention::Cone) const;
};

/// Default generator a_k = (2/3) 2^{-k}, k = 1..count. Lacunary for every ratio < 2.
LacunarySet make_lacunary(std::size_t count, LacunaryMode mode = LacunaryMode::Normalized,
                          double ratio = 1.9);

/// Throws Error unless 0 < a_{k+1} < a_k / ratio (and, in Normalized mode,
/// 1/2 < 2^k a_k < 1).
void validate_lacunary(const LacunarySet& set, LacunaryMode mode);

double default_slope(int k);

/// Spectral multiplier -i pi sgn(v . xi), zero on the critical line.
Field2D hilbert_dir(const Field2D& f, const Direction& v);
/// Spectral multiplier 1{v . xi > 0}, 1/2 on the critical line.
Field2D analytic_proj(const Field2D& f, const Direction& v);
/// Fourier projection onto the closed quadrant [0, inf)^2.
Field2D quadrant_proj(const Field2D& f);

Multiplier hilbert_multiplier(const Direction& v);
Multiplier analytic_multiplier(const Direction& v);
Multiplier quadrant_multiplier();

enum class DirectionalKind { H, P };

/// Pointwise sup over directions of |H_v f| or |P_v f|. Directions are
/// evaluated in parallel; the max-fold is order independent.
Field2D maximal_directional(const Field2D& f, std::span<const Direction> dirs, DirectionalKind kind);
Field2D maximal_directional(const Field2D& f, const LacunarySet& dirs, DirectionalKind kind,
                            DirectionConvention convention = DirectionConvention::Cone);

/// K directions equally spaced in angle over [0, pi); nested for K = 2^j.
std::vector<Direction> equispaced_directions(std::size_t count);

enum class ConeLabel { Keep, Kill, Transition };
std::string to_string(ConeLabel label);

ConeLabel cone_classify(double a, double side1, double side2);
inline ConeLabel cone_classify(double a, const DyadicRectangle& r) {
    return cone_classify(a, r.side1(), r.side2());
}

/// Strong maximal function: sup over dyadic rectangles R containing x of the
/// average of |f| over the concentric double 2R (periodic wrap). Rectangles range
/// over every dyadic scale pair from one sample up to the full period.
Field2D strong_maximal(const Field2D& f);

namespace reference {
// Serial implementations kept as oracles for the parallel kernels.
Field2D maximal_directional(const Field2D& f, std::span<const Direction> dirs, DirectionalKind kind);
Field2D strong_maximal(const Field2D& f);
}  // namespace reference

}  // namespace lacuna
