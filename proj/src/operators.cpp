#include "lacuna/operators.hpp"

#include <algorithm>
#include <cmath>

namespace lacuna {

Direction::Direction(double v1, double v2) : v1_(v1), v2_(v2) {
    if (!(std::isfinite(v1) && std::isfinite(v2)) || (v1 == 0.0 && v2 == 0.0))
        throw Error("Direction: zero or non-finite vector");
}

std::vector<Direction> LacunarySet::directions(DirectionConvention c) const {
    std::vector<Direction> out;
    out.reserve(a.size());
    for (double ak : a) out.push_back(c == DirectionConvention::Cone ? Direction::cone(ak) : Direction::theorem(ak));
    return out;
}

double default_slope(int k) { return (2.0 / 3.0) * std::ldexp(1.0, -k); }

LacunarySet make_lacunary(std::size_t count, LacunaryMode mode, double ratio) {
    if (count == 0) throw Error("make_lacunary: count must be positive");
    LacunarySet s;
    s.ratio = ratio;
    for (std::size_t k = 1; k <= count; ++k) s.a.push_back(default_slope(static_cast<int>(k)));
    validate_lacunary(s, mode);
    return s;
}

void validate_lacunary(const LacunarySet& set, LacunaryMode mode) {
    if (set.a.empty()) throw Error("lacunary set is empty");
    if (!(set.ratio > 1.0)) throw Error("lacunary ratio must exceed 1");
    for (std::size_t k = 0; k < set.a.size(); ++k) {
        const double ak = set.a[k];
        if (!(ak > 0.0) || !std::isfinite(ak)) throw Error("lacunary entries must be positive");
        if (k + 1 < set.a.size() && !(set.a[k + 1] < ak / set.ratio))
            throw Error("lacunarity violated at k=" + std::to_string(k + 2) + ": a_{k+1} >= a_k / ratio");
        if (mode == LacunaryMode::Normalized) {
            const double s = std::ldexp(ak, static_cast<int>(k + 1));
            if (!(s > 0.5 && s < 1.0))
                throw Error("normalization 1/2 < 2^k a_k < 1 violated at k=" + std::to_string(k + 1));
        }
    }
}

Multiplier hilbert_multiplier(const Direction& v) {
    return {[v](double x1, double x2) {
                const double d = v.v1() * x1 + v.v2() * x2;
                return cplx(0.0, -kPi * ((d > 0) - (d < 0)));
            },
            kPi};
}

Multiplier analytic_multiplier(const Direction& v) {
    return {[v](double x1, double x2) {
                const double d = v.v1() * x1 + v.v2() * x2;
                return cplx(d > 0 ? 1.0 : (d == 0 ? 0.5 : 0.0));
            },
            1.0};
}

Multiplier quadrant_multiplier() {
    return {[](double x1, double x2) { return cplx(x1 >= 0 && x2 >= 0 ? 1.0 : 0.0); }, 1.0};
}

namespace {

cplx hilbert_symbol(const Direction& v, int k1, int k2) { return cplx(0.0, -kPi * v.side(k1, k2)); }

cplx analytic_symbol(const Direction& v, int k1, int k2) {
    const int s = v.side(k1, k2);
    return cplx(s > 0 ? 1.0 : (s == 0 ? 0.5 : 0.0));
}

Field2D directional_modulus(const SpectralField2D& spectrum, const Direction& v, DirectionalKind kind) {
    SpectralField2D s = spectrum;
    if (kind == DirectionalKind::H)
        multiply_in_place(s, [&](int k1, int k2) { return hilbert_symbol(v, k1, k2); });
    else
        multiply_in_place(s, [&](int k1, int k2) { return analytic_symbol(v, k1, k2); });
    return abs_field(idft(s));
}

void fold_max(Field2D& acc, const Field2D& x) {
    auto a = acc.values();
    auto b = x.values();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i].real() > a[i].real()) a[i] = b[i];
}

}  // namespace

Field2D hilbert_dir(const Field2D& f, const Direction& v) {
    return apply_integer_multiplier(f, [&](int k1, int k2) { return hilbert_symbol(v, k1, k2); });
}

Field2D analytic_proj(const Field2D& f, const Direction& v) {
    return apply_integer_multiplier(f, [&](int k1, int k2) { return analytic_symbol(v, k1, k2); });
}

// The closed quadrant is used so that B is an honest projection on the grid.
Field2D quadrant_proj(const Field2D& f) {
    return apply_integer_multiplier(f, [](int k1, int k2) { return cplx(k1 >= 0 && k2 >= 0 ? 1.0 : 0.0); });
}

Field2D maximal_directional(const Field2D& f, std::span<const Direction> dirs, DirectionalKind kind) {
    if (dirs.empty()) throw Error("maximal_directional: empty direction set");
    const auto spectrum = dft(f);
    Field2D out(f.n(), f.period());
    const long count = static_cast<long>(dirs.size());
#pragma omp parallel
    {
        Field2D local(f.n(), f.period());
#pragma omp for schedule(dynamic)
        for (long d = 0; d < count; ++d) fold_max(local, directional_modulus(spectrum, dirs[d], kind));
#pragma omp critical
        fold_max(out, local);
    }
    return out;
}

Field2D maximal_directional(const Field2D& f, const LacunarySet& dirs, DirectionalKind kind,
                            DirectionConvention convention) {
    const auto v = dirs.directions(convention);
    return maximal_directional(f, std::span<const Direction>(v), kind);
}

std::vector<Direction> equispaced_directions(std::size_t count) {
    if (count == 0) throw Error("equispaced_directions: count must be positive");
    std::vector<Direction> out;
    for (std::size_t j = 0; j < count; ++j) {
        const double t = kPi * static_cast<double>(j) / static_cast<double>(count);
        out.emplace_back(std::cos(t), std::sin(t));
    }
    return out;
}

std::string to_string(ConeLabel label) {
    switch (label) {
        case ConeLabel::Keep: return "keep";
        case ConeLabel::Kill: return "kill";
        case ConeLabel::Transition: return "transition";
    }
    return "?";
}

ConeLabel cone_classify(double a, double side1, double side2) {
    if (!(a > 0.0)) throw Error("cone_classify: a must be positive");
    if (0.5 * a * side2 > side1) return ConeLabel::Keep;
    if (side1 > 2.0 * a * side2) return ConeLabel::Kill;
    return ConeLabel::Transition;
}

namespace reference {

Field2D maximal_directional(const Field2D& f, std::span<const Direction> dirs, DirectionalKind kind) {
    if (dirs.empty()) throw Error("maximal_directional: empty direction set");
    Field2D out(f.n(), f.period());
    for (const auto& v : dirs) {
        const Field2D g = kind == DirectionalKind::H ? hilbert_dir(f, v) : analytic_proj(f, v);
        fold_max(out, abs_field(g));
    }
    return out;
}

}  // namespace reference

}  // namespace lacuna
