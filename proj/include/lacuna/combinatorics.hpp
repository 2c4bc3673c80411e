#pragma once

#include "lacuna/geometry.hpp"
#include "lacuna/grid.hpp"
#include "lacuna/packets.hpp"

#include <cstddef>
#include <vector>

namespace lacuna {

/// Finite set of base-grid dyadic rectangles with coefficients and signs,
/// kept sorted and duplicate free.
class RectCollection {
public:
    RectCollection() = default;
    explicit RectCollection(const CoefficientMap& coeffs);

    void add(const DyadicRectangle& r, cplx coeff, int sign = 1);

    std::size_t size() const { return rects_.size(); }
    bool empty() const { return rects_.empty(); }
    const std::vector<DyadicRectangle>& rects() const { return rects_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    const std::vector<int>& signs() const { return signs_; }
    const DyadicRectangle& rect(std::size_t i) const { return rects_[i]; }
    cplx coeff(std::size_t i) const { return coeffs_[i]; }
    int sign(std::size_t i) const { return signs_[i]; }
    bool contains(const DyadicRectangle& r) const;

    RectCollection subset(const std::vector<std::size_t>& idx) const;
    RectCollection minus(const RectCollection& other) const;

private:
    std::vector<DyadicRectangle> rects_;
    std::vector<cplx> coeffs_;
    std::vector<int> signs_;
};

double shadow_measure(const RectCollection& s);
/// Pixel-count oracle for the shadow on an n x n raster of the unit square.
double shadow_measure_raster(const RectCollection& s, std::size_t n);

/// Rectangles with |r1| / |r2| >= threshold.
RectCollection slope_filter(const RectCollection& s, double threshold);
/// Rectangles with log2 sl(R) >= j.
RectCollection slope_level_filter(const RectCollection& s, int j);

enum class EnergyMode { Exact, Heuristic };

/// |sh S'|^{-1} || (sum_{R in S'} |c_R|^2 / |R| 1_R)^{1/2} ||_1 for the whole collection.
double energy_of(const RectCollection& s);
/// Sup of energy_of over subcollections. Exact mode enumerates the saturated
/// families F(A) = {R : R within the union of A} over antichains A and needs
/// at most 24 rectangles; heuristic mode hill-climbs and returns a lower bound.
double energy(const RectCollection& s, EnergyMode mode = EnergyMode::Exact);
/// Exact when the collection is small enough, heuristic otherwise.
double energy_auto(const RectCollection& s);

namespace reference {
/// Exhaustive sup over all 2^|S| subcollections.
double energy(const RectCollection& s);
}

inline constexpr std::size_t kExactEnergyLimit = 24;

bool has_charge(const RectCollection& s, double delta);

struct ChargeFamilyLevel {
    int w = 0;
    std::vector<RectCollection> families;
};

struct ChargeDecomposition {
    std::vector<ChargeFamilyLevel> levels;
    RectCollection remainder;
    double remainder_energy = 0.0;
};

struct DecompositionAudit {
    bool disjoint = false;
    bool charged = false;
    bool recovers_input = false;
    bool ok() const { return disjoint && charged && recovers_input; }
};

inline constexpr std::size_t kMaxFamilySize = 16;

ChargeDecomposition charge_decompose(const RectCollection& s, int w_max);
DecompositionAudit audit_decomposition(const ChargeDecomposition& d, const RectCollection& input);

/// K_0 = {j0} with S(j0) empty and nested K_v, v = 0..v_max. S(j) keeps log2 sl >= j and
/// j_v is the smallest cut >= j.
struct ScaleChain {
    int j0 = 0;
    std::vector<std::vector<int>> levels;  // sorted cut sets
};

ScaleChain scale_chain(const RectCollection& s, int v_max);
/// Checks nesting and size(S(j) - S(j_v)) <= 2^{-v} for v >= 1.
bool verify_chain(const RectCollection& s, const ScaleChain& chain);
/// Minimum number of cuts extending `required` that satisfy level v, by exhaustive search.
std::size_t brute_force_min_cuts(const RectCollection& s, const std::vector<int>& required, int v);
/// Occupied log-slope levels, ascending.
std::vector<int> slope_levels(const RectCollection& s);

struct SigmaParams {
    double lambda[2] = {1.0, 1.0};
    double y[2] = {0.0, 0.0};
    DeltaRule delta;
};

enum class ModelMode { Fixed, Maximal };

/// Fixed: sum_R eps_R <f, phi1_R> phi2_{sigma(R)}. Maximal: pointwise sup over a > 0 of
/// |sum_{sl R > a} ...|. Coefficients are recomputed from f on the base torus grid.
Field2D model_sum(const Field2D& f, const RectCollection& s, const SigmaParams& sigma, ModelMode mode);

/// Indicator of the shadow rasterized on the grid of `like`.
Field2D shadow_indicator(const RectCollection& s, std::size_t n, double period = 1.0);

/// min over the support of `out` of M 1_{sh S}(x) (1 + |y1| + |y2|)^2.
double containment_margin(const Field2D& out, const RectCollection& s, const SigmaParams& sigma);

}  // namespace lacuna
