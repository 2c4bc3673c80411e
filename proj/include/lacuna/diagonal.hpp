#pragma once

#include "lacuna/operators.hpp"
#include "lacuna/packets.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lacuna {

/// Band R(k) of the base grid: resolvable rectangles with a_k/2 <= sl(R) <= 2 a_k.
std::vector<std::pair<int, int>> band_scale_pairs(const ShiftedGrid& g, double a);

/// Phi^j_k f = sum over R in R(k) of <f, phi1_R> phi^j_R on the base grid of f.
/// `k` is 1-based into `dirs`. Throws when the band has no resolvable scale pair.
Field2D band_operator(const Field2D& f, const LacunarySet& dirs, int k, int flavor);
/// Same, from precomputed base-grid coefficients.
Field2D band_operator(const CoefficientMap& coeffs, const ShiftedGrid& g, double a, int flavor);

enum class SquareVariant { Band, Rectangle };

/// Band: (sum_k |Phi^j_k f|^2)^{1/2} over the nonempty bands of dirs.
/// Rectangle: (sum_R |<f, phi^j_R>|^2 / |R| 1_R)^{1/2} over the base grid.
Field2D square_function(const Field2D& f, SquareVariant variant, int flavor = 1,
                        const LacunarySet& dirs = make_lacunary(8));
/// Rectangle variant from explicit coefficients.
Field2D rectangle_square_function(const CoefficientMap& coeffs, const ShiftedGrid& g);

struct DiagonalReport {
    double ratio = 0.0;
    std::vector<int> bands_used;
    std::vector<int> bands_empty;
};

/// || (sum_k |P_{v_k} Phi^1_k f|^{p*})^{1/p*} ||_p / ||f||_p with p* = max(2, p); empty bands are skipped.
DiagonalReport diagonal_bound_probe(const Field2D& f, const LacunarySet& dirs, double p);

/// P_{cone(a)} phi1_R on the base grid.
SpectralField2D transition_packet_spectrum(const ShiftedGrid& g, const DyadicRectangle& r, double a);

struct PacketEnvelope {
    DyadicRectangle rect;
    double a = 0.0;
    double center_ratio = 0.0;     // |phi(c)| sqrt|R|
    std::vector<double> distances;  // in units of the long side
    std::vector<double> along;      // |phi(c + t u)| sqrt|R| along the singular direction u = v / |v|
    std::vector<double> across;     // same along v perp
    double along_tail_factor = 0.0;  // |phi(t)| / |phi(2t)| on the last doubling along u
    double along_exponent = 0.0;     // fitted log2 decay per doubling, tail
    double across_exponent = 0.0;
};

/// Samples the transition packet off grid by trigonometric interpolation.
PacketEnvelope envelope_check(const ShiftedGrid& g, const DyadicRectangle& r, double a);

/// Slope from the two-sided generator (2/3) 2^{-k}, k in Z, nearest to `slope` in log scale.
double nearest_generator_slope(double slope);

/// S(R, j, l): keep side j of R and split the other side into 2^l equal dyadic pieces.
std::vector<DyadicRectangle> split_family(const DyadicRectangle& r, int j, int ell);

enum class Region { V1, V2, Full };
std::string to_string(Region r);

struct ProbeConfig {
    std::size_t n = 1024;
    int restarts = 50;
    std::uint64_t seed = 1;
};

struct ProbeResult {
    double value = 0.0;
    std::uint64_t best_seed = 0;  // 0 marks the aligned candidate
};

/// Lower bound for sup over |f| <= 1 supported in the region of
/// sum_{R' in S(R,1,l)} |<phi_R', f>|^2, normalized by ||f||^2 (V1) or |R| (V2, Full).
ProbeResult localization_probe(const DyadicRectangle& r, double mu, int ell, Region region,
                               const ProbeConfig& cfg = {});

/// Region mask on the n-grid of the unit torus, centered at the center of R.
std::vector<char> region_mask(const DyadicRectangle& r, double mu, Region region, std::size_t n);

}  // namespace lacuna
