#pragma once

#include "lacuna/geometry.hpp"
#include "lacuna/grid.hpp"

#include <functional>
#include <map>
#include <vector>

namespace lacuna {

// Mother profiles, written in the cycles convention phi^(eta) = int phi(x) e^{-2 pi i x eta} dx.

/// 1 on [7/8, 13/8], 0 off (3/4, 7/4), C-infinity transition in between.
double phi1_hat(double eta);
/// eta e^{-eta^2/2}: positive for eta > 0 and bounded by min(|eta|, 1/|eta|).
double phi2_hat(double eta);
/// Closed-form inverse transform of phi2_hat.
cplx phi2(double x);
/// Squared L2 norms of the one-dimensional mothers.
double phi1_norm_sq();
double phi2_norm_sq();
/// Half-width beyond which |phi2| < 1e-14.
double phi2_effective_support();

struct EnvelopeReport {
    bool phi1_envelope = false;   // 1_{[7/8,13/8]} <= phi1_hat <= 1_{[3/4,7/4]}
    bool phi2_positive = false;   // phi2_hat > 0 for eta > 0
    bool phi2_bound = false;      // |phi2_hat| <= min(|eta|, 1/|eta|)
    double truncation_residual = 0.0;  // max |phi2| sampled outside the effective support
    bool ok() const { return phi1_envelope && phi2_positive && phi2_bound && truncation_residual < 1e-14; }
};

struct MotherPackets {
    std::size_t samples = 0;
    double width = 0.0;  // profiles sampled on [-width/2, width/2)
    std::vector<cplx> phi1;
    std::vector<cplx> phi2;
    double effective_support = 0.0;
    EnvelopeReport report;
};

/// Samples the mothers on an n-point grid of width 16 mother units and checks the
/// envelope conditions at the frequencies k / 16 of that grid.
MotherPackets build_mothers(std::size_t n, double period = 1.0);

/// Offset delta_j(r) in [0, |r|] attached to the dyadic interval (axis, n, m).
using DeltaRule = std::function<double(int axis, int nexp, long m)>;

/// Dyadic grid dilated by lambda in [1,2)^2 and translated by y, living on the
/// n x n torus of side `period`. Only scales with 4 <= |r| n / L and |r| <= L / 4
/// are resolvable.
struct ShiftedGrid {
    int id = 0;
    std::size_t n = 64;
    double period = 1.0;
    double lambda[2] = {1.0, 1.0};
    double y[2] = {0.0, 0.0};
    DeltaRule delta;

    static ShiftedGrid base(std::size_t n, double period = 1.0);

    double side(int axis, int nexp) const;
    double center(int axis, int nexp, long m) const;
    /// Number of positions along the axis needed to cover one period.
    long positions(int axis, int nexp) const;
    /// Resolvable scale exponents along the axis, ascending.
    std::vector<int> scales(int axis) const;
    bool resolvable(int axis, int nexp) const;
    RealRect rect(const DyadicRectangle& r) const;
    void validate() const;
};

using CoefficientMap = std::map<DyadicRectangle, cplx>;

struct WavePacket {
    DyadicRectangle rect;
    int flavor = 1;
    Field2D field;
};

/// One-dimensional torus coefficients a_k (k by frequency_index) of the flavor-j
/// packet with side `side` centered at `center`, normalized so that
/// sum |a_k|^2 equals the norm of the mother on the line.
std::vector<cplx> axis_spectrum(int flavor, double side, double center, std::size_t n, double period);

WavePacket wave_packet(const ShiftedGrid& g, const DyadicRectangle& r, int flavor);
/// Spectrum of the packet; idft of it is WavePacket::field.
SpectralField2D packet_spectrum(const ShiftedGrid& g, const DyadicRectangle& r, int flavor);

/// <f, phi^j_R> for every resolvable rectangle of g. Parallel over scale pairs.
CoefficientMap analysis(const Field2D& f, const ShiftedGrid& g, int flavor = 1);
/// Sum_R coeff(R) phi^j_R.
Field2D synthesize(const CoefficientMap& coeffs, const ShiftedGrid& g, int flavor);

/// Sum_R |<f, phi^1_R>|^2 / ||f||^2 over the resolvable rectangles of g.
double bessel_ratio(const Field2D& f, const ShiftedGrid& g);

namespace reference {
// Packet-by-packet evaluation through full fields.
CoefficientMap analysis(const Field2D& f, const ShiftedGrid& g, int flavor = 1);
Field2D synthesize(const CoefficientMap& coeffs, const ShiftedGrid& g, int flavor);
}  // namespace reference

// Reconstruction on the plane. f is read as its periodic extension and the packet
// families run over all dyadic scales of the plane that meet its spectrum; the
// output is sampled back on the grid of f.

/// C^j_{lambda,y} f for a single dilation/translation.
Field2D plane_synthesis(const Field2D& f, int flavor, const double lambda[2], const double y[2]);

struct Reconstruction {
    Field2D average;
    cplx fit = 0.0;         // c_j minimizing || average - c_j f ||
    double residual = 0.0;  // || average - c_j f || / || f ||
    double relative_norm = 0.0;  // || average || / || f ||
};

/// Average of C^j_{(2^s1, 2^s2), y} f over s in {0, 1/n_dil, ...}^2 and
/// y on an n_tr x n_tr grid covering one period.
Reconstruction average_reconstruction(const Field2D& f, int flavor, int n_dil, int n_tr);

/// psi(x) = int conj(phi1(t)) phi2(x + t) dt on a periodic line of width `width`
/// with `samples` points; `spectrum` is its DFT in the same convention as the
/// mothers, indexed by frequency_index.
struct Psi {
    double width = 0.0;
    std::vector<cplx> values;
    std::vector<cplx> spectrum;
};
Psi cross_correlation_psi(std::size_t samples = 4096, double width = 64.0);

/// sigma(r1 x r2) = lambda r + (y1 |r1|, y2 |r2|) + (delta1(r1), delta2(r2)) on the base grid.
RealRect sigma_map(const DyadicRectangle& r, const double lambda[2], const double y[2],
                   const DeltaRule& delta = {});

/// Plane inner product <phi^a_P, phi^b_Q> of tensor packets adapted to real rectangles.
cplx plane_packet_inner(int flavor_a, const RealRect& p, int flavor_b, const RealRect& q);

/// Torus renormalization kappa of a flavor-1 packet of the given side.
double packet_kappa(double side, std::size_t n, double period);

}  // namespace lacuna
