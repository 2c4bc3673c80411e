#pragma once

#include "lacuna/geometry.hpp"
#include "lacuna/grid.hpp"

#include <map>
#include <string>
#include <vector>

namespace lacuna {

/// a: R -> [0, inf) with finite support on base-grid dyadic rectangles of the unit square.
class CarlesonWeight {
public:
    void set(const DyadicRectangle& r, double value);
    double get(const DyadicRectangle& r) const;
    const std::map<DyadicRectangle, double>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::vector<DyadicRectangle> support() const;
    CarlesonWeight scaled(double t) const;

private:
    std::map<DyadicRectangle, double> entries_;
};

/// Open set on the n x n raster of the unit torus, stored as a pixel mask.
class OpenSet {
public:
    OpenSet() = default;
    explicit OpenSet(std::size_t n) : n_(n), mask_(n * n, 0) {}
    static OpenSet from_rectangles(const std::vector<DyadicRectangle>& rects, std::size_t n);
    static OpenSet whole(std::size_t n);

    std::size_t n() const { return n_; }
    bool operator()(std::size_t i, std::size_t j) const { return mask_[i * n_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { mask_[i * n_ + j] = v; }
    double measure() const;
    bool contains(const DyadicRectangle& r) const;
    bool empty() const;
    const std::vector<char>& mask() const { return mask_; }
    friend bool operator==(const OpenSet&, const OpenSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<char> mask_;
};

/// Pixel span of a rectangle on the raster; throws when it is finer than a pixel.
struct PixelBox {
    long i0, i1, j0, j1;
};
PixelBox pixel_box(const DyadicRectangle& r, std::size_t n);

/// F_U = sum over R within U of a(R) 1_R.
Field2D f_u(const CarlesonWeight& a, const OpenSet& u);

enum class CmMode { Exact, Heuristic };

/// sup over open U of |U|^{-1} ||F_U||_p. Exact mode ranges over unions of support
/// rectangles (enough, since shrinking U to the union of its support rectangles
/// keeps F_U). p = 0 reads ||F||_0 as |supp F|.
double cm_norm(const CarlesonWeight& a, double p, CmMode mode = CmMode::Exact);

namespace reference {
/// Sup over every subset of the support, unions taken as U.
double cm_norm(const CarlesonWeight& a, double p);
/// Sup over every pixel set inside the 4 x 4 pixel block at the origin of an n-grid.
double cm_norm_pixels(const CarlesonWeight& a, double p, std::size_t n);
}  // namespace reference

double jn_ratio(const CarlesonWeight& a, double p, double q);

struct JnRound {
    double u = 0, e = 0, v = 0;  // measures of U, E, V
    double int_fu = 0, int_fv = 0;
    double drop = 0;             // int F_U - int F_V
    double bound = 0;            // 2 eps^{-2/p} |U|
    bool halving = false;        // |V| <= |U| / 2
    bool half_intersection = false;  // |R cap E| < |R| / 2 for support R within U, not within V
};

struct JnCertificate {
    double p = 1, epsilon = 0.05;
    std::size_t n = 64;
    double u0 = 0;        // |U_0|
    double total = 0;     // int F_{U_0}
    double constant = 0;  // total / |U_0|
    std::vector<JnRound> rounds;
    bool valid = false;
    int failed_round = -1;
    std::string failure;
};

/// Runs U -> V with E = {F_U > eps^{-2/p}} and V = {M 1_E > eps} cap U until U is empty.
JnCertificate jn_certificate(const CarlesonWeight& a, double p, double epsilon, std::size_t n = 64);
/// Internal consistency of a certificate (flags against numbers, telescoping sum).
bool check_certificate(const JnCertificate& c, std::string* why = nullptr);

struct MuResult {
    double mu = 0;
    bool capped = false;
};

/// Largest mu on the grid 2^{i/8} with the concentric dilate mu R inside {M 1_U > 1/2}.
MuResult mu_r(const OpenSet& u, const DyadicRectangle& r);
namespace reference {
MuResult mu_r(const OpenSet& u, const DyadicRectangle& r);
}

/// Dyadic rectangles within U whose parents in either coordinate are not within U.
std::vector<DyadicRectangle> maximal_rectangles(const OpenSet& u);

struct JourneClass {
    int k = 0;
    int r1 = 0, r2 = 0;  // side exponent residues mod 2(k+1)
    double sum_area = 0, union_area = 0;
    std::size_t count = 0;
    bool nearly_disjoint() const { return sum_area <= 2.0 * union_area * (1 + 1e-12); }
};

struct JourneReport {
    bool hypothesis = true;
    std::size_t open_sets = 0;
    std::size_t maximal_checked = 0;
    double worst_slack = 0;  // max over maximal R of sum_{R' in R} a(R') / (mu_R^{-eps} |R|)
    double cm1 = 0;
    std::vector<JourneClass> classes;
    bool near_disjoint = true;
    bool partition_exact = true;
};

/// Checks the per-rectangle hypothesis over test open sets built from the support,
/// evaluates CM,1 and audits the near-disjoint class structure.
JourneReport journe_verify(const CarlesonWeight& a, double eps, std::size_t n = 64);

}  // namespace lacuna
