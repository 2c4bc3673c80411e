#include "lacuna/carleson.hpp"

#include "cells.hpp"
#include "lacuna/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

namespace lacuna {

void CarlesonWeight::set(const DyadicRectangle& r, double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) throw Error("CarlesonWeight: values must be finite and nonnegative");
    entries_[r] = value;
}

double CarlesonWeight::get(const DyadicRectangle& r) const {
    const auto it = entries_.find(r);
    return it == entries_.end() ? 0.0 : it->second;
}

std::vector<DyadicRectangle> CarlesonWeight::support() const {
    std::vector<DyadicRectangle> out;
    for (const auto& [r, v] : entries_) out.push_back(r);
    return out;
}

CarlesonWeight CarlesonWeight::scaled(double t) const {
    CarlesonWeight w;
    for (const auto& [r, v] : entries_) w.set(r, t * v);
    return w;
}

PixelBox pixel_box(const DyadicRectangle& r, std::size_t n) {
    if (std::ldexp(static_cast<double>(n), r.n1) < 1.0 || std::ldexp(static_cast<double>(n), r.n2) < 1.0)
        throw Error("rectangle finer than the raster");
    const auto a = pixel_span(r.n1, r.m1, n), b = pixel_span(r.n2, r.m2, n);
    if (a.begin < 0 || b.begin < 0 || a.end > static_cast<long>(n) || b.end > static_cast<long>(n))
        throw Error("rectangle outside the unit square");
    return {a.begin, a.end, b.begin, b.end};
}

OpenSet OpenSet::from_rectangles(const std::vector<DyadicRectangle>& rects, std::size_t n) {
    OpenSet u(n);
    for (const auto& r : rects) {
        const auto b = pixel_box(r, n);
        for (long i = b.i0; i < b.i1; ++i)
            for (long j = b.j0; j < b.j1; ++j) u.mask_[i * n + j] = 1;
    }
    return u;
}

OpenSet OpenSet::whole(std::size_t n) {
    OpenSet u(n);
    std::fill(u.mask_.begin(), u.mask_.end(), 1);
    return u;
}

double OpenSet::measure() const {
    const auto c = std::count(mask_.begin(), mask_.end(), 1);
    return static_cast<double>(c) / static_cast<double>(n_ * n_);
}

bool OpenSet::contains(const DyadicRectangle& r) const {
    const auto b = pixel_box(r, n_);
    for (long i = b.i0; i < b.i1; ++i)
        for (long j = b.j0; j < b.j1; ++j)
            if (!mask_[i * n_ + j]) return false;
    return true;
}

bool OpenSet::empty() const { return std::none_of(mask_.begin(), mask_.end(), [](char c) { return c != 0; }); }

Field2D f_u(const CarlesonWeight& a, const OpenSet& u) {
    Field2D out(u.n());
    for (const auto& [r, v] : a.entries()) {
        if (v == 0.0 || !u.contains(r)) continue;
        const auto b = pixel_box(r, u.n());
        for (long i = b.i0; i < b.i1; ++i)
            for (long j = b.j0; j < b.j1; ++j) out(i, j) += v;
    }
    return out;
}

namespace {

using detail::CellGrid;
using detail::Mask;

double norm_from_cells(const CellGrid& g, const std::vector<double>& sum, double p) {
    if (p == 0.0) {
        double a = 0.0;
        for (std::size_t c = 0; c < sum.size(); ++c)
            if (sum[c] > 0) a += g.area[c];
        return a;
    }
    double s = 0.0;
    for (std::size_t c = 0; c < sum.size(); ++c)
        if (sum[c] > 0) s += std::pow(sum[c], p) * g.area[c];
    return std::pow(s, 1.0 / p);
}

CellGrid weight_grid(const CarlesonWeight& a) {
    std::vector<double> w;
    for (const auto& [r, v] : a.entries()) w.push_back(v);
    return CellGrid(a.support(), std::move(w));
}

void check_p(double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error("cm_norm: p must be finite and nonnegative");
}

double ratio_for(const CellGrid& g, const Mask& u, const std::vector<char>& member, double p,
                 std::vector<double>& sum, std::vector<char>& cov) {
    const double mu = g.measure(u);
    if (mu == 0.0 || !g.accumulate(member, sum, cov)) return 0.0;
    return norm_from_cells(g, sum, p) / mu;
}

double heuristic_cm(const CarlesonWeight& a, double p) {
    const auto g = weight_grid(a);
    const std::size_t n = a.size();
    std::vector<double> sum;
    std::vector<char> cov, member(n);
    const auto score = [&](const std::vector<char>& pick) {
        Mask u(g.words, 0);
        bool any = false;
        for (std::size_t r = 0; r < n; ++r)
            if (pick[r]) {
                any = true;
                for (std::size_t w = 0; w < g.words; ++w) u[w] |= g.masks[r][w];
            }
        if (!any) return 0.0;
        for (std::size_t r = 0; r < n; ++r) member[r] = g.within(r, u);
        return ratio_for(g, u, member, p, sum, cov);
    };
    double best = 0.0;
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<char> pick(n, 0);
        pick[start] = 1;
        double cur = score(pick);
        for (std::size_t iter = 0; iter < 4 * n; ++iter) {
            double gain = cur;
            std::size_t flip = n;
            for (std::size_t r = 0; r < n; ++r) {
                pick[r] ^= 1;
                const double e = score(pick);
                if (e > gain * (1 + 1e-14)) {
                    gain = e;
                    flip = r;
                }
                pick[r] ^= 1;
            }
            if (flip == n) break;
            pick[flip] ^= 1;
            cur = gain;
        }
        best = std::max(best, cur);
    }
    return best;
}

}  // namespace

double cm_norm(const CarlesonWeight& a, double p, CmMode mode) {
    check_p(p);
    if (a.empty()) return 0.0;
    if (mode == CmMode::Heuristic) return heuristic_cm(a, p);
    const auto support = a.support();
    if (support.size() > 24 || detail::count_maximal(support) > 16)
        throw Error("cm_norm: exact mode needs at most 24 support rectangles and 16 maximal ones");
    const auto g = weight_grid(a);
    std::vector<double> sum;
    std::vector<char> cov;
    double best = 0.0;
    detail::for_each_saturated(g, support, [&](const Mask& u, const std::vector<char>& member) {
        best = std::max(best, ratio_for(g, u, member, p, sum, cov));
    });
    return best;
}

namespace reference {

double cm_norm(const CarlesonWeight& a, double p) {
    check_p(p);
    if (a.size() > 20) throw Error("reference::cm_norm: weight too large");
    if (a.empty()) return 0.0;
    const auto g = weight_grid(a);
    const std::size_t n = a.size();
    std::vector<double> sum;
    std::vector<char> cov, member(n);
    double best = 0.0;
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
        Mask u(g.words, 0);
        for (std::size_t r = 0; r < n; ++r)
            if ((bits >> r) & 1u)
                for (std::size_t w = 0; w < g.words; ++w) u[w] |= g.masks[r][w];
        for (std::size_t r = 0; r < n; ++r) member[r] = g.within(r, u);
        best = std::max(best, ratio_for(g, u, member, p, sum, cov));
    }
    return best;
}

double cm_norm_pixels(const CarlesonWeight& a, double p, std::size_t n) {
    check_p(p);
    std::vector<std::pair<std::uint32_t, double>> rects;
    for (const auto& [r, v] : a.entries()) {
        const auto b = pixel_box(r, n);
        if (b.i1 > 4 || b.j1 > 4) throw Error("cm_norm_pixels: weight must live in the 4 x 4 corner block");
        std::uint32_t m = 0;
        for (long i = b.i0; i < b.i1; ++i)
            for (long j = b.j0; j < b.j1; ++j) m |= 1u << (i * 4 + j);
        rects.emplace_back(m, v);
    }
    const double cell = 1.0 / static_cast<double>(n * n);
    double best = 0.0;
    for (std::uint32_t u = 1; u < (1u << 16); ++u) {
        double f[16] = {};
        for (const auto& [m, v] : rects)
            if ((m & ~u) == 0)
                for (int k = 0; k < 16; ++k)
                    if ((m >> k) & 1u) f[k] += v;
        double s = 0.0;
        for (int k = 0; k < 16; ++k)
            if (f[k] > 0) s += (p == 0.0 ? 1.0 : std::pow(f[k], p)) * cell;
        const double norm = p == 0.0 ? s : std::pow(s, 1.0 / p);
        best = std::max(best, norm / (static_cast<double>(__builtin_popcount(u)) * cell));
    }
    return best;
}

}  // namespace reference

double jn_ratio(const CarlesonWeight& a, double p, double q) {
    const double b = cm_norm(a, q);
    if (b == 0.0) throw Error("jn_ratio: zero weight");
    return cm_norm(a, p) / b;
}

namespace {

double integral(const Field2D& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += v.real();
    return s * f.cell_area();
}

}  // namespace

JnCertificate jn_certificate(const CarlesonWeight& a, double p, double epsilon, std::size_t n) {
    if (!(p > 0.0 && p < 2.0)) throw Error("jn_certificate: p must lie in (0, 2)");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw Error("jn_certificate: epsilon must lie in (0, 1/2)");
    JnCertificate c;
    c.p = p;
    c.epsilon = epsilon;
    c.n = n;
    OpenSet u = OpenSet::from_rectangles(a.support(), n);
    c.u0 = u.measure();
    c.total = integral(f_u(a, u));
    const double threshold = std::pow(epsilon, -2.0 / p);
    c.valid = true;
    for (int round = 0; !u.empty(); ++round) {
        if (round > 64) {
            c.valid = false;
            c.failed_round = round;
            c.failure = "no termination";
            break;
        }
        const auto fu = f_u(a, u);
        Field2D e_ind(n);
        for (std::size_t k = 0; k < n * n; ++k) e_ind.values()[k] = fu.values()[k].real() > threshold ? 1.0 : 0.0;
        const auto m = strong_maximal(e_ind);
        OpenSet v(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v.set(i, j, u(i, j) && m(i, j).real() > epsilon);
        JnRound r;
        r.u = u.measure();
        r.e = integral(e_ind);
        r.v = v.measure();
        r.int_fu = integral(fu);
        r.int_fv = integral(f_u(a, v));
        r.drop = r.int_fu - r.int_fv;
        r.bound = 2.0 * threshold * r.u;
        r.halving = r.v <= 0.5 * r.u * (1 + 1e-12);
        r.half_intersection = true;
        for (const auto& [rect, w] : a.entries()) {
            if (!u.contains(rect) || v.contains(rect)) continue;
            const auto b = pixel_box(rect, n);
            long hit = 0;
            for (long i = b.i0; i < b.i1; ++i)
                for (long j = b.j0; j < b.j1; ++j) hit += e_ind(i, j).real() > 0;
            if (2 * hit >= (b.i1 - b.i0) * (b.j1 - b.j0)) r.half_intersection = false;
        }
        c.rounds.push_back(r);
        if (!r.halving || !r.half_intersection) {
            c.valid = false;
            c.failed_round = round;
            c.failure = !r.halving ? "halving failed: |V| > |U|/2" : "half-intersection failed";
            break;
        }
        u = v;
    }
    c.constant = c.u0 > 0 ? c.total / c.u0 : 0.0;
    return c;
}

bool check_certificate(const JnCertificate& c, std::string* why) {
    const auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)}); };
    if (c.rounds.empty()) {
        if (c.u0 != 0 || c.total != 0) return fail("no rounds for a nonempty set");
        return c.valid || fail("empty certificate marked invalid");
    }
    if (!close(c.rounds.front().u, c.u0)) return fail("round 0 does not start at U_0");
    if (!close(c.rounds.front().int_fu, c.total)) return fail("round 0 integral differs from the total");
    double drops = 0.0;
    for (std::size_t i = 0; i < c.rounds.size(); ++i) {
        const auto& r = c.rounds[i];
        const std::string at = " (round " + std::to_string(i) + ")";
        if (r.halving != (r.v <= 0.5 * r.u * (1 + 1e-12))) return fail("halving flag inconsistent" + at);
        if (!close(r.drop, r.int_fu - r.int_fv)) return fail("drop inconsistent" + at);
        if (r.half_intersection && r.drop > r.bound * (1 + 1e-9)) return fail("drop exceeds the round bound" + at);
        if (i + 1 < c.rounds.size()) {
            if (!close(c.rounds[i + 1].u, r.v)) return fail("next U is not V" + at);
            if (!close(c.rounds[i + 1].int_fu, r.int_fv)) return fail("next integral is not F_V" + at);
        }
        drops += r.drop;
    }
    const bool passed = std::all_of(c.rounds.begin(), c.rounds.end(),
                                    [](const JnRound& r) { return r.halving && r.half_intersection; });
    if (c.valid != (passed && c.rounds.back().v == 0.0)) return fail("validity flag inconsistent");
    if (c.valid && !close(drops, c.total)) return fail("telescoped drops differ from the total");
    if (!close(c.constant, c.u0 > 0 ? c.total / c.u0 : 0.0)) return fail("constant inconsistent");
    return true;
}

namespace {

// Level set {M 1_U > 1/2} and the dilate search against it.
struct MuSearch {
    std::size_t n;
    std::vector<char> level;

    explicit MuSearch(const OpenSet& u) : n(u.n()), level(n * n) {
        Field2D ind(n);
        for (std::size_t k = 0; k < n * n; ++k) ind.values()[k] = u.mask()[k] ? 1.0 : 0.0;
        const auto m = strong_maximal(ind);
        for (std::size_t k = 0; k < n * n; ++k) level[k] = m.values()[k].real() > 0.5;
    }

    static double grid(int i) { return std::exp2(i / 8.0); }

    static int max_index(const DyadicRectangle& r) {
        const double s = std::max(r.side1(), r.side2());
        int i = 0;
        while (grid(i + 1) * s <= 1.0 + 1e-12) ++i;
        return i;
    }

    bool inside(const DyadicRectangle& r, double mu) const {
        const double h = 1.0 / static_cast<double>(n);
        const double c1 = 0.5 * (r.x0() + r.x1()), c2 = 0.5 * (r.y0() + r.y1());
        const double w1 = 0.5 * mu * r.side1(), w2 = 0.5 * mu * r.side2();
        const auto wrap = [](double d) { return std::abs(d - std::round(d)); };
        for (std::size_t i = 0; i < n; ++i) {
            if (wrap((static_cast<double>(i) + 0.5) * h - c1) >= w1) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (wrap((static_cast<double>(j) + 0.5) * h - c2) < w2 && !level[i * n + j]) return false;
        }
        return true;
    }

    MuResult search(const DyadicRectangle& r) const {
        const int top = max_index(r);
        if (inside(r, grid(top))) return {grid(top), true};
        int lo = 0, hi = top;  // inside at lo, not at hi
        if (!inside(r, grid(0))) return {0.0, false};
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (inside(r, grid(mid)) ? lo : hi) = mid;
        }
        return {grid(lo), false};
    }
};

}  // namespace

MuResult mu_r(const OpenSet& u, const DyadicRectangle& r) {
    if (!u.contains(r)) throw Error("mu_r: R is not contained in U");
    return MuSearch(u).search(r);
}

namespace reference {

MuResult mu_r(const OpenSet& u, const DyadicRectangle& r) {
    if (!u.contains(r)) throw Error("mu_r: R is not contained in U");
    const MuSearch s(u);
    const int top = MuSearch::max_index(r);
    int last = -1;
    for (int i = 0; i <= top; ++i) {
        if (!s.inside(r, MuSearch::grid(i))) break;
        last = i;
    }
    if (last < 0) return {0.0, false};
    return {MuSearch::grid(last), last == top};
}

}  // namespace reference

std::vector<DyadicRectangle> maximal_rectangles(const OpenSet& u) {
    const std::size_t n = u.n();
    int levels = 0;
    while ((std::size_t{1} << levels) < n) ++levels;
    std::vector<long> pre((n + 1) * (n + 1), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            pre[(i + 1) * (n + 1) + j + 1] =
                u(i, j) + pre[i * (n + 1) + j + 1] + pre[(i + 1) * (n + 1) + j] - pre[i * (n + 1) + j];
    const auto full = [&](long i0, long w1, long j0, long w2) {
        const long s = pre[(i0 + w1) * (n + 1) + j0 + w2] - pre[i0 * (n + 1) + j0 + w2] -
                       pre[(i0 + w1) * (n + 1) + j0] + pre[i0 * (n + 1) + j0];
        return s == w1 * w2;
    };
    std::vector<DyadicRectangle> out;
    const long nn = static_cast<long>(n);
    for (int s1 = 0; s1 <= levels; ++s1)
        for (int s2 = 0; s2 <= levels; ++s2) {
            const long w1 = 1L << s1, w2 = 1L << s2;
            for (long m1 = 0; m1 < nn / w1; ++m1)
                for (long m2 = 0; m2 < nn / w2; ++m2) {
                    if (!full(m1 * w1, w1, m2 * w2, w2)) continue;
                    const bool p1 = 2 * w1 <= nn && full((m1 / 2) * 2 * w1, 2 * w1, m2 * w2, w2);
                    const bool p2 = 2 * w2 <= nn && full(m1 * w1, w1, (m2 / 2) * 2 * w2, 2 * w2);
                    if (!p1 && !p2) out.push_back({s1 - levels, s2 - levels, m1, m2, 0});
                }
        }
    return out;
}

JourneReport journe_verify(const CarlesonWeight& a, double eps, std::size_t n) {
    if (!(eps > 0)) throw Error("journe_verify: eps must be positive");
    JourneReport rep;
    if (a.empty()) return rep;
    // Test open sets: the full support union, each maximal support rectangle, and unions of pairs.
    const auto support = a.support();
    std::vector<DyadicRectangle> tops;
    for (const auto& r : support) {
        bool inside = false;
        for (const auto& s : support) inside = inside || (r != s && contained_in(r, s));
        if (!inside) tops.push_back(r);
    }
    std::vector<OpenSet> sets{OpenSet::from_rectangles(support, n)};
    const auto push = [&](OpenSet s) {
        if (sets.size() < 64 && std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(std::move(s));
    };
    for (const auto& r : tops) push(OpenSet::from_rectangles({r}, n));
    for (std::size_t i = 0; i < tops.size(); ++i)
        for (std::size_t j = i + 1; j < tops.size(); ++j) push(OpenSet::from_rectangles({tops[i], tops[j]}, n));
    rep.open_sets = sets.size();

    for (const auto& u : sets) {
        const MuSearch search(u);
        const auto maximal = maximal_rectangles(u);
        struct Acc {
            double sum = 0;
            std::vector<DyadicRectangle> rects;
        };
        std::map<std::tuple<int, int, int>, Acc> classes;
        for (const auto& r : maximal) {
            const auto mu = search.search(r);
            double s = 0.0;
            for (const auto& [q, v] : a.entries())
                if (contained_in(q, r)) s += v;
            const double allowed = std::pow(std::max(mu.mu, 1.0), -eps) * r.area();
            rep.worst_slack = std::max(rep.worst_slack, s / allowed);
            if (s > allowed * (1 + 1e-12)) rep.hypothesis = false;
            ++rep.maximal_checked;
            const int k = std::max(0, static_cast<int>(std::floor(std::log2(std::max(mu.mu, 1.0)))));
            const int mod = 2 * (k + 1);
            const int r1 = ((r.n1 % mod) + mod) % mod, r2 = ((r.n2 % mod) + mod) % mod;
            auto& acc = classes[{k, r1, r2}];
            acc.sum += r.area();
            acc.rects.push_back(r);
        }
        std::size_t covered = 0;
        for (const auto& [key, acc] : classes) {
            JourneClass c;
            std::tie(c.k, c.r1, c.r2) = key;
            c.sum_area = acc.sum;
            c.union_area = OpenSet::from_rectangles(acc.rects, n).measure();
            c.count = acc.rects.size();
            covered += c.count;
            if (!c.nearly_disjoint()) rep.near_disjoint = false;
            rep.classes.push_back(c);
        }
        if (covered != maximal.size()) rep.partition_exact = false;
    }
    rep.cm1 = a.size() <= 24 && detail::count_maximal(support) <= 16 ? cm_norm(a, 1.0) : cm_norm(a, 1.0, CmMode::Heuristic);
    return rep;
}

}  // namespace lacuna
