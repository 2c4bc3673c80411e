#include "lacuna/combinatorics.hpp"

#include "lacuna/operators.hpp"

#include "cells.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>

namespace lacuna {

RectCollection::RectCollection(const CoefficientMap& coeffs) {
    for (const auto& [r, c] : coeffs) add(r, c);
}

void RectCollection::add(const DyadicRectangle& r, cplx coeff, int sign) {
    if (sign != 1 && sign != -1) throw Error("RectCollection: sign must be +1 or -1");
    if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag())) throw Error("RectCollection: non-finite coefficient");
    const auto it = std::lower_bound(rects_.begin(), rects_.end(), r);
    const auto pos = static_cast<std::size_t>(it - rects_.begin());
    if (it != rects_.end() && *it == r) {
        coeffs_[pos] = coeff;
        signs_[pos] = sign;
        return;
    }
    rects_.insert(it, r);
    coeffs_.insert(coeffs_.begin() + static_cast<long>(pos), coeff);
    signs_.insert(signs_.begin() + static_cast<long>(pos), sign);
}

bool RectCollection::contains(const DyadicRectangle& r) const {
    return std::binary_search(rects_.begin(), rects_.end(), r);
}

RectCollection RectCollection::subset(const std::vector<std::size_t>& idx) const {
    RectCollection out;
    for (auto i : idx) out.add(rects_[i], coeffs_[i], signs_[i]);
    return out;
}

RectCollection RectCollection::minus(const RectCollection& other) const {
    RectCollection out;
    for (std::size_t i = 0; i < size(); ++i)
        if (!other.contains(rects_[i])) out.add(rects_[i], coeffs_[i], signs_[i]);
    return out;
}

namespace {

using detail::CellGrid;
using detail::Mask;

CellGrid energy_grid(const RectCollection& s) {
    std::vector<double> w;
    for (std::size_t k = 0; k < s.size(); ++k) w.push_back(std::norm(s.coeff(k)) / s.rect(k).area());
    return CellGrid(s.rects(), std::move(w));
}

std::size_t count_maximal(const RectCollection& s) { return detail::count_maximal(s.rects()); }

double heuristic_energy(const RectCollection& s) {
    const CellGrid grid = energy_grid(s);
    const std::size_t n = s.size();
    std::vector<double> sum(grid.area.size());
    std::vector<char> cov(grid.area.size());
    std::vector<char> member(n);
    const auto score = [&](const std::vector<char>& pick) {
        Mask u(grid.words, 0);
        for (std::size_t r = 0; r < n; ++r)
            if (pick[r])
                for (std::size_t w = 0; w < grid.words; ++w) u[w] |= grid.masks[r][w];
        for (std::size_t r = 0; r < n; ++r) member[r] = grid.within(r, u);
        return grid.energy(member, sum, cov);
    };
    double best = 0.0;
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<char> pick(n, 0);
        pick[start] = 1;
        double cur = score(pick);
        for (int iter = 0; iter < 4 * static_cast<int>(n); ++iter) {
            double gain = cur;
            std::size_t flip = n;
            for (std::size_t r = 0; r < n; ++r) {
                pick[r] ^= 1;
                if (std::count(pick.begin(), pick.end(), 1) > 0) {
                    const double e = score(pick);
                    if (e > gain * (1 + 1e-14)) {
                        gain = e;
                        flip = r;
                    }
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

double shadow_measure(const RectCollection& s) {
    if (s.empty()) return 0.0;
    const CellGrid grid = energy_grid(s);
    std::vector<char> cov(grid.area.size(), 0);
    for (const auto& list : grid.cells)
        for (auto c : list) cov[c] = 1;
    double a = 0.0;
    for (std::size_t c = 0; c < cov.size(); ++c)
        if (cov[c]) a += grid.area[c];
    return a;
}

double shadow_measure_raster(const RectCollection& s, std::size_t n) {
    std::size_t count = 0;
    const double h = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double x = (i + 0.5) * h, y = (j + 0.5) * h;
            for (const auto& r : s.rects())
                if (x >= r.x0() && x < r.x1() && y >= r.y0() && y < r.y1()) {
                    ++count;
                    break;
                }
        }
    return static_cast<double>(count) * h * h;
}

RectCollection slope_filter(const RectCollection& s, double threshold) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.rect(i).slope() >= threshold) idx.push_back(i);
    return s.subset(idx);
}

RectCollection slope_level_filter(const RectCollection& s, int j) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.rect(i).n1 - s.rect(i).n2 >= j) idx.push_back(i);
    return s.subset(idx);
}

double energy_of(const RectCollection& s) {
    if (s.empty()) return 0.0;
    const CellGrid grid = energy_grid(s);
    std::vector<double> sum(grid.area.size());
    std::vector<char> cov(grid.area.size());
    return grid.energy(std::vector<char>(s.size(), 1), sum, cov);
}

double energy(const RectCollection& s, EnergyMode mode) {
    if (s.empty()) return 0.0;
    if (mode == EnergyMode::Heuristic) return heuristic_energy(s);
    if (s.size() > kExactEnergyLimit || count_maximal(s) > 16)
        throw Error("energy: exact mode needs at most 24 rectangles and 16 maximal ones");
    const CellGrid grid = energy_grid(s);
    std::vector<double> sum;
    std::vector<char> cov;
    double best = 0.0;
    detail::for_each_saturated(grid, s.rects(), [&](const Mask&, const std::vector<char>& member) {
        best = std::max(best, grid.energy(member, sum, cov));
    });
    return best;
}

double energy_auto(const RectCollection& s) {
    if (s.size() <= kExactEnergyLimit && count_maximal(s) <= 16) return energy(s, EnergyMode::Exact);
    return energy(s, EnergyMode::Heuristic);
}

namespace reference {

double energy(const RectCollection& s) {
    if (s.size() > 20) throw Error("reference::energy: collection too large");
    if (s.empty()) return 0.0;
    const CellGrid grid = energy_grid(s);
    std::vector<double> sum(grid.area.size());
    std::vector<char> cov(grid.area.size());
    std::vector<char> member(s.size());
    double best = 0.0;
    for (std::uint32_t bits = 1; bits < (1u << s.size()); ++bits) {
        for (std::size_t r = 0; r < s.size(); ++r) member[r] = (bits >> r) & 1u;
        best = std::max(best, grid.energy(member, sum, cov));
    }
    return best;
}

}  // namespace reference

bool has_charge(const RectCollection& s, double delta) {
    if (!(delta > 0)) throw Error("has_charge: delta must be positive");
    if (s.empty()) return false;
    double mass = 0.0;
    for (const auto& c : s.coeffs()) mass += std::norm(c);
    if (mass < 0.25 * delta * delta * shadow_measure(s) * (1 - 1e-12)) return false;
    // The whole collection is one candidate, so it bounds the energy from below.
    if (energy_of(s) > delta * (1 + 1e-12)) return false;
    return energy_auto(s) <= delta * (1 + 1e-12);
}

ChargeDecomposition charge_decompose(const RectCollection& s, int w_max) {
    ChargeDecomposition d;
    if (s.empty()) return d;
    std::vector<double> ratio(s.size());
    double top = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ratio[i] = std::abs(s.coeff(i)) / std::sqrt(s.rect(i).area());
        top = std::max(top, ratio[i]);
    }
    std::set<std::size_t> remaining;
    for (std::size_t i = 0; i < s.size(); ++i) remaining.insert(i);
    const int w_min = top > 0 ? static_cast<int>(std::floor(-std::log2(top))) : w_max + 1;
    for (int w = std::min(w_min, w_max + 1); w <= w_max; ++w) {
        const double delta = std::ldexp(1.0, -w);
        ChargeFamilyLevel level{w, {}};
        for (;;) {
            auto seed = remaining.end();
            for (auto it = remaining.begin(); it != remaining.end(); ++it)
                if (ratio[*it] >= 0.5 * delta * (1 - 1e-12) && ratio[*it] <= delta * (1 + 1e-12)) {
                    seed = it;
                    break;
                }
            if (seed == remaining.end()) break;
            std::vector<std::size_t> family{*seed};
            remaining.erase(seed);
            for (auto it = remaining.begin(); it != remaining.end() && family.size() < kMaxFamilySize;) {
                auto trial = family;
                trial.push_back(*it);
                if (has_charge(s.subset(trial), delta)) {
                    family = std::move(trial);
                    it = remaining.erase(it);
                } else {
                    ++it;
                }
            }
            level.families.push_back(s.subset(family));
        }
        if (!level.families.empty()) d.levels.push_back(std::move(level));
    }
    d.remainder = s.subset(std::vector<std::size_t>(remaining.begin(), remaining.end()));
    d.remainder_energy = energy_auto(d.remainder);
    return d;
}

DecompositionAudit audit_decomposition(const ChargeDecomposition& d, const RectCollection& input) {
    DecompositionAudit a;
    a.disjoint = true;
    a.charged = true;
    std::map<DyadicRectangle, int> seen;
    for (const auto& level : d.levels)
        for (const auto& fam : level.families) {
            if (!has_charge(fam, std::ldexp(1.0, -level.w))) a.charged = false;
            for (const auto& r : fam.rects()) ++seen[r];
        }
    for (const auto& r : d.remainder.rects()) ++seen[r];
    for (const auto& [r, k] : seen)
        if (k != 1) a.disjoint = false;
    bool recovers = seen.size() == input.size();
    for (const auto& r : input.rects()) recovers = recovers && seen.count(r) == 1;
    a.recovers_input = recovers;
    return a;
}

std::vector<int> slope_levels(const RectCollection& s) {
    std::set<int> lv;
    for (const auto& r : s.rects()) lv.insert(r.n1 - r.n2);
    return {lv.begin(), lv.end()};
}

namespace {

// size(S(l) - S(c)) for levels l <= c.
double band_size(const RectCollection& s, int l, int c) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int lv = s.rect(i).n1 - s.rect(i).n2;
        if (lv >= l && lv < c) idx.push_back(i);
    }
    return energy_auto(s.subset(idx));
}

bool level_ok(const RectCollection& s, const std::vector<int>& levels, const std::set<int>& cuts, int v) {
    const double bound = std::ldexp(1.0, -v) * (1 + 1e-12);
    for (int l : levels) {
        const auto c = cuts.lower_bound(l);
        if (c == cuts.end()) return false;
        if (band_size(s, l, *c) > bound) return false;
    }
    return true;
}

}  // namespace

ScaleChain scale_chain(const RectCollection& s, int v_max) {
    ScaleChain chain;
    const auto levels = slope_levels(s);
    chain.j0 = levels.empty() ? 0 : levels.back() + 1;
    std::set<int> cuts{chain.j0};
    chain.levels.push_back({chain.j0});
    for (int v = 1; v <= v_max; ++v) {
        const double bound = std::ldexp(1.0, -v) * (1 + 1e-12);
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            const int c = *cuts.lower_bound(*it);
            if (band_size(s, *it, c) > bound) cuts.insert(*it);
        }
        chain.levels.emplace_back(cuts.begin(), cuts.end());
    }
    return chain;
}

bool verify_chain(const RectCollection& s, const ScaleChain& chain) {
    if (chain.levels.empty() || chain.levels[0] != std::vector<int>{chain.j0}) return false;
    if (!slope_level_filter(s, chain.j0).empty()) return false;
    const auto levels = slope_levels(s);
    for (std::size_t v = 1; v < chain.levels.size(); ++v) {
        const std::set<int> prev(chain.levels[v - 1].begin(), chain.levels[v - 1].end());
        const std::set<int> cur(chain.levels[v].begin(), chain.levels[v].end());
        if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) return false;
        if (!level_ok(s, levels, cur, static_cast<int>(v))) return false;
    }
    return true;
}

std::size_t brute_force_min_cuts(const RectCollection& s, const std::vector<int>& required, int v) {
    const auto levels = slope_levels(s);
    if (levels.size() > 16) throw Error("brute_force_min_cuts: too many levels");
    std::vector<int> free;
    for (int l : levels)
        if (std::find(required.begin(), required.end(), l) == required.end()) free.push_back(l);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
        const auto extra = static_cast<std::size_t>(__builtin_popcount(bits));
        if (required.size() + extra >= best) continue;
        std::set<int> cuts(required.begin(), required.end());
        for (std::size_t b = 0; b < free.size(); ++b)
            if ((bits >> b) & 1u) cuts.insert(free[b]);
        if (level_ok(s, levels, cuts, v)) best = cuts.size();
    }
    return best;
}

Field2D shadow_indicator(const RectCollection& s, std::size_t n, double period) {
    Field2D out(n, period);
    const double h = period / static_cast<double>(n);
    for (const auto& r : s.rects())
        for (std::size_t i = 0; i < n; ++i) {
            const double x = h * static_cast<double>(i);
            if (x < r.x0() || x >= r.x1()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double y = h * static_cast<double>(j);
                if (y >= r.y0() && y < r.y1()) out(i, j) = 1.0;
            }
        }
    return out;
}

Field2D model_sum(const Field2D& f, const RectCollection& s, const SigmaParams& sigma, ModelMode mode) {
    const std::size_t n = f.n();
    const double L = f.period();
    const auto spectrum = dft(f);
    // Terms grouped by slope, largest first.
    std::map<double, SpectralField2D, std::greater<>> groups;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& r = s.rect(i);
        ShiftedGrid g = ShiftedGrid::base(n, L);
        g.id = r.grid;
        const auto a = packet_spectrum(g, r, 1);
        const cplx c = inner_product(spectrum, a);
        const RealRect q = sigma_map(r, sigma.lambda, sigma.y, sigma.delta);
        for (double side : {q.width(), q.height()})
            if (side * static_cast<double>(n) / L < 4.0 - 1e-12 || side > L / 2 + 1e-12)
                throw Error("model_sum: sigma(R) outside the resolvable window");
        const auto b1 = axis_spectrum(2, q.width(), q.cx(), n, L);
        const auto b2 = axis_spectrum(2, q.height(), q.cy(), n, L);
        auto it = groups.find(r.slope());
        if (it == groups.end()) it = groups.emplace(r.slope(), SpectralField2D(n, L)).first;
        const cplx w = static_cast<double>(s.sign(i)) * c;
        for (std::size_t k1 = 0; k1 < n; ++k1)
            for (std::size_t k2 = 0; k2 < n; ++k2) it->second.raw(k1, k2) += w * b1[k1] * b2[k2];
    }
    SpectralField2D acc(n, L);
    Field2D best(n, L);
    for (const auto& [slope, part] : groups) {
        for (std::size_t k = 0; k < n * n; ++k) acc.values()[k] += part.values()[k];
        if (mode == ModelMode::Maximal) {
            const auto field = abs_field(idft(acc));
            for (std::size_t k = 0; k < n * n; ++k)
                if (field.values()[k].real() > best.values()[k].real()) best.values()[k] = field.values()[k];
        }
    }
    return mode == ModelMode::Fixed ? idft(acc) : best;
}

double containment_margin(const Field2D& out, const RectCollection& s, const SigmaParams& sigma) {
    const auto m = strong_maximal(shadow_indicator(s, out.n(), out.period()));
    double peak = 0.0;
    for (const auto& v : out.values()) peak = std::max(peak, std::abs(v));
    const double scale = std::pow(1.0 + std::abs(sigma.y[0]) + std::abs(sigma.y[1]), 2);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < out.values().size(); ++k)
        if (std::abs(out.values()[k]) > 1e-12 * peak) margin = std::min(margin, m.values()[k].real() * scale);
    return margin;
}

}  // namespace lacuna
