#pragma once

// Compressed cell grid spanned by rectangle boundaries. Shadows and rectangle
// sums become bit masks and per-cell totals over its cells.

#include "lacuna/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace lacuna::detail {

using Mask = std::vector<std::uint64_t>;

struct CellGrid {
    std::vector<double> xs, ys;
    std::vector<double> area;                       // per cell
    std::vector<Mask> masks;                        // per rectangle
    std::vector<std::vector<std::uint32_t>> cells;  // per rectangle
    std::vector<double> weight;                     // per rectangle
    std::size_t words = 0;

    CellGrid(const std::vector<DyadicRectangle>& rects, std::vector<double> weights) : weight(std::move(weights)) {
        for (const auto& r : rects) {
            xs.push_back(r.x0());
            xs.push_back(r.x1());
            ys.push_back(r.y0());
            ys.push_back(r.y1());
        }
        const auto uniq = [](std::vector<double>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        uniq(xs);
        uniq(ys);
        const std::size_t nx = xs.empty() ? 0 : xs.size() - 1, ny = ys.empty() ? 0 : ys.size() - 1;
        area.resize(nx * ny);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j) area[i * ny + j] = (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
        words = (nx * ny + 63) / 64;
        const auto find = [](const std::vector<double>& v, double x) {
            return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
        };
        for (const auto& r : rects) {
            const std::size_t i0 = find(xs, r.x0()), i1 = find(xs, r.x1());
            const std::size_t j0 = find(ys, r.y0()), j1 = find(ys, r.y1());
            Mask m(words, 0);
            std::vector<std::uint32_t> list;
            for (std::size_t i = i0; i < i1; ++i)
                for (std::size_t j = j0; j < j1; ++j) {
                    const std::size_t c = i * ny + j;
                    m[c / 64] |= std::uint64_t{1} << (c % 64);
                    list.push_back(static_cast<std::uint32_t>(c));
                }
            masks.push_back(std::move(m));
            cells.push_back(std::move(list));
        }
    }

    std::size_t size() const { return cells.size(); }

    bool within(std::size_t r, const Mask& u) const {
        for (std::size_t w = 0; w < words; ++w)
            if (masks[r][w] & ~u[w]) return false;
        return true;
    }

    double measure(const Mask& u) const {
        double a = 0.0;
        for (std::size_t c = 0; c < area.size(); ++c)
            if ((u[c / 64] >> (c % 64)) & 1u) a += area[c];
        return a;
    }

    // Per-cell weight totals and coverage of the members; false when no member.
    bool accumulate(const std::vector<char>& member, std::vector<double>& sum, std::vector<char>& cov) const {
        sum.assign(area.size(), 0.0);
        cov.assign(area.size(), 0);
        bool any = false;
        for (std::size_t r = 0; r < member.size(); ++r) {
            if (!member[r]) continue;
            any = true;
            for (auto c : cells[r]) {
                sum[c] += weight[r];
                cov[c] = 1;
            }
        }
        return any;
    }

    // |shadow|^{-1} int (sum w_R 1_R)^{1/2}.
    double energy(const std::vector<char>& member, std::vector<double>& sum, std::vector<char>& cov) const {
        if (!accumulate(member, sum, cov)) return 0.0;
        double num = 0.0, den = 0.0;
        for (std::size_t c = 0; c < area.size(); ++c)
            if (cov[c]) {
                num += std::sqrt(sum[c]) * area[c];
                den += area[c];
            }
        return num / den;
    }
};

// Calls visit(union mask, members of F(A)) for every nonempty antichain A under
// dyadic inclusion, where F(A) collects every rectangle inside the union of A.
inline void for_each_saturated(const CellGrid& grid, const std::vector<DyadicRectangle>& rects,
                               const std::function<void(const Mask&, const std::vector<char>&)>& visit) {
    const std::size_t n = rects.size();
    std::vector<std::vector<char>> comparable(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            comparable[a][b] = a != b && (contained_in(rects[a], rects[b]) || contained_in(rects[b], rects[a]));
    std::vector<std::size_t> chosen;
    std::vector<char> member(n);
    std::function<void(std::size_t, const Mask&)> run = [&](std::size_t next, const Mask& u) {
        if (!chosen.empty()) {
            for (std::size_t r = 0; r < n; ++r) member[r] = grid.within(r, u);
            visit(u, member);
        }
        for (std::size_t r = next; r < n; ++r) {
            bool ok = true;
            for (auto c : chosen)
                if (comparable[r][c]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            Mask v = u;
            for (std::size_t w = 0; w < grid.words; ++w) v[w] |= grid.masks[r][w];
            chosen.push_back(r);
            run(r + 1, v);
            chosen.pop_back();
        }
    };
    run(0, Mask(grid.words, 0));
}

inline std::size_t count_maximal(const std::vector<DyadicRectangle>& rects) {
    std::size_t count = 0;
    for (std::size_t a = 0; a < rects.size(); ++a) {
        bool inside = false;
        for (std::size_t b = 0; b < rects.size() && !inside; ++b)
            inside = a != b && rects[a] != rects[b] && contained_in(rects[a], rects[b]);
        if (!inside) ++count;
    }
    return count;
}

}  // namespace lacuna::detail
