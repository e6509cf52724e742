// Test-only reference computations. Nothing here calls into the library's
// MI, discretization, or eigen code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

/// Double sum over the full (x alphabet) x (y alphabet) grid using
/// probabilities directly; empty cells contribute nothing.
inline double mutual_information(const std::vector<int>& xs, const std::vector<int>& ys) {
    const double n = static_cast<double>(xs.size());
    std::set<int> ax(xs.begin(), xs.end()), ay(ys.begin(), ys.end());
    double mi = 0.0;
    for (int a : ax) {
        for (int b : ay) {
            double joint = 0.0, px = 0.0, py = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (xs[i] == a && ys[i] == b) joint += 1.0;
                if (xs[i] == a) px += 1.0;
                if (ys[i] == b) py += 1.0;
            }
            joint /= n;
            px /= n;
            py /= n;
            if (joint > 0.0) mi += joint * std::log(joint / (px * py));
        }
    }
    return mi;
}

/// MI from an explicit count table.
inline double mutual_information(const std::vector<std::vector<double>>& counts) {
    double n = 0.0;
    for (const auto& row : counts)
        for (double c : row) n += c;
    double mi = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        for (std::size_t j = 0; j < counts[i].size(); ++j) {
            if (counts[i][j] == 0.0) continue;
            double r = 0.0, c = 0.0;
            for (double v : counts[i]) r += v;
            for (const auto& row : counts) c += row[j];
            const double p = counts[i][j] / n;
            mi += p * std::log(p / ((r / n) * (c / n)));
        }
    }
    return mi;
}

/// Linear scan over edges: index = #{k : low + k*(high-low)/nbins <= v}.
inline std::vector<int> digitize(const std::vector<double>& v, int nbins) {
    const double low = *std::min_element(v.begin(), v.end());
    const double high = *std::max_element(v.begin(), v.end());
    std::vector<int> out;
    for (double x : v) {
        int idx = 0;
        for (int k = 0; k < nbins; ++k) {
            if (static_cast<double>(k) * ((high - low) / nbins) + low <= x) ++idx;
        }
        out.push_back(idx);
    }
    return out;
}

inline double determinant(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
        if (m[pivot][c] == 0.0) return 0.0;
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Roots of det(A - t I) for a symmetric matrix with distinct eigenvalues:
/// scan a Gershgorin interval for sign changes, then bisect. Descending order.
inline std::vector<double> eigenvalues_by_char_poly(const std::vector<std::vector<double>>& a, int steps = 200000) {
    const std::size_t n = a.size();
    double bound = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (double v : a[r]) s += std::abs(v);
        bound = std::max(bound, s);
    }
    auto p = [&](double t) {
        auto m = a;
        for (std::size_t i = 0; i < n; ++i) m[i][i] -= t;
        return determinant(m);
    };
    std::vector<double> roots;
    const double lo = -bound - 1e-9, hi = bound + 1e-9;
    double prev_t = lo, prev_v = p(lo);
    for (int s = 1; s <= steps; ++s) {
        const double t = lo + (hi - lo) * s / steps;
        const double v = p(t);
        if (v == 0.0) {
            roots.push_back(t);
        } else if ((v > 0.0) != (prev_v > 0.0) && prev_v != 0.0) {
            double l = prev_t, h = t, fl = prev_v;
            for (int it = 0; it < 200 && h - l > 1e-15 * std::max(1.0, std::abs(h)); ++it) {
                const double mid = 0.5 * (l + h);
                const double fm = p(mid);
                if ((fm > 0.0) == (fl > 0.0)) {
                    l = mid;
                    fl = fm;
                } else {
                    h = mid;
                }
            }
            roots.push_back(0.5 * (l + h));
        }
        prev_t = t;
        prev_v = v;
    }
    std::sort(roots.rbegin(), roots.rend());
    return roots;
}

}  // namespace oracle
