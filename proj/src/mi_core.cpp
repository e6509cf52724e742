#include "miembed/mi_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace miembed {

namespace {

// Contribution of one occupied cell: p(x,y) * ln(p(x,y) / (p(x) p(y))).
// The ratio is formed from integer counts so product-form tables give exactly 1.
inline double cell_term(std::int64_t joint, std::int64_t xm, std::int64_t ym, std::int64_t total) {
    const double n = static_cast<double>(total);
    const double c = static_cast<double>(joint);
    const double ratio = (c * n) / (static_cast<double>(xm) * static_cast<double>(ym));
    return (c / n) * std::log(ratio);
}

// Dense table for symbols 1..nx, 1..ny. Cells are visited in the same (x, y)
// order as the sparse histogram so both paths sum identically.
double dense_raw_mi(std::span<const int> xb, std::span<const int> yb, int nx, int ny) {
    std::vector<std::int64_t> joint(static_cast<std::size_t>(nx) * ny, 0);
    std::vector<std::int64_t> xm(nx, 0), ym(ny, 0);
    for (std::size_t i = 0; i < xb.size(); ++i) {
        const int a = xb[i] - 1;
        const int b = yb[i] - 1;
        ++joint[static_cast<std::size_t>(a) * ny + b];
        ++xm[a];
        ++ym[b];
    }
    const auto total = static_cast<std::int64_t>(xb.size());
    double mi = 0.0;
    for (int a = 0; a < nx; ++a) {
        for (int b = 0; b < ny; ++b) {
            const auto c = joint[static_cast<std::size_t>(a) * ny + b];
            if (c > 0) mi += cell_term(c, xm[a], ym[b], total);
        }
    }
    return mi;
}

void require_bin_ceiling(int bin_ceiling) {
    if (bin_ceiling < 4) throw std::invalid_argument("no valid bin pairs");
}

}  // namespace

BinningScheme::BinningScheme(int nx, int ny) : nx_(nx), ny_(ny) {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("binning scheme needs at least 2 bins per axis, got (" +
                                    std::to_string(nx) + ", " + std::to_string(ny) + ")");
}

std::vector<int> discretize(std::span<const double> values, int nbins) {
    if (nbins < 2) throw std::invalid_argument("nbins must be >= 2");
    if (values.empty()) throw std::invalid_argument("empty sequence");
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
        throw std::invalid_argument("non-finite input");

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double low = *lo_it;
    const double high = *hi_it;
    const double width = (high - low) / nbins;
    std::vector<double> edges(nbins);
    for (int k = 0; k < nbins; ++k) edges[k] = static_cast<double>(k) * width + low;

    std::vector<int> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), values[i]) - edges.begin());
    }
    return out;
}

std::int64_t JointHistogram::count(int x, int y) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), std::pair{x, y},
                               [](const JointCell& c, const std::pair<int, int>& key) {
                                   return std::pair{c.x, c.y} < key;
                               });
    return (it != cells.end() && it->x == x && it->y == y) ? it->count : 0;
}

JointHistogram joint_histogram(std::span<const int> x_binned, std::span<const int> y_binned) {
    if (x_binned.size() != y_binned.size()) throw std::invalid_argument("length mismatch");
    if (x_binned.empty()) throw std::invalid_argument("empty sequence");

    std::map<std::pair<int, int>, std::int64_t> joint;
    JointHistogram h;
    for (std::size_t i = 0; i < x_binned.size(); ++i) {
        ++joint[{x_binned[i], y_binned[i]}];
        ++h.x_marginals[x_binned[i]];
        ++h.y_marginals[y_binned[i]];
    }
    h.cells.reserve(joint.size());
    for (const auto& [key, c] : joint) h.cells.push_back({key.first, key.second, c});
    h.total = static_cast<std::int64_t>(x_binned.size());
    return h;
}

double normalize_mi(double raw) { return 1.0 - std::exp(-2.0 * raw); }

MIScore MIScore::from_raw(double raw) {
    if (raw < 0.0) {
        if (raw < -1e-12)
            throw std::logic_error("negative mutual information " + std::to_string(raw) +
                                   " exceeds rounding tolerance");
        raw = 0.0;
    }
    return {raw, normalize_mi(raw)};
}

MIScore mutual_information(const JointHistogram& h) {
    double mi = 0.0;
    for (const auto& cell : h.cells) {
        mi += cell_term(cell.count, h.x_marginals.at(cell.x), h.y_marginals.at(cell.y), h.total);
    }
    return MIScore::from_raw(mi);
}

MIScore binned_mi(DatasetView d, BinningScheme scheme) {
    const auto xb = discretize(d.xs, scheme.nx());
    const auto yb = discretize(d.ys, scheme.ny());
    return MIScore::from_raw(dense_raw_mi(xb, yb, scheme.nx(), scheme.ny()));
}

std::vector<BinningScheme> bin_schemes(int bin_ceiling) {
    require_bin_ceiling(bin_ceiling);
    std::vector<BinningScheme> out;
    out.reserve(sweep_length(bin_ceiling));
    for (int nx = 2; nx < bin_ceiling; ++nx) {
        for (int ny = 2; ny < bin_ceiling; ++ny) {
            if (nx != ny) out.emplace_back(nx, ny);
        }
    }
    return out;
}

std::vector<double> bin_combination_scores(DatasetView d, int bin_ceiling) {
    const auto schemes = bin_schemes(bin_ceiling);

    // binned[n] holds the discretization with n bins, n in [2, bin_ceiling).
    std::vector<std::vector<int>> x_binned(bin_ceiling), y_binned(bin_ceiling);
    for (int n = 2; n < bin_ceiling; ++n) {
        x_binned[n] = discretize(d.xs, n);
        y_binned[n] = discretize(d.ys, n);
    }

    std::vector<double> scores(schemes.size());
    const auto count = static_cast<std::ptrdiff_t>(schemes.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto& s = schemes[i];
        const double raw = dense_raw_mi(x_binned[s.nx()], y_binned[s.ny()], s.nx(), s.ny());
        scores[i] = MIScore::from_raw(raw).normalized;
    }
    return scores;
}

std::vector<double> bin_combination_scores_serial(DatasetView d, int bin_ceiling) {
    std::vector<double> scores;
    for (const auto& s : bin_schemes(bin_ceiling)) {
        const auto xb = discretize(d.xs, s.nx());
        const auto yb = discretize(d.ys, s.ny());
        scores.push_back(mutual_information(joint_histogram(xb, yb)).normalized);
    }
    return scores;
}

double mic_max(std::span<const double> scores) {
    if (scores.empty()) throw std::invalid_argument("empty sequence");
    return *std::max_element(scores.begin(), scores.end());
}

}  // namespace miembed
