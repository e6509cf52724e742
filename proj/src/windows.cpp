#include "miembed/windows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace miembed {

WindowConfig::WindowConfig(std::size_t window_size, std::size_t stride, BinningScheme scheme)
    : window_size_(window_size), stride_(stride), scheme_(scheme) {
    if (window_size < 4) throw std::invalid_argument("window_size must be >= 4");
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
}

std::size_t window_count(std::size_t n, const WindowConfig& cfg) {
    if (cfg.window_size() > n) return 0;
    return (n - cfg.window_size()) / cfg.stride() + 1;
}

std::vector<IndexRange> window_ranges(std::size_t n, const WindowConfig& cfg) {
    if (cfg.window_size() > n) throw std::invalid_argument("window larger than dataset");
    std::vector<IndexRange> out;
    out.reserve(window_count(n, cfg));
    for (std::size_t begin = 0; begin + cfg.window_size() <= n; begin += cfg.stride()) {
        out.push_back({begin, begin + cfg.window_size()});
    }
    return out;
}

SlidingWindows::SlidingWindows(const Dataset& d, const WindowConfig& cfg)
    : sorted_(d.sorted()), ranges_(window_ranges(d.size(), cfg)) {}

DatasetView SlidingWindows::window(std::size_t i) const {
    const auto& r = ranges_.at(i);
    const std::size_t len = r.end - r.begin;
    return {std::span<const double>(sorted_.xs()).subspan(r.begin, len),
            std::span<const double>(sorted_.ys()).subspan(r.begin, len)};
}

SlidingWindows sliding_windows(const Dataset& d, const WindowConfig& cfg) { return {d, cfg}; }

std::vector<double> forward_gradients(std::span<const double> values, std::size_t stride) {
    std::vector<double> out;
    if (values.size() < 2) return out;
    out.reserve(values.size() - 1);
    const double dt = static_cast<double>(stride);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) out.push_back((values[i + 1] - values[i]) / dt);
    return out;
}

namespace {

double mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

MIProfile finish_profile(std::vector<double> centers, std::vector<double> values, std::size_t stride) {
    MIProfile p;
    p.gradients = forward_gradients(values, stride);
    p.centers = std::move(centers);
    p.values = std::move(values);
    p.stride = stride;
    return p;
}

}  // namespace

MIProfile windowed_mi(const Dataset& d, const WindowConfig& cfg) {
    const SlidingWindows windows(d, cfg);
    const auto count = static_cast<std::ptrdiff_t>(windows.size());
    std::vector<double> centers(windows.size()), values(windows.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto w = windows.window(static_cast<std::size_t>(i));
        centers[i] = mean(w.xs);
        values[i] = binned_mi(w, cfg.scheme()).normalized;
    }
    return finish_profile(std::move(centers), std::move(values), cfg.stride());
}

MIProfile windowed_mi_serial(const Dataset& d, const WindowConfig& cfg) {
    const SlidingWindows windows(d, cfg);
    std::vector<double> centers, values;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto w = windows.window(i);
        centers.push_back(mean(w.xs));
        const auto xb = discretize(w.xs, cfg.scheme().nx());
        const auto yb = discretize(w.ys, cfg.scheme().ny());
        values.push_back(mutual_information(joint_histogram(xb, yb)).normalized);
    }
    return finish_profile(std::move(centers), std::move(values), cfg.stride());
}

double mi_gradient_at(const MIProfile& profile, std::size_t t) {
    if (t >= profile.gradients.size())
        throw std::out_of_range("window index " + std::to_string(t) + " has no successor window");
    return profile.gradients[t];
}

double mi_gradient_at(const Dataset& d, const WindowConfig& cfg, std::size_t t) {
    return mi_gradient_at(windowed_mi(d, cfg), t);
}

std::vector<WindowConfig> WindowSpec::configs() const {
    if (!(stride_fraction > 0.0 && stride_fraction <= 1.0))
        throw std::invalid_argument("stride fraction must be in (0, 1]");
    std::vector<std::size_t> ordered = sizes;
    std::sort(ordered.begin(), ordered.end());
    std::vector<WindowConfig> out;
    for (auto size : ordered) {
        const auto stride = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(static_cast<double>(size) * stride_fraction)));
        out.emplace_back(size, stride, BinningScheme(nx, ny));
    }
    return out;
}

std::size_t WindowSpec::total_windows(std::size_t n) const {
    std::size_t total = 0;
    for (const auto& cfg : configs()) total += window_count(n, cfg);
    return total;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("pearson needs at least 2 samples");
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw std::domain_error("undefined correlation");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationProfile windowed_correlation(const Dataset& d, int nbins) {
    if (nbins < 2) throw std::invalid_argument("nbins must be >= 2");
    const auto bins = discretize(d.xs(), nbins);
    const auto [lo, hi] = std::minmax_element(d.xs().begin(), d.xs().end());
    const double width = (*hi - *lo) / nbins;

    std::vector<std::vector<double>> bx(nbins), by(nbins);
    for (std::size_t i = 0; i < d.size(); ++i) {
        bx[bins[i] - 1].push_back(d.xs()[i]);
        by[bins[i] - 1].push_back(d.ys()[i]);
    }

    CorrelationProfile out;
    for (int k = 0; k < nbins; ++k) {
        out.bin_centers.push_back(*lo + (static_cast<double>(k) + 0.5) * width);
        std::optional<double> r;
        if (bx[k].size() >= 3) {
            try {
                r = pearson(bx[k], by[k]);
            } catch (const std::domain_error&) {
                // flat bin: leave undefined
            }
        }
        out.correlations.push_back(r);
    }
    return out;
}

}  // namespace miembed
