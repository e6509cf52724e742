#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "miembed/dataset.hpp"
#include "miembed/mi_core.hpp"

namespace miembed {

/// A fixed-size window sliding over x-sorted samples.
class WindowConfig {
public:
    WindowConfig(std::size_t window_size, std::size_t stride, BinningScheme scheme);

    std::size_t window_size() const { return window_size_; }
    std::size_t stride() const { return stride_; }
    const BinningScheme& scheme() const { return scheme_; }

    friend bool operator==(const WindowConfig&, const WindowConfig&) = default;

private:
    std::size_t window_size_;
    std::size_t stride_;
    BinningScheme scheme_;
};

/// Half-open sample index range [begin, end).
struct IndexRange {
    std::size_t begin;
    std::size_t end;

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Full windows [k*stride, k*stride + window_size); no trailing partial window.
/// Throws "window larger than dataset" when window_size > n.
std::vector<IndexRange> window_ranges(std::size_t n, const WindowConfig& cfg);

/// floor((n - window_size) / stride) + 1, or 0 if the window does not fit.
std::size_t window_count(std::size_t n, const WindowConfig& cfg);

/// The x-sorted copy of a dataset plus the window ranges over it.
class SlidingWindows {
public:
    SlidingWindows(const Dataset& d, const WindowConfig& cfg);

    const Dataset& sorted() const { return sorted_; }
    const std::vector<IndexRange>& ranges() const { return ranges_; }
    std::size_t size() const { return ranges_.size(); }
    DatasetView window(std::size_t i) const;

private:
    Dataset sorted_;
    std::vector<IndexRange> ranges_;
};

SlidingWindows sliding_windows(const Dataset& d, const WindowConfig& cfg);

struct MIProfile {
    std::vector<double> centers;    // mean x of each window
    std::vector<double> values;     // normalized MI per window
    std::vector<double> gradients;  // (values[i+1] - values[i]) / stride
    std::size_t stride = 1;
};

/// Forward differences of `values` over a step of `stride` samples.
std::vector<double> forward_gradients(std::span<const double> values, std::size_t stride);

/// Per-window normalized MI and its forward-difference gradient. Windows are
/// evaluated in parallel and assembled in window order.
MIProfile windowed_mi(const Dataset& d, const WindowConfig& cfg);

/// Window-by-window serial reference for windowed_mi.
MIProfile windowed_mi_serial(const Dataset& d, const WindowConfig& cfg);

/// Gradient between windows t and t+1. Throws std::out_of_range unless
/// 0 <= t < window_count - 1.
double mi_gradient_at(const Dataset& d, const WindowConfig& cfg, std::size_t t);
double mi_gradient_at(const MIProfile& profile, std::size_t t);

/// Multi-scale window family: one config per size, stride = floor(size * stride_fraction).
struct WindowSpec {
    std::vector<std::size_t> sizes{50, 100, 200};
    double stride_fraction = 0.5;
    int nx = 5;
    int ny = 5;

    /// Configs in ascending window-size order.
    std::vector<WindowConfig> configs() const;

    /// Total windows across all scales for an n-sample dataset.
    std::size_t total_windows(std::size_t n) const;

    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

/// Sample Pearson correlation. Throws "undefined correlation" when either
/// variance is zero and std::invalid_argument on bad lengths.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct CorrelationProfile {
    std::vector<double> bin_centers;
    std::vector<std::optional<double>> correlations;  // nullopt: too sparse or flat
};

/// Pearson r inside each of nbins equal-width x-bins. A bin needs at least 3
/// points and nonzero variance on both axes, otherwise its entry is empty.
CorrelationProfile windowed_correlation(const Dataset& d, int nbins);

}  // namespace miembed
