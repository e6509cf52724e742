#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "miembed/dataset.hpp"

namespace miembed {

/// Bin counts for one equal-width discretization of (x, y). Both counts >= 2.
class BinningScheme {
public:
    BinningScheme(int nx, int ny);

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    friend auto operator<=>(const BinningScheme&, const BinningScheme&) = default;

private:
    int nx_;
    int ny_;
};

/// Equal-width bin indices in 1..nbins.
///
/// Edges are `k * ((high - low) / nbins) + low` for k = 0..nbins-1 and the
/// index of a value is the number of edges that are <= the value. A zero-range
/// input maps every sample to nbins.
std::vector<int> discretize(std::span<const double> values, int nbins);

struct JointCell {
    int x;
    int y;
    std::int64_t count;

    friend bool operator==(const JointCell&, const JointCell&) = default;
};

/// Sparse co-occurrence counts of two symbol sequences. Cells are sorted by
/// (x, y) and only occupied cells are stored.
struct JointHistogram {
    std::vector<JointCell> cells;
    std::map<int, std::int64_t> x_marginals;
    std::map<int, std::int64_t> y_marginals;
    std::int64_t total = 0;

    std::int64_t count(int x, int y) const;
};

JointHistogram joint_histogram(std::span<const int> x_binned, std::span<const int> y_binned);

/// Mutual information in nats together with 1 - exp(-2 * raw).
struct MIScore {
    double raw = 0.0;
    double normalized = 0.0;

    /// Clamps rounding residue in [-1e-12, 0) to zero; throws std::logic_error
    /// for anything more negative.
    static MIScore from_raw(double raw);
};

double normalize_mi(double raw);

MIScore mutual_information(const JointHistogram& h);

/// Discretize both axes with the given scheme and return their MI.
MIScore binned_mi(DatasetView d, BinningScheme scheme);

/// Ordered pairs (nx, ny), nx != ny, from {2, ..., bin_ceiling - 1} in
/// lexicographic order. Throws for bin_ceiling < 4.
std::vector<BinningScheme> bin_schemes(int bin_ceiling);

/// Normalized MI for every scheme of bin_schemes(bin_ceiling), in that order.
///
/// Each axis is discretized once per bin count and schemes are evaluated in
/// parallel on dense count tables. Output is bitwise identical to
/// bin_combination_scores_serial.
std::vector<double> bin_combination_scores(DatasetView d, int bin_ceiling);

/// Straightforward reference: rediscretize per scheme and go through the
/// sparse joint_histogram / mutual_information path.
std::vector<double> bin_combination_scores_serial(DatasetView d, int bin_ceiling);

/// Maximum of a nonempty score list.
double mic_max(std::span<const double> scores);

inline constexpr int kDefaultBinCeiling = 16;

inline constexpr std::size_t sweep_length(int bin_ceiling) {
    const auto m = static_cast<std::size_t>(bin_ceiling - 2);
    return m * (m - 1);
}

}  // namespace miembed
