#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "miembed/dataset.hpp"
#include "miembed/mi_core.hpp"
#include "miembed/windows.hpp"

namespace miembed {

/// Normalized-MI feature vector of one dataset.
///
/// Scores are the bin-combination sweep in scheme order, followed by the
/// windowed MI profile of every scale (ascending window size) when a window
/// spec is present. Embeddings are only comparable when bin_ceiling and
/// window_spec agree.
struct MIEmbedding {
    std::vector<double> scores;
    int bin_ceiling = kDefaultBinCeiling;
    std::optional<WindowSpec> window_spec;
    std::optional<RelationshipClass> label;

    bool comparable_with(const MIEmbedding& other) const {
        return bin_ceiling == other.bin_ceiling && window_spec == other.window_spec;
    }

    friend bool operator==(const MIEmbedding&, const MIEmbedding&) = default;
};

MIEmbedding embed(const Dataset& d, int bin_ceiling = kDefaultBinCeiling,
                  const std::optional<WindowSpec>& window_spec = std::nullopt);

/// Embeds every dataset; datasets are processed in parallel.
std::vector<MIEmbedding> embed_all(std::span<const Dataset> datasets, int bin_ceiling = kDefaultBinCeiling,
                                   const std::optional<WindowSpec>& window_spec = std::nullopt);

/// Throws "incompatible embeddings" on config mismatch and "degenerate
/// embedding" when either vector has zero norm.
double cosine_similarity(const MIEmbedding& a, const MIEmbedding& b);

/// Row-major n x n table of cosine similarities; entry (i, j) and (j, i) share
/// one computation. The diagonal is left at 1.
std::vector<double> pairwise_cosine(std::span<const MIEmbedding> embeddings);
std::vector<double> pairwise_cosine_serial(std::span<const MIEmbedding> embeddings);

struct SimilarityMatrix {
    std::vector<RelationshipClass> classes;   // present classes, declaration order
    std::vector<std::vector<double>> means;   // means[i][j] over classes[i] x classes[j]
};

/// Mean cosine per class pair. Off-diagonal entries average all cross pairs;
/// diagonal entries average distinct unordered pairs within the class, so a
/// class needs at least two members.
SimilarityMatrix similarity_matrix(std::span<const MIEmbedding> embeddings);

struct Neighbor {
    std::size_t index;
    double similarity;
    RelationshipClass label;
};

/// The k most cosine-similar labeled training embeddings, best first; equal
/// similarities keep training order.
std::vector<Neighbor> nearest_neighbors(std::span<const MIEmbedding> train, const MIEmbedding& query,
                                        std::size_t k = 1);

/// Majority label of the k nearest neighbors. A vote tie goes to the tied
/// class whose best neighbor ranks first, so k = 1 returns the single most
/// similar training label.
RelationshipClass nn_classify(std::span<const MIEmbedding> train, const MIEmbedding& query, std::size_t k = 1);

/// Leave-one-out accuracy of nn_classify over a labeled set (parallel over items).
double loo_accuracy(std::span<const MIEmbedding> embeddings, std::size_t k = 1);
double loo_accuracy_serial(std::span<const MIEmbedding> embeddings, std::size_t k = 1);

struct PCAProjection {
    std::vector<std::vector<double>> components;  // 2 orthonormal directions
    std::vector<double> eigenvalues;               // variance along each component
    std::vector<double> mean;
    std::vector<std::array<double, 2>> projected;
    std::vector<std::optional<RelationshipClass>> labels;
};

/// Top-2 principal components of the sample covariance. Each component is
/// signed so that its largest-magnitude coordinate is positive.
PCAProjection pca_2d(std::span<const MIEmbedding> embeddings);

/// Same decomposition on plain row vectors.
PCAProjection pca_2d(std::span<const std::vector<double>> points);

}  // namespace miembed
