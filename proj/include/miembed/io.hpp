#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "miembed/dataset.hpp"
#include "miembed/embedding.hpp"
#include "miembed/synthgen.hpp"
#include "miembed/windows.hpp"

namespace miembed::io {

/// Raised for unreadable or malformed input files; what() names the source
/// and, where it applies, the offending line.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough to round-trip any double.
std::string format_exact(double v);

/// Fixed, 4 decimals.
std::string format_4dp(double v);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Dataset CSV: header "x,y", one sample per line, LF endings.
std::string dataset_to_csv(const Dataset& d);
Dataset parse_dataset_csv(std::string_view text, std::string_view source);
Dataset read_dataset_csv(const std::filesystem::path& path);

// Embedding JSON, schema_version 1:
// { "schema_version": 1, "bin_ceiling": int, "window_spec": object|null,
//   "label": string|null, "scores": [real...] }
std::string embedding_to_json(const MIEmbedding& e);
MIEmbedding parse_embedding_json(std::string_view text, std::string_view source);
MIEmbedding read_embedding_json(const std::filesystem::path& path);

// Class-by-class matrix: header "class,<names...>", values to 4 decimals.
std::string similarity_to_csv(const SimilarityMatrix& m);
SimilarityMatrix parse_similarity_csv(std::string_view text, std::string_view source);

struct ManifestEntry {
    std::string file;
    GenParams params;
};

struct Manifest {
    std::uint64_t seed = 0;
    std::size_t per_class = 0;
    std::vector<double> noise_grid;
    std::vector<ManifestEntry> datasets;
};

std::string manifest_to_json(const Manifest& m);
Manifest parse_manifest_json(std::string_view text, std::string_view source);

struct PcaRow {
    std::string file;
    std::optional<RelationshipClass> label;
    double pc1;
    double pc2;
};

// Header "file,label,pc1,pc2".
std::string pca_to_csv(const std::vector<PcaRow>& rows);

struct ScaleProfile {
    std::size_t window_size;
    MIProfile profile;
};

// Header "section,window_size,center,mi,mi_gradient,pearson". "mi" rows carry
// one window each (gradient empty on the last window of a scale); "corr" rows
// carry one x-bin each with an empty pearson field for undefined bins.
std::string profile_to_csv(const std::vector<ScaleProfile>& scales, const CorrelationProfile& corr);

}  // namespace miembed::io
