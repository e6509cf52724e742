#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace miembed {

/// The closed set of generated relationship families.
enum class RelationshipClass { Linear, Quadratic, Quartic, Gaussian, Sinusoid };

inline constexpr std::array<RelationshipClass, 5> kAllClasses = {
    RelationshipClass::Linear, RelationshipClass::Quadratic, RelationshipClass::Quartic,
    RelationshipClass::Gaussian, RelationshipClass::Sinusoid};

std::string_view class_name(RelationshipClass c);

/// Case-insensitive lookup; throws std::invalid_argument for unknown names.
RelationshipClass parse_class(std::string_view name);

/// Non-owning view of paired samples.
struct DatasetView {
    std::span<const double> xs;
    std::span<const double> ys;

    std::size_t size() const { return xs.size(); }
};

/// Paired (x, y) samples of equal length, at least two, all finite.
///
/// The constructor enforces the invariants, so every Dataset in the program
/// is valid by construction.
class Dataset {
public:
    Dataset(std::vector<double> xs, std::vector<double> ys,
            std::optional<RelationshipClass> label = std::nullopt);

    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    const std::optional<RelationshipClass>& label() const { return label_; }
    std::size_t size() const { return xs_.size(); }

    void set_label(std::optional<RelationshipClass> label) { label_ = label; }

    DatasetView view() const { return {xs_, ys_}; }

    /// True when xs is nondecreasing.
    bool sorted_by_x() const;

    /// Stable sort of the pairs by x.
    Dataset sorted() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::optional<RelationshipClass> label_;
};

}  // namespace miembed
