#include "miembed/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace miembed {

std::string_view class_name(RelationshipClass c) {
    switch (c) {
        case RelationshipClass::Linear: return "Linear";
        case RelationshipClass::Quadratic: return "Quadratic";
        case RelationshipClass::Quartic: return "Quartic";
        case RelationshipClass::Gaussian: return "Gaussian";
        case RelationshipClass::Sinusoid: return "Sinusoid";
    }
    throw std::logic_error("unreachable relationship class");
}

RelationshipClass parse_class(std::string_view name) {
    auto iequal = [](std::string_view a, std::string_view b) {
        return a.size() == b.size() &&
               std::equal(a.begin(), a.end(), b.begin(), [](char l, char r) {
                   return std::tolower(static_cast<unsigned char>(l)) ==
                          std::tolower(static_cast<unsigned char>(r));
               });
    };
    for (auto c : kAllClasses) {
        if (iequal(name, class_name(c))) return c;
    }
    throw std::invalid_argument("unknown relationship class '" + std::string(name) + "'");
}

Dataset::Dataset(std::vector<double> xs, std::vector<double> ys,
                 std::optional<RelationshipClass> label)
    : xs_(std::move(xs)), ys_(std::move(ys)), label_(label) {
    if (xs_.size() != ys_.size()) throw std::invalid_argument("length mismatch between xs and ys");
    if (xs_.empty()) throw std::invalid_argument("empty sequence");
    if (xs_.size() < 2) throw std::invalid_argument("dataset needs at least 2 samples");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(xs_.begin(), xs_.end(), finite) || !std::all_of(ys_.begin(), ys_.end(), finite))
        throw std::invalid_argument("non-finite input");
}

bool Dataset::sorted_by_x() const { return std::is_sorted(xs_.begin(), xs_.end()); }

Dataset Dataset::sorted() const {
    if (sorted_by_x()) return *this;
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs_[a] < xs_[b]; });
    std::vector<double> xs(size()), ys(size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        xs[i] = xs_[order[i]];
        ys[i] = ys_[order[i]];
    }
    return Dataset(std::move(xs), std::move(ys), label_);
}

}  // namespace miembed
