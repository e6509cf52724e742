#include "miembed/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "miembed/linalg.hpp"

namespace miembed {

namespace {

RelationshipClass require_label(const MIEmbedding& e) {
    if (!e.label) throw std::invalid_argument("embedding has no label");
    return *e.label;
}

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

struct Candidate {
    std::size_t index;
    double similarity;
    RelationshipClass label;
};

// Candidates arrive in training order; stable sort keeps that order on ties.
std::vector<Neighbor> top_k(std::vector<Candidate> candidates, std::size_t k) {
    if (candidates.empty()) throw std::invalid_argument("empty training set");
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (k > candidates.size())
        throw std::invalid_argument("k = " + std::to_string(k) + " exceeds training size " +
                                    std::to_string(candidates.size()));
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.similarity > b.similarity; });
    std::vector<Neighbor> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back({candidates[i].index, candidates[i].similarity, candidates[i].label});
    return out;
}

RelationshipClass vote(const std::vector<Neighbor>& ranked) {
    std::map<RelationshipClass, std::size_t> votes;
    for (const auto& n : ranked) ++votes[n.label];
    std::size_t best = 0;
    for (const auto& [cls, v] : votes) best = std::max(best, v);
    for (const auto& n : ranked) {
        if (votes[n.label] == best) return n.label;
    }
    throw std::logic_error("no neighbors to vote");
}

void require_comparable(std::span<const MIEmbedding> es) {
    for (const auto& e : es) {
        if (!e.comparable_with(es.front()) || e.scores.size() != es.front().scores.size())
            throw std::invalid_argument("incompatible embeddings");
    }
}

}  // namespace

MIEmbedding embed(const Dataset& d, int bin_ceiling, const std::optional<WindowSpec>& window_spec) {
    MIEmbedding e;
    e.bin_ceiling = bin_ceiling;
    e.window_spec = window_spec;
    e.label = d.label();
    e.scores = bin_combination_scores(d.view(), bin_ceiling);
    if (window_spec) {
        for (const auto& cfg : window_spec->configs()) {
            const auto profile = windowed_mi(d, cfg);
            e.scores.insert(e.scores.end(), profile.values.begin(), profile.values.end());
        }
    }
    return e;
}

std::vector<MIEmbedding> embed_all(std::span<const Dataset> datasets, int bin_ceiling,
                                   const std::optional<WindowSpec>& window_spec) {
    std::vector<MIEmbedding> out(datasets.size());
    const auto count = static_cast<std::ptrdiff_t>(datasets.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[i] = embed(datasets[i], bin_ceiling, window_spec);
        } catch (...) {
#pragma omp critical(miembed_embed_all_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

double cosine_similarity(const MIEmbedding& a, const MIEmbedding& b) {
    if (!a.comparable_with(b) || a.scores.size() != b.scores.size())
        throw std::invalid_argument("incompatible embeddings");
    const double na = norm(a.scores);
    const double nb = norm(b.scores);
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("degenerate embedding");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.scores.size(); ++i) dot += a.scores[i] * b.scores[i];
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::vector<double> pairwise_cosine(std::span<const MIEmbedding> es) {
    const std::size_t n = es.size();
    std::vector<double> table(n * n, 1.0);
    const auto rows = static_cast<std::ptrdiff_t>(n);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        try {
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
                const double c = cosine_similarity(es[i], es[j]);
                table[i * n + j] = c;
                table[j * n + i] = c;
            }
        } catch (...) {
#pragma omp critical(miembed_pairwise_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

std::vector<double> pairwise_cosine_serial(std::span<const MIEmbedding> es) {
    const std::size_t n = es.size();
    std::vector<double> table(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            table[i * n + j] = table[j * n + i] = cosine_similarity(es[i], es[j]);
        }
    }
    return table;
}

SimilarityMatrix similarity_matrix(std::span<const MIEmbedding> es) {
    if (es.empty()) throw std::invalid_argument("no embeddings");
    require_comparable(es);
    std::vector<RelationshipClass> labels;
    for (const auto& e : es) labels.push_back(require_label(e));

    SimilarityMatrix m;
    for (auto c : kAllClasses) {
        if (std::find(labels.begin(), labels.end(), c) != labels.end()) m.classes.push_back(c);
    }
    const std::size_t k = m.classes.size();
    auto slot = [&](RelationshipClass c) {
        return static_cast<std::size_t>(std::find(m.classes.begin(), m.classes.end(), c) - m.classes.begin());
    };

    const auto table = pairwise_cosine(es);
    const std::size_t n = es.size();
    std::vector<double> sums(k * k, 0.0);
    std::vector<std::size_t> counts(k * k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto a = slot(labels[i]);
            auto b = slot(labels[j]);
            if (a > b) std::swap(a, b);
            sums[a * k + b] += table[i * n + j];
            ++counts[a * k + b];
        }
    }

    m.means.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            if (counts[a * k + b] == 0)
                throw std::invalid_argument("class " + std::string(class_name(m.classes[a])) +
                                            " needs at least 2 embeddings");
            const double mean = sums[a * k + b] / static_cast<double>(counts[a * k + b]);
            m.means[a][b] = mean;
            m.means[b][a] = mean;
        }
    }
    return m;
}

std::vector<Neighbor> nearest_neighbors(std::span<const MIEmbedding> train, const MIEmbedding& query, std::size_t k) {
    std::vector<Candidate> candidates;
    candidates.reserve(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        candidates.push_back({i, cosine_similarity(train[i], query), require_label(train[i])});
    }
    return top_k(std::move(candidates), k);
}

RelationshipClass nn_classify(std::span<const MIEmbedding> train, const MIEmbedding& query, std::size_t k) {
    return vote(nearest_neighbors(train, query, k));
}

double loo_accuracy(std::span<const MIEmbedding> es, std::size_t k) {
    if (es.size() < 2) throw std::invalid_argument("leave-one-out needs at least 2 embeddings");
    for (const auto& e : es) require_label(e);
    const auto table = pairwise_cosine(es);
    const std::size_t n = es.size();
    const auto count = static_cast<std::ptrdiff_t>(n);
    std::size_t correct = 0;
    std::exception_ptr failure;
#pragma omp parallel for reduction(+ : correct) schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            std::vector<Candidate> candidates;
            candidates.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != static_cast<std::size_t>(i)) candidates.push_back({j, table[i * n + j], *es[j].label});
            }
            if (vote(top_k(std::move(candidates), k)) == *es[i].label) ++correct;
        } catch (...) {
#pragma omp critical(miembed_loo_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return static_cast<double>(correct) / static_cast<double>(n);
}

double loo_accuracy_serial(std::span<const MIEmbedding> es, std::size_t k) {
    if (es.size() < 2) throw std::invalid_argument("leave-one-out needs at least 2 embeddings");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::vector<MIEmbedding> rest;
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (j != i) rest.push_back(es[j]);
        }
        if (nn_classify(rest, es[i], k) == require_label(es[i])) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(es.size());
}

PCAProjection pca_2d(std::span<const std::vector<double>> points) {
    if (points.size() < 3) throw std::invalid_argument("PCA needs at least 3 points");
    const std::size_t dim = points.front().size();
    if (dim < 2) throw std::invalid_argument("PCA needs dimension >= 2");
    for (const auto& p : points) {
        if (p.size() != dim) throw std::invalid_argument("points differ in dimension");
    }

    const std::size_t n = points.size();
    PCAProjection out;
    out.mean.assign(dim, 0.0);
    for (const auto& p : points)
        for (std::size_t c = 0; c < dim; ++c) out.mean[c] += p[c];
    for (auto& m : out.mean) m /= static_cast<double>(n);

    SquareMatrix cov(dim);
    std::vector<double> centered(dim);
    for (const auto& p : points) {
        for (std::size_t c = 0; c < dim; ++c) centered[c] = p[c] - out.mean[c];
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = r; c < dim; ++c) cov(r, c) += centered[r] * centered[c];
    }
    double trace = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r; c < dim; ++c) {
            cov(r, c) /= static_cast<double>(n - 1);
            cov(c, r) = cov(r, c);
        }
        trace += cov(r, r);
    }
    if (trace == 0.0) throw std::invalid_argument("zero variance");

    auto eig = symmetric_eigen(std::move(cov));
    for (std::size_t k = 0; k < 2; ++k) {
        auto v = eig.vectors[k];
        std::size_t arg = 0;
        for (std::size_t c = 1; c < dim; ++c) {
            if (std::abs(v[c]) > std::abs(v[arg])) arg = c;
        }
        if (v[arg] < 0.0)
            for (auto& x : v) x = -x;
        out.components.push_back(std::move(v));
        out.eigenvalues.push_back(eig.values[k]);
    }

    for (const auto& p : points) {
        std::array<double, 2> xy{0.0, 0.0};
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t c = 0; c < dim; ++c) xy[k] += (p[c] - out.mean[c]) * out.components[k][c];
        out.projected.push_back(xy);
    }
    out.labels.assign(n, std::nullopt);
    return out;
}

PCAProjection pca_2d(std::span<const MIEmbedding> embeddings) {
    if (!embeddings.empty()) require_comparable(embeddings);
    std::vector<std::vector<double>> points;
    points.reserve(embeddings.size());
    for (const auto& e : embeddings) points.push_back(e.scores);
    auto out = pca_2d(std::span<const std::vector<double>>(points));
    for (std::size_t i = 0; i < embeddings.size(); ++i) out.labels[i] = embeddings[i].label;
    return out;
}

}  // namespace miembed
