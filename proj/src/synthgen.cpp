#include "miembed/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace miembed {

namespace {

// std::mt19937_64 output is fixed by the standard; the library distributions
// are not, so uniform and normal variates are derived here by hand.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform on [-hi, -lo] U [lo, hi].
    double signed_uniform(double lo, double hi) {
        const double magnitude = uniform(lo, hi);
        return (engine_() >> 63) != 0 ? -magnitude : magnitude;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

double half_range(RelationshipClass c, std::span<const double> coefficients, double lo, double hi) {
    constexpr int kGrid = 1001;
    double mn = INFINITY, mx = -INFINITY;
    for (int i = 0; i < kGrid; ++i) {
        const double x = lo + (hi - lo) * i / (kGrid - 1);
        const double y = relationship_value(c, coefficients, x);
        mn = std::min(mn, y);
        mx = std::max(mx, y);
    }
    return 0.5 * (mx - mn);
}

}  // namespace

std::size_t class_arity(RelationshipClass c) {
    switch (c) {
        case RelationshipClass::Linear: return 2;
        case RelationshipClass::Quadratic: return 3;
        case RelationshipClass::Quartic: return 5;
        case RelationshipClass::Gaussian: return 3;
        case RelationshipClass::Sinusoid: return 3;
    }
    throw std::logic_error("unreachable relationship class");
}

double relationship_value(RelationshipClass c, std::span<const double> k, double x) {
    switch (c) {
        case RelationshipClass::Linear: return k[0] * x + k[1];
        case RelationshipClass::Quadratic: return k[0] * x * x + k[1] * x + k[2];
        case RelationshipClass::Quartic: {
            const double x2 = x * x;
            return k[0] * x2 * x2 + k[1] * x2 * x + k[2] * x2 + k[3] * x + k[4];
        }
        case RelationshipClass::Gaussian: {
            const double d = x - k[1];
            return k[0] * std::exp(-(d * d) / (2.0 * k[2] * k[2]));
        }
        case RelationshipClass::Sinusoid:
            return k[0] * std::sin(2.0 * std::numbers::pi * k[1] * x + k[2]);
    }
    throw std::logic_error("unreachable relationship class");
}

void GenParams::validate() const {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw std::invalid_argument("noise_sigma must be finite and >= 0");
    if (!(x_low < x_high) || !std::isfinite(x_low) || !std::isfinite(x_high))
        throw std::invalid_argument("x_low must be < x_high");
    if (coefficients.size() != class_arity(cls))
        throw std::invalid_argument(std::string(class_name(cls)) + " expects " +
                                    std::to_string(class_arity(cls)) + " coefficients, got " +
                                    std::to_string(coefficients.size()));
    if (cls == RelationshipClass::Gaussian && !(coefficients[2] > 0.0))
        throw std::invalid_argument("Gaussian sigma must be > 0");
}

Dataset generate(const GenParams& p) {
    p.validate();
    Stream rng(p.seed);
    std::vector<double> xs(p.n);
    for (auto& x : xs) x = rng.uniform(p.x_low, p.x_high);
    std::sort(xs.begin(), xs.end());

    std::vector<double> ys(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        ys[i] = relationship_value(p.cls, p.coefficients, xs[i]) + p.noise_sigma * rng.normal();
    }
    return Dataset(std::move(xs), std::move(ys), p.cls);
}

GenParams sample_params(RelationshipClass c, std::uint64_t seed, std::span<const double> noise_grid) {
    if (noise_grid.empty()) throw std::invalid_argument("noise grid is empty");
    if (std::any_of(noise_grid.begin(), noise_grid.end(), [](double v) { return !(v >= 0.0); }))
        throw std::invalid_argument("noise grid entries must be >= 0");

    Stream rng(splitmix64(seed ^ 0x5eed5eed5eed5eedULL));
    GenParams p;
    p.cls = c;
    switch (c) {
        case RelationshipClass::Linear:
            p.coefficients = {rng.signed_uniform(0.1, 3.0), rng.uniform(-2.0, 2.0)};
            break;
        case RelationshipClass::Quadratic:
            p.coefficients = {rng.signed_uniform(0.1, 2.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            break;
        case RelationshipClass::Quartic:
            p.coefficients = {rng.signed_uniform(0.05, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                              rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            break;
        case RelationshipClass::Gaussian:
            p.coefficients = {rng.uniform(0.5, 3.0), rng.uniform(-2.0, 2.0), rng.uniform(0.3, 1.5)};
            break;
        case RelationshipClass::Sinusoid:
            p.coefficients = {rng.uniform(0.5, 3.0), rng.uniform(0.5, 2.0),
                              rng.uniform(0.0, 2.0 * std::numbers::pi)};
            break;
    }
    const auto pick = static_cast<std::size_t>(rng.next() % noise_grid.size());
    p.noise_sigma = noise_grid[pick] * half_range(c, p.coefficients, p.x_low, p.x_high);
    p.seed = splitmix64(seed);
    return p;
}

std::vector<GenParams> corpus_params(std::size_t per_class, std::uint64_t seed,
                                     std::span<const double> noise_grid) {
    if (per_class < 1) throw std::invalid_argument("per_class must be >= 1");
    std::vector<GenParams> out;
    out.reserve(per_class * kAllClasses.size());
    for (std::size_t ci = 0; ci < kAllClasses.size(); ++ci) {
        for (std::size_t i = 0; i < per_class; ++i) {
            out.push_back(sample_params(kAllClasses[ci], sub_seed(seed, ci, i), noise_grid));
        }
    }
    return out;
}

std::vector<Dataset> corpus(std::size_t per_class, std::uint64_t seed, std::span<const double> noise_grid) {
    const auto params = corpus_params(per_class, seed, noise_grid);
    std::vector<Dataset> out;
    out.reserve(params.size());
    for (const auto& p : params) out.push_back(generate(p));
    return out;
}

}  // namespace miembed
