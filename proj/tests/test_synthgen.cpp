#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "miembed/synthgen.hpp"

using namespace miembed;

TEST_CASE("relationship formulas") {
    CHECK(relationship_value(RelationshipClass::Linear, std::vector{2.0, 1.0}, 0.5) == 2.0);
    CHECK(relationship_value(RelationshipClass::Sinusoid, std::vector{1.0, 1.0, 0.0}, 0.0) == 0.0);
    const std::vector quartic{1.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(relationship_value(RelationshipClass::Quartic, quartic, -1.0) == 1.0);
    CHECK(relationship_value(RelationshipClass::Quartic, quartic, 1.0) == 1.0);
    CHECK(relationship_value(RelationshipClass::Quadratic, std::vector{1.0, -2.0, 3.0}, 2.0) == 3.0);
    CHECK(relationship_value(RelationshipClass::Gaussian, std::vector{2.0, 1.0, 0.5}, 1.0) == 2.0);
}

TEST_CASE("GenParams validation") {
    GenParams p{RelationshipClass::Gaussian, {1.0, 0.0, 0.0}, 0.0, -1.0, 1.0, 10, 1};
    CHECK_THROWS_WITH(generate(p), "Gaussian sigma must be > 0");
    p.coefficients = {1.0, 0.0, -1.0};
    CHECK_THROWS(generate(p));
    p.coefficients = {1.0, 0.0};
    CHECK_THROWS(generate(p));
    p = {RelationshipClass::Linear, {1.0, 0.0}, -0.1, -1.0, 1.0, 10, 1};
    CHECK_THROWS(generate(p));
    p.noise_sigma = 0.0;
    p.x_low = 1.0;
    CHECK_THROWS(generate(p));
    p.x_low = -1.0;
    p.n = 1;
    CHECK_THROWS(generate(p));
}

TEST_CASE("generate: noise-free fidelity, sorting, determinism") {
    for (auto cls : kAllClasses) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto p = sample_params(cls, seed);
            p.noise_sigma = 0.0;
            const auto d = generate(p);
            CHECK(d.size() == 1000);
            CHECK(std::is_sorted(d.xs().begin(), d.xs().end()));
            CHECK(d.label() == cls);
            double worst = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                worst = std::max(worst, std::abs(d.ys()[i] - relationship_value(cls, p.coefficients, d.xs()[i])));
                CHECK(d.xs()[i] >= p.x_low);
                CHECK(d.xs()[i] <= p.x_high);
            }
            CHECK(worst == 0.0);
            CHECK(generate(p) == d);
        }
    }
}

TEST_CASE("generate: noise has roughly the requested spread") {
    GenParams p{RelationshipClass::Linear, {0.0, 0.0}, 0.5, -1.0, 1.0, 20000, 123};
    const auto d = generate(p);
    double sum = 0.0, sq = 0.0;
    for (double y : d.ys()) {
        sum += y;
        sq += y * y;
    }
    const double mean = sum / d.size();
    const double sd = std::sqrt(sq / d.size() - mean * mean);
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(sd - 0.5) < 0.02);
}

TEST_CASE("sample_params") {
    CHECK(sample_params(RelationshipClass::Sinusoid, 17) == sample_params(RelationshipClass::Sinusoid, 17));
    CHECK_FALSE(sample_params(RelationshipClass::Sinusoid, 17) == sample_params(RelationshipClass::Sinusoid, 18));

    int positive = 0, negative = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto p = sample_params(RelationshipClass::Linear, seed);
        const double a = p.coefficients[0];
        CHECK(std::abs(a) >= 0.1);
        CHECK(std::abs(a) <= 3.0);
        CHECK(p.coefficients[1] >= -2.0);
        CHECK(p.coefficients[1] <= 2.0);
        (a > 0 ? positive : negative)++;
        CHECK(p.noise_sigma >= 0.0);
        CHECK(p.n == 1000);
        CHECK(p.x_low == -3.0);
        CHECK(p.x_high == 3.0);
    }
    CHECK(positive > 400);
    CHECK(negative > 400);
}

TEST_CASE("sample_params respects per-class ranges") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        for (auto cls : kAllClasses) {
            const auto p = sample_params(cls, seed);
            CHECK(p.coefficients.size() == class_arity(cls));
            CHECK(p.noise_sigma >= 0.0);
            CHECK_NOTHROW(p.validate());
            const auto& k = p.coefficients;
            switch (cls) {
                case RelationshipClass::Quadratic:
                    CHECK(std::abs(k[0]) >= 0.1);
                    CHECK(std::abs(k[0]) <= 2.0);
                    break;
                case RelationshipClass::Quartic:
                    CHECK(std::abs(k[0]) >= 0.05);
                    CHECK(std::abs(k[0]) <= 1.0);
                    break;
                case RelationshipClass::Gaussian:
                    CHECK(k[0] >= 0.5);
                    CHECK(k[1] >= -2.0);
                    CHECK(k[2] >= 0.3);
                    CHECK(k[2] <= 1.5);
                    break;
                case RelationshipClass::Sinusoid:
                    CHECK(k[1] >= 0.5);
                    CHECK(k[1] <= 2.0);
                    CHECK(k[2] >= 0.0);
                    CHECK(k[2] < 2.0 * 3.141592653589793);
                    break;
                default:
                    break;
            }
        }
    }
}

TEST_CASE("noise grid selection") {
    const std::vector<double> quiet{0.0};
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        CHECK(sample_params(RelationshipClass::Quadratic, seed, quiet).noise_sigma == 0.0);
    CHECK_THROWS(sample_params(RelationshipClass::Linear, 1, std::vector<double>{}));
    CHECK_THROWS(sample_params(RelationshipClass::Linear, 1, std::vector<double>{-0.1}));

    // Every grid level should show up across seeds.
    std::map<double, int> seen;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const auto p = sample_params(RelationshipClass::Linear, seed);
        const double half_range = 3.0 * std::abs(p.coefficients[0]);
        const double level = std::round(p.noise_sigma / half_range * 100.0) / 100.0;
        ++seen[level];
    }
    CHECK(seen.size() == 4);
    CHECK(seen.count(0.0) == 1);
    CHECK(seen.count(0.2) == 1);
}

TEST_CASE("corpus") {
    const auto c = corpus(10, 42);
    CHECK(c.size() == 50);
    std::map<RelationshipClass, int> per;
    for (const auto& d : c) ++per[*d.label()];
    CHECK(per.size() == 5);
    for (const auto& [cls, n] : per) CHECK(n == 10);

    CHECK(corpus(1, 7) == corpus(1, 7));
    CHECK_FALSE(corpus(1, 7) == corpus(1, 8));
    CHECK_THROWS(corpus(0, 1));

    for (const auto& d : corpus(20, 3)) CHECK(d.size() == 1000);
}
