#include <doctest.h>

#include <filesystem>
#include <random>

#include "miembed/io.hpp"
#include "miembed/synthgen.hpp"

using namespace miembed;
namespace fs = std::filesystem;

namespace {

std::string error_of(std::string_view csv) {
    try {
        io::parse_dataset_csv(csv, "data.csv");
    } catch (const io::FormatError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(io::format_exact(0.1) == "0.10000000000000001");
    CHECK(io::format_exact(2.0) == "2");
    CHECK(io::format_4dp(0.97931) == "0.9793");
    CHECK(io::format_4dp(1.0) == "1.0000");
}

TEST_CASE("dataset CSV parsing") {
    const auto d = io::parse_dataset_csv("x,y\n1,2\n3.5,-4e-3\r\n\n", "mem");
    CHECK(d.xs() == std::vector{1.0, 3.5});
    CHECK(d.ys() == std::vector{2.0, -4e-3});

    CHECK(error_of("") == "data.csv: empty sequence");
    CHECK(error_of("x,y\n") == "data.csv: empty sequence");
    CHECK(error_of("x,y\n1,2\n").find("too few rows") != std::string::npos);
    CHECK(error_of("x,y\n1,2\n3,abc\n4,5\n") == "data.csv:3: non-numeric value 'abc' in column y");
    CHECK(error_of("x,y\n1,2\n3\n") == "data.csv:3: expected 2 columns, found 1");
    CHECK(error_of("a,b\n1,2\n") == "data.csv:1: expected header 'x,y'");
    CHECK(error_of("x,y\n1,2\nnan,3\n") == "data.csv:3: non-finite input");
}

TEST_CASE("dataset CSV round-trips bit-exactly") {
    const auto d = generate(sample_params(RelationshipClass::Sinusoid, 12));
    const auto text = io::dataset_to_csv(d);
    CHECK(text.rfind("x,y\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    const auto back = io::parse_dataset_csv(text, "mem");
    CHECK(back.xs() == d.xs());
    CHECK(back.ys() == d.ys());
}

TEST_CASE("embedding JSON round-trips exactly") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        MIEmbedding e;
        e.bin_ceiling = 4 + trial;
        e.scores.resize(30);
        for (auto& s : e.scores) s = u(rng);
        if (trial % 2) e.window_spec = WindowSpec{};
        if (trial % 3) e.label = kAllClasses[trial % 5];
        const auto json = io::embedding_to_json(e);
        CHECK(io::parse_embedding_json(json, "mem") == e);
    }

    MIEmbedding e;
    e.scores = {0.5};
    const auto json = io::embedding_to_json(e);
    CHECK(json.find("\"schema_version\": 1") != std::string::npos);
    CHECK(json.find("\"window_spec\": null") != std::string::npos);
    CHECK(json.find("\"label\": null") != std::string::npos);

    CHECK_THROWS_AS(io::parse_embedding_json("{", "bad.json"), io::FormatError);
    CHECK_THROWS_AS(io::parse_embedding_json(R"({"schema_version": 2})", "bad.json"), io::FormatError);
    CHECK_THROWS_AS(
        io::parse_embedding_json(
            R"({"schema_version":1,"bin_ceiling":16,"window_spec":null,"label":"Cubic","scores":[]})", "bad.json"),
        io::FormatError);
}

TEST_CASE("similarity CSV") {
    SimilarityMatrix m;
    m.classes = {RelationshipClass::Linear, RelationshipClass::Gaussian};
    m.means = {{0.97934, 0.5}, {0.5, 0.99481}};
    const auto text = io::similarity_to_csv(m);
    CHECK(text == "class,Linear,Gaussian\nLinear,0.9793,0.5000\nGaussian,0.5000,0.9948\n");
    const auto back = io::parse_similarity_csv(text, "mem");
    CHECK(back.classes == m.classes);
    CHECK(back.means[0][0] == 0.9793);
    CHECK(back.means[0][1] == back.means[1][0]);
    CHECK_THROWS(io::parse_similarity_csv("class,Linear\nLinear,1,2\n", "mem"));
}

TEST_CASE("manifest JSON round-trip") {
    io::Manifest m;
    m.seed = 18446744073709551615ULL;
    m.per_class = 1;
    m.noise_grid = kDefaultNoiseGrid;
    for (auto c : kAllClasses) m.datasets.push_back({"f.csv", sample_params(c, 3)});
    const auto back = io::parse_manifest_json(io::manifest_to_json(m), "mem");
    CHECK(back.seed == m.seed);
    CHECK(back.noise_grid == m.noise_grid);
    REQUIRE(back.datasets.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(back.datasets[i].params == m.datasets[i].params);
}

TEST_CASE("profile CSV leaves undefined fields empty") {
    MIProfile p;
    p.centers = {1.0, 2.0};
    p.values = {0.5, 0.25};
    p.gradients = {-0.125};
    p.stride = 2;
    CorrelationProfile corr;
    corr.bin_centers = {0.5, 1.5};
    corr.correlations = {1.0, std::nullopt};
    const auto text = io::profile_to_csv({{4, p}}, corr);
    CHECK(text ==
          "section,window_size,center,mi,mi_gradient,pearson\n"
          "mi,4,1,0.5,-0.125,\n"
          "mi,4,2,0.25,,\n"
          "corr,,0.5,,,1.0000\n"
          "corr,,1.5,,,\n");
}

TEST_CASE("atomic write") {
    const auto dir = fs::temp_directory_path() / "miembed_io_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    io::write_file_atomic(dir / "a.txt", "first");
    io::write_file_atomic(dir / "a.txt", "second");
    CHECK(io::read_file(dir / "a.txt") == "second");
    CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
    CHECK_THROWS(io::write_file_atomic(dir / "missing" / "b.txt", "x"));
    CHECK_THROWS_AS(io::read_file(dir / "nope.csv"), io::FormatError);
    fs::remove_all(dir);
}
