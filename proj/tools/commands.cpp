#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "miembed/embedding.hpp"
#include "miembed/io.hpp"
#include "miembed/synthgen.hpp"
#include "miembed/windows.hpp"

namespace miembed::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::uint64_t seed = 42;
    int bin_ceiling = kDefaultBinCeiling;
    std::vector<std::size_t> windows{50, 100, 200};
    double stride_fraction = 0.5;
    int window_bins = 5;
    std::size_t per_class = 20;
    std::vector<double> noise_grid = kDefaultNoiseGrid;
    std::string out;
    std::size_t k = 1;
    int corr_bins = 8;

    WindowSpec window_spec() const {
        WindowSpec w;
        w.sizes = windows;
        w.stride_fraction = stride_fraction;
        w.nx = window_bins;
        w.ny = window_bins;
        return w;
    }
};

// Writes to --out when given, otherwise to stdout.
void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.out.empty()) {
        out << content;
        return;
    }
    const fs::path path(cfg.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    io::write_file_atomic(path, content);
}

std::string lowercase(std::string_view s) {
    std::string r(s);
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return r;
}

std::vector<MIEmbedding> read_embeddings(const std::vector<std::string>& paths) {
    std::vector<MIEmbedding> out;
    out.reserve(paths.size());
    for (const auto& p : paths) out.push_back(io::read_embedding_json(p));
    return out;
}

void require_compatible(const std::vector<MIEmbedding>& es) {
    for (const auto& e : es) {
        if (!e.comparable_with(es.front()) || e.scores.size() != es.front().scores.size())
            throw std::invalid_argument("incompatible embeddings");
    }
}

// Labels come from a manifest.json sitting next to the dataset, if any.
class LabelLookup {
public:
    std::optional<RelationshipClass> find(const fs::path& csv) {
        const auto dir = csv.parent_path();
        auto [it, inserted] = manifests_.try_emplace(dir.string());
        if (inserted) {
            const auto manifest = dir / "manifest.json";
            if (fs::exists(manifest)) {
                for (const auto& e : io::parse_manifest_json(io::read_file(manifest), manifest.string()).datasets)
                    it->second[e.file] = e.params.cls;
            }
        }
        const auto hit = it->second.find(csv.filename().string());
        if (hit == it->second.end()) return std::nullopt;
        return hit->second;
    }

private:
    std::map<std::string, std::map<std::string, RelationshipClass>> manifests_;
};

void cmd_generate(const RunConfig& cfg) {
    if (cfg.out.empty()) throw std::invalid_argument("generate requires --out DIR");
    const fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error(dir.string() + ": cannot create output directory");

    io::Manifest manifest;
    manifest.seed = cfg.seed;
    manifest.per_class = cfg.per_class;
    manifest.noise_grid = cfg.noise_grid;

    const auto params = corpus_params(cfg.per_class, cfg.seed, cfg.noise_grid);
    std::map<RelationshipClass, std::size_t> next_index;
    for (const auto& p : params) {
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_%03zu.csv", next_index[p.cls]++);
        const std::string name = lowercase(class_name(p.cls)) + suffix;
        io::write_file_atomic(dir / name, io::dataset_to_csv(generate(p)));
        manifest.datasets.push_back({name, p});
    }
    io::write_file_atomic(dir / "manifest.json", io::manifest_to_json(manifest));
}

void cmd_embed(const RunConfig& cfg, const std::vector<std::string>& inputs, bool with_windows,
               const std::string& label_override) {
    const fs::path out_dir(cfg.out.empty() ? "." : cfg.out);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw std::runtime_error(out_dir.string() + ": cannot create output directory");

    std::optional<RelationshipClass> forced;
    if (!label_override.empty()) forced = parse_class(label_override);

    LabelLookup labels;
    std::vector<Dataset> datasets;
    datasets.reserve(inputs.size());
    for (const auto& in : inputs) {
        auto d = io::read_dataset_csv(in);
        d.set_label(forced ? forced : labels.find(in));
        datasets.push_back(std::move(d));
    }

    std::optional<WindowSpec> spec;
    if (with_windows) spec = cfg.window_spec();
    const auto embeddings = embed_all(datasets, cfg.bin_ceiling, spec);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto stem = fs::path(inputs[i]).stem().string();
        io::write_file_atomic(out_dir / (stem + ".json"), io::embedding_to_json(embeddings[i]));
    }
}

void cmd_similarity(const RunConfig& cfg, const std::vector<std::string>& inputs, std::ostream& out) {
    const auto es = read_embeddings(inputs);
    if (es.size() < 2) throw std::invalid_argument("similarity needs at least 2 embeddings");
    require_compatible(es);
    emit(cfg, io::similarity_to_csv(similarity_matrix(es)), out);
}

void cmd_classify(const RunConfig& cfg, const std::vector<std::string>& train_paths, const std::string& query_path,
                  std::ostream& out) {
    if (train_paths.empty()) throw std::invalid_argument("empty training set");
    const auto train = read_embeddings(train_paths);
    require_compatible(train);
    if (cfg.k == 0 || cfg.k > train.size())
        throw std::invalid_argument("--k " + std::to_string(cfg.k) + " must be in [1, " +
                                    std::to_string(train.size()) + "]");

    const auto query = embed(io::read_dataset_csv(query_path), train.front().bin_ceiling, train.front().window_spec);
    const auto neighbors = nearest_neighbors(train, query, cfg.k);
    const auto label = nn_classify(train, query, cfg.k);

    std::string json = "{\"label\": \"" + std::string(class_name(label)) + "\", \"k\": " + std::to_string(cfg.k) +
                       ", \"neighbors\": [";
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        const auto& n = neighbors[i];
        if (i) json += ", ";
        json += "{\"file\": " + nlohmann::json(train_paths[n.index]).dump() + ", \"label\": \"" +
                std::string(class_name(n.label)) + "\", \"similarity\": " + io::format_exact(n.similarity) + "}";
    }
    json += "]}\n";
    out << json;
}

void cmd_pca(const RunConfig& cfg, const std::vector<std::string>& inputs, std::ostream& out) {
    if (inputs.size() < 3) throw std::invalid_argument("pca needs at least 3 embeddings");
    const auto es = read_embeddings(inputs);
    require_compatible(es);
    const auto projection = pca_2d(es);
    std::vector<io::PcaRow> rows;
    for (std::size_t i = 0; i < es.size(); ++i) {
        rows.push_back({fs::path(inputs[i]).filename().string(), es[i].label, projection.projected[i][0],
                        projection.projected[i][1]});
    }
    emit(cfg, io::pca_to_csv(rows), out);
}

void cmd_gradients(const RunConfig& cfg, const std::string& input, std::ostream& out) {
    const auto d = io::read_dataset_csv(input);
    const auto configs = cfg.window_spec().configs();
    if (configs.empty()) throw std::invalid_argument("no window sizes configured");
    if (d.size() < configs.front().window_size())
        throw std::invalid_argument("dataset shorter than smallest window (" + std::to_string(d.size()) + " < " +
                                    std::to_string(configs.front().window_size()) + ")");

    std::vector<io::ScaleProfile> scales;
    for (const auto& wc : configs) {
        if (wc.window_size() > d.size()) continue;
        scales.push_back({wc.window_size(), windowed_mi(d, wc)});
    }
    emit(cfg, io::profile_to_csv(scales, windowed_correlation(d, cfg.corr_bins)), out);
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Mutual-information embeddings of bivariate relationships", "miembed"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Flat key = value config file; command-line flags override it");

    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--bin-ceiling", cfg.bin_ceiling, "Bin counts swept over {2, ..., ceiling-1}")
        ->capture_default_str()
        ->check(CLI::Range(4, 1 << 16));
    app.add_option("--windows", cfg.windows, "Sliding window sizes, in samples")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--stride-fraction", cfg.stride_fraction, "Window stride as a fraction of the window size")
        ->capture_default_str()
        ->check(CLI::Range(1e-9, 1.0));
    app.add_option("--window-bins", cfg.window_bins, "Bins per axis inside each window")
        ->capture_default_str()
        ->check(CLI::Range(2, 1 << 16));
    app.add_option("--per-class", cfg.per_class, "Datasets generated per relationship class")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    app.add_option("--noise-grid", cfg.noise_grid, "Noise levels, as fractions of the curve half-range")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Output directory (generate, embed) or file (others; default stdout)");
    app.add_option("--k", cfg.k, "Neighbors consulted by classify")->capture_default_str();
    app.add_option("--corr-bins", cfg.corr_bins, "x-bins for the windowed correlation profile")
        ->capture_default_str()
        ->check(CLI::Range(2, 1 << 16));

    auto* generate_cmd = app.add_subcommand("generate", "Write a labeled synthetic corpus and manifest.json");

    std::vector<std::string> embed_inputs;
    bool with_windows = false;
    std::string label_override;
    auto* embed_cmd = app.add_subcommand("embed", "Embed dataset CSVs into embedding JSON files");
    embed_cmd->add_option("datasets", embed_inputs, "Dataset CSV files")->required();
    embed_cmd->add_flag("--with-windows", with_windows, "Append multi-scale windowed MI profiles");
    embed_cmd->add_option("--label", label_override, "Label to attach instead of the manifest label");

    std::vector<std::string> similarity_inputs;
    auto* similarity_cmd = app.add_subcommand("similarity", "Class-by-class mean cosine similarity matrix");
    similarity_cmd->add_option("embeddings", similarity_inputs, "Embedding JSON files")->required();

    std::vector<std::string> train_inputs;
    std::string query_input;
    auto* classify_cmd = app.add_subcommand("classify", "Nearest-neighbor relationship class of a dataset");
    classify_cmd->add_option("--train", train_inputs, "Training embedding JSON files")->required();
    classify_cmd->add_option("--query", query_input, "Query dataset CSV")->required();

    std::vector<std::string> pca_inputs;
    auto* pca_cmd = app.add_subcommand("pca", "Project embeddings onto two principal components");
    pca_cmd->add_option("embeddings", pca_inputs, "Embedding JSON files")->required();

    std::string gradients_input;
    auto* gradients_cmd = app.add_subcommand("gradients", "Windowed MI, MI gradient and per-bin Pearson profile");
    gradients_cmd->add_option("dataset", gradients_input, "Dataset CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
    }

    try {
        if (*generate_cmd) cmd_generate(cfg);
        if (*embed_cmd) cmd_embed(cfg, embed_inputs, with_windows, label_override);
        if (*similarity_cmd) cmd_similarity(cfg, similarity_inputs, out);
        if (*classify_cmd) cmd_classify(cfg, train_inputs, query_input, out);
        if (*pca_cmd) cmd_pca(cfg, pca_inputs, out);
        if (*gradients_cmd) cmd_gradients(cfg, gradients_input, out);
    } catch (const std::exception& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}

}  // namespace miembed::cli
