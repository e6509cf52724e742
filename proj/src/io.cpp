#include "miembed/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace miembed::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
    throw FormatError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail(std::string_view source, const std::string& what) {
    throw FormatError(std::string(source) + ": " + what);
}

bool parse_number(std::string_view cell, double& out) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return false;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

void append_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_exact(values[i]);
    }
    out += ']';
}

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

std::string window_spec_json(const WindowSpec& w) {
    std::string out = "{\"sizes\": [";
    for (std::size_t i = 0; i < w.sizes.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(w.sizes[i]);
    }
    out += "], \"stride_fraction\": " + format_exact(w.stride_fraction) + ", \"nx\": " + std::to_string(w.nx) +
           ", \"ny\": " + std::to_string(w.ny) + "}";
    return out;
}

}  // namespace

std::string format_exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_4dp(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(path.string() + ": cannot write file");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw std::runtime_error(path.string() + ": write failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error(path.string() + ": cannot replace file");
    }
}

std::string dataset_to_csv(const Dataset& d) {
    std::string out = "x,y\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += format_exact(d.xs()[i]);
        out += ',';
        out += format_exact(d.ys()[i]);
        out += '\n';
    }
    return out;
}

Dataset parse_dataset_csv(std::string_view text, std::string_view source) {
    const auto lines = split(text, '\n');
    std::vector<double> xs, ys;
    bool seen_header = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto line = trim(lines[i]);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (!seen_header) {
            if (cells.size() != 2 || trim(cells[0]) != "x" || trim(cells[1]) != "y")
                fail(source, line_no, "expected header 'x,y'");
            seen_header = true;
            continue;
        }
        if (cells.size() != 2) fail(source, line_no, "expected 2 columns, found " + std::to_string(cells.size()));
        double x = 0.0, y = 0.0;
        if (!parse_number(cells[0], x))
            fail(source, line_no, "non-numeric value '" + std::string(trim(cells[0])) + "' in column x");
        if (!parse_number(cells[1], y))
            fail(source, line_no, "non-numeric value '" + std::string(trim(cells[1])) + "' in column y");
        if (!std::isfinite(x) || !std::isfinite(y)) fail(source, line_no, "non-finite input");
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.empty()) fail(source, "empty sequence");
    if (xs.size() < 2) fail(source, "too few rows (need at least 2 samples, found " + std::to_string(xs.size()) + ")");
    return Dataset(std::move(xs), std::move(ys));
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    return parse_dataset_csv(read_file(path), path.string());
}

std::string embedding_to_json(const MIEmbedding& e) {
    std::string out = "{\n";
    out += "  \"schema_version\": 1,\n";
    out += "  \"bin_ceiling\": " + std::to_string(e.bin_ceiling) + ",\n";
    out += "  \"window_spec\": " + (e.window_spec ? window_spec_json(*e.window_spec) : std::string("null")) + ",\n";
    out += "  \"label\": " + (e.label ? json_string(class_name(*e.label)) : std::string("null")) + ",\n";
    out += "  \"scores\": ";
    append_array(out, e.scores);
    out += "\n}\n";
    return out;
}

MIEmbedding parse_embedding_json(std::string_view text, std::string_view source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        fail(source, std::string("invalid JSON: ") + err.what());
    }
    try {
        if (j.at("schema_version").get<int>() != 1) fail(source, "unsupported schema_version");
        const int bin_ceiling = j.at("bin_ceiling").get<int>();
        std::optional<WindowSpec> window_spec;
        if (const auto& w = j.at("window_spec"); !w.is_null()) {
            window_spec = WindowSpec{w.at("sizes").get<std::vector<std::size_t>>(),
                                     w.at("stride_fraction").get<double>(), w.at("nx").get<int>(),
                                     w.at("ny").get<int>()};
        }
        std::optional<RelationshipClass> label;
        if (const auto& l = j.at("label"); !l.is_null()) label = parse_class(l.get<std::string>());
        return MIEmbedding{j.at("scores").get<std::vector<double>>(), bin_ceiling, std::move(window_spec), label};
    } catch (const json::exception& err) {
        fail(source, std::string("bad embedding: ") + err.what());
    } catch (const std::invalid_argument& err) {
        fail(source, err.what());
    }
}

MIEmbedding read_embedding_json(const std::filesystem::path& path) {
    return parse_embedding_json(read_file(path), path.string());
}

std::string similarity_to_csv(const SimilarityMatrix& m) {
    std::string out = "class";
    for (auto c : m.classes) (out += ',') += class_name(c);
    out += '\n';
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        out += class_name(m.classes[i]);
        for (double v : m.means[i]) (out += ',') += format_4dp(v);
        out += '\n';
    }
    return out;
}

SimilarityMatrix parse_similarity_csv(std::string_view text, std::string_view source) {
    SimilarityMatrix m;
    const auto lines = split(text, '\n');
    std::size_t line_no = 0;
    for (const auto raw : lines) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        try {
            if (line_no == 1) {
                if (trim(cells[0]) != "class") fail(source, line_no, "expected header starting with 'class'");
                for (std::size_t i = 1; i < cells.size(); ++i) m.classes.push_back(parse_class(trim(cells[i])));
                continue;
            }
            if (cells.size() != m.classes.size() + 1) fail(source, line_no, "row width does not match header");
            const auto row = m.means.size();
            if (row >= m.classes.size() || parse_class(trim(cells[0])) != m.classes[row])
                fail(source, line_no, "row label does not match header order");
        } catch (const std::invalid_argument& err) {
            fail(source, line_no, err.what());
        }
        std::vector<double> values;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            double v = 0.0;
            if (!parse_number(cells[i], v)) fail(source, line_no, "non-numeric value");
            values.push_back(v);
        }
        m.means.push_back(std::move(values));
    }
    if (m.means.size() != m.classes.size()) fail(source, "matrix is not square");
    return m;
}

std::string manifest_to_json(const Manifest& m) {
    std::string out = "{\n";
    out += "  \"schema_version\": 1,\n";
    out += "  \"seed\": " + std::to_string(m.seed) + ",\n";
    out += "  \"per_class\": " + std::to_string(m.per_class) + ",\n";
    out += "  \"noise_grid\": ";
    append_array(out, m.noise_grid);
    out += ",\n  \"datasets\": [";
    for (std::size_t i = 0; i < m.datasets.size(); ++i) {
        const auto& d = m.datasets[i];
        out += i ? ",\n    {" : "\n    {";
        out += "\"file\": " + json_string(d.file);
        out += ", \"label\": " + json_string(class_name(d.params.cls));
        out += ", \"seed\": " + std::to_string(d.params.seed);
        out += ", \"params\": {\"coefficients\": ";
        append_array(out, d.params.coefficients);
        out += ", \"noise_sigma\": " + format_exact(d.params.noise_sigma);
        out += ", \"x_low\": " + format_exact(d.params.x_low);
        out += ", \"x_high\": " + format_exact(d.params.x_high);
        out += ", \"n\": " + std::to_string(d.params.n) + "}}";
    }
    out += m.datasets.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

Manifest parse_manifest_json(std::string_view text, std::string_view source) {
    try {
        const auto j = json::parse(text);
        Manifest m;
        m.seed = j.at("seed").get<std::uint64_t>();
        m.per_class = j.at("per_class").get<std::size_t>();
        m.noise_grid = j.at("noise_grid").get<std::vector<double>>();
        for (const auto& d : j.at("datasets")) {
            ManifestEntry e;
            e.file = d.at("file").get<std::string>();
            e.params.cls = parse_class(d.at("label").get<std::string>());
            e.params.seed = d.at("seed").get<std::uint64_t>();
            const auto& p = d.at("params");
            e.params.coefficients = p.at("coefficients").get<std::vector<double>>();
            e.params.noise_sigma = p.at("noise_sigma").get<double>();
            e.params.x_low = p.at("x_low").get<double>();
            e.params.x_high = p.at("x_high").get<double>();
            e.params.n = p.at("n").get<std::size_t>();
            m.datasets.push_back(std::move(e));
        }
        return m;
    } catch (const json::exception& err) {
        fail(source, std::string("bad manifest: ") + err.what());
    } catch (const std::invalid_argument& err) {
        fail(source, err.what());
    }
}

std::string pca_to_csv(const std::vector<PcaRow>& rows) {
    std::string out = "file,label,pc1,pc2\n";
    for (const auto& r : rows) {
        out += r.file;
        out += ',';
        if (r.label) out += class_name(*r.label);
        out += ',' + format_exact(r.pc1) + ',' + format_exact(r.pc2) + '\n';
    }
    return out;
}

std::string profile_to_csv(const std::vector<ScaleProfile>& scales, const CorrelationProfile& corr) {
    std::string out = "section,window_size,center,mi,mi_gradient,pearson\n";
    for (const auto& s : scales) {
        const auto& p = s.profile;
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            out += "mi," + std::to_string(s.window_size) + ',' + format_exact(p.centers[i]) + ',' +
                   format_exact(p.values[i]) + ',';
            if (i < p.gradients.size()) out += format_exact(p.gradients[i]);
            out += ",\n";
        }
    }
    for (std::size_t k = 0; k < corr.bin_centers.size(); ++k) {
        out += "corr,," + format_exact(corr.bin_centers[k]) + ",,,";
        if (corr.correlations[k]) out += format_4dp(*corr.correlations[k]);
        out += '\n';
    }
    return out;
}

}  // namespace miembed::io
