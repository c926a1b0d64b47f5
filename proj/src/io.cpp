#include "pda/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace pda::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

namespace {

long parse_long(std::string_view text) {
    long value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

// Iterate non-empty lines, tolerating trailing \r\n.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) fn(line);
        start = end + 1;
    }
}

}  // namespace

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string dyads_to_csv(std::span<const Dyad> dyads) {
    if (dyads.empty()) throw std::invalid_argument("dyads_to_csv: empty set");
    const std::size_t k = dyads.front().values.size();
    std::string out = "left,right";
    for (std::size_t c = 1; c <= k; ++c) out += ",c" + std::to_string(c);
    out += '\n';
    for (const Dyad& d : dyads) {
        out += std::to_string(d.left);
        out += ',';
        out += std::to_string(d.right);
        for (double v : d.values) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::vector<Dyad> dyads_from_csv(std::string_view text) {
    std::vector<Dyad> dyads;
    bool header = true;
    std::size_t k = 0;
    for_each_line(text, [&](std::string_view line) {
        const auto fields = split(line, ',');
        if (header) {
            if (fields.size() < 3 || fields[0] != "left" || fields[1] != "right") {
                throw std::invalid_argument("dyad csv: bad header");
            }
            k = fields.size() - 2;
            header = false;
            return;
        }
        if (fields.size() != k + 2) throw std::invalid_argument("dyad csv: ragged row");
        Dyad d;
        d.left = static_cast<std::int32_t>(parse_long(fields[0]));
        d.right = static_cast<std::int32_t>(parse_long(fields[1]));
        for (std::size_t c = 0; c < k; ++c) d.values.push_back(parse_double(fields[c + 2]));
        dyads.push_back(std::move(d));
    });
    if (header) throw std::invalid_argument("dyad csv: empty file");
    return dyads;
}

void write_dyads_csv(const fs::path& path, std::span<const Dyad> dyads) {
    write_text_atomic(path, dyads_to_csv(dyads));
}

std::vector<Dyad> read_dyads_csv(const fs::path& path) {
    return dyads_from_csv(read_text(path));
}

std::string ledger_to_csv(const FrontLedger& ledger) {
    std::string out = "dyad_index,depth\n";
    for (std::size_t i = 0; i < ledger.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += std::to_string(ledger.depth_of(i));
        out += '\n';
    }
    return out;
}

std::vector<std::uint32_t> depths_from_csv(std::string_view text) {
    std::vector<std::uint32_t> depths;
    bool header = true;
    for_each_line(text, [&](std::string_view line) {
        if (header) {
            if (line != "dyad_index,depth") {
                throw std::invalid_argument("ledger csv: bad header");
            }
            header = false;
            return;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 2) throw std::invalid_argument("ledger csv: ragged row");
        const long index = parse_long(fields[0]);
        if (index != static_cast<long>(depths.size())) {
            throw std::invalid_argument("ledger csv: indices must be 0..n-1 in order");
        }
        depths.push_back(static_cast<std::uint32_t>(parse_long(fields[1])));
    });
    return depths;
}

std::string matrix_to_csv(std::span<const double> values, std::size_t rows,
                          std::size_t cols) {
    if (values.size() != rows * cols) throw std::invalid_argument("matrix size mismatch");
    std::string out;
    out.reserve(values.size() * 20);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (j) out += ',';
            out += format_double(values[i * cols + j]);
        }
        out += '\n';
    }
    return out;
}

std::vector<double> matrix_from_csv(std::string_view text, std::size_t& rows,
                                    std::size_t& cols) {
    std::vector<double> values;
    rows = 0;
    cols = 0;
    for_each_line(text, [&](std::string_view line) {
        const auto fields = split(line, ',');
        if (rows == 0) {
            cols = fields.size();
        } else if (fields.size() != cols) {
            throw std::invalid_argument("matrix csv: ragged row");
        }
        for (auto f : fields) values.push_back(parse_double(f));
        ++rows;
    });
    return values;
}

void write_matrix_csv(const fs::path& path, std::span<const double> values,
                      std::size_t rows, std::size_t cols) {
    write_text_atomic(path, matrix_to_csv(values, rows, cols));
}

std::vector<double> read_matrix_csv(const fs::path& path, std::size_t& rows,
                                    std::size_t& cols) {
    return matrix_from_csv(read_text(path), rows, cols);
}

std::string trajectories_to_csv(std::span<const Trajectory> trajectories) {
    std::string out = "traj_id,t,x,y\n";
    for (std::size_t id = 0; id < trajectories.size(); ++id) {
        for (std::size_t t = 0; t < trajectories[id].size(); ++t) {
            out += std::to_string(id);
            out += ',';
            out += std::to_string(t);
            out += ',';
            out += format_double(trajectories[id].points[t].x);
            out += ',';
            out += format_double(trajectories[id].points[t].y);
            out += '\n';
        }
    }
    return out;
}

std::vector<Trajectory> trajectories_from_csv(std::string_view text) {
    std::vector<Trajectory> out;
    bool header = true;
    long current_id = -1;
    long last_t = -1;
    for_each_line(text, [&](std::string_view line) {
        if (header) {
            if (line != "traj_id,t,x,y") {
                throw std::invalid_argument("trajectory csv: bad header");
            }
            header = false;
            return;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 4) throw std::invalid_argument("trajectory csv: ragged row");
        const long id = parse_long(fields[0]);
        const long t = parse_long(fields[1]);
        if (id != current_id) {
            if (id != current_id + 1) {
                throw std::invalid_argument("trajectory csv: ids must be grouped 0..n-1");
            }
            current_id = id;
            last_t = -1;
            out.emplace_back();
        }
        if (t <= last_t) {
            throw std::invalid_argument("trajectory csv: t must ascend within a trajectory");
        }
        last_t = t;
        out.back().points.push_back({parse_double(fields[2]), parse_double(fields[3])});
    });
    if (out.empty()) throw std::invalid_argument("trajectory csv: no trajectories");
    return out;
}

void write_trajectories_csv(const fs::path& path,
                            std::span<const Trajectory> trajectories) {
    write_text_atomic(path, trajectories_to_csv(trajectories));
}

std::vector<Trajectory> read_trajectories_csv(const fs::path& path) {
    return trajectories_from_csv(read_text(path));
}

std::string labels_to_csv(std::span<const std::uint8_t> labels) {
    std::string out = "sample_id,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += labels[i] ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::vector<std::uint8_t> labels_from_csv(std::string_view text) {
    std::vector<std::uint8_t> labels;
    bool header = true;
    for_each_line(text, [&](std::string_view line) {
        if (header) {
            if (line != "sample_id,label") throw std::invalid_argument("labels csv: bad header");
            header = false;
            return;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 2) throw std::invalid_argument("labels csv: ragged row");
        const long v = parse_long(fields[1]);
        if (v != 0 && v != 1) throw std::invalid_argument("labels csv: label must be 0 or 1");
        labels.push_back(static_cast<std::uint8_t>(v));
    });
    return labels;
}

void write_categorical_csv(const fs::path& csv_path, const fs::path& schema_path,
                           const CategoricalDataset& data) {
    validate_dataset(data);
    std::string out = "sample_id,group,attr,value\n";
    for (std::size_t s = 0; s < data.samples.size(); ++s) {
        const auto& sample = data.samples[s];
        for (std::size_t g = 0; g < sample.groups.size(); ++g) {
            for (std::size_t a = 0; a < sample.groups[g].size(); ++a) {
                out += std::to_string(s);
                out += ',';
                out += std::to_string(g);
                out += ',';
                out += std::to_string(a);
                out += ',';
                out += std::to_string(sample.groups[g][a]);
                out += '\n';
            }
        }
    }
    write_text_atomic(csv_path, out);

    json schema;
    schema["cardinalities"] = data.schema.cardinalities;
    if (!data.labels.empty()) {
        schema["labels"] = std::vector<int>(data.labels.begin(), data.labels.end());
    }
    write_text_atomic(schema_path, schema.dump(2) + "\n");
}

CategoricalDataset read_categorical_csv(const fs::path& csv_path,
                                        const fs::path& schema_path) {
    CategoricalDataset data;
    const json schema = json::parse(read_text(schema_path));
    data.schema.cardinalities =
        schema.at("cardinalities").get<std::vector<std::vector<int>>>();
    if (schema.contains("labels")) {
        const auto labels = schema.at("labels").get<std::vector<int>>();
        data.labels.assign(labels.begin(), labels.end());
    }

    bool header = true;
    for_each_line(read_text(csv_path), [&](std::string_view line) {
        if (header) {
            if (line != "sample_id,group,attr,value") {
                throw std::invalid_argument("categorical csv: bad header");
            }
            header = false;
            return;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 4) throw std::invalid_argument("categorical csv: ragged row");
        const std::size_t s = static_cast<std::size_t>(parse_long(fields[0]));
        const std::size_t g = static_cast<std::size_t>(parse_long(fields[1]));
        const std::size_t a = static_cast<std::size_t>(parse_long(fields[2]));
        if (s >= data.samples.size()) {
            if (s != data.samples.size()) {
                throw std::invalid_argument("categorical csv: sample ids must be grouped");
            }
            CategoricalSample sample;
            sample.groups.resize(data.schema.groups());
            for (std::size_t gi = 0; gi < data.schema.groups(); ++gi) {
                sample.groups[gi].assign(data.schema.cardinalities[gi].size(), 0);
            }
            data.samples.push_back(std::move(sample));
        }
        data.samples[s].groups.at(g).at(a) = static_cast<int>(parse_long(fields[3]));
    });
    validate_dataset(data);
    return data;
}

void save_model(const fs::path& dir, const PdaModel& model,
                std::span<const std::string> criterion_names) {
    if (criterion_names.size() != model.criteria()) {
        throw std::invalid_argument("save_model: one name per criterion required");
    }
    fs::create_directories(dir);

    json manifest;
    manifest["n"] = model.train_size();
    manifest["criteria"] = model.criteria();
    manifest["k"] = model.neighbor_counts;
    manifest["fronts"] = model.front_count();
    manifest["sorter"] = std::string(to_string(model.sorter));
    manifest["criterion_names"] =
        std::vector<std::string>(criterion_names.begin(), criterion_names.end());
    std::vector<std::string> files;
    for (std::size_t l = 0; l < model.criteria(); ++l) {
        files.push_back("stack_" + std::to_string(l) + ".csv");
    }
    manifest["stack_files"] = files;
    write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
    write_text_atomic(dir / "ledger.csv", ledger_to_csv(model.ledger));
    for (std::size_t l = 0; l < model.criteria(); ++l) {
        write_matrix_csv(dir / files[l], model.stack.matrix(l), model.train_size(),
                         model.train_size());
    }
}

LoadedModel load_model(const fs::path& dir) {
    const json manifest = json::parse(read_text(dir / "manifest.json"));
    const std::size_t n = manifest.at("n").get<std::size_t>();
    const std::size_t k = manifest.at("criteria").get<std::size_t>();

    std::vector<std::vector<double>> matrices;
    for (const auto& file : manifest.at("stack_files").get<std::vector<std::string>>()) {
        std::size_t rows = 0, cols = 0;
        matrices.push_back(read_matrix_csv(dir / file, rows, cols));
        if (rows != n || cols != n) {
            throw std::invalid_argument("load_model: stack matrix shape mismatch");
        }
    }
    if (matrices.size() != k) {
        throw std::invalid_argument("load_model: criterion count mismatch");
    }

    LoadedModel loaded;
    loaded.model.stack = DissimilarityStack::from_matrices(std::move(matrices), n);
    loaded.model.neighbor_counts = manifest.at("k").get<std::vector<int>>();
    loaded.model.sorter = sorter_from_string(manifest.at("sorter").get<std::string>());
    loaded.criterion_names =
        manifest.at("criterion_names").get<std::vector<std::string>>();

    // Rebuild the ledger from the saved depths; fronts and sorted views are
    // derived deterministically, so queries reproduce bit-exactly.
    const auto depths = depths_from_csv(read_text(dir / "ledger.csv"));
    const std::size_t dyads = n * (n - 1) / 2;
    if (depths.size() != dyads) {
        throw std::invalid_argument("load_model: ledger size mismatch");
    }
    std::vector<double> coords(dyads * k);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++row) {
            for (std::size_t l = 0; l < k; ++l) {
                coords[row * k + l] = loaded.model.stack.at(l, i, j);
            }
        }
    }
    loaded.model.ledger = FrontLedger::from_depths(std::move(coords), k, depths);
    if (loaded.model.front_count() != manifest.at("fronts").get<std::size_t>()) {
        throw std::invalid_argument("load_model: front count mismatch");
    }
    return loaded;
}

StackManifest read_stack_manifest(const fs::path& path) {
    const json doc = json::parse(read_text(path));
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    StackManifest manifest;
    for (const auto& entry : doc.at("criteria")) {
        manifest.names.push_back(entry.at("name").get<std::string>());
        manifest.train_files.push_back(base / entry.at("train").get<std::string>());
        if (entry.contains("test")) {
            manifest.test_files.push_back(base / entry.at("test").get<std::string>());
        }
    }
    if (manifest.names.empty()) {
        throw std::invalid_argument("stack manifest: no criteria listed");
    }
    if (!manifest.test_files.empty() &&
        manifest.test_files.size() != manifest.names.size()) {
        throw std::invalid_argument("stack manifest: test files must cover every criterion");
    }
    return manifest;
}

DissimilarityStack load_stack(const StackManifest& manifest) {
    std::vector<std::vector<double>> matrices;
    std::size_t n = 0;
    for (const auto& file : manifest.train_files) {
        std::size_t rows = 0, cols = 0;
        matrices.push_back(read_matrix_csv(file, rows, cols));
        if (rows != cols) throw std::invalid_argument("stack matrix must be square");
        if (n == 0) n = rows;
        if (rows != n) throw std::invalid_argument("stack matrices disagree on N");
    }
    return DissimilarityStack::from_matrices(std::move(matrices), n);
}

std::vector<std::vector<std::vector<double>>> load_test_rows(const StackManifest& manifest,
                                                             std::size_t train_size) {
    if (manifest.test_files.empty()) {
        throw std::invalid_argument("stack manifest has no test matrices");
    }
    std::vector<std::vector<double>> per_criterion;
    std::size_t tests = 0;
    for (const auto& file : manifest.test_files) {
        std::size_t rows = 0, cols = 0;
        per_criterion.push_back(read_matrix_csv(file, rows, cols));
        if (cols != train_size) {
            throw std::invalid_argument("test matrix columns must equal train N");
        }
        if (tests == 0) tests = rows;
        if (rows != tests) throw std::invalid_argument("test matrices disagree on rows");
    }
    std::vector<std::vector<std::vector<double>>> out(
        tests, std::vector<std::vector<double>>(manifest.names.size()));
    for (std::size_t t = 0; t < tests; ++t) {
        for (std::size_t l = 0; l < manifest.names.size(); ++l) {
            const auto& m = per_criterion[l];
            out[t][l].assign(m.begin() + t * train_size, m.begin() + (t + 1) * train_size);
        }
    }
    return out;
}

}  // namespace pda::io
