#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pda/criteria.hpp"
#include "pda/detector.hpp"
#include "pda/dyad.hpp"
#include "pda/front_ledger.hpp"
#include "pda/synthgen.hpp"

namespace pda::io {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Output files are written whole then renamed into place, so readers never
// observe a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

// Dyad sets round-trip through `left,right,c1,...,cK`.
std::string dyads_to_csv(std::span<const Dyad> dyads);
std::vector<Dyad> dyads_from_csv(std::string_view text);
void write_dyads_csv(const std::filesystem::path& path, std::span<const Dyad> dyads);
std::vector<Dyad> read_dyads_csv(const std::filesystem::path& path);

// Ledger export: `dyad_index,depth`.
std::string ledger_to_csv(const FrontLedger& ledger);
std::vector<std::uint32_t> depths_from_csv(std::string_view text);

// Headerless numeric matrix, one row per line.
std::string matrix_to_csv(std::span<const double> values, std::size_t rows,
                          std::size_t cols);
std::vector<double> matrix_from_csv(std::string_view text, std::size_t& rows,
                                    std::size_t& cols);
void write_matrix_csv(const std::filesystem::path& path, std::span<const double> values,
                      std::size_t rows, std::size_t cols);
std::vector<double> read_matrix_csv(const std::filesystem::path& path, std::size_t& rows,
                                    std::size_t& cols);

// Trajectories: `traj_id,t,x,y`, grouped by id with ascending t.
std::string trajectories_to_csv(std::span<const Trajectory> trajectories);
std::vector<Trajectory> trajectories_from_csv(std::string_view text);
void write_trajectories_csv(const std::filesystem::path& path,
                            std::span<const Trajectory> trajectories);
std::vector<Trajectory> read_trajectories_csv(const std::filesystem::path& path);

// Labels: `sample_id,label` with label 0/1.
std::string labels_to_csv(std::span<const std::uint8_t> labels);
std::vector<std::uint8_t> labels_from_csv(std::string_view text);

// Categorical samples: `sample_id,group,attr,value` plus a JSON schema
// manifest carrying the cardinalities.
void write_categorical_csv(const std::filesystem::path& csv_path,
                           const std::filesystem::path& schema_path,
                           const CategoricalDataset& data);
CategoricalDataset read_categorical_csv(const std::filesystem::path& csv_path,
                                        const std::filesystem::path& schema_path);

// Model persistence: manifest.json + ledger.csv + stack_<l>.csv. Depth
// assignments round-trip bit-exactly.
void save_model(const std::filesystem::path& dir, const PdaModel& model,
                std::span<const std::string> criterion_names);
struct LoadedModel {
    PdaModel model;
    std::vector<std::string> criterion_names;
};
LoadedModel load_model(const std::filesystem::path& dir);

// Stack manifest: JSON naming each criterion and its train (and optionally
// test) matrix CSV, resolved relative to the manifest location.
struct StackManifest {
    std::vector<std::string> names;
    std::vector<std::filesystem::path> train_files;
    std::vector<std::filesystem::path> test_files;  // empty when absent
};
StackManifest read_stack_manifest(const std::filesystem::path& path);
DissimilarityStack load_stack(const StackManifest& manifest);
// K rows per test sample: result[t] is a K x N set of rows.
std::vector<std::vector<std::vector<double>>> load_test_rows(const StackManifest& manifest,
                                                             std::size_t train_size);

}  // namespace pda::io
