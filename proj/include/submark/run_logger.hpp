#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "submark/algorithms.hpp"

namespace submark {

/// Summary line for one run inside a meta file.
struct RunMetaEntry {
    uint64_t seed = 0;
    int64_t evaluations = 0;
    double final_fitness = 0.0;
};

/// One meta record per (algorithm, problem, instance) cell.
struct ExperimentMeta {
    std::string suite;
    std::string algorithm;
    std::map<std::string, double> parameters;
    int problem_id = 0;
    std::string problem_name;
    std::string problem_key;
    int64_t dimension = 0;
    int instance = 1;
    std::string instance_path;
    std::string cost;
    int64_t budget = 0;
    std::vector<RunMetaEntry> runs;
};

/// A run reconstructed from disk: improvement records plus the final state.
struct LoadedRun {
    uint64_t seed = 0;
    std::vector<ImprovementRecord> records;
    int64_t evaluations = 0;
    double final_fitness = 0.0;
};

struct LoadedCell {
    ExperimentMeta meta;
    std::vector<LoadedRun> runs;
};

struct Dataset {
    std::vector<LoadedCell> cells;
};

/// Directory holding the data and meta files of one cell:
/// `<root>/<suite>/data_f<pid>_<pname>`.
std::filesystem::path cell_directory(const std::filesystem::path& root,
                                     const std::string& suite, int problem_id,
                                     const std::string& problem_name);

/// Appends one run to the cell's .dat file, creating directories as needed.
/// Each run starts with the header line `"evaluations" "raw_y"`, followed by
/// one `<evaluation> <fitness>` line per improvement record and a forced
/// final line at the run's last evaluation. Returns the file path.
///
/// Throws std::invalid_argument when the trace violates the record
/// invariants (nonempty, first record at evaluation 1, strictly increasing
/// evaluations and fitness).
std::filesystem::path write_trace(const RunTrace& trace,
                                  const std::filesystem::path& root,
                                  const std::string& suite);

/// Writes (replaces) the cell's meta file. Returns the file path.
std::filesystem::path write_meta(const ExperimentMeta& meta,
                                 const std::filesystem::path& root);

/// Deletes a cell's data and meta files so a fresh append sequence starts
/// clean; rerunning a grid then reproduces files byte for byte.
void reset_cell(const std::filesystem::path& root, const std::string& suite,
                int problem_id, const std::string& problem_name,
                int64_t dimension, int instance);

/// Loads every cell below `root`. Validates format versions, per-run record
/// invariants, and meta/data consistency (run counts, evaluation counts,
/// final fitness values). Throws std::runtime_error with file and line
/// diagnostics on malformed input.
Dataset read_dataset(const std::filesystem::path& root);

}  // namespace submark
