#include "submark/run_logger.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace submark {

namespace {

constexpr const char* kDatHeader = "\"evaluations\" \"raw_y\"";
constexpr const char* kMetaVersionLine = "submark-meta 1";

std::string format_fitness(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", value);
    return buffer;
}

std::string render_parameters(const std::map<std::string, double>& parameters) {
    if (parameters.empty()) return "-";
    std::string out;
    for (const auto& [key, value] : parameters) {
        if (!out.empty()) out += ',';
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.17g", value);
        out += key;
        out += '=';
        out += buffer;
    }
    return out;
}

void validate_trace(const RunTrace& trace) {
    if (trace.records.empty()) {
        throw std::invalid_argument("trace has no records");
    }
    if (trace.records.front().evaluation != 1) {
        throw std::invalid_argument("first record must be at evaluation 1");
    }
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        if (trace.records[i].evaluation <= trace.records[i - 1].evaluation ||
            trace.records[i].fitness <= trace.records[i - 1].fitness) {
            throw std::invalid_argument("records must strictly increase");
        }
    }
    if (trace.evaluations < trace.records.back().evaluation) {
        throw std::invalid_argument("evaluation count below last record");
    }
}

std::string data_stem(int64_t dimension, int instance) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "run_d%" PRId64 "_i%d", dimension, instance);
    return buffer;
}

[[noreturn]] void fail_at(const std::filesystem::path& path, int64_t line,
                          const std::string& message) {
    std::ostringstream out;
    out << path.string() << ":" << line << ": " << message;
    throw std::runtime_error(out.str());
}

int64_t parse_int_at(const std::filesystem::path& path, int64_t line,
                     const std::string& token) {
    int64_t value = 0;
    const auto* begin = token.data();
    const auto* end = begin + token.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        fail_at(path, line, "expected an integer, got '" + token + "'");
    }
    return value;
}

uint64_t parse_uint_at(const std::filesystem::path& path, int64_t line,
                       const std::string& token) {
    uint64_t value = 0;
    const auto* begin = token.data();
    const auto* end = begin + token.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        fail_at(path, line, "expected an unsigned integer, got '" + token + "'");
    }
    return value;
}

double parse_double_at(const std::filesystem::path& path, int64_t line,
                       const std::string& token) {
    if (token == "inf") return std::numeric_limits<double>::infinity();
    if (token == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        fail_at(path, line, "expected a number, got '" + token + "'");
    }
}

std::vector<std::string> split_whitespace(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

/// Splits a .dat file into runs. Each run's pair list includes the forced
/// final line; records are recovered as the strictly improving prefix.
std::vector<LoadedRun> read_data_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::vector<LoadedRun> runs;
    std::vector<std::pair<int64_t, double>> pairs;
    int64_t line_no = 0;
    int64_t run_start_line = 0;

    const auto flush_run = [&] {
        if (run_start_line == 0) return;
        if (pairs.empty()) fail_at(path, run_start_line, "run has no records");
        LoadedRun run;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto [evaluation, fitness] = pairs[i];
            if (i == 0) {
                if (evaluation != 1) {
                    fail_at(path, run_start_line + 1,
                            "first record must be at evaluation 1");
                }
                run.records.push_back({evaluation, fitness});
                continue;
            }
            const auto [prev_evaluation, prev_fitness] = pairs[i - 1];
            if (evaluation <= prev_evaluation || fitness < prev_fitness) {
                fail_at(path, run_start_line + static_cast<int64_t>(i) + 1,
                        "records must be increasing");
            }
            if (fitness == prev_fitness) {
                // Only the forced final line may repeat the best fitness.
                if (i + 1 != pairs.size()) {
                    fail_at(path, run_start_line + static_cast<int64_t>(i) + 1,
                            "non-final record repeats the fitness value");
                }
            } else {
                run.records.push_back({evaluation, fitness});
            }
        }
        run.evaluations = pairs.back().first;
        run.final_fitness = pairs.back().second;
        runs.push_back(std::move(run));
        pairs.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line == kDatHeader) {
            flush_run();
            run_start_line = line_no;
            continue;
        }
        if (run_start_line == 0) fail_at(path, line_no, "data before header line");
        const auto tokens = split_whitespace(line);
        if (tokens.size() != 2) {
            fail_at(path, line_no, "expected '<evaluations> <fitness>'");
        }
        pairs.emplace_back(parse_int_at(path, line_no, tokens[0]),
                           parse_double_at(path, line_no, tokens[1]));
    }
    flush_run();
    if (runs.empty()) fail_at(path, 1, "file holds no runs");
    return runs;
}

ExperimentMeta read_meta_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    ExperimentMeta meta;
    std::string line;
    int64_t line_no = 0;

    if (!std::getline(in, line)) fail_at(path, 1, "empty meta file");
    ++line_no;
    if (strip_cr(line) != kMetaVersionLine) {
        fail_at(path, 1, "unsupported meta format version (expected '" +
                             std::string(kMetaVersionLine) + "')");
    }

    std::map<std::string, std::string> fields;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto colon = line.find(": ");
        if (colon == std::string::npos) {
            fail_at(path, line_no, "expected '<key>: <value>'");
        }
        const std::string key = line.substr(0, colon);
        const std::string value = line.substr(colon + 2);
        if (key == "run") {
            const auto tokens = split_whitespace(value);
            if (tokens.size() != 3 || tokens[0].rfind("seed=", 0) != 0 ||
                tokens[1].rfind("evals=", 0) != 0 ||
                tokens[2].rfind("final=", 0) != 0) {
                fail_at(path, line_no,
                        "expected 'run: seed=<s> evals=<e> final=<f>'");
            }
            RunMetaEntry entry;
            entry.seed = parse_uint_at(path, line_no, tokens[0].substr(5));
            entry.evaluations = parse_int_at(path, line_no, tokens[1].substr(6));
            entry.final_fitness = parse_double_at(path, line_no, tokens[2].substr(6));
            meta.runs.push_back(entry);
            continue;
        }
        if (!fields.emplace(key, value).second) {
            fail_at(path, line_no, "duplicate key '" + key + "'");
        }
    }

    const auto require = [&](const char* key) -> const std::string& {
        const auto it = fields.find(key);
        if (it == fields.end()) {
            fail_at(path, line_no, "missing key '" + std::string(key) + "'");
        }
        return it->second;
    };

    meta.suite = require("suite");
    meta.algorithm = require("algorithm");
    meta.problem_id = static_cast<int>(parse_int_at(path, 0, require("problem_id")));
    meta.problem_name = require("problem_name");
    meta.problem_key = require("problem_key");
    meta.dimension = parse_int_at(path, 0, require("dimension"));
    meta.instance = static_cast<int>(parse_int_at(path, 0, require("instance")));
    meta.instance_path = require("instance_path");
    meta.cost = require("cost");
    meta.budget = parse_int_at(path, 0, require("budget"));

    const std::string& parameters = require("parameters");
    if (parameters != "-") {
        std::istringstream params(parameters);
        std::string item;
        while (std::getline(params, item, ',')) {
            const auto equals = item.find('=');
            if (equals == std::string::npos) {
                fail_at(path, 0, "malformed parameter '" + item + "'");
            }
            meta.parameters[item.substr(0, equals)] =
                parse_double_at(path, 0, item.substr(equals + 1));
        }
    }

    const int64_t declared = parse_int_at(path, 0, require("runs"));
    if (declared != std::ssize(meta.runs)) {
        fail_at(path, 0, "meta declares " + std::to_string(declared) +
                             " runs but lists " + std::to_string(meta.runs.size()));
    }
    return meta;
}

std::vector<std::filesystem::path> sorted_entries(const std::filesystem::path& dir,
                                                  bool directories) {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_directory() == directories) out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::filesystem::path cell_directory(const std::filesystem::path& root,
                                     const std::string& suite, int problem_id,
                                     const std::string& problem_name) {
    return root / suite / ("data_f" + std::to_string(problem_id) + "_" + problem_name);
}

std::filesystem::path write_trace(const RunTrace& trace,
                                  const std::filesystem::path& root,
                                  const std::string& suite) {
    validate_trace(trace);
    const auto dir = cell_directory(root, suite, trace.problem_id, trace.problem_name);
    std::filesystem::create_directories(dir);
    const auto path = dir / (data_stem(trace.dimension, trace.instance_id) + ".dat");

    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for append");
    out << kDatHeader << '\n';
    for (const auto& record : trace.records) {
        out << record.evaluation << ' ' << format_fitness(record.fitness) << '\n';
    }
    if (trace.records.back().evaluation != trace.evaluations) {
        out << trace.evaluations << ' ' << format_fitness(trace.final_fitness) << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
    return path;
}

std::filesystem::path write_meta(const ExperimentMeta& meta,
                                 const std::filesystem::path& root) {
    const auto dir = cell_directory(root, meta.suite, meta.problem_id, meta.problem_name);
    std::filesystem::create_directories(dir);
    const auto path = dir / (data_stem(meta.dimension, meta.instance) + ".info");

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for write");
    out << kMetaVersionLine << '\n';
    out << "suite: " << meta.suite << '\n';
    out << "algorithm: " << meta.algorithm << '\n';
    out << "parameters: " << render_parameters(meta.parameters) << '\n';
    out << "problem_id: " << meta.problem_id << '\n';
    out << "problem_name: " << meta.problem_name << '\n';
    out << "problem_key: " << meta.problem_key << '\n';
    out << "dimension: " << meta.dimension << '\n';
    out << "instance: " << meta.instance << '\n';
    out << "instance_path: " << meta.instance_path << '\n';
    out << "cost: " << meta.cost << '\n';
    out << "budget: " << meta.budget << '\n';
    out << "runs: " << meta.runs.size() << '\n';
    for (const auto& run : meta.runs) {
        out << "run: seed=" << run.seed << " evals=" << run.evaluations
            << " final=" << format_fitness(run.final_fitness) << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
    return path;
}

void reset_cell(const std::filesystem::path& root, const std::string& suite,
                int problem_id, const std::string& problem_name,
                int64_t dimension, int instance) {
    const auto dir = cell_directory(root, suite, problem_id, problem_name);
    const auto stem = data_stem(dimension, instance);
    std::filesystem::remove(dir / (stem + ".dat"));
    std::filesystem::remove(dir / (stem + ".info"));
}

Dataset read_dataset(const std::filesystem::path& root) {
    if (!std::filesystem::is_directory(root)) {
        throw std::runtime_error("dataset root " + root.string() +
                                 " is not a directory");
    }
    Dataset dataset;
    for (const auto& suite_dir : sorted_entries(root, true)) {
        for (const auto& cell_dir : sorted_entries(suite_dir, true)) {
            if (cell_dir.filename().string().rfind("data_f", 0) != 0) continue;
            for (const auto& meta_path : sorted_entries(cell_dir, false)) {
                if (meta_path.extension() != ".info") continue;
                LoadedCell cell;
                cell.meta = read_meta_file(meta_path);

                auto data_path = meta_path;
                data_path.replace_extension(".dat");
                if (!std::filesystem::exists(data_path)) {
                    throw std::runtime_error("missing data file " + data_path.string());
                }
                cell.runs = read_data_file(data_path);

                if (cell.runs.size() != cell.meta.runs.size()) {
                    throw std::runtime_error(
                        data_path.string() + ": holds " +
                        std::to_string(cell.runs.size()) + " runs but " +
                        meta_path.filename().string() + " declares " +
                        std::to_string(cell.meta.runs.size()));
                }
                for (std::size_t i = 0; i < cell.runs.size(); ++i) {
                    const auto& entry = cell.meta.runs[i];
                    auto& run = cell.runs[i];
                    if (run.evaluations != entry.evaluations ||
                        run.final_fitness != entry.final_fitness) {
                        throw std::runtime_error(
                            data_path.string() + ": run " + std::to_string(i + 1) +
                            " disagrees with its meta entry");
                    }
                    run.seed = entry.seed;
                }
                dataset.cells.push_back(std::move(cell));
            }
        }
    }
    return dataset;
}

}  // namespace submark
