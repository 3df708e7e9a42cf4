#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aigsynt/aiger.hpp"
#include "aigsynt/runner.hpp"

namespace aigsynt::arena {

enum class RunVerdict { realizable, unrealizable, timeout, error };
std::string to_string(RunVerdict v);

enum class Mode { realizability, synthesis };

struct SolverConfig {
    std::string name;
    Algorithm algorithm = Algorithm::classic;
    std::map<std::string, std::string> flags;
    std::vector<std::string> members;  // portfolio member config names
};

// Line-oriented config format: `name = algorithm [flag=value ...]`.
// Portfolio members are given as members=a,b,c and must be defined earlier.
std::vector<SolverConfig> parse_configs(const std::string& text);

struct RunRecord {
    std::string benchmark;  // file name without directory
    std::string config;
    RunVerdict verdict = RunVerdict::error;
    double cpu_seconds = 0.0;
    double wall_seconds = 0.0;
    std::optional<std::size_t> solution_size;  // realizable synthesis runs only
    std::optional<bool> verified;
};

struct RunOptions {
    double timeout = 60.0;     // CPU seconds (sequential), wall seconds (portfolio)
    double mc_timeout = 3600.0;
    Mode mode = Mode::realizability;
    unsigned jobs = 1;
    std::string out_dir;    // solutions land in <out_dir>/solutions
    std::string self_exe;   // arena binary used to spawn isolated workers
    bool quiet = false;
};

// Executes one solver configuration on one benchmark in isolated worker
// processes with hard limits; timing is measured by the host.
RunRecord run_one(const SolverConfig& cfg, const std::vector<SolverConfig>& all_configs,
                  const std::string& benchmark_path, const RunOptions& opts);

std::vector<RunRecord> run_all(const std::vector<SolverConfig>& cfgs,
                               const std::vector<std::string>& benchmark_paths,
                               const RunOptions& opts);

struct ConfigScore {
    std::string config;
    unsigned solved = 0;   // correct answers
    unsigned wrong = 0;
    unsigned unique_solved = 0;
    double points = 0.0;
    double quality = 0.0;
};

struct Ranking {
    std::vector<ConfigScore> scores;  // sorted by points, then name
    std::map<std::string, std::map<std::string, unsigned>> per_category;
    std::vector<std::pair<std::string, std::string>> solved_runs;  // (config, benchmark)
    std::vector<std::string> notes;
};

// 2 - log10(size_new/size_ref), clamped at zero.
double quality_points(std::size_t size_new, std::size_t size_ref);

// Basic +1/-4 scheme. Ground truth comes from the meta STATUS; unknown status
// is resolved by majority vote (realizability) or by any verified solution
// (synthesis). In synthesis mode the quality totals are filled in as well.
Ranking score(const std::vector<RunRecord>& records,
              const std::map<std::string, MetaInfo>& metas, Mode mode);

// Category = benchmark family prefix of the file name (parameters stripped).
std::string category_of(const std::string& benchmark_name);

struct SelectionRequest {
    std::map<std::string, unsigned> per_category;  // overrides the default
    unsigned default_count = 16;
    std::uint64_t seed = 0;
};

struct Selection {
    std::vector<std::string> files;
    std::vector<std::string> notes;
};

// Difficulty-stratified choice per category over the SOLVED_BY ratio buckets
// {0, (0,1/3], (1/3,2/3], (2/3,1]}; the unsolved bucket gets its even share
// where available and shortfalls are redistributed evenly. Deterministic for
// a fixed seed.
Selection select_benchmarks(const std::vector<std::pair<std::string, MetaInfo>>& library,
                            const SelectionRequest& request);

// Writes runs.csv, cactus.csv, categories.csv and ranking.txt.
void emit_results(const std::vector<RunRecord>& records, const Ranking& ranking,
                  const std::string& out_dir);

std::string render_ranking(const Ranking& ranking, Mode mode);

std::vector<RunRecord> read_records_csv(const std::string& path);

}  // namespace aigsynt::arena
