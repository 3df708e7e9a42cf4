#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "aigsynt/arena.hpp"
#include "aigsynt/benchgen.hpp"
#include "aigsynt/runner.hpp"
#include "aigsynt/verifier.hpp"

using namespace aigsynt;
namespace fs = std::filesystem;

namespace {

std::string self_exe_path() {
    char buf[4096];
    ssize_t n = readlink("/proc/self/exe", buf, sizeof buf - 1);
    if (n <= 0) throw std::runtime_error("cannot resolve own executable path");
    buf[n] = '\0';
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> list_benchmarks(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".aag")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no .aag files in " + dir);
    return files;
}

std::map<std::string, MetaInfo> read_metas(const std::vector<std::string>& paths) {
    std::map<std::string, MetaInfo> metas;
    for (const std::string& p : paths) {
        try {
            metas[fs::path(p).filename().string()] = parse_meta(read_aag_file(p));
        } catch (const std::exception& e) {
            std::cerr << "warning: " << p << ": " << e.what() << "\n";
        }
    }
    return metas;
}

std::map<std::string, std::string> parse_flag_list(const std::string& joined) {
    std::map<std::string, std::string> flags;
    std::string tok;
    std::istringstream in(joined);
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("flag '" + tok + "' is not key=value");
        flags[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return flags;
}

int cmd_worker(const std::string& benchmark, const std::string& algorithm,
               const std::string& flags, bool synthesize, const std::string& solution_out,
               const std::string& config_name) {
    auto alg = algorithm_from_string(algorithm);
    if (!alg || *alg == Algorithm::portfolio) {
        std::cerr << "worker: bad algorithm '" << algorithm << "'\n";
        return 2;
    }
    Circuit spec = read_aag_file(benchmark);
    SolveOptions opts = options_from_flags(parse_flag_list(flags));
    opts.synthesize = synthesize;
    SolveRun run = run_solver(*alg, spec, opts);

    std::size_t size = 0;
    if (run.solution) {
        Circuit out = run.solution->circuit;
        out.comments.push_back("synthesis: config=" + (config_name.empty() ? algorithm : config_name) +
                               " algorithm=" + algorithm +
                               " iterations=" + std::to_string(run.iterations) +
                               " gates=" + std::to_string(run.solution->gate_count));
        if (!solution_out.empty()) write_aag_file(out, solution_out);
        size = run.solution->gate_count;
    }
    std::cout << "RESULT verdict=" << (run.realizable ? "realizable" : "unrealizable")
              << " iterations=" << run.iterations << " peak_nodes=" << run.peak_nodes
              << " solve_s=" << run.solve_seconds;
    if (run.solution) std::cout << " size=" << size;
    std::cout << std::endl;
    return 0;
}

int cmd_mc(const std::string& spec_path, const std::string& solution_path, double timeout) {
    Circuit spec = read_aag_file(spec_path);
    Circuit sol = read_aag_file(solution_path);
    SyntacticReport syn = check_syntactic(spec, sol);
    if (!syn.pass) {
        for (const std::string& issue : syn.issues) std::cerr << "conformance: " << issue << "\n";
        std::cout << "MC status=nonconforming" << std::endl;
        return 0;
    }
    Verdict v = model_check(sol, timeout);
    std::cout << "MC status=" << to_string(v.status)
              << " iterations=" << v.reachable_iterations << std::endl;
    if (v.status == Verdict::Status::falsified) std::cerr << format_witness(v.witness);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safety-synthesis competition harness"};
    app.require_subcommand(1);

    // run
    CLI::App* run = app.add_subcommand("run", "run solver configurations on a benchmark set");
    std::string configs_file, benchmarks_dir, out_dir = "arena-out", mode_str = "real";
    double timeout = 60.0, mc_timeout = 3600.0;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    bool quiet = false;
    run->add_option("--configs", configs_file, "solver configuration file")->required();
    run->add_option("--benchmarks", benchmarks_dir, "directory of .aag files")->required();
    run->add_option("--timeout", timeout, "per-run timeout in seconds")->capture_default_str();
    run->add_option("--mc-timeout", mc_timeout, "model-checking timeout")->capture_default_str();
    run->add_option("--mode", mode_str, "real | synt")->capture_default_str();
    run->add_option("--jobs", jobs, "concurrent workers")->capture_default_str();
    run->add_option("--seed", seed, "determinism seed (recorded)")->capture_default_str();
    run->add_option("--out", out_dir, "output directory")->capture_default_str();
    run->add_flag("--quiet", quiet, "suppress progress output");

    // score
    CLI::App* score_cmd = app.add_subcommand("score", "recompute rankings from a runs.csv");
    std::string records_file;
    score_cmd->add_option("--records", records_file, "runs.csv from a previous run")->required();
    score_cmd->add_option("--benchmarks", benchmarks_dir, "directory of .aag files")->required();
    score_cmd->add_option("--mode", mode_str, "real | synt")->capture_default_str();
    score_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();

    // select
    CLI::App* select_cmd = app.add_subcommand("select", "difficulty-stratified benchmark selection");
    unsigned per_category = 16;
    std::vector<std::string> category_counts;
    std::string list_out;
    select_cmd->add_option("--benchmarks", benchmarks_dir)->required();
    select_cmd->add_option("--count", per_category, "files per category")->capture_default_str();
    select_cmd->add_option("--category", category_counts, "per-category override name=count");
    select_cmd->add_option("--seed", seed)->capture_default_str();
    select_cmd->add_option("--out", list_out, "write the selection to this file");

    // classify
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "run classification experiments and update meta paragraphs");
    std::string label = "classification";
    bool apply = false;
    classify_cmd->add_option("--configs", configs_file)->required();
    classify_cmd->add_option("--benchmarks", benchmarks_dir)->required();
    classify_cmd->add_option("--timeout", timeout)->capture_default_str();
    classify_cmd->add_option("--label", label, "experiment label")->capture_default_str();
    classify_cmd->add_option("--jobs", jobs)->capture_default_str();
    classify_cmd->add_flag("--apply", apply, "rewrite the benchmark files in place");

    // worker (internal)
    CLI::App* worker = app.add_subcommand("worker", "single isolated solver run");
    worker->group("");
    std::string w_benchmark, w_algorithm, w_flags, w_solution_out, w_config;
    bool w_synthesize = false;
    worker->add_option("--benchmark", w_benchmark)->required();
    worker->add_option("--algorithm", w_algorithm)->required();
    worker->add_option("--flags", w_flags);
    worker->add_flag("--synthesize", w_synthesize);
    worker->add_option("--solution-out", w_solution_out);
    worker->add_option("--config-name", w_config);

    // mc
    CLI::App* mc = app.add_subcommand("mc", "model-check a solution against its specification");
    std::string mc_spec, mc_solution;
    double mc_budget = 3600.0;
    mc->add_option("--spec", mc_spec)->required();
    mc->add_option("--solution", mc_solution)->required();
    mc->add_option("--timeout", mc_budget)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (worker->parsed())
            return cmd_worker(w_benchmark, w_algorithm, w_flags, w_synthesize, w_solution_out,
                              w_config);
        if (mc->parsed()) return cmd_mc(mc_spec, mc_solution, mc_budget);

        if (run->parsed()) {
            std::vector<arena::SolverConfig> configs = arena::parse_configs(read_file(configs_file));
            std::vector<std::string> files = list_benchmarks(benchmarks_dir);
            arena::RunOptions opts;
            opts.timeout = timeout;
            opts.mc_timeout = mc_timeout;
            opts.mode = mode_str == "synt" ? arena::Mode::synthesis : arena::Mode::realizability;
            opts.jobs = jobs;
            opts.out_dir = out_dir;
            opts.self_exe = self_exe_path();
            opts.quiet = quiet;
            std::vector<arena::RunRecord> records = arena::run_all(configs, files, opts);
            arena::Ranking ranking = arena::score(records, read_metas(files), opts.mode);
            arena::emit_results(records, ranking, out_dir);
            std::cout << arena::render_ranking(ranking, opts.mode);
            return 0;
        }
        if (score_cmd->parsed()) {
            std::vector<arena::RunRecord> records = arena::read_records_csv(records_file);
            std::vector<std::string> files = list_benchmarks(benchmarks_dir);
            arena::Mode mode =
                mode_str == "synt" ? arena::Mode::synthesis : arena::Mode::realizability;
            arena::Ranking ranking = arena::score(records, read_metas(files), mode);
            arena::emit_results(records, ranking, out_dir);
            std::cout << arena::render_ranking(ranking, mode);
            return 0;
        }
        if (select_cmd->parsed()) {
            std::vector<std::string> files = list_benchmarks(benchmarks_dir);
            std::vector<std::pair<std::string, MetaInfo>> library;
            for (const auto& [name, meta] : read_metas(files)) library.emplace_back(name, meta);
            arena::SelectionRequest req;
            req.default_count = per_category;
            req.seed = seed;
            for (const std::string& spec : category_counts) {
                auto eq = spec.find('=');
                if (eq == std::string::npos)
                    throw std::runtime_error("--category expects name=count");
                req.per_category[spec.substr(0, eq)] =
                    static_cast<unsigned>(std::stoul(spec.substr(eq + 1)));
            }
            arena::Selection sel = arena::select_benchmarks(library, req);
            std::ostream* out = &std::cout;
            std::ofstream file_out;
            if (!list_out.empty()) {
                file_out.open(list_out);
                out = &file_out;
            }
            for (const std::string& f : sel.files) *out << f << "\n";
            for (const std::string& nline : sel.notes) std::cerr << "note: " << nline << "\n";
            return 0;
        }
        if (classify_cmd->parsed()) {
            std::vector<arena::SolverConfig> configs = arena::parse_configs(read_file(configs_file));
            std::vector<std::string> files = list_benchmarks(benchmarks_dir);
            arena::RunOptions opts;
            opts.timeout = timeout;
            opts.mode = arena::Mode::synthesis;
            opts.jobs = jobs;
            opts.out_dir = "classify-out";
            opts.self_exe = self_exe_path();
            std::vector<arena::RunRecord> records = arena::run_all(configs, files, opts);
            for (const std::string& path : files) {
                std::string name = fs::path(path).filename().string();
                std::vector<ClassifyInput> inputs;
                for (const arena::RunRecord& r : records) {
                    if (r.benchmark != name) continue;
                    ClassifyInput ci;
                    ci.finished = r.verdict == arena::RunVerdict::realizable ||
                                  r.verdict == arena::RunVerdict::unrealizable;
                    ci.realizable = r.verdict == arena::RunVerdict::realizable;
                    ci.seconds = r.cpu_seconds;
                    if (r.verified.value_or(false)) ci.verified_size = r.solution_size;
                    inputs.push_back(ci);
                }
                MetaInfo meta = classify(inputs, label);
                if (apply) {
                    write_aag_file(with_meta(read_aag_file(path), meta), path);
                    std::cout << name << ": meta updated\n";
                } else {
                    std::cout << name << ":\n";
                    for (const std::string& line : write_meta(meta)) std::cout << "  " << line << "\n";
                }
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
