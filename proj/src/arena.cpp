#include "aigsynt/arena.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace aigsynt::arena {

namespace fs = std::filesystem;

std::string to_string(RunVerdict v) {
    switch (v) {
        case RunVerdict::realizable: return "realizable";
        case RunVerdict::unrealizable: return "unrealizable";
        case RunVerdict::timeout: return "timeout";
        default: return "error";
    }
}

namespace {

std::optional<RunVerdict> verdict_from_string(const std::string& s) {
    for (RunVerdict v : {RunVerdict::realizable, RunVerdict::unrealizable, RunVerdict::timeout,
                         RunVerdict::error})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

}  // namespace

std::vector<SolverConfig> parse_configs(const std::string& text) {
    std::vector<SolverConfig> configs;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "config line needs 'name = algorithm [flags]'");
        SolverConfig cfg;
        cfg.name = trim(t.substr(0, eq));
        std::istringstream rest(t.substr(eq + 1));
        std::string tok;
        bool first = true;
        while (rest >> tok) {
            if (first) {
                auto alg = algorithm_from_string(tok);
                if (!alg) throw ParseError(line_no, "unknown algorithm '" + tok + "'");
                cfg.algorithm = *alg;
                first = false;
            } else {
                auto kv = tok.find('=');
                if (kv == std::string::npos)
                    throw ParseError(line_no, "flag '" + tok + "' is not key=value");
                cfg.flags[tok.substr(0, kv)] = tok.substr(kv + 1);
            }
        }
        if (first) throw ParseError(line_no, "config line without an algorithm");
        if (cfg.name.empty()) throw ParseError(line_no, "config line without a name");
        if (auto it = cfg.flags.find("members"); it != cfg.flags.end()) {
            for (const std::string& m : split(it->second, ','))
                if (!m.empty()) cfg.members.push_back(m);
        }
        if ((cfg.algorithm == Algorithm::portfolio) != !cfg.members.empty())
            throw ParseError(line_no, "members=... is required exactly for portfolio configs");
        for (const std::string& m : cfg.members) {
            bool found = false;
            for (const SolverConfig& c : configs) found |= (c.name == m);
            if (!found) throw ParseError(line_no, "portfolio member '" + m + "' is not defined above");
        }
        configs.push_back(std::move(cfg));
    }
    return configs;
}

// ---------------------------------------------------------------------------
// Worker processes

namespace {

struct Child {
    pid_t pid = -1;
    int fd = -1;
    std::string output;
    bool exited = false;
    int status = 0;
    double cpu_seconds = 0.0;
    bool killed_on_deadline = false;
};

Child spawn_worker(const std::vector<std::string>& argv, double cpu_limit) {
    int pipefd[2];
    if (pipe(pipefd) != 0) throw std::runtime_error("pipe() failed");
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork() failed");
    if (pid == 0) {
        // Child: only async-signal-safe calls until execv.
        dup2(pipefd[1], STDOUT_FILENO);
        close(pipefd[0]);
        close(pipefd[1]);
        if (cpu_limit > 0) {
            rlimit rl;
            rl.rlim_cur = static_cast<rlim_t>(cpu_limit) + 1;
            rl.rlim_max = rl.rlim_cur + 2;
            setrlimit(RLIMIT_CPU, &rl);
        }
        execv(cargv[0], cargv.data());
        _exit(127);
    }
    close(pipefd[1]);
    fcntl(pipefd[0], F_SETFL, O_NONBLOCK);
    Child c;
    c.pid = pid;
    c.fd = pipefd[0];
    return c;
}

void drain(Child& c) {
    if (c.fd < 0) return;
    char buf[4096];
    for (;;) {
        ssize_t n = read(c.fd, buf, sizeof buf);
        if (n > 0)
            c.output.append(buf, static_cast<std::size_t>(n));
        else
            break;
    }
}

void reap(Child& c, bool block) {
    if (c.exited) return;
    rusage ru{};
    int status = 0;
    pid_t r = wait4(c.pid, &status, block ? 0 : WNOHANG, &ru);
    if (r == c.pid) {
        c.exited = true;
        c.status = status;
        c.cpu_seconds = static_cast<double>(ru.ru_utime.tv_sec) + 1e-6 * ru.ru_utime.tv_usec +
                        static_cast<double>(ru.ru_stime.tv_sec) + 1e-6 * ru.ru_stime.tv_usec;
    }
}

void finish(Child& c) {
    drain(c);
    if (c.fd >= 0) {
        close(c.fd);
        c.fd = -1;
    }
}

// Key=value fields of the first RESULT/MC line a worker printed.
std::map<std::string, std::string> parse_report(const std::string& output, const std::string& tag) {
    std::istringstream in(output);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head != tag) continue;
        std::map<std::string, std::string> fields;
        std::string tok;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq != std::string::npos) fields[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        return fields;
    }
    return {};
}

std::string solution_path(const RunOptions& opts, const std::string& bench_name,
                          const std::string& config_name) {
    fs::path dir = fs::path(opts.out_dir.empty() ? "." : opts.out_dir) / "solutions";
    fs::create_directories(dir);
    std::string stem = fs::path(bench_name).stem().string();
    return (dir / (stem + "." + config_name + ".aag")).string();
}

std::vector<std::string> worker_argv(const RunOptions& opts, const SolverConfig& cfg,
                                     const std::string& benchmark_path,
                                     const std::string& sol_path) {
    std::vector<std::string> argv{opts.self_exe,   "worker",
                                  "--benchmark",   benchmark_path,
                                  "--algorithm",   to_string(cfg.algorithm),
                                  "--config-name", cfg.name};
    std::string flags;
    for (const auto& [k, v] : cfg.flags) {
        if (k == "members") continue;
        if (!flags.empty()) flags += ',';
        flags += k + "=" + v;
    }
    if (!flags.empty()) {
        argv.push_back("--flags");
        argv.push_back(flags);
    }
    if (opts.mode == Mode::synthesis) {
        argv.push_back("--synthesize");
        argv.push_back("--solution-out");
        argv.push_back(sol_path);
    }
    return argv;
}

// Runs the model checker on a written solution in its own worker.
std::optional<bool> verify_solution(const RunOptions& opts, const std::string& benchmark_path,
                                    const std::string& sol_path) {
    std::vector<std::string> argv{opts.self_exe, "mc",        "--spec",    benchmark_path,
                                  "--solution",  sol_path,    "--timeout",
                                  std::to_string(opts.mc_timeout)};
    Child c = spawn_worker(argv, 0.0);
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(opts.mc_timeout + 60.0));
    while (!c.exited) {
        drain(c);
        reap(c, false);
        if (c.exited) break;
        if (std::chrono::steady_clock::now() > deadline) {
            kill(c.pid, SIGKILL);
            reap(c, true);
            break;
        }
        pollfd p{c.fd, POLLIN, 0};
        poll(&p, 1, 50);
    }
    finish(c);
    auto fields = parse_report(c.output, "MC");
    if (fields.count("status")) return fields["status"] == "verified";
    return false;
}

}  // namespace

RunRecord run_one(const SolverConfig& cfg, const std::vector<SolverConfig>& all_configs,
                  const std::string& benchmark_path, const RunOptions& opts) {
    RunRecord rec;
    rec.benchmark = fs::path(benchmark_path).filename().string();
    rec.config = cfg.name;

    const bool portfolio = cfg.algorithm == Algorithm::portfolio;
    std::vector<const SolverConfig*> members;
    if (portfolio) {
        for (const std::string& name : cfg.members) {
            const SolverConfig* found = nullptr;
            for (const SolverConfig& c : all_configs)
                if (c.name == name) found = &c;
            if (!found) throw std::invalid_argument("portfolio member '" + name + "' not defined");
            members.push_back(found);
        }
    } else {
        members.push_back(&cfg);
    }

    auto start = std::chrono::steady_clock::now();
    // Sequential runs are CPU-limited with a generous wall backstop; portfolio
    // runs are wall-limited per the parallel-mode rules.
    double wall_budget = portfolio ? opts.timeout : opts.timeout * 3 + 30.0;
    auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(wall_budget));

    std::vector<Child> children;
    std::vector<std::string> sol_paths;
    for (const SolverConfig* m : members) {
        std::string sol = solution_path(opts, rec.benchmark, m->name);
        sol_paths.push_back(sol);
        children.push_back(spawn_worker(worker_argv(opts, *m, benchmark_path, sol), opts.timeout));
    }

    int winner = -1;
    bool deadline_hit = false;
    std::size_t running = children.size();
    while (running > 0 && winner < 0) {
        for (std::size_t i = 0; i < children.size(); ++i) {
            Child& c = children[i];
            if (c.exited) continue;
            drain(c);
            reap(c, false);
            if (!c.exited) continue;
            --running;
            finish(c);
            if (WIFEXITED(c.status) && WEXITSTATUS(c.status) == 0 &&
                c.cpu_seconds <= opts.timeout + 0.5) {
                auto fields = parse_report(c.output, "RESULT");
                if (fields.count("verdict")) {
                    winner = static_cast<int>(i);
                    break;
                }
            }
        }
        if (winner >= 0 || running == 0) break;
        if (std::chrono::steady_clock::now() > deadline) {
            deadline_hit = true;
            for (Child& c : children)
                if (!c.exited) kill(c.pid, SIGKILL);
            for (Child& c : children)
                if (!c.exited) {
                    reap(c, true);
                    finish(c);
                }
            running = 0;
            break;
        }
        std::vector<pollfd> fds;
        for (Child& c : children)
            if (!c.exited && c.fd >= 0) fds.push_back({c.fd, POLLIN, 0});
        if (!fds.empty()) poll(fds.data(), fds.size(), 50);
    }
    // First conclusive answer wins; the rest are cancelled.
    for (Child& c : children)
        if (!c.exited) kill(c.pid, SIGKILL);
    for (Child& c : children) {
        reap(c, true);
        finish(c);
    }

    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (winner < 0) {
        bool any_cpu_kill = deadline_hit;
        for (Child& c : children) {
            if (WIFSIGNALED(c.status) &&
                (WTERMSIG(c.status) == SIGXCPU || WTERMSIG(c.status) == SIGKILL))
                any_cpu_kill = true;
            if (WIFEXITED(c.status) && WEXITSTATUS(c.status) == 0 && c.cpu_seconds > opts.timeout)
                any_cpu_kill = true;
        }
        rec.verdict = any_cpu_kill ? RunVerdict::timeout : RunVerdict::error;
        rec.cpu_seconds = children.empty() ? 0.0 : children[0].cpu_seconds;
        return rec;
    }

    Child& win = children[static_cast<std::size_t>(winner)];
    rec.cpu_seconds = win.cpu_seconds;
    auto fields = parse_report(win.output, "RESULT");
    auto v = verdict_from_string(fields["verdict"]);
    rec.verdict = v.value_or(RunVerdict::error);

    if (opts.mode == Mode::synthesis && rec.verdict == RunVerdict::realizable) {
        if (fields.count("size")) rec.solution_size = std::stoul(fields["size"]);
        rec.verified = verify_solution(opts, benchmark_path, sol_paths[static_cast<std::size_t>(winner)]);
    }
    return rec;
}

std::vector<RunRecord> run_all(const std::vector<SolverConfig>& cfgs,
                               const std::vector<std::string>& benchmark_paths,
                               const RunOptions& opts) {
    struct Job {
        std::size_t cfg;
        std::size_t bench;
    };
    std::vector<Job> jobs;
    for (std::size_t b = 0; b < benchmark_paths.size(); ++b)
        for (std::size_t c = 0; c < cfgs.size(); ++c) jobs.push_back({c, b});
    std::vector<RunRecord> records(jobs.size());

    std::mutex queue_mutex;
    std::size_t next = 0;
    unsigned workers = std::max(1u, opts.jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t mine;
                {
                    std::lock_guard<std::mutex> lock(queue_mutex);
                    if (next >= jobs.size()) return;
                    mine = next++;
                }
                const Job& job = jobs[mine];
                records[mine] = run_one(cfgs[job.cfg], cfgs, benchmark_paths[job.bench], opts);
                if (!opts.quiet) {
                    std::lock_guard<std::mutex> lock(queue_mutex);
                    std::cerr << records[mine].benchmark << " / " << records[mine].config << ": "
                              << to_string(records[mine].verdict) << " ("
                              << records[mine].cpu_seconds << "s cpu)\n";
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    return records;
}

// ---------------------------------------------------------------------------
// Scoring

double quality_points(std::size_t size_new, std::size_t size_ref) {
    if (size_new == 0 || size_ref == 0) return 0.0;
    double points = 2.0 - std::log10(static_cast<double>(size_new) / static_cast<double>(size_ref));
    return std::max(0.0, points);
}

std::string category_of(const std::string& benchmark_name) {
    std::string s = benchmark_name;
    if (auto dot = s.rfind(".aag"); dot != std::string::npos) s = s.substr(0, dot);
    auto all_digits = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(c); });
    };
    for (;;) {
        auto us = s.rfind('_');
        if (us == std::string::npos || !all_digits(s.substr(us + 1))) break;
        s = s.substr(0, us);
    }
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

Ranking score(const std::vector<RunRecord>& records, const std::map<std::string, MetaInfo>& metas,
              Mode mode) {
    Ranking rk;
    std::map<std::string, ConfigScore> by_config;
    std::map<std::string, std::vector<const RunRecord*>> by_bench;
    for (const RunRecord& r : records) {
        by_config[r.config].config = r.config;
        by_bench[r.benchmark].push_back(&r);
    }

    for (auto& [bench, recs] : by_bench) {
        MetaInfo meta;
        if (auto it = metas.find(bench); it != metas.end()) meta = it->second;

        std::optional<bool> truth;
        if (mode == Mode::synthesis) {
            bool any_verified = false;
            for (const RunRecord* r : recs) any_verified |= r->verified.value_or(false);
            if (any_verified) {
                if (meta.status == MetaInfo::Status::unknown)
                    rk.notes.push_back("previously unsolved " + bench +
                                       " was solved and verified for the first time");
                else if (meta.status == MetaInfo::Status::unrealizable)
                    rk.notes.push_back(bench +
                                       ": verified solution overrides the unrealizable tag");
                truth = true;
            } else if (meta.status != MetaInfo::Status::unknown) {
                truth = meta.status == MetaInfo::Status::realizable;
            }
        } else {
            if (meta.status != MetaInfo::Status::unknown) {
                truth = meta.status == MetaInfo::Status::realizable;
            } else {
                unsigned yes = 0, no = 0;
                for (const RunRecord* r : recs) {
                    if (r->verdict == RunVerdict::realizable) ++yes;
                    if (r->verdict == RunVerdict::unrealizable) ++no;
                }
                if (yes > no) truth = true;
                if (no > yes) truth = false;
                if (yes + no > 0 && yes == no)
                    rk.notes.push_back(bench + ": majority vote tie, left unscored");
                else if (truth)
                    rk.notes.push_back("previously unsolved " + bench + " resolved " +
                                       (*truth ? "realizable" : "unrealizable") +
                                       " by majority vote");
            }
        }
        if (!truth) continue;

        // Reference size: REF_SIZE when present, else the smallest verified
        // size of this evaluation.
        std::optional<std::size_t> ref;
        if (meta.ref_size) ref = *meta.ref_size;
        if (!ref) {
            for (const RunRecord* r : recs)
                if (r->verified.value_or(false) && r->solution_size)
                    ref = ref ? std::min(*ref, *r->solution_size) : *r->solution_size;
        }

        std::vector<const RunRecord*> solvers;
        for (const RunRecord* r : recs) {
            ConfigScore& cs = by_config[r->config];
            if (r->verdict == RunVerdict::timeout || r->verdict == RunVerdict::error) continue;
            bool claims_realizable = r->verdict == RunVerdict::realizable;
            if (claims_realizable != *truth) {
                cs.points -= 4;
                ++cs.wrong;
                continue;
            }
            if (mode == Mode::synthesis && claims_realizable) {
                if (!r->verified.value_or(false)) continue;  // unaccepted solution
                cs.points += 1;
                ++cs.solved;
                solvers.push_back(r);
                if (ref && r->solution_size)
                    cs.quality += quality_points(*r->solution_size, *ref);
                else
                    rk.notes.push_back(bench + "/" + r->config +
                                       ": no reference size, excluded from quality totals");
            } else {
                cs.points += 1;
                ++cs.solved;
                solvers.push_back(r);
                if (mode == Mode::synthesis) cs.quality += 1.0;  // correct unrealizable answer
            }
        }
        if (solvers.size() == 1) ++by_config[solvers[0]->config].unique_solved;
        for (const RunRecord* r : solvers) {
            ++rk.per_category[category_of(bench)][r->config];
            rk.solved_runs.emplace_back(r->config, bench);
        }
    }
    std::sort(rk.solved_runs.begin(), rk.solved_runs.end());

    for (auto& [name, cs] : by_config) rk.scores.push_back(cs);
    std::sort(rk.scores.begin(), rk.scores.end(), [](const ConfigScore& a, const ConfigScore& b) {
        return a.points != b.points ? a.points > b.points : a.config < b.config;
    });
    return rk;
}

// ---------------------------------------------------------------------------
// Benchmark selection

Selection select_benchmarks(const std::vector<std::pair<std::string, MetaInfo>>& library,
                            const SelectionRequest& request) {
    Selection sel;
    std::map<std::string, std::vector<const std::pair<std::string, MetaInfo>*>> by_category;
    for (const auto& entry : library) by_category[category_of(entry.first)].push_back(&entry);

    for (auto& [category, files] : by_category) {
        unsigned want = request.default_count;
        if (auto it = request.per_category.find(category); it != request.per_category.end())
            want = it->second;
        std::sort(files.begin(), files.end(),
                  [](const auto* a, const auto* b) { return a->first < b->first; });
        if (files.size() <= want) {
            if (files.size() < want)
                sel.notes.push_back(category + ": only " + std::to_string(files.size()) +
                                    " of the requested " + std::to_string(want) + " available");
            for (const auto* f : files) sel.files.push_back(f->first);
            continue;
        }

        // Difficulty buckets over the solved-by ratio.
        std::array<std::vector<const std::pair<std::string, MetaInfo>*>, 4> buckets;
        for (const auto* f : files) {
            double ratio = 0.0;
            if (f->second.solved_by && f->second.solved_by->denominator > 0)
                ratio = static_cast<double>(f->second.solved_by->numerator) /
                        f->second.solved_by->denominator;
            std::size_t b = ratio == 0.0 ? 0 : (ratio <= 1.0 / 3 ? 1 : (ratio <= 2.0 / 3 ? 2 : 3));
            buckets[b].push_back(f);
        }
        std::mt19937_64 rng(request.seed ^ std::hash<std::string>{}(category));
        for (auto& b : buckets) std::shuffle(b.begin(), b.end(), rng);

        // Even split across the four buckets; the solved buckets absorb the
        // leftovers and any shortfall is redistributed round-robin.
        std::array<unsigned, 4> quota{};
        for (unsigned i = 0; i < 4; ++i) quota[i] = want / 4;
        unsigned leftover = want % 4;
        for (unsigned i = 1; leftover > 0; i = i % 3 + 1) {
            ++quota[i];
            --leftover;
        }
        std::array<unsigned, 4> take{};
        unsigned total = 0;
        for (unsigned i = 0; i < 4; ++i) {
            take[i] = std::min<unsigned>(quota[i], static_cast<unsigned>(buckets[i].size()));
            total += take[i];
        }
        for (unsigned i = 1; total < want;) {
            unsigned order[4] = {1, 2, 3, 0};
            bool progressed = false;
            for (unsigned oi = 0; oi < 4 && total < want; ++oi) {
                unsigned b = order[oi];
                if (take[b] < buckets[b].size()) {
                    ++take[b];
                    ++total;
                    progressed = true;
                }
            }
            if (!progressed) break;
            (void)i;
        }
        std::vector<std::string> chosen;
        for (unsigned b = 0; b < 4; ++b)
            for (unsigned i = 0; i < take[b]; ++i) chosen.push_back(buckets[b][i]->first);
        std::sort(chosen.begin(), chosen.end());
        sel.files.insert(sel.files.end(), chosen.begin(), chosen.end());
    }
    std::sort(sel.files.begin(), sel.files.end());
    return sel;
}

// ---------------------------------------------------------------------------
// Result emission

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string render_ranking(const Ranking& ranking, Mode mode) {
    std::ostringstream out;
    out << "Config            Solved  Unique  Wrong  Points";
    if (mode == Mode::synthesis) out << "  Quality";
    out << "\n";
    for (const ConfigScore& cs : ranking.scores) {
        char line[256];
        if (mode == Mode::synthesis)
            std::snprintf(line, sizeof line, "%-16s %7u %7u %6u %7.1f %8.2f", cs.config.c_str(),
                          cs.solved, cs.unique_solved, cs.wrong, cs.points, cs.quality);
        else
            std::snprintf(line, sizeof line, "%-16s %7u %7u %6u %7.1f", cs.config.c_str(), cs.solved,
                          cs.unique_solved, cs.wrong, cs.points);
        out << line << "\n";
    }
    for (const std::string& n : ranking.notes) out << "note: " << n << "\n";
    return out.str();
}

void emit_results(const std::vector<RunRecord>& records, const Ranking& ranking,
                  const std::string& out_dir) {
    fs::create_directories(out_dir);

    std::ofstream runs(fs::path(out_dir) / "runs.csv");
    runs << "benchmark,config,verdict,cpu_s,wall_s,size,verified\n";
    for (const RunRecord& r : records) {
        runs << r.benchmark << ',' << r.config << ',' << to_string(r.verdict) << ','
             << fmt_double(r.cpu_seconds) << ',' << fmt_double(r.wall_seconds) << ',';
        if (r.solution_size) runs << *r.solution_size;
        runs << ',';
        if (r.verified) runs << (*r.verified ? 1 : 0);
        runs << '\n';
    }

    // Cactus data: per config, solved-instance times ascending with index.
    std::set<std::pair<std::string, std::string>> solved(ranking.solved_runs.begin(),
                                                         ranking.solved_runs.end());
    std::map<std::string, std::vector<double>> solved_times;
    for (const ConfigScore& cs : ranking.scores) solved_times[cs.config];
    for (const RunRecord& r : records)
        if (solved.count({r.config, r.benchmark})) solved_times[r.config].push_back(r.cpu_seconds);

    std::ofstream cactus(fs::path(out_dir) / "cactus.csv");
    cactus << "config,index,cpu_s\n";
    for (const ConfigScore& cs : ranking.scores) {
        std::vector<double>& times = solved_times[cs.config];
        std::sort(times.begin(), times.end());
        for (std::size_t i = 0; i < times.size(); ++i)
            cactus << cs.config << ',' << i + 1 << ',' << fmt_double(times[i]) << '\n';
    }

    std::ofstream cats(fs::path(out_dir) / "categories.csv");
    cats << "category";
    for (const ConfigScore& cs : ranking.scores) cats << ',' << cs.config;
    cats << '\n';
    for (const auto& [category, per_config] : ranking.per_category) {
        cats << category;
        for (const ConfigScore& cs : ranking.scores) {
            auto it = per_config.find(cs.config);
            cats << ',' << (it == per_config.end() ? 0u : it->second);
        }
        cats << '\n';
    }

    std::ofstream rank(fs::path(out_dir) / "ranking.txt");
    bool synthesis = false;
    for (const RunRecord& r : records) synthesis |= r.solution_size.has_value();
    rank << render_ranking(ranking, synthesis ? Mode::synthesis : Mode::realizability);
}

std::vector<RunRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<RunRecord> records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (trim(line).empty()) continue;
        std::vector<std::string> cols = split(line, ',');
        if (cols.size() != 7) throw std::runtime_error("malformed record line: " + line);
        RunRecord r;
        r.benchmark = cols[0];
        r.config = cols[1];
        auto v = verdict_from_string(cols[2]);
        if (!v) throw std::runtime_error("unknown verdict in: " + line);
        r.verdict = *v;
        r.cpu_seconds = std::stod(cols[3]);
        r.wall_seconds = std::stod(cols[4]);
        if (!cols[5].empty()) r.solution_size = std::stoul(cols[5]);
        if (!cols[6].empty()) r.verified = (cols[6] == "1");
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace aigsynt::arena
