#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "aigsynt/arena.hpp"
#include "aigsynt/benchgen.hpp"
#include "doctest.h"

using namespace aigsynt;
using namespace aigsynt::arena;
namespace fs = std::filesystem;

namespace {

MetaInfo meta_with(MetaInfo::Status status, std::optional<unsigned> ref = std::nullopt,
                   std::optional<std::pair<unsigned, unsigned>> solved = std::nullopt) {
    MetaInfo m;
    m.status = status;
    m.ref_size = ref;
    if (solved) m.solved_by = MetaInfo::SolvedBy{solved->first, solved->second, "x"};
    return m;
}

RunRecord rec(const std::string& bench, const std::string& config, RunVerdict v, double cpu = 0.1,
              std::optional<std::size_t> size = std::nullopt,
              std::optional<bool> verified = std::nullopt) {
    RunRecord r;
    r.benchmark = bench;
    r.config = config;
    r.verdict = v;
    r.cpu_seconds = cpu;
    r.wall_seconds = cpu;
    r.solution_size = size;
    r.verified = verified;
    return r;
}

}  // namespace

TEST_CASE("config file parsing") {
    std::string text =
        "# comment\n"
        "classic = classic\n"
        "fancy = global reorder=on decomp-cap=64\n"
        "par = portfolio members=classic,fancy\n";
    std::vector<SolverConfig> cfgs = parse_configs(text);
    REQUIRE(cfgs.size() == 3);
    CHECK(cfgs[0].name == "classic");
    CHECK(cfgs[1].algorithm == Algorithm::global);
    CHECK(cfgs[1].flags.at("reorder") == "on");
    CHECK(cfgs[2].members == std::vector<std::string>{"classic", "fancy"});

    CHECK_THROWS(parse_configs("bad line\n"));
    CHECK_THROWS(parse_configs("x = nosuch\n"));
    CHECK_THROWS(parse_configs("p = portfolio\n"));                 // members missing
    CHECK_THROWS(parse_configs("p = portfolio members=missing\n"));  // undefined member
}

TEST_CASE("quality formula") {
    CHECK(quality_points(100, 100) == doctest::Approx(2.0));
    CHECK(quality_points(1000, 100) == doctest::Approx(1.0));
    CHECK(quality_points(10000, 100) == doctest::Approx(0.0));
    CHECK(quality_points(10, 100) == doctest::Approx(3.0));
    CHECK(quality_points(100000, 100) == doctest::Approx(0.0));  // clamped
}

TEST_CASE("basic scoring arithmetic") {
    std::map<std::string, MetaInfo> metas;
    for (int i = 0; i < 11; ++i)
        metas["b" + std::to_string(i) + ".aag"] = meta_with(MetaInfo::Status::realizable);

    SUBCASE("ten correct answers give ten points") {
        std::vector<RunRecord> records;
        for (int i = 0; i < 10; ++i)
            records.push_back(rec("b" + std::to_string(i) + ".aag", "c1", RunVerdict::realizable));
        Ranking r = score(records, metas, Mode::realizability);
        REQUIRE(r.scores.size() == 1);
        CHECK(r.scores[0].points == doctest::Approx(10.0));
        CHECK(r.scores[0].solved == 10);
        CHECK(r.scores[0].wrong == 0);
    }
    SUBCASE("one wrong answer costs four points") {
        std::vector<RunRecord> records;
        for (int i = 0; i < 10; ++i)
            records.push_back(rec("b" + std::to_string(i) + ".aag", "c1", RunVerdict::realizable));
        records.push_back(rec("b10.aag", "c1", RunVerdict::unrealizable));
        Ranking r = score(records, metas, Mode::realizability);
        CHECK(r.scores[0].points == doctest::Approx(6.0));
        // scoring algebra: points = finished - 5 * wrong = solved - 4 * wrong
        CHECK(r.scores[0].points ==
              doctest::Approx(static_cast<double>(r.scores[0].solved) - 4.0 * r.scores[0].wrong));
    }
    SUBCASE("timeouts score nothing") {
        std::vector<RunRecord> records{rec("b0.aag", "c1", RunVerdict::timeout),
                                       rec("b1.aag", "c1", RunVerdict::error)};
        Ranking r = score(records, metas, Mode::realizability);
        CHECK(r.scores[0].points == doctest::Approx(0.0));
    }
}

TEST_CASE("majority vote on unknown-status benchmarks") {
    std::map<std::string, MetaInfo> metas;
    metas["u.aag"] = meta_with(MetaInfo::Status::unknown);
    std::vector<RunRecord> records{
        rec("u.aag", "c1", RunVerdict::realizable), rec("u.aag", "c2", RunVerdict::realizable),
        rec("u.aag", "c3", RunVerdict::realizable), rec("u.aag", "c4", RunVerdict::unrealizable)};
    Ranking r = score(records, metas, Mode::realizability);
    double total = 0;
    for (const ConfigScore& cs : r.scores) total += cs.points;
    CHECK(total == doctest::Approx(3.0 - 4.0));
    bool notified = false;
    for (const std::string& n : r.notes) notified |= n.find("previously unsolved") != std::string::npos;
    CHECK(notified);

    SUBCASE("ties stay unscored") {
        records.pop_back();
        records.pop_back();
        records.push_back(rec("u.aag", "c3", RunVerdict::unrealizable));
        records.push_back(rec("u.aag", "c4", RunVerdict::unrealizable));
        Ranking r2 = score(records, metas, Mode::realizability);
        double total2 = 0;
        for (const ConfigScore& cs : r2.scores) total2 += cs.points;
        CHECK(total2 == doctest::Approx(0.0));
    }
}

TEST_CASE("synthesis scoring uses verified solutions and quality") {
    std::map<std::string, MetaInfo> metas;
    metas["a.aag"] = meta_with(MetaInfo::Status::realizable, 100u);
    metas["b.aag"] = meta_with(MetaInfo::Status::unrealizable);
    metas["c.aag"] = meta_with(MetaInfo::Status::unknown);

    std::vector<RunRecord> records{
        rec("a.aag", "c1", RunVerdict::realizable, 0.1, 100u, true),   // 2 quality points
        rec("a.aag", "c2", RunVerdict::realizable, 0.1, 1000u, true),  // 1 quality point
        rec("a.aag", "c3", RunVerdict::realizable, 0.1, 90u, false),   // unverified: no points
        rec("b.aag", "c1", RunVerdict::unrealizable, 0.1),             // +1, quality 1
        rec("c.aag", "c2", RunVerdict::realizable, 0.1, 50u, true),    // newly solved
    };
    Ranking r = score(records, metas, Mode::synthesis);
    std::map<std::string, ConfigScore> by;
    for (const ConfigScore& cs : r.scores) by[cs.config] = cs;
    CHECK(by["c1"].points == doctest::Approx(2.0));
    CHECK(by["c1"].quality == doctest::Approx(3.0));
    CHECK(by["c2"].points == doctest::Approx(2.0));
    // c.aag has no REF_SIZE: its reference is this run's smallest verified size
    CHECK(by["c2"].quality == doctest::Approx(1.0 + 2.0));
    CHECK(by["c3"].points == doctest::Approx(0.0));
    CHECK(by["c3"].solved == 0);
    bool newly = false;
    for (const std::string& n : r.notes) newly |= n.find("first time") != std::string::npos;
    CHECK(newly);
}

TEST_CASE("unique solving is counted across all configurations") {
    std::map<std::string, MetaInfo> metas;
    metas["x.aag"] = meta_with(MetaInfo::Status::realizable);
    metas["y.aag"] = meta_with(MetaInfo::Status::realizable);
    std::vector<RunRecord> records{
        rec("x.aag", "c1", RunVerdict::realizable), rec("x.aag", "c2", RunVerdict::timeout),
        rec("y.aag", "c1", RunVerdict::realizable), rec("y.aag", "c2", RunVerdict::realizable)};
    Ranking r = score(records, metas, Mode::realizability);
    std::map<std::string, ConfigScore> by;
    for (const ConfigScore& cs : r.scores) by[cs.config] = cs;
    CHECK(by["c1"].unique_solved == 1);
    CHECK(by["c2"].unique_solved == 0);
}

TEST_CASE("category extraction") {
    CHECK(category_of("cycle_sched_2_1_2.aag") == "cycle_sched");
    CHECK(category_of("mult_bool_matrix_1_2_3.aag") == "mult_bool_matrix");
    CHECK(category_of("mult_bool_matrix_dyn_2_2.aag") == "mult_bool_matrix_dyn");
    CHECK(category_of("add8.aag") == "add");
    CHECK(category_of("cnt12.aag") == "cnt");
}

TEST_CASE("benchmark selection") {
    SelectionRequest req;
    req.default_count = 16;
    req.seed = 7;

    SUBCASE("even spread over four buckets") {
        std::vector<std::pair<std::string, MetaInfo>> library;
        for (int b = 0; b < 4; ++b)
            for (int i = 0; i < 10; ++i) {
                MetaInfo m = meta_with(MetaInfo::Status::realizable, std::nullopt,
                                       std::pair<unsigned, unsigned>(b, 3));
                library.emplace_back("cat_" + std::to_string(b * 10 + i) + ".aag", m);
            }
        Selection sel = select_benchmarks(library, req);
        CHECK(sel.files.size() == 16);
        std::map<unsigned, unsigned> per_bucket;
        for (const std::string& f : sel.files)
            for (const auto& [name, meta] : library)
                if (name == f) ++per_bucket[meta.solved_by->numerator];
        CHECK(per_bucket[0] == 4);
        CHECK(per_bucket[1] == 4);
        CHECK(per_bucket[2] == 4);
        CHECK(per_bucket[3] == 4);
    }
    SUBCASE("scarce unsolved bucket redistributes evenly") {
        std::vector<std::pair<std::string, MetaInfo>> library;
        library.emplace_back("cat_0.aag",
                             meta_with(MetaInfo::Status::unknown, std::nullopt,
                                       std::pair<unsigned, unsigned>(0, 3)));
        for (int b = 1; b < 4; ++b)
            for (int i = 0; i < 10; ++i)
                library.emplace_back("cat_" + std::to_string(b * 10 + i) + ".aag",
                                     meta_with(MetaInfo::Status::realizable, std::nullopt,
                                               std::pair<unsigned, unsigned>(b, 3)));
        Selection sel = select_benchmarks(library, req);
        CHECK(sel.files.size() == 16);
        CHECK(std::find(sel.files.begin(), sel.files.end(), "cat_0.aag") != sel.files.end());
    }
    SUBCASE("short categories are taken whole with a note") {
        std::vector<std::pair<std::string, MetaInfo>> library;
        for (int i = 0; i < 5; ++i)
            library.emplace_back("tiny_" + std::to_string(i) + ".aag",
                                 meta_with(MetaInfo::Status::realizable));
        Selection sel = select_benchmarks(library, req);
        CHECK(sel.files.size() == 5);
        CHECK(!sel.notes.empty());
    }
    SUBCASE("selection matches the published category table shape") {
        // category sizes and requested counts of the 2015 selection
        std::vector<std::pair<std::string, unsigned>> table{
            {"amba", 16},   {"cyclesched", 15}, {"demo", 16},    {"driver", 16},
            {"factory", 15}, {"genbuf", 16},     {"hwmcc", 16},   {"hyper", 15},
            {"loadbal", 16}, {"ltldba", 16},     {"moving", 16},  {"matrixmult", 16},
            {"adder", 8},    {"bitshift", 8},    {"countert", 8}, {"genbufltl", 8},
            {"huffman", 5},  {"multiplier", 8},  {"mvs", 8},      {"stay", 8}};
        std::vector<std::pair<std::string, MetaInfo>> library;
        SelectionRequest table_req;
        table_req.seed = 1;
        unsigned expected_total = 0;
        for (const auto& [cat, want] : table) {
            table_req.per_category[cat] = want;
            expected_total += want;
            for (unsigned i = 0; i < want + 20; ++i) {
                MetaInfo m = meta_with(MetaInfo::Status::realizable, std::nullopt,
                                       std::pair<unsigned, unsigned>(i % 4, 3));
                library.emplace_back(cat + "_" + std::to_string(i) + ".aag", m);
            }
        }
        CHECK(expected_total == 250);
        Selection sel = select_benchmarks(library, table_req);
        CHECK(sel.files.size() == 250);
    }
    SUBCASE("deterministic for a fixed seed") {
        std::vector<std::pair<std::string, MetaInfo>> library;
        for (int i = 0; i < 40; ++i)
            library.emplace_back("cat_" + std::to_string(i) + ".aag",
                                 meta_with(MetaInfo::Status::realizable, std::nullopt,
                                           std::pair<unsigned, unsigned>(i % 4, 3)));
        Selection a = select_benchmarks(library, req);
        Selection b = select_benchmarks(library, req);
        CHECK(a.files == b.files);
        SelectionRequest other = req;
        other.seed = 8;
        Selection c2 = select_benchmarks(library, other);
        CHECK(c2.files.size() == a.files.size());
    }
}

TEST_CASE("result emission") {
    fs::path dir = fs::temp_directory_path() / "aigsynt_emit_test";
    fs::remove_all(dir);

    SUBCASE("empty records produce header-only files") {
        Ranking empty;
        emit_results({}, empty, dir.string());
        std::ifstream runs(dir / "runs.csv");
        std::string line;
        CHECK(std::getline(runs, line));
        CHECK(line == "benchmark,config,verdict,cpu_s,wall_s,size,verified");
        CHECK(!std::getline(runs, line));
        std::ifstream cactus(dir / "cactus.csv");
        CHECK(std::getline(cactus, line));
        CHECK(!std::getline(cactus, line));
    }
    SUBCASE("cactus rows equal the solved counts and records round-trip") {
        std::map<std::string, MetaInfo> metas;
        metas["x.aag"] = meta_with(MetaInfo::Status::realizable);
        metas["y.aag"] = meta_with(MetaInfo::Status::realizable);
        std::vector<RunRecord> records{rec("x.aag", "c1", RunVerdict::realizable, 0.5),
                                       rec("y.aag", "c1", RunVerdict::realizable, 0.25),
                                       rec("x.aag", "c2", RunVerdict::timeout, 1.0),
                                       rec("y.aag", "c2", RunVerdict::unrealizable, 0.125)};
        Ranking r = score(records, metas, Mode::realizability);
        emit_results(records, r, dir.string());

        std::ifstream cactus(dir / "cactus.csv");
        std::string line;
        std::getline(cactus, line);
        std::map<std::string, unsigned> rows;
        while (std::getline(cactus, line)) ++rows[line.substr(0, line.find(','))];
        std::map<std::string, ConfigScore> by;
        for (const ConfigScore& cs : r.scores) by[cs.config] = cs;
        CHECK(rows["c1"] == by["c1"].solved);
        CHECK(rows["c2"] == by["c2"].solved);

        std::vector<RunRecord> back = read_records_csv((dir / "runs.csv").string());
        REQUIRE(back.size() == records.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].benchmark == records[i].benchmark);
            CHECK(back[i].config == records[i].config);
            CHECK(back[i].verdict == records[i].verdict);
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("isolated workers solve, verify and respect timeouts" *
          doctest::skip(std::getenv("AIGSYNT_ARENA_BIN") == nullptr)) {
    std::string arena_bin = std::getenv("AIGSYNT_ARENA_BIN");
    fs::path dir = fs::temp_directory_path() / "aigsynt_arena_test";
    fs::remove_all(dir);
    fs::create_directories(dir / "bench");
    write_aag_file(gen_mult_matrix(1, 1, 1), (dir / "bench" / "mult_bool_matrix_1_1_1.aag").string());
    write_aag_file(gen_counter(2), (dir / "bench" / "cnt2.aag").string());

    RunOptions opts;
    opts.timeout = 10;
    opts.mode = Mode::synthesis;
    opts.out_dir = (dir / "out").string();
    opts.self_exe = arena_bin;
    opts.quiet = true;

    SolverConfig classic{"classic", Algorithm::classic, {}, {}};
    SolverConfig absref_cfg{"absref", Algorithm::absref, {}, {}};
    SolverConfig portfolio{"par", Algorithm::portfolio, {{"members", "classic,absref"}},
                           {"classic", "absref"}};
    std::vector<SolverConfig> all{classic, absref_cfg, portfolio};

    SUBCASE("classic on the unit matrix benchmark") {
        RunRecord r =
            run_one(classic, all, (dir / "bench" / "mult_bool_matrix_1_1_1.aag").string(), opts);
        CHECK(r.verdict == RunVerdict::realizable);
        REQUIRE(r.solution_size.has_value());
        CHECK(*r.solution_size == 1);
        CHECK(r.verified == true);
        CHECK(r.cpu_seconds < 10.0);
    }
    SUBCASE("portfolio answers match a member and stay within the wall budget") {
        RunRecord r = run_one(portfolio, all, (dir / "bench" / "cnt2.aag").string(), opts);
        CHECK(r.verdict == RunVerdict::realizable);
        CHECK(r.wall_seconds < opts.timeout + 1.0);
    }
    fs::remove_all(dir);
}
