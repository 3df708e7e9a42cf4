#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "aigsynt/benchgen.hpp"

using namespace aigsynt;
namespace fs = std::filesystem;

namespace {

void write_out(const Circuit& c, const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    fs::path path = fs::path(out_dir) / name;
    write_aag_file(c, path.string());
    std::cout << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parameterized safety-synthesis benchmark generator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    unsigned n = 1, d = 1, t = 1, m = 1, o = 1;

    CLI::App* cycle = app.add_subcommand("cycle-sched", "washing-cycle scheduling family");
    cycle->add_option("--n", n, "number of tanks")->required();
    cycle->add_option("--d", d, "reaction delay")->required();
    cycle->add_option("--t", t, "tanks per pipe")->required();

    CLI::App* mult = app.add_subcommand("mult-matrix", "boolean matrix multiplication family");
    mult->add_option("--m", m)->required();
    mult->add_option("--n", n)->required();
    mult->add_option("--o", o)->required();

    CLI::App* dyn = app.add_subcommand("mult-matrix-dyn", "repeated matrix multiplication family");
    dyn->add_option("--m", m)->required();
    dyn->add_option("--n", n)->required();

    CLI::App* cnt = app.add_subcommand("cnt", "counter family");
    cnt->add_option("--n", n, "bit width")->required();

    CLI::App* add = app.add_subcommand("add", "adder family");
    add->add_option("--n", n, "bit width")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cycle->parsed()) write_out(gen_cycle_sched(n, d, t), out_dir, cycle_sched_name(n, d, t));
        if (mult->parsed()) write_out(gen_mult_matrix(m, n, o), out_dir, mult_matrix_name(m, n, o));
        if (dyn->parsed()) write_out(gen_mult_matrix_dyn(m, n), out_dir, mult_matrix_dyn_name(m, n));
        if (cnt->parsed()) write_out(gen_counter(n), out_dir, counter_name(n));
        if (add->parsed()) write_out(gen_adder(n), out_dir, adder_name(n));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
