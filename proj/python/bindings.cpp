#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "aigsynt/aiger.hpp"
#include "aigsynt/arena.hpp"
#include "aigsynt/benchgen.hpp"
#include "aigsynt/game.hpp"
#include "aigsynt/runner.hpp"
#include "aigsynt/synthesis.hpp"
#include "aigsynt/verifier.hpp"

namespace py = pybind11;
using namespace aigsynt;

namespace {

Circuit circuit_from_text(const std::string& text) { return parse_aag(text); }

py::dict meta_to_dict(const MetaInfo& m) {
    py::dict d;
    d["status"] = to_string(m.status);
    if (m.solved_by) {
        d["solved_by"] = py::make_tuple(m.solved_by->numerator, m.solved_by->denominator,
                                        m.solved_by->label);
    }
    if (m.solved_in) d["solved_in"] = py::make_tuple(m.solved_in->seconds, m.solved_in->label);
    if (m.ref_size) d["ref_size"] = *m.ref_size;
    return d;
}

py::dict solve_text(const std::string& text, const std::string& algorithm, bool synthesize,
                    bool auto_reorder) {
    Circuit c = parse_aag(text);
    auto alg = algorithm_from_string(algorithm);
    if (!alg || *alg == Algorithm::portfolio)
        throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
    SolveOptions opts;
    opts.synthesize = synthesize;
    opts.auto_reorder = auto_reorder;
    SolveRun run = run_solver(*alg, c, opts);
    py::dict d;
    d["realizable"] = run.realizable;
    d["iterations"] = run.iterations;
    if (run.solution) {
        d["solution"] = write_aag(run.solution->circuit);
        d["solution_size"] = run.solution->gate_count;
    }
    return d;
}

py::dict verify_text(const std::string& spec_text, const std::string& solution_text,
                     double timeout) {
    Circuit spec = parse_aag(spec_text);
    Circuit sol = parse_aag(solution_text);
    py::dict d;
    SyntacticReport rep = check_syntactic(spec, sol);
    d["conformant"] = rep.pass;
    d["issues"] = rep.issues;
    if (rep.pass) {
        Verdict v = model_check(sol, timeout);
        d["status"] = to_string(v.status);
        if (v.status == Verdict::Status::falsified) {
            std::vector<std::string> steps;
            for (const auto& row : v.witness) {
                std::string s;
                for (bool bit : row) s += bit ? '1' : '0';
                steps.push_back(s);
            }
            d["witness"] = steps;
        }
    }
    return d;
}

std::vector<std::vector<int>> simulate_text(const std::string& text,
                                            const std::vector<std::vector<bool>>& trace) {
    Circuit c = parse_aag(text);
    SimulationResult r = simulate(c, trace);
    std::vector<std::vector<int>> outputs;
    for (const auto& row : r.outputs) outputs.emplace_back(row.begin(), row.end());
    return outputs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Safety-game realizability, synthesis and benchmark toolkit";

    m.def("parse_check", [](const std::string& text) {
        Circuit c = circuit_from_text(text);
        c.validate();
        py::dict d;
        d["max_var"] = c.max_var;
        d["inputs"] = c.inputs.size();
        d["latches"] = c.latches.size();
        d["outputs"] = c.outputs.size();
        d["ands"] = c.ands.size();
        return d;
    }, py::arg("text"), "Parse an ASCII AIGER circuit and return its header facts.");

    m.def("round_trip", [](const std::string& text) { return write_aag(parse_aag(text)); },
          py::arg("text"), "Parse and re-serialize a circuit canonically.");

    m.def("partition", [](const std::string& text) {
        Circuit c = parse_aag(text);
        ControlPartition p = partition_inputs(c);
        return py::make_tuple(p.uncontrollable, p.controllable);
    }, py::arg("text"), "Split input positions into (uncontrollable, controllable).");

    m.def("read_meta", [](const std::string& text) { return meta_to_dict(parse_meta(parse_aag(text))); },
          py::arg("text"), "Read the classification paragraph of a circuit.");

    m.def("gen_cycle_sched", [](unsigned n, unsigned d, unsigned t) {
        return write_aag(gen_cycle_sched(n, d, t));
    }, py::arg("n"), py::arg("d"), py::arg("t"));
    m.def("gen_mult_matrix", [](unsigned m_, unsigned n, unsigned o) {
        return write_aag(gen_mult_matrix(m_, n, o));
    }, py::arg("m"), py::arg("n"), py::arg("o"));
    m.def("gen_mult_matrix_dyn", [](unsigned m_, unsigned n) {
        return write_aag(gen_mult_matrix_dyn(m_, n));
    }, py::arg("m"), py::arg("n"));
    m.def("gen_counter", [](unsigned n) { return write_aag(gen_counter(n)); }, py::arg("n"));
    m.def("gen_adder", [](unsigned n) { return write_aag(gen_adder(n)); }, py::arg("n"));

    m.def("solve", &solve_text, py::arg("text"), py::arg("algorithm") = "classic",
          py::arg("synthesize") = false, py::arg("auto_reorder") = false,
          "Decide realizability; optionally extract and minimize a controller.");

    m.def("verify", &verify_text, py::arg("spec"), py::arg("solution"),
          py::arg("timeout") = 3600.0,
          "Check syntactic conformance and model-check a solution.");

    m.def("simulate", &simulate_text, py::arg("text"), py::arg("trace"),
          "Cycle-accurate simulation; returns the output bits per step.");

    m.def("quality_points", &arena::quality_points, py::arg("size_new"), py::arg("size_ref"),
          "Solution-size quality score: 2 - log10(size_new/size_ref), clamped at 0.");

    m.def("category_of", &arena::category_of, py::arg("benchmark_name"));
}
