#include "aigsynt/runner.hpp"

#include <stdexcept>

#include "aigsynt/absref.hpp"
#include "aigsynt/compositional.hpp"
#include "aigsynt/game.hpp"

namespace aigsynt {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::classic: return "classic";
        case Algorithm::monolithic: return "monolithic";
        case Algorithm::global: return "global";
        case Algorithm::incremental: return "incremental";
        case Algorithm::backforth: return "backforth";
        case Algorithm::absref: return "absref";
        default: return "portfolio";
    }
}

std::optional<Algorithm> algorithm_from_string(const std::string& name) {
    for (Algorithm a : {Algorithm::classic, Algorithm::monolithic, Algorithm::global,
                        Algorithm::incremental, Algorithm::backforth, Algorithm::absref,
                        Algorithm::portfolio})
        if (to_string(a) == name) return a;
    return std::nullopt;
}

SolveOptions options_from_flags(const std::map<std::string, std::string>& flags) {
    SolveOptions o;
    for (const auto& [key, value] : flags) {
        if (key == "reorder") {
            o.auto_reorder = (value == "on" || value == "true" || value == "1");
        } else if (key == "reclaim") {
            if (value == "eager")
                o.reclamation = ReclamationPolicy::eager;
            else if (value == "deferred")
                o.reclamation = ReclamationPolicy::deferred;
            else
                throw std::invalid_argument("reclaim flag expects eager or deferred");
        } else if (key == "decomp-cap") {
            o.decomposition_cap = std::stoul(value);
        } else if (key == "cones") {
            if (value == "aggressive")
                o.aggressive_cones = true;
            else if (value == "conservative")
                o.aggressive_cones = false;
            else
                throw std::invalid_argument("cones flag expects aggressive or conservative");
        } else if (key == "members") {
            // portfolio membership, consumed by the scheduler
        } else {
            throw std::invalid_argument("unknown solver flag '" + key + "'");
        }
    }
    return o;
}

SolveRun run_solver(Algorithm algorithm, const Circuit& c, const SolveOptions& opts) {
    BddManager::Config cfg;
    cfg.auto_reorder = opts.auto_reorder;
    cfg.reclamation = opts.reclamation;
    BddManager mgr(cfg);
    ControlPartition part = partition_inputs(c);
    SafetyGame game = build_game(mgr, c, part);

    GameResult result;
    switch (algorithm) {
        case Algorithm::classic:
            result = solve_classic(game);
            break;
        case Algorithm::monolithic:
            result = solve_monolithic(game);
            break;
        case Algorithm::global:
        case Algorithm::incremental:
        case Algorithm::backforth: {
            Decomposition d = decompose_error(c, opts.decomposition_cap);
            CompositionalOptions copts;
            copts.aggressive_cones = opts.aggressive_cones;
            std::vector<SubgameSolution> subs = solve_all_subgames(game, d, copts);
            if (algorithm == Algorithm::global)
                result = aggregate_global(game, subs);
            else if (algorithm == Algorithm::incremental)
                result = aggregate_incremental(game, std::move(subs));
            else
                result = back_and_forth(game, subs);
            break;
        }
        case Algorithm::absref:
            result = solve_absref(game, opts.synthesize);
            break;
        case Algorithm::portfolio:
            throw std::invalid_argument("portfolio runs are scheduled by the arena, not run_solver");
    }

    SolveRun run;
    run.realizable = result.realizable;
    run.iterations = result.iterations;
    run.peak_nodes = result.stats.peak_nodes;
    run.solve_seconds = result.stats.cpu_seconds;
    if (opts.synthesize && result.realizable)
        run.solution = synthesize(c, part, game, result.winning_region);
    return run;
}

}  // namespace aigsynt
