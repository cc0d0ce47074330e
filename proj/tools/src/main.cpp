#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

#include "erw/errors.hpp"
#include "erw/version.hpp"

namespace erw::cli {

namespace {

void add_common(CLI::App* cmd, CommonOptions& c, bool model_required = true) {
    auto* model = cmd->add_option("--model", c.model,
                                  "memory model: full | first:M | last:K | "
                                  "first:M+last:K | skipfirst:K");
    if (model_required) model->required();
    cmd->add_option("--p", c.p, "reinforcement probability in [0,1]")->required();
    cmd->add_option("--r", c.r, "P(first step = +1); defaults to p");
    cmd->add_option("--start", c.start, "fixed start prefix, e.g. +1 or +1,-1");
    cmd->add_flag("--strict", c.strict, "require 0 < p < 1");
}

}  // namespace

int dispatch(const std::vector<std::string>& argv) {
    CLI::App app{"elephant random walks with restricted memory: simulation, exact laws, "
                 "predictions and verification"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo ensemble");
    add_common(simulate, sim.common);
    simulate->add_option("--n", sim.n, "steps per path")->required();
    simulate->add_option("--paths", sim.paths, "number of paths")->required();
    simulate->add_option("--seed", sim.seed, "base seed (path i uses stream (seed, i))");
    simulate->add_option("--stat", sim.stat, "raw | over-n | clt:(fixed|random|none)");
    simulate->add_option("--mult", sim.mult, "step multiplier atoms v:w,v:w,...");
    simulate->add_option("--mult-seed", sim.mult_seed, "multiplier stream seed (default seed+1)");
    simulate->add_option("--record", sim.record, "none | checkpoints | full");
    simulate->add_option("--checkpoints", sim.checkpoints, "explicit checkpoint list a,b,c");
    simulate->add_option("--out", sim.out, "output payload path")->required();
    simulate->add_option("--format", sim.format, "json | csv");

    ExactOptions exact;
    auto* exact_cmd = app.add_subcommand("exact", "exact law or moments of T_n");
    add_common(exact_cmd, exact.common);
    exact_cmd->add_option("--n", exact.n, "horizon")->required();
    exact_cmd->add_option("--method", exact.method, "enum | dp | moments");
    exact_cmd->add_option("--max-moment", exact.max_moment, "highest power for --method moments");
    exact_cmd->add_option("--out", exact.out, "output payload path")->required();
    exact_cmd->add_option("--format", exact.format, "json | csv");

    PredictOptions predict;
    auto* predict_cmd = app.add_subcommand("predict", "closed-form values and limit laws");
    add_common(predict_cmd, predict.common);
    predict_cmd->add_option("--quantity", predict.quantity, "mean | variance | lln-law | clt-law")
        ->required();
    predict_cmd->add_option("--n", predict.n, "horizon for mean/variance");
    predict_cmd->add_option("--centering", predict.centering, "auto | none | fixed | random");
    predict_cmd->add_flag("--skipfirst-printed-variance", predict.skipfirst_printed_variance,
                          "use the 1/(4-3p_k) variant for skipfirst:k");
    predict_cmd->add_option("--out", predict.out, "write JSON here instead of stdout");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "simulate and test against the theory");
    add_common(verify_cmd, verify.common);
    verify_cmd->add_option("--test", verify.test, "ks | atoms | moments")->required();
    verify_cmd->add_option("--alpha", verify.alpha, "significance level");
    verify_cmd->add_option("--n", verify.n, "steps per path")->required();
    verify_cmd->add_option("--paths", verify.paths, "number of paths")->required();
    verify_cmd->add_option("--seed", verify.seed, "base seed");
    verify_cmd->add_option("--stat", verify.stat, "raw | over-n | clt:... (default auto)");
    verify_cmd->add_option("--centering", verify.centering, "auto | none | fixed | random");
    verify_cmd->add_option("--mult", verify.mult, "step multiplier atoms v:w,...");
    verify_cmd->add_option("--mult-seed", verify.mult_seed, "multiplier stream seed");
    verify_cmd->add_option("--eps", verify.eps, "atom classification half-window");
    verify_cmd->add_option("--rel-tol", verify.rel_tol, "relative tolerance for moments");
    verify_cmd->add_option("--out", verify.out, "write the report here instead of stdout");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep of empirical scalings");
    add_common(sweep_cmd, sweep.common);
    sweep_cmd->add_option("--param", sweep.param, "swept parameter (p)");
    sweep_cmd->add_option("--from", sweep.from, "start value")->required();
    sweep_cmd->add_option("--to", sweep.to, "end value")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "grid points")->required();
    sweep_cmd->add_option("--n", sweep.n, "steps per path")->required();
    sweep_cmd->add_option("--paths", sweep.paths, "paths per grid point")->required();
    sweep_cmd->add_option("--seed", sweep.seed, "base seed");
    sweep_cmd->add_option("--out", sweep.out, "output CSV path")->required();

    ReplayOptions replay;
    auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest and compare digests");
    replay_cmd->add_option("manifest", replay.manifest, "manifest JSON path")->required();
    replay_cmd->add_option("--out", replay.out, "where to write the replayed payload")
        ->required();

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, argv);
        if (*exact_cmd) return cmd_exact(exact, argv);
        if (*predict_cmd) return cmd_predict(predict, argv);
        if (*verify_cmd) return cmd_verify(verify, argv);
        if (*sweep_cmd) return cmd_sweep(sweep, argv);
        if (*replay_cmd) return cmd_replay(replay);
    } catch (const NoFormulaError& e) {
        std::cerr << "no formula: " << e.what() << "\n";
        return kExitNoFormula;
    } catch (const CapabilityError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitCapability;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace erw::cli

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return erw::cli::dispatch(args);
}
