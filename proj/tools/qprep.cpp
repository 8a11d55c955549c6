#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>

#include "qprep/commands.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::optional<int> steps;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "Path to JSON config")->required();
    sub->add_option("--out", opts.out_dir, "Output directory");
    sub->add_option("--seed", opts.seed, "Override the RNG seed");
    sub->add_option("--grid", opts.grid, "Override the grid size");
    sub->add_option("--steps", opts.steps, "Override the horizon length");
    sub->add_option("--set", opts.overrides, "Override a config key, key=value (JSON value)");
}

qprep::RunConfig load(const CommonOpts& opts) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::runtime_error("cannot open " + opts.config_path);
    nlohmann::json j;
    in >> j;
    for (const auto& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects key=value, got '" + kv + "'");
        j[kv.substr(0, eq)] = nlohmann::json::parse(kv.substr(eq + 1));
    }
    if (opts.seed) j["seed"] = *opts.seed;
    if (opts.grid) j["grid_n"] = *opts.grid;
    if (opts.steps) j["steps"] = *opts.steps;
    return qprep::parse_config(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-horizon optimal control for one-parameter qubit state preparation"};
    app.require_subcommand(1);

    CommonOpts solve_opts, rollout_opts, analytic_opts;
    auto* solve = app.add_subcommand("solve", "Backward-induction solve; emits value/policy CSV");
    add_common(solve, solve_opts);
    auto* rollout = app.add_subcommand("rollout", "Monte Carlo rollout of the solved policy");
    add_common(rollout, rollout_opts);
    auto* analytic =
        app.add_subcommand("analytic-check", "Numeric vs piecewise-quadratic Bellman step");
    add_common(analytic, analytic_opts);

    std::vector<std::string> compare_configs;
    std::string compare_out = "out";
    auto* compare = app.add_subcommand("compare-measurements",
                                       "Compare value functions across measurement sets");
    compare->add_option("configs", compare_configs, "Config files (>= 2)")->required();
    compare->add_option("--out", compare_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            auto rs = qprep::cmd_solve(load(solve_opts), solve_opts.out_dir);
            std::cout << rs.data.dump(2) << "\n";
        } else if (rollout->parsed()) {
            auto rs = qprep::cmd_rollout(load(rollout_opts), rollout_opts.out_dir);
            std::cout << rs.data.dump(2) << "\n";
        } else if (analytic->parsed()) {
            auto rs = qprep::cmd_analytic_check(load(analytic_opts), analytic_opts.out_dir);
            std::cout << rs.data.dump(2) << "\n";
        } else if (compare->parsed()) {
            std::vector<qprep::RunConfig> cfgs;
            for (const auto& path : compare_configs)
                cfgs.push_back(qprep::load_config(path));
            auto rs = qprep::cmd_compare_measurements(cfgs, compare_out);
            std::cout << rs.data.dump(2) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
