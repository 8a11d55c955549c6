#include "qprep/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace qprep {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json base_summary(const RunConfig& cfg) {
    return json{{"config", config_to_json(cfg)}, {"generated_at", timestamp()}};
}

json value_argmins(const DPSolution& sol) {
    json arr = json::array();
    for (int i = 0; i <= sol.horizon; ++i) {
        int idx = 0;
        sol.values[i].values.minCoeff(&idx);
        arr.push_back({{"timestep", i},
                       {"x", sol.values[i].grid.node(idx)},
                       {"value", sol.values[i].values[idx]}});
    }
    return arr;
}

DPSolution solve_from_config(const RunConfig& cfg, const Problem& problem) {
    return solve_finite_horizon(problem.terminal, problem.move, problem.mset, cfg.grid(),
                                cfg.steps, cfg.big());
}

} // namespace

void RunSummary::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data.dump(2) << "\n";
}

RunSummary cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    const Problem problem = cfg.problem();
    const DPSolution sol = solve_from_config(cfg, problem);

    auto csv = open_out(out_dir, "solve.csv");
    csv << "timestep,node_index,x,value,policy_action\n";
    for (int i = 0; i <= sol.horizon; ++i) {
        for (int k = 0; k < cfg.grid_n; ++k) {
            csv << i << "," << k << "," << fmt17(sol.values[i].grid.node(k)) << ","
                << fmt17(sol.values[i].values[k]) << ",";
            if (i < sol.horizon) csv << fmt17(sol.policies[i].actions[k]);
            csv << "\n";
        }
    }
    csv.close();

    const auto steady = detect_steady_state(sol, cfg.steady_tol);
    json summary = base_summary(cfg);
    summary["completeness_defect"] = problem.mset.completeness_defect();
    summary["steady_state_step"] = steady ? json(*steady) : json(nullptr);
    summary["value_argmin"] = value_argmins(sol);
    summary["cap_hit"] = sol.cap_hit;
    summary["outputs"] = {out_dir + "/solve.csv"};

    RunSummary rs{std::move(summary)};
    rs.save(out_dir + "/summary.json");
    return rs;
}

RunSummary cmd_rollout(const RunConfig& cfg, const std::string& out_dir) {
    const Problem problem = cfg.problem();
    const DPSolution sol = solve_from_config(cfg, problem);
    const RolloutEstimate est =
        estimate_cost(sol, problem, StateParam(cfg.x0), cfg.trajectories, cfg.seed);

    auto csv = open_out(out_dir, "rollout.csv");
    csv << "mean,stderr,n_trajectories,seed,stderr_defined\n";
    csv << fmt17(est.mean) << "," << fmt17(est.stderr_of_mean) << ","
        << est.n_trajectories << "," << est.seed << "," << (est.stderr_defined ? 1 : 0)
        << "\n";
    csv.close();

    json outputs = {out_dir + "/rollout.csv"};
    if (cfg.dump_trajectories) {
        const TrajectoryRecord rec =
            simulate_trajectory(sol, problem, StateParam(cfg.x0), derive_seed(cfg.seed, 0));
        auto dump = open_out(out_dir, "trajectories.csv");
        dump << "time,state,action,outcome_index,step_cost\n";
        for (int t = 0; t < static_cast<int>(rec.steps.size()); ++t) {
            const auto& s = rec.steps[t];
            dump << t << "," << fmt17(s.state) << "," << fmt17(s.action) << ","
                 << s.outcome_index << "," << fmt17(s.step_cost) << "\n";
        }
        outputs.push_back(out_dir + "/trajectories.csv");
    }

    json summary = base_summary(cfg);
    summary["completeness_defect"] = problem.mset.completeness_defect();
    summary["estimate"] = {{"mean", est.mean},
                           {"stderr", est.stderr_of_mean},
                           {"n_trajectories", est.n_trajectories},
                           {"seed", est.seed},
                           {"stderr_defined", est.stderr_defined}};
    summary["solver_value_at_x0"] = interpolate(sol.values[0], StateParam(cfg.x0));
    summary["cap_hit"] = sol.cap_hit;
    summary["outputs"] = std::move(outputs);

    RunSummary rs{std::move(summary)};
    rs.save(out_dir + "/summary.json");
    return rs;
}

RunSummary cmd_analytic_check(const RunConfig& cfg, const std::string& out_dir) {
    if (cfg.model != "affine")
        throw std::invalid_argument("analytic check requires quadratic move cost");
    const MeasurementSet mset = cfg.measurement.build();
    const QuadraticMove mc{cfg.cost_scale};
    const Grid grid = cfg.grid();

    Eigen::VectorXd sampled(grid.n);
    for (int i = 0; i < grid.n; ++i) sampled[i] = cfg.analytic.eval(grid.node(i));
    const BackupResult numeric =
        bellman_backup({grid, sampled}, mset, MoveCost(mc), cfg.big());
    const auto [pw, report] = approx_bellman(cfg.analytic, mset, mc);

    double max_dev = 0.0;
    auto csv = open_out(out_dir, "analytic.csv");
    csv << "x,numeric,approx,abs_dev\n";
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        const double num = numeric.value.values[i];
        const double app = pw.eval(x);
        const double dev = std::abs(num - app);
        max_dev = std::max(max_dev, dev);
        csv << fmt17(x) << "," << fmt17(num) << "," << fmt17(app) << "," << fmt17(dev)
            << "\n";
    }
    csv.close();

    json pieces = json::array();
    for (const auto& piece : pw.pieces)
        pieces.push_back({{"A", piece.A}, {"B", piece.B}, {"C", piece.C}});

    json summary = base_summary(cfg);
    summary["max_deviation"] = max_dev;
    summary["report"] = {{"per_op_bound", report.per_op_bound},
                         {"total_bound", report.total_bound},
                         {"total_paper_bound", report.total_paper_bound},
                         {"nodes", report.nodes}};
    summary["piecewise"] = {{"breakpoints", pw.breakpoints}, {"pieces", std::move(pieces)}};
    summary["outputs"] = {out_dir + "/analytic.csv"};

    RunSummary rs{std::move(summary)};
    rs.save(out_dir + "/summary.json");
    return rs;
}

RunSummary cmd_compare_measurements(const std::vector<RunConfig>& cfgs,
                                    const std::string& out_dir) {
    if (cfgs.size() < 2)
        throw std::invalid_argument("compare-measurements: need at least 2 configs");
    json ref = config_to_json(cfgs[0]);
    ref.erase("measurement");
    for (const auto& cfg : cfgs) {
        json other = config_to_json(cfg);
        other.erase("measurement");
        if (other != ref)
            throw std::invalid_argument(
                "compare-measurements: configs may differ only in the measurement set");
    }

    const std::vector<double> probes{0.0, 0.25, 0.5, 0.75, 1.0};
    auto csv = open_out(out_dir, "compare.csv");
    csv << "config_index,measurement,sup_norm_J0";
    for (double x : probes) csv << ",J0_at_" << fmt17(x);
    csv << "\n";

    json rows = json::array();
    for (std::size_t idx = 0; idx < cfgs.size(); ++idx) {
        const Problem problem = cfgs[idx].problem();
        const DPSolution sol = solve_from_config(cfgs[idx], problem);
        const double sup = sol.values[0].values.cwiseAbs().maxCoeff();
        json meas = config_to_json(cfgs[idx])["measurement"];
        // Comma-free label so the CSV stays unquoted.
        std::string label;
        if (!cfgs[idx].measurement.channel.empty()) {
            label = cfgs[idx].measurement.channel + "(gamma=" +
                    fmt17(cfgs[idx].measurement.gamma) + ";p=" +
                    fmt17(cfgs[idx].measurement.p) + ")";
        } else {
            for (const auto& op : cfgs[idx].measurement.operators) {
                if (!label.empty()) label += "+";
                label += kind_name(op.kind) + "(" + fmt17(op.a) + ";" + fmt17(op.b) + ")";
            }
        }
        csv << idx << "," << label << "," << fmt17(sup);
        json probe_vals = json::array();
        for (double x : probes) {
            const double v = interpolate(sol.values[0], StateParam(x));
            csv << "," << fmt17(v);
            probe_vals.push_back(v);
        }
        csv << "\n";
        rows.push_back({{"config_index", idx},
                        {"measurement", std::move(meas)},
                        {"sup_norm_J0", sup},
                        {"J0_at_probes", std::move(probe_vals)}});
    }
    csv.close();

    json summary{{"generated_at", timestamp()},
                 {"rows", std::move(rows)},
                 {"outputs", {out_dir + "/compare.csv"}}};
    RunSummary rs{std::move(summary)};
    rs.save(out_dir + "/summary.json");
    return rs;
}

} // namespace qprep
