#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qprep/config.hpp"

namespace qprep {

struct RunSummary {
    nlohmann::json data;

    void save(const std::string& path) const;
};

/// Backward-induction solve; writes solve.csv and summary.json under out_dir.
RunSummary cmd_solve(const RunConfig& cfg, const std::string& out_dir);

/// Monte Carlo rollout of the solved policy; writes rollout.csv, summary.json
/// and optionally trajectories.csv.
RunSummary cmd_rollout(const RunConfig& cfg, const std::string& out_dir);

/// Numeric backup vs the analytic piecewise-quadratic step on the config grid;
/// writes analytic.csv and summary.json. Affine/quadratic model only.
RunSummary cmd_analytic_check(const RunConfig& cfg, const std::string& out_dir);

/// Value-function comparison across configs differing only in measurement set;
/// writes compare.csv.
RunSummary cmd_compare_measurements(const std::vector<RunConfig>& cfgs,
                                    const std::string& out_dir);

} // namespace qprep
