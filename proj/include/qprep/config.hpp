#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "qprep/analytic.hpp"
#include "qprep/rollout.hpp"
#include "qprep/solver.hpp"

namespace qprep {

struct MeasurementSpec {
    // Either a channel name with parameters or an explicit operator list.
    std::string channel; // empty when operators are given explicitly
    double gamma = 0.0;
    double p = 0.0;
    std::vector<MeasurementOperator> operators;

    MeasurementSet build() const;
};

struct RunConfig {
    std::string model = "affine"; // "affine" | "threshold"
    MeasurementSpec measurement;
    int steps = 5;
    int grid_n = 101;
    double cost_scale = 1.0;
    double big_value = 100.0;
    double target = 0.0;
    double terminal_radius = 0.2;
    double move_radius = 0.2;
    std::uint64_t seed = 1;
    int trajectories = 10000;
    double x0 = 0.5;
    double steady_tol = 0.01;
    bool dump_trajectories = false;
    QuadCoeffs analytic{0.0, 1.0, 0.0};

    TerminalCost terminal() const;
    MoveCost move() const;
    Problem problem() const;
    Grid grid() const { return Grid::make(grid_n); }
    BigValue big() const { return BigValue::make(big_value); }
};

/// Strict parse: unknown keys are an error naming the offending key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Canonical JSON echo; parsing it back reproduces the identical config.
nlohmann::json config_to_json(const RunConfig& cfg);

/// 17-significant-digit decimal rendering used in every emitted file.
std::string fmt17(double v);

} // namespace qprep
