#pragma once

#include <cstdint>
#include <vector>

#include "qprep/costs.hpp"
#include "qprep/measurement.hpp"
#include "qprep/solver.hpp"

namespace qprep {

struct Problem {
    TerminalCost terminal;
    MoveCost move;
    MeasurementSet mset;
};

struct TrajectoryStep {
    double state;
    double action;
    int outcome_index;
    double step_cost;
};

struct TrajectoryRecord {
    std::vector<TrajectoryStep> steps;
    double terminal_state;
    double total_cost;
};

struct RolloutEstimate {
    double mean;
    double stderr_of_mean;
    int n_trajectories;
    std::uint64_t seed;
    bool stderr_defined; // false for n = 1
};

/// One closed-loop run under the per-step policies; deterministic in (inputs, seed).
TrajectoryRecord simulate_trajectory(const std::vector<Policy>& policies,
                                     const Problem& problem, StateParam x0,
                                     std::uint64_t seed);

TrajectoryRecord simulate_trajectory(const DPSolution& sol, const Problem& problem,
                                     StateParam x0, std::uint64_t seed);

/// Monte Carlo estimate of the expected total cost under the solved policy.
RolloutEstimate estimate_cost(const DPSolution& sol, const Problem& problem,
                              StateParam x0, int n, std::uint64_t seed);

/// Same estimate under a user-supplied per-step policy list.
RolloutEstimate estimate_policy_cost(const std::vector<Policy>& policies,
                                     const Problem& problem, StateParam x0, int n,
                                     std::uint64_t seed);

/// Counter-based seed derivation; trajectory k always sees the same stream
/// regardless of execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace qprep
