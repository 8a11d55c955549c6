#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qprep/costs.hpp"
#include "qprep/measurement.hpp"
#include "qprep/statespace.hpp"

namespace qprep {

/// Uniform grid on [0,1] with nodes i/(n-1).
struct Grid {
    int n;

    static Grid make(int n) {
        if (n < 2) throw std::invalid_argument("Grid: need at least 2 nodes");
        return {n};
    }

    double spacing() const { return 1.0 / (n - 1); }
    double node(int i) const { return static_cast<double>(i) / (n - 1); }

    int nearest(double x) const {
        int i = static_cast<int>(std::lround(x * (n - 1)));
        return i < 0 ? 0 : (i >= n ? n - 1 : i);
    }
};

struct ValueFn {
    Grid grid;
    Eigen::VectorXd values;
};

/// Piecewise-linear evaluation of a grid-sampled value function.
double interpolate(const ValueFn& v, StateParam x);

struct Policy {
    Grid grid;
    Eigen::VectorXd actions;
};

struct BackupResult {
    ValueFn value;
    Policy policy;
    bool cap_hit = false;
};

/// One backward Bellman step: minimize move cost plus expected next
/// cost-to-go over the action grid, ties toward the smallest action.
BackupResult bellman_backup(const ValueFn& j_next, const MeasurementSet& mset,
                            const MoveCost& mc, BigValue big);

struct DPSolution {
    int horizon;
    std::vector<ValueFn> values;       // length horizon+1, index = time
    std::vector<Policy> policies;      // length horizon, times 0..N-1
    std::vector<double> sup_norm_diffs; // ||J_i - J_{i+1}||_inf, index i
    bool cap_hit = false;
};

DPSolution solve_finite_horizon(const TerminalCost& tc, const MoveCost& mc,
                                const MeasurementSet& mset, Grid grid, int horizon,
                                BigValue big);

/// Largest time i whose backward differences at i and all smaller indices
/// are below tol; nullopt if the first difference never settles.
std::optional<int> detect_steady_state(const DPSolution& sol, double tol);

} // namespace qprep
