#include "qprep/solver.hpp"

#include <cmath>
#include <limits>

namespace qprep {

double interpolate(const ValueFn& v, StateParam x) {
    const int n = v.grid.n;
    if (v.values.size() != n)
        throw std::invalid_argument("interpolate: value array length mismatch");
    const double t = x.value() * (n - 1);
    int lo = static_cast<int>(std::floor(t));
    if (lo >= n - 1) lo = n - 2;
    const double w = t - lo;
    return (1.0 - w) * v.values[lo] + w * v.values[lo + 1];
}

BackupResult bellman_backup(const ValueFn& j_next, const MeasurementSet& mset,
                            const MoveCost& mc, BigValue big) {
    const Grid grid = j_next.grid;
    const int n = grid.n;
    if (j_next.values.size() != n)
        throw std::invalid_argument("bellman_backup: value array length mismatch");
    if (mset.ops().empty())
        throw std::invalid_argument("bellman_backup: empty measurement set");

    // Expected next cost-to-go depends on the action only.
    Eigen::VectorXd expected(n);
    for (int k = 0; k < n; ++k) {
        const StateParam u(grid.node(k));
        double acc = 0.0;
        for (const Outcome& o : outcome_distribution(mset, u))
            acc += o.prob * interpolate(j_next, o.post);
        expected[k] = acc;
    }

    const double cap = big.value * 10.0;
    BackupResult out{{grid, Eigen::VectorXd(n)}, {grid, Eigen::VectorXd(n)}, false};
    for (int i = 0; i < n; ++i) {
        const StateParam x(grid.node(i));
        double best = std::numeric_limits<double>::infinity();
        int best_k = 0;
        for (int k = 0; k < n; ++k) {
            const double c = move_cost(mc, x, StateParam(grid.node(k))) + expected[k];
            if (c < best) {
                best = c;
                best_k = k;
            }
        }
        if (best > cap) {
            best = cap;
            out.cap_hit = true;
        }
        out.value.values[i] = best;
        out.policy.actions[i] = grid.node(best_k);
    }
    return out;
}

DPSolution solve_finite_horizon(const TerminalCost& tc, const MoveCost& mc,
                                const MeasurementSet& mset, Grid grid, int horizon,
                                BigValue big) {
    if (horizon < 1)
        throw std::invalid_argument("solve_finite_horizon: horizon must be >= 1");

    DPSolution sol;
    sol.horizon = horizon;
    sol.values.resize(horizon + 1);
    sol.policies.resize(horizon);
    sol.sup_norm_diffs.assign(horizon, 0.0);

    Eigen::VectorXd term(grid.n);
    for (int i = 0; i < grid.n; ++i)
        term[i] = terminal_cost(tc, StateParam(grid.node(i)));
    sol.values[horizon] = {grid, term};

    for (int i = horizon - 1; i >= 0; --i) {
        BackupResult r = bellman_backup(sol.values[i + 1], mset, mc, big);
        sol.cap_hit = sol.cap_hit || r.cap_hit;
        sol.sup_norm_diffs[i] =
            (r.value.values - sol.values[i + 1].values).cwiseAbs().maxCoeff();
        sol.values[i] = std::move(r.value);
        sol.policies[i] = std::move(r.policy);
    }
    return sol;
}

std::optional<int> detect_steady_state(const DPSolution& sol, double tol) {
    if (sol.sup_norm_diffs.empty() || sol.sup_norm_diffs[0] >= tol)
        return std::nullopt;
    int i = 0;
    while (i + 1 < static_cast<int>(sol.sup_norm_diffs.size()) &&
           sol.sup_norm_diffs[i + 1] < tol)
        ++i;
    return i;
}

} // namespace qprep
