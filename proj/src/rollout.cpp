#include "qprep/rollout.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qprep {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed;
    (void)splitmix64(state);
    state ^= index * 0x2545f4914f6cdd1dULL;
    return splitmix64(state);
}

TrajectoryRecord simulate_trajectory(const std::vector<Policy>& policies,
                                     const Problem& problem, StateParam x0,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    TrajectoryRecord rec;
    rec.steps.reserve(policies.size());

    StateParam state = x0;
    double accum = 0.0;
    for (const Policy& policy : policies) {
        const int node = policy.grid.nearest(state.value());
        const StateParam action(policy.actions[node]);
        const double step_cost = move_cost(problem.move, state, action);
        accum += step_cost;

        const std::vector<Outcome> outcomes = outcome_distribution(problem.mset, action);
        double total_p = 0.0;
        for (const Outcome& o : outcomes) total_p += o.prob;
        if (std::abs(total_p - 1.0) > 1e-8)
            throw std::runtime_error("simulate_trajectory: outcome probabilities do not sum to 1");

        const double draw = uniform01(rng) * total_p;
        double cum = 0.0;
        const Outcome* picked = &outcomes.back();
        for (const Outcome& o : outcomes) {
            cum += o.prob;
            if (draw < cum) {
                picked = &o;
                break;
            }
        }
        rec.steps.push_back({state.value(), action.value(), picked->index, step_cost});
        state = picked->post;
    }
    rec.terminal_state = state.value();
    rec.total_cost = accum + terminal_cost(problem.terminal, state);
    return rec;
}

TrajectoryRecord simulate_trajectory(const DPSolution& sol, const Problem& problem,
                                     StateParam x0, std::uint64_t seed) {
    return simulate_trajectory(sol.policies, problem, x0, seed);
}

RolloutEstimate estimate_policy_cost(const std::vector<Policy>& policies,
                                     const Problem& problem, StateParam x0, int n,
                                     std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("estimate_policy_cost: need at least one trajectory");

    // Welford accumulation, fixed trajectory order.
    double mean = 0.0;
    double m2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const TrajectoryRecord rec =
            simulate_trajectory(policies, problem, x0, derive_seed(seed, k));
        const double delta = rec.total_cost - mean;
        mean += delta / (k + 1);
        m2 += delta * (rec.total_cost - mean);
    }
    RolloutEstimate est{mean, 0.0, n, seed, n > 1};
    if (n > 1) est.stderr_of_mean = std::sqrt(m2 / (n - 1) / n);
    return est;
}

RolloutEstimate estimate_cost(const DPSolution& sol, const Problem& problem,
                              StateParam x0, int n, std::uint64_t seed) {
    return estimate_policy_cost(sol.policies, problem, x0, n, seed);
}

} // namespace qprep
