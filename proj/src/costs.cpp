#include "qprep/costs.hpp"

#include <cmath>

namespace qprep {

TerminalCost make_threshold_terminal(StateParam target, double radius, double penalty) {
    if (radius <= 0.0)
        throw std::invalid_argument("ThresholdTerminal: radius must be > 0");
    if (penalty <= 0.0)
        throw std::invalid_argument("ThresholdTerminal: penalty must be > 0");
    return ThresholdTerminal{target, radius, penalty};
}

double terminal_cost(const TerminalCost& tc, StateParam x) {
    return std::visit(
        [&](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            const double dist = std::abs(x.value() - t.target.value());
            if constexpr (std::is_same_v<T, AffineTerminal>) {
                return dist;
            } else {
                return dist <= t.radius ? dist : t.penalty;
            }
        },
        tc);
}

MoveCost make_quadratic_move(double scale) {
    if (scale <= 0.0)
        throw std::invalid_argument("QuadraticMove: scale must be > 0");
    return QuadraticMove{scale};
}

MoveCost make_threshold_angular_move(double radius, double penalty) {
    if (radius <= 0.0)
        throw std::invalid_argument("ThresholdAngularMove: radius must be > 0");
    if (penalty <= 0.0)
        throw std::invalid_argument("ThresholdAngularMove: penalty must be > 0");
    return ThresholdAngularMove{radius, penalty};
}

double move_cost(const MoveCost& mc, StateParam s, StateParam u) {
    // Exact zero diagonal; acos roundoff would otherwise leave ~1e-8 at s = u.
    if (s == u) return 0.0;
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, QuadraticMove>) {
                const double d = s.value() - u.value();
                return m.scale * d * d;
            } else if constexpr (std::is_same_v<T, ThresholdAngularMove>) {
                return angular_distance(s, u) < m.radius ? 0.0 : m.penalty;
            } else if constexpr (std::is_same_v<T, AngularMove>) {
                return angular_distance(s, u);
            } else {
                const double d = angular_distance(s, u);
                return d * d;
            }
        },
        mc);
}

} // namespace qprep
