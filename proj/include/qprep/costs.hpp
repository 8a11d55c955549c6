#pragma once

#include <stdexcept>
#include <variant>

#include "qprep/statespace.hpp"

namespace qprep {

/// The "essentially infinity" penalty for inadmissible moves and missed targets.
struct BigValue {
    double value = 100.0;

    static BigValue make(double v) {
        if (v < 100.0)
            throw std::invalid_argument("BigValue: must be >= 100");
        return {v};
    }
};

struct AffineTerminal {
    StateParam target;
};

struct ThresholdTerminal {
    StateParam target;
    double radius;
    double penalty;
};

using TerminalCost = std::variant<AffineTerminal, ThresholdTerminal>;

TerminalCost make_threshold_terminal(StateParam target, double radius, double penalty);

/// Terminal cost paid on the final state.
double terminal_cost(const TerminalCost& tc, StateParam x);

struct QuadraticMove {
    double scale = 1.0;
};

struct ThresholdAngularMove {
    double radius;
    double penalty;
};

struct AngularMove {};

struct AngularSquaredMove {};

using MoveCost = std::variant<QuadraticMove, ThresholdAngularMove, AngularMove, AngularSquaredMove>;

MoveCost make_quadratic_move(double scale);
MoveCost make_threshold_angular_move(double radius, double penalty);

/// Per-step cost of steering the state from s to action u.
double move_cost(const MoveCost& mc, StateParam s, StateParam u);

} // namespace qprep
