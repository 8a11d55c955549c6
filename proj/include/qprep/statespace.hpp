#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qprep {

/// Point on the half great circle sqrt(1-x)|0> + sqrt(x)|1>, x in [0,1].
class StateParam {
public:
    StateParam() : x_(0.0) {}

    explicit StateParam(double x) {
        constexpr double tol = 1e-12;
        if (x < -tol || x > 1.0 + tol)
            throw std::invalid_argument("StateParam: x out of [0,1]");
        x_ = x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
    }

    double value() const { return x_; }

    friend bool operator==(StateParam lhs, StateParam rhs) { return lhs.x_ == rhs.x_; }

private:
    double x_;
};

/// Amplitudes (sqrt(1-x), sqrt(x)) of the parameterized state.
inline std::pair<double, double> amplitudes(StateParam s) {
    return {std::sqrt(1.0 - s.value()), std::sqrt(s.value())};
}

/// Squared fidelity |<psi_x|psi_y>|^2.
inline double overlap(StateParam x, StateParam y) {
    const double inner = std::sqrt((1.0 - x.value()) * (1.0 - y.value())) +
                         std::sqrt(x.value() * y.value());
    return inner * inner;
}

/// Trace distance between the two pure states, 1 - overlap.
inline double trace_distance(StateParam x, StateParam y) {
    return 1.0 - overlap(x, y);
}

/// Bloch-sphere angle between the states; satisfies cos(d) = 2*overlap - 1.
inline double angular_distance(StateParam x, StateParam u) {
    const double s = x.value();
    const double t = u.value();
    double c = 1.0 - 2.0 * t - 2.0 * s + 4.0 * s * t +
               4.0 * std::sqrt(s * (1.0 - s) * t * (1.0 - t));
    constexpr double tol = 1e-12;
    if (c < -1.0 - tol || c > 1.0 + tol)
        throw std::domain_error("angular_distance: cosine out of range");
    c = c < -1.0 ? -1.0 : (c > 1.0 ? 1.0 : c);
    return std::acos(c);
}

} // namespace qprep
