#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qprep/statespace.hpp"

namespace qprep {

enum class OpKind { F1, F2, J1, J2 };

bool is_filtering(OpKind k);

std::string kind_name(OpKind k);

/// One measurement operator with matrix entries sqrt(a), sqrt(b).
/// F1 = diag(sqrt a, sqrt b), F2 = antidiag(sqrt b; sqrt a),
/// J1 = [[0, sqrt a], [0, sqrt b]], J2 = [[sqrt a, 0], [sqrt b, 0]].
struct MeasurementOperator {
    OpKind kind;
    double a;
    double b;

    static MeasurementOperator make(OpKind kind, double a, double b);

    Eigen::Matrix2d matrix() const;
};

/// Fractional-linear state update s' = (a u + b)/(c u + d) together with the
/// probability line p = p_slope * u + p_icept. For filtering operators the
/// probability line coincides with the denominator; jumps carry a constant
/// destination (c = 0) and an independent probability line.
struct MobiusCoeffs {
    double a;
    double b;
    double c;
    double d;
    double p_slope;
    double p_icept;
};

struct ApplyResult {
    double prob;
    std::optional<StateParam> post; // absent iff prob == 0
};

/// State update and outcome probability for a single operator.
ApplyResult apply(const MeasurementOperator& op, StateParam s);

MobiusCoeffs mobius_coeffs(const MeasurementOperator& op);

/// Max-entry deviation of sum K^dag K from the 2x2 identity.
double check_completeness(const std::vector<MeasurementOperator>& ops);

/// Complete set of measurement operators; outcome index = position.
class MeasurementSet {
public:
    static MeasurementSet create(std::vector<MeasurementOperator> ops);

    const std::vector<MeasurementOperator>& ops() const { return ops_; }
    double completeness_defect() const { return defect_; }

private:
    MeasurementSet(std::vector<MeasurementOperator> ops, double defect)
        : ops_(std::move(ops)), defect_(defect) {}

    std::vector<MeasurementOperator> ops_;
    double defect_;
};

struct Outcome {
    int index;
    StateParam post;
    double prob;
};

/// Outcomes with positive probability at state u; probabilities sum to 1.
std::vector<Outcome> outcome_distribution(const MeasurementSet& mset, StateParam u);

// Named channels.
MeasurementSet amplitude_damping(double gamma);
MeasurementSet phase_damping(double gamma);
MeasurementSet generalized_amplitude_damping(double p, double gamma);
MeasurementSet bit_flip(double p);

} // namespace qprep
