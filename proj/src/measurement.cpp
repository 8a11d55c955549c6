#include "qprep/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qprep {

bool is_filtering(OpKind k) { return k == OpKind::F1 || k == OpKind::F2; }

std::string kind_name(OpKind k) {
    switch (k) {
    case OpKind::F1: return "f1";
    case OpKind::F2: return "f2";
    case OpKind::J1: return "j1";
    case OpKind::J2: return "j2";
    }
    return "?";
}

MeasurementOperator MeasurementOperator::make(OpKind kind, double a, double b) {
    if (a < 0.0 || b < 0.0)
        throw std::invalid_argument("MeasurementOperator: negative parameter");
    if (a > 1.0 || b > 1.0)
        throw std::invalid_argument("MeasurementOperator: parameter exceeds 1");
    if (a == 0.0 && b == 0.0)
        throw std::invalid_argument("MeasurementOperator: zero operator");
    if (is_filtering(kind) && a * b == 0.0)
        throw std::invalid_argument("MeasurementOperator: filtering kind requires ab != 0");
    return {kind, a, b};
}

Eigen::Matrix2d MeasurementOperator::matrix() const {
    const double ra = std::sqrt(a);
    const double rb = std::sqrt(b);
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    switch (kind) {
    case OpKind::F1: m(0, 0) = ra; m(1, 1) = rb; break;
    case OpKind::F2: m(0, 1) = rb; m(1, 0) = ra; break;
    case OpKind::J1: m(0, 1) = ra; m(1, 1) = rb; break;
    case OpKind::J2: m(0, 0) = ra; m(1, 0) = rb; break;
    }
    return m;
}

ApplyResult apply(const MeasurementOperator& op, StateParam s) {
    const double u = s.value();
    double p = 0.0;
    double post = 0.0;
    switch (op.kind) {
    case OpKind::F1:
        p = (op.b - op.a) * u + op.a;
        if (p > 0.0) post = op.b * u / p;
        break;
    case OpKind::F2:
        p = (op.b - op.a) * u + op.a;
        if (p > 0.0) post = op.a * (1.0 - u) / p;
        break;
    case OpKind::J1:
        p = (op.a + op.b) * u;
        post = op.b / (op.a + op.b);
        break;
    case OpKind::J2:
        p = (op.a + op.b) * (1.0 - u);
        post = op.b / (op.a + op.b);
        break;
    }
    if (p <= 0.0) return {0.0, std::nullopt};
    return {p, StateParam(post)};
}

MobiusCoeffs mobius_coeffs(const MeasurementOperator& op) {
    switch (op.kind) {
    case OpKind::F1:
        return {op.b, 0.0, op.b - op.a, op.a, op.b - op.a, op.a};
    case OpKind::F2:
        return {-op.a, op.a, op.b - op.a, op.a, op.b - op.a, op.a};
    case OpKind::J1:
        return {0.0, op.b / (op.a + op.b), 0.0, 1.0, op.a + op.b, 0.0};
    case OpKind::J2:
        return {0.0, op.b / (op.a + op.b), 0.0, 1.0, -(op.a + op.b), op.a + op.b};
    }
    throw std::logic_error("mobius_coeffs: bad kind");
}

double check_completeness(const std::vector<MeasurementOperator>& ops) {
    if (ops.empty())
        throw std::invalid_argument("check_completeness: empty operator list");
    Eigen::Matrix2d sum = Eigen::Matrix2d::Zero();
    for (const auto& op : ops) {
        const Eigen::Matrix2d k = op.matrix();
        sum += k.transpose() * k;
    }
    return (sum - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
}

MeasurementSet MeasurementSet::create(std::vector<MeasurementOperator> ops) {
    const double defect = check_completeness(ops);
    if (defect > 1e-9)
        throw std::invalid_argument("MeasurementSet: completeness defect " +
                                    std::to_string(defect));
    const bool has_filter = std::any_of(ops.begin(), ops.end(), [](const auto& op) {
        return is_filtering(op.kind);
    });
    if (!has_filter)
        throw std::invalid_argument("MeasurementSet: needs at least one filtering operator");
    return MeasurementSet(std::move(ops), defect);
}

std::vector<Outcome> outcome_distribution(const MeasurementSet& mset, StateParam u) {
    std::vector<Outcome> out;
    for (int j = 0; j < static_cast<int>(mset.ops().size()); ++j) {
        const ApplyResult r = apply(mset.ops()[j], u);
        if (r.prob > 0.0) out.push_back({j, *r.post, r.prob});
    }
    return out;
}

namespace {

// Degenerate filtering parameters (a=0 or b=0) describe rank-1 matrices;
// reinterpret them as the equivalent jump so set construction stays valid.
void push_op(std::vector<MeasurementOperator>& ops, OpKind kind, double a, double b) {
    if (a == 0.0 && b == 0.0) return;
    // F1(0,b) = J1(0,b); F1(a,0) = J2(a,0); F2(0,b) = J1(b,0); F2(a,0) = J2(0,a).
    if (kind == OpKind::F1 && a * b == 0.0)
        kind = (a == 0.0) ? OpKind::J1 : OpKind::J2;
    else if (kind == OpKind::F2 && a * b == 0.0) {
        kind = (b == 0.0) ? OpKind::J2 : OpKind::J1;
        std::swap(a, b);
    }
    ops.push_back(MeasurementOperator::make(kind, a, b));
}

MeasurementSet finish(std::vector<MeasurementOperator> ops, const char* name) {
    if (ops.empty())
        throw std::invalid_argument(std::string(name) + ": all operators vanish");
    return MeasurementSet::create(std::move(ops));
}

void check_unit(double v, const char* name) {
    if (v < 0.0 || v > 1.0)
        throw std::invalid_argument(std::string(name) + ": parameter out of [0,1]");
}

} // namespace

MeasurementSet amplitude_damping(double gamma) {
    check_unit(gamma, "amplitude_damping");
    std::vector<MeasurementOperator> ops;
    push_op(ops, OpKind::F1, 1.0, 1.0 - gamma);
    push_op(ops, OpKind::J1, gamma, 0.0);
    return finish(std::move(ops), "amplitude_damping");
}

MeasurementSet phase_damping(double gamma) {
    check_unit(gamma, "phase_damping");
    std::vector<MeasurementOperator> ops;
    push_op(ops, OpKind::F1, 1.0, 1.0 - gamma);
    push_op(ops, OpKind::J1, 0.0, gamma);
    return finish(std::move(ops), "phase_damping");
}

MeasurementSet generalized_amplitude_damping(double p, double gamma) {
    check_unit(gamma, "generalized_amplitude_damping");
    check_unit(p, "generalized_amplitude_damping");
    std::vector<MeasurementOperator> ops;
    push_op(ops, OpKind::F1, p, p * (1.0 - gamma));
    push_op(ops, OpKind::F1, (1.0 - p) * (1.0 - gamma), 1.0 - p);
    push_op(ops, OpKind::J1, p * gamma, 0.0);
    push_op(ops, OpKind::J2, 0.0, (1.0 - p) * gamma);
    return finish(std::move(ops), "generalized_amplitude_damping");
}

MeasurementSet bit_flip(double p) {
    check_unit(p, "bit_flip");
    std::vector<MeasurementOperator> ops;
    push_op(ops, OpKind::F1, p, p);
    push_op(ops, OpKind::F2, 1.0 - p, 1.0 - p);
    return finish(std::move(ops), "bit_flip");
}

} // namespace qprep
