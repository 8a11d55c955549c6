#pragma once

#include <array>
#include <vector>

#include "qprep/costs.hpp"
#include "qprep/measurement.hpp"

namespace qprep {

/// Quadratic A x^2 + B x + C.
struct QuadCoeffs {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;

    double eval(double x) const { return (A * x + B) * x + C; }
};

/// Split of the weighted filtering term A (a u + b)^2 / (c u + d) into a
/// polynomial quotient and the fractional remainder num / (d + c u).
struct FractionalSplit {
    QuadCoeffs quotient;
    double num = 0.0;  // N(u) = num / (d + c u); zero when the split is exact
    double c = 0.0;
    double d = 1.0;
    bool exact = true; // c == 0 or A == 0

    double remainder(double u) const { return exact ? 0.0 : num / (d + c * u); }
};

FractionalSplit fractional_term(double A, const MobiusCoeffs& m);

/// Second-order Lagrange interpolant of the fractional remainder at u = 0, 1/2, 1.
QuadCoeffs lagrange_quadratic(double A, const MobiusCoeffs& m);

struct ErrorBounds {
    double paper = 0.0;        // denominator (d+c)^4, as printed
    double conservative = 0.0; // denominator min over [0,1] of |d + c u|, ^4
};

ErrorBounds error_bound(double A, const MobiusCoeffs& m);

struct PiecewiseQuadratic {
    std::vector<double> breakpoints; // increasing, includes 0 and 1
    std::vector<QuadCoeffs> pieces;  // one per interval

    double eval(double x) const;
};

struct ApproxReport {
    std::vector<double> per_op_bound; // conservative, one per filtering operator
    double total_bound = 0.0;
    double total_paper_bound = 0.0;
    std::array<double, 3> nodes{0.0, 0.5, 1.0};
};

/// One approximate Bellman step for a quadratic cost-to-go under a quadratic
/// move cost: closed-form minimization of a u-quadratic per state, yielding a
/// piecewise quadratic value function with an accumulated error bound.
std::pair<PiecewiseQuadratic, ApproxReport>
approx_bellman(const QuadCoeffs& j, const MeasurementSet& mset, const QuadraticMove& mc);

struct RefitResult {
    QuadCoeffs coeffs;
    double refit_error; // scanned max deviation from the piecewise input
};

/// Collapse a piecewise quadratic back to a single quadratic through its
/// values at x = 0, 1/2, 1.
RefitResult refit_quadratic(const PiecewiseQuadratic& pw);

/// Iterate the approximate step, refitting between rounds; error bounds and
/// refit errors accumulate additively.
std::pair<PiecewiseQuadratic, ApproxReport>
approx_bellman_iterated(const QuadCoeffs& j, const MeasurementSet& mset,
                        const QuadraticMove& mc, int rounds);

} // namespace qprep
