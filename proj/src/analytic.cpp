#include "qprep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qprep {

namespace {

constexpr double kTwelveRoot3 = 20.784609690826528; // 12 * sqrt(3)

void check_denominator(const MobiusCoeffs& m) {
    // d + c u on [0,1] takes its extremes at the endpoints.
    if (m.d <= 0.0 || m.d + m.c <= 0.0)
        throw std::invalid_argument("fractional_term: denominator vanishes on [0,1]");
}

} // namespace

FractionalSplit fractional_term(double A, const MobiusCoeffs& m) {
    FractionalSplit out;
    out.c = m.c;
    out.d = m.d;
    if (A == 0.0) return out;
    check_denominator(m);
    if (m.c == 0.0) {
        // Exact quadratic: A (a u + b)^2 / d.
        out.quotient = {A * m.a * m.a / m.d, 2.0 * A * m.a * m.b / m.d,
                        A * m.b * m.b / m.d};
        return out;
    }
    // Long division of A (a u + b)^2 by (c u + d); remainder A (ad - bc)^2 / c^2.
    const double q1 = A * m.a * m.a / m.c;
    const double q0 = A * (2.0 * m.a * m.b * m.c - m.a * m.a * m.d) / (m.c * m.c);
    const double det = m.a * m.d - m.b * m.c;
    out.quotient = {0.0, q1, q0};
    out.num = A * det * det / (m.c * m.c);
    out.exact = false;
    return out;
}

QuadCoeffs lagrange_quadratic(double A, const MobiusCoeffs& m) {
    const FractionalSplit split = fractional_term(A, m);
    if (split.exact) return {};
    const double c = m.c;
    const double d = m.d;
    const double denom = d * (c + d) * (c + 2.0 * d);
    const double scale = split.num; // A (ad - bc)^2 / c^2
    return {scale * 2.0 * c * c / denom, -scale * c * (3.0 * c + 2.0 * d) / denom,
            scale / d};
}

ErrorBounds error_bound(double A, const MobiusCoeffs& m) {
    const FractionalSplit split = fractional_term(A, m);
    if (split.exact) return {};
    const double det = m.a * m.d - m.b * m.c;
    const double alpha = std::abs(A * det * det * m.c);
    const double dc = m.d + m.c;
    const double dmin = std::min(std::abs(m.d), std::abs(dc));
    return {alpha / (dc * dc * dc * dc * kTwelveRoot3),
            alpha / (dmin * dmin * dmin * dmin * kTwelveRoot3)};
}

double PiecewiseQuadratic::eval(double x) const {
    if (breakpoints.size() < 2 || pieces.size() + 1 != breakpoints.size())
        throw std::logic_error("PiecewiseQuadratic: inconsistent layout");
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    int idx = static_cast<int>(it - breakpoints.begin()) - 1;
    idx = std::clamp(idx, 0, static_cast<int>(pieces.size()) - 1);
    return pieces[idx].eval(x);
}

std::pair<PiecewiseQuadratic, ApproxReport>
approx_bellman(const QuadCoeffs& j, const MeasurementSet& mset, const QuadraticMove& mc) {
    const double k = mc.scale;
    if (k <= 0.0)
        throw std::invalid_argument("approx_bellman: move cost scale must be > 0");

    // Assemble the action quadratic P2 u^2 + P1 u + P0 from all operators.
    double p2 = 0.0, p1 = 0.0, p0 = 0.0;
    ApproxReport report;
    for (const auto& op : mset.ops()) {
        const MobiusCoeffs m = mobius_coeffs(op);
        if (is_filtering(op.kind)) {
            check_denominator(m);
            const FractionalSplit split = fractional_term(j.A, m);
            p2 += split.quotient.A;
            p1 += split.quotient.B;
            p0 += split.quotient.C;
            // B and C parts of J(s') (c u + d) stay polynomial.
            p1 += j.B * m.a + j.C * m.c;
            p0 += j.B * m.b + j.C * m.d;
            if (!split.exact) {
                const QuadCoeffs L = lagrange_quadratic(j.A, m);
                p2 += L.A;
                p1 += L.B;
                p0 += L.C;
                const ErrorBounds eb = error_bound(j.A, m);
                report.per_op_bound.push_back(eb.conservative);
                report.total_bound += eb.conservative;
                report.total_paper_bound += eb.paper;
            } else {
                report.per_op_bound.push_back(0.0);
            }
        } else {
            const double dest_value = j.eval(m.b / m.d);
            p1 += dest_value * m.p_slope;
            p0 += dest_value * m.p_icept;
        }
    }

    const double lead = k + p2;
    if (lead <= 0.0)
        throw std::invalid_argument("approx_bellman: non-convex action quadratic");

    // Unconstrained minimizer u*(x) = (2 k x - P1) / (2 (k + P2)); regimes
    // where it clamps to 0 or 1 give the breakpoints in x.
    const double x_lo = p1 / (2.0 * k);
    const double x_hi = (2.0 * lead + p1) / (2.0 * k);

    const QuadCoeffs at_zero{k, 0.0, p0};
    const QuadCoeffs at_one{k, -2.0 * k, k + p2 + p1 + p0};
    const QuadCoeffs interior{k * p2 / lead, k * p1 / lead, p0 - p1 * p1 / (4.0 * lead)};

    PiecewiseQuadratic pw;
    pw.breakpoints.push_back(0.0);
    auto add_piece = [&](double upper, const QuadCoeffs& q) {
        if (upper <= pw.breakpoints.back()) return;
        pw.breakpoints.push_back(std::min(upper, 1.0));
        pw.pieces.push_back(q);
    };
    add_piece(x_lo, at_zero);
    add_piece(x_hi, interior);
    add_piece(1.0, at_one);
    if (pw.pieces.empty()) { // minimizer clamps to 1 on all of [0,1]
        pw.breakpoints.push_back(1.0);
        pw.pieces.push_back(at_one);
    }
    return {std::move(pw), std::move(report)};
}

RefitResult refit_quadratic(const PiecewiseQuadratic& pw) {
    const double y0 = pw.eval(0.0);
    const double ym = pw.eval(0.5);
    const double y1 = pw.eval(1.0);
    QuadCoeffs q{2.0 * y0 - 4.0 * ym + 2.0 * y1, -3.0 * y0 + 4.0 * ym - y1, y0};

    double max_dev = 0.0;
    const int scan = 2000;
    for (int i = 0; i <= scan; ++i) {
        const double x = static_cast<double>(i) / scan;
        max_dev = std::max(max_dev, std::abs(q.eval(x) - pw.eval(x)));
    }
    return {q, max_dev};
}

std::pair<PiecewiseQuadratic, ApproxReport>
approx_bellman_iterated(const QuadCoeffs& j, const MeasurementSet& mset,
                        const QuadraticMove& mc, int rounds) {
    if (rounds < 1)
        throw std::invalid_argument("approx_bellman_iterated: rounds must be >= 1");
    auto [pw, report] = approx_bellman(j, mset, mc);
    for (int r = 1; r < rounds; ++r) {
        const RefitResult refit = refit_quadratic(pw);
        auto [next_pw, next_report] = approx_bellman(refit.coeffs, mset, mc);
        // Minimization is non-expansive, so earlier errors pass through intact.
        next_report.total_bound += report.total_bound + refit.refit_error;
        next_report.total_paper_bound += report.total_paper_bound + refit.refit_error;
        pw = std::move(next_pw);
        report = std::move(next_report);
    }
    return {std::move(pw), std::move(report)};
}

} // namespace qprep
