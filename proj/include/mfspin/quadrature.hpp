#pragma once

#include <functional>
#include <vector>

namespace mfspin::quad {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes/weights computed by Newton iteration on the Legendre recurrence;
/// results are cached per node count.
const GaussLegendreRule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre integral of f over [a, b].
double gauss_fixed(const std::function<double(double)>& f, double a, double b, int n);

struct AdaptiveOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    int max_segments = 40000;
};

/// Adaptive bisection with an embedded GL15/GL31 error estimate.
/// Throws NumericError when the segment budget is exhausted before the
/// tolerance is met; the message carries the residual error estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const AdaptiveOptions& opts = {});

/// Integral of f over [a, +inf) via the u = 1/omega substitution on the tail.
/// split must be > 0; [a, split] is integrated directly, the rest transformed.
double integrate_to_infinity(const std::function<double(double)>& f, double a, double split,
                             const AdaptiveOptions& opts = {});

} // namespace mfspin::quad
