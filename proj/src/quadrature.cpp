#include "mfspin/quadrature.hpp"
#include "mfspin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace mfspin::quad {

namespace {

GaussLegendreRule compute_rule(int n) {
    // Newton iteration on P_n(x) = 0; standard three-term recurrence.
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // one clean-up Newton step
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            x -= p1 / dp;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

std::mutex g_rule_mutex;
std::map<int, GaussLegendreRule> g_rules;

} // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) throw ValidationError("gauss_legendre: order must be >= 1");
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gauss_fixed(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

namespace {

struct Segment {
    double a, b, value, error;
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b) {
    double coarse = gauss_fixed(f, a, b, 15);
    double fine = gauss_fixed(f, a, b, 31);
    return {a, b, fine, std::abs(fine - coarse)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const AdaptiveOptions& opts) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<Segment> segs{evaluate_segment(f, a, b)};
    for (;;) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        if (err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) return sign * total;
        if (static_cast<int>(segs.size()) >= opts.max_segments) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge: residual error estimate " << err
                << " over " << segs.size() << " segments";
            throw NumericError(msg.str());
        }
        Segment s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        segs[worst] = evaluate_segment(f, s.a, mid);
        segs.push_back(evaluate_segment(f, mid, s.b));
    }
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double split,
                             const AdaptiveOptions& opts) {
    if (!(split > a) || !(split > 0.0))
        throw ValidationError("integrate_to_infinity: split point must exceed lower limit and 0");
    double head = integrate(f, a, split, opts);
    auto transformed = [&f](double u) { return f(1.0 / u) / (u * u); };
    double tail = integrate(transformed, 0.0, 1.0 / split, opts);
    return head + tail;
}

} // namespace mfspin::quad
