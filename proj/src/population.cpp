#include "coordsim/population.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace coordsim {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kQuantileTolerance = 1e-12;
constexpr int kMaxFractionTerms = 500;
constexpr int kMaxQuantileIterations = 200;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxFractionTerms; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) return h;
    }
    throw ConvergenceError("incomplete beta continued fraction did not converge");
}

double log_beta_prefactor(double x, double a, double b) {
    return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
           b * std::log1p(-x);
}

double beta_density(double x, double a, double b) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp(log_beta_prefactor(x, a, b) - std::log(x) - std::log1p(-x));
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        throw std::domain_error("incomplete beta argument must lie in [0,1]");
    }
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("Beta shape parameters must be finite and > 0");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(log_beta_prefactor(x, a, b));
    // The fraction converges fast on the side of the mean; use symmetry otherwise.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double beta_quantile(double p, double a, double b) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        throw std::domain_error("Beta quantile probability must lie in (0,1)");
    }
    double lo = 0.0;
    double hi = 1.0;
    double x = a / (a + b);
    for (int it = 0; it < kMaxQuantileIterations; ++it) {
        const double err = regularized_incomplete_beta(x, a, b) - p;
        if (std::fabs(err) <= kQuantileTolerance) return x;
        if (err > 0) {
            hi = x;
        } else {
            lo = x;
        }
        // Newton step, falling back to bisection when it leaves the bracket.
        const double density = beta_density(x, a, b);
        double next = density > 0 ? x - err / density : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    const double err = regularized_incomplete_beta(x, a, b) - p;
    if (std::fabs(err) <= kQuantileTolerance) return x;
    std::ostringstream msg;
    msg.precision(17);
    msg << "Beta quantile did not converge for p=" << p << ", a=" << a << ", b=" << b
        << " (residual " << err << ")";
    throw ConvergenceError(msg.str());
}

SkillVector make_managers(int n, double s_min, double s_max) {
    if (n < 1) throw std::domain_error("manager count must be >= 1");
    if (!(s_min > 0) || s_max > 1 || !(s_min <= s_max)) {
        throw std::domain_error("manager skills must satisfy 0 < s_min <= s_max <= 1");
    }
    SkillVector out{{}, SkillKind::manager};
    if (n == 1) {
        out.values.push_back(s_max);
        return out;
    }
    if (s_min == s_max) throw std::domain_error("manager skill range is empty");
    out.values.reserve(static_cast<std::size_t>(n));
    const double step = (s_max - s_min) / (n - 1);
    for (int i = 0; i < n - 1; ++i) out.values.push_back(s_min + i * step);
    out.values.push_back(s_max);
    return out;
}

SkillVector make_workers(int n, double a, double b) {
    if (n < 1) throw std::domain_error("worker count must be >= 1");
    SkillVector out{{}, SkillKind::worker};
    out.values.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        out.values.push_back(beta_quantile((j - 0.5) / n, a, b));
    }
    return out;
}

Population make_population(const ModelParams& params) {
    params.validate();
    return {make_managers(params.n_managers, params.manager_skill_min, params.manager_skill_max),
            make_workers(params.n_workers, params.worker_beta_a, params.worker_beta_b)};
}

}  // namespace coordsim
