#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "coordsim/model.hpp"

namespace coordsim {

enum class SkillKind { manager, worker };

/// Ascending skills in (0,1].
struct SkillVector {
    std::vector<double> values;
    SkillKind kind = SkillKind::worker;
};

/// Raised when the Beta quantile search misses its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// I_x(a, b): the Beta(a, b) CDF at x.
double regularized_incomplete_beta(double x, double a, double b);

/// Inverse of regularized_incomplete_beta in x, to |I_x - p| <= 1e-12.
double beta_quantile(double p, double a, double b);

/// Evenly spaced skills from s_min to s_max inclusive.
SkillVector make_managers(int n, double s_min, double s_max);

/// Midpoint quantiles (j - 0.5)/N of Beta(a, b), ascending.
SkillVector make_workers(int n, double a, double b);

struct Population {
    SkillVector managers;
    SkillVector workers;
};

Population make_population(const ModelParams& params);

}  // namespace coordsim
