#pragma once

#include <span>
#include <vector>

#include "coordsim/economy.hpp"

namespace coordsim {

/// Distributional summary of one snapshot.
struct MetricRow {
    double output = 0.0;
    double output_index = 0.0;
    double gini_economy = 0.0;
    double gini_managers = 0.0;
    double gap = 0.0;
    double top10_share = 0.0;
    double unemployment = 0.0;
    int employed = 0;

    bool operator==(const MetricRow&) const = default;
};

struct LorenzPoint {
    double population_share = 0.0;
    double income_share = 0.0;
};

/// Exact pairwise Gini, sum |x_i - x_j| / (2 n^2 mean).
/// Throws std::domain_error on negative values or an all-zero vector.
double gini(std::span<const double> incomes);

/// Cumulative shares from (0,0) to (1,1), poorest first.
std::vector<LorenzPoint> lorenz(std::span<const double> incomes);

/// Income share of the ceil(fraction * n) highest earners.
double top_share(std::span<const double> incomes, double fraction);

MetricRow snapshot_metrics(const EconomySnapshot& snapshot, double baseline_output);

}  // namespace coordsim
