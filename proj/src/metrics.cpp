#include "coordsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace coordsim {

namespace {

double checked_total(std::span<const double> incomes) {
    if (incomes.empty()) throw std::invalid_argument("income vector is empty");
    double total = 0.0;
    for (double x : incomes) {
        if (!(x >= 0) || !std::isfinite(x)) {
            throw std::domain_error("incomes must be finite and >= 0");
        }
        total += x;
    }
    if (total == 0.0) throw std::domain_error("distribution undefined: all incomes are zero");
    return total;
}

}  // namespace

double gini(std::span<const double> incomes) {
    const double total = checked_total(incomes);
    const double n = static_cast<double>(incomes.size());
    double spread = 0.0;
    for (std::size_t i = 0; i < incomes.size(); ++i) {
        for (std::size_t j = i + 1; j < incomes.size(); ++j) {
            spread += std::fabs(incomes[i] - incomes[j]);
        }
    }
    // Each unordered pair counted once; the full double sum is twice this.
    return spread / (n * total);
}

std::vector<LorenzPoint> lorenz(std::span<const double> incomes) {
    const double total = checked_total(incomes);
    std::vector<double> sorted(incomes.begin(), incomes.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<LorenzPoint> curve;
    curve.reserve(sorted.size() + 1);
    curve.push_back({0.0, 0.0});
    double running = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        running += sorted[k];
        curve.push_back({(k + 1) / n, running / total});
    }
    curve.back() = {1.0, 1.0};
    return curve;
}

double top_share(std::span<const double> incomes, double fraction) {
    const double total = checked_total(incomes);
    if (!(fraction > 0 && fraction < 1)) throw std::domain_error("fraction must lie in (0,1)");
    const auto n = incomes.size();
    auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    k = std::clamp<std::size_t>(k, 1, n);
    std::vector<double> sorted(incomes.begin(), incomes.end());
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end(),
                      std::greater<>());
    const double top = std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
    return top / total;
}

MetricRow snapshot_metrics(const EconomySnapshot& snapshot, double baseline_output) {
    if (!(baseline_output > 0) || !std::isfinite(baseline_output)) {
        throw std::domain_error("baseline output must be finite and > 0");
    }
    const auto all = snapshot.incomes();
    const int pool = snapshot.employed + snapshot.unemployed_count;

    MetricRow row;
    row.output = snapshot.total_output;
    row.output_index = snapshot.total_output / baseline_output;
    row.gini_economy = gini(all);
    row.gini_managers = gini(snapshot.manager_wages);
    if (snapshot.employed > 0) {
        const double mean_manager =
            std::accumulate(snapshot.manager_wages.begin(), snapshot.manager_wages.end(), 0.0) /
            static_cast<double>(snapshot.manager_wages.size());
        const double mean_worker =
            std::accumulate(snapshot.worker_wages.begin(), snapshot.worker_wages.end(), 0.0) /
            static_cast<double>(snapshot.worker_wages.size());
        row.gap = mean_manager / mean_worker;
    }
    row.top10_share = top_share(all, 0.1);
    row.unemployment = pool > 0 ? 1.0 - static_cast<double>(snapshot.employed) / pool : 0.0;
    row.employed = snapshot.employed;
    return row;
}

}  // namespace coordsim
