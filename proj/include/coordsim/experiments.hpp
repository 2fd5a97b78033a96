#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coordsim/economy.hpp"
#include "coordsim/metrics.hpp"

namespace coordsim {

enum class Regime { gentle_compression, rising_tide, winner_takes_all, creative_destruction };

struct RegimeSpec {
    Regime regime;
    double beta;
    double delta;

    RegimeOverride override_for() const { return {beta, delta}; }
};

/// GC (0.2, 0), RT (0.2, 0.3), WTA (3, 0), CD (3, 0.3).
RegimeSpec regime_spec(Regime regime);
std::array<RegimeSpec, 4> standard_regimes();
std::string_view regime_name(Regime regime);
/// Accepts the full name or its initials (GC, RT, WTA, CD).
Regime parse_regime(std::string_view name);

/// lo, lo + step, ... up to hi inclusive, each point computed as lo + k*step.
std::vector<double> make_grid(double lo, double hi, double step);
/// 0 to 10 by 0.2.
std::vector<double> default_agent_capital_grid();

/// Simulation failure tagged with the grid point that produced it.
class ExperimentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepRow {
    Regime regime;
    double agent_capital;
    MetricRow metrics;
};

struct HeatmapRow {
    double beta;
    double delta;
    double gini_managers;
    double output;
};

struct RobustnessRow {
    double alpha;
    Regime regime;
    double mgr_gini;
    double gap;
    int employed;
};

inline constexpr int kQualitativeChecks = 5;

/// The five endpoint checks at one alpha.
///   1 output rises in every regime
///   2 manager Gini higher under high beta (WTA > GC, CD > RT)
///   3 economy Gini falls in every regime
///   4 manager-worker gap rises in every regime
///   5 employment weakly higher under high delta (RT >= GC, CD >= WTA)
struct QualitativeChecks {
    double alpha;
    std::array<bool, kQualitativeChecks> passed{};
};

struct RobustnessReport {
    std::vector<RobustnessRow> rows;
    std::vector<QualitativeChecks> checks;

    int passed() const;
    int total() const { return static_cast<int>(checks.size()) * kQualitativeChecks; }
    const QualitativeChecks& checks_for(double alpha) const;
};

enum class CheckStatus { pass, fail, vacuous };

std::string_view status_name(CheckStatus status);

struct PropositionResult {
    int number = 0;
    std::string title;
    CheckStatus status = CheckStatus::pass;
    /// Largest violation seen on the grid; 0 when every check holds.
    double worst_violation = 0.0;
    std::string detail;
};

struct PropositionReport {
    std::array<PropositionResult, 5> results;

    bool all_passed() const;
};

std::vector<SweepRow> run_sweep(const ModelParams& params, std::span<const RegimeSpec> regimes,
                                std::span<const double> agent_capital_grid,
                                AssignmentMode mode = AssignmentMode::pam);

std::vector<HeatmapRow> run_heatmap(const ModelParams& params, std::span<const double> beta_grid,
                                    std::span<const double> delta_grid, double agent_capital,
                                    AssignmentMode mode = AssignmentMode::pam);

RobustnessReport run_robustness(const ModelParams& params, std::span<const double> alphas,
                                double agent_capital = 10.0,
                                AssignmentMode mode = AssignmentMode::pam);

PropositionReport check_propositions(const ModelParams& params,
                                     std::span<const double> agent_capital_grid);
PropositionReport check_propositions(const ModelParams& params);

}  // namespace coordsim
