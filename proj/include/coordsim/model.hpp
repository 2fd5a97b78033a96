#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace coordsim {

/**
 * Scalar parameters of one simulated firm.
 *
 * Defaults are the baseline calibration: a 20-manager newsroom with 400
 * Beta(2,5)-skilled workers, alpha = 0.65, c0 = 0.3, gamma = 1, T0 = 200.
 * beta and delta default to the low cells of the regime grid; experiments
 * override them per regime.
 */
struct ModelParams {
    double A = 1.0;
    double alpha = 0.65;
    double c0 = 0.3;
    double gamma = 1.0;
    double beta = 0.2;
    double delta = 0.0;
    double T0 = 200.0;
    int n_managers = 20;
    int n_workers = 400;
    double manager_skill_min = 0.05;
    double manager_skill_max = 1.0;
    double worker_beta_a = 2.0;
    double worker_beta_b = 5.0;
    std::uint64_t seed = 2026;

    /// Throws std::domain_error naming the first offending field.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// One manager and the workers assigned to them.
struct Team {
    double manager_skill = 0.0;
    std::vector<double> worker_skills;
    double coordination_cost = 0.0;
    int headcount = 0;
    double quality = 0.0;
    double effective_labor = 0.0;
    double output = 0.0;
};

struct WageSplit {
    double manager = 0.0;
    std::vector<double> workers;
};

/// c0 / (1 + gamma * K_A * s^beta). beta == 0 is the homogeneous case.
double coordination_cost(double c0, double gamma, double agent_capital, double manager_skill,
                         double beta);

/// Coordination capacity 1/c: the largest team a manager can run.
double span(double cost);

/// Team quality discounted by the coordination penalty, Q / (1 + c n).
/// Headcount is real-valued so continuous allocations can reuse it.
double effective_labor(double quality, double headcount, double cost);

double team_output(double A, double alpha, double effective_labor);

/// Manager keeps (1 - alpha) Y; workers split alpha Y in proportion to skill.
WageSplit split_wages(double output, double alpha, std::span<const double> worker_skills);

/// T0 (1 + delta K_A)
double task_frontier(double T0, double delta, double agent_capital);

/// Layers needed to supervise N workers at span S, at least 1.
int hierarchy_layers(long long workforce, double span);

/// Managers in a full hierarchy of span S over N workers: N / (S - 1).
double manager_demand(double workforce, double span);

/// Builds a fully populated team with cost, quality, effective labor and output.
Team make_team(double manager_skill, std::vector<double> worker_skills, double cost, double A,
               double alpha);

}  // namespace coordsim
