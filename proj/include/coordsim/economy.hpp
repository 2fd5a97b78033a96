#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coordsim/model.hpp"
#include "coordsim/population.hpp"

namespace coordsim {

enum class AssignmentMode { pam, random };

/// Integer headcounts per manager (manager index order).
struct AllocationPlan {
    std::vector<int> counts;
    int employed_total = 0;
    AssignmentMode mode = AssignmentMode::pam;
};

/// (beta, delta) pair a regime imposes on the base parameters.
struct RegimeOverride {
    double beta = 0.0;
    double delta = 0.0;
};

/// One economy at one level of agent capital.
///
/// teams, spans and manager_wages are indexed by manager (ascending skill).
/// worker_wages lists employed workers team by team in the same order.
struct EconomySnapshot {
    double agent_capital = 0.0;
    double alpha = 0.0;
    std::vector<Team> teams;
    std::vector<double> spans;
    std::vector<double> manager_wages;
    std::vector<double> worker_wages;
    int unemployed_count = 0;
    double total_output = 0.0;
    int employed = 0;

    /// Every individual's income: managers, employed workers, then zeros.
    std::vector<double> incomes() const;
    double supervisory_capacity() const;
};

/// min(round-half-up(sum S), floor(T), N).
int employment(std::span<const double> spans, double frontier, int worker_pool);

/// Largest-remainder apportionment of E over span-proportional quotas.
/// Equal remainders go to the more skilled manager, then the lower index.
std::vector<int> allocate_largest_remainder(std::span<const double> spans, int employed,
                                            std::span<const double> manager_skills);

/// Worker skills per manager (manager index order).
///
/// PAM deals the best workers in contiguous blocks to managers ordered by
/// effective agent capital (descending, ties by index). Random mode shuffles
/// the pool with SplitMix64(seed) and deals the first E workers in manager
/// index order.
std::vector<std::vector<double>> assign_workers(std::span<const int> counts,
                                                std::span<const double> worker_skills,
                                                std::span<const double> effective_capital,
                                                AssignmentMode mode, std::uint64_t seed);

EconomySnapshot simulate(const ModelParams& params, const Population& population,
                         RegimeOverride regime, double agent_capital,
                         AssignmentMode mode = AssignmentMode::pam);

EconomySnapshot simulate(const ModelParams& params, RegimeOverride regime, double agent_capital,
                         AssignmentMode mode = AssignmentMode::pam);

/// Output of the snapshot's teams, unchanged, under coordination costs at a new K_A.
double frozen_output(const EconomySnapshot& frozen, const ModelParams& params,
                     RegimeOverride regime, double agent_capital);

}  // namespace coordsim
