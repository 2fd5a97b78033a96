#include "coordsim/economy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "coordsim/rng.hpp"

namespace coordsim {

std::vector<double> EconomySnapshot::incomes() const {
    std::vector<double> all;
    all.reserve(manager_wages.size() + worker_wages.size() + unemployed_count);
    all.insert(all.end(), manager_wages.begin(), manager_wages.end());
    all.insert(all.end(), worker_wages.begin(), worker_wages.end());
    all.insert(all.end(), static_cast<std::size_t>(unemployed_count), 0.0);
    return all;
}

double EconomySnapshot::supervisory_capacity() const {
    return std::accumulate(spans.begin(), spans.end(), 0.0);
}

int employment(std::span<const double> spans, double frontier, int worker_pool) {
    if (worker_pool < 0) throw std::domain_error("worker pool must be >= 0");
    if (!(frontier > 0) || !std::isfinite(frontier)) {
        throw std::domain_error("task frontier must be finite and > 0");
    }
    double capacity = 0.0;
    for (double s : spans) {
        if (!(s > 0) || !std::isfinite(s)) throw std::domain_error("spans must be finite and > 0");
        capacity += s;
    }
    const double demand = std::floor(capacity + 0.5);
    const double tasks = std::floor(frontier + 1e-9);
    return static_cast<int>(std::min({demand, tasks, static_cast<double>(worker_pool)}));
}

std::vector<int> allocate_largest_remainder(std::span<const double> spans, int employed,
                                            std::span<const double> manager_skills) {
    if (employed < 0) throw std::domain_error("employment must be >= 0");
    if (manager_skills.size() != spans.size()) {
        throw std::invalid_argument("spans and manager skills differ in length");
    }
    const std::size_t n = spans.size();
    std::vector<int> counts(n, 0);
    if (employed == 0) return counts;
    if (n == 0) throw std::invalid_argument("cannot allocate workers to zero managers");

    double capacity = 0.0;
    for (double s : spans) {
        if (!(s > 0) || !std::isfinite(s)) throw std::domain_error("spans must be finite and > 0");
        capacity += s;
    }
    std::vector<double> remainder(n);
    int assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double quota = employed * spans[i] / capacity;
        const double whole = std::floor(quota);
        counts[i] = static_cast<int>(whole);
        remainder[i] = quota - whole;
        assigned += counts[i];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        if (remainder[l] != remainder[r]) return remainder[l] > remainder[r];
        if (manager_skills[l] != manager_skills[r]) return manager_skills[l] > manager_skills[r];
        return l < r;
    });
    // Floors can undershoot by at most n - 1; guard against rounding in the quotas.
    for (std::size_t k = 0; assigned < employed; k = (k + 1) % n) {
        ++counts[order[k]];
        ++assigned;
    }
    return counts;
}

std::vector<std::vector<double>> assign_workers(std::span<const int> counts,
                                                std::span<const double> worker_skills,
                                                std::span<const double> effective_capital,
                                                AssignmentMode mode, std::uint64_t seed) {
    if (effective_capital.size() != counts.size()) {
        throw std::invalid_argument("counts and effective capital differ in length");
    }
    long long total = 0;
    for (int c : counts) {
        if (c < 0) throw std::domain_error("team headcounts must be >= 0");
        total += c;
    }
    if (total > static_cast<long long>(worker_skills.size())) {
        throw std::invalid_argument("more positions than workers");
    }

    std::vector<std::vector<double>> teams(counts.size());
    std::size_t next = 0;
    if (mode == AssignmentMode::pam) {
        std::vector<double> pool(worker_skills.begin(), worker_skills.end());
        std::sort(pool.begin(), pool.end(), std::greater<>());
        std::vector<std::size_t> order(counts.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return effective_capital[l] > effective_capital[r];
        });
        for (std::size_t m : order) {
            teams[m].assign(pool.begin() + next, pool.begin() + next + counts[m]);
            next += counts[m];
        }
        return teams;
    }

    std::vector<std::size_t> shuffled(worker_skills.size());
    std::iota(shuffled.begin(), shuffled.end(), std::size_t{0});
    SplitMix64 rng(seed);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    }
    for (std::size_t m = 0; m < counts.size(); ++m) {
        teams[m].reserve(counts[m]);
        for (int k = 0; k < counts[m]; ++k) teams[m].push_back(worker_skills[shuffled[next++]]);
    }
    return teams;
}

EconomySnapshot simulate(const ModelParams& params, const Population& population,
                         RegimeOverride regime, double agent_capital, AssignmentMode mode) {
    ModelParams p = params;
    p.beta = regime.beta;
    p.delta = regime.delta;
    p.validate();
    if (!(agent_capital >= 0) || !std::isfinite(agent_capital)) {
        throw std::domain_error("K_A must be finite and >= 0");
    }
    const auto& managers = population.managers.values;
    const auto& workers = population.workers.values;
    if (managers.size() != static_cast<std::size_t>(p.n_managers) ||
        workers.size() != static_cast<std::size_t>(p.n_workers)) {
        throw std::invalid_argument("population does not match parameter counts");
    }

    EconomySnapshot snap;
    snap.agent_capital = agent_capital;
    snap.alpha = p.alpha;

    std::vector<double> costs(managers.size());
    std::vector<double> effective_capital(managers.size());
    snap.spans.resize(managers.size());
    for (std::size_t i = 0; i < managers.size(); ++i) {
        costs[i] = coordination_cost(p.c0, p.gamma, agent_capital, managers[i], p.beta);
        snap.spans[i] = span(costs[i]);
        effective_capital[i] =
            agent_capital * (p.beta == 0.0 ? 1.0 : std::pow(managers[i], p.beta));
    }
    const double frontier = task_frontier(p.T0, p.delta, agent_capital);
    snap.employed = employment(snap.spans, frontier, p.n_workers);
    snap.unemployed_count = p.n_workers - snap.employed;

    const auto counts = allocate_largest_remainder(snap.spans, snap.employed, managers);
    auto rosters = assign_workers(counts, workers, effective_capital, mode, p.seed);

    snap.teams.reserve(managers.size());
    snap.manager_wages.reserve(managers.size());
    snap.worker_wages.reserve(static_cast<std::size_t>(snap.employed));
    for (std::size_t i = 0; i < managers.size(); ++i) {
        Team team = make_team(managers[i], std::move(rosters[i]), costs[i], p.A, p.alpha);
        WageSplit wages = split_wages(team.output, p.alpha, team.worker_skills);
        snap.manager_wages.push_back(wages.manager);
        snap.worker_wages.insert(snap.worker_wages.end(), wages.workers.begin(),
                                 wages.workers.end());
        snap.total_output += team.output;
        snap.teams.push_back(std::move(team));
    }
    return snap;
}

EconomySnapshot simulate(const ModelParams& params, RegimeOverride regime, double agent_capital,
                         AssignmentMode mode) {
    ModelParams p = params;
    p.beta = regime.beta;
    p.delta = regime.delta;
    return simulate(p, make_population(p), regime, agent_capital, mode);
}

double frozen_output(const EconomySnapshot& frozen, const ModelParams& params,
                     RegimeOverride regime, double agent_capital) {
    double total = 0.0;
    for (const Team& team : frozen.teams) {
        const double cost =
            coordination_cost(params.c0, params.gamma, agent_capital, team.manager_skill,
                              regime.beta);
        total += team_output(params.A, params.alpha,
                             effective_labor(team.quality, team.headcount, cost));
    }
    return total;
}

}  // namespace coordsim
