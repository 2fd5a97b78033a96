#include "coordsim/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coordsim {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

}  // namespace

void ModelParams::validate() const {
    const auto fail = [](const std::string& msg) { throw std::domain_error(msg); };
    for (auto [v, name] : {std::pair{A, "A"}, {alpha, "alpha"}, {c0, "c0"}, {gamma, "gamma"},
                           {beta, "beta"}, {delta, "delta"}, {T0, "T0"},
                           {manager_skill_min, "manager_skill_min"},
                           {manager_skill_max, "manager_skill_max"},
                           {worker_beta_a, "worker_beta_a"}, {worker_beta_b, "worker_beta_b"}}) {
        require_finite(v, name);
    }
    if (A <= 0) fail("A must be > 0");
    if (alpha <= 0 || alpha >= 1) fail("alpha must lie in (0,1)");
    if (c0 <= 0) fail("c0 must be > 0");
    if (gamma < 0) fail("gamma must be >= 0");
    if (beta < 0) fail("beta must be >= 0");
    if (delta < 0) fail("delta must be >= 0");
    if (T0 <= 0) fail("T0 must be > 0");
    if (n_managers < 1) fail("n_managers must be >= 1");
    if (n_workers < 1) fail("n_workers must be >= 1");
    if (manager_skill_min <= 0 || manager_skill_min > 1) fail("manager_skill_min must lie in (0,1]");
    if (manager_skill_max <= 0 || manager_skill_max > 1) fail("manager_skill_max must lie in (0,1]");
    if (manager_skill_min > manager_skill_max) fail("manager_skill_min must be <= manager_skill_max");
    if (n_managers >= 2 && manager_skill_min == manager_skill_max) {
        fail("manager_skill_min must be < manager_skill_max when n_managers >= 2");
    }
    if (worker_beta_a <= 0 || worker_beta_b <= 0) fail("worker Beta shape parameters must be > 0");
}

double coordination_cost(double c0, double gamma, double agent_capital, double manager_skill,
                         double beta) {
    require_finite(c0, "c0");
    require_finite(gamma, "gamma");
    require_finite(agent_capital, "K_A");
    require_finite(manager_skill, "manager skill");
    require_finite(beta, "beta");
    if (c0 <= 0) throw std::domain_error("c0 must be > 0");
    if (gamma < 0) throw std::domain_error("gamma must be >= 0");
    if (agent_capital < 0) throw std::domain_error("K_A must be >= 0");
    if (beta < 0) throw std::domain_error("beta must be >= 0");

    double amplification = 1.0;
    if (beta != 0.0) {
        if (manager_skill < 0 || (manager_skill == 0 && beta < 1)) {
            throw std::domain_error("manager skill must be > 0 for beta in (0,1), >= 0 otherwise");
        }
        amplification = std::pow(manager_skill, beta);
    }
    return c0 / (1.0 + gamma * agent_capital * amplification);
}

double span(double cost) {
    require_finite(cost, "coordination cost");
    if (cost <= 0) throw std::domain_error("coordination cost must be > 0");
    return 1.0 / cost;
}

double effective_labor(double quality, double headcount, double cost) {
    require_finite(quality, "team quality");
    require_finite(headcount, "headcount");
    require_finite(cost, "coordination cost");
    if (quality < 0) throw std::domain_error("team quality must be >= 0");
    if (headcount < 0) throw std::domain_error("headcount must be >= 0");
    if (cost <= 0) throw std::domain_error("coordination cost must be > 0");
    if (headcount == 0 && quality > 0) {
        throw std::invalid_argument("empty team cannot carry positive quality");
    }
    return quality / (1.0 + cost * headcount);
}

double team_output(double A, double alpha, double effective_labor) {
    require_finite(A, "A");
    require_finite(alpha, "alpha");
    require_finite(effective_labor, "effective labor");
    if (A <= 0) throw std::domain_error("A must be > 0");
    if (alpha <= 0 || alpha >= 1) throw std::domain_error("alpha must lie in (0,1)");
    if (effective_labor < 0) throw std::domain_error("effective labor must be >= 0");
    if (effective_labor == 0) return 0.0;
    return A * std::pow(effective_labor, alpha);
}

WageSplit split_wages(double output, double alpha, std::span<const double> worker_skills) {
    require_finite(output, "output");
    if (output < 0) throw std::domain_error("output must be >= 0");
    if (alpha <= 0 || alpha >= 1) throw std::domain_error("alpha must lie in (0,1)");

    WageSplit split;
    if (worker_skills.empty()) {
        if (output > 0) throw std::invalid_argument("positive output with no workers");
        return split;
    }
    for (double q : worker_skills) {
        if (!(q > 0) || !std::isfinite(q)) {
            throw std::invalid_argument("worker skills must be finite and > 0");
        }
    }
    const double quality = std::accumulate(worker_skills.begin(), worker_skills.end(), 0.0);
    const double pool = alpha * output;
    split.manager = (1.0 - alpha) * output;
    split.workers.reserve(worker_skills.size());
    for (double q : worker_skills) split.workers.push_back(q / quality * pool);
    return split;
}

double task_frontier(double T0, double delta, double agent_capital) {
    require_finite(T0, "T0");
    require_finite(delta, "delta");
    require_finite(agent_capital, "K_A");
    if (T0 <= 0) throw std::domain_error("T0 must be > 0");
    if (delta < 0) throw std::domain_error("delta must be >= 0");
    if (agent_capital < 0) throw std::domain_error("K_A must be >= 0");
    return T0 * (1.0 + delta * agent_capital);
}

int hierarchy_layers(long long workforce, double span) {
    require_finite(span, "span");
    if (workforce < 1) throw std::domain_error("workforce must be >= 1");
    if (span <= 1) throw std::domain_error("span must be > 1");
    // Smallest L with S^L >= N; dividing logs misrounds exact powers.
    const double target = static_cast<double>(workforce) * (1.0 - 1e-12);
    int layers = 0;
    double reach = 1.0;
    while (reach < target) {
        reach *= span;
        ++layers;
    }
    return layers < 1 ? 1 : layers;
}

double manager_demand(double workforce, double span) {
    require_finite(workforce, "workforce");
    require_finite(span, "span");
    if (workforce < 1) throw std::domain_error("workforce must be >= 1");
    if (span <= 1) throw std::domain_error("span must be > 1");
    return workforce / (span - 1.0);
}

Team make_team(double manager_skill, std::vector<double> worker_skills, double cost, double A,
               double alpha) {
    Team team;
    team.manager_skill = manager_skill;
    team.coordination_cost = cost;
    team.headcount = static_cast<int>(worker_skills.size());
    team.quality = std::accumulate(worker_skills.begin(), worker_skills.end(), 0.0);
    team.worker_skills = std::move(worker_skills);
    team.effective_labor = effective_labor(team.quality, team.headcount, cost);
    team.output = team_output(A, alpha, team.effective_labor);
    return team;
}

}  // namespace coordsim
