#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "coordsim/economy.hpp"
#include "coordsim/rng.hpp"

using namespace coordsim;

namespace {

constexpr RegimeOverride kGC{0.2, 0.0};
constexpr RegimeOverride kRT{0.2, 0.3};
constexpr RegimeOverride kWTA{3.0, 0.0};
constexpr RegimeOverride kCD{3.0, 0.3};

std::vector<double> grid() {
    std::vector<double> g;
    for (int k = 0; k <= 50; ++k) g.push_back(0.2 * k);
    return g;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_SUITE("economy") {

TEST_CASE("SplitMix64 reference outputs") {
    // Reference sequence for seed 1234567 from the published algorithm.
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ULL);
    CHECK(rng.next() == 3203168211198807973ULL);
    CHECK(rng.next() == 9817491932198370423ULL);
    SplitMix64 bounded(1);
    for (int i = 0; i < 1000; ++i) CHECK(bounded.below(7) < 7);
}

TEST_CASE("employment examples") {
    const std::vector<double> baseline(20, 10.0 / 3.0);
    CHECK(employment(baseline, 200, 400) == 67);

    const auto pop = make_population(ModelParams{});
    std::vector<double> wta, rt;
    for (double s : pop.managers.values) {
        wta.push_back(span(coordination_cost(0.3, 1.0, 10.0, s, 3.0)));
        rt.push_back(span(coordination_cost(0.3, 1.0, 10.0, s, 0.2)));
    }
    CHECK(sum(wta) == doctest::Approx(250.4).epsilon(1e-3));
    CHECK(employment(wta, 800, 400) == 250);
    CHECK(sum(rt) == doctest::Approx(632.5).epsilon(1e-3));
    CHECK(employment(rt, 800, 400) == 400);
    CHECK(employment(rt, 200, 400) == 200);
    CHECK(employment(std::vector<double>{0.4}, 200, 400) == 0);
    CHECK(employment(std::vector<double>{0.5}, 200, 400) == 1);
}

TEST_CASE("largest remainder examples") {
    const std::vector<double> equal(20, 10.0 / 3.0);
    const auto skills = make_managers(20, 0.05, 1.0).values;
    const auto counts = allocate_largest_remainder(equal, 67, skills);
    CHECK(std::accumulate(counts.begin(), counts.end(), 0) == 67);
    CHECK(std::count(counts.begin(), counts.end(), 3) == 13);
    CHECK(std::count(counts.begin(), counts.end(), 4) == 7);
    // Ties resolve toward the most skilled managers.
    for (int i = 13; i < 20; ++i) CHECK(counts[i] == 4);

    CHECK(allocate_largest_remainder(std::vector<double>{2, 1}, 3, std::vector<double>{0.5, 1.0}) ==
          std::vector<int>{2, 1});
    CHECK(allocate_largest_remainder(std::vector<double>{1, 1, 1}, 0,
                                     std::vector<double>{0.1, 0.2, 0.3}) ==
          std::vector<int>{0, 0, 0});
    // Equal skills: lower index wins the tie.
    CHECK(allocate_largest_remainder(std::vector<double>{1, 1, 1}, 1,
                                     std::vector<double>{0.5, 0.5, 0.5}) ==
          std::vector<int>{1, 0, 0});
}

TEST_CASE("largest remainder properties on random spans") {
    std::mt19937_64 gen(2026);
    std::uniform_real_distribution<double> spans(0.1, 40.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + gen() % 30;
        std::vector<double> s(n), skills(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = spans(gen);
            skills[i] = (i + 1.0) / n;
        }
        const int e = static_cast<int>(gen() % 500);
        const auto counts = allocate_largest_remainder(s, e, skills);
        CHECK(std::accumulate(counts.begin(), counts.end(), 0) == e);
        const double total = sum(s);
        double min_bumped = 2.0, max_unbumped = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double quota = e * s[i] / total;
            CHECK(std::fabs(counts[i] - quota) < 1.0);
            const double rem = quota - std::floor(quota);
            if (counts[i] > std::floor(quota)) {
                min_bumped = std::min(min_bumped, rem);
            } else {
                max_unbumped = std::max(max_unbumped, rem);
            }
        }
        // Every bumped manager has a remainder at least as large as any skipped one.
        CHECK(min_bumped >= max_unbumped - 1e-12);
    }
}

TEST_CASE("PAM assignment") {
    const std::vector<double> workers{0.1, 0.9, 0.5};
    auto teams = assign_workers(std::vector<int>{2, 1}, workers, std::vector<double>{5.0, 1.0},
                                AssignmentMode::pam, 0);
    CHECK(teams[0] == std::vector<double>{0.9, 0.5});
    CHECK(teams[1] == std::vector<double>{0.1});

    // Manager 1 has more effective capital, so it is served first.
    teams = assign_workers(std::vector<int>{2, 1}, workers, std::vector<double>{1.0, 5.0},
                           AssignmentMode::pam, 0);
    CHECK(teams[1] == std::vector<double>{0.9});
    CHECK(teams[0] == std::vector<double>{0.5, 0.1});

    // Equal effective capital: index order.
    teams = assign_workers(std::vector<int>{1, 1, 1}, workers, std::vector<double>{0, 0, 0},
                           AssignmentMode::pam, 0);
    CHECK(teams[0] == std::vector<double>{0.9});
    CHECK(teams[1] == std::vector<double>{0.5});
    CHECK(teams[2] == std::vector<double>{0.1});

    CHECK_THROWS_AS(assign_workers(std::vector<int>{3, 1}, workers, std::vector<double>{0, 0},
                                   AssignmentMode::pam, 0),
                    std::invalid_argument);
}

TEST_CASE("random assignment is seeded and deterministic") {
    const auto workers = make_workers(400, 2, 5).values;
    const std::vector<int> counts{10, 20, 30};
    const std::vector<double> keff{1, 2, 3};
    const auto a = assign_workers(counts, workers, keff, AssignmentMode::random, 2026);
    const auto b = assign_workers(counts, workers, keff, AssignmentMode::random, 2026);
    const auto c = assign_workers(counts, workers, keff, AssignmentMode::random, 2027);
    CHECK(a == b);
    CHECK(a != c);
    std::vector<double> drawn;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        CHECK(a[i].size() == static_cast<std::size_t>(counts[i]));
        drawn.insert(drawn.end(), a[i].begin(), a[i].end());
    }
    std::sort(drawn.begin(), drawn.end());
    CHECK(std::adjacent_find(drawn.begin(), drawn.end()) == drawn.end());
    for (double q : drawn) CHECK(std::binary_search(workers.begin(), workers.end(), q));
}

TEST_CASE("baseline snapshot") {
    const auto snap = simulate(ModelParams{}, kGC, 0.0);
    CHECK(snap.employed == 67);
    CHECK(snap.unemployed_count == 333);
    CHECK(snap.incomes().size() == 420);
    const double mm = sum(snap.manager_wages) / 20;
    const double mw = sum(snap.worker_wages) / 67;
    CHECK(mm / mw == doctest::Approx(1.8).epsilon(0.01));
    int headcount = 0;
    for (const Team& t : snap.teams) headcount += t.headcount;
    CHECK(headcount == snap.employed);
    CHECK(snap.supervisory_capacity() == doctest::Approx(200.0 / 3.0));
}

TEST_CASE("gap at K_A=10 under GC") {
    const auto snap = simulate(ModelParams{}, kGC, 10.0);
    const double gap = (sum(snap.manager_wages) / 20) / (sum(snap.worker_wages) / snap.employed);
    CHECK(std::round(gap * 10) / 10 == doctest::Approx(5.4));
}

TEST_CASE("snapshot invariants across regimes, modes and K_A") {
    const ModelParams params;
    const auto pop = make_population(params);
    for (auto regime : {kGC, kRT, kWTA, kCD}) {
        for (auto mode : {AssignmentMode::pam, AssignmentMode::random}) {
            for (double k : {0.0, 1.4, 5.0, 10.0}) {
                const auto snap = simulate(params, pop, regime, k, mode);
                const auto all = snap.incomes();
                CHECK(all.size() == 420);
                CHECK(std::count(all.end() - snap.unemployed_count, all.end(), 0.0) ==
                      snap.unemployed_count);
                double team_total = 0;
                for (const Team& t : snap.teams) team_total += t.output;
                CHECK(snap.total_output == doctest::Approx(team_total).epsilon(1e-12));
                CHECK(std::fabs(sum(all) - snap.total_output) <= 1e-9 * snap.total_output);
                // Gap identity from the sharing rule.
                const double gap = (sum(snap.manager_wages) / 20) /
                                   (sum(snap.worker_wages) / snap.employed);
                const double closed = (1 - params.alpha) * snap.employed / (params.alpha * 20);
                CHECK(std::fabs(gap - closed) <= 1e-9 * closed);
            }
        }
    }
}

TEST_CASE("employment weakly rises along the grid") {
    const ModelParams params;
    const auto pop = make_population(params);
    for (auto regime : {kGC, kRT, kWTA, kCD}) {
        int prev = 0;
        double prev_capacity = 0;
        for (double k : grid()) {
            const auto snap = simulate(params, pop, regime, k);
            CHECK(snap.employed >= prev);
            CHECK(snap.supervisory_capacity() > prev_capacity);
            prev = snap.employed;
            prev_capacity = snap.supervisory_capacity();
        }
    }
}

TEST_CASE("frozen allocation output strictly rises") {
    const ModelParams params;
    const auto pop = make_population(params);
    for (auto regime : {kGC, kRT, kWTA, kCD}) {
        for (double base : {0.0, 5.0}) {
            const auto frozen = simulate(params, pop, regime, base);
            CHECK(frozen_output(frozen, params, regime, base) ==
                  doctest::Approx(frozen.total_output).epsilon(1e-12));
            double prev = -1;
            for (double k : grid()) {
                const double y = frozen_output(frozen, params, regime, k);
                CHECK(y > prev);
                prev = y;
            }
        }
    }
}

TEST_CASE("simulate rejects bad inputs") {
    ModelParams params;
    CHECK_THROWS_AS(simulate(params, kGC, -1.0), std::domain_error);
    params.alpha = 0;
    CHECK_THROWS_AS(simulate(params, kGC, 1.0), std::domain_error);
    const auto pop = make_population(ModelParams{});
    ModelParams fewer;
    fewer.n_workers = 100;
    CHECK_THROWS_AS(simulate(fewer, pop, kGC, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
