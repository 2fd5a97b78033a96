#include <doctest.h>

#include <stdexcept>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stack>

#include "coordsim/report.hpp"

using namespace coordsim;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

// Minimal well-formedness check: balanced tags, quoted attributes, one root.
bool well_formed_xml(const std::string& doc) {
    std::stack<std::string> open;
    int roots = 0;
    std::size_t i = 0;
    while ((i = doc.find('<', i)) != std::string::npos) {
        const auto end = doc.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = doc.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.starts_with("?")) continue;
        if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
        if (tag.starts_with("/")) {
            if (open.empty() || open.top() != tag.substr(1)) return false;
            open.pop();
            continue;
        }
        const bool self_closing = tag.ends_with("/");
        const std::string name = tag.substr(0, tag.find_first_of(" /"));
        if (open.empty()) ++roots;
        if (!self_closing) open.push(name);
    }
    return open.empty() && roots == 1;
}

MetricRow sample_metrics() {
    MetricRow m;
    m.output = 18.947136;
    m.output_index = 1.0;
    m.gini_economy = 0.8286236;
    m.gini_managers = 0.0362835;
    m.gap = 1.8038462;
    m.top10_share = 0.2;
    m.unemployment = 0.8325;
    m.employed = 67;
    return m;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("number formatting") {
    CHECK(format_real(0.0) == "0.0");
    CHECK(format_real(10.0) == "10.0");
    CHECK(format_real(0.2) == "0.2");
    CHECK(format_real(1.8038461538) == "1.80385");
    CHECK(format_real(123456789.0) == "1.23457e+08");
}

TEST_CASE("empty csv is header only") {
    const std::vector<SweepRow> none;
    CHECK(format_csv(std::span<const SweepRow>(none)) == std::string(csv_header(CsvSchema::sweep)) + "\n");
    const std::vector<HeatmapRow> no_cells;
    CHECK(format_csv(std::span<const HeatmapRow>(no_cells)) == "beta,delta,gini_managers,output\n");
    CHECK(format_csv(RobustnessReport{}) ==
          "alpha,regime,mgr_gini,gap,employed,check1,check2,check3,check4,check5\n");
}

TEST_CASE("sweep csv rows") {
    const std::vector<SweepRow> rows{{Regime::gentle_compression, 0.0, sample_metrics()}};
    const auto text = format_csv(std::span<const SweepRow>(rows));
    const auto lines = split(text, '\n');
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "regime,K_A,output,output_index,gini_economy,gini_managers,gap,top10_share,"
          "unemployment,employed");
    CHECK(lines[1].starts_with("GentleCompression,0.0,"));
    CHECK(lines[1].ends_with(",67"));
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("sweep csv round trip to six significant digits") {
    const auto regimes = standard_regimes();
    const auto grid = make_grid(0.0, 10.0, 1.0);
    const auto rows = run_sweep(ModelParams{}, regimes, grid);
    const auto lines = split(format_csv(std::span<const SweepRow>(rows)), '\n');
    REQUIRE(lines.size() == rows.size() + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto fields = split(lines[i + 1], ',');
        REQUIRE(fields.size() == 10);
        CHECK(parse_regime(fields[0]) == rows[i].regime);
        const MetricRow& m = rows[i].metrics;
        const double expected[] = {rows[i].agent_capital, m.output, m.output_index, m.gini_economy,
                                   m.gini_managers, m.gap, m.top10_share, m.unemployment};
        for (int f = 0; f < 8; ++f) {
            const double parsed = std::stod(fields[f + 1]);
            CHECK(std::fabs(parsed - expected[f]) <= 5e-6 * std::fabs(expected[f]) + 1e-300);
        }
        CHECK(std::stoi(fields[9]) == m.employed);
    }
}

TEST_CASE("heatmap and robustness csv") {
    const std::vector<HeatmapRow> cells{{0.2, 0.3, 0.267, 42.5}};
    CHECK(format_csv(std::span<const HeatmapRow>(cells)) ==
          "beta,delta,gini_managers,output\n0.2,0.3,0.267,42.5\n");

    RobustnessReport report;
    report.rows.push_back({0.5, Regime::rising_tide, 0.213, 20.0, 400});
    report.checks.push_back({0.5, {true, true, false, true, true}});
    CHECK(format_csv(report) ==
          "alpha,regime,mgr_gini,gap,employed,check1,check2,check3,check4,check5\n"
          "0.5,RisingTide,0.213,20.0,400,true,true,false,true,true\n");
}

TEST_CASE("write_csv creates directories and reports failures") {
    const auto dir = std::filesystem::temp_directory_path() / "coordsim_report_test";
    std::filesystem::remove_all(dir);
    const std::vector<HeatmapRow> cells{{0.0, 0.0, 0.0, 1.0}};
    write_csv(std::span<const HeatmapRow>(cells), dir / "nested" / "heat.csv");
    std::ifstream in(dir / "nested" / "heat.csv");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "beta,delta,gini_managers,output\n0.0,0.0,0.0,1.0\n");
    std::filesystem::remove_all(dir);

    try {
        write_csv(std::span<const HeatmapRow>(cells), "/proc/coordsim/heat.csv");
        FAIL("expected an I/O error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/proc/coordsim") != std::string::npos);
    }
}

TEST_CASE("metric names") {
    CHECK(parse_metric("gap") == SweepMetric::gap);
    CHECK(metric_name(SweepMetric::top10_share) == "top10_share");
    CHECK_THROWS_AS(parse_metric("wages"), std::invalid_argument);
    CHECK(metric_value(sample_metrics(), SweepMetric::employed) == 67.0);
}

TEST_CASE("sweep svg charts") {
    const auto regimes = standard_regimes();
    const auto grid = default_agent_capital_grid();
    const auto rows = run_sweep(ModelParams{}, regimes, grid);
    const auto svg = sweep_svg(rows, SweepMetric::gap);
    CHECK(well_formed_xml(svg));
    const auto svg_lines = split(svg, '\n');
    CHECK(std::count_if(svg_lines.begin(), svg_lines.end(), [](const std::string& l) {
              return l.starts_with("<polyline");
          }) == 4);
    for (const auto& r : regimes) CHECK(svg.find(regime_name(r.regime)) != std::string::npos);
    CHECK(svg.find("stroke-dasharray=\"8 4\"") != std::string::npos);
    CHECK(svg.find("stroke-dasharray=\"2 3\"") != std::string::npos);

    // The gap rises in every regime: each polyline climbs from first to last point.
    for (const auto& line : split(svg, '\n')) {
        if (!line.starts_with("<polyline")) continue;
        const auto start = line.find("points=\"") + 8;
        const auto pts = split(line.substr(start, line.find('"', start) - start), ' ');
        const double y_first = std::stod(pts.front().substr(pts.front().find(',') + 1));
        const double y_last = std::stod(pts.back().substr(pts.back().find(',') + 1));
        CHECK(y_last < y_first);  // SVG y grows downward
    }

    const std::vector<SweepRow> single{{Regime::rising_tide, 0.0, sample_metrics()}};
    const auto lone = sweep_svg(single, SweepMetric::unemployment);
    CHECK(well_formed_xml(lone));
    CHECK(lone.find("<circle") != std::string::npos);
    CHECK(lone.find("nan") == std::string::npos);
}

TEST_CASE("proposition summary text") {
    PropositionReport report;
    for (int i = 0; i < 5; ++i) {
        report.results[i].number = i + 1;
        report.results[i].title = "t";
        report.results[i].detail = "d";
    }
    report.results[1].status = CheckStatus::fail;
    report.results[1].worst_violation = 0.25;
    const auto text = format_propositions(report);
    CHECK(text.find("P2 [FAIL]") != std::string::npos);
    CHECK(text.find("worst violation 0.25") != std::string::npos);
    CHECK(text.find("P5 [pass]") != std::string::npos);
}

}  // TEST_SUITE
