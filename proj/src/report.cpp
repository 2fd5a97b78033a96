#include "coordsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace coordsim {

namespace {

std::string fixed(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

const char* bool_field(bool b) { return b ? "true" : "false"; }

struct Series {
    Regime regime;
    std::vector<std::pair<double, double>> points;
};

constexpr const char* kColors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};
constexpr const char* kDashes[] = {"none", "8 4", "2 3", "10 3 2 3"};

}  // namespace

std::string_view csv_header(CsvSchema schema) {
    switch (schema) {
        case CsvSchema::sweep:
            return "regime,K_A,output,output_index,gini_economy,gini_managers,gap,top10_share,"
                   "unemployment,employed";
        case CsvSchema::heatmap: return "beta,delta,gini_managers,output";
        case CsvSchema::robustness:
            return "alpha,regime,mgr_gini,gap,employed,check1,check2,check3,check4,check5";
    }
    return {};
}

std::string format_real(double value) {
    std::string s = fixed(value, "%.6g");
    if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
    return s;
}

std::string format_csv(std::span<const SweepRow> rows) {
    std::string out(csv_header(CsvSchema::sweep));
    out += '\n';
    for (const SweepRow& r : rows) {
        const MetricRow& m = r.metrics;
        out += regime_name(r.regime);
        for (double v : {r.agent_capital, m.output, m.output_index, m.gini_economy,
                         m.gini_managers, m.gap, m.top10_share, m.unemployment}) {
            out += ',';
            out += format_real(v);
        }
        out += ',' + std::to_string(m.employed) + '\n';
    }
    return out;
}

std::string format_csv(std::span<const HeatmapRow> rows) {
    std::string out(csv_header(CsvSchema::heatmap));
    out += '\n';
    for (const HeatmapRow& r : rows) {
        out += format_real(r.beta) + ',' + format_real(r.delta) + ',' +
               format_real(r.gini_managers) + ',' + format_real(r.output) + '\n';
    }
    return out;
}

std::string format_csv(const RobustnessReport& report) {
    std::string out(csv_header(CsvSchema::robustness));
    out += '\n';
    for (const RobustnessRow& r : report.rows) {
        const auto& c = report.checks_for(r.alpha);
        out += format_real(r.alpha) + ',' + std::string(regime_name(r.regime)) + ',' +
               format_real(r.mgr_gini) + ',' + format_real(r.gap) + ',' +
               std::to_string(r.employed);
        for (bool b : c.passed) {
            out += ',';
            out += bool_field(b);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
        throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " +
                                 ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
    write_text(path, format_csv(rows));
}

void write_csv(std::span<const HeatmapRow> rows, const std::filesystem::path& path) {
    write_text(path, format_csv(rows));
}

void write_csv(const RobustnessReport& report, const std::filesystem::path& path) {
    write_text(path, format_csv(report));
}

std::string_view metric_name(SweepMetric metric) {
    switch (metric) {
        case SweepMetric::output: return "output";
        case SweepMetric::output_index: return "output_index";
        case SweepMetric::gini_economy: return "gini_economy";
        case SweepMetric::gini_managers: return "gini_managers";
        case SweepMetric::gap: return "gap";
        case SweepMetric::top10_share: return "top10_share";
        case SweepMetric::unemployment: return "unemployment";
        case SweepMetric::employed: return "employed";
    }
    return "unknown";
}

SweepMetric parse_metric(std::string_view name) {
    for (auto m : {SweepMetric::output, SweepMetric::output_index, SweepMetric::gini_economy,
                   SweepMetric::gini_managers, SweepMetric::gap, SweepMetric::top10_share,
                   SweepMetric::unemployment, SweepMetric::employed}) {
        if (metric_name(m) == name) return m;
    }
    throw std::invalid_argument("unknown sweep metric '" + std::string(name) + "'");
}

double metric_value(const MetricRow& row, SweepMetric metric) {
    switch (metric) {
        case SweepMetric::output: return row.output;
        case SweepMetric::output_index: return row.output_index;
        case SweepMetric::gini_economy: return row.gini_economy;
        case SweepMetric::gini_managers: return row.gini_managers;
        case SweepMetric::gap: return row.gap;
        case SweepMetric::top10_share: return row.top10_share;
        case SweepMetric::unemployment: return row.unemployment;
        case SweepMetric::employed: return row.employed;
    }
    return 0.0;
}

std::string sweep_svg(std::span<const SweepRow> rows, SweepMetric metric) {
    constexpr double width = 680, height = 420;
    constexpr double left = 70, right = 190, top = 40, bottom = 55;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
    constexpr int ticks = 5;

    std::vector<Series> series;
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    bool first = true;
    for (const SweepRow& r : rows) {
        const double x = r.agent_capital;
        const double y = metric_value(r.metrics, metric);
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const Series& s) { return s.regime == r.regime; });
        if (it == series.end()) {
            series.push_back({r.regime, {}});
            it = series.end() - 1;
        }
        it->points.emplace_back(x, y);
        if (first) {
            x_lo = x_hi = x;
            y_lo = y_hi = y;
            first = false;
        }
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        const double pad = y_lo == 0 ? 1.0 : std::fabs(y_lo) * 0.1;
        y_lo -= pad;
        y_hi += pad;
    }
    const auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::ostringstream svg;
    svg << R"(<?xml version="1.0" encoding="UTF-8"?>)" << '\n'
        << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << width << R"(" height=")"
        << height << R"(" viewBox="0 0 )" << width << ' ' << height << R"(">)" << '\n'
        << R"(<rect x="0" y="0" width=")" << width << R"(" height=")" << height
        << R"(" fill="white"/>)" << '\n'
        << R"(<text x=")" << left << R"(" y="24" font-family="sans-serif" font-size="15">)"
        << metric_name(metric) << " vs K_A</text>\n";

    svg << R"(<g stroke="black" stroke-width="1">)" << '\n'
        << R"(<line x1=")" << left << R"(" y1=")" << top + plot_h << R"(" x2=")"
        << left + plot_w << R"(" y2=")" << top + plot_h << R"("/>)" << '\n'
        << R"(<line x1=")" << left << R"(" y1=")" << top << R"(" x2=")" << left
        << R"(" y2=")" << top + plot_h << R"("/>)" << '\n';
    for (int t = 0; t <= ticks; ++t) {
        const double fx = left + plot_w * t / ticks;
        const double fy = top + plot_h * t / ticks;
        svg << R"(<line x1=")" << fx << R"(" y1=")" << top + plot_h << R"(" x2=")" << fx
            << R"(" y2=")" << top + plot_h + 5 << R"("/>)" << '\n'
            << R"(<line x1=")" << left - 5 << R"(" y1=")" << fy << R"(" x2=")" << left
            << R"(" y2=")" << fy << R"("/>)" << '\n';
    }
    svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int t = 0; t <= ticks; ++t) {
        const double xv = x_lo + (x_hi - x_lo) * t / ticks;
        const double yv = y_hi - (y_hi - y_lo) * t / ticks;
        svg << R"(<text x=")" << left + plot_w * t / ticks << R"(" y=")" << top + plot_h + 18
            << R"(" text-anchor="middle">)" << fixed(xv, "%.3g") << "</text>\n"
            << R"(<text x=")" << left - 8 << R"(" y=")" << top + plot_h * t / ticks + 4
            << R"(" text-anchor="end">)" << fixed(yv, "%.3g") << "</text>\n";
    }
    svg << R"(<text x=")" << left + plot_w / 2 << R"(" y=")" << height - 12
        << R"(" text-anchor="middle">K_A</text>)" << '\n'
        << "</g>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kColors[i % 4];
        const char* dash = kDashes[i % 4];
        svg << R"(<polyline fill="none" stroke=")" << color << R"(" stroke-width="2")";
        if (std::string_view(dash) != "none") svg << R"( stroke-dasharray=")" << dash << '"';
        svg << R"( points=")";
        for (std::size_t k = 0; k < series[i].points.size(); ++k) {
            if (k) svg << ' ';
            svg << px(series[i].points[k].first) << ',' << py(series[i].points[k].second);
        }
        svg << R"("/>)" << '\n';
        if (series[i].points.size() == 1) {
            svg << R"(<circle cx=")" << px(series[i].points[0].first) << R"(" cy=")"
                << py(series[i].points[0].second) << R"(" r="3" fill=")" << color << R"("/>)"
                << '\n';
        }
        const double ly = top + 10 + 22.0 * static_cast<double>(i);
        const double lx = left + plot_w + 15;
        svg << R"(<line x1=")" << lx << R"(" y1=")" << ly << R"(" x2=")" << lx + 30
            << R"(" y2=")" << ly << R"(" stroke=")" << color << R"(" stroke-width="2")";
        if (std::string_view(dash) != "none") svg << R"( stroke-dasharray=")" << dash << '"';
        svg << R"(/>)" << '\n'
            << R"(<text x=")" << lx + 36 << R"(" y=")" << ly + 4
            << R"(" font-family="sans-serif" font-size="11">)" << regime_name(series[i].regime)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void render_sweep_svg(std::span<const SweepRow> rows, SweepMetric metric,
                      const std::filesystem::path& path) {
    write_text(path, sweep_svg(rows, metric));
}

std::string format_propositions(const PropositionReport& report) {
    std::ostringstream out;
    for (const PropositionResult& r : report.results) {
        out << 'P' << r.number << " [" << status_name(r.status) << "] " << r.title;
        if (r.status == CheckStatus::fail) out << " (worst violation " << r.worst_violation << ')';
        out << "\n    " << r.detail << '\n';
    }
    return out.str();
}

}  // namespace coordsim
