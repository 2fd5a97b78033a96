#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "coordsim/experiments.hpp"

namespace coordsim {

enum class CsvSchema { sweep, heatmap, robustness };

/// Header line (without newline) for a schema.
std::string_view csv_header(CsvSchema schema);

/// Six significant digits; integral values keep a trailing ".0".
std::string format_real(double value);

std::string format_csv(std::span<const SweepRow> rows);
std::string format_csv(std::span<const HeatmapRow> rows);
std::string format_csv(const RobustnessReport& report);

/// Writes text to path, creating parent directories. Throws std::runtime_error with the path.
void write_text(const std::filesystem::path& path, std::string_view text);

void write_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);
void write_csv(std::span<const HeatmapRow> rows, const std::filesystem::path& path);
void write_csv(const RobustnessReport& report, const std::filesystem::path& path);

enum class SweepMetric {
    output,
    output_index,
    gini_economy,
    gini_managers,
    gap,
    top10_share,
    unemployment,
    employed,
};

std::string_view metric_name(SweepMetric metric);
SweepMetric parse_metric(std::string_view name);
double metric_value(const MetricRow& row, SweepMetric metric);

/// Standalone SVG line chart: one polyline per regime against K_A.
std::string sweep_svg(std::span<const SweepRow> rows, SweepMetric metric);
void render_sweep_svg(std::span<const SweepRow> rows, SweepMetric metric,
                      const std::filesystem::path& path);

/// Plain-text proposition summary, one line per proposition.
std::string format_propositions(const PropositionReport& report);

}  // namespace coordsim
