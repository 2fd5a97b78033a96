#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coordsim/economy.hpp"
#include "coordsim/model.hpp"

namespace coordsim {

enum class Experiment { sweep, heatmap, robustness, props };

std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view name);

/// Everything one CLI invocation needs. Defaults reproduce the baseline calibration.
struct RunConfig {
    ModelParams params;
    Experiment experiment = Experiment::sweep;
    std::string out_dir = "out";
    AssignmentMode mode = AssignmentMode::pam;
    bool emit_svg = false;

    double ka_min = 0.0;
    double ka_max = 10.0;
    double ka_step = 0.2;

    double heatmap_ka = 5.0;
    double heatmap_beta_min = 0.0;
    double heatmap_beta_max = 4.0;
    double heatmap_beta_step = 0.1;
    double heatmap_delta_min = 0.0;
    double heatmap_delta_max = 0.5;
    double heatmap_delta_step = 0.02;

    double robustness_ka = 10.0;
    std::vector<double> robustness_alphas{0.50, 0.65, 0.80};

    bool operator==(const RunConfig&) const = default;
};

/// Bad config input. where() is "line N" for file input or "--key" for a flag.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& message)
        : std::runtime_error(where + ": " + message), where_(std::move(where)) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// A command-line override: key (without leading dashes) and its raw value.
using ConfigOverride = std::pair<std::string, std::string>;

/// Parses `key = value` lines (`#` starts a comment), then applies overrides in order.
RunConfig parse_config(std::string_view text, const std::vector<ConfigOverride>& overrides = {});

/// Renders every key so that parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

/// Keys parse_config accepts, in emission order.
const std::vector<std::string>& config_keys();

}  // namespace coordsim
