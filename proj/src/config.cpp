#include "coordsim/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace coordsim {

namespace {

// Setter failures carry only the message; the caller adds location.
struct ValueError {
    std::string message;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view raw) {
    const auto s = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ValueError{"cannot parse '" + std::string(s) + "' as a number"};
    }
    return v;
}

template <typename Int>
Int to_integer(std::string_view raw) {
    const auto s = trim(raw);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ValueError{"cannot parse '" + std::string(s) + "' as an integer"};
    }
    return v;
}

bool to_bool(std::string_view raw) {
    const auto s = trim(raw);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ValueError{"cannot parse '" + std::string(s) + "' as a boolean"};
}

std::vector<double> to_list(std::string_view raw) {
    std::vector<double> out;
    auto rest = trim(raw);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        out.push_back(to_double(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (out.empty()) throw ValueError{"expected a comma-separated list of numbers"};
    return out;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

void require(bool ok, const char* message) {
    if (!ok) throw ValueError{message};
}

struct Key {
    std::string name;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

Key real(std::string name, double RunConfig::*field, std::function<bool(double)> ok,
         const char* range) {
    return {std::move(name),
            [=](RunConfig& c, std::string_view v) {
                const double x = to_double(v);
                require(ok(x), range);
                c.*field = x;
            },
            [=](const RunConfig& c) { return format_double(c.*field); }};
}

Key param(std::string name, double ModelParams::*field, std::function<bool(double)> ok,
          const char* range) {
    return {std::move(name),
            [=](RunConfig& c, std::string_view v) {
                const double x = to_double(v);
                require(ok(x), range);
                c.params.*field = x;
            },
            [=](const RunConfig& c) { return format_double(c.params.*field); }};
}

Key count(std::string name, int ModelParams::*field) {
    return {std::move(name),
            [=](RunConfig& c, std::string_view v) {
                const int x = to_integer<int>(v);
                require(x >= 1, "must be an integer >= 1");
                c.params.*field = x;
            },
            [=](const RunConfig& c) { return std::to_string(c.params.*field); }};
}

const auto positive = [](double x) { return x > 0; };
const auto nonnegative = [](double x) { return x >= 0; };
const auto unit_open = [](double x) { return x > 0 && x < 1; };
const auto unit_half_open = [](double x) { return x > 0 && x <= 1; };

const std::vector<Key>& key_table() {
    static const std::vector<Key> keys = {
        param("A", &ModelParams::A, positive, "must be > 0"),
        param("alpha", &ModelParams::alpha, unit_open, "must lie in (0,1)"),
        param("c0", &ModelParams::c0, positive, "must be > 0"),
        param("gamma", &ModelParams::gamma, nonnegative, "must be >= 0"),
        param("beta", &ModelParams::beta, nonnegative, "must be >= 0"),
        param("delta", &ModelParams::delta, nonnegative, "must be >= 0"),
        param("T0", &ModelParams::T0, positive, "must be > 0"),
        count("n_managers", &ModelParams::n_managers),
        count("n_workers", &ModelParams::n_workers),
        param("manager_skill_min", &ModelParams::manager_skill_min, unit_half_open,
              "must lie in (0,1]"),
        param("manager_skill_max", &ModelParams::manager_skill_max, unit_half_open,
              "must lie in (0,1]"),
        {"worker_skill_dist",
         [](RunConfig& c, std::string_view v) {
             const auto pair = to_list(v);
             require(pair.size() == 2, "expects two Beta shape parameters 'a, b'");
             require(pair[0] > 0 && pair[1] > 0, "Beta shape parameters must be > 0");
             c.params.worker_beta_a = pair[0];
             c.params.worker_beta_b = pair[1];
         },
         [](const RunConfig& c) {
             return format_list({c.params.worker_beta_a, c.params.worker_beta_b});
         }},
        {"seed",
         [](RunConfig& c, std::string_view v) { c.params.seed = to_integer<std::uint64_t>(v); },
         [](const RunConfig& c) { return std::to_string(c.params.seed); }},
        {"experiment",
         [](RunConfig& c, std::string_view v) {
             try {
                 c.experiment = parse_experiment(trim(v));
             } catch (const std::invalid_argument& e) {
                 throw ValueError{e.what()};
             }
         },
         [](const RunConfig& c) { return std::string(experiment_name(c.experiment)); }},
        {"out",
         [](RunConfig& c, std::string_view v) {
             const auto s = trim(v);
             require(!s.empty(), "output directory must not be empty");
             c.out_dir = std::string(s);
         },
         [](const RunConfig& c) { return c.out_dir; }},
        {"mode",
         [](RunConfig& c, std::string_view v) {
             const auto s = trim(v);
             if (s == "pam") {
                 c.mode = AssignmentMode::pam;
             } else if (s == "random") {
                 c.mode = AssignmentMode::random;
             } else {
                 throw ValueError{"mode must be 'pam' or 'random'"};
             }
         },
         [](const RunConfig& c) {
             return std::string(c.mode == AssignmentMode::pam ? "pam" : "random");
         }},
        {"svg", [](RunConfig& c, std::string_view v) { c.emit_svg = to_bool(v); },
         [](const RunConfig& c) { return std::string(c.emit_svg ? "true" : "false"); }},
        real("ka_min", &RunConfig::ka_min, nonnegative, "must be >= 0"),
        real("ka_max", &RunConfig::ka_max, nonnegative, "must be >= 0"),
        real("ka_step", &RunConfig::ka_step, positive, "must be > 0"),
        real("heatmap_ka", &RunConfig::heatmap_ka, nonnegative, "must be >= 0"),
        real("heatmap_beta_min", &RunConfig::heatmap_beta_min, nonnegative, "must be >= 0"),
        real("heatmap_beta_max", &RunConfig::heatmap_beta_max, nonnegative, "must be >= 0"),
        real("heatmap_beta_step", &RunConfig::heatmap_beta_step, positive, "must be > 0"),
        real("heatmap_delta_min", &RunConfig::heatmap_delta_min, nonnegative, "must be >= 0"),
        real("heatmap_delta_max", &RunConfig::heatmap_delta_max, nonnegative, "must be >= 0"),
        real("heatmap_delta_step", &RunConfig::heatmap_delta_step, positive, "must be > 0"),
        real("robustness_ka", &RunConfig::robustness_ka, nonnegative, "must be >= 0"),
        {"robustness_alphas",
         [](RunConfig& c, std::string_view v) {
             auto alphas = to_list(v);
             for (double a : alphas) require(unit_open(a), "every alpha must lie in (0,1)");
             c.robustness_alphas = std::move(alphas);
         },
         [](const RunConfig& c) { return format_list(c.robustness_alphas); }},
    };
    return keys;
}

const Key* find_key(std::string_view name) {
    for (const Key& k : key_table()) {
        if (k.name == name) return &k;
    }
    return nullptr;
}

void apply(RunConfig& config, std::string_view key, std::string_view value,
           const std::string& where) {
    const Key* k = find_key(key);
    if (!k) throw ConfigError(where, "unknown key '" + std::string(key) + "'");
    try {
        k->set(config, value);
    } catch (const ValueError& e) {
        throw ConfigError(where, "'" + std::string(key) + "' " + e.message);
    }
}

void check_consistency(const RunConfig& c) {
    const auto fail = [](const std::string& msg) { throw ConfigError("config", msg); };
    try {
        c.params.validate();
    } catch (const std::domain_error& e) {
        fail(e.what());
    }
    if (c.ka_max < c.ka_min) fail("ka_max must be >= ka_min");
    if (c.heatmap_beta_max < c.heatmap_beta_min) fail("heatmap_beta_max must be >= heatmap_beta_min");
    if (c.heatmap_delta_max < c.heatmap_delta_min) {
        fail("heatmap_delta_max must be >= heatmap_delta_min");
    }
}

}  // namespace

std::string_view experiment_name(Experiment e) {
    switch (e) {
        case Experiment::sweep: return "sweep";
        case Experiment::heatmap: return "heatmap";
        case Experiment::robustness: return "robustness";
        case Experiment::props: return "props";
    }
    return "unknown";
}

Experiment parse_experiment(std::string_view name) {
    for (auto e : {Experiment::sweep, Experiment::heatmap, Experiment::robustness,
                   Experiment::props}) {
        if (experiment_name(e) == name) return e;
    }
    throw std::invalid_argument("unknown experiment '" + std::string(name) +
                                "' (expected sweep, heatmap, robustness or props)");
}

RunConfig parse_config(std::string_view text, const std::vector<ConfigOverride>& overrides) {
    RunConfig config;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(where, "missing key before '='");
        apply(config, key, line.substr(eq + 1), where);
    }
    for (const auto& [key, value] : overrides) apply(config, key, value, "--" + key);
    check_consistency(config);
    return config;
}

std::string emit_config(const RunConfig& config) {
    std::ostringstream out;
    for (const Key& k : key_table()) out << k.name << " = " << k.get(config) << '\n';
    return out.str();
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const Key& k : key_table()) n.push_back(k.name);
        return n;
    }();
    return names;
}

}  // namespace coordsim
