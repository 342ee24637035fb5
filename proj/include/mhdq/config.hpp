#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>

#include "mhdq/eos.hpp"
#include "mhdq/field.hpp"

namespace mhdq {

/// Malformed or invalid scenario configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key = value scenario description. See config_help() for the keys
/// and their defaults.
struct ScenarioConfig {
    DomainKind domain = DomainKind::quarter;
    std::array<double, 3> L{1.0, 0.5, 1.0};
    std::array<int, 3> n{32, 16, 32};

    EquationOfState eos;
    double c = 1.0;
    double background_p = 0.0;

    std::string datum = "interior-bump";
    double amplitude = 0.01;
    double width = 0.24;
    std::array<double, 3> center{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()};

    double cfl = 0.5;
    double epsilon = 0.02;
    double t_end = 1.0;
    long max_steps = 0;
    int output_every = 10;
    std::string output_dir = "mhdq_out";
    bool require_compat = true;
    std::uint64_t seed = 1;
    bool serial_reductions = false;

    double compat_tol_factor = 10.0;
    double h1_threshold = std::numeric_limits<double>::quiet_NaN();
    double h3_growth_factor = 2.0;
    double divh_growth_coeff = 10.0;

    /// Every key with its resolved value, one per line, parseable again.
    std::string to_text() const;
};

ScenarioConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Key reference with defaults, for --help.
std::string config_help();

}  // namespace mhdq
