#pragma once

// Flat `key = value` run configuration with '#' comments.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "djsim/experiments.hpp"

namespace djsim {

struct ConfigError : std::runtime_error {
    ConfigError(std::string key, const std::string& message);
    std::string key;
};

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"stark", "pulse", "fock", "rabi",
                                                   "thermal", "dj", "gates-check"};
    return names;
}

struct RunConfig {
    std::optional<std::string> experiment;

    std::optional<double> delta_over_g;
    std::optional<std::vector<double>> delta_list;
    std::optional<double> omega_over_g;
    std::optional<double> omega_ratio;
    std::optional<int> fock_cutoff;
    std::optional<double> nbar;
    std::optional<std::vector<int>> fock_n;
    std::optional<std::vector<double>> eps_list;
    std::optional<double> pulse_error;
    std::optional<std::vector<std::string>> oracle;
    std::optional<double> rabi_ratio;
    std::optional<std::string> atomic_input;
    std::optional<std::string> cavity;
    std::optional<std::string> mode;

    std::optional<double> steps_per_radian;
    std::optional<double> unitarity_tol;
    std::optional<double> leakage_tol;
    std::optional<int> jobs;

    std::optional<std::string> out;
    std::optional<std::string> json;
    std::optional<std::string> plot;
    std::optional<std::string> schedule;

    bool operator==(const RunConfig&) const = default;

    // Range checks against the library preconditions; throws ConfigError naming the key.
    void validate() const;

    IntegratorSettings integrator() const;
    SweepOptions sweep_options() const;
    std::vector<Oracle> oracles() const;

    StarkConfig stark() const;
    PulseConfig pulse() const;
    FockConfig fock() const;
    RabiConfig rabi() const;
    ThermalConfig thermal() const;
};

// Parses and validates; unknown keys and malformed values raise ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

std::string serialize_config(const RunConfig& config);

}  // namespace djsim
