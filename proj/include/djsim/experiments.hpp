#pragma once

// Fidelity sweeps: Stark-shift error versus detuning, pulse-duration error, initial Fock
// number, Rabi-frequency miscalibration and Deutsch-Jozsa on a thermal cavity.

#include <string>
#include <vector>

#include "djsim/djrunner.hpp"
#include "djsim/gates.hpp"

namespace djsim {

struct RecordMeta {
    int fock_cutoff = 0;
    std::size_t steps = 0;
    double norm_drift = 0.0;
    double leakage = 0.0;
};

struct FidelityRecord {
    std::string experiment;
    std::string param_name;
    double param_value = 0.0;
    double fidelity = 0.0;
    RecordMeta meta;
};

struct Report {
    std::string experiment;
    std::vector<FidelityRecord> records;
};

// Wraps a numerical or truncation failure with the sweep point that produced it.
struct SweepPointFailure : std::runtime_error {
    SweepPointFailure(const std::string& experiment, const std::string& param_name,
                      double param_value, const std::string& cause);
    std::string experiment;
    std::string param_name;
    double param_value;
};

enum class AtomicInput { gg, eg };

AtomicInput parse_atomic_input(const std::string& name);
std::string to_string(AtomicInput input);
Vector4 atomic_basis(AtomicInput input);

struct SweepOptions {
    IntegratorSettings settings;
    int jobs = 1;
};

struct StarkConfig {
    std::vector<double> delta_over_g = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0};
    double omega_ratio = 20.0;
    int fock_cutoff = 20;
    AtomicInput input = AtomicInput::eg;
};

// Full H_I propagation over one detuning period from (input) (x) |0> compared with the
// cavity-independent effective prediction (U_I input) (x) |0>.
Report stark_sweep(const StarkConfig& config, const SweepOptions& options = {});

struct EprConfig {
    double delta_over_g = 20.0;
    double omega_over_g = 400.0;
    int fock_cutoff = 25;
    AtomicInput input = AtomicInput::gg;
};

struct PulseConfig {
    EprConfig epr;
    int fock_n = 5;
    std::vector<double> eps = {0.0, 0.03, 0.05, 0.10};
};

// EPR generation (lambda t = pi/4) from (input) (x) |fock_n> with every interaction window
// stretched by (1 + eps); fidelity against (EPR target) (x) |fock_n>.
Report pulse_error_sweep(const PulseConfig& config, const SweepOptions& options = {});

struct FockConfig {
    EprConfig epr;
    std::vector<int> fock_n = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
};

Report fock_sweep(const FockConfig& config, const SweepOptions& options = {});

struct RabiConfig {
    double ratio = 0.01;
    double delta_over_g = 1.4142135623730951;
    double omega_ratio = 20.0;
    int fock_cutoff = 20;
    AtomicInput input = AtomicInput::eg;
};

struct RabiResult {
    double f_nominal = 0.0;
    double f_perturbed = 0.0;
    double drop = 0.0;
    Report report;
};

// Same window as stark_sweep at one detuning; the perturbed run drives at
// Omega (1 + ratio) and is scored against the nominal effective prediction.
RabiResult rabi_fluctuation(const RabiConfig& config, const SweepOptions& options = {});

struct ThermalConfig {
    double nbar = 0.5;
    std::vector<Oracle> oracles = {Oracle::F1, Oracle::F2, Oracle::F3, Oracle::F4};
    double delta_over_g = 20.0;
    double omega_over_g = 400.0;
    // 0 selects (thermal components - 1) + 10.
    int fock_cutoff = 0;
    bool analytic = false;
};

// Classification-correct probability per oracle (param_value = oracle number 1..4).
Report thermal_dj(const ThermalConfig& config, const SweepOptions& options = {});

// Controlled-phase constraints realizing (delta, Omega >= omega) with lambda t = pi/4.
GateConstraints constraints_for(double delta_over_g, double omega_over_g);

}  // namespace djsim
