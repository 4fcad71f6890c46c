#pragma once

// Gate alphabet, pulse schedules and the Deutsch-Jozsa oracle constructions.
//
// Schedules list steps in chronological order. The matrix of a schedule is the product
// of its step matrices composed right to left: U = U_last * ... * U_first.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "djsim/model.hpp"
#include "djsim/propagator.hpp"
#include "djsim/qcore.hpp"

namespace djsim {

struct LocalGate {
    enum class Kind { Hadamard, PauliX, PauliZ, Ramsey };

    Kind kind = Kind::Hadamard;
    // Only used by Ramsey: |g> -> e^{i phase}|e>, |e> -> -e^{-i phase}|g>.
    double phase = 0.0;

    static LocalGate hadamard() { return {Kind::Hadamard, 0.0}; }
    static LocalGate pauli_x() { return {Kind::PauliX, 0.0}; }
    static LocalGate pauli_z() { return {Kind::PauliZ, 0.0}; }
    static LocalGate ramsey(double phase) { return {Kind::Ramsey, phase}; }

    bool operator==(const LocalGate&) const = default;
};

Mat2 local_matrix(const LocalGate& gate);

struct LocalStep {
    int atom = 1;
    LocalGate gate;
    bool operator==(const LocalStep&) const = default;
};

struct InteractionStep {
    Params params;
    GateTiming timing;
};

struct IdleStep {
    bool operator==(const IdleStep&) const = default;
};

using PulseStep = std::variant<LocalStep, InteractionStep, IdleStep>;

struct Schedule {
    std::vector<PulseStep> steps;
};

enum class Oracle { F1, F2, F3, F4 };

// f(0), f(1) for each oracle: F1 = (0,0), F2 = (1,1), F3 = (0,1), F4 = (1,0).
std::pair<int, int> oracle_values(Oracle which);
bool oracle_is_constant(Oracle which);
std::string to_string(Oracle which);
Oracle parse_oracle(const std::string& name);

Schedule controlled_phase_schedule(const GateConstraints& constraints);
// [X1, H1, controlled-phase, H1, X1, Z1]
Schedule cnot_schedule(const GateConstraints& constraints);
// Single interaction producing (|gg> - i|ee>)/sqrt 2 from |gg>.
Schedule epr_schedule(const GateConstraints& constraints);
Schedule oracle_schedule(Oracle which, const GateConstraints& constraints);

// Exact atomic 4x4 matrix in the (gg, ge, eg, ee) basis.
Mat4 step_matrix(const PulseStep& step);
Mat4 analytic_matrix(const Schedule& schedule);

struct FockInit {
    int n = 0;
};

struct ThermalInit {
    double nbar = 0.0;
};

using CavityInit = std::variant<FockInit, ThermalInit>;

struct AnalyticMode {};

struct PhysicalMode {
    CavityInit cavity_init = FockInit{0};
    int fock_cutoff = 12;
    IntegratorSettings settings;
    // Every interaction window lasts (1 + pulse_error) * t.
    double pulse_error = 0.0;
    // Every interaction window is driven at (1 + omega_jitter) * Omega.
    double omega_jitter = 0.0;
    // Threads used across mixture components.
    int jobs = 1;

    // Throws std::invalid_argument on |pulse_error| > 0.2, F < n + 10 for Fock(n),
    // or invalid integrator settings.
    void validate() const;
};

using ExecMode = std::variant<AnalyticMode, PhysicalMode>;

struct RunStats {
    std::size_t steps = 0;
    double norm_drift = 0.0;
    double leakage = 0.0;

    void merge(std::size_t more_steps, double drift, double leak);
};

// Analytic mode applies exact atomic matrices as U (x) 1_F on any space. Physical mode
// requires the state's F to equal mode.fock_cutoff, applies local steps instantaneously
// and integrates H_I over each interaction window.
StateVector execute(const Schedule& schedule, const StateVector& input, const ExecMode& mode,
                    RunStats* stats = nullptr);
MixtureState execute(const Schedule& schedule, const MixtureState& input, const ExecMode& mode,
                     RunStats* stats = nullptr);

// Line format, one step per line:
//   LOCAL <atom> H|X|Z|RAMSEY [phase]
//   INTERACT <delta> <omega> <t> <N>
//   IDLE
// Blank lines and lines starting with '#' are ignored; g = 1.
std::string format_schedule(const Schedule& schedule);
Schedule parse_schedule(std::istream& in);
Schedule parse_schedule(const std::string& text);

}  // namespace djsim
