#pragma once

// One-bit Deutsch-Jozsa: prepare |g>|e>, Hadamard both atoms, query the oracle,
// Hadamard the query atom and read it out.

#include "djsim/gates.hpp"

namespace djsim {

enum class Classification { Constant, Balanced };

std::string to_string(Classification c);

struct DJResult {
    double p0 = 0.0;
    double p1 = 0.0;
    Classification classification = Classification::Constant;
    // Reduced two-atom fidelity of the post-oracle state with the ideal
    // (1/2)[(-1)^f(0)|0> + (-1)^f(1)|1>](|0> - |1>).
    double state_fidelity = 0.0;
    // Probability of reading out the answer that matches the oracle's true class.
    double p_correct = 0.0;
    RunStats stats;
};

// (1/2)(|0> + |1>)(|0> - |1>) in (gg, ge, eg, ee) order.
Vector4 initial_atomic_state();
Vector4 ideal_post_oracle_state(Oracle which);

// Analytic mode: atoms only (F = 1). Physical Fock(n): Eq. 1 atoms (x) |n>.
// Throws std::invalid_argument for a thermal cavity; use prepare_initial_ensemble.
StateVector prepare_initial(const ExecMode& mode);
MixtureState prepare_initial_ensemble(const ExecMode& mode);

DJResult run_dj(Oracle oracle, const ExecMode& mode, const GateConstraints& constraints = {});

// Runs the query and readout on a caller-prepared ensemble (e.g. a thermal cavity in
// analytic mode).
DJResult run_dj_on(Oracle oracle, const MixtureState& initial, const ExecMode& mode,
                   const GateConstraints& constraints = {});

}  // namespace djsim
