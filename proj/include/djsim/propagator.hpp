#pragma once

// Fixed-step RK4 integration of i d|psi>/dt = H(t)|psi> for Hamiltonians of the form
//   H(t) = H_static + sum_k exp(-i nu_k t) K_k,
// with norm-drift and Fock-truncation monitoring.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "djsim/qcore.hpp"

namespace djsim {

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegratorSettings {
    // dt = 1 / (steps_per_radian * omega_max); see HarmonicHamiltonian::frequency_bound.
    double steps_per_radian = 64.0;
    double unitarity_tol = 1e-6;
    double leakage_tol = 1e-6;

    // Throws std::invalid_argument when outside steps_per_radian >= 5, tolerances in (0, 1e-2].
    void validate() const;
};

struct HarmonicTerm {
    SparseOperator op;
    // The term contributes exp(-i * frequency * t) * op.
    double frequency;
};

class HarmonicHamiltonian {
public:
    explicit HarmonicHamiltonian(SparseOperator constant, std::vector<HarmonicTerm> terms = {});

    const Space& space() const { return constant_.space(); }
    const SparseOperator& constant() const { return constant_; }
    const std::vector<HarmonicTerm>& terms() const { return terms_; }

    SparseOperator at(double t) const;

    // out = H(t) * in. `out` must not alias `in`.
    void apply(double t, const Vector& in, Vector& out) const;

    // Largest angular frequency the integrator has to resolve: the larger of a
    // spectral-norm bound on H(t) (uniform in t) and the fastest drive phase.
    double frequency_bound() const { return frequency_bound_; }

private:
    SparseOperator constant_;
    std::vector<HarmonicTerm> terms_;
    double frequency_bound_ = 0.0;
};

struct Evolution {
    StateVector state;
    std::size_t steps = 0;
    double norm_drift = 0.0;
    double leakage = 0.0;
};

std::size_t step_count(const HarmonicHamiltonian& h, double duration,
                       const IntegratorSettings& settings);

// Integrates from t0 to t1 with the step count from step_count(). Throws NumericalFailure
// when |norm - norm0| exceeds unitarity_tol and TruncationFailure when the final
// population of the two highest Fock levels exceeds leakage_tol.
Evolution evolve(const HarmonicHamiltonian& h, const StateVector& psi0, double t0, double t1,
                 const IntegratorSettings& settings);

// Same integration with an explicit step count and no tolerance checks. Used by the
// convergence tests and by evolve_mixture, which judges leakage on the ensemble.
Evolution evolve_steps(const HarmonicHamiltonian& h, const StateVector& psi0, double t0,
                       double t1, std::size_t steps);

struct MixtureEvolution {
    MixtureState state;
    std::size_t steps = 0;
    double norm_drift = 0.0;  // worst component
    double leakage = 0.0;     // ensemble population of the two highest Fock levels
};

MixtureEvolution evolve_mixture(const HarmonicHamiltonian& h, const MixtureState& mix, double t0,
                                double t1, const IntegratorSettings& settings, int jobs = 1);

}  // namespace djsim
