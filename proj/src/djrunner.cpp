#include "djsim/djrunner.hpp"

#include <cmath>

namespace djsim {

namespace {

const LocalGate kHadamard = LocalGate::hadamard();

}  // namespace

std::string to_string(Classification c) {
    return c == Classification::Constant ? "Constant" : "Balanced";
}

Vector4 initial_atomic_state() { return Vector4(0.5, -0.5, 0.5, -0.5); }

Vector4 ideal_post_oracle_state(Oracle which) {
    const auto [f0, f1] = oracle_values(which);
    const double s0 = f0 ? -1.0 : 1.0;
    const double s1 = f1 ? -1.0 : 1.0;
    return Vector4(0.5 * s0, -0.5 * s0, 0.5 * s1, -0.5 * s1);
}

StateVector prepare_initial(const ExecMode& mode) {
    Vector4 atoms = Vector4::Zero();
    atoms(1) = 1.0;  // |g>_1 |e>_2
    const Mat2 h = local_matrix(kHadamard);
    Mat4 both;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            both(r, c) = h(r / 2, c / 2) * h(r % 2, c % 2);
        }
    }
    atoms = both * atoms;

    if (std::holds_alternative<AnalyticMode>(mode)) {
        return product_state(make_space(1), atoms, 0);
    }
    const auto& physical = std::get<PhysicalMode>(mode);
    const auto* fock = std::get_if<FockInit>(&physical.cavity_init);
    if (!fock) {
        throw std::invalid_argument("a thermal cavity is a mixture; use prepare_initial_ensemble");
    }
    return product_state(make_space(physical.fock_cutoff), atoms, fock->n);
}

MixtureState prepare_initial_ensemble(const ExecMode& mode) {
    if (const auto* physical = std::get_if<PhysicalMode>(&mode)) {
        if (const auto* thermal = std::get_if<ThermalInit>(&physical->cavity_init)) {
            const int components = thermal_component_count(thermal->nbar, 1e-6);
            const Vector4 atoms = prepare_initial(AnalyticMode{}).amps().head<4>();
            return thermal_mixture(make_space(physical->fock_cutoff), atoms, thermal->nbar,
                                   components);
        }
    }
    return MixtureState::pure(prepare_initial(mode));
}

DJResult run_dj(Oracle oracle, const ExecMode& mode, const GateConstraints& constraints) {
    return run_dj_on(oracle, prepare_initial_ensemble(mode), mode, constraints);
}

DJResult run_dj_on(Oracle oracle, const MixtureState& initial, const ExecMode& mode,
                   const GateConstraints& constraints) {
    DJResult result;
    const MixtureState queried =
        execute(oracle_schedule(oracle, constraints), initial, mode, &result.stats);
    result.state_fidelity = atomic_fidelity(queried, ideal_post_oracle_state(oracle));

    const Schedule readout{{LocalStep{1, kHadamard}}};
    const MixtureState final_state = execute(readout, queried, mode, &result.stats);
    const auto probs = atom1_outcome_probs(final_state);
    result.p0 = probs.p_g;
    result.p1 = probs.p_e;
    result.classification = result.p0 >= 0.5 ? Classification::Constant : Classification::Balanced;
    result.p_correct = oracle_is_constant(oracle) ? result.p0 : result.p1;
    return result;
}

}  // namespace djsim
