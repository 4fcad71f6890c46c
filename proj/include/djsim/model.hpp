#pragma once

// Two driven two-level atoms coupled to a detuned cavity mode, in the interaction picture.
// All rates are in units of the atom-cavity coupling g and times in units of 1/g.

#include <optional>
#include <stdexcept>

#include "djsim/propagator.hpp"
#include "djsim/qcore.hpp"

namespace djsim {

struct InfeasibleConstraints : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Params {
public:
    // Throws std::invalid_argument for delta == 0, omega < 0 or non-finite inputs.
    Params(double g, double delta, double omega);

    double g() const { return g_; }
    double delta() const { return delta_; }
    double omega() const { return omega_; }
    double lambda() const { return g_ * g_ / (2.0 * delta_); }

    Params with_omega(double omega) const { return Params(g_, delta_, omega); }

    bool operator==(const Params&) const = default;

private:
    double g_;
    double delta_;
    double omega_;
};

struct AbcCoefficients {
    cplx A;
    cplx B;
    cplx C;
};

// One cavity-interaction window of N detuning periods. The phase products are kept in
// units of pi so that large Omega*t values (thousands of pi) reduce mod 2 pi exactly.
struct GateTiming {
    double t = 0.0;
    int periods = 0;
    double lambda_t_over_pi = 0.0;
    double omega_t_over_pi = 0.0;

    double lambda_t() const { return lambda_t_over_pi * kPi; }
    double omega_t() const { return omega_t_over_pi * kPi; }
};

// Interaction window of `periods` full detuning periods (delta * t = 2 pi N).
GateTiming make_timing(const Params& params, int periods);

// H_I(t) = sum_j [Omega (s_j^+ + s_j^-) + g (e^{-i delta t} a^dag s_j^- + e^{i delta t} a s_j^+)]
HarmonicHamiltonian interaction_hamiltonian(const Params& params, const Space& space);
SparseOperator h_interaction(const Params& params, double t, const Space& space);

// H_e(t) = g (e^{-i delta t} a^dag + e^{i delta t} a) sigma_x, the coupling with the
// fast-rotating S^+- terms dropped.
HarmonicHamiltonian effective_coupling_hamiltonian(const Params& params, const Space& space);
SparseOperator h_effective(const Params& params, double t, const Space& space);

// H_0 + H_e with H_0 = 2 Omega sigma_x.
HarmonicHamiltonian effective_hamiltonian(const Params& params, const Space& space);

// Closed-form coefficients of U_e(t) = exp(-i A sx^2) exp(-i B sx a) exp(-i C sx a^dag).
AbcCoefficients abc_coefficients(double g, double delta, double t);

// U_e(t) evaluated blockwise over the sigma_x eigenvalues s in {-1, 0, 1}. On the
// truncated space exp(-i B s a) and exp(-i C s a^dag) are finite series since a^F = 0.
SparseOperator u_effective(const Params& params, double t, const Space& space);

// exp(-i 2 Omega t sx - i 2 lambda t sx^2) in the (gg, ge, eg, ee) basis, from the phase
// products in units of pi. Diagonal in the |+-> basis:
//   |++> -> e^{-i 2 (Omega + lambda) t},  |+->, |-+> -> 1,  |--> -> e^{+i 2 (Omega - lambda) t}.
Mat4 collective_phase_unitary(double omega_t_over_pi, double lambda_t_over_pi);

// Cavity-independent U_I(t) = e^{-i H_0 t} U_e(t). Requires delta * t = 2 pi N (N >= 1,
// within 1e-9 of an integer); throws std::invalid_argument otherwise.
Mat4 u_interaction_analytic(const Params& params, double t);
Mat4 u_interaction_analytic(const GateTiming& timing);

// Change of basis whose columns are |++>, |+->, |-+>, |--> written in (gg, ge, eg, ee).
Mat4 plus_minus_basis();

enum class GateTarget { ControlledPhase, EprQuarter };

struct GateConstraints {
    int min_periods = 1;
    double omega_over_delta_min = 20.0;
    // When set, the detuning is fixed and the period count follows from lambda t = pi / 4.
    std::optional<double> delta;
    double g = 1.0;
};

struct GateSolution {
    Params params;
    GateTiming timing;
};

// Solves the phase congruences for the requested gate with lambda t = pi / 4:
//   ControlledPhase: Omega t = pi / 4 + p pi  ->  diag(-1, 1, 1, 1) on |++>, |+->, |-+>, |-->
//   EprQuarter:      Omega t = m pi           ->  |gg> -> (|gg> - i |ee>) / sqrt 2
// lambda t = N pi g^2 / delta^2 fixes delta = 2 g sqrt(N). The smallest p (or m >= 1) with
// Omega >= omega_over_delta_min * delta is chosen. Throws InfeasibleConstraints.
GateSolution solve_gate_params(GateTarget target, const GateConstraints& constraints);

// Largest entry of |U - e^{i phi} V| minimized over the global phase phi.
double distance_up_to_phase(const Mat4& u, const Mat4& v);

}  // namespace djsim
