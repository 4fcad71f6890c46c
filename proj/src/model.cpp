#include "djsim/model.hpp"

#include <array>
#include <cmath>
#include <string>

namespace djsim {

namespace {

constexpr cplx kI(0.0, 1.0);

// sum_k (z x)^k / k! for nilpotent x (x^F = 0 on the truncated Fock space).
Eigen::MatrixXcd nilpotent_exp(cplx z, const Eigen::MatrixXcd& x) {
    const auto f = x.rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(f, f);
    Eigen::MatrixXcd term = sum;
    for (Eigen::Index k = 1; k < f; ++k) {
        term = (term * x) * (z / static_cast<double>(k));
        sum += term;
    }
    return sum;
}

Eigen::MatrixXcd fock_lowering(int f) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(f, f);
    for (int n = 1; n < f; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

// Phase of exp(-i pi x) with x reduced mod 2 first; fmod is exact on doubles.
cplx phase_in_pi(double x) { return std::polar(1.0, -kPi * std::fmod(x, 2.0)); }

SparseOperator atom_pair_sum(const Space& space, const Mat2& m) {
    return embed_atom(space, 1, m) + embed_atom(space, 2, m);
}

}  // namespace

Params::Params(double g, double delta, double omega) : g_(g), delta_(delta), omega_(omega) {
    if (!std::isfinite(g) || !std::isfinite(delta) || !std::isfinite(omega)) {
        throw std::invalid_argument("physical parameters must be finite");
    }
    if (delta == 0.0) {
        throw std::invalid_argument("detuning delta must be nonzero");
    }
    if (omega < 0.0) {
        throw std::invalid_argument("Rabi frequency omega must be >= 0");
    }
}

GateTiming make_timing(const Params& params, int periods) {
    if (periods < 1) {
        throw std::invalid_argument("interaction window needs at least one detuning period");
    }
    const double abs_delta = std::abs(params.delta());
    const double n = static_cast<double>(periods);
    GateTiming timing;
    timing.periods = periods;
    timing.t = 2.0 * kPi * n / abs_delta;
    timing.lambda_t_over_pi = params.lambda() * 2.0 * n / abs_delta;
    timing.omega_t_over_pi = params.omega() * 2.0 * n / abs_delta;
    return timing;
}

HarmonicHamiltonian interaction_hamiltonian(const Params& params, const Space& space) {
    const SparseOperator drive = params.omega() * atom_pair_sum(space, pauli::x());
    const SparseOperator emit =
        params.g() * (creation(space) * atom_pair_sum(space, pauli::lower()));
    const SparseOperator absorb =
        params.g() * (annihilation(space) * atom_pair_sum(space, pauli::raise()));
    return HarmonicHamiltonian(drive, {{emit, params.delta()}, {absorb, -params.delta()}});
}

SparseOperator h_interaction(const Params& params, double t, const Space& space) {
    return interaction_hamiltonian(params, space).at(t);
}

HarmonicHamiltonian effective_coupling_hamiltonian(const Params& params, const Space& space) {
    const SparseOperator sx = collective_sigma_x(space);
    const SparseOperator up = params.g() * (creation(space) * sx);
    const SparseOperator down = params.g() * (annihilation(space) * sx);
    return HarmonicHamiltonian(SparseOperator::zero(space),
                               {{up, params.delta()}, {down, -params.delta()}});
}

SparseOperator h_effective(const Params& params, double t, const Space& space) {
    return effective_coupling_hamiltonian(params, space).at(t);
}

HarmonicHamiltonian effective_hamiltonian(const Params& params, const Space& space) {
    const HarmonicHamiltonian coupling = effective_coupling_hamiltonian(params, space);
    const SparseOperator h0 = (2.0 * params.omega()) * collective_sigma_x(space);
    return HarmonicHamiltonian(h0, coupling.terms());
}

AbcCoefficients abc_coefficients(double g, double delta, double t) {
    if (delta == 0.0) {
        throw std::invalid_argument("abc_coefficients: delta must be nonzero");
    }
    const cplx up = std::polar(1.0, delta * t) - 1.0;     // e^{i delta t} - 1
    const cplx down = std::polar(1.0, -delta * t) - 1.0;  // e^{-i delta t} - 1
    const cplx i_delta = kI * delta;
    AbcCoefficients c;
    c.B = g * up / i_delta;
    c.C = -g * down / i_delta;
    c.A = g * g * (t + down / i_delta) / delta;
    return c;
}

SparseOperator u_effective(const Params& params, double t, const Space& space) {
    const int f = space.fock_cutoff();
    const AbcCoefficients abc = abc_coefficients(params.g(), params.delta(), t);
    const Eigen::MatrixXcd a = fock_lowering(f);
    const Eigen::MatrixXcd a_dag = a.adjoint();

    // Atomic projectors onto sigma_x = +1 (|++>), 0 (|+->, |-+>) and -1 (|-->).
    const Mat4 v = plus_minus_basis();
    const std::array<double, 3> eigen_values = {1.0, 0.0, -1.0};
    std::array<Mat4, 3> projectors;
    projectors[0] = v.col(0) * v.col(0).adjoint();
    projectors[1] = v.col(1) * v.col(1).adjoint() + v.col(2) * v.col(2).adjoint();
    projectors[2] = v.col(3) * v.col(3).adjoint();

    std::vector<Eigen::Triplet<cplx>> triplets;
    for (std::size_t k = 0; k < 3; ++k) {
        const double s = eigen_values[k];
        const Eigen::MatrixXcd block = std::exp(-kI * abc.A * s * s) *
                                       nilpotent_exp(-kI * abc.B * s, a) *
                                       nilpotent_exp(-kI * abc.C * s, a_dag);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const cplx p = projectors[k](r, c);
                if (std::abs(p) < 1e-15) {
                    continue;
                }
                for (int n = 0; n < f; ++n) {
                    for (int m = 0; m < f; ++m) {
                        const cplx val = p * block(n, m);
                        if (val != cplx(0.0, 0.0)) {
                            triplets.emplace_back(r * f + n, c * f + m, val);
                        }
                    }
                }
            }
        }
    }
    const auto d = static_cast<Eigen::Index>(space.dim());
    SparseOperator::Matrix m(d, d);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune(1.0, 1e-15);
    return SparseOperator(space, std::move(m));
}

Mat4 plus_minus_basis() {
    Mat4 v;
    // columns: |++>, |+->, |-+>, |--> ; rows: gg, ge, eg, ee
    v << 1, 1, 1, 1,
         1, -1, 1, -1,
         1, 1, -1, -1,
         1, -1, -1, 1;
    return 0.5 * v;
}

Mat4 collective_phase_unitary(double omega_t_over_pi, double lambda_t_over_pi) {
    Vector4 phases;
    phases(0) = phase_in_pi(2.0 * omega_t_over_pi + 2.0 * lambda_t_over_pi);
    phases(1) = 1.0;
    phases(2) = 1.0;
    phases(3) = phase_in_pi(-2.0 * omega_t_over_pi + 2.0 * lambda_t_over_pi);
    const Mat4 v = plus_minus_basis();
    return v * phases.asDiagonal() * v.adjoint();
}

Mat4 u_interaction_analytic(const Params& params, double t) {
    const double turns = params.delta() * t / (2.0 * kPi);
    const double periods = std::round(turns);
    if (std::abs(turns - periods) > 1e-9 || std::abs(periods) < 1.0 || t <= 0.0) {
        throw std::invalid_argument(
            "u_interaction_analytic requires delta * t = 2 pi N with integer N >= 1, got "
            "delta * t / 2 pi = " + std::to_string(turns));
    }
    return collective_phase_unitary(params.omega() * t / kPi, params.lambda() * t / kPi);
}

Mat4 u_interaction_analytic(const GateTiming& timing) {
    if (timing.periods < 1) {
        throw std::invalid_argument("u_interaction_analytic requires N >= 1 detuning periods");
    }
    return collective_phase_unitary(timing.omega_t_over_pi, timing.lambda_t_over_pi);
}

double distance_up_to_phase(const Mat4& u, const Mat4& v) {
    const cplx overlap = (v.adjoint() * u).trace();
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
    return (u - phase * v).cwiseAbs().maxCoeff();
}

GateSolution solve_gate_params(GateTarget target, const GateConstraints& constraints) {
    if (!(constraints.g > 0.0)) {
        throw InfeasibleConstraints("coupling g must be positive");
    }
    if (constraints.min_periods < 1) {
        throw InfeasibleConstraints("min_periods must be >= 1");
    }
    if (!(constraints.omega_over_delta_min >= 0.0) ||
        !std::isfinite(constraints.omega_over_delta_min)) {
        throw InfeasibleConstraints("omega_over_delta_min must be a finite value >= 0");
    }
    const double g = constraints.g;

    // lambda t = N pi g^2 / delta^2 = pi / 4  <=>  delta^2 = 4 N g^2.
    int periods = constraints.min_periods;
    double delta = 2.0 * g * std::sqrt(static_cast<double>(periods));
    if (constraints.delta) {
        delta = *constraints.delta;
        if (!(delta > 0.0)) {
            throw InfeasibleConstraints("fixed detuning must be positive");
        }
        const double n = delta * delta / (4.0 * g * g);
        const double rounded = std::round(n);
        if (std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
            throw InfeasibleConstraints("lambda t = pi/4 needs delta^2 / (4 g^2) integral; delta = " +
                                        std::to_string(delta) + " gives " + std::to_string(n));
        }
        if (rounded < constraints.min_periods) {
            throw InfeasibleConstraints("fixed detuning yields fewer periods than min_periods");
        }
        periods = static_cast<int>(rounded);
    }

    // Omega t / pi for Omega at the lower bound: omega_over_delta_min * delta * (2 N / delta).
    // The slack keeps a bound that is an exact multiple from rounding up one extra turn.
    const double min_turns = constraints.omega_over_delta_min * 2.0 * periods;
    const double slack = 1e-9 * std::max(1.0, min_turns);
    double omega_turns = 0.0;
    if (target == GateTarget::ControlledPhase) {
        omega_turns = std::max(0.0, std::ceil(min_turns - 0.25 - slack)) + 0.25;
    } else {
        omega_turns = std::max(1.0, std::ceil(min_turns - slack));
    }

    const double omega = omega_turns * delta / (2.0 * periods);
    GateSolution solution{Params(g, delta, omega), GateTiming{}};
    solution.timing.t = 2.0 * kPi * periods / delta;
    solution.timing.periods = periods;
    solution.timing.lambda_t_over_pi = periods * g * g / (delta * delta);
    solution.timing.omega_t_over_pi = omega_turns;

    const Mat4 u = u_interaction_analytic(solution.timing);
    double error = 0.0;
    if (target == GateTarget::ControlledPhase) {
        const Mat4 v = plus_minus_basis();
        Mat4 expected = Mat4::Identity();
        expected(0, 0) = -1.0;
        error = distance_up_to_phase(v.adjoint() * u * v, expected);
    } else {
        const Vector4 out = u.col(0);
        Vector4 epr(1.0, 0.0, 0.0, -kI);
        epr /= std::sqrt(2.0);
        error = 1.0 - std::norm(epr.dot(out));
    }
    if (error > 1e-12) {
        throw InfeasibleConstraints("solved parameters fail truth-table verification (error " +
                                    std::to_string(error) + ")");
    }
    return solution;
}

}  // namespace djsim
