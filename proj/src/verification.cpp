#include "djsim/verification.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "djsim/djrunner.hpp"
#include "djsim/gates.hpp"
#include "djsim/model.hpp"

namespace djsim {

namespace {

constexpr cplx kI(0.0, 1.0);

std::string sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CheckResult bounded(const std::string& name, double value, double limit) {
    return {name, value <= limit, "value " + sci(value) + " (limit " + sci(limit) + ")"};
}

// Integrates dB = g e^{i d t}, dC = g e^{-i d t}, dA = i (dC) B from 0 to t.
std::array<cplx, 3> abc_by_integration(double g, double d, double t) {
    auto rhs = [&](double s, const std::array<cplx, 3>& y) {
        const cplx db = g * std::polar(1.0, d * s);
        const cplx dc = g * std::polar(1.0, -d * s);
        return std::array<cplx, 3>{kI * dc * y[1], db, dc};
    };
    const int steps = 20000;
    const double h = t / steps;
    std::array<cplx, 3> y{};
    for (int k = 0; k < steps; ++k) {
        const double s = k * h;
        auto add = [](const std::array<cplx, 3>& a, const std::array<cplx, 3>& b, double w) {
            return std::array<cplx, 3>{a[0] + w * b[0], a[1] + w * b[1], a[2] + w * b[2]};
        };
        const auto k1 = rhs(s, y);
        const auto k2 = rhs(s + h / 2, add(y, k1, h / 2));
        const auto k3 = rhs(s + h / 2, add(y, k2, h / 2));
        const auto k4 = rhs(s + h, add(y, k3, h));
        for (int i = 0; i < 3; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    return y;
}

CheckResult check_abc() {
    std::mt19937_64 rng(20231017);
    std::uniform_real_distribution<double> gd(0.3, 2.0), dd(0.5, 4.0), td(0.1, 6.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double g = gd(rng), d = dd(rng), t = td(rng);
        const auto closed = abc_coefficients(g, d, t);
        const auto ode = abc_by_integration(g, d, t);
        worst = std::max({worst, std::abs(closed.A - ode[0]), std::abs(closed.B - ode[1]),
                          std::abs(closed.C - ode[2])});
    }
    return bounded("abc coefficients vs ODE integration (20 draws)", worst, 1e-8);
}

Vector4 random_atoms(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = cplx(n(rng), n(rng));
    return v.normalized();
}

CheckResult check_u_effective() {
    const Space space = make_space(30);
    const Params params(1.0, 1.7, 0.0);
    const double t = 2.3;
    const SparseOperator u = u_effective(params, t, space);
    IntegratorSettings settings;
    settings.steps_per_radian = 400.0;
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int n : {0, 2, 5}) {
        const StateVector psi = product_state(space, random_atoms(rng), n);
        const auto run = evolve_steps(effective_coupling_hamiltonian(params, space), psi, 0.0, t,
                                      step_count(effective_coupling_hamiltonian(params, space), t,
                                                 settings));
        worst = std::max(worst, 1.0 - fidelity_pure(u.apply(psi), run.state));
    }
    return bounded("U_e closed form vs propagated H_e (F = 30)", worst, 1e-6);
}

CheckResult check_u_interaction() {
    const Space space = make_space(30);
    const Params params(1.0, 2.0, 3.1);
    const double t = 2.0 * kPi / params.delta();
    const Mat4 u = u_interaction_analytic(params, t);
    const HarmonicHamiltonian h = effective_hamiltonian(params, space);
    IntegratorSettings settings;
    settings.steps_per_radian = 400.0;
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int n : {0, 3, 6}) {
        const Vector4 atoms = random_atoms(rng);
        const auto run = evolve_steps(h, product_state(space, atoms, n), 0.0, t,
                                      step_count(h, t, settings));
        worst = std::max(worst, 1.0 - fidelity_pure(product_state(space, u * atoms, n), run.state));
    }
    return bounded("U_I closed form vs propagated H_0 + H_e at delta t = 2 pi", worst, 1e-8);
}

// |++>, |+->, |-+>, |--> pick up e^{-i2(W+L)t}, 1, 1, e^{i2(W-L)t}; compare in the gg/ee
// and ge/eg channels written out by hand.
CheckResult check_closed_channels() {
    const Params params(1.0, 2.0, 0.37);
    const double t = 2.0 * kPi / params.delta() * 3.0;
    const Mat4 u = u_interaction_analytic(params, t);
    const cplx p = std::exp(-2.0 * kI * (params.omega() + params.lambda()) * t);
    const cplx m = std::exp(2.0 * kI * (params.omega() - params.lambda()) * t);
    // |gg> = (|++> + |+-> + |-+> + |-->) / 2, |eg> = (|++> + |+-> - |-+> - |-->) / 2
    const Vector4 from_gg(0.25 * (p + 2.0 + m), 0.25 * (p - m), 0.25 * (p - m), 0.25 * (p - 2.0 + m));
    const Vector4 from_eg(0.25 * (p - m), 0.25 * (p - 2.0 + m), 0.25 * (p + 2.0 + m), 0.25 * (p - m));
    Vector4 gg = Vector4::Zero(), eg = Vector4::Zero();
    gg(0) = 1.0;
    eg(2) = 1.0;
    const double e1 = 1.0 - std::norm(from_gg.dot(u * gg));
    const double e2 = 1.0 - std::norm(from_eg.dot(u * eg));
    return bounded("closed-form |gg>, |eg> evolution vs U_I", std::max(e1, e2), 1e-10);
}

CheckResult check_controlled_phase() {
    const GateSolution sol = solve_gate_params(GateTarget::ControlledPhase, GateConstraints{});
    const Mat4 v = plus_minus_basis();
    Mat4 expected = Mat4::Identity();
    expected(0, 0) = -1.0;
    const double err = distance_up_to_phase(v.adjoint() * u_interaction_analytic(sol.timing) * v, expected);
    return bounded("controlled-phase truth table in the +- basis", err, 1e-12);
}

CheckResult check_cnot() {
    Mat4 expected = Mat4::Zero();
    expected(0, 0) = expected(1, 1) = 1.0;
    expected(3, 2) = expected(2, 3) = 1.0;
    const double err = distance_up_to_phase(analytic_matrix(cnot_schedule(GateConstraints{})), expected);
    return bounded("CNOT truth table (atom 1 controls atom 2)", err, 1e-12);
}

CheckResult check_dj() {
    double worst = 0.0;
    for (Oracle o : {Oracle::F1, Oracle::F2, Oracle::F3, Oracle::F4}) {
        const DJResult r = run_dj(o, AnalyticMode{});
        worst = std::max({worst, 1.0 - r.p_correct, 1.0 - r.state_fidelity});
    }
    return bounded("Deutsch-Jozsa outcomes and post-oracle states (analytic)", worst, 1e-10);
}

CheckResult check_schedule_unitarity() {
    const GateConstraints c;
    double worst = 0.0;
    std::vector<Schedule> all = {controlled_phase_schedule(c), cnot_schedule(c), epr_schedule(c)};
    for (Oracle o : {Oracle::F1, Oracle::F2, Oracle::F3, Oracle::F4}) all.push_back(oracle_schedule(o, c));
    for (const auto& s : all) {
        const Mat4 u = analytic_matrix(s);
        worst = std::max(worst, (u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff());
    }
    return bounded("schedule matrices unitary", worst, 1e-12);
}

CheckResult check_schedule_text() {
    const Schedule s = oracle_schedule(Oracle::F2, GateConstraints{});
    const Schedule back = parse_schedule(format_schedule(s));
    const double err = (analytic_matrix(s) - analytic_matrix(back)).cwiseAbs().maxCoeff();
    return bounded("schedule text round trip", err, 1e-12);
}

CheckResult check_hamiltonian() {
    const Space space = make_space(12);
    const Params params(1.0, 1.3, 2.0);
    double worst = 0.0;
    for (double t : {0.0, 0.4, 2.9}) {
        worst = std::max({worst, h_interaction(params, t, space).hermiticity_deviation(),
                          h_effective(params, t, space).hermiticity_deviation()});
    }
    return bounded("Hamiltonians Hermitian", worst, 1e-14);
}

CheckResult check_thermal() {
    const int k = thermal_component_count(0.5, 1e-6);
    const auto w = thermal_weights(0.5, k);
    double sum = 0.0;
    for (double x : w) sum += x;
    const double tail = std::pow(0.5 / 1.5, k);
    return bounded("thermal weights normalized with tail < 1e-6", std::max(std::abs(sum - 1.0), tail), 1e-6);
}

// Driven two-level atom: the error of RK4 should fall by ~16 when the step halves.
CheckResult check_convergence() {
    const Space space = make_space(1);
    const double omega = 1.0;
    const HarmonicHamiltonian h(omega * embed_atom(space, 1, pauli::x()));
    const double t = 3.0;
    const StateVector psi0 = basis_state(space, Level::g, Level::g, 0);
    Vector4 exact = Vector4::Zero();
    exact(0) = std::cos(omega * t);
    exact(2) = -kI * std::sin(omega * t);
    const StateVector target = product_state(space, exact, 0);
    const auto err = [&](std::size_t steps) {
        return (evolve_steps(h, psi0, 0.0, t, steps).state.amps() - target.amps()).norm();
    };
    const double order = std::log2(err(40) / err(80));
    return {"RK4 convergence order on a driven two-level atom", order > 3.8 && order < 4.2,
            "observed order " + std::to_string(order)};
}

}  // namespace

std::vector<CheckResult> run_verification() {
    const std::vector<std::function<CheckResult()>> checks = {
        check_hamiltonian, check_abc,        check_u_effective,        check_u_interaction,
        check_closed_channels, check_controlled_phase, check_cnot,     check_dj,
        check_schedule_unitarity, check_schedule_text, check_thermal,  check_convergence,
    };
    std::vector<CheckResult> results;
    for (const auto& check : checks) {
        try {
            results.push_back(check());
        } catch (const std::exception& e) {
            results.push_back({"(check threw)", false, e.what()});
        }
    }
    return results;
}

}  // namespace djsim
