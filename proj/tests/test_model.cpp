#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "djsim/model.hpp"

using namespace djsim;

namespace {

const cplx kI(0.0, 1.0);

double close(cplx a, cplx b) { return std::abs(a - b); }

// Independent RK4 integration of dB = g e^{i d s}, dC = g e^{-i d s}, dA = i C' B.
void abc_ode(double g, double d, double t, cplx& a, cplx& b, cplx& c) {
    const int steps = 40000;
    const double h = t / steps;
    a = b = c = 0.0;
    auto f = [&](double s, cplx bb) {
        const cplx db = g * std::exp(kI * d * s), dc = g * std::exp(-kI * d * s);
        return std::array<cplx, 3>{kI * dc * bb, db, dc};
    };
    for (int k = 0; k < steps; ++k) {
        const double s = k * h;
        const auto k1 = f(s, b);
        const auto k2 = f(s + h / 2, b + h / 2 * k1[1]);
        const auto k3 = f(s + h / 2, b + h / 2 * k2[1]);
        const auto k4 = f(s + h, b + h * k3[1]);
        a += h / 6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        b += h / 6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        c += h / 6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
    }
}

Vector4 random_atoms(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = cplx(n(rng), n(rng));
    return v.normalized();
}

Mat4 diag_pm(cplx a, cplx b, cplx c, cplx d) {
    const Mat4 v = plus_minus_basis();
    return v * Vector4(a, b, c, d).asDiagonal() * v.adjoint();
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Params(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(1.0, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(1.0, NAN, 1.0), std::invalid_argument);
    CHECK(Params(1.0, 20.0, 400.0).lambda() == doctest::Approx(0.025));
    CHECK_THROWS_AS(make_timing(Params(1.0, 2.0, 1.0), 0), std::invalid_argument);
    const GateTiming t = make_timing(Params(1.0, 20.0, 400.0), 100);
    CHECK(t.t == doctest::Approx(10.0 * kPi));
    CHECK(t.lambda_t_over_pi == doctest::Approx(0.25));
    CHECK(t.omega_t_over_pi == doctest::Approx(4000.0));
}

TEST_CASE("abc coefficients at g = 1, delta = 1, t = pi") {
    const auto abc = abc_coefficients(1.0, 1.0, kPi);
    CHECK(close(abc.A, cplx(kPi, 2.0)) < 1e-12);
    CHECK(close(abc.B, cplx(0.0, 2.0)) < 1e-12);
    CHECK(close(abc.C, cplx(0.0, -2.0)) < 1e-12);
    cplx a, b, c;
    abc_ode(1.0, 1.0, kPi, a, b, c);
    CHECK(close(abc.A, a) < 1e-9);
    CHECK(close(abc.B, b) < 1e-9);
    CHECK(close(abc.C, c) < 1e-9);
}

TEST_CASE("abc coefficients against ODE integration") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> gd(0.2, 2.0), dd(-3.0, 3.0), td(0.05, 7.0);
    for (int i = 0; i < 20; ++i) {
        const double g = gd(rng), t = td(rng);
        double d = dd(rng);
        if (std::abs(d) < 0.3) d += 0.5;
        const auto abc = abc_coefficients(g, d, t);
        cplx a, b, c;
        abc_ode(g, d, t, a, b, c);
        CHECK(close(abc.A, a) < 1e-8);
        CHECK(close(abc.B, b) < 1e-8);
        CHECK(close(abc.C, c) < 1e-8);
    }
}

TEST_CASE("abc over full detuning periods") {
    const auto zero = abc_coefficients(1.3, 0.7, 0.0);
    CHECK(std::abs(zero.A) + std::abs(zero.B) + std::abs(zero.C) < 1e-15);
    const double g = 1.0, d = 2.0, t = 2.0 * kPi * 3 / d;
    const auto abc = abc_coefficients(g, d, t);
    CHECK(std::abs(abc.B) < 1e-14);
    CHECK(std::abs(abc.C) < 1e-14);
    // A = g^2 t / delta = 2 lambda t
    CHECK(close(abc.A, g * g * t / d) < 1e-13);
    CHECK_THROWS_AS(abc_coefficients(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("Hamiltonians are Hermitian and split as H_0 + H_e") {
    const Space s(7);
    const Params p(1.0, 1.4, 2.5);
    for (double t : {0.0, 0.3, 1.7}) {
        CHECK(h_interaction(p, t, s).hermiticity_deviation() < 1e-15);
        CHECK(h_effective(p, t, s).hermiticity_deviation() < 1e-15);
        const SparseOperator full_eff = effective_hamiltonian(p, s).at(t);
        const SparseOperator h0 = (2.0 * p.omega()) * collective_sigma_x(s);
        CHECK((full_eff - h0 - h_effective(p, t, s)).dense().cwiseAbs().maxCoeff() < 1e-14);
    }
    // drive term equals 2 Omega sigma_x
    const SparseOperator drive = interaction_hamiltonian(p, s).constant();
    CHECK((drive - (2.0 * p.omega()) * collective_sigma_x(s)).dense().cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("U_e matches propagated H_e") {
    const Space s(30);
    const Params p(1.0, 1.3, 0.0);
    const double t = 3.7;
    const SparseOperator u = u_effective(p, t, s);
    // unitary on the low-photon subspace
    std::mt19937_64 rng(9);
    IntegratorSettings fine;
    fine.steps_per_radian = 300.0;
    const HarmonicHamiltonian he = effective_coupling_hamiltonian(p, s);
    for (int n : {0, 1, 4}) {
        const StateVector psi = product_state(s, random_atoms(rng), n);
        CHECK(u.apply(psi).norm() == doctest::Approx(1.0).epsilon(1e-12));
        const auto run = evolve_steps(he, psi, 0.0, t, step_count(he, t, fine));
        CHECK(fidelity_pure(u.apply(psi), run.state) >= 1.0 - 1e-6);
    }
}

TEST_CASE("U_e over full periods leaves the cavity alone") {
    const Space s(10);
    const Params p(1.0, 2.0, 0.0);
    const double t = 2.0 * kPi * 2 / p.delta();
    std::mt19937_64 rng(4);
    const Vector4 atoms = random_atoms(rng);
    const StateVector out = u_effective(p, t, s).apply(product_state(s, atoms, 3));
    // exp(-i A sx^2) with A = 2 lambda t
    const cplx ph = std::exp(-kI * 2.0 * p.lambda() * t);
    const Vector4 expected = diag_pm(ph, 1.0, 1.0, ph) * atoms;
    CHECK(fidelity_pure(out, product_state(s, expected, 3)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("U_I eigenphases in the +- basis") {
    const Params p(1.0, 2.0, 0.9);
    const double t = 2.0 * kPi / p.delta();
    const Mat4 u = u_interaction_analytic(p, t);
    const double w = p.omega(), l = p.lambda();
    const Mat4 expected = diag_pm(std::exp(-2.0 * kI * (w + l) * t), 1.0, 1.0,
                                  std::exp(2.0 * kI * (w - l) * t));
    CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(u_interaction_analytic(p, t * 1.3), std::invalid_argument);
    CHECK_THROWS_AS(u_interaction_analytic(p, 0.0), std::invalid_argument);
}

TEST_CASE("U_I matches propagated H_0 + H_e") {
    const Space s(30);
    const Params p(1.0, 2.5, 1.9);
    const double t = 2.0 * 2.0 * kPi / p.delta();
    const Mat4 u = u_interaction_analytic(p, t);
    const HarmonicHamiltonian h = effective_hamiltonian(p, s);
    IntegratorSettings fine;
    fine.steps_per_radian = 300.0;
    std::mt19937_64 rng(12);
    for (int n : {0, 2, 5}) {
        const Vector4 atoms = random_atoms(rng);
        const auto run = evolve_steps(h, product_state(s, atoms, n), 0.0, t, step_count(h, t, fine));
        CHECK(fidelity_pure(product_state(s, u * atoms, n), run.state) >= 1.0 - 1e-8);
    }
}

TEST_CASE("closed-form evolution of |gg> and |eg>") {
    // U_I|gg> = 1/2 [(cos 2 W t e^{-i2Lt} + 1)|gg> - i sin 2 W t e^{-i2Lt}(|ge> + |eg>)
    //               + (cos 2 W t e^{-i2Lt} - 1)|ee>]
    const Params p(1.0, 2.0, 1.23);
    const double t = 2.0 * kPi * 5 / p.delta();
    const Mat4 u = u_interaction_analytic(p, t);
    const cplx e = std::exp(-2.0 * kI * p.lambda() * t);
    const double c = std::cos(2.0 * p.omega() * t), sn = std::sin(2.0 * p.omega() * t);
    const Vector4 gg_out(0.5 * (c * e + 1.0), -0.5 * kI * sn * e, -0.5 * kI * sn * e, 0.5 * (c * e - 1.0));
    const Vector4 eg_out(-0.5 * kI * sn * e, 0.5 * (c * e - 1.0), 0.5 * (c * e + 1.0), -0.5 * kI * sn * e);
    CHECK(std::norm(gg_out.dot(u.col(0))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::norm(eg_out.dot(u.col(2))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phase products reduce modulo 2 exactly") {
    const Mat4 a = collective_phase_unitary(4000.25, 0.25);
    const Mat4 b = collective_phase_unitary(0.25, 0.25);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("stated controlled-phase constants give the identity") {
    // lambda t = pi/2, Omega t = (2k + 1/2) pi: both nontrivial phases are multiples of 2 pi.
    const Mat4 u = collective_phase_unitary(2.5, 0.5);
    CHECK(distance_up_to_phase(u, Mat4::Identity()) < 1e-14);
}

TEST_CASE("controlled-phase solver") {
    const GateSolution sol = solve_gate_params(GateTarget::ControlledPhase, GateConstraints{});
    CHECK(sol.timing.periods == 1);
    CHECK(sol.params.delta() == doctest::Approx(2.0));
    CHECK(sol.timing.lambda_t_over_pi == doctest::Approx(0.25));
    CHECK(std::fmod(sol.timing.omega_t_over_pi, 1.0) == doctest::Approx(0.25));
    CHECK(sol.params.omega() >= 20.0 * sol.params.delta());
    const Mat4 v = plus_minus_basis();
    const Mat4 in_pm = v.adjoint() * u_interaction_analytic(sol.timing) * v;
    Mat4 expected = Mat4::Identity();
    expected(0, 0) = -1.0;
    CHECK(distance_up_to_phase(in_pm, expected) < 1e-12);
}

TEST_CASE("solver at delta = 20 g") {
    GateConstraints c;
    c.delta = 20.0;
    const GateSolution cp = solve_gate_params(GateTarget::ControlledPhase, c);
    CHECK(cp.timing.periods == 100);
    CHECK(cp.timing.t == doctest::Approx(10.0 * kPi));
    CHECK(cp.timing.omega_t_over_pi == 4000.25);
    CHECK(cp.params.omega() == doctest::Approx(400.025));

    const GateSolution epr = solve_gate_params(GateTarget::EprQuarter, c);
    CHECK(epr.timing.omega_t_over_pi == 4000.0);
    CHECK(epr.params.omega() == doctest::Approx(400.0));
    const Vector4 out = u_interaction_analytic(epr.timing).col(0);
    const Vector4 bell(1.0 / std::sqrt(2.0), 0.0, 0.0, -kI / std::sqrt(2.0));
    CHECK(std::norm(bell.dot(out)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("infeasible constraints") {
    GateConstraints c;
    c.delta = 3.0;  // delta^2 / 4 not an integer
    CHECK_THROWS_AS(solve_gate_params(GateTarget::ControlledPhase, c), InfeasibleConstraints);
    GateConstraints neg;
    neg.omega_over_delta_min = -1.0;
    CHECK_THROWS_AS(solve_gate_params(GateTarget::EprQuarter, neg), InfeasibleConstraints);
    GateConstraints few;
    few.delta = 2.0;
    few.min_periods = 4;
    CHECK_THROWS_AS(solve_gate_params(GateTarget::EprQuarter, few), InfeasibleConstraints);
}
