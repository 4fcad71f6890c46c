#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "djsim/gates.hpp"

using namespace djsim;

namespace {

const cplx kI(0.0, 1.0);
const double kS = 1.0 / std::sqrt(2.0);

Vector4 ket(int index) {
    Vector4 v = Vector4::Zero();
    v(index) = 1.0;
    return v;
}

// Overlap magnitude squared: equality up to a global phase.
double overlap(const Vector4& a, const Vector4& b) { return std::norm(a.dot(b)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Mat4 cnot_truth() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 1) = 1.0;  // |g>_1 untouched
    m(3, 2) = m(2, 3) = 1.0;  // |e>_1 flips atom 2
    return m;
}

// Reverses a schedule and inverts each step. The controlled-phase window is its own inverse
// up to a global phase, so the result undoes the schedule up to that phase.
Schedule inverse_of(const Schedule& s) {
    Schedule inv;
    for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it) {
        if (const auto* l = std::get_if<LocalStep>(&*it); l && l->gate.kind == LocalGate::Kind::Ramsey) {
            inv.steps.push_back(LocalStep{l->atom, LocalGate::ramsey(l->gate.phase + kPi)});
        } else {
            inv.steps.push_back(*it);
        }
    }
    return inv;
}

Schedule concat(Schedule a, const Schedule& b) {
    a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
    return a;
}

}  // namespace

TEST_CASE("local gates") {
    const Mat2 h = local_matrix(LocalGate::hadamard());
    CHECK((h * h - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(h(0, 0).real() == doctest::Approx(kS));
    CHECK(h(1, 1).real() == doctest::Approx(-kS));

    // Ramsey(0): |g> -> |e>, |e> -> -|g>
    const Mat2 r0 = local_matrix(LocalGate::ramsey(0.0));
    CHECK(std::abs(r0(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(r0(0, 1) + 1.0) < 1e-15);
    // Ramsey(pi): |g> -> -|e>, |e> -> |g>
    const Mat2 rp = local_matrix(LocalGate::ramsey(kPi));
    CHECK(std::abs(rp(1, 0) + 1.0) < 1e-15);
    CHECK(std::abs(rp(0, 1) - 1.0) < 1e-15);
    CHECK((rp * r0 - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);

    CHECK((local_matrix(LocalGate::pauli_z()) - pauli::z()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((local_matrix(LocalGate::pauli_x()) - pauli::x()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("controlled-phase schedule truth table") {
    const Mat4 u = analytic_matrix(controlled_phase_schedule(GateConstraints{}));
    const Mat4 v = plus_minus_basis();
    Mat4 expected = Mat4::Identity();
    expected(0, 0) = -1.0;
    CHECK(distance_up_to_phase(v.adjoint() * u * v, expected) < 1e-12);
}

TEST_CASE("CNOT truth table on the four basis states") {
    const Mat4 u = analytic_matrix(cnot_schedule(GateConstraints{}));
    CHECK(distance_up_to_phase(u, cnot_truth()) < 1e-12);
    // gg -> gg, ge -> ge, eg -> ee, ee -> eg with one common phase
    const cplx phase = u(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK(std::abs(u(1, 1) - phase) < 1e-12);
    CHECK(std::abs(u(3, 2) - phase) < 1e-12);
    CHECK(std::abs(u(2, 3) - phase) < 1e-12);

    GateConstraints wide;
    wide.delta = 20.0;
    CHECK(distance_up_to_phase(analytic_matrix(cnot_schedule(wide)), cnot_truth()) < 1e-12);
}

TEST_CASE("oracle matrices") {
    const GateConstraints c;
    CHECK(distance_up_to_phase(analytic_matrix(oracle_schedule(Oracle::F1, c)), Mat4::Identity()) < 1e-12);
    Mat4 flip2 = Mat4::Zero();
    flip2(1, 0) = flip2(0, 1) = flip2(3, 2) = flip2(2, 3) = 1.0;
    CHECK(distance_up_to_phase(analytic_matrix(oracle_schedule(Oracle::F2, c)), flip2) < 1e-12);
    CHECK(distance_up_to_phase(analytic_matrix(oracle_schedule(Oracle::F3, c)), cnot_truth()) < 1e-12);
    Mat4 anti = Mat4::Zero();
    anti(1, 0) = anti(0, 1) = anti(2, 2) = anti(3, 3) = 1.0;
    CHECK(distance_up_to_phase(analytic_matrix(oracle_schedule(Oracle::F4, c)), anti) < 1e-12);
}

TEST_CASE("oracle metadata") {
    CHECK(oracle_values(Oracle::F1) == std::pair{0, 0});
    CHECK(oracle_values(Oracle::F2) == std::pair{1, 1});
    CHECK(oracle_values(Oracle::F3) == std::pair{0, 1});
    CHECK(oracle_values(Oracle::F4) == std::pair{1, 0});
    CHECK(oracle_is_constant(Oracle::F1));
    CHECK(oracle_is_constant(Oracle::F2));
    CHECK_FALSE(oracle_is_constant(Oracle::F3));
    CHECK_FALSE(oracle_is_constant(Oracle::F4));
    CHECK(parse_oracle("F3") == Oracle::F3);
    CHECK(to_string(Oracle::F4) == "F4");
    CHECK_THROWS_AS(parse_oracle("F5"), std::invalid_argument);
}

TEST_CASE("EPR schedule from |gg>") {
    GateConstraints c;
    c.delta = 20.0;
    const Schedule s = epr_schedule(c);
    REQUIRE(s.steps.size() == 1);
    const auto& step = std::get<InteractionStep>(s.steps[0]);
    CHECK(step.timing.periods == 100);
    CHECK(step.params.omega() == doctest::Approx(400.0));
    const Vector4 bell(kS, 0.0, 0.0, -kI * kS);
    CHECK(overlap(bell, analytic_matrix(s) * ket(0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schedule matrices are unitary") {
    const GateConstraints c;
    for (const Schedule& s : {controlled_phase_schedule(c), cnot_schedule(c), epr_schedule(c),
                              oracle_schedule(Oracle::F2, c), oracle_schedule(Oracle::F4, c)}) {
        const Mat4 u = analytic_matrix(s);
        CHECK((u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("composition is right to left") {
    const Schedule s{{LocalStep{1, LocalGate::pauli_x()}, LocalStep{1, LocalGate::hadamard()}}};
    const Mat4 expected = step_matrix(s.steps[1]) * step_matrix(s.steps[0]);
    CHECK((analytic_matrix(s) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("analytic execution") {
    const Space space(6);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n(0.0, 1.0);
    Vector v(space.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(n(rng), n(rng));
    const StateVector psi(space, v.normalized());

    const StateVector same = execute(Schedule{}, psi, AnalyticMode{});
    CHECK((same.amps() - psi.amps()).norm() == 0.0);

    const Schedule s = oracle_schedule(Oracle::F2, GateConstraints{});
    const StateVector out = execute(s, psi, AnalyticMode{});
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-9));
    const StateVector back = execute(inverse_of(s), out, AnalyticMode{});
    CHECK(fidelity_pure(back, psi) == doctest::Approx(1.0).epsilon(1e-8));
    const StateVector round = execute(concat(s, inverse_of(s)), psi, AnalyticMode{});
    CHECK(fidelity_pure(round, psi) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("physical execution follows the analytic gate") {
    // Controlled phase at delta = 2, Omega = 40.25, vacuum, against (analytic atoms) (x) |0>.
    PhysicalMode mode;
    mode.fock_cutoff = 12;
    const Space space(12);
    const Schedule s = cnot_schedule(GateConstraints{});
    const Mat4 u = analytic_matrix(s);
    for (int k = 0; k < 4; ++k) {
        RunStats stats;
        const StateVector out = execute(s, product_state(space, ket(k), 0), mode, &stats);
        CHECK(fidelity_pure(out, product_state(space, u * ket(k), 0)) >= 0.99);
        CHECK(stats.norm_drift <= 1e-6);
        CHECK(stats.leakage <= 1e-6);
        CHECK(stats.steps > 0);
    }
}

TEST_CASE("pulse error stretches every window") {
    const Space space(11);
    const Schedule s = epr_schedule(GateConstraints{});
    PhysicalMode exact;
    exact.fock_cutoff = 11;
    PhysicalMode stretched = exact;
    stretched.pulse_error = 0.1;
    RunStats a, b;
    const StateVector in = product_state(space, ket(0), 1);
    const StateVector out_a = execute(s, in, exact, &a);
    const StateVector out_b = execute(s, in, stretched, &b);
    CHECK(b.steps > a.steps);
    CHECK(fidelity_pure(out_a, out_b) < 1.0 - 1e-6);
}

TEST_CASE("physical mode preconditions") {
    PhysicalMode mode;
    mode.cavity_init = FockInit{5};
    mode.fock_cutoff = 14;
    CHECK_THROWS_AS(mode.validate(), std::invalid_argument);
    mode.fock_cutoff = 15;
    CHECK_NOTHROW(mode.validate());
    mode.pulse_error = 0.3;
    CHECK_THROWS_AS(mode.validate(), std::invalid_argument);
    mode.pulse_error = 0.0;
    mode.cavity_init = ThermalInit{0.5};
    mode.fock_cutoff = 21;  // thermal components 0..12 need F >= 22
    CHECK_THROWS_AS(mode.validate(), std::invalid_argument);

    PhysicalMode vac;
    vac.fock_cutoff = 12;
    CHECK_THROWS_AS(execute(Schedule{}, product_state(Space(13), ket(0), 0), vac), DimensionMismatch);
}

TEST_CASE("schedule text round trip") {
    GateConstraints c;
    c.delta = 20.0;
    for (Oracle o : {Oracle::F1, Oracle::F2, Oracle::F3, Oracle::F4}) {
        const Schedule s = oracle_schedule(o, c);
        const std::string text = format_schedule(s);
        const Schedule back = parse_schedule(text);
        CHECK(format_schedule(back) == text);
        CHECK((analytic_matrix(back) - analytic_matrix(s)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("golden schedule files") {
    const std::string dir = DJSIM_GOLDEN_DIR;
    CHECK(format_schedule(cnot_schedule(GateConstraints{})) == read_file(dir + "/cnot.sched"));
    GateConstraints c;
    c.delta = 20.0;
    CHECK(format_schedule(oracle_schedule(Oracle::F4, c)) == read_file(dir + "/oracle_f4_delta20.sched"));
    std::ifstream in(dir + "/cnot.sched");
    CHECK(distance_up_to_phase(analytic_matrix(parse_schedule(in)), cnot_truth()) < 1e-12);
}

TEST_CASE("schedule parse errors") {
    CHECK_THROWS_AS(parse_schedule("LOCAL 3 H\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule("LOCAL 1 Y\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule("LOCAL 1 RAMSEY\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule("INTERACT 2 40 1.0 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule("IDLE extra\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule("SWAP\n"), std::invalid_argument);
    const Schedule ok = parse_schedule("# comment\n\nIDLE\nLOCAL 2 X\n");
    CHECK(ok.steps.size() == 2);
}
