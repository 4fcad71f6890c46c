#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "djsim/djrunner.hpp"

using namespace djsim;

namespace {

const Oracle kAll[] = {Oracle::F1, Oracle::F2, Oracle::F3, Oracle::F4};

// (1/2)(a|0> + b|1>)(|0> - |1>) in (gg, ge, eg, ee) order
Vector4 product(double a, double b) { return 0.5 * Vector4(a, -a, b, -b); }

}  // namespace

TEST_CASE("initial and ideal states") {
    CHECK((initial_atomic_state() - product(1, 1)).norm() < 1e-15);
    const StateVector psi = prepare_initial(AnalyticMode{});
    CHECK(psi.space().fock_cutoff() == 1);
    CHECK(std::norm(psi.amps().head<4>().dot(product(1, 1))) == doctest::Approx(1.0));

    // F2: -(|0> + |1>)(|0> - |1>)/2, F3: (|0> - |1>)(|0> - |1>)/2, F4: (-|0> + |1>)(|0> - |1>)/2
    CHECK(std::norm(ideal_post_oracle_state(Oracle::F1).dot(product(1, 1))) == doctest::Approx(1.0));
    CHECK(std::norm(ideal_post_oracle_state(Oracle::F2).dot(product(-1, -1))) == doctest::Approx(1.0));
    CHECK(std::norm(ideal_post_oracle_state(Oracle::F3).dot(product(1, -1))) == doctest::Approx(1.0));
    CHECK(std::norm(ideal_post_oracle_state(Oracle::F4).dot(product(-1, 1))) == doctest::Approx(1.0));
}

TEST_CASE("analytic Deutsch-Jozsa") {
    for (Oracle o : kAll) {
        const DJResult r = run_dj(o, AnalyticMode{});
        const bool constant = oracle_is_constant(o);
        CHECK(r.classification == (constant ? Classification::Constant : Classification::Balanced));
        CHECK(std::abs((constant ? r.p0 : r.p1) - 1.0) < 1e-10);
        CHECK(r.p_correct == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.state_fidelity == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.p0 + r.p1 == doctest::Approx(1.0));
    }
}

TEST_CASE("analytic result is cavity independent") {
    const Space space(16);
    const MixtureState thermal = thermal_mixture(space, initial_atomic_state(), 0.5, 13);
    const MixtureState fock = MixtureState::pure(product_state(space, initial_atomic_state(), 7));
    GateConstraints c;
    c.delta = 20.0;
    for (Oracle o : kAll) {
        CHECK(std::abs(run_dj_on(o, thermal, AnalyticMode{}, c).p_correct - 1.0) < 1e-12);
        CHECK(std::abs(run_dj_on(o, fock, AnalyticMode{}, c).p_correct - 1.0) < 1e-12);
    }
}

TEST_CASE("initial ensembles") {
    PhysicalMode mode;
    mode.cavity_init = ThermalInit{0.5};
    mode.fock_cutoff = 22;
    CHECK_THROWS_AS(prepare_initial(mode), std::invalid_argument);
    const MixtureState mix = prepare_initial_ensemble(mode);
    CHECK(mix.size() == 13);
    CHECK(atomic_fidelity(mix, initial_atomic_state()) == doctest::Approx(1.0));

    mode.cavity_init = FockInit{2};
    CHECK(prepare_initial_ensemble(mode).size() == 1);
    CHECK(prepare_initial(mode).amplitude(Level::g, Level::e, 2).real() == doctest::Approx(-0.5));
}

TEST_CASE("physical Deutsch-Jozsa in the vacuum") {
    PhysicalMode mode;
    mode.fock_cutoff = 10;
    for (Oracle o : kAll) {
        const DJResult r = run_dj(o, mode);
        CHECK(r.p_correct >= 0.9);
        CHECK(r.state_fidelity >= 0.9);
        CHECK(r.classification ==
              (oracle_is_constant(o) ? Classification::Constant : Classification::Balanced));
        CHECK(r.stats.norm_drift <= 1e-6);
        CHECK(r.stats.leakage <= 1e-6);
    }
    CHECK(run_dj(Oracle::F1, mode).p_correct == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-temperature thermal run equals the vacuum run") {
    PhysicalMode vacuum;
    vacuum.fock_cutoff = 10;
    PhysicalMode cold = vacuum;
    cold.cavity_init = ThermalInit{0.0};
    CHECK(run_dj(Oracle::F3, cold).p_correct == run_dj(Oracle::F3, vacuum).p_correct);
}
