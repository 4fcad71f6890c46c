#include "djsim/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "djsim/parallel.hpp"

namespace djsim {

namespace {

// out += scale * (m * in) over the row-major compressed storage.
void accumulate(const SparseOperator::Matrix& m, cplx scale, const Vector& in, Vector& out) {
    const auto* outer = m.outerIndexPtr();
    const auto* inner = m.innerIndexPtr();
    const auto* values = m.valuePtr();
    const cplx* x = in.data();
    cplx* y = out.data();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        cplx acc(0.0, 0.0);
        for (auto k = outer[r]; k < outer[r + 1]; ++k) {
            acc += values[k] * x[inner[k]];
        }
        y[r] += scale * acc;
    }
}

std::string describe_interval(double t0, double t1) {
    std::ostringstream os;
    os << "[" << t0 << ", " << t1 << "]";
    return os.str();
}

}  // namespace

void IntegratorSettings::validate() const {
    if (!(steps_per_radian >= 5.0)) {
        throw std::invalid_argument("steps_per_radian must be >= 5");
    }
    if (!(unitarity_tol > 0.0 && unitarity_tol <= 1e-2)) {
        throw std::invalid_argument("unitarity_tol must lie in (0, 1e-2]");
    }
    if (!(leakage_tol > 0.0 && leakage_tol <= 1e-2)) {
        throw std::invalid_argument("leakage_tol must lie in (0, 1e-2]");
    }
}

HarmonicHamiltonian::HarmonicHamiltonian(SparseOperator constant, std::vector<HarmonicTerm> terms)
    : constant_(std::move(constant)), terms_(std::move(terms)) {
    double bound = constant_.norm_bound();
    double fastest = 0.0;
    for (const auto& term : terms_) {
        if (!(term.op.space() == constant_.space())) {
            throw DimensionMismatch("Hamiltonian terms live in different spaces");
        }
        bound += term.op.norm_bound();
        fastest = std::max(fastest, std::abs(term.frequency));
    }
    frequency_bound_ = std::max(bound, fastest);
}

SparseOperator HarmonicHamiltonian::at(double t) const {
    SparseOperator h = constant_;
    for (const auto& term : terms_) {
        h = h + std::polar(1.0, -term.frequency * t) * term.op;
    }
    return h;
}

void HarmonicHamiltonian::apply(double t, const Vector& in, Vector& out) const {
    out.setZero();
    accumulate(constant_.matrix(), cplx(1.0, 0.0), in, out);
    for (const auto& term : terms_) {
        accumulate(term.op.matrix(), std::polar(1.0, -term.frequency * t), in, out);
    }
}

std::size_t step_count(const HarmonicHamiltonian& h, double duration,
                       const IntegratorSettings& settings) {
    if (duration <= 0.0) {
        return 0;
    }
    const double radians = duration * h.frequency_bound() * settings.steps_per_radian;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(radians)));
}

Evolution evolve_steps(const HarmonicHamiltonian& h, const StateVector& psi0, double t0,
                       double t1, std::size_t steps) {
    if (!(h.space() == psi0.space())) {
        throw DimensionMismatch("initial state and Hamiltonian live in different spaces");
    }
    if (t1 < t0) {
        throw std::invalid_argument("evolve requires t1 >= t0");
    }
    const double norm0 = psi0.norm();
    Vector psi = psi0.amps();
    if (steps > 0 && t1 > t0) {
        const auto d = psi.size();
        Vector k1(d), k2(d), k3(d), k4(d), tmp(d);
        const double dt = (t1 - t0) / static_cast<double>(steps);
        const cplx minus_i_dt(0.0, -dt);
        for (std::size_t s = 0; s < steps; ++s) {
            // Recomputing t from the step index keeps the clock free of accumulated error.
            const double t = t0 + static_cast<double>(s) * dt;
            h.apply(t, psi, k1);
            k1 *= minus_i_dt;
            tmp = psi + 0.5 * k1;
            h.apply(t + 0.5 * dt, tmp, k2);
            k2 *= minus_i_dt;
            tmp = psi + 0.5 * k2;
            h.apply(t + 0.5 * dt, tmp, k3);
            k3 *= minus_i_dt;
            tmp = psi + k3;
            h.apply(t + dt, tmp, k4);
            k4 *= minus_i_dt;
            psi += (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        }
    }
    StateVector out(psi0.space(), std::move(psi));
    const double drift = std::abs(out.norm() - norm0);
    const double leak = top_level_population(out);
    return Evolution{std::move(out), steps, drift, leak};
}

Evolution evolve(const HarmonicHamiltonian& h, const StateVector& psi0, double t0, double t1,
                 const IntegratorSettings& settings) {
    settings.validate();
    if (std::abs(psi0.norm() - 1.0) > 1e-5) {
        throw std::invalid_argument("evolve expects a normalized initial state");
    }
    auto result = evolve_steps(h, psi0, t0, t1, step_count(h, t1 - t0, settings));
    if (result.norm_drift > settings.unitarity_tol) {
        std::ostringstream os;
        os << "norm drift " << result.norm_drift << " exceeds " << settings.unitarity_tol
           << " over " << describe_interval(t0, t1) << " with " << result.steps
           << " steps; increase steps_per_radian";
        throw NumericalFailure(os.str());
    }
    if (result.leakage > settings.leakage_tol) {
        std::ostringstream os;
        os << "population " << result.leakage << " in the top two Fock levels exceeds "
           << settings.leakage_tol << " (F=" << h.space().fock_cutoff()
           << "); increase fock_cutoff";
        throw TruncationFailure(os.str());
    }
    return result;
}

MixtureEvolution evolve_mixture(const HarmonicHamiltonian& h, const MixtureState& mix, double t0,
                                double t1, const IntegratorSettings& settings, int jobs) {
    settings.validate();
    const auto steps = step_count(h, t1 - t0, settings);
    const auto components = mix.components();
    std::vector<Evolution> runs(components.size(), Evolution{StateVector::zero(h.space())});
    parallel_for(components.size(), jobs, [&](std::size_t i) {
        runs[i] = evolve_steps(h, components[i].state, t0, t1, steps);
    });

    MixtureEvolution out{mix, steps, 0.0, 0.0};
    std::vector<MixtureComponent> evolved;
    evolved.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        out.norm_drift = std::max(out.norm_drift, runs[i].norm_drift);
        out.leakage += components[i].weight * runs[i].leakage;
        evolved.push_back({components[i].weight, std::move(runs[i].state)});
    }
    out.state = MixtureState(std::move(evolved));
    if (out.norm_drift > settings.unitarity_tol) {
        std::ostringstream os;
        os << "mixture component norm drift " << out.norm_drift << " exceeds "
           << settings.unitarity_tol << "; increase steps_per_radian";
        throw NumericalFailure(os.str());
    }
    if (out.leakage > settings.leakage_tol) {
        std::ostringstream os;
        os << "ensemble population " << out.leakage << " in the top two Fock levels exceeds "
           << settings.leakage_tol << " (F=" << h.space().fock_cutoff()
           << "); increase fock_cutoff";
        throw TruncationFailure(os.str());
    }
    return out;
}

}  // namespace djsim
