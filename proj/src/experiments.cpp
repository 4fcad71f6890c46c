#include "djsim/experiments.hpp"

#include <cmath>
#include <sstream>

#include "djsim/parallel.hpp"

namespace djsim {

namespace {

std::string describe_failure(const std::string& experiment, const std::string& param_name,
                             double param_value, const std::string& cause) {
    std::ostringstream os;
    os << experiment << " failed at " << param_name << "=" << param_value << ": " << cause;
    return os.str();
}

// Runs fn for one sweep point, attaching the point to numerical failures.
template <typename Fn>
FidelityRecord run_point(const std::string& experiment, const std::string& param_name,
                         double param_value, Fn&& fn) {
    try {
        FidelityRecord record = fn();
        record.experiment = experiment;
        record.param_name = param_name;
        record.param_value = param_value;
        return record;
    } catch (const NumericalFailure& e) {
        throw SweepPointFailure(experiment, param_name, param_value, e.what());
    } catch (const TruncationFailure& e) {
        throw SweepPointFailure(experiment, param_name, param_value, e.what());
    }
}

template <typename Value, typename Fn>
Report sweep(const std::string& experiment, const std::string& param_name,
             const std::vector<Value>& values, int jobs, Fn&& point) {
    Report report{experiment, std::vector<FidelityRecord>(values.size())};
    parallel_for(values.size(), jobs, [&](std::size_t i) {
        const double value = static_cast<double>(values[i]);
        report.records[i] = run_point(experiment, param_name, value, [&] { return point(values[i]); });
    });
    return report;
}

RecordMeta meta_from(const Evolution& run, int fock_cutoff) {
    return RecordMeta{fock_cutoff, run.steps, run.norm_drift, run.leakage};
}

RecordMeta meta_from(const RunStats& stats, int fock_cutoff) {
    return RecordMeta{fock_cutoff, stats.steps, stats.norm_drift, stats.leakage};
}

// Two-atom EPR state reached from the input basis state: Eq. 13 from |gg>, Eq. 12 from |eg>.
Vector4 epr_target(AtomicInput input) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx minus_i(0.0, -s);
    if (input == AtomicInput::gg) {
        return Vector4(s, 0.0, 0.0, minus_i);
    }
    return Vector4(0.0, minus_i, s, 0.0);
}

// One-period window at (delta, Omega) from input (x) |0>, scored against the effective
// prediction at the nominal drive.
FidelityRecord stark_point(const Params& nominal, double drive_omega, int fock_cutoff,
                           AtomicInput input, const IntegratorSettings& settings) {
    const Space space = make_space(fock_cutoff);
    const double t = 2.0 * kPi / std::abs(nominal.delta());
    const Vector4 atoms = atomic_basis(input);
    const Vector4 predicted = u_interaction_analytic(nominal, t) * atoms;
    const auto run = evolve(interaction_hamiltonian(nominal.with_omega(drive_omega), space),
                            product_state(space, atoms, 0), 0.0, t, settings);
    FidelityRecord record;
    record.fidelity = fidelity_pure(product_state(space, predicted, 0), run.state);
    record.meta = meta_from(run, fock_cutoff);
    return record;
}

FidelityRecord epr_point(const EprConfig& config, int fock_n, double pulse_error,
                         const SweepOptions& options) {
    GateConstraints constraints = constraints_for(config.delta_over_g, config.omega_over_g);
    const Schedule schedule = epr_schedule(constraints);
    PhysicalMode mode;
    mode.cavity_init = FockInit{fock_n};
    mode.fock_cutoff = config.fock_cutoff;
    mode.settings = options.settings;
    mode.pulse_error = pulse_error;

    const Space space = make_space(config.fock_cutoff);
    const StateVector input = product_state(space, atomic_basis(config.input), fock_n);
    RunStats stats;
    const StateVector out = execute(schedule, input, mode, &stats);
    FidelityRecord record;
    record.fidelity = fidelity_pure(product_state(space, epr_target(config.input), fock_n), out);
    record.meta = meta_from(stats, config.fock_cutoff);
    return record;
}

}  // namespace

SweepPointFailure::SweepPointFailure(const std::string& experiment_, const std::string& param_name_,
                                     double param_value_, const std::string& cause)
    : std::runtime_error(describe_failure(experiment_, param_name_, param_value_, cause)),
      experiment(experiment_),
      param_name(param_name_),
      param_value(param_value_) {}

AtomicInput parse_atomic_input(const std::string& name) {
    if (name == "gg") return AtomicInput::gg;
    if (name == "eg") return AtomicInput::eg;
    throw std::invalid_argument("atomic input must be gg or eg, got '" + name + "'");
}

std::string to_string(AtomicInput input) { return input == AtomicInput::gg ? "gg" : "eg"; }

Vector4 atomic_basis(AtomicInput input) {
    Vector4 v = Vector4::Zero();
    v(input == AtomicInput::gg ? 0 : 2) = 1.0;
    return v;
}

GateConstraints constraints_for(double delta_over_g, double omega_over_g) {
    GateConstraints c;
    c.delta = delta_over_g;
    c.omega_over_delta_min = omega_over_g / delta_over_g;
    return c;
}

Report stark_sweep(const StarkConfig& config, const SweepOptions& options) {
    for (double d : config.delta_over_g) {
        if (!(d > 0.0)) {
            throw std::invalid_argument("stark sweep needs delta > 0");
        }
    }
    return sweep("stark", "delta_over_g", config.delta_over_g, options.jobs, [&](double delta) {
        const Params params(1.0, delta, config.omega_ratio * delta);
        return stark_point(params, params.omega(), config.fock_cutoff, config.input, options.settings);
    });
}

Report pulse_error_sweep(const PulseConfig& config, const SweepOptions& options) {
    for (double e : config.eps) {
        if (!(e >= 0.0 && e <= 0.2)) {
            throw std::invalid_argument("pulse errors must lie in [0, 0.2]");
        }
    }
    return sweep("pulse", "eps", config.eps, options.jobs, [&](double eps) {
        return epr_point(config.epr, config.fock_n, eps, options);
    });
}

Report fock_sweep(const FockConfig& config, const SweepOptions& options) {
    for (int n : config.fock_n) {
        if (n < 0 || config.epr.fock_cutoff < n + 10) {
            throw std::invalid_argument("fock sweep needs 0 <= n and fock_cutoff >= n + 10");
        }
    }
    return sweep("fock", "n", config.fock_n, options.jobs, [&](int n) {
        return epr_point(config.epr, n, 0.0, options);
    });
}

RabiResult rabi_fluctuation(const RabiConfig& config, const SweepOptions& options) {
    if (!(config.ratio >= 0.0 && config.ratio <= 0.1)) {
        throw std::invalid_argument("Rabi fluctuation ratio must lie in [0, 0.1]");
    }
    const Params nominal(1.0, config.delta_over_g, config.omega_ratio * config.delta_over_g);
    const std::vector<double> shifts = {0.0, config.ratio};
    RabiResult result;
    result.report = sweep("rabi", "omega_shift", shifts, options.jobs, [&](double shift) {
        return stark_point(nominal, nominal.omega() * (1.0 + shift), config.fock_cutoff,
                           config.input, options.settings);
    });
    result.f_nominal = result.report.records[0].fidelity;
    result.f_perturbed = result.report.records[1].fidelity;
    result.drop = result.f_nominal - result.f_perturbed;
    return result;
}

Report thermal_dj(const ThermalConfig& config, const SweepOptions& options) {
    if (!(config.nbar >= 0.0)) {
        throw std::invalid_argument("nbar must be >= 0");
    }
    const int components = thermal_component_count(config.nbar, 1e-6);
    const int fock_cutoff = config.fock_cutoff > 0 ? config.fock_cutoff : components - 1 + 10;
    const GateConstraints constraints = constraints_for(config.delta_over_g, config.omega_over_g);

    Report report{"thermal", {}};
    for (std::size_t i = 0; i < config.oracles.size(); ++i) {
        const Oracle oracle = config.oracles[i];
        report.records.push_back(run_point("thermal", "oracle", static_cast<int>(oracle) + 1, [&] {
            DJResult dj;
            if (config.analytic) {
                const Space space = make_space(fock_cutoff);
                const MixtureState initial =
                    thermal_mixture(space, initial_atomic_state(), config.nbar, components);
                dj = run_dj_on(oracle, initial, AnalyticMode{}, constraints);
            } else {
                PhysicalMode mode;
                mode.cavity_init = ThermalInit{config.nbar};
                mode.fock_cutoff = fock_cutoff;
                mode.settings = options.settings;
                mode.jobs = options.jobs;
                dj = run_dj(oracle, mode, constraints);
            }
            FidelityRecord record;
            record.fidelity = dj.p_correct;
            record.meta = meta_from(dj.stats, fock_cutoff);
            return record;
        }));
    }
    return report;
}

}  // namespace djsim
