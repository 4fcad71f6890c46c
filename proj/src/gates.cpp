#include "djsim/gates.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace djsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Mat4 kron_atom(int atom, const Mat2& m) {
    const Mat2 id = Mat2::Identity();
    const Mat2& first = atom == 1 ? m : id;
    const Mat2& second = atom == 2 ? m : id;
    Mat4 k;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            k(r, c) = first(r / 2, c / 2) * second(r % 2, c % 2);
        }
    }
    return k;
}

void append(Schedule& into, const Schedule& from) {
    into.steps.insert(into.steps.end(), from.steps.begin(), from.steps.end());
}

LocalStep on_atom1(LocalGate gate) { return LocalStep{1, gate}; }

InteractionStep interaction_from(const GateSolution& s) { return InteractionStep{s.params, s.timing}; }

int max_fock_number(const CavityInit& init) {
    return std::visit(overloaded{
                          [](const FockInit& f) { return f.n; },
                          [](const ThermalInit& t) {
                              return thermal_component_count(t.nbar, 1e-6) - 1;
                          },
                      },
                      init);
}

}  // namespace

Mat2 local_matrix(const LocalGate& gate) {
    Mat2 m;
    switch (gate.kind) {
        case LocalGate::Kind::Hadamard:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case LocalGate::Kind::PauliX:
            return pauli::x();
        case LocalGate::Kind::PauliZ:
            return pauli::z();
        case LocalGate::Kind::Ramsey:
            m << 0, -std::polar(1.0, -gate.phase), std::polar(1.0, gate.phase), 0;
            return m;
    }
    throw std::logic_error("unknown local gate");
}

std::pair<int, int> oracle_values(Oracle which) {
    switch (which) {
        case Oracle::F1: return {0, 0};
        case Oracle::F2: return {1, 1};
        case Oracle::F3: return {0, 1};
        case Oracle::F4: return {1, 0};
    }
    throw std::logic_error("unknown oracle");
}

bool oracle_is_constant(Oracle which) {
    const auto [f0, f1] = oracle_values(which);
    return f0 == f1;
}

std::string to_string(Oracle which) {
    switch (which) {
        case Oracle::F1: return "F1";
        case Oracle::F2: return "F2";
        case Oracle::F3: return "F3";
        case Oracle::F4: return "F4";
    }
    throw std::logic_error("unknown oracle");
}

Oracle parse_oracle(const std::string& name) {
    if (name == "F1") return Oracle::F1;
    if (name == "F2") return Oracle::F2;
    if (name == "F3") return Oracle::F3;
    if (name == "F4") return Oracle::F4;
    throw std::invalid_argument("unknown oracle '" + name + "' (expected F1..F4)");
}

Schedule controlled_phase_schedule(const GateConstraints& constraints) {
    return Schedule{{interaction_from(solve_gate_params(GateTarget::ControlledPhase, constraints))}};
}

Schedule epr_schedule(const GateConstraints& constraints) {
    return Schedule{{interaction_from(solve_gate_params(GateTarget::EprQuarter, constraints))}};
}

Schedule cnot_schedule(const GateConstraints& constraints) {
    const auto cp = interaction_from(solve_gate_params(GateTarget::ControlledPhase, constraints));
    return Schedule{{
        on_atom1(LocalGate::pauli_x()),
        on_atom1(LocalGate::hadamard()),
        cp,
        on_atom1(LocalGate::hadamard()),
        on_atom1(LocalGate::pauli_x()),
        on_atom1(LocalGate::pauli_z()),
    }};
}

Schedule oracle_schedule(Oracle which, const GateConstraints& constraints) {
    const LocalStep pulse = on_atom1(LocalGate::ramsey(0.0));
    const LocalStep shifted = on_atom1(LocalGate::ramsey(kPi));
    Schedule s;
    switch (which) {
        case Oracle::F1:
            s.steps.push_back(IdleStep{});
            break;
        case Oracle::F2: {
            const Schedule cnot = cnot_schedule(constraints);
            append(s, cnot);
            s.steps.push_back(pulse);
            append(s, cnot);
            s.steps.push_back(shifted);
            break;
        }
        case Oracle::F3:
            s = cnot_schedule(constraints);
            break;
        case Oracle::F4:
            s.steps.push_back(pulse);
            append(s, cnot_schedule(constraints));
            s.steps.push_back(shifted);
            break;
    }
    return s;
}

Mat4 step_matrix(const PulseStep& step) {
    return std::visit(overloaded{
                          [](const LocalStep& l) { return kron_atom(l.atom, local_matrix(l.gate)); },
                          [](const InteractionStep& i) { return u_interaction_analytic(i.timing); },
                          [](const IdleStep&) -> Mat4 { return Mat4::Identity(); },
                      },
                      step);
}

Mat4 analytic_matrix(const Schedule& schedule) {
    Mat4 u = Mat4::Identity();
    for (const auto& step : schedule.steps) {
        u = step_matrix(step) * u;
    }
    return u;
}

void PhysicalMode::validate() const {
    settings.validate();
    if (!(std::abs(pulse_error) <= 0.2)) {
        throw std::invalid_argument("pulse_error must lie in [-0.2, 0.2]");
    }
    if (!(omega_jitter > -1.0) || !std::isfinite(omega_jitter)) {
        throw std::invalid_argument("omega_jitter must be > -1");
    }
    if (const auto* t = std::get_if<ThermalInit>(&cavity_init); t && !(t->nbar >= 0.0)) {
        throw std::invalid_argument("thermal nbar must be >= 0");
    }
    if (const auto* f = std::get_if<FockInit>(&cavity_init); f && f->n < 0) {
        throw std::invalid_argument("Fock number must be >= 0");
    }
    const int needed = max_fock_number(cavity_init) + 10;
    if (fock_cutoff < needed) {
        throw std::invalid_argument("physical mode needs fock_cutoff >= " + std::to_string(needed) +
                                    " for the requested cavity state, got " +
                                    std::to_string(fock_cutoff));
    }
}

void RunStats::merge(std::size_t more_steps, double drift, double leak) {
    steps += more_steps;
    norm_drift = std::max(norm_drift, drift);
    leakage = std::max(leakage, leak);
}

StateVector execute(const Schedule& schedule, const StateVector& input, const ExecMode& mode,
                    RunStats* stats) {
    auto mix = execute(schedule, MixtureState::pure(input), mode, stats);
    return mix.components().front().state;
}

MixtureState execute(const Schedule& schedule, const MixtureState& input, const ExecMode& mode,
                     RunStats* stats) {
    if (std::holds_alternative<AnalyticMode>(mode)) {
        const Mat4 u = analytic_matrix(schedule);
        std::vector<MixtureComponent> out;
        for (const auto& c : input.components()) {
            out.push_back({c.weight, apply_atomic(u, c.state)});
        }
        return MixtureState(std::move(out));
    }

    const auto& physical = std::get<PhysicalMode>(mode);
    physical.validate();
    if (input.space().fock_cutoff() != physical.fock_cutoff) {
        throw DimensionMismatch("input state has F=" + std::to_string(input.space().fock_cutoff()) +
                                " but physical mode uses F=" +
                                std::to_string(physical.fock_cutoff));
    }
    const Space space = input.space();
    MixtureState state = input;
    for (const auto& step : schedule.steps) {
        if (const auto* local = std::get_if<LocalStep>(&step)) {
            const SparseOperator op = embed_atom(space, local->atom, local_matrix(local->gate));
            std::vector<MixtureComponent> next;
            for (const auto& c : state.components()) {
                next.push_back({c.weight, op.apply(c.state)});
            }
            state = MixtureState(std::move(next));
        } else if (const auto* interaction = std::get_if<InteractionStep>(&step)) {
            const Params driven =
                interaction->params.with_omega(interaction->params.omega() * (1.0 + physical.omega_jitter));
            const double duration = interaction->timing.t * (1.0 + physical.pulse_error);
            const auto h = interaction_hamiltonian(driven, space);
            auto run = evolve_mixture(h, state, 0.0, duration, physical.settings, physical.jobs);
            if (stats) {
                stats->merge(run.steps, run.norm_drift, run.leakage);
            }
            state = std::move(run.state);
        }
    }
    return state;
}

std::string format_schedule(const Schedule& schedule) {
    std::ostringstream os;
    os << std::setprecision(17);
    for (const auto& step : schedule.steps) {
        std::visit(overloaded{
                       [&](const LocalStep& l) {
                           os << "LOCAL " << l.atom << ' ';
                           switch (l.gate.kind) {
                               case LocalGate::Kind::Hadamard: os << "H"; break;
                               case LocalGate::Kind::PauliX: os << "X"; break;
                               case LocalGate::Kind::PauliZ: os << "Z"; break;
                               case LocalGate::Kind::Ramsey: os << "RAMSEY " << l.gate.phase; break;
                           }
                       },
                       [&](const InteractionStep& i) {
                           os << "INTERACT " << i.params.delta() << ' ' << i.params.omega() << ' '
                              << i.timing.t << ' ' << i.timing.periods;
                       },
                       [&](const IdleStep&) { os << "IDLE"; },
                   },
                   step);
        os << '\n';
    }
    return os.str();
}

Schedule parse_schedule(std::istream& in) {
    Schedule schedule;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word.front() == '#') {
            continue;
        }
        const auto fail = [&](const std::string& why) {
            throw std::invalid_argument("schedule line " + std::to_string(line_no) + ": " + why);
        };
        if (word == "IDLE") {
            schedule.steps.push_back(IdleStep{});
        } else if (word == "LOCAL") {
            int atom = 0;
            std::string gate;
            if (!(ls >> atom >> gate) || (atom != 1 && atom != 2)) {
                fail("expected LOCAL <1|2> <H|X|Z|RAMSEY phase>");
            }
            LocalGate g;
            if (gate == "H") {
                g = LocalGate::hadamard();
            } else if (gate == "X") {
                g = LocalGate::pauli_x();
            } else if (gate == "Z") {
                g = LocalGate::pauli_z();
            } else if (gate == "RAMSEY") {
                double phase = 0.0;
                if (!(ls >> phase)) {
                    fail("RAMSEY needs a phase");
                }
                g = LocalGate::ramsey(phase);
            } else {
                fail("unknown gate '" + gate + "'");
            }
            schedule.steps.push_back(LocalStep{atom, g});
        } else if (word == "INTERACT") {
            double delta = 0.0, omega = 0.0, t = 0.0;
            int periods = 0;
            if (!(ls >> delta >> omega >> t >> periods)) {
                fail("expected INTERACT <delta> <omega> <t> <N>");
            }
            const Params params(1.0, delta, omega);
            const double expected_t = 2.0 * kPi * periods / std::abs(delta);
            if (periods < 1 || std::abs(t - expected_t) > 1e-9 * expected_t) {
                fail("interaction window must satisfy delta * t = 2 pi N with N >= 1");
            }
            schedule.steps.push_back(InteractionStep{params, make_timing(params, periods)});
        } else {
            fail("unknown step '" + word + "'");
        }
        std::string extra;
        if (ls >> extra) {
            fail("trailing token '" + extra + "'");
        }
    }
    return schedule;
}

Schedule parse_schedule(const std::string& text) {
    std::istringstream in(text);
    return parse_schedule(in);
}

}  // namespace djsim
