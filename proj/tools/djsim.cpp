// djsim: command-line front end for the cavity Deutsch-Jozsa simulator.

#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "djsim/config.hpp"
#include "djsim/report_io.hpp"
#include "djsim/verification.hpp"

using namespace djsim;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Outputs {
    std::string csv;
    std::string json;
    std::string plot;
};

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("--out", "cannot write '" + path + "'");
    }
    writer(out);
}

void emit(const Report& report, const Outputs& outputs) {
    if (outputs.csv.empty()) {
        write_csv(report, std::cout);
    } else {
        write_file(outputs.csv, [&](std::ostream& o) { write_csv(report, o); });
    }
    if (!outputs.json.empty()) {
        write_file(outputs.json, [&](std::ostream& o) { write_json(report, o); });
    }
    if (!outputs.plot.empty()) {
        write_file(outputs.plot, [&](std::ostream& o) { write_svg({report}, o); });
    }
}

ExecMode dj_mode(const RunConfig& config) {
    if (config.mode && *config.mode == "analytic") {
        return AnalyticMode{};
    }
    PhysicalMode mode;
    mode.fock_cutoff = config.fock_cutoff.value_or(12);
    if (config.cavity && *config.cavity == "thermal") {
        const double nbar = config.nbar.value_or(0.5);
        mode.cavity_init = ThermalInit{nbar};
        if (!config.fock_cutoff) {
            mode.fock_cutoff = thermal_component_count(nbar, 1e-6) - 1 + 10;
        }
    } else {
        int n = 0;
        if (config.fock_n) {
            if (config.fock_n->size() != 1) {
                throw ConfigError("fock_n", "dj takes a single Fock number");
            }
            n = config.fock_n->front();
        }
        mode.cavity_init = FockInit{n};
        if (!config.fock_cutoff) {
            mode.fock_cutoff = n + 10;
        }
    }
    mode.settings = config.integrator();
    mode.pulse_error = config.pulse_error.value_or(0.0);
    mode.jobs = config.jobs.value_or(1);
    try {
        mode.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("fock_cutoff", e.what());
    }
    return mode;
}

Report run_dj_experiment(const RunConfig& config) {
    const ExecMode mode = dj_mode(config);
    const GateConstraints constraints =
        constraints_for(config.delta_over_g.value_or(20.0), config.omega_over_g.value_or(400.0));
    Report report{"dj", {}};
    for (Oracle oracle : config.oracles()) {
        const double number = static_cast<double>(static_cast<int>(oracle) + 1);
        DJResult r;
        try {
            r = run_dj(oracle, mode, constraints);
        } catch (const NumericalFailure& e) {
            throw SweepPointFailure("dj", "oracle", number, e.what());
        } catch (const TruncationFailure& e) {
            throw SweepPointFailure("dj", "oracle", number, e.what());
        }
        std::cout << std::setprecision(12) << "classification=" << to_string(r.classification)
                  << " p0=" << r.p0 << " p1=" << r.p1 << " oracle=" << to_string(oracle)
                  << " p_correct=" << r.p_correct << '\n';
        const int cutoff = std::holds_alternative<PhysicalMode>(mode)
                               ? std::get<PhysicalMode>(mode).fock_cutoff
                               : 1;
        report.records.push_back(FidelityRecord{
            "dj", "oracle", number, r.p_correct,
            RecordMeta{cutoff, r.stats.steps, r.stats.norm_drift, r.stats.leakage}});
    }
    return report;
}

int gates_check(const std::string& path) {
    if (path.empty()) {
        throw ConfigError("schedule", "gates-check needs a schedule file");
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("schedule", "cannot open '" + path + "'");
    }
    Schedule schedule;
    try {
        schedule = parse_schedule(in);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("schedule", e.what());
    }
    const Mat4 u = analytic_matrix(schedule);
    const double unitarity = (u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff();
    std::cout << format_schedule(schedule);
    static const char* labels[] = {"gg", "ge", "eg", "ee"};
    std::cout << std::setprecision(6) << std::fixed;
    for (int c = 0; c < 4; ++c) {
        std::cout << "|" << labels[c] << "> ->";
        for (int r = 0; r < 4; ++r) {
            if (std::abs(u(r, c)) > 1e-12) {
                std::cout << " (" << u(r, c).real() << (u(r, c).imag() < 0 ? "" : "+")
                          << u(r, c).imag() << "i)|" << labels[r] << ">";
            }
        }
        std::cout << '\n';
    }
    std::cout << std::scientific << std::setprecision(3) << "unitarity_error=" << unitarity << '\n';
    return 0;
}

int run(const std::string& experiment, const std::string& config_path, Outputs outputs,
        int jobs, std::string schedule_path) {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (config.experiment && *config.experiment != experiment) {
        throw ConfigError("experiment", "config is for '" + *config.experiment + "', not '" +
                                            experiment + "'");
    }
    if (jobs > 0) config.jobs = jobs;
    if (outputs.csv.empty()) outputs.csv = config.out.value_or("");
    if (outputs.json.empty()) outputs.json = config.json.value_or("");
    if (outputs.plot.empty()) outputs.plot = config.plot.value_or("");
    if (schedule_path.empty()) schedule_path = config.schedule.value_or("");

    const SweepOptions options = config.sweep_options();
    if (experiment == "gates-check") {
        return gates_check(schedule_path);
    }
    if (experiment == "stark") {
        emit(stark_sweep(config.stark(), options), outputs);
    } else if (experiment == "pulse") {
        emit(pulse_error_sweep(config.pulse(), options), outputs);
    } else if (experiment == "fock") {
        emit(fock_sweep(config.fock(), options), outputs);
    } else if (experiment == "rabi") {
        const RabiResult r = rabi_fluctuation(config.rabi(), options);
        std::cerr << std::setprecision(12) << "f_nominal=" << r.f_nominal
                  << " f_perturbed=" << r.f_perturbed << " drop=" << r.drop << '\n';
        emit(r.report, outputs);
    } else if (experiment == "thermal") {
        emit(thermal_dj(config.thermal(), options), outputs);
    } else if (experiment == "dj") {
        const Report report = run_dj_experiment(config);
        if (!outputs.csv.empty() || !outputs.json.empty() || !outputs.plot.empty()) {
            if (outputs.csv.empty()) {
                outputs.csv = "/dev/null";
            }
            emit(report, outputs);
        }
    } else {
        throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
    }
    return 0;
}

int verify() {
    const auto results = run_verification();
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(62) << r.name
                  << r.detail << '\n';
        ok = ok && r.passed;
    }
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
    return ok ? 0 : 1;
}

void about() {
    const double g = 2.0 * kPi * 25e3;  // rad/s
    const double t_epr = 10.0 * kPi / g;
    std::cout << "Units: rates in units of the atom-cavity coupling g, times in 1/g.\n"
              << "Reference coupling g = 2 pi x 25 kHz = " << g << " rad/s\n"
              << "Cavity lifetime T_c ~ 1e-3 s; Rydberg atom lifetime T_r = 3e-2 s\n"
              << "EPR window t = 10 pi / g = " << t_epr << " s ("
              << t_epr / 1e-3 << " T_c)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity-QED Deutsch-Jozsa simulator"};
    app.require_subcommand(0, 1);
    bool show_about = false;
    app.add_flag("--about", show_about, "Print physical units and feasibility constants");

    auto* run_cmd = app.add_subcommand("run", "Run an experiment");
    std::string experiment, config_path, schedule_path;
    Outputs outputs;
    int jobs = 0;
    run_cmd->add_option("experiment", experiment, "stark|pulse|fock|rabi|thermal|dj|gates-check")
        ->required()
        ->check(CLI::IsMember(experiment_names()));
    run_cmd->add_option("--config", config_path, "key = value configuration file");
    run_cmd->add_option("--out", outputs.csv, "CSV output (default: stdout)");
    run_cmd->add_option("--json", outputs.json, "JSON output");
    run_cmd->add_option("--plot", outputs.plot, "SVG plot output");
    run_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_option("--schedule", schedule_path, "Schedule file for gates-check");

    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant and oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (show_about) {
            about();
            return 0;
        }
        if (*verify_cmd) {
            return verify();
        }
        if (*run_cmd) {
            return run(experiment, config_path, outputs, jobs, schedule_path);
        }
        std::cout << app.help();
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SweepPointFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const TruncationFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const InfeasibleConstraints& e) {
        std::cerr << "error: infeasible gate parameters (delta_over_g / omega_over_g): " << e.what()
                  << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
