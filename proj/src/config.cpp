#include "djsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace djsim {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ConfigError(key, "empty list element");
        }
        items.push_back(item);
    }
    if (items.empty()) {
        throw ConfigError(key, "empty list");
    }
    return items;
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    return v;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

template <typename T, typename Fmt>
std::string join(const std::vector<T>& values, Fmt fmt) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + fmt(values[i]);
    }
    return out;
}

struct Field {
    std::function<void(RunConfig&, const std::string&)> parse;
    std::function<std::optional<std::string>(const RunConfig&)> print;
};

template <typename Member>
Field number_field(const std::string& key, Member member) {
    return Field{
        [key, member](RunConfig& c, const std::string& v) { c.*member = to_double(key, v); },
        [member](const RunConfig& c) -> std::optional<std::string> {
            if (!(c.*member)) return std::nullopt;
            return format_double(*(c.*member));
        }};
}

template <typename Member>
Field int_field(const std::string& key, Member member) {
    return Field{
        [key, member](RunConfig& c, const std::string& v) { c.*member = to_int(key, v); },
        [member](const RunConfig& c) -> std::optional<std::string> {
            if (!(c.*member)) return std::nullopt;
            return std::to_string(*(c.*member));
        }};
}

template <typename Member>
Field string_field(Member member) {
    return Field{[member](RunConfig& c, const std::string& v) { c.*member = v; },
                 [member](const RunConfig& c) { return c.*member; }};
}

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table = {
        {"experiment", string_field(&RunConfig::experiment)},
        {"delta_over_g", number_field("delta_over_g", &RunConfig::delta_over_g)},
        {"delta_list",
         Field{[](RunConfig& c, const std::string& v) {
                   std::vector<double> xs;
                   for (const auto& s : split_list("delta_list", v)) xs.push_back(to_double("delta_list", s));
                   c.delta_list = xs;
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.delta_list) return std::nullopt;
                   return join(*c.delta_list, format_double);
               }}},
        {"omega_over_g", number_field("omega_over_g", &RunConfig::omega_over_g)},
        {"omega_ratio", number_field("omega_ratio", &RunConfig::omega_ratio)},
        {"fock_cutoff", int_field("fock_cutoff", &RunConfig::fock_cutoff)},
        {"nbar", number_field("nbar", &RunConfig::nbar)},
        {"fock_n",
         Field{[](RunConfig& c, const std::string& v) {
                   std::vector<int> xs;
                   for (const auto& s : split_list("fock_n", v)) xs.push_back(to_int("fock_n", s));
                   c.fock_n = xs;
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.fock_n) return std::nullopt;
                   return join(*c.fock_n, [](int n) { return std::to_string(n); });
               }}},
        {"eps_list",
         Field{[](RunConfig& c, const std::string& v) {
                   std::vector<double> xs;
                   for (const auto& s : split_list("eps_list", v)) xs.push_back(to_double("eps_list", s));
                   c.eps_list = xs;
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.eps_list) return std::nullopt;
                   return join(*c.eps_list, format_double);
               }}},
        {"pulse_error", number_field("pulse_error", &RunConfig::pulse_error)},
        {"oracle",
         Field{[](RunConfig& c, const std::string& v) { c.oracle = split_list("oracle", v); },
               [](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.oracle) return std::nullopt;
                   return join(*c.oracle, [](const std::string& s) { return s; });
               }}},
        {"rabi_ratio", number_field("rabi_ratio", &RunConfig::rabi_ratio)},
        {"atomic_input", string_field(&RunConfig::atomic_input)},
        {"cavity", string_field(&RunConfig::cavity)},
        {"mode", string_field(&RunConfig::mode)},
        {"steps_per_radian", number_field("steps_per_radian", &RunConfig::steps_per_radian)},
        {"unitarity_tol", number_field("unitarity_tol", &RunConfig::unitarity_tol)},
        {"leakage_tol", number_field("leakage_tol", &RunConfig::leakage_tol)},
        {"jobs", int_field("jobs", &RunConfig::jobs)},
        {"out", string_field(&RunConfig::out)},
        {"json", string_field(&RunConfig::json)},
        {"plot", string_field(&RunConfig::plot)},
        {"schedule", string_field(&RunConfig::schedule)},
    };
    return table;
}

void check(bool ok, const std::string& key, const std::string& message) {
    if (!ok) {
        throw ConfigError(key, message);
    }
}

template <typename T>
T value_or(const std::optional<T>& v, T fallback) {
    return v ? *v : fallback;
}

}  // namespace

ConfigError::ConfigError(std::string key_, const std::string& message)
    : std::runtime_error("config key '" + key_ + "': " + message), key(std::move(key_)) {}

void RunConfig::validate() const {
    if (experiment) {
        const auto& names = experiment_names();
        check(std::find(names.begin(), names.end(), *experiment) != names.end(), "experiment",
              "unknown experiment '" + *experiment + "'");
    }
    if (delta_over_g) check(*delta_over_g > 0.0, "delta_over_g", "must be > 0");
    if (delta_list) {
        for (double d : *delta_list) check(d > 0.0, "delta_list", "every detuning must be > 0");
    }
    if (omega_over_g) check(*omega_over_g >= 0.0, "omega_over_g", "must be >= 0");
    if (omega_ratio) check(*omega_ratio >= 0.0, "omega_ratio", "must be >= 0");
    if (fock_cutoff) check(*fock_cutoff >= 1, "fock_cutoff", "must be >= 1");
    if (nbar) check(*nbar >= 0.0, "nbar", "must be >= 0");
    if (fock_n) {
        for (int n : *fock_n) check(n >= 0, "fock_n", "Fock numbers must be >= 0");
        if (fock_cutoff) {
            for (int n : *fock_n) {
                check(*fock_cutoff >= n + 10, "fock_cutoff", "must be >= fock_n + 10");
            }
        }
    }
    if (eps_list) {
        for (double e : *eps_list) check(e >= 0.0 && e <= 0.2, "eps_list", "values must lie in [0, 0.2]");
    }
    if (pulse_error) check(std::abs(*pulse_error) <= 0.2, "pulse_error", "must lie in [-0.2, 0.2]");
    if (oracle) {
        for (const auto& o : *oracle) {
            check(o == "all" || o == "F1" || o == "F2" || o == "F3" || o == "F4", "oracle",
                  "expected F1..F4 or all, got '" + o + "'");
        }
    }
    if (rabi_ratio) check(*rabi_ratio >= 0.0 && *rabi_ratio <= 0.1, "rabi_ratio", "must lie in [0, 0.1]");
    if (atomic_input) check(*atomic_input == "gg" || *atomic_input == "eg", "atomic_input", "must be gg or eg");
    if (cavity) check(*cavity == "fock" || *cavity == "thermal", "cavity", "must be fock or thermal");
    if (mode) check(*mode == "analytic" || *mode == "physical", "mode", "must be analytic or physical");
    if (steps_per_radian) check(*steps_per_radian >= 5.0, "steps_per_radian", "must be >= 5");
    if (unitarity_tol) {
        check(*unitarity_tol > 0.0 && *unitarity_tol <= 1e-2, "unitarity_tol", "must lie in (0, 1e-2]");
    }
    if (leakage_tol) {
        check(*leakage_tol > 0.0 && *leakage_tol <= 1e-2, "leakage_tol", "must lie in (0, 1e-2]");
    }
    if (jobs) check(*jobs >= 1, "jobs", "must be >= 1");
}

IntegratorSettings RunConfig::integrator() const {
    IntegratorSettings s;
    s.steps_per_radian = value_or(steps_per_radian, s.steps_per_radian);
    s.unitarity_tol = value_or(unitarity_tol, s.unitarity_tol);
    s.leakage_tol = value_or(leakage_tol, s.leakage_tol);
    return s;
}

SweepOptions RunConfig::sweep_options() const { return SweepOptions{integrator(), value_or(jobs, 1)}; }

std::vector<Oracle> RunConfig::oracles() const {
    if (!oracle || std::find(oracle->begin(), oracle->end(), "all") != oracle->end()) {
        return {Oracle::F1, Oracle::F2, Oracle::F3, Oracle::F4};
    }
    std::vector<Oracle> out;
    for (const auto& o : *oracle) out.push_back(parse_oracle(o));
    return out;
}

StarkConfig RunConfig::stark() const {
    StarkConfig c;
    if (delta_list) c.delta_over_g = *delta_list;
    else if (delta_over_g) c.delta_over_g = {*delta_over_g};
    c.omega_ratio = value_or(omega_ratio, c.omega_ratio);
    c.fock_cutoff = value_or(fock_cutoff, c.fock_cutoff);
    if (atomic_input) c.input = parse_atomic_input(*atomic_input);
    return c;
}

namespace {

EprConfig epr_from(const RunConfig& r) {
    EprConfig c;
    c.delta_over_g = value_or(r.delta_over_g, c.delta_over_g);
    c.omega_over_g = value_or(r.omega_over_g, c.omega_over_g);
    c.fock_cutoff = value_or(r.fock_cutoff, c.fock_cutoff);
    if (r.atomic_input) c.input = parse_atomic_input(*r.atomic_input);
    return c;
}

}  // namespace

PulseConfig RunConfig::pulse() const {
    PulseConfig c;
    c.epr = epr_from(*this);
    if (fock_n) {
        check(fock_n->size() == 1, "fock_n", "pulse experiment takes a single Fock number");
        c.fock_n = fock_n->front();
    }
    if (eps_list) c.eps = *eps_list;
    return c;
}

FockConfig RunConfig::fock() const {
    FockConfig c;
    c.epr = epr_from(*this);
    if (fock_n) c.fock_n = *fock_n;
    return c;
}

RabiConfig RunConfig::rabi() const {
    RabiConfig c;
    c.ratio = value_or(rabi_ratio, c.ratio);
    c.delta_over_g = value_or(delta_over_g, c.delta_over_g);
    c.omega_ratio = value_or(omega_ratio, c.omega_ratio);
    c.fock_cutoff = value_or(fock_cutoff, c.fock_cutoff);
    if (atomic_input) c.input = parse_atomic_input(*atomic_input);
    return c;
}

ThermalConfig RunConfig::thermal() const {
    ThermalConfig c;
    c.nbar = value_or(nbar, c.nbar);
    c.oracles = oracles();
    c.delta_over_g = value_or(delta_over_g, c.delta_over_g);
    c.omega_over_g = value_or(omega_over_g, c.omega_over_g);
    c.fock_cutoff = value_or(fock_cutoff, c.fock_cutoff);
    c.analytic = mode && *mode == "analytic";
    return c;
}

RunConfig parse_config(std::istream& in) {
    RunConfig config;
    std::string line;
    int line_no = 0;
    std::vector<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line, "line " + std::to_string(line_no) + " is not 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = fields().find(key);
        if (it == fields().end()) {
            throw ConfigError(key, "unknown key");
        }
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            throw ConfigError(key, "given more than once");
        }
        if (value.empty()) {
            throw ConfigError(key, "missing value");
        }
        seen.push_back(key);
        it->second.parse(config, value);
    }
    config.validate();
    return config;
}

RunConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("--config", "cannot open '" + path + "'");
    }
    return parse_config(in);
}

std::string serialize_config(const RunConfig& config) {
    std::string out;
    for (const auto& [key, field] : fields()) {
        if (const auto value = field.print(config)) {
            out += key + " = " + *value + "\n";
        }
    }
    return out;
}

}  // namespace djsim
