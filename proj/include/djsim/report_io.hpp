#pragma once

#include <iosfwd>
#include <vector>

#include "djsim/experiments.hpp"

namespace djsim {

inline constexpr const char* kCsvHeader =
    "experiment,param_name,param_value,fidelity,fock_cutoff,steps,norm_drift";

// One row per record, reals with 12 significant digits.
void write_csv(const Report& report, std::ostream& out);
void write_json(const Report& report, std::ostream& out);

// Fidelity-versus-parameter polyline(s) as a standalone SVG document.
void write_svg(const std::vector<Report>& reports, std::ostream& out);

}  // namespace djsim
