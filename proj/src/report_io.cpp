#include "djsim/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include <json.hpp>

namespace djsim {

namespace {

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_csv(const Report& report, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : report.records) {
        out << r.experiment << ',' << r.param_name << ',' << g12(r.param_value) << ','
            << g12(r.fidelity) << ',' << r.meta.fock_cutoff << ',' << r.meta.steps << ','
            << g12(r.meta.norm_drift) << '\n';
    }
}

void write_json(const Report& report, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.records) {
        rows.push_back({
            {"experiment", r.experiment},
            {"param_name", r.param_name},
            {"param_value", r.param_value},
            {"fidelity", r.fidelity},
            {"fock_cutoff", r.meta.fock_cutoff},
            {"steps", r.meta.steps},
            {"norm_drift", r.meta.norm_drift},
            {"leakage", r.meta.leakage},
        });
    }
    out << nlohmann::json{{"experiment", report.experiment}, {"records", rows}}.dump(2) << '\n';
}

void write_svg(const std::vector<Report>& reports, std::ostream& out) {
    constexpr double width = 640.0, height = 420.0, margin = 60.0;
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& rep : reports) {
        for (const auto& r : rep.records) {
            x_lo = std::min(x_lo, r.param_value);
            x_hi = std::max(x_hi, r.param_value);
            y_lo = std::min(y_lo, r.fidelity);
            y_hi = std::max(y_hi, r.fidelity);
        }
    }
    if (!(x_hi > x_lo)) { x_lo -= 0.5; x_hi += 0.5; }
    if (!(y_hi > y_lo)) { y_lo -= 0.005; y_hi += 0.005; }
    const auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
    const auto py = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"" << height - margin + 20 << "\">" << g12(x_lo) << "</text>\n";
    out << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 20
        << "\" text-anchor=\"end\">" << g12(x_hi) << "</text>\n";
    out << "<text x=\"" << margin - 5 << "\" y=\"" << height - margin << "\" text-anchor=\"end\">"
        << g12(y_lo) << "</text>\n";
    out << "<text x=\"" << margin - 5 << "\" y=\"" << margin + 4 << "\" text-anchor=\"end\">"
        << g12(y_hi) << "</text>\n";

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const auto& rep = reports[k];
        const char* color = colors[k % 4];
        const std::string name = rep.records.empty() ? rep.experiment : rep.records.front().param_name;
        out << "<text x=\"" << width / 2 << "\" y=\"" << height - 15 + 0.0 * k
            << "\" text-anchor=\"middle\">" << name << "</text>\n";
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& r : rep.records) {
            out << px(r.param_value) << ',' << py(r.fidelity) << ' ';
        }
        out << "\"/>\n";
        for (const auto& r : rep.records) {
            out << "<circle cx=\"" << px(r.param_value) << "\" cy=\"" << py(r.fidelity)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        out << "<text x=\"" << width - margin << "\" y=\"" << margin - 10 - 14.0 * k
            << "\" text-anchor=\"end\" fill=\"" << color << "\">" << rep.experiment << " fidelity</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace djsim
