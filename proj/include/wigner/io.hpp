/*
 * io.hpp — CSV/JSON emission.
 *
 * Doubles are rendered with std::to_chars shortest round-trip form, so a
 * given result always serializes to the same bytes. Every CSV data file
 * gets a JSON sidecar (<name>.meta.json) echoing the generating config and
 * the version string; data files carry no timestamps.
 */

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wigner/conditions.hpp"
#include "wigner/measure.hpp"

namespace wigner {

inline const char* version_string() { return "wignerlab 0.1.0"; }

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path.string());
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

inline void write_json_file(const std::filesystem::path& path,
                            const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

inline void write_sidecar(const std::filesystem::path& data_path,
                          const nlohmann::json& config_echo) {
    nlohmann::json meta;
    meta["version"] = version_string();
    meta["config"] = config_echo;
    meta["data_file"] = data_path.filename().string();
    write_json_file(data_path.string() + ".meta.json", meta);
}

inline nlohmann::json measure_to_json(const StepMeasure& m) {
    nlohmann::json j;
    j["atoms"] = m.atoms();
    j["weights"] = m.weights();
    return j;
}

inline void write_measure_csv(const std::filesystem::path& path,
                              const StepMeasure& m) {
    CsvWriter csv(path);
    csv.row({"atom", "weight"});
    for (std::size_t i = 0; i < m.size(); ++i)
        csv.row({format_double(m.atoms()[i]), format_double(m.weights()[i])});
}

// Long format: functional, parameter, value.
inline void write_condition_report_csv(const std::filesystem::path& path,
                                       const ConditionReport& rep) {
    CsvWriter csv(path);
    csv.row({"functional", "parameter", "value"});
    for (std::size_t e = 0; e < rep.eps_grid.size(); ++e) {
        if (!rep.lindeberg.empty())
            csv.row({"lindeberg", format_double(rep.eps_grid[e]),
                     format_double(rep.lindeberg[e])});
        csv.row({"weak_lindeberg", format_double(rep.eps_grid[e]),
                 format_double(rep.weak_lindeberg[e])});
    }
    csv.row({"weak_zero", "", format_double(rep.weak_zero)});
    if (rep.row_one) csv.row({"row_one", "", format_double(*rep.row_one)});
    csv.row({"weak_row_one", "", format_double(rep.weak_row_one)});
    for (std::size_t d = 0; d < rep.delta_grid.size(); ++d)
        csv.row({"margin", format_double(rep.delta_grid[d]),
                 format_double(rep.margin_curve[d])});
    if (rep.row_bdd_sup)
        csv.row({"row_bdd_sup", "", format_double(*rep.row_bdd_sup)});
}

inline nlohmann::json condition_report_to_json(const ConditionReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["eps_grid"] = rep.eps_grid;
    j["delta_grid"] = rep.delta_grid;
    if (!rep.lindeberg.empty()) j["lindeberg"] = rep.lindeberg;
    j["weak_lindeberg"] = rep.weak_lindeberg;
    j["weak_zero"] = rep.weak_zero;
    if (rep.row_one) j["row_one"] = *rep.row_one;
    j["weak_row_one"] = rep.weak_row_one;
    j["margin_curve"] = rep.margin_curve;
    if (rep.row_bdd_sup) j["row_bdd_sup"] = *rep.row_bdd_sup;
    return j;
}

} // namespace wigner
