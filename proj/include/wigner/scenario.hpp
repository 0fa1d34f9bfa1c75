/*
 * scenario.hpp — scenario catalog, n-sweep driver and result emission.
 *
 * A scenario fixes the ensemble family per n; the driver simulates trials,
 * pools the mean ESD, evaluates every condition functional, compares
 * distances and moments against the semicircle reference, and emits
 * plot-ready tables. Everything is deterministic given the seed: trials run
 * on worker threads but are pooled in trial order, and floating-point output
 * uses round-trip formatting, so reruns are byte-identical for any worker
 * count.
 */

#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wigner/conditions.hpp"
#include "wigner/distances.hpp"
#include "wigner/ensemble.hpp"
#include "wigner/io.hpp"
#include "wigner/spectra.hpp"
#include "wigner/walks.hpp"

namespace wigner {

struct ScenarioConfig {
    std::string scenario = "uniform-gauss";
    std::vector<int> n_list = {256};
    int trials = 10;
    std::uint64_t seed = 1;
    int k_max = 6;
    std::string out_dir = "out";
    std::string format = "csv"; // csv | json
    std::string profile_file;
    std::string law = "gaussian"; // custom scenario only
    int threads = 1;
    int resamples = 10000;
    std::vector<double> eps_grid = default_eps_grid();
    std::vector<double> delta_grid = default_delta_grid();

    void validate() const {
        static const char* known[] = {"uniform-gauss", "rademacher",
                                      "checkerboard",  "block",
                                      "heavy-tail",    "truncation-pipeline",
                                      "custom"};
        if (std::find(std::begin(known), std::end(known), scenario) ==
            std::end(known))
            throw std::invalid_argument("unknown scenario: " + scenario);
        if (n_list.empty()) throw std::invalid_argument("n list is empty");
        if (!std::is_sorted(n_list.begin(), n_list.end()))
            throw std::invalid_argument("n list must be ascending");
        for (int n : n_list)
            if (n < 1) throw std::invalid_argument("n must be positive");
        if (trials < 1) throw std::invalid_argument("trials must be >= 1");
        if (k_max < 1 || k_max > 10)
            throw std::invalid_argument("k_max must be in 1..10");
        if (format != "csv" && format != "json")
            throw std::invalid_argument("format must be csv or json");
        if (threads < 1) throw std::invalid_argument("threads must be >= 1");
        if (scenario == "custom" && profile_file.empty())
            throw std::invalid_argument("custom scenario needs --profile-file");
    }

    nlohmann::json echo() const {
        nlohmann::json j;
        j["scenario"] = scenario;
        j["n"] = n_list;
        j["trials"] = trials;
        j["seed"] = seed;
        j["k_max"] = k_max;
        j["out"] = out_dir;
        j["format"] = format;
        if (!profile_file.empty()) j["profile_file"] = profile_file;
        if (scenario == "custom") j["law"] = law;
        j["threads"] = threads;
        j["resamples"] = resamples;
        return j;
    }
};

inline EntryLaw law_from_string(const std::string& s) {
    if (s == "gaussian") return EntryLaw::gaussian(1.0);
    if (s == "rademacher") return EntryLaw::rademacher(1.0);
    if (s == "heavy-tail") return EntryLaw::heavy_tail_cubic(1.0);
    if (s == "zero") return EntryLaw::zero();
    throw std::invalid_argument("unknown law: " + s);
}

inline EnsembleSpec make_scenario_spec(const ScenarioConfig& cfg, int n) {
    if (cfg.scenario == "uniform-gauss")
        return {VarianceProfile::uniform(n), EntryLaw::gaussian(1.0), cfg.seed};
    if (cfg.scenario == "rademacher")
        return {VarianceProfile::uniform(n), EntryLaw::rademacher(1.0), cfg.seed};
    if (cfg.scenario == "checkerboard")
        return {VarianceProfile::checkerboard(n), EntryLaw::rademacher(1.0),
                cfg.seed};
    if (cfg.scenario == "block")
        return {VarianceProfile::block(n), EntryLaw::gaussian(1.0), cfg.seed};
    if (cfg.scenario == "heavy-tail" || cfg.scenario == "truncation-pipeline") {
        const double s = heavy_tail_entry_scale(n);
        return {VarianceProfile::uniform(n, s * s),
                EntryLaw::heavy_tail_cubic(1.0), cfg.seed};
    }
    if (cfg.scenario == "custom") {
        VarianceProfile p = VarianceProfile::load_csv(cfg.profile_file);
        if (p.n() != n)
            throw std::invalid_argument("profile file size does not match n");
        return {std::move(p), law_from_string(cfg.law), cfg.seed};
    }
    throw std::invalid_argument("unknown scenario: " + cfg.scenario);
}

struct ScenarioNResult {
    int n = 0;
    ConditionReport conditions;
    std::optional<ConditionReport> conditions_post; // truncation pipeline
    std::optional<double> eta;                      // truncation pipeline
    StepMeasure mean_esd = StepMeasure::point_mass(0.0);
    double dk_semicircle = 0.0;
    double levy_semicircle = 0.0;
    double dk_mc_se = 0.0; // std error of per-trial D_K (trend tolerance)
    std::vector<double> empirical_moments;     // index k-1, k = 1..k_max
    std::vector<TreeSumResult> predictions;    // same indexing; odd k zero
    bool has_predictions = false;
};

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<ScenarioNResult> per_n;
};

namespace detail {

inline ScenarioNResult
simulate_one_size(const EnsembleSpec& spec, const ScenarioConfig& cfg, int n) {
    ScenarioNResult res;
    res.n = n;

    std::vector<std::vector<double>> per_trial(cfg.trials);
    parallel_for(0, cfg.trials, cfg.threads, [&](int t) {
        per_trial[t] =
            eigenvalues(sample_matrix(spec, static_cast<std::uint64_t>(t)))
                .eigenvalues;
    });

    const CdfView sc = CdfView::semicircle();
    std::vector<double> trial_dk(cfg.trials, 0.0);
    for (int t = 0; t < cfg.trials; ++t)
        trial_dk[t] = kolmogorov_distance(
            CdfView::of(StepMeasure::from_points(per_trial[t])), sc);
    double mean_dk = 0.0, var_dk = 0.0;
    for (double v : trial_dk) mean_dk += v;
    mean_dk /= cfg.trials;
    for (double v : trial_dk) var_dk += (v - mean_dk) * (v - mean_dk);
    res.dk_mc_se = cfg.trials > 1
                       ? std::sqrt(var_dk / (cfg.trials - 1) / cfg.trials)
                       : 0.0;

    std::vector<double> pool;
    pool.reserve(static_cast<std::size_t>(cfg.trials) * n);
    for (const auto& ev : per_trial) pool.insert(pool.end(), ev.begin(), ev.end());
    res.mean_esd = StepMeasure::from_points(std::move(pool));

    res.dk_semicircle = kolmogorov_distance(CdfView::of(res.mean_esd), sc);
    res.levy_semicircle = levy_distance(CdfView::of(res.mean_esd), sc);

    res.empirical_moments.resize(cfg.k_max);
    for (int k = 1; k <= cfg.k_max; ++k)
        res.empirical_moments[k - 1] = res.mean_esd.moment(k);

    res.has_predictions =
        spec.law.finite_variance() || spec.truncation_eta.has_value();
    if (res.has_predictions && !spec.truncation_eta) {
        res.predictions.resize(cfg.k_max);
        for (int k = 1; k <= cfg.k_max; ++k)
            res.predictions[k - 1] = moment_prediction(spec.profile, k);
    } else {
        res.has_predictions = false;
    }
    return res;
}

} // namespace detail

inline ScenarioResult run_scenario_compute(const ScenarioConfig& cfg) {
    cfg.validate();
    ScenarioResult out;
    out.config = cfg;

    const bool pipeline = cfg.scenario == "truncation-pipeline";
    std::vector<double> etas;
    if (pipeline) {
        // thresholds from the evaluated weak-Lindeberg table over the n list
        WeakLindebergTable table;
        table.eps_grid = cfg.eps_grid;
        table.n_values = cfg.n_list;
        table.lhs.assign(cfg.eps_grid.size(), {});
        for (int n : cfg.n_list) {
            const EnsembleSpec spec = make_scenario_spec(cfg, n);
            const ConditionReport rep =
                evaluate_conditions(spec, cfg.eps_grid, cfg.delta_grid);
            for (std::size_t e = 0; e < cfg.eps_grid.size(); ++e)
                table.lhs[e].push_back(rep.weak_lindeberg[e]);
        }
        etas = threshold_sequence(table);
    }

    for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
        const int n = cfg.n_list[idx];
        EnsembleSpec spec = make_scenario_spec(cfg, n);
        ScenarioNResult res;
        if (pipeline) {
            EnsembleSpec truncated = spec;
            truncated.truncation_eta = etas[idx];
            res = detail::simulate_one_size(truncated, cfg, n);
            res.conditions_post =
                evaluate_conditions(truncated, cfg.eps_grid, cfg.delta_grid);
            res.eta = etas[idx];
        } else {
            res = detail::simulate_one_size(spec, cfg, n);
        }
        res.conditions = evaluate_conditions(spec, cfg.eps_grid, cfg.delta_grid);
        out.per_n.push_back(std::move(res));
    }
    return out;
}

struct SweepRow {
    std::string functional;
    std::vector<double> values; // one per n
    double ratio_last_first = 0.0;
    std::string trend;
};

namespace detail {

inline std::string classify_trend(const std::vector<double>& v,
                                  const std::vector<double>& tol) {
    bool all_zero = true;
    for (double x : v) all_zero = all_zero && std::abs(x) <= 1e-12;
    if (all_zero) return "FLAT-AT-ZERO";
    bool down = true;
    for (std::size_t i = 1; i < v.size(); ++i)
        down = down && (v[i] < v[i - 1] - (tol[i] + tol[i - 1]));
    if (down) return "MONOTONE-DOWN";
    if (v.front() != 0.0 && std::abs(v.back() / v.front() - 1.0) <= 0.1)
        return "CONSTANT";
    return "MIXED";
}

} // namespace detail

inline std::vector<SweepRow> sweep_summary(const ScenarioResult& result) {
    if (result.per_n.size() < 2)
        throw std::invalid_argument("sweep_summary: need at least two values of n");
    std::vector<SweepRow> rows;
    auto add = [&](const std::string& name, auto getter, bool use_se) {
        SweepRow row;
        row.functional = name;
        std::vector<double> tol;
        for (const auto& r : result.per_n) {
            const std::optional<double> v = getter(r);
            if (!v) return; // functional undefined for this scenario
            row.values.push_back(*v);
            tol.push_back(use_se ? r.dk_mc_se : 0.0);
        }
        row.ratio_last_first =
            row.values.front() != 0.0 ? row.values.back() / row.values.front()
                                      : 0.0;
        row.trend = detail::classify_trend(row.values, tol);
        rows.push_back(std::move(row));
    };
    using R = const ScenarioNResult&;
    add("dk_semicircle", [](R r) { return std::optional<double>(r.dk_semicircle); }, true);
    add("levy_semicircle", [](R r) { return std::optional<double>(r.levy_semicircle); }, true);
    add("row_one", [](R r) { return r.conditions.row_one; }, false);
    add("weak_row_one", [](R r) { return std::optional<double>(r.conditions.weak_row_one); }, false);
    add("weak_zero", [](R r) { return std::optional<double>(r.conditions.weak_zero); }, false);
    return rows;
}

namespace detail {

inline std::string size_tag(const std::string& scenario, int n) {
    return scenario + "_n" + std::to_string(n);
}

inline void emit_histogram(const std::filesystem::path& path,
                           const StepMeasure& m, const std::string& format,
                           const nlohmann::json& echo) {
    const int bins = 200;
    const double lo = -3.0, hi = 3.0;
    const double width = (hi - lo) / bins;
    std::vector<double> mass(bins, 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double x = m.atoms()[i];
        if (x < lo || x >= hi) continue; // escaping mass is visible as deficit
        const int b = std::min(bins - 1, static_cast<int>((x - lo) / width));
        mass[b] += m.weights()[i];
    }
    if (format == "json") {
        nlohmann::json j;
        j["bin_lo"] = nlohmann::json::array();
        j["bin_hi"] = nlohmann::json::array();
        j["mass"] = mass;
        j["semicircle_density"] = nlohmann::json::array();
        for (int b = 0; b < bins; ++b) {
            j["bin_lo"].push_back(lo + b * width);
            j["bin_hi"].push_back(lo + (b + 1) * width);
            j["semicircle_density"].push_back(Semicircle::density(lo + (b + 0.5) * width));
        }
        write_json_file(path, j);
    } else {
        CsvWriter csv(path);
        csv.row({"bin_lo", "bin_hi", "mass", "semicircle_density"});
        for (int b = 0; b < bins; ++b)
            csv.row({format_double(lo + b * width), format_double(lo + (b + 1) * width),
                     format_double(mass[b]),
                     format_double(Semicircle::density(lo + (b + 0.5) * width))});
        write_sidecar(path, echo);
    }
}

} // namespace detail

// Writes all result files for a computed scenario; returns the paths.
inline std::vector<std::filesystem::path>
emit_scenario(const ScenarioResult& result, bool with_sweep = true) {
    const ScenarioConfig& cfg = result.config;
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    const std::string ext = cfg.format == "json" ? ".json" : ".csv";
    const nlohmann::json echo = cfg.echo();
    std::vector<std::filesystem::path> written;
    auto track = [&](std::filesystem::path p) {
        written.push_back(p);
        return p;
    };

    for (const auto& res : result.per_n) {
        const std::string tag = detail::size_tag(cfg.scenario, res.n);

        // conditions (pre-truncation for the pipeline scenario)
        {
            const auto p = track(dir / (tag + "_conditions" + ext));
            if (cfg.format == "json")
                write_json_file(p, condition_report_to_json(res.conditions));
            else {
                write_condition_report_csv(p, res.conditions);
                write_sidecar(p, echo);
            }
        }
        if (res.conditions_post) {
            const auto p = track(dir / (tag + "_conditions_post" + ext));
            nlohmann::json j = condition_report_to_json(*res.conditions_post);
            if (res.eta) j["eta"] = *res.eta;
            if (cfg.format == "json")
                write_json_file(p, j);
            else {
                write_condition_report_csv(p, *res.conditions_post);
                write_sidecar(p, echo);
            }
        }

        // mean ESD
        {
            const auto p = track(dir / (tag + "_esd" + ext));
            if (cfg.format == "json")
                write_json_file(p, measure_to_json(res.mean_esd));
            else {
                write_measure_csv(p, res.mean_esd);
                write_sidecar(p, echo);
            }
        }

        // histogram
        detail::emit_histogram(track(dir / (tag + "_hist" + ext)), res.mean_esd,
                               cfg.format, echo);

        // moments: empirical vs prediction vs semicircle
        {
            const auto p = track(dir / (tag + "_moments" + ext));
            if (cfg.format == "json") {
                nlohmann::json j;
                for (int k = 1; k <= cfg.k_max; ++k) {
                    nlohmann::json row;
                    row["k"] = k;
                    row["empirical"] = res.empirical_moments[k - 1];
                    if (res.has_predictions) {
                        row["prediction"] = res.predictions[k - 1].value;
                        row["prediction_exact"] = res.predictions[k - 1].exact;
                    }
                    row["semicircle"] = Semicircle::moment(k);
                    j.push_back(row);
                }
                write_json_file(p, j);
            } else {
                CsvWriter csv(p);
                csv.row({"k", "empirical", "prediction", "prediction_exact",
                         "semicircle"});
                for (int k = 1; k <= cfg.k_max; ++k) {
                    std::vector<std::string> cells{
                        std::to_string(k),
                        format_double(res.empirical_moments[k - 1])};
                    if (res.has_predictions) {
                        cells.push_back(format_double(res.predictions[k - 1].value));
                        cells.push_back(res.predictions[k - 1].exact ? "1" : "0");
                    } else {
                        cells.push_back("");
                        cells.push_back("");
                    }
                    cells.push_back(format_double(Semicircle::moment(k)));
                    csv.row(cells);
                }
                write_sidecar(p, echo);
            }
        }
    }

    // distance summary over n
    {
        const auto p =
            track(dir / (cfg.scenario + "_summary" + ext));
        if (cfg.format == "json") {
            nlohmann::json j;
            for (const auto& res : result.per_n) {
                nlohmann::json row;
                row["n"] = res.n;
                row["dk_semicircle"] = res.dk_semicircle;
                row["levy_semicircle"] = res.levy_semicircle;
                row["dk_mc_se"] = res.dk_mc_se;
                row["weak_row_one"] = res.conditions.weak_row_one;
                if (res.conditions.row_one) row["row_one"] = *res.conditions.row_one;
                if (res.eta) row["eta"] = *res.eta;
                j.push_back(row);
            }
            write_json_file(p, j);
        } else {
            CsvWriter csv(p);
            csv.row({"n", "dk_semicircle", "levy_semicircle", "dk_mc_se",
                     "row_one", "weak_row_one", "eta"});
            for (const auto& res : result.per_n)
                csv.row({std::to_string(res.n), format_double(res.dk_semicircle),
                         format_double(res.levy_semicircle),
                         format_double(res.dk_mc_se),
                         res.conditions.row_one
                             ? format_double(*res.conditions.row_one)
                             : "",
                         format_double(res.conditions.weak_row_one),
                         res.eta ? format_double(*res.eta) : ""});
            write_sidecar(p, echo);
        }
    }

    // sweep trends (needs at least two sizes)
    if (with_sweep && result.per_n.size() >= 2) {
        const auto rows = sweep_summary(result);
        const auto p = track(dir / (cfg.scenario + "_sweep" + ext));
        if (cfg.format == "json") {
            nlohmann::json j;
            for (const auto& row : rows) {
                nlohmann::json jr;
                jr["functional"] = row.functional;
                jr["values"] = row.values;
                jr["ratio_last_first"] = row.ratio_last_first;
                jr["trend"] = row.trend;
                j.push_back(jr);
            }
            write_json_file(p, j);
        } else {
            CsvWriter csv(p);
            std::vector<std::string> header{"functional"};
            for (const auto& res : result.per_n)
                header.push_back("n" + std::to_string(res.n));
            header.push_back("ratio_last_first");
            header.push_back("trend");
            csv.row(header);
            for (const auto& row : rows) {
                std::vector<std::string> cells{row.functional};
                for (double v : row.values) cells.push_back(format_double(v));
                cells.push_back(format_double(row.ratio_last_first));
                cells.push_back(row.trend);
                csv.row(cells);
            }
            write_sidecar(p, echo);
        }
    }
    return written;
}

inline std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& cfg) {
    return emit_scenario(run_scenario_compute(cfg));
}

} // namespace wigner
