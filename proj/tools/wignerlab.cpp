/*
 * wignerlab — scenario runner for Wigner-ensemble spectral statistics.
 *
 * Subcommands:
 *   scenarios    full n-sweep: conditions, mean ESD, distances, moments,
 *                histograms, trend table
 *   simulate     simulation outputs only (no sweep table)
 *   conditions   condition functionals per n (no simulation)
 *   moments      tree-class moment predictions, plus the exact trace oracle
 *                where it applies (real two-point laws, small n)
 *   walks        canonical-walk census and Dyck path counts
 *   gauss        row-sum Lévy study against the standard normal
 *   concentrate  inequality property suites and concentration experiments
 *
 * Options may come from a key=value config file (--config); command-line
 * flags override file values. Outputs are deterministic for a fixed seed,
 * regardless of --threads.
 */

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>

#include "wigner/concentration.hpp"
#include "wigner/gauss.hpp"
#include "wigner/scenario.hpp"

namespace {

using namespace wigner;

void add_common_options(CLI::App* cmd, ScenarioConfig& cfg) {
    cmd->add_option("--scenario", cfg.scenario,
                    "uniform-gauss|rademacher|checkerboard|block|heavy-tail|"
                    "truncation-pipeline|custom");
    cmd->add_option("--n", cfg.n_list, "matrix sizes (ascending)")
        ->delimiter(',');
    cmd->add_option("--trials", cfg.trials, "Monte Carlo trials per n");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--k-max", cfg.k_max, "largest moment order (<= 10)");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--format", cfg.format, "csv|json");
    cmd->add_option("--profile-file", cfg.profile_file,
                    "CSV variance profile (custom scenario)");
    cmd->add_option("--law", cfg.law, "entry law for the custom scenario");
    cmd->add_option("--threads", cfg.threads, "worker threads");
    cmd->add_option("--resamples", cfg.resamples, "row-sum resamples (gauss)");
    cmd->set_config("--config", "", "key=value config file; flags override");
}

int cmd_scenarios(const ScenarioConfig& cfg, bool with_sweep) {
    cfg.validate();
    const auto result = run_scenario_compute(cfg);
    const auto files = emit_scenario(result, with_sweep);
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    return 0;
}

int cmd_conditions(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const std::string ext = cfg.format == "json" ? ".json" : ".csv";
    for (int n : cfg.n_list) {
        const EnsembleSpec spec = make_scenario_spec(cfg, n);
        const ConditionReport rep =
            evaluate_conditions(spec, cfg.eps_grid, cfg.delta_grid);
        const auto path = std::filesystem::path(cfg.out_dir) /
                          (cfg.scenario + "_n" + std::to_string(n) +
                           "_conditions" + ext);
        if (cfg.format == "json")
            write_json_file(path, condition_report_to_json(rep));
        else {
            write_condition_report_csv(path, rep);
            write_sidecar(path, cfg.echo());
        }
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_moments(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) /
                      (cfg.scenario + "_moment_predictions.csv");
    CsvWriter csv(path);
    csv.row({"n", "k", "prediction", "exact", "error_bound", "trace_oracle",
             "semicircle"});
    for (int n : cfg.n_list) {
        const EnsembleSpec spec = make_scenario_spec(cfg, n);
        const bool oracle_ok = spec.law.has_exact_power_moments() && n <= 12;
        for (int k = 2; k <= cfg.k_max; k += 2) {
            std::vector<std::string> cells{std::to_string(n), std::to_string(k)};
            if (spec.law.finite_variance()) {
                const TreeSumResult pred = moment_prediction(spec.profile, k);
                cells.push_back(format_double(pred.value));
                cells.push_back(pred.exact ? "1" : "0");
                cells.push_back(format_double(pred.error_bound));
            } else {
                cells.insert(cells.end(), {"", "", ""});
            }
            cells.push_back(oracle_ok && k <= 8
                                ? format_double(exact_trace_moment(spec, k))
                                : "");
            cells.push_back(format_double(Semicircle::moment(k)));
            csv.row(cells);
        }
    }
    write_sidecar(path, cfg.echo());
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_walks(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const auto census_path =
        std::filesystem::path(cfg.out_dir) / "walks_census.csv";
    {
        CsvWriter csv(census_path);
        csv.row({"k", "t", "seq", "class", "tree_edges"});
        for (int k = 1; k <= cfg.k_max; ++k) {
            const auto buckets = enumerate_canonical_walks(k);
            for (const auto& bucket : buckets)
                for (const auto& w : bucket) {
                    const WalkClass cls = classify_walk(w);
                    std::string seq;
                    for (std::size_t i = 0; i < w.seq.size(); ++i)
                        seq += (i ? " " : "") + std::to_string(w.seq[i]);
                    std::string edges;
                    if (cls.tag == WalkTag::tree_pair)
                        for (std::size_t e = 0; e < cls.graph.edges.size(); ++e)
                            edges += (e ? " " : "") +
                                     std::to_string(cls.graph.edges[e].first) +
                                     "-" +
                                     std::to_string(cls.graph.edges[e].second);
                    csv.row({std::to_string(k), std::to_string(w.t), seq,
                             to_string(cls.tag), edges});
                }
        }
        write_sidecar(census_path, cfg.echo());
    }
    const auto dyck_path = std::filesystem::path(cfg.out_dir) / "dyck_counts.csv";
    {
        CsvWriter csv(dyck_path);
        csv.row({"k", "dyck_paths", "catalan", "tree_pair_walks"});
        for (int k = 2; k <= cfg.k_max; k += 2) {
            const auto buckets = enumerate_canonical_walks(k);
            int tree_pairs = 0;
            for (const auto& bucket : buckets)
                for (const auto& w : bucket)
                    if (classify_walk(w).tag == WalkTag::tree_pair) ++tree_pairs;
            csv.row({std::to_string(k), std::to_string(dyck_paths(k).size()),
                     format_double(Semicircle::catalan(k / 2)),
                     std::to_string(tree_pairs)});
        }
        write_sidecar(dyck_path, cfg.echo());
    }
    std::cout << "wrote " << census_path.string() << "\n"
              << "wrote " << dyck_path.string() << "\n";
    return 0;
}

int cmd_gauss(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    for (int n : cfg.n_list) {
        const EnsembleSpec spec = make_scenario_spec(cfg, n);
        const RowSumStudy study =
            corollary_lhs(spec, cfg.resamples, {}, ComplementMode::none,
                          cfg.threads);
        const auto path = std::filesystem::path(cfg.out_dir) /
                          (cfg.scenario + "_n" + std::to_string(n) +
                           "_rowsum.csv");
        CsvWriter csv(path);
        csv.row({"row", "levy", "n", "resamples"});
        for (std::size_t i = 0; i < study.rows.size(); ++i)
            csv.row({std::to_string(study.rows[i]), format_double(study.levy[i]),
                     std::to_string(n), std::to_string(cfg.resamples)});
        write_sidecar(path, cfg.echo());
        std::cout << "wrote " << path.string()
                  << "  average=" << format_double(study.average) << "\n";
    }
    return 0;
}

int cmd_concentrate(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const int n = cfg.n_list.front();

    // rank + perturbation property suites over random Hermitian pairs
    {
        const auto path =
            std::filesystem::path(cfg.out_dir) / "inequality_suite.csv";
        CsvWriter csv(path);
        csv.row({"case", "rank_lhs", "rank_rhs", "rank_ok", "pert_lhs",
                 "pert_rhs", "pert_ok"});
        int violations = 0;
        const EnsembleSpec base{VarianceProfile::uniform(n),
                                EntryLaw::gaussian(1.0), cfg.seed};
        for (int c = 0; c < cfg.trials; ++c) {
            const MatrixSample a = sample_matrix(base, 2 * c);
            const MatrixSample b = sample_matrix(base, 2 * c + 1);
            const BoundCheck rank = rank_bound_check(a, b);
            const BoundCheck pert = levy_perturbation_check(a, b);
            if (!rank.satisfied || !pert.satisfied) ++violations;
            csv.row({std::to_string(c), format_double(rank.lhs),
                     format_double(rank.rhs), rank.satisfied ? "1" : "0",
                     format_double(pert.lhs), format_double(pert.rhs),
                     pert.satisfied ? "1" : "0"});
        }
        write_sidecar(path, cfg.echo());
        std::cout << "wrote " << path.string() << "  violations=" << violations
                  << "\n";
        if (violations > 0) return 1;
    }

    // truncation survival and spectral concentration for the scenario
    {
        const EnsembleSpec spec = make_scenario_spec(cfg, n);
        const double eta = 0.5 * std::pow(static_cast<double>(n), -0.25);
        const auto rows = truncation_survival_experiment(
            spec, std::max(eta, 0.05), {0.05, 0.1, 0.2, 0.5}, cfg.trials);
        const auto path =
            std::filesystem::path(cfg.out_dir) / "truncation_survival.csv";
        CsvWriter csv(path);
        csv.row({"eps", "empirical", "bound", "mc_se", "satisfied"});
        for (const auto& r : rows)
            csv.row({format_double(r.eps), format_double(r.empirical),
                     format_double(r.bound), format_double(r.mc_se),
                     r.satisfied ? "1" : "0"});
        write_sidecar(path, cfg.echo());
        std::cout << "wrote " << path.string() << "\n";
    }
    {
        const EnsembleSpec spec = make_scenario_spec(cfg, n);
        const PiecewiseLinear ramp{{-0.1, 0.1}, {0.0, 1.0}};
        const auto result = spectral_concentration_experiment(
            spec, ramp, {0.05, 0.1, 0.2}, cfg.trials, cfg.threads);
        const auto path =
            std::filesystem::path(cfg.out_dir) / "spectral_concentration.csv";
        CsvWriter csv(path);
        csv.row({"t", "empirical", "bound", "mc_se", "satisfied"});
        for (const auto& r : result.rows)
            csv.row({format_double(r.t), format_double(r.empirical),
                     format_double(r.bound), format_double(r.mc_se),
                     r.satisfied ? "1" : "0"});
        write_sidecar(path, cfg.echo());
        std::cout << "wrote " << path.string()
                  << "  dk_single_vs_mean=" << format_double(result.dk_single_vs_mean)
                  << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner-ensemble spectral statistics laboratory"};
    app.require_subcommand(1);

    ScenarioConfig cfg;
    std::string mode;
    for (const char* name : {"scenarios", "simulate", "conditions", "moments",
                             "walks", "gauss", "concentrate"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common_options(sub, cfg);
        sub->callback([&mode, name] { mode = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (mode == "scenarios") return cmd_scenarios(cfg, true);
        if (mode == "simulate") return cmd_scenarios(cfg, false);
        if (mode == "conditions") return cmd_conditions(cfg);
        if (mode == "moments") return cmd_moments(cfg);
        if (mode == "walks") return cmd_walks(cfg);
        if (mode == "gauss") return cmd_gauss(cfg);
        if (mode == "concentrate") return cmd_concentrate(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
