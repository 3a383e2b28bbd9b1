#include "bbq/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbq/csv.hpp"
#include "bbq/errors.hpp"
#include "bbq/report.hpp"
#include "bbq/rng.hpp"

namespace bbq::cli {

namespace {

struct SimulateOptions {
    int items = 10;
    std::vector<double> skills;
    double skill_decades = 1.0;
    int raters = 64;
    std::vector<double> qualities;
    double quality = -1.0;
    std::vector<double> quality_beta{10.0, 2.0};
};

void resolve_simulation(const SimulateOptions& opts, RunConfig& cfg) {
    if (!opts.skills.empty()) {
        cfg.sim.true_skills = opts.skills;
    } else {
        if (opts.items < 2) throw std::invalid_argument("--items must be >= 2");
        cfg.sim.true_skills = log_spaced_skills(static_cast<std::size_t>(opts.items), opts.skill_decades);
    }
    if (!opts.qualities.empty()) {
        cfg.sim.rater_qualities = opts.qualities;
    } else {
        if (opts.raters < 1) throw std::invalid_argument("--raters must be >= 1");
        const auto n = static_cast<std::size_t>(opts.raters);
        if (opts.quality >= 0.0) {
            cfg.sim.rater_qualities.assign(n, opts.quality);
        } else {
            if (opts.quality_beta.size() != 2) {
                throw std::invalid_argument("--quality-beta takes two values ALPHA,BETA");
            }
            cfg.sim.rater_qualities = draw_beta(n, opts.quality_beta[0], opts.quality_beta[1],
                                                derive_seed(cfg.seed, 0xB37AULL));
        }
    }
    cfg.sim.seed = cfg.seed;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, std::ostream& out, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write '" + path + "'");
    file << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    SimulateOptions sim;
    std::string solver = "bbq";
    std::string axis = "raters";
    std::string mode = "redraw";

    CLI::App app{"Rank items from noisy pairwise comparisons with rater-quality EM", "bbq"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--solver", solver, "bbq or bayes_bt")->capture_default_str();
    app.add_option("--prior-a", cfg.priors.a, "Gamma shape of the skill prior")->capture_default_str();
    app.add_option("--prior-b", cfg.priors.b, "Gamma rate of the skill prior")->capture_default_str();
    app.add_option("--prior-alpha", cfg.priors.alpha, "Beta alpha of the quality prior")
        ->capture_default_str();
    app.add_option("--prior-beta", cfg.priors.beta, "Beta beta of the quality prior")
        ->capture_default_str();
    app.add_option("--elo-scale", cfg.fit.elo_scale, "Elo points per unit of log skill")
        ->capture_default_str();
    app.add_option("--elo-tol", cfg.fit.elo_tolerance, "Convergence: max Elo change per iteration")
        ->capture_default_str();
    app.add_option("--max-iter", cfg.fit.max_iterations, "Iteration cap")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("-o,--output", cfg.output_path, "Output file (default: stdout)");

    auto* fit = app.add_subcommand("fit", "Fit a CSV dataset and emit the ranking JSON");
    fit->add_option("input", cfg.input_path, "Comparison CSV")->required();
    fit->add_option("--level", cfg.level, "Credible level")->capture_default_str();

    auto* boot = app.add_subcommand("bootstrap", "Rater-level bootstrap stability report");
    boot->add_option("input", cfg.input_path, "Comparison CSV")->required();
    boot->add_option("--resamples", cfg.boot.n_resamples, "Bootstrap resamples")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic comparison CSV");
    simulate->add_option("--items", sim.items, "Number of items (log-spaced skills)")
        ->capture_default_str();
    simulate->add_option("--skills", sim.skills, "Explicit skills, comma separated")->delimiter(',');
    simulate->add_option("--skill-decades", sim.skill_decades, "Skill spread in decades")
        ->capture_default_str();
    simulate->add_option("--raters", sim.raters, "Number of raters")->capture_default_str();
    simulate->add_option("--quality", sim.quality, "Same quality for every rater");
    simulate->add_option("--qualities", sim.qualities, "Explicit qualities, comma separated")
        ->delimiter(',');
    simulate->add_option("--quality-beta", sim.quality_beta, "Draw qualities from Beta(A,B)")
        ->delimiter(',')
        ->expected(2);
    simulate->add_option("--comparisons", cfg.sim.comparisons_per_rater, "Comparisons per rater")
        ->capture_default_str();
    simulate->add_option("--truth", cfg.truth_path, "Ground-truth JSON sidecar path");

    auto* calibrate = app.add_subcommand("calibrate", "Type-I error of the interval test");
    calibrate->add_option("--trials", cfg.calibration.n_trials, "Trials")->capture_default_str();
    calibrate->add_option("--raters", cfg.calibration.n_raters, "Raters per trial")
        ->capture_default_str();
    calibrate->add_option("--comparisons", cfg.calibration.comparisons_per_rater,
                          "Comparisons per rater")
        ->capture_default_str();
    calibrate->add_option("--level", cfg.calibration.level, "Credible level")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Bootstrap metrics across rater / comparison counts");
    sweep->add_option("input", cfg.input_path, "Comparison CSV")->required();
    sweep->add_option("--axis", axis, "raters or comparisons_per_rater")->capture_default_str();
    sweep->add_option("--grid", cfg.sweep_grid, "Grid values, comma separated")
        ->delimiter(',')
        ->required();
    sweep->add_option("--mode", mode, "redraw or fixed rater subsets")->capture_default_str();
    sweep->add_option("--resamples", cfg.boot.n_resamples, "Bootstrap resamples per grid point")
        ->capture_default_str();

    auto* report = app.add_subcommand("report", "Render a fit JSON as a ranking table");
    report->add_option("input", cfg.input_path, "Fit JSON")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = &app;
        for (auto* sub : app.get_subcommands()) target = sub;
        throw HelpRequested{target->help()};
    }

    if (fit->parsed()) cfg.command = Command::fit;
    if (boot->parsed()) cfg.command = Command::bootstrap;
    if (simulate->parsed()) cfg.command = Command::simulate;
    if (calibrate->parsed()) cfg.command = Command::calibrate;
    if (sweep->parsed()) cfg.command = Command::sweep;
    if (report->parsed()) cfg.command = Command::report;

    cfg.solver = parse_solver(solver);
    cfg.sweep_axis = parse_sweep_axis(axis);
    if (mode == "redraw") {
        cfg.sweep_mode = SweepMode::redraw;
    } else if (mode == "fixed") {
        cfg.sweep_mode = SweepMode::fixed;
    } else {
        throw std::invalid_argument("unknown sweep mode '" + mode + "'");
    }
    cfg.boot.seed = cfg.seed;
    cfg.boot.threads = cfg.threads;
    cfg.calibration.seed = cfg.seed;
    cfg.calibration.threads = cfg.threads;
    if (cfg.command == Command::simulate) resolve_simulation(sim, cfg);
    return cfg;
}

void run(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::fit: {
            const auto data = parse_comparisons_csv(cfg.input_path);
            const auto result = bbq::fit(cfg.solver, data, cfg.priors, cfg.fit);
            const auto report =
                fit_report_json(data, result, cfg.priors, {cfg.level, cfg.fit.elo_scale});
            emit(cfg.output_path, out, dump(report));
            return;
        }
        case Command::bootstrap: {
            const auto data = parse_comparisons_csv(cfg.input_path);
            const auto report = stability_report(data, cfg.solver, cfg.boot, cfg.fit, cfg.priors);
            emit(cfg.output_path, out, dump(bootstrap_report_json(report, data)));
            return;
        }
        case Command::simulate: {
            const auto data = simulate_comparisons(cfg.sim);
            std::ostringstream csv;
            write_comparisons_csv(data, csv);
            emit(cfg.output_path, out, csv.str());
            std::string truth = cfg.truth_path;
            if (truth.empty() && !cfg.output_path.empty()) truth = cfg.output_path + ".truth.json";
            if (!truth.empty()) emit(truth, out, dump(simulation_truth_json(cfg.sim, data)));
            return;
        }
        case Command::calibrate: {
            const auto result =
                type1_error_experiment(cfg.calibration, cfg.solver, cfg.priors, cfg.fit);
            emit(cfg.output_path, out, dump(calibration_json(result, cfg.calibration, cfg.solver)));
            return;
        }
        case Command::sweep: {
            const auto data = parse_comparisons_csv(cfg.input_path);
            const auto points = scaling_sweep(data, cfg.sweep_axis, cfg.sweep_grid, cfg.solver,
                                              cfg.boot, cfg.fit, cfg.priors, cfg.sweep_mode);
            auto j = sweep_json(points, cfg.sweep_axis, data);
            emit(cfg.output_path, out, dump({{"schema_version", kSchemaVersion},
                                             {"kind", "sweep"},
                                             {"points", std::move(j)}}));
            return;
        }
        case Command::report: {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(slurp(cfg.input_path));
            } catch (const nlohmann::json::exception& e) {
                throw DataError(std::string("invalid fit JSON: ") + e.what());
            }
            emit(cfg.output_path, out, render_ranking_table(j));
            return;
        }
    }
}

namespace {

int fail(std::ostream& err, int code, const char* category, const std::string& message) {
    std::string flat = message;
    for (auto& ch : flat) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    err << nlohmann::json{{"error", category}, {"message", flat}}.dump() << '\n';
    return code;
}

}  // namespace

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& help) {
        out << help.text;
        return kSuccess;
    } catch (const CLI::Success&) {
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        return fail(err, kUsageError, "usage", e.what());
    } catch (const std::exception& e) {
        return fail(err, kUsageError, "usage", e.what());
    }

    try {
        run(cfg, out);
    } catch (const DataError& e) {
        return fail(err, kDataError, "data", e.what());
    } catch (const NumericalError& e) {
        return fail(err, kNumericalFailure, "numerical", e.what());
    } catch (const std::domain_error& e) {
        return fail(err, kNumericalFailure, "numerical", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(err, kUsageError, "usage", e.what());
    } catch (const std::exception& e) {
        return fail(err, kNumericalFailure, "numerical", e.what());
    }
    return kSuccess;
}

}  // namespace bbq::cli
