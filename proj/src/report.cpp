#include "bbq/report.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bbq/errors.hpp"
#include "bbq/metrics.hpp"

namespace bbq {

using nlohmann::json;

std::string_view to_string(SweepAxis axis) {
    return axis == SweepAxis::raters ? "raters" : "comparisons_per_rater";
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "raters") return SweepAxis::raters;
    if (name == "comparisons_per_rater" || name == "comparisons") {
        return SweepAxis::comparisons_per_rater;
    }
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

namespace {

json priors_json(const Priors& p) {
    return {{"a", p.a}, {"b", p.b}, {"alpha", p.alpha}, {"beta", p.beta}};
}

json ranking_labels(const Ranking& ranking, const ComparisonDataset& data) {
    json out = json::array();
    for (auto i : ranking.order()) out.push_back(data.item_labels().at(i));
    return out;
}

}  // namespace

json fit_report_json(const ComparisonDataset& data, const FitResult& fit, const Priors& priors,
                     const FitReportOptions& options) {
    const auto K = data.num_items();
    std::vector<double> elo(K);
    for (std::size_t i = 0; i < K; ++i) elo[i] = elo_from_skill(fit.params.lambda[i], options.elo_scale);
    const double mean_elo = std::accumulate(elo.begin(), elo.end(), 0.0) / static_cast<double>(K);

    std::optional<PosteriorSummary> summary;
    if (fit.converged) summary = posterior_summary(data, fit, priors, options.level, options.elo_scale);

    const auto ranking = Ranking::from_scores(fit.params.lambda);
    json items = json::array();
    for (std::size_t rank = 0; rank < K; ++rank) {
        const auto i = ranking.order()[rank];
        json item = {
            {"rank", rank + 1},
            {"label", data.item_labels()[i]},
            {"index", i},
            {"lambda", fit.params.lambda[i]},
            {"elo", elo[i] - mean_elo},
            {"n_comparisons", data.item_total(i)},
            {"observed", data.item_total(i) > 0},
        };
        if (summary) {
            const auto& post = summary->items[i];
            item["elo_interval"] = {post.interval.low - mean_elo, post.interval.high - mean_elo};
            item["posterior_shape"] = post.shape;
            item["posterior_rate"] = post.rate;
        } else {
            item["elo_interval"] = nullptr;
        }
        items.push_back(std::move(item));
    }

    const auto agreement = rater_agreement(data, ranking);
    json raters = json::array();
    for (std::size_t r = 0; r < data.num_raters(); ++r) {
        raters.push_back({
            {"label", data.rater_labels()[r]},
            {"quality", fit.params.q[r]},
            {"n_comparisons", data.rater_total(r)},
            {"agreement", agreement[r] ? json(*agreement[r]) : json(nullptr)},
        });
    }

    return {
        {"schema_version", kSchemaVersion},
        {"kind", "fit"},
        {"solver", to_string(fit.solver)},
        {"priors", priors_json(priors)},
        {"elo_scale", options.elo_scale},
        {"elo_centering", "mean"},
        {"agreement_reference", to_string(fit.solver)},
        {"level", options.level},
        {"iterations", fit.iterations},
        {"converged", fit.converged},
        {"log_posterior_final",
         fit.log_posterior_trace.empty() ? json(nullptr) : json(fit.log_posterior_trace.back())},
        {"items", std::move(items)},
        {"raters", std::move(raters)},
    };
}

json bootstrap_report_json(const BootstrapReport& report, const ComparisonDataset& data) {
    return {
        {"schema_version", kSchemaVersion},
        {"kind", "bootstrap"},
        {"solver", to_string(report.solver)},
        {"seed", report.seed},
        {"n_resamples", report.n_resamples},
        {"top1_percent", report.top1_percent},
        {"kendall_tau_mean", report.kendall_tau_mean},
        {"kendall_tau_quantiles",
         {{"0.05", report.kendall_tau_q05},
          {"0.50", report.kendall_tau_q50},
          {"0.95", report.kendall_tau_q95}}},
        {"excluded_resamples", report.excluded_resamples},
        {"reference_ranking", ranking_labels(report.reference_ranking, data)},
    };
}

json calibration_json(const CalibrationResult& result, const CalibrationConfig& config,
                      Solver solver) {
    return {
        {"schema_version", kSchemaVersion},
        {"kind", "calibrate"},
        {"solver", to_string(solver)},
        {"seed", config.seed},
        {"n_trials", config.n_trials},
        {"n_raters", config.n_raters},
        {"comparisons_per_rater", config.comparisons_per_rater},
        {"level", config.level},
        {"error_rate", result.error_rate_percent},
        {"rejections", result.rejections},
        {"completed_trials", result.completed_trials},
        {"excluded_trials", result.excluded_trials},
    };
}

json sweep_json(std::span<const SweepPoint> points, SweepAxis axis, const ComparisonDataset& data) {
    json out = json::array();
    for (const auto& p : points) {
        auto report = bootstrap_report_json(p.report, data);
        report["kind"] = "sweep_point";
        report["axis"] = to_string(axis);
        report["grid_value"] = p.grid_value;
        out.push_back(std::move(report));
    }
    return out;
}

json simulation_truth_json(const SimulationConfig& config, const ComparisonDataset& data) {
    json items = json::array();
    for (std::size_t i = 0; i < data.num_items(); ++i) {
        items.push_back({{"label", data.item_labels()[i]}, {"lambda", config.true_skills[i]}});
    }
    json raters = json::array();
    for (std::size_t r = 0; r < data.num_raters(); ++r) {
        raters.push_back({{"label", data.rater_labels()[r]}, {"quality", config.rater_qualities[r]}});
    }
    return {
        {"schema_version", kSchemaVersion},
        {"kind", "simulation_truth"},
        {"seed", config.seed},
        {"comparisons_per_rater", config.comparisons_per_rater},
        {"items", std::move(items)},
        {"raters", std::move(raters)},
    };
}

std::string render_ranking_table(const json& report) {
    if (!report.is_object() || report.value("kind", "") != "fit" || !report.contains("items")) {
        throw DataError("not a fit report");
    }
    std::size_t label_width = 4;
    for (const auto& item : report["items"]) {
        label_width = std::max(label_width, item.at("label").get<std::string>().size());
    }
    const double level = report.value("level", 0.99);

    std::ostringstream out;
    out << "solver: " << report.value("solver", "?") << "   iterations: "
        << report.value("iterations", 0)
        << "   converged: " << (report.value("converged", false) ? "yes" : "no") << '\n';
    std::ostringstream interval_head;
    interval_head << std::setprecision(3) << level * 100.0 << "% interval";
    out << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(label_width) + 2)
        << "item" << std::right << std::setw(10) << "elo" << "  " << std::setw(23)
        << interval_head.str() << std::setw(14) << "lambda" << std::setw(8) << "n" << '\n';
    out << std::fixed;
    for (const auto& item : report["items"]) {
        out << std::left << std::setw(6) << item.at("rank").get<int>()
            << std::setw(static_cast<int>(label_width) + 2) << item.at("label").get<std::string>()
            << std::right << std::setprecision(1) << std::setw(10) << item.at("elo").get<double>()
            << "  ";
        const auto& iv = item.at("elo_interval");
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(1);
        if (iv.is_array() && iv[0].is_number() && iv[1].is_number()) {
            cell << '[' << iv[0].get<double>() << ", " << iv[1].get<double>() << ']';
        } else {
            cell << "-";
        }
        out << std::setw(23) << cell.str() << std::setprecision(4) << std::setw(14)
            << item.at("lambda").get<double>() << std::setw(8)
            << item.at("n_comparisons").get<std::uint64_t>() << '\n';
    }
    return out.str();
}

}  // namespace bbq
