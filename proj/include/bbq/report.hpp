#pragma once

// JSON report schemas and the human-readable ranking table.

#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "bbq/dataset.hpp"
#include "bbq/em.hpp"
#include "bbq/model.hpp"
#include "bbq/resampling.hpp"
#include "bbq/simulation.hpp"
#include "bbq/uncertainty.hpp"

namespace bbq {

inline constexpr int kSchemaVersion = 1;

struct FitReportOptions {
    double level = 0.99;
    double elo_scale = kDefaultEloScale;
};

// Elo values are centred on the mean item Elo; raw lambda is included.
// Intervals are null when the fit did not converge.
nlohmann::json fit_report_json(const ComparisonDataset& data, const FitResult& fit,
                               const Priors& priors, const FitReportOptions& options);

nlohmann::json bootstrap_report_json(const BootstrapReport& report,
                                     const ComparisonDataset& data);

nlohmann::json calibration_json(const CalibrationResult& result, const CalibrationConfig& config,
                                Solver solver);

nlohmann::json sweep_json(std::span<const SweepPoint> points, SweepAxis axis,
                          const ComparisonDataset& data);

nlohmann::json simulation_truth_json(const SimulationConfig& config,
                                     const ComparisonDataset& data);

// Renders a fit report as an aligned ranking table.
std::string render_ranking_table(const nlohmann::json& fit_report);

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

}  // namespace bbq
