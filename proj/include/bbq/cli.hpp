#pragma once

// Command-line front end: argument parsing, dispatch and exit codes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bbq/em.hpp"
#include "bbq/model.hpp"
#include "bbq/resampling.hpp"
#include "bbq/simulation.hpp"

namespace bbq::cli {

enum class Command { fit, bootstrap, simulate, calibrate, sweep, report };

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kNumericalFailure = 3,
};

struct RunConfig {
    Command command = Command::fit;
    std::string input_path;
    std::string output_path;  // empty = standard output
    std::string truth_path;   // simulate only; defaults to <output>.truth.json
    Solver solver = Solver::bbq;
    Priors priors;
    FitConfig fit;
    double level = 0.99;
    BootstrapConfig boot;
    SimulationConfig sim;
    CalibrationConfig calibration;
    SweepAxis sweep_axis = SweepAxis::raters;
    SweepMode sweep_mode = SweepMode::redraw;
    std::vector<int> sweep_grid;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

struct HelpRequested {
    std::string text;
};

// Parses argv-style arguments (args[0] is the program name). Throws
// CLI::ParseError subclasses or std::invalid_argument on usage errors and
// HelpRequested for --help.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes a command, writing artifacts to files or `out`. Throws on failure.
void run(const RunConfig& config, std::ostream& out);

// parse_args + run with exit-code mapping; failures print one JSON line
// {"error": <category>, "message": <text>} to `err`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbq::cli
