#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nonrecip/analysis.hpp"
#include "nonrecip/oracle.hpp"
#include "nonrecip/potentials.hpp"

namespace nonrecip::cli {

enum class Task { scan, points, verify };
enum class EngineChoice { analytic, oracle, both };
enum class OutputFormat { csv, json };

struct RunConfig {
  PotentialSpec spec;
  Task task = Task::scan;
  double eps_min = 0.0;
  double eps_max = 1.0;
  std::size_t grid_n = 2000;
  EngineChoice engine = EngineChoice::analytic;
  OutputFormat format = OutputFormat::csv;
  IntegrationConfig integration;
  // Overrides the finder tolerance (points) or the agreement tolerance (verify).
  std::optional<double> tol;
};

/// Raw command-line values before interpretation.
struct CliOptions {
  std::string task;
  std::string model;
  std::optional<std::string> v, mu, lambda, a, window, config;
  std::optional<std::size_t> n;
  std::string engine = "analytic";
  std::string format = "csv";
  std::optional<double> half_width, step, tol;
  std::optional<std::string> out;
};

/// "3", "-6.1", "20i", "0+20i", "-i", "3+2i", "2.01i-6.1". ParameterError
/// on anything else.
Complex parse_complex(std::string_view text);

/// Radians, or a multiple of pi: "0.6283", "pi/5", "2pi/5", "2*pi/5", "-pi".
double parse_angle(std::string_view text);

/// "lo:hi" with lo < hi.
std::pair<double, double> parse_window(std::string_view text);

/// Builds and validates a RunConfig; reads --config when given. Throws
/// ParameterError (or DomainError) with a user-facing message.
RunConfig make_run_config(const CliOptions& options);

/// Tolerance used by verify when none is given: 1e-12 for delta combs,
/// 1e-4 for the integrated Morse models.
double default_verify_tolerance(const PotentialSpec& spec);

/// Executes the task and writes records to out. Returns 0 on success, 1 when
/// verify finds a disagreement above tolerance, 2 on errors (reported on err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: parses args (without the program name), honours --out,
/// and dispatches to run.
int run_command_line(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err);

}  // namespace nonrecip::cli
