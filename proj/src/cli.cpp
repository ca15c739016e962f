#include "nonrecip/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <ostream>

#include "nonrecip/errors.hpp"
#include "nonrecip/potential_json.hpp"

namespace nonrecip::cli {
namespace {

using nlohmann::json;

std::string trimmed(std::string_view text) {
  std::string out;
  for (const char c : text) {
    if (c != ' ' && c != '\t') out.push_back(c);
  }
  return out;
}

std::optional<double> to_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

double require_double(std::string_view text, const char* what) {
  const auto v = to_double(text);
  if (!v) throw ParameterError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  return *v;
}

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct PointRecord {
  SpecialPoint point;
  std::string engine;
};

void write_scan(const std::vector<ScanRow>& rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "eps,R_l,R_r,T_l,T_r,gap,defect_l,defect_r,at_pole\n";
    for (const ScanRow& r : rows) {
      out << number(r.eps) << ',' << number(r.R_l) << ',' << number(r.R_r) << ','
          << number(r.T_l) << ',' << number(r.T_r) << ',' << number(r.gap) << ','
          << number(r.defect_l) << ',' << number(r.defect_r) << ',' << (r.at_pole ? 1 : 0)
          << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const ScanRow& r : rows) {
    arr.push_back({{"eps", r.eps},
                   {"R_l", r.R_l},
                   {"R_r", r.R_r},
                   {"T_l", r.T_l},
                   {"T_r", r.T_r},
                   {"gap", r.gap},
                   {"defect_l", r.defect_l},
                   {"defect_r", r.defect_r},
                   {"raw_defect_l", r.raw_defect_l},
                   {"raw_defect_r", r.raw_defect_r},
                   {"at_pole", r.at_pole}});
  }
  out << arr.dump(2) << '\n';
}

void write_points(const std::vector<PointRecord>& points,
                  const std::vector<std::string>& identically_reciprocal, OutputFormat format,
                  std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "kind,eps,residual,multiplicity_hint,engine\n";
    for (const std::string& engine : identically_reciprocal) {
      out << "identically_reciprocal,nan,nan,0," << engine << '\n';
    }
    for (const PointRecord& p : points) {
      out << to_string(p.point.kind) << ',' << number(p.point.eps) << ','
          << number(p.point.residual) << ',' << p.point.multiplicity_hint << ',' << p.engine
          << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const PointRecord& p : points) {
    arr.push_back({{"kind", to_string(p.point.kind)},
                   {"eps", p.point.eps},
                   {"residual", p.point.residual},
                   {"multiplicity_hint", p.point.multiplicity_hint},
                   {"engine", p.engine}});
  }
  out << json{{"identically_reciprocal", identically_reciprocal}, {"points", arr}}.dump(2)
      << '\n';
}

std::vector<Engine> engines_of(EngineChoice choice) {
  switch (choice) {
    case EngineChoice::analytic:
      return {Engine::analytic};
    case EngineChoice::oracle:
      return {Engine::oracle};
    case EngineChoice::both:
      return {Engine::analytic, Engine::oracle};
  }
  return {};
}

int run_points(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<PointRecord> points;
  std::vector<std::string> identical;
  const double recip_tol = config.tol.value_or(1e-12);
  const auto add = [&](const ReciprocitySearch& search, Engine engine) {
    if (search.identically_reciprocal) identical.push_back(to_string(engine));
    for (const SpecialPoint& p : search.points) points.push_back({p, to_string(engine)});
  };
  if (config.engine == EngineChoice::both) {
    const CheckedReciprocitySearch checked = find_reciprocity_points_checked(
        config.spec, config.eps_min, config.eps_max, config.grid_n, recip_tol,
        config.integration);
    add(checked.analytic, Engine::analytic);
    add(checked.oracle, Engine::oracle);
    if (!checked.counts_agree) {
      err << "warning: analytic and oracle reciprocity counts differ at grid " << checked.grid_n
          << '\n';
    }
  } else {
    const Engine engine = engines_of(config.engine).front();
    add(find_reciprocity_points(config.spec, config.eps_min, config.eps_max, config.grid_n,
                                recip_tol, engine, config.integration),
        engine);
  }
  const auto* comb = std::get_if<DeltaCombParams>(&config.spec);
  if (comb && as_double_delta(*comb)) {
    for (const SpecialPoint& p : find_reflectionless_points(config.spec, config.eps_min,
                                                            config.eps_max,
                                                            config.tol.value_or(1e-10))) {
      points.push_back({p, "analytic"});
    }
    for (const SpecialPoint& p :
         find_spectral_singularities(config.spec, config.eps_min, config.eps_max,
                                     config.tol.value_or(1e-8), config.grid_n)) {
      points.push_back({p, "analytic"});
    }
  }
  std::stable_sort(points.begin(), points.end(), [](const PointRecord& a, const PointRecord& b) {
    return a.point.eps < b.point.eps;
  });
  write_points(points, identical, config.format, out);
  return 0;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  const double tol = config.tol.value_or(default_verify_tolerance(config.spec));
  const std::vector<double> grid = energy_grid(config.eps_min, config.eps_max, config.grid_n);
  check_window(config.spec, config.eps_min, config.eps_max, config.grid_n);

  struct Sample {
    std::array<double, 4> diff{};
    double truncation = 0.0;
    bool pole = false;
  };
  std::vector<Sample> samples(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const ScatteringAmplitudes a = analytic_amplitudes(config.spec, grid[i]);
    const OracleResult o = oracle_amplitudes(config.spec, grid[i], config.integration);
    samples[i].pole = a.at_pole || o.amplitudes.at_pole;
    samples[i].truncation = o.estimated_truncation_error;
    if (!samples[i].pole) samples[i].diff = amplitude_disagreement(a, o.amplitudes);
  });

  static const std::array<const char*, 4> names{"r_l", "r_r", "t_l", "t_r"};
  std::array<double, 4> worst{};
  std::array<double, 4> worst_eps{};
  std::size_t poles = 0;
  double truncation = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (samples[i].pole) {
      ++poles;
      continue;
    }
    truncation = std::max(truncation, samples[i].truncation);
    for (std::size_t j = 0; j < 4; ++j) {
      if (!(samples[i].diff[j] <= worst[j])) {
        worst[j] = samples[i].diff[j];
        worst_eps[j] = grid[i];
      }
    }
  }
  bool pass = poles < grid.size();
  for (const double w : worst) pass = pass && w <= tol;

  if (config.format == OutputFormat::csv) {
    out << "amplitude,max_rel_diff,eps_at_max,tolerance,pass\n";
    for (std::size_t j = 0; j < 4; ++j) {
      out << names[j] << ',' << number(worst[j]) << ',' << number(worst_eps[j]) << ','
          << number(tol) << ',' << (worst[j] <= tol ? 1 : 0) << '\n';
    }
  } else {
    json rows = json::array();
    for (std::size_t j = 0; j < 4; ++j) {
      rows.push_back({{"amplitude", names[j]},
                      {"max_rel_diff", worst[j]},
                      {"eps_at_max", worst_eps[j]},
                      {"tolerance", tol},
                      {"pass", worst[j] <= tol}});
    }
    out << json{{"amplitudes", rows},
                {"pole_rows_excluded", poles},
                {"max_truncation_error", truncation},
                {"pass", pass}}
               .dump(2)
        << '\n';
  }
  return pass ? 0 : 1;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string s = trimmed(text);
  if (s.empty()) throw ParameterError("empty complex number");
  // Split into signed terms at + or - that do not belong to an exponent.
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));
  if (terms.size() > 2) throw ParameterError("cannot parse complex number '" + s + "'");

  std::optional<double> re, im;
  for (const std::string& term : terms) {
    if (!term.empty() && term.back() == 'i') {
      const std::string coeff = term.substr(0, term.size() - 1);
      double value = 0.0;
      if (coeff.empty() || coeff == "+") {
        value = 1.0;
      } else if (coeff == "-") {
        value = -1.0;
      } else {
        const auto v = to_double(coeff);
        if (!v) throw ParameterError("cannot parse complex number '" + s + "'");
        value = *v;
      }
      if (im) throw ParameterError("two imaginary parts in '" + s + "'");
      im = value;
    } else {
      const auto v = to_double(term);
      if (!v || re) throw ParameterError("cannot parse complex number '" + s + "'");
      re = *v;
    }
  }
  return {re.value_or(0.0), im.value_or(0.0)};
}

double parse_angle(std::string_view text) {
  std::string s = trimmed(text);
  const std::size_t pi_at = s.find("pi");
  if (pi_at == std::string::npos) return require_double(s, "angle");
  std::string coeff = s.substr(0, pi_at);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  double factor = 1.0;
  if (coeff == "-") {
    factor = -1.0;
  } else if (!coeff.empty() && coeff != "+") {
    factor = require_double(coeff, "angle");
  }
  const std::string rest = s.substr(pi_at + 2);
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ParameterError("cannot parse angle '" + s + "'");
    divisor = require_double(std::string_view(rest).substr(1), "angle");
    if (divisor == 0.0) throw ParameterError("angle divides by zero");
  }
  return factor * std::numbers::pi / divisor;
}

std::pair<double, double> parse_window(std::string_view text) {
  const std::string s = trimmed(text);
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos) throw ParameterError("window must be lo:hi, got '" + s + "'");
  const double lo = require_double(std::string_view(s).substr(0, colon), "window");
  const double hi = require_double(std::string_view(s).substr(colon + 1), "window");
  if (!(lo < hi)) throw ParameterError("window needs lo < hi");
  return {lo, hi};
}

double default_verify_tolerance(const PotentialSpec& spec) {
  return std::holds_alternative<DeltaCombParams>(spec) ? 1e-12 : 1e-4;
}

RunConfig make_run_config(const CliOptions& o) {
  RunConfig cfg;
  if (o.task == "scan") {
    cfg.task = Task::scan;
  } else if (o.task == "points") {
    cfg.task = Task::points;
  } else if (o.task == "verify") {
    cfg.task = Task::verify;
  } else {
    throw ParameterError("unknown task '" + o.task + "'");
  }

  if (o.config) {
    if (!o.model.empty()) throw ParameterError("use either --config or --model, not both");
    std::ifstream in(*o.config);
    if (!in) throw ParameterError("cannot open config file '" + *o.config + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ParameterError(std::string("config file: ") + e.what());
    }
    cfg.spec = potential_from_json(j);
  } else {
    const auto need = [](const std::optional<std::string>& value, const char* flag) {
      if (!value) throw ParameterError(std::string("missing ") + flag);
      return *value;
    };
    if (o.model == "morse_scattering") {
      cfg.spec = MorseScatteringParams{require_double(need(o.v, "--v"), "--v"),
                                       parse_angle(need(o.mu, "--mu"))};
    } else if (o.model == "morse_penetrating") {
      cfg.spec = MorsePenetratingParams{require_double(need(o.v, "--v"), "--v"),
                                        parse_angle(need(o.mu, "--mu"))};
    } else if (o.model == "double_delta") {
      cfg.spec = make_double_delta(parse_complex(need(o.lambda, "--lambda")),
                                   require_double(need(o.a, "--a"), "--a"));
    } else if (o.model.empty()) {
      throw ParameterError("missing --model or --config");
    } else {
      throw ParameterError("unknown model '" + o.model +
                           "' (delta_comb is read from --config)");
    }
  }
  validate(cfg.spec);

  if (o.window) {
    std::tie(cfg.eps_min, cfg.eps_max) = parse_window(*o.window);
  } else if (std::holds_alternative<DeltaCombParams>(cfg.spec)) {
    cfg.eps_min = 0.0;
    cfg.eps_max = 50.0;
  } else {
    cfg.eps_min = 0.05;
    cfg.eps_max = 10.0;
  }
  cfg.grid_n = o.n.value_or(2000);
  if (cfg.grid_n < 2) throw ParameterError("--n must be at least 2");

  if (o.engine == "analytic") {
    cfg.engine = EngineChoice::analytic;
  } else if (o.engine == "oracle") {
    cfg.engine = EngineChoice::oracle;
  } else if (o.engine == "both") {
    cfg.engine = EngineChoice::both;
  } else {
    throw ParameterError("unknown engine '" + o.engine + "'");
  }
  if (cfg.task == Task::scan && cfg.engine == EngineChoice::both) {
    throw ParameterError("scan takes a single engine (analytic or oracle)");
  }
  if (o.format == "csv") {
    cfg.format = OutputFormat::csv;
  } else if (o.format == "json") {
    cfg.format = OutputFormat::json;
  } else {
    throw ParameterError("unknown format '" + o.format + "'");
  }

  if (o.half_width) {
    if (!(*o.half_width > 0.0)) throw ParameterError("--L must be positive");
    cfg.integration.half_width = *o.half_width;
  }
  if (o.step) {
    if (!(*o.step > 0.0)) throw ParameterError("--step must be positive");
    cfg.integration.step = *o.step;
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ParameterError("--tol must be positive");
    cfg.tol = o.tol;
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.task) {
      case Task::scan: {
        const Engine engine = engines_of(config.engine).front();
        write_scan(scan(config.spec, config.eps_min, config.eps_max, config.grid_n, engine,
                        config.integration),
                   config.format, out);
        return 0;
      }
      case Task::points:
        return run_points(config, out, err);
      case Task::verify:
        return run_verify(config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
  CLI::App app{"Reflection and transmission of 1D complex potentials", "nonrecip"};
  CliOptions o;
  app.add_option("task", o.task, "scan, points or verify")
      ->required()
      ->check(CLI::IsMember({"scan", "points", "verify"}));
  app.add_option("--model", o.model, "morse_scattering, morse_penetrating or double_delta");
  app.add_option("--v", o.v, "Morse strength v");
  app.add_option("--mu", o.mu, "Morse mu in radians, or pi/5 style");
  app.add_option("--lambda", o.lambda, "double-delta strength, e.g. 0+20i or 2.01i-6.1");
  app.add_option("--a", o.a, "double-delta separation");
  app.add_option("--window", o.window, "energy window lo:hi (lo excluded)");
  app.add_option("--n", o.n, "grid points");
  app.add_option("--engine", o.engine, "analytic, oracle or both");
  app.add_option("--format", o.format, "csv or json");
  app.add_option("--L", o.half_width, "oracle box half-width");
  app.add_option("--step", o.step, "oracle integration step");
  app.add_option("--tol", o.tol, "finder or agreement tolerance");
  app.add_option("--out", o.out, "write records to FILE instead of stdout");
  app.add_option("--config", o.config, "potential spec JSON file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  RunConfig config;
  try {
    config = make_run_config(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (!o.out) return run(config, out, err);
  std::ofstream file(*o.out);
  if (!file) {
    err << "error: cannot open '" << *o.out << "' for writing\n";
    return 2;
  }
  return run(config, file, err);
}

}  // namespace nonrecip::cli
