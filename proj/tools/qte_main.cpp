// qte — thermal entanglement of a coupled spin-1 pair.
//
// Subcommands: point (both detectors at one parameter set), sweep (1-D/2-D
// grid to CSV), spectrum (closed-form levels vs. numeric eigensolver), and
// threshold (bisection for the disentanglement temperature).
//
// Output convention: one machine-readable JSON line on stdout, a
// human-readable table on stderr. Exit codes: 0 success, 1 numeric failure,
// 2 usage error, 3 bracketing failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qte/qte.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  qte::HamiltonianParams params{};
  double temperature = 1.0;
  std::string log_base_name = "e";
  int parallelism = 1;
  // sweep
  std::string axis1;
  std::string axis2;
  std::string out_path = "sweep.csv";
  std::string detectors = "both";
  // threshold
  std::string detector = "both";
  double t_lo = 0.0;
  double t_hi = 0.0;
  double width_tol = 1e-4;
};

double log_base_value(const std::string& name) {
  if (name == "2") return 2.0;
  if (name == "10") return 10.0;
  return qte::kNaturalBase;
}

qte::DetectorSet detector_set(const std::string& name) {
  return {name != "realignment", name != "negativity"};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

qte::SweepAxis parse_axis(const std::string& flag, const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 4)
    throw qte::Error(flag + ": expected name:min:max:steps, got '" + text + "'");
  qte::SweepAxis ax;
  ax.name = parts[0];
  try {
    std::size_t pos = 0;
    ax.min = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument(parts[1]);
    ax.max = std::stod(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument(parts[2]);
    ax.steps = std::stoi(parts[3], &pos);
    if (pos != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::exception&) {
    throw qte::Error(flag + ": could not parse '" + text +
                     "' as name:min:max:steps");
  }
  return ax;
}

void table_row(const char* key, const std::string& value) {
  std::fprintf(stderr, "  %-26s %s\n", key, value.c_str());
}

void table_row(const char* key, double value) {
  table_row(key, qte::format_double(value));
}

json params_json(const qte::HamiltonianParams& p) {
  return {{"J", p.J}, {"K", p.K}, {"Delta", p.Delta}, {"B", p.B}};
}

int cmd_point(const RunConfig& cfg) {
  qte::PointReport r;
  try {
    r = qte::evaluate_point(cfg.params, cfg.temperature,
                            log_base_value(cfg.log_base_name));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qte point: %s\n", e.what());
    return 1;
  }

  json j = params_json(cfg.params);
  j["command"] = "point";
  j["T"] = cfg.temperature;
  j["negativity"] = r.negativity;
  j["trace_norm"] = r.trace_norm;
  j["R"] = r.r_value;
  j["pt_min_eig"] = r.pt_min_eig;
  j["entangled_by_negativity"] = r.entangled_by_negativity;
  j["entangled_by_realignment"] = r.entangled_by_realignment;
  j["log_base"] = cfg.log_base_name;
  std::cout << j.dump() << "\n";

  std::fprintf(stderr, "point report (log base %s)\n", cfg.log_base_name.c_str());
  table_row("J", cfg.params.J);
  table_row("K", cfg.params.K);
  table_row("Delta", cfg.params.Delta);
  table_row("B", cfg.params.B);
  table_row("T", cfg.temperature);
  table_row("negativity N", r.negativity);
  table_row("min PT eigenvalue", r.pt_min_eig);
  table_row("realignment trace norm", r.trace_norm);
  table_row("R", r.r_value);
  table_row("entangled by negativity", r.entangled_by_negativity ? "yes" : "no");
  table_row("entangled by realignment", r.entangled_by_realignment ? "yes" : "no");
  return 0;
}

json peak_json(const std::optional<qte::PeakInfo>& pk) {
  if (!pk) return nullptr;
  json j = params_json(pk->record.params);
  j["T"] = pk->record.temperature;
  j["value"] = pk->value;
  j["index"] = pk->index;
  return j;
}

std::string peak_text(const std::optional<qte::PeakInfo>& pk) {
  if (!pk) return "(detector disabled)";
  const qte::HamiltonianParams& p = pk->record.params;
  return qte::format_double(pk->value) + " at J=" + qte::format_double(p.J) +
         " K=" + qte::format_double(p.K) + " Delta=" +
         qte::format_double(p.Delta) + " B=" + qte::format_double(p.B) +
         " T=" + qte::format_double(pk->record.temperature);
}

int cmd_sweep(const RunConfig& cfg) {
  qte::SweepSpec spec;
  try {
    spec.base = cfg.params;
    spec.temperature = cfg.temperature;
    spec.detectors = detector_set(cfg.detectors);
    spec.log_base = log_base_value(cfg.log_base_name);
    spec.axes.push_back(parse_axis("--axis1", cfg.axis1));
    if (!cfg.axis2.empty()) spec.axes.push_back(parse_axis("--axis2", cfg.axis2));
    qte::validate_sweep_spec(spec);
  } catch (const qte::Error& e) {
    std::fprintf(stderr, "qte sweep: %s\n", e.what());
    return 2;
  }

  try {
    const qte::SweepResult res = qte::run_sweep(spec, cfg.parallelism);
    qte::write_text_file(cfg.out_path, qte::sweep_to_csv(res));
    const qte::PeakReport pk = qte::peak_report(res);

    json j;
    j["command"] = "sweep";
    j["rows"] = res.records.size();
    j["csv"] = cfg.out_path;
    j["detectors"] = cfg.detectors;
    j["log_base"] = cfg.log_base_name;
    j["axis_resolution"] = pk.axis_resolution;
    j["peak_negativity"] = peak_json(pk.negativity);
    j["peak_R"] = peak_json(pk.realignment);
    std::cout << j.dump() << "\n";

    std::fprintf(stderr, "sweep finished at %s\n", res.timestamp.c_str());
    for (const qte::SweepAxis& ax : spec.axes)
      std::fprintf(stderr, "  axis %-6s %s .. %s in %d steps\n", ax.name.c_str(),
                   qte::format_double(ax.min).c_str(),
                   qte::format_double(ax.max).c_str(), ax.steps);
    table_row("rows", double(res.records.size()));
    table_row("csv", cfg.out_path);
    table_row("peak negativity", peak_text(pk.negativity));
    table_row("peak R", peak_text(pk.realignment));
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qte sweep: %s\n", e.what());
    return 1;
  }
}

int cmd_spectrum(const RunConfig& cfg) {
  try {
    const qte::ComplexMatrix h = qte::build_hamiltonian(cfg.params);
    const qte::Spectrum numeric = qte::hermitian_eigen(h);
    const qte::AnalyticSpectrum analytic =
        cfg.params.K == 0.0 ? qte::analytic_spectrum_case1(cfg.params)
                            : qte::analytic_spectrum_case2(cfg.params);

    json levels = json::array();
    double max_residual = 0.0;
    for (const qte::AnalyticLevel& lv : analytic.levels) {
      double nearest = numeric.values(0);
      for (int i = 1; i < numeric.values.size(); ++i)
        if (std::abs(numeric.values(i) - lv.energy) < std::abs(nearest - lv.energy))
          nearest = numeric.values(i);
      max_residual = std::max(max_residual, lv.residual);
      levels.push_back({{"label", lv.label},
                        {"energy", lv.energy},
                        {"nearest_numeric", nearest},
                        {"residual", lv.residual},
                        {"flagged", lv.flagged()}});
    }

    json j = params_json(cfg.params);
    j["command"] = "spectrum";
    j["case"] = analytic.which_case == qte::SpectrumCase::case1 ? 1 : 2;
    j["degenerate_coupling"] = analytic.degenerate_coupling;
    j["max_residual"] = max_residual;
    j["levels"] = levels;
    j["log_base"] = cfg.log_base_name;
    std::cout << j.dump() << "\n";

    std::fprintf(stderr, "closed-form case %d vs numeric spectrum%s\n",
                 analytic.which_case == qte::SpectrumCase::case1 ? 1 : 2,
                 analytic.degenerate_coupling
                     ? "  [degenerate central coupling: formula-eigenvector pairing"
                       " is by energy order]"
                     : "");
    std::fprintf(stderr, "  %-9s %-24s %-24s %s\n", "label", "formula energy",
                 "nearest numeric", "|Hv - Ev|");
    for (const auto& lv : levels) {
      std::fprintf(stderr, "  %-9s %-24s %-24s %-11.3g%s\n",
                   lv["label"].get<std::string>().c_str(),
                   qte::format_double(lv["energy"].get<double>()).c_str(),
                   qte::format_double(lv["nearest_numeric"].get<double>()).c_str(),
                   lv["residual"].get<double>(),
                   lv["flagged"].get<bool>()
                       ? "  ** FORMULA DISAGREES WITH NUMERIC SPECTRUM **"
                       : "");
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qte spectrum: %s\n", e.what());
    return 1;
  }
}

int cmd_threshold(const RunConfig& cfg) {
  if (!(cfg.t_lo > 0.0) || !(cfg.t_lo < cfg.t_hi)) {
    std::fprintf(stderr, "qte threshold: --lo/--hi must satisfy 0 < lo < hi\n");
    return 2;
  }
  std::vector<qte::Detector> wanted;
  if (cfg.detector != "realignment") wanted.push_back(qte::Detector::negativity);
  if (cfg.detector != "negativity") wanted.push_back(qte::Detector::realignment);

  json results = json::array();
  try {
    for (qte::Detector d : wanted) {
      const double tc = qte::threshold_temperature(
          cfg.params, d, cfg.t_lo, cfg.t_hi, cfg.width_tol,
          qte::kDetectThreshold, log_base_value(cfg.log_base_name));
      results.push_back({{"detector", qte::detector_name(d)}, {"T_c", tc}});
      std::fprintf(stderr, "  T_c(%s) = %s  (bracket [%s, %s], width tol %s)\n",
                   qte::detector_name(d), qte::format_double(tc).c_str(),
                   qte::format_double(cfg.t_lo).c_str(),
                   qte::format_double(cfg.t_hi).c_str(),
                   qte::format_double(cfg.width_tol).c_str());
    }
  } catch (const qte::NotBracketed& e) {
    std::fprintf(stderr, "qte threshold: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qte threshold: %s\n", e.what());
    return 1;
  }

  json j = params_json(cfg.params);
  j["command"] = "threshold";
  j["lo"] = cfg.t_lo;
  j["hi"] = cfg.t_hi;
  j["width_tol"] = cfg.width_tol;
  j["results"] = results;
  j["log_base"] = cfg.log_base_name;
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Thermal entanglement of a coupled spin-1 pair: negativity and "
      "realignment detectors over the couplings (J, K, Delta), field B, and "
      "temperature T"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.set_config("--config", "",
                 "Config file with flag-named keys; command-line flags win");
  app.add_option("--J", cfg.params.J, "Bilinear exchange coupling")
      ->capture_default_str();
  app.add_option("--K", cfg.params.K, "Biquadratic exchange coupling")
      ->capture_default_str();
  app.add_option("--Delta", cfg.params.Delta, "Exchange anisotropy")
      ->capture_default_str();
  app.add_option("--B", cfg.params.B, "Magnetic field along z")
      ->capture_default_str();
  app.add_option("--T", cfg.temperature, "Temperature")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--log-base", cfg.log_base_name, "Logarithm base for R")
      ->check(CLI::IsMember({"e", "2", "10"}))
      ->capture_default_str();
  app.add_option("--parallelism", cfg.parallelism,
                 "Worker threads for grid evaluation (never changes output)")
      ->check(CLI::Range(1, 4096))
      ->capture_default_str();

  CLI::App* point =
      app.add_subcommand("point", "Evaluate both detectors at one parameter set");
  point->fallthrough();

  CLI::App* sweep =
      app.add_subcommand("sweep", "Evaluate a 1-D or 2-D grid and write CSV");
  sweep->fallthrough();
  sweep->add_option("--axis1", cfg.axis1, "First axis, name:min:max:steps (outer)")
      ->required();
  sweep->add_option("--axis2", cfg.axis2, "Second axis, name:min:max:steps (inner)");
  sweep->add_option("--out", cfg.out_path, "CSV output path")->capture_default_str();
  sweep->add_option("--detectors", cfg.detectors, "Detectors to evaluate")
      ->check(CLI::IsMember({"both", "negativity", "realignment"}))
      ->capture_default_str();

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Closed-form level formulas vs. the numeric eigensolver");
  spectrum->fallthrough();

  CLI::App* threshold = app.add_subcommand(
      "threshold", "Bisect for the temperature where a detector stops firing");
  threshold->fallthrough();
  threshold->add_option("--lo", cfg.t_lo, "Lower bracket temperature")->required();
  threshold->add_option("--hi", cfg.t_hi, "Upper bracket temperature")->required();
  threshold->add_option("--detector", cfg.detector, "Detector(s) to bisect")
      ->check(CLI::IsMember({"both", "negativity", "realignment"}))
      ->capture_default_str();
  threshold->add_option("--width-tol", cfg.width_tol, "Final bracket width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "qte: %s\n", e.what());
    std::fprintf(stderr, "Run 'qte --help' or 'qte <subcommand> --help' for usage.\n");
    return 2;
  }

  if (point->parsed()) return cmd_point(cfg);
  if (sweep->parsed()) return cmd_sweep(cfg);
  if (spectrum->parsed()) return cmd_spectrum(cfg);
  return cmd_threshold(cfg);
}
