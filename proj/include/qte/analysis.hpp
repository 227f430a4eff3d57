#pragma once

// Parameter-space analysis on top of the model and the detectors: single-point
// evaluation, deterministic grid sweeps, threshold-temperature bisection, the
// sign-region classification of the couplings, and grid peak extraction.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qte/entanglement.hpp"
#include "qte/errors.hpp"
#include "qte/spin_model.hpp"
#include "qte/thermal.hpp"

namespace qte {

enum class Detector { negativity, realignment };

inline const char* detector_name(Detector d) {
  return d == Detector::negativity ? "negativity" : "realignment";
}

struct DetectorSet {
  bool negativity = true;
  bool realignment = true;
};

// Both detectors evaluated at one (params, T) point.
struct PointReport {
  double negativity = 0.0;
  double pt_min_eig = 0.0;
  double trace_norm = 0.0;
  double r_value = 0.0;
  bool entangled_by_negativity = false;  // negativity > kDetectThreshold
  bool entangled_by_realignment = false; // r_value > kRZeroTol
};

inline PointReport evaluate_point(const HamiltonianParams& p, double temperature,
                                  double log_base = kNaturalBase) {
  const ThermalState state = gibbs_state(build_hamiltonian(p), temperature);
  const NegativityResult n = negativity(state.rho);
  const RealignmentResult r = realignment_criterion(state.rho, log_base);
  PointReport out;
  out.negativity = n.negativity;
  out.pt_min_eig = n.pt_spectrum(0);
  out.trace_norm = r.trace_norm;
  out.r_value = r.r_value;
  out.entangled_by_negativity = n.negativity > kDetectThreshold;
  out.entangled_by_realignment = r.entangled_flag;
  return out;
}

// One swept parameter: `steps` evenly spaced values over [min, max], both ends
// included. Valid names: J, K, Delta, B, T.
struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
};

struct SweepSpec {
  HamiltonianParams base{};
  double temperature = 1.0;          // used unless a T axis overrides it
  std::vector<SweepAxis> axes;       // one or two
  DetectorSet detectors{};
  double log_base = kNaturalBase;
};

// Detector fields are absent when the corresponding detector was disabled.
struct PointRecord {
  HamiltonianParams params{};
  double temperature = 0.0;
  std::optional<double> negativity;
  std::optional<double> pt_min_eig;
  std::optional<double> trace_norm;
  std::optional<double> r_value;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<PointRecord> records;  // row-major, axis1 outer
  double detect_threshold = kDetectThreshold;
  std::string timestamp;             // UTC, set when the sweep ran
};

namespace detail {

inline double axis_value(const SweepAxis& ax, int k) {
  return ax.min + k * (ax.max - ax.min) / (ax.steps - 1);
}

inline void apply_axis_value(HamiltonianParams& p, double& temperature,
                             const std::string& name, double value) {
  if (name == "J") {
    p.J = value;
  } else if (name == "K") {
    p.K = value;
  } else if (name == "Delta") {
    p.Delta = value;
  } else if (name == "B") {
    p.B = value;
  } else {  // "T"; names are validated before evaluation starts
    temperature = value;
  }
}

inline std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline PointRecord evaluate_record(const SweepSpec& spec, std::size_t idx,
                                   std::size_t inner_steps) {
  HamiltonianParams p = spec.base;
  double temperature = spec.temperature;
  apply_axis_value(p, temperature, spec.axes[0].name,
                   axis_value(spec.axes[0], int(idx / inner_steps)));
  if (spec.axes.size() == 2)
    apply_axis_value(p, temperature, spec.axes[1].name,
                     axis_value(spec.axes[1], int(idx % inner_steps)));

  PointRecord rec;
  rec.params = p;
  rec.temperature = temperature;
  const ThermalState state = gibbs_state(build_hamiltonian(p), temperature);
  if (spec.detectors.negativity) {
    const NegativityResult n = negativity(state.rho);
    rec.negativity = n.negativity;
    rec.pt_min_eig = n.pt_spectrum(0);
  }
  if (spec.detectors.realignment) {
    const RealignmentResult r = realignment_criterion(state.rho, spec.log_base);
    rec.trace_norm = r.trace_norm;
    rec.r_value = r.r_value;
  }
  return rec;
}

inline std::string grid_point_label(const SweepSpec& spec, std::size_t idx,
                                    std::size_t inner_steps) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%s=%g", spec.axes[0].name.c_str(),
                axis_value(spec.axes[0], int(idx / inner_steps)));
  std::string out = buf;
  if (spec.axes.size() == 2) {
    std::snprintf(buf, sizeof buf, ", %s=%g", spec.axes[1].name.c_str(),
                  axis_value(spec.axes[1], int(idx % inner_steps)));
    out += buf;
  }
  return out + "]";
}

}  // namespace detail

inline void validate_sweep_spec(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw Error("sweep spec: need one or two axes, got " +
                std::to_string(spec.axes.size()));
  static constexpr std::array<const char*, 5> kNames = {"J", "K", "Delta", "B", "T"};
  bool has_t_axis = false;
  for (const SweepAxis& ax : spec.axes) {
    if (std::find(kNames.begin(), kNames.end(), ax.name) == kNames.end())
      throw Error("sweep spec: unknown axis name '" + ax.name +
                  "' (expected J, K, Delta, B, or T)");
    if (ax.steps < 2)
      throw Error("sweep spec: axis '" + ax.name + "' needs at least 2 steps");
    if (!(ax.min < ax.max))
      throw Error("sweep spec: axis '" + ax.name + "' needs min < max");
    if (ax.name == "T") {
      has_t_axis = true;
      if (!(ax.min > 0.0))
        throw Error("sweep spec: temperature axis must stay positive");
    }
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name)
    throw Error("sweep spec: axis names must be distinct");
  if (!has_t_axis && !(spec.temperature > 0.0))
    throw Error("sweep spec: temperature must be positive");
  if (!(spec.log_base > 0.0) || spec.log_base == 1.0)
    throw Error("sweep spec: log base must be positive and not 1");
}

// Evaluates every grid point. Points are independent pure functions of the
// spec, so records are bitwise identical for any degree of parallelism; the
// output order is always row-major with axis1 outer.
inline SweepResult run_sweep(const SweepSpec& spec, int parallelism = 1) {
  validate_sweep_spec(spec);
  if (parallelism < 1)
    throw Error("run_sweep: parallelism must be at least 1");

  const std::size_t inner =
      spec.axes.size() == 2 ? std::size_t(spec.axes[1].steps) : 1;
  const std::size_t total = std::size_t(spec.axes[0].steps) * inner;

  SweepResult out;
  out.spec = spec;
  out.records.resize(total);

  struct Failure {
    std::size_t index;
    std::exception_ptr error;
  };
  const std::size_t workers =
      std::min<std::size_t>(std::size_t(parallelism), total);
  std::vector<std::optional<Failure>> failures(workers);

  auto run_chunk = [&](std::size_t lo, std::size_t hi, std::optional<Failure>& fail) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      try {
        out.records[idx] = detail::evaluate_record(spec, idx, inner);
      } catch (...) {
        fail = Failure{idx, std::current_exception()};
        return;
      }
    }
  };

  if (workers == 1) {
    run_chunk(0, total, failures[0]);
  } else {
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(total, w * chunk);
      const std::size_t hi = std::min(total, lo + chunk);
      pool.emplace_back(run_chunk, lo, hi, std::ref(failures[w]));
    }
    for (auto& t : pool) t.join();
  }

  const std::optional<Failure>* first = nullptr;
  for (const auto& f : failures)
    if (f && (!first || f->index < (*first)->index)) first = &f;
  if (first) {
    try {
      std::rethrow_exception((*first)->error);
    } catch (const std::exception& e) {
      throw Error("sweep point " +
                  detail::grid_point_label(spec, (*first)->index, inner) + ": " +
                  e.what());
    }
  }

  out.timestamp = detail::utc_timestamp();
  return out;
}

inline double detector_value(const HamiltonianParams& p, double temperature,
                             Detector detector, double log_base = kNaturalBase) {
  const ThermalState state = gibbs_state(build_hamiltonian(p), temperature);
  if (detector == Detector::negativity) return negativity(state.rho).negativity;
  return realignment_criterion(state.rho, log_base).r_value;
}

// Bisection for the temperature where `detector` stops firing. The bracket is
// verified, never assumed: the detector must read above `detect_threshold` at
// t_lo and at or below it at t_hi. Returns the midpoint of the final interval
// of width ≤ width_tol.
inline double threshold_temperature(const HamiltonianParams& p, Detector detector,
                                    double t_lo, double t_hi,
                                    double width_tol = 1e-4,
                                    double detect_threshold = kDetectThreshold,
                                    double log_base = kNaturalBase) {
  if (!(t_lo > 0.0) || !(t_lo < t_hi))
    throw Error("threshold_temperature: need 0 < t_lo < t_hi");
  if (!(width_tol > 0.0))
    throw Error("threshold_temperature: width tolerance must be positive");

  const double v_lo = detector_value(p, t_lo, detector, log_base);
  const double v_hi = detector_value(p, t_hi, detector, log_base);
  if (!(v_lo > detect_threshold) || v_hi > detect_threshold) {
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "%s does not change side on [%g, %g]: value(t_lo)=%.12g, "
                  "value(t_hi)=%.12g, threshold=%g",
                  detector_name(detector), t_lo, t_hi, v_lo, v_hi,
                  detect_threshold);
    throw NotBracketed(std::string("threshold_temperature: ") + buf);
  }

  double lo = t_lo, hi = t_hi;
  while (hi - lo > width_tol) {
    const double mid = 0.5 * (lo + hi);
    if (detector_value(p, mid, detector, log_base) > detect_threshold)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Sign-pattern classification of (J, K, Delta). The four labels cover the
// eight sign octants; any exactly-zero coupling sits between regions.
enum class Region { boundary = 0, one = 1, two = 2, three = 3, four = 4 };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::one: return "1";
    case Region::two: return "2";
    case Region::three: return "3";
    case Region::four: return "4";
    default: return "boundary";
  }
}

inline Region classify_region(const HamiltonianParams& p) {
  if (p.J == 0.0 || p.K == 0.0 || p.Delta == 0.0) return Region::boundary;
  const bool jk = (p.J > 0.0) == (p.K > 0.0);
  const bool kd = (p.K > 0.0) == (p.Delta > 0.0);
  if (jk && kd) return Region::one;   // all three signs agree
  if (jk) return Region::two;         // Delta is the odd one out
  if (kd) return Region::three;       // J is the odd one out
  return Region::four;                // K is the odd one out
}

// Grid argmax per detector. Strict comparison keeps the first maximum, so ties
// resolve toward the smallest row-major index.
struct PeakInfo {
  double value = 0.0;
  PointRecord record;
  std::size_t index = 0;  // row-major position in SweepResult::records
};

struct PeakReport {
  std::optional<PeakInfo> negativity;   // by N
  std::optional<PeakInfo> realignment;  // by R
  std::vector<double> axis_resolution;  // grid spacing per axis, as uncertainty
};

inline PeakReport peak_report(const SweepResult& result) {
  if (result.records.empty()) throw Error("peak_report: empty sweep result");
  PeakReport out;
  for (const SweepAxis& ax : result.spec.axes)
    out.axis_resolution.push_back((ax.max - ax.min) / (ax.steps - 1));
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const PointRecord& rec = result.records[i];
    if (rec.negativity &&
        (!out.negativity || *rec.negativity > out.negativity->value))
      out.negativity = PeakInfo{*rec.negativity, rec, i};
    if (rec.r_value && (!out.realignment || *rec.r_value > out.realignment->value))
      out.realignment = PeakInfo{*rec.r_value, rec, i};
  }
  return out;
}

}  // namespace qte
