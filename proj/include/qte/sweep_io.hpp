#pragma once

// CSV serialization for sweep results. Values use shortest round-trip decimal
// formatting, so a parser reading the file recovers every double bit-exactly.

#include <charconv>
#include <fstream>
#include <string>

#include "qte/analysis.hpp"
#include "qte/errors.hpp"

namespace qte {

inline std::string format_double(double x) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline constexpr const char* kCsvHeader =
    "J,K,Delta,B,T,negativity,trace_norm,R,pt_min_eig";

// One row per record in the result's own (row-major) order; LF line endings;
// fields for disabled detectors are left empty.
inline std::string sweep_to_csv(const SweepResult& result) {
  std::string out = kCsvHeader;
  out += '\n';
  auto cell = [&out](const std::optional<double>& v) {
    if (v) out += format_double(*v);
  };
  for (const PointRecord& rec : result.records) {
    out += format_double(rec.params.J);
    out += ',';
    out += format_double(rec.params.K);
    out += ',';
    out += format_double(rec.params.Delta);
    out += ',';
    out += format_double(rec.params.B);
    out += ',';
    out += format_double(rec.temperature);
    out += ',';
    cell(rec.negativity);
    out += ',';
    cell(rec.trace_norm);
    out += ',';
    cell(rec.r_value);
    out += ',';
    cell(rec.pt_min_eig);
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);  // binary: keep LF endings as-is
  if (!f) throw Error("cannot open output file: " + path);
  f.write(body.data(), std::streamsize(body.size()));
  f.flush();
  if (!f) throw Error("failed while writing output file: " + path);
}

}  // namespace qte
