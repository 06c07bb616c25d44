#include "rpz/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rpz {

std::string to_string(Family f) {
  return f == Family::Su2Poly ? "SU2_POLY" : "SPHERICAL_HARMONIC_S2";
}

std::string to_string(Measure m) { return m == Measure::Gaussian ? "GAUSSIAN" : "SPHERICAL"; }

std::string to_string(CurveSource s) {
  switch (s) {
    case CurveSource::MonteCarlo: return "MC";
    case CurveSource::FiniteN: return "FINITE_N";
    case CurveSource::Limit: return "LIMIT";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "SU2_POLY") return Family::Su2Poly;
  if (s == "SPHERICAL_HARMONIC_S2") return Family::SphericalHarmonicS2;
  throw std::invalid_argument("unknown family: " + s);
}

Measure measure_from_string(const std::string& s) {
  if (s == "GAUSSIAN") return Measure::Gaussian;
  if (s == "SPHERICAL") return Measure::Spherical;
  throw std::invalid_argument("unknown measure: " + s);
}

json sample_to_json(const SectionSample& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs) coeffs.push_back({c.real(), c.imag()});
  return {{"family", to_string(s.spec.family)},
          {"N", s.spec.degree},
          {"measure", to_string(s.spec.measure)},
          {"seed", s.spec.seed},
          {"coeffs", std::move(coeffs)}};
}

SectionSample sample_from_json(const json& j) {
  SectionSample s;
  s.spec.family = family_from_string(j.at("family").get<std::string>());
  s.spec.degree = j.at("N").get<int>();
  s.spec.measure = measure_from_string(j.at("measure").get<std::string>());
  s.spec.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("coeffs")) {
    s.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    s.norm_sq += std::norm(s.coeffs.back());
  }
  return s;
}

json point_process_to_json(const PointProcessSample& s) {
  json points = json::array();
  for (const auto& wp : s.points)
    points.push_back({wp.point.z0.real(), wp.point.z0.imag(), wp.point.z1.real(),
                      wp.point.z1.imag(), wp.multiplicity});
  return {{"kind", s.kind == PointKind::Zeros ? "ZEROS" : "CRITS"},
          {"N", s.degree},
          {"points", std::move(points)}};
}

json scaling_report_to_json(const ScalingReport& r) {
  return {{"N", r.degree},
          {"grid", {{"radius", r.grid.radius}, {"step", r.grid.step}}},
          {"supError", r.sup_error}};
}

SymbolFunction symbol_from_json(const json& j) {
  SymbolFunction f;
  for (const auto& t : j)
    f.terms.push_back({t.at("l").get<int>(), t.at("k").get<int>(), t.at("coeff").get<double>()});
  return f;
}

json symbol_to_json(const SymbolFunction& f) {
  json out = json::array();
  for (const auto& t : f.terms) out.push_back({{"l", t.l}, {"k", t.k}, {"coeff", t.coeff}});
  return out;
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns)
    : path_(std::move(path)), columns_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += columns[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw std::invalid_argument("CsvWriter: column mismatch");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += fields[i];
  }
  buffer_ += '\n';
}

void CsvWriter::close(const std::string& manifest_ref) {
  buffer_ += "# manifest: " + manifest_ref + "\n";
  write_text_file(path_, buffer_);
  closed_ = true;
}

CsvWriter::~CsvWriter() {
  if (!closed_) {
    try {
      close("none");
    } catch (...) {
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace rpz
