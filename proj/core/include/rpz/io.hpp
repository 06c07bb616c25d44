#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rpz/ensembles.hpp"
#include "rpz/kacrice.hpp"
#include "rpz/kernels.hpp"
#include "rpz/qe.hpp"
#include "rpz/statistics.hpp"
#include "rpz/zeros_crits.hpp"

namespace rpz {

using json = nlohmann::json;

std::string to_string(Family f);
std::string to_string(Measure m);
std::string to_string(CurveSource s);
Family family_from_string(const std::string& s);
Measure measure_from_string(const std::string& s);

json sample_to_json(const SectionSample& s);
SectionSample sample_from_json(const json& j);

json point_process_to_json(const PointProcessSample& s);

json scaling_report_to_json(const ScalingReport& r);

SymbolFunction symbol_from_json(const json& j);
json symbol_to_json(const SymbolFunction& f);

// CSV with a header row and a trailing "# manifest: ..." comment.
class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> columns);
  void row(const std::vector<std::string>& fields);
  void close(const std::string& manifest_ref);
  ~CsvWriter();

 private:
  std::string path_;
  std::string buffer_;
  std::size_t columns_;
  bool closed_ = false;
};

std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace rpz
