#pragma once

// Newline-delimited JSON records: one replication per line. Doubles are
// written in shortest round-trip form, so reading a record back gives
// bit-identical coordinates.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clustertess/clusterprops.hpp"
#include "clustertess/cutproject.hpp"
#include "clustertess/pointproc.hpp"
#include "clustertess/stats.hpp"
#include "clustertess/tessellation.hpp"

namespace ctess::cli {

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Record {
  std::size_t replication = 0;
  PointConfiguration points;
  std::optional<ClusterConfiguration> clusters;
  std::optional<TessellationReport> report;

  friend bool operator==(const Record&, const Record&);
};

struct ChainRecord {
  std::size_t replication = 0;
  std::string variant;
  double range_lo = 0.0;
  double range_hi = 0.0;
  silver::Chain chain;
};

nlohmann::ordered_json to_json(const Point& p);
nlohmann::ordered_json to_json(const Window& w);
nlohmann::ordered_json to_json(const TessellationReport& r);
nlohmann::ordered_json to_json(const Record& r);
nlohmann::ordered_json to_json(const ChainRecord& r);
nlohmann::ordered_json to_json(const stats::TestReport& r);

Point point_from_json(const nlohmann::ordered_json& j);
Window window_from_json(const nlohmann::ordered_json& j);
TessellationReport report_from_json(const nlohmann::ordered_json& j);
Record record_from_json(const nlohmann::ordered_json& j);

/// One compact JSON object per line.
std::string records_to_text(const std::vector<Record>& records);
std::string chain_records_to_text(const std::vector<ChainRecord>& records);
/// Throws RecordError with the offending line number.
std::vector<Record> read_records(std::istream& in);

}  // namespace ctess::cli
