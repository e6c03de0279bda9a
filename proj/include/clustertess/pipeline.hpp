#pragma once

// sample -> extract -> validate -> test pipelines behind the CLI
// subcommands. Replications run in parallel; results are always returned in
// replication order. Replication i draws its sample from
// derive_seed(seed, i) and its coverage points from a seed derived from that.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "clustertess/records.hpp"
#include "clustertess/run_config.hpp"
#include "clustertess/stats.hpp"

namespace ctess::cli {

Seed replication_seed(const RunConfig& cfg, std::size_t replication);

std::vector<Record> run_sample(const RunConfig& cfg);

/// Extracts clusters from every record and validates them. Records keep
/// their own window.
std::vector<Record> run_tessellate(const RunConfig& cfg, std::vector<Record> records);

/// Recomputes the tessellation report of records that carry clusters.
std::vector<Record> run_validate(const RunConfig& cfg, std::vector<Record> records);

std::vector<ChainRecord> run_chain(const RunConfig& cfg);

/// Face-to-face summary over the records' reports; empty when no record was
/// checked.
std::vector<stats::TestReport> tessellation_tests(const std::vector<Record>& records);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

/// Summary document: the config, the test reports and one line of counts
/// per replication.
nlohmann::ordered_json summary_json(const std::string& command, const RunConfig& cfg,
                            const std::vector<stats::TestReport>& tests,
                            const std::vector<Record>& records = {});

/// Files to write at the end of a run. Each file is written to a temporary
/// name and renamed; if any write fails, every file of the set is removed.
/// Path "-" means the given stream.
class OutputSet {
 public:
  void add(std::string path, std::string content);
  void commit(std::ostream& stdout_stream);

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace ctess::cli
