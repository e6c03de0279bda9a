#include "clustertess/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "clustertess/parallel.hpp"

namespace ctess::cli {

using json = nlohmann::ordered_json;

namespace {

std::unique_ptr<ClusterProperty> property_for(const RunConfig& cfg, const Window& w) {
  if (cfg.property == PropertyKind::voronoi) {
    if (w.dim() != 2) throw ConfigError("voronoi needs dimension 2");
    return std::make_unique<VoronoiProperty>(w);
  }
  return make_property(cfg);
}

Seed coverage_seed(const RunConfig& cfg, std::size_t replication) {
  return derive_seed(replication_seed(cfg, replication), 1);
}

TessellationReport validate_record(const RunConfig& cfg, const Record& r) {
  const Window& w = r.points.window();
  std::function<bool(const Point&)> excused;
  if (cfg.property == PropertyKind::voronoi)
    excused = voronoi_uncertain_region(support(r.points), *r.clusters);
  return validate_tessellation(*r.clusters, w, cfg.coverage_samples,
                               coverage_seed(cfg, r.replication), {}, excused);
}

}  // namespace

Seed replication_seed(const RunConfig& cfg, std::size_t replication) {
  return derive_seed(Seed{cfg.seed}, replication);
}

std::vector<Record> run_sample(const RunConfig& cfg) {
  return stats::parallel_map(cfg.replications, [&](std::size_t i) {
    return Record{i, sample_process(cfg, derive_seed(replication_seed(cfg, i), 0)), std::nullopt,
                  std::nullopt};
  });
}

std::vector<Record> run_tessellate(const RunConfig& cfg, std::vector<Record> records) {
  return stats::parallel_map(records.size(), [&](std::size_t k) {
    Record r = std::move(records[k]);
    const auto prop = property_for(cfg, r.points.window());
    r.clusters = extract_clusters(*prop, r.points);
    r.report = validate_record(cfg, r);
    return r;
  });
}

std::vector<Record> run_validate(const RunConfig& cfg, std::vector<Record> records) {
  return stats::parallel_map(records.size(), [&](std::size_t k) {
    Record r = std::move(records[k]);
    if (r.clusters) r.report = validate_record(cfg, r);
    return r;
  });
}

std::vector<ChainRecord> run_chain(const RunConfig& cfg) {
  const std::size_t n = cfg.property == PropertyKind::silver_mean ? 1 : cfg.replications;
  return stats::parallel_map(n, [&](std::size_t i) {
    ChainRecord r{i, "", cfg.range_lo, cfg.range_hi, {}};
    const Seed s = derive_seed(replication_seed(cfg, i), 0);
    switch (cfg.property) {
      case PropertyKind::silver_mean:
        r.variant = "deterministic";
        r.chain = silver::deterministic_chain(cfg.range_lo, cfg.range_hi);
        break;
      case PropertyKind::thinned_silver:
        r.variant = "thinned";
        r.chain = silver::thinned_chain(cfg.c, cfg.range_lo, cfg.range_hi, s);
        break;
      case PropertyKind::shifted_silver: {
        r.variant = "shifted";
        const auto base =
            cfg.lambda > 0.0 ? silver::poisson_sampler(cfg.lambda) : silver::empty_sampler();
        r.chain = silver::shifted_chain(cfg.epsilon, base, cfg.range_lo, cfg.range_hi, s);
        break;
      }
      default:
        throw ConfigError("chain needs a silver-mean variant");
    }
    return r;
  });
}

std::vector<stats::TestReport> tessellation_tests(const std::vector<Record>& records) {
  stats::TestReport f2f;
  f2f.name = "face_to_face";
  std::size_t violations = 0;
  for (const auto& r : records) {
    if (!r.report || !r.report->face_to_face) continue;
    ++f2f.n_samples;
    violations += r.report->violations.size();
    if (!*r.report->face_to_face) f2f.statistic += 1.0;
  }
  if (f2f.n_samples == 0) return {};
  f2f.passed = f2f.statistic == 0.0;
  f2f.details = std::to_string(violations) + " improper pairs";
  return {f2f};
}

json config_to_json(const RunConfig& cfg) {
  const Window w = cfg.window();
  return {{"dimension", cfg.dimension},
          {"window", to_json(w)},
          {"process", to_string(cfg.process)},
          {"lambda", cfg.lambda},
          {"c", cfg.c},
          {"epsilon", cfg.epsilon},
          {"spacing", cfg.lattice_spacing},
          {"property", to_string(cfg.property)},
          {"r", cfg.hardcore_r},
          {"radius_cap", cfg.radius_cap},
          {"open_ball", cfg.open_ball},
          {"range", {cfg.range_lo, cfg.range_hi}},
          {"seed", cfg.seed},
          {"replications", cfg.replications},
          {"coverage_samples", cfg.coverage_samples}};
}

json summary_json(const std::string& command, const RunConfig& cfg,
                  const std::vector<stats::TestReport>& tests, const std::vector<Record>& records) {
  json j;
  j["command"] = command;
  j["config"] = config_to_json(cfg);
  j["tests"] = json::array();
  for (const auto& t : tests) j["tests"].push_back(to_json(t));
  j["replications"] = json::array();
  for (const auto& r : records) {
    json line{{"replication", r.replication}, {"points", r.points.total_count()}};
    if (r.clusters) {
      line["clusters"] = r.clusters->size();
      line["certain_clusters"] = cluster_count(*r.clusters, true);
    }
    if (r.report) {
      line["face_to_face"] = to_json(*r.report)["face_to_face"];
      if (r.report->coverage) line["covered_fraction"] = r.report->coverage->fraction;
      line["holes_detected"] = r.report->holes_detected();
    }
    j["replications"].push_back(std::move(line));
  }
  return j;
}

void OutputSet::add(std::string path, std::string content) {
  files_.emplace_back(std::move(path), std::move(content));
}

void OutputSet::commit(std::ostream& stdout_stream) {
  namespace fs = std::filesystem;
  std::vector<fs::path> written;
  try {
    for (const auto& [path, content] : files_) {
      if (path == "-") continue;
      const fs::path tmp = path + ".partial";
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      written.push_back(tmp);
      out << content;
      out.close();
      if (!out) throw std::runtime_error("cannot write " + path);
    }
    for (const auto& [path, content] : files_) {
      if (path == "-") continue;
      fs::rename(path + ".partial", path);
      written.push_back(path);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
  for (const auto& [path, content] : files_)
    if (path == "-") stdout_stream << content << std::flush;
}

}  // namespace ctess::cli
