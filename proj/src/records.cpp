#include "clustertess/records.hpp"

#include <cmath>
#include <istream>

namespace ctess::cli {

using json = nlohmann::ordered_json;

namespace {

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::optional<bool> optional_bool_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

// JSON has no infinities; they are written as strings.
json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

bool operator==(const Record& a, const Record& b) {
  auto same_report = [](const std::optional<TessellationReport>& x,
                        const std::optional<TessellationReport>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || to_json(*x) == to_json(*y);
  };
  return a.replication == b.replication && a.points == b.points && a.clusters == b.clusters &&
         same_report(a.report, b.report);
}

json to_json(const Point& p) {
  json j = json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) j.push_back(p[i]);
  return j;
}

json to_json(const Window& w) {
  return {{"low", to_json(w.low())}, {"high", to_json(w.high())}, {"buffer_margin", w.buffer_margin()}};
}

json to_json(const TessellationReport& r) {
  json j;
  j["face_to_face"] = optional_bool(r.face_to_face);
  j["violations"] = json::array();
  for (const auto& [a, b] : r.violations) j["violations"].push_back({a, b});
  j["simplicial"] = optional_bool(r.simplicial);
  if (r.coverage) {
    j["coverage"] = {{"fraction", r.coverage->fraction},
                     {"standard_error", r.coverage->standard_error},
                     {"excused_fraction", r.coverage->excused_fraction},
                     {"n_samples", r.coverage->n_samples}};
  } else {
    j["coverage"] = nullptr;
  }
  j["holes_detected"] = r.holes_detected();
  return j;
}

json to_json(const Record& r) {
  json j;
  j["replication"] = r.replication;
  j["dimension"] = r.points.dim();
  j["window"] = to_json(r.points.window());
  json pts = json::array(), mult = json::array();
  for (const auto& a : r.points.atoms()) {
    pts.push_back(to_json(a.point));
    mult.push_back(a.multiplicity);
  }
  j["points"] = std::move(pts);
  j["multiplicities"] = std::move(mult);
  if (r.clusters) {
    json cs = json::array();
    for (const auto& e : *r.clusters) {
      json cp = json::array();
      for (const auto& p : e.cluster) cp.push_back(to_json(p));
      cs.push_back({{"points", std::move(cp)}, {"boundary_uncertain", e.boundary_uncertain}});
    }
    j["clusters"] = std::move(cs);
  } else {
    j["clusters"] = nullptr;
  }
  j["report"] = r.report ? to_json(*r.report) : json(nullptr);
  return j;
}

json to_json(const ChainRecord& r) {
  return {{"replication", r.replication},
          {"variant", r.variant},
          {"range", {r.range_lo, r.range_hi}},
          {"vertices", r.chain.vertices},
          {"tiles", r.chain.tiles}};
}

json to_json(const stats::TestReport& r) {
  return {{"name", r.name},
          {"statistic", number(r.statistic)},
          {"threshold", number(r.threshold)},
          {"n_samples", r.n_samples},
          {"passed", r.passed},
          {"details", r.details}};
}

Point point_from_json(const json& j) {
  const auto coords = j.get<std::vector<double>>();
  return Point(std::span<const double>(coords));
}

Window window_from_json(const json& j) {
  return Window(point_from_json(j.at("low")), point_from_json(j.at("high")),
                j.at("buffer_margin").get<double>());
}

TessellationReport report_from_json(const json& j) {
  TessellationReport r;
  r.face_to_face = optional_bool_from(j.at("face_to_face"));
  for (const auto& v : j.at("violations"))
    r.violations.emplace_back(v.at(0).get<std::size_t>(), v.at(1).get<std::size_t>());
  r.simplicial = optional_bool_from(j.at("simplicial"));
  if (const auto& c = j.at("coverage"); !c.is_null()) {
    CoverageEstimate e;
    e.fraction = c.at("fraction").get<double>();
    e.standard_error = c.at("standard_error").get<double>();
    e.excused_fraction = c.at("excused_fraction").get<double>();
    e.n_samples = c.at("n_samples").get<std::size_t>();
    r.coverage = e;
  }
  return r;
}

Record record_from_json(const json& j) {
  const Window w = window_from_json(j.at("window"));
  if (j.at("dimension").get<std::size_t>() != w.dim())
    throw RecordError("record dimension does not match its window");
  const auto& pts = j.at("points");
  const auto& mult = j.at("multiplicities");
  if (pts.size() != mult.size()) throw RecordError("points and multiplicities differ in length");
  std::vector<Atom> atoms;
  atoms.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    atoms.push_back({point_from_json(pts[i]), mult[i].get<std::uint32_t>()});

  Record r{j.at("replication").get<std::size_t>(), PointConfiguration(w, std::move(atoms)),
           std::nullopt, std::nullopt};
  if (const auto& cs = j.at("clusters"); !cs.is_null()) {
    std::vector<ClusterConfiguration::Entry> entries;
    for (const auto& c : cs) {
      std::vector<Point> cp;
      for (const auto& p : c.at("points")) cp.push_back(point_from_json(p));
      entries.push_back({Cluster(std::move(cp)), c.at("boundary_uncertain").get<bool>()});
    }
    r.clusters = ClusterConfiguration(w, std::move(entries));
  }
  if (const auto& rep = j.at("report"); !rep.is_null()) r.report = report_from_json(rep);
  return r;
}

std::string records_to_text(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

std::string chain_records_to_text(const std::vector<ChainRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

std::vector<Record> read_records(std::istream& in) {
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw RecordError("record line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ctess::cli
