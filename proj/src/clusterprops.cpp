#include "clustertess/clusterprops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "spatial_grid.hpp"

namespace ctess {

const char* to_string(ClusterMode m) {
  return m == ClusterMode::in_configuration ? "in_configuration" : "for_configuration";
}

ClusterConfiguration::ClusterConfiguration(Window source_window, std::vector<Entry> entries)
    : window_(std::move(source_window)) {
  for (const auto& e : entries)
    if (e.cluster.dim() != window_.dim())
      throw std::invalid_argument("cluster dimension differs from the source window");

  std::vector<std::pair<Cluster, std::size_t>> keyed;
  keyed.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) keyed.emplace_back(entries[i].cluster.canonical(), i);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.first.begin(), a.first.end(), b.first.begin(), b.first.end());
  });
  for (std::size_t i = 1; i < keyed.size(); ++i)
    if (keyed[i].first == keyed[i - 1].first)
      throw std::invalid_argument("cluster configuration contains a duplicate cluster");
  entries_.reserve(entries.size());
  for (const auto& [key, idx] : keyed) entries_.push_back(std::move(entries[idx]));
}

ClusterConfiguration ClusterConfiguration::certain() const {
  std::vector<Entry> kept;
  for (const auto& e : entries_)
    if (!e.boundary_uncertain) kept.push_back(e);
  return ClusterConfiguration(window_, std::move(kept));
}

ClusterConfiguration ClusterConfiguration::translated(const Point& t) const {
  std::vector<Entry> moved;
  moved.reserve(entries_.size());
  for (const auto& e : entries_) {
    std::vector<Point> pts(e.cluster.begin(), e.cluster.end());
    for (auto& p : pts) p += t;
    moved.push_back({Cluster(std::move(pts)), e.boundary_uncertain});
  }
  return ClusterConfiguration(window_.translated(t), std::move(moved));
}

namespace {

bool subset_of(const Cluster& x, const PointConfiguration& eta) {
  return std::all_of(x.begin(), x.end(), [&](const Point& p) { return eta.contains(p); });
}

// ---------------------------------------------------------------------------

class BoundHardcore final : public BoundProperty {
 public:
  BoundHardcore(double r, const PointConfiguration& eta)
      : r_(r), eta_(eta), points_(eta.points()), grid_(points_, r) {}

  void for_each_candidate(const std::function<void(const Cluster&)>& sink) const override {
    for (const auto& p : points_) sink(Cluster{p});
  }

  bool admits(const Cluster& x) const override {
    if (x.size() != 1 || x.dim() != eta_.dim() || !eta_.contains(x[0])) return false;
    const Point& a = x[0];
    const double r2 = r_ * r_;
    return !grid_.any_within(a, r_, [&](std::size_t i) {
      return points_[i] != a && squared_distance(points_[i], a) < r2;
    });
  }

  bool boundary_uncertain(const Cluster& x) const override {
    return eta_.window().distance_to_boundary(x[0]) < r_;
  }

 private:
  double r_;
  const PointConfiguration& eta_;
  std::vector<Point> points_;
  detail::SpatialGrid grid_;
};

class BoundDelone final : public BoundProperty {
 public:
  BoundDelone(double r_cap, DeloneOptions options, const PointConfiguration& eta)
      : r_cap_(r_cap),
        options_(options),
        eta_(eta),
        points_(eta.points()),
        grid_(points_, 2.0 * r_cap) {}

  void for_each_candidate(const std::function<void(const Cluster&)>& sink) const override {
    const std::size_t k = eta_.dim() + 1;
    const double diam = 2.0 * r_cap_;
    const double diam2 = diam * diam;
    std::vector<std::size_t> chosen;
    std::vector<Point> simplex;
    std::vector<std::size_t> near;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      near.clear();
      grid_.for_each_within(points_[i], diam, [&](std::size_t j) {
        if (j > i && squared_distance(points_[i], points_[j]) <= diam2) near.push_back(j);
      });
      std::sort(near.begin(), near.end());
      chosen.assign(1, i);
      extend(near, 0, k, diam2, chosen, simplex, sink);
    }
  }

  bool admits(const Cluster& x) const override {
    const std::size_t d = eta_.dim();
    if (x.dim() != d || x.size() != d + 1 || !subset_of(x, eta_)) return false;
    Ball k;
    try {
      k = circumball(x, options_.tol);
    } catch (const DegenerateSimplex&) {
      return false;
    }
    if (!(k.radius <= r_cap_)) return false;
    const double reach = k.radius * (1.0 + 2.0 * options_.tol.eps_geom);
    const bool blocked = grid_.any_within(k.center, reach, [&](std::size_t i) {
      const Point& p = points_[i];
      if (x.contains(p)) return false;
      const Containment c = ball_contains(k, p, options_.tol);
      return options_.open_ball_mode ? c == Containment::inside : c != Containment::outside;
    });
    return !blocked;
  }

  bool boundary_uncertain(const Cluster& x) const override {
    return !eta_.window().contains(circumball(x, options_.tol));
  }

 private:
  // Depth-first extension of `chosen` by indices from `near` (ascending)
  // keeping every pairwise distance within the diameter bound.
  void extend(const std::vector<std::size_t>& near, std::size_t from, std::size_t k, double diam2,
              std::vector<std::size_t>& chosen, std::vector<Point>& simplex,
              const std::function<void(const Cluster&)>& sink) const {
    if (chosen.size() == k) {
      simplex.clear();
      for (std::size_t i : chosen) simplex.push_back(points_[i]);
      sink(Cluster(simplex));
      return;
    }
    for (std::size_t n = from; n < near.size(); ++n) {
      const std::size_t j = near[n];
      bool ok = true;
      for (std::size_t c = 1; c < chosen.size() && ok; ++c)
        ok = squared_distance(points_[chosen[c]], points_[j]) <= diam2;
      if (!ok) continue;
      chosen.push_back(j);
      extend(near, n + 1, k, diam2, chosen, simplex, sink);
      chosen.pop_back();
    }
  }

  double r_cap_;
  DeloneOptions options_;
  const PointConfiguration& eta_;
  std::vector<Point> points_;
  detail::SpatialGrid grid_;
};

class BoundVoronoi final : public BoundProperty {
 public:
  BoundVoronoi(const Window& window, Tolerance tol, const PointConfiguration& eta) : tol_(tol) {
    if (eta.dim() != 2) throw UnsupportedDimension("Voronoi clusters are implemented for d = 2");
    const PointConfiguration simple = support(eta);
    const std::vector<Point> pts = simple.points();
    const auto tris = extract_clusters(
        DeloneProperty(std::numeric_limits<double>::infinity(), DeloneOptions{false, tol}), simple);

    auto index_of = [&](const Point& p) {
      return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
    };
    std::vector<std::vector<std::size_t>> incident(pts.size());
    std::vector<Point> centers;
    std::vector<std::array<std::size_t, 3>> corners;
    for (const auto& e : tris) {
      std::array<std::size_t, 3> idx{};
      for (std::size_t v = 0; v < 3; ++v) {
        idx[v] = index_of(e.cluster[v]);
        incident[idx[v]].push_back(centers.size());
      }
      centers.push_back(circumball(e.cluster, tol).center);
      corners.push_back(idx);
    }

    for (std::size_t a = 0; a < pts.size(); ++a) {
      if (incident[a].empty()) continue;
      // The cell is bounded iff the incident triangles close up into a fan:
      // each neighbouring point then borders exactly two of them.
      std::map<std::size_t, int> edge_uses;
      for (std::size_t t : incident[a])
        for (std::size_t v : corners[t])
          if (v != a) ++edge_uses[v];
      bool bounded = incident[a].size() >= 3;
      for (const auto& [v, uses] : edge_uses) bounded = bounded && uses == 2;

      std::vector<Point> verts;
      for (std::size_t t : incident[a]) verts.push_back(centers[t]);
      const Point c = pts[a];
      auto angle = [&](const Point& v) { return std::atan2(v[1] - c[1], v[0] - c[0]); };
      std::sort(verts.begin(), verts.end(),
                [&](const Point& u, const Point& v) { return angle(u) < angle(v); });

      std::vector<Point> key = verts;
      std::sort(key.begin(), key.end());
      if (std::adjacent_find(key.begin(), key.end()) != key.end()) continue;

      bool certain = true;
      for (const auto& v : verts) certain = certain && window.contains(Ball{v, distance(v, c), true});
      cells_.push_back({Cluster(std::move(verts)), bounded, certain});
      by_vertices_.emplace(std::move(key), cells_.size() - 1);
    }
  }

  void for_each_candidate(const std::function<void(const Cluster&)>& sink) const override {
    for (const auto& cell : cells_) sink(cell.vertices);
  }

  bool admits(const Cluster& x) const override {
    const Cell* cell = find(x);
    return cell != nullptr && cell->bounded && is_discrete_polytope(x, tol_);
  }

  bool boundary_uncertain(const Cluster& x) const override {
    const Cell* cell = find(x);
    return cell == nullptr || !cell->certain;
  }

 private:
  struct Cell {
    Cluster vertices;
    bool bounded;
    bool certain;
  };

  const Cell* find(const Cluster& x) const {
    if (x.dim() != 2) return nullptr;
    std::vector<Point> key(x.begin(), x.end());
    std::sort(key.begin(), key.end());
    auto it = by_vertices_.find(key);
    return it == by_vertices_.end() ? nullptr : &cells_[it->second];
  }

  Tolerance tol_;
  std::vector<Cell> cells_;
  std::map<std::vector<Point>, std::size_t> by_vertices_;
};

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

bool admits(const ClusterProperty& prop, const Cluster& x, const PointConfiguration& eta) {
  if (prop.mode() == ClusterMode::in_configuration && !subset_of(x, eta)) return false;
  return prop.bind(eta)->admits(x);
}

ClusterConfiguration extract_clusters(const ClusterProperty& prop, const PointConfiguration& eta) {
  return extract_clusters(prop, eta, prop.mode());
}

ClusterConfiguration extract_clusters(const ClusterProperty& prop, const PointConfiguration& eta,
                                      ClusterMode mode) {
  const bool in_mode = mode == ClusterMode::in_configuration;
  // Candidates of an in-configuration property are drawn from eta itself, so
  // its for-configuration family cannot be enumerated.
  if (!in_mode && prop.mode() == ClusterMode::in_configuration)
    throw std::invalid_argument(prop.name() + " supports only clusters in a configuration");
  if (in_mode && !eta.is_simple())
    throw NotSimple("clusters in a configuration need a simple configuration");
  std::vector<ClusterConfiguration::Entry> entries;
  if (!eta.empty()) {
    const auto bound = prop.bind(eta);
    bound->for_each_candidate([&](const Cluster& x) {
      if (in_mode && !subset_of(x, eta)) return;
      if (bound->admits(x)) entries.push_back({x, bound->boundary_uncertain(x)});
    });
  }
  return ClusterConfiguration(eta.window(), std::move(entries));
}

std::size_t cluster_count(const ClusterConfiguration& cfg, bool certain_only) {
  if (!certain_only) return cfg.size();
  return static_cast<std::size_t>(std::count_if(
      cfg.begin(), cfg.end(), [](const auto& e) { return !e.boundary_uncertain; }));
}

// ---------------------------------------------------------------------------

HardcoreProperty::HardcoreProperty(double r) : r_(r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("hard-core radius must be positive");
}

std::string HardcoreProperty::name() const { return "hardcore(r=" + format_number(r_) + ")"; }

std::unique_ptr<BoundProperty> HardcoreProperty::bind(const PointConfiguration& eta) const {
  return std::make_unique<BoundHardcore>(r_, eta);
}

DeloneProperty::DeloneProperty(double radius_cap, DeloneOptions options)
    : r_cap_(radius_cap), options_(options) {
  if (!(radius_cap > 0.0)) throw std::invalid_argument("Delone radius cap must be positive");
  options_.tol.validate();
}

std::string DeloneProperty::name() const {
  return std::string("delone(R=") + format_number(r_cap_) +
         (options_.open_ball_mode ? ", open)" : ")");
}

std::unique_ptr<BoundProperty> DeloneProperty::bind(const PointConfiguration& eta) const {
  return std::make_unique<BoundDelone>(r_cap_, options_, eta);
}

Point DeloneProperty::anchor(const Cluster& x) const { return circumball(x, options_.tol).center; }

VoronoiProperty::VoronoiProperty(Window window, Tolerance tol)
    : window_(std::move(window)), tol_(tol) {
  if (window_.dim() != 2) throw UnsupportedDimension("Voronoi clusters are implemented for d = 2");
  tol_.validate();
}

std::string VoronoiProperty::name() const { return "voronoi"; }

std::unique_ptr<BoundProperty> VoronoiProperty::bind(const PointConfiguration& eta) const {
  return std::make_unique<BoundVoronoi>(window_, tol_, eta);
}

HardcoreProperty hardcore_property(double r) { return HardcoreProperty(r); }

DeloneProperty delone_property(double radius_cap, DeloneOptions options) {
  return DeloneProperty(radius_cap, options);
}

VoronoiProperty voronoi_property(const Window& w) { return VoronoiProperty(w); }

}  // namespace ctess
