#pragma once

// Cluster properties: relations between clusters (finite point sets) and
// point configurations, and the extraction of all clusters a property
// admits for a configuration.
//
// A property is evaluated in two steps. bind() prepares per-configuration
// state (spatial indices, a triangulation) and returns a BoundProperty that
// enumerates candidate clusters, decides membership and applies the
// property's boundary rule. Enumeration must be complete: every cluster the
// property admits for the configuration is among the candidates.

#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "clustertess/geometry.hpp"
#include "clustertess/pointproc.hpp"

namespace ctess {

class NotSimple : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "in": clusters must be subsets of the configuration; "for": arbitrary.
enum class ClusterMode { in_configuration, for_configuration };

const char* to_string(ClusterMode m);

/// A finite, duplicate-free collection of clusters extracted from one
/// configuration, sorted by canonical point order.
class ClusterConfiguration {
 public:
  struct Entry {
    Cluster cluster;
    /// True when points outside the source window could change membership.
    bool boundary_uncertain = false;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit ClusterConfiguration(Window source_window, std::vector<Entry> entries = {});

  const Window& source_window() const { return window_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Only the boundary-certain clusters.
  ClusterConfiguration certain() const;
  ClusterConfiguration translated(const Point& t) const;

  friend bool operator==(const ClusterConfiguration&, const ClusterConfiguration&) = default;

 private:
  Window window_;
  std::vector<Entry> entries_;
};

class BoundProperty {
 public:
  virtual ~BoundProperty() = default;

  virtual void for_each_candidate(const std::function<void(const Cluster&)>& sink) const = 0;
  virtual bool admits(const Cluster& x) const = 0;
  virtual bool boundary_uncertain(const Cluster& x) const = 0;
};

class ClusterProperty {
 public:
  virtual ~ClusterProperty() = default;

  virtual ClusterMode mode() const = 0;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<BoundProperty> bind(const PointConfiguration& eta) const = 0;

  /// Reference point of a cluster for intensity estimates: a point that is
  /// determined by the cluster and moves with it under translation. The
  /// default is the barycentre.
  virtual Point anchor(const Cluster& x) const { return x.barycentre(); }
};

/// Membership of a single pair (X, eta), including the subset requirement
/// for in-configuration properties.
bool admits(const ClusterProperty& prop, const Cluster& x, const PointConfiguration& eta);

/// All candidates passing membership, each flagged by the boundary rule.
/// Throws NotSimple for an in-configuration extraction on a configuration
/// with multiplicities.
ClusterConfiguration extract_clusters(const ClusterProperty& prop, const PointConfiguration& eta);

/// As above, with the mode overridden. Running a for-configuration property
/// in in_configuration mode keeps only candidates that are subsets of eta.
/// The reverse override throws std::invalid_argument.
ClusterConfiguration extract_clusters(const ClusterProperty& prop, const PointConfiguration& eta,
                                      ClusterMode mode);

std::size_t cluster_count(const ClusterConfiguration& cfg, bool certain_only);

/// Hard-core clusters: singletons {a}, a in eta, with no other point of eta
/// closer than r. Uncertain when a lies within r of the window boundary.
class HardcoreProperty final : public ClusterProperty {
 public:
  explicit HardcoreProperty(double r);

  double radius() const { return r_; }
  ClusterMode mode() const override { return ClusterMode::in_configuration; }
  std::string name() const override;
  std::unique_ptr<BoundProperty> bind(const PointConfiguration& eta) const override;
  Point anchor(const Cluster& x) const override { return x[0]; }

 private:
  double r_;
};

struct DeloneOptions {
  /// Conventional Delaunay test: only points strictly inside the circumball
  /// block a simplex. The default literal test also lets points on the
  /// circumsphere (other than the simplex's own vertices) block it.
  bool open_ball_mode = false;
  Tolerance tol{};
};

/// Delone clusters: full-dimensional simplices X in eta with circumradius
/// <= R whose circumball minus X holds no point of eta. Uncertain when the
/// circumball is not contained in the window. R may be +infinity.
class DeloneProperty final : public ClusterProperty {
 public:
  explicit DeloneProperty(double radius_cap, DeloneOptions options = {});

  double radius_cap() const { return r_cap_; }
  const DeloneOptions& options() const { return options_; }
  ClusterMode mode() const override { return ClusterMode::in_configuration; }
  std::string name() const override;
  std::unique_ptr<BoundProperty> bind(const PointConfiguration& eta) const override;
  /// The circumcenter.
  Point anchor(const Cluster& x) const override;

 private:
  double r_cap_;
  DeloneOptions options_;
};

/// Voronoi clusters (d = 2): the vertex set of the Voronoi cell of a point
/// of eta, ordered counterclockwise around that point starting from the
/// smallest polar angle. Vertices are the circumcenters of the Delone
/// triangles (R = infinity) incident to the point. Only bounded cells whose
/// vertex set is a discrete polytope are admitted; a cell is certain iff
/// every vertex v has its ball of radius |v - center| inside the window.
class VoronoiProperty final : public ClusterProperty {
 public:
  explicit VoronoiProperty(Window window, Tolerance tol = {});

  const Window& window() const { return window_; }
  ClusterMode mode() const override { return ClusterMode::for_configuration; }
  std::string name() const override;
  std::unique_ptr<BoundProperty> bind(const PointConfiguration& eta) const override;

 private:
  Window window_;
  Tolerance tol_;
};

HardcoreProperty hardcore_property(double r);
DeloneProperty delone_property(double radius_cap, DeloneOptions options = {});
VoronoiProperty voronoi_property(const Window& w);

}  // namespace ctess
