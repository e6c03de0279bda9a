#pragma once

// Point configurations on bounded windows and the samplers that produce
// them: homogeneous Poisson, Poisson with a discrete lattice intensity, the
// deterministic lattice, the support map and the barycentre shift.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "clustertess/geometry.hpp"
#include "clustertess/random.hpp"

namespace ctess {

class BallsOverlap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooFewPoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Axis-aligned observation window. Clusters whose membership could change
/// because of points outside the window are flagged by the cluster
/// properties; buffer_margin is the band near the boundary that statistics
/// and coverage estimates leave out.
class Window {
 public:
  Window(Point low, Point high, double buffer_margin = 0.0);

  /// [0, side]^d
  static Window cube(std::size_t d, double side, double buffer_margin = 0.0);

  const Point& low() const { return low_; }
  const Point& high() const { return high_; }
  double buffer_margin() const { return buffer_margin_; }
  std::size_t dim() const { return low_.dim(); }

  double volume() const;
  bool contains(const Point& p) const;
  bool contains(const Ball& b) const;
  /// Euclidean distance from an interior point to the window boundary.
  double distance_to_boundary(const Point& p) const;
  /// The window shrunk by buffer_margin on every side (margin of result 0).
  Window eroded() const;
  Window translated(const Point& t) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Point low_;
  Point high_;
  double buffer_margin_;
};

struct Atom {
  Point point;
  std::uint32_t multiplicity = 1;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finite counting measure: distinct points with positive multiplicities,
/// all inside the window. Atoms are kept sorted lexicographically.
class PointConfiguration {
 public:
  explicit PointConfiguration(Window window, std::vector<Atom> atoms = {});

  const Window& window() const { return window_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t dim() const { return window_.dim(); }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  std::uint64_t total_count() const;
  bool is_simple() const;
  std::vector<Point> points() const;
  /// Binary search over the sorted atoms.
  bool contains(const Point& p) const;
  PointConfiguration translated(const Point& t) const;

  friend bool operator==(const PointConfiguration&, const PointConfiguration&) = default;

 private:
  Window window_;
  std::vector<Atom> atoms_;
};

/// Discrete intensity measure rho = sum over sites of c * delta_site.
struct DiscreteIntensity {
  std::vector<Point> sites;
  double c = 1.0;
  Window window;

  /// Throws std::invalid_argument unless c > 0, sites are distinct and all
  /// sites lie in the window.
  void validate() const;
};

PointConfiguration sample_poisson_homogeneous(double lambda, const Window& w, Seed s);
PointConfiguration sample_poisson_discrete(const DiscreteIntensity& rho, Seed s);

/// Same points, every multiplicity set to one.
PointConfiguration support(const PointConfiguration& eta);

PointConfiguration deterministic_lattice(std::span<const Point> sites, const Window& w);

/// One point per site: the multiplicity-weighted barycentre of the atoms in
/// the open ball B_epsilon(site), or the site itself when that ball holds no
/// atom. The result is in site order. Throws BallsOverlap unless
/// 2 * epsilon < min pairwise site distance.
std::vector<Point> barycentre_map(const PointConfiguration& eta, std::span<const Point> sites,
                                  double epsilon);

/// barycentre_map as a configuration. Its window is eta's window enlarged to
/// cover every closed ball around the sites.
PointConfiguration barycentre_shift(const PointConfiguration& eta, std::span<const Point> sites,
                                    double epsilon);

/// Exact minimum pairwise Euclidean distance. Throws TooFewPoints for fewer
/// than two points.
double min_pairwise_distance(std::span<const Point> points);

}  // namespace ctess
