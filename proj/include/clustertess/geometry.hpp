#pragma once

// Geometric primitives for clusters: points, balls, circumballs of simplices,
// convex hulls and the face-to-face relation between simplices.
//
// All predicates share one relative tolerance (Tolerance::eps_geom). Lengths
// are compared against eps_geom times a natural scale of the inputs (the
// radius for ball tests, the configuration diameter for hull tests), and
// barycentric coordinates, being dimensionless, against eps_geom directly.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctess {

/// Largest ambient dimension a Point can carry. Circumballs work in any
/// dimension up to this bound; hulls and face checks are limited to d <= 3.
inline constexpr std::size_t kMaxDimension = 8;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateSimplex : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class UnsupportedDimension : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

struct Tolerance {
  double eps_geom = 1e-9;

  /// Throws std::invalid_argument unless eps_geom > 0.
  void validate() const;
};

class Point {
 public:
  Point() = default;
  /// The origin of R^dim.
  explicit Point(std::size_t dim);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  std::size_t dim() const { return dim_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> coords() const { return {c_.data(), dim_}; }

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(double s);
  Point& operator/=(double s);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator/(Point a, double s) { return a /= s; }

  friend bool operator==(const Point& a, const Point& b);
  /// Lexicographic order on (dim, coordinates).
  friend bool operator<(const Point& a, const Point& b);

 private:
  std::array<double, kMaxDimension> c_{};
  std::uint8_t dim_ = 0;
};

double dot(const Point& a, const Point& b);
double squared_norm(const Point& a);
double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
std::string to_string(const Point& p);

/// A finite set of distinct points of one dimension. The stored order is
/// preserved (Voronoi cells keep their angular order); set semantics are
/// available through canonical() and same_points().
class Cluster {
 public:
  /// Throws std::invalid_argument on an empty set, mixed dimensions or
  /// repeated points.
  explicit Cluster(std::vector<Point> points);
  Cluster(std::initializer_list<Point> points);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.front().dim(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Copy with the points sorted lexicographically.
  Cluster canonical() const;
  /// Set equality (order-insensitive, exact coordinates).
  bool same_points(const Cluster& other) const;
  bool contains(const Point& p) const;
  Point barycentre() const;

  friend bool operator==(const Cluster&, const Cluster&) = default;

 private:
  std::vector<Point> points_;
};

/// Strict weak order on clusters by their canonical point sequences.
bool canonical_less(const Cluster& a, const Cluster& b);

struct Ball {
  Point center;
  double radius = 0.0;
  bool boundary_included = true;
};

struct Box {
  Point low;
  Point high;

  bool overlaps(const Box& other, double slack = 0.0) const;
  double diameter() const;
};

Box bounding_box(std::span<const Point> points);

enum class Containment { inside, on_boundary, outside };
enum class FaceRelation { disjoint, common_face, improper };

const char* to_string(Containment c);
const char* to_string(FaceRelation r);

/// Circumball of a full-dimensional simplex given as d+1 points of R^d.
/// The result does not depend on the order of the vertices. Throws
/// DegenerateSimplex when the vertices are affinely dependent within
/// tolerance and std::invalid_argument when the point count is not d+1.
Ball circumball(std::span<const Point> simplex, Tolerance tol = {});
Ball circumball(const Cluster& simplex, Tolerance tol = {});

/// Trichotomy relative to the sphere, with slack tol.eps_geom * radius.
Containment ball_contains(const Ball& b, const Point& p, Tolerance tol = {});

/// True when the points are d+1 affinely independent points of R^d.
bool is_simplex(std::span<const Point> points, Tolerance tol = {});

/// Barycentric coordinates of p with respect to a full-dimensional simplex.
/// Throws DegenerateSimplex for affinely dependent vertices.
std::vector<double> barycentric_coordinates(std::span<const Point> simplex,
                                            const Point& p,
                                            Tolerance tol = {});

/// Extreme points of the convex hull, d in {1, 2, 3}. In 2D the result is
/// ordered counterclockwise starting at the lexicographically smallest
/// vertex; in 1D and 3D it is sorted lexicographically.
Cluster convex_hull_vertices(const Cluster& x, Tolerance tol = {});

/// True iff every point of x is an extreme point of its convex hull.
/// Supported for d in {1, 2, 3}; throws UnsupportedDimension otherwise.
bool is_discrete_polytope(const Cluster& x, Tolerance tol = {});

/// Relation between the convex hulls of two discrete simplices of equal
/// dimension d in {1, 2, 3}: disjoint, meeting exactly in the hull of their
/// shared vertices, or overlapping improperly.
FaceRelation common_face_check(const Cluster& x, const Cluster& y,
                               Tolerance tol = {});

/// Half-space description of the convex hull of a full-dimensional cluster,
/// used for fast point-in-hull queries. Clusters whose hull has empty
/// interior contain no point.
class ConvexRegion {
 public:
  explicit ConvexRegion(const Cluster& x, Tolerance tol = {});

  bool contains(const Point& p) const;
  const Box& bounds() const { return bounds_; }
  bool full_dimensional() const { return full_dimensional_; }

 private:
  struct HalfSpace {
    Point normal;  // unit outward normal
    double offset;
  };

  std::vector<HalfSpace> faces_;
  Box bounds_;
  double slack_ = 0.0;
  bool full_dimensional_ = false;
};

}  // namespace ctess
