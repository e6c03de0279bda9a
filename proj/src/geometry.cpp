#include "clustertess/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "linalg.hpp"

namespace ctess {

void Tolerance::validate() const {
  if (!(eps_geom > 0.0) || !std::isfinite(eps_geom))
    throw std::invalid_argument("eps_geom must be a positive finite number");
}

Point::Point(std::size_t dim) {
  if (dim > kMaxDimension) throw UnsupportedDimension("point dimension exceeds kMaxDimension");
  dim_ = static_cast<std::uint8_t>(dim);
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords) : Point(coords.size()) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) throw std::invalid_argument("point coordinates must be finite");
    c_[i] = coords[i];
  }
}

Point& Point::operator+=(const Point& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
  return *this;
}

Point& Point::operator/=(double s) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] /= s;
  return *this;
}

bool operator==(const Point& a, const Point& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

bool operator<(const Point& a, const Point& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  const auto ca = a.coords();
  const auto cb = b.coords();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const Point& a) { return dot(a, a); }

double squared_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

Cluster::Cluster(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("a cluster needs at least one point");
  const std::size_t d = points_.front().dim();
  if (d == 0) throw std::invalid_argument("cluster points must have dimension >= 1");
  for (const auto& p : points_)
    if (p.dim() != d) throw std::invalid_argument("cluster points have mixed dimensions");
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("cluster contains a repeated point");
}

Cluster::Cluster(std::initializer_list<Point> points) : Cluster(std::vector<Point>(points)) {}

Cluster Cluster::canonical() const {
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  return Cluster(std::move(sorted));
}

bool Cluster::same_points(const Cluster& other) const {
  if (size() != other.size()) return false;
  return canonical() == other.canonical();
}

bool Cluster::contains(const Point& p) const {
  return std::find(points_.begin(), points_.end(), p) != points_.end();
}

Point Cluster::barycentre() const {
  Point s(dim());
  for (const auto& p : points_) s += p;
  return s / static_cast<double>(points_.size());
}

bool canonical_less(const Cluster& a, const Cluster& b) {
  const Cluster ca = a.canonical();
  const Cluster cb = b.canonical();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

bool Box::overlaps(const Box& other, double slack) const {
  for (std::size_t i = 0; i < low.dim(); ++i) {
    if (high[i] + slack < other.low[i] || other.high[i] + slack < low[i]) return false;
  }
  return true;
}

double Box::diameter() const { return distance(low, high); }

Box bounding_box(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("bounding box of an empty point set");
  Box b{points.front(), points.front()};
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      b.low[i] = std::min(b.low[i], p[i]);
      b.high[i] = std::max(b.high[i], p[i]);
    }
  }
  return b;
}

const char* to_string(Containment c) {
  switch (c) {
    case Containment::inside: return "inside";
    case Containment::on_boundary: return "on_boundary";
    case Containment::outside: return "outside";
  }
  return "?";
}

const char* to_string(FaceRelation r) {
  switch (r) {
    case FaceRelation::disjoint: return "disjoint";
    case FaceRelation::common_face: return "common_face";
    case FaceRelation::improper: return "improper";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

void check_simplex_shape(std::span<const Point> simplex) {
  if (simplex.empty()) throw std::invalid_argument("empty simplex");
  const std::size_t d = simplex.front().dim();
  if (d == 0) throw std::invalid_argument("simplex points must have dimension >= 1");
  if (simplex.size() != d + 1)
    throw std::invalid_argument("a full-dimensional simplex in R^d needs exactly d+1 points");
  for (const auto& p : simplex)
    if (p.dim() != d) throw std::invalid_argument("simplex points have mixed dimensions");
}

// Affine map p -> barycentric coordinates of a full-dimensional simplex,
// stored as one affine form (row, constant) per vertex.
struct BarycentricMap {
  std::size_t d = 0;
  std::array<Point, kMaxDimension + 1> row;
  std::array<double, kMaxDimension + 1> constant{};

  double eval(std::size_t i, const Point& p) const { return dot(row[i], p) + constant[i]; }
};

bool make_barycentric_map(std::span<const Point> simplex, double eps, BarycentricMap& out) {
  const std::size_t d = simplex.front().dim();
  const Point& o = simplex[0];
  out.d = d;
  // Column j of the inverse solves M x = e_j, M having columns v_i - v_0.
  std::array<Point, kMaxDimension> inv_cols;
  for (std::size_t j = 0; j < d; ++j) {
    detail::SmallSystem s;
    s.n = d;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) s.a[r][c] = simplex[c + 1][r] - o[r];
      s.b[r] = (r == j) ? 1.0 : 0.0;
    }
    if (!detail::solve(s, eps)) return false;
    inv_cols[j] = Point(d);
    for (std::size_t r = 0; r < d; ++r) inv_cols[j][r] = s.b[r];
  }
  Point sum_row(d);
  double sum_const = 0.0;
  for (std::size_t i = 1; i <= d; ++i) {
    Point r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = inv_cols[j][i - 1];
    out.row[i] = r;
    out.constant[i] = -dot(r, o);
    sum_row += r;
    sum_const += out.constant[i];
  }
  out.row[0] = sum_row * -1.0;
  out.constant[0] = 1.0 - sum_const;
  return true;
}

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Indices of the 2D hull vertices of pts, counterclockwise from the
// lexicographically smallest one. Collinear boundary points are dropped.
std::vector<std::size_t> hull2d_indices(const std::vector<Point>& pts, double eps) {
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  if (order.size() <= 2) return order;

  auto left_turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    const double c = cross2(pts[o], pts[a], pts[b]);
    return c > eps * distance(pts[o], pts[a]) * distance(pts[o], pts[b]);
  };

  std::vector<std::size_t> h;
  h.reserve(2 * order.size());
  for (std::size_t i : order) {
    while (h.size() >= 2 && !left_turn(h[h.size() - 2], h.back(), i)) h.pop_back();
    h.push_back(i);
  }
  const std::size_t lower = h.size() + 1;
  for (std::size_t k = order.size() - 1; k-- > 0;) {
    const std::size_t i = order[k];
    while (h.size() >= lower && !left_turn(h[h.size() - 2], h.back(), i)) h.pop_back();
    h.push_back(i);
  }
  h.pop_back();
  return h;
}

Point cross3(const Point& a, const Point& b) {
  return Point{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct SupportingPlane {
  Point outward;  // unit normal, no point lies beyond it
  double offset;
  Point axis_u;   // in-plane orthonormal basis
  Point axis_v;
  std::vector<std::size_t> on_plane;
};

// Enumerates every plane through three non-collinear points that leaves all
// points on one side and at least one point strictly off the plane. Returns
// false when the point set is coplanar (or collinear).
bool supporting_planes_3d(const std::vector<Point>& pts, double eps, double slack,
                          const std::function<void(const SupportingPlane&)>& fn) {
  const std::size_t n = pts.size();
  bool found = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point ab = pts[j] - pts[i];
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point ac = pts[k] - pts[i];
        const Point nrm = cross3(ab, ac);
        const double len = std::sqrt(squared_norm(nrm));
        if (!(len > eps * std::sqrt(squared_norm(ab) * squared_norm(ac)))) continue;
        const Point unit = nrm / len;
        bool below = false, above = false;
        SupportingPlane plane;
        for (std::size_t l = 0; l < n; ++l) {
          const double s = dot(unit, pts[l] - pts[i]);
          if (s > slack) above = true;
          else if (s < -slack) below = true;
          else plane.on_plane.push_back(l);
        }
        if (above && below) continue;
        if (!above && !below) continue;  // coplanar with everything
        found = true;
        plane.outward = above ? unit * -1.0 : unit;
        plane.offset = dot(plane.outward, pts[i]);
        plane.axis_u = ab / std::sqrt(squared_norm(ab));
        plane.axis_v = cross3(unit, plane.axis_u);
        fn(plane);
      }
    }
  }
  return found;
}

std::vector<Point> project_to_plane(const std::vector<Point>& pts,
                                    const std::vector<std::size_t>& idx, const Point& origin,
                                    const Point& u, const Point& v) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    const Point q = pts[i] - origin;
    out.push_back(Point{dot(q, u), dot(q, v)});
  }
  return out;
}

// Extreme points of a set of points lying on a common line (any dimension):
// the two points farthest apart along the line direction.
std::vector<std::size_t> collinear_extremes(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return {0};
  std::size_t far = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (squared_distance(pts[i], pts[0]) > squared_distance(pts[far], pts[0])) far = i;
  const Point dir = pts[far] - pts[0];
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double t = dot(pts[i] - pts[0], dir);
    if (t < dot(pts[lo] - pts[0], dir)) lo = i;
    if (t > dot(pts[hi] - pts[0], dir)) hi = i;
  }
  if (lo == hi) return {lo};
  return {lo, hi};
}

std::vector<std::size_t> hull3d_indices(const std::vector<Point>& pts, double eps) {
  const double scale = bounding_box(pts).diameter();
  const double slack = eps * scale;
  std::vector<bool> extreme(pts.size(), false);
  const bool solid = supporting_planes_3d(pts, eps, slack, [&](const SupportingPlane& plane) {
    const auto flat = project_to_plane(pts, plane.on_plane, pts[plane.on_plane.front()],
                                       plane.axis_u, plane.axis_v);
    for (std::size_t h : hull2d_indices(flat, eps)) extreme[plane.on_plane[h]] = true;
  });
  if (!solid) {
    // Coplanar or collinear input: find a non-collinear triple for a basis.
    const std::size_t n = pts.size();
    for (std::size_t j = 1; j < n; ++j) {
      const Point ab = pts[j] - pts[0];
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point ac = pts[k] - pts[0];
        const Point nrm = cross3(ab, ac);
        const double len = std::sqrt(squared_norm(nrm));
        if (!(len > eps * std::sqrt(squared_norm(ab) * squared_norm(ac)))) continue;
        const Point u = ab / std::sqrt(squared_norm(ab));
        const Point v = cross3(nrm / len, u);
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        auto res = hull2d_indices(project_to_plane(pts, all, pts[0], u, v), eps);
        std::sort(res.begin(), res.end());
        return res;
      }
    }
    auto res = collinear_extremes(pts);
    std::sort(res.begin(), res.end());
    return res;
  }
  std::vector<std::size_t> res;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (extreme[i]) res.push_back(i);
  return res;
}

}  // namespace

Ball circumball(std::span<const Point> simplex, Tolerance tol) {
  tol.validate();
  check_simplex_shape(simplex);
  const std::size_t d = simplex.front().dim();

  // Sorting first makes the result independent of the vertex order.
  std::array<Point, kMaxDimension + 1> v;
  std::copy(simplex.begin(), simplex.end(), v.begin());
  std::sort(v.begin(), v.begin() + d + 1);

  // |x - v0|^2 = |x - vi|^2  <=>  2 (vi - v0) . y = |vi - v0|^2  with y = x - v0
  detail::SmallSystem s;
  s.n = d;
  for (std::size_t i = 1; i <= d; ++i) {
    const Point diff = v[i] - v[0];
    for (std::size_t j = 0; j < d; ++j) s.a[i - 1][j] = 2.0 * diff[j];
    s.b[i - 1] = squared_norm(diff);
  }
  if (!detail::solve(s, tol.eps_geom))
    throw DegenerateSimplex("simplex vertices are affinely dependent");

  Point center = v[0];
  for (std::size_t j = 0; j < d; ++j) center[j] += s.b[j];
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i <= d; ++i) {
    const double r = distance(center, v[i]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return Ball{center, 0.5 * (lo + hi), true};
}

Ball circumball(const Cluster& simplex, Tolerance tol) { return circumball(simplex.points(), tol); }

Containment ball_contains(const Ball& b, const Point& p, Tolerance tol) {
  const double dist = distance(b.center, p);
  const double slack = tol.eps_geom * b.radius;
  if (dist < b.radius - slack) return Containment::inside;
  if (std::abs(dist - b.radius) <= slack) return Containment::on_boundary;
  return Containment::outside;
}

bool is_simplex(std::span<const Point> points, Tolerance tol) {
  if (points.empty()) return false;
  const std::size_t d = points.front().dim();
  if (d == 0 || points.size() != d + 1) return false;
  for (const auto& p : points)
    if (p.dim() != d) return false;
  BarycentricMap map;
  return make_barycentric_map(points, tol.eps_geom, map);
}

std::vector<double> barycentric_coordinates(std::span<const Point> simplex, const Point& p,
                                            Tolerance tol) {
  check_simplex_shape(simplex);
  BarycentricMap map;
  if (!make_barycentric_map(simplex, tol.eps_geom, map))
    throw DegenerateSimplex("simplex vertices are affinely dependent");
  std::vector<double> out(simplex.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = map.eval(i, p);
  return out;
}

Cluster convex_hull_vertices(const Cluster& x, Tolerance tol) {
  tol.validate();
  const std::size_t d = x.dim();
  std::vector<Point> pts(x.begin(), x.end());
  std::vector<std::size_t> keep;
  switch (d) {
    case 1: keep = collinear_extremes(pts); std::sort(keep.begin(), keep.end(), [&](auto a, auto b) { return pts[a] < pts[b]; }); break;
    case 2: keep = hull2d_indices(pts, tol.eps_geom); break;
    case 3: keep = hull3d_indices(pts, tol.eps_geom); std::sort(keep.begin(), keep.end(), [&](auto a, auto b) { return pts[a] < pts[b]; }); break;
    default: throw UnsupportedDimension("convex hulls are implemented for d in {1, 2, 3}");
  }
  std::vector<Point> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(pts[i]);
  return Cluster(std::move(out));
}

bool is_discrete_polytope(const Cluster& x, Tolerance tol) {
  if (x.size() <= 1) return true;
  return convex_hull_vertices(x, tol).size() == x.size();
}

FaceRelation common_face_check(const Cluster& x, const Cluster& y, Tolerance tol) {
  tol.validate();
  const std::size_t d = x.dim();
  if (y.dim() != d) throw std::invalid_argument("simplices of different dimension");
  if (d < 1 || d > 3) throw UnsupportedDimension("face checks are implemented for d in {1, 2, 3}");
  check_simplex_shape(x.points());
  check_simplex_shape(y.points());

  std::vector<Point> all(x.begin(), x.end());
  all.insert(all.end(), y.begin(), y.end());
  const double slack = tol.eps_geom * bounding_box(all).diameter();
  if (!bounding_box(x.points()).overlaps(bounding_box(y.points()), slack))
    return FaceRelation::disjoint;

  BarycentricMap bx, by;
  if (!make_barycentric_map(x.points(), tol.eps_geom, bx) ||
      !make_barycentric_map(y.points(), tol.eps_geom, by))
    throw DegenerateSimplex("face check on a degenerate simplex");

  std::vector<bool> shared_x(d + 1, false), shared_y(d + 1, false);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; j <= d; ++j)
      if (distance(x[i], y[j]) <= slack) shared_x[i] = shared_y[j] = true;

  // conv(X) ∩ conv(Y) is the polytope {p : λX(p) >= 0, λY(p) >= 0}; its
  // vertices are the feasible points where d independent constraints are
  // tight.
  struct Form {
    Point row;
    double constant;
  };
  std::vector<Form> forms;
  for (std::size_t i = 0; i <= d; ++i) forms.push_back({bx.row[i], bx.constant[i]});
  for (std::size_t i = 0; i <= d; ++i) forms.push_back({by.row[i], by.constant[i]});
  const std::size_t m = forms.size();
  const double eps = tol.eps_geom;

  auto feasible = [&](const Point& p) {
    for (const auto& f : forms)
      if (dot(f.row, p) + f.constant < -eps) return false;
    return true;
  };
  auto inside_shared_face = [&](const Point& p) {
    for (std::size_t i = 0; i <= d; ++i) {
      if (!shared_x[i] && bx.eval(i, p) > eps) return false;
      if (!shared_y[i] && by.eval(i, p) > eps) return false;
    }
    return true;
  };

  bool any_vertex = false;
  std::array<std::size_t, 3> pick{};
  std::function<bool(std::size_t, std::size_t)> visit = [&](std::size_t depth,
                                                            std::size_t start) -> bool {
    if (depth == d) {
      detail::SmallSystem s;
      s.n = d;
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) s.a[r][c] = forms[pick[r]].row[c];
        s.b[r] = -forms[pick[r]].constant;
      }
      if (!detail::solve(s, eps)) return true;
      Point p(d);
      for (std::size_t c = 0; c < d; ++c) p[c] = s.b[c];
      if (!feasible(p)) return true;
      any_vertex = true;
      return inside_shared_face(p);
    }
    for (std::size_t k = start; k < m; ++k) {
      pick[depth] = k;
      if (!visit(depth + 1, k + 1)) return false;
    }
    return true;
  };
  const bool proper = visit(0, 0);
  if (!any_vertex) return FaceRelation::disjoint;
  return proper ? FaceRelation::common_face : FaceRelation::improper;
}

// ---------------------------------------------------------------------------

ConvexRegion::ConvexRegion(const Cluster& x, Tolerance tol) : bounds_(bounding_box(x.points())) {
  tol.validate();
  const std::size_t d = x.dim();
  slack_ = tol.eps_geom * bounds_.diameter();
  std::vector<Point> pts(x.begin(), x.end());
  switch (d) {
    case 1:
      if (pts.size() >= 2) {
        full_dimensional_ = true;
        faces_.push_back({Point{1.0}, bounds_.high[0]});
        faces_.push_back({Point{-1.0}, -bounds_.low[0]});
      }
      break;
    case 2: {
      const auto h = hull2d_indices(pts, tol.eps_geom);
      if (h.size() < 3) break;
      full_dimensional_ = true;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const Point& a = pts[h[i]];
        const Point& b = pts[h[(i + 1) % h.size()]];
        Point nrm{b[1] - a[1], a[0] - b[0]};
        nrm /= std::sqrt(squared_norm(nrm));
        faces_.push_back({nrm, dot(nrm, a)});
      }
      break;
    }
    case 3:
      full_dimensional_ = supporting_planes_3d(pts, tol.eps_geom, slack_,
                                               [&](const SupportingPlane& plane) {
                                                 faces_.push_back({plane.outward, plane.offset});
                                               });
      break;
    default:
      throw UnsupportedDimension("convex regions are implemented for d in {1, 2, 3}");
  }
}

bool ConvexRegion::contains(const Point& p) const {
  if (!full_dimensional_) return false;
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (p[i] < bounds_.low[i] - slack_ || p[i] > bounds_.high[i] + slack_) return false;
  for (const auto& f : faces_)
    if (dot(f.normal, p) > f.offset + slack_) return false;
  return true;
}

}  // namespace ctess
