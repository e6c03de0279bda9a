#include "clustertess/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spatial_grid.hpp"

namespace ctess {

Window::Window(Point low, Point high, double buffer_margin)
    : low_(std::move(low)), high_(std::move(high)), buffer_margin_(buffer_margin) {
  if (low_.dim() == 0 || low_.dim() != high_.dim())
    throw std::invalid_argument("window corners must share a dimension >= 1");
  double min_extent = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < low_.dim(); ++i) {
    if (!(low_[i] < high_[i])) throw std::invalid_argument("window needs low < high componentwise");
    min_extent = std::min(min_extent, high_[i] - low_[i]);
  }
  if (!(buffer_margin_ >= 0.0) || !(buffer_margin_ < 0.5 * min_extent))
    throw std::invalid_argument("buffer margin must lie in [0, half the smallest window extent)");
}

Window Window::cube(std::size_t d, double side, double buffer_margin) {
  Point high(d);
  for (std::size_t i = 0; i < d; ++i) high[i] = side;
  return Window(Point(d), high, buffer_margin);
}

double Window::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= high_[i] - low_[i];
  return v;
}

bool Window::contains(const Point& p) const {
  if (p.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (p[i] < low_[i] || p[i] > high_[i]) return false;
  return true;
}

bool Window::contains(const Ball& b) const {
  if (b.center.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (b.center[i] - b.radius < low_[i] || b.center[i] + b.radius > high_[i]) return false;
  return true;
}

double Window::distance_to_boundary(const Point& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim(); ++i) d = std::min({d, p[i] - low_[i], high_[i] - p[i]});
  return d;
}

Window Window::eroded() const {
  Point lo = low_, hi = high_;
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] += buffer_margin_;
    hi[i] -= buffer_margin_;
  }
  return Window(lo, hi, 0.0);
}

Window Window::translated(const Point& t) const {
  return Window(low_ + t, high_ + t, buffer_margin_);
}

// ---------------------------------------------------------------------------

PointConfiguration::PointConfiguration(Window window, std::vector<Atom> atoms)
    : window_(std::move(window)), atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (a.multiplicity == 0) throw std::invalid_argument("atom multiplicity must be positive");
    if (a.point.dim() != window_.dim())
      throw std::invalid_argument("atom dimension differs from window dimension");
    if (!window_.contains(a.point))
      throw std::invalid_argument("atom " + to_string(a.point) + " lies outside the window");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.point < b.point; });
  const auto dup = std::adjacent_find(atoms_.begin(), atoms_.end(),
                                      [](const Atom& a, const Atom& b) { return a.point == b.point; });
  if (dup != atoms_.end())
    throw std::invalid_argument("repeated atom " + to_string(dup->point) +
                                "; use multiplicities instead");
}

std::uint64_t PointConfiguration::total_count() const {
  std::uint64_t n = 0;
  for (const auto& a : atoms_) n += a.multiplicity;
  return n;
}

bool PointConfiguration::is_simple() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.multiplicity == 1; });
}

std::vector<Point> PointConfiguration::points() const {
  std::vector<Point> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.point);
  return out;
}

bool PointConfiguration::contains(const Point& p) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                             [](const Atom& a, const Point& q) { return a.point < q; });
  return it != atoms_.end() && it->point == p;
}

PointConfiguration PointConfiguration::translated(const Point& t) const {
  std::vector<Atom> moved = atoms_;
  for (auto& a : moved) a.point += t;
  return PointConfiguration(window_.translated(t), std::move(moved));
}

void DiscreteIntensity::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("site mass c must be positive");
  for (const auto& s : sites)
    if (!window.contains(s)) throw std::invalid_argument("intensity site outside its window");
  std::vector<Point> sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("intensity sites must be distinct");
}

// ---------------------------------------------------------------------------

PointConfiguration sample_poisson_homogeneous(double lambda, const Window& w, Seed s) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("Poisson intensity must be positive and finite");
  Rng rng(s);
  const std::uint64_t n = rng.poisson(lambda * w.volume());
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Point p(w.dim());
    for (std::size_t j = 0; j < w.dim(); ++j) p[j] = rng.uniform(w.low()[j], w.high()[j]);
    atoms.push_back({p, 1});
  }
  return PointConfiguration(w, std::move(atoms));
}

PointConfiguration sample_poisson_discrete(const DiscreteIntensity& rho, Seed s) {
  rho.validate();
  Rng rng(s);
  std::vector<Atom> atoms;
  for (const auto& site : rho.sites) {
    const std::uint64_t k = rng.poisson(rho.c);
    if (k > 0) atoms.push_back({site, static_cast<std::uint32_t>(k)});
  }
  return PointConfiguration(rho.window, std::move(atoms));
}

PointConfiguration support(const PointConfiguration& eta) {
  std::vector<Atom> atoms(eta.atoms().begin(), eta.atoms().end());
  for (auto& a : atoms) a.multiplicity = 1;
  return PointConfiguration(eta.window(), std::move(atoms));
}

PointConfiguration deterministic_lattice(std::span<const Point> sites, const Window& w) {
  std::vector<Atom> atoms;
  atoms.reserve(sites.size());
  for (const auto& p : sites) atoms.push_back({p, 1});
  return PointConfiguration(w, std::move(atoms));
}

std::vector<Point> barycentre_map(const PointConfiguration& eta, std::span<const Point> sites,
                                  double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive and finite");
  for (const auto& s : sites)
    if (s.dim() != eta.dim()) throw std::invalid_argument("site dimension differs from eta");
  if (sites.size() >= 2 && !(2.0 * epsilon < min_pairwise_distance(sites)))
    throw BallsOverlap("epsilon-balls around the sites intersect (need 2*epsilon < min distance)");

  std::vector<Point> sum(sites.size(), Point(eta.dim()));
  std::vector<std::uint64_t> weight(sites.size(), 0);
  if (!sites.empty()) {
    const detail::SpatialGrid grid(sites, 2.0 * epsilon);
    const double eps2 = epsilon * epsilon;
    for (const auto& atom : eta.atoms()) {
      grid.for_each_within(atom.point, epsilon, [&](std::size_t i) {
        if (squared_distance(atom.point, sites[i]) < eps2) {  // open ball
          sum[i] += atom.point * static_cast<double>(atom.multiplicity);
          weight[i] += atom.multiplicity;
        }
      });
    }
  }
  std::vector<Point> out;
  out.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i)
    out.push_back(weight[i] == 0 ? sites[i] : sum[i] / static_cast<double>(weight[i]));
  return out;
}

PointConfiguration barycentre_shift(const PointConfiguration& eta, std::span<const Point> sites,
                                    double epsilon) {
  const auto shifted = barycentre_map(eta, sites, epsilon);
  Point lo = eta.window().low(), hi = eta.window().high();
  for (const auto& s : sites) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      lo[j] = std::min(lo[j], s[j] - epsilon);
      hi[j] = std::max(hi[j], s[j] + epsilon);
    }
  }
  std::vector<Atom> atoms;
  atoms.reserve(shifted.size());
  for (const auto& p : shifted) atoms.push_back({p, 1});
  return PointConfiguration(Window(lo, hi, eta.window().buffer_margin()), std::move(atoms));
}

double min_pairwise_distance(std::span<const Point> points) {
  if (points.size() < 2) throw TooFewPoints("min_pairwise_distance needs at least two points");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point& p = points[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Point& q = points[order[j]];
      if (q[0] - p[0] >= best) break;
      best = std::min(best, distance(p, q));
    }
  }
  return best;
}

}  // namespace ctess
