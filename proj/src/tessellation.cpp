#include "clustertess/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ctess {

bool CoverageEstimate::holes_detected() const { return fraction + 4.0 * standard_error < 1.0; }

TessellationReport check_face_to_face(const ClusterConfiguration& cfg, Tolerance tol) {
  tol.validate();
  const std::size_t d = cfg.source_window().dim();
  std::vector<Box> boxes;
  boxes.reserve(cfg.size());
  for (const auto& e : cfg) {
    if (!is_simplex(e.cluster.points(), tol))
      throw NonSimplicialInput("face-to-face check needs full-dimensional simplices");
    boxes.push_back(bounding_box(e.cluster.points()));
  }
  if (d > 3) throw UnsupportedDimension("face checks are implemented for d in {1, 2, 3}");

  const Window& w = cfg.source_window();
  const double slack = tol.eps_geom * distance(w.low(), w.high());
  std::vector<std::size_t> order(cfg.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return boxes[a].low[0] < boxes[b].low[0]; });

  TessellationReport report;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (boxes[j].low[0] > boxes[i].high[0] + slack) break;
      if (!boxes[i].overlaps(boxes[j], slack)) continue;
      if (common_face_check(cfg[i].cluster, cfg[j].cluster, tol) == FaceRelation::improper)
        report.violations.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  report.face_to_face = report.violations.empty();
  return report;
}

bool check_simplicial(const ClusterConfiguration& cfg, std::size_t d, Tolerance tol) {
  return std::all_of(cfg.begin(), cfg.end(), [&](const auto& e) {
    return e.cluster.dim() == d && is_simplex(e.cluster.points(), tol);
  });
}

CoverageEstimate covered_fraction(const ClusterConfiguration& cfg, const Window& w,
                                  std::size_t n_samples, Seed s,
                                  const std::function<bool(const Point&)>& excused) {
  if (n_samples == 0) throw std::invalid_argument("coverage needs at least one sample");
  const Window region = w.eroded();
  const std::size_t d = region.dim();

  std::vector<ConvexRegion> hulls;
  for (const auto& e : cfg) {
    ConvexRegion r(e.cluster);
    if (r.full_dimensional() && r.bounds().overlaps(Box{region.low(), region.high()}))
      hulls.push_back(std::move(r));
  }

  // Bucket the hulls on a uniform grid over the sampled region.
  const std::size_t per_axis = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::pow(static_cast<double>(hulls.size()) + 1.0, 1.0 / static_cast<double>(d))),
      1, 256);
  std::size_t n_cells = 1;
  for (std::size_t j = 0; j < d; ++j) n_cells *= per_axis;
  auto cell_coord = [&](double x, std::size_t j) {
    const double t = (x - region.low()[j]) / (region.high()[j] - region.low()[j]);
    return static_cast<std::size_t>(
        std::clamp(std::floor(t * static_cast<double>(per_axis)), 0.0, static_cast<double>(per_axis - 1)));
  };
  std::vector<std::vector<std::size_t>> buckets(n_cells);
  for (std::size_t h = 0; h < hulls.size(); ++h) {
    std::array<std::size_t, kMaxDimension> lo{}, hi{}, k{};
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = cell_coord(hulls[h].bounds().low[j], j);
      hi[j] = cell_coord(hulls[h].bounds().high[j], j);
    }
    k = lo;
    for (;;) {
      std::size_t flat = 0;
      for (std::size_t j = d; j-- > 0;) flat = flat * per_axis + k[j];
      buckets[flat].push_back(h);
      std::size_t j = 0;
      for (; j < d; ++j) {
        if (k[j] < hi[j]) {
          ++k[j];
          break;
        }
        k[j] = lo[j];
      }
      if (j == d) break;
    }
  }

  Rng rng(s);
  std::size_t covered = 0, excused_count = 0;
  Point x(d);
  for (std::size_t n = 0; n < n_samples; ++n) {
    std::size_t flat = 0;
    for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(region.low()[j], region.high()[j]);
    for (std::size_t j = d; j-- > 0;) flat = flat * per_axis + cell_coord(x[j], j);
    const auto& bucket = buckets[flat];
    const bool hit = std::any_of(bucket.begin(), bucket.end(),
                                 [&](std::size_t h) { return hulls[h].contains(x); });
    if (hit) ++covered;
    else if (excused && excused(x)) ++excused_count;
  }

  CoverageEstimate est;
  est.n_samples = n_samples;
  est.fraction = static_cast<double>(covered) / static_cast<double>(n_samples);
  est.excused_fraction = static_cast<double>(excused_count) / static_cast<double>(n_samples);
  est.standard_error = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(n_samples));
  return est;
}

TessellationReport validate_tessellation(const ClusterConfiguration& cfg, const Window& w,
                                         std::size_t n_samples, Seed s, Tolerance tol,
                                         const std::function<bool(const Point&)>& excused) {
  const bool simplicial = check_simplicial(cfg, w.dim(), tol);
  TessellationReport report;
  if (simplicial && w.dim() <= 3) report = check_face_to_face(cfg, tol);
  report.simplicial = simplicial;
  if (w.dim() <= 3) report.coverage = covered_fraction(cfg, w, n_samples, s, excused);
  return report;
}

std::function<bool(const Point&)> voronoi_uncertain_region(const PointConfiguration& eta,
                                                           const ClusterConfiguration& cells) {
  const std::vector<Point> sites = eta.points();
  auto nearest = [sites](const Point& p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sites.size(); ++i)
      if (squared_distance(p, sites[i]) < squared_distance(p, sites[best])) best = i;
    return best;
  };
  // The barycentre of a cell's vertices is interior to the cell, so its
  // nearest site is the generator.
  std::vector<bool> certain(sites.size(), false);
  if (!sites.empty())
    for (const auto& e : cells)
      if (!e.boundary_uncertain) certain[nearest(e.cluster.barycentre())] = true;
  return [nearest, certain, empty = sites.empty()](const Point& p) {
    return empty || !certain[nearest(p)];
  };
}

}  // namespace ctess
