#include "clustertess/cutproject.hpp"

#include <algorithm>
#include <cmath>

namespace ctess::silver {

namespace {

// Sites admitted within tolerance may sit a hair outside the nominal strip;
// windows around them get this much extra room.
constexpr double kWindowPad = 1e-6;

double slack(double x, const Tolerance& tol) { return tol.eps_geom * std::max(1.0, std::abs(x)); }

}  // namespace

double LatticeIndex::pi() const {
  return static_cast<double>(u) + static_cast<double>(v) * kSqrt2;
}

double LatticeIndex::pi_star() const {
  return static_cast<double>(u) - static_cast<double>(v) * kSqrt2;
}

Point LatticeIndex::embed() const { return Point{pi(), pi_star()}; }

std::vector<LatticeIndex> strip_points(double x_lo, double x_hi, double half_width,
                                       Tolerance tol) {
  tol.validate();
  if (!(x_lo < x_hi)) throw std::invalid_argument("strip_points needs x_lo < x_hi");
  if (!(half_width > 0.0)) throw std::invalid_argument("strip half width must be positive");

  // π - π* = 2v√2 bounds v; for fixed v, |u - v√2| <= half_width leaves at
  // most a couple of integers u.
  const auto v_lo = static_cast<std::int64_t>(std::floor((x_lo - half_width) / (2.0 * kSqrt2))) - 1;
  const auto v_hi = static_cast<std::int64_t>(std::ceil((x_hi + half_width) / (2.0 * kSqrt2))) + 1;
  const double strip_slack = slack(half_width, tol);

  std::vector<LatticeIndex> out;
  for (std::int64_t v = v_lo; v <= v_hi; ++v) {
    const double centre = static_cast<double>(v) * kSqrt2;
    const auto u_lo = static_cast<std::int64_t>(std::floor(centre - half_width)) - 1;
    const auto u_hi = static_cast<std::int64_t>(std::ceil(centre + half_width)) + 1;
    for (std::int64_t u = u_lo; u <= u_hi; ++u) {
      const LatticeIndex e{u, v};
      const double p = e.pi();
      if (std::abs(e.pi_star()) > half_width + strip_slack) continue;
      if (p < x_lo - slack(x_lo, tol) || p > x_hi + slack(x_hi, tol)) continue;
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const LatticeIndex& a, const LatticeIndex& b) { return a.pi() < b.pi(); });
  return out;
}

Chain chain_from_points(std::vector<double> xs, Tolerance tol) {
  tol.validate();
  std::sort(xs.begin(), xs.end());
  Chain c;
  c.tiles.reserve(xs.empty() ? 0 : xs.size() - 1);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double len = xs[i] - xs[i - 1];
    if (len <= slack(xs[i], tol))
      throw DuplicatePoints("chain vertices coincide within tolerance");
    c.tiles.push_back(len);
  }
  c.vertices = std::move(xs);
  return c;
}

Chain deterministic_chain(double x_lo, double x_hi) {
  std::vector<double> xs;
  for (const auto& e : strip_points(x_lo, x_hi)) xs.push_back(e.pi());
  return chain_from_points(std::move(xs));
}

DiscreteIntensity strip_intensity(double c, double x_lo, double x_hi) {
  std::vector<Point> sites;
  for (const auto& e : strip_points(x_lo, x_hi)) sites.push_back(e.embed());
  const double pad = kWindowPad * std::max({1.0, std::abs(x_lo), std::abs(x_hi)});
  Window w(Point{x_lo - pad, -kStripHalfWidth - pad}, Point{x_hi + pad, kStripHalfWidth + pad});
  return DiscreteIntensity{std::move(sites), c, std::move(w)};
}

Chain thinned_chain(double c, double x_lo, double x_hi, Seed s) {
  const PointConfiguration kept = support(sample_poisson_discrete(strip_intensity(c, x_lo, x_hi), s));
  std::vector<double> xs;
  xs.reserve(kept.size());
  for (const auto& a : kept.atoms()) xs.push_back(a.point[0]);
  return chain_from_points(std::move(xs));
}

PointSampler poisson_sampler(double lambda) {
  return [lambda](const Window& w, Seed s) { return sample_poisson_homogeneous(lambda, w, s); };
}

PointSampler empty_sampler() {
  return [](const Window& w, Seed) { return PointConfiguration(w); };
}

std::vector<ShiftedSite> shift_lattice(double epsilon, const PointSampler& base, double x_lo,
                                       double x_hi, Seed s) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(epsilon < 0.5 * kSqrt2))
    throw EpsilonTooLarge("epsilon must stay below half the minimal lattice distance √2/2");
  const Tolerance tol;

  const auto idx = strip_points(x_lo - epsilon, x_hi + epsilon, kStripHalfWidth + epsilon);
  std::vector<Point> sites;
  sites.reserve(idx.size());
  for (const auto& e : idx) sites.push_back(e.embed());

  const double pad = 2.0 * epsilon + kWindowPad * std::max({1.0, std::abs(x_lo), std::abs(x_hi)});
  const Window w(Point{x_lo - pad, -kStripHalfWidth - pad},
                 Point{x_hi + pad, kStripHalfWidth + pad});
  const PointConfiguration eta = base(w, s);
  const auto shifted = barycentre_map(eta, sites, epsilon);

  std::vector<ShiftedSite> out;
  out.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Point& p = shifted[i];
    const bool in_strip = std::abs(p[1]) <= kStripHalfWidth + slack(kStripHalfWidth, tol);
    const bool in_range = p[0] >= x_lo - slack(x_lo, tol) && p[0] <= x_hi + slack(x_hi, tol);
    out.push_back({idx[i], p, in_strip && in_range});
  }
  return out;
}

Chain shifted_chain(double epsilon, const PointSampler& base, double x_lo, double x_hi, Seed s) {
  std::vector<double> xs;
  for (const auto& site : shift_lattice(epsilon, base, x_lo, x_hi, s))
    if (site.in_chain) xs.push_back(site.shifted[0]);
  return chain_from_points(std::move(xs));
}

std::optional<std::pair<std::int64_t, std::int64_t>> decompose_length(double l, std::int64_t n_max,
                                                                      double tol) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::optional<std::pair<std::int64_t, std::int64_t>> found;
  for (std::int64_t m = 0; m <= n_max; ++m) {
    const double rest = l - static_cast<double>(m) * kSqrt2;
    const auto n_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(rest - tol)));
    const auto n_hi = std::min<std::int64_t>(n_max, static_cast<std::int64_t>(std::floor(rest + tol)));
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
      const double value = static_cast<double>(n) + static_cast<double>(m) * kSqrt2;
      if (std::abs(l - value) > tol) continue;
      if (found)
        throw AmbiguousDecomposition("two lengths n + m√2 lie within the tolerance");
      found = std::pair{n, m};
    }
  }
  return found;
}

}  // namespace ctess::silver
