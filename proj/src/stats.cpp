#include "clustertess/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace ctess::stats {

namespace {

struct Bin {
  double expected = 0.0;
  std::uint64_t observed = 0;
};

double band_statistic(double diff, double se) {
  if (se > 0.0) return std::abs(diff) / se;
  return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

TestReport chi_square_poisson_gof(std::span<const std::uint64_t> counts, double mean,
                                  std::string name) {
  if (counts.empty()) throw std::invalid_argument("goodness of fit needs at least one count");
  if (!(mean > 0.0) || !std::isfinite(mean)) throw std::invalid_argument("Poisson mean must be positive");

  const double n = static_cast<double>(counts.size());
  const std::uint64_t k_max = *std::max_element(counts.begin(), counts.end());
  std::vector<std::uint64_t> observed(k_max + 1, 0);
  for (auto c : counts) ++observed[c];
  auto observed_at_least = [&](std::uint64_t k) {
    std::uint64_t s = 0;
    for (std::uint64_t j = k; j <= k_max; ++j) s += observed[j];
    return s;
  };
  // P(K >= k) is the regularized lower incomplete gamma P(k, mean).
  auto tail = [&](std::uint64_t k) {
    return k == 0 ? 1.0 : boost::math::gamma_p(static_cast<double>(k), mean);
  };

  const boost::math::poisson_distribution<double> law(mean);
  std::vector<Bin> bins;
  Bin open;
  std::uint64_t k = 0;
  while (n * tail(k) >= kMinExpectedPerBin) {
    open.expected += n * boost::math::pdf(law, static_cast<double>(k));
    open.observed += k <= k_max ? observed[k] : 0;
    ++k;
    if (open.expected >= kMinExpectedPerBin) {
      bins.push_back(open);
      open = Bin{};
    }
  }
  open.expected += n * tail(k);
  open.observed += k <= k_max ? observed_at_least(k) : 0;
  if (open.expected >= kMinExpectedPerBin || bins.empty()) {
    bins.push_back(open);
  } else {
    bins.back().expected += open.expected;
    bins.back().observed += open.observed;
  }

  TestReport r;
  r.name = std::move(name);
  r.n_samples = counts.size();
  const std::size_t df = bins.size() - 1;
  if (df == 0) {
    r.passed = true;
    r.details = "single pooled bin; nothing to test";
    return r;
  }
  for (const auto& b : bins) {
    const double diff = static_cast<double>(b.observed) - b.expected;
    r.statistic += diff * diff / b.expected;
  }
  const boost::math::chi_squared_distribution<double> chi2(static_cast<double>(df));
  r.threshold = boost::math::quantile(boost::math::complement(chi2, kSignificance));
  r.passed = r.statistic <= r.threshold;
  std::ostringstream os;
  os << "mean=" << mean << " bins=" << bins.size() << " df=" << df << " alpha=" << kSignificance;
  r.details = os.str();
  return r;
}

TestReport proportion_test(std::uint64_t successes, std::uint64_t trials, double p,
                           std::string name) {
  if (trials == 0) throw std::invalid_argument("proportion test needs at least one trial");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
  const double t = static_cast<double>(trials);
  const double observed = static_cast<double>(successes) / t;
  const double se = std::sqrt(p * (1.0 - p) / t);
  TestReport r;
  r.name = std::move(name);
  r.n_samples = trials;
  r.statistic = band_statistic(observed - p, se);
  r.threshold = kSigmaBand;
  r.passed = r.statistic <= r.threshold;
  std::ostringstream os;
  os.precision(8);
  os << "observed=" << observed << " expected=" << p << " se=" << se;
  r.details = os.str();
  return r;
}

TestReport poisson_count_test(double lambda, const Window& w, std::size_t n_reps, Seed s) {
  if (n_reps < 1000) throw std::invalid_argument("poisson_count_test needs at least 1000 replications");
  const auto counts = parallel_map(n_reps, [&](std::size_t i) {
    return sample_poisson_homogeneous(lambda, w, derive_seed(s, i)).total_count();
  });
  return chi_square_poisson_gof(counts, lambda * w.volume(), "poisson_count");
}

TestReport occupation_test(double c, std::size_t n_sites, std::size_t n_reps, Seed s) {
  if (n_sites == 0 || n_reps == 0 || n_sites * n_reps < 10000)
    throw std::invalid_argument("occupation_test needs n_sites * n_reps >= 10000");
  std::vector<Point> sites;
  for (std::size_t i = 0; i < n_sites; ++i) sites.push_back(Point{static_cast<double>(i)});
  const DiscreteIntensity rho{std::move(sites), c,
                              Window(Point{-0.5}, Point{static_cast<double>(n_sites) - 0.5})};
  const auto occupied = parallel_map(n_reps, [&](std::size_t i) {
    return static_cast<std::uint64_t>(sample_poisson_discrete(rho, derive_seed(s, i)).size());
  });
  const std::uint64_t total = std::accumulate(occupied.begin(), occupied.end(), std::uint64_t{0});
  return proportion_test(total, static_cast<std::uint64_t>(n_sites * n_reps), -std::expm1(-c),
                         "occupation");
}

std::vector<IntensityEstimate> cluster_intensities(const ClusterProperty& prop, std::size_t d,
                                                   double lambda, std::span<const double> sides,
                                                   double margin, std::size_t n_reps, Seed s) {
  if (n_reps < 2) throw std::invalid_argument("intensity estimates need at least two replications");
  std::vector<IntensityEstimate> out;
  for (std::size_t a = 0; a < sides.size(); ++a) {
    const Window w = Window::cube(d, sides[a], margin);
    const Window inner = w.eroded();
    const double volume = inner.volume();
    const Seed size_seed = derive_seed(s, a);
    const auto rates = parallel_map(n_reps, [&](std::size_t i) {
      const auto eta = sample_poisson_homogeneous(lambda, w, derive_seed(size_seed, i));
      const auto cfg = extract_clusters(prop, eta);
      std::size_t count = 0;
      for (const auto& e : cfg)
        if (!e.boundary_uncertain && inner.contains(prop.anchor(e.cluster))) ++count;
      return static_cast<double>(count) / volume;
    });
    const double nr = static_cast<double>(n_reps);
    const double mean = std::accumulate(rates.begin(), rates.end(), 0.0) / nr;
    double ss = 0.0;
    for (double r : rates) ss += (r - mean) * (r - mean);
    out.push_back({sides[a], mean, std::sqrt(ss / (nr - 1.0) / nr)});
  }
  return out;
}

TestReport cluster_intensity_scan(const ClusterProperty& prop, std::size_t d, double lambda,
                                  std::span<const double> sides, double margin,
                                  std::size_t n_reps, Seed s) {
  if (sides.size() < 3) throw std::invalid_argument("intensity scan needs at least three windows");
  const auto est = cluster_intensities(prop, d, lambda, sides, margin, n_reps, s);
  TestReport r;
  r.name = "cluster_intensity[" + prop.name() + "]";
  r.n_samples = n_reps * sides.size();
  r.threshold = kSigmaBand;
  for (std::size_t a = 0; a < est.size(); ++a)
    for (std::size_t b = a + 1; b < est.size(); ++b)
      r.statistic = std::max(r.statistic, band_statistic(est[a].rate - est[b].rate,
                                                         std::hypot(est[a].standard_error,
                                                                    est[b].standard_error)));
  r.passed = r.statistic <= r.threshold;
  std::ostringstream os;
  os.precision(6);
  for (const auto& e : est) os << "side=" << e.side << " rate=" << e.rate << "±" << e.standard_error << "; ";
  r.details = os.str();
  return r;
}

TileHistogram tile_length_histogram(const silver::Chain& chain, double tol) {
  TileHistogram h;
  for (double len : chain.tiles) {
    const auto n_max = static_cast<std::int64_t>(std::ceil(len + tol));
    try {
      if (auto nm = silver::decompose_length(len, n_max, tol)) ++h.counts[*nm];
      else ++h.undecomposed;
    } catch (const silver::AmbiguousDecomposition&) {
      ++h.ambiguous;
    }
  }
  return h;
}

}  // namespace ctess::stats
