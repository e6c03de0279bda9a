#pragma once

// Finite-sample hypothesis tests for the probabilistic statements about
// Poisson configurations, lattice thinning, cluster intensities and tile
// lengths. Every test is a deterministic function of its seed.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clustertess/clusterprops.hpp"
#include "clustertess/cutproject.hpp"
#include "clustertess/parallel.hpp"
#include "clustertess/pointproc.hpp"
#include "clustertess/random.hpp"

namespace ctess::stats {

/// Significance level of the chi-square goodness-of-fit tests.
inline constexpr double kSignificance = 1e-3;
/// Width, in standard errors, of every acceptance band.
inline constexpr double kSigmaBand = 4.0;
/// Chi-square bins are pooled until each expects at least this many counts.
inline constexpr double kMinExpectedPerBin = 5.0;

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::size_t n_samples = 0;
  bool passed = false;
  std::string details;
};

/// Pearson chi-square of observed counts against Poisson(mean), with bins
/// pooled left to right to an expected count of at least kMinExpectedPerBin
/// and an open upper tail bin. Passes when the statistic stays below the
/// 1 - kSignificance quantile. With two pooled bins this is the two-sided
/// binomial test of P(count = 0).
TestReport chi_square_poisson_gof(std::span<const std::uint64_t> counts, double mean,
                                  std::string name = "poisson_gof");

/// successes / trials within kSigmaBand binomial standard errors of p.
TestReport proportion_test(std::uint64_t successes, std::uint64_t trials, double p,
                           std::string name = "proportion");

/// Point counts of n_reps homogeneous Poisson samples on w against
/// Poisson(lambda * vol(w)).
TestReport poisson_count_test(double lambda, const Window& w, std::size_t n_reps, Seed s);

/// Occupied fraction of n_sites lattice sites carrying Poisson(c) atoms,
/// pooled over n_reps samples, against 1 - exp(-c).
TestReport occupation_test(double c, std::size_t n_sites, std::size_t n_reps, Seed s);

struct IntensityEstimate {
  double side = 0.0;
  double rate = 0.0;  // certain clusters per unit volume
  double standard_error = 0.0;
};

/// For each cube side length: n_reps Poisson(lambda) samples on [0, side]^d,
/// counting certain clusters whose anchor lies in the window eroded by
/// `margin`, per unit eroded volume.
std::vector<IntensityEstimate> cluster_intensities(const ClusterProperty& prop, std::size_t d,
                                                   double lambda, std::span<const double> sides,
                                                   double margin, std::size_t n_reps, Seed s);

/// Passes when all pairwise rate differences are within kSigmaBand combined
/// standard errors. Needs at least three window sizes.
TestReport cluster_intensity_scan(const ClusterProperty& prop, std::size_t d, double lambda,
                                  std::span<const double> sides, double margin,
                                  std::size_t n_reps, Seed s);

struct TileHistogram {
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> counts;
  std::size_t undecomposed = 0;
  std::size_t ambiguous = 0;
};

/// Classifies each tile length as n + m√2 within tol.
TileHistogram tile_length_histogram(const silver::Chain& chain, double tol);

}  // namespace ctess::stats
