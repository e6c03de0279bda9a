#pragma once

// Cut-and-project construction of the silver-mean chain and its two
// randomizations (lattice thinning and barycentre shift).
//
// The lattice is {(u + v√2, u - v√2) : u, v integers} in R^2; π takes the
// first coordinate and π* the second. Lattice points whose π* value lies in
// the strip [-1/√2, 1/√2] project under π to the vertices of the chain.
// Integer indices stay exact; π and π* are only evaluated for comparisons
// and output.

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clustertess/geometry.hpp"
#include "clustertess/pointproc.hpp"
#include "clustertess/random.hpp"

namespace ctess::silver {

inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kStripHalfWidth = 1.0 / std::numbers::sqrt2;

class DuplicatePoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EpsilonTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AmbiguousDecomposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatticeIndex {
  std::int64_t u = 0;
  std::int64_t v = 0;

  double pi() const;
  double pi_star() const;
  /// (π, π*) as a point of R^2.
  Point embed() const;

  friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

struct Chain {
  std::vector<double> vertices;  // strictly increasing
  std::vector<double> tiles;     // consecutive differences
};

/// Lattice indices with π in [x_lo, x_hi] and |π*| <= half_width, ordered by
/// π. Both tests are inclusive up to the tolerance.
std::vector<LatticeIndex> strip_points(double x_lo, double x_hi,
                                       double half_width = kStripHalfWidth, Tolerance tol = {});

/// Sorts xs and cuts the line at consecutive points. Throws DuplicatePoints
/// when two points coincide within tolerance.
Chain chain_from_points(std::vector<double> xs, Tolerance tol = {});

/// π(Λ ∩ W) restricted to [x_lo, x_hi].
Chain deterministic_chain(double x_lo, double x_hi);

/// The strip sites over [x_lo, x_hi] as a discrete intensity with mass c per
/// site, on the window [x_lo, x_hi] x [-1/√2, 1/√2].
DiscreteIntensity strip_intensity(double c, double x_lo, double x_hi);

/// Chain of the support of a Poisson field with mass c on the strip sites:
/// each site survives independently with probability 1 - exp(-c).
Chain thinned_chain(double c, double x_lo, double x_hi, Seed s);

/// A point process on R^2 restricted to a window.
using PointSampler = std::function<PointConfiguration(const Window&, Seed)>;

PointSampler poisson_sampler(double lambda);
/// Always returns the empty configuration.
PointSampler empty_sampler();

struct ShiftedSite {
  LatticeIndex site;
  Point shifted;  // barycentre shift of the base sample around the site
  bool in_chain;  // survives the strip cut and the π range
};

/// Barycentre shift of a base sample around every lattice site whose
/// ε-ball can reach the strip over [x_lo, x_hi], i.e. |π*| <= 1/√2 + ε and
/// π in [x_lo - ε, x_hi + ε]. Throws EpsilonTooLarge unless ε < √2/2.
std::vector<ShiftedSite> shift_lattice(double epsilon, const PointSampler& base, double x_lo,
                                       double x_hi, Seed s);

/// Chain of the shifted points that fall in the strip and the π range.
Chain shifted_chain(double epsilon, const PointSampler& base, double x_lo, double x_hi, Seed s);

/// The unique (n, m) with 0 <= n, m <= n_max and |l - (n + m√2)| <= tol, or
/// nullopt. Throws AmbiguousDecomposition if two pairs qualify.
std::optional<std::pair<std::int64_t, std::int64_t>> decompose_length(double l, std::int64_t n_max,
                                                                      double tol);

}  // namespace ctess::silver
