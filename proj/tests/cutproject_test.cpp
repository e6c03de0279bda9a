#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "clustertess/cutproject.hpp"
#include "clustertess/random.hpp"
#include "oracles.hpp"

using namespace ctess;
using namespace ctess::silver;

namespace {

constexpr double kLong = 1.0 + kSqrt2;

bool contains_close(const std::vector<double>& xs, double x) {
  return std::any_of(xs.begin(), xs.end(), [&](double y) { return std::abs(x - y) < 1e-9; });
}

}  // namespace

TEST(Strip, MatchesExhaustiveEnumeration) {
  for (const auto& [lo, hi] : {std::pair{0.0, 12.0}, {-7.3, 4.1}, {100.0, 140.0}}) {
    const auto idx = strip_points(lo, hi);
    const auto want = oracle::silver_vertices(lo, hi, 200);
    ASSERT_EQ(idx.size(), want.size()) << lo;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      EXPECT_NEAR(idx[i].pi(), want[i], 1e-9);
      EXPECT_LE(std::abs(idx[i].pi_star()), kStripHalfWidth + 1e-12);
    }
  }
}

TEST(Strip, IndexProjections) {
  const LatticeIndex z{3, -2};
  EXPECT_DOUBLE_EQ(z.pi(), 3 - 2 * kSqrt2);
  EXPECT_DOUBLE_EQ(z.pi_star(), 3 + 2 * kSqrt2);
  EXPECT_EQ(z.embed(), (Point{z.pi(), z.pi_star()}));
}

TEST(Chain, DeterministicFixture) {
  const Chain c = deterministic_chain(0.0, 12.0);
  const std::vector<double> want{0.0,           1 + kSqrt2,     2 + kSqrt2, 3 + 2 * kSqrt2,
                                 4 + 3 * kSqrt2, 5 + 4 * kSqrt2, 6 + 4 * kSqrt2};
  ASSERT_EQ(c.vertices.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(c.vertices[i], want[i], 1e-12);
  ASSERT_EQ(c.tiles.size(), want.size() - 1);
}

TEST(Chain, TwoTileLengths) {
  const Chain c = deterministic_chain(-50.0, 50.0);
  std::size_t shorts = 0, longs = 0;
  for (double t : c.tiles) {
    if (std::abs(t - 1.0) < 1e-9) ++shorts;
    else if (std::abs(t - kLong) < 1e-9) ++longs;
    else ADD_FAILURE() << "tile " << t;
  }
  // The mean tile is 2, so long tiles outnumber short ones by 1 + √2.
  EXPECT_NEAR(static_cast<double>(longs) / static_cast<double>(shorts), kLong, 0.3);
  // Short tiles never touch.
  for (std::size_t i = 1; i < c.tiles.size(); ++i)
    EXPECT_FALSE(c.tiles[i] < 1.5 && c.tiles[i - 1] < 1.5);
}

TEST(Chain, FromPoints) {
  const Chain c = chain_from_points({3.0, 1.0, 2.5});
  EXPECT_EQ(c.vertices, (std::vector<double>{1.0, 2.5, 3.0}));
  EXPECT_EQ(c.tiles, (std::vector<double>{1.5, 0.5}));
  EXPECT_THROW(chain_from_points({1.0, 2.0, 1.0}), DuplicatePoints);
  EXPECT_TRUE(chain_from_points({}).tiles.empty());
}

TEST(Thinning, SubsetOfDeterministic) {
  const auto full = deterministic_chain(0.0, 200.0).vertices;
  for (int k = 0; k < 5; ++k) {
    const auto thin = thinned_chain(0.7, 0.0, 200.0, derive_seed(Seed{61}, k)).vertices;
    EXPECT_LT(thin.size(), full.size());
    for (double x : thin) EXPECT_TRUE(contains_close(full, x)) << x;
  }
}

TEST(Thinning, LargeMassKeepsEverything) {
  EXPECT_EQ(thinned_chain(50.0, 0.0, 60.0, Seed{62}).vertices, deterministic_chain(0.0, 60.0).vertices);
}

TEST(Thinning, StripIntensity) {
  const auto rho = strip_intensity(0.5, 0.0, 12.0);
  EXPECT_EQ(rho.sites.size(), strip_points(0.0, 12.0).size());
  EXPECT_EQ(rho.c, 0.5);
  EXPECT_NO_THROW(rho.validate());
}

TEST(Shift, RejectsLargeEpsilon) {
  EXPECT_THROW(shift_lattice(kSqrt2 / 2, poisson_sampler(1.0), 0.0, 5.0, Seed{63}), EpsilonTooLarge);
  EXPECT_NO_THROW(shift_lattice(0.7, empty_sampler(), 0.0, 5.0, Seed{63}));
}

TEST(Shift, EmptyBaseKeepsSites) {
  const Chain c = shifted_chain(0.3, empty_sampler(), 0.0, 30.0, Seed{64});
  EXPECT_EQ(c.vertices, deterministic_chain(0.0, 30.0).vertices);
}

TEST(Shift, EachPointStaysNearItsSite) {
  const double eps = 0.2;
  const auto sites = shift_lattice(eps, poisson_sampler(20.0), 0.0, 40.0, Seed{65});
  std::size_t moved = 0;
  for (const auto& s : sites) {
    EXPECT_LT(distance(s.shifted, s.site.embed()), eps);
    EXPECT_LE(std::abs(s.site.pi_star()), kStripHalfWidth + eps + 1e-12);
    const bool in = std::abs(s.shifted[1]) <= kStripHalfWidth && s.shifted[0] >= 0.0 && s.shifted[0] <= 40.0;
    EXPECT_EQ(s.in_chain, in);
    moved += s.shifted == s.site.embed() ? 0 : 1;
  }
  EXPECT_GT(moved, sites.size() / 2);
}

TEST(Shift, ChainIsTheShiftedPointsInTheStrip) {
  const auto sites = shift_lattice(0.15, poisson_sampler(10.0), 0.0, 25.0, Seed{66});
  std::vector<double> want;
  for (const auto& s : sites)
    if (s.in_chain) want.push_back(s.shifted[0]);
  std::sort(want.begin(), want.end());
  EXPECT_EQ(shifted_chain(0.15, poisson_sampler(10.0), 0.0, 25.0, Seed{66}).vertices, want);
}

TEST(Decompose, Lengths) {
  using P = std::pair<std::int64_t, std::int64_t>;
  EXPECT_EQ(decompose_length(1.0, 3, 1e-9), (P{1, 0}));
  EXPECT_EQ(decompose_length(kLong, 3, 1e-9), (P{1, 1}));
  EXPECT_EQ(decompose_length(2 + kLong, 4, 1e-9), (P{3, 1}));
  EXPECT_EQ(decompose_length(0.5, 3, 1e-9), std::nullopt);
  EXPECT_EQ(decompose_length(kSqrt2 + 1e-6, 3, 1e-9), std::nullopt);
  // 3 and 2√2 differ by 0.17.
  EXPECT_THROW(decompose_length(2.9, 3, 0.2), AmbiguousDecomposition);
}
