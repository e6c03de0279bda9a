#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "clustertess/clusterprops.hpp"
#include "clustertess/pointproc.hpp"
#include "clustertess/random.hpp"
#include "clustertess/tessellation.hpp"
#include "oracles.hpp"

using namespace ctess;

namespace {

ClusterConfiguration triangles(std::vector<Cluster> cs, const Window& w = Window::cube(2, 1.0)) {
  std::vector<ClusterConfiguration::Entry> entries;
  for (auto& c : cs) entries.push_back({std::move(c), false});
  return ClusterConfiguration(w, std::move(entries));
}

std::size_t index_of(const ClusterConfiguration& cfg, const Cluster& c) {
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg[i].cluster == c) return i;
  return cfg.size();
}

}  // namespace

TEST(FaceToFace, DeloneOutputHasNoViolations) {
  for (int k = 0; k < 10; ++k) {
    const auto eta = sample_poisson_homogeneous(80.0, Window::cube(2, 1.0), derive_seed(Seed{41}, k));
    const auto rep = check_face_to_face(extract_clusters(DeloneProperty(0.25), eta));
    ASSERT_TRUE(rep.face_to_face.has_value());
    EXPECT_TRUE(*rep.face_to_face);
    EXPECT_TRUE(rep.violations.empty());
  }
}

TEST(FaceToFace, DeloneOutputInThreeDimensions) {
  const auto eta = sample_poisson_homogeneous(60.0, Window::cube(3, 1.0), Seed{42});
  const auto rep = check_face_to_face(extract_clusters(DeloneProperty(0.35), eta));
  EXPECT_TRUE(rep.face_to_face.value_or(false));
}

TEST(FaceToFace, SharedEdgeIsProper) {
  const Cluster a{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  const Cluster b{Point{1, 0}, Point{0, 1}, Point{1, 1}};
  const auto rep = check_face_to_face(triangles({a, b}));
  EXPECT_TRUE(*rep.face_to_face);
}

TEST(FaceToFace, ReportsOverlappingPair) {
  const Cluster a{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  const Cluster b{Point{0.2, 0.2}, Point{1.2, 0.2}, Point{0.2, 1.2}};
  const Cluster far{Point{5, 5}, Point{6, 5}, Point{5, 6}};
  const auto cfg = triangles({far, b, a}, Window::cube(2, 10.0));
  const auto rep = check_face_to_face(cfg);
  EXPECT_FALSE(*rep.face_to_face);
  ASSERT_EQ(rep.violations.size(), 1u);
  const std::size_t ia = index_of(cfg, a), ib = index_of(cfg, b);
  const std::pair<std::size_t, std::size_t> want{std::min(ia, ib), std::max(ia, ib)};
  const auto [i, j] = rep.violations[0];
  EXPECT_EQ((std::pair{std::min(i, j), std::max(i, j)}), want);
}

TEST(FaceToFace, PartialEdgeContactIsViolation) {
  // The small triangle's edge covers half of the large one's.
  const Cluster big{Point{0, 0}, Point{2, 0}, Point{0, 2}};
  const Cluster small{Point{0, 0}, Point{1, 0}, Point{0, -1}};
  const auto rep = check_face_to_face(triangles({big, small}, Window(Point{-1, -1}, Point{3, 3})));
  EXPECT_FALSE(*rep.face_to_face);
  EXPECT_EQ(rep.violations.size(), 1u);
}

TEST(FaceToFace, RejectsNonSimplicialInput) {
  const auto eta = sample_poisson_homogeneous(40.0, Window::cube(2, 1.0), Seed{43});
  const auto cfg = extract_clusters(HardcoreProperty(0.05), eta);
  ASSERT_FALSE(cfg.empty());
  EXPECT_THROW(check_face_to_face(cfg), NonSimplicialInput);
  EXPECT_FALSE(check_simplicial(cfg, 2));
  const auto rep = validate_tessellation(cfg, eta.window(), 100, Seed{44});
  EXPECT_FALSE(rep.face_to_face.has_value());
  EXPECT_EQ(rep.simplicial, false);
}

TEST(Simplicial, CollinearTripleIsNotASimplex) {
  const Cluster flat{Point{0, 0}, Point{0.5, 0.5}, Point{1, 1}};
  const Cluster good{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  EXPECT_TRUE(check_simplicial(triangles({good}), 2));
  EXPECT_FALSE(check_simplicial(triangles({good, flat}), 2));
  EXPECT_FALSE(check_simplicial(triangles({good}), 3));
  EXPECT_TRUE(check_simplicial(triangles({}), 2));
}

TEST(Coverage, HalfSquare) {
  const auto cfg = triangles({Cluster{Point{0, 0}, Point{1, 0}, Point{0, 1}}});
  const auto est = covered_fraction(cfg, Window::cube(2, 1.0), 20000, Seed{45});
  EXPECT_EQ(est.n_samples, 20000u);
  EXPECT_NEAR(est.fraction, 0.5, 4 * est.standard_error);
  EXPECT_NEAR(est.standard_error, std::sqrt(0.25 / 20000), 1e-3);
  EXPECT_TRUE(est.holes_detected());
}

TEST(Coverage, FullAndEmpty) {
  const Window w = Window::cube(2, 1.0);
  const auto full = triangles({Cluster{Point{0, 0}, Point{1, 0}, Point{0, 1}},
                               Cluster{Point{1, 0}, Point{0, 1}, Point{1, 1}}});
  const auto est = covered_fraction(full, w, 5000, Seed{46});
  EXPECT_EQ(est.fraction, 1.0);
  EXPECT_FALSE(est.holes_detected());
  EXPECT_EQ(covered_fraction(triangles({}), w, 5000, Seed{46}).fraction, 0.0);
}

TEST(Coverage, SamplesOnlyTheErodedWindow) {
  // The hull covers exactly the eroded window.
  const Window w = Window::cube(2, 1.0, 0.25);
  const auto cfg = triangles({Cluster{Point{0.25, 0.25}, Point{0.75, 0.25}, Point{0.25, 0.75}},
                              Cluster{Point{0.75, 0.25}, Point{0.25, 0.75}, Point{0.75, 0.75}}},
                             w);
  EXPECT_EQ(covered_fraction(cfg, w, 4000, Seed{47}).fraction, 1.0);
}

TEST(Coverage, ExcusedRegionIsTalliedSeparately) {
  const Window w = Window::cube(2, 1.0);
  const auto cfg = triangles({Cluster{Point{0, 0}, Point{1, 0}, Point{0, 1}}});
  const auto est =
      covered_fraction(cfg, w, 20000, Seed{48}, [](const Point& p) { return p[0] > 0.5; });
  // Uncovered part with x > 1/2 has area 3/8.
  EXPECT_NEAR(est.fraction, 0.5, 0.02);
  EXPECT_NEAR(est.excused_fraction, 0.375, 0.02);
}

TEST(Coverage, DeterministicInSeed) {
  const auto eta = sample_poisson_homogeneous(60.0, Window::cube(2, 1.0), Seed{49});
  const auto cfg = extract_clusters(DeloneProperty(0.2), eta);
  const auto a = covered_fraction(cfg, eta.window(), 3000, Seed{50});
  const auto b = covered_fraction(cfg, eta.window(), 3000, Seed{50});
  const auto c = covered_fraction(cfg, eta.window(), 3000, Seed{51});
  EXPECT_EQ(a.fraction, b.fraction);
  EXPECT_NE(a.fraction, c.fraction);
}

TEST(VoronoiRegion, EmptyConfigurationIsUncertainEverywhere) {
  const Window w = Window::cube(2, 1.0);
  const PointConfiguration empty(w);
  const auto region = voronoi_uncertain_region(empty, ClusterConfiguration(w));
  EXPECT_TRUE(region(Point{0.5, 0.5}));
}

TEST(VoronoiRegion, MatchesCellMembership) {
  const Window w = Window::cube(2, 1.0);
  const auto eta = sample_poisson_homogeneous(100.0, w, Seed{52});
  const auto cells = extract_clusters(VoronoiProperty(w), eta);
  const auto region = voronoi_uncertain_region(eta, cells);
  const auto pts = eta.points();

  // A certain cell's generator is the site inside its polygon.
  std::vector<Point> generators;
  for (const auto& e : cells) {
    if (e.boundary_uncertain) continue;
    const auto& c = e.cluster;
    for (const auto& p : pts) {
      bool inside = false;
      for (std::size_t k = 1; k + 1 < c.size() && !inside; ++k)
        inside = oracle::in_triangle(p, c[0], c[k], c[k + 1]);
      if (inside) generators.push_back(p);
    }
  }
  ASSERT_GT(generators.size(), 10u);

  Rng rng(Seed{53});
  std::size_t uncertain = 0;
  for (int k = 0; k < 2000; ++k) {
    const Point q{rng.uniform(0, 1), rng.uniform(0, 1)};
    const Point near = *std::min_element(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
      return squared_distance(a, q) < squared_distance(b, q);
    });
    const bool want = std::find(generators.begin(), generators.end(), near) == generators.end();
    EXPECT_EQ(region(q), want);
    uncertain += want ? 1 : 0;
  }
  EXPECT_GT(uncertain, 0u);
  EXPECT_LT(uncertain, 2000u);
}

TEST(Validate, DeloneReportCombinesChecks) {
  const auto eta = sample_poisson_homogeneous(100.0, Window::cube(2, 1.0, 0.1), Seed{54});
  const auto cfg = extract_clusters(DeloneProperty(0.3), eta).certain();
  const auto rep = validate_tessellation(cfg, eta.window(), 2000, Seed{55});
  EXPECT_EQ(rep.simplicial, true);
  EXPECT_EQ(rep.face_to_face, true);
  ASSERT_TRUE(rep.coverage.has_value());
  EXPECT_GT(rep.coverage->fraction, 0.9);
}
