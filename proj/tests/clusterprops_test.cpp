#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "clustertess/clusterprops.hpp"
#include "clustertess/pointproc.hpp"
#include "clustertess/random.hpp"
#include "oracles.hpp"

using namespace ctess;

namespace {

std::set<oracle::Triple> as_triples(const ClusterConfiguration& cfg) {
  std::set<oracle::Triple> out;
  for (const auto& e : cfg) {
    oracle::Triple t(e.cluster.begin(), e.cluster.end());
    std::sort(t.begin(), t.end());
    out.insert(t);
  }
  return out;
}

// Coordinates on a 2^-20 grid, so that dyadic translations are exact.
PointConfiguration dyadic_sample(double lambda, const Window& w, Seed s) {
  std::vector<Atom> atoms;
  for (const auto& p : sample_poisson_homogeneous(lambda, w, s).points()) {
    Point q(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) q[i] = std::ldexp(std::floor(std::ldexp(p[i], 20)), -20);
    atoms.push_back({q, 1});
  }
  return PointConfiguration(w, atoms);
}

const PointConfiguration& unit_square_points() {
  static const PointConfiguration eta = dyadic_sample(60.0, Window::cube(2, 1.0), Seed{31});
  return eta;
}

}  // namespace

TEST(ClusterConfiguration, SortedCertainAndTranslated) {
  const Window w = Window::cube(2, 1.0);
  const Cluster a{Point{0.5, 0.5}}, b{Point{0.25, 0.25}};
  const ClusterConfiguration cfg(w, {{a, false}, {b, true}});
  EXPECT_EQ(cfg[0].cluster, b);
  EXPECT_EQ(cluster_count(cfg, true), 1u);
  EXPECT_EQ(cluster_count(cfg, false), 2u);
  EXPECT_EQ(cfg.certain().size(), 1u);
  EXPECT_EQ(cfg.translated(Point{0.25, 0.0})[0].cluster[0], (Point{0.5, 0.25}));
  EXPECT_THROW(ClusterConfiguration(w, {{a, false}, {a, true}}), std::invalid_argument);
}

TEST(Delone, MatchesExhaustiveOracle) {
  Rng rng(Seed{32});
  for (double cap : {0.15, 0.3, std::numeric_limits<double>::infinity()}) {
    for (int k = 0; k < 40; ++k) {
      const auto eta = sample_poisson_homogeneous(25.0, Window::cube(2, 1.0), derive_seed(Seed{33}, k));
      const auto got = as_triples(extract_clusters(DeloneProperty(cap), eta));
      EXPECT_EQ(got, oracle::delone_triangles(eta.points(), cap)) << "cap " << cap;
    }
  }
}

TEST(Delone, CocircularPointsLiteralVersusOpenBall) {
  const Window w = Window::cube(2, 2.0);
  const PointConfiguration square(
      w, {{Point{0.0, 0.0}, 1}, {Point{1.0, 0.0}, 1}, {Point{1.0, 1.0}, 1}, {Point{0.0, 1.0}, 1}});
  // Every triangle has the fourth corner on its circumcircle.
  EXPECT_TRUE(extract_clusters(DeloneProperty(5.0), square).empty());
  DeloneOptions open;
  open.open_ball_mode = true;
  const auto cfg = extract_clusters(DeloneProperty(5.0, open), square);
  EXPECT_EQ(cfg.size(), 4u);
  EXPECT_EQ(as_triples(cfg), oracle::delone_triangles(square.points(), 5.0, true));
}

TEST(Delone, RadiusCapIsMonotone) {
  const auto& eta = unit_square_points();
  const auto small = as_triples(extract_clusters(DeloneProperty(0.1), eta));
  const auto large = as_triples(extract_clusters(DeloneProperty(0.2), eta));
  EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  EXPECT_LT(small.size(), large.size());
}

TEST(Delone, BoundaryFlagIsCircumballContainment) {
  const auto& eta = unit_square_points();
  const DeloneProperty prop(0.3);
  for (const auto& e : extract_clusters(prop, eta)) {
    const Ball b = circumball(e.cluster);
    EXPECT_EQ(e.boundary_uncertain, !eta.window().contains(b));
    EXPECT_LE(b.radius, 0.3 * (1 + 1e-9));
    EXPECT_TRUE(admits(prop, e.cluster, eta));
  }
}

TEST(Delone, TranslationEquivariance) {
  const auto& eta = unit_square_points();
  const Point t{0.75, -2.5};
  const DeloneProperty prop(0.25);
  EXPECT_EQ(extract_clusters(prop, eta.translated(t)), extract_clusters(prop, eta).translated(t));
}

TEST(Delone, ThreeDimensionsMatchesBruteForce) {
  const auto eta = sample_poisson_homogeneous(40.0, Window::cube(3, 1.0), Seed{34});
  const auto pts = eta.points();
  std::set<std::vector<Point>> want;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c)
        for (std::size_t d = c + 1; d < pts.size(); ++d) {
          const std::vector<Point> s{pts[a], pts[b], pts[c], pts[d]};
          if (!is_simplex(s)) continue;
          const Ball ball = circumball(s);
          if (ball.radius > 0.4) continue;
          bool empty = true;
          for (std::size_t m = 0; m < pts.size() && empty; ++m)
            if (m != a && m != b && m != c && m != d && distance(pts[m], ball.center) <= ball.radius)
              empty = false;
          if (empty) want.insert(s);
        }
  std::set<std::vector<Point>> got;
  for (const auto& e : extract_clusters(DeloneProperty(0.4), eta))
    got.insert(std::vector<Point>(e.cluster.begin(), e.cluster.end()));
  EXPECT_EQ(got, want);
}

TEST(Delone, UnsatisfiableWithTinyCap) {
  EXPECT_TRUE(extract_clusters(DeloneProperty(1e-4), unit_square_points()).empty());
}

TEST(Hardcore, MatchesNearestNeighbourOracle) {
  const auto& eta = unit_square_points();
  const double r = 0.08;
  const auto pts = eta.points();
  std::set<Point> want;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    bool lonely = true;
    for (std::size_t b = 0; b < pts.size(); ++b)
      if (a != b && distance(pts[a], pts[b]) < r) lonely = false;
    if (lonely) want.insert(pts[a]);
  }
  const auto cfg = extract_clusters(HardcoreProperty(r), eta);
  std::set<Point> got;
  for (const auto& e : cfg) {
    ASSERT_EQ(e.cluster.size(), 1u);
    got.insert(e.cluster[0]);
    EXPECT_EQ(e.boundary_uncertain, eta.window().distance_to_boundary(e.cluster[0]) < r);
  }
  EXPECT_EQ(got, want);
}

TEST(Hardcore, RejectsMultiplicities) {
  const PointConfiguration eta(Window::cube(2, 1.0), {{Point{0.5, 0.5}, 2}});
  EXPECT_THROW(extract_clusters(HardcoreProperty(0.1), eta), NotSimple);
  EXPECT_THROW(HardcoreProperty(0.0), std::invalid_argument);
}

TEST(Hardcore, ForConfigurationModeIsUnsupported) {
  EXPECT_THROW(extract_clusters(HardcoreProperty(0.1), unit_square_points(), ClusterMode::for_configuration),
               std::invalid_argument);
}

TEST(Hardcore, AdmitsRequiresMembership) {
  const auto& eta = unit_square_points();
  EXPECT_FALSE(admits(HardcoreProperty(0.01), Cluster{Point{0.123456, 0.654321}}, eta));
}

TEST(Extraction, EmptyConfiguration) {
  const PointConfiguration empty(Window::cube(2, 1.0));
  EXPECT_TRUE(extract_clusters(DeloneProperty(1.0), empty).empty());
  EXPECT_TRUE(extract_clusters(HardcoreProperty(0.1), empty).empty());
  EXPECT_TRUE(extract_clusters(VoronoiProperty(Window::cube(2, 1.0)), empty).empty());
}

TEST(Voronoi, CellsMatchEquidistanceOracle) {
  const Window w = Window::cube(2, 1.0);
  const auto eta = sample_poisson_homogeneous(80.0, w, Seed{35});
  const auto pts = eta.points();
  const auto cfg = extract_clusters(VoronoiProperty(w), eta);
  std::size_t certain = 0;
  for (const auto& e : cfg) {
    EXPECT_TRUE(is_discrete_polytope(e.cluster));
    std::size_t a = 0;
    const Point g = e.cluster.barycentre();
    for (std::size_t k = 1; k < pts.size(); ++k)
      if (squared_distance(g, pts[k]) < squared_distance(g, pts[a])) a = k;
    const auto want = oracle::voronoi_vertices(pts, a);
    ASSERT_EQ(want.size(), e.cluster.size());
    for (const auto& v : e.cluster) {
      const bool found = std::any_of(want.begin(), want.end(), [&](const auto& q) {
        return std::abs(q.first - v[0]) < 1e-9 && std::abs(q.second - v[1]) < 1e-9;
      });
      EXPECT_TRUE(found);
      if (!e.boundary_uncertain)
        EXPECT_TRUE(w.contains(Ball{v, distance(v, pts[a])}));
    }
    // Counterclockwise order around the generator from the smallest angle.
    std::vector<double> angles;
    for (const auto& v : e.cluster) angles.push_back(std::atan2(v[1] - pts[a][1], v[0] - pts[a][0]));
    EXPECT_TRUE(std::is_sorted(angles.begin(), angles.end()));
    certain += e.boundary_uncertain ? 0 : 1;
  }
  EXPECT_GT(certain, 10u);
}

TEST(Voronoi, NeedsTwoDimensions) {
  EXPECT_THROW(VoronoiProperty(Window::cube(3, 1.0)), UnsupportedDimension);
}

TEST(Voronoi, ForConfigurationModeCanBeRestricted) {
  const Window w = Window::cube(2, 1.0);
  const auto eta = sample_poisson_homogeneous(30.0, w, Seed{36});
  // Cell vertices are not points of eta.
  EXPECT_TRUE(extract_clusters(VoronoiProperty(w), eta, ClusterMode::in_configuration).empty());
}
