#pragma once

// Checks that a cluster configuration forms a cluster tessellation:
// face-to-face, simplicial, and how much of the window its hulls cover.
// Holes are allowed in a face-to-face tessellation and never count as
// violations.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clustertess/clusterprops.hpp"
#include "clustertess/geometry.hpp"
#include "clustertess/pointproc.hpp"
#include "clustertess/random.hpp"

namespace ctess {

class NonSimplicialInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CoverageEstimate {
  double fraction = 0.0;
  double standard_error = 0.0;
  /// Share of samples outside every hull but inside the excused region.
  double excused_fraction = 0.0;
  std::size_t n_samples = 0;

  /// fraction + 4 standard errors stays below one.
  bool holes_detected() const;
};

struct TessellationReport {
  /// Unset when the check was not run (non-simplicial input).
  std::optional<bool> face_to_face;
  /// Index pairs (into the checked configuration) that overlap improperly.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  std::optional<bool> simplicial;
  std::optional<CoverageEstimate> coverage;

  bool holes_detected() const { return coverage && coverage->holes_detected(); }
};

/// Pairwise face-to-face check over clusters with overlapping bounding
/// boxes. Fills face_to_face and violations. Throws NonSimplicialInput if
/// some cluster is not a full-dimensional simplex.
TessellationReport check_face_to_face(const ClusterConfiguration& cfg, Tolerance tol = {});

/// True iff every cluster is d+1 affinely independent points.
bool check_simplicial(const ClusterConfiguration& cfg, std::size_t d, Tolerance tol = {});

/// Monte-Carlo share of the eroded window (w shrunk by its buffer margin)
/// covered by the union of the clusters' convex hulls. Samples outside all
/// hulls for which `excused` returns true are tallied separately.
CoverageEstimate covered_fraction(const ClusterConfiguration& cfg, const Window& w,
                                  std::size_t n_samples, Seed s,
                                  const std::function<bool(const Point&)>& excused = {});

/// Runs all checks. Face-to-face is only checked for simplicial input.
TessellationReport validate_tessellation(const ClusterConfiguration& cfg, const Window& w,
                                         std::size_t n_samples, Seed s, Tolerance tol = {},
                                         const std::function<bool(const Point&)>& excused = {});

/// Region where the Voronoi tessellation is not known from the sample: the
/// points whose nearest point of eta generates no certain cell of `cells`.
std::function<bool(const Point&)> voronoi_uncertain_region(const PointConfiguration& eta,
                                                           const ClusterConfiguration& cells);

}  // namespace ctess
