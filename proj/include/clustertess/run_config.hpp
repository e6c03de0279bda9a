#pragma once

// Parameters of one experiment run, as collected from a config file and
// command-line flags.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "clustertess/clusterprops.hpp"
#include "clustertess/pointproc.hpp"

namespace ctess::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ProcessKind { poisson, poisson_discrete, lattice, barycentre };
enum class PropertyKind { none, hardcore, delone, voronoi, silver_mean, thinned_silver, shifted_silver };

ProcessKind parse_process(const std::string& name);
PropertyKind parse_property(const std::string& name);
const char* to_string(ProcessKind k);
const char* to_string(PropertyKind k);

struct RunConfig {
  std::size_t dimension = 2;
  // Empty means the unit cube of the given dimension.
  std::vector<double> window_low;
  std::vector<double> window_high;
  double buffer_margin = 0.0;

  ProcessKind process = ProcessKind::poisson;
  double lambda = 5.0;
  double c = 1.0;
  double epsilon = 0.1;
  double lattice_spacing = 1.0;

  PropertyKind property = PropertyKind::none;
  double hardcore_r = 0.1;
  double radius_cap = 0.3;
  bool open_ball = false;

  // Chain range for the silver-mean properties.
  double range_lo = 0.0;
  double range_hi = 12.0;

  std::uint64_t seed = 1;
  std::size_t replications = 1;
  std::size_t coverage_samples = 4000;

  std::string output = "-";
  std::string summary;
  std::string svg;

  /// Throws ConfigError on the first violated constraint.
  void validate() const;
  Window window() const;
};

/// Points of spacing * Z^d inside the window.
std::vector<Point> lattice_sites(const RunConfig& cfg);

/// The point process of the config, restricted to its window.
PointConfiguration sample_process(const RunConfig& cfg, Seed s);

/// hardcore, delone or voronoi; throws ConfigError for the others.
std::unique_ptr<ClusterProperty> make_property(const RunConfig& cfg);

}  // namespace ctess::cli
