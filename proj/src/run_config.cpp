#include "clustertess/run_config.hpp"

#include <cmath>

namespace ctess::cli {

namespace {

constexpr std::size_t kMaxLatticeSites = 10'000'000;

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

ProcessKind parse_process(const std::string& name) {
  if (name == "poisson") return ProcessKind::poisson;
  if (name == "poisson_discrete") return ProcessKind::poisson_discrete;
  if (name == "lattice") return ProcessKind::lattice;
  if (name == "barycentre") return ProcessKind::barycentre;
  throw ConfigError("unknown process '" + name + "'");
}

PropertyKind parse_property(const std::string& name) {
  if (name == "none") return PropertyKind::none;
  if (name == "hardcore") return PropertyKind::hardcore;
  if (name == "delone") return PropertyKind::delone;
  if (name == "voronoi") return PropertyKind::voronoi;
  if (name == "silver_mean") return PropertyKind::silver_mean;
  if (name == "thinned_silver") return PropertyKind::thinned_silver;
  if (name == "shifted_silver") return PropertyKind::shifted_silver;
  throw ConfigError("unknown property '" + name + "'");
}

const char* to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::poisson: return "poisson";
    case ProcessKind::poisson_discrete: return "poisson_discrete";
    case ProcessKind::lattice: return "lattice";
    case ProcessKind::barycentre: return "barycentre";
  }
  return "?";
}

const char* to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::none: return "none";
    case PropertyKind::hardcore: return "hardcore";
    case PropertyKind::delone: return "delone";
    case PropertyKind::voronoi: return "voronoi";
    case PropertyKind::silver_mean: return "silver_mean";
    case PropertyKind::thinned_silver: return "thinned_silver";
    case PropertyKind::shifted_silver: return "shifted_silver";
  }
  return "?";
}

Window RunConfig::window() const {
  Point low(dimension), high(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    low[i] = window_low.empty() ? 0.0 : window_low[i];
    high[i] = window_high.empty() ? 1.0 : window_high[i];
  }
  return Window(low, high, buffer_margin);
}

void RunConfig::validate() const {
  require(dimension >= 1 && dimension <= kMaxDimension,
          "dimension must be between 1 and " + std::to_string(kMaxDimension));
  require(window_low.size() == window_high.size(), "window needs as many low as high coordinates");
  require(window_low.empty() || window_low.size() == dimension,
          "window must list d low coordinates followed by d high coordinates");
  for (std::size_t i = 0; i < window_low.size(); ++i)
    require(window_low[i] < window_high[i], "window low must be below window high");
  require(buffer_margin >= 0.0, "buffer margin must be nonnegative");
  try {
    (void)window();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  switch (process) {
    case ProcessKind::poisson:
      require(positive(lambda), "lambda must be positive");
      break;
    case ProcessKind::poisson_discrete:
      require(positive(c), "c must be positive");
      break;
    case ProcessKind::lattice:
      break;
    case ProcessKind::barycentre:
      require(positive(lambda), "lambda must be positive");
      require(positive(epsilon), "epsilon must be positive");
      require(2.0 * epsilon < lattice_spacing, "epsilon must be below half the lattice spacing");
      break;
  }
  require(positive(lattice_spacing), "lattice spacing must be positive");

  switch (property) {
    case PropertyKind::none:
      break;
    case PropertyKind::hardcore:
      require(positive(hardcore_r), "hard-core radius r must be positive");
      break;
    case PropertyKind::delone:
      require(radius_cap > 0.0, "radius cap R must be positive");
      break;
    case PropertyKind::voronoi:
      require(dimension == 2, "voronoi needs dimension 2");
      break;
    case PropertyKind::silver_mean:
    case PropertyKind::thinned_silver:
    case PropertyKind::shifted_silver:
      require(range_lo < range_hi, "chain range must satisfy lo < hi");
      if (property == PropertyKind::thinned_silver) require(positive(c), "c must be positive");
      if (property == PropertyKind::shifted_silver) {
        require(positive(epsilon), "epsilon must be positive");
        require(epsilon < 0.5 * std::sqrt(2.0), "epsilon must be below sqrt(2)/2");
        require(lambda >= 0.0 && std::isfinite(lambda), "lambda must be nonnegative");
      }
      break;
  }
  require(replications >= 1, "replications must be at least 1");
  require(coverage_samples >= 1, "coverage samples must be at least 1");
}

std::vector<Point> lattice_sites(const RunConfig& cfg) {
  const Window w = cfg.window();
  const std::size_t d = cfg.dimension;
  std::vector<std::int64_t> lo(d), hi(d);
  double total = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = static_cast<std::int64_t>(std::ceil(w.low()[i] / cfg.lattice_spacing));
    hi[i] = static_cast<std::int64_t>(std::floor(w.high()[i] / cfg.lattice_spacing));
    total *= static_cast<double>(std::max<std::int64_t>(0, hi[i] - lo[i] + 1));
  }
  require(total <= static_cast<double>(kMaxLatticeSites), "too many lattice sites in the window");

  std::vector<Point> sites;
  if (total == 0.0) return sites;
  std::vector<std::int64_t> k = lo;
  while (true) {
    Point p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = static_cast<double>(k[i]) * cfg.lattice_spacing;
    sites.push_back(p);
    std::size_t i = 0;
    while (i < d && k[i] == hi[i]) k[i] = lo[i], ++i;
    if (i == d) break;
    ++k[i];
  }
  return sites;
}

PointConfiguration sample_process(const RunConfig& cfg, Seed s) {
  const Window w = cfg.window();
  switch (cfg.process) {
    case ProcessKind::poisson:
      return sample_poisson_homogeneous(cfg.lambda, w, s);
    case ProcessKind::poisson_discrete:
      return sample_poisson_discrete(DiscreteIntensity{lattice_sites(cfg), cfg.c, w}, s);
    case ProcessKind::lattice: {
      const auto sites = lattice_sites(cfg);
      return deterministic_lattice(sites, w);
    }
    case ProcessKind::barycentre: {
      const auto sites = lattice_sites(cfg);
      return barycentre_shift(sample_poisson_homogeneous(cfg.lambda, w, s), sites, cfg.epsilon);
    }
  }
  throw ConfigError("unknown process");
}

std::unique_ptr<ClusterProperty> make_property(const RunConfig& cfg) {
  switch (cfg.property) {
    case PropertyKind::hardcore:
      return std::make_unique<HardcoreProperty>(cfg.hardcore_r);
    case PropertyKind::delone: {
      DeloneOptions options;
      options.open_ball_mode = cfg.open_ball;
      return std::make_unique<DeloneProperty>(cfg.radius_cap, options);
    }
    case PropertyKind::voronoi:
      return std::make_unique<VoronoiProperty>(cfg.window());
    default:
      throw ConfigError(std::string("property '") + to_string(cfg.property) +
                        "' does not extract clusters from a point sample");
  }
}

}  // namespace ctess::cli
