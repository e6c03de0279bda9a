#include "clustertess/app.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "clustertess/pipeline.hpp"
#include "clustertess/render.hpp"

namespace ctess::cli {

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  RunConfig cfg;
  std::vector<double> window;
  std::string process = "poisson";
  std::string property = "none";
  std::vector<double> range{0.0, 12.0};
  std::size_t dimension = 2;

  std::string input;
  std::string variant = "deterministic";
  std::vector<std::string> tests{"poisson_count", "occupation"};
  std::vector<double> sides{1.0, 2.0, 3.0};
  double anchor_margin = 0.3;
  std::size_t sites = 10000;
  std::string style = "plain";
  std::size_t replication = 0;
};

std::vector<Record> load_records(const std::string& path, std::istream& in) {
  if (path == "-") return read_records(in);
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open input " + path);
  return read_records(f);
}

RenderStyle style_for(PropertyKind p) {
  switch (p) {
    case PropertyKind::delone: return RenderStyle::delone;
    case PropertyKind::hardcore: return RenderStyle::hardcore;
    case PropertyKind::voronoi: return RenderStyle::voronoi;
    default: return RenderStyle::plain;
  }
}

void report_tests(const std::vector<stats::TestReport>& tests, std::ostream& err) {
  for (const auto& t : tests)
    err << (t.passed ? "PASS " : "FAIL ") << t.name << " statistic=" << t.statistic
        << " threshold=" << t.threshold << " n=" << t.n_samples << " " << t.details << "\n";
}

bool all_passed(const std::vector<stats::TestReport>& tests) {
  return std::all_of(tests.begin(), tests.end(), [](const auto& t) { return t.passed; });
}

std::vector<double> chain_vertices(const std::string& path, std::size_t replication,
                                   std::istream& in) {
  std::ifstream file;
  std::istream* src = &in;
  if (path != "-") {
    file.open(path);
    if (!file) throw ConfigError("cannot open input " + path);
    src = &file;
  }
  std::string line;
  while (std::getline(*src, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (j.at("replication").get<std::size_t>() == replication)
      return j.at("vertices").get<std::vector<double>>();
  }
  throw RecordError("no chain record with replication " + std::to_string(replication));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Flags f;
  RunConfig& cfg = f.cfg;

  CLI::App app{"Random cluster tessellations: sampling, extraction, validation, tests"};
  app.set_config("--config", "", "Flat key=value file; command-line flags override it");
  app.require_subcommand(1);

  auto* dim_opt = app.add_option("-d,--dimension", f.dimension, "Dimension of the window");
  app.add_option("--window", f.window, "low_1,...,low_d,high_1,...,high_d (default unit cube)")
      ->delimiter(',');
  app.add_option("--buffer-margin,--buffer_margin", cfg.buffer_margin, "Erosion margin for coverage and intensities");
  app.add_option("--process", f.process, "poisson | poisson_discrete | lattice | barycentre");
  app.add_option("--lambda", cfg.lambda, "Poisson intensity (also the base of barycentre)");
  app.add_option("--c", cfg.c, "Mass per lattice site");
  app.add_option("--epsilon", cfg.epsilon, "Barycentre shift radius");
  app.add_option("--spacing", cfg.lattice_spacing, "Lattice spacing");
  app.add_option("--property", f.property,
                 "none | hardcore | delone | voronoi | silver_mean | thinned_silver | shifted_silver");
  app.add_option("--r", cfg.hardcore_r, "Hard-core radius r");
  app.add_option("--radius-cap,--radius_cap", cfg.radius_cap, "Delone radius cap R (inf allowed)");
  app.add_flag("--open-ball,--open_ball", cfg.open_ball, "Delone emptiness over the open circumball");
  app.add_option("--range", f.range, "Chain range lo hi")->expected(2);
  app.add_option("--seed", cfg.seed, "Base seed")->envname("CLUSTER_TESS_SEED");
  app.add_option("--replications", cfg.replications, "Number of replications");
  app.add_option("--coverage-samples,--coverage_samples", cfg.coverage_samples, "Monte-Carlo points per coverage estimate");
  app.add_option("-o,--output", cfg.output, "Main output file, - for stdout");
  app.add_option("--summary", cfg.summary, "Summary JSON file");
  app.add_option("--svg", cfg.svg, "SVG rendering of replication 0");

  auto* sample = app.add_subcommand("sample", "Sample point configurations");
  auto* tessellate = app.add_subcommand("tessellate", "Extract clusters and validate them");
  tessellate->add_option("--input", f.input, "Records to tessellate, - for stdin (default: sample)");
  auto* validate = app.add_subcommand("validate", "Re-validate clustered records");
  validate->add_option("--input", f.input, "Records with clusters, - for stdin")->required();
  auto* chain = app.add_subcommand("chain", "Silver-mean chains");
  chain->add_option("--variant", f.variant, "deterministic | thinned | shifted");
  auto* stats_cmd = app.add_subcommand("stats", "Statistical tests");
  stats_cmd->add_option("--test", f.tests, "poisson_count | occupation | intensity");
  stats_cmd->add_option("--sides", f.sides, "Cube sides for the intensity scan")->delimiter(',');
  stats_cmd->add_option("--anchor-margin,--anchor_margin", f.anchor_margin, "Erosion of intensity windows");
  stats_cmd->add_option("--sites", f.sites, "Lattice sites for the occupation test");
  auto* render = app.add_subcommand("render", "Render records as SVG");
  render->add_option("--input", f.input, "Records file, - for stdin");
  render->add_option("--style", f.style, "plain | delone | hardcore | voronoi | silver");
  render->add_option("--replication", f.replication, "Which record to draw");
  for (auto* sub : {sample, tessellate, validate, chain, stats_cmd, render}) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (!f.window.empty()) {
      const auto& nums = f.window;
      if (nums.size() % 2 != 0)
        throw ConfigError("window needs 2d comma-separated numbers");
      const std::size_t d = nums.size() / 2;
      if (dim_opt->count() > 0 && f.dimension != d)
        throw ConfigError("window does not match --dimension");
      f.dimension = d;
      cfg.window_low.assign(nums.begin(), nums.begin() + static_cast<std::ptrdiff_t>(d));
      cfg.window_high.assign(nums.begin() + static_cast<std::ptrdiff_t>(d), nums.end());
    }
    cfg.dimension = f.dimension;
    cfg.process = parse_process(f.process);
    cfg.property = parse_property(f.property);
    cfg.range_lo = f.range.at(0);
    cfg.range_hi = f.range.at(1);
    if (*chain) {
      if (f.variant == "deterministic") cfg.property = PropertyKind::silver_mean;
      else if (f.variant == "thinned") cfg.property = PropertyKind::thinned_silver;
      else if (f.variant == "shifted") cfg.property = PropertyKind::shifted_silver;
      else throw ConfigError("unknown chain variant '" + f.variant + "'");
    }
    if (*tessellate && cfg.property != PropertyKind::hardcore &&
        cfg.property != PropertyKind::delone && cfg.property != PropertyKind::voronoi)
      throw ConfigError("tessellate needs --property hardcore, delone or voronoi");
    cfg.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    OutputSet outputs;
    int status = kOk;
    if (*sample) {
      const auto records = run_sample(cfg);
      outputs.add(cfg.output, records_to_text(records));
      if (!cfg.summary.empty()) outputs.add(cfg.summary, summary_json("sample", cfg, {}, records).dump(2) + "\n");
      if (!cfg.svg.empty()) outputs.add(cfg.svg, render_record(records.at(0), RenderStyle::plain));
    } else if (*tessellate) {
      auto input = f.input.empty() ? run_sample(cfg) : load_records(f.input, in);
      const auto records = run_tessellate(cfg, std::move(input));
      const auto tests = tessellation_tests(records);
      outputs.add(cfg.output, records_to_text(records));
      if (!cfg.summary.empty())
        outputs.add(cfg.summary, summary_json("tessellate", cfg, tests, records).dump(2) + "\n");
      if (!cfg.svg.empty() && !records.empty()) {
        RenderOptions ro;
        ro.hardcore_r = cfg.hardcore_r;
        outputs.add(cfg.svg, render_record(records.front(), style_for(cfg.property), ro));
      }
    } else if (*validate) {
      const auto records = run_validate(cfg, load_records(f.input, in));
      const auto tests = tessellation_tests(records);
      report_tests(tests, err);
      outputs.add(cfg.output, summary_json("validate", cfg, tests, records).dump(2) + "\n");
      if (!all_passed(tests)) status = kTestFailure;
    } else if (*chain) {
      const auto chains = run_chain(cfg);
      outputs.add(cfg.output, chain_records_to_text(chains));
      if (!cfg.svg.empty())
        outputs.add(cfg.svg, render_silver_strip(cfg.range_lo, cfg.range_hi, &chains.front().chain.vertices));
    } else if (*stats_cmd) {
      std::vector<stats::TestReport> tests;
      const Window w = cfg.window();
      for (const auto& name : f.tests) {
        if (name == "poisson_count") {
          if (cfg.replications < 1000) throw ConfigError("poisson_count needs --replications >= 1000");
          tests.push_back(stats::poisson_count_test(cfg.lambda, w, cfg.replications, derive_seed(Seed{cfg.seed}, 0)));
        } else if (name == "occupation") {
          if (f.sites * cfg.replications < 10000) throw ConfigError("occupation needs sites * replications >= 10000");
          tests.push_back(stats::occupation_test(cfg.c, f.sites, cfg.replications, derive_seed(Seed{cfg.seed}, 1)));
        } else if (name == "intensity") {
          const auto& sides = f.sides;
          if (sides.size() < 3) throw ConfigError("intensity needs at least three --sides");
          if (cfg.replications < 2) throw ConfigError("intensity needs --replications >= 2");
          const auto prop = make_property(cfg);
          tests.push_back(stats::cluster_intensity_scan(*prop, cfg.dimension, cfg.lambda, sides,
                                                        f.anchor_margin, cfg.replications,
                                                        derive_seed(Seed{cfg.seed}, 2)));
        } else {
          throw ConfigError("unknown test '" + name + "'");
        }
      }
      report_tests(tests, err);
      outputs.add(cfg.output, summary_json("stats", cfg, tests).dump(2) + "\n");
      if (!all_passed(tests)) status = kTestFailure;
    } else if (*render) {
      if (f.style == "silver") {
        if (f.input.empty()) {
          outputs.add(cfg.output, render_silver_strip(cfg.range_lo, cfg.range_hi));
        } else {
          const auto xs = chain_vertices(f.input, f.replication, in);
          outputs.add(cfg.output, render_silver_strip(cfg.range_lo, cfg.range_hi, &xs));
        }
      } else {
        if (f.input.empty()) throw ConfigError("render needs --input");
        const RenderStyle style = parse_style(f.style);
        const auto records = load_records(f.input, in);
        const auto it = std::find_if(records.begin(), records.end(),
                                     [&](const Record& r) { return r.replication == f.replication; });
        if (it == records.end())
          throw ConfigError("no record with replication " + std::to_string(f.replication));
        RenderOptions ro;
        ro.hardcore_r = cfg.hardcore_r;
        outputs.add(cfg.output, render_record(*it, style, ro));
      }
    }
    outputs.commit(out);
    return status;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace ctess::cli
