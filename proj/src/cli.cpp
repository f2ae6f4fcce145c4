#include "gcp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gcp/analysis.hpp"
#include "gcp/config.hpp"
#include "gcp/errors.hpp"
#include "gcp/io.hpp"
#include "gcp/lattice.hpp"
#include "gcp/paths.hpp"
#include "gcp/percolation.hpp"

namespace gcp::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, LatticeKind> kLatticeNames{{"square", LatticeKind::Square},
                                                       {"triangular", LatticeKind::Triangular},
                                                       {"hexagonal", LatticeKind::Hexagonal}};
const std::map<std::string, Protocol> kProtocolNames{{"gcp", Protocol::GCP}, {"cep", Protocol::CEP}};

std::string curve_filename(const PercolationCurve& c) {
  return std::string(to_string(c.kind)) + "_" + std::string(to_string(c.protocol)) + "_N" +
         std::to_string(c.node_count) + ".csv";
}

std::vector<PercolationCurve> load_curves(const std::vector<std::string>& paths) {
  std::vector<PercolationCurve> curves;
  for (const auto& p : paths) curves.push_back(io::load_curve(p));
  return curves;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    io::write_text_file(path, text);
}

struct SweepArgs {
  std::string config_file;
  RunConfig config;
  std::string lattice, protocol, out;
  std::vector<int> sizes;
  double theta_min = 0.0, theta_max = 1.0;
  std::size_t points = 101;
  std::uint64_t ensembles = 1000, seed = 42;
  unsigned workers = 0;
};

int do_sweep(SweepArgs& a, const CLI::App& app, std::ostream& out) {
  RunConfig cfg;
  if (!a.config_file.empty()) {
    std::ifstream in(a.config_file);
    if (!in) throw IoError("cannot open config " + a.config_file);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_toml(cfg, parse_toml_subset(ss.str()));
  }
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--lattice")) cfg.kind = kLatticeNames.at(a.lattice);
  if (given("--protocol")) cfg.protocol = kProtocolNames.at(a.protocol);
  if (given("--sizes")) cfg.sizes = a.sizes;
  if (given("--theta-min")) cfg.grid.min = a.theta_min;
  if (given("--theta-max")) cfg.grid.max = a.theta_max;
  if (given("--points")) cfg.grid.points = a.points;
  if (given("--ensembles")) cfg.ensembles = a.ensembles;
  if (given("--seed")) cfg.seed = a.seed;
  if (given("--out")) cfg.out = a.out;
  if (given("--workers")) cfg.workers = a.workers;
  try {
    validate(cfg);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec || !std::filesystem::is_directory(cfg.out))
    throw IoError("cannot create output directory " + cfg.out.string());

  const auto grid = uniform_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
  for (int size : cfg.sizes) {
    const auto lattice = build_lattice(cfg.kind, size);
    const auto table = all_pairs_paths(lattice);
    const auto curve = sweep(lattice, table, cfg.protocol, grid,
                             {cfg.ensembles, cfg.seed, cfg.workers});
    const auto path = cfg.out / curve_filename(curve);
    io::save_curve(path, curve);
    // Crude finite-size threshold: first grid point with P >= 1/2.
    const auto half = std::find_if(curve.points.begin(), curve.points.end(),
                                   [](const CurvePoint& p) { return p.p_mean >= 0.5; });
    out << to_string(cfg.kind) << " size=" << size << " N=" << curve.node_count
        << " protocol=" << to_string(cfg.protocol) << " ensembles=" << cfg.ensembles;
    if (half != curve.points.end()) out << " theta(P>=0.5)=" << half->theta_norm;
    out << " -> " << path.string() << '\n';
  }
  return kOk;
}

int do_threshold(const std::vector<std::string>& inputs, const std::string& out_path,
                 std::ostream& out) {
  if (inputs.size() < 2) throw UsageError("threshold needs at least two curve files");
  const auto curves = load_curves(inputs);
  for (const auto& c : curves)
    if (c.protocol != curves.front().protocol) throw ConsistencyError("curves mix protocols");
  const auto est = crossing_threshold(curves);
  auto j = io::to_json(est);
  j["lattice"] = std::string(to_string(curves.front().kind));
  j["protocol"] = std::string(to_string(curves.front().protocol));
  j["c_T"] = concurrence_of_theta(ThetaNorm(est.theta_t)).value();
  if (!out_path.empty() && out_path != "-") io::write_text_file(out_path, j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  out << "theta_T (normalized, (pi/4)^-1 theta) = " << std::setprecision(4) << est.theta_t
      << " +/- " << est.uncertainty << '\n';
  return kOk;
}

struct CollapseArgs {
  std::vector<std::string> inputs;
  std::string out, points;
  double c_th = -1.0;
  double x_window = 0.0;
  bool joint = false;
};

int do_collapse(const CollapseArgs& a, std::ostream& out) {
  if (a.inputs.size() < 3) throw UsageError("collapse needs at least three curve files");
  const auto curves = load_curves(a.inputs);
  ThresholdMap c_th;
  if (a.c_th >= 0.0) {
    for (const auto& c : curves) c_th[c.kind] = a.c_th;
  } else {
    c_th = crossing_thresholds_by_kind(curves);
  }
  FitOptions options;
  if (a.x_window > 0.0) options.collapse.x_window = a.x_window;

  ScalingFit fit;
  if (a.joint) {
    if (c_th.size() != 1) throw UsageError("--joint needs curves of a single lattice kind");
    fit = fit_exponents_and_threshold(curves, c_th.begin()->second, options);
  } else {
    fit = fit_exponents(curves, c_th, options);
  }
  const auto j = io::to_json(fit);
  emit(j.dump(2) + "\n", a.out, out);

  std::string points_path = a.points;
  if (points_path.empty() && !a.out.empty() && a.out != "-") {
    std::filesystem::path p(a.out);
    points_path = (p.parent_path() / (p.stem().string() + "_points.csv")).string();
  }
  if (!points_path.empty()) {
    std::ostringstream ss;
    io::write_collapse_points(ss, collapse_points(curves, fit.nu, fit.beta, fit.c_th));
    io::write_text_file(points_path, ss.str());
  }
  if (!a.out.empty() && a.out != "-") out << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"General concurrence percolation on 2D lattice quantum networks", "gcp"};
  app.require_subcommand(1);

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep of P over normalized theta");
  sweep_cmd->add_option("--config", sa.config_file, "TOML run file; flags override its values");
  sweep_cmd->add_option("--lattice", sa.lattice)->check(CLI::IsMember(kLatticeNames));
  sweep_cmd->add_option("--sizes", sa.sizes, "L for square/triangular, k for hexagonal")
      ->delimiter(',');
  sweep_cmd->add_option("--protocol", sa.protocol)->check(CLI::IsMember(kProtocolNames));
  sweep_cmd->add_option("--theta-min", sa.theta_min);
  sweep_cmd->add_option("--theta-max", sa.theta_max);
  sweep_cmd->add_option("--points", sa.points);
  sweep_cmd->add_option("--ensembles", sa.ensembles);
  sweep_cmd->add_option("--seed", sa.seed);
  sweep_cmd->add_option("--out", sa.out, "output directory");
  sweep_cmd->add_option("--workers", sa.workers, "0 uses all hardware threads");

  std::vector<std::string> threshold_in;
  std::string threshold_out;
  auto* threshold_cmd = app.add_subcommand("threshold", "Threshold from finite-size crossings");
  threshold_cmd->add_option("--in", threshold_in, "curve CSV files")->required();
  threshold_cmd->add_option("--out", threshold_out, "JSON output path");

  CollapseArgs ca;
  auto* collapse_cmd = app.add_subcommand("collapse", "Fit nu and beta by data collapse");
  collapse_cmd->add_option("--in", ca.inputs, "curve CSV files")->required();
  collapse_cmd->add_option("--c-th", ca.c_th, "critical concurrence (default: from crossings)");
  collapse_cmd->add_option("--x-window", ca.x_window, "only use points with |x| <= window");
  collapse_cmd->add_flag("--joint", ca.joint, "also refine c_th");
  collapse_cmd->add_option("--out", ca.out, "fit JSON output path");
  collapse_cmd->add_option("--points", ca.points, "collapsed point cloud CSV path");

  std::string lattice_name = "square", dump_out;
  int lattice_size = 0;
  double sample_fraction = 1.0;
  std::uint64_t sample_seed = 0;
  auto* paths_cmd = app.add_subcommand("paths", "Dump shortest-path lengths and counts (u,v,l,n)");
  auto* lattice_cmd = app.add_subcommand("lattice", "Dump a lattice edge list");
  for (auto* cmd : {paths_cmd, lattice_cmd}) {
    cmd->add_option("--lattice", lattice_name)->check(CLI::IsMember(kLatticeNames));
    cmd->add_option("--size", lattice_size)->required();
    cmd->add_option("--out", dump_out, "output file (default stdout)");
  }
  paths_cmd->add_option("--sample-fraction", sample_fraction, "keep a random subset of pairs");
  paths_cmd->add_option("--sample-seed", sample_seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (app.got_subcommand(sweep_cmd)) return do_sweep(sa, *sweep_cmd, out);
    if (app.got_subcommand(threshold_cmd)) return do_threshold(threshold_in, threshold_out, out);
    if (app.got_subcommand(collapse_cmd)) return do_collapse(ca, out);
    if (lattice_size < 2) throw UsageError("--size must be >= 2");
    const auto lattice = build_lattice(kLatticeNames.at(lattice_name), lattice_size);
    std::ostringstream ss;
    if (app.got_subcommand(paths_cmd)) {
      if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
        throw UsageError("--sample-fraction must lie in (0, 1]");
      io::write_path_table(ss, all_pairs_paths(lattice, {sample_fraction, sample_seed}));
    } else {
      io::write_lattice(ss, lattice);
    }
    emit(ss.str(), dump_out, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace gcp::cli
