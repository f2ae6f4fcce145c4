#include "gcp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gcp/errors.hpp"

namespace gcp::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ConsistencyError(std::string("cannot parse ") + what + " from '" + s + "'");
  return value;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

constexpr const char* kCurveHeader = "lattice,N,theta_norm,c,P_mean,P_stderr,ensembles,seed,protocol";

}  // namespace

void write_curve_csv(std::ostream& out, const PercolationCurve& curve) {
  out << kCurveHeader << '\n';
  for (const auto& p : curve.points) {
    const double c = concurrence_of_theta(ThetaNorm(p.theta_norm)).value();
    out << to_string(curve.kind) << ',' << curve.node_count << ',' << format_double(p.theta_norm)
        << ',' << format_double(c) << ',' << format_double(p.p_mean) << ','
        << format_double(p.p_stderr) << ',' << curve.ensembles << ',' << curve.seed << ','
        << to_string(curve.protocol) << '\n';
  }
}

PercolationCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kCurveHeader)
    throw ConsistencyError("not a curve file: unexpected header");
  PercolationCurve curve;
  bool first = true;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw ConsistencyError("curve row must have 9 fields: " + line);
    const auto kind = parse_lattice_kind(f[0]);
    const auto protocol = parse_protocol(f[8]);
    if (!kind || !protocol) throw ConsistencyError("unknown lattice or protocol in row: " + line);
    const auto n = parse_number<std::size_t>(f[1], "N");
    const auto ens = parse_number<std::uint64_t>(f[6], "ensembles");
    const auto seed = parse_number<std::uint64_t>(f[7], "seed");
    if (first) {
      curve.kind = *kind;
      curve.node_count = n;
      curve.protocol = *protocol;
      curve.ensembles = ens;
      curve.seed = seed;
      first = false;
    } else if (curve.kind != *kind || curve.node_count != n || curve.protocol != *protocol ||
               curve.ensembles != ens || curve.seed != seed) {
      throw ConsistencyError("curve file mixes runs");
    }
    curve.points.push_back({parse_number<double>(f[2], "theta_norm"),
                            parse_number<double>(f[4], "P_mean"),
                            parse_number<double>(f[5], "P_stderr")});
  }
  if (curve.points.empty()) throw ConsistencyError("curve file has no rows");
  return curve;
}

void save_curve(const std::filesystem::path& path, const PercolationCurve& curve) {
  std::ostringstream ss;
  write_curve_csv(ss, curve);
  write_text_file(path, ss.str());
}

PercolationCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_curve_csv(in);
}

void write_lattice(std::ostream& out, const Lattice& lattice) {
  const nlohmann::json header = {{"kind", std::string(to_string(lattice.kind()))},
                                 {"size", lattice.size()},
                                 {"N", lattice.node_count()}};
  out << header.dump() << '\n';
  for (const Edge& e : lattice.edges()) out << e.u << ' ' << e.v << '\n';
}

LatticeDump read_lattice(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConsistencyError("empty lattice dump");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ConsistencyError(std::string("bad lattice header: ") + e.what());
  }
  const auto kind = parse_lattice_kind(header.at("kind").get<std::string>());
  if (!kind) throw ConsistencyError("unknown lattice kind in header");
  LatticeDump dump{*kind, header.at("size").get<int>(), header.at("N").get<std::size_t>(), {}};
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ' ');
    if (f.size() != 2) throw ConsistencyError("edge line must be 'u v': " + line);
    dump.edges.push_back({parse_number<NodeId>(f[0], "u"), parse_number<NodeId>(f[1], "v")});
  }
  return dump;
}

void write_path_table(std::ostream& out, const PathTable& table) {
  out << "u,v,l,n\n";
  for (const auto& e : table.entries())
    out << e.u << ',' << e.v << ',' << e.path.length << ',' << e.path.count << '\n';
}

std::vector<PairPath> read_path_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "u,v,l,n")
    throw ConsistencyError("not a path table: unexpected header");
  std::vector<PairPath> rows;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw ConsistencyError("path row must have 4 fields: " + line);
    rows.push_back({parse_number<NodeId>(f[0], "u"), parse_number<NodeId>(f[1], "v"),
                    {parse_number<std::uint32_t>(f[2], "l"), parse_number<std::uint64_t>(f[3], "n")}});
  }
  return rows;
}

nlohmann::json to_json(const ThresholdEstimate& est) {
  nlohmann::json crossings = nlohmann::json::array();
  for (const auto& c : est.crossings)
    crossings.push_back({{"n_small", c.n_small}, {"n_large", c.n_large}, {"theta_norm", c.theta_norm}});
  return {{"theta_T", est.theta_t}, {"uncertainty", est.uncertainty}, {"crossings", crossings}};
}

ThresholdEstimate threshold_from_json(const nlohmann::json& j) {
  ThresholdEstimate est;
  est.theta_t = j.at("theta_T").get<double>();
  est.uncertainty = j.at("uncertainty").get<double>();
  for (const auto& c : j.at("crossings"))
    est.crossings.push_back({c.at("n_small").get<std::size_t>(), c.at("n_large").get<std::size_t>(),
                             c.at("theta_norm").get<double>()});
  return est;
}

nlohmann::json to_json(const ScalingFit& fit) {
  nlohmann::json c_th;
  if (fit.c_th.size() == 1) {
    c_th = fit.c_th.begin()->second;
  } else {
    c_th = nlohmann::json::object();
    for (const auto& [kind, value] : fit.c_th) c_th[std::string(to_string(kind))] = value;
  }
  nlohmann::json j = {{"nu", fit.nu}, {"beta", fit.beta}, {"c_th", c_th}, {"cost", fit.cost}, {"d", fit.d}};
  if (fit.c_th.size() == 1) j["lattice"] = std::string(to_string(fit.c_th.begin()->first));
  return j;
}

ScalingFit fit_from_json(const nlohmann::json& j) {
  ScalingFit fit;
  fit.nu = j.at("nu").get<double>();
  fit.beta = j.at("beta").get<double>();
  fit.cost = j.at("cost").get<double>();
  fit.d = j.value("d", kDimension);
  const auto& c_th = j.at("c_th");
  if (c_th.is_number()) {
    const auto kind = parse_lattice_kind(j.value("lattice", std::string("square")));
    if (!kind) throw ConsistencyError("unknown lattice kind in fit");
    fit.c_th[*kind] = c_th.get<double>();
  } else {
    for (const auto& [name, value] : c_th.items()) {
      const auto kind = parse_lattice_kind(name);
      if (!kind) throw ConsistencyError("unknown lattice kind in fit: " + name);
      fit.c_th[*kind] = value.get<double>();
    }
  }
  return fit;
}

void write_collapse_points(std::ostream& out, const std::vector<CollapsePoint>& points) {
  out << "lattice,N,x,y\n";
  for (const auto& p : points)
    out << to_string(p.kind) << ',' << p.node_count << ',' << format_double(p.x) << ','
        << format_double(p.y) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

}  // namespace gcp::io
