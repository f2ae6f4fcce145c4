#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcp/analysis.hpp"
#include "gcp/lattice.hpp"
#include "gcp/paths.hpp"
#include "gcp/percolation.hpp"

namespace gcp::io {

// Shortest round-trip-exact decimal form of a double ("%.17g").
std::string format_double(double v);

// Curve CSV: lattice,N,theta_norm,c,P_mean,P_stderr,ensembles,seed,protocol
void write_curve_csv(std::ostream& out, const PercolationCurve& curve);
PercolationCurve read_curve_csv(std::istream& in);
void save_curve(const std::filesystem::path& path, const PercolationCurve& curve);
PercolationCurve load_curve(const std::filesystem::path& path);

// First line is a JSON header {"kind","size","N"}, then one "u v" per edge.
void write_lattice(std::ostream& out, const Lattice& lattice);
struct LatticeDump {
  LatticeKind kind;
  int size;
  std::size_t node_count;
  std::vector<Edge> edges;
};
LatticeDump read_lattice(std::istream& in);

// Path table CSV: u,v,l,n
void write_path_table(std::ostream& out, const PathTable& table);
std::vector<PairPath> read_path_table(std::istream& in);

nlohmann::json to_json(const ThresholdEstimate& est);
ThresholdEstimate threshold_from_json(const nlohmann::json& j);

// c_th is a number for a single lattice kind, otherwise an object keyed by
// lattice name.
nlohmann::json to_json(const ScalingFit& fit);
ScalingFit fit_from_json(const nlohmann::json& j);

// Collapse point cloud CSV: lattice,N,x,y
void write_collapse_points(std::ostream& out, const std::vector<CollapsePoint>& points);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gcp::io
