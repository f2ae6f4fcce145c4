#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcp/cli.hpp"
#include "gcp/io.hpp"

namespace fs = std::filesystem;
using namespace gcp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gcp_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sweep writes one curve per size") {
  const auto dir = fresh_dir("sweep");
  const auto r = run({"sweep", "--lattice", "square", "--sizes", "3,4,5", "--protocol", "gcp",
                      "--points", "11", "--ensembles", "20", "--seed", "42", "--out", dir.string()});
  CHECK(r.code == 0);
  for (int n : {9, 16, 25}) {
    const auto p = dir / ("square_gcp_N" + std::to_string(n) + ".csv");
    REQUIRE(fs::exists(p));
    const auto curve = io::load_curve(p);
    CHECK(curve.node_count == static_cast<std::size_t>(n));
    CHECK(curve.points.size() == 11);
    CHECK(curve.ensembles == 20);
  }
  CHECK(r.out.find("N=25") != std::string::npos);
}

TEST_CASE("hexagonal sizes map to paper node counts") {
  const auto dir = fresh_dir("hex");
  const auto r = run({"sweep", "--lattice", "hexagonal", "--sizes", "4,5,6,7", "--points", "3",
                      "--ensembles", "2", "--out", dir.string()});
  CHECK(r.code == 0);
  for (int n : {48, 70, 96, 126}) CHECK(fs::exists(dir / ("hexagonal_gcp_N" + std::to_string(n) + ".csv")));
}

TEST_CASE("identical runs are byte-identical") {
  const auto a = fresh_dir("repro_a"), b = fresh_dir("repro_b");
  for (const auto& [dir, workers] : {std::pair{a, "1"}, std::pair{b, "4"}})
    CHECK(run({"sweep", "--lattice", "triangular", "--sizes", "4", "--points", "9", "--ensembles",
               "30", "--seed", "5", "--workers", workers, "--out", dir.string()})
              .code == 0);
  CHECK(slurp(a / "triangular_gcp_N16.csv") == slurp(b / "triangular_gcp_N16.csv"));
}

TEST_CASE("config file with flag overrides") {
  const auto dir = fresh_dir("config");
  const auto cfg = dir / "run.toml";
  {
    std::ofstream f(cfg);
    f << "lattice = \"triangular\"\nsizes = [3]\npoints = 5\nensembles = 4\nprotocol = \"cep\"\n"
      << "out = \"" << (dir / "from_file").string() << "\"\n";
  }
  auto r = run({"sweep", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "from_file" / "triangular_cep_N9.csv"));
  r = run({"sweep", "--config", cfg.string(), "--sizes", "4", "--out", (dir / "flags").string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "flags" / "triangular_cep_N16.csv"));
  CHECK_FALSE(fs::exists(dir / "flags" / "triangular_cep_N9.csv"));
}

TEST_CASE("usage and I/O errors map to exit codes") {
  const auto dir = fresh_dir("errors");
  CHECK(run({"sweep", "--sizes", "3", "--points", "0", "--out", dir.string()}).code == cli::kUsage);
  CHECK(run({"sweep", "--sizes", "1", "--out", dir.string()}).code == cli::kUsage);
  CHECK(run({"sweep", "--lattice", "kagome", "--sizes", "3"}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);

  const auto blocker = dir / "file.txt";
  std::ofstream(blocker) << "x";
  CHECK(run({"sweep", "--sizes", "3", "--points", "3", "--ensembles", "2", "--out",
             (blocker / "sub").string()})
            .code == cli::kIo);
  CHECK(run({"threshold", "--in", "/nonexistent/a.csv", "/nonexistent/b.csv"}).code == cli::kIo);
  CHECK(run({"sweep", "--config", "/nonexistent/run.toml"}).code == cli::kIo);
}

TEST_CASE("threshold and collapse subcommands") {
  const auto dir = fresh_dir("analysis");
  REQUIRE(run({"sweep", "--lattice", "square", "--sizes", "4,5,6", "--points", "21", "--ensembles",
               "200", "--seed", "3", "--out", dir.string()})
              .code == 0);
  const std::string a = (dir / "square_gcp_N16.csv").string();
  const std::string b = (dir / "square_gcp_N25.csv").string();
  const std::string c = (dir / "square_gcp_N36.csv").string();

  CHECK(run({"threshold", "--in", a}).code == cli::kUsage);
  const auto json_path = (dir / "threshold.json").string();
  auto r = run({"threshold", "--in", a, b, c, "--out", json_path});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(json_path));
  const auto est = io::threshold_from_json(j);
  CHECK(est.theta_t > 0.0);
  CHECK(est.theta_t < 1.0);
  CHECK(j.at("lattice") == "square");
  CHECK(r.out.find("theta_T (normalized") != std::string::npos);

  CHECK(run({"collapse", "--in", a, b}).code == cli::kUsage);
  const auto fit_path = dir / "fit.json";
  r = run({"collapse", "--in", a, b, c, "--out", fit_path.string()});
  REQUIRE(r.code == 0);
  const auto fit = io::fit_from_json(nlohmann::json::parse(slurp(fit_path)));
  CHECK(fit.nu > 0.0);
  CHECK(fit.beta >= 0.0);
  CHECK(fit.d == 2.0);
  const auto cloud = slurp(dir / "fit_points.csv");
  CHECK(cloud.rfind("lattice,N,x,y\n", 0) == 0);

  r = run({"collapse", "--in", a, b, c, "--c-th", "0.5", "--joint"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).contains("nu"));
}

TEST_CASE("incompatible curves are data errors") {
  const auto dir = fresh_dir("mixed");
  REQUIRE(run({"sweep", "--sizes", "3", "--points", "5", "--ensembles", "5", "--protocol", "cep",
               "--out", dir.string()})
              .code == 0);
  REQUIRE(run({"sweep", "--sizes", "4", "--points", "5", "--ensembles", "5", "--protocol", "gcp",
               "--out", dir.string()})
              .code == 0);
  REQUIRE(run({"sweep", "--sizes", "5", "--points", "7", "--ensembles", "5", "--protocol", "gcp",
               "--out", dir.string()})
              .code == 0);
  const auto cep = (dir / "square_cep_N9.csv").string();
  const auto gcp16 = (dir / "square_gcp_N16.csv").string();
  const auto gcp25 = (dir / "square_gcp_N25.csv").string();
  CHECK(run({"threshold", "--in", cep, gcp16}).code == cli::kData);
  CHECK(run({"threshold", "--in", gcp16, gcp25}).code == cli::kData);  // different grids
}

TEST_CASE("lattice and paths dumps") {
  auto r = run({"lattice", "--lattice", "square", "--size", "3"});
  CHECK(r.code == 0);
  std::istringstream lat(r.out);
  const auto dump = io::read_lattice(lat);
  CHECK(dump.node_count == 9);
  CHECK(dump.edges.size() == 12);

  r = run({"paths", "--lattice", "triangular", "--size", "3"});
  CHECK(r.code == 0);
  std::istringstream tab(r.out);
  const auto rows = io::read_path_table(tab);
  CHECK(rows.size() == 36);
  // (0,1) is node 3 and (2,2) is node 8 in row-major order
  const auto it = std::find_if(rows.begin(), rows.end(), [](const PairPath& p) { return p.u == 3 && p.v == 8; });
  REQUIRE(it != rows.end());
  CHECK(it->path == PathSummary{2, 2});

  CHECK(run({"paths", "--size", "1"}).code == cli::kUsage);
  CHECK(run({"paths", "--size", "4", "--sample-fraction", "0"}).code == cli::kUsage);
  r = run({"paths", "--size", "4", "--sample-fraction", "0.5", "--sample-seed", "3"});
  CHECK(r.code == 0);
}
