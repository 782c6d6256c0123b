#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "corrmap/json_io.hpp"
#include "corrmap/linalg.hpp"
#include "corrmap/rng.hpp"
#include "corrmap/scenarios.hpp"

// End-to-end checks driving the installed binary (path in CORRMAP_CLI).

namespace fs = std::filesystem;
using corrmap::ComplexMatrix;
using corrmap::io::json;
namespace linalg = corrmap::linalg;

namespace {

std::string cli_path() {
  const char* path = std::getenv("CORRMAP_CLI");
  REQUIRE_MESSAGE(path != nullptr, "CORRMAP_CLI must point at the binary");
  return path;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "corrmap_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const fs::path capture = work_dir() / "stdout.txt";
  const std::string command =
      cli_path() + " " + args + " > " + capture.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  if (output != nullptr) {
    std::ifstream in(capture);
    std::ostringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify passes on the named cases") {
  std::string out;
  CHECK(run_cli("verify --case discordant-uniform", &out) == 0);
  const json report = json::parse(out);
  CHECK(report.at("all_pass").get<bool>());
  for (const auto& check : report.at("checks"))
    CHECK(check.at("pass").get<bool>());

  CHECK(run_cli("verify --case cesar --tol 1e-12") == 0);
  CHECK(run_cli("verify --case figure --t 1.1") == 0);
}

TEST_CASE("scenario and kraus encodings round-trip") {
  const auto scn = corrmap::scenarios::named_scenario("discordant-uniform");
  const json doc = corrmap::io::spec_to_json(scn.spec);
  const auto back = corrmap::io::spec_from_json(doc);
  CHECK(back.n == scn.spec.n);
  CHECK(back.is_class_two());
  CHECK(linalg::frobenius_distance(corrmap::states::marginal(back).mat(),
                                   corrmap::states::marginal(scn.spec).mat()) < 1e-14);

  corrmap::rng::Stream rng(71);
  const ComplexMatrix m = rng.gaussian_matrix(3, 2);
  CHECK(linalg::frobenius_distance(
            corrmap::io::matrix_from_json(corrmap::io::matrix_to_json(m)), m) == 0.0);

  const auto ks = corrmap::channels::make_kraus_set(
      {ComplexMatrix::identity(2)}, corrmap::channels::KrausLabel::Custom, 0.25);
  const json kj = corrmap::io::kraus_to_json(ks);
  CHECK(kj.at("label") == "custom");
  CHECK(kj.at("time_tag").get<double>() == 0.25);
  CHECK(kj.at("operators").size() == 1);
}

TEST_CASE("verify accepts a scenario file and rejects a broken one") {
  const auto scn = corrmap::scenarios::named_scenario("cesar");
  const fs::path good = work_dir() / "good.json";
  corrmap::io::write_text_file(good.string(),
                               corrmap::io::spec_to_json(scn.spec).dump(2));
  CHECK(run_cli("verify --scenario " + good.string()) == 0);

  // With an embedded zero-interaction unitary every map reduces to its
  // zero-time form and the checks still pass.
  json pinned = corrmap::io::spec_to_json(scn.spec);
  pinned["unitary"] = corrmap::io::matrix_to_json(ComplexMatrix::identity(4));
  const fs::path pinned_path = work_dir() / "pinned.json";
  corrmap::io::write_text_file(pinned_path.string(), pinned.dump(2));
  CHECK(run_cli("verify --scenario " + pinned_path.string()) == 0);

  // Environment state with a negative eigenvalue.
  json doc = corrmap::io::spec_to_json(scn.spec);
  doc["rho_env"][0]["data"] = {{1.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-0.5, 0.0}};
  const fs::path bad = work_dir() / "bad.json";
  corrmap::io::write_text_file(bad.string(), doc.dump(2));
  CHECK(run_cli("verify --scenario " + bad.string()) == 2);

  const fs::path garbled = work_dir() / "garbled.json";
  corrmap::io::write_text_file(garbled.string(), "{not json");
  CHECK(run_cli("verify --scenario " + garbled.string()) == 2);

  CHECK(run_cli("verify --case nope") == 2);
  CHECK(run_cli("verify") == 2);
}

TEST_CASE("choi output carries a trace-2 Choi matrix and matches the closed form") {
  std::string out;
  CHECK(run_cli("choi --case figure --map phi2 --t 0", &out) == 0);
  const json doc = json::parse(out);
  const ComplexMatrix choi = corrmap::io::matrix_from_json(doc.at("choi"));
  CHECK(std::abs(choi.trace() - corrmap::cplx(2.0)) < 1e-10);
  CHECK(doc.at("cp_report").at("is_cp").get<bool>());

  CHECK(run_cli("choi --case jpa --map phi2 --t 0.3", &out) == 0);
  const ComplexMatrix choi_t =
      corrmap::io::matrix_from_json(json::parse(out).at("choi"));
  const ComplexMatrix expected =
      corrmap::scenarios::jpa_choi(corrmap::scenarios::figure_params(), 0.3);
  CHECK(linalg::frobenius_distance(choi_t, expected) < 1e-9);

  CHECK(run_cli("choi --case figure --map bogus --t 0") == 2);
}

TEST_CASE("choi output is byte-identical across runs") {
  std::string first, second;
  CHECK(run_cli("choi --case figure --map phi1 --t 0.4", &first) == 0);
  CHECK(run_cli("choi --case figure --map phi1 --t 0.4", &second) == 0);
  CHECK(first == second);
  CHECK_FALSE(first.empty());
}

TEST_CASE("sweep emits one row per grid point with tight domain distances") {
  const fs::path csv_path = work_dir() / "sweep.csv";
  CHECK(run_cli("sweep --case figure --t-max 1.5707963267948966 --steps 20 --out " +
                csv_path.string()) == 0);
  std::ifstream in(csv_path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "t,min_choi_eig_phi1,min_choi_eig_phi2,tp_defect_phi1,tp_defect_phi2,"
        "dist_domain,dist_full");
  int rows = 0;
  bool interior_distance_seen = false;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ss(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(ss, field, ',')) values.push_back(std::stod(field));
    REQUIRE(values.size() == 7);
    CHECK(values[1] >= -1e-10);  // both extensions stay completely positive
    CHECK(values[2] >= -1e-10);
    CHECK(values[3] < 1e-10);
    CHECK(values[4] < 1e-10);
    CHECK(values[5] < 1e-10);  // they agree on the domain
    if (values[6] > 1e-6) interior_distance_seen = true;
  }
  CHECK(rows == 20);
  CHECK(interior_distance_seen);

  CHECK(run_cli("sweep --case figure --t-max 0 --steps 2") == 2);
  CHECK(run_cli("sweep --case figure --t-max 1 --steps 1") == 2);
  CHECK(run_cli("sweep --case discordant-uniform --t-max 1 --steps 5") == 2);
}

TEST_CASE("bloch pins the pinched image at zero time") {
  std::string phi1_csv, phi2_csv;
  CHECK(run_cli("bloch --case figure --map phi1 --t 0 --samples 64", &phi1_csv) == 0);
  CHECK(run_cli("bloch --case figure --map phi2 --t 0 --samples 64", &phi2_csv) == 0);

  std::istringstream in(phi1_csv);
  std::string line;
  REQUIRE(std::getline(in, line));  // header
  double max_out_y_gap = 0.0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string field;
    std::vector<double> v;
    while (std::getline(ss, field, ',')) v.push_back(std::stod(field));
    REQUIRE(v.size() == 6);
    // Image of the first extension at t = 0 collapses onto the y axis.
    CHECK(std::abs(v[3]) < 1e-12);
    CHECK(std::abs(v[5]) < 1e-12);
    max_out_y_gap = std::max(max_out_y_gap, std::abs(v[4] - v[1]));
  }
  CHECK(max_out_y_gap < 1e-12);
  CHECK(phi1_csv != phi2_csv);

  CHECK(run_cli("bloch --case discordant-uniform --map phiII --t 0") == 0);
  const auto scn = corrmap::scenarios::discordant_spec(
      3, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  const fs::path non_qubit = work_dir() / "non_qubit.json";
  corrmap::io::write_text_file(non_qubit.string(),
                               corrmap::io::spec_to_json(scn).dump(2));
  CHECK(run_cli("bloch --scenario " + non_qubit.string() + " --map phiII") == 2);
}

TEST_CASE("reproduce writes matching reference outputs") {
  for (const std::string name : {"cesar", "jpa", "discordant-uniform", "figure"}) {
    const fs::path dir = work_dir() / ("repro_" + name);
    CHECK(run_cli("reproduce --case " + name + " --out " + dir.string()) == 0);
    const json report = json::parse(slurp(dir / "diff_report.json"));
    CHECK(report.at("all_pass").get<bool>());
    CHECK(report.at("max_abs_diff").get<double>() <= 1e-9);
  }
  CHECK(run_cli("reproduce --case unknown --out " + (work_dir() / "x").string()) == 2);

  // The sphere snapshots exist for every reference time.
  const fs::path fig = work_dir() / "repro_figure";
  int csvs = 0;
  for (const auto& entry : fs::directory_iterator(fig))
    if (entry.path().extension() == ".csv") ++csvs;
  CHECK(csvs == 10);
}
