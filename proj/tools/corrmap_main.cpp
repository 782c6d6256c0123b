// corrmap: build completely positive reduced dynamical maps from correlated
// system-environment states, verify them against the exact composite-space
// evolution, and export channel matrices and Bloch-sphere images.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 malformed
// input or configuration.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrmap/analysis.hpp"
#include "corrmap/channels.hpp"
#include "corrmap/json_io.hpp"
#include "corrmap/kernels.hpp"
#include "corrmap/linalg.hpp"
#include "corrmap/rng.hpp"
#include "corrmap/scenarios.hpp"
#include "corrmap/states.hpp"

namespace {

using namespace corrmap;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

struct LoadedScenario {
  std::string name;
  states::CorrelatedClassSpec spec;
  std::optional<scenarios::QubitScenarioParams> qubit;
  std::optional<ComplexMatrix> unitary;  // from a scenario file
};

LoadedScenario load_scenario(const std::string& scenario_path,
                             const std::string& case_name) {
  if (scenario_path.empty() == case_name.empty())
    throw std::invalid_argument("exactly one of --scenario and --case is required");
  LoadedScenario out;
  if (!case_name.empty()) {
    auto named = scenarios::named_scenario(case_name);
    out.name = named.name;
    out.spec = std::move(named.spec);
    out.qubit = named.qubit;
    return out;
  }
  const json doc = json::parse(io::read_text_file(scenario_path));
  out.name = scenario_path;
  out.spec = io::spec_from_json(doc);
  if (doc.contains("unitary") && !doc.at("unitary").is_null())
    out.unitary = io::matrix_from_json(doc.at("unitary"));
  return out;
}

// Scenario files may pin their own composite unitary; qubit scenarios build
// the two-qubit coupling at the requested dimensionless time 2*omega*t;
// anything else gets a fixed seeded random unitary.
ComplexMatrix unitary_for(const LoadedScenario& scn, double two_omega_t) {
  const int side = scn.spec.n * scn.spec.dim_e();
  if (scn.unitary) {
    if (!scn.unitary->is_square() || scn.unitary->rows() != side)
      throw std::invalid_argument("scenario unitary has wrong dimensions");
    return *scn.unitary;
  }
  if (scn.spec.n == 2 && scn.spec.dim_e() == 2)
    return scenarios::qubit_unitary(two_omega_t / 2.0);
  rng::Stream rng(0x5EEDBA5EULL + static_cast<std::uint64_t>(side));
  return rng.random_unitary(side);
}

bool is_qubit_class_one(const LoadedScenario& scn) {
  return !scn.spec.is_class_two() && scn.spec.n == 2 && scn.spec.dim_e() == 2 &&
         scn.spec.d - 1 + scn.spec.w_block.size() == 2;
}

std::vector<states::DensityMatrix> diagonal_domain(const states::CorrelatedClassSpec& spec,
                                                   int grid) {
  std::vector<ComplexMatrix> slots = spec.phi;
  for (const auto& v : spec.w_block.vectors) slots.push_back(v);
  std::vector<states::DensityMatrix> out;
  const int count = static_cast<int>(slots.size());
  for (int g = 0; g <= grid; ++g) {
    const double q = static_cast<double>(g) / grid;
    ComplexMatrix rho(spec.n, spec.n);
    rho.add_scaled(q, projector(slots[0]));
    rho.add_scaled(1.0 - q, projector(slots[count - 1]));
    out.emplace_back(std::move(rho));
  }
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    io::write_text_file(out_path, content);
}

channels::KrausSet build_map(const LoadedScenario& scn, const std::string& map_name,
                             const ComplexMatrix& u, double t) {
  if (map_name == "phiII") return channels::build_phiII_kraus(scn.spec, u, t);
  if (map_name == "phi1") return channels::build_phi1_kraus(scn.spec, u, t);
  if (map_name == "phi2") return channels::build_phi2_kraus(scn.spec, u, t);
  throw std::invalid_argument("unknown map selector: " + map_name);
}

// ---------------------------------------------------------------------------
// verify

struct CheckRow {
  std::string name;
  double defect = 0.0;
  double tol = 0.0;
  bool pass = false;
};

int cmd_verify(const std::string& scenario_path, const std::string& case_name, double t,
               double tol, const std::string& out_path) {
  const LoadedScenario scn = load_scenario(scenario_path, case_name);
  const auto& spec = scn.spec;
  const int de = spec.dim_e();
  const ComplexMatrix u = unitary_for(scn, t);

  std::vector<CheckRow> rows;
  auto add = [&](const std::string& name, double defect, double bound) {
    rows.push_back({name, defect, bound, defect <= bound});
  };

  const auto composite = states::assemble_composite(spec);
  const auto rho0 = states::marginal(spec);
  add("marginal_consistency",
      linalg::frobenius_distance(linalg::partial_trace_env(composite.mat(), spec.n, de),
                                 rho0.mat()),
      tol);

  if (spec.is_class_two()) {
    const auto link = states::ghjw_link(spec.w_block, *spec.psi_block);
    add("ghjw_isometry", linalg::unitarity_defect(link.u), tol);
    double link_defect = 0.0;
    for (int k = 0; k < link.r(); ++k) {
      double mixed = 0.0;
      for (int j = 0; j < link.m(); ++j)
        mixed += link.lambda_at(k, j) * spec.w_block.weights[j];
      link_defect =
          std::max(link_defect, std::abs(mixed - spec.psi_block->weights[k]));
    }
    add("ghjw_weights", link_defect, tol);
  }

  const auto povm = channels::invariant_povm(spec);
  ComplexMatrix completeness(spec.n, spec.n);
  for (const auto& e : povm.effects) completeness += e;
  completeness -= ComplexMatrix::identity(spec.n);
  add("povm_completeness", completeness.frobenius_norm(), tol);

  ComplexMatrix invariant(spec.n, spec.n);
  for (const auto& v : spec.phi) {
    const ComplexMatrix pi = projector(v);
    invariant += ComplexMatrix::mul(ComplexMatrix::mul(pi, rho0.mat()), pi);
  }
  for (const auto& k : povm.kraus_k)
    invariant += ComplexMatrix::mul_dagger(ComplexMatrix::mul(k, rho0.mat()), k);
  add("povm_invariance", linalg::frobenius_distance(invariant, rho0.mat()), tol);

  const auto oracle = channels::oracle_reduced(composite, u, spec.n, de);
  auto check_map = [&](const channels::KrausSet& ks) {
    const std::string label = channels::to_string(ks.label);
    add("tp_" + label, channels::tp_defect(ks.operators, spec.n), tol);
    const auto rep = analysis::rep_from_kraus(ks);
    const auto report = analysis::cp_report(rep, tol);
    add("cp_" + label, std::max(0.0, -report.min_choi_eig), tol);
    add("oracle_equivalence_" + label,
        linalg::frobenius_distance(channels::apply_kraus_raw(ks, rho0.mat()),
                                   oracle.mat()),
        tol);
    return rep;
  };

  if (spec.is_class_two()) {
    check_map(channels::build_phiII_kraus(spec, u, t));
  } else {
    const auto rep1 = check_map(channels::build_phi1_kraus(spec, u, t));
    const auto rep2 = check_map(channels::build_phi2_kraus(spec, u, t));
    const auto repd = analysis::rep_from_map(spec.n, [&](const ComplexMatrix& x) {
      return channels::diagonalizing_projection(spec, x);
    });
    add("composition_identity",
        linalg::frobenius_distance(rep1.lambda,
                                   ComplexMatrix::mul(rep2.lambda, repd.lambda)),
        tol);
  }

  // Randomly weighted members of the same class must agree with the oracle
  // through the one fixed Kraus family as well.
  {
    rng::Stream rng(0xABCDEF);
    const auto ks = spec.is_class_two() ? channels::build_phiII_kraus(spec, u, t)
                                        : channels::build_phi1_kraus(spec, u, t);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      auto member = spec;
      member.p = rng.simplex(spec.d);
      const auto member_oracle = channels::oracle_reduced(
          states::assemble_composite(member), u, spec.n, de);
      worst = std::max(
          worst, linalg::frobenius_distance(
                     channels::apply_kraus_raw(ks, states::marginal(member).mat()),
                     member_oracle.mat()));
    }
    add("oracle_equivalence_members", worst, tol);
  }

  bool all_pass = true;
  json checks = json::array();
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    checks.push_back({{"name", row.name},
                      {"defect", row.defect},
                      {"tol", row.tol},
                      {"pass", row.pass}});
  }
  const json report{{"scenario", scn.name},
                    {"t", t},
                    {"tolerance", tol},
                    {"kernel_backend", kernels::active_backend().name},
                    {"checks", std::move(checks)},
                    {"all_pass", all_pass}};
  emit(out_path, report.dump(2) + "\n");
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// choi

int cmd_choi(const std::string& scenario_path, const std::string& case_name,
             const std::string& map_name, double t, double tol,
             const std::string& out_path) {
  const LoadedScenario scn = load_scenario(scenario_path, case_name);
  const ComplexMatrix u = unitary_for(scn, t);
  const auto ks = build_map(scn, map_name, u, t);
  const auto rep = analysis::rep_from_kraus(ks);
  const auto report = analysis::cp_report(rep, tol);
  const json doc{{"scenario", scn.name},
                 {"map", map_name},
                 {"t", t},
                 {"lambda", io::matrix_to_json(rep.lambda)},
                 {"choi", io::matrix_to_json(rep.choi)},
                 {"kraus", io::kraus_to_json(ks)},
                 {"cp_report", io::cp_report_to_json(report)}};
  emit(out_path, doc.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string& scenario_path, const std::string& case_name,
              double t_max, int steps, double tol, const std::string& out_path) {
  if (steps < 2) throw std::invalid_argument("sweep needs --steps >= 2");
  if (!(t_max > 0.0)) throw std::invalid_argument("sweep needs --t-max > 0");
  const LoadedScenario scn = load_scenario(scenario_path, case_name);
  if (!is_qubit_class_one(scn))
    throw std::invalid_argument(
        "sweep compares the two class-I extensions and needs a qubit class-I scenario");

  const auto domain = diagonal_domain(scn.spec, 20);
  std::ostringstream csv;
  csv << "t,min_choi_eig_phi1,min_choi_eig_phi2,tp_defect_phi1,tp_defect_phi2,"
         "dist_domain,dist_full\n";
  for (int i = 0; i < steps; ++i) {
    const double t = t_max * i / (steps - 1);
    const ComplexMatrix u = unitary_for(scn, t);
    const auto ks1 = channels::build_phi1_kraus(scn.spec, u, t);
    const auto ks2 = channels::build_phi2_kraus(scn.spec, u, t);
    const auto rep1 = analysis::rep_from_kraus(ks1);
    const auto rep2 = analysis::rep_from_kraus(ks2);
    const auto cp1 = analysis::cp_report(rep1, tol);
    const auto cp2 = analysis::cp_report(rep2, tol);
    csv << io::format_double(t) << ',' << io::format_double(cp1.min_choi_eig) << ','
        << io::format_double(cp2.min_choi_eig) << ','
        << io::format_double(channels::tp_defect(ks1.operators, 2)) << ','
        << io::format_double(channels::tp_defect(ks2.operators, 2)) << ','
        << io::format_double(analysis::channel_distance(rep1, rep2, domain)) << ','
        << io::format_double(analysis::channel_distance(rep1, rep2)) << '\n';
  }
  emit(out_path, csv.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bloch

std::string bloch_csv(const analysis::ChannelRep& rep, int samples) {
  std::ostringstream csv;
  csv << "in_x,in_y,in_z,out_x,out_y,out_z\n";
  for (const auto& s : analysis::bloch_image(rep, samples)) {
    csv << io::format_double(s.in[0]) << ',' << io::format_double(s.in[1]) << ','
        << io::format_double(s.in[2]) << ',' << io::format_double(s.out[0]) << ','
        << io::format_double(s.out[1]) << ',' << io::format_double(s.out[2]) << '\n';
  }
  return csv.str();
}

int cmd_bloch(const std::string& scenario_path, const std::string& case_name,
              const std::string& map_name, double t, int samples,
              const std::string& out_path) {
  const LoadedScenario scn = load_scenario(scenario_path, case_name);
  if (scn.spec.n != 2) throw std::invalid_argument("bloch requires a qubit scenario");
  const ComplexMatrix u = unitary_for(scn, t);
  const auto rep = analysis::rep_from_kraus(build_map(scn, map_name, u, t));
  emit(out_path, bloch_csv(rep, samples));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce

int cmd_reproduce(const std::string& case_name, const std::string& out_dir, double tol) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto path = [&](const std::string& file) {
    return (fs::path(out_dir) / file).string();
  };

  json report{{"case", case_name}, {"tolerance", tol}};
  json entries = json::array();
  double worst = 0.0;
  auto record = [&](const std::string& name, double diff) {
    entries.push_back({{"name", name}, {"max_abs_diff", diff}, {"pass", diff <= tol}});
    worst = std::max(worst, diff);
  };

  if (case_name == "cesar" || case_name == "jpa") {
    const auto scn = scenarios::named_scenario(case_name);
    const auto constants = scenarios::derived_constants(*scn.qubit);
    const auto jpa = scenarios::figure_params();
    for (const double t : scenarios::figure_times()) {
      const ComplexMatrix u = scenarios::qubit_unitary(t / 2.0);
      const auto rep1 =
          analysis::rep_from_kraus(channels::build_phi1_kraus(scn.spec, u, t));
      const auto rep2 =
          analysis::rep_from_kraus(channels::build_phi2_kraus(scn.spec, u, t));
      const std::string tag = io::format_double(t);

      if (case_name == "cesar") {
        const ComplexMatrix l1 = scenarios::analytic_lambda_phi1(constants, t);
        const ComplexMatrix l2 = scenarios::analytic_lambda_phi2(constants, t);
        io::write_text_file(path("lambda_phi1_analytic_t" + tag + ".json"),
                            io::matrix_to_json(l1).dump(2) + "\n");
        io::write_text_file(path("lambda_phi1_numeric_t" + tag + ".json"),
                            io::matrix_to_json(rep1.lambda).dump(2) + "\n");
        io::write_text_file(path("lambda_phi2_analytic_t" + tag + ".json"),
                            io::matrix_to_json(l2).dump(2) + "\n");
        io::write_text_file(path("lambda_phi2_numeric_t" + tag + ".json"),
                            io::matrix_to_json(rep2.lambda).dump(2) + "\n");
        record("lambda_phi1_t" + tag, linalg::frobenius_distance(rep1.lambda, l1));
        record("lambda_phi2_t" + tag, linalg::frobenius_distance(rep2.lambda, l2));
        record("choi_phi1_t" + tag,
               linalg::frobenius_distance(rep1.choi,
                                          scenarios::analytic_choi_phi1(constants, t)));
        record("choi_phi2_t" + tag,
               linalg::frobenius_distance(rep2.choi,
                                          scenarios::analytic_choi_phi2(constants, t)));
      } else {
        const ComplexMatrix analytic = scenarios::jpa_choi(jpa, t);
        io::write_text_file(path("choi_phi2_analytic_t" + tag + ".json"),
                            io::matrix_to_json(analytic).dump(2) + "\n");
        io::write_text_file(path("choi_phi2_numeric_t" + tag + ".json"),
                            io::matrix_to_json(rep2.choi).dump(2) + "\n");
        record("choi_phi2_t" + tag, linalg::frobenius_distance(rep2.choi, analytic));
      }
    }
  } else if (case_name == "discordant-uniform") {
    const auto scn = scenarios::named_scenario(case_name);
    const auto povm = channels::invariant_povm(scn.spec);
    json ops = json::array();
    for (const auto& k : povm.kraus_k) ops.push_back(io::matrix_to_json(k));
    io::write_text_file(path("k_operators.json"), ops.dump(2) + "\n");

    const double expected_norms[6] = {std::sqrt(0.25), std::sqrt(0.25), std::sqrt(0.5),
                                      std::sqrt(0.5),  std::sqrt(0.5),  0.0};
    for (int i = 0; i < 6; ++i)
      record("k_coefficient_" + std::to_string(i),
             std::abs(povm.kraus_k[i].frobenius_norm() - expected_norms[i]));

    const ComplexMatrix w = scn.spec.w_block.assemble();
    ComplexMatrix mapped(2, 2);
    for (const auto& k : povm.kraus_k)
      mapped += ComplexMatrix::mul_dagger(ComplexMatrix::mul(k, w), k);
    record("w_invariance", linalg::frobenius_distance(mapped, w));

    ComplexMatrix total(2, 2);
    for (const auto& e : povm.effects) total += e;
    record("povm_completeness",
           linalg::frobenius_distance(total, ComplexMatrix::identity(2)));
  } else if (case_name == "figure") {
    const auto scn = scenarios::named_scenario(case_name);
    const auto domain = diagonal_domain(scn.spec, 20);
    for (const double t : scenarios::figure_times()) {
      const ComplexMatrix u = scenarios::qubit_unitary(t / 2.0);
      const auto rep1 =
          analysis::rep_from_kraus(channels::build_phi1_kraus(scn.spec, u, t));
      const auto rep2 =
          analysis::rep_from_kraus(channels::build_phi2_kraus(scn.spec, u, t));
      const std::string tag = io::format_double(t);
      io::write_text_file(path("bloch_phi1_t" + tag + ".csv"), bloch_csv(rep1, 400));
      io::write_text_file(path("bloch_phi2_t" + tag + ".csv"), bloch_csv(rep2, 400));
      record("domain_agreement_t" + tag,
             analysis::channel_distance(rep1, rep2, domain));
    }
  } else {
    throw std::invalid_argument("unknown reproduce case: " + case_name);
  }

  bool all_pass = true;
  for (const auto& e : entries) all_pass = all_pass && e.at("pass").get<bool>();
  report["entries"] = std::move(entries);
  report["max_abs_diff"] = worst;
  report["all_pass"] = all_pass;
  io::write_text_file(path("diff_report.json"), report.dump(2) + "\n");
  std::cout << (all_pass ? "PASS" : "FAIL") << " " << case_name << " max diff "
            << io::format_double(worst) << "\n";
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "corrmap: completely positive reduced dynamical maps from correlated "
      "system-environment states"};
  app.require_subcommand(1);

  std::string scenario_path, case_name, map_name = "phi2", out_path, out_dir;
  double t = 0.7, t_max = 0.0, tol = 1e-10;
  int steps = 0, samples = 400;

  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario JSON file");
    cmd->add_option("--case", case_name,
                    "named case: cesar, jpa, figure, discordant-uniform");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the construction checks");
  add_source(verify);
  verify->add_option("--t", t, "dimensionless time 2*omega*t");
  verify->add_option("--tol", tol, "tolerance for all checks");
  verify->add_option("--out", out_path, "report path (default stdout)");

  CLI::App* choi = app.add_subcommand("choi", "export the channel and Choi matrices");
  add_source(choi);
  choi->add_option("--map", map_name, "phi1 | phi2 | phiII");
  choi->add_option("--t", t, "dimensionless time 2*omega*t");
  choi->add_option("--tol", tol, "CP tolerance");
  choi->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "time sweep of the two extensions");
  add_source(sweep);
  sweep->add_option("--t-max", t_max, "largest 2*omega*t")->required();
  sweep->add_option("--steps", steps, "number of grid points")->required();
  sweep->add_option("--tol", tol, "CP tolerance");
  sweep->add_option("--out", out_path, "CSV path (default stdout)");

  CLI::App* bloch = app.add_subcommand("bloch", "sample the transformed Bloch sphere");
  add_source(bloch);
  bloch->add_option("--map", map_name, "phi1 | phi2 | phiII");
  bloch->add_option("--t", t, "dimensionless time 2*omega*t");
  bloch->add_option("--samples", samples, "number of sphere samples");
  bloch->add_option("--out", out_path, "CSV path (default stdout)");

  CLI::App* reproduce =
      app.add_subcommand("reproduce", "regenerate the reference outputs");
  reproduce->add_option("--case", case_name, "cesar | jpa | figure | discordant-uniform")
      ->required();
  reproduce->add_option("--out", out_dir, "output directory")->required();
  reproduce->add_option("--tol", tol, "golden comparison tolerance")->default_val(1e-9);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (verify->parsed()) return cmd_verify(scenario_path, case_name, t, tol, out_path);
    if (choi->parsed())
      return cmd_choi(scenario_path, case_name, map_name, t, tol, out_path);
    if (sweep->parsed())
      return cmd_sweep(scenario_path, case_name, t_max, steps, tol, out_path);
    if (bloch->parsed())
      return cmd_bloch(scenario_path, case_name, map_name, t, samples, out_path);
    if (reproduce->parsed()) return cmd_reproduce(case_name, out_dir, tol);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitBadInput;
}
