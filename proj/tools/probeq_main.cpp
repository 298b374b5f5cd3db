// probeq: exact random-variable equivalence certificates and regret
// preferences on ([0,1), Lebesgue).
//
// Exit codes: 0 success / affirmative verdict, 1 semantic negative
// (unequal distributions, failed verification, no dominance), 2 malformed
// input or usage error.

#include <cstdlib>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probeq/certificates.hpp"
#include "probeq/coupling.hpp"
#include "probeq/gen.hpp"
#include "probeq/json_io.hpp"

namespace {

using namespace probeq;

int decimal_digits() {
  if (const char* env = std::getenv("PROBEQ_PRECISION")) {
    const int d = std::atoi(env);
    if (d >= 1 && d <= 300) return d;
  }
  return 12;
}

SimpleRV load_rv(const std::string& path) { return rv_from_json(load_json_file(path)); }

int cmd_gen(const std::string& kind, std::uint64_t seed, const std::string& out_x,
            const std::string& out_y) {
  gen::Rng rng(seed);
  gen::Pair pair = [&] {
    if (kind == "case1") return gen::case1_pair(rng);
    if (kind == "case2") return gen::case2_pair(rng);
    if (kind == "case3") return gen::case3_pair(rng);
    if (kind == "fosd") return gen::fosd_pair(rng);
    throw ParseError("unknown gen kind '" + kind + "'");
  }();
  save_json_file(out_x, rv_to_json(pair.x));
  save_json_file(out_y, rv_to_json(pair.y));
  Json summary{{"kind", kind},
               {"seed", seed},
               {"x", out_x},
               {"y", out_y},
               {"equal_in_distribution", equal_in_distribution(pair.x, pair.y)}};
  std::cout << summary.dump(1) << "\n";
  return 0;
}

int cmd_eq_dist(const std::string& x_path, const std::string& y_path) {
  const SimpleRV x = load_rv(x_path);
  const SimpleRV y = load_rv(y_path);
  const Distribution fx = distribution(x);
  const Distribution fy = distribution(y);
  const bool equal = fx == fy;
  Json out{{"equal", equal},
           {"x_distribution", dist_to_json(fx)},
           {"y_distribution", dist_to_json(fy)}};
  std::cout << out.dump(1) << "\n";
  return equal ? 0 : 1;
}

int cmd_fosd(const std::string& x_path, const std::string& y_path) {
  const FosdOrder order = fosd_compare(load_rv(x_path), load_rv(y_path));
  std::cout << Json{{"order", to_string(order)}}.dump(1) << "\n";
  return order == FosdOrder::StrictDom ? 0 : 1;
}

int cmd_certify(const std::string& x_path, const std::string& y_path,
                const std::string& out_path, int k_min, int k_max) {
  const SimpleRV x = load_rv(x_path);
  const SimpleRV y = load_rv(y_path);
  EquivalenceCertificate cert;
  try {
    cert = certify_equivalence(x, y, CertifyConfig{k_min, k_max});
  } catch (const DistributionsDiffer& err) {
    std::cout << Json{{"error", "DISTRIBUTIONS_DIFFER"}, {"detail", err.what()}}.dump(1)
              << "\n";
    return 1;
  }
  if (!out_path.empty()) save_json_file(out_path, certificate_to_json(cert));
  Json summary{{"case", to_string(cert.kind)}};
  if (cert.kind == CaseKind::Case1) {
    const auto& chain = std::get<PermutationChainCertificate>(cert.payload);
    summary["n_cells"] = chain.n_cells;
    summary["order_m"] = chain.order_m.get_str();
  } else if (cert.kind == CaseKind::Case2) {
    const auto& rc = std::get<RefinementCertificate>(cert.payload);
    summary["common_denominator"] = rc.common_denominator;
    summary["order_m"] = rc.chain.order_m.get_str();
  } else {
    const auto& dc = std::get<DyadicCertificate>(cert.payload);
    summary["k_min"] = dc.k_min;
    summary["k_max"] = dc.k_max;
    summary["records"] = dc.records.size();
    summary["sentinel"] = rat_to_string(dc.sentinel);
    Json bounds = Json::array();
    for (const auto& rec : dc.records)
      bounds.push_back(Json{{"k", rec.k},
                            {"diff_bound", rat_to_string(rec.bound_diff)},
                            {"change_bound", rat_to_string(rec.bound_change)}});
    summary["bounds"] = std::move(bounds);
  }
  if (!out_path.empty()) summary["certificate"] = out_path;
  std::cout << summary.dump(1) << "\n";
  return 0;
}

int cmd_verify(const std::vector<std::string>& files, unsigned jobs, bool as_json) {
  if (files.size() % 3 != 0)
    throw ParseError("verify expects triples: CERT X Y [CERT X Y ...]");
  struct Task {
    std::string cert_path;
    VerificationReport report;
  };
  const std::size_t n = files.size() / 3;
  std::vector<Task> tasks(n);
  const auto run_one = [&](std::size_t t) {
    tasks[t].cert_path = files[3 * t];
    const EquivalenceCertificate cert = certificate_from_json(load_json_file(files[3 * t]));
    const SimpleRV x = load_rv(files[3 * t + 1]);
    const SimpleRV y = load_rv(files[3 * t + 2]);
    tasks[t].report = verify_certificate(cert, x, y);
  };
  if (jobs <= 1 || n <= 1) {
    for (std::size_t t = 0; t < n; ++t) run_one(t);
  } else {
    // Certificates are independent; parallelize across them only.
    std::vector<std::future<void>> futures;
    for (std::size_t t = 0; t < n; ++t)
      futures.push_back(std::async(std::launch::async, run_one, t));
    for (auto& f : futures) f.get();
  }
  bool all_ok = true;
  Json out = Json::array();
  for (const auto& task : tasks) {
    all_ok = all_ok && task.report.ok();
    if (as_json) {
      Json entry = report_to_json(task.report);
      entry["certificate"] = task.cert_path;
      out.push_back(std::move(entry));
    } else {
      std::cout << task.cert_path << ": " << (task.report.ok() ? "PASS" : "FAIL") << "\n";
      for (const auto& item : task.report.items) {
        std::cout << "  " << (item.ok ? "ok  " : "FAIL") << " " << item.name;
        if (!item.detail.empty()) std::cout << " [" << item.detail << "]";
        std::cout << "\n";
      }
    }
  }
  if (as_json) std::cout << out.dump(1) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_regret(const std::string& psi_path, const std::string& v_path,
               const std::string& x_path, const std::string& y_path, double tol) {
  const RegretFunction psi = psi_from_json(load_json_file(psi_path));
  const RegretFunctional v = functional_from_json(load_json_file(v_path));
  const SimpleRV x = load_rv(x_path);
  const SimpleRV y = load_rv(y_path);
  const PsiValidation validation = validate_regret_function(psi, x.bounds(), 11);
  if (!validation.ok()) {
    Json issues = Json::array();
    for (const auto& issue : validation.issues) issues.push_back(issue.what);
    std::cerr << Json{{"error", "invalid regret function"}, {"issues", issues}}.dump(1)
              << "\n";
    return 2;
  }
  const Preference pref = prefer(psi, v, x, y, tol);
  std::cout << preference_to_json(pref, decimal_digits()).dump(1) << "\n";
  return 0;
}

int cmd_couple(const std::string& x_path, const std::string& y_path,
               const std::string& psi_path, const std::string& v_path, double tol) {
  const SimpleRV x = load_rv(x_path);
  const SimpleRV y = load_rv(y_path);
  const int digits = decimal_digits();
  if (psi_path.empty()) {
    const Coupling coupling =
        comonotone_couple(distribution(x), distribution(y),
                          x.bounds() == y.bounds()
                              ? x.bounds()
                              : OutcomeBounds::make(
                                    std::min(x.bounds().lo, y.bounds().lo),
                                    std::max(x.bounds().hi, y.bounds().hi)));
    Json out = coupling_to_json(coupling);
    out["order"] = to_string(fosd_compare(x, y));
    std::cout << out.dump(1) << "\n";
    return 0;
  }
  const RegretFunction psi = psi_from_json(load_json_file(psi_path));
  const RegretFunctional v = functional_from_json(load_json_file(v_path));
  const FosdPreferenceReport report = check_fosd_preference(psi, v, x, y, tol);
  std::cout << fosd_preference_report_to_json(report, digits).dump(1) << "\n";
  return report.comparable ? 0 : 1;
}

int cmd_skorokhod(const std::string& target_path, const std::vector<std::string>& seq_paths,
                  const std::vector<std::string>& eps_list) {
  const Distribution target = dist_from_json(load_json_file(target_path));
  std::vector<Distribution> seq;
  for (const auto& path : seq_paths) seq.push_back(dist_from_json(load_json_file(path)));
  std::vector<Rat> eps;
  for (const auto& text : eps_list) eps.push_back(rat_from_string(text));
  const SkorokhodReport report = skorokhod_represent(seq, target, eps);
  std::cout << skorokhod_report_to_json(report, decimal_digits()).dump(1) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact probabilistic-equivalence certificates and regret preferences"};
  app.require_subcommand(1);

  auto* sc_gen = app.add_subcommand("gen", "generate a seeded random RV pair");
  std::string gen_kind = "case2", gen_x = "X.json", gen_y = "Y.json";
  std::uint64_t gen_seed = 1;
  sc_gen->add_option("--kind", gen_kind, "case1|case2|case3|fosd");
  sc_gen->add_option("--seed", gen_seed, "RNG seed");
  sc_gen->add_option("--out-x", gen_x, "output path for X");
  sc_gen->add_option("--out-y", gen_y, "output path for Y");

  auto* sc_eq = app.add_subcommand("eq-dist", "compare distributions exactly");
  std::string eq_x, eq_y;
  sc_eq->add_option("x", eq_x)->required();
  sc_eq->add_option("y", eq_y)->required();

  auto* sc_fosd = app.add_subcommand("fosd", "first-order stochastic dominance verdict");
  std::string fosd_x, fosd_y;
  sc_fosd->add_option("x", fosd_x)->required();
  sc_fosd->add_option("y", fosd_y)->required();

  auto* sc_certify = app.add_subcommand("certify", "build an equivalence certificate");
  std::string cert_x, cert_y, cert_out;
  int k_min = 0, k_max = 0;
  sc_certify->add_option("x", cert_x)->required();
  sc_certify->add_option("y", cert_y)->required();
  sc_certify->add_option("--out", cert_out, "certificate output path");
  sc_certify->add_option("--k-min", k_min, "dyadic start level (0 = auto)");
  sc_certify->add_option("--k-max", k_max, "dyadic end level (0 = k_min + 12)");

  auto* sc_verify = app.add_subcommand("verify", "check certificates against RV pairs");
  std::vector<std::string> verify_files;
  unsigned verify_jobs = 1;
  bool verify_json = false;
  sc_verify->add_option("files", verify_files, "CERT X Y [CERT X Y ...]")->required();
  sc_verify->add_option("--jobs", verify_jobs, "parallel verification jobs");
  sc_verify->add_flag("--json", verify_json, "emit a JSON report");

  auto* sc_regret = app.add_subcommand("regret", "regret-based preference verdict");
  std::string regret_psi, regret_v, regret_x, regret_y;
  double regret_tol = 1e-9;
  sc_regret->add_option("--psi", regret_psi, "regret function spec")->required();
  sc_regret->add_option("--v", regret_v, "functional spec")->required();
  sc_regret->add_option("x", regret_x)->required();
  sc_regret->add_option("y", regret_y)->required();
  sc_regret->add_option("--tol", regret_tol, "indifference tolerance");

  auto* sc_couple = app.add_subcommand("couple", "comonotone coupling / FOSD check");
  std::string couple_x, couple_y, couple_psi, couple_v;
  double couple_tol = 1e-9;
  sc_couple->add_option("x", couple_x)->required();
  sc_couple->add_option("y", couple_y)->required();
  sc_couple->add_option("--psi", couple_psi, "regret function spec (enables preference check)");
  sc_couple->add_option("--v", couple_v, "functional spec");
  sc_couple->add_option("--tol", couple_tol, "indifference tolerance");

  auto* sc_sk = app.add_subcommand("skorokhod", "quantile representation convergence report");
  std::string sk_target;
  std::vector<std::string> sk_seq, sk_eps;
  sc_sk->add_option("--target", sk_target, "target distribution")->required();
  sc_sk->add_option("--seq", sk_seq, "sequence distribution files")->required();
  sc_sk->add_option("--eps", sk_eps, "epsilon grid (exact rationals)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (sc_gen->parsed()) return cmd_gen(gen_kind, gen_seed, gen_x, gen_y);
    if (sc_eq->parsed()) return cmd_eq_dist(eq_x, eq_y);
    if (sc_fosd->parsed()) return cmd_fosd(fosd_x, fosd_y);
    if (sc_certify->parsed()) return cmd_certify(cert_x, cert_y, cert_out, k_min, k_max);
    if (sc_verify->parsed()) return cmd_verify(verify_files, verify_jobs, verify_json);
    if (sc_regret->parsed())
      return cmd_regret(regret_psi, regret_v, regret_x, regret_y, regret_tol);
    if (sc_couple->parsed())
      return cmd_couple(couple_x, couple_y, couple_psi, couple_v, couple_tol);
    if (sc_sk->parsed()) return cmd_skorokhod(sk_target, sk_seq, sk_eps);
  } catch (const ParseError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
