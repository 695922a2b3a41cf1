#include "pvote/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pvote/bounds.hpp"
#include "pvote/constructions.hpp"
#include "pvote/dual.hpp"
#include "pvote/harness.hpp"
#include "pvote/json_io.hpp"

namespace pvote {

namespace {

using nlohmann::json;

// "a:b:log[:count]" or "a:b:lin[:count]" or a comma list.
std::vector<double> parse_grid(const std::string& spec, int default_count = 25) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() >= 3 && (parts[2] == "log" || parts[2] == "lin")) {
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = parts.size() >= 4 ? std::stoi(parts[3]) : default_count;
    if (count < 2 || !(lo > 0.0 || parts[2] == "lin") || !(hi > lo)) {
      throw CLI::ValidationError("grid", "bad grid spec: " + spec);
    }
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      grid[static_cast<std::size_t>(i)] =
          parts[2] == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return grid;
  }
  std::vector<double> values;
  std::stringstream cs(spec);
  while (std::getline(cs, tok, ',')) values.push_back(std::stod(tok));
  if (values.empty()) throw CLI::ValidationError("grid", "empty grid spec");
  return values;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> values;
  std::stringstream cs(spec);
  std::string tok;
  while (std::getline(cs, tok, ',')) values.push_back(std::stoi(tok));
  if (values.empty()) throw CLI::ValidationError("list", "empty list");
  return values;
}

GFunction make_g(double theta) { return GFunction::plackett_luce(theta); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text << '\n';
}

int do_constants(double theta, const std::string& out_path) {
  DerivedConstants c;
  if (std::isinf(theta)) {
    c = deterministic_limit_constants();
  } else {
    c = compute_constants(make_g(theta));
  }
  emit(constants_to_json(c), out_path);
  return 0;
}

int do_bounds(double theta, int m, std::optional<double> n, double eps, double lambda,
              const std::string& out_path) {
  const GFunction g = make_g(theta);
  const DerivedConstants c = compute_constants(g);
  json j;
  j["theta"] = theta;
  j["m"] = m;
  j["gamma_mid"] = c.gamma_mid;
  j["gamma_out"] = c.gamma_out;
  j["plurality_limit"] = plurality_bound_limit(m, c);
  j["copeland_limit"] = copeland_bound_limit(c);
  j["weighted_uncovered_limit"] = wu_bound_limit(c, lambda);
  j["rd_upper"] = rd_upper_bound(m, c);
  if (m >= 3) {
    j["rd_lower_limit"] = rd_lower_bound_limit(m, g);
    j["rd_lower_pl"] = rd_lower_bound_pl(m, theta);
  }
  j["borda_order"] = borda_order(m, theta);
  j["generic_det_lower"] = generic_det_lower(c);
  if (n) {
    j["n"] = *n;
    j["eps"] = eps;
    j["plurality_finite"] = plurality_bound_finite(*n, m, eps, c);
    j["copeland_finite"] = copeland_bound_finite(*n, m, eps, c);
    j["rd_lower_finite"] = m >= 3 ? json(rd_lower_bound(m, *n, g)) : json();
  }
  emit(j.dump(2), out_path);
  return 0;
}

struct GenArgs {
  std::string theorem;
  int m = 3;
  long long n = 100;
  double theta = 2.0;
  double eps = 0.01;
  double zeta = 0.01;
  std::string branch = "mid";
  std::string out = "election";
};

int do_gen_instance(const GenArgs& a) {
  const Branch branch = a.branch == "out" ? Branch::out : Branch::mid;
  const auto dump = [&](const ConstructedElection& e, const std::string& prefix) {
    save_instance(e.instance, prefix + ".instance.json");
    save_model(e.model, prefix + ".model.json");
    json j;
    j["theorem"] = e.theorem;
    j["predicted_distortion"] = e.predicted_distortion;
    j["instance_file"] = prefix + ".instance.json";
    j["model_file"] = prefix + ".model.json";
    for (const auto& [key, value] : e.params) j["params"][key] = value;
    std::cout << j.dump(2) << '\n';
  };
  if (a.theorem == "plurality-lb") {
    dump(gen_plurality_lb(a.m, a.n, a.eps, a.zeta, make_g(a.theta), branch), a.out);
  } else if (a.theorem == "plurality-pl-lb") {
    dump(gen_plurality_pl_lb(a.m, a.n, a.eps, a.zeta, a.theta), a.out);
  } else if (a.theorem == "rd-lb") {
    dump(gen_rd_lb(a.m, a.n, make_g(a.theta)), a.out);
  } else if (a.theorem == "rd-pl-lb") {
    dump(gen_rd_pl_lb(a.m, a.n, a.theta), a.out);
  } else if (a.theorem == "borda-lb") {
    dump(gen_borda_lb(a.m, a.n, a.theta), a.out);
  } else if (a.theorem == "generic-lb") {
    const auto pair = gen_generic_lb_pair(make_g(a.theta), branch, a.n);
    dump(pair.first, a.out + ".benign");
    dump(pair.second, a.out + ".adverse");
  } else {
    throw CLI::ValidationError("--theorem", "unknown theorem: " + a.theorem);
  }
  return 0;
}

int do_simulate(const std::string& instance_path, const std::string& model_path,
                const std::string& rule_id, long long trials, std::uint64_t seed, int threads,
                const std::string& out_path) {
  const MetricInstance instance = load_instance(instance_path);
  const VoterModel model = load_model(model_path, instance.num_voters());
  const DistortionEstimate est =
      estimate_distortion(instance, model, rule_from_string(rule_id), trials, seed, threads);
  emit(estimate_to_json(est), out_path);
  return 0;
}

int do_oracle(const std::string& instance_path, const std::string& model_path,
              const std::string& rule_id, const std::string& out_path) {
  const MetricInstance instance = load_instance(instance_path);
  const VoterModel model = load_model(model_path, instance.num_voters());
  const double exact = brute_force_distortion(instance, model, rule_from_string(rule_id));
  json j;
  j["exact_distortion"] = exact;
  j["rule"] = rule_id;
  emit(j.dump(2), out_path);
  return 0;
}

int do_verify_dual(double theta, double alpha, int grid, double mu_scale,
                   const std::string& out_path) {
  const GFunction g = make_g(theta);
  const DerivedConstants c = compute_constants(g);
  DualWitness witness = dual_witness(alpha, c);
  witness.mu_star *= mu_scale;
  const DualCheckResult result = verify_dual_feasibility(g, alpha, grid, witness);
  json j;
  j["pass"] = result.pass;
  j["min_value"] = result.min_value;
  j["argmin_b"] = result.argmin_b;
  j["branch"] = result.branch;
  j["mu"] = witness.mu_star;
  j["lambda"] = witness.lambda_star;
  emit(j.dump(2), out_path);
  return result.pass || mu_scale != 1.0 ? 0 : 1;
}

int do_sweep(const std::string& theta_spec, const std::string& m_spec,
             const std::string& out_path) {
  const auto rows = sweep_bounds(parse_grid(theta_spec), parse_int_list(m_spec));
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << csv.str();
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"metric distortion of voting rules under probabilistic voting"};
  app.require_subcommand(1);

  double theta = 2.0;
  double alpha = 0.5;
  double eps = 0.1;
  double lambda = kGoldenRatio;
  double mu_scale = 1.0;
  int m = 3;
  int grid = 10000;
  int threads = 0;
  long long trials = 10000;
  std::optional<double> n_opt;
  std::uint64_t seed = default_seed();
  std::string out_path, instance_path, model_path, rule_id = "plurality";
  std::string theta_spec = "1.5:64:log", m_spec = "5,10,20";
  GenArgs gen;

  auto* constants_cmd = app.add_subcommand("constants", "derive gamma_mid / gamma_out");
  constants_cmd->add_option("--theta", theta, "PL parameter (inf for the deterministic limit)")
      ->required();
  constants_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form distortion bounds");
  bounds_cmd->add_option("--theta", theta)->required();
  bounds_cmd->add_option("--m", m)->required();
  bounds_cmd->add_option("--n", n_opt, "enable the finite-n bounds");
  bounds_cmd->add_option("--eps", eps);
  bounds_cmd->add_option("--lambda", lambda);
  bounds_cmd->add_option("--out", out_path);

  auto* gen_cmd = app.add_subcommand("gen-instance", "generate a lower-bound election");
  gen_cmd->add_option("--theorem", gen.theorem,
                      "plurality-lb|plurality-pl-lb|rd-lb|rd-pl-lb|borda-lb|generic-lb")
      ->required();
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--theta", gen.theta);
  gen_cmd->add_option("--eps", gen.eps);
  gen_cmd->add_option("--zeta", gen.zeta);
  gen_cmd->add_option("--branch", gen.branch, "mid|out");
  gen_cmd->add_option("--out", gen.out, "output file prefix");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo distortion estimate");
  sim_cmd->add_option("--instance", instance_path)->required();
  sim_cmd->add_option("--model", model_path)->required();
  sim_cmd->add_option("--rule", rule_id)->required();
  sim_cmd->add_option("--trials", trials);
  sim_cmd->add_option("--seed", seed);
  sim_cmd->add_option("--threads", threads);
  sim_cmd->add_option("--out", out_path);

  auto* oracle_cmd = app.add_subcommand("oracle", "exact distortion by enumeration");
  oracle_cmd->add_option("--instance", instance_path)->required();
  oracle_cmd->add_option("--model", model_path)->required();
  oracle_cmd->add_option("--rule", rule_id)->required();
  oracle_cmd->add_option("--out", out_path);

  auto* dual_cmd = app.add_subcommand("verify-dual", "dual feasibility of (mu*, lambda*)");
  dual_cmd->add_option("--theta", theta)->required();
  dual_cmd->add_option("--alpha", alpha)->required();
  dual_cmd->add_option("--grid", grid);
  dual_cmd->add_option("--mu-scale", mu_scale, "inflate mu* to probe tightness");
  dual_cmd->add_option("--out", out_path);

  auto* sweep_cmd = app.add_subcommand("sweep", "bound table over a theta x m grid");
  sweep_cmd->add_option("--theta", theta_spec, "grid: a:b:log[:count] or comma list");
  sweep_cmd->add_option("--m", m_spec, "comma list");
  sweep_cmd->add_option("--out", out_path, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (constants_cmd->parsed()) return do_constants(theta, out_path);
    if (bounds_cmd->parsed()) return do_bounds(theta, m, n_opt, eps, lambda, out_path);
    if (gen_cmd->parsed()) return do_gen_instance(gen);
    if (sim_cmd->parsed()) {
      return do_simulate(instance_path, model_path, rule_id, trials, seed, threads, out_path);
    }
    if (oracle_cmd->parsed()) return do_oracle(instance_path, model_path, rule_id, out_path);
    if (dual_cmd->parsed()) return do_verify_dual(theta, alpha, grid, mu_scale, out_path);
    if (sweep_cmd->parsed()) return do_sweep(theta_spec, m_spec, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace pvote
