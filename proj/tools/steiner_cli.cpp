// Command-line front end: solve / gamma-star / certify / check-lemmas /
// generate over SteinLib STP files. Reports are ordered key-value pairs,
// printable as text or TSV; exit codes are 0 ok/stable, 1 unstable or
// violations found, 2 unusable input, 3 budget or search exhausted,
// 4 oracle contract broken.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steiner/error.hpp"
#include "steiner/exact.hpp"
#include "steiner/generate.hpp"
#include "steiner/lemmas.hpp"
#include "steiner/solvers.hpp"
#include "steiner/stability.hpp"
#include "steiner/stp.hpp"
#include "steiner/tree.hpp"

namespace {

using namespace steiner;
using Clock = std::chrono::steady_clock;

struct Report {
  std::vector<std::pair<std::string, std::string>> rows;
  void put(const std::string& key, const std::string& value) { rows.emplace_back(key, value); }
  void put(const std::string& key, const char* value) { rows.emplace_back(key, value); }
  void put(const std::string& key, double v) { put(key, fmt(v)); }
  void put(const std::string& key, std::uint64_t v) { put(key, std::to_string(v)); }
  void put(const std::string& key, bool v) { put(key, std::string(v ? "true" : "false")); }
  static std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }
  void print(bool tsv) const {
    for (const auto& [k, v] : rows)
      std::printf(tsv ? "%s\t%s\n" : "%s: %s\n", k.c_str(), v.c_str());
  }
};

std::string edges_str(const SteinerTree& t) {
  std::string out;
  for (const Edge& e : t.edges) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1);
  }
  return out.empty() ? "-" : out;
}

EnumerationBudget make_budget(int steiner_cap, std::uint64_t tree_cap) {
  EnumerationBudget b;
  b.max_steiner_subset_size = steiner_cap;
  b.max_trees = tree_cap;
  if (const char* secs = std::getenv("STEINER_BUDGET_SECS")) {
    char* end = nullptr;
    double s = std::strtod(secs, &end);
    if (end != secs && s > 0)
      b.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(s));
  }
  return b;
}

ParsedStp load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SyntaxError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stp(buf.str());
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::BudgetExceeded:
    case Errc::SearchExhausted:
      return 3;
    case Errc::OracleContractViolated:
    case Errc::InconsistentTrace:
      return 4;
    default:
      return 2;
  }
}

void put_instance_header(Report& rep, const std::string& cmd, const std::string& path,
                         const Instance& inst) {
  rep.put("command", cmd);
  rep.put("file", path);
  rep.put("digest", digest_hex(stp_digest(inst)));
  rep.put("n", static_cast<std::uint64_t>(inst.size()));
  rep.put("terminals", static_cast<std::uint64_t>(inst.terminal_count()));
  rep.put("metric", inst.metric());
  rep.put("euclidean", inst.euclidean());
}

InnerOracle oracle_by_name(const std::string& name, std::uint64_t seed) {
  if (name == "exact") return exact_oracle();
  if (name == "mst") return mst_oracle();
  if (name == "fuzzed-exact") return fuzzed_exact_oracle(seed);
  throw Error(Errc::InvalidArgument, "unknown oracle " + name);
}

struct CommonFlags {
  std::string format = "human";
  int budget_steiner = -1;
  std::uint64_t budget_trees = 0;
  bool tsv() const { return format == "tsv"; }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"human", "tsv"}));
  cmd->add_option("--budget-steiner", flags.budget_steiner,
                  "Cap on non-terminals per candidate tree (-1 = all)");
  cmd->add_option("--budget-trees", flags.budget_trees, "Cap on trees visited (0 = unlimited)");
}

int run_solve(const std::string& path, const std::string& algorithm,
              std::optional<double> gamma, const std::string& oracle_name, std::uint64_t seed,
              const CommonFlags& flags) {
  ParsedStp parsed = load(path);
  const Instance& inst = parsed.instance;
  EnumerationBudget budget = make_budget(flags.budget_steiner, flags.budget_trees);

  Report rep;
  put_instance_header(rep, "solve", path, inst);
  rep.put("algorithm", algorithm);

  auto t0 = Clock::now();
  SteinerTree tree;
  bool exhaustive = true;
  if (algorithm == "exact") {
    OptResult r = brute_force_opt(inst, budget);
    tree = r.tree;
    rep.put("unique", r.unique);
    rep.put("trees_considered", r.trees_considered);
  } else if (algorithm == "dw") {
    tree = dreyfus_wagner(inst).tree;
  } else if (algorithm == "mst") {
    tree = mst_terminals(inst);
  } else if (algorithm == "fan-greedy") {
    if (!gamma) throw Error(Errc::InvalidArgument, "fan-greedy needs --gamma");
    rep.put("gamma", *gamma);
    tree = fan_greedy(inst, *gamma);
  } else if (algorithm == "contract") {
    if (!gamma) throw Error(Errc::InvalidArgument, "contract needs --gamma");
    rep.put("gamma", *gamma);
    rep.put("oracle", oracle_name);
    bool verify = inst.size() <= 10;
    ContractResult r =
        contract_solve(inst, *gamma, oracle_by_name(oracle_name, seed), 4, verify);
    rep.put("contractions", static_cast<std::uint64_t>(r.trace.steps.size()));
    tree = r.tree;
  } else {
    throw Error(Errc::InvalidArgument, "unknown algorithm " + algorithm);
  }
  double wall = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  rep.put("weight", tree_weight(inst, tree));
  rep.put("edges", edges_str(tree));

  // Stability solvers get a cross-check when the exact answer is affordable.
  if ((algorithm == "mst" || algorithm == "fan-greedy" || algorithm == "contract") &&
      inst.size() <= 10) {
    OptResult exact = brute_force_opt(inst, budget);
    rep.put("exact_weight", exact.weight);
    rep.put("matches_exact", tree_weight(inst, tree) == exact.weight);
  }
  rep.put("exhaustive", exhaustive);
  rep.put("wall_ms", Report::fmt(wall));
  rep.print(flags.tsv());
  return 0;
}

int run_gamma_star(const std::string& path, const CommonFlags& flags) {
  ParsedStp parsed = load(path);
  const Instance& inst = parsed.instance;
  EnumerationBudget budget = make_budget(flags.budget_steiner, flags.budget_trees);

  auto t0 = Clock::now();
  StabilityReport sr = gamma_star(inst, budget);
  double wall = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  Report rep;
  put_instance_header(rep, "gamma-star", path, inst);
  rep.put("gamma_star", sr.gamma_star);
  rep.put("opt_unique", sr.opt_unique);
  rep.put("opt_weight", sr.opt_weight);
  rep.put("opt_edges", edges_str(sr.opt));
  rep.put("witness_edges", edges_str(sr.witness));
  rep.put("trees_considered", sr.trees_considered);
  rep.put("exhaustive", sr.exhaustive);
  rep.put("wall_ms", Report::fmt(wall));
  rep.print(flags.tsv());
  return sr.exhaustive ? 0 : 3;
}

int run_certify(const std::string& path, double gamma, const CommonFlags& flags) {
  ParsedStp parsed = load(path);
  const Instance& inst = parsed.instance;
  EnumerationBudget budget = make_budget(flags.budget_steiner, flags.budget_trees);

  auto t0 = Clock::now();
  CertifyResult cr = certify(inst, gamma, budget);
  double wall = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  Report rep;
  put_instance_header(rep, "certify", path, inst);
  rep.put("gamma", gamma);
  rep.put("stable", cr.stable);
  rep.put("gamma_star", cr.report.gamma_star);
  rep.put("opt_unique", cr.report.opt_unique);
  rep.put("opt_edges", edges_str(cr.report.opt));
  if (!cr.stable) rep.put("witness_edges", edges_str(cr.report.witness));
  rep.put("wall_ms", Report::fmt(wall));
  rep.print(flags.tsv());
  return cr.stable ? 0 : 1;
}

int run_check_lemmas(const std::string& path, double gamma, const std::string& filter,
                     const CommonFlags& flags) {
  ParsedStp parsed = load(path);
  const Instance& inst = parsed.instance;
  EnumerationBudget budget = make_budget(flags.budget_steiner, flags.budget_trees);

  auto t0 = Clock::now();
  OptResult opt = brute_force_opt(inst, budget);
  std::vector<LemmaReport> reports = run_all_checkers(inst, opt.tree, gamma, {});
  double wall = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  Report rep;
  put_instance_header(rep, "check-lemmas", path, inst);
  rep.put("gamma", gamma);

  std::uint64_t total = 0;
  bool matched_any = false;
  for (const LemmaReport& lr : reports) {
    std::string name = lemma_name(lr.lemma);
    if (!filter.empty() && name != filter) continue;
    matched_any = true;
    std::string status = !lr.applicable ? "inapplicable ("+ lr.gate + ")"
                                        : std::to_string(lr.violations.size()) + " violations / " +
                                              std::to_string(lr.tuples_checked) + " tuples";
    rep.put(name, status);
    total += lr.violations.size();
    std::istringstream serialized(serialize(lr));
    for (std::string line; std::getline(serialized, line);)
      if (!line.empty()) rep.put("violation", line);
  }
  if (!filter.empty() && !matched_any)
    throw Error(Errc::InvalidArgument, "no lemma named " + filter);
  rep.put("total_violations", total);
  rep.put("wall_ms", Report::fmt(wall));
  rep.print(flags.tsv());
  return total == 0 ? 0 : 1;
}

int run_generate(GenSpec spec, bool planted, const std::string& out_dir,
                 const CommonFlags& flags) {
  Report rep;
  rep.put("command", "generate");

  auto t0 = Clock::now();
  std::optional<StabilityReport> cert;
  std::optional<Instance> inst;
  if (planted) {
    inst = planted_no_steiner(spec);
  } else if (spec.target_gamma) {
    auto [found, sr] = stable_instance_search(spec);
    inst = std::move(found);
    cert = std::move(sr);
  } else {
    inst = spec.model == GenModel::kEuclidean ? random_euclidean(spec) : random_metric(spec);
  }
  double wall = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  std::filesystem::path file = std::filesystem::path(out_dir) / corpus_path(spec);
  std::filesystem::create_directories(file.parent_path());
  std::string text = write_stp(*inst, gen_provenance(spec));
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::SyntaxError, "cannot write " + file.string());
  out << text;
  out.close();

  rep.put("file", file.string());
  rep.put("digest", digest_hex(stp_digest(*inst)));
  rep.put("n", static_cast<std::uint64_t>(inst->size()));
  rep.put("terminals", static_cast<std::uint64_t>(inst->terminal_count()));
  if (cert) {
    rep.put("gamma_star", cert->gamma_star);
    rep.put("opt_weight", cert->opt_weight);
    rep.put("opt_unique", cert->opt_unique);
  }
  rep.put("wall_ms", Report::fmt(wall));
  rep.print(flags.tsv());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner tree stability toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;

  // solve
  std::string solve_path, algorithm = "exact", oracle_name = "exact";
  std::optional<double> solve_gamma;
  std::uint64_t seed = 0;
  CLI::App* solve = app.add_subcommand("solve", "Solve an STP instance");
  solve->add_option("path", solve_path, "STP file")->required();
  solve->add_option("--algorithm", algorithm, "Solver")
      ->check(CLI::IsMember({"exact", "dw", "mst", "fan-greedy", "contract"}));
  solve->add_option("--gamma", solve_gamma, "Stability parameter for fan-greedy/contract");
  solve->add_option("--oracle", oracle_name, "Inner oracle for contract")
      ->check(CLI::IsMember({"exact", "mst", "fuzzed-exact"}));
  solve->add_option("--seed", seed, "Seed for the fuzzed-exact oracle");
  add_common(solve, flags);

  // gamma-star
  std::string gs_path;
  CLI::App* gs = app.add_subcommand("gamma-star", "Compute the stability margin");
  gs->add_option("path", gs_path, "STP file")->required();
  add_common(gs, flags);

  // certify
  std::string cert_path;
  double cert_gamma = 1.0;
  CLI::App* cert = app.add_subcommand("certify", "Decide gamma-stability");
  cert->add_option("path", cert_path, "STP file")->required();
  cert->add_option("--gamma", cert_gamma, "Stability level to certify")->required();
  add_common(cert, flags);

  // check-lemmas
  std::string lem_path, lemma_filter;
  double lem_gamma = 1.0;
  CLI::App* lem = app.add_subcommand("check-lemmas", "Run structural checkers against exact OPT");
  lem->add_option("path", lem_path, "STP file")->required();
  lem->add_option("--gamma", lem_gamma, "Stability level assumed")->required();
  lem->add_option("--lemma", lemma_filter, "Only this checker");
  add_common(lem, flags);

  // generate
  GenSpec spec;
  std::string model_name = "euclidean", out_dir = ".";
  bool planted = false;
  std::optional<double> target;
  CLI::App* gen = app.add_subcommand("generate", "Emit a seeded STP instance");
  gen->add_option("--model", model_name, "Base model")
      ->check(CLI::IsMember({"euclidean", "random-metric"}));
  gen->add_option("--n", spec.n, "Vertex count");
  gen->add_option("--t", spec.t, "Terminal count");
  gen->add_option("--dim", spec.dim, "Euclidean dimension");
  gen->add_option("--seed", spec.seed, "Generator seed");
  gen->add_option("--scale", spec.scale, "Coordinate/weight scale");
  gen->add_option("--gamma", target, "Target stability margin (rejection sampling)");
  gen->add_option("--tries", spec.max_tries, "Rejection budget");
  gen->add_flag("--planted", planted, "Plant a no-Steiner layout instead of sampling");
  gen->add_option("--out", out_dir, "Output directory root");
  add_common(gen, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_solve(solve_path, algorithm, solve_gamma, oracle_name, seed, flags);
    if (gs->parsed()) return run_gamma_star(gs_path, flags);
    if (cert->parsed()) return run_certify(cert_path, cert_gamma, flags);
    if (lem->parsed()) return run_check_lemmas(lem_path, lem_gamma, lemma_filter, flags);
    if (gen->parsed()) {
      spec.model = model_name == "euclidean" ? GenModel::kEuclidean : GenModel::kRandomMetric;
      spec.target_gamma = target;
      return run_generate(spec, planted, out_dir, flags);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
