// Command-line front end: profile parsing, solver dispatch, recognition,
// random generation, and benchmarking. Machine-readable output (JSON / CSV)
// goes to standard output; human summaries go to standard error.
//
// Exit codes: 0 success; 1 usage or input errors; 2 no applicable method
// (including exhaustive-search budget exceeded); 3 recognition negative.
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mwsolve/cc.hpp"
#include "mwsolve/core.hpp"
#include "mwsolve/generators.hpp"
#include "mwsolve/monroe_nearly.hpp"
#include "mwsolve/monroe_sc.hpp"
#include "mwsolve/oracle.hpp"
#include "mwsolve/recognition.hpp"

using nlohmann::json;
using namespace mw;

namespace {

// Raised when the requested (or automatically selected) method cannot handle
// the instance; mapped to exit code 2.
struct NoApplicableMethod : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rule parse_rule(const std::string& s) {
  if (s == "monroe") return Rule::Monroe;
  if (s == "cc") return Rule::CC;
  throw CLI::ValidationError("--rule", "must be 'monroe' or 'cc'");
}

Objective parse_objective(const std::string& s) {
  if (s == "sum") return Objective::Sum;
  if (s == "max") return Objective::Max;
  throw CLI::ValidationError("--objective", "must be 'sum' or 'max'");
}

PreferenceProfile load_profile_file(const std::string& path) {
  try {
    return load_profile(path);
  } catch (const ProfileFormatError& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// Deletion certificate side file: line 1 "voters" or "alternatives",
// line 2 space-separated ids (may be empty). '#' lines are comments.
struct SideDeletions {
  DeletionTarget target = DeletionTarget::Voters;
  std::vector<int> ids;
};

SideDeletions load_side_deletions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open certificate file: " + path);
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };
  SideDeletions sd;
  std::string head;
  if (!next_line(head))
    throw std::invalid_argument("certificate invalid: empty file " + path);
  if (head == "voters") {
    sd.target = DeletionTarget::Voters;
  } else if (head == "alternatives") {
    sd.target = DeletionTarget::Alternatives;
  } else {
    throw std::invalid_argument(
        "certificate invalid: first line must be 'voters' or 'alternatives'");
  }
  std::string ids;
  if (next_line(ids)) {
    std::istringstream ss(ids);
    int x;
    while (ss >> x) sd.ids.push_back(x);
    if (!ss.eof())
      throw std::invalid_argument("certificate invalid: malformed id list");
  }
  std::sort(sd.ids.begin(), sd.ids.end());
  return sd;
}

// Completes a side-file deletion list into a full certificate by removing the
// listed ids and recovering a structure witness on the reduced profile.
DeletionCertificate complete_certificate(const PreferenceProfile& p,
                                         const SideDeletions& sd,
                                         StructureKind want) {
  for (size_t i = 0; i < sd.ids.size(); ++i) {
    int limit = sd.target == DeletionTarget::Voters ? p.n : p.m;
    if (sd.ids[i] < 1 || sd.ids[i] > limit ||
        (i > 0 && sd.ids[i - 1] == sd.ids[i]))
      throw std::invalid_argument("certificate invalid: bad id list");
  }
  PreferenceProfile reduced =
      sd.target == DeletionTarget::Voters
          ? remove_voters(p, sd.ids, nullptr)
          : remove_alternatives(p, sd.ids, nullptr);
  std::optional<StructureOrder> w =
      want == StructureKind::SinglePeaked ? detect_sp(reduced)
                                          : detect_sc(reduced);
  if (!w)
    throw std::invalid_argument(
        "certificate invalid: reduced profile lacks the requested structure");
  DeletionCertificate cert;
  cert.kind = sd.target;
  cert.deleted = sd.ids;
  cert.witness = *w;
  return cert;
}

struct SolveOutcome {
  Solution sol;
  std::string method_used;
};

struct SolveRequest {
  PreferenceProfile p;
  Rule rule = Rule::Monroe;
  Objective objective = Objective::Sum;
  int k = 1;
  std::string method = "auto";
  int max_t = 2;
  std::optional<SideDeletions> side;  // --deletions file, already parsed
};

// Finds a voter/alternative deletion certificate for the requested structure:
// from the side file when one was supplied (throwing if its target does not
// match), otherwise by exhaustive search up to max_t.
std::optional<DeletionCertificate> certificate_for(const SolveRequest& rq,
                                                   DeletionTarget target,
                                                   StructureKind want) {
  if (rq.side) {
    if (rq.side->target != target) return std::nullopt;
    return complete_certificate(rq.p, *rq.side, want);
  }
  return find_deletion_set(rq.p, target, want, rq.max_t);
}

SolveOutcome run_named_method(const SolveRequest& rq, const std::string& name);

SolveOutcome run_auto(const SolveRequest& rq) {
  const bool approval = rq.p.kind == BallotKind::Approval;
  std::vector<std::string> chain;
  if (rq.rule == Rule::CC) {
    chain = {"sp-dp", "sc-dp", "near-sp", "near-sc", "brute"};
  } else if (approval) {
    chain = {"sc-dp", "near-sp", "near-sc", "xp-alts", "brute"};
  } else if (rq.objective == Objective::Max) {
    chain = {"near-sp", "brute"};  // near-sp covers SP via t = 0
  } else {
    chain = {"brute"};
  }
  for (const std::string& name : chain) {
    try {
      SolveOutcome out = run_named_method(rq, name);
      out.method_used = name;
      return out;
    } catch (const NoApplicableMethod&) {
      continue;
    }
  }
  throw NoApplicableMethod("no applicable method for this instance");
}

SolveOutcome run_named_method(const SolveRequest& rq, const std::string& name) {
  const PreferenceProfile& p = rq.p;
  const bool approval = p.kind == BallotKind::Approval;
  if (name == "auto") return run_auto(rq);
  if (name == "sp-dp") {
    if (rq.rule != Rule::CC)
      throw NoApplicableMethod("sp-dp implements Chamberlin-Courant only");
    auto w = detect_sp(p);
    if (!w) throw NoApplicableMethod("profile is not single-peaked");
    return {solve_cc_sp(p, w->order, rq.k, rq.objective), name};
  }
  if (name == "sc-dp") {
    auto w = detect_sc(p);
    if (!w) throw NoApplicableMethod("profile is not single-crossing");
    if (rq.rule == Rule::CC)
      return {solve_cc_sc(p, w->order, rq.k, rq.objective), name};
    if (!approval)
      throw NoApplicableMethod(
          "the single-crossing Monroe table needs approval ballots");
    return {rq.objective == Objective::Sum
                ? solve_monroe_sc_sum(p, w->order, rq.k)
                : solve_monroe_sc_max(p, w->order, rq.k),
            name};
  }
  if (name == "near-sp" || name == "near-sc") {
    StructureKind want = name == "near-sp" ? StructureKind::SinglePeaked
                                           : StructureKind::SingleCrossing;
    auto cert = certificate_for(rq, DeletionTarget::Voters, want);
    if (!cert)
      throw NoApplicableMethod("no voter deletion set of size <= " +
                               std::to_string(rq.max_t) + " found");
    if (rq.rule == Rule::CC) {
      if (rq.objective == Objective::Max)
        return {solve_cc_near_max(p, *cert, rq.k), name};
      if (want == StructureKind::SinglePeaked)
        return {approval ? solve_cc_nearsp_approval(p, *cert, rq.k)
                         : solve_cc_nearsp_linear(p, *cert, rq.k),
                name};
      return {approval ? solve_cc_nearsc_approval(p, *cert, rq.k)
                       : solve_cc_nearsc_linear(p, *cert, rq.k),
              name};
    }
    if (want == StructureKind::SinglePeaked) {
      if (!approval && rq.objective == Objective::Sum)
        throw NoApplicableMethod(
            "nearly-single-peaked Monroe on linear ballots supports max only");
      return {solve_monroe_nearsp(p, *cert, rq.k, rq.objective), name};
    }
    if (!approval)
      throw NoApplicableMethod(
          "nearly-single-crossing Monroe needs approval ballots");
    return {solve_monroe_nearsc(p, *cert, rq.k, rq.objective), name};
  }
  if (name == "xp-alts") {
    if (rq.rule != Rule::Monroe)
      throw NoApplicableMethod(
          "alternative-deletion solvers implement Monroe only");
    if (!approval)
      throw NoApplicableMethod(
          "alternative-deletion Monroe needs approval ballots");
    // Prefer the single-peaked branch (no extra cap); fall back to the
    // single-crossing branch.
    if (auto cert =
            certificate_for(rq, DeletionTarget::Alternatives,
                            StructureKind::SinglePeaked)) {
      return {solve_monroe_xp_alts(p, *cert, rq.k, rq.objective,
                                   StructureKind::SinglePeaked,
                                   std::max(rq.max_t, 3)),
              name};
    }
    if (auto cert = certificate_for(rq, DeletionTarget::Alternatives,
                                    StructureKind::SingleCrossing)) {
      if (static_cast<int>(cert->deleted.size()) <= 3)
        return {solve_monroe_xp_alts(p, *cert, rq.k, rq.objective,
                                     StructureKind::SingleCrossing,
                                     std::max(rq.max_t, 3)),
                name};
    }
    throw NoApplicableMethod("no alternative deletion set of size <= " +
                             std::to_string(rq.max_t) + " found");
  }
  if (name == "brute") {
    try {
      Solution s = rq.rule == Rule::Monroe
                       ? oracle_monroe(p, default_model(p), rq.k, rq.objective)
                       : oracle_cc(p, default_model(p), rq.k, rq.objective);
      return {std::move(s), name};
    } catch (const OracleBudgetExceeded& e) {
      throw NoApplicableMethod(e.what());
    }
  }
  throw CLI::ValidationError("--method", "unknown method '" + name + "'");
}

json solution_json(const Solution& s, const std::string& method_used,
                   long long elapsed_ms) {
  json j;
  j["rule"] = s.rule == Rule::Monroe ? "monroe" : "cc";
  j["objective"] = s.objective == Objective::Sum ? "sum" : "max";
  j["k"] = s.k;
  j["score"] = s.score;
  j["committee"] = s.committee;
  j["assignment"] =
      std::vector<int>(s.assignment.begin() + 1, s.assignment.end());
  j["solver"] = s.method;
  j["method_used"] = method_used;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

int cmd_solve(const SolveRequest& rq) {
  auto t0 = std::chrono::steady_clock::now();
  SolveOutcome out = run_named_method(rq, rq.method);
  auto t1 = std::chrono::steady_clock::now();
  long long ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  // Hard re-validation before anything is printed.
  ValidationResult vr = validate_solution(rq.p, default_model(rq.p), rq.k,
                                          rq.rule, rq.objective, out.sol);
  if (!vr.ok)
    throw std::logic_error("emitted solution failed re-validation: " +
                           vr.violation);
  std::cout << solution_json(out.sol, out.method_used, ms).dump() << "\n";
  std::cerr << "rule=" << (rq.rule == Rule::Monroe ? "monroe" : "cc")
            << " objective="
            << (rq.objective == Objective::Sum ? "sum" : "max") << " k=" << rq.k
            << " score=" << out.sol.score << " method=" << out.method_used
            << " elapsed_ms=" << ms << "\n";
  return 0;
}

int cmd_recognize(const PreferenceProfile& p, const std::string& structure,
                  const std::string& deletions, int max_t) {
  StructureKind want = structure == "sp" ? StructureKind::SinglePeaked
                                         : StructureKind::SingleCrossing;
  if (deletions.empty()) {
    auto w = want == StructureKind::SinglePeaked ? detect_sp(p) : detect_sc(p);
    if (!w) {
      std::cout << "none\n";
      return 3;
    }
    json j;
    j["structure"] = structure;
    j["order"] = w->order;
    std::cout << j.dump() << "\n";
    return 0;
  }
  DeletionTarget target = deletions == "voters" ? DeletionTarget::Voters
                                                : DeletionTarget::Alternatives;
  auto cert = find_deletion_set(p, target, want, max_t);
  if (!cert) {
    std::cout << "none\n";
    return 3;
  }
  json j;
  j["structure"] = structure;
  j["deletions"] = deletions;
  j["deleted"] = cert->deleted;
  j["witness"] = cert->witness.order;
  std::cout << j.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench: a JSON suite descriptor drives seeded instance generation; one CSV
// row per (instance, method), deterministic row order regardless of --jobs.
// ---------------------------------------------------------------------------

struct BenchTask {
  std::string model;
  int n = 0, m = 0, k = 1;
  uint64_t seed = 0;
  int noise_voters = 0, noise_alts = 0;
  Rule rule = Rule::Monroe;
  Objective objective = Objective::Sum;
  std::string method;
  bool oracle = false;
  int max_t = 2;
};

struct BenchRow {
  BenchTask task;
  int n = 0, m = 0;  // actual instance size (noise included)
  long long score = -1;
  long long elapsed_ms = 0;
  std::string agreement;  // "true"/"false" or empty when the oracle did not run
  std::string error;
};

BenchRow run_bench_task(const BenchTask& bt) {
  BenchRow row;
  row.task = bt;
  try {
    SolveRequest rq;
    rq.p = gen_profile(bt.model, bt.n, bt.m, bt.seed, bt.noise_voters,
                       bt.noise_alts);
    row.n = rq.p.n;
    row.m = rq.p.m;
    rq.rule = bt.rule;
    rq.objective = bt.objective;
    rq.k = bt.k;
    rq.max_t = bt.max_t;
    auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out = run_named_method(rq, bt.method);
    auto t1 = std::chrono::steady_clock::now();
    row.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    ValidationResult vr = validate_solution(rq.p, default_model(rq.p), rq.k,
                                            rq.rule, rq.objective, out.sol);
    if (!vr.ok)
      throw std::logic_error("solution failed re-validation: " + vr.violation);
    row.score = out.sol.score;
    if (bt.oracle) {
      Solution ref =
          bt.rule == Rule::Monroe
              ? oracle_monroe(rq.p, default_model(rq.p), bt.k, bt.objective)
              : oracle_cc(rq.p, default_model(rq.p), bt.k, bt.objective);
      row.agreement = row.score == ref.score ? "true" : "false";
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

int cmd_bench(const std::string& suite_path, int jobs) {
  std::ifstream in(suite_path);
  if (!in)
    throw std::invalid_argument("cannot open suite descriptor: " + suite_path);
  json suite;
  try {
    in >> suite;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("suite descriptor parse failure: ") +
                                e.what());
  }
  if (!suite.is_array()) suite = json::array({suite});

  std::vector<BenchTask> tasks;
  try {
    for (const json& entry : suite) {
      BenchTask base;
      base.model = entry.at("model").get<std::string>();
      base.n = entry.at("n").get<int>();
      base.m = entry.at("m").get<int>();
      base.k = entry.at("k").get<int>();
      base.noise_voters = entry.value("noise_voters", 0);
      base.noise_alts = entry.value("noise_alts", 0);
      base.rule = parse_rule(entry.value("rule", std::string("monroe")));
      base.objective =
          parse_objective(entry.value("objective", std::string("sum")));
      base.oracle = entry.value("oracle", false);
      base.max_t = entry.value("max_t", 2);
      std::vector<uint64_t> seeds;
      if (entry.at("seeds").is_array()) {
        for (const json& s : entry.at("seeds")) seeds.push_back(s.get<uint64_t>());
      } else {
        uint64_t start = entry.at("seeds").value("start", 1);
        uint64_t count = entry.at("seeds").at("count").get<uint64_t>();
        for (uint64_t i = 0; i < count; ++i) seeds.push_back(start + i);
      }
      std::vector<std::string> methods =
          entry.at("methods").get<std::vector<std::string>>();
      for (uint64_t seed : seeds) {
        for (const std::string& method : methods) {
          BenchTask bt = base;
          bt.seed = seed;
          bt.method = method;
          tasks.push_back(std::move(bt));
        }
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("suite descriptor parse failure: ") +
                                e.what());
  }

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<size_t> next{0};
  int workers = std::max(1, jobs);
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      rows[i] = run_bench_task(tasks[i]);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::cout << "seed,n,m,k,t,rule,objective,method,score,elapsed_ms,"
               "oracle_agreement\n";
  bool failed = false;
  for (const BenchRow& r : rows) {
    if (!r.error.empty()) {
      failed = true;
      std::cerr << "bench task failed (seed=" << r.task.seed
                << " method=" << r.task.method << "): " << r.error << "\n";
      continue;
    }
    std::cout << r.task.seed << "," << r.n << "," << r.m << ","
              << r.task.k << "," << (r.task.noise_voters + r.task.noise_alts)
              << "," << (r.task.rule == Rule::Monroe ? "monroe" : "cc") << ","
              << (r.task.objective == Objective::Sum ? "sum" : "max") << ","
              << r.task.method << "," << r.score << "," << r.elapsed_ms << ","
              << r.agreement << "\n";
  }
  // auto must never lose to brute when both ran on the same instance.
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].task.method != "auto" || !rows[i].error.empty()) continue;
    for (size_t j = 0; j < rows.size(); ++j) {
      if (rows[j].task.method != "brute" || !rows[j].error.empty()) continue;
      const BenchTask &a = rows[i].task, &b = rows[j].task;
      if (a.seed == b.seed && a.model == b.model && a.n == b.n && a.m == b.m &&
          a.k == b.k && a.rule == b.rule && a.objective == b.objective &&
          a.noise_voters == b.noise_voters && a.noise_alts == b.noise_alts &&
          rows[i].score > rows[j].score) {
        std::cerr << "bench invariant violated: auto scored " << rows[i].score
                  << " but brute scored " << rows[j].score
                  << " (seed=" << a.seed << ")\n";
        failed = true;
      }
    }
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multi-winner solvers for (nearly) structured preference profiles"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one winner-determination instance");
  std::string rule_s = "monroe", objective_s = "sum", method = "auto";
  int k = 0, max_t = 2;
  std::string profile_path, deletions_path;
  solve->add_option("--rule", rule_s, "Voting rule: monroe | cc")
      ->check(CLI::IsMember({"monroe", "cc"}));
  solve->add_option("--objective", objective_s, "Objective: sum | max")
      ->check(CLI::IsMember({"sum", "max"}));
  solve->add_option("--k", k, "Committee size")->required()->check(CLI::Range(1, 1 << 20));
  solve
      ->add_option("--method", method,
                   "auto | sp-dp | sc-dp | near-sp | near-sc | xp-alts | brute")
      ->check(CLI::IsMember(
          {"auto", "sp-dp", "sc-dp", "near-sp", "near-sc", "xp-alts", "brute"}));
  solve->add_option("--deletions", deletions_path,
                    "Certificate side file: line 1 'voters'|'alternatives', "
                    "line 2 space-separated ids");
  solve->add_option("--max-t", max_t, "Deletion-set search cap (default 2)")
      ->check(CLI::Range(0, 8));
  solve->add_option("profile", profile_path, "Profile file")->required();

  // recognize
  auto* recognize =
      app.add_subcommand("recognize", "Detect structure or a small deletion set");
  std::string structure_s = "sp", rec_deletions;
  int rec_max_t = 2;
  std::string rec_profile;
  recognize->add_option("--structure", structure_s, "sp | sc")
      ->required()
      ->check(CLI::IsMember({"sp", "sc"}));
  recognize
      ->add_option("--deletions", rec_deletions,
                   "Search for a deletion set: voters | alternatives")
      ->check(CLI::IsMember({"voters", "alternatives"}));
  recognize->add_option("--max-t", rec_max_t, "Deletion-set search cap")
      ->check(CLI::Range(0, 8));
  recognize->add_option("profile", rec_profile, "Profile file")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded random profile");
  std::string model = "sc-approval";
  int gn = 0, gm = 0, noise_voters = 0, noise_alts = 0;
  uint64_t seed = 1;
  gen->add_option("--model", model,
                  "sc-approval | sp-approval | sp-linear | sc-linear")
      ->check(CLI::IsMember(
          {"sc-approval", "sp-approval", "sp-linear", "sc-linear"}));
  gen->add_option("--n", gn, "Voters")->required()->check(CLI::Range(1, 1 << 20));
  gen->add_option("--m", gm, "Alternatives")->required()->check(CLI::Range(1, 1 << 20));
  gen->add_option("--seed", seed, "Seed")->required();
  gen->add_option("--noise-voters", noise_voters, "Unstructured voters appended")
      ->check(CLI::Range(0, 1 << 20));
  gen->add_option("--noise-alts", noise_alts,
                  "Unstructured alternatives injected")
      ->check(CLI::Range(0, 1 << 20));

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite, CSV to stdout");
  std::string suite_path;
  int jobs = 1;
  bench->add_option("--suite", suite_path, "JSON suite descriptor")->required();
  bench->add_option("--jobs", jobs, "Concurrent solver workers (default 1)")
      ->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed()) {
      SolveRequest rq;
      rq.p = load_profile_file(profile_path);
      rq.rule = parse_rule(rule_s);
      rq.objective = parse_objective(objective_s);
      rq.k = k;
      rq.method = method;
      rq.max_t = max_t;
      if (!deletions_path.empty()) rq.side = load_side_deletions(deletions_path);
      return cmd_solve(rq);
    }
    if (recognize->parsed()) {
      PreferenceProfile p = load_profile_file(rec_profile);
      return cmd_recognize(p, structure_s, rec_deletions, rec_max_t);
    }
    if (gen->parsed()) {
      PreferenceProfile p =
          gen_profile(model, gn, gm, seed, noise_voters, noise_alts);
      write_profile(std::cout, p);
      return 0;
    }
    if (bench->parsed()) return cmd_bench(suite_path, jobs);
  } catch (const NoApplicableMethod& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
