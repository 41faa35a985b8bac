// End-to-end tests of the command-line tool: each case runs the real binary
// (path injected via MWSOLVE_CLI_PATH) as a subprocess and checks stdout and
// the exit code.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mwsolve/core.hpp"
#include "mwsolve/oracle.hpp"
#include "mwsolve/recognition.hpp"

using nlohmann::json;
using namespace mw;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout only; stderr is routed to /dev/null
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(MWSOLVE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/mwsolve_cli_" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = temp_path(name);
  std::ofstream(path) << content;
  return path;
}

json first_json_line(const std::string& out) {
  std::istringstream ss(out);
  std::string line;
  REQUIRE(std::getline(ss, line));
  return json::parse(line);
}

}  // namespace

TEST_CASE("solve emits a validated solution object") {
  std::string p = write_temp("sc1.txt",
                             "approval\n"
                             "6 4\n"
                             "1 2\n"
                             "1 2\n"
                             "2 3\n"
                             "3\n"
                             "3 4\n"
                             "4\n");
  RunResult r =
      run_cli("solve --rule monroe --objective sum --k 2 --method sc-dp " + p);
  CHECK(r.exit_code == 0);
  json j = first_json_line(r.out);
  CHECK(j["rule"] == "monroe");
  CHECK(j["objective"] == "sum");
  CHECK(j["k"] == 2);
  CHECK(j["method_used"] == "sc-dp");
  CHECK(j["committee"].size() == 2);
  CHECK(j["assignment"].size() == 6);
  // Cross-check the reported score against the exhaustive reference.
  PreferenceProfile prof = load_profile(p);
  Solution ref = oracle_monroe(prof, default_model(prof), 2, Objective::Sum);
  CHECK(j["score"].get<long long>() == ref.score);
  // The reported assignment must itself re-validate to the reported score.
  Solution s;
  s.rule = Rule::Monroe;
  s.objective = Objective::Sum;
  s.k = 2;
  s.score = j["score"].get<long long>();
  s.committee = j["committee"].get<std::vector<int>>();
  s.assignment = {0};
  for (const json& a : j["assignment"]) s.assignment.push_back(a.get<int>());
  s.method = "cli";
  ValidationResult vr = validate_solution(prof, default_model(prof), 2,
                                          Rule::Monroe, Objective::Sum, s);
  CHECK(vr.ok);
}

TEST_CASE("auto picks the structured method and agrees with brute") {
  std::string p = write_temp("sp1.txt",
                             "linear\n"
                             "4 4\n"
                             "1 2 3 4\n"
                             "2 1 3 4\n"
                             "3 2 4 1\n"
                             "4 3 2 1\n");
  RunResult a = run_cli("solve --rule cc --objective sum --k 2 --method auto " + p);
  RunResult b = run_cli("solve --rule cc --objective sum --k 2 --method brute " + p);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  json ja = first_json_line(a.out), jb = first_json_line(b.out);
  CHECK(ja["method_used"] == "sp-dp");
  CHECK(jb["method_used"] == "brute");
  CHECK(ja["score"] == jb["score"]);
}

TEST_CASE("auto falls back to voter deletion on a nearly structured profile") {
  // Three pairwise ballots form the smallest profile that is neither
  // single-peaked nor single-crossing; deleting any one voter fixes both.
  std::string p = write_temp("near1.txt",
                             "approval\n"
                             "3 3\n"
                             "1 3\n"
                             "1 2\n"
                             "2 3\n");
  RunResult r = run_cli("solve --rule monroe --k 2 --method auto " + p);
  CHECK(r.exit_code == 0);
  json j = first_json_line(r.out);
  CHECK(j["method_used"] == "near-sp");
  PreferenceProfile prof = load_profile(p);
  Solution ref = oracle_monroe(prof, default_model(prof), 2, Objective::Sum);
  CHECK(j["score"].get<long long>() == ref.score);
}

TEST_CASE("usage and input errors exit with code 1") {
  std::string p = write_temp("sc2.txt", "approval\n1 1\n1\n");
  CHECK(run_cli("solve --rule monroe --k 0 --method auto " + p).exit_code == 1);
  CHECK(run_cli("solve --rule bogus --k 1 " + p).exit_code == 1);
  CHECK(run_cli("solve --k 1 /nonexistent/profile.txt").exit_code == 1);
  CHECK(run_cli("solve --k 5 --method brute " + p).exit_code == 1);  // k > m
  std::string bad = write_temp("bad1.txt", "approval\n2 3\n1 9\n2\n");
  CHECK(run_cli("solve --k 1 " + bad).exit_code == 1);
}

TEST_CASE("inapplicable methods exit with code 2") {
  std::string p = write_temp("sc3.txt",
                             "approval\n"
                             "2 2\n"
                             "1\n"
                             "2\n");
  CHECK(run_cli("solve --rule monroe --k 1 --method sp-dp " + p).exit_code == 2);
  // No deletion set of size <= 0 exists for an unstructured profile.
  std::string ns = write_temp("ns1.txt",
                              "approval\n"
                              "3 3\n"
                              "1 3\n"
                              "1 2\n"
                              "2 3\n");
  CHECK(run_cli("solve --rule monroe --k 1 --method near-sp --max-t 0 " + ns)
            .exit_code == 2);
}

TEST_CASE("recognize prints a witness order or none") {
  std::string p = write_temp("rec1.txt",
                             "approval\n"
                             "3 3\n"
                             "1\n"
                             "1 2\n"
                             "2 3\n");
  RunResult pos = run_cli("recognize --structure sp " + p);
  CHECK(pos.exit_code == 0);
  json j = first_json_line(pos.out);
  CHECK(j["structure"] == "sp");
  PreferenceProfile prof = load_profile(p);
  CHECK(check_sp(prof, j["order"].get<std::vector<int>>()));

  std::string ns = write_temp("rec2.txt",
                              "approval\n"
                              "3 3\n"
                              "1 3\n"
                              "1 2\n"
                              "2 3\n");
  RunResult neg = run_cli("recognize --structure sp " + ns);
  CHECK(neg.exit_code == 3);
  CHECK(neg.out == "none\n");

  RunResult cert = run_cli("recognize --structure sp --deletions voters --max-t 1 " + ns);
  CHECK(cert.exit_code == 0);
  json jc = first_json_line(cert.out);
  CHECK(jc["deleted"].size() == 1);
  // The witness must certify the reduced profile.
  PreferenceProfile nsp = load_profile(ns);
  PreferenceProfile reduced =
      remove_voters(nsp, jc["deleted"].get<std::vector<int>>());
  CHECK(check_sp(reduced, jc["witness"].get<std::vector<int>>()));

  RunResult none =
      run_cli("recognize --structure sp --deletions alternatives --max-t 0 " + ns);
  CHECK(none.exit_code == 3);
}

TEST_CASE("gen is deterministic per seed and produces valid structure") {
  RunResult a = run_cli("gen --model sc-approval --n 8 --m 5 --seed 13");
  RunResult b = run_cli("gen --model sc-approval --n 8 --m 5 --seed 13");
  RunResult c = run_cli("gen --model sc-approval --n 8 --m 5 --seed 14");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  std::string path = write_temp("gen1.txt", a.out);
  PreferenceProfile p = load_profile(path);
  CHECK(p.n == 8);
  CHECK(p.m == 5);
  CHECK(p.kind == BallotKind::Approval);
  CHECK(detect_sc(p).has_value());
}

TEST_CASE("gen noise knobs grow the instance") {
  RunResult r = run_cli("gen --model sp-linear --n 4 --m 3 --seed 5 --noise-voters 2");
  CHECK(r.exit_code == 0);
  std::string path = write_temp("gen2.txt", r.out);
  PreferenceProfile p = load_profile(path);
  CHECK(p.n == 6);
  CHECK(p.kind == BallotKind::Linear);
}

TEST_CASE("deletion certificate side files are honored and validated") {
  std::string prof = write_temp("side1.txt",
                                "approval\n"
                                "3 3\n"
                                "1 3\n"
                                "1 2\n"
                                "2 3\n");
  std::string cert = write_temp("side1.cert", "voters\n1\n");
  RunResult r = run_cli("solve --rule monroe --k 2 --method near-sp --deletions " +
                        cert + " " + prof);
  CHECK(r.exit_code == 0);
  json j = first_json_line(r.out);
  PreferenceProfile p = load_profile(prof);
  Solution ref = oracle_monroe(p, default_model(p), 2, Objective::Sum);
  CHECK(j["score"].get<long long>() == ref.score);

  std::string bad = write_temp("side2.cert", "voters\n9\n");
  CHECK(run_cli("solve --rule monroe --k 2 --method near-sp --deletions " + bad +
                " " + prof)
            .exit_code == 1);
  std::string junk = write_temp("side3.cert", "gerbils\n1\n");
  CHECK(run_cli("solve --rule monroe --k 2 --method near-sp --deletions " + junk +
                " " + prof)
            .exit_code == 1);
  // A deletion set that leaves the profile unstructured is rejected.
  std::string empty = write_temp("side4.cert", "voters\n\n");
  CHECK(run_cli("solve --rule monroe --k 2 --method near-sp --deletions " +
                empty + " " + prof)
            .exit_code == 1);
}

TEST_CASE("bench emits the fixed CSV schema in deterministic order") {
  std::string suite = write_temp("suite1.json",
                                 R"([{"model": "sc-approval", "n": 6, "m": 4,
                                      "k": 2, "seeds": {"start": 1, "count": 4},
                                      "rule": "monroe", "objective": "sum",
                                      "methods": ["auto", "brute"],
                                      "oracle": true}])");
  RunResult one = run_cli("bench --suite " + suite);
  CHECK(one.exit_code == 0);
  std::istringstream ss(one.out);
  std::string header;
  REQUIRE(std::getline(ss, header));
  CHECK(header ==
        "seed,n,m,k,t,rule,objective,method,score,elapsed_ms,oracle_agreement");
  std::vector<std::string> rows;
  for (std::string line; std::getline(ss, line);) rows.push_back(line);
  CHECK(rows.size() == 8);  // 4 seeds x 2 methods
  for (const std::string& row : rows) {
    CAPTURE(row);
    CHECK(row.substr(row.rfind(',') + 1) == "true");
  }
  // Concurrent execution must not change the output.
  RunResult four = run_cli("bench --suite " + suite + " --jobs 4");
  CHECK(four.exit_code == 0);
  CHECK(four.out == one.out);
}

TEST_CASE("bench rejects malformed suite descriptors") {
  std::string bad = write_temp("suite2.json", "{\"model\": ");
  CHECK(run_cli("bench --suite " + bad).exit_code == 1);
  std::string missing = write_temp("suite3.json", R"({"model": "sc-approval"})");
  CHECK(run_cli("bench --suite " + missing).exit_code == 1);
  CHECK(run_cli("bench --suite /nonexistent/suite.json").exit_code == 1);
}
