#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "mwsolve/core.hpp"
#include "mwsolve/generators.hpp"
#include "mwsolve/oracle.hpp"

using namespace mw;

namespace {
PreferenceProfile parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_profile(in);
}

std::vector<int> approvers(const PreferenceProfile& p, int a) {
  std::vector<int> out;
  for (int v = 1; v <= p.n; ++v)
    if (p.approves(v, a)) out.push_back(v);
  return out;
}
}  // namespace

TEST_CASE("parse approval profile") {
  auto p = parse_str("approval\n3 4\n1 2\n2 3\n3 4\n");
  CHECK(p.kind == BallotKind::Approval);
  CHECK(p.n == 3);
  CHECK(p.m == 4);
  CHECK(approvers(p, 2) == std::vector<int>{1, 2});
}

TEST_CASE("parse linear profile") {
  auto p = parse_str("linear\n2 3\n1 2 3\n3 2 1\n");
  CHECK(p.kind == BallotKind::Linear);
  CHECK(p.rank(1, 3) == 2);
  CHECK(p.rank(2, 3) == 0);
}

TEST_CASE("parse reports the offending line") {
  try {
    parse_str("approval\n2 3\n1 5\n2\n");
    FAIL("expected ProfileFormatError");
  } catch (const ProfileFormatError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("alternative id 5 > m=3") !=
          std::string::npos);
  }
  try {
    parse_str("linear\n1 3\n1 1 2\n");
    FAIL("expected ProfileFormatError");
  } catch (const ProfileFormatError& e) {
    CHECK(e.line == 3);
  }
  // Comment lines do not consume ballot slots but do count physically.
  auto p = parse_str("# header comment\napproval\n1 2\n# ballot comment\n1\n");
  CHECK(p.n == 1);
  CHECK(p.approves(1, 1));
  try {
    parse_str("# c\napproval\n1 2\n7\n");
    FAIL("expected ProfileFormatError");
  } catch (const ProfileFormatError& e) {
    CHECK(e.line == 4);
  }
}

TEST_CASE("misrepresentation values") {
  auto ap = make_approval_profile(1, 3, {{2, 3}});
  CHECK(misrep(ap, MisrepresentationModel::ApprovalBinary, 1, 2) == 0);
  CHECK(misrep(ap, MisrepresentationModel::ApprovalBinary, 1, 1) == 1);
  auto lp = make_linear_profile(1, 4, {{3, 1, 2, 4}});
  CHECK(misrep(lp, MisrepresentationModel::Borda, 1, 2) == 2);
  CHECK(misrep(lp, MisrepresentationModel::Borda, 1, 3) == 0);
  CHECK(misrep(lp, MisrepresentationModel::Borda, 1, 4) == 3);
  // Borda values of one voter are exactly {0..m-1}.
  std::vector<int> vals;
  for (int a = 1; a <= 4; ++a)
    vals.push_back(misrep(lp, MisrepresentationModel::Borda, 1, a));
  std::sort(vals.begin(), vals.end());
  CHECK(vals == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("validate_solution checks Monroe loads") {
  // n=4, k=2, loads (2,2), everyone assigned an approved member.
  auto p4 = make_approval_profile(4, 2, {{1}, {1}, {2}, {2}});
  Solution s;
  s.rule = Rule::Monroe;
  s.objective = Objective::Sum;
  s.k = 2;
  s.committee = {1, 2};
  s.assignment = {0, 1, 1, 2, 2};
  s.score = 0;
  auto r = validate_solution(p4, MisrepresentationModel::ApprovalBinary, 2,
                             Rule::Monroe, Objective::Sum, s);
  CHECK(r.ok);
  CHECK(r.score == 0);

  // n=5, k=2: loads (4,1) violate the upper bound ceil(5/2)=3.
  auto p5 = make_approval_profile(5, 2, {{1}, {1}, {1}, {1}, {2}});
  Solution bad;
  bad.rule = Rule::Monroe;
  bad.k = 2;
  bad.committee = {1, 2};
  bad.assignment = {0, 1, 1, 1, 1, 2};
  bad.score = 0;
  auto rb = validate_solution(p5, MisrepresentationModel::ApprovalBinary, 2,
                              Rule::Monroe, Objective::Sum, bad);
  CHECK_FALSE(rb.ok);
  CHECK(rb.violation.find("load 4") != std::string::npos);
  CHECK(rb.violation.find("3]") != std::string::npos);

  // Loads (3,2) are fine: exactly one member at ceil.
  Solution good = bad;
  good.assignment = {0, 1, 1, 1, 2, 2};
  good.score = 1;  // voter 4 approves only 1 but is assigned 2
  auto rg = validate_solution(p5, MisrepresentationModel::ApprovalBinary, 2,
                              Rule::Monroe, Objective::Sum, good);
  CHECK(rg.ok);
  CHECK(rg.score == 1);

  // Loads (2,2,1) for n=5,k=3: two members must be at ceil=2, so (2,2,1) has
  // exactly n mod k = 2 at ceil -> valid shape.
  auto p53 = make_approval_profile(5, 3, {{1}, {1}, {2}, {2}, {3}});
  Solution s3;
  s3.rule = Rule::Monroe;
  s3.k = 3;
  s3.committee = {1, 2, 3};
  s3.assignment = {0, 1, 1, 2, 2, 3};
  s3.score = 0;
  CHECK(validate_solution(p53, MisrepresentationModel::ApprovalBinary, 3,
                          Rule::Monroe, Objective::Sum, s3)
            .ok);

  // CC has no load constraints: the same (4,1) split is valid under CC.
  Solution cc = bad;
  cc.rule = Rule::CC;
  cc.score = 0;
  CHECK(validate_solution(p5, MisrepresentationModel::ApprovalBinary, 2,
                          Rule::CC, Objective::Sum, cc)
            .ok);

  // Score mismatch is caught.
  Solution wrong = s3;
  wrong.score = 1;
  auto rw = validate_solution(p53, MisrepresentationModel::ApprovalBinary, 3,
                              Rule::Monroe, Objective::Sum, wrong);
  CHECK_FALSE(rw.ok);
  CHECK(rw.violation.find("score") != std::string::npos);
}

TEST_CASE("threshold reduction") {
  auto lp = make_linear_profile(1, 3, {{3, 1, 2}});
  auto b0 = reduce_max_to_approval(lp, 0);
  CHECK(b0.ballots[1] == std::vector<int>{3});
  auto b1 = reduce_max_to_approval(lp, 1);
  CHECK(b1.ballots[1] == std::vector<int>{1, 3});
  auto b2 = reduce_max_to_approval(lp, 2);
  CHECK(b2.ballots[1] == std::vector<int>{1, 2, 3});

  // Monotone in beta: approval sets grow by inclusion.
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = gen_profile("sc-linear", 4, 5, seed);
    for (int beta = 0; beta + 1 < p.m; ++beta) {
      auto lo = reduce_max_to_approval(p, beta);
      auto hi = reduce_max_to_approval(p, beta + 1);
      for (int v = 1; v <= p.n; ++v)
        for (int a : lo.ballots[v]) CHECK(hi.approves(v, a));
    }
  }
}

TEST_CASE("max solved via reduction matches brute force") {
  // Random small linear profiles; both rules. The reduction driver feeds an
  // approval Sum solver; results must equal the direct Max brute force.
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    auto models = {std::string("sp-linear"), std::string("sc-linear")};
    for (const auto& model : models) {
      auto p = gen_profile(model, 5, 4, seed);
      for (int k : {1, 2}) {
        for (Rule rule : {Rule::CC, Rule::Monroe}) {
          auto solve_sum = [&](const PreferenceProfile& ap, int kk) {
            return rule == Rule::CC
                       ? oracle_cc(ap, MisrepresentationModel::ApprovalBinary,
                                   kk, Objective::Sum)
                       : oracle_monroe(ap,
                                       MisrepresentationModel::ApprovalBinary,
                                       kk, Objective::Sum);
          };
          ReductionStats stats;
          Solution via = solve_max_via_reduction(p, k, solve_sum, &stats);
          Solution direct =
              rule == Rule::CC
                  ? oracle_cc(p, MisrepresentationModel::Borda, k,
                              Objective::Max)
                  : oracle_monroe(p, MisrepresentationModel::Borda, k,
                                  Objective::Max);
          CHECK(via.score == direct.score);
          CHECK(stats.solver_calls <= 3);  // ceil(log2(4)) + 1
          via.rule = rule;
          auto val = validate_solution(p, MisrepresentationModel::Borda, k,
                                       rule, Objective::Max, via);
          CHECK(val.ok);
          CHECK(val.score == via.score);
        }
      }
    }
  }
}

TEST_CASE("profile round-trips through the text format") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    for (const char* model :
         {"sp-approval", "sc-approval", "sp-linear", "sc-linear"}) {
      auto p = gen_profile(model, 6, 5, seed);
      auto q = parse_str(profile_to_string(p));
      CHECK(q.kind == p.kind);
      CHECK(q.n == p.n);
      CHECK(q.m == p.m);
      CHECK(q.ballots == p.ballots);
    }
  }
}
