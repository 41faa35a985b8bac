#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mwsolve/core.hpp"
#include "mwsolve/generators.hpp"
#include "mwsolve/monroe_sc.hpp"
#include "mwsolve/oracle.hpp"
#include "mwsolve/recognition.hpp"
#include "mwsolve/structure.hpp"

using namespace mw;

namespace {

// Alternative a approved exactly by voter positions [spans[a-1].first,
// spans[a-1].second]; an inverted span means an empty approval set.
PreferenceProfile interval_profile(int n,
                                   std::vector<std::pair<int, int>> spans) {
  std::vector<std::vector<int>> sets(n);
  for (int a = 1; a <= (int)spans.size(); ++a)
    for (int v = spans[a - 1].first; v <= spans[a - 1].second; ++v)
      sets[v - 1].push_back(a);
  return make_approval_profile(n, (int)spans.size(), std::move(sets));
}

std::vector<int> iota_order(int n) {
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 1);
  return o;
}

struct ScInstance {
  PreferenceProfile p;
  std::vector<int> order;
  int k = 2;
};

ScInstance random_sc_instance(uint64_t seed, int max_n = 8, int max_m = 6) {
  Rng rng(seed * 9176 + 31);
  int n = rng.uniform(2, max_n);
  int m = rng.uniform(2, max_m);
  ScInstance inst;
  inst.p = gen_profile("sc-approval", n, m, seed);
  auto w = detect_sc(inst.p);
  REQUIRE(w.has_value());
  inst.order = w->order;
  inst.k = std::min(m, rng.uniform(2, 3));
  return inst;
}

long long assigned_count(const PartialHappyAssignment& q) {
  long long c = 0;
  for (size_t v = 1; v < q.assign.size(); ++v)
    if (q.assign[v] != 0) ++c;
  return c;
}

}  // namespace

TEST_CASE("monroe_sc: fixed examples with frozen scores") {
  // Two disjoint voter blocks plus a bridge alternative: the block pair
  // serves everyone with loads 2/2.
  auto p = interval_profile(4, {{1, 2}, {3, 4}, {2, 3}});
  auto sum = solve_monroe_sc_sum(p, iota_order(4), 2);
  CHECK(sum.score == 0);
  CHECK(sum.committee == std::vector<int>{1, 2});
  auto vr = validate_solution(p, MisrepresentationModel::ApprovalBinary, 2,
                              Rule::Monroe, Objective::Sum, sum);
  CHECK(vr.ok);
  CHECK(vr.score == 0);
  CHECK(solve_monroe_sc_max(p, iota_order(4), 2).score == 0);

  // One alternative approved by the outer two of three voters; under the
  // crossing order (1,3,2) the middle voter sits last and stays unhappy.
  auto q = make_approval_profile(3, 1, {{1}, {}, {1}});
  std::vector<int> ord{1, 3, 2};
  auto qs = solve_monroe_sc_sum(q, ord, 1);
  CHECK(qs.score == 1);
  CHECK(qs.committee == std::vector<int>{1});
  CHECK(qs.assignment == std::vector<int>{0, 1, 1, 1});
  CHECK(solve_monroe_sc_max(q, ord, 1).score == 1);

  // Uneven loads: one ceiling block of three, one floor block of two.
  auto r = interval_profile(5, {{1, 3}, {4, 5}});
  CHECK(solve_monroe_sc_sum(r, iota_order(5), 2).score == 0);
  CHECK(solve_monroe_sc_max(r, iota_order(5), 2).score == 0);

  // A seat must go to an alternative nobody approves; its floor load of two
  // voters is forcibly unhappy.
  auto s = interval_profile(5, {{1, 5}, {1, 0}});
  auto ss = solve_monroe_sc_sum(s, iota_order(5), 2);
  CHECK(ss.score == 2);
  CHECK(ss.committee == std::vector<int>{1, 2});
  CHECK(solve_monroe_sc_max(s, iota_order(5), 2).score == 1);
}

TEST_CASE("monroe_sc: committees larger than the electorate and duplicates") {
  // k > n: two members serve one voter each, the third takes load zero.
  auto p = interval_profile(2, {{1, 1}, {2, 2}, {1, 0}});
  auto sol = solve_monroe_sc_sum(p, iota_order(2), 3);
  CHECK(sol.score == 0);
  CHECK(sol.committee == std::vector<int>{1, 2, 3});
  auto vr = validate_solution(p, MisrepresentationModel::ApprovalBinary, 3,
                              Rule::Monroe, Objective::Sum, sol);
  CHECK(vr.ok);

  // Identical approval sets must both be usable as members.
  auto q = interval_profile(4, {{1, 4}, {1, 4}});
  auto qs = solve_monroe_sc_sum(q, iota_order(4), 2);
  CHECK(qs.score == 0);
  CHECK(qs.committee == std::vector<int>{1, 2});

  // Nobody approves anything: every assignment misrepresents every voter.
  auto z = make_approval_profile(3, 2, {{}, {}, {}});
  auto zs = solve_monroe_sc_sum(z, iota_order(3), 2);
  CHECK(zs.score == 3);
  CHECK(solve_monroe_sc_max(z, iota_order(3), 2).score == 1);

  // Committee forced to take every alternative, only one of them approved.
  auto f = interval_profile(4, {{1, 4}, {1, 0}, {1, 0}});
  CHECK(solve_monroe_sc_sum(f, iota_order(4), 3).score == 2);
}

TEST_CASE("monroe_sc: input validation") {
  auto p = interval_profile(4, {{1, 2}, {3, 4}});
  CHECK_THROWS_AS(solve_monroe_sc_sum(p, iota_order(4), 3), std::invalid_argument);
  CHECK_THROWS_AS(solve_monroe_sc_sum(p, iota_order(4), 0), std::invalid_argument);
  CHECK_THROWS_AS(solve_monroe_sc_max(p, iota_order(4), 5), std::invalid_argument);
  // Non-contiguous approvals under the claimed order are not single-crossing.
  auto bad = make_approval_profile(3, 2, {{1}, {2}, {1}});
  CHECK_THROWS_AS(solve_monroe_sc_sum(bad, iota_order(3), 1), std::invalid_argument);
}

TEST_CASE("table_entry: base case and guard violations") {
  auto p = interval_profile(4, {{1, 2}, {3, 4}, {2, 3}});
  auto ctx = make_monroe_sc_context(p, iota_order(4), 2);

  DPConfiguration base{1, 1, 1, 2, 0, 0, 2, 2, 0, 0, 0, 0, 0};
  CHECK(table_entry(ctx, base).value == 2);

  DPConfiguration ct3 = base;
  ct3.n_star = 1;  // 2 voters cannot host 2 happy plus 1 unassigned
  CHECK(table_entry(ctx, ct3).value == kNegInf);

  DPConfiguration ct7{1, 2, 1, 4, 0, 0, 0, 2, 0, 0, 0, 0, 0};
  CHECK(table_entry(ctx, ct7).value == kNegInf);

  // Interval escapes the first boundary's approval span.
  DPConfiguration ct1{3, 3, 1, 3, 0, 0, 1, 1, 0, 0, 0, 0, 0};
  CHECK(table_entry(ctx, ct1).value == kNegInf);

  // Happy loads above the ceiling are invalid outright.
  DPConfiguration over = base;
  over.n_a = over.n_b = 3;
  CHECK(table_entry(ctx, over).value == kNegInf);

  // The full-window pair entry carries the whole electorate.
  DPConfiguration top{1, 2, 1, 4, 0, 0, 2, 2, 0, 0, 0, 0, 0};
  CHECK(table_entry(ctx, top).value == 4);
  // With the early-start permission granted but no member budget to exploit
  // it, no base case applies: such entries are infeasible by construction.
  DPConfiguration top1 = top;
  top1.B = 1;
  CHECK(table_entry(ctx, top1).value == kNegInf);
}

TEST_CASE("table_entry: value bounds and slack monotonicity on random configurations") {
  int finite_seen = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = random_sc_instance(seed);
    auto ctx = make_monroe_sc_context(inst.p, inst.order, inst.k);
    const StructureIndex& ix = ctx.ix;
    std::vector<int> actives;
    for (int a = 1; a <= ix.m; ++a)
      if (ix.active[a]) actives.push_back(a);
    if (actives.empty()) continue;
    Rng rng(seed * 131 + 7);
    for (int iter = 0; iter < 300; ++iter) {
      int a = actives[rng.uniform(0, (int)actives.size() - 1)];
      int b = a;
      if (rng.coin()) {
        int cand = actives[rng.uniform(0, (int)actives.size() - 1)];
        if (ix.in_earlier(a, cand)) b = cand;
      }
      if (ix.rightmost[b] < ix.leftmost[a]) continue;
      int i = rng.uniform(ix.leftmost[a], ix.n);
      if (i > ix.rightmost[b]) continue;
      int j = rng.uniform(i, ix.rightmost[b]);
      // Every other draw restricts the loads to what the boundary spans can
      // actually host, so a healthy share of configurations is feasible.
      bool biased = iter % 2 == 0;
      int span_a = std::min(j, ix.rightmost[a]) - std::max(i, ix.leftmost[a]) + 1;
      int span_b = std::min(j, ix.rightmost[b]) - std::max(i, ix.leftmost[b]) + 1;
      int cap_a = biased ? std::max(0, std::min(ctx.ceil_load, span_a))
                         : ctx.ceil_load;
      int cap_b = biased ? std::max(0, std::min(ctx.ceil_load, span_b))
                         : ctx.ceil_load;
      DPConfiguration cfg;
      cfg.a = a;
      cfg.b = b;
      cfg.i = i;
      cfg.j = j;
      cfg.k_hi = biased ? (ctx.n_mod_k == 0 ? 0 : rng.uniform(0, 1))
                        : rng.uniform(0, 2);
      cfg.k_lo = rng.uniform(0, 2);
      cfg.n_a = rng.uniform(0, cap_a);
      cfg.n_b = (a == b) ? cfg.n_a : rng.uniform(0, cap_b);
      cfg.n_star = rng.uniform(0, 2);
      cfg.B = rng.coin() ? 1 : 0;
      if (rng.uniform(0, 3) == 0) {
        cfg.c_p = a;
        cfg.i_p = ix.leftmost[a];
        cfg.j_p = ix.rightmost[a];
      }
      long long v0 = table_entry(ctx, cfg).value;
      DPConfiguration more = cfg;
      more.n_star += 1;
      long long v1 = table_entry(ctx, more).value;
      CHECK(v1 <= v0);
      if (v0 == kNegInf) continue;
      ++finite_seen;
      CHECK(v0 <= (long long)(j - i + 1) - cfg.n_star);
      long long lower = cfg.n_a + (a == b ? 0 : cfg.n_b);
      CHECK(v0 >= lower);
    }
  }
  CHECK(finite_seen >= 200);
}

TEST_CASE("monroe_sc equals the brute-force optimum on 200 random instances") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = random_sc_instance(seed);
    MonroeScStats stats;
    Solution dp = solve_monroe_sc_sum(inst.p, inst.order, inst.k, &stats);
    Solution br = oracle_monroe(inst.p, MisrepresentationModel::ApprovalBinary,
                                inst.k, Objective::Sum);
    if (dp.score != br.score) {
      FAIL_CHECK("seed " << seed << ": table " << dp.score << " vs oracle "
                         << br.score << " (n=" << inst.p.n << " m=" << inst.p.m
                         << " k=" << inst.k << ")");
    }
    auto vr = validate_solution(inst.p, MisrepresentationModel::ApprovalBinary,
                                inst.k, Rule::Monroe, Objective::Sum, dp);
    if (!vr.ok) FAIL_CHECK("seed " << seed << ": " << vr.violation);
    CHECK(vr.score == dp.score);
    CHECK(stats.table_entries > 0);
    if (seed % 4 == 0) {
      Solution mx = solve_monroe_sc_max(inst.p, inst.order, inst.k);
      Solution bx = oracle_monroe(inst.p, MisrepresentationModel::ApprovalBinary,
                                  inst.k, Objective::Max);
      CHECK(mx.score == bx.score);
    }
    if (seed % 10 == 0) {
      Solution again = solve_monroe_sc_sum(inst.p, inst.order, inst.k);
      CHECK(again.committee == dp.committee);
      CHECK(again.assignment == dp.assignment);
    }
  }
}

TEST_CASE("monroe_sc matches the oracle on every tiny profile") {
  // Exhaustive sweep over all approval profiles with 3 voters, 2
  // alternatives (4 ballots per voter), committee sizes 1 and 2.
  int solved = 0;
  std::vector<std::vector<int>> choices{{}, {1}, {2}, {1, 2}};
  for (int b1 = 0; b1 < 4; ++b1)
    for (int b2 = 0; b2 < 4; ++b2)
      for (int b3 = 0; b3 < 4; ++b3) {
        auto p = make_approval_profile(
            3, 2, {choices[b1], choices[b2], choices[b3]});
        auto w = detect_sc(p);
        if (!w.has_value()) continue;
        for (int k = 1; k <= 2; ++k) {
          Solution dp = solve_monroe_sc_sum(p, w->order, k);
          Solution br = oracle_monroe(
              p, MisrepresentationModel::ApprovalBinary, k, Objective::Sum);
          if (dp.score != br.score) {
            FAIL_CHECK("ballots (" << b1 << "," << b2 << "," << b3 << ") k="
                                   << k << ": table " << dp.score
                                   << " vs oracle " << br.score);
          }
          ++solved;
        }
      }
  CHECK(solved >= 100);
}

TEST_CASE("reconstructed happy assignments survive the exchange transform") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = random_sc_instance(seed + 1000);
    Solution dp = solve_monroe_sc_sum(inst.p, inst.order, inst.k);
    StructureIndex ix = build_index(inst.p, inst.order);
    PartialHappyAssignment q;
    q.i_hat = 1;
    q.j_hat = inst.p.n;
    q.assign.assign(inst.p.n + 1, 0);
    q.committee = dp.committee;
    for (int pos = 1; pos <= inst.p.n; ++pos) {
      int v = inst.order[pos - 1];
      int a = dp.assignment[v];
      if (a != 0 && inst.p.approves(v, a)) q.assign[pos] = a;
    }
    long long happy_before = assigned_count(q);
    CHECK(happy_before == (long long)inst.p.n - dp.score);
    std::vector<int> a_set;
    for (int a = 1; a <= ix.m; ++a)
      if (ix.active[a]) a_set.push_back(a);
    for (int c : dp.committee)
      if (!std::count(a_set.begin(), a_set.end(), c)) a_set.push_back(c);
    std::sort(a_set.begin(), a_set.end());
    PartialHappyAssignment q2 = mnt_transform(ix, q, a_set);
    CHECK(assigned_count(q2) == happy_before);
    CHECK(partial_misrep(ix, q2) == 0);
    auto rep = verify_mnt(ix, q2, a_set);
    if (!rep.ok) FAIL_CHECK("seed " << seed << ": " << rep.violations.front());
  }
}

TEST_CASE("recursive evaluation strictly descends the entry order") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    auto inst = random_sc_instance(seed + 500, 7, 5);
    auto ctx = make_monroe_sc_context(inst.p, inst.order, inst.k);
    ctx.check_order = true;
    Solution sol = solve_prepared(ctx);
    Solution br = oracle_monroe(ctx.ix.prof,
                                MisrepresentationModel::ApprovalBinary, inst.k,
                                Objective::Sum);
    CHECK(sol.score == br.score);
    auto vr = validate_solution(ctx.ix.prof,
                                MisrepresentationModel::ApprovalBinary, inst.k,
                                Rule::Monroe, Objective::Sum, sol);
    CHECK(vr.ok);
  }
}

TEST_CASE("a moderate instance solves with a modest memo") {
  auto p = gen_profile("sc-approval", 12, 6, 7);
  auto w = detect_sc(p);
  REQUIRE(w.has_value());
  MonroeScStats stats;
  Solution dp = solve_monroe_sc_sum(p, w->order, 3, &stats);
  Solution br =
      oracle_monroe(p, MisrepresentationModel::ApprovalBinary, 3, Objective::Sum);
  CHECK(dp.score == br.score);
  CHECK(stats.table_entries > 0);
  CHECK(stats.table_entries < 10000000u);
  MESSAGE("n=12 m=6 k=3: " << stats.table_entries << " entries, "
                           << stats.aux_entries << " aux, " << stats.seconds
                           << "s");
}
