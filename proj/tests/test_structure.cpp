#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "mwsolve/core.hpp"
#include "mwsolve/generators.hpp"
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

StructureIndex make_index(int n, std::vector<std::pair<int, int>> spans) {
  return build_index(interval_profile(n, std::move(spans)), iota_order(n));
}

StructureIndex random_index(uint64_t seed, int max_n = 8, int max_m = 6) {
  Rng rng(seed * 7919 + 13);
  int n = rng.uniform(2, max_n), m = rng.uniform(1, max_m);
  auto p = gen_profile("sc-approval", n, m, seed);
  auto w = detect_sc(p);
  REQUIRE(w.has_value());
  return build_index(p, w->order);
}

PartialHappyAssignment make_partial(int n, int i_hat, int j_hat,
                                    std::vector<std::pair<int, int>> pairs,
                                    std::vector<int> committee) {
  PartialHappyAssignment p;
  p.i_hat = i_hat;
  p.j_hat = j_hat;
  p.assign.assign(n + 1, 0);
  for (auto [v, a] : pairs) p.assign[v] = a;
  p.committee = std::move(committee);
  return p;
}

// Random partial solution: a committee of size k, loads capped at ceil(n/k),
// roughly half of the window voters assigned (happily or not).
PartialHappyAssignment random_partial(const StructureIndex& ix, Rng& rng,
                                      std::vector<int>* a_set) {
  PartialHappyAssignment p;
  int n = ix.n, m = ix.m;
  int k = rng.uniform(1, std::min(m, 3));
  std::vector<int> alts = iota_order(m);
  rng.shuffle(alts);
  p.committee.assign(alts.begin(), alts.begin() + k);
  if (rng.uniform(0, 16) == 0) {
    p.i_hat = 1;
    p.j_hat = 0;  // empty window
  } else {
    p.i_hat = rng.uniform(1, n);
    p.j_hat = rng.uniform(p.i_hat, n);
  }
  p.assign.assign(n + 1, 0);
  int cap = (n + k - 1) / k;
  std::vector<int> load(m + 1, 0);
  for (int v = p.i_hat; v <= p.j_hat; ++v) {
    if (rng.coin()) continue;
    int a = p.committee[rng.uniform(0, k - 1)];
    if (load[a] < cap) {
      p.assign[v] = a;
      ++load[a];
    }
  }
  a_set->clear();
  for (int a = 1; a <= m; ++a)
    if (ix.active[a] && rng.coin()) a_set->push_back(a);
  for (int a : p.committee)
    if (!std::count(a_set->begin(), a_set->end(), a)) a_set->push_back(a);
  std::sort(a_set->begin(), a_set->end());
  return p;
}

}  // namespace

TEST_CASE("build_index computes positions, relations, and levels") {
  // Two crossing intervals: the left one comes earlier.
  auto ix = make_index(6, {{1, 5}, {2, 6}});
  CHECK(ix.leftmost[1] == 1);
  CHECK(ix.rightmost[1] == 5);
  CHECK(ix.is_incomparable(1, 2));
  CHECK(ix.in_earlier(1, 2));
  CHECK_FALSE(ix.in_earlier(2, 1));
  CHECK(ix.earlier[2] == std::vector<int>{1});
  CHECK(ix.later[1] == std::vector<int>{2});
  CHECK(ix.level[1] == 1);
  CHECK(ix.level[2] == 1);

  // Strict containment: the superset dominates and sits one level up.
  auto iy = make_index(6, {{1, 6}, {1, 4}});
  CHECK(iy.dominates(1, 2));
  CHECK_FALSE(iy.dominates(2, 1));
  CHECK(iy.dom[2] == std::vector<int>{1});
  CHECK(iy.sub[1] == std::vector<int>{2});
  CHECK(iy.level[1] == 1);
  CHECK(iy.level[2] == 2);

  // Identical approval sets: the lower id dominates.
  auto iz = make_index(4, {{2, 4}, {2, 4}});
  CHECK(iz.dominates(1, 2));
  CHECK_FALSE(iz.dominates(2, 1));
  CHECK(iz.level[2] == 2);

  // Empty approval sets are recorded and excluded from every relation.
  auto iw = make_index(4, {{1, 3}, {3, 2}});
  CHECK(iw.active[1]);
  CHECK_FALSE(iw.active[2]);
  CHECK(iw.empty_alternatives == std::vector<int>{2});
  CHECK(iw.level[2] == 0);
  CHECK(iw.dom[2].empty());
  CHECK(iw.canonical_order == std::vector<int>{1});

  // Not single-crossing under the given order, or not approval: rejected.
  CHECK_THROWS_AS(build_index(make_approval_profile(3, 1, {{1}, {}, {1}}),
                              {1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_index(make_linear_profile(1, 2, {{1, 2}}), {1}),
                  std::invalid_argument);

  // A non-identity order: positions refer to the reordered profile.
  auto p = make_approval_profile(3, 2, {{2}, {1}, {1, 2}});
  std::vector<int> order = {2, 3, 1};
  REQUIRE(check_sc(p, order));
  auto iv = build_index(p, order);
  CHECK(iv.leftmost[1] == 1);
  CHECK(iv.rightmost[1] == 2);
  CHECK(iv.leftmost[2] == 2);
  CHECK(iv.rightmost[2] == 3);
  CHECK(iv.approves(1, 1));      // position 1 is input voter 2
  CHECK_FALSE(iv.approves(1, 2));
}

TEST_CASE("canonical order lists levels in position order") {
  auto ix = make_index(8, {{1, 3}, {4, 6}, {2, 5}, {3, 4}, {2, 3}, {6, 8}});
  CHECK(ix.level[1] == 1);
  CHECK(ix.level[2] == 1);
  CHECK(ix.level[3] == 1);
  CHECK(ix.level[6] == 1);
  CHECK(ix.level[4] == 2);  // dominated by a3
  CHECK(ix.level[5] == 2);  // dominated by a1 and a3
  CHECK(ix.canonical_order == std::vector<int>{1, 3, 2, 6, 5, 4});

  CHECK(level_one_within(ix, {3, 4, 5}) == std::vector<int>{3});
  CHECK(level_one_within(ix, {4, 4, 5}) == std::vector<int>{4, 5});
  // Within {2,3,4} only a3 > a4 remains comparable.
  CHECK(canonical_order_of(ix, {2, 3, 4}) == std::vector<int>{3, 2, 4});
}

TEST_CASE("index relations satisfy the structural invariants") {
  for (uint64_t seed = 1; seed <= 80; ++seed) {
    auto ix = random_index(seed);
    CAPTURE(seed);
    std::vector<int> actives;
    for (int a = 1; a <= ix.m; ++a) {
      if (!ix.active[a]) {
        CHECK(ix.level[a] == 0);
        continue;
      }
      actives.push_back(a);
      REQUIRE(ix.leftmost[a] >= 1);
      REQUIRE(ix.leftmost[a] <= ix.rightmost[a]);
      // Approval sets are contiguous in the single-crossing order.
      for (int v = 1; v <= ix.n; ++v)
        CHECK(ix.approves(v, a) ==
              (ix.leftmost[a] <= v && v <= ix.rightmost[a]));
    }
    for (int a : actives) {
      for (int b : actives) {
        if (a == b) continue;
        int cnt = (ix.dominates(a, b) ? 1 : 0) + (ix.dominates(b, a) ? 1 : 0) +
                  (ix.is_incomparable(a, b) ? 1 : 0);
        CHECK(cnt == 1);  // trichotomy
        if (ix.dominates(a, b)) {
          CHECK(ix.level[a] < ix.level[b]);
          CHECK(std::count(ix.dom[b].begin(), ix.dom[b].end(), a) == 1);
          CHECK(std::count(ix.sub[a].begin(), ix.sub[a].end(), b) == 1);
          for (int c : ix.dom[a])  // transitivity
            CHECK(std::count(ix.dom[b].begin(), ix.dom[b].end(), c) == 1);
        }
        if (ix.is_incomparable(a, b)) {
          CHECK(ix.leftmost[a] != ix.leftmost[b]);
          CHECK(ix.in_earlier(a, b) == (ix.leftmost[a] < ix.leftmost[b]));
          CHECK(ix.in_earlier(a, b) ==
                (std::count(ix.earlier[b].begin(), ix.earlier[b].end(), a) ==
                 1));
          CHECK(ix.in_earlier(a, b) ==
                (std::count(ix.later[a].begin(), ix.later[a].end(), b) == 1));
        }
      }
      // Incom splits into Earlier and Later.
      std::vector<int> merged = ix.earlier[a];
      merged.insert(merged.end(), ix.later[a].begin(), ix.later[a].end());
      std::sort(merged.begin(), merged.end());
      CHECK(merged == ix.incom[a]);
      // Level is one more than the deepest dominator.
      int expect = 1;
      for (int d : ix.dom[a]) expect = std::max(expect, ix.level[d] + 1);
      CHECK(ix.level[a] == expect);
    }
    // Canonical order: exactly the active ids, sorted by (level, leftmost).
    auto sorted = ix.canonical_order;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == actives);
    for (size_t i = 1; i < ix.canonical_order.size(); ++i) {
      int x = ix.canonical_order[i - 1], y = ix.canonical_order[i];
      CHECK(std::make_pair(ix.level[x], ix.leftmost[x]) <
            std::make_pair(ix.level[y], ix.leftmost[y]));
    }
    // Two alternatives on the same level never share a leftmost voter.
  }
}

TEST_CASE("inbet collects alternatives lying between two incomparables") {
  auto ix = make_index(8, {{1, 3}, {4, 6}, {2, 5}, {3, 4}, {2, 3}, {6, 8}});
  CHECK(inbet(ix, 1, 2) == std::vector<int>{3, 4});
  CHECK(inbet_hat(ix, 1, 2) == std::vector<int>{3});
  CHECK(inbet(ix, 1, 1).empty());
  CHECK(inbet(ix, 2, 1).empty());
  CHECK_THROWS_AS(inbet(ix, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(inbet(ix, 1, 7), std::invalid_argument);

  // Definition cross-check on random instances.
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    auto iy = random_index(seed);
    for (int a = 1; a <= iy.m; ++a) {
      if (!iy.active[a]) continue;
      for (int b = 1; b <= iy.m; ++b) {
        if (!iy.active[b]) continue;
        std::vector<int> expect;
        if (a != b)
          for (int c = 1; c <= iy.m; ++c)
            if (iy.is_incomparable(c, a) && iy.is_incomparable(c, b) &&
                iy.leftmost[c] >= iy.leftmost[a] &&
                iy.rightmost[c] <= iy.rightmost[b])
              expect.push_back(c);
        CHECK(inbet(iy, a, b) == expect);
        for (int c : inbet_hat(iy, a, b))
          for (int d : inbet(iy, a, b)) CHECK_FALSE(iy.dominates(d, c));
      }
    }
  }
}

TEST_CASE("usable_set matches the hand-worked example") {
  auto ix = make_index(8, {{1, 6}, {2, 8}, {2, 4}, {4, 8}, {4, 5}, {5, 6}});
  // Inside [6,8] under the promise that b2 already covers [5,8]: only b6.
  CHECK(usable_set(ix, 4, 6, 8, 2, 5, 8) == std::vector<int>{6});
  CHECK(top_usable(ix, 4, 6, 8, 2, 5, 8) == std::vector<int>{6});
  // With no promise, b6's dominator b1 (incomparable to b4, not later than
  // it) blocks condition (iii).
  CHECK(usable_set(ix, 4, 6, 8, 0, 0, 0).empty());
  CHECK(usable_set(ix, 4, 5, 8, 0, 0, 0) == std::vector<int>{6});
  // Guard failures give the empty set.
  CHECK(usable_set(ix, 4, 6, 8, 3, 2, 4).empty());   // b3 does not dominate b4
  CHECK(usable_set(ix, 4, 3, 8, 2, 5, 8).empty());   // [3,8] not inside [5,8]
  CHECK(usable_set(ix, 4, 6, 8, 2, 1, 8).empty());   // [1,8] not inside A(b2)
  CHECK(usable_set(ix, 6, 5, 6, 0, 0, 0).empty());   // b6 dominates nothing
  CHECK(usable_set(ix, 4, 7, 6, 2, 5, 8).empty());   // empty voter interval
  CHECK_THROWS_AS(usable_set(ix, 0, 1, 2, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("usable sets widen, split, and close under later subordinates") {
  int with_two = 0, split_checked = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto ix = random_index(seed, 7, 6);
    CAPTURE(seed);
    for (int c = 1; c <= ix.m; ++c) {
      if (!ix.active[c]) continue;
      int lc = ix.leftmost[c], rc = ix.rightmost[c];
      // Promises to test: none (sentinel), c itself over its full span, and
      // every dominator over c's full span.
      std::vector<std::array<int, 3>> promises = {{0, 0, 0}, {c, lc, rc}};
      for (int d : ix.dom[c]) promises.push_back({d, lc, rc});
      for (int i = lc; i <= rc; ++i) {
        for (int j = i; j <= rc; ++j) {
          // Widening under the sentinel promise.
          auto base = usable_set(ix, c, i, j, 0, 0, 0);
          for (int iw = lc; iw <= i; ++iw) {
            auto wide = usable_set(ix, c, iw, rc, 0, 0, 0);
            for (int x : base)
              CHECK(std::count(wide.begin(), wide.end(), x) == 1);
          }
          for (auto [cp, ip, jp] : promises) {
            auto u = usable_set(ix, c, i, j, cp, ip, jp);
            if ((int)u.size() >= 2) ++with_two;
            // Later subordinates stay usable: b usable, d below c, b earlier
            // than d, d's span meets [1..j] from the left.
            for (int b : u)
              for (int d : ix.sub[c])
                if (ix.in_earlier(b, d) && ix.leftmost[d] <= j)
                  CHECK(std::count(u.begin(), u.end(), d) == 1);
            // Splitting the voter interval splits the set.
            for (int is = i; is < j; ++is) {
              auto left = usable_set(ix, c, i, is, cp, ip, jp);
              auto right = usable_set(ix, c, is + 1, j, cp, ip, jp);
              std::vector<int> unite = left;
              unite.insert(unite.end(), right.begin(), right.end());
              std::sort(unite.begin(), unite.end());
              unite.erase(std::unique(unite.begin(), unite.end()),
                          unite.end());
              if (cp != 0) {
                CHECK(unite == u);
                ++split_checked;
              }
            }
          }
        }
      }
    }
  }
  CHECK(with_two >= 1);       // the suite exercised non-trivial usable sets
  CHECK(split_checked >= 1);  // and actual split instances
}

TEST_CASE("usable sets of incomparable siblings under one promise are "
          "disjoint") {
  int live = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto ix = random_index(seed, 6, 6);
    CAPTURE(seed);
    Rng rng(seed + 991);
    for (int trial = 0; trial < 2000; ++trial) {
      int az = rng.uniform(1, ix.m), ax = rng.uniform(1, ix.m),
          ay = rng.uniform(1, ix.m);
      if (!ix.active[az] || !ix.active[ax] || !ix.active[ay]) continue;
      if (!ix.is_incomparable(ax, ay)) continue;
      if (ix.leftmost[ax] >= ix.leftmost[ay]) std::swap(ax, ay);
      int iz = rng.uniform(ix.leftmost[az], ix.rightmost[az]);
      int jz = rng.uniform(iz, ix.rightmost[az]);
      if (iz > ix.leftmost[ax]) continue;
      auto pick = [&](int a, int* i, int* j) {
        int lo = std::max(ix.leftmost[a], iz), hi = std::min(ix.rightmost[a], jz);
        if (lo > hi) return false;
        *i = rng.uniform(lo, hi);
        *j = rng.uniform(*i, hi);
        return true;
      };
      int ixx, jxx, iyy, jyy;
      if (!pick(ax, &ixx, &jxx) || !pick(ay, &iyy, &jyy)) continue;
      if (!(jxx < iyy || jyy < ixx)) continue;  // need disjoint intervals
      auto ux = usable_set(ix, ax, ixx, jxx, az, iz, jz);
      auto uy = usable_set(ix, ay, iyy, jyy, az, iz, jz);
      if (!ux.empty() && !uy.empty()) ++live;
      for (int x : ux) CHECK(std::count(uy.begin(), uy.end(), x) == 0);
    }
  }
  CHECK(live >= 1);  // hypotheses were actually reachable with nonempty sets
}

TEST_CASE("partial solution accounting") {
  auto ix = make_index(6, {{1, 6}, {3, 4}});
  auto p = make_partial(6, 2, 5, {{2, 1}, {3, 2}, {5, 2}}, {1, 2});
  CHECK(happy_voters(ix, p, 1) == std::vector<int>{2});
  CHECK(happy_voters(ix, p, 2) == std::vector<int>{3});  // voter 5 unhappy
  CHECK(used_alternatives(ix, p) == std::vector<int>{1, 2});
  CHECK(partial_misrep(ix, p) == 1);

  auto q = make_partial(6, 1, 0, {}, {1});
  CHECK(used_alternatives(ix, q).empty());
  CHECK(partial_misrep(ix, q) == 0);

  // Malformed inputs are rejected.
  auto bad = make_partial(6, 2, 5, {{1, 1}}, {1});
  CHECK_THROWS_AS(verify_mnt(ix, bad, {1}), std::invalid_argument);  // outside window
  bad = make_partial(6, 2, 5, {{3, 2}}, {1});
  CHECK_THROWS_AS(verify_mnt(ix, bad, {1}), std::invalid_argument);  // not a member
  bad = make_partial(6, 2, 5, {}, {7});
  CHECK_THROWS_AS(verify_mnt(ix, bad, {1}), std::invalid_argument);  // bad id
  bad = make_partial(6, 2, 5, {}, {1, 1});
  CHECK_THROWS_AS(verify_mnt(ix, bad, {1}), std::invalid_argument);  // duplicate
  bad = make_partial(6, 2, 7, {}, {1});
  CHECK_THROWS_AS(verify_mnt(ix, bad, {1}), std::invalid_argument);  // window
  bad = make_partial(6, 2, 5, {}, {1});
  bad.assign.pop_back();
  CHECK_THROWS_AS(verify_mnt(ix, bad, {1}), std::invalid_argument);  // size
}

TEST_CASE("verification accepts block solutions and flags interleavings") {
  auto ix = make_index(6, {{1, 6}, {3, 4}});
  // The dominator serves voters on both sides of the dominated block.
  auto good = make_partial(
      6, 1, 6, {{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 1}, {6, 1}}, {1, 2});
  CHECK(verify_mnt(ix, good, {1, 2}).ok);

  // A dominator's happy voter inside the dominated alternative's block.
  auto bad2 = make_partial(6, 1, 6, {{3, 1}, {4, 2}}, {1, 2});
  auto rep2 = verify_mnt(ix, bad2, {1, 2});
  CHECK_FALSE(rep2.ok);
  REQUIRE(rep2.violations.size() == 1);
  CHECK(rep2.violations[0].find("NT (ii)") != std::string::npos);

  // Interleaved incomparable pair.
  auto iy = make_index(6, {{1, 4}, {2, 6}});
  auto bad1 = make_partial(6, 1, 6, {{3, 2}, {4, 1}}, {1, 2});
  auto rep1 = verify_mnt(iy, bad1, {1, 2});
  CHECK_FALSE(rep1.ok);
  CHECK(rep1.violations[0].find("NT (i)") != std::string::npos);

  // Monotone (i): an available dominator missing from the committee.
  auto m1 = make_partial(6, 1, 6, {{3, 2}}, {2});
  auto repm1 = verify_mnt(ix, m1, {1, 2});
  CHECK_FALSE(repm1.ok);
  CHECK(repm1.violations[0].find("monotone (i)") != std::string::npos);

  // Monotone (ii): the dominated alternative is served, the dominator idle.
  auto m2 = make_partial(6, 1, 6, {{3, 2}}, {1, 2});
  auto repm2 = verify_mnt(ix, m2, {1, 2});
  CHECK_FALSE(repm2.ok);
  CHECK(repm2.violations[0].find("monotone (ii)") != std::string::npos);
  // With the dominator outside the allowed set there is nothing to flag.
  CHECK(verify_mnt(ix, m2, {2}).ok);

  // Inactive committee members are tolerated.
  auto iz = make_index(6, {{1, 6}, {3, 4}, {5, 4}});
  auto tol = make_partial(6, 1, 6, {{3, 2}, {2, 1}, {5, 1}}, {1, 2, 3});
  CHECK(verify_mnt(iz, tol, {1, 2, 3}).ok);
}

TEST_CASE("mnt repair reaches a verified solution without losing value") {
  int initially_broken = 0;
  for (uint64_t seed = 1; seed <= 300; ++seed) {
    auto ix = random_index(seed);
    CAPTURE(seed);
    Rng rng(seed * 31 + 7);
    std::vector<int> a_set;
    auto p = random_partial(ix, rng, &a_set);
    int k = (int)p.committee.size();
    int cap = (ix.n + k - 1) / k;
    long long before = partial_misrep(ix, p);
    std::vector<char> was_assigned(ix.n + 1, 0);
    for (int v = 1; v <= ix.n; ++v) was_assigned[v] = p.assign[v] != 0;
    if (!verify_mnt(ix, p, a_set).ok) ++initially_broken;

    auto q = mnt_transform(ix, p, a_set);
    auto rep = verify_mnt(ix, q, a_set);
    if (!rep.ok) FAIL_CHECK("post-repair violation: " << rep.violations.front());
    CHECK(partial_misrep(ix, q) <= before);
    CHECK((int)q.committee.size() == k);
    // The set of assigned voters and the load cap are preserved.
    std::vector<int> load(ix.m + 1, 0);
    for (int v = 1; v <= ix.n; ++v) {
      CHECK((q.assign[v] != 0) == (bool)was_assigned[v]);
      if (q.assign[v] != 0) ++load[q.assign[v]];
    }
    for (int a = 1; a <= ix.m; ++a) CHECK(load[a] <= cap);
    // Repairing a repaired solution changes nothing.
    auto q2 = mnt_transform(ix, q, a_set);
    CHECK(q2.assign == q.assign);
    CHECK(q2.committee == q.committee);
    CHECK(q2.i_hat == q.i_hat);
    CHECK(q2.j_hat == q.j_hat);
  }
  CHECK(initially_broken >= 10);  // the suite exercised real repairs
}

TEST_CASE("good collections: six conditions on fixed examples") {
  auto ix = make_index(6, {{1, 6}, {3, 4}});
  auto p = make_partial(
      6, 1, 6, {{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 1}, {6, 1}}, {1, 2});
  IntervalCollection coll;
  coll.members = {1, 2};
  coll.intervals = {{1, 6}, {3, 4}};
  CHECK(is_good_collection(ix, p, coll));
  coll.intervals = {{1, 6}, {2, 4}};  // leaves A(a2)
  CHECK_FALSE(is_good_collection(ix, p, coll));
  coll.intervals = {{1, 4}, {3, 4}};  // drops happy voters 5, 6 of a1
  CHECK_FALSE(is_good_collection(ix, p, coll));
  coll.intervals = {{1, 2}, {3, 4}};  // same reason
  CHECK_FALSE(is_good_collection(ix, p, coll));
  coll.members = {2, 1};
  CHECK_THROWS_AS(is_good_collection(ix, p, coll), std::invalid_argument);

  // Incomparable pair: overlapping intervals violate disjointness.
  auto iy = make_index(6, {{1, 4}, {2, 6}});
  auto q = make_partial(6, 1, 6, {{1, 1}, {5, 2}}, {1, 2});
  IntervalCollection c2;
  c2.members = {1, 2};
  c2.intervals = {{1, 1}, {5, 5}};
  CHECK(is_good_collection(iy, q, c2));
  c2.intervals = {{1, 4}, {3, 6}};
  CHECK_FALSE(is_good_collection(iy, q, c2));
  c2.intervals = {{1, 2}, {3, 6}};
  CHECK(is_good_collection(iy, q, c2));

  // Intervals must respect the window of a partial solution.
  auto qw = make_partial(6, 1, 5, {{1, 1}, {5, 2}}, {1, 2});
  c2.intervals = {{1, 1}, {5, 6}};
  CHECK_FALSE(is_good_collection(iy, qw, c2));  // leaves the window
  c2.intervals = {{1, 1}, {5, 5}};
  CHECK(is_good_collection(iy, qw, c2));

  // An unused member must keep an empty interval.
  auto r = make_partial(6, 1, 6, {{1, 1}}, {1, 2});
  IntervalCollection c3;
  c3.members = {1, 2};
  c3.intervals = {{1, 1}, {1, 0}};
  CHECK(is_good_collection(iy, r, c3));
  c3.intervals = {{1, 1}, {5, 5}};
  CHECK_FALSE(is_good_collection(iy, r, c3));
  CHECK(c3.signature() == std::vector<long long>{1, 5, -1, -5});
  c3.intervals = {{1, 1}, {2, 1}};  // any inverted pair counts as empty
  CHECK(c3.signature() == std::vector<long long>{1, 0, -1, -1});
}

TEST_CASE("maximally good collections extend happy spans as far as goodness "
          "allows") {
  // The dominator's right endpoint must jump across the dominated block:
  // stopping at voter 3 would overlap it without containing it.
  auto ix = make_index(6, {{1, 6}, {3, 4}});
  auto p = make_partial(6, 1, 6, {{1, 1}, {2, 1}, {3, 2}, {4, 2}}, {1, 2});
  auto g = maximally_good(ix, p);
  CHECK(g.members == std::vector<int>{1, 2});
  CHECK(g.intervals[0].i == 1);
  CHECK(g.intervals[0].j == 6);
  CHECK(g.intervals[1].i == 3);
  CHECK(g.intervals[1].j == 4);
  CHECK(g.signature() == std::vector<long long>{6, 4, -1, -3});

  // Non-NT input is rejected.
  auto iy = make_index(6, {{1, 4}, {2, 6}});
  auto bad = make_partial(6, 1, 6, {{3, 2}, {4, 1}}, {1, 2});
  CHECK_THROWS_AS(maximally_good(iy, bad), std::invalid_argument);
  CHECK_THROWS_AS(check_interval_lemmas(iy, bad), std::invalid_argument);
}

TEST_CASE("maximally good equals the exhaustive signature maximum on small "
          "instances") {
  int extended = 0;
  for (uint64_t seed = 1; seed <= 120; ++seed) {
    auto ix = random_index(seed, 5, 3);
    CAPTURE(seed);
    Rng rng(seed * 131 + 1);
    std::vector<int> a_set;
    auto p0 = random_partial(ix, rng, &a_set);
    auto p = mnt_transform(ix, p0, a_set);
    auto g = maximally_good(ix, p);
    REQUIRE(is_good_collection(ix, p, g));

    // Exhaustive maximum over all interval collections.
    int t = (int)g.members.size();
    std::vector<VoterInterval> options = {{1, 0}};
    for (int i = p.i_hat; i <= p.j_hat; ++i)
      for (int j = i; j <= p.j_hat; ++j) options.push_back({i, j});
    IntervalCollection best, cur;
    best.members = cur.members = g.members;
    cur.intervals.assign(t, {1, 0});
    bool found = false;
    std::vector<int> idx(t, 0);
    while (true) {
      for (int l = 0; l < t; ++l) cur.intervals[l] = options[idx[l]];
      if (is_good_collection(ix, p, cur) &&
          (!found || best.signature() < cur.signature())) {
        best = cur;
        found = true;
      }
      int l = 0;
      while (l < t && ++idx[l] == (int)options.size()) idx[l++] = 0;
      if (l == t) break;
      if (t == 0) break;
    }
    REQUIRE(found);
    CHECK(g.signature() == best.signature());

    // Track how often extension beat the raw happy spans.
    IntervalCollection spans;
    spans.members = g.members;
    for (int a : g.members) {
      auto h = happy_voters(ix, p, a);
      spans.intervals.push_back(
          h.empty() ? VoterInterval{1, 0} : VoterInterval{h.front(), h.back()});
    }
    if (g.signature() != spans.signature()) ++extended;
  }
  CHECK(extended >= 1);
}

TEST_CASE("interval containment lemmas hold for repaired solutions") {
  for (uint64_t seed = 500; seed < 700; ++seed) {
    auto ix = random_index(seed);
    CAPTURE(seed);
    Rng rng(seed * 17 + 3);
    std::vector<int> a_set;
    auto p0 = random_partial(ix, rng, &a_set);
    auto p = mnt_transform(ix, p0, a_set);
    auto rep = check_interval_lemmas(ix, p);
    if (!rep.ok) FAIL_CHECK("lemma violation: " << rep.violations.front());
  }
}
