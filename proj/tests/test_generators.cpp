#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mwsolve/core.hpp"
#include "mwsolve/generators.hpp"
#include "mwsolve/recognition.hpp"

using namespace mw;

TEST_CASE("generation is deterministic per seed") {
  for (const char* model :
       {"sp-approval", "sc-approval", "sp-linear", "sc-linear"}) {
    auto a = gen_profile(model, 7, 6, 42, 1, 1);
    auto b = gen_profile(model, 7, 6, 42, 1, 1);
    CHECK(profile_to_string(a) == profile_to_string(b));
    auto c = gen_profile(model, 7, 6, 43, 1, 1);
    CHECK(profile_to_string(a) != profile_to_string(c));
  }
}

TEST_CASE("structured models satisfy their structure") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    CHECK(detect_sp(gen_profile("sp-approval", 6, 5, seed)).has_value());
    CHECK(detect_sc(gen_profile("sc-approval", 6, 5, seed)).has_value());
    CHECK(detect_sp(gen_profile("sp-linear", 6, 5, seed)).has_value());
    // sc-linear lists voters directly in a single-crossing order.
    auto p = gen_profile("sc-linear", 6, 5, seed);
    std::vector<int> identity = {1, 2, 3, 4, 5, 6};
    CHECK(check_sc(p, identity));
  }
}

TEST_CASE("ballot shapes are valid") {
  auto ap = gen_profile("sc-approval", 8, 6, 7, 2, 2);
  CHECK(ap.n == 10);
  CHECK(ap.m == 8);
  for (int v = 1; v <= ap.n; ++v)
    for (int a : ap.ballots[v]) {
      CHECK(a >= 1);
      CHECK(a <= ap.m);
    }
  auto lp = gen_profile("sp-linear", 8, 6, 7, 2, 2);
  CHECK(lp.n == 10);
  CHECK(lp.m == 8);
  for (int v = 1; v <= lp.n; ++v)
    CHECK(static_cast<int>(lp.ballots[v].size()) == lp.m);  // permutations
  CHECK_THROWS_AS(gen_profile("bogus", 3, 3, 1), std::invalid_argument);
}

TEST_CASE("noisy profiles are fixable by deleting the noise") {
  // One unstructured voter: a deletion set of size <= 1 must exist (the
  // noise voter itself always works, smaller may happen by chance).
  int nontrivial = 0;
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    auto p = gen_profile("sc-approval", 5, 5, seed, /*noise_voters=*/1);
    auto cert = find_deletion_set(p, DeletionTarget::Voters,
                                  StructureKind::SingleCrossing, 1);
    REQUIRE(cert.has_value());
    if (!cert->deleted.empty()) ++nontrivial;
    auto reduced = remove_voters(p, cert->deleted);
    CHECK(check_sc(reduced, cert->witness.order));
  }
  CHECK(nontrivial >= 1);  // noise actually breaks structure sometimes

  for (uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = gen_profile("sp-linear", 5, 4, seed, 0, /*noise_alts=*/1);
    auto cert = find_deletion_set(p, DeletionTarget::Alternatives,
                                  StructureKind::SinglePeaked, 1);
    REQUIRE(cert.has_value());
    auto reduced = remove_alternatives(p, cert->deleted);
    CHECK(check_sp(reduced, cert->witness.order));
  }
}
