// Core data model: preference profiles, misrepresentation, solutions,
// solution validation, and the max->approval reduction.
//
// Conventions used across the library:
//   * voters are 1..n and alternatives are 1..m; index 0 of per-voter /
//     per-alternative vectors is unused (0 doubles as a sentinel id);
//   * approval ballots are sorted sets of alternative ids, linear ballots
//     are permutations of 1..m listed from most to least preferred;
//   * all scores are exact integers.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mw {

enum class BallotKind { Approval, Linear };
enum class MisrepresentationModel { ApprovalBinary, Borda };
enum class Rule { Monroe, CC };
enum class Objective { Sum, Max };

constexpr long long kNegInf = -(1LL << 60);
constexpr long long kPosInf = (1LL << 60);

struct PreferenceProfile {
  BallotKind kind = BallotKind::Approval;
  int n = 0;  // voters 1..n
  int m = 0;  // alternatives 1..m
  // ballots[v] for v in 1..n: approval -> sorted distinct alternative ids
  // (possibly empty); linear -> permutation of 1..m, best first.
  std::vector<std::vector<int>> ballots;

  // Derived lookups, built by finalize().
  // Approval: approval_bit[v] has bit (a-1) set iff v approves a (m <= 64);
  // for larger m, approves() falls back to binary search on the ballot.
  std::vector<uint64_t> approval_bit;
  // Linear: rank_of[v][a] = number of alternatives v strictly prefers to a.
  std::vector<std::vector<int>> rank_of;

  bool approves(int v, int a) const;
  int rank(int v, int a) const;  // linear profiles only
  void finalize();               // validates invariants, builds lookups
};

PreferenceProfile make_approval_profile(int n, int m,
                                        std::vector<std::vector<int>> sets);
PreferenceProfile make_linear_profile(int n, int m,
                                      std::vector<std::vector<int>> orders);

MisrepresentationModel default_model(const PreferenceProfile& p);

// rho(v, a) under the model. Throws std::out_of_range for bad ids and
// std::logic_error if the model does not fit the ballot kind.
int misrep(const PreferenceProfile& p, MisrepresentationModel model, int voter,
           int alternative);

struct Solution {
  Rule rule = Rule::CC;
  Objective objective = Objective::Sum;
  int k = 0;
  long long score = -1;
  std::vector<int> committee;   // sorted alternative ids, size k
  std::vector<int> assignment;  // [0..n], index 0 unused; values in committee
  std::string method;           // which solver produced it (CLI metadata)
};

struct ValidationResult {
  bool ok = false;
  long long score = -1;      // recomputed score when ok
  std::string violation;     // first violated invariant otherwise
};

ValidationResult validate_solution(const PreferenceProfile& p,
                                   MisrepresentationModel model, int k,
                                   Rule rule, Objective objective,
                                   const Solution& s);

// Parse errors carry the 1-based physical line number of the offending line.
struct ProfileFormatError : std::runtime_error {
  int line;
  ProfileFormatError(int line_, const std::string& msg);
};

PreferenceProfile load_profile(const std::string& path);
PreferenceProfile parse_profile(std::istream& in);
void write_profile(std::ostream& out, const PreferenceProfile& p);
std::string profile_to_string(const PreferenceProfile& p);

// Partial assignments of happy voters only (structural layer + tests).
struct PartialHappyAssignment {
  int i_hat = 1, j_hat = 0;     // voter window [i_hat, j_hat]
  std::vector<int> assign;      // [0..n]; 0 = unassigned, else alternative id
  std::vector<int> committee;   // alternatives the partial solution may use
};

// Threshold reduction: voter approves a iff rk_v(a) <= beta.
PreferenceProfile reduce_max_to_approval(const PreferenceProfile& linear,
                                         int beta);

// Binary search over beta in [0, m-1]. `solve_sum_zero` must return the
// optimal MW+ Solution of the approval profile for the fixed rule/k; the
// reduction test is "score == 0". Returns the MW-max optimum: score = the
// smallest feasible beta, with committee/assignment from that solve.
struct ReductionStats {
  int solver_calls = 0;
};
Solution solve_max_via_reduction(
    const PreferenceProfile& linear, int k,
    const std::function<Solution(const PreferenceProfile&, int)>& solve_sum,
    ReductionStats* stats = nullptr);

}  // namespace mw
