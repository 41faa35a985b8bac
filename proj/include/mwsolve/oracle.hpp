// Exact brute-force reference solvers: enumerate committees, assign optimally.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mwsolve/core.hpp"

namespace mw {

struct OracleBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Calls fn for every sorted k-subset of {1..m} in lexicographic order.
void for_each_committee(int m, int k,
                        const std::function<void(const std::vector<int>&)>& fn);

// Optimal proportional completion for a fixed committee. preload[a] voters
// (indexed by alternative id, size m+1) are already assigned to member a
// (counted toward its load); the voters in
// `free_voters` are then assigned so that every member's total load lies in
// [floor(n/k), ceil(n/k)] (n = p.n). Returns the minimum total added
// misrepresentation and writes the free voters' assignment into assign_out
// (slots of non-free voters are left untouched); nullopt if infeasible.
std::optional<long long> monroe_complete(const PreferenceProfile& p,
                                         MisrepresentationModel model, int k,
                                         const std::vector<int>& committee,
                                         const std::vector<int>& preload,
                                         const std::vector<int>& free_voters,
                                         std::vector<int>& assign_out);

// Same, but only voter->member edges with misrep <= tau are allowed.
// Used for Max-objective feasibility tests.
std::optional<long long> monroe_complete_threshold(
    const PreferenceProfile& p, MisrepresentationModel model, int k,
    const std::vector<int>& committee, const std::vector<int>& preload,
    const std::vector<int>& free_voters, long long tau,
    std::vector<int>& assign_out);

// Optimal proportional assignment for one fixed committee.
Solution monroe_assign_committee(const PreferenceProfile& p,
                                 MisrepresentationModel model, int k,
                                 const std::vector<int>& committee,
                                 Objective objective);

// Brute-force solvers. Committees are enumerated lexicographically and ties
// are broken by taking the first optimum, i.e. the lexicographically smallest
// optimal committee. Throws OracleBudgetExceeded when m > budget_m.
Solution oracle_cc(const PreferenceProfile& p, MisrepresentationModel model,
                   int k, Objective objective, int budget_m = 12);
Solution oracle_monroe(const PreferenceProfile& p,
                       MisrepresentationModel model, int k,
                       Objective objective, int budget_m = 12);

}  // namespace mw
