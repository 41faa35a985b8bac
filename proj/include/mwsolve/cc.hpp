// Chamberlin-Courant winner determination on structured and nearly-structured
// profiles: exact polynomial solvers for single-peaked (SP) and
// single-crossing (SC) inputs, fixed-parameter solvers for profiles that
// become structured once a small set of voters is deleted, and the
// max-objective wrapper built on the threshold reduction to approval ballots.
#pragma once

#include <vector>

#include "mwsolve/core.hpp"
#include "mwsolve/recognition.hpp"

namespace mw {

// Total improvement for `voters` when alternative j_new joins a committee
// whose best alternative so far was j_old:
// sum_v max(rho(v, j_old) - rho(v, j_new), 0).
// For approval ballots this counts the voters approving j_new but not j_old.
long long cc_diff(const PreferenceProfile& p, MisrepresentationModel model,
                  const std::vector<int>& voters, int j_new, int j_old);

// Alternative order used by the SC block dynamic program on approval ballots:
// ascending position of the first approving voter, ties broken by descending
// position of the last approving voter, then ascending id. Alternatives
// approved by nobody in `voter_at` go last. `voter_at[i]` is the voter id
// occupying SC position i+1; it may cover a subset of the profile's voters.
std::vector<int> sc_block_alt_order(const PreferenceProfile& p,
                                    const std::vector<int>& voter_at);

// Optimal CC committee of size k for a profile that is single-peaked under
// `sp_order` (axis of alternative ids). Works for approval and linear
// ballots; Objective::Max on linear ballots runs the threshold-reduction
// binary search. Throws std::invalid_argument for non-SP input or bad k.
Solution solve_cc_sp(const PreferenceProfile& p,
                     const std::vector<int>& sp_order, int k,
                     Objective objective);

// Optimal CC committee of size k for a profile that is single-crossing under
// `sc_order` (voter order). Voters are assigned in contiguous blocks to
// committee members taken in block order. Objective::Max on linear ballots
// binary-searches the threshold reduction; when a reduced approval profile is
// not single-crossing under any detectable voter order, that probe falls back
// to the exhaustive solver and the method string records it.
Solution solve_cc_sc(const PreferenceProfile& p,
                     const std::vector<int>& sc_order, int k,
                     Objective objective);

// Exact CC solvers for profiles that become SP/SC after deleting the
// certificate's voters. The certificate must delete voters, carry a witness
// of the matching structure kind, and re-validate against the reduced
// profile; otherwise std::invalid_argument is thrown. Scores count every
// voter, deleted ones included. All four return Objective::Sum solutions.
Solution solve_cc_nearsp_approval(const PreferenceProfile& p,
                                  const DeletionCertificate& cert, int k);
Solution solve_cc_nearsp_linear(const PreferenceProfile& p,
                                const DeletionCertificate& cert, int k);
Solution solve_cc_nearsc_approval(const PreferenceProfile& p,
                                  const DeletionCertificate& cert, int k);
Solution solve_cc_nearsc_linear(const PreferenceProfile& p,
                                const DeletionCertificate& cert, int k);

// Max-objective CC for nearly-structured profiles. Approval inputs
// short-circuit through the matching sum solver (the optimum is 0 or 1).
// Linear inputs binary-search the threshold reduction; the reduction
// preserves the SP axis, while on the SC side each probe checks whether the
// reduced profile (minus the deleted voters) is still single-crossing and
// falls back to the exhaustive solver when it is not. The method string
// reports which path ran.
Solution solve_cc_near_max(const PreferenceProfile& p,
                           const DeletionCertificate& cert, int k,
                           ReductionStats* stats = nullptr);

namespace cc_detail {

// Dynamic-programming table of the nearly-SP approval solver, exposed so the
// property tests can check structural invariants of the entries.
// value(k', q, tmask) is the best total misrepresentation (all voters) of a
// committee of exactly k' alternatives drawn from axis positions [1..q],
// containing position q, whose members' deleted-voter types are exactly the
// types selected by tmask; kInfCost when no such committee exists.
struct A1Table {
  int m = 0;
  int kmax = 0;
  int num_types = 0;                // distinct deleted-voter types
  std::vector<int> type_of_pos;     // axis position (1-based) -> type index
  std::vector<long long> leftover;  // type-set mask -> uncovered deleted voters
  std::vector<long long> value;
  std::vector<int> bp_pos;          // backpointer: previous axis position
  std::vector<int> bp_mask;         // backpointer: previous type-set mask
  long long at(int kprime, int q, int tmask) const;
  size_t index(int kprime, int q, int tmask) const;
};

constexpr long long kInfCost = 1LL << 60;

A1Table build_a1_table(const PreferenceProfile& p,
                       const DeletionCertificate& cert, int k);

}  // namespace cc_detail

}  // namespace mw
