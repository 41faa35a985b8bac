#pragma once

#include <string>
#include <vector>

#include "mwsolve/core.hpp"

namespace mw {

// Structural layer for approval profiles whose voters stand in a
// single-crossing order. build_index() permutes the input profile by
// `sc_order`; every voter index used by the operations below (intervals,
// assignments, partial solutions) refers to a *position* in that order,
// 1-based: position p corresponds to input voter sc_order[p-1].
//
// Alternatives with an empty approval set can never be happily assigned; they
// are excluded from all relation tables (recorded in `empty_alternatives`)
// and from canonical orders. Committee members with empty approval sets are
// tolerated by the solution-level operations and simply carry no happy
// voters.
//
// Duplicate approval sets are ordered by id: when A(a) == A(b) and a < b, a
// counts as dominating b. This keeps Dom a strict partial order and keeps
// Incom = Earlier ⊎ Later exact, while preserving A(sub) ⊆ A(dom), the only
// containment the assignment-exchange arguments rely on.
struct StructureIndex {
  PreferenceProfile prof;  // owned copy, voters permuted into the SC order
  int n = 0;
  int m = 0;
  std::vector<int> leftmost;   // l(a): first approving position; 0 if none
  std::vector<int> rightmost;  // r(a): last approving position; 0 if none
  std::vector<char> active;    // [0..m]; true iff A(a) is nonempty
  std::vector<int> empty_alternatives;  // ids with empty approval, ascending

  // Relation tables, each size m+1 with sorted ascending member lists.
  // dom[a] = alternatives dominating a; sub[a] = alternatives a dominates.
  std::vector<std::vector<int>> dom, sub, incom, earlier, later;

  std::vector<int> level;            // within the active set; 0 if inactive
  std::vector<int> canonical_order;  // active ids sorted by (level, leftmost)

  bool approves(int v, int a) const { return prof.approves(v, a); }
  // Strict containment A(b) ⊂ A(a), with id as the tie-break on equal sets.
  bool dominates(int a, int b) const;
  bool is_incomparable(int a, int b) const;
  bool in_earlier(int a, int b) const;  // a ∈ Earlier(b)
};

// Requires an approval profile that passes check_sc under sc_order; throws
// std::invalid_argument otherwise.
StructureIndex build_index(const PreferenceProfile& p,
                           const std::vector<int>& sc_order);

// Members of `subset` undominated within `subset` (its level-1 slice).
std::vector<int> level_one_within(const StructureIndex& ix,
                                  const std::vector<int>& subset);

// `subset` ordered by (level within subset, leftmost). Inactive ids are
// dropped.
std::vector<int> canonical_order_of(const StructureIndex& ix,
                                    const std::vector<int>& subset);

// Alternatives incomparable to both a and b whose approval sets lie inside
// [l(a), r(b)]; inbet_hat keeps the undominated ones (within the set).
std::vector<int> inbet(const StructureIndex& ix, int a, int b);
std::vector<int> inbet_hat(const StructureIndex& ix, int a, int b);

// The usable set U(c, i, j, c', i', j'). The sentinel c' = i' = j' = 0 means
// "no outer promise": the set is computed for (c, i, j, c, i, j). If the
// guard fails — c' neither c nor a dominator of c, or [i,j] ⊄ A(c) ∩ [i',j'],
// or [i',j'] ⊄ A(c') — the result is empty. top_usable keeps the members
// undominated within the result.
std::vector<int> usable_set(const StructureIndex& ix, int c, int i, int j,
                            int cp, int ip, int jp);
std::vector<int> top_usable(const StructureIndex& ix, int c, int i, int j,
                            int cp, int ip, int jp);

// --- Solution-level machinery -----------------------------------------------

// Happy voters of alternative a: assigned to a inside [i_hat, j_hat] and
// approving a. Positions ascending.
std::vector<int> happy_voters(const StructureIndex& ix,
                              const PartialHappyAssignment& p, int a);

// Alternatives with at least one happy voter, ascending.
std::vector<int> used_alternatives(const StructureIndex& ix,
                                   const PartialHappyAssignment& p);

// Sum of misrepresentation over assigned voters (number of assigned voters
// that do not approve their alternative).
long long partial_misrep(const StructureIndex& ix,
                         const PartialHappyAssignment& p);

struct VoterInterval {
  int i = 1, j = 0;  // empty iff i > j; canonical empty form is (1, 0)
  bool empty() const { return i > j; }
  bool contains(int v) const { return i <= v && v <= j; }
};

struct IntervalCollection {
  // Active committee members in canonical order, with one interval each.
  std::vector<int> members;
  std::vector<VoterInterval> intervals;
  // (j_1..j_t, -i_1..-i_t); an empty interval contributes (0, -1).
  std::vector<long long> signature() const;
};

// The six goodness conditions for `coll` against partial solution `p`.
// coll.members must equal canonical_order_of(ix, active committee members of
// p); throws std::invalid_argument otherwise.
bool is_good_collection(const StructureIndex& ix,
                        const PartialHappyAssignment& p,
                        const IntervalCollection& coll);

// The unique signature-maximal good collection of an NT partial solution.
// Starts from the per-alternative happy-voter spans and extends right
// endpoints in canonical priority order, then left endpoints. Throws
// std::invalid_argument if p does not verify the NT conditions.
IntervalCollection maximally_good(const StructureIndex& ix,
                                  const PartialHappyAssignment& p);

struct StructureReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks the monotone clauses (i)/(ii) with respect to alternative set A and
// the neat-ordering clauses (i)/(ii) for every pair of used alternatives.
// Reports every violated clause. Throws std::invalid_argument on malformed
// input (assignment outside the window or to a non-committee alternative).
StructureReport verify_mnt(const StructureIndex& ix,
                           const PartialHappyAssignment& p,
                           const std::vector<int>& a_set);

// Repairs p into a partial solution that verifies MNT with respect to a_set,
// never increasing total misrepresentation: first the monotone repair
// (replace a dominated member / swap a dominated pair's voters), then the
// endpoint exchange for incomparable pairs, then the conflict-set loop for
// dominating pairs.
PartialHappyAssignment mnt_transform(const StructureIndex& ix,
                                     PartialHappyAssignment p,
                                     const std::vector<int>& a_set);

// Invariants of the maximally good collection of an NT partial solution:
// (a) every h-assignable voter in the window lies in some interval;
// (b) a used alternative with a used dominator owning a nonempty interval
//     has its interval contained in some used dominator's interval;
// (c) for used a_x, a_y with a_y dominating a_x and the intervals not
//     nested, a witness a_z exists: a_z dominates a_x, is not dominated by
//     a_y, its interval contains [i_x, j_x] and avoids [i_y, j_y], and a_z
//     has a happy voter in the gap ([j_y+1, i_x-1] resp. [1, i_y-1]).
// Throws std::invalid_argument if p does not verify the NT conditions.
StructureReport check_interval_lemmas(const StructureIndex& ix,
                                      const PartialHappyAssignment& p);

}  // namespace mw
