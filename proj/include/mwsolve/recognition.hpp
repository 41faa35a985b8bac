// Structure verification and detection: single-peaked (SP) alternative axes,
// single-crossing (SC) voter orders, and deletion certificates for profiles
// that become structured after removing at most t voters or alternatives.
#pragma once

#include <optional>
#include <vector>

#include "mwsolve/core.hpp"

namespace mw {

// Consecutive-ones ordering: find a permutation of columns 1..num_cols under
// which every row's column set occupies contiguous positions, or nullopt if
// none exists. Exact (subset dynamic program over deduplicated column
// classes); throws std::runtime_error when there are more than 24 distinct
// column classes, which is far beyond every supported profile size.
std::optional<std::vector<int>> c1p_order(
    int num_cols, const std::vector<std::vector<int>>& rows);

enum class StructureKind { SinglePeaked, SingleCrossing };
enum class DeletionTarget { Voters, Alternatives };

struct StructureOrder {
  StructureKind kind;
  std::vector<int> order;  // SP: alternative axis; SC: voter order
};

// True iff every voter's preference falls off monotonically on both sides of
// their best alternative along `axis` (approval: every ballot is an interval
// of the axis).
bool check_sp(const PreferenceProfile& p, const std::vector<int>& axis);

// True iff under `voter_order` every alternative's approver set is contiguous
// (approval), or every pair of alternatives has at most one preference
// crossing (linear).
bool check_sc(const PreferenceProfile& p, const std::vector<int>& voter_order);

std::optional<StructureOrder> detect_sp(const PreferenceProfile& p);
std::optional<StructureOrder> detect_sc(const PreferenceProfile& p);

struct DeletionCertificate {
  DeletionTarget kind;
  std::vector<int> deleted;  // sorted original ids, |deleted| <= max_t
  StructureOrder witness;    // order on the reduced, compactly-renumbered profile
};

// Smallest deletion set (ties: lexicographically smallest id set) of at most
// max_t voters/alternatives whose removal leaves a profile with the requested
// structure. Exhaustive and therefore exact; intended for small max_t.
std::optional<DeletionCertificate> find_deletion_set(const PreferenceProfile& p,
                                                     DeletionTarget kind,
                                                     StructureKind structure,
                                                     int max_t);

// Profile surgery. Removal renumbers the survivors 1..n' (1..m') preserving
// their original relative order; *orig_id maps new id -> original id
// (index 0 unused).
PreferenceProfile remove_voters(const PreferenceProfile& p,
                                const std::vector<int>& voters,
                                std::vector<int>* orig_voter_id = nullptr);
PreferenceProfile remove_alternatives(const PreferenceProfile& p,
                                      const std::vector<int>& alts,
                                      std::vector<int>* orig_alt_id = nullptr);
// Voter i of the result is voter order[i-1] of p.
PreferenceProfile reorder_voters(const PreferenceProfile& p,
                                 const std::vector<int>& order);
// Relabel alternatives so that `axis` becomes 1,2,...,m: the alternative at
// axis position i receives id i.
PreferenceProfile relabel_alternatives(const PreferenceProfile& p,
                                       const std::vector<int>& axis);

}  // namespace mw
