#pragma once

#include <cstddef>

#include "mwsolve/core.hpp"
#include "mwsolve/recognition.hpp"

namespace mw {

// Instrumentation for the nearly-structured Monroe solvers.
struct MonroeNearlyStats {
  size_t guesses = 0;        // outer guess combinations enumerated
  size_t table_entries = 0;  // weave table entries summed over all contexts
  size_t vbar_values = 0;    // distinct deleted-voter flag sets aggregated
};

// Monroe winner determination when deleting the certified voters leaves a
// single-peaked profile. Guesses the happy subset of the deleted voters and
// an ordered partition of it into groups, places the groups on committee
// members along the axis, and completes each placement with an exact
// min-cost assignment of the remaining voters. Approval ballots support both
// objectives; linear ballots support only Max (threshold reduction to the
// approval path). Throws std::invalid_argument for certificate or input
// violations and when the enumeration exceeds the built-in budget.
Solution solve_monroe_nearsp(const PreferenceProfile& p,
                             const DeletionCertificate& cert, int k,
                             Objective objective,
                             MonroeNearlyStats* stats = nullptr);

// Monroe winner determination when deleting the certified voters leaves a
// single-crossing profile (approval only). Runs the single-crossing Monroe
// table extended with deleted-voter flags, plus an explicit enumeration of
// committee members that serve deleted voters exclusively; the final score is
// re-validated by an exact completion of the reconstructed committee.
Solution solve_monroe_nearsc(const PreferenceProfile& p,
                             const DeletionCertificate& cert, int k,
                             Objective objective,
                             MonroeNearlyStats* stats = nullptr);

// Monroe winner determination when deleting the certified alternatives
// leaves a single-peaked or single-crossing profile (approval only;
// `structure` selects the branch and must match the witness). The
// single-peaked branch guesses which deleted alternatives join the committee
// and completes every surviving-alternative committee exactly; the
// single-crossing branch guesses capacity classes for the deleted
// alternatives and runs the table extended with reserved-count vectors.
// Deleting more than max_t alternatives throws std::invalid_argument; the
// single-crossing branch additionally supports at most 3.
Solution solve_monroe_xp_alts(const PreferenceProfile& p,
                              const DeletionCertificate& cert, int k,
                              Objective objective, StructureKind structure,
                              int max_t = 3,
                              MonroeNearlyStats* stats = nullptr);

}  // namespace mw
