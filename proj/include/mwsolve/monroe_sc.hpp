// Polynomial-time Monroe winner determination on single-crossing approval
// profiles: a memoized dynamic program over voter intervals, driven by the
// domination structure (see structure.hpp), plus committee reconstruction
// and a min-cost completion to a full proportional assignment.
//
// The table optionally carries two "weave" dimensions used by the
// nearly-structured solvers (monroe_nearly.hpp):
//  * vbar - a bitmask over up to 8 deleted voters that must be served
//    happily somewhere inside the subtree (voter-deletion FPT extension);
//  * avec - up to 3 packed 8-bit counts of range voters reserved for
//    designated outside alternatives (alternative-deletion XP extension).
// Both are zero for the plain structured solve, which keeps the baseline
// behaviour bit-identical.
#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mwsolve/core.hpp"
#include "mwsolve/structure.hpp"

namespace mw {

// One table configuration. Voter indices are positions in the
// single-crossing order of the context's structure index.
struct DPConfiguration {
  int a = 0, b = 0;        // boundary alternatives (equal, or a earlier than b)
  int i = 1, j = 0;        // voter interval; i=j=0 = flagged-voters-only entry
  int k_hi = 0, k_lo = 0;  // inner members at exactly-ceil / at-most-floor load
  int n_a = 0, n_b = 0;    // happy voters of a resp. b inside the subtree
  int n_star = 0;          // lower bound on unassigned voters inside [i, j]
  int B = 0;               // 1 = alternatives starting before i may be used
  int c_p = 0, i_p = 0, j_p = 0;  // promise triple; (0,0,0) = none
  uint32_t vbar = 0;  // deleted voters that must be served in this subtree
  uint32_t avec = 0;  // packed reserved counts for outside alternatives
};

// Value of one configuration; kNegInf encodes guard violations and
// infeasibility. The maximizing operands are re-derived on demand during
// reconstruction rather than stored per entry, which keeps the memo small.
struct DPEntry {
  long long value = kNegInf;
};

// Packed-count helpers for the avec dimension (3 x 8 bits).
inline int avec_get(uint32_t avec, int z) { return (avec >> (8 * z)) & 0xff; }
inline uint32_t avec_set(uint32_t avec, int z, int v) {
  return (avec & ~(0xffu << (8 * z))) | (static_cast<uint32_t>(v) << (8 * z));
}
inline int avec_size(uint32_t avec) {
  return (avec & 0xff) + ((avec >> 8) & 0xff) + ((avec >> 16) & 0xff);
}

namespace monroe_sc_detail {
struct Key {
  uint64_t lo = 0, hi = 0, ext = 0;
  bool operator==(const Key&) const = default;
};
struct KeyHash {
  size_t operator()(const Key& k) const {
    uint64_t x = k.lo + 0x9e3779b97f4a7c15ull * (k.hi + 1);
    x += 0xd6e8feb86659fd93ull * (k.ext + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    return static_cast<size_t>(x ^ (x >> 31));
  }
};
using Memo = std::unordered_map<Key, long long, KeyHash>;
}  // namespace monroe_sc_detail

struct MonroeScStats {
  size_t table_entries = 0;  // memoized configurations
  size_t aux_entries = 0;    // suffix-maximum helper entries
  double seconds = 0.0;
};

// Solver state: structure index, load arithmetic, and memo stores. One solve
// owns one context; separate contexts are independent.
struct MonroeScContext {
  StructureIndex ix;
  int k = 0;
  int floor_load = 0, ceil_load = 0, n_mod_k = 0;
  bool check_order = false;  // assert that recursive calls strictly descend

  // Deleted-voter weave: flag bits 0..weave_t-1; appr_flag[a] = mask of
  // deleted voters approving alternative a (by their original ballots).
  int weave_t = 0;
  std::vector<uint32_t> appr_flag;

  // Outside-alternative weave: weave_ta reserved dimensions; acap[z] = load
  // cap of dimension z; dalt_mask[q] = dimensions approved by the voter at
  // position q of the single-crossing order.
  int weave_ta = 0;
  std::array<int, 3> acap{0, 0, 0};
  std::vector<uint32_t> dalt_mask;

  monroe_sc_detail::Memo memo;
  monroe_sc_detail::Memo aux;
  std::unordered_map<uint64_t, std::vector<int>> usable_cache;      // full sets
  std::unordered_map<uint64_t, std::vector<int>> top_usable_cache;  // level-1
  std::unordered_map<uint64_t, std::vector<int>> inbet_hat_cache;
};

// Throws std::invalid_argument for non-approval or non-SC input, k outside
// [1, m], or instances beyond the packed-key limits (n, m <= 255). load_n
// overrides the voter count used for the load arithmetic (floor/ceil/mod);
// -1 means p.n. The nearly-structured solvers pass the full pre-deletion
// count so that loads refer to the complete electorate.
MonroeScContext make_monroe_sc_context(const PreferenceProfile& p,
                                       const std::vector<int>& sc_order, int k,
                                       int load_n = -1);

// Memoized table lookup; computes the entry and its dependencies on demand.
DPEntry table_entry(MonroeScContext& ctx, const DPConfiguration& cfg);

// Best admissible top-level configuration: at most `slots` committee members
// inside the structure, at most `ceil_budget` of them at ceiling load, and
// exactly the given weave arguments on the top entry. Scans in a fixed
// deterministic order; stops early once `stop_at` is reached.
struct MonroeScAggregate {
  long long value = kNegInf;
  DPConfiguration cfg;  // valid only when value > kNegInf
};
MonroeScAggregate monroe_sc_aggregate(MonroeScContext& ctx, int slots,
                                      int ceil_budget, uint32_t vbar,
                                      uint32_t avec,
                                      long long stop_at = kPosInf);

// Re-derives one maximizing decomposition of cfg (whose value must equal
// `value`) and returns the structure members it uses, in the context's
// alternative ids.
std::vector<int> monroe_sc_replay_members(MonroeScContext& ctx,
                                          const DPConfiguration& cfg,
                                          long long value);

// Full sum-objective solve against an already-built context, in the
// context's voter space (positions of the single-crossing order). Lets
// callers flip ctx.check_order before solving and inspect the memo after.
Solution solve_prepared(MonroeScContext& ctx, MonroeScStats* stats = nullptr);

// Optimal proportional k-assignment minimizing total approval
// misrepresentation; score = n - (maximum happy voters).
Solution solve_monroe_sc_sum(const PreferenceProfile& p,
                             const std::vector<int>& sc_order, int k,
                             MonroeScStats* stats = nullptr);

// Minimax variant: approval misrepresentation makes the optimum 0 or 1, so
// the sum solution is reused and only the score is reinterpreted.
Solution solve_monroe_sc_max(const PreferenceProfile& p,
                             const std::vector<int>& sc_order, int k,
                             MonroeScStats* stats = nullptr);

}  // namespace mw
