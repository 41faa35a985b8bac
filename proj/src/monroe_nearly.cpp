#include "mwsolve/monroe_nearly.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mwsolve/monroe_sc.hpp"
#include "mwsolve/oracle.hpp"
#include "mwsolve/structure.hpp"

namespace mw {
namespace {

// Upper bound on (guesses x exact completions) before the enumerative
// solvers refuse the instance instead of running for hours.
constexpr long long kEnumBudget = 2'000'000;

long long binom_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Certificate validation, mirroring the conventions of the other
// nearly-structured solvers.
// ---------------------------------------------------------------------------

struct NearVoters {
  PreferenceProfile reduced;   // surviving voters renumbered 1..n_R
  std::vector<int> orig_vid;   // reduced voter id -> original id (0 unused)
  std::vector<int> deleted;    // original ids, ascending
  std::vector<int> rest;       // original ids of surviving voters, ascending
};

NearVoters validate_near_voters(const PreferenceProfile& p,
                                const DeletionCertificate& cert,
                                StructureKind want, BallotKind kind, int k) {
  if (k < 1 || k > p.m) throw std::invalid_argument("k must be in [1, m]");
  if (p.kind != kind)
    throw std::invalid_argument(kind == BallotKind::Approval
                                    ? "solver requires approval ballots"
                                    : "solver requires linear ballots");
  if (cert.kind != DeletionTarget::Voters)
    throw std::invalid_argument("certificate must delete voters");
  if (cert.witness.kind != want)
    throw std::invalid_argument(
        "certificate witness has the wrong structure kind");
  NearVoters nv;
  nv.deleted = cert.deleted;
  for (size_t i = 0; i < nv.deleted.size(); ++i) {
    int v = nv.deleted[i];
    if (v < 1 || v > p.n || (i > 0 && nv.deleted[i - 1] >= v))
      throw std::invalid_argument("certificate fails re-validation");
  }
  if (static_cast<int>(nv.deleted.size()) > 8)
    throw std::invalid_argument(
        "deletion set larger than the supported maximum of 8 voters");
  nv.reduced = remove_voters(p, nv.deleted, &nv.orig_vid);
  int expect = want == StructureKind::SinglePeaked ? p.m : nv.reduced.n;
  if (static_cast<int>(cert.witness.order.size()) != expect)
    throw std::invalid_argument("certificate fails re-validation");
  bool ok = want == StructureKind::SinglePeaked
                ? check_sp(nv.reduced, cert.witness.order)
                : check_sc(nv.reduced, cert.witness.order);
  if (!ok) throw std::invalid_argument("certificate fails re-validation");
  std::vector<char> del(p.n + 1, 0);
  for (int v : nv.deleted) del[v] = 1;
  for (int v = 1; v <= p.n; ++v)
    if (!del[v]) nv.rest.push_back(v);
  return nv;
}

struct NearAlts {
  PreferenceProfile reduced;  // surviving alternatives renumbered 1..m_red
  std::vector<int> orig_aid;  // reduced alternative id -> original id
  std::vector<int> deleted;   // original ids, ascending
};

NearAlts validate_near_alts(const PreferenceProfile& p,
                            const DeletionCertificate& cert,
                            StructureKind want, int k, int max_t) {
  if (k < 1 || k > p.m) throw std::invalid_argument("k must be in [1, m]");
  if (p.kind != BallotKind::Approval)
    throw std::invalid_argument("solver requires approval ballots");
  if (cert.kind != DeletionTarget::Alternatives)
    throw std::invalid_argument("certificate must delete alternatives");
  if (cert.witness.kind != want)
    throw std::invalid_argument(
        "certificate witness has the wrong structure kind");
  NearAlts na;
  na.deleted = cert.deleted;
  for (size_t i = 0; i < na.deleted.size(); ++i) {
    int a = na.deleted[i];
    if (a < 1 || a > p.m || (i > 0 && na.deleted[i - 1] >= a))
      throw std::invalid_argument("certificate fails re-validation");
  }
  if (static_cast<int>(na.deleted.size()) > max_t)
    throw std::invalid_argument(
        "certificate deletes more alternatives than the configured cap");
  if (static_cast<int>(na.deleted.size()) == p.m) {
    // Every alternative is deleted: the reduced profile is empty and
    // vacuously structured; only the witness shape can be checked.
    na.reduced.kind = p.kind;
    na.reduced.n = p.n;
    na.reduced.m = 0;
    na.reduced.ballots.assign(p.n + 1, {});
    na.orig_aid = {0};
    int expect = want == StructureKind::SinglePeaked ? 0 : p.n;
    if (static_cast<int>(cert.witness.order.size()) != expect)
      throw std::invalid_argument("certificate fails re-validation");
    std::vector<char> seen(expect + 1, 0);
    for (int x : cert.witness.order) {
      if (x < 1 || x > expect || seen[x])
        throw std::invalid_argument("certificate fails re-validation");
      seen[x] = 1;
    }
    return na;
  }
  na.reduced = remove_alternatives(p, na.deleted, &na.orig_aid);
  int expect = want == StructureKind::SinglePeaked ? na.reduced.m : p.n;
  if (static_cast<int>(cert.witness.order.size()) != expect)
    throw std::invalid_argument("certificate fails re-validation");
  bool ok = want == StructureKind::SinglePeaked
                ? check_sp(na.reduced, cert.witness.order)
                : check_sc(na.reduced, cert.witness.order);
  if (!ok) throw std::invalid_argument("certificate fails re-validation");
  return na;
}

// ---------------------------------------------------------------------------
// Nearly-single-peaked Monroe, voter deletion: guess the happy deleted
// voters and an ordered partition of them into groups, pin each group to a
// committee member along the axis, and complete exactly.
// ---------------------------------------------------------------------------

// Calls fn for every ordered partition of `items` into nonempty groups
// (bitmasks over the deleted-voter indices). The empty item list yields the
// single empty partition.
void for_each_ordered_partition(
    const std::vector<int>& items,
    const std::function<void(const std::vector<uint32_t>&)>& fn) {
  const int h = static_cast<int>(items.size());
  if (h == 0) {
    fn({});
    return;
  }
  std::vector<int> label(h, 0);
  std::function<void(int, int)> rec = [&](int i, int g) {
    if (i == h) {
      std::vector<uint32_t> base(g, 0);
      for (int q = 0; q < h; ++q) base[label[q]] |= 1u << items[q];
      std::vector<int> perm(g);
      for (int q = 0; q < g; ++q) perm[q] = q;
      do {
        std::vector<uint32_t> ordered(g);
        for (int q = 0; q < g; ++q) ordered[q] = base[perm[q]];
        fn(ordered);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int l = 0; l <= g; ++l) {
      label[i] = l;
      rec(i + 1, std::max(g, l + 1));
    }
  };
  rec(0, 0);
}

// Number of ordered partitions of an h-element set (0 -> 1).
long long ordered_partition_count(int h) {
  std::vector<long long> fub(h + 1, 0);
  fub[0] = 1;
  for (int s = 1; s <= h; ++s) {
    for (int i = 1; i <= s; ++i) fub[s] += binom_capped(s, i, kEnumBudget) * fub[s - i];
  }
  return fub[h];
}

Solution nearsp_sum(const PreferenceProfile& p, const NearVoters& nv, int k,
                    const std::vector<int>& axis, MonroeNearlyStats* stats) {
  const int t = static_cast<int>(nv.deleted.size());
  const int ceil_load = (p.n + k - 1) / k;

  // Deleted voters approving each alternative (original ballots).
  std::vector<uint32_t> dmask(p.m + 1, 0);
  for (int z = 0; z < t; ++z)
    for (int a : p.ballots[nv.deleted[z]]) dmask[a] |= 1u << z;

  // Enumeration budget: (happy set, ordered partition) guesses times
  // committees, before any flow work.
  long long guess_bound = 0;
  for (int h = 0; h <= t; ++h)
    guess_bound += binom_capped(t, h, kEnumBudget) * ordered_partition_count(h);
  long long committees = binom_capped(p.m, k, kEnumBudget);
  if (guess_bound > kEnumBudget || committees > kEnumBudget ||
      guess_bound * committees > kEnumBudget)
    throw std::invalid_argument(
        "instance exceeds the nearly-structured enumeration budget");

  std::unordered_map<uint32_t, bool> has_common;
  auto common_ok = [&](uint32_t blk) {
    auto it = has_common.find(blk);
    if (it != has_common.end()) return it->second;
    bool ok = false;
    for (int a = 1; a <= p.m && !ok; ++a) ok = (dmask[a] & blk) == blk;
    return has_common.emplace(blk, ok).first->second;
  };

  std::vector<int> pos(p.m + 1, 0);
  for (size_t i = 0; i < axis.size(); ++i) pos[axis[i]] = static_cast<int>(i);

  long long best = -1;
  std::vector<int> best_committee, best_assignment;
  std::vector<int> preload(p.m + 1, 0), assign(p.n + 1, 0);

  for (uint32_t happy = 0; happy < (1u << t); ++happy) {
    std::vector<int> items;
    for (int z = 0; z < t; ++z)
      if ((happy >> z) & 1) items.push_back(z);
    // Free voters under this happy guess: survivors plus unhappy deleted.
    std::vector<int> free_voters = nv.rest;
    for (int z = 0; z < t; ++z)
      if (!((happy >> z) & 1)) free_voters.push_back(nv.deleted[z]);
    std::sort(free_voters.begin(), free_voters.end());

    for_each_ordered_partition(items, [&](const std::vector<uint32_t>& blocks) {
      if (stats != nullptr) ++stats->guesses;
      const int g = static_cast<int>(blocks.size());
      if (g > k) return;
      for (uint32_t blk : blocks) {
        if (std::popcount(blk) > ceil_load || !common_ok(blk)) return;
      }
      for_each_committee(p.m, k, [&](const std::vector<int>& W) {
        std::vector<int> byaxis = W;
        std::sort(byaxis.begin(), byaxis.end(),
                  [&](int x, int y) { return pos[x] < pos[y]; });
        // Choose g of the k members in axis order; group q goes to choice q.
        std::vector<int> idx(g);
        for (int q = 0; q < g; ++q) idx[q] = q;
        while (true) {
          bool fits = true;
          for (int q = 0; q < g && fits; ++q) {
            int mem = byaxis[idx[q]];
            fits = (dmask[mem] & blocks[q]) == blocks[q];
          }
          if (fits) {
            std::fill(preload.begin(), preload.end(), 0);
            for (int q = 0; q < g; ++q)
              preload[byaxis[idx[q]]] += std::popcount(blocks[q]);
            std::fill(assign.begin(), assign.end(), 0);
            auto added =
                monroe_complete(p, MisrepresentationModel::ApprovalBinary, k,
                                W, preload, free_voters, assign);
            if (added.has_value() && (best < 0 || *added < best)) {
              best = *added;
              best_committee = W;
              best_assignment = assign;
              for (int q = 0; q < g; ++q) {
                for (int z = 0; z < t; ++z) {
                  if ((blocks[q] >> z) & 1)
                    best_assignment[nv.deleted[z]] = byaxis[idx[q]];
                }
              }
            }
          }
          int q = g - 1;
          while (q >= 0 && idx[q] == k - g + q) --q;
          if (q < 0) break;
          ++idx[q];
          for (int r = q + 1; r < g; ++r) idx[r] = idx[r - 1] + 1;
        }
      });
    });
  }
  if (best < 0)
    throw std::logic_error("no feasible proportional completion was found");
  long long check = 0;
  for (int v = 1; v <= p.n; ++v)
    check +=
        misrep(p, MisrepresentationModel::ApprovalBinary, v, best_assignment[v]);
  if (check != best)
    throw std::logic_error("completion bookkeeping disagrees with the assignment");

  Solution s;
  s.rule = Rule::Monroe;
  s.objective = Objective::Sum;
  s.k = k;
  s.score = best;
  s.committee = best_committee;
  s.assignment = best_assignment;
  s.method = "monroe_nearsp";
  return s;
}

// ---------------------------------------------------------------------------
// Nearly-single-crossing Monroe, voter deletion: weave the deleted-voter
// flags through the single-crossing table, and enumerate explicitly the
// committee members that serve deleted voters exclusively (such members are
// invisible to the table because no surviving voter uses them).
// ---------------------------------------------------------------------------

PreferenceProfile blank_alternatives(const PreferenceProfile& r,
                                     const std::vector<int>& alts) {
  std::vector<char> drop(r.m + 1, 0);
  for (int a : alts) drop[a] = 1;
  std::vector<std::vector<int>> sets(r.n);
  for (int v = 1; v <= r.n; ++v) {
    for (int a : r.ballots[v])
      if (!drop[a]) sets[v - 1].push_back(a);
  }
  return make_approval_profile(r.n, r.m, std::move(sets));
}

Solution nearsc_sum(const PreferenceProfile& p, const NearVoters& nv,
                    const std::vector<int>& order, int k,
                    MonroeNearlyStats* stats) {
  const int t = static_cast<int>(nv.deleted.size());
  const int n = p.n, m = p.m;
  const int ceil_load = (n + k - 1) / k;
  const int n_mod_k = n % k;
  const uint32_t full = t == 0 ? 0u : ((1u << t) - 1u);

  std::vector<uint32_t> appr_flag(m + 1, 0);
  for (int z = 0; z < t; ++z)
    for (int a : p.ballots[nv.deleted[z]]) appr_flag[a] |= 1u << z;

  // Alternatives that can serve deleted voters exclusively.
  std::vector<int> cand;
  for (int a = 1; a <= m; ++a)
    if (appr_flag[a] != 0) cand.push_back(a);
  const int xcap = std::min(t, k);

  // Exclusive-member sets in increasing size, lexicographic within a size.
  std::vector<std::vector<int>> xsets;
  xsets.push_back({});
  for (int s = 1; s <= xcap; ++s) {
    std::vector<int> comb(s);
    std::function<void(int, int)> rec = [&](int start, int d) {
      if (d == s) {
        xsets.push_back(comb);
        return;
      }
      for (int i = start; i < static_cast<int>(cand.size()); ++i) {
        comb[d] = cand[i];
        rec(i + 1, d + 1);
      }
    };
    rec(0, 0);
  }
  if (static_cast<long long>(xsets.size()) * (1LL << t) * (1LL << t) >
      kEnumBudget)
    throw std::invalid_argument(
        "instance exceeds the nearly-structured enumeration budget");

  struct BestClaim {
    long long value = kNegInf;
    std::vector<int> xalts;
    bool has_cfg = false;
    DPConfiguration cfg;
    long long dpval = 0;
  };
  BestClaim best;
  std::set<uint32_t> vbar_seen;

  for (const std::vector<int>& xalts : xsets) {
    const int kslots = k - static_cast<int>(xalts.size());
    std::optional<MonroeScContext> ctx;
    if (nv.reduced.n > 0 && kslots > 0) {
      PreferenceProfile blanked = blank_alternatives(nv.reduced, xalts);
      ctx.emplace(make_monroe_sc_context(blanked, order, k, /*load_n=*/n));
      ctx->weave_t = t;
      ctx->appr_flag = appr_flag;
    }
    std::vector<uint32_t> plan(xalts.size(), 0);
    std::function<void(size_t, uint32_t)> rec = [&](size_t xi, uint32_t used) {
      if (xi == xalts.size()) {
        int forced_ceil = 0;
        for (uint32_t sx : plan)
          if (n_mod_k != 0 && std::popcount(sx) == ceil_load) ++forced_ceil;
        int ceil_budget = n_mod_k - forced_ceil;
        if (ceil_budget < 0) return;
        long long exclusive_happy = std::popcount(used);
        for (uint32_t vbar = 0;; ++vbar) {
          if ((vbar & used) == 0) {
            if (stats != nullptr) ++stats->guesses;
            long long dp;
            bool has_cfg = false;
            DPConfiguration cfg;
            if (ctx.has_value()) {
              vbar_seen.insert(vbar);
              MonroeScAggregate agg =
                  monroe_sc_aggregate(*ctx, kslots, ceil_budget, vbar, 0);
              dp = agg.value;
              if (dp != kNegInf && agg.cfg.a != 0) {
                has_cfg = true;
                cfg = agg.cfg;
              }
            } else {
              dp = vbar == 0 ? 0 : kNegInf;
            }
            if (dp != kNegInf && dp + exclusive_happy > best.value) {
              best.value = dp + exclusive_happy;
              best.xalts = xalts;
              best.has_cfg = has_cfg;
              best.cfg = cfg;
              best.dpval = dp;
            }
          }
          if (vbar == full) break;
        }
        return;
      }
      uint32_t allowed = appr_flag[xalts[xi]] & ~used;
      for (uint32_t sx = allowed;; sx = (sx - 1) & allowed) {
        if (sx != 0 && std::popcount(sx) <= ceil_load) {
          plan[xi] = sx;
          rec(xi + 1, used | sx);
        }
        if (sx == 0) break;
      }
    };
    rec(0, 0);
    if (ctx.has_value() && stats != nullptr)
      stats->table_entries += ctx->memo.size();
  }
  if (stats != nullptr) stats->vbar_values = vbar_seen.size();
  if (best.value == kNegInf)
    throw std::logic_error("no admissible table aggregation was found");

  // Reconstruction: replay the table members, add the exclusive members, pad,
  // and re-validate with an exact completion of the full electorate.
  std::set<int> comm(best.xalts.begin(), best.xalts.end());
  if (best.has_cfg) {
    PreferenceProfile blanked = blank_alternatives(nv.reduced, best.xalts);
    MonroeScContext ctx = make_monroe_sc_context(blanked, order, k, n);
    ctx.weave_t = t;
    ctx.appr_flag = appr_flag;
    for (int a : monroe_sc_replay_members(ctx, best.cfg, best.dpval))
      comm.insert(a);
  }
  if (static_cast<int>(comm.size()) > k)
    throw std::logic_error(
        "reconstruction produced more members than the committee size");
  std::vector<int> committee(comm.begin(), comm.end());
  for (int a = 1; a <= m && static_cast<int>(committee.size()) < k; ++a)
    if (!comm.count(a)) committee.push_back(a);
  std::sort(committee.begin(), committee.end());
  Solution sol = monroe_assign_committee(
      p, MisrepresentationModel::ApprovalBinary, k, committee, Objective::Sum);
  if (sol.score != static_cast<long long>(n) - best.value)
    throw std::logic_error("table optimum and completed assignment disagree");
  sol.method = "monroe_nearsc";
  return sol;
}

// ---------------------------------------------------------------------------
// Alternative deletion, single-peaked branch: guess which deleted
// alternatives join the committee and complete every surviving-alternative
// committee exactly (the completion is the min-cost routing that also serves
// voters through the deleted members).
// ---------------------------------------------------------------------------

Solution xp_sp(const PreferenceProfile& p, const NearAlts& na, int k,
               MonroeNearlyStats* stats) {
  const int t = static_cast<int>(na.deleted.size());
  const int m_red = na.reduced.m;

  long long total = 0;
  for (uint32_t dm = 0; dm < (1u << t); ++dm) {
    int kslots = k - std::popcount(dm);
    if (kslots < 0 || kslots > m_red) continue;
    total += binom_capped(m_red, kslots, kEnumBudget);
    if (total > kEnumBudget)
      throw std::invalid_argument(
          "instance exceeds the nearly-structured enumeration budget");
  }

  bool have = false;
  Solution best;
  for (uint32_t dm = 0; dm < (1u << t); ++dm) {
    if (stats != nullptr) ++stats->guesses;
    int kslots = k - std::popcount(dm);
    if (kslots < 0 || kslots > m_red) continue;
    std::vector<int> dal;
    for (int z = 0; z < t; ++z)
      if ((dm >> z) & 1) dal.push_back(na.deleted[z]);
    auto eval = [&](const std::vector<int>& sub) {
      std::vector<int> W = dal;
      for (int a : sub) W.push_back(na.orig_aid[a]);
      std::sort(W.begin(), W.end());
      Solution sol = monroe_assign_committee(
          p, MisrepresentationModel::ApprovalBinary, k, W, Objective::Sum);
      if (!have || sol.score < best.score) {
        have = true;
        best = sol;
      }
    };
    if (kslots == 0) {
      eval({});
    } else {
      for_each_committee(m_red, kslots, eval);
    }
  }
  if (!have)
    throw std::logic_error("no committee guess produced a feasible completion");
  best.method = "monroe_xp_alts(sp)";
  return best;
}

// ---------------------------------------------------------------------------
// Alternative deletion, single-crossing branch: guess each deleted
// alternative's capacity class, run the table with reserved-count vectors,
// and stitch the reserved service of the voters left and right of the
// aggregated interval through reserved-only range entries.
// ---------------------------------------------------------------------------

// All packed vectors componentwise between 0 and caps with total at most
// sum_cap, in ascending mixed-radix order (0 first).
std::vector<uint32_t> packed_subvectors(uint32_t caps, int sum_cap) {
  std::vector<uint32_t> out;
  uint32_t s = 0;
  while (true) {
    if (avec_size(s) <= sum_cap) out.push_back(s);
    int z = 0;
    for (; z < 3; ++z) {
      int sv = avec_get(s, z), cv = avec_get(caps, z);
      if (sv < cv) {
        s = avec_set(s, z, sv + 1);
        break;
      }
      s = avec_set(s, z, 0);
    }
    if (z == 3) break;
  }
  return out;
}

Solution xp_sc(const PreferenceProfile& p, const NearAlts& na,
               const std::vector<int>& order, int k,
               MonroeNearlyStats* stats) {
  const int t = static_cast<int>(na.deleted.size());
  if (t > 3)
    throw std::invalid_argument(
        "the single-crossing branch supports at most 3 deleted alternatives");
  const int n = p.n;
  const int m_red = na.reduced.m;
  const int floor_load = n / k, ceil_load = (n + k - 1) / k, n_mod_k = n % k;

  if (m_red == 0) {
    // Every alternative was deleted: brute-force the original committees
    // (at most C(3, k) by the cap above).
    if (stats != nullptr) ++stats->guesses;
    bool have = false;
    Solution best;
    for_each_committee(p.m, k, [&](const std::vector<int>& W) {
      Solution sol = monroe_assign_committee(
          p, MisrepresentationModel::ApprovalBinary, k, W, Objective::Sum);
      if (!have || sol.score < best.score) {
        have = true;
        best = sol;
      }
    });
    best.method = "monroe_xp_alts(sc)";
    return best;
  }

  struct BestClaim {
    long long value = kNegInf;
    std::vector<int> cls;  // per deleted index: 0 unused / 1 floor / 2 ceil
    bool has_cfg = false;
    DPConfiguration cfg;
    long long dpval = 0;
  };
  BestClaim best;

  // Builds the weave context for one class assignment.
  auto build_ctx = [&](const std::vector<int>& cls,
                       std::vector<int>& used_out) -> MonroeScContext {
    used_out.clear();
    for (int z = 0; z < t; ++z)
      if (cls[z] != 0) used_out.push_back(z);
    MonroeScContext ctx = make_monroe_sc_context(na.reduced, order, k, n);
    ctx.weave_ta = static_cast<int>(used_out.size());
    ctx.dalt_mask.assign(n + 1, 0);
    for (int d = 0; d < ctx.weave_ta; ++d) {
      int z = used_out[d];
      ctx.acap[d] = cls[z] == 1 ? floor_load : ceil_load;
      for (int q = 1; q <= n; ++q) {
        if (p.approves(order[q - 1], na.deleted[z]))
          ctx.dalt_mask[q] |= 1u << d;
      }
    }
    return ctx;
  };

  std::vector<int> cls(t, 0);
  while (true) {
    bool admissible = true;
    int nceil = 0, nused = 0;
    for (int z = 0; z < t; ++z) {
      if (cls[z] == 2) ++nceil;
      if (cls[z] != 0) ++nused;
    }
    if (n_mod_k == 0 && nceil > 0) admissible = false;
    const int kslots = k - nused;
    const int ceil_budget = n_mod_k - nceil;
    if (kslots < 0 || ceil_budget < 0) admissible = false;
    if (stats != nullptr) ++stats->guesses;

    if (admissible) {
      std::vector<int> used;
      MonroeScContext ctx = build_ctx(cls, used);
      uint32_t caps = 0;
      for (int d = 0; d < ctx.weave_ta; ++d)
        caps = avec_set(caps, d, ctx.acap[d]);
      std::vector<uint32_t> avecs = packed_subvectors(caps, n);

      // Claims with no structure member: the whole voter interval is served
      // by the reserved alternatives only.
      for (uint32_t av : avecs) {
        DPConfiguration zero{0, 0, 1, n, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, av};
        long long v = table_entry(ctx, zero).value;
        if (v == kNegInf) continue;
        if (v > best.value) {
          best.value = v;
          best.cls = cls;
          best.has_cfg = false;
          best.dpval = 0;
        }
      }

      if (kslots >= 1) {
        const StructureIndex& ix = ctx.ix;
        std::vector<int> actives;
        for (int a = 1; a <= ix.m; ++a)
          if (ix.active[a]) actives.push_back(a);
        std::vector<int> level1 = level_one_within(ix, actives);

        // Best table value per (interval, reserved middle vector): the end
        // pieces depend on the interval, so the maximum cannot be taken
        // before they are attached.
        std::map<std::tuple<int, int, uint32_t>,
                 std::pair<long long, DPConfiguration>>
            best_by_span;
        for (uint32_t av : avecs) {
          for (int a : level1) {
            for (int b : level1) {
              if (a != b && !ix.in_earlier(a, b)) continue;
              int pair_sz = (a == b) ? 1 : 2;
              if (pair_sz > kslots) continue;
              for (int i = ix.leftmost[a]; i <= ix.rightmost[b]; ++i) {
                for (int j = i; j <= ix.rightmost[b]; ++j) {
                  int na_hi = std::min(
                      ceil_load,
                      std::max(0, std::min(j, ix.rightmost[a]) - i + 1));
                  for (int n_a = (a == b ? 0 : 1); n_a <= na_hi; ++n_a) {
                    int nb_lo = (a == b) ? n_a : 1;
                    int nb_hi =
                        (a == b)
                            ? n_a
                            : std::min(ceil_load,
                                       j - std::max(i, ix.leftmost[b]) + 1);
                    for (int n_b = nb_lo; n_b <= nb_hi; ++n_b) {
                      bool c1 = n_mod_k != 0 && n_a == ceil_load;
                      bool c2 = n_mod_k != 0 && n_b == ceil_load;
                      int f1v = (a != b && c1 && c2) ? 2 : ((c1 || c2) ? 1 : 0);
                      int kh_max =
                          std::min(ceil_budget - f1v, kslots - pair_sz);
                      for (int kh = 0; kh <= kh_max; ++kh) {
                        for (int kl = 0; kl + kh + pair_sz <= kslots; ++kl) {
                          for (int B = 0; B <= 1; ++B) {
                            DPConfiguration cfg{a,  b,  i, j, kh, kl, n_a,
                                                n_b, 0, B, 0, 0,  0,  0,
                                                av};
                            long long v = table_entry(ctx, cfg).value;
                            if (v == kNegInf) continue;
                            auto key = std::make_tuple(i, j, av);
                            auto it = best_by_span.find(key);
                            if (it == best_by_span.end()) {
                              best_by_span.emplace(key, std::make_pair(v, cfg));
                            } else if (v > it->second.first) {
                              it->second = std::make_pair(v, cfg);
                            }
                          }
                        }
                      }
                    }
                  }
                }
              }
            }
          }
        }

        for (const auto& [key, entry] : best_by_span) {
          const auto [i, j, av_mid] = key;
          const auto& [tv, cfg] = entry;
          uint32_t rem = caps - av_mid;  // componentwise; av_mid <= caps
          for (uint32_t av_l : packed_subvectors(rem, n)) {
            long long zl = 0;
            if (av_l != 0) {
              if (i < 2) continue;
              DPConfiguration zc{0, 0, 1, i - 1, 0, 0, 0, 0,
                                 0, 0, 0, 0,     0, 0, av_l};
              zl = table_entry(ctx, zc).value;
              if (zl == kNegInf) continue;
            }
            uint32_t rem2 = rem - av_l;
            for (uint32_t av_r : packed_subvectors(rem2, n)) {
              long long zr = 0;
              if (av_r != 0) {
                if (j > n - 1) continue;
                DPConfiguration zc{0, 0, j + 1, n, 0, 0, 0, 0,
                                   0, 0, 0,     0, 0, 0, av_r};
                zr = table_entry(ctx, zc).value;
                if (zr == kNegInf) continue;
              }
              long long claim = tv + zl + zr;
              if (claim > best.value) {
                best.value = claim;
                best.cls = cls;
                best.has_cfg = true;
                best.cfg = cfg;
                best.dpval = tv;
              }
            }
          }
        }
      }
      if (stats != nullptr) stats->table_entries += ctx.memo.size();
    }

    int d = 0;
    while (d < t && cls[d] == 2) {
      cls[d] = 0;
      ++d;
    }
    if (d == t) break;
    ++cls[d];
  }
  if (best.value == kNegInf)
    throw std::logic_error("no admissible table aggregation was found");

  // Reconstruction: replay the table members (reduced ids), add the used
  // deleted alternatives, pad, and re-validate with an exact completion.
  std::set<int> comm;
  for (int z = 0; z < t; ++z)
    if (best.cls[z] != 0) comm.insert(na.deleted[z]);
  if (best.has_cfg) {
    std::vector<int> used;
    MonroeScContext ctx = build_ctx(best.cls, used);
    for (int a : monroe_sc_replay_members(ctx, best.cfg, best.dpval))
      comm.insert(na.orig_aid[a]);
  }
  if (static_cast<int>(comm.size()) > k)
    throw std::logic_error(
        "reconstruction produced more members than the committee size");
  std::vector<int> committee(comm.begin(), comm.end());
  for (int a = 1; a <= p.m && static_cast<int>(committee.size()) < k; ++a)
    if (!comm.count(a)) committee.push_back(a);
  std::sort(committee.begin(), committee.end());
  Solution sol = monroe_assign_committee(
      p, MisrepresentationModel::ApprovalBinary, k, committee, Objective::Sum);
  if (sol.score != static_cast<long long>(n) - best.value)
    throw std::logic_error("table optimum and completed assignment disagree");
  sol.method = "monroe_xp_alts(sc)";
  return sol;
}

// Approval misrepresentation bounds every voter by 1, so the minimax optimum
// is 0 exactly when the sum optimum is 0 and 1 otherwise.
Solution as_approval_max(Solution sol) {
  sol.objective = Objective::Max;
  sol.score = sol.score == 0 ? 0 : 1;
  return sol;
}

}  // namespace

Solution solve_monroe_nearsp(const PreferenceProfile& p,
                             const DeletionCertificate& cert, int k,
                             Objective objective, MonroeNearlyStats* stats) {
  if (p.kind == BallotKind::Linear) {
    if (objective == Objective::Sum)
      throw std::invalid_argument(
          "linear ballots support only the max objective for nearly-single-peaked Monroe");
    // Surface certificate problems against the linear profile first.
    validate_near_voters(p, cert, StructureKind::SinglePeaked,
                         BallotKind::Linear, k);
    // Threshold ballots of a single-peaked linear order are axis intervals,
    // so every reduced profile stays single-peaked under the same witness.
    Solution sol = solve_max_via_reduction(
        p, k, [&](const PreferenceProfile& q, int kk) {
          NearVoters nv = validate_near_voters(
              q, cert, StructureKind::SinglePeaked, BallotKind::Approval, kk);
          return nearsp_sum(q, nv, kk, cert.witness.order, stats);
        });
    sol.method = "monroe_nearsp(reduction)";
    return sol;
  }
  NearVoters nv = validate_near_voters(p, cert, StructureKind::SinglePeaked,
                                       BallotKind::Approval, k);
  Solution sol = nearsp_sum(p, nv, k, cert.witness.order, stats);
  if (objective == Objective::Max) sol = as_approval_max(std::move(sol));
  return sol;
}

Solution solve_monroe_nearsc(const PreferenceProfile& p,
                             const DeletionCertificate& cert, int k,
                             Objective objective, MonroeNearlyStats* stats) {
  NearVoters nv = validate_near_voters(p, cert, StructureKind::SingleCrossing,
                                       BallotKind::Approval, k);
  Solution sol = nearsc_sum(p, nv, cert.witness.order, k, stats);
  if (objective == Objective::Max) sol = as_approval_max(std::move(sol));
  return sol;
}

Solution solve_monroe_xp_alts(const PreferenceProfile& p,
                              const DeletionCertificate& cert, int k,
                              Objective objective, StructureKind structure,
                              int max_t, MonroeNearlyStats* stats) {
  NearAlts na = validate_near_alts(p, cert, structure, k, max_t);
  Solution sol = structure == StructureKind::SinglePeaked
                     ? xp_sp(p, na, k, stats)
                     : xp_sc(p, na, cert.witness.order, k, stats);
  if (objective == Objective::Max) sol = as_approval_max(std::move(sol));
  return sol;
}

}  // namespace mw
