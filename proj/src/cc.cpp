#include "mwsolve/cc.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mwsolve/oracle.hpp"

namespace mw {

using cc_detail::kInfCost;

namespace {

int rho(const PreferenceProfile& p, MisrepresentationModel model, int v,
        int a) {
  return misrep(p, model, v, a);
}

void require_perm(const std::vector<int>& ord, int count, const char* what) {
  if (static_cast<int>(ord.size()) != count)
    throw std::invalid_argument(std::string(what) +
                                " must be a permutation of 1..n");
  std::vector<char> seen(count + 1, 0);
  for (int x : ord) {
    if (x < 1 || x > count || seen[x])
      throw std::invalid_argument(std::string(what) +
                                  " must be a permutation of 1..n");
    seen[x] = 1;
  }
}

// Assign every voter to the committee member misrepresenting them least,
// breaking ties toward the lowest alternative id (committee sorted).
std::vector<int> best_member_assignment(const PreferenceProfile& p,
                                        MisrepresentationModel model,
                                        const std::vector<int>& committee) {
  std::vector<int> as(p.n + 1, 0);
  for (int v = 1; v <= p.n; ++v) {
    int ba = committee[0];
    int br = rho(p, model, v, ba);
    for (size_t i = 1; i < committee.size(); ++i) {
      int r = rho(p, model, v, committee[i]);
      if (r < br) {
        br = r;
        ba = committee[i];
      }
    }
    as[v] = ba;
  }
  return as;
}

long long assigned_total(const PreferenceProfile& p,
                         MisrepresentationModel model,
                         const std::vector<int>& assignment) {
  long long s = 0;
  for (int v = 1; v <= p.n; ++v) s += rho(p, model, v, assignment[v]);
  return s;
}

// ---------------------------------------------------------------------------
// Shared validation for the nearly-structured solvers.
// ---------------------------------------------------------------------------

struct NearInput {
  PreferenceProfile reduced;   // surviving voters renumbered 1..n_R
  std::vector<int> orig_vid;   // reduced voter id -> original id (0 unused)
  std::vector<int> deleted;    // original ids, ascending
  std::vector<int> rest;       // original ids of surviving voters, ascending
};

NearInput validate_near(const PreferenceProfile& p,
                        const DeletionCertificate& cert, StructureKind want,
                        BallotKind kind, int k) {
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
  NearInput ni;
  ni.deleted = cert.deleted;
  for (size_t i = 0; i < ni.deleted.size(); ++i) {
    int v = ni.deleted[i];
    if (v < 1 || v > p.n || (i > 0 && ni.deleted[i - 1] >= v))
      throw std::invalid_argument("certificate fails re-validation");
  }
  if (static_cast<int>(ni.deleted.size()) > 8)
    throw std::invalid_argument(
        "deletion set larger than the supported maximum of 8 voters");
  ni.reduced = remove_voters(p, ni.deleted, &ni.orig_vid);
  int expect = want == StructureKind::SinglePeaked ? p.m : ni.reduced.n;
  if (static_cast<int>(cert.witness.order.size()) != expect)
    throw std::invalid_argument("certificate fails re-validation");
  bool ok = want == StructureKind::SinglePeaked
                ? check_sp(ni.reduced, cert.witness.order)
                : check_sc(ni.reduced, cert.witness.order);
  if (!ok) throw std::invalid_argument("certificate fails re-validation");
  std::vector<char> del(p.n + 1, 0);
  for (int v : ni.deleted) del[v] = 1;
  for (int v = 1; v <= p.n; ++v)
    if (!del[v]) ni.rest.push_back(v);
  return ni;
}

// ---------------------------------------------------------------------------
// Deleted-voter types (approval solvers): the type of an alternative is the
// subset of deleted voters approving it; committees are summarized by the set
// of distinct types they contain, and the voters left uncovered by a type set
// each contribute one point of misrepresentation.
// ---------------------------------------------------------------------------

struct TypeSystem {
  int t = 0;
  int num_types = 0;
  std::vector<int> type_of_alt;     // alt id -> type index
  std::vector<uint32_t> voters_of;  // type index -> deleted-voter bitmask
  std::vector<long long> leftover;  // type-set mask -> uncovered deleted count
};

TypeSystem build_types(const PreferenceProfile& p,
                       const std::vector<int>& deleted) {
  TypeSystem ts;
  ts.t = static_cast<int>(deleted.size());
  std::vector<uint32_t> mask_of_alt(p.m + 1, 0);
  for (int a = 1; a <= p.m; ++a)
    for (int d = 0; d < ts.t; ++d)
      if (p.approves(deleted[d], a)) mask_of_alt[a] |= 1u << d;
  std::vector<uint32_t> distinct(mask_of_alt.begin() + 1, mask_of_alt.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  ts.num_types = static_cast<int>(distinct.size());
  if (ts.num_types > 12)
    throw std::invalid_argument(
        "too many distinct deleted-voter types for the type dynamic program");
  ts.voters_of = distinct;
  ts.type_of_alt.assign(p.m + 1, 0);
  for (int a = 1; a <= p.m; ++a)
    ts.type_of_alt[a] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), mask_of_alt[a]) -
        distinct.begin());
  ts.leftover.assign(size_t{1} << ts.num_types, 0);
  for (uint32_t mask = 0; mask < (1u << ts.num_types); ++mask) {
    uint32_t covered = 0;
    for (int i = 0; i < ts.num_types; ++i)
      if (mask & (1u << i)) covered |= ts.voters_of[i];
    ts.leftover[mask] = ts.t - std::popcount(covered);
  }
  return ts;
}

// ---------------------------------------------------------------------------
// Ordered partitions of the deleted voters (linear solvers): every way to
// split them into at most max_blocks nonempty groups, each group to be served
// by one committee member, in every order of the groups. The empty set yields
// the single empty partition.
// ---------------------------------------------------------------------------

void ordered_partitions(
    const std::vector<int>& items, int max_blocks,
    const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  if (items.empty()) {
    emit({});
    return;
  }
  std::vector<std::vector<int>> blocks;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == items.size()) {
      if (static_cast<int>(blocks.size()) > max_blocks) return;
      std::vector<int> order(blocks.size());
      std::iota(order.begin(), order.end(), 0);
      do {
        std::vector<std::vector<int>> arranged;
        arranged.reserve(blocks.size());
        for (int b : order) arranged.push_back(blocks[b]);
        emit(arranged);
      } while (std::next_permutation(order.begin(), order.end()));
      return;
    }
    for (auto& b : blocks) {
      b.push_back(items[i]);
      rec(i + 1);
      b.pop_back();
    }
    if (static_cast<int>(blocks.size()) < max_blocks) {
      blocks.push_back({items[i]});
      rec(i + 1);
      blocks.pop_back();
    }
  };
  rec(0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public helpers.
// ---------------------------------------------------------------------------

long long cc_diff(const PreferenceProfile& p, MisrepresentationModel model,
                  const std::vector<int>& voters, int j_new, int j_old) {
  long long s = 0;
  for (int v : voters)
    s += std::max(rho(p, model, v, j_old) - rho(p, model, v, j_new), 0);
  return s;
}

std::vector<int> sc_block_alt_order(const PreferenceProfile& p,
                                    const std::vector<int>& voter_at) {
  if (p.kind != BallotKind::Approval)
    throw std::logic_error(
        "block alternative order is defined for approval ballots");
  const int np = static_cast<int>(voter_at.size());
  std::vector<int> lm(p.m + 1, np + 1), rm(p.m + 1, 0);
  for (int i = 0; i < np; ++i) {
    int v = voter_at[i];
    if (v < 1 || v > p.n) throw std::out_of_range("voter id out of range");
    for (int a : p.ballots[v]) {
      lm[a] = std::min(lm[a], i + 1);
      rm[a] = std::max(rm[a], i + 1);
    }
  }
  std::vector<int> ids(p.m);
  std::iota(ids.begin(), ids.end(), 1);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (lm[a] != lm[b]) return lm[a] < lm[b];
    if (rm[a] != rm[b]) return rm[a] > rm[b];
    return a < b;
  });
  return ids;
}

// ---------------------------------------------------------------------------
// Single-peaked baseline: prefix dynamic program over (last committee
// alternative by axis position, committee size). Adding a new rightmost
// member j to a committee whose previous rightmost was j' improves exactly
// the voters preferring j to j', by cc_diff.
// ---------------------------------------------------------------------------

Solution solve_cc_sp(const PreferenceProfile& p,
                     const std::vector<int>& sp_order, int k,
                     Objective objective) {
  if (k < 1 || k > p.m) throw std::invalid_argument("k must be in [1, m]");
  require_perm(sp_order, p.m, "alternative axis");
  if (!check_sp(p, sp_order))
    throw std::invalid_argument(
        "profile is not single-peaked under the given axis");
  if (objective == Objective::Max) {
    if (p.kind == BallotKind::Approval) {
      Solution s = solve_cc_sp(p, sp_order, k, Objective::Sum);
      s.objective = Objective::Max;
      s.score = s.score == 0 ? 0 : 1;
      return s;
    }
    Solution s = solve_max_via_reduction(
        p, k, [&](const PreferenceProfile& ap, int kk) {
          return solve_cc_sp(ap, sp_order, kk, Objective::Sum);
        });
    s.method = "cc_sp(reduction)";
    return s;
  }
  const MisrepresentationModel model = default_model(p);
  const int n = p.n, m = p.m;
  std::vector<std::vector<int>> rp(n + 1, std::vector<int>(m + 1, 0));
  for (int v = 1; v <= n; ++v)
    for (int q = 1; q <= m; ++q) rp[v][q] = rho(p, model, v, sp_order[q - 1]);
  std::vector<std::vector<long long>> dif(m + 1,
                                          std::vector<long long>(m + 1, 0));
  for (int q = 1; q <= m; ++q)
    for (int q2 = 1; q2 < q; ++q2) {
      long long s = 0;
      for (int v = 1; v <= n; ++v) s += std::max(rp[v][q2] - rp[v][q], 0);
      dif[q][q2] = s;
    }
  std::vector<std::vector<long long>> D(k + 1,
                                        std::vector<long long>(m + 1, kInfCost));
  std::vector<std::vector<int>> bp(k + 1, std::vector<int>(m + 1, 0));
  for (int q = 1; q <= m; ++q) {
    long long s = 0;
    for (int v = 1; v <= n; ++v) s += rp[v][q];
    D[1][q] = s;
  }
  for (int kp = 2; kp <= k; ++kp)
    for (int q = kp; q <= m; ++q)
      for (int q2 = kp - 1; q2 < q; ++q2) {
        if (D[kp - 1][q2] >= kInfCost) continue;
        long long cand = D[kp - 1][q2] - dif[q][q2];
        if (cand < D[kp][q]) {
          D[kp][q] = cand;
          bp[kp][q] = q2;
        }
      }
  long long best = kInfCost;
  int bq = 0;
  for (int q = k; q <= m; ++q)
    if (D[k][q] < best) {
      best = D[k][q];
      bq = q;
    }
  if (best >= kInfCost)
    throw std::logic_error("dynamic program produced no feasible committee");
  std::vector<int> members;
  for (int kp = k, q = bq; kp >= 1; --kp) {
    members.push_back(sp_order[q - 1]);
    q = bp[kp][q];
  }
  std::sort(members.begin(), members.end());
  Solution s;
  s.rule = Rule::CC;
  s.objective = Objective::Sum;
  s.k = k;
  s.score = best;
  s.committee = members;
  s.assignment = best_member_assignment(p, model, members);
  if (assigned_total(p, model, s.assignment) != best)
    throw std::logic_error("table optimum and completed assignment disagree");
  s.method = "cc_sp";
  return s;
}

// ---------------------------------------------------------------------------
// Single-crossing baseline: voters in SC order are assigned in contiguous
// blocks (possibly empty) to committee members taken in block order —
// approval ballots use sc_block_alt_order, linear ballots the first voter's
// ranking. D(size, alt prefix, voter prefix) minimizes the cost so far.
// ---------------------------------------------------------------------------

Solution solve_cc_sc(const PreferenceProfile& p,
                     const std::vector<int>& sc_order, int k,
                     Objective objective) {
  if (k < 1 || k > p.m) throw std::invalid_argument("k must be in [1, m]");
  require_perm(sc_order, p.n, "voter order");
  if (!check_sc(p, sc_order))
    throw std::invalid_argument(
        "profile is not single-crossing under the given voter order");
  if (objective == Objective::Max) {
    if (p.kind == BallotKind::Approval) {
      Solution s = solve_cc_sc(p, sc_order, k, Objective::Sum);
      s.objective = Objective::Max;
      s.score = s.score == 0 ? 0 : 1;
      return s;
    }
    bool fallback = false;
    Solution s = solve_max_via_reduction(
        p, k, [&](const PreferenceProfile& ap, int kk) {
          // The threshold reduction can break the single-crossing property;
          // keep the exact block solver whenever some voter order still
          // works, otherwise decide this probe exhaustively.
          if (check_sc(ap, sc_order))
            return solve_cc_sc(ap, sc_order, kk, Objective::Sum);
          if (auto found = detect_sc(ap))
            return solve_cc_sc(ap, found->order, kk, Objective::Sum);
          fallback = true;
          return oracle_cc(ap, MisrepresentationModel::ApprovalBinary, kk,
                           Objective::Sum);
        });
    s.method = fallback ? "cc_sc(reduction+oracle-fallback)"
                        : "cc_sc(reduction)";
    return s;
  }
  const MisrepresentationModel model = default_model(p);
  const int n = p.n, m = p.m;
  std::vector<int> alts = p.kind == BallotKind::Approval
                              ? sc_block_alt_order(p, sc_order)
                              : p.ballots[sc_order[0]];
  std::vector<std::vector<long long>> pre(m + 1,
                                          std::vector<long long>(n + 1, 0));
  for (int jj = 1; jj <= m; ++jj)
    for (int i = 1; i <= n; ++i)
      pre[jj][i] =
          pre[jj][i - 1] + rho(p, model, sc_order[i - 1], alts[jj - 1]);
  auto idx = [&](int kp, int jj, int i) {
    return (static_cast<size_t>(kp) * (m + 1) + jj) * (n + 1) + i;
  };
  std::vector<long long> D(static_cast<size_t>(k + 1) * (m + 1) * (n + 1),
                           kInfCost);
  std::vector<int> bx(D.size(), -2);
  for (int jj = 0; jj <= m; ++jj) D[idx(0, jj, 0)] = 0;
  for (int kp = 1; kp <= k; ++kp)
    for (int jj = 1; jj <= m; ++jj)
      for (int i = 0; i <= n; ++i) {
        long long best = D[idx(kp, jj - 1, i)];  // alternative jj unused
        int bb = -1;
        for (int x = 0; x <= i; ++x) {
          long long child = D[idx(kp - 1, jj - 1, x)];
          if (child >= kInfCost) continue;
          long long cand = child + pre[jj][i] - pre[jj][x];
          if (cand < best) {
            best = cand;
            bb = x;
          }
        }
        D[idx(kp, jj, i)] = best;
        bx[idx(kp, jj, i)] = bb;
      }
  long long score = D[idx(k, m, n)];
  if (score >= kInfCost)
    throw std::logic_error("dynamic program produced no feasible committee");
  std::vector<int> members;
  std::vector<int> owner(n + 1, 0);
  int kp = k, jj = m, i = n;
  while (kp > 0) {
    if (jj <= 0)
      throw std::logic_error("block reconstruction ran out of alternatives");
    int b = bx[idx(kp, jj, i)];
    if (b == -1) {
      --jj;
      continue;
    }
    int a = alts[jj - 1];
    members.push_back(a);
    for (int pos = b + 1; pos <= i; ++pos) owner[pos] = a;
    i = b;
    --kp;
    --jj;
  }
  if (i != 0)
    throw std::logic_error("block reconstruction left voters unassigned");
  std::sort(members.begin(), members.end());
  Solution s;
  s.rule = Rule::CC;
  s.objective = Objective::Sum;
  s.k = k;
  s.score = score;
  s.committee = members;
  s.assignment.assign(n + 1, 0);
  for (int pos = 1; pos <= n; ++pos) s.assignment[sc_order[pos - 1]] = owner[pos];
  if (assigned_total(p, model, s.assignment) != score)
    throw std::logic_error("table optimum and completed assignment disagree");
  s.method = "cc_sc";
  return s;
}

// ---------------------------------------------------------------------------
// Nearly single-peaked, approval ballots: prefix DP extended with the set of
// deleted-voter types present in the committee. Entry values count every
// voter: the surviving ones via the prefix/diff arithmetic, the deleted ones
// via the uncovered-leftover term of the type set.
// ---------------------------------------------------------------------------

namespace cc_detail {

size_t A1Table::index(int kprime, int q, int tmask) const {
  return (static_cast<size_t>(kprime) * (m + 1) + q) *
             (size_t{1} << num_types) +
         tmask;
}

long long A1Table::at(int kprime, int q, int tmask) const {
  if (kprime < 1 || kprime > kmax || q < 1 || q > m || tmask < 0 ||
      tmask >= (1 << num_types))
    throw std::out_of_range("table coordinates out of range");
  return value[index(kprime, q, tmask)];
}

A1Table build_a1_table(const PreferenceProfile& p,
                       const DeletionCertificate& cert, int k) {
  NearInput ni = validate_near(p, cert, StructureKind::SinglePeaked,
                               BallotKind::Approval, k);
  const std::vector<int>& axis = cert.witness.order;
  TypeSystem ts = build_types(p, ni.deleted);
  const int m = p.m;
  const int mask_n = 1 << ts.num_types;
  A1Table t1;
  t1.m = m;
  t1.kmax = k;
  t1.num_types = ts.num_types;
  t1.leftover = ts.leftover;
  t1.type_of_pos.assign(m + 1, 0);
  for (int q = 1; q <= m; ++q)
    t1.type_of_pos[q] = ts.type_of_alt[axis[q - 1]];
  std::vector<long long> rho_all(m + 1, 0);
  for (int q = 1; q <= m; ++q)
    for (int v = 1; v <= p.n; ++v)
      rho_all[q] += rho(p, MisrepresentationModel::ApprovalBinary, v,
                        axis[q - 1]);
  std::vector<std::vector<long long>> dr(m + 1,
                                         std::vector<long long>(m + 1, 0));
  for (int q = 1; q <= m; ++q)
    for (int q2 = 1; q2 < q; ++q2) {
      long long s = 0;
      for (int v : ni.rest)
        if (p.approves(v, axis[q - 1]) && !p.approves(v, axis[q2 - 1])) ++s;
      dr[q][q2] = s;
    }
  size_t total = static_cast<size_t>(k + 1) * (m + 1) * mask_n;
  t1.value.assign(total, kInfCost);
  t1.bp_pos.assign(total, 0);
  t1.bp_mask.assign(total, 0);
  for (int q = 1; q <= m; ++q)
    t1.value[t1.index(1, q, 1 << t1.type_of_pos[q])] = rho_all[q];
  for (int kp = 2; kp <= k; ++kp)
    for (int q = kp; q <= m; ++q) {
      const int bit = 1 << t1.type_of_pos[q];
      for (int tmask = 1; tmask < mask_n; ++tmask) {
        if (!(tmask & bit)) continue;
        if (std::popcount(static_cast<uint32_t>(tmask)) > kp) continue;
        long long best = kInfCost;
        int bq = 0, bm = 0;
        for (int q2 = kp - 1; q2 < q; ++q2) {
          const int prev[2] = {tmask ^ bit, tmask};
          for (int t2 : prev) {
            if (t2 == 0) continue;
            long long child = t1.value[t1.index(kp - 1, q2, t2)];
            if (child >= kInfCost) continue;
            long long cand = child - dr[q][q2] + t1.leftover[tmask] -
                             t1.leftover[t2];
            if (cand < best) {
              best = cand;
              bq = q2;
              bm = t2;
            }
          }
        }
        size_t id = t1.index(kp, q, tmask);
        t1.value[id] = best;
        t1.bp_pos[id] = bq;
        t1.bp_mask[id] = bm;
      }
    }
  return t1;
}

}  // namespace cc_detail

Solution solve_cc_nearsp_approval(const PreferenceProfile& p,
                                  const DeletionCertificate& cert, int k) {
  cc_detail::A1Table t1 = cc_detail::build_a1_table(p, cert, k);
  const std::vector<int>& axis = cert.witness.order;
  const int mask_n = 1 << t1.num_types;
  long long best = kInfCost;
  int bq = 0, bm = 0;
  for (int q = k; q <= t1.m; ++q)
    for (int tmask = 1; tmask < mask_n; ++tmask) {
      long long v = t1.value[t1.index(k, q, tmask)];
      if (v < best) {
        best = v;
        bq = q;
        bm = tmask;
      }
    }
  if (best >= kInfCost)
    throw std::logic_error("dynamic program produced no feasible committee");
  std::vector<int> members;
  for (int kp = k, q = bq, tm = bm; kp >= 1; --kp) {
    members.push_back(axis[q - 1]);
    if (kp > 1) {
      size_t id = t1.index(kp, q, tm);
      int q2 = t1.bp_pos[id];
      tm = t1.bp_mask[id];
      q = q2;
    }
  }
  std::sort(members.begin(), members.end());
  Solution s;
  s.rule = Rule::CC;
  s.objective = Objective::Sum;
  s.k = k;
  s.score = best;
  s.committee = members;
  s.assignment =
      best_member_assignment(p, MisrepresentationModel::ApprovalBinary,
                             members);
  if (assigned_total(p, MisrepresentationModel::ApprovalBinary,
                     s.assignment) != best)
    throw std::logic_error("table optimum and completed assignment disagree");
  s.method = "cc_nearsp_approval";
  return s;
}

// ---------------------------------------------------------------------------
// Nearly single-peaked, linear ballots: guess how the deleted voters group
// into blocks served by a common member and in which axis order those
// members appear, then run a prefix DP whose state tracks the rightmost
// member, the rightmost block representative, the committee size, and how
// many blocks are already served.
// ---------------------------------------------------------------------------

Solution solve_cc_nearsp_linear(const PreferenceProfile& p,
                                const DeletionCertificate& cert, int k) {
  NearInput ni = validate_near(p, cert, StructureKind::SinglePeaked,
                               BallotKind::Linear, k);
  const int t = static_cast<int>(ni.deleted.size());
  if (t > 6)
    throw std::invalid_argument(
        "deletion set larger than the supported maximum of 6 voters for "
        "linear ballots");
  PreferenceProfile wp = relabel_alternatives(p, cert.witness.order);
  const int m = p.m;
  const MisrepresentationModel model = MisrepresentationModel::Borda;
  std::vector<long long> rho_r(m + 1, 0);
  for (int a = 1; a <= m; ++a)
    for (int v : ni.rest) rho_r[a] += rho(wp, model, v, a);
  std::vector<std::vector<long long>> dr(m + 1,
                                         std::vector<long long>(m + 1, 0));
  for (int a = 1; a <= m; ++a)
    for (int a2 = 1; a2 < a; ++a2) {
      long long s = 0;
      for (int v : ni.rest)
        s += std::max(rho(wp, model, v, a2) - rho(wp, model, v, a), 0);
      dr[a][a2] = s;
    }
  long long best_total = kInfCost;
  std::vector<int> best_members;
  ordered_partitions(
      ni.deleted, std::min(t, k),
      [&](const std::vector<std::vector<int>>& blocks) {
        const int tt = static_cast<int>(blocks.size());
        std::vector<std::vector<long long>> bc(
            tt + 1, std::vector<long long>(m + 1, 0));
        for (int z = 1; z <= tt; ++z)
          for (int a = 1; a <= m; ++a)
            for (int v : blocks[z - 1]) bc[z][a] += rho(wp, model, v, a);
        auto idx = [&](int a, int b, int kp, int j) {
          return ((static_cast<size_t>(a) * (m + 1) + b) * (k + 1) + kp) *
                     (tt + 1) +
                 j;
        };
        std::vector<long long> tab(
            static_cast<size_t>(m + 1) * (m + 1) * (k + 1) * (tt + 1),
            kInfCost);
        std::vector<int> bpa(tab.size(), 0), bpb(tab.size(), 0);
        for (int a = 1; a <= m; ++a) tab[idx(a, 0, 1, 0)] = rho_r[a];
        if (tt >= 1)
          for (int a = 1; a <= m; ++a)
            tab[idx(a, a, 1, 1)] = rho_r[a] + bc[1][a];
        for (int kp = 2; kp <= k; ++kp) {
          for (int a = kp; a <= m; ++a) {
            // Last member a joined without serving a block; none served yet.
            size_t id = idx(a, 0, kp, 0);
            for (int a2 = kp - 1; a2 < a; ++a2) {
              long long child = tab[idx(a2, 0, kp - 1, 0)];
              if (child >= kInfCost) continue;
              long long cand = child - dr[a][a2];
              if (cand < tab[id]) {
                tab[id] = cand;
                bpa[id] = a2;
                bpb[id] = 0;
              }
            }
          }
          for (int j = 1; j <= tt; ++j)
            for (int a = 1; a <= m; ++a) {
              // Last member a serves block j.
              size_t id = idx(a, a, kp, j);
              for (int a2 = 1; a2 < a; ++a2) {
                int blo = j - 1 == 0 ? 0 : 1;
                int bhi = j - 1 == 0 ? 0 : a2;
                for (int b2 = blo; b2 <= bhi; ++b2) {
                  long long child = tab[idx(a2, b2, kp - 1, j - 1)];
                  if (child >= kInfCost) continue;
                  long long cand = child - dr[a][a2];
                  if (cand < tab[id]) {
                    tab[id] = cand;
                    bpa[id] = a2;
                    bpb[id] = b2;
                  }
                }
              }
              if (tab[id] < kInfCost) tab[id] += bc[j][a];
              // Last member a serves no block; block j stays with b < a.
              for (int b = 1; b < a; ++b) {
                size_t ide = idx(a, b, kp, j);
                for (int a2 = b; a2 < a; ++a2) {
                  long long child = tab[idx(a2, b, kp - 1, j)];
                  if (child >= kInfCost) continue;
                  long long cand = child - dr[a][a2];
                  if (cand < tab[ide]) {
                    tab[ide] = cand;
                    bpa[ide] = a2;
                    bpb[ide] = b;
                  }
                }
              }
            }
        }
        long long ans = kInfCost;
        int ba = 0, bb = 0;
        if (tt == 0) {
          for (int a = 1; a <= m; ++a)
            if (tab[idx(a, 0, k, 0)] < ans) {
              ans = tab[idx(a, 0, k, 0)];
              ba = a;
              bb = 0;
            }
        } else {
          for (int a = 1; a <= m; ++a)
            for (int b = 1; b <= a; ++b)
              if (tab[idx(a, b, k, tt)] < ans) {
                ans = tab[idx(a, b, k, tt)];
                ba = a;
                bb = b;
              }
        }
        if (ans >= best_total) return;
        std::vector<int> members;
        int a = ba, b = bb, kp = k, j = tt;
        while (true) {
          members.push_back(a);
          if (kp == 1) break;
          size_t id = idx(a, b, kp, j);
          int j2 = b == a && j >= 1 ? j - 1 : j;
          a = bpa[id];
          b = bpb[id];
          j = j2;
          --kp;
        }
        best_total = ans;
        best_members = members;
      });
  if (best_total >= kInfCost)
    throw std::logic_error("dynamic program produced no feasible committee");
  std::vector<int> committee;
  committee.reserve(k);
  for (int w : best_members) committee.push_back(cert.witness.order[w - 1]);
  std::sort(committee.begin(), committee.end());
  Solution s;
  s.rule = Rule::CC;
  s.objective = Objective::Sum;
  s.k = k;
  s.score = best_total;
  s.committee = committee;
  s.assignment = best_member_assignment(p, model, committee);
  if (assigned_total(p, model, s.assignment) != best_total)
    throw std::logic_error("table optimum and completed assignment disagree");
  s.method = "cc_nearsp_linear";
  return s;
}

// ---------------------------------------------------------------------------
// Nearly single-crossing, approval ballots: the SC block DP extended with the
// committee's set of deleted-voter types. Entries cover the deleted voters
// plus a prefix of the surviving voters in SC order.
// ---------------------------------------------------------------------------

Solution solve_cc_nearsc_approval(const PreferenceProfile& p,
                                  const DeletionCertificate& cert, int k) {
  NearInput ni = validate_near(p, cert, StructureKind::SingleCrossing,
                               BallotKind::Approval, k);
  const int nr = ni.reduced.n;
  std::vector<int> vat(nr);
  for (int i = 0; i < nr; ++i)
    vat[i] = ni.orig_vid[cert.witness.order[i]];
  TypeSystem ts = build_types(p, ni.deleted);
  std::vector<int> alts = sc_block_alt_order(p, vat);
  const int m = p.m;
  const int mask_n = 1 << ts.num_types;
  size_t total = static_cast<size_t>(m + 1) * (k + 1) * mask_n * (nr + 1);
  if (total > size_t{60'000'000})
    throw std::invalid_argument("table too large for this instance");
  std::vector<std::vector<long long>> app(m + 1,
                                          std::vector<long long>(nr + 1, 0));
  std::vector<int> tbit(m + 1, 0);
  std::vector<long long> rho_hat(m + 1, 0);
  for (int jj = 1; jj <= m; ++jj) {
    int a = alts[jj - 1];
    for (int i = 1; i <= nr; ++i)
      app[jj][i] = app[jj][i - 1] + (p.approves(vat[i - 1], a) ? 1 : 0);
    int ti = ts.type_of_alt[a];
    tbit[jj] = 1 << ti;
    rho_hat[jj] = ts.t - std::popcount(ts.voters_of[ti]);
  }
  auto block_cost = [&](int jj, int x, int np) {
    return static_cast<long long>(np - x + 1) - (app[jj][np] - app[jj][x - 1]);
  };
  auto idx = [&](int jj, int kp, int tmask, int np) {
    return ((static_cast<size_t>(jj) * (k + 1) + kp) * mask_n + tmask) *
               (nr + 1) +
           np;
  };
  std::vector<long long> tab(total, kInfCost);
  std::vector<int> bxv(total, -2), btv(total, 0);
  for (int jj = 1; jj <= m; ++jj)
    for (int kp = 1; kp <= k; ++kp)
      for (int tmask = 1; tmask < mask_n; ++tmask) {
        bool has_bit = (tmask & tbit[jj]) != 0;
        bool count_ok =
            std::popcount(static_cast<uint32_t>(tmask)) <= kp && jj >= kp;
        for (int np = 0; np <= nr; ++np) {
          size_t id = idx(jj, kp, tmask, np);
          long long best = tab[idx(jj - 1, kp, tmask, np)];
          int bx = -1, bt = 0;
          if (kp == 1) {
            if (tmask == tbit[jj]) {
              long long cand = rho_hat[jj] + block_cost(jj, 1, np);
              if (cand < best) {
                best = cand;
                bx = 1;
                bt = 0;
              }
            }
          } else if (has_bit && count_ok) {
            const int prev[2] = {tmask ^ tbit[jj], tmask};
            for (int t2 : prev) {
              if (t2 == 0) continue;
              for (int x = 1; x <= np + 1; ++x) {
                long long child = tab[idx(jj - 1, kp - 1, t2, x - 1)];
                if (child >= kInfCost) continue;
                long long cand = child + block_cost(jj, x, np) +
                                 ts.leftover[tmask] - ts.leftover[t2];
                if (cand < best) {
                  best = cand;
                  bx = x;
                  bt = t2;
                }
              }
            }
          }
          tab[id] = best;
          bxv[id] = bx;
          btv[id] = bt;
        }
      }
  long long best = kInfCost;
  int bmask = 0;
  for (int tmask = 1; tmask < mask_n; ++tmask)
    if (tab[idx(m, k, tmask, nr)] < best) {
      best = tab[idx(m, k, tmask, nr)];
      bmask = tmask;
    }
  if (best >= kInfCost)
    throw std::logic_error("dynamic program produced no feasible committee");
  std::vector<int> members;
  std::vector<int> owner(nr + 1, 0);
  int jj = m, kp = k, tmask = bmask, np = nr;
  while (true) {
    if (jj <= 0)
      throw std::logic_error("block reconstruction ran out of alternatives");
    size_t id = idx(jj, kp, tmask, np);
    int bx = bxv[id];
    if (bx == -1) {
      --jj;
      continue;
    }
    int a = alts[jj - 1];
    members.push_back(a);
    for (int pos = bx; pos <= np; ++pos) owner[pos] = a;
    if (kp == 1) break;
    np = bx - 1;
    tmask = btv[id];
    --kp;
    --jj;
  }
  std::sort(members.begin(), members.end());
  Solution s;
  s.rule = Rule::CC;
  s.objective = Objective::Sum;
  s.k = k;
  s.score = best;
  s.committee = members;
  s.assignment.assign(p.n + 1, 0);
  for (int i = 1; i <= nr; ++i) s.assignment[vat[i - 1]] = owner[i];
  for (int d : ni.deleted) {
    int ba = members[0];
    int br = rho(p, MisrepresentationModel::ApprovalBinary, d, ba);
    for (int a : members) {
      int r = rho(p, MisrepresentationModel::ApprovalBinary, d, a);
      if (r < br) {
        br = r;
        ba = a;
      }
    }
    s.assignment[d] = ba;
  }
  if (assigned_total(p, MisrepresentationModel::ApprovalBinary,
                     s.assignment) != best)
    throw std::logic_error("table optimum and completed assignment disagree");
  s.method = "cc_nearsc_approval";
  return s;
}

// ---------------------------------------------------------------------------
// Nearly single-crossing, linear ballots: alternatives renamed so the first
// surviving voter ranks them 1..m; ordered partitions of the deleted voters
// are guessed, and the block DP additionally tracks how many deleted blocks
// the committee has served.
// ---------------------------------------------------------------------------

Solution solve_cc_nearsc_linear(const PreferenceProfile& p,
                                const DeletionCertificate& cert, int k) {
  NearInput ni = validate_near(p, cert, StructureKind::SingleCrossing,
                               BallotKind::Linear, k);
  const int t = static_cast<int>(ni.deleted.size());
  if (t > 6)
    throw std::invalid_argument(
        "deletion set larger than the supported maximum of 6 voters for "
        "linear ballots");
  const int nr = ni.reduced.n;
  std::vector<int> vat(nr);
  for (int i = 0; i < nr; ++i)
    vat[i] = ni.orig_vid[cert.witness.order[i]];
  std::vector<int> axis;
  if (nr >= 1) {
    axis = p.ballots[vat[0]];
  } else {
    axis.resize(p.m);
    std::iota(axis.begin(), axis.end(), 1);
  }
  PreferenceProfile wp = relabel_alternatives(p, axis);
  const int m = p.m;
  const MisrepresentationModel model = MisrepresentationModel::Borda;
  std::vector<std::vector<long long>> pre(m + 1,
                                          std::vector<long long>(nr + 1, 0));
  for (int a = 1; a <= m; ++a)
    for (int i = 1; i <= nr; ++i)
      pre[a][i] = pre[a][i - 1] + rho(wp, model, vat[i - 1], a);
  long long best_total = kInfCost;
  std::vector<int> best_members;
  std::vector<int> best_owner;
  std::vector<std::pair<int, int>> best_block_rep;  // (deleted voter, member)
  ordered_partitions(
      ni.deleted, std::min(t, k),
      [&](const std::vector<std::vector<int>>& blocks) {
        const int tt = static_cast<int>(blocks.size());
        std::vector<std::vector<long long>> bc(
            tt + 1, std::vector<long long>(m + 1, 0));
        for (int z = 1; z <= tt; ++z)
          for (int a = 1; a <= m; ++a)
            for (int v : blocks[z - 1]) bc[z][a] += rho(wp, model, v, a);
        auto idx = [&](int j, int kp, int g, int np) {
          return ((static_cast<size_t>(j) * (k + 1) + kp) * (tt + 1) + g) *
                     (nr + 1) +
                 np;
        };
        std::vector<long long> tab(
            static_cast<size_t>(m + 1) * (k + 1) * (tt + 1) * (nr + 1),
            kInfCost);
        std::vector<int> bxv(tab.size(), -2);
        std::vector<char> bgv(tab.size(), 0);
        for (int j = 1; j <= m; ++j)
          for (int kp = 1; kp <= k; ++kp)
            for (int g = 0; g <= tt; ++g)
              for (int np = 0; np <= nr; ++np) {
                size_t id = idx(j, kp, g, np);
                long long best = tab[idx(j - 1, kp, g, np)];
                int bx = -1;
                char bg = 0;
                if (kp == 1) {
                  if (g <= 1) {
                    long long cand =
                        pre[j][np] + (g == 1 ? bc[1][j] : 0);
                    if (cand < best) {
                      best = cand;
                      bx = 0;
                      bg = static_cast<char>(g == 1);
                    }
                  }
                } else {
                  for (int x = 0; x <= np; ++x) {
                    long long child = tab[idx(j - 1, kp - 1, g, x)];
                    if (child >= kInfCost) continue;
                    long long cand = child + pre[j][np] - pre[j][x];
                    if (cand < best) {
                      best = cand;
                      bx = x;
                      bg = 0;
                    }
                  }
                  if (g >= 1)
                    for (int x = 0; x <= np; ++x) {
                      long long child = tab[idx(j - 1, kp - 1, g - 1, x)];
                      if (child >= kInfCost) continue;
                      long long cand =
                          child + pre[j][np] - pre[j][x] + bc[g][j];
                      if (cand < best) {
                        best = cand;
                        bx = x;
                        bg = 1;
                      }
                    }
                }
                tab[id] = best;
                bxv[id] = bx;
                bgv[id] = bg;
              }
        long long ans = tab[idx(m, k, tt, nr)];
        if (ans >= best_total) return;
        std::vector<int> members;
        std::vector<int> owner(nr + 1, 0);
        std::vector<std::pair<int, int>> block_rep;
        int j = m, kp = k, g = tt, np = nr;
        while (true) {
          if (j <= 0)
            throw std::logic_error(
                "block reconstruction ran out of alternatives");
          size_t id = idx(j, kp, g, np);
          int bx = bxv[id];
          if (bx == -1) {
            --j;
            continue;
          }
          members.push_back(j);
          for (int pos = bx + 1; pos <= np; ++pos) owner[pos] = j;
          if (bgv[id]) {
            for (int v : blocks[g - 1]) block_rep.emplace_back(v, j);
            --g;
          }
          if (kp == 1) break;
          np = bx;
          --kp;
          --j;
        }
        if (g != 0)
          throw std::logic_error(
              "block reconstruction left deleted voters unserved");
        best_total = ans;
        best_members = members;
        best_owner = owner;
        best_block_rep = block_rep;
      });
  if (best_total >= kInfCost)
    throw std::logic_error("dynamic program produced no feasible committee");
  std::vector<int> committee;
  committee.reserve(k);
  for (int w : best_members) committee.push_back(axis[w - 1]);
  std::sort(committee.begin(), committee.end());
  Solution s;
  s.rule = Rule::CC;
  s.objective = Objective::Sum;
  s.k = k;
  s.score = best_total;
  s.committee = committee;
  s.assignment.assign(p.n + 1, 0);
  for (int i = 1; i <= nr; ++i)
    s.assignment[vat[i - 1]] = axis[best_owner[i] - 1];
  for (int d : ni.deleted) {
    int ba = committee[0];
    int br = rho(p, model, d, ba);
    for (int a : committee) {
      int r = rho(p, model, d, a);
      if (r < br) {
        br = r;
        ba = a;
      }
    }
    s.assignment[d] = ba;
  }
  if (assigned_total(p, model, s.assignment) != best_total)
    throw std::logic_error("table optimum and completed assignment disagree");
  s.method = "cc_nearsc_linear";
  return s;
}

// ---------------------------------------------------------------------------
// Max objective for nearly-structured profiles.
// ---------------------------------------------------------------------------

Solution solve_cc_near_max(const PreferenceProfile& p,
                           const DeletionCertificate& cert, int k,
                           ReductionStats* stats) {
  const bool sp = cert.witness.kind == StructureKind::SinglePeaked;
  if (p.kind == BallotKind::Approval) {
    Solution s = sp ? solve_cc_nearsp_approval(p, cert, k)
                    : solve_cc_nearsc_approval(p, cert, k);
    if (stats) stats->solver_calls = 1;
    s.objective = Objective::Max;
    s.score = s.score == 0 ? 0 : 1;
    s.method = "cc_near_max(approval)";
    return s;
  }
  // Check the certificate against the linear profile before reducing.
  validate_near(p, cert, cert.witness.kind, BallotKind::Linear, k);
  if (sp) {
    Solution s = solve_max_via_reduction(
        p, k,
        [&](const PreferenceProfile& ap, int kk) {
          return solve_cc_nearsp_approval(ap, cert, kk);
        },
        stats);
    s.method = "cc_near_max(sp-reduction)";
    return s;
  }
  bool fallback = false;
  Solution s = solve_max_via_reduction(
      p, k,
      [&](const PreferenceProfile& ap, int kk) {
        // The threshold reduction can break the single-crossing property of
        // the surviving voters; keep the exact solver whenever some voter
        // order still works, otherwise decide this probe exhaustively.
        PreferenceProfile red = remove_voters(ap, cert.deleted);
        if (check_sc(red, cert.witness.order))
          return solve_cc_nearsc_approval(ap, cert, kk);
        if (auto found = detect_sc(red)) {
          DeletionCertificate c2 = cert;
          c2.witness.order = found->order;
          return solve_cc_nearsc_approval(ap, c2, kk);
        }
        fallback = true;
        return oracle_cc(ap, MisrepresentationModel::ApprovalBinary, kk,
                         Objective::Sum);
      },
      stats);
  s.method = fallback ? "cc_near_max(oracle-fallback)"
                      : "cc_near_max(sc-reduction)";
  return s;
}

}  // namespace mw
