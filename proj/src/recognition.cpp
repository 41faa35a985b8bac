#include "mwsolve/recognition.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mw {

namespace {
constexpr int kMaxColumnClasses = 24;

bool is_permutation_of(const std::vector<int>& order, int count) {
  if (static_cast<int>(order.size()) != count) return false;
  std::vector<char> seen(count + 1, 0);
  for (int x : order) {
    if (x < 1 || x > count || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}
}  // namespace

std::optional<std::vector<int>> c1p_order(
    int num_cols, const std::vector<std::vector<int>>& rows) {
  // Columns with identical row incidence are interchangeable and can always
  // be placed consecutively, so the search runs over column classes.
  std::vector<std::vector<int>> col_rows(num_cols + 1);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (int c : rows[r]) {
      if (c < 1 || c > num_cols)
        throw std::invalid_argument("c1p_order: column id out of range");
      col_rows[c].push_back(r);
    }
  std::map<std::vector<int>, int> class_of_sig;
  std::vector<std::vector<int>> class_members;
  std::vector<int> empty_cols;
  for (int c = 1; c <= num_cols; ++c) {
    if (col_rows[c].empty()) {
      empty_cols.push_back(c);
      continue;
    }
    auto [it, fresh] = class_of_sig.try_emplace(
        col_rows[c], static_cast<int>(class_members.size()));
    if (fresh) class_members.emplace_back();
    class_members[it->second].push_back(c);
  }
  int s = static_cast<int>(class_members.size());
  if (s > kMaxColumnClasses)
    throw std::runtime_error(
        "c1p_order: too many distinct column classes for exact search");

  // Row masks over classes; a row contains a class iff it contains all of its
  // members (they are incidence-identical).
  std::vector<uint32_t> row_masks;
  {
    std::map<std::vector<int>, uint32_t> mask_of_rowset;
    std::vector<std::vector<int>> row_sets(rows.size());
    for (int c = 1; c <= num_cols; ++c)
      for (int r : col_rows[c]) row_sets[r].push_back(c);
    for (auto& rs : row_sets) {
      if (rs.empty()) continue;
      uint32_t mask = 0;
      // Every column of the row maps to its class; duplicates collapse.
      for (int c : rs) mask |= 1u << class_of_sig.at(col_rows[c]);
      row_masks.push_back(mask);
    }
    std::sort(row_masks.begin(), row_masks.end());
    row_masks.erase(std::unique(row_masks.begin(), row_masks.end()),
                    row_masks.end());
  }

  std::vector<int> order;
  if (s > 0) {
    uint32_t full = (s == 32) ? ~0u : ((1u << s) - 1);
    std::vector<int8_t> last(static_cast<size_t>(full) + 1, -1);
    std::vector<char> reach(static_cast<size_t>(full) + 1, 0);
    reach[0] = 1;
    for (uint32_t set = 0; set <= full; ++set) {
      if (!reach[set]) continue;
      if (set == full) break;
      uint32_t cand = full & ~set;
      for (uint32_t mask : row_masks) {
        if ((mask & set) != 0 && (mask & ~set & full) != 0) cand &= mask;
        if (!cand) break;
      }
      for (uint32_t rest = cand; rest;) {
        uint32_t bit = rest & ~(rest - 1u);  // lowest set bit
        rest &= rest - 1u;
        uint32_t nxt = set | bit;
        if (!reach[nxt]) {
          reach[nxt] = 1;
          int idx = 0;
          while (!((bit >> idx) & 1u)) ++idx;
          last[nxt] = static_cast<int8_t>(idx);
        }
      }
    }
    if (!reach[full]) return std::nullopt;
    std::vector<int> class_order;
    for (uint32_t set = full; set;) {
      int c = last[set];
      class_order.push_back(c);
      set &= ~(1u << c);
    }
    std::reverse(class_order.begin(), class_order.end());
    for (int cls : class_order)
      for (int c : class_members[cls]) order.push_back(c);
  }
  for (int c : empty_cols) order.push_back(c);
  return order;
}

bool check_sp(const PreferenceProfile& p, const std::vector<int>& axis) {
  if (!is_permutation_of(axis, p.m))
    throw std::invalid_argument("check_sp: order is not a permutation of [m]");
  std::vector<int> pos(p.m + 1, 0);
  for (int i = 0; i < p.m; ++i) pos[axis[i]] = i + 1;
  if (p.kind == BallotKind::Approval) {
    for (int v = 1; v <= p.n; ++v) {
      const auto& b = p.ballots[v];
      if (b.empty()) continue;
      int lo = p.m + 1, hi = 0;
      for (int a : b) {
        lo = std::min(lo, pos[a]);
        hi = std::max(hi, pos[a]);
      }
      if (hi - lo + 1 != static_cast<int>(b.size())) return false;
    }
    return true;
  }
  // Linear: ranks must fall strictly toward the voter's peak from both ends
  // of the axis.
  for (int v = 1; v <= p.n; ++v) {
    int peak_pos = pos[p.ballots[v][0]];
    for (int i = 1; i < peak_pos - 1; ++i)
      if (p.rank(v, axis[i - 1]) < p.rank(v, axis[i])) return false;
    for (int i = peak_pos; i < p.m; ++i)
      if (p.rank(v, axis[i - 1]) > p.rank(v, axis[i])) return false;
  }
  return true;
}

bool check_sc(const PreferenceProfile& p, const std::vector<int>& voter_order) {
  if (!is_permutation_of(voter_order, p.n))
    throw std::invalid_argument("check_sc: order is not a permutation of [n]");
  if (p.kind == BallotKind::Approval) {
    std::vector<int> pos(p.n + 1, 0);
    for (int i = 0; i < p.n; ++i) pos[voter_order[i]] = i + 1;
    for (int a = 1; a <= p.m; ++a) {
      int lo = p.n + 1, hi = 0, cnt = 0;
      for (int v = 1; v <= p.n; ++v)
        if (p.approves(v, a)) {
          lo = std::min(lo, pos[v]);
          hi = std::max(hi, pos[v]);
          ++cnt;
        }
      if (cnt > 0 && hi - lo + 1 != cnt) return false;
    }
    return true;
  }
  for (int a = 1; a <= p.m; ++a)
    for (int b = a + 1; b <= p.m; ++b) {
      int changes = 0;
      bool prev = p.rank(voter_order[0], a) < p.rank(voter_order[0], b);
      for (int i = 1; i < p.n; ++i) {
        bool cur = p.rank(voter_order[i], a) < p.rank(voter_order[i], b);
        if (cur != prev) {
          ++changes;
          prev = cur;
        }
      }
      if (changes > 1) return false;
    }
  return true;
}

std::optional<StructureOrder> detect_sp(const PreferenceProfile& p) {
  std::vector<std::vector<int>> rows;
  if (p.kind == BallotKind::Approval) {
    for (int v = 1; v <= p.n; ++v) rows.push_back(p.ballots[v]);
  } else {
    // A linear profile is single-peaked on an axis exactly when every top-r
    // prefix of every ballot is an interval of that axis: any non-interval
    // prefix exhibits a forbidden valley, and conversely interval prefixes
    // force monotone descent from each peak.
    for (int v = 1; v <= p.n; ++v)
      for (int r = 1; r < p.m; ++r)
        rows.emplace_back(p.ballots[v].begin(), p.ballots[v].begin() + r);
  }
  auto order = c1p_order(p.m, rows);
  if (!order) return std::nullopt;
  StructureOrder out{StructureKind::SinglePeaked, *order};
  assert(check_sp(p, out.order));
  return out;
}

std::optional<StructureOrder> detect_sc(const PreferenceProfile& p) {
  if (p.kind == BallotKind::Approval) {
    std::vector<std::vector<int>> rows(p.m);
    for (int v = 1; v <= p.n; ++v)
      for (int a : p.ballots[v]) rows[a - 1].push_back(v);
    auto order = c1p_order(p.n, rows);
    if (!order) return std::nullopt;
    StructureOrder out{StructureKind::SingleCrossing, *order};
    assert(check_sc(p, out.order));
    return out;
  }
  // In any single-crossing order the set of pairs on which a voter disagrees
  // with the first voter only ever grows, so sorting by swap distance from
  // the true first voter (ties carry identical ballots) recovers a witness;
  // trying every voter as the anchor makes the search complete.
  auto swap_distance = [&](int u, int v) {
    int d = 0;
    for (int a = 1; a <= p.m; ++a)
      for (int b = a + 1; b <= p.m; ++b)
        if ((p.rank(u, a) < p.rank(u, b)) != (p.rank(v, a) < p.rank(v, b)))
          ++d;
    return d;
  };
  for (int anchor = 1; anchor <= p.n; ++anchor) {
    std::vector<std::pair<int, int>> keyed;
    for (int v = 1; v <= p.n; ++v) keyed.push_back({swap_distance(anchor, v), v});
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> order;
    for (auto& [d, v] : keyed) order.push_back(v);
    if (check_sc(p, order))
      return StructureOrder{StructureKind::SingleCrossing, order};
  }
  return std::nullopt;
}

PreferenceProfile remove_voters(const PreferenceProfile& p,
                                const std::vector<int>& voters,
                                std::vector<int>* orig_voter_id) {
  std::vector<char> drop(p.n + 1, 0);
  for (int v : voters) {
    if (v < 1 || v > p.n)
      throw std::invalid_argument("remove_voters: voter id out of range");
    drop[v] = 1;
  }
  std::vector<std::vector<int>> ballots;
  std::vector<int> orig{0};
  for (int v = 1; v <= p.n; ++v)
    if (!drop[v]) {
      ballots.push_back(p.ballots[v]);
      orig.push_back(v);
    }
  if (orig_voter_id) *orig_voter_id = orig;
  int n2 = static_cast<int>(ballots.size());
  return p.kind == BallotKind::Approval
             ? make_approval_profile(n2, p.m, ballots)
             : make_linear_profile(n2, p.m, ballots);
}

PreferenceProfile remove_alternatives(const PreferenceProfile& p,
                                      const std::vector<int>& alts,
                                      std::vector<int>* orig_alt_id) {
  std::vector<char> drop(p.m + 1, 0);
  for (int a : alts) {
    if (a < 1 || a > p.m)
      throw std::invalid_argument(
          "remove_alternatives: alternative id out of range");
    drop[a] = 1;
  }
  std::vector<int> new_id(p.m + 1, 0), orig{0};
  int m2 = 0;
  for (int a = 1; a <= p.m; ++a)
    if (!drop[a]) {
      new_id[a] = ++m2;
      orig.push_back(a);
    }
  if (orig_alt_id) *orig_alt_id = orig;
  std::vector<std::vector<int>> ballots(p.n);
  for (int v = 1; v <= p.n; ++v)
    for (int a : p.ballots[v])
      if (!drop[a]) ballots[v - 1].push_back(new_id[a]);
  return p.kind == BallotKind::Approval
             ? make_approval_profile(p.n, m2, ballots)
             : make_linear_profile(p.n, m2, ballots);
}

PreferenceProfile reorder_voters(const PreferenceProfile& p,
                                 const std::vector<int>& order) {
  if (!is_permutation_of(order, p.n))
    throw std::invalid_argument(
        "reorder_voters: order is not a permutation of [n]");
  std::vector<std::vector<int>> ballots(p.n);
  for (int i = 0; i < p.n; ++i) ballots[i] = p.ballots[order[i]];
  return p.kind == BallotKind::Approval
             ? make_approval_profile(p.n, p.m, ballots)
             : make_linear_profile(p.n, p.m, ballots);
}

PreferenceProfile relabel_alternatives(const PreferenceProfile& p,
                                       const std::vector<int>& axis) {
  if (!is_permutation_of(axis, p.m))
    throw std::invalid_argument(
        "relabel_alternatives: order is not a permutation of [m]");
  std::vector<int> new_id(p.m + 1, 0);
  for (int i = 0; i < p.m; ++i) new_id[axis[i]] = i + 1;
  std::vector<std::vector<int>> ballots(p.n);
  for (int v = 1; v <= p.n; ++v)
    for (int a : p.ballots[v]) ballots[v - 1].push_back(new_id[a]);
  return p.kind == BallotKind::Approval
             ? make_approval_profile(p.n, p.m, ballots)
             : make_linear_profile(p.n, p.m, ballots);
}

std::optional<DeletionCertificate> find_deletion_set(const PreferenceProfile& p,
                                                     DeletionTarget kind,
                                                     StructureKind structure,
                                                     int max_t) {
  if (max_t < 0) throw std::invalid_argument("find_deletion_set: max_t < 0");
  int universe = kind == DeletionTarget::Voters ? p.n : p.m;
  max_t = std::min(max_t, universe);
  // Subsets of each size in lexicographic order of the id list, so the
  // certificate is the unique smallest one with the smallest id set.
  std::vector<int> pick;
  std::optional<DeletionCertificate> result;
  auto try_subset = [&](const std::vector<int>& del) -> bool {
    PreferenceProfile reduced = kind == DeletionTarget::Voters
                                    ? remove_voters(p, del)
                                    : remove_alternatives(p, del);
    auto witness = structure == StructureKind::SinglePeaked
                       ? detect_sp(reduced)
                       : detect_sc(reduced);
    if (!witness) return false;
    result = DeletionCertificate{kind, del, *witness};
    return true;
  };
  for (int t = 0; t <= max_t; ++t) {
    pick.assign(t, 0);
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
      if (try_subset(pick)) return result;
      // next t-combination of [1..universe]
      int i = t - 1;
      while (i >= 0 && pick[i] == universe - (t - 1 - i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace mw
