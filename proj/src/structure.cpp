#include "mwsolve/structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mwsolve/recognition.hpp"

namespace mw {

namespace {

constexpr int kTransformIterCap = 1000000;

std::string alt(int a) { return "a" + std::to_string(a); }

}  // namespace

bool StructureIndex::dominates(int a, int b) const {
  if (a == b || !active[a] || !active[b]) return false;
  if (!(leftmost[a] <= leftmost[b] && rightmost[b] <= rightmost[a]))
    return false;
  if (leftmost[a] == leftmost[b] && rightmost[a] == rightmost[b])
    return a < b;  // identical approval sets: lower id dominates
  return true;
}

bool StructureIndex::is_incomparable(int a, int b) const {
  return a != b && active[a] && active[b] && !dominates(a, b) &&
         !dominates(b, a);
}

bool StructureIndex::in_earlier(int a, int b) const {
  return is_incomparable(a, b) && leftmost[a] < leftmost[b];
}

StructureIndex build_index(const PreferenceProfile& p,
                           const std::vector<int>& sc_order) {
  if (p.kind != BallotKind::Approval)
    throw std::invalid_argument("build_index requires an approval profile");
  if (!check_sc(p, sc_order))
    throw std::invalid_argument(
        "profile is not single-crossing under the given order");
  StructureIndex ix;
  ix.prof = reorder_voters(p, sc_order);
  ix.n = p.n;
  ix.m = p.m;
  ix.leftmost.assign(ix.m + 1, 0);
  ix.rightmost.assign(ix.m + 1, 0);
  ix.active.assign(ix.m + 1, 0);
  for (int a = 1; a <= ix.m; ++a) {
    for (int v = 1; v <= ix.n; ++v) {
      if (!ix.prof.approves(v, a)) continue;
      if (ix.leftmost[a] == 0) ix.leftmost[a] = v;
      ix.rightmost[a] = v;
    }
    if (ix.leftmost[a] != 0)
      ix.active[a] = 1;
    else
      ix.empty_alternatives.push_back(a);
  }
  ix.dom.assign(ix.m + 1, {});
  ix.sub.assign(ix.m + 1, {});
  ix.incom.assign(ix.m + 1, {});
  ix.earlier.assign(ix.m + 1, {});
  ix.later.assign(ix.m + 1, {});
  for (int a = 1; a <= ix.m; ++a) {
    if (!ix.active[a]) continue;
    for (int b = 1; b <= ix.m; ++b) {
      if (a == b || !ix.active[b]) continue;
      if (ix.dominates(b, a)) {
        ix.dom[a].push_back(b);
        continue;
      }
      if (ix.dominates(a, b)) {
        ix.sub[a].push_back(b);
        continue;
      }
      ix.incom[a].push_back(b);
      if (ix.leftmost[b] < ix.leftmost[a])
        ix.earlier[a].push_back(b);
      else
        ix.later[a].push_back(b);
    }
  }
  // Levels: dominators have strictly larger approval sets (or the same set
  // and a lower id), so processing by (set size desc, id asc) sees every
  // dominator before its subordinates.
  std::vector<int> order;
  for (int a = 1; a <= ix.m; ++a)
    if (ix.active[a]) order.push_back(a);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int sa = ix.rightmost[a] - ix.leftmost[a];
    int sb = ix.rightmost[b] - ix.leftmost[b];
    if (sa != sb) return sa > sb;
    return a < b;
  });
  ix.level.assign(ix.m + 1, 0);
  for (int a : order) {
    int lv = 1;
    for (int d : ix.dom[a]) lv = std::max(lv, ix.level[d] + 1);
    ix.level[a] = lv;
  }
  ix.canonical_order = order;
  std::sort(ix.canonical_order.begin(), ix.canonical_order.end(),
            [&](int a, int b) {
              if (ix.level[a] != ix.level[b]) return ix.level[a] < ix.level[b];
              if (ix.leftmost[a] != ix.leftmost[b])
                return ix.leftmost[a] < ix.leftmost[b];
              return a < b;
            });
  return ix;
}

std::vector<int> level_one_within(const StructureIndex& ix,
                                  const std::vector<int>& subset) {
  std::vector<int> out;
  for (int a : subset) {
    if (!ix.active[a]) continue;
    bool dominated = false;
    for (int b : subset)
      if (ix.dominates(b, a)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> canonical_order_of(const StructureIndex& ix,
                                    const std::vector<int>& subset) {
  std::vector<int> actives;
  for (int a : subset)
    if (ix.active[a]) actives.push_back(a);
  std::sort(actives.begin(), actives.end());
  actives.erase(std::unique(actives.begin(), actives.end()), actives.end());
  // Within-subset levels, dominators first (set size desc, id asc).
  std::vector<int> by_size = actives;
  std::sort(by_size.begin(), by_size.end(), [&](int a, int b) {
    int sa = ix.rightmost[a] - ix.leftmost[a];
    int sb = ix.rightmost[b] - ix.leftmost[b];
    if (sa != sb) return sa > sb;
    return a < b;
  });
  std::vector<int> lv(ix.m + 1, 0);
  for (int a : by_size) {
    int best = 1;
    for (int d : actives)
      if (ix.dominates(d, a)) best = std::max(best, lv[d] + 1);
    lv[a] = best;
  }
  std::sort(actives.begin(), actives.end(), [&](int a, int b) {
    if (lv[a] != lv[b]) return lv[a] < lv[b];
    if (ix.leftmost[a] != ix.leftmost[b])
      return ix.leftmost[a] < ix.leftmost[b];
    return a < b;
  });
  return actives;
}

std::vector<int> inbet(const StructureIndex& ix, int a, int b) {
  if (a < 1 || a > ix.m || b < 1 || b > ix.m || !ix.active[a] ||
      !ix.active[b])
    throw std::invalid_argument("inbet: alternatives must be in the index");
  std::vector<int> out;
  if (a == b) return out;
  for (int c = 1; c <= ix.m; ++c) {
    if (!ix.active[c] || !ix.is_incomparable(c, a) ||
        !ix.is_incomparable(c, b))
      continue;
    if (ix.leftmost[c] >= ix.leftmost[a] && ix.rightmost[c] <= ix.rightmost[b])
      out.push_back(c);
  }
  return out;
}

std::vector<int> inbet_hat(const StructureIndex& ix, int a, int b) {
  return level_one_within(ix, inbet(ix, a, b));
}

std::vector<int> usable_set(const StructureIndex& ix, int c, int i, int j,
                            int cp, int ip, int jp) {
  if (c < 1 || c > ix.m || !ix.active[c])
    throw std::invalid_argument("usable_set: c must be in the index");
  std::vector<int> out;
  if (i > j) return out;
  if (cp == 0 && ip == 0 && jp == 0) {
    cp = c;
    ip = i;
    jp = j;
  }
  if (cp < 1 || cp > ix.m || !ix.active[cp]) return out;
  // Guard: c' dominates c (or equals it), [i,j] ⊆ A(c) ∩ [i',j'],
  // [i',j'] ⊆ A(c').
  if (!(cp == c || ix.dominates(cp, c))) return out;
  if (!(ix.leftmost[c] <= i && j <= ix.rightmost[c] && ip <= i && j <= jp))
    return out;
  if (!(ix.leftmost[cp] <= ip && jp <= ix.rightmost[cp])) return out;
  for (int a : ix.sub[c]) {
    if (ix.leftmost[a] > j || ix.rightmost[a] < i) continue;  // A(a)∩[i,j]=∅
    bool usable = false;
    if (ix.leftmost[a] >= i) {
      usable = true;  // condition (i)
    } else if (ix.leftmost[a] >= ip) {
      // condition (ii): every b in Dom(a) ∩ Sub(c') ∩ Earlier(c) starts
      // before i' and has a dominator in Earlier(c').
      usable = true;
      for (int b : ix.dom[a]) {
        if (!ix.dominates(cp, b) || !ix.in_earlier(b, c)) continue;
        bool ok = ix.leftmost[b] < ip;
        if (ok) {
          bool found = false;
          for (int bp : ix.dom[b])
            if (ix.in_earlier(bp, cp)) {
              found = true;
              break;
            }
          ok = found;
        }
        if (!ok) {
          usable = false;
          break;
        }
      }
    } else {
      // condition (iii): l(a) < i' and every b in Dom(a) ∩ Incom(c) has c
      // in Earlier(b).
      usable = true;
      for (int b : ix.dom[a]) {
        if (!ix.is_incomparable(b, c)) continue;
        if (!ix.in_earlier(c, b)) {
          usable = false;
          break;
        }
      }
    }
    if (usable) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> top_usable(const StructureIndex& ix, int c, int i, int j,
                            int cp, int ip, int jp) {
  return level_one_within(ix, usable_set(ix, c, i, j, cp, ip, jp));
}

// --- Solution-level machinery ------------------------------------------------

namespace {

void validate_partial(const StructureIndex& ix,
                      const PartialHappyAssignment& p) {
  if ((int)p.assign.size() != ix.n + 1)
    throw std::invalid_argument("assignment vector must have size n+1");
  if (p.i_hat <= p.j_hat && (p.i_hat < 1 || p.j_hat > ix.n))
    throw std::invalid_argument("window must lie within [1, n]");
  std::vector<char> wmask(ix.m + 1, 0);
  for (int a : p.committee) {
    if (a < 1 || a > ix.m)
      throw std::invalid_argument("committee member out of range");
    if (wmask[a])
      throw std::invalid_argument("duplicate committee member");
    wmask[a] = 1;
  }
  for (int v = 1; v <= ix.n; ++v) {
    int a = p.assign[v];
    if (a == 0) continue;
    if (a < 1 || a > ix.m || !wmask[a])
      throw std::invalid_argument("voter assigned to a non-committee member");
    if (v < p.i_hat || v > p.j_hat)
      throw std::invalid_argument("voter assigned outside the window");
  }
}

// happy[a] = ascending positions of voters happily assigned to a.
std::vector<std::vector<int>> happy_sets(const StructureIndex& ix,
                                         const PartialHappyAssignment& p) {
  std::vector<std::vector<int>> h(ix.m + 1);
  int lo = std::max(1, p.i_hat), hi = std::min(ix.n, p.j_hat);
  for (int v = lo; v <= hi; ++v) {
    int a = p.assign[v];
    if (a != 0 && ix.approves(v, a)) h[a].push_back(v);
  }
  return h;
}

std::vector<std::string> nt_violations(
    const StructureIndex& ix, const std::vector<std::vector<int>>& happy) {
  std::vector<std::string> out;
  std::vector<int> used;
  for (int a = 1; a <= ix.m; ++a)
    if (!happy[a].empty()) used.push_back(a);
  for (size_t s = 0; s < used.size(); ++s) {
    for (size_t t = 0; t < used.size(); ++t) {
      if (s == t) continue;
      int x = used[s], y = used[t];
      if (ix.in_earlier(x, y)) {
        if (happy[x].back() >= happy[y].front())
          out.push_back("NT (i): " + alt(x) + " starts before " + alt(y) +
                        " but does not precede it");
      } else if (ix.dominates(x, y)) {
        for (int v : happy[x])
          if (v >= ix.leftmost[y] && v <= happy[y].back()) {
            out.push_back("NT (ii): dominator " + alt(x) +
                          " has a happy voter " + std::to_string(v) +
                          " inside [l(" + alt(y) + "), max voter of " +
                          alt(y) + "]");
            break;
          }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<int> happy_voters(const StructureIndex& ix,
                              const PartialHappyAssignment& p, int a) {
  std::vector<int> out;
  int lo = std::max(1, p.i_hat), hi = std::min(ix.n, p.j_hat);
  for (int v = lo; v <= hi; ++v)
    if (p.assign[v] == a && ix.approves(v, a)) out.push_back(v);
  return out;
}

std::vector<int> used_alternatives(const StructureIndex& ix,
                                   const PartialHappyAssignment& p) {
  auto h = happy_sets(ix, p);
  std::vector<int> out;
  for (int a = 1; a <= ix.m; ++a)
    if (!h[a].empty()) out.push_back(a);
  return out;
}

long long partial_misrep(const StructureIndex& ix,
                         const PartialHappyAssignment& p) {
  long long total = 0;
  for (int v = 1; v <= ix.n; ++v) {
    int a = p.assign[v];
    if (a != 0 && !ix.approves(v, a)) ++total;
  }
  return total;
}

std::vector<long long> IntervalCollection::signature() const {
  std::vector<long long> sig;
  sig.reserve(2 * intervals.size());
  for (const auto& iv : intervals) sig.push_back(iv.empty() ? 0 : iv.j);
  for (const auto& iv : intervals) sig.push_back(iv.empty() ? -1 : -iv.i);
  return sig;
}

namespace {

// The six goodness conditions, evaluated against precomputed happy sets.
bool good_internal(const StructureIndex& ix, const PartialHappyAssignment& p,
                   const std::vector<std::vector<int>>& happy,
                   const std::vector<int>& members,
                   const std::vector<VoterInterval>& ivs) {
  int t = (int)members.size();
  for (int l = 0; l < t; ++l) {
    int a = members[l];
    const VoterInterval& iv = ivs[l];
    if (happy[a].empty()) {
      if (!iv.empty()) return false;  // (i)
      continue;
    }
    if (iv.empty()) return false;  // (ii): happy set not contained
    if (happy[a].front() < iv.i || happy[a].back() > iv.j) return false;
    if (iv.i < ix.leftmost[a] || iv.j > ix.rightmost[a]) return false;
    if (iv.i < p.i_hat || iv.j > p.j_hat) return false;  // (iv)
    for (int v = iv.i; v <= iv.j; ++v) {                 // (iii)
      int c = p.assign[v];
      if (c != 0 && ix.approves(v, c) && ix.is_incomparable(c, a))
        return false;
    }
  }
  for (int s = 0; s < t; ++s) {
    if (ivs[s].empty()) continue;
    for (int r = 0; r < t; ++r) {
      if (r == s || ivs[r].empty()) continue;
      bool disjoint = ivs[s].j < ivs[r].i || ivs[r].j < ivs[s].i;
      if (ix.is_incomparable(members[s], members[r])) {
        if (!disjoint) return false;  // (v)
      } else if (ix.dominates(members[r], members[s])) {
        // (vi): subordinate's interval nested in the dominator's or disjoint
        bool nested = ivs[r].i <= ivs[s].i && ivs[s].j <= ivs[r].j;
        if (!nested && !disjoint) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_good_collection(const StructureIndex& ix,
                        const PartialHappyAssignment& p,
                        const IntervalCollection& coll) {
  validate_partial(ix, p);
  if (coll.members != canonical_order_of(ix, p.committee))
    throw std::invalid_argument(
        "collection members must be the active committee in canonical order");
  if (coll.intervals.size() != coll.members.size())
    throw std::invalid_argument("one interval per member required");
  auto h = happy_sets(ix, p);
  return good_internal(ix, p, h, coll.members, coll.intervals);
}

IntervalCollection maximally_good(const StructureIndex& ix,
                                  const PartialHappyAssignment& p) {
  validate_partial(ix, p);
  auto h = happy_sets(ix, p);
  auto nt = nt_violations(ix, h);
  if (!nt.empty())
    throw std::invalid_argument("maximally_good requires an NT solution: " +
                                nt.front());
  IntervalCollection coll;
  coll.members = canonical_order_of(ix, p.committee);
  int t = (int)coll.members.size();
  coll.intervals.assign(t, VoterInterval{});
  for (int l = 0; l < t; ++l) {
    int a = coll.members[l];
    if (!h[a].empty()) coll.intervals[l] = {h[a].front(), h[a].back()};
  }
  if (!good_internal(ix, p, h, coll.members, coll.intervals))
    throw std::logic_error("happy spans of an NT solution must be good");
  // Greedy signature maximization: right endpoints in canonical priority,
  // then left endpoints; repeated until stable. Each accepted change grows
  // the signature, so the loop terminates.
  for (int round = 0;; ++round) {
    if (round > (ix.n + 2) * (t + 2) + 4)
      throw std::logic_error("interval extension failed to stabilize");
    bool changed = false;
    for (int l = 0; l < t; ++l) {
      if (coll.intervals[l].empty()) continue;
      for (int cand = p.j_hat; cand > coll.intervals[l].j; --cand) {
        int save = coll.intervals[l].j;
        coll.intervals[l].j = cand;
        if (good_internal(ix, p, h, coll.members, coll.intervals)) {
          changed = true;
          break;
        }
        coll.intervals[l].j = save;
      }
    }
    for (int l = 0; l < t; ++l) {
      if (coll.intervals[l].empty()) continue;
      for (int cand = p.i_hat; cand < coll.intervals[l].i; ++cand) {
        int save = coll.intervals[l].i;
        coll.intervals[l].i = cand;
        if (good_internal(ix, p, h, coll.members, coll.intervals)) {
          changed = true;
          break;
        }
        coll.intervals[l].i = save;
      }
    }
    if (!changed) break;
  }
  return coll;
}

StructureReport verify_mnt(const StructureIndex& ix,
                           const PartialHappyAssignment& p,
                           const std::vector<int>& a_set) {
  validate_partial(ix, p);
  StructureReport rep;
  std::vector<char> amask(ix.m + 1, 0), wmask(ix.m + 1, 0);
  for (int a : a_set) {
    if (a < 1 || a > ix.m)
      throw std::invalid_argument("alternative set member out of range");
    amask[a] = 1;
  }
  for (int a : p.committee) wmask[a] = 1;
  auto h = happy_sets(ix, p);
  // Monotone (i): dominators (within A) of committee members are members.
  for (int c : p.committee)
    for (int d : ix.dom[c])
      if (amask[d] && !wmask[d])
        rep.violations.push_back("monotone (i): " + alt(d) + " dominates member " +
                                 alt(c) + ", lies in A, but is not in the committee");
  // Monotone (ii): a dominated alternative with a happy voter forces one for
  // the dominator.
  for (int a = 1; a <= ix.m; ++a) {
    if (!amask[a]) continue;
    for (int b = 1; b <= ix.m; ++b) {
      if (!amask[b] || !ix.dominates(a, b)) continue;
      if (!h[b].empty() && h[a].empty())
        rep.violations.push_back("monotone (ii): " + alt(b) +
                                 " has a happy voter but its dominator " +
                                 alt(a) + " in A has none");
    }
  }
  auto nt = nt_violations(ix, h);
  rep.violations.insert(rep.violations.end(), nt.begin(), nt.end());
  rep.ok = rep.violations.empty();
  return rep;
}

PartialHappyAssignment mnt_transform(const StructureIndex& ix,
                                     PartialHappyAssignment p,
                                     const std::vector<int>& a_set) {
  validate_partial(ix, p);
  std::vector<char> amask(ix.m + 1, 0);
  for (int a : a_set) {
    if (a < 1 || a > ix.m)
      throw std::invalid_argument("alternative set member out of range");
    amask[a] = 1;
  }
  std::vector<char> wmask(ix.m + 1, 0);
  for (int a : p.committee) wmask[a] = 1;

  // Step 1: monotone repair.
  auto has_happy = [&](int a) {
    for (int v = std::max(1, p.i_hat); v <= std::min(ix.n, p.j_hat); ++v)
      if (p.assign[v] == a && ix.approves(v, a)) return true;
    return false;
  };
  auto non_monotonic = [&](int d, int s) {
    if (!ix.dominates(d, s)) return false;
    if (wmask[s] && amask[d] && !wmask[d]) return true;
    return amask[d] != 0 && amask[s] != 0 && has_happy(s) && !has_happy(d);
  };
  for (int iter = 0;; ++iter) {
    if (iter > kTransformIterCap)
      throw std::logic_error("monotone repair failed to terminate");
    int pd = 0, ps = 0;
    for (int d = 1; d <= ix.m && pd == 0; ++d) {
      for (int s = 1; s <= ix.m && pd == 0; ++s) {
        if (!non_monotonic(d, s)) continue;
        // Extremal pair: the subordinate has no non-monotonic pair with its
        // own subordinates; the dominator none with its own dominators.
        bool extremal = true;
        for (int c : ix.sub[s])
          if (non_monotonic(s, c)) {
            extremal = false;
            break;
          }
        if (extremal)
          for (int c : ix.dom[d])
            if (non_monotonic(c, d)) {
              extremal = false;
              break;
            }
        if (extremal) {
          pd = d;
          ps = s;
        }
      }
    }
    if (pd == 0) {
      bool any = false;
      for (int d = 1; d <= ix.m && !any; ++d)
        for (int s = 1; s <= ix.m && !any; ++s) any = non_monotonic(d, s);
      if (!any) break;
      throw std::logic_error("no extremal non-monotonic pair found");
    }
    if (!wmask[pd]) {
      // Replace the subordinate with its dominator.
      wmask[ps] = 0;
      wmask[pd] = 1;
      for (int& c : p.committee)
        if (c == ps) c = pd;
      for (int v = 1; v <= ix.n; ++v)
        if (p.assign[v] == ps) p.assign[v] = pd;
    } else {
      // Swap the two assignment classes inside the window.
      for (int v = std::max(1, p.i_hat); v <= std::min(ix.n, p.j_hat); ++v) {
        if (p.assign[v] == pd)
          p.assign[v] = ps;
        else if (p.assign[v] == ps)
          p.assign[v] = pd;
      }
    }
  }

  // Step 2: make incomparable pairs neatly ordered by exchanging the
  // outermost conflicting happy voters.
  for (int iter = 0;; ++iter) {
    if (iter > kTransformIterCap)
      throw std::logic_error("incomparable repair failed to terminate");
    auto h = happy_sets(ix, p);
    int px = 0, py = 0;
    for (int x = 1; x <= ix.m; ++x) {
      if (h[x].empty()) continue;
      for (int y = 1; y <= ix.m; ++y) {
        if (h[y].empty() || !ix.in_earlier(x, y)) continue;
        if (h[x].back() < h[y].front()) continue;  // already NT
        if (px == 0 || ix.leftmost[x] < ix.leftmost[px] ||
            (ix.leftmost[x] == ix.leftmost[px] &&
             ix.leftmost[y] > ix.leftmost[py])) {
          px = x;
          py = y;
        }
      }
    }
    if (px == 0) break;
    while (true) {
      auto hx = happy_voters(ix, p, px), hy = happy_voters(ix, p, py);
      if (hx.back() < hy.front()) break;
      int va = hx.back(), vb = hy.front();
      p.assign[va] = py;
      p.assign[vb] = px;
    }
  }

  // Step 3: clear conflict sets of dominated alternatives, innermost and
  // earliest first.
  for (int iter = 0;; ++iter) {
    if (iter > kTransformIterCap)
      throw std::logic_error("dominator repair failed to terminate");
    auto h = happy_sets(ix, p);
    auto conflict = [&](int a) {
      std::vector<int> out;
      if (h[a].empty()) return out;
      for (int v = ix.leftmost[a]; v <= h[a].back(); ++v)
        if (p.assign[v] != 0 && ix.dominates(p.assign[v], a))
          out.push_back(v);
      return out;
    };
    int best = 0;
    std::vector<int> best_conf;
    for (int a : p.committee) {
      if (!ix.active[a]) continue;
      auto conf = conflict(a);
      if (conf.empty()) continue;
      if (best == 0 || ix.rightmost[a] < ix.rightmost[best] ||
          (ix.rightmost[a] == ix.rightmost[best] &&
           (ix.leftmost[a] > ix.leftmost[best] ||
            (ix.leftmost[a] == ix.leftmost[best] && a > best)))) {
        best = a;
        best_conf = conf;
      }
    }
    if (best == 0) break;
    int vi = best_conf.back();
    int b = p.assign[vi];
    int vj = h[best].back();
    p.assign[vi] = best;
    p.assign[vj] = b;
  }
  return p;
}

StructureReport check_interval_lemmas(const StructureIndex& ix,
                                      const PartialHappyAssignment& p) {
  auto h = happy_sets(ix, p);
  auto nt = nt_violations(ix, h);
  if (!nt.empty())
    throw std::invalid_argument(
        "check_interval_lemmas requires an NT solution: " + nt.front());
  IntervalCollection coll = maximally_good(ix, p);
  StructureReport rep;
  int t = (int)coll.members.size();
  std::vector<int> used = used_alternatives(ix, p);
  // (a) every h-assignable voter in the window is covered by some interval.
  for (int v = std::max(1, p.i_hat); v <= std::min(ix.n, p.j_hat); ++v) {
    bool assignable = false;
    for (int a : used)
      if (ix.approves(v, a)) {
        assignable = true;
        break;
      }
    if (!assignable) continue;
    bool covered = false;
    for (const auto& iv : coll.intervals)
      if (!iv.empty() && iv.contains(v)) {
        covered = true;
        break;
      }
    if (!covered)
      rep.violations.push_back("coverage: h-assignable voter " +
                               std::to_string(v) + " lies in no interval");
  }
  auto interval_of = [&](int a) -> const VoterInterval* {
    for (int l = 0; l < t; ++l)
      if (coll.members[l] == a) return &coll.intervals[l];
    return nullptr;
  };
  // (b) a member with a dominator member owning a nonempty interval has its
  // interval nested inside some dominator member's interval.
  for (int x : coll.members) {
    const VoterInterval* ivx = interval_of(x);
    bool hypothesis = false;
    for (int y : coll.members)
      if (ix.dominates(y, x) && !interval_of(y)->empty()) {
        hypothesis = true;
        break;
      }
    if (!hypothesis) continue;
    bool nested = false;
    for (int z : coll.members) {
      if (!ix.dominates(z, x)) continue;
      const VoterInterval* ivz = interval_of(z);
      if (ivx->empty() ||
          (ivz->i <= ivx->i && ivx->j <= ivz->j && !ivz->empty())) {
        nested = true;
        break;
      }
    }
    if (!nested)
      rep.violations.push_back("containment: interval of " + alt(x) +
                               " is in no dominator member's interval");
  }
  // (c) witness for a used dominated alternative whose interval is not
  // nested in a used dominator's interval.
  for (int x : used) {
    const VoterInterval* ivx = interval_of(x);
    for (int y : used) {
      if (!ix.dominates(y, x)) continue;
      const VoterInterval* ivy = interval_of(y);
      if (ivy->i <= ivx->i && ivx->j <= ivy->j) continue;  // nested: no claim
      bool found = false;
      for (int z : coll.members) {
        if (!ix.dominates(z, x) || ix.dominates(y, z)) continue;
        const VoterInterval* ivz = interval_of(z);
        if (ivz->empty()) continue;
        if (!(ivz->i <= ivx->i && ivx->j <= ivz->j)) continue;
        if (!(ivz->j < ivy->i || ivy->j < ivz->i)) continue;
        auto hz = h[z];
        bool witness = true;
        if (ivy->j < ivx->i) {
          witness = false;
          for (int v : hz)
            if (v >= ivy->j + 1 && v <= ivx->i - 1) witness = true;
        } else if (ivx->j < ivy->i) {
          witness = false;
          for (int v : hz)
            if (v <= ivy->i - 1) witness = true;
        }
        if (witness) {
          found = true;
          break;
        }
      }
      if (!found)
        rep.violations.push_back("witness: no alternative shields " + alt(x) +
                                 " from dominator " + alt(y));
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

}  // namespace mw
