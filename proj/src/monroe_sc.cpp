#include "mwsolve/monroe_sc.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mwsolve/oracle.hpp"

namespace mw {
namespace {

using monroe_sc_detail::Key;

// Lexicographic rank that every recursive call must strictly decrease:
// (k_hi + k_lo, a != b, has a voter interval, interval length, n_a + n_b,
// n_star, B). Flagged-voters-only entries (i = j = 0) rank below every
// interval entry of the same prefix, which is what makes the absorption
// operand well-founded.
using OrderKey = std::tuple<int, int, int, int, int, int, int>;

OrderKey order_key(const DPConfiguration& c) {
  return {c.k_hi + c.k_lo, c.a != c.b ? 1 : 0, c.i != 0 ? 1 : 0,
          c.j - c.i, c.n_a + c.n_b, c.n_star, c.B};
}

uint64_t pack6(int a, int b, int c, int d, int e, int f) {
  return static_cast<uint64_t>(a) | static_cast<uint64_t>(b) << 8 |
         static_cast<uint64_t>(c) << 16 | static_cast<uint64_t>(d) << 24 |
         static_cast<uint64_t>(e) << 32 | static_cast<uint64_t>(f) << 40;
}

// Mixed-radix increment over the packed count vector; caps are per
// component. Starting from 0, visits every componentwise-bounded vector.
bool next_subvec(uint32_t& s, uint32_t caps) {
  for (int z = 0; z < 3; ++z) {
    int sv = avec_get(s, z), cv = avec_get(caps, z);
    if (sv < cv) {
      s = avec_set(s, z, sv + 1);
      return true;
    }
    s = avec_set(s, z, 0);
  }
  return false;
}

class Solver {
 public:
  explicit Solver(MonroeScContext& ctx) : ctx_(ctx), ix_(ctx.ix) {}

  long long value(const DPConfiguration& c, const OrderKey* parent) {
    if (!guards_pass(c)) return kNegInf;
    if (ctx_.check_order && parent != nullptr && !(order_key(c) < *parent)) {
      throw std::logic_error("table recursion does not strictly descend");
    }
    Key key = pack(c);
    auto it = ctx_.memo.find(key);
    if (it != ctx_.memo.end()) return it->second;
    OrderKey my = order_key(c);
    long long best = kNegInf;
    if (c.i == 0) {
      // Flagged-voters-only entry: the guards checked that the boundary
      // alternative can serve exactly the flagged deleted voters.
      best = c.n_a;
    } else if (c.a == 0) {
      best = zero_base(c);
      if (c.avec != 0 && c.j > c.i) {
        best = std::max(best, zero_split_operand(c, my, nullptr));
      }
    } else {
      if (c.a == c.b && c.k_hi == 0 && c.k_lo == 0 && c.B == 0 &&
          c.avec == 0 && c.n_a >= std::popcount(c.vbar) &&
          (c.vbar == 0 || (c.vbar & ~ctx_.appr_flag[c.a]) == 0)) {
        best = c.n_a;
      }
      if (c.a == c.b) {
        best = std::max(best, same_pair_operand(c, my, nullptr));
        best = std::max(best, same_split_operand(c, my, nullptr));
        if (c.vbar != 0) best = std::max(best, absorb_operand(c, my, nullptr));
      } else {
        best = std::max(best, cross_operand(c, my, nullptr));
      }
      if (c.avec != 0) best = std::max(best, gap_operand(c, my, nullptr));
    }
    ctx_.memo.emplace(key, best);
    return best;
  }

  // Re-derives one maximizing decomposition of c (whose value is target) and
  // records every committee member the decomposition introduces.
  void replay(const DPConfiguration& c, long long target, std::set<int>& members) {
    if (target == kNegInf) throw std::logic_error("reconstruction hit an infeasible entry");
    if (c.i == 0 || c.a == 0) return;  // weave entries introduce no members
    if (c.a == c.b && c.k_hi == 0 && c.k_lo == 0 && c.B == 0 && c.avec == 0 &&
        c.n_a >= std::popcount(c.vbar) &&
        (c.vbar == 0 || (c.vbar & ~ctx_.appr_flag[c.a]) == 0) &&
        target == c.n_a) {
      return;  // base decomposition: only the boundary alternative serves [i, j]
    }
    ReplayHit hit;
    hit.target = target;
    hit.members = &members;
    OrderKey my = order_key(c);
    if (c.a == c.b) {
      if (same_pair_operand(c, my, &hit) != kNegInf) return;
      if (same_split_operand(c, my, &hit) != kNegInf) return;
      if (c.vbar != 0 && absorb_operand(c, my, &hit) != kNegInf) return;
    } else {
      if (cross_operand(c, my, &hit) != kNegInf) return;
    }
    if (c.avec != 0 && gap_operand(c, my, &hit) != kNegInf) return;
    throw std::logic_error("reconstruction failed to re-derive a table value");
  }

 private:
  // When set, operand enumeration stops at the first decomposition matching
  // `target`, records introduced members, and recurses into the children.
  struct ReplayHit {
    long long target = kNegInf;
    std::set<int>* members = nullptr;
  };

  MonroeScContext& ctx_;
  const StructureIndex& ix_;

  Key pack(const DPConfiguration& c) const {
    Key k;
    k.lo = static_cast<uint64_t>(c.a) | static_cast<uint64_t>(c.b) << 8 |
           static_cast<uint64_t>(c.i) << 16 | static_cast<uint64_t>(c.j) << 24 |
           static_cast<uint64_t>(c.n_a) << 32 |
           static_cast<uint64_t>(c.n_b) << 40 |
           static_cast<uint64_t>(c.n_star) << 48 |
           static_cast<uint64_t>(c.B) << 56;
    k.hi = static_cast<uint64_t>(c.k_hi) | static_cast<uint64_t>(c.k_lo) << 8 |
           static_cast<uint64_t>(c.c_p) << 16 |
           static_cast<uint64_t>(c.i_p) << 24 |
           static_cast<uint64_t>(c.j_p) << 32;
    k.ext = static_cast<uint64_t>(c.vbar) | static_cast<uint64_t>(c.avec) << 8;
    return k;
  }

  bool is_ceil(int load) const {
    return ctx_.n_mod_k != 0 && load == ctx_.ceil_load;
  }

  // Committee-size cost split of a member pair: f1 = members that must take a
  // ceiling load, f2 = members that fit a floor load.
  int f1(int c1, int c2, int l1, int l2) const {
    if (c1 != c2 && is_ceil(l1) && is_ceil(l2)) return 2;
    if (!is_ceil(l1) && !is_ceil(l2)) return 0;
    return 1;
  }

  int approvers_in(int alt, int i, int j) const {
    int lo = std::max(i, ix_.leftmost[alt]);
    int hi = std::min(j, ix_.rightmost[alt]);
    return std::max(0, hi - lo + 1);
  }

  bool active_ok(int alt) const {
    return alt >= 1 && alt <= ix_.m && ix_.active[alt];
  }

  // Flagged deleted voters approving `alt` among the given flag set.
  int flag_cap(int alt, uint32_t vbar) const {
    if (vbar == 0) return 0;
    return std::popcount(vbar & ctx_.appr_flag[alt]);
  }

  // Voters inside [i, j] approving reserved dimension z.
  int dalt_count(int z, int i, int j) const {
    int cnt = 0;
    for (int q = i; q <= j; ++q) cnt += (ctx_.dalt_mask[q] >> z) & 1;
    return cnt;
  }

  bool guards_pass(const DPConfiguration& c) {
    const int n = ix_.n;
    if (c.vbar != 0 &&
        (ctx_.weave_t <= 0 || (c.vbar >> ctx_.weave_t) != 0)) return false;
    if (c.avec != 0) {
      if (ctx_.weave_ta <= 0) return false;
      for (int z = 0; z < 3; ++z) {
        int az = avec_get(c.avec, z);
        if (az > (z < ctx_.weave_ta ? ctx_.acap[z] : 0)) return false;
      }
    }
    if (c.B != 0 && c.B != 1) return false;
    if (c.n_star < 0 || c.n_star > n) return false;

    if (c.i == 0 || c.j == 0) {
      // Flagged-voters-only entry (a, a, 0, 0): the boundary alternative
      // serves exactly the flagged deleted voters and no range voters.
      if (c.i != 0 || c.j != 0) return false;
      if (!active_ok(c.a) || c.b != c.a) return false;
      if (c.k_hi != 0 || c.k_lo != 0) return false;
      if (c.n_star != 0 || c.avec != 0) return false;
      if (c.c_p != 0 || c.i_p != 0 || c.j_p != 0) return false;
      if (c.vbar == 0) return false;
      if (c.n_a != c.n_b || c.n_a != std::popcount(c.vbar)) return false;
      if (c.n_a > ctx_.ceil_load) return false;
      if ((c.vbar & ~ctx_.appr_flag[c.a]) != 0) return false;
      return true;
    }

    if (c.a == 0 || c.b == 0) {
      // Reserved-alternatives-only range (0, 0, i, j): voters of [i, j] may
      // only be served by designated outside alternatives.
      if (c.a != 0 || c.b != 0) return false;
      if (c.i < 1 || c.j > n || c.i > c.j) return false;
      if (c.k_hi != 0 || c.k_lo != 0) return false;
      if (c.n_a != 0 || c.n_b != 0) return false;
      if (c.B != 0) return false;  // canonical: the value is B-independent
      if (c.vbar != 0) return false;
      if (c.c_p != 0 || c.i_p != 0 || c.j_p != 0) return false;
      if (c.j - c.i + 1 < c.n_star + avec_size(c.avec)) return false;
      for (int z = 0; z < ctx_.weave_ta; ++z) {
        if (avec_get(c.avec, z) > dalt_count(z, c.i, c.j)) return false;
      }
      return true;
    }

    if (!active_ok(c.a) || !active_ok(c.b)) return false;
    if (c.i < 1 || c.j > n || c.i > c.j) return false;
    if (c.k_hi < 0 || c.k_lo < 0 || c.k_hi > ix_.m || c.k_lo > ix_.m) return false;
    if (c.n_a < 0 || c.n_b < 0 || c.n_a > ctx_.ceil_load || c.n_b > ctx_.ceil_load) return false;
    if (c.c_p == 0) {
      if (c.i_p != 0 || c.j_p != 0) return false;
    } else {
      if (!active_ok(c.c_p)) return false;
      if (c.i_p < 1 || c.j_p > n || c.i_p > c.j_p) return false;
    }
    // Interval inside the boundary alternatives' approval span.
    if (ix_.leftmost[c.a] > c.i || c.j > ix_.rightmost[c.b]) return false;
    // Boundary pair ordered.
    if (c.a != c.b && !ix_.in_earlier(c.a, c.b)) return false;
    // Enough voters for the promised loads plus unassigned slack. Flagged
    // deleted voters can carry part of the boundary loads (they are not in
    // [i, j]); reserved counts consume interval voters on top.
    const int sz = std::popcount(c.vbar);
    const int asz = avec_size(c.avec);
    if (c.a != c.b) {
      if (c.j - c.i + 1 + sz < c.n_a + c.n_b + c.n_star + asz) return false;
    } else {
      if (c.n_a != c.n_b) return false;
      if (c.j - c.i + 1 + sz < c.n_a + c.n_star + asz) return false;
    }
    // Promise window containment.
    if (c.c_p != 0) {
      if (!(c.i_p <= c.i && c.j <= c.j_p && c.i_p <= ix_.leftmost[c.a])) return false;
      for (int x : usable_self(c.c_p, c.i_p, c.j_p)) {
        if (ix_.dominates(x, c.a) && ix_.in_earlier(x, c.b)) return false;
      }
    } else if (c.a != c.b || !ix_.dom[c.a].empty()) {
      for (int x : ix_.dom[c.a]) {
        if (ix_.in_earlier(x, c.b)) return false;
      }
    }
    // Split boundaries must both be used.
    if (c.a != c.b && (c.n_a < 1 || c.n_b < 1)) return false;
    // Capacity of each boundary inside the interval (value-preserving prune).
    if (c.a != c.b) {
      if (std::min(c.j, ix_.rightmost[c.a]) - c.i + 1 + flag_cap(c.a, c.vbar) < c.n_a) return false;
      if (c.j - std::max(c.i, ix_.leftmost[c.b]) + 1 + flag_cap(c.b, c.vbar) < c.n_b) return false;
    }
    return true;
  }

  const std::vector<int>& usable_self(int cp, int ip, int jp) {
    uint64_t key = pack6(cp, ip, jp, 0, 0, 0);
    auto it = ctx_.usable_cache.find(key);
    if (it != ctx_.usable_cache.end()) return it->second;
    auto got = usable_set(ix_, cp, ip, jp, cp, ip, jp);
    return ctx_.usable_cache.emplace(key, std::move(got)).first->second;
  }

  const std::vector<int>& top_usable_cached(int a, int i, int j, int cp, int ip, int jp) {
    uint64_t key = pack6(a, i, j, cp, ip, jp);
    auto it = ctx_.top_usable_cache.find(key);
    if (it != ctx_.top_usable_cache.end()) return it->second;
    auto got = top_usable(ix_, a, i, j, cp, ip, jp);
    return ctx_.top_usable_cache.emplace(key, std::move(got)).first->second;
  }

  const std::vector<int>& inbet_hat_cached(int a, int b) {
    uint64_t key = pack6(a, b, 0, 0, 0, 0);
    auto it = ctx_.inbet_hat_cache.find(key);
    if (it != ctx_.inbet_hat_cache.end()) return it->second;
    auto got = inbet_hat(ix_, a, b);
    return ctx_.inbet_hat_cache.emplace(key, std::move(got)).first->second;
  }

  // Base values of reserved-alternatives-only ranges: an empty reservation is
  // worth zero; a single reserved unit on a single position is worth one when
  // that voter approves the designated alternative.
  long long zero_base(const DPConfiguration& c) const {
    if (c.avec == 0) return 0;
    if (c.i == c.j && avec_size(c.avec) == 1) {
      for (int z = 0; z < ctx_.weave_ta; ++z) {
        if (avec_get(c.avec, z) == 1) {
          return ((ctx_.dalt_mask[c.i] >> z) & 1) != 0 ? 1 : kNegInf;
        }
      }
    }
    return kNegInf;
  }

  // Adjacent split of a reserved-alternatives-only range, distributing the
  // reserved counts and the unassigned slack.
  long long zero_split_operand(const DPConfiguration& c, const OrderKey& my,
                               ReplayHit* hit) {
    long long best = kNegInf;
    uint32_t a1 = 0;
    while (true) {
      uint32_t a2 = c.avec - a1;
      for (int ns1 = 0; ns1 <= c.n_star; ++ns1) {
        for (int is = c.i; is < c.j; ++is) {
          DPConfiguration left{0, 0, c.i, is, 0, 0, 0, 0, ns1, 0, 0, 0, 0, 0, a1};
          long long lv = value(left, &my);
          if (lv == kNegInf) continue;
          DPConfiguration right{0, 0, is + 1, c.j, 0, 0, 0, 0,
                                c.n_star - ns1, 0, 0, 0, 0, 0, a2};
          long long rv = value(right, &my);
          if (rv == kNegInf) continue;
          if (hit != nullptr) {
            if (lv + rv == hit->target) return hit->target;
          } else {
            best = std::max(best, lv + rv);
          }
        }
      }
      if (!next_subvec(a1, c.avec)) break;
    }
    return hit != nullptr ? kNegInf : best;
  }

  // Absorption operand: part of the boundary alternative's load is carried by
  // flagged deleted voters, split off into a flagged-voters-only entry.
  long long absorb_operand(const DPConfiguration& c, const OrderKey& my,
                           ReplayHit* hit) {
    long long best = kNegInf;
    uint32_t v2 = c.vbar;
    while (true) {
      if (v2 != 0) {
        int b2 = std::popcount(v2);
        assert(((v2 & ~c.vbar) == 0) && "flag split leaves the parent set");
        if (b2 <= c.n_a) {
          DPConfiguration zero{c.a, c.a, 0, 0, 0, 0, b2, b2,
                               0, 0, 0, 0, 0, v2, 0};
          long long rv = value(zero, &my);
          if (rv != kNegInf) {
            DPConfiguration left{c.a, c.a, c.i, c.j, c.k_hi, c.k_lo,
                                 c.n_a - b2, c.n_a - b2, c.n_star, c.B,
                                 c.c_p, c.i_p, c.j_p, c.vbar ^ v2, c.avec};
            long long lv = value(left, &my);
            if (lv != kNegInf) {
              long long total = lv + rv;
              if (hit != nullptr) {
                if (total == hit->target) {
                  replay(left, lv, *hit->members);
                  return total;
                }
              } else {
                best = std::max(best, total);
              }
            }
          }
        }
      }
      if (v2 == 0) break;
      v2 = (v2 - 1) & c.vbar;
    }
    return hit != nullptr ? kNegInf : best;
  }

  // Gap operand: the tail [j*, j] of the interval is served exclusively by
  // reserved outside alternatives; the head keeps the boundary structure,
  // its full member budgets, and all flags.
  long long gap_operand(const DPConfiguration& c, const OrderKey& my,
                        ReplayHit* hit) {
    long long best = kNegInf;
    uint32_t a1 = 0;
    while (true) {
      uint32_t a2 = c.avec - a1;
      if (a2 != 0) {
        for (int ns1 = 0; ns1 <= c.n_star; ++ns1) {
          for (int is = c.i; is < c.j; ++is) {
            DPConfiguration left{c.a, c.b, c.i, is, c.k_hi, c.k_lo, c.n_a,
                                 c.n_b, ns1, c.B, c.c_p, c.i_p, c.j_p,
                                 c.vbar, a1};
            long long lv = value(left, &my);
            if (lv == kNegInf) continue;
            if (hit == nullptr) {
              long long rv = right_max(0, c.j, 0, 0, 0, c.n_star - ns1, 0b01,
                                       0, 0, 0, is + 1, &my, 0, a2);
              if (rv != kNegInf) best = std::max(best, lv + rv);
            } else {
              for (int js = is + 1; js <= c.j; ++js) {
                DPConfiguration right{0, 0, js, c.j, 0, 0, 0, 0,
                                      c.n_star - ns1, 0, 0, 0, 0, 0, a2};
                long long rv = value(right, &my);
                if (rv == kNegInf) continue;
                if (lv + rv == hit->target) {
                  replay(left, lv, *hit->members);
                  return hit->target;
                }
              }
            }
          }
        }
      }
      if (!next_subvec(a1, c.avec)) break;
    }
    return hit != nullptr ? kNegInf : best;
  }

  // Suffix maximum over the right split child: best value of
  // (b, b, js, j, k_hi, k_lo, n_b, n_b, n_star, B', promise, vbar2, avec2)
  // for js in [lo, j] and B' ranging over the bits of b_mask. b = 0 encodes a
  // reserved-alternatives-only right piece.
  long long right_max(int b, int j, int k_hi, int k_lo, int n_b, int n_star,
                      int b_mask, int cp, int ip, int jp, int lo,
                      const OrderKey* parent, uint32_t vbar2, uint32_t avec2) {
    if (lo > j) return kNegInf;
    if (k_hi < 0 || k_lo < 0) return kNegInf;
    // Widest remaining window is [lo, j]; if it cannot host the load, the
    // reserved counts, and the unassigned slack, no suffix position can.
    if (n_b + n_star + avec_size(avec2) >
        j - lo + 1 + std::popcount(vbar2)) return kNegInf;
    if (active_ok(b) && approvers_in(b, lo, j) + flag_cap(b, vbar2) < n_b) return kNegInf;
    Key key;
    key.lo = pack6(b, j, k_hi, k_lo, n_b, n_star);
    key.hi = pack6(b_mask, cp, ip, jp, lo, 0);
    key.ext = static_cast<uint64_t>(vbar2) | static_cast<uint64_t>(avec2) << 8;
    auto it = ctx_.aux.find(key);
    if (it != ctx_.aux.end()) return it->second;
    long long best = right_max(b, j, k_hi, k_lo, n_b, n_star, b_mask,
                               cp, ip, jp, lo + 1, parent, vbar2, avec2);
    for (int bv = 0; bv <= 1; ++bv) {
      if (((b_mask >> bv) & 1) == 0) continue;
      DPConfiguration ch{b, b, lo, j, k_hi, k_lo, n_b, n_b, n_star, bv,
                         cp, ip, jp, vbar2, avec2};
      best = std::max(best, value(ch, parent));
    }
    ctx_.aux.emplace(key, best);
    return best;
  }

  // Pair operand shared by the two same-boundary cases: hand the whole
  // interval (and all weave arguments) to a usable pair (bb, cc), counting
  // the boundary's own load on top of the child value. With B = 0 the first
  // pair member must start inside the interval.
  long long same_pair_operand(const DPConfiguration& c, const OrderKey& my, ReplayHit* hit) {
    long long best = kNegInf;
    const auto& uhat = top_usable_cached(c.a, c.i, c.j, c.c_p, c.i_p, c.j_p);
    int ns_child = c.n_a + c.n_star;
    if (ns_child > ix_.n) return best;
    for (int bb : uhat) {
      if (c.B == 0 && ix_.leftmost[bb] < c.i) continue;
      int cap_bb = std::min(ctx_.ceil_load,
                            approvers_in(bb, c.i, c.j) + flag_cap(bb, c.vbar));
      for (int cc : uhat) {
        if (bb != cc && !ix_.in_earlier(bb, cc)) continue;
        int cap_cc = std::min(ctx_.ceil_load,
                              approvers_in(cc, c.i, c.j) + flag_cap(cc, c.vbar));
        for (int n_bb = 1; n_bb <= cap_bb; ++n_bb) {
          int cc_lo = (bb == cc) ? n_bb : 1;
          int cc_hi = (bb == cc) ? n_bb : cap_cc;
          for (int n_cc = cc_lo; n_cc <= cc_hi; ++n_cc) {
            int f1v = f1(bb, cc, n_bb, n_cc);
            int f2v = (bb == cc ? 1 : 2) - f1v;
            int kh = c.k_hi - f1v, kl = c.k_lo - f2v;
            if (kh < 0 || kl < 0) continue;
            for (int sub_b = 0; sub_b <= 1; ++sub_b) {
              DPConfiguration ch{bb, cc, c.i, c.j, kh, kl, n_bb, n_cc,
                                 ns_child, sub_b, c.c_p, c.i_p, c.j_p,
                                 c.vbar, c.avec};
              for (int variant = 0; variant < 2; ++variant) {
                if (variant == 1) {  // refresh the promise to this interval
                  ch.c_p = c.a;
                  ch.i_p = c.i;
                  ch.j_p = c.j;
                }
                long long v = value(ch, &my);
                if (v == kNegInf) continue;
                long long total = v + c.n_a;
                if (hit != nullptr) {
                  if (total == hit->target) {
                    hit->members->insert(bb);
                    hit->members->insert(cc);
                    replay(ch, v, *hit->members);
                    return total;
                  }
                } else {
                  best = std::max(best, total);
                }
              }
            }
          }
        }
      }
    }
    return hit != nullptr ? kNegInf : best;
  }

  // Split operand of the same-boundary cases: cut [i, j] into [i, i*] and
  // [j*, j] with i* < j* and distribute the load, the unassigned slack, the
  // member budgets, and the weave arguments. With B = 1 only the left part
  // keeps the early-start permission.
  long long same_split_operand(const DPConfiguration& c, const OrderKey& my, ReplayHit* hit) {
    long long best = kNegInf;
    uint32_t v1 = c.vbar;
    while (true) {
      uint32_t v2 = c.vbar ^ v1;
      assert((v1 | v2) == c.vbar && (v1 & v2) == 0 && "flag split conserves");
      uint32_t a1 = 0;
      while (true) {
        uint32_t a2 = c.avec - a1;
        for (int ku1 = 0; ku1 <= c.k_hi; ++ku1) {
          for (int kl1 = 0; kl1 <= c.k_lo; ++kl1) {
            for (int b1 = 0; b1 <= c.n_a; ++b1) {
              for (int ns1 = 0; ns1 <= c.n_star; ++ns1) {
                // The left window needs room for its load, reserved counts,
                // and unassigned slack, minus what its flags can carry.
                int is0 = std::max(c.i, c.i + b1 + ns1 + avec_size(a1) -
                                            std::popcount(v1) - 1);
                for (int is = is0; is < c.j; ++is) {
                  DPConfiguration left{c.a, c.a, c.i, is, ku1, kl1, b1, b1,
                                       ns1, c.B, c.c_p, c.i_p, c.j_p, v1, a1};
                  long long lv = value(left, &my);
                  if (lv == kNegInf) continue;
                  if (hit == nullptr) {
                    long long rv = right_max(c.a, c.j, c.k_hi - ku1,
                                             c.k_lo - kl1, c.n_a - b1,
                                             c.n_star - ns1, 0b01, c.c_p,
                                             c.i_p, c.j_p, is + 1, &my, v2, a2);
                    if (rv != kNegInf) best = std::max(best, lv + rv);
                  } else {
                    for (int js = is + 1; js <= c.j; ++js) {
                      DPConfiguration right{c.a, c.a, js, c.j, c.k_hi - ku1,
                                            c.k_lo - kl1, c.n_a - b1,
                                            c.n_a - b1, c.n_star - ns1, 0,
                                            c.c_p, c.i_p, c.j_p, v2, a2};
                      long long rv = value(right, &my);
                      if (rv == kNegInf) continue;
                      if (lv + rv == hit->target) {
                        replay(left, lv, *hit->members);
                        replay(right, rv, *hit->members);
                        return hit->target;
                      }
                    }
                  }
                }
              }
            }
          }
        }
        if (!next_subvec(a1, c.avec)) break;
      }
      if (v1 == 0) break;
      v1 = (v1 - 1) & c.vbar;
    }
    return hit != nullptr ? kNegInf : best;
  }

  // Distinct-boundary case: cut [i, j] and either insert one in-between
  // alternative c (floor load consuming k_lo, or ceiling load consuming
  // k_hi) next to a, or hand the parts to a and b directly. Weave arguments
  // are distributed over the two parts.
  long long cross_operand(const DPConfiguration& c, const OrderKey& my, ReplayHit* hit) {
    long long best = kNegInf;
    const auto& between = inbet_hat_cached(c.a, c.b);
    // cc = 0 encodes the no-insertion operand.
    std::vector<int> inner(1, 0);
    inner.insert(inner.end(), between.begin(), between.end());
    uint32_t v1 = c.vbar;
    while (true) {
      uint32_t v2 = c.vbar ^ v1;
      uint32_t a1 = 0;
      while (true) {
        uint32_t a2 = c.avec - a1;
        for (int cc : inner) {
          int load_lo = 0, load_hi = 0;  // cc == 0: the single n_cc = 0 round
          if (cc != 0) {
            load_lo = 1;
            load_hi = std::min(ctx_.ceil_load,
                               approvers_in(cc, c.i, c.j) + flag_cap(cc, v1));
          }
          for (int n_cc = load_lo; n_cc <= load_hi; ++n_cc) {
            int dh = 0, dl = 0;  // member budget consumed by cc
            if (cc != 0) {
              if (is_ceil(n_cc)) {
                dh = 1;
              } else {
                dl = 1;
              }
            }
            if (c.k_hi < dh || c.k_lo < dl) continue;
            for (int ku1 = 0; ku1 + dh <= c.k_hi; ++ku1) {
              for (int kl1 = 0; kl1 + dl <= c.k_lo; ++kl1) {
                for (int ns1 = 0; ns1 <= c.n_star; ++ns1) {
                  for (int is = c.i; is < c.j; ++is) {
                    DPConfiguration left{c.a, cc == 0 ? c.a : cc, c.i, is,
                                         ku1, kl1, c.n_a,
                                         cc == 0 ? c.n_a : n_cc, ns1, c.B,
                                         c.c_p, c.i_p, c.j_p, v1, a1};
                    long long lv = value(left, &my);
                    if (lv == kNegInf) continue;
                    int kh2 = c.k_hi - ku1 - dh;
                    int kl2 = c.k_lo - kl1 - dl;
                    if (hit == nullptr) {
                      long long rv = right_max(c.b, c.j, kh2, kl2, c.n_b,
                                               c.n_star - ns1, 0b11, c.c_p,
                                               c.i_p, c.j_p, is + 1, &my,
                                               v2, a2);
                      if (rv != kNegInf) best = std::max(best, lv + rv);
                    } else {
                      for (int js = is + 1; js <= c.j; ++js) {
                        for (int bv = 0; bv <= 1; ++bv) {
                          DPConfiguration right{c.b, c.b, js, c.j, kh2, kl2,
                                                c.n_b, c.n_b, c.n_star - ns1,
                                                bv, c.c_p, c.i_p, c.j_p,
                                                v2, a2};
                          long long rv = value(right, &my);
                          if (rv == kNegInf) continue;
                          if (lv + rv == hit->target) {
                            if (cc != 0) hit->members->insert(cc);
                            replay(left, lv, *hit->members);
                            replay(right, rv, *hit->members);
                            return hit->target;
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
        if (!next_subvec(a1, c.avec)) break;
      }
      if (v1 == 0) break;
      v1 = (v1 - 1) & c.vbar;
    }
    return hit != nullptr ? kNegInf : best;
  }
};

}  // namespace

MonroeScContext make_monroe_sc_context(const PreferenceProfile& p,
                                       const std::vector<int>& sc_order, int k,
                                       int load_n) {
  // With an explicit load_n the caller owns the committee arithmetic (part of
  // the committee may live outside this profile's alternatives).
  if (k < 1 || (load_n < 0 && k > p.m)) {
    throw std::invalid_argument("committee size must be between 1 and the number of alternatives");
  }
  if (p.n > 255 || p.m > 255) {
    throw std::invalid_argument("instance exceeds the packed-key limits (n, m <= 255)");
  }
  MonroeScContext ctx;
  ctx.ix = build_index(p, sc_order);
  ctx.k = k;
  int ln = load_n < 0 ? p.n : load_n;
  ctx.floor_load = ln / k;
  ctx.ceil_load = (ln + k - 1) / k;
  ctx.n_mod_k = ln % k;
  return ctx;
}

DPEntry table_entry(MonroeScContext& ctx, const DPConfiguration& cfg) {
  Solver s(ctx);
  return DPEntry{s.value(cfg, nullptr)};
}

MonroeScAggregate monroe_sc_aggregate(MonroeScContext& ctx, int slots,
                                      int ceil_budget, uint32_t vbar,
                                      uint32_t avec, long long stop_at) {
  const StructureIndex& ix = ctx.ix;
  Solver solver(ctx);

  std::vector<int> actives;
  for (int a = 1; a <= ix.m; ++a) {
    if (ix.active[a]) actives.push_back(a);
  }
  std::vector<int> level1 = level_one_within(ix, actives);

  MonroeScAggregate out;
  long long best = (vbar == 0 && avec == 0) ? 0 : kNegInf;
  for (int a : level1) {
    if (best >= stop_at) break;
    for (int b : level1) {
      if (a != b && !ix.in_earlier(a, b)) continue;
      if (best >= stop_at) break;
      int pair_sz = (a == b) ? 1 : 2;
      int flag_a = vbar == 0 ? 0 : std::popcount(vbar & ctx.appr_flag[a]);
      int flag_b = vbar == 0 ? 0 : std::popcount(vbar & ctx.appr_flag[b]);
      for (int i = ix.leftmost[a]; i <= ix.rightmost[b]; ++i) {
        for (int j = i; j <= ix.rightmost[b]; ++j) {
          int na_hi = std::min(
              ctx.ceil_load,
              std::max(0, std::min(j, ix.rightmost[a]) - i + 1) + flag_a);
          for (int n_a = (a == b ? 0 : 1); n_a <= na_hi; ++n_a) {
            int nb_lo = (a == b) ? n_a : 1;
            int nb_hi = (a == b)
                            ? n_a
                            : std::min(ctx.ceil_load,
                                       j - std::max(i, ix.leftmost[b]) + 1 +
                                           flag_b);
            for (int n_b = nb_lo; n_b <= nb_hi; ++n_b) {
              int f1v;
              {
                bool c1 = ctx.n_mod_k != 0 && n_a == ctx.ceil_load;
                bool c2 = ctx.n_mod_k != 0 && n_b == ctx.ceil_load;
                if (a != b && c1 && c2) {
                  f1v = 2;
                } else if (!c1 && !c2) {
                  f1v = 0;
                } else {
                  f1v = 1;
                }
              }
              int kh_max = std::min(ceil_budget - f1v, slots - pair_sz);
              for (int kh = 0; kh <= kh_max; ++kh) {
                for (int kl = 0; kl + kh + pair_sz <= slots; ++kl) {
                  for (int B = 0; B <= 1; ++B) {
                    DPConfiguration cfg{a, b, i, j, kh, kl, n_a, n_b,
                                        0, B, 0, 0, 0, vbar, avec};
                    long long v = solver.value(cfg, nullptr);
                    if (v > best) {
                      best = v;
                      out.cfg = cfg;
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
  out.value = best;
  return out;
}

std::vector<int> monroe_sc_replay_members(MonroeScContext& ctx,
                                          const DPConfiguration& cfg,
                                          long long value) {
  std::set<int> members;
  if (cfg.a != 0) {
    if (cfg.n_a > 0) members.insert(cfg.a);
    if (cfg.b != cfg.a && cfg.n_b > 0) members.insert(cfg.b);
    Solver solver(ctx);
    solver.replay(cfg, value, members);
  }
  return std::vector<int>(members.begin(), members.end());
}

Solution solve_prepared(MonroeScContext& ctx, MonroeScStats* stats) {
  auto t0 = std::chrono::steady_clock::now();
  const PreferenceProfile& p = ctx.ix.prof;
  const int k = ctx.k;

  // Upper bound on happy voters: those approving at least one alternative.
  long long happy_ub = 0;
  for (int v = 1; v <= p.n; ++v) {
    if (!p.ballots[v].empty()) ++happy_ub;
  }

  MonroeScAggregate agg = monroe_sc_aggregate(ctx, k, ctx.n_mod_k, 0, 0, happy_ub);
  long long best = agg.value;

  std::set<int> members;
  if (agg.cfg.a != 0) {
    std::vector<int> got = monroe_sc_replay_members(ctx, agg.cfg, best);
    members.insert(got.begin(), got.end());
  }
  if (static_cast<int>(members.size()) > k) {
    throw std::logic_error("reconstruction produced more members than the committee size");
  }
  std::vector<int> committee(members.begin(), members.end());
  for (int a = 1; a <= p.m && static_cast<int>(committee.size()) < k; ++a) {
    if (!members.count(a)) committee.push_back(a);
  }
  std::sort(committee.begin(), committee.end());

  Solution sol = monroe_assign_committee(p, MisrepresentationModel::ApprovalBinary,
                                         k, committee, Objective::Sum);
  if (sol.score != static_cast<long long>(p.n) - best) {
    throw std::logic_error("table optimum and completed assignment disagree");
  }
  sol.method = "monroe_sc";
  if (stats != nullptr) {
    stats->table_entries = ctx.memo.size();
    stats->aux_entries = ctx.aux.size();
    stats->seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return sol;
}

Solution solve_monroe_sc_sum(const PreferenceProfile& p,
                             const std::vector<int>& sc_order, int k,
                             MonroeScStats* stats) {
  MonroeScContext ctx = make_monroe_sc_context(p, sc_order, k);
  Solution perm = solve_prepared(ctx, stats);
  // solve_prepared works in single-crossing positions; map the assignment
  // back to the caller's voter ids (position q holds voter sc_order[q-1]).
  Solution sol = perm;
  for (int q = 1; q <= p.n; ++q) sol.assignment[sc_order[q - 1]] = perm.assignment[q];
  return sol;
}

Solution solve_monroe_sc_max(const PreferenceProfile& p,
                             const std::vector<int>& sc_order, int k,
                             MonroeScStats* stats) {
  Solution sol = solve_monroe_sc_sum(p, sc_order, k, stats);
  sol.objective = Objective::Max;
  sol.score = sol.score == 0 ? 0 : 1;
  sol.method = "monroe_sc";
  return sol;
}

}  // namespace mw
