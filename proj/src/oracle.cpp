#include "mwsolve/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "mwsolve/flow.hpp"

namespace mw {

void for_each_committee(
    int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 1);
  while (true) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == m - (k - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

namespace {

// Shared flow construction for both completion variants. An edge cost of -1
// marks "edge not allowed" (threshold mode).
std::optional<long long> complete_impl(
    const PreferenceProfile& p, MisrepresentationModel model, int k,
    const std::vector<int>& committee, const std::vector<int>& preload,
    const std::vector<int>& free_voters, long long tau, bool use_tau,
    std::vector<int>& assign_out) {
  int kk = static_cast<int>(committee.size());
  int floor_load = p.n / k, ceil_load = (p.n + k - 1) / k;
  long long total_free = static_cast<long long>(free_voters.size());
  // Member node i: committee[i]. Node layout: source, voters..., members..., sink.
  int s = 0;
  int voter_base = 1;
  int member_base = voter_base + static_cast<int>(free_voters.size());
  int t = member_base + kk;
  MinCostFlow flow(t + 1);
  // LARGE makes the lower-bound arcs irresistible; any real misrep total is
  // < n * m which is far smaller.
  const long long kLarge = 1LL << 30;
  long long forced = 0;
  std::vector<std::pair<int, int>> lower_edges;  // edge id, required units
  for (int i = 0; i < kk; ++i) {
    // preload is indexed by alternative id (size m+1); committee ids are
    // distinct here, so each member reads its own preload exactly once.
    int pre = committee[i] < static_cast<int>(preload.size())
                  ? preload[committee[i]]
                  : 0;
    if (pre > ceil_load) return std::nullopt;
    int lower = std::max(0, floor_load - pre);
    int upper = ceil_load - pre;
    if (lower > 0) {
      lower_edges.emplace_back(flow.add_edge(member_base + i, t, lower, -kLarge),
                               lower);
      forced += lower;
    }
    if (upper > lower) flow.add_edge(member_base + i, t, upper - lower, 0);
  }
  if (forced > total_free) return std::nullopt;
  std::vector<std::vector<int>> edge_ids(free_voters.size());
  for (size_t vi = 0; vi < free_voters.size(); ++vi) {
    flow.add_edge(s, voter_base + static_cast<int>(vi), 1, 0);
    edge_ids[vi].assign(kk, -1);
    for (int i = 0; i < kk; ++i) {
      long long c = misrep(p, model, free_voters[vi], committee[i]);
      if (use_tau && c > tau) continue;
      edge_ids[vi][i] =
          flow.add_edge(voter_base + static_cast<int>(vi), member_base + i, 1, c);
    }
  }
  auto [sent, cost] = flow.run(s, t);
  if (sent != total_free) return std::nullopt;
  // The lower bounds are modelled as irresistible negative-cost arcs; a
  // min-cost maximum flow saturates them whenever any full routing does. If
  // one is left short (possible in threshold mode, where voter edges above
  // tau are absent), no full routing meets the floor loads.
  for (auto [id, need] : lower_edges) {
    if (flow.edge_flow(id) < need) return std::nullopt;
  }
  cost += forced * kLarge;  // undo the lower-bound discounts
  for (size_t vi = 0; vi < free_voters.size(); ++vi) {
    for (int i = 0; i < kk; ++i) {
      if (edge_ids[vi][i] >= 0 && flow.edge_flow(edge_ids[vi][i]) > 0) {
        assign_out[free_voters[vi]] = committee[i];
        break;
      }
    }
  }
  return cost;
}

}  // namespace

std::optional<long long> monroe_complete(const PreferenceProfile& p,
                                         MisrepresentationModel model, int k,
                                         const std::vector<int>& committee,
                                         const std::vector<int>& preload,
                                         const std::vector<int>& free_voters,
                                         std::vector<int>& assign_out) {
  return complete_impl(p, model, k, committee, preload, free_voters, 0, false,
                       assign_out);
}

std::optional<long long> monroe_complete_threshold(
    const PreferenceProfile& p, MisrepresentationModel model, int k,
    const std::vector<int>& committee, const std::vector<int>& preload,
    const std::vector<int>& free_voters, long long tau,
    std::vector<int>& assign_out) {
  return complete_impl(p, model, k, committee, preload, free_voters, tau, true,
                       assign_out);
}

Solution monroe_assign_committee(const PreferenceProfile& p,
                                 MisrepresentationModel model, int k,
                                 const std::vector<int>& committee,
                                 Objective objective) {
  Solution s;
  s.rule = Rule::Monroe;
  s.objective = objective;
  s.k = k;
  s.committee = committee;
  s.assignment.assign(p.n + 1, 0);
  std::vector<int> all_voters(p.n);
  std::iota(all_voters.begin(), all_voters.end(), 1);
  std::vector<int> preload(p.m + 1, 0);
  if (objective == Objective::Sum) {
    auto cost =
        monroe_complete(p, model, k, committee, preload, all_voters, s.assignment);
    s.score = cost ? *cost : -1;
    return s;
  }
  // Max objective: smallest tau admitting a full proportional assignment.
  long long lo = 0;
  long long hi = model == MisrepresentationModel::ApprovalBinary ? 1 : p.m - 1;
  std::vector<int> best_assign;
  while (lo < hi) {
    long long mid = lo + (hi - lo) / 2;
    std::vector<int> trial(p.n + 1, 0);
    if (monroe_complete_threshold(p, model, k, committee, preload, all_voters,
                                  mid, trial)) {
      hi = mid;
      best_assign = std::move(trial);
    } else {
      lo = mid + 1;
    }
  }
  if (best_assign.empty()) {
    best_assign.assign(p.n + 1, 0);
    if (!monroe_complete_threshold(p, model, k, committee, preload, all_voters,
                                   lo, best_assign)) {
      s.score = -1;  // cannot happen: tau = max misrep always feasible
      return s;
    }
  }
  s.assignment = std::move(best_assign);
  s.score = lo;
  return s;
}

namespace {

void check_budget(const PreferenceProfile& p, int k, int budget_m) {
  if (p.m > budget_m)
    throw OracleBudgetExceeded("oracle budget exceeded: m=" +
                               std::to_string(p.m) + " > " +
                               std::to_string(budget_m));
  if (k < 1 || k > p.m) throw std::invalid_argument("k must be in [1, m]");
}

}  // namespace

Solution oracle_cc(const PreferenceProfile& p, MisrepresentationModel model,
                   int k, Objective objective, int budget_m) {
  check_budget(p, k, budget_m);
  Solution best;
  best.rule = Rule::CC;
  best.objective = objective;
  best.k = k;
  best.score = -1;
  for_each_committee(p.m, k, [&](const std::vector<int>& c) {
    long long sum = 0, mx = 0;
    std::vector<int> assign(p.n + 1, 0);
    for (int v = 1; v <= p.n; ++v) {
      long long bd = -1;
      int ba = 0;
      for (int a : c) {
        long long d = misrep(p, model, v, a);
        if (bd < 0 || d < bd) {
          bd = d;
          ba = a;
        }
      }
      assign[v] = ba;
      sum += bd;
      mx = std::max(mx, bd);
    }
    long long sc = objective == Objective::Sum ? sum : mx;
    if (best.score < 0 || sc < best.score) {
      best.score = sc;
      best.committee = c;
      best.assignment = std::move(assign);
    }
  });
  return best;
}

Solution oracle_monroe(const PreferenceProfile& p,
                       MisrepresentationModel model, int k,
                       Objective objective, int budget_m) {
  check_budget(p, k, budget_m);
  Solution best;
  best.rule = Rule::Monroe;
  best.objective = objective;
  best.k = k;
  best.score = -1;
  for_each_committee(p.m, k, [&](const std::vector<int>& c) {
    Solution s = monroe_assign_committee(p, model, k, c, objective);
    if (s.score >= 0 && (best.score < 0 || s.score < best.score)) best = std::move(s);
  });
  return best;
}

}  // namespace mw
