#include "mwsolve/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mw {

namespace {

// Random interval endpoints 1 <= l <= r <= hi, uniform over the draw below
// (not over intervals; distribution details only matter for determinism).
std::pair<int, int> random_interval(Rng& rng, int hi) {
  int a = rng.uniform(1, hi);
  int b = rng.uniform(1, hi);
  if (a > b) std::swap(a, b);
  return {a, b};
}

std::vector<std::vector<int>> gen_sp_approval(Rng& rng, int n, int m) {
  std::vector<int> axis(m);
  for (int i = 0; i < m; ++i) axis[i] = i + 1;
  rng.shuffle(axis);
  std::vector<std::vector<int>> ballots(n);
  for (int v = 0; v < n; ++v) {
    if (rng.uniform(0, 7) == 0) continue;  // occasional empty ballot
    auto [l, r] = random_interval(rng, m);
    for (int p = l; p <= r; ++p) ballots[v].push_back(axis[p - 1]);
  }
  return ballots;
}

std::vector<std::vector<int>> gen_sc_approval(Rng& rng, int n, int m) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  rng.shuffle(order);  // hidden single-crossing voter order
  std::vector<std::vector<int>> ballots(n);
  for (int a = 1; a <= m; ++a) {
    if (rng.uniform(0, 7) == 0) continue;  // alternative nobody approves
    auto [l, r] = random_interval(rng, n);
    for (int p = l; p <= r; ++p) ballots[order[p - 1] - 1].push_back(a);
  }
  return ballots;
}

std::vector<std::vector<int>> gen_sp_linear(Rng& rng, int n, int m) {
  std::vector<int> axis(m);
  for (int i = 0; i < m; ++i) axis[i] = i + 1;
  rng.shuffle(axis);
  std::vector<std::vector<int>> ballots(n);
  for (int v = 0; v < n; ++v) {
    int peak = rng.uniform(1, m);
    auto& b = ballots[v];
    b.push_back(axis[peak - 1]);
    int l = peak - 1, r = peak + 1;
    while (l >= 1 && r <= m) {
      if (rng.coin())
        b.push_back(axis[l-- - 1]);
      else
        b.push_back(axis[r++ - 1]);
    }
    while (l >= 1) b.push_back(axis[l-- - 1]);
    while (r <= m) b.push_back(axis[r++ - 1]);
  }
  return ballots;
}

// Each alternative a gets distinct weights (u, w); voter i ranks by the key
// u*(n-i) + w*(i-1), ascending, ties by alternative id. Any two key curves
// are linear in i, so their order flips at most once across voters: the
// listed voter order is itself a single-crossing order.
std::vector<std::vector<int>> gen_sc_linear(Rng& rng, int n, int m) {
  std::set<int> used_u, used_w;
  std::vector<long long> u(m + 1), w(m + 1);
  for (int a = 1; a <= m; ++a) {
    int x = rng.uniform(0, 1000000);
    while (used_u.count(x)) x = rng.uniform(0, 1000000);
    used_u.insert(x);
    u[a] = x;
    int y = rng.uniform(0, 1000000);
    while (used_w.count(y)) y = rng.uniform(0, 1000000);
    used_w.insert(y);
    w[a] = y;
  }
  std::vector<std::vector<int>> ballots(n);
  for (int i = 1; i <= n; ++i) {
    std::vector<std::pair<long long, int>> keyed;
    for (int a = 1; a <= m; ++a)
      keyed.push_back({u[a] * (n - i) + w[a] * (i - 1), a});
    std::sort(keyed.begin(), keyed.end());
    for (auto& [key, a] : keyed) ballots[i - 1].push_back(a);
  }
  return ballots;
}

}  // namespace

PreferenceProfile gen_profile(const std::string& model, int n, int m,
                              uint64_t seed, int noise_voters,
                              int noise_alts) {
  if (n < 1 || m < 1) throw std::invalid_argument("gen_profile: need n,m >= 1");
  if (noise_voters < 0 || noise_alts < 0)
    throw std::invalid_argument("gen_profile: negative noise count");
  Rng rng(seed);
  bool approval = model == "sp-approval" || model == "sc-approval";
  std::vector<std::vector<int>> ballots;
  if (model == "sp-approval")
    ballots = gen_sp_approval(rng, n, m);
  else if (model == "sc-approval")
    ballots = gen_sc_approval(rng, n, m);
  else if (model == "sp-linear")
    ballots = gen_sp_linear(rng, n, m);
  else if (model == "sc-linear")
    ballots = gen_sc_linear(rng, n, m);
  else
    throw std::invalid_argument("gen_profile: unknown model '" + model + "'");

  int total_m = m + noise_alts;
  // Unstructured alternatives: approval — each voter approves it on a coin
  // flip; linear — inserted at a random position of every ballot.
  for (int a = m + 1; a <= total_m; ++a) {
    for (int v = 0; v < n; ++v) {
      if (approval) {
        if (rng.coin()) ballots[v].push_back(a);
      } else {
        int pos = rng.uniform(0, static_cast<int>(ballots[v].size()));
        ballots[v].insert(ballots[v].begin() + pos, a);
      }
    }
  }
  // Unstructured voters: random subset / random permutation ballots.
  for (int t = 0; t < noise_voters; ++t) {
    std::vector<int> b;
    if (approval) {
      for (int a = 1; a <= total_m; ++a)
        if (rng.coin()) b.push_back(a);
    } else {
      b.resize(total_m);
      for (int a = 1; a <= total_m; ++a) b[a - 1] = a;
      rng.shuffle(b);
    }
    ballots.push_back(std::move(b));
  }

  int total_n = n + noise_voters;
  if (approval) return make_approval_profile(total_n, total_m, ballots);
  return make_linear_profile(total_n, total_m, ballots);
}

}  // namespace mw
