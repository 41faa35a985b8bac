#include "mwsolve/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace mw {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

int MinCostFlow::add_node() {
  head_.push_back(-1);
  return num_nodes() - 1;
}

int MinCostFlow::add_edge(int from, int to, long long cap, long long cost) {
  int id = static_cast<int>(edges_.size());
  edges_.push_back({to, head_[from], cap, cost});
  head_[from] = id;
  edges_.push_back({from, head_[to], 0, -cost});
  head_[to] = id + 1;
  return id;
}

std::pair<long long, long long> MinCostFlow::run(int s, int t,
                                                 long long max_flow) {
  long long flow = 0, cost = 0;
  int n = num_nodes();
  std::vector<long long> dist(n);
  std::vector<int> prev_edge(n);
  std::vector<char> in_queue(n);
  while (flow < max_flow) {
    // SPFA shortest path on residual graph.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(prev_edge.begin(), prev_edge.end(), -1);
    std::fill(in_queue.begin(), in_queue.end(), 0);
    std::deque<int> q{s};
    dist[s] = 0;
    in_queue[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      in_queue[u] = 0;
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap <= 0) continue;
        int v = edges_[e].to;
        long long nd = dist[u] + edges_[e].cost;
        if (nd < dist[v]) {
          dist[v] = nd;
          prev_edge[v] = e;
          if (!in_queue[v]) {
            in_queue[v] = 1;
            q.push_back(v);
          }
        }
      }
    }
    if (dist[t] >= kInf) break;
    long long push = max_flow - flow;
    for (int v = t; v != s;) {
      int e = prev_edge[v];
      push = std::min(push, edges_[e].cap);
      v = edges_[e ^ 1].to;
    }
    for (int v = t; v != s;) {
      int e = prev_edge[v];
      edges_[e].cap -= push;
      edges_[e ^ 1].cap += push;
      v = edges_[e ^ 1].to;
    }
    flow += push;
    cost += push * dist[t];
  }
  return {flow, cost};
}

long long MinCostFlow::edge_flow(int id) const { return edges_[id ^ 1].cap; }

}  // namespace mw
