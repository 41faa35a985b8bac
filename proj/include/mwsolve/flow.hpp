// Exact integral min-cost max-flow (successive shortest paths).
#pragma once

#include <utility>
#include <vector>

namespace mw {

class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : head_(nodes, -1) {}

  int num_nodes() const { return static_cast<int>(head_.size()); }
  int add_node();
  // Returns an edge id usable with edge_flow().
  int add_edge(int from, int to, long long cap, long long cost);
  // Sends up to max_flow units from s to t along successive shortest paths.
  // Returns {flow_sent, total_cost}. Costs may be negative only before any
  // flow is sent (Bellman-Ford is used throughout, so that is fine too).
  std::pair<long long, long long> run(int s, int t,
                                      long long max_flow = (1LL << 60));
  long long edge_flow(int id) const;

 private:
  struct Edge {
    int to, next;
    long long cap, cost;
  };
  std::vector<Edge> edges_;
  std::vector<int> head_;
};

}  // namespace mw
