#pragma once

// Integral min-cost max-flow on small dense networks, successive shortest
// augmenting paths with Bellman-Ford relaxation. Negative arc costs are
// allowed as long as the network has no negative cycle.

#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpnb {

struct FlowArc {
  std::size_t from = 0;
  std::size_t to = 0;
  long long capacity = 0;
  long long cost = 0;
  std::string label;
};

struct FlowNetwork {
  std::size_t num_nodes = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<FlowArc> arcs;
  std::vector<std::string> node_labels;

  std::size_t add_node(std::string label = {}) {
    node_labels.push_back(std::move(label));
    return num_nodes++;
  }
  std::size_t add_arc(std::size_t from, std::size_t to, long long capacity, long long cost,
                      std::string label = {}) {
    arcs.push_back({from, to, capacity, cost, std::move(label)});
    return arcs.size() - 1;
  }
};

struct FlowResult {
  long long flow = 0;
  long long cost = 0;
  std::vector<long long> arc_flow;  // parallel to net.arcs
};

inline FlowResult solve_min_cost_max_flow(const FlowNetwork& net) {
  const std::size_t n = net.num_nodes;
  if (net.source >= n || net.sink >= n)
    throw std::invalid_argument("flow: terminal node out of range");
  for (const auto& a : net.arcs) {
    if (a.from >= n || a.to >= n) throw std::invalid_argument("flow: dangling arc endpoint");
    if (a.capacity < 0) throw std::invalid_argument("flow: negative capacity");
    if (a.to == net.source || a.from == net.sink)
      throw std::invalid_argument("flow: arc into source or out of sink");
  }

  // residual graph: forward edge 2i, backward edge 2i+1
  struct Edge {
    std::size_t to;
    long long cap;
    long long cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adj(n);
  edges.reserve(net.arcs.size() * 2);
  for (const auto& a : net.arcs) {
    adj[a.from].push_back(edges.size());
    edges.push_back({a.to, a.capacity, a.cost});
    adj[a.to].push_back(edges.size());
    edges.push_back({a.from, 0, -a.cost});
  }

  const long long kInf = std::numeric_limits<long long>::max() / 4;
  FlowResult result;
  std::vector<long long> dist(n);
  std::vector<std::size_t> pred_edge(n);
  std::vector<bool> in_queue(n);

  for (;;) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(in_queue.begin(), in_queue.end(), false);
    dist[net.source] = 0;
    std::deque<std::size_t> queue{net.source};
    in_queue[net.source] = true;
    std::size_t relaxations = 0;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      in_queue[v] = false;
      if (++relaxations > n * (edges.size() + 2) + 16)
        throw std::invalid_argument("flow: negative cycle");
      for (std::size_t e : adj[v]) {
        if (edges[e].cap <= 0) continue;
        long long nd = dist[v] + edges[e].cost;
        if (nd < dist[edges[e].to]) {
          dist[edges[e].to] = nd;
          pred_edge[edges[e].to] = e;
          if (!in_queue[edges[e].to]) {
            queue.push_back(edges[e].to);
            in_queue[edges[e].to] = true;
          }
        }
      }
    }
    if (dist[net.sink] >= kInf) break;

    long long push = kInf;
    for (std::size_t v = net.sink; v != net.source;) {
      std::size_t e = pred_edge[v];
      push = std::min(push, edges[e].cap);
      v = edges[e ^ 1].to;
    }
    for (std::size_t v = net.sink; v != net.source;) {
      std::size_t e = pred_edge[v];
      edges[e].cap -= push;
      edges[e ^ 1].cap += push;
      v = edges[e ^ 1].to;
    }
    result.flow += push;
    result.cost += push * dist[net.sink];
  }

  result.arc_flow.resize(net.arcs.size());
  for (std::size_t i = 0; i < net.arcs.size(); ++i)
    result.arc_flow[i] = edges[2 * i + 1].cap;  // backward capacity = routed flow
  return result;
}

}  // namespace cpnb
