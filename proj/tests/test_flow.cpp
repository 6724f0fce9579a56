#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cpnb/flow.hpp"
#include "testutil.hpp"

using namespace cpnb;

TEST_CASE("worked two-voter steering network: flow 2 at cost 6") {
  FlowNetwork net = testutil::prices_network();
  FlowResult res = solve_min_cost_max_flow(net);
  CHECK(res.flow == 2);
  CHECK(res.cost == 6);
}

TEST_CASE("single arc") {
  FlowNetwork net;
  net.source = net.add_node();
  net.sink = net.add_node();
  std::size_t a = net.add_arc(net.source, net.sink, 5, 3);
  FlowResult res = solve_min_cost_max_flow(net);
  CHECK(res.flow == 5);
  CHECK(res.cost == 15);
  CHECK(res.arc_flow[a] == 5);
}

TEST_CASE("chooses the cheaper of parallel routes first") {
  FlowNetwork net;
  std::size_t s = net.add_node();
  std::size_t t = net.add_node();
  std::size_t a = net.add_node();
  std::size_t b = net.add_node();
  net.source = s;
  net.sink = t;
  net.add_arc(s, a, 1, 1);
  net.add_arc(a, t, 1, 0);
  net.add_arc(s, b, 1, 4);
  net.add_arc(b, t, 1, 0);
  net.add_arc(s, t, 1, 10);
  FlowResult res = solve_min_cost_max_flow(net);
  CHECK(res.flow == 3);
  CHECK(res.cost == 15);
}

TEST_CASE("negative arc costs are handled") {
  // taking the refund arc is cheaper even though it detours
  FlowNetwork net;
  std::size_t s = net.add_node();
  std::size_t t = net.add_node();
  std::size_t a = net.add_node();
  std::size_t b = net.add_node();
  net.source = s;
  net.sink = t;
  net.add_arc(s, a, 1, 5);
  net.add_arc(a, b, 1, -7);
  net.add_arc(b, t, 1, 1);
  net.add_arc(s, t, 1, 2);
  FlowResult res = solve_min_cost_max_flow(net);
  CHECK(res.flow == 2);
  CHECK(res.cost == 1);  // -1 via the refund path, +2 direct
}

TEST_CASE("invalid networks are rejected") {
  FlowNetwork net;
  net.source = net.add_node();
  net.sink = net.add_node();
  SECTION("dangling endpoint") {
    net.add_arc(0, 7, 1, 0);
    CHECK_THROWS_AS(solve_min_cost_max_flow(net), std::invalid_argument);
  }
  SECTION("negative capacity") {
    net.add_arc(net.source, net.sink, -1, 0);
    CHECK_THROWS_AS(solve_min_cost_max_flow(net), std::invalid_argument);
  }
  SECTION("arc into the source") {
    std::size_t v = net.add_node();
    net.add_arc(v, net.source, 1, 0);
    CHECK_THROWS_AS(solve_min_cost_max_flow(net), std::invalid_argument);
  }
  SECTION("arc out of the sink") {
    std::size_t v = net.add_node();
    net.add_arc(net.sink, v, 1, 0);
    CHECK_THROWS_AS(solve_min_cost_max_flow(net), std::invalid_argument);
  }
}

TEST_CASE("arc flows are consistent with the totals") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    FlowNetwork net;
    std::size_t nodes = 4 + rng() % 3;
    for (std::size_t i = 0; i < nodes; ++i) net.add_node();
    net.source = 0;
    net.sink = 1;
    std::size_t arcs = 4 + rng() % 5;
    for (std::size_t i = 0; i < arcs; ++i) {
      std::size_t from = rng() % nodes;
      std::size_t to = rng() % nodes;
      if (to == net.source || from == net.sink || from == to) continue;
      net.add_arc(from, to, rng() % 3, static_cast<long long>(rng() % 9));
    }
    FlowResult res = solve_min_cost_max_flow(net);
    std::vector<long long> balance(nodes, 0);
    long long cost = 0;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
      CHECK(res.arc_flow[i] >= 0);
      CHECK(res.arc_flow[i] <= net.arcs[i].capacity);
      balance[net.arcs[i].from] -= res.arc_flow[i];
      balance[net.arcs[i].to] += res.arc_flow[i];
      cost += res.arc_flow[i] * net.arcs[i].cost;
    }
    for (std::size_t v = 0; v < nodes; ++v)
      if (v != net.source && v != net.sink) CHECK(balance[v] == 0);
    CHECK(-balance[net.source] == res.flow);
    CHECK(balance[net.sink] == res.flow);
    CHECK(cost == res.cost);
  }
}

TEST_CASE("matches brute force on tiny random networks") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    FlowNetwork net;
    std::size_t nodes = 3 + rng() % 3;
    for (std::size_t i = 0; i < nodes; ++i) net.add_node();
    net.source = 0;
    net.sink = 1;
    std::size_t arcs = 3 + rng() % 5;
    for (std::size_t i = 0; i < arcs; ++i) {
      std::size_t from = rng() % nodes;
      std::size_t to = rng() % nodes;
      if (to == net.source || from == net.sink || from == to) continue;
      net.add_arc(from, to, rng() % 3, static_cast<long long>(rng() % 7));
    }
    FlowResult res = solve_min_cost_max_flow(net);
    testutil::BruteFlow brute = testutil::brute_force_flow(net);
    CHECK(res.flow == brute.flow);
    CHECK(res.cost == brute.cost);
  }
}
