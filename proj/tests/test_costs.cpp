#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "cpnb/costs.hpp"
#include "testutil.hpp"

using namespace cpnb;

TEST_CASE("issue levels and depth") {
  // chain A -> B -> C plus independent D
  CPNet net;
  net.parents = {{}, {0}, {1}, {}};
  net.cpt = {{0}, {0, 0}, {0, 0}, {0}};
  net.order = {0, 1, 2, 3};
  auto levels = issue_levels(net);
  CHECK(levels == std::vector<int>{1, 2, 3, 1});
  CHECK(net_depth(net) == 3);
  // C_level price is k + 1 - level
  Voter v;
  v.net = net;
  CHECK(flip_cost(v, 0, CostScheme::LEVEL) == 3);
  CHECK(flip_cost(v, 1, CostScheme::LEVEL) == 2);
  CHECK(flip_cost(v, 2, CostScheme::LEVEL) == 1);
  CHECK(flip_cost(v, 3, CostScheme::LEVEL) == 3);
}

TEST_CASE("action permissions follow the dependency graph") {
  CPNet net;
  net.parents = {{}, {0}};
  net.cpt = {{0}, {0, 0}};
  net.order = {0, 1};
  CHECK(action_permits(net, 0, BriberyAction::IV));
  CHECK_FALSE(action_permits(net, 1, BriberyAction::IV));
  CHECK_FALSE(action_permits(net, 0, BriberyAction::DV));
  CHECK(action_permits(net, 1, BriberyAction::DV));
  CHECK(action_permits(net, 0, BriberyAction::IV_DV));
  CHECK(action_permits(net, 1, BriberyAction::IV_DV));
}

TEST_CASE("flips to top produce the intended top candidate") {
  testutil::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = 1 + rng() % 5;
    Voter v;
    v.net = testutil::random_net(rng, m);
    Candidate c = testutil::random_candidate(rng, m);
    auto flips = flips_to_top(v, c);
    CHECK(flips.size() == static_cast<std::size_t>(std::popcount(rank(v.net, c))));
    CPNet changed = v.net;
    for (const auto& f : flips) changed.cpt[f.issue][f.ctx] = f.new_pref;
    CHECK(top_candidate(changed) == c);
  }
}

TEST_CASE("flips to veto produce the intended veto candidate") {
  testutil::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = 1 + rng() % 5;
    Voter v;
    v.net = testutil::random_net(rng, m);
    Candidate c = testutil::random_candidate(rng, m);
    auto flips = flips_to_veto(v, c);
    CPNet changed = v.net;
    for (const auto& f : flips) changed.cpt[f.issue][f.ctx] = f.new_pref;
    CHECK(veto_candidate(changed) == c);
  }
}

TEST_CASE("steering costs per scheme") {
  Voter v;
  v.net.parents = {{}, {0}};
  v.net.cpt = {{0}, {0, 1}};
  v.net.order = {0, 1};
  v.flip_costs = std::vector<Weight>{4, 9};
  v.q = 3;
  Candidate worst = veto_candidate(v.net);

  CHECK(*cost_to_top(v, top_candidate(v.net), CostScheme::FLIP, BriberyAction::IV_DV) == 0);
  CHECK(*cost_to_top(v, worst, CostScheme::FLIP, BriberyAction::IV_DV) == 2 * 3);
  CHECK(*cost_to_top(v, worst, CostScheme::ANY, BriberyAction::IV_DV) == (4 + 9) * 3);
  CHECK(*cost_to_top(v, worst, CostScheme::EQUAL, BriberyAction::IV_DV) == 3);
  CHECK(*cost_to_top(v, top_candidate(v.net), CostScheme::EQUAL, BriberyAction::IV_DV) == 0);
  CHECK(*cost_to_top(v, worst, CostScheme::DIST, BriberyAction::IV_DV) == 3 * 3);  // rank 3
  // action forbids the required independent flip
  CHECK_FALSE(cost_to_top(v, worst, CostScheme::FLIP, BriberyAction::DV).has_value());
  // veto steering: the current veto is free under every scheme
  CHECK(*cost_to_veto(v, worst, CostScheme::DIST, BriberyAction::IV_DV) == 0);
  CHECK(*cost_to_veto(v, worst, CostScheme::FLIP, BriberyAction::IV_DV) == 0);
  CHECK(*cost_to_veto(v, top_candidate(v.net), CostScheme::DIST, BriberyAction::IV_DV) == 3 * 3);
}

namespace {

// reference: price every candidate directly and keep the K cheapest costs
std::vector<Cost> brute_target_costs(const Voter& v, std::uint64_t K, CostScheme scheme,
                                     BriberyAction action, TargetMode mode) {
  std::vector<Cost> costs;
  const std::size_t m = v.net.num_issues();
  for (Bits c = 0; c < (Bits{1} << m); ++c) {
    MaybeCost mc = mode == TargetMode::TOP ? cost_to_top(v, Candidate{c}, scheme, action)
                                           : cost_to_veto(v, Candidate{c}, scheme, action);
    if (mc) costs.push_back(*mc);
  }
  std::sort(costs.begin(), costs.end());
  if (costs.size() > K) costs.resize(K);
  return costs;
}

}  // namespace

TEST_CASE("cheapest targets agree with direct pricing of every candidate") {
  testutil::Rng rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t m = 1 + rng() % 4;
    Voter v;
    v.net = testutil::random_net(rng, m);
    v.q = 1 + rng() % 3;
    std::vector<Weight> prices(m);
    for (auto& p : prices) p = rng() % 10;
    v.flip_costs = prices;
    std::uint64_t K = 1 + rng() % 12;
    for (auto scheme : {CostScheme::EQUAL, CostScheme::FLIP, CostScheme::LEVEL, CostScheme::ANY,
                        CostScheme::DIST})
      for (auto action : {BriberyAction::IV, BriberyAction::DV, BriberyAction::IV_DV})
        for (auto mode : {TargetMode::TOP, TargetMode::VETO}) {
          auto targets = cheapest_targets(v, K, scheme, action, mode);
          auto brute = brute_target_costs(v, K, scheme, action, mode);
          REQUIRE(targets.size() == brute.size());
          std::set<Bits> seen;
          for (std::size_t i = 0; i < targets.size(); ++i) {
            CHECK(targets[i].cost == brute[i]);
            CHECK(seen.insert(targets[i].candidate.bits).second);
            MaybeCost direct =
                mode == TargetMode::TOP
                    ? cost_to_top(v, targets[i].candidate, scheme, action)
                    : cost_to_veto(v, targets[i].candidate, scheme, action);
            REQUIRE(direct.has_value());
            CHECK(*direct == targets[i].cost);
          }
        }
  }
}

TEST_CASE("the first target is always free") {
  testutil::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Voter v;
    v.net = testutil::random_net(rng, 1 + rng() % 4);
    for (auto mode : {TargetMode::TOP, TargetMode::VETO}) {
      auto targets = cheapest_targets(v, 3, CostScheme::FLIP, BriberyAction::IV_DV, mode);
      REQUIRE_FALSE(targets.empty());
      CHECK(targets[0].cost == 0);
      CHECK(targets[0].candidate ==
            (mode == TargetMode::TOP ? top_candidate(v.net) : veto_candidate(v.net)));
    }
  }
}

TEST_CASE("per-target schemes reject per-flip pricing") {
  testutil::Rng rng(1);
  Voter v;
  v.net = testutil::random_net(rng, 2);
  CHECK_THROWS_AS(flip_cost(v, 0, CostScheme::EQUAL), std::invalid_argument);
  CHECK_THROWS_AS(flip_cost(v, 0, CostScheme::DIST), std::invalid_argument);
}
