#include <catch2/catch_amalgamated.hpp>

#include "cpnb/solvers.hpp"
#include "testutil.hpp"

using namespace cpnb;

namespace {

BriberyQuery make_query(Rule rule, Candidate p, CostScheme scheme, BriberyAction action,
                        bool negative = false, Cost budget = 100000) {
  BriberyQuery q;
  q.rule = rule;
  q.preferred = p;
  q.scheme = scheme;
  q.action = action;
  q.negative = negative;
  q.budget = budget;
  return q;
}

constexpr CostScheme kSchemes[] = {CostScheme::EQUAL, CostScheme::FLIP, CostScheme::LEVEL,
                                   CostScheme::ANY, CostScheme::DIST};
constexpr BriberyAction kActions[] = {BriberyAction::IV, BriberyAction::DV,
                                      BriberyAction::IV_DV};

}  // namespace

TEST_CASE("worked instance solves to 6 via the flow network") {
  Profile p = testutil::prices_profile();
  BriberyQuery q = make_query(Rule::OP, Candidate{0}, CostScheme::ANY, BriberyAction::IV_DV);
  q.method = SolveMethod::FLOW;
  BriberySolution sol = solve(p, q);
  REQUIRE(sol.cost);
  CHECK(*sol.cost == 6);
  CHECK(sol.feasible);
  REQUIRE(sol.flips.size() == 1);
  CHECK(sol.flips[0].voter == 1);
}

TEST_CASE("already winning costs nothing") {
  Profile p = testutil::travel_profile();
  for (Rule rule : {Rule::OP, Rule::SM}) {
    BriberyQuery q = make_query(rule, Candidate{0}, CostScheme::FLIP, BriberyAction::IV_DV,
                                false, 0);
    BriberySolution sol = solve(p, q);
    REQUIRE(sol.cost);
    CHECK(*sol.cost == 0);
    CHECK(sol.feasible);
    CHECK(sol.flips.empty());
  }
}

TEST_CASE("negative mode with everyone already at p is free") {
  Profile p = testutil::travel_profile();
  BriberyQuery q = make_query(Rule::OP, Candidate{0}, CostScheme::FLIP, BriberyAction::IV_DV,
                              true, 0);
  BriberySolution sol = solve(p, q);
  REQUIRE(sol.cost);
  CHECK(*sol.cost == 0);
  CHECK(sol.flips.empty());
}

TEST_CASE("plurality flow agrees with the oracle") {
  testutil::Rng rng(101);
  int done = 0;
  while (done < 60) {
    testutil::RandomProfileOptions opt;
    opt.n = 1 + rng() % 5;
    opt.m = 1 + rng() % 3;
    opt.flip_costs = true;
    opt.max_q = 2;
    Profile p = testutil::random_profile(rng, opt);
    auto scheme = kSchemes[rng() % 5];
    auto action = kActions[rng() % 3];
    bool negative = rng() % 2;
    BriberyQuery q = make_query(Rule::OP, testutil::random_candidate(rng, opt.m), scheme,
                                action, negative);
    auto res = testutil::check_agreement(p, q, SolveMethod::FLOW);
    INFO(res.error);
    CHECK(res.ok);
    ++done;
  }
}

TEST_CASE("veto flow agrees with the oracle in both regimes") {
  testutil::Rng rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    testutil::RandomProfileOptions opt;
    opt.m = 1 + rng() % 2;
    opt.n = 1 + rng() % 5;  // crosses n < 2^m and n >= 2^m
    opt.flip_costs = true;
    Profile p = testutil::random_profile(rng, opt);
    auto scheme = kSchemes[rng() % 5];
    auto action = kActions[rng() % 3];
    bool negative = rng() % 2;
    BriberyQuery q = make_query(Rule::OV, testutil::random_candidate(rng, opt.m), scheme,
                                action, negative);
    auto res = testutil::check_agreement(p, q, SolveMethod::FLOW);
    INFO(res.error);
    CHECK(res.ok);
  }
}

TEST_CASE("truncated approval agrees with the oracle") {
  testutil::Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    testutil::RandomProfileOptions opt;
    opt.n = 1 + rng() % 4;
    opt.m = 2 + rng() % 2;
    opt.o_legal = true;
    opt.flip_costs = true;
    Profile p = testutil::random_profile(rng, opt);
    BriberyQuery q = make_query(Rule::OKSTAR, testutil::random_candidate(rng, opt.m),
                                kSchemes[rng() % 5], kActions[rng() % 3], rng() % 2);
    q.k = Rank{1} << (rng() % 3);
    if (q.k > p.num_candidates()) q.k = 1;
    auto res = testutil::check_agreement(p, q, SolveMethod::FLOW);
    INFO(res.error);
    CHECK(res.ok);
  }
}

TEST_CASE("sequential majority greedy agrees with the oracle") {
  testutil::Rng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    testutil::RandomProfileOptions opt;
    opt.n = 1 + rng() % 5;
    opt.m = 1 + rng() % 3;
    opt.o_legal = true;
    opt.flip_costs = true;
    opt.max_q = 2;
    Profile p = testutil::random_profile(rng, opt);
    auto scheme = std::vector{CostScheme::FLIP, CostScheme::LEVEL,
                              CostScheme::ANY}[rng() % 3];
    BriberyQuery q = make_query(Rule::SM, testutil::random_candidate(rng, opt.m), scheme,
                                kActions[rng() % 3], rng() % 2);
    auto res = testutil::check_agreement(p, q, SolveMethod::GREEDY);
    INFO(res.error);
    CHECK(res.ok);
  }
}

TEST_CASE("weighted sequential majority knapsack agrees with the oracle") {
  testutil::Rng rng(505);
  for (int trial = 0; trial < 60; ++trial) {
    testutil::RandomProfileOptions opt;
    opt.n = 1 + rng() % 6;
    opt.m = 1 + rng() % 3;
    opt.o_legal = true;
    opt.max_weight = 9;
    Profile p = testutil::random_profile(rng, opt);
    auto scheme = rng() % 2 ? CostScheme::FLIP : CostScheme::LEVEL;
    BriberyQuery q = make_query(Rule::SM, testutil::random_candidate(rng, opt.m), scheme,
                                kActions[rng() % 3]);
    OracleLimits limits;
    limits.max_n = 6;
    auto res = testutil::check_agreement(p, q, SolveMethod::DP, limits);
    INFO(res.error);
    CHECK(res.ok);
  }
}

TEST_CASE("method preconditions are enforced") {
  Profile p = testutil::travel_profile();
  p.voters[0].weight = 5;  // not already winning for candidate 7
  BriberyQuery q = make_query(Rule::SM, Candidate{7}, CostScheme::FLIP, BriberyAction::IV_DV);
  q.method = SolveMethod::GREEDY;
  CHECK_THROWS_AS(solve(p, q), std::invalid_argument);  // greedy needs unit weights
  q.method = SolveMethod::DP;
  q.negative = true;
  CHECK_THROWS_AS(solve(p, q), std::invalid_argument);  // knapsack is positive-only
  q.negative = false;
  q.rule = Rule::OP;
  CHECK_THROWS_AS(solve(p, q), std::invalid_argument);  // knapsack solves SM
  q.method = SolveMethod::FLOW;
  q.rule = Rule::SM;
  CHECK_THROWS_AS(solve(p, q), std::invalid_argument);  // no SM flow solver
}

TEST_CASE("automatic dispatch avoids the oracle on polynomial variants") {
  // 9 voters exceed the default oracle voter guard, so AUTO must route to
  // the polynomial solvers for these
  testutil::Rng rng(606);
  testutil::RandomProfileOptions opt;
  opt.n = 9;
  opt.m = 3;
  opt.o_legal = true;
  Profile p = testutil::random_profile(rng, opt);
  for (Rule rule : {Rule::OP, Rule::OV, Rule::SM}) {
    BriberyQuery q = make_query(rule, Candidate{5}, CostScheme::FLIP, BriberyAction::IV_DV);
    CHECK_NOTHROW(solve(p, q));
  }
  BriberyQuery q = make_query(Rule::OKSTAR, Candidate{5}, CostScheme::FLIP,
                              BriberyAction::IV_DV);
  q.k = 2;
  CHECK_NOTHROW(solve(p, q));
}

TEST_CASE("weighted plurality routes to the oracle and agrees") {
  testutil::Rng rng(707);
  for (int trial = 0; trial < 20; ++trial) {
    testutil::RandomProfileOptions opt;
    opt.n = 1 + rng() % 4;
    opt.m = 1 + rng() % 2;
    opt.max_weight = 4;
    Profile p = testutil::random_profile(rng, opt);
    BriberyQuery q = make_query(Rule::OP, testutil::random_candidate(rng, opt.m),
                                CostScheme::FLIP, BriberyAction::IV_DV);
    BriberySolution sol = solve(p, q);  // AUTO -> oracle for weighted OP
    BriberySolution orc = oracle_solve(p, q);
    CHECK(sol.cost == orc.cost);
  }
}

TEST_CASE("negative sequential majority detects unrepairable offenders") {
  // p = 00; three voters opposing on both issues. Each issue needs two
  // supporters, but no bribed voter may land exactly on p, so at most one
  // supporting vote per voter exists: infeasible.
  Profile p;
  p.issues = {{"A", {"a", "~a"}}, {"B", {"b", "~b"}}};
  p.global_order = std::vector<std::size_t>{0, 1};
  Voter no;
  no.net.parents = {{}, {}};
  no.net.cpt = {{1}, {1}};
  no.net.order = {0, 1};
  p.voters = {no, no, no};
  BriberyQuery q = make_query(Rule::SM, Candidate{0}, CostScheme::FLIP, BriberyAction::IV_DV,
                              true);
  BriberySolution sol = solve(p, q);
  BriberySolution orc = oracle_solve(p, q);
  CHECK(sol.cost == orc.cost);
  CHECK_FALSE(sol.cost.has_value());
}

TEST_CASE("negative sequential majority repairs offenders via donors") {
  // p = 00 with three full opposers, one voter at (a, ~b), one already at p.
  // The greedy pass lands one opposer exactly on p; the repair hands his
  // issue-A support to a spare opposer at zero extra cost. Optimum is 3.
  Profile p;
  p.issues = {{"A", {"a", "~a"}}, {"B", {"b", "~b"}}};
  p.global_order = std::vector<std::size_t>{0, 1};
  Voter no, partial, atp;
  no.net.parents = partial.net.parents = atp.net.parents = {{}, {}};
  no.net.order = partial.net.order = atp.net.order = {0, 1};
  no.net.cpt = {{1}, {1}};
  partial.net.cpt = {{0}, {1}};
  atp.net.cpt = {{0}, {0}};
  p.voters = {no, no, no, partial, atp};
  BriberyQuery q = make_query(Rule::SM, Candidate{0}, CostScheme::FLIP, BriberyAction::IV_DV,
                              true);
  BriberySolution sol = solve(p, q);
  BriberySolution orc = oracle_solve(p, q);
  CHECK(sol.cost == orc.cost);
  REQUIRE(sol.cost);
  CHECK(*sol.cost == 3);
  CHECK_FALSE(testutil::negative_violation(p, q, sol.flips));
}

TEST_CASE("solutions lie within the budget flag semantics") {
  Profile p = testutil::prices_profile();
  BriberyQuery q = make_query(Rule::OP, Candidate{0}, CostScheme::ANY, BriberyAction::IV_DV,
                              false, 5);
  BriberySolution sol = solve(p, q);
  REQUIRE(sol.cost);
  CHECK(*sol.cost == 6);
  CHECK_FALSE(sol.feasible);
  q.budget = 6;
  CHECK(solve(p, q).feasible);
}

TEST_CASE("OK* validates k") {
  Profile p = testutil::travel_profile();
  BriberyQuery q = make_query(Rule::OKSTAR, Candidate{7}, CostScheme::FLIP,
                              BriberyAction::IV_DV);
  q.k = 3;
  CHECK_THROWS_AS(solve(p, q), std::invalid_argument);
  q.k = 16;  // exceeds the 8-candidate space
  CHECK_THROWS_AS(solve(p, q), std::invalid_argument);
  q.k = 8;  // every package approved: everyone co-wins
  BriberySolution sol = solve(p, q);
  REQUIRE(sol.cost);
  CHECK(*sol.cost == 0);
}
