#pragma once

// Exact bribery optimizers: flow constructions for OP/OK*/OV, the SM greedy
// and weighted knapsack solvers, the SM negative repair network, and the
// routing entry point with an exhaustive fallback for the hard variants.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cpnb/bribery.hpp"
#include "cpnb/core.hpp"
#include "cpnb/costs.hpp"
#include "cpnb/flow.hpp"
#include "cpnb/oracle.hpp"
#include "cpnb/subsets.hpp"

namespace cpnb {

namespace detail {

inline BriberySolution already_winning(const Profile& profile, const BriberyQuery& query) {
  BriberySolution sol;
  if (co_winners(profile, query.rule, query.k, query.tie_winner).contains(query.preferred))
    sol = finish(0, query.budget);
  return sol;  // cost unset means "not decided here"
}

}  // namespace detail

// ---------------------------------------------------------------------------
// OP (plurality on tops): one network per target score r

struct OpNetwork {
  FlowNetwork net;
  struct BribeArc {
    std::size_t arc;
    std::size_t voter;
    Candidate target;
  };
  std::vector<BribeArc> bribe_arcs;
};

// Per-voter steering menu: the cheapest reachable tops plus p. In negative
// mode p is withheld from voters not already topping p; under C_equal the
// menu is widened so enough distinct non-p candidates remain.
inline std::vector<Target> op_targets(const Voter& voter, std::size_t n,
                                      const BriberyQuery& query) {
  std::uint64_t want = static_cast<std::uint64_t>(n) + 2;
  if (query.negative && query.scheme == CostScheme::EQUAL) want = n + 3;
  auto targets = cheapest_targets(voter, want, query.scheme, query.action, TargetMode::TOP);
  const Candidate top = top_candidate(voter.net);
  if (query.negative && top != query.preferred) {
    std::erase_if(targets, [&](const Target& t) { return t.candidate == query.preferred; });
  } else {
    bool has_p = false;
    for (const auto& t : targets) has_p |= t.candidate == query.preferred;
    if (!has_p)
      if (auto c = cost_to_top(voter, query.preferred, query.scheme, query.action))
        targets.push_back({query.preferred, *c});
  }
  return targets;
}

inline OpNetwork build_op_network(const Profile& profile, const BriberyQuery& query,
                                  std::size_t r) {
  const std::size_t n = profile.num_voters();
  OpNetwork op;
  FlowNetwork& net = op.net;
  net.source = net.add_node("s");
  net.sink = net.add_node("t");
  std::size_t g = net.add_node("g");

  std::vector<std::vector<Target>> menus;
  std::map<Bits, std::size_t> collect;  // candidate -> c*_j node
  for (std::size_t i = 0; i < n; ++i) {
    menus.push_back(op_targets(profile.voters[i], n, query));
    for (const auto& t : menus.back())
      if (!collect.count(t.candidate.bits))
        collect[t.candidate.bits] = net.add_node("c*" + candidate_bits(profile, t.candidate));
  }
  for (const auto& [bits, node] : collect) {
    if (bits == query.preferred.bits)
      net.add_arc(node, net.sink, static_cast<long long>(r), 0);
    else
      net.add_arc(node, g, static_cast<long long>(r), 0);
  }
  net.add_arc(g, net.sink, static_cast<long long>(n - r), 0);

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t vi = net.add_node("v" + std::to_string(i));
    net.add_arc(net.source, vi, 1, 0);
    for (const auto& t : menus[i]) {
      std::size_t bi = net.add_node("c" + candidate_bits(profile, t.candidate) + "_" +
                                    std::to_string(i));
      std::size_t arc = net.add_arc(vi, bi, 1, t.cost);
      net.add_arc(bi, collect[t.candidate.bits], 1, 0);
      op.bribe_arcs.push_back({arc, i, t.candidate});
    }
  }
  return op;
}

inline BriberySolution solve_op_flow(const Profile& profile, const BriberyQuery& query) {
  const std::size_t n = profile.num_voters();
  if (auto sol = detail::already_winning(profile, query); sol.cost) return sol;
  std::optional<Cost> best;
  std::vector<StatementFlip> best_flips;
  for (std::size_t r = 1; r <= n; ++r) {
    OpNetwork op = build_op_network(profile, query, r);
    FlowResult res = solve_min_cost_max_flow(op.net);
    if (res.flow != static_cast<long long>(n)) continue;
    if (best && res.cost >= *best) continue;
    std::vector<StatementFlip> flips;
    for (const auto& b : op.bribe_arcs)
      if (res.arc_flow[b.arc] == 1 && b.target != top_candidate(profile.voters[b.voter].net))
        for (const auto& f : flips_to_top(profile.voters[b.voter], b.target, b.voter))
          flips.push_back(f);
    best = res.cost;
    best_flips = std::move(flips);
  }
  return finish(best, query.budget, std::move(best_flips));
}

// ---------------------------------------------------------------------------
// OK* with k = 2^j: drop the last j issues of O and solve as OP

inline BriberySolution solve_ok_star(const Profile& profile, const BriberyQuery& query) {
  const std::size_t m = profile.num_issues();
  const std::size_t j = okstar_dropped(query.k);
  if (j > m) throw std::invalid_argument("OK*: k exceeds the candidate space");
  if (!profile.global_order || !is_o_legal(profile, *profile.global_order))
    throw std::invalid_argument("OK* requires an O-legal profile");
  if (j == m) return finish(0, query.budget);  // every package is approved

  const auto& order = *profile.global_order;
  std::vector<std::size_t> kept(order.begin(), order.end() - static_cast<std::ptrdiff_t>(j));
  std::vector<std::size_t> to_new(m, m);
  for (std::size_t idx = 0; idx < kept.size(); ++idx) to_new[kept[idx]] = idx;

  Profile trunc;
  for (std::size_t x : kept) trunc.issues.push_back(profile.issues[x]);
  trunc.global_order = std::vector<std::size_t>(kept.size());
  for (std::size_t idx = 0; idx < kept.size(); ++idx) (*trunc.global_order)[idx] = idx;

  for (const auto& voter : profile.voters) {
    Voter tv;
    tv.name = voter.name;
    tv.weight = voter.weight;
    tv.q = voter.q;
    tv.net.parents.resize(kept.size());
    tv.net.cpt.resize(kept.size());
    for (std::size_t x : kept) {
      std::size_t nx = to_new[x];
      for (std::size_t par : voter.net.parents[x]) {
        if (to_new[par] == m) throw std::logic_error("OK*: parent outside the kept prefix");
        tv.net.parents[nx].push_back(to_new[par]);
      }
      tv.net.cpt[nx] = voter.net.cpt[x];
    }
    for (std::size_t x : voter.net.order)
      if (to_new[x] != m) tv.net.order.push_back(to_new[x]);
    // per-issue prices equivalent to the original scheme on the kept issues
    if (query.scheme == CostScheme::LEVEL) {
      auto levels = issue_levels(voter.net);
      int depth = net_depth(voter.net);
      std::vector<Weight> prices(kept.size());
      for (std::size_t x : kept) prices[to_new[x]] = depth + 1 - levels[x];
      tv.flip_costs = std::move(prices);
    } else if (query.scheme == CostScheme::DIST) {
      std::vector<Weight> prices(kept.size());
      for (std::size_t pos = 0; pos < m; ++pos) {
        std::size_t x = voter.net.order[pos];
        if (to_new[x] != m) prices[to_new[x]] = Weight{1} << (m - 1 - pos);
      }
      tv.flip_costs = std::move(prices);
    } else if (query.scheme == CostScheme::ANY) {
      std::vector<Weight> prices(kept.size());
      for (std::size_t x : kept) prices[to_new[x]] = (*voter.flip_costs)[x];
      tv.flip_costs = std::move(prices);
    }
    trunc.voters.push_back(std::move(tv));
  }

  BriberyQuery sub = query;
  sub.rule = Rule::OP;
  sub.k = 1;
  sub.method = SolveMethod::FLOW;
  if (query.scheme != CostScheme::EQUAL && query.scheme != CostScheme::FLIP)
    sub.scheme = CostScheme::ANY;
  Candidate tp;
  for (std::size_t x : kept) tp = tp.with_value(to_new[x], query.preferred.value(x));
  sub.preferred = tp;

  BriberySolution sol = solve_op_flow(trunc, sub);
  for (auto& f : sol.flips) f.issue = kept[f.issue];
  return sol;
}

// ---------------------------------------------------------------------------
// OV (veto): pigeonhole case for n < 2^m, approval network otherwise

struct OvNetwork {
  FlowNetwork net;
  struct BribeArc {
    std::size_t arc;
    std::size_t voter;
    Candidate new_veto;
  };
  std::vector<BribeArc> bribe_arcs;
};

inline OvNetwork build_ov_network(const Profile& profile, const BriberyQuery& query,
                                  std::size_t r) {
  const std::size_t n = profile.num_voters();
  const std::size_t m = profile.num_issues();
  const Rank space = Rank{1} << m;
  const long long approvals = static_cast<long long>(n) * (static_cast<long long>(space) - 1);

  OvNetwork ov;
  FlowNetwork& net = ov.net;
  net.source = net.add_node("s");
  net.sink = net.add_node("t");
  std::size_t g = net.add_node("g");

  std::vector<std::size_t> collect(space);
  for (Rank c = 0; c < space; ++c) {
    collect[c] = net.add_node("c*" + candidate_bits(profile, Candidate{static_cast<Bits>(c)}));
    if (static_cast<Bits>(c) == query.preferred.bits)
      net.add_arc(collect[c], net.sink, static_cast<long long>(r), 0);
    else
      net.add_arc(collect[c], g, static_cast<long long>(r), 0);
  }
  net.add_arc(g, net.sink, approvals - static_cast<long long>(r), 0);

  for (std::size_t i = 0; i < n; ++i) {
    const Voter& voter = profile.voters[i];
    const Candidate veto = veto_candidate(voter.net);
    std::size_t vi = net.add_node("v" + std::to_string(i));
    net.add_arc(net.source, vi, static_cast<long long>(space) - 1, 0);
    const bool bribable = !(query.negative && veto == query.preferred);
    std::size_t veto_b = 0;
    if (bribable) {
      veto_b = net.add_node("b" + candidate_bits(profile, veto) + "_" + std::to_string(i));
      net.add_arc(veto_b, collect[veto.bits], 1, 0);
    }
    for (Rank c = 0; c < space; ++c) {
      Candidate cand{static_cast<Bits>(c)};
      if (cand == veto) continue;
      std::size_t approval =
          net.add_node("a" + candidate_bits(profile, cand) + "_" + std::to_string(i));
      net.add_arc(vi, approval, 1, 0);
      std::size_t ident =
          net.add_node("b" + candidate_bits(profile, cand) + "_" + std::to_string(i));
      net.add_arc(approval, ident, 1, 0);
      net.add_arc(ident, collect[cand.bits], 1, 0);
      if (bribable)
        if (auto cost = cost_to_veto(voter, cand, query.scheme, query.action)) {
          std::size_t arc = net.add_arc(approval, veto_b, 1, *cost);
          ov.bribe_arcs.push_back({arc, i, cand});
        }
    }
  }
  return ov;
}

inline BriberySolution solve_ov_flow(const Profile& profile, const BriberyQuery& query) {
  const std::size_t n = profile.num_voters();
  const std::size_t m = profile.num_issues();
  const Rank space = Rank{1} << m;
  if (auto sol = detail::already_winning(profile, query); sol.cost) return sol;

  if (static_cast<Rank>(n) < space) {
    // some candidate is veto-free, so p must lose every veto
    Cost total = 0;
    std::vector<StatementFlip> flips;
    for (std::size_t i = 0; i < n; ++i) {
      const Voter& voter = profile.voters[i];
      if (veto_candidate(voter.net) != query.preferred) continue;
      if (query.negative) return finish(std::nullopt, query.budget);
      auto targets = cheapest_targets(voter, space, query.scheme, query.action, TargetMode::VETO);
      const Target* pick = nullptr;
      for (const auto& t : targets)
        if (t.candidate != query.preferred) {
          pick = &t;
          break;
        }
      if (!pick) return finish(std::nullopt, query.budget);
      total += pick->cost;
      for (const auto& f : flips_to_veto(voter, pick->candidate, i)) flips.push_back(f);
    }
    return finish(total, query.budget, std::move(flips));
  }

  const long long approvals = static_cast<long long>(n) * (static_cast<long long>(space) - 1);
  std::optional<Cost> best;
  std::vector<StatementFlip> best_flips;
  for (std::size_t r = 1; r <= n; ++r) {
    OvNetwork ov = build_ov_network(profile, query, r);
    FlowResult res = solve_min_cost_max_flow(ov.net);
    if (res.flow != approvals) continue;
    if (best && res.cost >= *best) continue;
    std::vector<StatementFlip> flips;
    for (const auto& b : ov.bribe_arcs)
      if (res.arc_flow[b.arc] == 1)
        for (const auto& f : flips_to_veto(profile.voters[b.voter], b.new_veto, b.voter))
          flips.push_back(f);
    best = res.cost;
    best_flips = std::move(flips);
  }
  return finish(best, query.budget, std::move(best_flips));
}

// ---------------------------------------------------------------------------
// SM: greedy per issue (unweighted), knapsack per issue (weighted, q = 1)

inline BriberySolution solve_sm_greedy(const Profile& profile, const BriberyQuery& query) {
  if (!all_unit_weights(profile)) throw std::invalid_argument("SM greedy needs unit weights");
  if (query.scheme == CostScheme::EQUAL || query.scheme == CostScheme::DIST)
    throw std::invalid_argument("SM greedy needs per-flip costs");
  if (!profile.global_order || !is_o_legal(profile, *profile.global_order))
    throw std::invalid_argument("SM requires an O-legal profile");
  const std::size_t n = profile.num_voters();
  Cost total = 0;
  std::vector<StatementFlip> flips;
  for (std::size_t x : *profile.global_order) {
    const int p_val = query.preferred.value(x);
    Weight good = 0;
    std::vector<std::pair<Cost, std::size_t>> opposing;  // (price, voter), flippable only
    for (std::size_t i = 0; i < n; ++i) {
      const Voter& voter = profile.voters[i];
      if (sm_vote(voter, x, query.preferred) == p_val)
        ++good;
      else if (action_permits(voter.net, x, query.action))
        opposing.push_back({flip_cost(voter, x, query.scheme) * voter.q, i});
    }
    Weight need = sm_threshold(static_cast<Weight>(n), p_val, query.tie_winner) - good;
    if (need <= 0) continue;
    if (static_cast<Weight>(opposing.size()) < need) return finish(std::nullopt, query.budget);
    std::stable_sort(opposing.begin(), opposing.end());
    for (Weight b = 0; b < need; ++b) {
      auto [price, i] = opposing[b];
      total += price;
      flips.push_back({i, x, profile.voters[i].net.context_of(x, query.preferred),
                       static_cast<std::uint8_t>(p_val)});
    }
  }
  return finish(total, query.budget, std::move(flips));
}

inline BriberySolution solve_sm_weighted_dp(const Profile& profile, const BriberyQuery& query) {
  if (query.scheme != CostScheme::FLIP && query.scheme != CostScheme::LEVEL)
    throw std::invalid_argument("SM knapsack handles C_flip and C_level");
  if (!all_unit_q(profile)) throw std::invalid_argument("SM knapsack needs unit cost factors");
  if (!profile.global_order || !is_o_legal(profile, *profile.global_order))
    throw std::invalid_argument("SM requires an O-legal profile");
  const std::size_t n = profile.num_voters();
  Weight W = 0;
  for (const auto& voter : profile.voters) W += voter.weight;
  const Weight kInfWeight = W + 1;

  Cost total = 0;
  std::vector<StatementFlip> flips;
  for (std::size_t x : *profile.global_order) {
    const int p_val = query.preferred.value(x);
    // opposition weight p's value can tolerate under the tie rule
    Weight cap = p_val == query.tie_winner ? W / 2 : (W - 1) / 2;
    std::vector<std::size_t> bribable;
    Cost T = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Voter& voter = profile.voters[i];
      if (sm_vote(voter, x, query.preferred) == p_val) continue;
      if (!action_permits(voter.net, x, query.action)) {
        cap -= voter.weight;  // unbribable opposition eats into the allowance
      } else {
        bribable.push_back(i);
        T += flip_cost(voter, x, query.scheme);
      }
    }
    if (cap < 0) return finish(std::nullopt, query.budget);

    // d[i][j]: minimum kept weight over subsets of the first i bribable
    // voters whose kept flip cost is exactly j
    std::vector<std::vector<Weight>> d(bribable.size() + 1,
                                       std::vector<Weight>(static_cast<std::size_t>(T) + 1,
                                                           kInfWeight));
    d[0][0] = 0;
    for (std::size_t i = 0; i < bribable.size(); ++i) {
      const Voter& voter = profile.voters[bribable[i]];
      const Cost ci = flip_cost(voter, x, query.scheme);
      for (Cost jc = 0; jc <= T; ++jc) {
        std::size_t j = static_cast<std::size_t>(jc);
        d[i + 1][j] = d[i][j];
        if (jc >= ci && d[i][j - static_cast<std::size_t>(ci)] + voter.weight < d[i + 1][j])
          d[i + 1][j] = d[i][j - static_cast<std::size_t>(ci)] + voter.weight;
      }
    }
    std::optional<Cost> kept_cost;
    for (Cost jc = T; jc >= 0; --jc)
      if (d[bribable.size()][static_cast<std::size_t>(jc)] <= cap) {
        kept_cost = jc;
        break;
      }
    if (!kept_cost) return finish(std::nullopt, query.budget);
    total += T - *kept_cost;

    // backtrack: voters not in the kept set are bribed
    std::size_t j = static_cast<std::size_t>(*kept_cost);
    for (std::size_t i = bribable.size(); i-- > 0;) {
      const Voter& voter = profile.voters[bribable[i]];
      const std::size_t ci = static_cast<std::size_t>(flip_cost(voter, x, query.scheme));
      if (d[i + 1][j] == d[i][j]) {
        flips.push_back({bribable[i], x, voter.net.context_of(x, query.preferred),
                         static_cast<std::uint8_t>(p_val)});
      } else {
        j -= ci;
      }
    }
  }
  return finish(total, query.budget, std::move(flips));
}

// ---------------------------------------------------------------------------
// SM negative: greedy, then repair bribed voters that ended up on p

inline BriberySolution solve_sm_negative(const Profile& profile, const BriberyQuery& query) {
  BriberyQuery positive = query;
  positive.negative = false;
  BriberySolution step1 = solve_sm_greedy(profile, positive);
  if (!step1.cost) return step1;

  const std::size_t n = profile.num_voters();
  const std::size_t m = profile.num_issues();
  const Candidate p = query.preferred;

  std::vector<std::vector<bool>> bribed(n, std::vector<bool>(m, false));
  for (const auto& f : step1.flips) bribed[f.voter][f.issue] = true;
  auto vote_after = [&](std::size_t i, std::size_t x) {
    int v = sm_vote(profile.voters[i], x, p);
    return bribed[i][x] ? 1 - v : v;  // greedy always flips onto p's value
  };
  auto price = [&](std::size_t i, std::size_t x) {
    return flip_cost(profile.voters[i], x, query.scheme) * profile.voters[i].q;
  };

  std::vector<std::size_t> offenders;  // bribed voters now voting for p outright
  for (std::size_t i = 0; i < n; ++i) {
    bool was_bribed = false, at_p = true;
    for (std::size_t x = 0; x < m; ++x) {
      was_bribed |= bribed[i][x];
      at_p &= vote_after(i, x) == p.value(x);
    }
    if (was_bribed && at_p) offenders.push_back(i);
  }
  if (offenders.empty()) return finish(step1.cost, query.budget, std::move(step1.flips));

  // One flow unit per offender. A unit leaves its offender by flipping some
  // issue away from p, lands on that issue's junction node, and is absorbed
  // either by the issue's slack or by a donor who takes the flip over. A
  // donor absorbing its last differing issue must itself buy a flip away
  // from p, which re-enters the junction of that issue; this allows repair
  // chains of any length. Chains cannot cycle at negative cost because the
  // step-1 greedy already bought the cheapest flips on every issue.
  FlowNetwork net;
  net.source = net.add_node("s");
  net.sink = net.add_node("t");

  std::vector<std::size_t> offender_node(n);
  for (std::size_t i : offenders) {
    offender_node[i] = net.add_node("p" + std::to_string(i));
    net.add_arc(net.source, offender_node[i], 1, 0);
  }

  // cost of steering voter i off p's value on issue x: a refund when it
  // cancels a step-1 bribe, a fresh action-checked flip otherwise
  auto away_cost = [&](std::size_t i, std::size_t x) -> std::optional<Cost> {
    if (bribed[i][x]) return -price(i, x);
    if (!action_permits(profile.voters[i].net, x, query.action)) return std::nullopt;
    return price(i, x);
  };

  // moving voter i away from p on issue x: remove the step-1 flip or add a
  // fresh one; absorbing as donor j on issue x: add a flip onto p's value
  struct Move {
    std::size_t arc;
    std::size_t voter;
    std::size_t issue;
    bool toward_p;
  };
  std::vector<Move> moves;

  std::vector<std::size_t> away_node(m);
  for (std::size_t x = 0; x < m; ++x) {
    away_node[x] = net.add_node("a" + std::to_string(x));
    const int p_val = p.value(x);
    Weight k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (vote_after(i, x) == p_val) ++k;
    Weight slack = k - sm_threshold(static_cast<Weight>(n), p_val, query.tie_winner);
    if (slack > 0) net.add_arc(away_node[x], net.sink, slack, 0);
    for (std::size_t i : offenders)
      if (auto c = away_cost(i, x)) {
        std::size_t arc = net.add_arc(offender_node[i], away_node[x], 1, *c);
        moves.push_back({arc, i, x, false});
      }
  }

  for (std::size_t jv = 0; jv < n; ++jv) {
    if (std::find(offenders.begin(), offenders.end(), jv) != offenders.end()) continue;
    std::vector<std::size_t> differing;
    for (std::size_t x = 0; x < m; ++x)
      if (vote_after(jv, x) != p.value(x)) differing.push_back(x);
    if (differing.empty()) continue;  // votes for p organically, not a donor
    std::size_t donor_node = net.add_node("d" + std::to_string(jv));
    net.add_arc(donor_node, net.sink, static_cast<long long>(differing.size()) - 1, 0);
    for (std::size_t x : differing) {
      if (!action_permits(profile.voters[jv].net, x, query.action)) continue;
      std::size_t arc = net.add_arc(away_node[x], donor_node, 1, price(jv, x));
      moves.push_back({arc, jv, x, true});
    }
    // the escape flip that lets a donor absorb every differing issue
    for (std::size_t y = 0; y < m; ++y)
      if (vote_after(jv, y) == p.value(y))
        if (auto c = away_cost(jv, y)) {
          std::size_t arc = net.add_arc(donor_node, away_node[y], 1, *c);
          moves.push_back({arc, jv, y, false});
        }
  }

  FlowResult res = solve_min_cost_max_flow(net);
  if (res.flow != static_cast<long long>(offenders.size()))
    return finish(std::nullopt, query.budget);

  std::vector<StatementFlip> flips = step1.flips;
  for (const auto& mv : moves) {
    if (res.arc_flow[mv.arc] != 1) continue;
    const Voter& voter = profile.voters[mv.voter];
    Bits ctx = voter.net.context_of(mv.issue, p);
    if (!mv.toward_p && bribed[mv.voter][mv.issue]) {
      std::erase_if(flips, [&](const StatementFlip& f) {
        return f.voter == mv.voter && f.issue == mv.issue;
      });
    } else {
      int val = mv.toward_p ? p.value(mv.issue) : 1 - p.value(mv.issue);
      flips.push_back({mv.voter, mv.issue, ctx, static_cast<std::uint8_t>(val)});
    }
  }
  return finish(*step1.cost + res.cost, query.budget, std::move(flips));
}

// ---------------------------------------------------------------------------
// Entry point

inline BriberySolution solve(const Profile& profile, const BriberyQuery& query,
                             const OracleLimits& limits = {}) {
  if (query.rule == Rule::OKSTAR) okstar_dropped(query.k);  // validates k
  if (auto sol = detail::already_winning(profile, query); sol.cost) return sol;

  const bool unweighted = all_unit_weights(profile);
  const bool per_flip = query.scheme == CostScheme::FLIP || query.scheme == CostScheme::LEVEL ||
                        query.scheme == CostScheme::ANY;

  BriberySolution sol;
  SolveMethod method = query.method;
  if (method == SolveMethod::AUTO) {
    switch (query.rule) {
      case Rule::OP:
      case Rule::OKSTAR:
      case Rule::OV:
        method = unweighted ? SolveMethod::FLOW : SolveMethod::ORACLE;
        break;
      case Rule::SM:
        if (query.negative)
          method = unweighted && per_flip ? SolveMethod::GREEDY : SolveMethod::ORACLE;
        else if (unweighted && per_flip)
          method = SolveMethod::GREEDY;
        else if ((query.scheme == CostScheme::FLIP || query.scheme == CostScheme::LEVEL) &&
                 all_unit_q(profile))
          method = SolveMethod::DP;
        else
          method = SolveMethod::ORACLE;
        break;
    }
  }

  switch (method) {
    case SolveMethod::FLOW:
      if (query.rule == Rule::OP)
        sol = solve_op_flow(profile, query);
      else if (query.rule == Rule::OKSTAR)
        sol = solve_ok_star(profile, query);
      else if (query.rule == Rule::OV)
        sol = solve_ov_flow(profile, query);
      else
        throw std::invalid_argument("no flow solver for this rule");
      break;
    case SolveMethod::GREEDY:
      if (query.rule != Rule::SM) throw std::invalid_argument("greedy solves SM only");
      sol = query.negative ? solve_sm_negative(profile, query)
                           : solve_sm_greedy(profile, query);
      break;
    case SolveMethod::DP:
      if (query.rule != Rule::SM || query.negative)
        throw std::invalid_argument("knapsack solves positive SM only");
      sol = solve_sm_weighted_dp(profile, query);
      break;
    case SolveMethod::ORACLE:
    default:
      sol = oracle_solve(profile, query, limits);
      break;
  }

  if (sol.cost) {
    Profile bribed = apply_bribery(profile, sol.flips);
    if (!co_winners(bribed, query.rule, query.k, query.tie_winner).contains(query.preferred))
      throw std::logic_error("solver produced a non-winning bribery");
  }
  return sol;
}

}  // namespace cpnb
