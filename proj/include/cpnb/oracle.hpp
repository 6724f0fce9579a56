#pragma once

// Exhaustive bribery solver: per-voter option sets, Cartesian product,
// direct winner evaluation. Ground truth for the polynomial solvers on
// desk-scale instances.

#include <array>
#include <stdexcept>
#include <vector>

#include "cpnb/bribery.hpp"
#include "cpnb/core.hpp"
#include "cpnb/costs.hpp"

namespace cpnb {

struct OracleLimits {
  long long max_combinations = 10'000'000;
  std::size_t max_m = 6;
  std::size_t max_n = 8;
};

struct OracleLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct OracleOption {
  Cost cost = 0;
  std::vector<StatementFlip> flips;
  Bits outcome = 0;  // new top (OP/OK*), new veto (OV), per-issue votes (SM)
};

inline std::vector<std::size_t> permitted_issues(const CPNet& net, BriberyAction action) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < net.num_issues(); ++x)
    if (action_permits(net, x, action)) out.push_back(x);
  return out;
}

inline std::vector<OracleOption> voter_options(const Profile& profile, std::size_t i,
                                               const BriberyQuery& query, Bits kept_mask) {
  const Voter& voter = profile.voters[i];
  const CPNet& net = voter.net;
  const std::size_t m = net.num_issues();
  const auto permitted = permitted_issues(net, query.action);
  const Bits p = query.preferred.bits;
  const Bits old_top = top_candidate(net).bits;
  const Bits old_veto = veto_candidate(net).bits;

  std::vector<OracleOption> options;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << permitted.size()); ++sub) {
    OracleOption opt;
    if (query.rule == Rule::SM) {
      Bits votes = 0;
      for (std::size_t x = 0; x < m; ++x)
        votes |= Bits{static_cast<unsigned>(sm_vote(voter, x, query.preferred))} << x;
      for (std::size_t b = 0; b < permitted.size(); ++b)
        if (sub & (std::uint64_t{1} << b)) {
          std::size_t x = permitted[b];
          Bits ctx = net.context_of(x, query.preferred);
          int now = (votes >> x) & 1u;
          opt.flips.push_back({i, x, ctx, static_cast<std::uint8_t>(1 - now)});
          votes ^= Bits{1} << x;
        }
      opt.outcome = votes;
      if (query.negative && !opt.flips.empty() && votes == p) continue;
      switch (query.scheme) {
        case CostScheme::EQUAL:
          opt.cost = opt.flips.empty() ? 0 : voter.q;
          break;
        case CostScheme::DIST: {
          CPNet flipped = net;
          for (const auto& f : opt.flips) flipped.cpt[f.issue][f.ctx] = f.new_pref;
          opt.cost = static_cast<Cost>(rank(net, top_candidate(flipped))) * voter.q;
          break;
        }
        default:
          for (const auto& f : opt.flips) opt.cost += flip_cost(voter, f.issue, query.scheme);
          opt.cost *= voter.q;
      }
    } else {
      // map the flip subset to its candidate through the linearization vector
      Rank vec = 0;
      for (std::size_t b = 0; b < permitted.size(); ++b)
        if (sub & (std::uint64_t{1} << b)) {
          std::size_t pos = 0;
          while (net.order[pos] != permitted[b]) ++pos;
          vec |= Rank{1} << (m - 1 - pos);
        }
      if (query.rule == Rule::OV) {
        Candidate target = unrank(net, ((Rank{1} << m) - 1) ^ vec);
        if (query.negative && old_veto == p && target.bits != old_veto) continue;
        opt.outcome = target.bits;
        opt.flips = flips_to_veto(voter, target, i);
        opt.cost = *cost_to_veto(voter, target, query.scheme, query.action);
      } else {
        Candidate target = unrank(net, vec);
        if (query.negative && (target.bits & kept_mask) == (p & kept_mask) &&
            (old_top & kept_mask) != (p & kept_mask))
          continue;
        opt.outcome = target.bits;
        opt.flips = flips_to_top(voter, target, i);
        opt.cost = *cost_to_top(voter, target, query.scheme, query.action);
      }
    }
    options.push_back(std::move(opt));
  }
  return options;
}

}  // namespace detail

inline BriberySolution oracle_solve(const Profile& profile, const BriberyQuery& query,
                                    const OracleLimits& limits = {}) {
  const std::size_t m = profile.num_issues();
  const std::size_t n = profile.num_voters();
  if (m > limits.max_m) throw OracleLimitError("oracle: too many issues");
  if (n > limits.max_n) throw OracleLimitError("oracle: too many voters");

  Bits kept = full_mask(m);
  if (query.rule == Rule::OKSTAR) {
    std::size_t j = okstar_dropped(query.k);
    if (j > m) throw std::invalid_argument("OK*: k exceeds the candidate space");
    if (!profile.global_order || !is_o_legal(profile, *profile.global_order))
      throw std::invalid_argument("OK* requires an O-legal profile");
    kept = 0;
    for (std::size_t idx = 0; idx + j < m; ++idx)
      kept |= Bits{1} << (*profile.global_order)[idx];
  }
  if (query.rule == Rule::SM &&
      (!profile.global_order || !is_o_legal(profile, *profile.global_order)))
    throw std::invalid_argument("SM requires an O-legal profile");

  std::vector<std::vector<detail::OracleOption>> options;
  long long combos = 1;
  for (std::size_t i = 0; i < n; ++i) {
    options.push_back(detail::voter_options(profile, i, query, kept));
    if (options.back().empty()) return finish(std::nullopt, query.budget);
    combos *= static_cast<long long>(options.back().size());
    if (combos > limits.max_combinations) throw OracleLimitError("oracle: too many combinations");
  }

  const Bits p = query.preferred.bits;
  std::array<Weight, 64> score{};
  std::vector<std::size_t> pick(n, 0);
  std::optional<Cost> best;
  std::vector<std::size_t> best_pick;

  auto p_wins = [&]() {
    if (query.rule == Rule::SM) {
      Weight total = 0;
      for (const auto& voter : profile.voters) total += voter.weight;
      for (std::size_t x = 0; x < m; ++x) {
        int p_val = query.preferred.value(x);
        Weight good = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (static_cast<int>((options[i][pick[i]].outcome >> x) & 1u) == p_val)
            good += profile.voters[i].weight;
        if (good < sm_threshold(total, p_val, query.tie_winner)) return false;
      }
      return true;
    }
    const Rank space = Rank{1} << m;
    score.fill(0);
    for (std::size_t i = 0; i < n; ++i)
      score[options[i][pick[i]].outcome & kept] += profile.voters[i].weight;
    if (query.rule == Rule::OV) {
      Rank vetoed = 0;
      for (Rank c = 0; c < space; ++c)
        if (score[c] > 0) ++vetoed;
      if (vetoed < space) return score[p] == 0;
      Weight least = score[p & kept];
      for (Rank c = 0; c < space; ++c)
        if (score[c] < least) return false;
      return true;
    }
    Weight top = score[p & kept];
    for (Rank c = 0; c < space; ++c)
      if (score[c] > top) return false;
    return true;
  };

  for (;;) {
    Cost cost = 0;
    for (std::size_t i = 0; i < n; ++i) cost += options[i][pick[i]].cost;
    if ((!best || cost < *best) && p_wins()) {
      best = cost;
      best_pick = pick;
    }
    // advance the odometer, last voter fastest, so combinations come up in
    // lexicographic order and the first optimum found is the canonical one
    std::size_t i = n;
    while (i > 0 && ++pick[i - 1] == options[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }

  if (!best) return finish(std::nullopt, query.budget);
  std::vector<StatementFlip> flips;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& f : options[i][best_pick[i]].flips) flips.push_back(f);
  Profile bribed = apply_bribery(profile, flips);
  if (!co_winners(bribed, query.rule, query.k, query.tie_winner).contains(query.preferred))
    throw std::logic_error("oracle: winner verification failed");
  return finish(best, query.budget, std::move(flips));
}

}  // namespace cpnb
