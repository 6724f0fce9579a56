#pragma once

// Pricing of cp-statement flips: the five cost schemes, the three bribery
// actions, and per-voter costs of steering top candidates and vetoes.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cpnb/core.hpp"
#include "cpnb/subsets.hpp"

namespace cpnb {

using Cost = long long;
using MaybeCost = std::optional<Cost>;  // nullopt = infeasible under the action

enum class BriberyAction { IV, DV, IV_DV };
enum class CostScheme { EQUAL, FLIP, LEVEL, ANY, DIST };

// One cp-statement reversal. ctx bit i is the value of parents[issue][i].
struct StatementFlip {
  std::size_t voter = 0;
  std::size_t issue = 0;
  Bits ctx = 0;
  std::uint8_t new_pref = 0;

  friend auto operator<=>(const StatementFlip&, const StatementFlip&) = default;
};

inline bool action_permits(const CPNet& net, std::size_t issue, BriberyAction action) {
  switch (action) {
    case BriberyAction::IV: return net.parents[issue].empty();
    case BriberyAction::DV: return !net.parents[issue].empty();
    case BriberyAction::IV_DV: return true;
  }
  return false;
}

// Depth of an issue in the dependency graph: 1 for independent issues,
// otherwise one more than the deepest parent.
inline std::vector<int> issue_levels(const CPNet& net) {
  const std::size_t m = net.num_issues();
  std::vector<int> level(m, 0);
  for (std::size_t x : net.order) {  // parents precede x
    int deepest = 0;
    for (std::size_t p : net.parents[x]) deepest = std::max(deepest, level[p]);
    level[x] = deepest + 1;
  }
  return level;
}

inline int level(const CPNet& net, std::size_t issue) { return issue_levels(net)[issue]; }

inline int net_depth(const CPNet& net) {
  int k = 1;
  for (int l : issue_levels(net)) k = std::max(k, l);
  return k;
}

// Price of one statement flip before the Q factor. EQUAL and DIST price per
// target candidate, not per flip, and are rejected here.
inline Cost flip_cost(const Voter& voter, std::size_t issue, CostScheme scheme) {
  switch (scheme) {
    case CostScheme::FLIP:
      return 1;
    case CostScheme::LEVEL: {
      auto levels = issue_levels(voter.net);
      int k = *std::max_element(levels.begin(), levels.end());
      return k + 1 - levels[issue];
    }
    case CostScheme::ANY:
      if (!voter.flip_costs) throw std::invalid_argument("C_any needs per-issue flip costs");
      return (*voter.flip_costs)[issue];
    default:
      throw std::invalid_argument("scheme is not priced per flip");
  }
}

// The statement flips that make c the voter's top candidate: one flip per
// issue where c takes the dispreferred value in its realized context. The
// flip count equals the popcount of c's linearization vector.
inline std::vector<StatementFlip> flips_to_top(const Voter& voter, Candidate c,
                                               std::size_t voter_index = 0) {
  std::vector<StatementFlip> flips;
  const CPNet& net = voter.net;
  for (std::size_t x : net.order)
    if (c.value(x) != net.preferred(x, c))
      flips.push_back({voter_index, x, net.context_of(x, c),
                       static_cast<std::uint8_t>(c.value(x))});
  return flips;
}

// Dual: flips that make c the voter's veto (the all-ones vector); one flip
// per issue where c takes the preferred value.
inline std::vector<StatementFlip> flips_to_veto(const Voter& voter, Candidate c,
                                                std::size_t voter_index = 0) {
  std::vector<StatementFlip> flips;
  const CPNet& net = voter.net;
  for (std::size_t x : net.order)
    if (c.value(x) == net.preferred(x, c))
      flips.push_back({voter_index, x, net.context_of(x, c),
                       static_cast<std::uint8_t>(1 - c.value(x))});
  return flips;
}

namespace detail {

inline MaybeCost priced(const Voter& voter, const std::vector<StatementFlip>& flips,
                        CostScheme scheme, BriberyAction action, Cost per_target_cost) {
  for (const auto& f : flips)
    if (!action_permits(voter.net, f.issue, action)) return std::nullopt;
  switch (scheme) {
    case CostScheme::EQUAL:
      return (flips.empty() ? 0 : 1) * voter.q;
    case CostScheme::DIST:
      return per_target_cost * voter.q;
    default: {
      Cost total = 0;
      for (const auto& f : flips) total += flip_cost(voter, f.issue, scheme);
      return total * voter.q;
    }
  }
}

}  // namespace detail

// Cost of bribing the voter so that c becomes his top candidate, or nullopt
// when a required flip touches an issue the action forbids.
inline MaybeCost cost_to_top(const Voter& voter, Candidate c, CostScheme scheme,
                             BriberyAction action) {
  return detail::priced(voter, flips_to_top(voter, c), scheme, action,
                        static_cast<Cost>(rank(voter.net, c)));
}

// Cost of bribing the voter so that c becomes his veto. Under C_dist the
// price is the number of candidates ranked below c, so the current veto
// stays free.
inline MaybeCost cost_to_veto(const Voter& voter, Candidate c, CostScheme scheme,
                              BriberyAction action) {
  Rank worst = (Rank{1} << voter.net.num_issues()) - 1;
  return detail::priced(voter, flips_to_veto(voter, c), scheme, action,
                        static_cast<Cost>(worst - rank(voter.net, c)));
}

// ---------------------------------------------------------------------------
// Cheapest reachable targets

enum class TargetMode { TOP, VETO };

struct Target {
  Candidate candidate;
  Cost cost = 0;  // includes the Q factor
};

namespace detail {

// Deposit the low bits of `packed` into the set positions of `mask`,
// lowest position first. Monotone in `packed`.
inline Rank deposit_bits(Rank packed, Rank mask) {
  Rank out = 0;
  for (Rank bit = 1; mask; bit <<= 1) {
    Rank low = mask & (~mask + 1);
    if (packed & bit) out |= low;
    mask ^= low;
  }
  return out;
}

}  // namespace detail

// The K cheapest candidates the voter can be steered to (mode TOP: new top
// candidate, mode VETO: new veto) under the action and scheme, ascending by
// cost. Flip subsets over the permitted issues are in bijection with the
// reachable candidates through the linearization vector.
inline std::vector<Target> cheapest_targets(const Voter& voter, std::uint64_t K,
                                            CostScheme scheme, BriberyAction action,
                                            TargetMode mode) {
  const CPNet& net = voter.net;
  const std::size_t m = net.num_issues();
  const Rank worst = (Rank{1} << m) - 1;

  std::vector<std::size_t> permitted;            // issue indices
  for (std::size_t x = 0; x < m; ++x)
    if (action_permits(net, x, action)) permitted.push_back(x);
  Rank permitted_positions = 0;                  // mask over vector positions
  for (std::size_t i = 0; i < m; ++i)
    if (action_permits(net, net.order[i], action))
      permitted_positions |= Rank{1} << (m - 1 - i);

  auto vec_of_subset = [&](std::uint64_t subset) {
    Rank vec = 0;
    for (std::size_t i = 0; i < permitted.size(); ++i)
      if (subset & (std::uint64_t{1} << i)) {
        std::size_t pos =
            std::find(net.order.begin(), net.order.end(), permitted[i]) - net.order.begin();
        vec |= Rank{1} << (m - 1 - pos);
      }
    return vec;
  };
  auto candidate_of_vec = [&](Rank vec) {
    return unrank(net, mode == TargetMode::TOP ? vec : worst ^ vec);
  };

  std::vector<Target> out;
  switch (scheme) {
    case CostScheme::FLIP:
    case CostScheme::LEVEL:
    case CostScheme::ANY: {
      SizedGround ground;
      for (std::size_t x : permitted) ground.sizes.push_back(flip_cost(voter, x, scheme));
      for (const auto& sub : k_smallest_subsets(ground, K))
        out.push_back({candidate_of_vec(vec_of_subset(sub.mask)), sub.size * voter.q});
      break;
    }
    case CostScheme::EQUAL:
    case CostScheme::DIST: {
      const Rank reachable = Rank{1} << permitted.size();
      const Rank take = std::min<Rank>(K, reachable);
      for (Rank i = 0; i < take; ++i) {
        Rank flipped = detail::deposit_bits(i, permitted_positions);
        Cost cost = scheme == CostScheme::DIST ? static_cast<Cost>(flipped) * voter.q
                                               : (i == 0 ? 0 : voter.q);
        out.push_back({candidate_of_vec(flipped), cost});
      }
      break;
    }
  }
  return out;
}

}  // namespace cpnb
