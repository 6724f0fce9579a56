#pragma once

// Shared bribery vocabulary: queries, solutions, applying flips to a
// profile, and recomputing the priced cost of a flip set.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cpnb/core.hpp"
#include "cpnb/costs.hpp"

namespace cpnb {

enum class SolveMethod { AUTO, FLOW, GREEDY, DP, ORACLE };

struct BriberyQuery {
  Rule rule = Rule::OP;
  Rank k = 1;  // OK* only
  BriberyAction action = BriberyAction::IV_DV;
  CostScheme scheme = CostScheme::FLIP;
  Cost budget = 0;
  Candidate preferred;
  bool negative = false;
  SolveMethod method = SolveMethod::AUTO;
  int tie_winner = kDefaultTieWinner;
};

struct BriberySolution {
  std::optional<Cost> cost;  // nullopt: p cannot be made a co-winner at all
  bool feasible = false;     // cost present and within budget
  std::vector<StatementFlip> flips;
};

inline BriberySolution finish(std::optional<Cost> cost, Cost budget,
                              std::vector<StatementFlip> flips = {}) {
  BriberySolution sol;
  sol.cost = cost;
  sol.feasible = cost.has_value() && *cost <= budget;
  sol.flips = std::move(flips);
  return sol;
}

// Reverses each flip's cp-statement. Involution: applying a solution twice
// restores the original profile.
inline Profile apply_bribery(const Profile& profile, const std::vector<StatementFlip>& flips) {
  Profile out = profile;
  for (const auto& f : flips) {
    if (f.voter >= out.voters.size()) throw std::invalid_argument("flip: voter out of range");
    CPNet& net = out.voters[f.voter].net;
    if (f.issue >= net.num_issues()) throw std::invalid_argument("flip: issue out of range");
    if (f.ctx >= net.cpt[f.issue].size()) throw std::invalid_argument("flip: missing context");
    net.cpt[f.issue][f.ctx] = 1 - net.cpt[f.issue][f.ctx];
  }
  return out;
}

// Reprices a flip set from scratch; used to cross-check solver-reported
// costs. C_dist is priced per target: rank of the bribed top, or the dual
// for the bribed veto under OV.
inline Cost solution_cost(const Profile& profile, const std::vector<StatementFlip>& flips,
                          CostScheme scheme, Rule rule) {
  std::map<std::size_t, std::vector<StatementFlip>> per_voter;
  for (const auto& f : flips) per_voter[f.voter].push_back(f);
  Cost total = 0;
  for (const auto& [i, vf] : per_voter) {
    const Voter& voter = profile.voters[i];
    switch (scheme) {
      case CostScheme::EQUAL:
        total += voter.q;
        break;
      case CostScheme::DIST: {
        Profile bribed = apply_bribery(profile, vf);
        const CPNet& now = bribed.voters[i].net;
        if (rule == Rule::OV) {
          Rank worst = (Rank{1} << voter.net.num_issues()) - 1;
          total += static_cast<Cost>(worst - rank(voter.net, veto_candidate(now))) * voter.q;
        } else {
          total += static_cast<Cost>(rank(voter.net, top_candidate(now))) * voter.q;
        }
        break;
      }
      default: {
        Cost sum = 0;
        for (const auto& f : vf) sum += flip_cost(voter, f.issue, scheme);
        total += sum * voter.q;
        break;
      }
    }
  }
  return total;
}

inline bool all_unit_weights(const Profile& profile) {
  for (const auto& v : profile.voters)
    if (v.weight != 1) return false;
  return true;
}

inline bool all_unit_q(const Profile& profile) {
  for (const auto& v : profile.voters)
    if (v.q != 1) return false;
  return true;
}

// The value a voter casts for an issue when every preceding issue has been
// decided in p's favor: the cpt-preferred value in p's parent context.
inline int sm_vote(const Voter& voter, std::size_t issue, Candidate p) {
  return voter.net.preferred(issue, p);
}

// Weight p's value must reach on an issue to carry it under the tie rule.
inline Weight sm_threshold(Weight total_weight, int p_value, int tie_winner) {
  return p_value == tie_winner ? (total_weight + 1) / 2 : total_weight / 2 + 1;
}

}  // namespace cpnb
