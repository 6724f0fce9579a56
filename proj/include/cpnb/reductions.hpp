#pragma once

// Hardness-reduction generators: weighted bribery instances from Partition,
// the lobbying-to-negative-lobbying transformation, and small brute-force
// deciders for both source problems.

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpnb/bribery.hpp"
#include "cpnb/core.hpp"

namespace cpnb {

struct PartitionInstance {
  std::vector<Weight> elements;  // positive, even total

  Weight total() const { return std::accumulate(elements.begin(), elements.end(), Weight{0}); }
};

inline void check_partition(const PartitionInstance& inst) {
  for (Weight a : inst.elements)
    if (a < 1) throw std::invalid_argument("partition: elements must be positive");
  if (inst.total() % 2 != 0) throw std::invalid_argument("partition: total must be even");
}

inline bool solve_partition_bruteforce(const PartitionInstance& inst) {
  check_partition(inst);
  const std::size_t l = inst.elements.size();
  if (l > 20) throw std::invalid_argument("partition: instance too large");
  const Weight half = inst.total() / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    Weight sum = 0;
    for (std::size_t i = 0; i < l; ++i)
      if (mask & (std::uint64_t{1} << i)) sum += inst.elements[i];
    if (sum == half) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Partition -> weighted bribery

enum class ReductionVariant { OP_POS, OV_DV_POS, OV_NEG, SM_NEG };

struct ReducedInstance {
  Profile profile;
  BriberyQuery query;
};

namespace detail {

inline Voter reduction_voter(std::string name, Weight weight,
                             std::vector<std::vector<std::size_t>> parents,
                             std::vector<std::vector<std::uint8_t>> cpt) {
  Voter v;
  v.name = std::move(name);
  v.weight = weight;
  v.net.parents = std::move(parents);
  v.net.cpt = std::move(cpt);
  v.net.order.resize(v.net.parents.size());
  std::iota(v.net.order.begin(), v.net.order.end(), 0);
  return v;
}

inline Cost flip_budget(const Profile& profile) {
  Cost budget = 0;
  for (const auto& voter : profile.voters)
    budget += static_cast<Cost>(voter.net.num_issues()) * voter.q;
  return budget;  // covers every conceivable C_flip bribery
}

}  // namespace detail

// Election gadgets whose optimal bribery encodes an even split of the
// elements. One voter of weight a_i per element; the heavy voters pin the
// initial scores. Candidate value 0 is the plain (unbarred) reading, so the
// preferred candidate p is always the all-zero assignment.
inline ReducedInstance weighted_bribery_from_partition(const PartitionInstance& inst,
                                                       ReductionVariant variant) {
  check_partition(inst);
  const Weight psi = inst.total() / 2;
  if (psi < 1) throw std::invalid_argument("partition: empty instance has no gadget");

  ReducedInstance out;
  Profile& profile = out.profile;
  BriberyQuery& query = out.query;
  query.scheme = CostScheme::FLIP;
  query.preferred = Candidate{0};
  query.negative = variant == ReductionVariant::OV_NEG || variant == ReductionVariant::SM_NEG;

  auto element_voters = [&](std::vector<std::vector<std::size_t>> parents,
                            std::vector<std::vector<std::uint8_t>> cpt) {
    for (std::size_t i = 0; i < inst.elements.size(); ++i)
      profile.voters.push_back(detail::reduction_voter("a" + std::to_string(i + 1),
                                                       inst.elements[i], parents, cpt));
  };

  switch (variant) {
    case ReductionVariant::OP_POS:
      // scorer of p, then element voters topping c2 whose single dependent
      // flip moves them to c3 (and whose independent flip moves them to c4)
      profile.issues = {{"X", {"x", "~x"}}, {"Y", {"y", "~y"}}};
      profile.global_order = std::vector<std::size_t>{0, 1};
      profile.voters.push_back(detail::reduction_voter("v1", psi, {{}, {}}, {{0}, {0}}));
      element_voters({{}, {0}}, {{1}, {1, 0}});
      query.rule = Rule::OP;
      query.action = BriberyAction::DV;
      break;
    case ReductionVariant::OV_DV_POS:
      // v1 vetoes p, v2 vetoes the clone, element voters veto c2
      profile.issues = {{"X", {"x", "~x"}}, {"Y", {"y", "~y"}}};
      profile.voters.push_back(detail::reduction_voter("v1", psi, {{}, {}}, {{1}, {1}}));
      profile.voters.push_back(detail::reduction_voter("v2", psi, {{}, {}}, {{1}, {0}}));
      element_voters({{}, {0}}, {{0}, {0, 1}});
      query.rule = Rule::OV;
      query.action = BriberyAction::DV;
      break;
    case ReductionVariant::OV_NEG:
      // as above but the element voters' vetoes move via the independent
      // issue, and the p-vetoer is untouchable
      profile.issues = {{"X", {"x", "~x"}}, {"Y", {"y", "~y"}}};
      profile.voters.push_back(detail::reduction_voter("v1", psi, {{}, {}}, {{1}, {1}}));
      profile.voters.push_back(detail::reduction_voter("v2", psi, {{}, {}}, {{0}, {0}}));
      element_voters({{}, {0}}, {{0}, {0, 1}});
      query.rule = Rule::OV;
      query.action = BriberyAction::IV;
      break;
    case ReductionVariant::SM_NEG:
      // element voters vote ~y and ~z under x; bribing both dependent
      // issues of one voter would put him on p, which negative forbids
      profile.issues = {{"X", {"x", "~x"}}, {"Y", {"y", "~y"}}, {"Z", {"z", "~z"}}};
      profile.global_order = std::vector<std::size_t>{0, 1, 2};
      profile.voters.push_back(detail::reduction_voter("v1", 1, {{}, {}, {}}, {{0}, {0}, {0}}));
      element_voters({{}, {0}, {0}}, {{0}, {1, 0}, {1, 0}});
      query.rule = Rule::SM;
      query.action = BriberyAction::DV;
      break;
  }
  query.budget = detail::flip_budget(profile);
  return out;
}

// ---------------------------------------------------------------------------
// Optimal Lobbying

struct LobbyingInstance {
  std::vector<std::vector<int>> E;  // n rows, m 0/1 columns
  std::size_t k = 0;                // rows to edit
  std::vector<int> x;               // target outcome per column
  bool negative = false;            // edited rows must differ from x
};

inline LobbyingInstance nol_from_ol(const LobbyingInstance& ol) {
  if (ol.negative) throw std::invalid_argument("lobbying: input is already negative");
  LobbyingInstance out = ol;
  const std::size_t n = ol.E.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.E[i].push_back(i == j ? 1 : 0);
  out.x.insert(out.x.end(), n, 0);
  out.negative = true;
  return out;
}

inline bool solve_lobbying_bruteforce(const LobbyingInstance& inst) {
  const std::size_t n = inst.E.size();
  const std::size_t m = inst.x.size();
  if (n > 6 || m > 12) throw std::invalid_argument("lobbying: instance too large");
  for (const auto& row : inst.E)
    if (row.size() != m) throw std::invalid_argument("lobbying: ragged matrix");
  if (inst.k > n) throw std::invalid_argument("lobbying: k exceeds the row count");

  auto x_bits = [&] {
    std::uint64_t b = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (inst.x[j]) b |= std::uint64_t{1} << j;
    return b;
  }();
  std::vector<std::uint64_t> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (inst.E[i][j]) rows[i] |= std::uint64_t{1} << j;

  // column outcome is 1 on a strict majority of ones; ties go to 0
  auto majority_ok = [&](const std::vector<std::uint64_t>& r) {
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t ones = 0;
      for (std::size_t i = 0; i < n; ++i) ones += (r[i] >> j) & 1u;
      if ((2 * ones > n ? 1u : 0u) != ((x_bits >> j) & 1u)) return false;
    }
    return true;
  };

  std::vector<std::size_t> chosen;
  auto try_edits = [&](auto&& self, std::size_t idx, std::vector<std::uint64_t>& r) -> bool {
    if (idx == chosen.size()) return majority_ok(r);
    for (std::uint64_t value = 0; value < (std::uint64_t{1} << m); ++value) {
      if (inst.negative && value == x_bits) continue;
      std::uint64_t saved = r[chosen[idx]];
      r[chosen[idx]] = value;
      bool ok = self(self, idx + 1, r);
      r[chosen[idx]] = saved;
      if (ok) return true;
    }
    return false;
  };
  auto choose = [&](auto&& self, std::size_t from, std::size_t left) -> bool {
    if (left == 0) {
      std::vector<std::uint64_t> r = rows;
      return try_edits(try_edits, 0, r);
    }
    for (std::size_t i = from; i + left <= n; ++i) {
      chosen.push_back(i);
      if (self(self, i + 1, left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return choose(choose, 0, inst.k);
}

}  // namespace cpnb
