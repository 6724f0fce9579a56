#pragma once

// Profiles of acyclic binary CP-nets: per-voter candidate orders via the
// linearization-vector encoding, and winner determination for the rules
// SM, OP, OV and OK* (k a power of two on an O-legal profile).

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpnb {

using Bits = std::uint32_t;
using Rank = std::uint64_t;
using Weight = long long;

// Issues decided in an election. Values are binary; value index 0/1 maps to
// the two labels. Dependencies are per voter and live in the CPNet.
struct Issue {
  std::string name;
  std::array<std::string, 2> values;
};

// A complete assignment to all m issues. Bit j is the value index of issue j.
struct Candidate {
  Bits bits = 0;

  friend auto operator<=>(const Candidate&, const Candidate&) = default;
  int value(std::size_t issue) const { return (bits >> issue) & 1u; }
  Candidate with_value(std::size_t issue, int v) const {
    Bits b = bits & ~(Bits{1} << issue);
    return Candidate{b | (Bits{static_cast<unsigned>(v & 1)} << issue)};
  }
};

// One voter's conditional preferences: a dependency graph (parents per
// issue), a preference table per issue with one entry per parent context,
// and the voter's fixed linearization order over the issues.
//
// Context encoding: bit i of a context is the value of parents[issue][i].
struct CPNet {
  std::vector<std::vector<std::size_t>> parents;  // per issue
  std::vector<std::vector<std::uint8_t>> cpt;     // per issue, 2^|parents| rows
  std::vector<std::size_t> order;                 // parents precede children

  std::size_t num_issues() const { return parents.size(); }

  Bits context_of(std::size_t issue, Candidate c) const {
    Bits ctx = 0;
    for (std::size_t i = 0; i < parents[issue].size(); ++i)
      ctx |= Bits{static_cast<unsigned>(c.value(parents[issue][i]))} << i;
    return ctx;
  }

  // Preferred value of `issue` in the context realized by c.
  int preferred(std::size_t issue, Candidate c) const {
    return cpt[issue][context_of(issue, c)];
  }
};

struct Voter {
  std::string name;
  CPNet net;
  Weight weight = 1;
  Weight q = 1;                                       // cost factor Q[i]
  std::optional<std::vector<Weight>> flip_costs;      // per issue, for C_any
};

struct Profile {
  std::vector<Issue> issues;
  std::vector<Voter> voters;
  std::optional<std::vector<std::size_t>> global_order;  // the order O

  std::size_t num_issues() const { return issues.size(); }
  std::size_t num_voters() const { return voters.size(); }
  Rank num_candidates() const { return Rank{1} << issues.size(); }
};

enum class Rule { SM, OP, OV, OKSTAR };

// Majority ties on an issue go to this value unless overridden.
inline constexpr int kDefaultTieWinner = 0;

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string voter;   // empty for profile-level problems
  std::string issue;   // empty when not tied to one issue
  std::string what;
  bool warning = false;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const {
    for (const auto& v : violations)
      if (!v.warning) return false;
    return true;
  }
};

inline constexpr std::size_t kCompactnessBound = 5;

inline bool is_o_legal(const Profile& profile, const std::vector<std::size_t>& order) {
  if (order.size() != profile.num_issues()) return false;
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& voter : profile.voters)
    for (std::size_t x = 0; x < voter.net.num_issues(); ++x)
      for (std::size_t par : voter.net.parents[x])
        if (pos[par] >= pos[x]) return false;
  return true;
}

namespace detail {

inline bool acyclic(const CPNet& net) {
  // colors: 0 unvisited, 1 on stack, 2 done; edges parent -> child
  std::size_t m = net.num_issues();
  std::vector<std::vector<std::size_t>> children(m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t p : net.parents[x])
      if (p < m) children[p].push_back(x);
  std::vector<int> color(m, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t start = 0; start < m; ++start) {
    if (color[start]) continue;
    stack.push_back({start, 0});
    color[start] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < children[v].size()) {
        std::size_t w = children[v][i++];
        if (color[w] == 1) return false;
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

}  // namespace detail

inline ValidationReport validate(const Profile& profile) {
  ValidationReport rep;
  const std::size_t m = profile.num_issues();
  auto issue_name = [&](std::size_t j) {
    return j < m ? profile.issues[j].name : "#" + std::to_string(j);
  };
  for (const auto& voter : profile.voters) {
    const CPNet& net = voter.net;
    if (net.num_issues() != m || net.cpt.size() != m) {
      rep.violations.push_back({voter.name, "", "net does not cover the issue universe"});
      continue;
    }
    for (std::size_t x = 0; x < m; ++x) {
      std::set<std::size_t> seen;
      for (std::size_t p : net.parents[x]) {
        if (p >= m)
          rep.violations.push_back({voter.name, issue_name(x), "parent index out of range"});
        else if (p == x)
          rep.violations.push_back({voter.name, issue_name(x), "issue is its own parent"});
        else if (!seen.insert(p).second)
          rep.violations.push_back({voter.name, issue_name(x), "duplicate parent"});
      }
      if (net.parents[x].size() > kCompactnessBound)
        rep.violations.push_back(
            {voter.name, issue_name(x), "more parents than the compactness bound", true});
      std::size_t want = std::size_t{1} << std::min<std::size_t>(net.parents[x].size(), 20);
      if (net.cpt[x].size() != want)
        rep.violations.push_back({voter.name, issue_name(x), "incomplete table"});
      for (auto v : net.cpt[x])
        if (v > 1)
          rep.violations.push_back({voter.name, issue_name(x), "preferred value not 0/1"});
    }
    if (!detail::acyclic(net))
      rep.violations.push_back({voter.name, "", "cycle in dependency graph"});
    // order: a permutation in which every issue follows its parents
    std::vector<std::size_t> pos(m, m);
    bool perm = net.order.size() == m;
    if (perm)
      for (std::size_t i = 0; i < m; ++i) {
        if (net.order[i] >= m || pos[net.order[i]] != m) { perm = false; break; }
        pos[net.order[i]] = i;
      }
    if (!perm) {
      rep.violations.push_back({voter.name, "", "order is not a permutation of the issues"});
    } else {
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t p : net.parents[x])
          if (p < m && pos[p] >= pos[x])
            rep.violations.push_back(
                {voter.name, issue_name(x), "issue precedes one of its parents in the order"});
    }
    if (voter.weight < 1)
      rep.violations.push_back({voter.name, "", "weight must be >= 1"});
    if (voter.q < 1)
      rep.violations.push_back({voter.name, "", "cost factor q must be >= 1"});
    if (voter.flip_costs) {
      if (voter.flip_costs->size() != m)
        rep.violations.push_back({voter.name, "", "flip cost table does not cover every issue"});
      else
        for (std::size_t x = 0; x < m; ++x)
          if ((*voter.flip_costs)[x] < 0)
            rep.violations.push_back({voter.name, issue_name(x), "negative flip cost"});
    }
  }
  if (profile.global_order && !is_o_legal(profile, *profile.global_order))
    rep.violations.push_back({"", "", "profile is not O-legal for its global order"});
  return rep;
}

// ---------------------------------------------------------------------------
// Linearization: per-voter candidate ranks

// Vector over order positions (MSB = first issue in `order`): bit is 0 iff
// the candidate takes the cpt-preferred value in its realized context.
inline Rank linearization_vector(const CPNet& net, Candidate c) {
  const std::size_t m = net.num_issues();
  Rank vec = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t x = net.order[i];
    if (c.value(x) != net.preferred(x, c)) vec |= Rank{1} << (m - 1 - i);
  }
  return vec;
}

inline Rank rank(const CPNet& net, Candidate c) { return linearization_vector(net, c); }

inline Candidate unrank(const CPNet& net, Rank r) {
  const std::size_t m = net.num_issues();
  if (r >= (Rank{1} << m)) throw std::out_of_range("unrank: rank out of range");
  Candidate c;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t x = net.order[i];
    int pref = net.preferred(x, c);  // parents precede x, already assigned
    int bit = static_cast<int>((r >> (m - 1 - i)) & 1u);
    c = c.with_value(x, bit ? 1 - pref : pref);
  }
  return c;
}

inline Candidate top_candidate(const CPNet& net) { return unrank(net, 0); }

inline Candidate veto_candidate(const CPNet& net) {
  return unrank(net, (Rank{1} << net.num_issues()) - 1);
}

// ---------------------------------------------------------------------------
// Winner determination

inline Candidate sm_outcome(const Profile& profile, int tie_winner = kDefaultTieWinner) {
  if (!profile.global_order) throw std::invalid_argument("SM requires a global order");
  if (!is_o_legal(profile, *profile.global_order))
    throw std::invalid_argument("profile is not O-legal");
  Candidate decided;
  for (std::size_t x : *profile.global_order) {
    Weight mass[2] = {0, 0};
    for (const auto& voter : profile.voters)
      mass[voter.net.preferred(x, decided)] += voter.weight;
    int win = mass[1] > mass[0] ? 1 : mass[0] > mass[1] ? 0 : tie_winner;
    decided = decided.with_value(x, win);
  }
  return decided;
}

// Sparse candidate scores. For OK* the keys live on the truncated space of
// the first m - log2(k) issues of O; bits of truncated issues are zeroed and
// kept_mask records which issue bits are meaningful. Each OK* entry stands
// for a package of k candidates, so the plain k-approval mass is k times
// the recorded one.
struct Tally {
  std::map<Bits, Weight> score;
  Bits kept_mask = 0;
};

inline Bits full_mask(std::size_t m) { return m >= 32 ? ~Bits{0} : (Bits{1} << m) - 1; }

inline std::size_t okstar_dropped(Rank k) {
  std::size_t j = 0;
  while ((Rank{1} << j) < k) ++j;
  if ((Rank{1} << j) != k) throw std::invalid_argument("OK* requires k to be a power of 2");
  return j;
}

inline Tally score_tally(const Profile& profile, Rule rule, Rank k = 1) {
  const std::size_t m = profile.num_issues();
  Tally tally;
  tally.kept_mask = full_mask(m);
  switch (rule) {
    case Rule::OP:
      for (const auto& voter : profile.voters)
        tally.score[top_candidate(voter.net).bits] += voter.weight;
      break;
    case Rule::OV:
      for (const auto& voter : profile.voters)
        tally.score[veto_candidate(voter.net).bits] += voter.weight;
      break;
    case Rule::OKSTAR: {
      std::size_t j = okstar_dropped(k);
      if (j > m) throw std::invalid_argument("OK*: k exceeds the candidate space");
      if (!profile.global_order) throw std::invalid_argument("OK* requires a global order");
      if (!is_o_legal(profile, *profile.global_order))
        throw std::invalid_argument("profile is not O-legal");
      Bits kept = 0;
      for (std::size_t i = 0; i + j < m; ++i)
        kept |= Bits{1} << (*profile.global_order)[i];
      tally.kept_mask = kept;
      for (const auto& voter : profile.voters)
        tally.score[top_candidate(voter.net).bits & kept] += voter.weight;
      break;
    }
    case Rule::SM:
      throw std::invalid_argument("SM has no score tally");
  }
  return tally;
}

// Co-winner sets. OV winner sets may cover almost the whole exponential
// candidate space, so `complement` flips membership: the winners are then
// all candidates whose key is NOT in members.
struct WinnerSet {
  bool complement = false;
  Bits kept_mask = 0;
  std::set<Bits> members;

  bool contains(Candidate c) const {
    bool in = members.count(c.bits & kept_mask) != 0;
    return complement ? !in : in;
  }
};

inline WinnerSet co_winners(const Profile& profile, Rule rule, Rank k = 1,
                            int tie_winner = kDefaultTieWinner) {
  const std::size_t m = profile.num_issues();
  WinnerSet ws;
  ws.kept_mask = full_mask(m);
  if (rule == Rule::SM) {
    ws.members.insert(sm_outcome(profile, tie_winner).bits);
    return ws;
  }
  Tally tally = score_tally(profile, rule, k);
  ws.kept_mask = tally.kept_mask;
  if (rule == Rule::OV) {
    Rank distinct_vetoed = tally.score.size();
    if (distinct_vetoed < profile.num_candidates()) {
      // someone got no veto; winners are exactly the un-vetoed candidates
      ws.complement = true;
      for (const auto& [c, w] : tally.score) ws.members.insert(c);
    } else {
      Weight best = tally.score.begin()->second;
      for (const auto& [c, w] : tally.score) best = std::min(best, w);
      for (const auto& [c, w] : tally.score)
        if (w == best) ws.members.insert(c);
    }
    return ws;
  }
  // OP / OK*: argmax; with no voters every candidate scores 0 and wins
  if (tally.score.empty()) {
    ws.complement = true;
    return ws;
  }
  Weight best = 0;
  for (const auto& [c, w] : tally.score) best = std::max(best, w);
  for (const auto& [c, w] : tally.score)
    if (w == best) ws.members.insert(c);
  return ws;
}

// ---------------------------------------------------------------------------
// Label helpers shared by the CLI and tests

inline std::string candidate_labels(const Profile& profile, Candidate c) {
  std::string out;
  for (std::size_t j = 0; j < profile.num_issues(); ++j) {
    if (j) out += ',';
    out += profile.issues[j].values[c.value(j)];
  }
  return out;
}

inline std::string candidate_bits(const Profile& profile, Candidate c) {
  std::string out;
  for (std::size_t j = 0; j < profile.num_issues(); ++j)
    out += static_cast<char>('0' + c.value(j));
  return out;
}

}  // namespace cpnb
