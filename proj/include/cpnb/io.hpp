#pragma once

// JSON profile documents: parsing with strict key checking, and the inverse
// writer used by the generator and the round-trip tests.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpnb/core.hpp"

namespace cpnb {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void expect_keys(const Json& obj, const char* where,
                        const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ParseError(std::string(where) + ": unknown key '" + key + "'");
}

inline std::size_t issue_index(const Profile& profile, const std::string& name,
                               const char* where) {
  for (std::size_t j = 0; j < profile.issues.size(); ++j)
    if (profile.issues[j].name == name) return j;
  throw ParseError(std::string(where) + ": unknown issue '" + name + "'");
}

inline int value_index(const Issue& issue, const std::string& label, const char* where) {
  if (label == issue.values[0]) return 0;
  if (label == issue.values[1]) return 1;
  throw ParseError(std::string(where) + ": '" + label + "' is not a value of issue '" +
                   issue.name + "'");
}

inline std::vector<std::size_t> issue_list(const Profile& profile, const Json& arr,
                                           const char* where) {
  if (!arr.is_array()) throw ParseError(std::string(where) + ": expected an array");
  std::vector<std::size_t> out;
  for (const auto& name : arr) {
    if (!name.is_string()) throw ParseError(std::string(where) + ": expected issue names");
    out.push_back(issue_index(profile, name.get<std::string>(), where));
  }
  return out;
}

}  // namespace detail

inline Profile parse_profile(const Json& doc) {
  detail::expect_keys(doc, "document", {"issues", "order", "voters"});
  if (!doc.contains("issues") || !doc.contains("voters"))
    throw ParseError("document: 'issues' and 'voters' are required");

  Profile profile;
  std::vector<std::set<std::size_t>> declared_parents;
  for (const auto& j : doc["issues"]) {
    detail::expect_keys(j, "issue", {"name", "values", "parents"});
    if (!j.contains("name") || !j.contains("values"))
      throw ParseError("issue: 'name' and 'values' are required");
    Issue issue;
    issue.name = j["name"].get<std::string>();
    if (!j["values"].is_array() || j["values"].size() != 2)
      throw ParseError("issue '" + issue.name + "': exactly two values required");
    issue.values = {j["values"][0].get<std::string>(), j["values"][1].get<std::string>()};
    for (const auto& other : profile.issues)
      if (other.name == issue.name)
        throw ParseError("issue '" + issue.name + "': duplicate name");
    profile.issues.push_back(issue);
    declared_parents.push_back({});
  }
  // second pass for parents, so forward references work
  for (std::size_t j = 0; j < doc["issues"].size(); ++j)
    if (doc["issues"][j].contains("parents"))
      for (std::size_t p : detail::issue_list(profile, doc["issues"][j]["parents"], "parents"))
        declared_parents[j].insert(p);

  if (doc.contains("order"))
    profile.global_order = detail::issue_list(profile, doc["order"], "order");

  const std::size_t m = profile.num_issues();
  for (const auto& v : doc["voters"]) {
    detail::expect_keys(v, "voter", {"name", "weight", "q", "order", "cpt", "flipcost"});
    Voter voter;
    if (v.contains("name")) voter.name = v["name"].get<std::string>();
    if (v.contains("weight")) voter.weight = v["weight"].get<Weight>();
    if (v.contains("q")) voter.q = v["q"].get<Weight>();
    if (v.contains("order")) {
      voter.net.order = detail::issue_list(profile, v["order"], "voter order");
    } else {
      voter.net.order.resize(m);
      std::iota(voter.net.order.begin(), voter.net.order.end(), 0);
    }
    voter.net.parents.resize(m);
    voter.net.cpt.resize(m);
    if (!v.contains("cpt")) throw ParseError("voter '" + voter.name + "': missing cpt");

    // first pass: derive each issue's parent set from the ctx keys
    std::vector<std::set<std::size_t>> parents(m);
    for (const auto& row : v["cpt"]) {
      detail::expect_keys(row, "cpt row", {"issue", "ctx", "pref"});
      if (!row.contains("issue") || !row.contains("ctx") || !row.contains("pref"))
        throw ParseError("cpt row: 'issue', 'ctx' and 'pref' are required");
      std::size_t x = detail::issue_index(profile, row["issue"].get<std::string>(), "cpt row");
      for (const auto& [key, value] : row["ctx"].items())
        parents[x].insert(detail::issue_index(profile, key, "cpt ctx"));
    }
    for (std::size_t x = 0; x < m; ++x) {
      voter.net.parents[x].assign(parents[x].begin(), parents[x].end());
      if (!declared_parents[x].empty())
        for (std::size_t p : parents[x])
          if (!declared_parents[x].count(p))
            throw ParseError("voter '" + voter.name + "': parent '" +
                             profile.issues[p].name + "' of '" + profile.issues[x].name +
                             "' is not declared on the issue");
      if (parents[x].size() > 25)
        throw ParseError("voter '" + voter.name + "': too many parents");
      voter.net.cpt[x].assign(std::size_t{1} << parents[x].size(), 2);  // 2 = unset
    }

    for (const auto& row : v["cpt"]) {
      std::size_t x = detail::issue_index(profile, row["issue"].get<std::string>(), "cpt row");
      if (row["ctx"].size() != voter.net.parents[x].size())
        throw ParseError("voter '" + voter.name + "': inconsistent ctx keys for issue '" +
                         profile.issues[x].name + "'");
      Bits ctx = 0;
      for (const auto& [key, value] : row["ctx"].items()) {
        std::size_t p = detail::issue_index(profile, key, "cpt ctx");
        auto it = std::find(voter.net.parents[x].begin(), voter.net.parents[x].end(), p);
        if (it == voter.net.parents[x].end())
          throw ParseError("voter '" + voter.name + "': inconsistent ctx keys for issue '" +
                           profile.issues[x].name + "'");
        std::size_t bit = static_cast<std::size_t>(it - voter.net.parents[x].begin());
        int val = detail::value_index(profile.issues[p], value.template get<std::string>(),
                                      "cpt ctx");
        ctx |= Bits{static_cast<unsigned>(val)} << bit;
      }
      if (voter.net.cpt[x][ctx] != 2)
        throw ParseError("voter '" + voter.name + "': duplicate cpt row for issue '" +
                         profile.issues[x].name + "'");
      voter.net.cpt[x][ctx] = static_cast<std::uint8_t>(
          detail::value_index(profile.issues[x], row["pref"].get<std::string>(), "cpt pref"));
    }
    for (std::size_t x = 0; x < m; ++x)
      for (auto entry : voter.net.cpt[x])
        if (entry == 2)
          throw ParseError("voter '" + voter.name + "': incomplete table for issue '" +
                           profile.issues[x].name + "'");

    if (v.contains("flipcost")) {
      std::vector<Weight> costs(m, -1);
      for (const auto& [key, value] : v["flipcost"].items())
        costs[detail::issue_index(profile, key, "flipcost")] = value.template get<Weight>();
      for (std::size_t x = 0; x < m; ++x)
        if (costs[x] < 0)
          throw ParseError("voter '" + voter.name + "': flipcost misses issue '" +
                           profile.issues[x].name + "'");
      voter.flip_costs = std::move(costs);
    }
    profile.voters.push_back(std::move(voter));
  }
  return profile;
}

inline Json profile_to_json(const Profile& profile) {
  Json doc;
  doc["issues"] = Json::array();
  for (const auto& issue : profile.issues)
    doc["issues"].push_back({{"name", issue.name}, {"values", issue.values}});
  if (profile.global_order) {
    Json order = Json::array();
    for (std::size_t x : *profile.global_order) order.push_back(profile.issues[x].name);
    doc["order"] = std::move(order);
  }
  doc["voters"] = Json::array();
  for (const auto& voter : profile.voters) {
    Json v;
    v["name"] = voter.name;
    v["weight"] = voter.weight;
    v["q"] = voter.q;
    Json order = Json::array();
    for (std::size_t x : voter.net.order) order.push_back(profile.issues[x].name);
    v["order"] = std::move(order);
    Json cpt = Json::array();
    for (std::size_t x = 0; x < profile.num_issues(); ++x)
      for (Bits ctx = 0; ctx < voter.net.cpt[x].size(); ++ctx) {
        Json row;
        row["issue"] = profile.issues[x].name;
        Json c = Json::object();
        for (std::size_t b = 0; b < voter.net.parents[x].size(); ++b) {
          const Issue& par = profile.issues[voter.net.parents[x][b]];
          c[par.name] = par.values[(ctx >> b) & 1u];
        }
        row["ctx"] = std::move(c);
        row["pref"] = profile.issues[x].values[voter.net.cpt[x][ctx]];
        cpt.push_back(std::move(row));
      }
    v["cpt"] = std::move(cpt);
    if (voter.flip_costs) {
      Json fc = Json::object();
      for (std::size_t x = 0; x < profile.num_issues(); ++x)
        fc[profile.issues[x].name] = (*voter.flip_costs)[x];
      v["flipcost"] = std::move(fc);
    }
    doc["voters"].push_back(std::move(v));
  }
  return doc;
}

// Accepts either a raw bit string ("010") or comma-joined value labels.
inline Candidate parse_candidate(const Profile& profile, const std::string& text) {
  const std::size_t m = profile.num_issues();
  if (text.size() == m && text.find_first_not_of("01") == std::string::npos) {
    Candidate c;
    for (std::size_t j = 0; j < m; ++j) c = c.with_value(j, text[j] == '1');
    return c;
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != m)
    throw ParseError("candidate '" + text + "': expected " + std::to_string(m) + " values");
  Candidate c;
  for (std::size_t j = 0; j < m; ++j)
    c = c.with_value(j, detail::value_index(profile.issues[j], parts[j], "candidate"));
  return c;
}

inline Json candidate_to_json(const Profile& profile, Candidate c) {
  return Json{{"labels", candidate_labels(profile, c)}, {"bits", candidate_bits(profile, c)}};
}

}  // namespace cpnb
