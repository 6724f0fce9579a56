// Command-line front end: winner determination, bribery solving, subset
// enumeration, and reduction-instance generation over JSON documents.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpnb/core.hpp"
#include "cpnb/io.hpp"
#include "cpnb/oracle.hpp"
#include "cpnb/reductions.hpp"
#include "cpnb/solvers.hpp"
#include "cpnb/subsets.hpp"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitOracleLimit = 4;

using cpnb::Json;

cpnb::Profile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cpnb::ParseError("cannot open '" + path + "'");
  Json doc = Json::parse(in);
  cpnb::Profile profile = cpnb::parse_profile(doc);
  cpnb::ValidationReport rep = cpnb::validate(profile);
  for (const auto& v : rep.violations)
    if (v.warning)
      std::cerr << "warning: " << (v.voter.empty() ? "" : v.voter + ": ")
                << (v.issue.empty() ? "" : v.issue + ": ") << v.what << "\n";
  if (!rep.ok()) {
    std::string msg = "invalid profile:";
    for (const auto& v : rep.violations)
      if (!v.warning)
        msg += "\n  " + (v.voter.empty() ? "" : v.voter + ": ") +
               (v.issue.empty() ? "" : v.issue + ": ") + v.what;
    throw cpnb::ParseError(msg);
  }
  return profile;
}

const std::map<std::string, cpnb::Rule> kRules = {{"sm", cpnb::Rule::SM},
                                                  {"op", cpnb::Rule::OP},
                                                  {"ov", cpnb::Rule::OV},
                                                  {"okstar", cpnb::Rule::OKSTAR}};
const std::map<std::string, cpnb::BriberyAction> kActions = {
    {"iv", cpnb::BriberyAction::IV},
    {"dv", cpnb::BriberyAction::DV},
    {"ivdv", cpnb::BriberyAction::IV_DV}};
const std::map<std::string, cpnb::CostScheme> kSchemes = {{"equal", cpnb::CostScheme::EQUAL},
                                                          {"flip", cpnb::CostScheme::FLIP},
                                                          {"level", cpnb::CostScheme::LEVEL},
                                                          {"any", cpnb::CostScheme::ANY},
                                                          {"dist", cpnb::CostScheme::DIST}};
const std::map<std::string, cpnb::SolveMethod> kMethods = {{"auto", cpnb::SolveMethod::AUTO},
                                                           {"flow", cpnb::SolveMethod::FLOW},
                                                           {"greedy", cpnb::SolveMethod::GREEDY},
                                                           {"dp", cpnb::SolveMethod::DP},
                                                           {"oracle", cpnb::SolveMethod::ORACLE}};

Json masked_candidate(const cpnb::Profile& profile, cpnb::Bits bits, cpnb::Bits kept) {
  std::string labels, raw;
  for (std::size_t j = 0; j < profile.num_issues(); ++j) {
    bool keep = (kept >> j) & 1u;
    if (j) labels += ',';
    labels += keep ? profile.issues[j].values[(bits >> j) & 1u] : "*";
    raw += keep ? static_cast<char>('0' + ((bits >> j) & 1u)) : '*';
  }
  return Json{{"labels", labels}, {"bits", raw}};
}

Json winners_document(const cpnb::Profile& profile, cpnb::Rule rule, cpnb::Rank k,
                      int tie_winner) {
  Json out;
  for (const auto& [name, r] : kRules)
    if (r == rule) out["rule"] = name;
  cpnb::WinnerSet ws = cpnb::co_winners(profile, rule, k, tie_winner);
  out["complement"] = ws.complement;
  Json members = Json::array();
  for (cpnb::Bits c : ws.members) members.push_back(masked_candidate(profile, c, ws.kept_mask));
  out["winners"] = std::move(members);
  if (rule != cpnb::Rule::SM) {
    cpnb::Tally tally = cpnb::score_tally(profile, rule, k);
    Json scores = Json::array();
    for (const auto& [c, w] : tally.score) {
      Json entry = masked_candidate(profile, c, tally.kept_mask);
      entry["score"] = w;
      scores.push_back(std::move(entry));
    }
    out["tally"] = std::move(scores);
  }
  return out;
}

Json flips_document(const cpnb::Profile& profile, const std::vector<cpnb::StatementFlip>& flips) {
  Json out = Json::array();
  for (const auto& f : flips) {
    const cpnb::Voter& voter = profile.voters[f.voter];
    Json entry;
    entry["voter"] = voter.name.empty() ? std::to_string(f.voter) : voter.name;
    entry["issue"] = profile.issues[f.issue].name;
    Json ctx = Json::object();
    for (std::size_t b = 0; b < voter.net.parents[f.issue].size(); ++b) {
      const cpnb::Issue& par = profile.issues[voter.net.parents[f.issue][b]];
      ctx[par.name] = par.values[(f.ctx >> b) & 1u];
    }
    entry["ctx"] = std::move(ctx);
    entry["new_pref"] = profile.issues[f.issue].values[f.new_pref];
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<long long> parse_csv(const std::string& text, const char* what) {
  if (text.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": bad number '" + item + "'");
    }
  }
  return out;
}

struct BribeFlags {
  std::string file;
  std::string rule = "op";
  long long k = 1;
  std::string action = "ivdv";
  std::string scheme = "flip";
  long long budget = 0;
  std::string preferred;
  bool negative = false;
  std::string method = "auto";
  int tie = cpnb::kDefaultTieWinner;
  bool verify = false;
};

void add_bribe_flags(CLI::App* cmd, BribeFlags& f, bool with_method) {
  cmd->add_option("file", f.file, "profile document")->required();
  cmd->add_option("--rule", f.rule)->check(CLI::IsMember({"sm", "op", "ov", "okstar"}));
  cmd->add_option("--k", f.k, "approval count for okstar");
  cmd->add_option("--action", f.action)->check(CLI::IsMember({"iv", "dv", "ivdv"}));
  cmd->add_option("--scheme", f.scheme)
      ->check(CLI::IsMember({"equal", "flip", "level", "any", "dist"}));
  cmd->add_option("--budget", f.budget)->required();
  cmd->add_option("--preferred", f.preferred, "labels or bit string")->required();
  cmd->add_flag("--negative", f.negative, "forbid bribing anyone onto p");
  if (with_method)
    cmd->add_option("--method", f.method)
        ->check(CLI::IsMember({"auto", "flow", "greedy", "dp", "oracle"}));
  cmd->add_option("--tie", f.tie, "majority tie winner")->check(CLI::IsMember({0, 1}));
  cmd->add_flag("--verify", f.verify, "recheck flips and cost after solving");
}

int run_bribe(const BribeFlags& f, bool force_oracle) {
  cpnb::Profile profile = load_profile(f.file);
  cpnb::BriberyQuery query;
  query.rule = kRules.at(f.rule);
  query.k = static_cast<cpnb::Rank>(f.k);
  query.action = kActions.at(f.action);
  query.scheme = kSchemes.at(f.scheme);
  query.budget = f.budget;
  query.preferred = cpnb::parse_candidate(profile, f.preferred);
  query.negative = f.negative;
  query.method = force_oracle ? cpnb::SolveMethod::ORACLE : kMethods.at(f.method);
  query.tie_winner = f.tie;
  if (query.scheme == cpnb::CostScheme::ANY)
    for (const auto& voter : profile.voters)
      if (!voter.flip_costs)
        throw CLI::ValidationError("--scheme any requires flipcost tables for every voter");

  cpnb::BriberySolution sol = cpnb::solve(profile, query);

  Json out;
  out["feasible"] = sol.feasible;
  if (sol.cost)
    out["cost"] = *sol.cost;
  else
    out["cost"] = nullptr;
  out["flips"] = flips_document(profile, sol.flips);
  if (sol.feasible) {
    cpnb::Profile bribed = cpnb::apply_bribery(profile, sol.flips);
    out["winners_after"] = winners_document(bribed, query.rule, query.k, query.tie_winner);
    if (f.verify) {
      if (!sol.flips.empty() &&
          cpnb::solution_cost(profile, sol.flips, query.scheme, query.rule) != *sol.cost)
        throw std::logic_error("verify: recomputed cost differs");
      cpnb::Profile again = cpnb::apply_bribery(profile, sol.flips);
      if (winners_document(again, query.rule, query.k, query.tie_winner) != out["winners_after"])
        throw std::logic_error("verify: winners after re-application differ");
      if (!cpnb::co_winners(again, query.rule, query.k, query.tie_winner)
               .contains(query.preferred))
        throw std::logic_error("verify: preferred candidate does not win");
      out["verified"] = true;
    }
  }
  std::cout << out.dump(2) << "\n";
  return sol.feasible ? kExitFeasible : kExitInfeasible;
}

int run_winners(const std::string& file, const std::string& rule, long long k, int tie) {
  cpnb::Profile profile = load_profile(file);
  Json out = winners_document(profile, kRules.at(rule), static_cast<cpnb::Rank>(k), tie);
  std::cout << out.dump(2) << "\n";
  return kExitFeasible;
}

int run_ksubsets(const std::string& sizes_csv, long long k) {
  cpnb::SizedGround ground{parse_csv(sizes_csv, "--sizes")};
  if (k < 1) throw CLI::ValidationError("--k must be >= 1");
  auto subsets = cpnb::k_smallest_subsets(ground, static_cast<std::uint64_t>(k));
  Json out;
  out["subsets"] = Json::array();
  for (const auto& s : subsets) {
    Json members = Json::array();
    for (std::size_t i = 0; i < ground.sizes.size(); ++i)
      if (s.mask & (std::uint64_t{1} << i)) members.push_back(i);
    out["subsets"].push_back({{"members", std::move(members)}, {"size", s.size}});
  }
  std::cout << out.dump(2) << "\n";
  return kExitFeasible;
}

std::vector<std::vector<int>> parse_matrix(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<int> bits;
    for (long long v : parse_csv(row, "--matrix")) bits.push_back(static_cast<int>(v));
    rows.push_back(std::move(bits));
  }
  if (rows.empty()) throw CLI::ValidationError("--matrix: empty matrix");
  return rows;
}

int run_gen(const std::string& reduction, const std::string& partition_csv,
            const std::string& matrix, long long k, const std::string& x_csv) {
  if (reduction == "nol") {
    cpnb::LobbyingInstance ol;
    ol.E = parse_matrix(matrix);
    ol.k = static_cast<std::size_t>(k);
    for (long long v : parse_csv(x_csv, "--x")) ol.x.push_back(static_cast<int>(v));
    cpnb::LobbyingInstance nol = cpnb::nol_from_ol(ol);
    Json out;
    out["E"] = nol.E;
    out["k"] = nol.k;
    out["x"] = nol.x;
    out["negative"] = nol.negative;
    std::cout << out.dump(2) << "\n";
    return kExitFeasible;
  }
  const std::map<std::string, cpnb::ReductionVariant> variants = {
      {"op", cpnb::ReductionVariant::OP_POS},
      {"ov", cpnb::ReductionVariant::OV_DV_POS},
      {"ov-neg", cpnb::ReductionVariant::OV_NEG},
      {"sm-neg", cpnb::ReductionVariant::SM_NEG}};
  cpnb::PartitionInstance inst{parse_csv(partition_csv, "--partition")};
  cpnb::ReducedInstance red = cpnb::weighted_bribery_from_partition(inst, variants.at(reduction));
  std::cout << cpnb::profile_to_json(red.profile).dump(2) << "\n";
  std::string rule, action, scheme;
  for (const auto& [name, r] : kRules)
    if (r == red.query.rule) rule = name;
  for (const auto& [name, a] : kActions)
    if (a == red.query.action) action = name;
  for (const auto& [name, s] : kSchemes)
    if (s == red.query.scheme) scheme = name;
  std::cerr << "suggested: bribe --rule " << rule << " --action " << action << " --scheme "
            << scheme << " --preferred " << cpnb::candidate_bits(red.profile, red.query.preferred)
            << " --budget " << red.query.budget << (red.query.negative ? " --negative" : "")
            << "\n";
  return kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact bribery solver for elections over acyclic binary CP-nets"};
  app.require_subcommand(1);

  std::string w_file, w_rule = "op";
  long long w_k = 1;
  int w_tie = cpnb::kDefaultTieWinner;
  CLI::App* winners = app.add_subcommand("winners", "co-winner determination");
  winners->add_option("file", w_file, "profile document")->required();
  winners->add_option("--rule", w_rule)->check(CLI::IsMember({"sm", "op", "ov", "okstar"}));
  winners->add_option("--k", w_k, "approval count for okstar");
  winners->add_option("--tie", w_tie, "majority tie winner")->check(CLI::IsMember({0, 1}));

  BribeFlags bf;
  CLI::App* bribe = app.add_subcommand("bribe", "minimum-cost bribery");
  add_bribe_flags(bribe, bf, true);

  BribeFlags of;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive bribery solve");
  add_bribe_flags(oracle, of, false);

  std::string s_sizes;
  long long s_k = 1;
  CLI::App* ksubsets = app.add_subcommand("ksubsets", "k smallest subsets of a sized ground set");
  ksubsets->add_option("--sizes", s_sizes, "comma-separated element sizes")->required();
  ksubsets->add_option("--k", s_k, "number of subsets")->required();

  std::string g_reduction, g_partition, g_matrix, g_x;
  long long g_k = 0;
  CLI::App* gen = app.add_subcommand("gen", "hardness-reduction instance generator");
  gen->add_option("--reduction", g_reduction)
      ->required()
      ->check(CLI::IsMember({"op", "ov", "ov-neg", "sm-neg", "nol"}));
  gen->add_option("--partition", g_partition, "comma-separated element weights");
  gen->add_option("--matrix", g_matrix, "semicolon-separated 0/1 rows");
  gen->add_option("--k", g_k, "rows to edit (nol)");
  gen->add_option("--x", g_x, "target column values (nol)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (winners->parsed()) return run_winners(w_file, w_rule, w_k, w_tie);
    if (bribe->parsed()) return run_bribe(bf, false);
    if (oracle->parsed()) return run_bribe(of, true);
    if (ksubsets->parsed()) return run_ksubsets(s_sizes, s_k);
    return run_gen(g_reduction, g_partition, g_matrix, g_k, g_x);
  } catch (const cpnb::OracleLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOracleLimit;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cpnb::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
