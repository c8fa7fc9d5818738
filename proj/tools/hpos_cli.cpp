// Copyright 2026 The hpos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hpos: command-line front end. Reports go to stdout as JSON, diagnostics to
// stderr. Exit codes: 0 yes/success, 1 no, 2 error, 3 budget or search exhausted.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "hpos/fixtures.hpp"
#include "hpos/hpos.hpp"
#include "hpos/report.hpp"

namespace {

using hpos::report::json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;
constexpr int kExhausted = 3;

// Thrown to leave a command with a message and a specific exit code.
struct Exit {
  int code;
  std::string message;
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

hpos::Dba load_dba(const std::string& path) {
  try {
    return hpos::parse_dba(hpos::read_file(path));
  } catch (const hpos::InputError& e) {
    throw hpos::InputError(path + ": " + e.what());
  }
}

hpos::Arena load_arena(const std::string& path) {
  try {
    return hpos::parse_arena(hpos::read_file(path));
  } catch (const hpos::InputError& e) {
    throw hpos::InputError(path + ": " + e.what());
  }
}

hpos::Graph load_graph(const std::string& path) {
  try {
    return hpos::parse_graph(hpos::read_file(path));
  } catch (const hpos::InputError& e) {
    throw hpos::InputError(path + ": " + e.what());
  }
}

/// Runs the decider and reports contract failures with the stage they came from.
hpos::Verdict run_decide(const hpos::Dba& dba, bool fast_fail = false) {
  try {
    return hpos::decide(dba, {fast_fail});
  } catch (const hpos::ContractError& e) {
    throw hpos::ContractError(std::string("decide: ") + e.what());
  }
}

/// Normalized automaton of a YES instance, for the universal-graph commands.
hpos::Dba normalized_or_exit(const hpos::Dba& dba) {
  const hpos::Verdict v = run_decide(dba);
  if (!v.half_positional)
    throw Exit{kNo, std::string("objective is not half-positional (failed: ") + to_string(*v.failed) + ")"};
  return *v.normalized;
}

std::string describe_stage(const hpos::Verdict& v) {
  if (v.half_positional) return "all three conditions hold";
  switch (*v.failed) {
    case hpos::Condition::total_preorder:
      return "the prefix preorder is not total";
    case hpos::Condition::classifier_recognizability:
      return "the prefix classifier does not recognize the objective";
    case hpos::Condition::progress_consistency:
      return "the objective is not progress-consistent";
  }
  return "";
}

int cmd_decide(const std::string& path, bool fast_fail) {
  const hpos::Dba dba = load_dba(path);
  const hpos::Verdict v = run_decide(dba, fast_fail);
  emit(hpos::report::decide_report(path, dba, v));
  return v.half_positional ? kYes : kNo;
}

int cmd_explain(const std::string& path) {
  const hpos::Dba dba = load_dba(path);
  const hpos::Verdict v = run_decide(dba);
  json j = hpos::report::decide_report(path, dba, v);
  j["command"] = "explain";
  j["saturated"] = hpos::format_dba(v.saturated);
  json classes = json::array();
  // Least to greatest when the preorder is total, by index otherwise.
  for (std::size_t r = 0; r < v.order.num_classes; ++r) {
    const std::size_t cls = v.order.total() ? (*v.order.class_order)[r] : r;
    json members = json::array();
    for (hpos::StateId q : v.order.class_members[cls]) members.push_back(v.saturated.state_name(q));
    classes.push_back(members);
  }
  j["classes"] = classes;
  j["total_preorder"] = v.order.total();
  j["summary"] = describe_stage(v);
  emit(j);
  return v.half_positional ? kYes : kNo;
}

int cmd_saturate(const std::string& path, const std::string& out) {
  const hpos::Dba dba = load_dba(path);
  const hpos::Dba sat = hpos::saturate(dba);
  if (!out.empty()) hpos::write_file(out, hpos::format_dba(sat));
  json j = hpos::report::header("saturate", path);
  j["automaton"] = hpos::format_dba(dba);
  j["saturated"] = hpos::format_dba(sat);
  emit(j);
  return kYes;
}

int cmd_classifier(const std::string& path) {
  const hpos::Dba dba = load_dba(path);
  const auto rec = hpos::recognizable_by_classifier(dba);
  json j = hpos::report::header("classifier", path);
  j["automaton"] = hpos::format_dba(dba);
  j["candidate"] = hpos::format_dba(rec.candidate);
  j["recognizable"] = rec.recognizable;
  if (rec.witness) j["witness"] = hpos::format_lasso(dba.alphabet(), *rec.witness);
  emit(j);
  return rec.recognizable ? kYes : kNo;
}

int cmd_counterexample(const std::string& path, const std::string& out, const hpos::SearchOptions& opt) {
  const hpos::Dba dba = load_dba(path);
  const hpos::Verdict v = run_decide(dba);
  if (v.half_positional) throw Exit{kNo, "objective is half-positional; no counterexample arena exists"};
  const auto res = hpos::counterexample_arena(v, opt);
  json j = hpos::report::header("counterexample", path);
  j["automaton"] = hpos::format_dba(dba);
  j["verdict"] = hpos::report::verdict_json(v);
  j["counterexample"] = hpos::report::counterexample_json(res);
  emit(j);
  if (!res.arena) {
    std::cerr << "hpos: " << res.diagnostic << '\n';
    return kExhausted;
  }
  if (!out.empty()) hpos::write_file(out, hpos::format_arena(res.arena->arena));
  return kYes;
}

int cmd_solve_game(const std::string& arena_path, const std::string& dba_path, const std::vector<std::string>& starts,
                   std::uint64_t budget) {
  const hpos::Dba dba = load_dba(dba_path);
  const hpos::Arena arena = load_arena(arena_path);
  const auto region = hpos::winning_region(arena, dba);
  json j = hpos::report::header("solve-game", arena_path);
  j["automaton"] = hpos::format_dba(dba);
  j["arena"] = hpos::format_arena(arena);
  j["region"] = hpos::report::region_json(arena, region);
  json start = json::object();
  for (const auto& s : starts) {
    const auto v = arena.find_vertex(s);
    if (!v) throw hpos::InputError("unknown start vertex '" + s + "'");
    start[s] = static_cast<bool>(region[*v]);
  }
  j["start"] = start;
  int code = kYes;
  try {
    const auto sigma = hpos::exists_positional_optimal(arena, dba, budget);
    j["positional_optimal"] = sigma ? hpos::report::strategy_json(arena, *sigma) : json(nullptr);
  } catch (const hpos::ResourceError& e) {
    j["positional_optimal"] = "budget_exceeded";
    std::cerr << "hpos: " << e.what() << '\n';
    code = kExhausted;
  }
  emit(j);
  return code;
}

int cmd_universal_graph(const std::string& path, std::size_t theta, const std::string& dot, const std::string& out) {
  const hpos::Dba norm = normalized_or_exit(load_dba(path));
  const hpos::PrefixOrder order = hpos::compute_prefix_order(norm);
  const hpos::MonotoneGraph g = hpos::build_universal_graph(norm, order, theta);
  json j = hpos::report::header("universal-graph", path);
  j["normalized"] = hpos::format_dba(norm);
  j["theta"] = theta;
  j["vertices"] = g.num_vertices();
  j["edges"] = g.edges().size();
  j["completely_well_monotonic"] = hpos::check_completely_well_monotonic(g);
  if (!dot.empty()) hpos::write_file(dot, hpos::universal_graph_dot(g));
  if (!out.empty()) hpos::write_file(out, hpos::format_universal_graph(g));
  emit(j);
  return kYes;
}

int cmd_morphism(const std::string& path, const std::string& graph_path, std::size_t theta) {
  const hpos::Dba norm = normalized_or_exit(load_dba(path));
  const hpos::Graph source = load_graph(graph_path);
  const hpos::PrefixOrder order = hpos::compute_prefix_order(norm);
  const auto r = hpos::compute_morphism(source, norm, order, theta ? std::optional<std::size_t>(theta) : std::nullopt);
  const hpos::MonotoneGraph g = hpos::build_universal_graph(norm, order, r.theta);
  json j = hpos::report::header("morphism", path);
  j["normalized"] = hpos::format_dba(norm);
  j["graph"] = hpos::format_graph(source);
  j["morphism"] = hpos::report::morphism_json(source, g, r);
  emit(j);
  return r.morphism ? kYes : kNo;
}

int cmd_check(const std::string& path) {
  json j;
  try {
    j = json::parse(hpos::read_file(path));
  } catch (const json::exception& e) {
    throw hpos::InputError(path + ": " + e.what());
  }
  const auto out = hpos::report::check_report(j);
  for (const auto& m : out.messages) std::cout << m << '\n';
  return out.ok ? kYes : kNo;
}

int write_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : hpos::fixtures::all_files()) hpos::write_file(dir + "/" + f.filename, f.content);
  const hpos::Dba norm = hpos::fixtures::aa_or_buchi_a_saturated();
  const hpos::MonotoneGraph g = hpos::build_universal_graph(norm, hpos::compute_prefix_order(norm), 3);
  hpos::write_file(dir + "/aa_or_buchi_a.universal3.graph", hpos::format_universal_graph(g));
  hpos::write_file(dir + "/aa_or_buchi_a.universal3.dot", hpos::universal_graph_dot(g));
  std::cerr << "hpos: wrote " << hpos::fixtures::all_files().size() + 2 << " files to " << dir << '\n';
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-positionality of objectives given by deterministic Büchi automata"};
  app.require_subcommand(0, 1);

  std::string fixtures_dir;
  app.add_option("--fixtures", fixtures_dir, "Write the bundled example automata, arenas and graphs to a directory");

  std::string input, second, out, dot;
  std::vector<std::string> starts;
  bool fast_fail = false;
  std::size_t theta = 0;
  std::uint64_t budget = hpos::kDefaultStrategyBudget;
  hpos::SearchOptions search;

  auto* decide = app.add_subcommand("decide", "Decide half-positionality");
  decide->add_option("automaton", input, "Automaton file")->required();
  decide->add_flag("--fast-fail", fast_fail, "Stop the preorder at the first incomparable pair");

  auto* explain = app.add_subcommand("explain", "Decide and report every intermediate structure");
  explain->add_option("automaton", input, "Automaton file")->required();

  auto* saturate = app.add_subcommand("saturate", "Saturate the acceptance set");
  saturate->add_option("automaton", input, "Automaton file")->required();
  saturate->add_option("-o,--output", out, "Write the saturated automaton here");

  auto* classifier = app.add_subcommand("classifier", "Check recognizability by the prefix classifier");
  classifier->add_option("automaton", input, "Automaton file")->required();

  auto* counter = app.add_subcommand("counterexample", "Arena on which P1 cannot play optimally without memory");
  counter->add_option("automaton", input, "Automaton file")->required();
  counter->add_option("-o,--output", out, "Write the arena here");
  counter->add_option("--max-candidates", search.max_candidates, "Search budget for the classifier case");

  auto* solve = app.add_subcommand("solve-game", "Winning region and positional optimality on an arena");
  solve->add_option("--arena", second, "Arena file")->required();
  solve->add_option("--automaton", input, "Automaton file")->required();
  solve->add_option("--start", starts, "Vertices to report on");
  solve->add_option("--budget", budget, "Positional strategies to enumerate at most");

  auto* ug = app.add_subcommand("universal-graph", "Well-monotonic universal graph of a half-positional objective");
  ug->add_option("automaton", input, "Automaton file")->required();
  ug->add_option("--theta", theta, "Levels per state")->required()->check(CLI::PositiveNumber);
  ug->add_option("--dot", dot, "Write a DOT rendering here");
  ug->add_option("-o,--output", out, "Write the edge list here");

  auto* morph = app.add_subcommand("morphism", "Map a graph into the universal graph");
  morph->add_option("automaton", input, "Automaton file")->required();
  morph->add_option("graph", second, "Graph file")->required();
  morph->add_option("--theta", theta, "Levels per state (default |Q|(|V|+1))");

  auto* check = app.add_subcommand("check", "Re-validate the witnesses of a report");
  check->add_option("report", input, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kYes : kError;
  }

  try {
    if (!fixtures_dir.empty()) {
      write_fixtures(fixtures_dir);
      if (app.get_subcommands().empty()) return kYes;
    }
    if (*decide) return cmd_decide(input, fast_fail);
    if (*explain) return cmd_explain(input);
    if (*saturate) return cmd_saturate(input, out);
    if (*classifier) return cmd_classifier(input);
    if (*counter) return cmd_counterexample(input, out, search);
    if (*solve) return cmd_solve_game(second, input, starts, budget);
    if (*ug) return cmd_universal_graph(input, theta, dot, out);
    if (*morph) return cmd_morphism(input, second, theta);
    if (*check) return cmd_check(input);
    std::cerr << app.help();
    return kError;
  } catch (const Exit& e) {
    std::cerr << "hpos: " << e.message << '\n';
    return e.code;
  } catch (const hpos::ResourceError& e) {
    std::cerr << "hpos: budget exceeded: " << e.what() << '\n';
    return kExhausted;
  } catch (const hpos::InputError& e) {
    std::cerr << "hpos: error: " << e.what() << '\n';
    return kError;
  } catch (const hpos::ContractError& e) {
    std::cerr << "hpos: contract violated: " << e.what() << '\n';
    return kError;
  } catch (const hpos::InvariantError& e) {
    std::cerr << "hpos: internal error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "hpos: error: " << e.what() << '\n';
    return kError;
  }
}
