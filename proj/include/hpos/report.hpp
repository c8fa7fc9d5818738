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

#pragma once

// JSON reports for the command-line tool, and their independent re-validation.

#include <json.hpp>

#include <string>
#include <vector>

#include "hpos/decider.hpp"
#include "hpos/io.hpp"
#include "hpos/universal_graph.hpp"

namespace hpos::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json header(const std::string& command, const std::string& input) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["input"] = input;
  return j;
}

inline json timings(const std::vector<StageTiming>& t) {
  json j = json::object();
  for (const auto& s : t) j[s.stage] = s.ms;
  return j;
}

inline json evidence(const Verdict& v) {
  const Alphabet& al = v.saturated.alphabet();
  return std::visit(
      [&](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {{"kind", "none"}};
        } else if constexpr (std::is_same_v<T, IncomparablePair>) {
          return {{"kind", "incomparable_pair"},
                  {"q", v.saturated.state_name(e.q)},
                  {"q2", v.saturated.state_name(e.q2)},
                  {"only_q", format_lasso(al, e.only_q)},
                  {"only_q2", format_lasso(al, e.only_q2)}};
        } else if constexpr (std::is_same_v<T, ClassifierMismatch>) {
          return {{"kind", "classifier_mismatch"},
                  {"lasso", format_lasso(al, e.lasso)},
                  {"candidate", format_dba(e.candidate)}};
        } else if constexpr (std::is_same_v<T, ProgressWitness>) {
          return {{"kind", "progress"},
                  {"q", v.normalized->state_name(e.q)},
                  {"q_prime", v.normalized->state_name(e.q_prime)},
                  {"w1", format_word(al, e.w1)},
                  {"w", format_word(al, e.w)},
                  {"rejected", format_lasso(al, e.rejected_lasso())}};
        } else {
          json colors = json::array();
          for (Color c : e.colors) colors.push_back(al.symbol(c));
          return {{"kind", "buchi_form"}, {"colors", colors}};
        }
      },
      v.evidence);
}

inline json verdict_json(const Verdict& v) {
  json j;
  j["half_positional"] = v.half_positional;
  j["failed"] = v.failed ? json(to_string(*v.failed)) : json(nullptr);
  j["evidence"] = evidence(v);
  return j;
}

inline json decide_report(const std::string& input, const Dba& dba, const Verdict& v) {
  json j = header("decide", input);
  j["automaton"] = format_dba(dba);
  j["verdict"] = verdict_json(v);
  j["timings_ms"] = timings(v.timings);
  return j;
}

inline json counterexample_json(const CounterexampleResult& r) {
  json j;
  j["found"] = r.arena.has_value();
  j["candidates"] = r.candidates;
  if (r.arena) {
    j["construction"] = to_string(r.arena->tag);
    j["initial"] = r.arena->arena.name(r.arena->initial);
    j["arena"] = format_arena(r.arena->arena);
    j["oracle_confirmed"] = true;
  } else {
    j["diagnostic"] = r.diagnostic;
  }
  return j;
}

inline json region_json(const Arena& arena, const std::vector<bool>& region) {
  json j = json::array();
  for (VertexId v = 0; v < arena.num_vertices(); ++v)
    if (region[v]) j.push_back(arena.name(v));
  return j;
}

inline json strategy_json(const Arena& arena, const PositionalStrategy& s) {
  json j = json::object();
  for (VertexId v = 0; v < arena.num_vertices(); ++v) {
    if (arena.owner(v) != Player::P1) continue;
    const auto& e = arena.edges()[s.choice[v]];
    j[arena.name(v)] = {arena.alphabet().symbol(e.color), arena.name(e.dst)};
  }
  return j;
}

/// Inverse of strategy_json.
inline PositionalStrategy parse_strategy(const Arena& arena, const json& j) {
  PositionalStrategy s{std::vector<std::uint32_t>(arena.num_vertices(), UINT32_MAX)};
  for (VertexId v = 0; v < arena.num_vertices(); ++v) {
    if (arena.owner(v) != Player::P1) continue;
    if (!j.contains(arena.name(v))) throw InputError("strategy misses vertex '" + arena.name(v) + "'");
    const auto& choice = j.at(arena.name(v));
    const Color c = arena.alphabet().index_of(choice.at(0).get<std::string>());
    const auto dst = arena.find_vertex(choice.at(1).get<std::string>());
    if (!dst) throw InputError("strategy names an unknown vertex");
    for (std::size_t i = arena.first_edge(v); i < arena.end_edge(v); ++i)
      if (arena.edges()[i].color == c && arena.edges()[i].dst == *dst) s.choice[v] = static_cast<std::uint32_t>(i);
    if (s.choice[v] == UINT32_MAX) throw InputError("strategy picks a missing edge at '" + arena.name(v) + "'");
  }
  return s;
}

inline json morphism_json(const Graph& source, const MonotoneGraph& g, const MorphismResult& r) {
  json j;
  j["theta"] = r.theta;
  j["stabilization"] = r.stabilization;
  j["found"] = r.morphism.has_value();
  if (r.morphism) {
    json map = json::object();
    for (VertexId v = 0; v < source.num_vertices(); ++v) map[source.name(v)] = g.name(r.morphism->map[v]);
    j["map"] = map;
  } else {
    j["diagnostic"] = r.diagnostic;
  }
  return j;
}

struct CheckOutcome {
  bool ok = true;
  std::vector<std::string> messages;

  void expect(bool cond, const std::string& what) {
    messages.push_back(std::string(cond ? "ok: " : "FAILED: ") + what);
    ok = ok && cond;
  }
};

namespace detail {

inline StateId state_named(const Dba& dba, const std::string& name) {
  if (auto q = dba.find_state(name)) return *q;
  throw InputError("report names unknown state '" + name + "'");
}

/// res(p) strictly included in res(p2).
inline bool strictly_below(const Dba& dba, StateId p, StateId p2) {
  return dba_included(residual(dba, p), residual(dba, p2)).holds &&
         !dba_included(residual(dba, p2), residual(dba, p)).holds;
}

inline void check_verdict(const Dba& dba, const json& verdict, CheckOutcome& out) {
  const Alphabet& al = dba.alphabet();
  const auto& ev = verdict.at("evidence");
  const std::string kind = ev.at("kind");
  const bool yes = verdict.at("half_positional").get<bool>();
  if (kind == "incomparable_pair") {
    const StateId q = state_named(dba, ev.at("q")), q2 = state_named(dba, ev.at("q2"));
    const Lasso l1 = parse_lasso(al, ev.at("only_q").get<std::string>());
    const Lasso l2 = parse_lasso(al, ev.at("only_q2").get<std::string>());
    out.expect(accepts(dba, q, l1) && !accepts(dba, q2, l1), "only_q is accepted from q and rejected from q2");
    out.expect(accepts(dba, q2, l2) && !accepts(dba, q, l2), "only_q2 is accepted from q2 and rejected from q");
  } else if (kind == "classifier_mismatch") {
    const Lasso l = parse_lasso(al, ev.at("lasso").get<std::string>());
    const Dba cand = parse_dba(ev.at("candidate").get<std::string>());
    out.expect(accepts(dba, l), "lasso is in W");
    out.expect(!accepts(cand, l), "lasso is rejected by the classifier candidate");
    out.expect(dba_included(cand, dba).holds, "candidate language is contained in W");
  } else if (kind == "progress") {
    const Word w1 = parse_word(al, ev.at("w1").get<std::string>());
    const Word w = parse_word(al, ev.at("w").get<std::string>());
    out.expect(!w.empty(), "progress word is non-empty");
    if (!w.empty()) {
      const StateId p = run_state(dba, dba.init(), w1), p2 = run_state(dba, p, w);
      out.expect(strictly_below(dba, p, p2), "w1 is strictly below w1.w in the prefix order");
      out.expect(!accepts(dba, Lasso{w1, w}), "w1.w^omega is rejected");
    }
  } else if (kind == "buchi_form") {
    std::vector<Color> f;
    for (const auto& s : ev.at("colors")) f.push_back(al.index_of(s.get<std::string>()));
    out.expect(dba_equivalent(dba, buchi_of_colors(al, f)).equivalent, "W equals Büchi(F)");
  }
  const Verdict again = decide(dba);
  out.expect(again.half_positional == yes, "recomputed verdict agrees");
}

}  // namespace detail

/// Re-validates the witnesses of a report produced by the command-line tool.
inline CheckOutcome check_report(const json& j) {
  CheckOutcome out;
  const std::string command = j.at("command");
  if (command == "decide" || command == "explain") {
    const Dba dba = parse_dba(j.at("automaton").get<std::string>());
    detail::check_verdict(dba, j.at("verdict"), out);
  } else if (command == "counterexample") {
    const Dba dba = parse_dba(j.at("automaton").get<std::string>());
    detail::check_verdict(dba, j.at("verdict"), out);
    const auto& ce = j.at("counterexample");
    if (ce.at("found").get<bool>()) {
      const Arena arena = parse_arena(ce.at("arena").get<std::string>());
      const auto init = arena.find_vertex(ce.at("initial").get<std::string>());
      out.expect(init.has_value(), "initial vertex exists");
      if (init) out.expect(certify_counterexample(arena, *init, dba), "P1 wins from the initial vertex without a positional optimal strategy");
    }
  } else if (command == "saturate") {
    const Dba dba = parse_dba(j.at("automaton").get<std::string>());
    const Dba sat = parse_dba(j.at("saturated").get<std::string>());
    out.expect(is_saturated(sat), "output is saturated");
    out.expect(dba_equivalent(dba, sat).equivalent, "output recognizes the same language");
  } else if (command == "classifier") {
    const Dba dba = parse_dba(j.at("automaton").get<std::string>());
    const Dba cand = parse_dba(j.at("candidate").get<std::string>());
    const bool rec = j.at("recognizable").get<bool>();
    const auto eq = dba_equivalent(dba, cand);
    out.expect(eq.equivalent == rec, "recognizability claim agrees with an equivalence check");
    if (j.contains("witness")) {
      const Lasso l = parse_lasso(dba.alphabet(), j.at("witness").get<std::string>());
      out.expect(accepts(dba, l) && !accepts(cand, l), "witness is in W and rejected by the candidate");
    }
  } else if (command == "solve-game") {
    const Dba dba = parse_dba(j.at("automaton").get<std::string>());
    const Arena arena = parse_arena(j.at("arena").get<std::string>());
    const auto region = winning_region(arena, dba);
    out.expect(region_json(arena, region) == j.at("region"), "winning region agrees");
    const auto& pos = j.at("positional_optimal");
    if (pos.is_object()) {
      out.expect(strategy_wins_from(arena, dba, parse_strategy(arena, pos)) == region,
                 "reported strategy wins from the whole region");
    } else if (pos.is_null()) {
      out.expect(!exists_positional_optimal(arena, dba).has_value(), "no positional strategy is optimal");
    }
  } else if (command == "morphism") {
    const Dba norm = parse_dba(j.at("normalized").get<std::string>());
    const Graph source = parse_graph(j.at("graph").get<std::string>());
    const auto& m = j.at("morphism");
    if (m.at("found").get<bool>()) {
      const PrefixOrder order = compute_prefix_order(norm);
      const MonotoneGraph g = build_universal_graph(norm, order, m.at("theta").get<std::size_t>());
      std::map<std::string, VertexId> by_name;
      for (VertexId u = 0; u < g.num_vertices(); ++u) by_name[g.name(u)] = u;
      std::vector<VertexId> phi(source.num_vertices());
      bool names_ok = true;
      for (VertexId v = 0; v < source.num_vertices(); ++v) {
        auto it = by_name.find(m.at("map").at(source.name(v)).get<std::string>());
        names_ok = names_ok && it != by_name.end();
        if (it != by_name.end()) phi[v] = it->second;
      }
      out.expect(names_ok, "every image is a universal-graph vertex");
      if (names_ok) {
        const auto cmap = hpos::detail::color_map(source.alphabet(), norm);
        bool edges_ok = true;
        for (const auto& e : source.edges()) edges_ok = edges_ok && g.has_edge(phi[e.src], cmap[e.color], phi[e.dst]);
        out.expect(edges_ok, "every edge is mapped to an edge");
        bool pres = true;
        for (VertexId v = 0; v < source.num_vertices(); ++v)
          if (graph_vertex_satisfies(source, v, norm, norm.init()))
            pres = pres && vertex_satisfies(g, phi[v], norm, norm.init());
        out.expect(pres, "vertices satisfying W map to vertices satisfying W");
      }
    }
  } else if (command == "universal-graph") {
    const Dba norm = parse_dba(j.at("normalized").get<std::string>());
    const PrefixOrder order = compute_prefix_order(norm);
    const MonotoneGraph g = build_universal_graph(norm, order, j.at("theta").get<std::size_t>());
    out.expect(check_completely_well_monotonic(g) == j.at("completely_well_monotonic").get<bool>(),
               "monotonicity claim agrees");
  } else {
    throw InputError("report has unknown command '" + command + "'");
  }
  return out;
}

}  // namespace hpos::report
