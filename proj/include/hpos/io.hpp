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

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hpos/automaton.hpp"
#include "hpos/games.hpp"
#include "hpos/universal_graph.hpp"

namespace hpos {

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

/// Splits into whitespace-separated tokens, dropping `#` comments and blank lines.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++number;
    std::string_view raw = text.substr(pos, eol - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = eol + 1;
  }
  return lines;
}

[[noreturn]] inline void fail(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

inline std::optional<std::size_t> parse_count(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline Alphabet parse_alphabet_line(const Line& line) {
  if (line.tokens.size() < 2) fail(line.number, "alphabet needs at least one symbol");
  try {
    return Alphabet(std::vector<std::string>(line.tokens.begin() + 1, line.tokens.end()));
  } catch (const InputError& e) {
    fail(line.number, e.what());
  }
}

}  // namespace detail

/// Automaton text format:
///
///     alphabet: a b
///     states: 3                 (or a list of state names)
///     init: 0
///     0 a 1 *                   (source color target, `*` marks Büchi)
inline Dba parse_dba(std::string_view text) {
  const auto lines = detail::tokenize(text);
  std::optional<Alphabet> alphabet;
  std::vector<std::string> names;
  bool named = false;
  std::optional<std::size_t> count;
  std::optional<std::pair<std::string, std::size_t>> init;
  std::vector<const detail::Line*> trans;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "alphabet:") {
      if (alphabet) detail::fail(line.number, "duplicate alphabet header");
      alphabet = detail::parse_alphabet_line(line);
    } else if (t[0] == "states:") {
      if (count) detail::fail(line.number, "duplicate states header");
      if (t.size() < 2) detail::fail(line.number, "states needs a count or names");
      if (t.size() == 2 && detail::parse_count(t[1])) {
        count = *detail::parse_count(t[1]);
        if (*count == 0) detail::fail(line.number, "automaton needs at least one state");
      } else {
        names.assign(t.begin() + 1, t.end());
        named = true;
        count = names.size();
      }
    } else if (t[0] == "init:") {
      if (init) detail::fail(line.number, "duplicate init header");
      if (t.size() != 2) detail::fail(line.number, "init takes exactly one state");
      init = {t[1], line.number};
    } else if (t[0].back() == ':') {
      detail::fail(line.number, "unknown header '" + t[0] + "'");
    } else {
      trans.push_back(&line);
    }
  }
  if (!alphabet) throw InputError("missing 'alphabet:' header");
  if (!count) throw InputError("missing 'states:' header");
  if (!init) throw InputError("missing 'init:' header");

  std::map<std::string, StateId> index;
  if (named) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!index.emplace(names[i], static_cast<StateId>(i)).second) throw InputError("duplicate state name '" + names[i] + "'");
  } else {
    for (std::size_t i = 0; i < *count; ++i) index.emplace(std::to_string(i), static_cast<StateId>(i));
  }
  auto state = [&](const std::string& s, std::size_t line) {
    auto it = index.find(s);
    if (it == index.end()) detail::fail(line, "unknown state '" + s + "'");
    return it->second;
  };

  const std::size_t k = alphabet->size();
  std::vector<StateId> delta(*count * k, UINT32_MAX);
  std::vector<bool> buchi(*count * k, false);
  for (const auto* line : trans) {
    const auto& t = line->tokens;
    if (t.size() != 3 && !(t.size() == 4 && t[3] == "*"))
      detail::fail(line->number, "expected 'source color target [*]'");
    const StateId q = state(t[0], line->number);
    const auto c = alphabet->find(t[1]);
    if (!c) detail::fail(line->number, "unknown symbol '" + t[1] + "'");
    auto& slot = delta[q * k + *c];
    if (slot != UINT32_MAX) detail::fail(line->number, "duplicate transition for (" + t[0] + ", " + t[1] + ")");
    slot = state(t[2], line->number);
    buchi[q * k + *c] = t.size() == 4;
  }
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] == UINT32_MAX) {
      const std::string q = named ? names[i / k] : std::to_string(i / k);
      throw InputError("missing transition for (" + q + ", " + alphabet->symbol(static_cast<Color>(i % k)) + ")");
    }
  return Dba(*alphabet, state(init->first, init->second), std::move(delta), std::move(buchi),
             named ? names : std::vector<std::string>{});
}

inline std::string format_dba(const Dba& dba) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& s : dba.alphabet().symbols()) out << ' ' << s;
  out << "\nstates:";
  if (dba.has_names())
    for (const auto& s : dba.state_names()) out << ' ' << s;
  else
    out << ' ' << dba.num_states();
  out << "\ninit: " << dba.state_name(dba.init()) << '\n';
  for (StateId q = 0; q < dba.num_states(); ++q)
    for (Color c = 0; c < dba.num_colors(); ++c) {
      out << dba.state_name(q) << ' ' << dba.alphabet().symbol(c) << ' ' << dba.state_name(dba.next(q, c));
      if (dba.is_buchi(q, c)) out << " *";
      out << '\n';
    }
  return out.str();
}

namespace detail {

struct ParsedGraph {
  Alphabet alphabet;
  std::vector<std::string> names;
  std::vector<Player> owner;
  std::vector<ArenaEdge> edges;
  std::optional<std::string> start_state;
};

inline ParsedGraph parse_graph_text(std::string_view text, bool require_owner) {
  ParsedGraph g;
  bool have_alphabet = false;
  std::map<std::string, VertexId> index;
  std::vector<const Line*> edge_lines;
  const auto lines = tokenize(text);
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "alphabet:") {
      if (have_alphabet) fail(line.number, "duplicate alphabet header");
      g.alphabet = parse_alphabet_line(line);
      have_alphabet = true;
    } else if (t[0] == "start-state:") {
      if (t.size() != 2) fail(line.number, "start-state takes exactly one state");
      if (g.start_state) fail(line.number, "duplicate start-state header");
      g.start_state = t[1];
    } else if (t[0] == "vertex") {
      if (t.size() != 3 && (require_owner || t.size() != 2))
        fail(line.number, require_owner ? "expected 'vertex name P1|P2'" : "expected 'vertex name [P1|P2]'");
      Player p = Player::P1;
      if (t.size() == 3) {
        if (t[2] == "P1") p = Player::P1;
        else if (t[2] == "P2") p = Player::P2;
        else fail(line.number, "owner must be P1 or P2");
      }
      if (!index.emplace(t[1], static_cast<VertexId>(g.names.size())).second)
        fail(line.number, "duplicate vertex '" + t[1] + "'");
      g.names.push_back(t[1]);
      g.owner.push_back(p);
    } else if (t[0] == "edge") {
      edge_lines.push_back(&line);
    } else {
      fail(line.number, "unknown directive '" + t[0] + "'");
    }
  }
  if (!have_alphabet) throw InputError("missing 'alphabet:' header");
  for (const auto* line : edge_lines) {
    const auto& t = line->tokens;
    if (t.size() != 4) fail(line->number, "expected 'edge source color target'");
    auto src = index.find(t[1]), dst = index.find(t[3]);
    if (src == index.end()) fail(line->number, "unknown vertex '" + t[1] + "'");
    if (dst == index.end()) fail(line->number, "unknown vertex '" + t[3] + "'");
    const auto c = g.alphabet.find(t[2]);
    if (!c) fail(line->number, "unknown symbol '" + t[2] + "'");
    g.edges.push_back({src->second, *c, dst->second});
  }
  return g;
}

}  // namespace detail

/// Arena text format:
///
///     alphabet: a b
///     start-state: q          (optional automaton state to start from)
///     vertex v1 P1
///     edge v1 a v3
inline Arena parse_arena(std::string_view text) {
  auto g = detail::parse_graph_text(text, true);
  return Arena(std::move(g.alphabet), std::move(g.names), std::move(g.owner), std::move(g.edges),
               std::move(g.start_state));
}

/// Same grammar as arenas; owners optional and ignored.
inline Graph parse_graph(std::string_view text) {
  auto g = detail::parse_graph_text(text, false);
  if (g.start_state) throw InputError("graphs do not take a start-state");
  return Graph(std::move(g.alphabet), std::move(g.names), std::move(g.edges));
}

inline std::string format_arena(const Arena& arena) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& s : arena.alphabet().symbols()) out << ' ' << s;
  out << '\n';
  if (arena.start_state()) out << "start-state: " << *arena.start_state() << '\n';
  for (VertexId v = 0; v < arena.num_vertices(); ++v)
    out << "vertex " << arena.name(v) << (arena.owner(v) == Player::P1 ? " P1" : " P2") << '\n';
  for (const auto& e : arena.edges())
    out << "edge " << arena.name(e.src) << ' ' << arena.alphabet().symbol(e.color) << ' ' << arena.name(e.dst) << '\n';
  return out.str();
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& s : g.alphabet().symbols()) out << ' ' << s;
  out << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) out << "vertex " << g.name(v) << '\n';
  for (const auto& e : g.edges())
    out << "edge " << g.name(e.src) << ' ' << g.alphabet().symbol(e.color) << ' ' << g.name(e.dst) << '\n';
  return out.str();
}

/// Universal graph as an edge list in the graph format (vertices listed in order).
inline std::string format_universal_graph(const MonotoneGraph& g, std::size_t cap = kDefaultMaterializeCap) {
  const auto edges = g.edges(cap);
  std::ostringstream out;
  out << "# theta " << g.theta() << ", vertices listed from least to greatest\n";
  out << "alphabet:";
  for (const auto& s : g.dba().alphabet().symbols()) out << ' ' << s;
  out << '\n';
  for (std::size_t p = 0; p < g.num_vertices(); ++p) out << "vertex " << g.name(g.at_position(p)) << '\n';
  for (const auto& e : edges)
    out << "edge " << g.name(e.src) << ' ' << g.dba().alphabet().symbol(e.color) << ' ' << g.name(e.dst) << '\n';
  return out.str();
}

/// DOT rendering. Edges between two (q, l) vertices that are not implied by a
/// Büchi transition or a strictly smaller target state are drawn dashed.
inline std::string universal_graph_dot(const MonotoneGraph& g, std::size_t cap = kDefaultMaterializeCap) {
  const auto edges = g.edges(cap);
  std::ostringstream out;
  out << "digraph U {\n  rankdir=LR;\n";
  for (std::size_t p = 0; p < g.num_vertices(); ++p) {
    const VertexId v = g.at_position(p);
    out << "  \"" << g.name(v) << "\";\n";
  }
  const Dba& dba = g.dba();
  for (const auto& e : edges) {
    bool dashed = false;
    if (!g.is_top(e.src)) {
      const StateId q = g.state_of(e.src);
      dashed = !dba.is_buchi(q, e.color) && g.state_of(e.dst) == dba.next(q, e.color);
    }
    out << "  \"" << g.name(e.src) << "\" -> \"" << g.name(e.dst) << "\" [label=\"" << dba.alphabet().symbol(e.color)
        << "\"" << (dashed ? ", style=dashed" : "") << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

}  // namespace hpos
