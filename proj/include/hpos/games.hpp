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

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpos/automaton.hpp"
#include "hpos/scc.hpp"

namespace hpos {

enum class Player { P1, P2 };

using VertexId = std::uint32_t;

struct ArenaEdge {
  VertexId src;
  Color color;
  VertexId dst;

  friend auto operator<=>(const ArenaEdge&, const ArenaEdge&) = default;
};

/// Finite non-blocking edge-colored game graph. Edges are kept sorted by
/// (source, color, target) without duplicates.
class Arena {
 public:
  Arena() = default;

  Arena(Alphabet alphabet, std::vector<std::string> names, std::vector<Player> owner,
        std::vector<ArenaEdge> edges, std::optional<std::string> start_state = std::nullopt)
      : alphabet_(std::move(alphabet)),
        names_(std::move(names)),
        owner_(std::move(owner)),
        edges_(std::move(edges)),
        start_state_(std::move(start_state)) {
    const std::size_t n = names_.size();
    if (n == 0) throw InputError("arena has no vertices");
    if (owner_.size() != n) throw InputError("arena owner table has wrong size");
    std::map<std::string, int> seen;
    for (const auto& s : names_)
      if (++seen[s] > 1) throw InputError("duplicate vertex name '" + s + "'");
    for (const auto& e : edges_) {
      if (e.src >= n || e.dst >= n) throw InputError("arena edge endpoint out of range");
      if (e.color >= alphabet_.size()) throw InputError("arena edge color outside the alphabet");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) ++offsets_[e.src + 1];
    for (std::size_t v = 0; v < n; ++v) {
      offsets_[v + 1] += offsets_[v];
      if (offsets_[v + 1] == offsets_[v]) throw InputError("vertex '" + names_[v] + "' has no outgoing edge");
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_vertices() const { return names_.size(); }
  Player owner(VertexId v) const { return owner_[v]; }
  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ArenaEdge>& edges() const { return edges_; }
  const std::optional<std::string>& start_state() const { return start_state_; }

  std::size_t first_edge(VertexId v) const { return offsets_[v]; }
  std::size_t end_edge(VertexId v) const { return offsets_[v + 1]; }
  std::span<const ArenaEdge> out(VertexId v) const {
    return {edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    for (std::size_t v = 0; v < names_.size(); ++v)
      if (names_[v] == name) return static_cast<VertexId>(v);
    return std::nullopt;
  }

  bool one_player() const {
    return std::all_of(owner_.begin(), owner_.end(), [](Player p) { return p == Player::P1; });
  }

  friend bool operator==(const Arena& a, const Arena& b) {
    return a.alphabet_ == b.alphabet_ && a.names_ == b.names_ && a.owner_ == b.owner_ &&
           a.edges_ == b.edges_ && a.start_state_ == b.start_state_;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<Player> owner_;
  std::vector<ArenaEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::optional<std::string> start_state_;
};

/// Automaton state the game starts in: the arena's override or the initial state.
inline StateId start_state_of(const Arena& arena, const Dba& dba) {
  if (!arena.start_state()) return dba.init();
  if (auto q = dba.find_state(*arena.start_state())) return *q;
  throw InputError("arena start state '" + *arena.start_state() + "' is not an automaton state");
}

/// P1's choice per vertex as an index into Arena::edges(); unused for P2 vertices.
struct PositionalStrategy {
  std::vector<std::uint32_t> choice;

  friend bool operator==(const PositionalStrategy&, const PositionalStrategy&) = default;
};

struct ProductEdge {
  std::uint32_t src;
  Color color;
  std::uint32_t dst;
  bool buchi;
  std::uint32_t arena_edge;
};

/// Arena x DBA. Vertex ids are assigned in BFS order from the roots.
struct ProductGame {
  std::vector<std::pair<VertexId, StateId>> label;
  std::vector<Player> owner;
  std::vector<ProductEdge> edges;        // grouped by source, in arena-edge order
  std::vector<std::size_t> offsets;      // CSR over edges
  std::vector<std::uint32_t> index;      // (v * |Q| + q) -> product id or UINT32_MAX
  std::size_t num_states = 0;            // |Q| of the automaton

  std::size_t size() const { return label.size(); }
  std::span<const ProductEdge> out(std::uint32_t x) const {
    return {edges.data() + offsets[x], offsets[x + 1] - offsets[x]};
  }
  std::optional<std::uint32_t> find(VertexId v, StateId q) const {
    const auto id = index[static_cast<std::size_t>(v) * num_states + q];
    if (id == UINT32_MAX) return std::nullopt;
    return id;
  }
};

inline void check_colors(const Arena& arena, const Dba& dba) {
  for (const auto& s : arena.alphabet().symbols())
    if (!dba.alphabet().find(s)) throw InputError("arena color '" + s + "' not in the automaton alphabet");
}

namespace detail {

/// Product restricted to `allowed` arena edges (empty = all), rooted at (v, start) for every v.
inline ProductGame build_product(const Arena& arena, const Dba& dba, StateId start,
                                 const std::vector<bool>& allowed) {
  check_colors(arena, dba);
  check_state(dba, start);
  std::vector<Color> color_map(arena.alphabet().size());
  for (Color c = 0; c < color_map.size(); ++c) color_map[c] = dba.alphabet().index_of(arena.alphabet().symbol(c));

  ProductGame g;
  g.num_states = dba.num_states();
  g.index.assign(arena.num_vertices() * dba.num_states(), UINT32_MAX);
  auto intern = [&](VertexId v, StateId q) {
    auto& slot = g.index[static_cast<std::size_t>(v) * g.num_states + q];
    if (slot == UINT32_MAX) {
      slot = static_cast<std::uint32_t>(g.label.size());
      g.label.emplace_back(v, q);
      g.owner.push_back(arena.owner(v));
    }
    return slot;
  };
  for (VertexId v = 0; v < arena.num_vertices(); ++v) intern(v, start);
  g.offsets.push_back(0);
  for (std::uint32_t x = 0; x < g.label.size(); ++x) {
    const auto [v, q] = g.label[x];
    for (std::size_t i = arena.first_edge(v); i < arena.end_edge(v); ++i) {
      if (!allowed.empty() && !allowed[i]) continue;
      const auto& e = arena.edges()[i];
      const Color c = color_map[e.color];
      const auto y = intern(e.dst, dba.next(q, c));
      g.edges.push_back({x, c, y, dba.is_buchi(q, c), static_cast<std::uint32_t>(i)});
    }
    g.offsets.push_back(g.edges.size());
  }
  return g;
}

/// Vertices of `g` from which some path (using edges with keep[e]) eventually
/// stays forever on non-Büchi edges.
inline std::vector<bool> reaches_alpha_free_cycle(const ProductGame& g, const std::vector<bool>& keep) {
  const std::size_t n = g.size();
  auto kept = [&](std::size_t e) { return keep.empty() || keep[e]; };
  const auto scc = strongly_connected_components(n, [&](std::uint32_t x, auto&& f) {
    for (std::size_t e = g.offsets[x]; e < g.offsets[x + 1]; ++e)
      if (kept(e) && !g.edges[e].buchi) f(g.edges[e].dst);
  });
  std::vector<bool> bad(n, false);
  std::vector<std::vector<std::uint32_t>> pred(n);
  std::vector<std::uint32_t> work;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!kept(e)) continue;
    const auto& pe = g.edges[e];
    pred[pe.dst].push_back(pe.src);
    if (!pe.buchi && scc.component[pe.src] == scc.component[pe.dst] && !bad[pe.src]) {
      bad[pe.src] = true;
      work.push_back(pe.src);
    }
  }
  while (!work.empty()) {
    const auto x = work.back();
    work.pop_back();
    for (auto p : pred[x])
      if (!bad[p]) {
        bad[p] = true;
        work.push_back(p);
      }
  }
  return bad;
}

}  // namespace detail

inline ProductGame product(const Arena& arena, const Dba& dba, StateId start_state) {
  return detail::build_product(arena, dba, start_state, {});
}

inline ProductGame product(const Arena& arena, const Dba& dba) {
  return product(arena, dba, start_state_of(arena, dba));
}

struct BuchiSolution {
  std::vector<bool> winning;            // per product vertex
  std::vector<std::uint32_t> strategy;  // product edge index per winning P1 vertex, else UINT32_MAX
  std::size_t outer_iterations = 0;
};

/// Nested fixpoint: Z := greatest set such that P1 can force, from Z, a visit to
/// a Büchi edge leading back into Z. The inner least fixpoint is a
/// counter-based attractor.
inline BuchiSolution solve_buchi_game(const ProductGame& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::uint32_t>> pred_edges(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) pred_edges[g.edges[e].dst].push_back(static_cast<std::uint32_t>(e));

  BuchiSolution sol;
  std::vector<bool> z(n, true);
  std::vector<std::uint32_t> chosen(n, UINT32_MAX);
  while (true) {
    ++sol.outer_iterations;
    if (sol.outer_iterations > n + 2) throw InvariantError("Büchi fixpoint failed to converge");
    std::vector<bool> y(n, false), good(g.edges.size(), false);
    std::vector<std::size_t> missing(n);
    for (std::uint32_t x = 0; x < n; ++x) missing[x] = g.offsets[x + 1] - g.offsets[x];
    std::fill(chosen.begin(), chosen.end(), UINT32_MAX);
    std::deque<std::uint32_t> added;

    auto mark_good = [&](std::uint32_t e) {
      if (good[e]) return;
      good[e] = true;
      const auto x = g.edges[e].src;
      if (y[x]) return;
      if (g.owner[x] == Player::P1) {
        y[x] = true;
        chosen[x] = e;
        added.push_back(x);
      } else if (--missing[x] == 0) {
        y[x] = true;
        added.push_back(x);
      }
    };
    for (std::uint32_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].buchi && z[g.edges[e].dst]) mark_good(e);
    while (!added.empty()) {
      const auto x = added.front();
      added.pop_front();
      for (auto e : pred_edges[x]) mark_good(e);
    }
    if (y == z) break;
    z = std::move(y);
  }
  sol.winning = std::move(z);
  sol.strategy = std::move(chosen);
  return sol;
}

/// Winning vertices of a product-positional strategy for P1 (choice per product vertex).
inline std::vector<bool> product_strategy_wins(const ProductGame& g, const std::vector<std::uint32_t>& choice) {
  std::vector<bool> keep(g.edges.size(), true);
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    if (g.owner[x] != Player::P1) continue;
    for (std::size_t e = g.offsets[x]; e < g.offsets[x + 1]; ++e) keep[e] = e == choice[x];
  }
  auto bad = detail::reaches_alpha_free_cycle(g, keep);
  bad.flip();
  return bad;
}

/// Arena vertices v such that every play from v consistent with sigma is won
/// from the game's starting automaton state.
inline std::vector<bool> strategy_wins_from(const Arena& arena, const Dba& dba, const PositionalStrategy& sigma) {
  if (sigma.choice.size() != arena.num_vertices()) throw ContractError("strategy size does not match arena");
  std::vector<bool> allowed(arena.edges().size(), true);
  for (VertexId v = 0; v < arena.num_vertices(); ++v) {
    if (arena.owner(v) != Player::P1) continue;
    const auto c = sigma.choice[v];
    if (c < arena.first_edge(v) || c >= arena.end_edge(v)) throw ContractError("strategy picks a foreign edge");
    for (std::size_t i = arena.first_edge(v); i < arena.end_edge(v); ++i) allowed[i] = i == c;
  }
  const StateId start = start_state_of(arena, dba);
  const auto g = detail::build_product(arena, dba, start, allowed);
  const auto bad = detail::reaches_alpha_free_cycle(g, {});
  std::vector<bool> wins(arena.num_vertices());
  for (VertexId v = 0; v < arena.num_vertices(); ++v) wins[v] = !bad[*g.find(v, start)];
  return wins;
}

/// Arena vertices from which P1 wins (from the game's starting automaton state).
inline std::vector<bool> winning_region(const Arena& arena, const Dba& dba) {
  const StateId start = start_state_of(arena, dba);
  const auto g = product(arena, dba, start);
  const auto sol = solve_buchi_game(g);
  std::vector<bool> region(arena.num_vertices());
  for (VertexId v = 0; v < arena.num_vertices(); ++v) region[v] = sol.winning[*g.find(v, start)];
  return region;
}

inline constexpr std::uint64_t kDefaultStrategyBudget = 1'000'000;

inline std::uint64_t count_positional_strategies(const Arena& arena) {
  std::uint64_t total = 1;
  for (VertexId v = 0; v < arena.num_vertices(); ++v) {
    if (arena.owner(v) != Player::P1) continue;
    const std::uint64_t d = arena.end_edge(v) - arena.first_edge(v);
    if (total > UINT64_MAX / d) return UINT64_MAX;
    total *= d;
  }
  return total;
}

/// Brute force: a positional strategy winning from the whole winning region, if any.
inline std::optional<PositionalStrategy> exists_positional_optimal(const Arena& arena, const Dba& dba,
                                                                   std::uint64_t budget = kDefaultStrategyBudget) {
  const std::uint64_t count = count_positional_strategies(arena);
  if (count > budget)
    throw ResourceError("positional strategy enumeration needs " + std::to_string(count) +
                        " candidates, budget is " + std::to_string(budget));
  const auto region = winning_region(arena, dba);
  std::vector<VertexId> p1;
  PositionalStrategy sigma{std::vector<std::uint32_t>(arena.num_vertices(), UINT32_MAX)};
  for (VertexId v = 0; v < arena.num_vertices(); ++v)
    if (arena.owner(v) == Player::P1) {
      p1.push_back(v);
      sigma.choice[v] = static_cast<std::uint32_t>(arena.first_edge(v));
    }
  while (true) {
    const auto wins = strategy_wins_from(arena, dba, sigma);
    for (VertexId v = 0; v < arena.num_vertices(); ++v)
      if (wins[v] && !region[v]) throw InvariantError("positional strategy wins outside the winning region");
    if (wins == region) return sigma;
    // Mixed-radix increment over P1 vertices.
    std::size_t i = 0;
    for (; i < p1.size(); ++i) {
      const VertexId v = p1[i];
      if (++sigma.choice[v] < arena.end_edge(v)) break;
      sigma.choice[v] = static_cast<std::uint32_t>(arena.first_edge(v));
    }
    if (i == p1.size()) return std::nullopt;
  }
}

/// True iff P1 wins somewhere but no positional strategy is optimal.
inline bool verify_no_positional_optimal(const Arena& arena, const Dba& dba,
                                         std::uint64_t budget = kDefaultStrategyBudget) {
  const auto region = winning_region(arena, dba);
  if (std::none_of(region.begin(), region.end(), [](bool b) { return b; })) return false;
  return !exists_positional_optimal(arena, dba, budget).has_value();
}

}  // namespace hpos
