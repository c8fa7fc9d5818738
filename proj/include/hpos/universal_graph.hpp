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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hpos/congruence.hpp"
#include "hpos/games.hpp"
#include "hpos/progress.hpp"
#include "hpos/scc.hpp"

namespace hpos {

/// Finite edge-colored graph without ownership; vertices may be blocking.
class Graph {
 public:
  Graph() = default;

  Graph(Alphabet alphabet, std::vector<std::string> names, std::vector<ArenaEdge> edges)
      : alphabet_(std::move(alphabet)), names_(std::move(names)), edges_(std::move(edges)) {
    const std::size_t n = names_.size();
    if (n == 0) throw InputError("graph has no vertices");
    std::map<std::string, int> seen;
    for (const auto& s : names_)
      if (++seen[s] > 1) throw InputError("duplicate vertex name '" + s + "'");
    for (const auto& e : edges_) {
      if (e.src >= n || e.dst >= n) throw InputError("graph edge endpoint out of range");
      if (e.color >= alphabet_.size()) throw InputError("graph edge color outside the alphabet");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) ++offsets_[e.src + 1];
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  }

  static Graph from_arena(const Arena& a) { return Graph(a.alphabet(), a.names(), a.edges()); }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_vertices() const { return names_.size(); }
  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ArenaEdge>& edges() const { return edges_; }
  std::span<const ArenaEdge> out(VertexId v) const {
    return {edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::optional<VertexId> find_vertex(std::string_view name) const {
    for (std::size_t v = 0; v < names_.size(); ++v)
      if (names_[v] == name) return static_cast<VertexId>(v);
    return std::nullopt;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.alphabet_ == b.alphabet_ && a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<ArenaEdge> edges_;
  std::vector<std::size_t> offsets_;
};

namespace detail {

/// Every infinite path from v0, read from q0, is accepted. `for_each_edge(v, f)`
/// calls f(color, w) for each edge (v, color, w); colors are automaton colors.
template <typename ForEachEdge>
bool satisfies(std::size_t num_vertices, ForEachEdge&& for_each_edge, VertexId v0, const Dba& dba, StateId q0) {
  check_state(dba, q0);
  const std::size_t nq = dba.num_states();
  std::vector<std::uint32_t> index(num_vertices * nq, UINT32_MAX);
  std::vector<std::pair<VertexId, StateId>> label;
  struct E { std::uint32_t src, dst; bool buchi; };
  std::vector<E> edges;
  auto intern = [&](VertexId v, StateId q) {
    auto& slot = index[static_cast<std::size_t>(v) * nq + q];
    if (slot == UINT32_MAX) {
      slot = static_cast<std::uint32_t>(label.size());
      label.emplace_back(v, q);
    }
    return slot;
  };
  intern(v0, q0);
  for (std::uint32_t x = 0; x < label.size(); ++x) {
    const auto [v, q] = label[x];
    for_each_edge(v, [&](Color c, VertexId w) {
      const auto y = intern(w, dba.next(q, c));
      edges.push_back({x, y, dba.is_buchi(q, c)});
    });
  }
  std::vector<std::vector<std::uint32_t>> safe_succ(label.size());
  for (const auto& e : edges)
    if (!e.buchi) safe_succ[e.src].push_back(e.dst);
  const auto scc = strongly_connected_components(label.size(), [&](std::uint32_t x, auto&& f) {
    for (auto y : safe_succ[x]) f(y);
  });
  // Everything explored is reachable from the root.
  for (const auto& e : edges)
    if (!e.buchi && scc.component[e.src] == scc.component[e.dst]) return false;
  return true;
}

inline std::vector<Color> color_map(const Alphabet& from, const Dba& dba) {
  std::vector<Color> m(from.size());
  for (Color c = 0; c < from.size(); ++c) {
    auto t = dba.alphabet().find(from.symbol(c));
    if (!t) throw InputError("graph color '" + from.symbol(c) + "' not in the automaton alphabet");
    m[c] = *t;
  }
  return m;
}

}  // namespace detail

/// Every infinite path of `g` from v yields a word in res(q0).
inline bool graph_vertex_satisfies(const Graph& g, VertexId v, const Dba& dba, StateId q0) {
  const auto cmap = detail::color_map(g.alphabet(), dba);
  return detail::satisfies(
      g.num_vertices(),
      [&](VertexId x, auto&& f) {
        for (const auto& e : g.out(x)) f(cmap[e.color], e.dst);
      },
      v, dba, q0);
}

inline constexpr std::size_t kDefaultMaterializeCap = 64;

/// The ordered graph with vertices (q, l) for l < theta plus a top vertex.
///
/// With t = delta(q, c), (q, l) -c-> (q2, l2) holds iff q2 < t, or q2 = t and
/// either (q, c) is Büchi or l2 < l. The top vertex has every outgoing edge.
/// Vertices are ordered by (rank of q, l) with top maximal. Edges are decided
/// on demand; `edges()` materializes them for theta up to a cap.
class MonotoneGraph {
 public:
  MonotoneGraph(Dba dba, std::vector<std::uint32_t> rank, std::size_t theta)
      : dba_(std::move(dba)), rank_(std::move(rank)), theta_(theta) {
    by_rank_.resize(rank_.size());
    for (StateId q = 0; q < rank_.size(); ++q) by_rank_[rank_[q]] = q;
  }

  const Dba& dba() const { return dba_; }
  std::size_t theta() const { return theta_; }
  std::size_t num_vertices() const { return dba_.num_states() * theta_ + 1; }
  VertexId top() const { return static_cast<VertexId>(dba_.num_states() * theta_); }
  bool is_top(VertexId v) const { return v == top(); }
  VertexId vertex(StateId q, std::size_t level) const {
    if (q >= dba_.num_states() || level >= theta_) throw ContractError("vertex out of range");
    return static_cast<VertexId>(q * theta_ + level);
  }
  StateId state_of(VertexId v) const { return static_cast<StateId>(v / theta_); }
  std::size_t level_of(VertexId v) const { return v % theta_; }
  std::uint32_t rank(StateId q) const { return rank_[q]; }

  std::string name(VertexId v) const {
    if (is_top(v)) return "top";
    return "(" + dba_.state_name(state_of(v)) + "," + std::to_string(level_of(v)) + ")";
  }

  /// Position in the vertex order.
  std::size_t position(VertexId v) const {
    if (is_top(v)) return top();
    return rank_[state_of(v)] * theta_ + level_of(v);
  }
  bool leq(VertexId u, VertexId v) const { return position(u) <= position(v); }
  VertexId at_position(std::size_t p) const {
    if (p == top()) return top();
    return vertex(by_rank_[p / theta_], p % theta_);
  }

  bool has_edge(VertexId u, Color c, VertexId v) const {
    if (!removed_.empty() && removed_.count({u, c, v})) return false;
    if (is_top(u)) return true;
    if (is_top(v)) return false;
    const StateId q = state_of(u), q2 = state_of(v), t = dba_.next(q, c);
    if (rank_[q2] < rank_[t]) return true;
    if (q2 != t) return false;
    return dba_.is_buchi(q, c) || level_of(v) < level_of(u);
  }

  /// Drops one edge (used to exercise the monotonicity checker).
  void remove_edge(VertexId u, Color c, VertexId v) { removed_.insert({u, c, v}); }

  template <typename F>
  void for_each_successor(VertexId u, F&& f) const {
    for (Color c = 0; c < dba_.num_colors(); ++c)
      for (VertexId v = 0; v < num_vertices(); ++v)
        if (has_edge(u, c, v)) f(c, v);
  }

  std::vector<ArenaEdge> edges(std::size_t cap = kDefaultMaterializeCap) const {
    if (theta_ > cap)
      throw ResourceError("refusing to materialize a universal graph with theta " + std::to_string(theta_) +
                          " above the cap " + std::to_string(cap));
    std::vector<ArenaEdge> out;
    for (VertexId u = 0; u < num_vertices(); ++u)
      for_each_successor(u, [&](Color c, VertexId v) { out.push_back({u, c, v}); });
    return out;
  }

 private:
  Dba dba_;
  std::vector<std::uint32_t> rank_;
  std::vector<StateId> by_rank_;
  std::size_t theta_;
  std::set<std::tuple<VertexId, Color, VertexId>> removed_;
};

/// Requires a saturated automaton built on its classifier, with a total,
/// progress-consistent prefix order.
inline MonotoneGraph build_universal_graph(const Dba& dba, const PrefixOrder& order, std::size_t theta) {
  if (theta == 0) throw ContractError("theta must be positive");
  if (order.n != dba.num_states()) throw ContractError("prefix order does not match automaton");
  if (!order.total()) throw ContractError("universal graph requires a total prefix order");
  if (order.num_classes != dba.num_states())
    throw ContractError("universal graph requires an automaton built on its classifier");
  if (!is_saturated(dba)) throw ContractError("universal graph requires a saturated automaton");
  if (!is_progress_consistent(dba, order).consistent)
    throw ContractError("universal graph requires a progress-consistent objective");
  std::vector<std::uint32_t> rank(dba.num_states());
  for (StateId q = 0; q < dba.num_states(); ++q) rank[q] = order.rank(q);
  return MonotoneGraph(dba, std::move(rank), theta);
}

/// Targets of every (u, c) are downward closed, sources of every (c, v) upward
/// closed, and top has all outgoing edges. Well-foundedness is automatic for
/// finite theta.
inline bool check_completely_well_monotonic(const MonotoneGraph& g) {
  const std::size_t n = g.num_vertices();
  const std::size_t k = g.dba().num_colors();
  for (Color c = 0; c < k; ++c) {
    for (std::size_t pu = 0; pu < n; ++pu) {
      const VertexId u = g.at_position(pu);
      bool gap = false;
      for (std::size_t pv = 0; pv < n; ++pv) {
        const bool e = g.has_edge(u, c, g.at_position(pv));
        if (e && gap) return false;
        gap = gap || !e;
      }
    }
    for (std::size_t pv = 0; pv < n; ++pv) {
      const VertexId v = g.at_position(pv);
      bool seen = false;
      for (std::size_t pu = 0; pu < n; ++pu) {
        const bool e = g.has_edge(g.at_position(pu), c, v);
        if (!e && seen) return false;
        seen = seen || e;
      }
    }
    for (VertexId v = 0; v < n; ++v)
      if (!g.has_edge(g.top(), c, v)) return false;
  }
  return true;
}

inline bool vertex_satisfies(const MonotoneGraph& g, VertexId v, const Dba& dba, StateId q0) {
  if (!(g.dba().alphabet() == dba.alphabet())) throw InputError("vertex_satisfies: alphabet mismatch");
  return detail::satisfies(
      g.num_vertices(), [&](VertexId x, auto&& f) { g.for_each_successor(x, f); }, v, dba, q0);
}

struct Morphism {
  std::vector<VertexId> map;  // source vertex -> universal-graph vertex
};

struct MorphismResult {
  std::optional<Morphism> morphism;
  std::string diagnostic;
  std::size_t theta = 0;
  std::vector<std::optional<StateId>> least_state;  // per source vertex; empty = top
  std::size_t stabilization = 0;                    // least l with all level sets stable from l on
};

inline std::size_t default_theta(const Dba& dba, const Graph& source) {
  return dba.num_states() * (source.num_vertices() + 1);
}

/// Maps `source` into the universal graph: each vertex goes to the least state
/// whose residual it satisfies, at the least level of the level-set fixpoint.
/// The result is re-verified edge by edge and for W-preservation.
inline MorphismResult compute_morphism(const Graph& source, const Dba& dba, const PrefixOrder& order,
                                       std::optional<std::size_t> theta_opt = std::nullopt) {
  const std::size_t nq = dba.num_states(), nv = source.num_vertices();
  const std::size_t theta = theta_opt.value_or(default_theta(dba, source));
  if (theta < default_theta(dba, source))
    throw ResourceError("theta " + std::to_string(theta) + " below the required " +
                        std::to_string(default_theta(dba, source)));
  const MonotoneGraph g = build_universal_graph(dba, order, theta);
  const auto cmap = detail::color_map(source.alphabet(), dba);

  MorphismResult res;
  res.theta = theta;
  res.least_state.assign(nv, std::nullopt);
  const auto& classes = *order.class_order;
  for (VertexId v = 0; v < nv; ++v)
    for (auto cls : classes) {
      const StateId q = order.class_members[cls].front();
      if (graph_vertex_satisfies(source, v, dba, q)) {
        res.least_state[v] = q;
        break;
      }
    }

  // level[q][v]: least l with v in V^q_l, or SIZE_MAX.
  std::vector<std::vector<std::size_t>> level(nq, std::vector<std::size_t>(nv, SIZE_MAX));
  std::vector<std::vector<bool>> cur(nq, std::vector<bool>(nv, false));
  bool stabilized = false;
  for (std::size_t l = 0; l < theta; ++l) {
    std::vector<std::vector<bool>> nxt(nq, std::vector<bool>(nv, false));
    for (StateId q = 0; q < nq; ++q)
      for (VertexId v = 0; v < nv; ++v) {
        const auto& qv = res.least_state[v];
        if (!qv || !order.leq(*qv, q)) continue;
        bool ok = true;
        for (const auto& e : source.out(v)) {
          const Color c = cmap[e.color];
          if (dba.is_buchi(q, c)) continue;
          if (l == 0 || !cur[dba.next(q, c)][e.dst]) {
            ok = false;
            break;
          }
        }
        nxt[q][v] = ok;
        if (ok && level[q][v] == SIZE_MAX) level[q][v] = l;
      }
    if (l > 0 && nxt == cur) {
      res.stabilization = l - 1;
      stabilized = true;
      break;
    }
    cur = std::move(nxt);
  }
  if (!stabilized) {
    res.diagnostic = "level sets did not stabilize below theta";
    return res;
  }

  Morphism m;
  m.map.resize(nv);
  for (VertexId v = 0; v < nv; ++v) {
    const auto& qv = res.least_state[v];
    if (!qv) {
      m.map[v] = g.top();
      continue;
    }
    if (level[*qv][v] == SIZE_MAX) {
      res.diagnostic = "vertex " + source.name(v) + " satisfies a residual but has no level";
      return res;
    }
    m.map[v] = g.vertex(*qv, level[*qv][v]);
  }

  for (const auto& e : source.edges())
    if (!g.has_edge(m.map[e.src], cmap[e.color], m.map[e.dst])) {
      res.diagnostic = "edge " + source.name(e.src) + " -" + source.alphabet().symbol(e.color) + "-> " +
                       source.name(e.dst) + " is not preserved";
      return res;
    }
  for (VertexId v = 0; v < nv; ++v)
    if (graph_vertex_satisfies(source, v, dba, dba.init()) && !vertex_satisfies(g, m.map[v], dba, dba.init())) {
      res.diagnostic = "vertex " + source.name(v) + " satisfies W but its image does not";
      return res;
    }
  res.morphism = std::move(m);
  return res;
}

struct PropertyReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> examples;  // first few violations
};

namespace detail {

/// Walks all words up to max_len from each non-top start vertex, tracking the
/// set of reachable vertices; calls f(start, word, reached).
template <typename F>
void walk_paths(const MonotoneGraph& g, std::size_t max_len, F&& f) {
  const std::size_t n = g.num_vertices();
  const std::size_t k = g.dba().num_colors();
  for (VertexId s = 0; s < g.top(); ++s) {
    Word w;
    std::vector<std::vector<bool>> stack{std::vector<bool>(n, false)};
    stack[0][s] = true;
    std::vector<Color> next_color{0};
    while (!next_color.empty()) {
      if (next_color.back() == k || w.size() == max_len) {
        next_color.pop_back();
        stack.pop_back();
        if (!w.empty()) w.pop_back();
        continue;
      }
      const Color c = next_color.back()++;
      std::vector<bool> reached(n, false);
      bool any = false;
      for (VertexId u = 0; u < n; ++u) {
        if (!stack.back()[u]) continue;
        for (VertexId v = 0; v < n; ++v)
          if (!reached[v] && g.has_edge(u, c, v)) reached[v] = any = true;
      }
      if (!any) continue;
      w.push_back(c);
      f(s, static_cast<const Word&>(w), static_cast<const std::vector<bool>&>(reached));
      stack.push_back(std::move(reached));
      next_color.push_back(0);
    }
  }
}

}  // namespace detail

/// Every path (q0,l0) -w-> (q,l) satisfies q <= delta*(q0, w).
inline PropertyReport check_path_underapproximation(const MonotoneGraph& g, std::size_t max_len = 5) {
  PropertyReport rep;
  const Dba& dba = g.dba();
  detail::walk_paths(g, max_len, [&](VertexId s, const Word& w, const std::vector<bool>& reached) {
    const StateId target = run_state(dba, g.state_of(s), w);
    for (VertexId v = 0; v < g.top(); ++v) {
      if (!reached[v]) continue;
      ++rep.checked;
      if (g.rank(g.state_of(v)) > g.rank(target)) {
        ++rep.violations;
        if (rep.examples.size() < 5) rep.examples.push_back(g.name(s) + " -" + format_word(dba.alphabet(), w) + "-> " + g.name(v));
      }
    }
    if (reached[g.top()]) {
      ++rep.violations;
      if (rep.examples.size() < 5) rep.examples.push_back(g.name(s) + " reaches top");
    }
  });
  return rep;
}

/// Every cycle (q0,l0) -w-> (q0,l) with l0 <= l has w^omega in res(q0).
inline PropertyReport check_returning_cycles(const MonotoneGraph& g, std::size_t max_len = 5) {
  PropertyReport rep;
  const Dba& dba = g.dba();
  detail::walk_paths(g, max_len, [&](VertexId s, const Word& w, const std::vector<bool>& reached) {
    const StateId q0 = g.state_of(s);
    bool returns = false;
    for (std::size_t l = g.level_of(s); l < g.theta(); ++l) returns = returns || reached[g.vertex(q0, l)];
    if (!returns) return;
    ++rep.checked;
    if (!accepts(dba, q0, Lasso{{}, w})) {
      ++rep.violations;
      if (rep.examples.size() < 5) rep.examples.push_back(g.name(s) + " cycle " + format_word(dba.alphabet(), w));
    }
  });
  return rep;
}

}  // namespace hpos
