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
#include <optional>
#include <vector>

#include "hpos/automaton.hpp"
#include "hpos/scc.hpp"

namespace hpos {

/// Complement of a DBA as an NBA with 2|Q| states.
///
/// States 0..n-1 copy the DBA without acceptance; states n..2n-1 keep only its
/// non-Büchi transitions, all of them accepting. Every original transition also
/// has a nondeterministic twin jumping into the second copy.
inline Nba complement_dba(const Dba& dba) {
  const auto n = static_cast<StateId>(dba.num_states());
  std::vector<NbaTransition> trans;
  for (StateId q = 0; q < n; ++q) {
    for (Color c = 0; c < dba.num_colors(); ++c) {
      const StateId t = dba.next(q, c);
      trans.push_back({q, c, t, false});
      trans.push_back({q, c, n + t, false});
      if (!dba.is_buchi(q, c)) trans.push_back({n + q, c, n + t, true});
    }
  }
  return Nba(dba.alphabet(), 2 * n, {dba.init()}, std::move(trans));
}

/// Product with a two-phase flag: phase 0 waits for an accepting transition of
/// `a`, phase 1 for one of `b`; accepting transitions are the phase-1 ones that
/// are accepting in `b`.
inline Nba intersect_nba(const Nba& a, const Nba& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("intersect_nba: alphabet mismatch");
  const std::size_t nb = b.num_states();
  auto id = [&](StateId p, StateId q, unsigned f) { return static_cast<StateId>((p * nb + q) * 2 + f); };

  std::vector<NbaTransition> trans;
  std::vector<StateId> inits;
  for (StateId p : a.inits())
    for (StateId q : b.inits()) inits.push_back(id(p, q, 0));

  // Explore forward from the initial states only.
  std::vector<bool> seen(a.num_states() * nb * 2, false);
  std::vector<StateId> work;
  for (StateId s : inits)
    if (!seen[s]) {
      seen[s] = true;
      work.push_back(s);
    }
  while (!work.empty()) {
    const StateId s = work.back();
    work.pop_back();
    const unsigned f = s % 2;
    const StateId p = static_cast<StateId>(s / 2 / nb), q = static_cast<StateId>(s / 2 % nb);
    const auto out_a = a.out(p), out_b = b.out(q);
    std::size_t j0 = 0;
    for (const auto& ta : out_a) {
      while (j0 < out_b.size() && out_b[j0].color < ta.color) ++j0;
      for (std::size_t j = j0; j < out_b.size() && out_b[j].color == ta.color; ++j) {
        const auto& tb = out_b[j];
        const unsigned f2 = f == 0 ? (ta.buchi ? 1u : 0u) : (tb.buchi ? 0u : 1u);
        const StateId t = id(ta.dst, tb.dst, f2);
        trans.push_back({s, ta.color, t, f == 1 && tb.buchi});
        if (!seen[t]) {
          seen[t] = true;
          work.push_back(t);
        }
      }
    }
  }
  return Nba(a.alphabet(), a.num_states() * nb * 2, std::move(inits), std::move(trans));
}

namespace detail {

/// BFS predecessor tree; successors expanded in (color, target) order so every
/// recorded path is the shortlex-least shortest path.
struct BfsTree {
  std::vector<std::int64_t> parent;  // parent state, -1 for roots, -2 unreached
  std::vector<Color> via;
  std::vector<std::uint32_t> dist;

  Word path_to(StateId v) const {
    Word w;
    for (std::int64_t x = v; parent[x] >= 0; x = parent[x]) w.push_back(via[x]);
    std::reverse(w.begin(), w.end());
    return w;
  }
};

/// Whether z^m, for some m >= 1, labels a cycle on `anchor` through an
/// accepting transition, staying inside the anchor's SCC.
inline bool power_cycle(const Nba& nba, const std::vector<std::uint32_t>& component, StateId anchor, const Word& z) {
  const std::size_t p = z.size();
  auto node = [p](StateId q, std::size_t i, unsigned f) { return (static_cast<std::size_t>(q) * p + i) * 2 + f; };
  std::vector<bool> seen(nba.num_states() * p * 2, false);
  std::vector<std::size_t> stack{node(anchor, 0, 0)};
  seen[stack.back()] = true;
  const std::size_t goal = node(anchor, 0, 1);
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    const auto q = static_cast<StateId>(x / 2 / p);
    const std::size_t i = x / 2 % p;
    const unsigned f = x % 2;
    for (const auto& t : nba.out(q)) {
      if (t.color != z[i] || component[t.dst] != component[anchor]) continue;
      const std::size_t y = node(t.dst, (i + 1) % p, f | (t.buchi ? 1u : 0u));
      if (y == goal) return true;
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return false;
}

}  // namespace detail

/// A lasso in L(nba), or nothing when the language is empty.
///
/// The prefix is a shortest path to the nearest state of a non-trivial SCC
/// holding an internal accepting transition; the cycle is a shortest cycle
/// through an accepting transition from that state, inside its SCC. Ties go to
/// alphabet order. A few alternative cycles (one closing with the last prefix
/// color, powers of short words) are also tried, and the lasso with the
/// shortest canonical form is returned.
inline std::optional<Lasso> nba_empty(const Nba& nba) {
  const std::size_t n = nba.num_states();
  const auto scc = strongly_connected_components(n, [&](StateId q, auto&& f) {
    for (const auto& t : nba.out(q)) f(t.dst);
  });
  std::vector<bool> good_comp(scc.count, false);
  for (const auto& t : nba.transitions())
    if (t.buchi && scc.component[t.src] == scc.component[t.dst]) good_comp[scc.component[t.src]] = true;
  if (std::none_of(good_comp.begin(), good_comp.end(), [](bool b) { return b; })) return std::nullopt;

  detail::BfsTree tree{std::vector<std::int64_t>(n, -2), std::vector<Color>(n, 0), std::vector<std::uint32_t>(n, 0)};
  std::deque<StateId> queue;
  for (StateId q : nba.inits()) {
    tree.parent[q] = -1;
    queue.push_back(q);
  }
  std::optional<StateId> anchor;
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    if (good_comp[scc.component[q]]) {
      anchor = q;
      break;
    }
    for (const auto& t : nba.out(q)) {
      if (tree.parent[t.dst] != -2) continue;
      tree.parent[t.dst] = q;
      tree.via[t.dst] = t.color;
      tree.dist[t.dst] = tree.dist[q] + 1;
      queue.push_back(t.dst);
    }
  }
  if (!anchor) throw InvariantError("accepting SCC unreachable in a pruned NBA");

  // Shortest cycle from the anchor through an accepting transition: BFS over
  // (state, seen-accepting flag) within the anchor's SCC.
  const auto comp = scc.component[*anchor];
  auto node = [](StateId q, unsigned f) { return static_cast<std::size_t>(q) * 2 + f; };
  std::vector<std::int64_t> parent(2 * n, -2);
  std::vector<Color> via(2 * n, 0);
  std::vector<std::uint32_t> depth(2 * n, 0);
  std::vector<std::size_t> discovered{node(*anchor, 0)};
  std::deque<std::size_t> bfs{node(*anchor, 0)};
  parent[node(*anchor, 0)] = -1;
  const std::size_t goal = node(*anchor, 1);
  while (!bfs.empty() && parent[goal] == -2) {
    const std::size_t x = bfs.front();
    bfs.pop_front();
    const auto q = static_cast<StateId>(x / 2);
    const unsigned f = x % 2;
    for (const auto& t : nba.out(q)) {
      if (scc.component[t.dst] != comp) continue;
      const std::size_t y = node(t.dst, f | (t.buchi ? 1u : 0u));
      if (parent[y] != -2) continue;
      parent[y] = static_cast<std::int64_t>(x);
      via[y] = t.color;
      depth[y] = depth[x] + 1;
      discovered.push_back(y);
      bfs.push_back(y);
    }
  }
  if (parent[goal] == -2) throw InvariantError("no accepting cycle in an accepting SCC");
  auto path = [&](std::size_t to) {
    Word w;
    for (auto x = static_cast<std::int64_t>(to); parent[x] >= 0; x = parent[x]) w.push_back(via[x]);
    std::reverse(w.begin(), w.end());
    return w;
  };
  Word prefix = tree.path_to(*anchor);
  const std::size_t len = depth[goal];

  // Candidates for the cycle, compared by the size of the canonical lasso.
  std::optional<Lasso> best;
  auto offer = [&](Word cycle) {
    Lasso l = canonical(Lasso{prefix, std::move(cycle)});
    const std::size_t size = l.prefix.size() + l.cycle.size();
    if (best) {
      const std::size_t best_size = best->prefix.size() + best->cycle.size();
      if (size > best_size) return;
      if (size == best_size && !shortlex_less(concat(l.prefix, l.cycle), concat(best->prefix, best->cycle))) return;
    }
    best = std::move(l);
  };
  offer(path(goal));

  // A shortest cycle closing with the last prefix color folds into the prefix.
  if (!prefix.empty()) {
    const Color c = prefix.back();
    bool done = false;
    for (std::size_t x : discovered) {
      if (done) break;
      if (depth[x] + 1 != len) continue;
      for (const auto& t : nba.out(static_cast<StateId>(x / 2)))
        if (t.dst == *anchor && t.color == c && ((x % 2) | (t.buchi ? 1u : 0u))) {
          Word cycle = path(x);
          cycle.push_back(c);
          offer(std::move(cycle));
          done = true;
          break;
        }
    }
  }

  // Powers z^m of short words z: the cycle may be longer in the automaton but
  // shorter as a word. Only a bounded number of words z are tried.
  const std::size_t k = nba.alphabet().size();
  std::size_t tried = 0;
  constexpr std::size_t kPowerWords = 64;
  for (std::size_t p = 1; p < len; ++p) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < p && count <= kPowerWords; ++i) count *= k;
    if ((tried += count) > kPowerWords) break;
    Word z(p, 0);
    while (true) {
      if (detail::power_cycle(nba, scc.component, *anchor, z)) offer(z);
      std::size_t i = p;
      while (i > 0 && ++z[i - 1] == k) z[--i] = 0;
      if (i == 0) break;
    }
  }
  return best;
}

struct InclusionOutcome {
  bool holds = true;
  std::optional<Lasso> counterexample;  // in L(a) \ L(b) when !holds
};

inline void require_same_alphabet(const Dba& a, const Dba& b, const char* op) {
  if (!(a.alphabet() == b.alphabet())) throw InputError(std::string(op) + ": alphabet mismatch");
}

/// L(a) ⊆ L(b), via emptiness of L(a) ∩ complement(L(b)).
inline InclusionOutcome dba_included(const Dba& a, const Dba& b) {
  require_same_alphabet(a, b, "dba_included");
  auto lasso = nba_empty(intersect_nba(to_nba(a), complement_dba(b)));
  if (!lasso) return {};
  return {false, std::move(lasso)};
}

struct EquivalenceOutcome {
  enum class Direction { none, left_only, right_only };
  bool equivalent = true;
  std::optional<Lasso> witness;
  Direction direction = Direction::none;  // which side accepts the witness
};

inline EquivalenceOutcome dba_equivalent(const Dba& a, const Dba& b) {
  require_same_alphabet(a, b, "dba_equivalent");
  if (auto ab = dba_included(a, b); !ab.holds)
    return {false, ab.counterexample, EquivalenceOutcome::Direction::left_only};
  if (auto ba = dba_included(b, a); !ba.holds)
    return {false, ba.counterexample, EquivalenceOutcome::Direction::right_only};
  return {};
}

/// A non-empty word w with delta*(q, w) = q2 whose run from q2 is an α-free
/// cycle on q2, or nothing. Shortest such word, alphabet order on ties.
inline std::optional<Word> reach_language_meets_safe_cycles(const Dba& dba, StateId q, StateId q2) {
  check_state(dba, q);
  check_state(dba, q2);
  const std::size_t n = dba.num_states();
  auto node = [n](StateId x, StateId y) { return static_cast<std::size_t>(x) * n + y; };
  std::vector<std::int64_t> parent(n * n, -2);
  std::vector<Color> via(n * n, 0);
  std::deque<std::size_t> queue{node(q, q2)};
  const std::size_t target = node(q2, q2);
  // The start node is not marked so that the target may be the start itself
  // after at least one step.
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    const auto x = static_cast<StateId>(s / n), y = static_cast<StateId>(s % n);
    for (Color c = 0; c < dba.num_colors(); ++c) {
      if (dba.is_buchi(y, c)) continue;
      const std::size_t t = node(dba.next(x, c), dba.next(y, c));
      if (parent[t] != -2) continue;
      parent[t] = static_cast<std::int64_t>(s);
      via[t] = c;
      if (t == target) {
        Word w{c};
        for (std::size_t z = s; z != node(q, q2); z = static_cast<std::size_t>(parent[z]))
          w.push_back(via[z]);
        std::reverse(w.begin(), w.end());
        return w;
      }
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

}  // namespace hpos
