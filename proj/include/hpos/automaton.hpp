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
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "hpos/common.hpp"

namespace hpos {

namespace detail {

/// Stable renumbering of the states reachable from `roots`; UINT32_MAX marks pruned states.
template <typename ForEachSuccessor>
std::vector<StateId> reachable_renumbering(std::size_t n, std::span<const StateId> roots,
                                           ForEachSuccessor&& for_each_successor) {
  std::vector<bool> seen(n, false);
  std::vector<StateId> work(roots.begin(), roots.end());
  for (StateId r : roots) seen[r] = true;
  while (!work.empty()) {
    const StateId q = work.back();
    work.pop_back();
    for_each_successor(q, [&](StateId t) {
      if (!seen[t]) {
        seen[t] = true;
        work.push_back(t);
      }
    });
  }
  std::vector<StateId> renumber(n, UINT32_MAX);
  StateId next = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (seen[q]) renumber[q] = next++;
  return renumber;
}

}  // namespace detail

/// Complete deterministic Büchi automaton with transition-based acceptance.
///
/// States are dense ids. Unreachable states are pruned on construction (ids of
/// the remaining states keep their relative order). The Büchi set is a bitset
/// over Q x C indexed by `q * |C| + c`.
class Dba {
 public:
  Dba() = default;

  Dba(Alphabet alphabet, StateId init, std::vector<StateId> delta, std::vector<bool> buchi,
      std::vector<std::string> names = {})
      : alphabet_(std::move(alphabet)) {
    const std::size_t k = alphabet_.size();
    if (k == 0) throw InputError("alphabet must not be empty");
    if (delta.empty() || delta.size() % k != 0)
      throw InputError("transition table size must be a positive multiple of |C|");
    const std::size_t n = delta.size() / k;
    if (buchi.size() != delta.size()) throw InputError("Büchi bitset must cover Q x C");
    if (init >= n) throw InputError("initial state out of range");
    for (StateId t : delta)
      if (t >= n) throw InputError("transition target out of range");
    if (!names.empty() && names.size() != n) throw InputError("state name table has wrong size");

    const auto renumber = detail::reachable_renumbering(
        n, std::span<const StateId>(&init, 1), [&](StateId q, auto&& f) {
          for (std::size_t c = 0; c < k; ++c) f(delta[q * k + c]);
        });
    for (std::size_t q = 0; q < n; ++q) {
      if (renumber[q] == UINT32_MAX) continue;
      for (std::size_t c = 0; c < k; ++c) {
        delta_.push_back(renumber[delta[q * k + c]]);
        buchi_.push_back(buchi[q * k + c]);
      }
      if (!names.empty()) names_.push_back(std::move(names[q]));
    }
    has_names_ = !names.empty();
    init_ = renumber[init];
    if (!has_names_)
      for (std::size_t q = 0; q < num_states(); ++q) names_.push_back(std::to_string(q));
    if (has_names_) {
      std::map<std::string, int> seen;
      for (const auto& s : names_)
        if (++seen[s] > 1) throw InputError("duplicate state name '" + s + "'");
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return delta_.size() / alphabet_.size(); }
  std::size_t num_colors() const { return alphabet_.size(); }
  StateId init() const { return init_; }

  StateId next(StateId q, Color c) const { return delta_[q * num_colors() + c]; }
  bool is_buchi(StateId q, Color c) const { return buchi_[q * num_colors() + c]; }

  const std::vector<StateId>& transitions() const { return delta_; }
  const std::vector<bool>& buchi() const { return buchi_; }

  bool has_names() const { return has_names_; }
  const std::string& state_name(StateId q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const { return names_; }

  std::optional<StateId> find_state(std::string_view name) const {
    for (std::size_t q = 0; q < names_.size(); ++q)
      if (names_[q] == name) return static_cast<StateId>(q);
    return std::nullopt;
  }

  /// Same structure with another acceptance set.
  Dba with_buchi(std::vector<bool> buchi) const {
    return Dba(alphabet_, init_, delta_, std::move(buchi), has_names_ ? names_ : std::vector<std::string>{});
  }

  /// Same structure re-rooted at `q`, pruned to what `q` reaches.
  Dba rooted_at(StateId q) const {
    if (q >= num_states()) throw InputError("state out of range");
    return Dba(alphabet_, q, delta_, buchi_, names_);
  }

  /// Structural identity, names included.
  friend bool operator==(const Dba& a, const Dba& b) {
    return a.alphabet_ == b.alphabet_ && a.init_ == b.init_ && a.delta_ == b.delta_ &&
           a.buchi_ == b.buchi_ && a.names_ == b.names_ && a.has_names_ == b.has_names_;
  }

 private:
  Alphabet alphabet_;
  StateId init_ = 0;
  std::vector<StateId> delta_;
  std::vector<bool> buchi_;
  std::vector<std::string> names_;
  bool has_names_ = false;
};

inline void check_word(const Dba& dba, std::span<const Color> w) {
  for (Color c : w)
    if (c >= dba.num_colors()) throw InputError("word uses a color outside the alphabet");
}

inline void check_state(const Dba& dba, StateId q) {
  if (q >= dba.num_states()) throw InputError("state " + std::to_string(q) + " out of range");
}

/// delta*(q, w).
inline StateId run_state(const Dba& dba, StateId q, std::span<const Color> w) {
  check_state(dba, q);
  check_word(dba, w);
  for (Color c : w) q = dba.next(q, c);
  return q;
}

/// True iff the run of `w` from `q` avoids every Büchi transition.
inline bool is_safe(const Dba& dba, StateId q, std::span<const Color> w) {
  check_state(dba, q);
  check_word(dba, w);
  for (Color c : w) {
    if (dba.is_buchi(q, c)) return false;
    q = dba.next(q, c);
  }
  return true;
}

/// Membership of prefix . cycle^omega from `q`, by direct simulation until the
/// state at cycle boundaries repeats (at most |Q| + 1 cycle iterations).
inline bool accepts(const Dba& dba, StateId q, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw ContractError("lasso cycle must be non-empty");
  q = run_state(dba, q, lasso.prefix);
  check_word(dba, lasso.cycle);
  std::vector<int> first_seen(dba.num_states(), -1);
  std::vector<bool> iteration_hits;
  for (int iter = 0;; ++iter) {
    if (first_seen[q] >= 0) {
      for (std::size_t i = static_cast<std::size_t>(first_seen[q]); i < iteration_hits.size(); ++i)
        if (iteration_hits[i]) return true;
      return false;
    }
    first_seen[q] = iter;
    bool hit = false;
    for (Color c : lasso.cycle) {
      hit = hit || dba.is_buchi(q, c);
      q = dba.next(q, c);
    }
    iteration_hits.push_back(hit);
  }
}

inline bool accepts(const Dba& dba, const Lasso& lasso) { return accepts(dba, dba.init(), lasso); }

/// Shortest word (alphabet order breaks ties) leading from `from` to `to`, if any.
/// When `safe_only` is set only non-Büchi transitions are used.
inline std::optional<Word> shortest_word(const Dba& dba, StateId from, StateId to, bool safe_only = false) {
  check_state(dba, from);
  check_state(dba, to);
  const std::size_t n = dba.num_states();
  std::vector<std::pair<StateId, Color>> parent(n, {UINT32_MAX, 0});
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    if (q == to) break;
    for (Color c = 0; c < dba.num_colors(); ++c) {
      if (safe_only && dba.is_buchi(q, c)) continue;
      const StateId t = dba.next(q, c);
      if (seen[t]) continue;
      seen[t] = true;
      parent[t] = {q, c};
      queue.push_back(t);
    }
  }
  if (!seen[to]) return std::nullopt;
  Word w;
  for (StateId q = to; q != from; q = parent[q].first) w.push_back(parent[q].second);
  std::reverse(w.begin(), w.end());
  return w;
}

/// Shortest word reaching `q` from the initial state.
inline Word access_word(const Dba& dba, StateId q) {
  auto w = shortest_word(dba, dba.init(), q);
  if (!w) throw InvariantError("state unreachable in a pruned automaton");
  return *w;
}

/// The automaton re-rooted at q (recognizes the residual q^{-1}W).
inline Dba residual(const Dba& dba, StateId q) { return dba.rooted_at(q); }

struct NbaTransition {
  StateId src;
  Color color;
  StateId dst;
  bool buchi;

  friend auto operator<=>(const NbaTransition&, const NbaTransition&) = default;
};

/// Nondeterministic Büchi automaton with transition-based acceptance.
/// Unreachable states are pruned on construction.
class Nba {
 public:
  Nba(Alphabet alphabet, std::size_t num_states, std::vector<StateId> inits,
      std::vector<NbaTransition> transitions)
      : alphabet_(std::move(alphabet)) {
    if (inits.empty()) throw InputError("NBA needs at least one initial state");
    for (StateId q : inits)
      if (q >= num_states) throw InputError("initial state out of range");
    for (const auto& t : transitions)
      if (t.src >= num_states || t.dst >= num_states || t.color >= alphabet_.size())
        throw InputError("NBA transition out of range");
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());

    std::vector<std::size_t> offsets(num_states + 1, 0);
    for (const auto& t : transitions) ++offsets[t.src + 1];
    for (std::size_t q = 0; q < num_states; ++q) offsets[q + 1] += offsets[q];
    const auto renumber = detail::reachable_renumbering(num_states, inits, [&](StateId q, auto&& f) {
      for (std::size_t i = offsets[q]; i < offsets[q + 1]; ++i) f(transitions[i].dst);
    });

    num_states_ = 0;
    for (StateId r : renumber)
      if (r != UINT32_MAX) ++num_states_;
    for (StateId q : inits) inits_.push_back(renumber[q]);
    std::sort(inits_.begin(), inits_.end());
    inits_.erase(std::unique(inits_.begin(), inits_.end()), inits_.end());
    for (const auto& t : transitions)
      if (renumber[t.src] != UINT32_MAX)
        transitions_.push_back({renumber[t.src], t.color, renumber[t.dst], t.buchi});
    offsets_.assign(num_states_ + 1, 0);
    for (const auto& t : transitions_) ++offsets_[t.src + 1];
    for (std::size_t q = 0; q < num_states_; ++q) offsets_[q + 1] += offsets_[q];
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return num_states_; }
  const std::vector<StateId>& inits() const { return inits_; }
  const std::vector<NbaTransition>& transitions() const { return transitions_; }

  /// Outgoing transitions of q, sorted by (color, target).
  std::span<const NbaTransition> out(StateId q) const {
    return {transitions_.data() + offsets_[q], offsets_[q + 1] - offsets_[q]};
  }

 private:
  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  std::vector<StateId> inits_;
  std::vector<NbaTransition> transitions_;
  std::vector<std::size_t> offsets_;
};

inline Nba to_nba(const Dba& dba) {
  std::vector<NbaTransition> trans;
  trans.reserve(dba.transitions().size());
  for (StateId q = 0; q < dba.num_states(); ++q)
    for (Color c = 0; c < dba.num_colors(); ++c)
      trans.push_back({q, c, dba.next(q, c), dba.is_buchi(q, c)});
  return Nba(dba.alphabet(), dba.num_states(), {dba.init()}, std::move(trans));
}

/// One-state DBA for Büchi(F): colors in F label the Büchi self-loops.
inline Dba buchi_of_colors(const Alphabet& alphabet, std::span<const Color> colors) {
  std::vector<bool> buchi(alphabet.size(), false);
  for (Color c : colors) buchi.at(c) = true;
  return Dba(alphabet, 0, std::vector<StateId>(alphabet.size(), 0), std::move(buchi));
}

}  // namespace hpos
