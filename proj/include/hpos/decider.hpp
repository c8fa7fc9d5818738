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

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hpos/congruence.hpp"
#include "hpos/games.hpp"
#include "hpos/progress.hpp"
#include "hpos/saturation.hpp"

namespace hpos {

enum class Condition { total_preorder, classifier_recognizability, progress_consistency };

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::total_preorder: return "total_preorder";
    case Condition::classifier_recognizability: return "classifier_recognizability";
    case Condition::progress_consistency: return "progress_consistency";
  }
  return "?";
}

/// A word in W rejected by the candidate automaton on the classifier.
struct ClassifierMismatch {
  Lasso lasso;
  Dba candidate;
};

/// W = Büchi(F) for a prefix-independent YES instance.
struct BuchiForm {
  std::vector<Color> colors;
};

using Evidence = std::variant<std::monostate, IncomparablePair, ClassifierMismatch, ProgressWitness, BuchiForm>;

struct StageTiming {
  std::string stage;
  double ms = 0;
};

struct Verdict {
  bool half_positional = false;
  std::optional<Condition> failed;
  Evidence evidence;
  std::vector<StageTiming> timings;

  Dba saturated;                 // the saturated input; pair evidence refers to its states
  PrefixOrder order;             // prefix order of `saturated`
  std::optional<Dba> normalized; // saturated classifier automaton, once recognizability holds
  std::optional<PrefixOrder> normalized_order;  // progress evidence refers to its states
};

struct DecideOptions {
  bool fast_fail = false;
};

/// Order on the classes of `order`, as the prefix order of the classifier automaton.
inline PrefixOrder quotient_order(const PrefixOrder& order) {
  if (!order.total()) throw ContractError("quotient_order requires a total order");
  const std::size_t k = order.num_classes;
  PrefixOrder out;
  out.n = k;
  out.relation.resize(k * k);
  out.not_included.resize(k * k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) {
      const StateId qa = order.class_members[a].front(), qb = order.class_members[b].front();
      out.relation[a * k + b] = order.at(qa, qb);
      out.not_included[a * k + b] = order.not_included[qa * order.n + qb];
    }
  out.class_of.resize(k);
  for (std::uint32_t a = 0; a < k; ++a) {
    out.class_of[a] = a;
    out.class_members.push_back({a});
  }
  out.num_classes = k;
  out.class_order = order.class_order;
  out.class_rank = order.class_rank;
  return out;
}

namespace detail {

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink) {}
  void lap(std::string stage) {
    const auto now = std::chrono::steady_clock::now();
    sink_.push_back({std::move(stage), std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Half-positionality: total prefix order, then recognizability on the
/// classifier, then progress consistency on the normalized automaton.
inline Verdict decide(const Dba& dba, DecideOptions options = {}) {
  Verdict v;
  detail::Stopwatch watch(v.timings);
  v.saturated = saturate(dba);
  watch.lap("saturate");
  v.order = compute_prefix_order(v.saturated, {options.fast_fail});
  watch.lap("prefix_order");

  if (auto tot = is_total(v.order); !tot.total) {
    v.failed = Condition::total_preorder;
    v.evidence = *tot.pair;
    return v;
  }

  auto rec = recognizable_by_classifier(v.saturated, v.order);
  watch.lap("classifier");
  if (!rec.recognizable) {
    v.failed = Condition::classifier_recognizability;
    v.evidence = ClassifierMismatch{*rec.witness, std::move(rec.candidate)};
    return v;
  }
  v.normalized = saturate(rec.candidate);
  v.normalized_order = quotient_order(v.order);

  auto prog = is_progress_consistent(*v.normalized, *v.normalized_order);
  watch.lap("progress");
  if (!prog.consistent) {
    v.failed = Condition::progress_consistency;
    v.evidence = *prog.witness;
    return v;
  }
  v.half_positional = true;
  if (v.normalized->num_states() == 1) {
    BuchiForm f;
    for (Color c = 0; c < v.normalized->num_colors(); ++c)
      if (v.normalized->is_buchi(0, c)) f.colors.push_back(c);
    v.evidence = std::move(f);
  }
  return v;
}

/// For a prefix-independent objective: the set F with W = Büchi(F), if any.
inline std::optional<std::vector<Color>> decide_prefix_independent(const Dba& dba) {
  const Dba sat = saturate(dba);
  const PrefixOrder order = compute_prefix_order(sat);
  if (order.num_classes != 1) throw ContractError("decide_prefix_independent requires a prefix-independent objective");
  auto rec = recognizable_by_classifier(sat, order);
  if (!rec.recognizable) return std::nullopt;
  std::vector<Color> f;
  for (Color c = 0; c < sat.num_colors(); ++c)
    if (rec.candidate.is_buchi(0, c)) f.push_back(c);
  return f;
}

// ---------------------------------------------------------------------------
// Counterexample arenas

enum class ConstructionTag { preorder_fork, progress_loop, searched };

inline const char* to_string(ConstructionTag t) {
  switch (t) {
    case ConstructionTag::preorder_fork: return "preorder_fork";
    case ConstructionTag::progress_loop: return "progress_loop";
    case ConstructionTag::searched: return "searched";
  }
  return "?";
}

/// One-player arena where P1 wins from `initial` but no positional strategy is optimal.
struct CounterexampleArena {
  Arena arena;
  VertexId initial = 0;
  ConstructionTag tag = ConstructionTag::searched;
};

struct CounterexampleResult {
  std::optional<CounterexampleArena> arena;
  std::string diagnostic;       // why nothing was found, when arena is empty
  std::uint64_t candidates = 0; // arenas examined
};

struct SearchOptions {
  std::size_t max_word_length = 0;  // 0: 2|Q|
  std::size_t pool_size = 24;       // cycle words kept per core vertex
  std::size_t max_cycles = 3;       // cycles offered at the core vertex
  std::uint64_t max_candidates = 20000;
  std::uint64_t strategy_budget = kDefaultStrategyBudget;
};

/// Builds one-player arenas whose multi-color edges are chains of fresh vertices.
class ArenaBuilder {
 public:
  explicit ArenaBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  VertexId vertex(std::string name) {
    names_.push_back(std::move(name));
    return static_cast<VertexId>(names_.size() - 1);
  }

  /// Edge chain from `from` to `to` spelling `w` (non-empty).
  void path(VertexId from, std::span<const Color> w, VertexId to) {
    if (w.empty()) throw ContractError("path needs a non-empty word");
    VertexId cur = from;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const VertexId mid = vertex("m" + std::to_string(++chain_));
      edges_.push_back({cur, w[i], mid});
      cur = mid;
    }
    edges_.push_back({cur, w.back(), to});
  }

  /// A vertex reached from `from` by `w`; `from` itself when w is empty.
  VertexId after(VertexId from, std::span<const Color> w, std::string name) {
    if (w.empty()) return from;
    const VertexId v = vertex(std::move(name));
    path(from, w, v);
    return v;
  }

  /// A vertex from which `w` leads to `to`; `to` itself when w is empty.
  VertexId before(std::span<const Color> w, VertexId to, std::string name) {
    if (w.empty()) return to;
    const VertexId v = vertex(std::move(name));
    path(v, w, to);
    return v;
  }

  Arena build() const {
    return Arena(alphabet_, names_, std::vector<Player>(names_.size(), Player::P1), edges_);
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<ArenaEdge> edges_;
  std::size_t chain_ = 0;
};

/// Oracle check: P1 wins from `initial` and no positional strategy is optimal.
inline bool certify_counterexample(const Arena& arena, VertexId initial, const Dba& dba,
                                   std::uint64_t budget = kDefaultStrategyBudget) {
  const auto region = winning_region(arena, dba);
  if (!region.at(initial)) return false;
  return !exists_positional_optimal(arena, dba, budget).has_value();
}

/// Two access words meeting at a fork whose branches end in the two distinguishing lassos.
inline CounterexampleArena preorder_arena(const Dba& dba, const IncomparablePair& pair) {
  ArenaBuilder b(dba.alphabet());
  const VertexId v3 = b.vertex("v3");
  const VertexId v1 = b.before(access_word(dba, pair.q), v3, "v1");
  b.before(access_word(dba, pair.q2), v3, "v2");
  const VertexId v4 = b.after(v3, pair.only_q.prefix, "v4");
  b.path(v4, pair.only_q.cycle, v4);
  const VertexId v5 = b.after(v3, pair.only_q2.prefix, "v5");
  b.path(v5, pair.only_q2.cycle, v5);
  return {b.build(), v1, ConstructionTag::preorder_fork};
}

/// v1 -w1-> v2, cycle w2 on v2, exit v2 -x-> v3 with cycle y on v3.
inline CounterexampleArena progress_arena(const Dba& dba, const Word& w1, const Word& w2, const Lasso& exit) {
  ArenaBuilder b(dba.alphabet());
  const VertexId v2 = b.vertex("v2");
  const VertexId v1 = b.before(w1, v2, "v1");
  b.path(v2, w2, v2);
  const VertexId v3 = b.after(v2, exit.prefix, "v3");
  b.path(v3, exit.cycle, v3);
  return {b.build(), v1, ConstructionTag::progress_loop};
}

namespace detail {

inline bool primitive(const Word& w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (w.size() % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < w.size() && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return false;
  }
  return true;
}

/// Calls f(w) for non-empty words in shortlex order up to `max_len`; stops when f returns false.
template <typename F>
void for_each_word(std::size_t num_colors, std::size_t max_len, F&& f) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      if (!f(static_cast<const Word&>(w))) return;
      std::size_t i = len;
      while (i > 0 && ++w[i - 1] == num_colors) w[--i] = 0;
      if (i == 0) break;
    }
  }
}

}  // namespace detail

/// Bounded search for a counterexample arena, used when recognizability on the
/// classifier fails.
///
/// Family 1: a core vertex reached by the access word u of a state q, offering
/// 2 or 3 cycles z_i that each return to q's class and are individually losing
/// (u.z_i^omega not in W).
/// Family 2: a progress-shaped arena from words w1, w2 with w1 < w1.w2 and
/// w1.w2^omega not in W.
/// Every candidate is checked by the game oracle.
inline CounterexampleResult search_counterexample(const Dba& sat, const PrefixOrder& order,
                                                  const SearchOptions& opt = {}) {
  CounterexampleResult res;
  const std::size_t n = sat.num_states();
  const std::size_t max_len = opt.max_word_length ? opt.max_word_length : 2 * n;
  constexpr std::size_t kWordScanCap = 1 << 14;

  auto try_candidate = [&](CounterexampleArena cand) {
    ++res.candidates;
    if (certify_counterexample(cand.arena, cand.initial, sat, opt.strategy_budget)) {
      cand.tag = ConstructionTag::searched;
      res.arena = std::move(cand);
      return true;
    }
    return false;
  };
  auto out_of_budget = [&] { return res.candidates >= opt.max_candidates; };

  // Family 1.
  for (StateId q = 0; q < n && !out_of_budget(); ++q) {
    const Word u = access_word(sat, q);
    std::vector<Word> pool;
    std::size_t scanned = 0;
    detail::for_each_word(sat.num_colors(), max_len, [&](const Word& z) {
      if (++scanned > kWordScanCap || pool.size() >= opt.pool_size) return false;
      if (detail::primitive(z) && order.class_of[run_state(sat, q, z)] == order.class_of[q] &&
          !accepts(sat, q, Lasso{{}, z}))
        pool.push_back(z);
      return true;
    });
    std::vector<std::size_t> pick;
    // Subsets of the pool of size 2..max_cycles, in lexicographic order.
    for (std::size_t k = 2; k <= opt.max_cycles && k <= pool.size(); ++k) {
      pick.resize(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        if (out_of_budget()) break;
        ArenaBuilder b(sat.alphabet());
        const VertexId core = b.vertex("v2");
        const VertexId start = b.before(u, core, "v1");
        for (auto i : pick) b.path(core, pool[i], core);
        if (try_candidate({b.build(), start, ConstructionTag::searched})) return res;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == pool.size() - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }

  // Family 2.
  for (StateId q = 0; q < n && !out_of_budget(); ++q) {
    const Word w1 = access_word(sat, q);
    std::size_t scanned = 0;
    bool found = false;
    detail::for_each_word(sat.num_colors(), max_len, [&](const Word& w2) {
      if (++scanned > kWordScanCap || out_of_budget()) return false;
      const StateId q2 = run_state(sat, q, w2);
      if (!order.less(q, q2) || accepts(sat, q, Lasso{{}, w2})) return true;
      const auto& exit = order.not_included[q2 * n + q];
      if (!exit) throw InvariantError("strict order pair lacks a witness");
      if (try_candidate(progress_arena(sat, w1, w2, *exit))) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) return res;
  }

  res.diagnostic = out_of_budget() ? "no arena found within bounds (candidate budget exhausted after " +
                                         std::to_string(res.candidates) + " arenas)"
                                   : "no arena found within bounds (" + std::to_string(res.candidates) +
                                         " arenas examined, word length <= " + std::to_string(max_len) + ")";
  return res;
}

/// Counterexample arena for a negative verdict, checked by the game oracle.
inline CounterexampleResult counterexample_arena(const Verdict& verdict, const SearchOptions& opt = {}) {
  if (verdict.half_positional || !verdict.failed)
    throw ContractError("counterexample_arena requires a negative verdict");
  CounterexampleResult res;
  CounterexampleArena cand;
  switch (*verdict.failed) {
    case Condition::total_preorder:
      cand = preorder_arena(verdict.saturated, std::get<IncomparablePair>(verdict.evidence));
      break;
    case Condition::progress_consistency: {
      const auto& w = std::get<ProgressWitness>(verdict.evidence);
      const auto& ord = *verdict.normalized_order;
      const auto& exit = ord.not_included[w.q_prime * ord.n + w.q];
      if (!exit) throw InvariantError("strict order pair lacks a witness");
      cand = progress_arena(*verdict.normalized, w.w1, w.w, *exit);
      break;
    }
    case Condition::classifier_recognizability:
      return search_counterexample(verdict.saturated, verdict.order, opt);
  }
  res.candidates = 1;
  if (!certify_counterexample(cand.arena, cand.initial, verdict.saturated, opt.strategy_budget))
    throw InvariantError(std::string("constructed ") + to_string(cand.tag) + " arena failed the game oracle");
  res.arena = std::move(cand);
  return res;
}

}  // namespace hpos
