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

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hpos/automaton.hpp"
#include "hpos/language.hpp"
#include "hpos/saturation.hpp"

namespace hpos {

enum class Relation { less, equivalent, greater, incomparable, unknown };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::less: return "less";
    case Relation::equivalent: return "equivalent";
    case Relation::greater: return "greater";
    case Relation::incomparable: return "incomparable";
    case Relation::unknown: return "unknown";
  }
  return "?";
}

/// Residual-inclusion preorder on the states of one automaton.
struct PrefixOrder {
  std::size_t n = 0;
  std::vector<Relation> relation;  // row-major n x n; entry(q, q2) compares res(q) with res(q2)
  /// For q not below q2: a lasso in res(q) \ res(q2).
  std::vector<std::optional<Lasso>> not_included;
  std::vector<std::uint32_t> class_of;
  std::size_t num_classes = 0;
  std::vector<std::vector<StateId>> class_members;
  /// Classes listed from least to greatest; present iff the preorder is total.
  std::optional<std::vector<std::uint32_t>> class_order;
  /// Position of each class in class_order (valid iff class_order is present).
  std::vector<std::uint32_t> class_rank;
  bool complete = true;  // false when a fast-fail run left unknown entries

  Relation at(StateId q, StateId q2) const { return relation[q * n + q2]; }
  bool leq(StateId q, StateId q2) const {
    const Relation r = at(q, q2);
    return r == Relation::less || r == Relation::equivalent;
  }
  bool less(StateId q, StateId q2) const { return at(q, q2) == Relation::less; }
  bool total() const { return class_order.has_value(); }
  /// Position of q's class in the total order.
  std::uint32_t rank(StateId q) const {
    if (!total()) throw ContractError("rank requires a total prefix order");
    return class_rank[class_of[q]];
  }
};

struct PrefixOrderOptions {
  /// Stop at the first incomparable pair; remaining entries stay unknown.
  bool fast_fail = false;
};

inline PrefixOrder compute_prefix_order(const Dba& dba, PrefixOrderOptions options = {}) {
  const std::size_t n = dba.num_states();
  PrefixOrder order;
  order.n = n;
  order.relation.assign(n * n, Relation::unknown);
  order.not_included.assign(n * n, std::nullopt);

  std::vector<Nba> pos, neg;
  pos.reserve(n);
  neg.reserve(n);
  for (StateId q = 0; q < n; ++q) {
    const Dba r = residual(dba, q);
    pos.push_back(to_nba(r));
    neg.push_back(complement_dba(r));
  }
  // included[q * n + q2] : res(q) ⊆ res(q2)
  std::vector<signed char> included(n * n, -1);
  auto query = [&](StateId q, StateId q2) {
    auto& slot = included[q * n + q2];
    if (slot < 0) {
      auto lasso = nba_empty(intersect_nba(pos[q], neg[q2]));
      slot = lasso ? 0 : 1;
      order.not_included[q * n + q2] = std::move(lasso);
    }
    return slot == 1;
  };

  for (StateId q = 0; q < n; ++q) order.relation[q * n + q] = Relation::equivalent;
  for (StateId q = 0; q < n && order.complete; ++q) {
    for (StateId q2 = q + 1; q2 < n; ++q2) {
      const bool le = query(q, q2), ge = query(q2, q);
      const Relation r = le && ge ? Relation::equivalent
                         : le     ? Relation::less
                         : ge     ? Relation::greater
                                  : Relation::incomparable;
      order.relation[q * n + q2] = r;
      order.relation[q2 * n + q] = r == Relation::less      ? Relation::greater
                                   : r == Relation::greater ? Relation::less
                                                            : r;
      if (r == Relation::incomparable && options.fast_fail) {
        order.complete = false;
        break;
      }
    }
  }

  // Classes: ids by least member; equivalence must be transitive.
  order.class_of.assign(n, UINT32_MAX);
  for (StateId q = 0; q < n; ++q) {
    if (order.class_of[q] != UINT32_MAX) continue;
    const auto cls = static_cast<std::uint32_t>(order.num_classes++);
    order.class_members.emplace_back();
    for (StateId q2 = q; q2 < n; ++q2)
      if (order.at(q, q2) == Relation::equivalent) {
        if (order.class_of[q2] != UINT32_MAX) throw InvariantError("residual equivalence is not transitive");
        order.class_of[q2] = cls;
        order.class_members.back().push_back(q2);
      }
  }
  if (order.complete) {
    for (StateId q = 0; q < n; ++q)
      for (StateId q2 = 0; q2 < n; ++q2)
        if ((order.at(q, q2) == Relation::equivalent) != (order.class_of[q] == order.class_of[q2]))
          throw InvariantError("residual equivalence is not transitive");
  }

  const bool total = order.complete &&
                     std::none_of(order.relation.begin(), order.relation.end(),
                                  [](Relation r) { return r == Relation::incomparable; });
  if (total) {
    // In a total preorder the rank of a class is the number of classes strictly below it.
    std::vector<std::uint32_t> below(order.num_classes, 0);
    for (std::uint32_t a = 0; a < order.num_classes; ++a)
      for (std::uint32_t b = 0; b < order.num_classes; ++b)
        if (order.less(order.class_members[b][0], order.class_members[a][0])) ++below[a];
    std::vector<std::uint32_t> cls(order.num_classes);
    std::iota(cls.begin(), cls.end(), 0u);
    std::sort(cls.begin(), cls.end(), [&](auto x, auto y) { return below[x] < below[y]; });
    for (std::size_t i = 0; i < cls.size(); ++i)
      if (below[cls[i]] != i) throw InvariantError("residual inclusion is not transitive");
    order.class_rank.assign(order.num_classes, 0);
    for (std::size_t i = 0; i < cls.size(); ++i) order.class_rank[cls[i]] = static_cast<std::uint32_t>(i);
    order.class_order = std::move(cls);
  }
  return order;
}

struct IncomparablePair {
  StateId q = 0;
  StateId q2 = 0;
  Lasso only_q;   // in res(q) \ res(q2)
  Lasso only_q2;  // in res(q2) \ res(q)
};

struct TotalityOutcome {
  bool total = true;
  std::optional<IncomparablePair> pair;
};

/// Totality check. Among incomparable pairs the one with the shortest pair of
/// distinguishing lassos is reported; ties go to the least (q, q2).
inline TotalityOutcome is_total(const PrefixOrder& order) {
  std::optional<IncomparablePair> best;
  std::size_t best_len = SIZE_MAX;
  for (StateId q = 0; q < order.n; ++q)
    for (StateId q2 = q + 1; q2 < order.n; ++q2) {
      if (order.at(q, q2) != Relation::incomparable) continue;
      const auto& l1 = order.not_included[q * order.n + q2];
      const auto& l2 = order.not_included[q2 * order.n + q];
      if (!l1 || !l2) throw InvariantError("incomparable pair lacks witnesses");
      const std::size_t len = l1->prefix.size() + l1->cycle.size() + l2->prefix.size() + l2->cycle.size();
      if (len < best_len) {
        best_len = len;
        best = IncomparablePair{q, q2, *l1, *l2};
      }
    }
  if (best) return {false, best};
  if (!order.total()) throw ContractError("is_total on an incomplete prefix order");
  return {};
}

/// Quotient structure of an automaton by residual equivalence.
struct Classifier {
  Alphabet alphabet;
  std::size_t num_classes = 0;
  std::uint32_t init = 0;
  std::vector<std::uint32_t> delta;  // class * |C| + color
  std::vector<std::uint32_t> class_of;
  std::vector<std::string> names;  // name of each class's least member

  std::uint32_t next(std::uint32_t cls, Color c) const { return delta[cls * alphabet.size() + c]; }

  /// The classifier structure equipped with acceptance `buchi` (classes x C).
  Dba as_dba(std::vector<bool> buchi) const { return Dba(alphabet, init, delta, std::move(buchi), names); }
};

inline Classifier build_classifier(const Dba& dba, const PrefixOrder& order) {
  if (order.n != dba.num_states()) throw ContractError("prefix order does not match automaton");
  const std::size_t k = dba.num_colors();
  Classifier cl;
  cl.alphabet = dba.alphabet();
  cl.num_classes = order.num_classes;
  cl.class_of = order.class_of;
  cl.init = order.class_of[dba.init()];
  cl.delta.assign(cl.num_classes * k, UINT32_MAX);
  for (const auto& members : order.class_members) cl.names.push_back(dba.state_name(members.front()));
  for (StateId q = 0; q < dba.num_states(); ++q)
    for (Color c = 0; c < k; ++c) {
      auto& slot = cl.delta[order.class_of[q] * k + c];
      const std::uint32_t t = order.class_of[dba.next(q, c)];
      if (slot != UINT32_MAX && slot != t) throw InvariantError("residual equivalence is not a right congruence");
      slot = t;
    }
  return cl;
}

/// ([q], c) is accepting iff (q2, c) is Büchi for every q2 in [q].
inline std::vector<bool> candidate_acceptance(const Dba& saturated, const Classifier& cl) {
  if (!is_saturated(saturated)) throw ContractError("candidate_acceptance requires a saturated automaton");
  const std::size_t k = saturated.num_colors();
  std::vector<bool> buchi(cl.num_classes * k, true);
  for (StateId q = 0; q < saturated.num_states(); ++q)
    for (Color c = 0; c < k; ++c)
      if (!saturated.is_buchi(q, c)) buchi[cl.class_of[q] * k + c] = false;
  return buchi;
}

struct RecognizabilityOutcome {
  bool recognizable = false;
  Dba candidate;                  // classifier structure with the candidate acceptance
  std::optional<Lasso> witness;   // in W but rejected by the candidate
};

/// Checks whether the candidate acceptance on the classifier recognizes W.
/// `saturated` must be saturated and `order` its prefix order.
inline RecognizabilityOutcome recognizable_by_classifier(const Dba& saturated, const PrefixOrder& order) {
  const Classifier cl = build_classifier(saturated, order);
  RecognizabilityOutcome out;
  out.candidate = cl.as_dba(candidate_acceptance(saturated, cl));
  const auto eq = dba_equivalent(saturated, out.candidate);
  out.recognizable = eq.equivalent;
  if (!eq.equivalent) {
    if (eq.direction != EquivalenceOutcome::Direction::left_only)
      throw InvariantError("candidate acceptance accepts a word outside W");
    out.witness = eq.witness;
  }
  return out;
}

inline RecognizabilityOutcome recognizable_by_classifier(const Dba& dba) {
  const Dba sat = saturate(dba);
  return recognizable_by_classifier(sat, compute_prefix_order(sat));
}

}  // namespace hpos
