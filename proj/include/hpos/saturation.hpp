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
#include <utility>
#include <vector>

#include "hpos/automaton.hpp"
#include "hpos/scc.hpp"

namespace hpos {

/// SCCs of the graph (Q, non-Büchi transitions).
struct AlphaFreeComponents {
  std::vector<std::uint32_t> component;  // state -> component id (topological order)
  std::size_t count = 0;
  std::vector<std::vector<StateId>> members;
  /// Non-Büchi transitions (q, c) internal to each component, sorted.
  std::vector<std::vector<std::pair<StateId, Color>>> edges;

  bool internal(const Dba& dba, StateId q, Color c) const {
    return !dba.is_buchi(q, c) && component[q] == component[dba.next(q, c)];
  }
};

inline AlphaFreeComponents alpha_free_components(const Dba& dba) {
  const auto scc = strongly_connected_components(dba.num_states(), [&](StateId q, auto&& f) {
    for (Color c = 0; c < dba.num_colors(); ++c)
      if (!dba.is_buchi(q, c)) f(dba.next(q, c));
  });
  AlphaFreeComponents out;
  out.component = scc.component;
  out.count = scc.count;
  out.members.resize(scc.count);
  out.edges.resize(scc.count);
  for (StateId q = 0; q < dba.num_states(); ++q) {
    out.members[scc.component[q]].push_back(q);
    for (Color c = 0; c < dba.num_colors(); ++c)
      if (out.internal(dba, q, c)) out.edges[scc.component[q]].emplace_back(q, c);
  }
  return out;
}

/// Enlarges the Büchi set to every transition not internal to an α-free component.
inline Dba saturate(const Dba& dba) {
  const auto comps = alpha_free_components(dba);
  std::vector<bool> buchi(dba.buchi().size(), true);
  for (const auto& edges : comps.edges)
    for (auto [q, c] : edges) buchi[q * dba.num_colors() + c] = false;
  return dba.with_buchi(std::move(buchi));
}

inline bool is_saturated(const Dba& dba) {
  const auto comps = alpha_free_components(dba);
  for (StateId q = 0; q < dba.num_states(); ++q)
    for (Color c = 0; c < dba.num_colors(); ++c)
      if (!dba.is_buchi(q, c) && !comps.internal(dba, q, c)) return false;
  return true;
}

/// Shortest w' such that w.w' is an α-free cycle on q.
inline Word extend_to_safe_cycle(const Dba& dba, StateId q, std::span<const Color> w) {
  if (!is_saturated(dba)) throw ContractError("extend_to_safe_cycle requires a saturated automaton");
  if (!is_safe(dba, q, w)) throw ContractError("extend_to_safe_cycle requires an α-free word");
  const StateId p = run_state(dba, q, w);
  auto back = shortest_word(dba, p, q, /*safe_only=*/true);
  if (!back) throw InvariantError("α-free word leaves its component in a saturated automaton");
  return *back;
}

}  // namespace hpos
