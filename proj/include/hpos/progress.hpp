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

#include <optional>

#include "hpos/congruence.hpp"
#include "hpos/language.hpp"
#include "hpos/saturation.hpp"

namespace hpos {

/// q < q_prime, delta*(q, w) = q_prime, w is an α-free cycle on q_prime, and
/// w1 reaches q from the initial state. Hence w1 < w1.w while w1.w^omega is rejected.
struct ProgressWitness {
  StateId q = 0;
  StateId q_prime = 0;
  Word w;
  Word w1;

  Lasso rejected_lasso() const { return Lasso{w1, w}; }
};

struct ProgressOutcome {
  bool consistent = true;
  std::optional<ProgressWitness> witness;
};

/// Requires a saturated automaton with one state per residual class and a total order.
inline ProgressOutcome is_progress_consistent(const Dba& dba, const PrefixOrder& order) {
  if (order.n != dba.num_states()) throw ContractError("prefix order does not match automaton");
  if (!order.total()) throw ContractError("progress check requires a total prefix order");
  if (order.num_classes != dba.num_states())
    throw ContractError("progress check requires an automaton built on its classifier");
  if (!is_saturated(dba)) throw ContractError("progress check requires a saturated automaton");

  const auto& classes = *order.class_order;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      const StateId q = order.class_members[classes[i]].front();
      const StateId q2 = order.class_members[classes[j]].front();
      if (auto w = reach_language_meets_safe_cycles(dba, q, q2))
        return {false, ProgressWitness{q, q2, std::move(*w), access_word(dba, q)}};
    }
  return {};
}

}  // namespace hpos
