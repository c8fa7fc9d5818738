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

#include <gtest/gtest.h>

#include "hpos/fixtures.hpp"
#include "hpos/hpos.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace hpos {
namespace {

StateId st(const Dba& d, const char* name) { return *d.find_state(name); }

/// Saturated classifier automaton and its order, when the order is total and
/// the classifier recognizes W.
std::optional<std::pair<Dba, PrefixOrder>> normalize(const Dba& d) {
  const Dba sat = saturate(d);
  const auto order = compute_prefix_order(sat);
  if (!order.total()) return std::nullopt;
  auto rec = recognizable_by_classifier(sat, order);
  if (!rec.recognizable) return std::nullopt;
  return std::make_pair(saturate(rec.candidate), quotient_order(order));
}

void expect_witness_sound(const Dba& d, const PrefixOrder& order, const ProgressWitness& w) {
  EXPECT_FALSE(w.w.empty());
  EXPECT_EQ(run_state(d, d.init(), w.w1), w.q);
  EXPECT_EQ(run_state(d, w.q, w.w), w.q_prime);
  EXPECT_TRUE(is_safe(d, w.q_prime, w.w));
  EXPECT_EQ(run_state(d, w.q_prime, w.w), w.q_prime);
  EXPECT_TRUE(order.less(w.q, w.q_prime));
  // Independent certificate for q < q_prime: inclusion one way, a separating lasso the other.
  EXPECT_TRUE(oracle::brute_state_leq(d, w.q, w.q_prime));
  EXPECT_FALSE(oracle::brute_state_leq(d, w.q_prime, w.q));
  EXPECT_FALSE(accepts(d, w.rejected_lasso()));
}

TEST(Progress, ContainsAaFails) {
  const Dba d = fixtures::contains_aa();
  const auto out = is_progress_consistent(d, compute_prefix_order(d));
  ASSERT_FALSE(out.consistent);
  const auto& w = *out.witness;
  EXPECT_EQ(w.q, st(d, "q_init"));
  EXPECT_EQ(w.q_prime, st(d, "q_a"));
  EXPECT_EQ(format_word(d.alphabet(), w.w), "ba");
  EXPECT_TRUE(w.w1.empty());
  expect_witness_sound(d, compute_prefix_order(d), w);
}

TEST(Progress, AaOrBuchiAHolds) {
  const Dba d = fixtures::aa_or_buchi_a_saturated();
  EXPECT_TRUE(is_progress_consistent(d, compute_prefix_order(d)).consistent);
}

TEST(Progress, SingleClassHoldsVacuously) {
  const Dba d = buchi_of_colors(gen::letters(2), std::vector<Color>{1});
  EXPECT_TRUE(is_progress_consistent(d, compute_prefix_order(d)).consistent);
}

TEST(Progress, ContractViolations) {
  const Dba unsat = fixtures::aa_or_buchi_a();
  EXPECT_THROW(is_progress_consistent(unsat, compute_prefix_order(unsat)), ContractError);
  const Dba partial = fixtures::two_prefixes();
  EXPECT_THROW(is_progress_consistent(partial, compute_prefix_order(partial)), ContractError);
  const Dba conj = saturate(fixtures::buchi_a_and_b());
  EXPECT_THROW(is_progress_consistent(conj, compute_prefix_order(conj)), ContractError);
}

TEST(Progress, AgreesWithBoundedDefinition) {
  // w1 < w1.w2 implies w1.w2^omega in W, checked for |w1| <= |Q| and |w2| <= 2|Q|.
  gen::Rng rng(101);
  int qualifying = 0, failing = 0;
  for (int i = 0; i < 400 && qualifying < 60; ++i) {
    const auto norm = normalize(gen::random_dba(rng, gen::uniform(rng, 1, 4), 2));
    if (!norm) continue;
    const auto& [d, order] = *norm;
    ++qualifying;
    const auto out = is_progress_consistent(d, order);
    const std::size_t n = d.num_states();
    std::optional<Lasso> violation;
    for (const auto& w1 : oracle::words(2, 0, n)) {
      const StateId q = run_state(d, d.init(), w1);
      for (const auto& w2 : oracle::words(2, 1, 2 * n)) {
        if (!order.less(q, run_state(d, q, w2))) continue;
        if (!accepts(d, Lasso{w1, w2})) {
          violation = Lasso{w1, w2};
          break;
        }
      }
      if (violation) break;
    }
    if (out.consistent) {
      EXPECT_FALSE(violation.has_value()) << format_dba(d);
    } else {
      ++failing;
      expect_witness_sound(d, order, *out.witness);
      // The witness itself lies inside the enumeration bound when short enough.
      if (out.witness->w.size() <= 2 * n) {
        EXPECT_TRUE(violation.has_value()) << format_dba(d);
      }
    }
  }
  EXPECT_GE(qualifying, 30);
  EXPECT_GT(failing, 0);
}

}  // namespace
}  // namespace hpos
