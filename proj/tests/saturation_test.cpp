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
Word w(const Dba& d, const char* text) { return parse_word(d.alphabet(), text); }

using EdgeList = std::vector<std::pair<StateId, Color>>;

TEST(AlphaFreeComponents, MinimalAaOrBuchiA) {
  const Dba d = fixtures::aa_or_buchi_a();
  const auto comps = alpha_free_components(d);
  const StateId qi = st(d, "q_init"), qa = st(d, "q_a"), qaa = st(d, "q_aa");
  EXPECT_EQ(comps.count, 3u);
  EXPECT_EQ(comps.edges[comps.component[qi]], (EdgeList{{qi, 1}}));
  EXPECT_TRUE(comps.edges[comps.component[qa]].empty());
  EXPECT_TRUE(comps.edges[comps.component[qaa]].empty());
}

TEST(AlphaFreeComponents, ContainsAa) {
  const Dba d = fixtures::contains_aa();
  const auto comps = alpha_free_components(d);
  const StateId qi = st(d, "q_init"), qa = st(d, "q_a"), qaa = st(d, "q_aa");
  EXPECT_EQ(comps.count, 2u);
  EXPECT_EQ(comps.component[qi], comps.component[qa]);
  EXPECT_EQ(comps.edges[comps.component[qi]], (EdgeList{{qi, 0}, {qi, 1}, {qa, 1}}));
  EXPECT_TRUE(comps.edges[comps.component[qaa]].empty());
}

TEST(AlphaFreeComponents, AllBuchiGivesSingletons) {
  Dba d(gen::letters(2), 0, {1, 0, 0, 1}, {true, true, true, true});
  const auto comps = alpha_free_components(d);
  EXPECT_EQ(comps.count, 2u);
  for (const auto& e : comps.edges) EXPECT_TRUE(e.empty());
}

TEST(Saturate, MinimalAcceptanceBecomesMaximal) {
  const Dba sat = saturate(fixtures::aa_or_buchi_a());
  EXPECT_EQ(sat, fixtures::aa_or_buchi_a_saturated());
  const StateId qi = st(sat, "q_init");
  for (StateId q = 0; q < sat.num_states(); ++q)
    for (Color c = 0; c < 2; ++c) EXPECT_EQ(sat.is_buchi(q, c), !(q == qi && c == 1));
}

TEST(Saturate, AlreadySaturatedIsUnchanged) {
  EXPECT_EQ(saturate(fixtures::contains_aa()), fixtures::contains_aa());
  const Dba buchi_a = buchi_of_colors(gen::letters(2), std::vector<Color>{0});
  EXPECT_EQ(saturate(buchi_a), buchi_a);
}

TEST(Saturate, RandomPropertiesHold) {
  gen::Rng rng(5);
  const auto lassos = oracle::lassos(3, 4, 4);
  for (int i = 0; i < 40; ++i) {
    const std::size_t k = gen::uniform(rng, 1, 3);
    const Dba d = gen::random_dba(rng, gen::uniform(rng, 1, 5), k);
    const Dba sat = saturate(d);
    EXPECT_TRUE(is_saturated(sat));
    EXPECT_EQ(saturate(sat), sat);
    for (std::size_t s = 0; s < d.buchi().size(); ++s)
      if (d.buchi()[s]) {
        EXPECT_TRUE(sat.buchi()[s]);
      }
    for (const auto& l : lassos) {
      if (std::any_of(l.prefix.begin(), l.prefix.end(), [&](Color c) { return c >= k; }) ||
          std::any_of(l.cycle.begin(), l.cycle.end(), [&](Color c) { return c >= k; }))
        continue;
      ASSERT_EQ(accepts(d, l), accepts(sat, l)) << format_dba(d) << format_lasso(d.alphabet(), l);
    }
  }
}

TEST(Saturate, MaximalOnRandomAutomata) {
  // Making any remaining non-Büchi transition Büchi changes the language,
  // visible on a lasso of size at most |Q|.
  gen::Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    const Dba sat = saturate(gen::random_dba(rng, gen::uniform(rng, 1, 4), 2));
    const auto lassos = oracle::lassos(2, sat.num_states(), sat.num_states());
    for (std::size_t s = 0; s < sat.buchi().size(); ++s) {
      if (sat.buchi()[s]) continue;
      auto buchi = sat.buchi();
      buchi[s] = true;
      const Dba flipped = sat.with_buchi(buchi);
      const bool differs = std::any_of(lassos.begin(), lassos.end(),
                                       [&](const Lasso& l) { return accepts(sat, l) != accepts(flipped, l); });
      EXPECT_TRUE(differs) << format_dba(sat) << "transition " << s;
    }
  }
}

TEST(Saturate, SafeCongruence) {
  gen::Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const Dba sat = saturate(gen::random_dba(rng, gen::uniform(rng, 2, 5), 2));
    const auto ws = oracle::words(2, 1, 4);
    for (StateId q = 0; q < sat.num_states(); ++q)
      for (StateId q2 = 0; q2 < sat.num_states(); ++q2) {
        if (!oracle::same_safe_words(sat, q, q2)) continue;
        for (const auto& x : ws) {
          if (!is_safe(sat, q, x)) continue;
          ASSERT_TRUE(is_safe(sat, q2, x));
          EXPECT_TRUE(oracle::same_safe_words(sat, run_state(sat, q, x), run_state(sat, q2, x)));
        }
      }
  }
}

TEST(ExtendToSafeCycle, Examples) {
  const Dba d = fixtures::contains_aa();
  EXPECT_EQ(extend_to_safe_cycle(d, st(d, "q_init"), w(d, "b")), Word{});
  EXPECT_EQ(extend_to_safe_cycle(d, st(d, "q_init"), w(d, "a")), w(d, "b"));
  EXPECT_EQ(extend_to_safe_cycle(d, st(d, "q_a"), w(d, "ba")), Word{});
}

TEST(ExtendToSafeCycle, ContractViolations) {
  EXPECT_THROW(extend_to_safe_cycle(fixtures::aa_or_buchi_a(), 0, Word{1}), ContractError);
  const Dba d = fixtures::contains_aa();
  EXPECT_THROW(extend_to_safe_cycle(d, st(d, "q_a"), w(d, "a")), ContractError);
}

TEST(ExtendToSafeCycle, ReplayOnRandomAutomata) {
  gen::Rng rng(29);
  for (int i = 0; i < 40; ++i) {
    const Dba sat = saturate(gen::random_dba(rng, gen::uniform(rng, 1, 5), 2));
    for (StateId q = 0; q < sat.num_states(); ++q)
      for (const auto& x : oracle::words(2, 0, 4)) {
        if (!is_safe(sat, q, x)) continue;
        const Word tail = extend_to_safe_cycle(sat, q, x);
        const Word full = concat(x, tail);
        EXPECT_TRUE(is_safe(sat, q, full));
        EXPECT_EQ(run_state(sat, q, full), q);
      }
  }
}

}  // namespace
}  // namespace hpos
