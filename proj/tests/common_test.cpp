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

#include "hpos/common.hpp"
#include "hpos/scc.hpp"

namespace hpos {
namespace {

TEST(Alphabet, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(Alphabet(std::vector<std::string>{}), InputError);
  EXPECT_THROW(Alphabet({"a", "a"}), InputError);
  EXPECT_THROW(Alphabet({"a", ""}), InputError);
  Alphabet ab({"a", "b"});
  EXPECT_EQ(ab.size(), 2u);
  EXPECT_EQ(ab.index_of("b"), 1u);
  EXPECT_FALSE(ab.find("c").has_value());
  EXPECT_THROW(ab.index_of("c"), InputError);
}

TEST(Words, CompactAndDottedFormats) {
  Alphabet ab({"a", "b"});
  EXPECT_EQ(format_word(ab, Word{0, 1, 1}), "abb");
  EXPECT_EQ(parse_word(ab, "abb"), (Word{0, 1, 1}));
  EXPECT_TRUE(parse_word(ab, "").empty());

  Alphabet long_names({"req", "grant"});
  EXPECT_FALSE(long_names.compact());
  EXPECT_EQ(format_word(long_names, Word{0, 1}), "req.grant");
  EXPECT_EQ(parse_word(long_names, "req.grant"), (Word{0, 1}));
  EXPECT_THROW(parse_word(ab, "abc"), InputError);
}

TEST(Lasso, ParseFormatRoundTrip) {
  Alphabet ab({"a", "b"});
  const Lasso l = parse_lasso(ab, "ab|ba");
  EXPECT_EQ(l.prefix, (Word{0, 1}));
  EXPECT_EQ(l.cycle, (Word{1, 0}));
  EXPECT_EQ(format_lasso(ab, l), "ab|ba");
  EXPECT_THROW(parse_lasso(ab, "ab|"), InputError);
  EXPECT_THROW(parse_lasso(ab, "ab"), InputError);
}

TEST(Lasso, CanonicalFormIsShortest) {
  // a.(ba)^omega = (ab)^omega
  EXPECT_EQ(canonical({{0}, {1, 0}}), (Lasso{{}, {0, 1}}));
  // (abab)^omega = (ab)^omega
  EXPECT_EQ(canonical({{}, {0, 1, 0, 1}}), (Lasso{{}, {0, 1}}));
  // aa.a^omega = a^omega
  EXPECT_EQ(canonical({{0, 0}, {0}}), (Lasso{{}, {0}}));
  // b.a^omega stays
  EXPECT_EQ(canonical({{1}, {0}}), (Lasso{{1}, {0}}));
  EXPECT_THROW(canonical({{0}, {}}), ContractError);
}

TEST(Scc, TopologicalNumbering) {
  // 0 -> 1 <-> 2 -> 3, 3 -> 3
  const std::vector<std::vector<std::uint32_t>> adj{{1}, {2}, {1, 3}, {3}};
  const auto scc = strongly_connected_components(adj.size(), [&](std::uint32_t v, auto&& f) {
    for (auto w : adj[v]) f(w);
  });
  EXPECT_EQ(scc.count, 3u);
  EXPECT_EQ(scc.component[1], scc.component[2]);
  EXPECT_LT(scc.component[0], scc.component[1]);
  EXPECT_LT(scc.component[2], scc.component[3]);
}

TEST(Scc, DeepPathDoesNotRecurse) {
  const std::size_t n = 200000;
  const auto scc = strongly_connected_components(n, [&](std::uint32_t v, auto&& f) {
    if (v + 1 < n) f(v + 1);
  });
  EXPECT_EQ(scc.count, n);
  EXPECT_EQ(scc.component[0], 0u);
  EXPECT_EQ(scc.component[n - 1], n - 1);
}

}  // namespace
}  // namespace hpos
