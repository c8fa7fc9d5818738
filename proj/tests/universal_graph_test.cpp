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

namespace hpos {
namespace {

struct Setup {
  Dba dba;
  PrefixOrder order;
};

Setup aa_or_buchi_a() {
  Dba d = fixtures::aa_or_buchi_a_saturated();
  auto order = compute_prefix_order(d);
  return {std::move(d), std::move(order)};
}

Setup ladder() {
  Dba d = saturate(fixtures::ladder());
  auto order = compute_prefix_order(d);
  return {std::move(d), std::move(order)};
}

std::vector<std::string> image_names(const MorphismResult& r, const Setup& s) {
  const MonotoneGraph g = build_universal_graph(s.dba, s.order, r.theta);
  std::vector<std::string> out;
  for (VertexId v : r.morphism->map) out.push_back(g.name(v));
  return out;
}

TEST(UniversalGraph, DecreasingEdgesOnlyOnInitialB) {
  const auto s = aa_or_buchi_a();
  const auto g = build_universal_graph(s.dba, s.order, 3);
  EXPECT_EQ(g.num_vertices(), 10u);
  const StateId qi = *s.dba.find_state("q_init");
  for (const auto& e : g.edges()) {
    if (g.is_top(e.src) || g.is_top(e.dst)) continue;
    // Same-state target with every level allowed, except for the decreasing b-edges of q_init.
    const StateId q = g.state_of(e.src), t = s.dba.next(q, e.color);
    if (g.state_of(e.dst) != t) continue;
    if (q == qi && e.color == 1) {
      EXPECT_LT(g.level_of(e.dst), g.level_of(e.src));
    }
  }
  const VertexId u = g.vertex(qi, 2);
  EXPECT_TRUE(g.has_edge(u, 1, g.vertex(qi, 1)));
  EXPECT_TRUE(g.has_edge(u, 1, g.vertex(qi, 0)));
  EXPECT_FALSE(g.has_edge(u, 1, g.vertex(qi, 2)));
  EXPECT_FALSE(g.has_edge(g.vertex(qi, 0), 1, g.vertex(qi, 0)));
  // a from q_init reaches q_a at any level and all of the q_init block.
  for (std::size_t l = 0; l < 3; ++l) {
    EXPECT_TRUE(g.has_edge(g.vertex(qi, 0), 0, g.vertex(*s.dba.find_state("q_a"), l)));
    EXPECT_TRUE(g.has_edge(g.vertex(qi, 0), 0, g.vertex(qi, l)));
    EXPECT_FALSE(g.has_edge(g.vertex(qi, 0), 0, g.vertex(*s.dba.find_state("q_aa"), l)));
  }
  EXPECT_TRUE(check_completely_well_monotonic(g));
}

TEST(UniversalGraph, OneStateAllBuchi) {
  const Dba d = buchi_of_colors(gen::letters(2), std::vector<Color>{0, 1});
  const auto g = build_universal_graph(d, compute_prefix_order(d), 1);
  EXPECT_EQ(g.num_vertices(), 2u);
  // Both loops on (q,0) plus every edge out of top; nothing enters top from below.
  EXPECT_EQ(g.edges().size(), 6u);
  EXPECT_TRUE(check_completely_well_monotonic(g));
}

TEST(UniversalGraph, HypothesesAreChecked) {
  const Dba unsat = fixtures::aa_or_buchi_a();
  EXPECT_THROW(build_universal_graph(unsat, compute_prefix_order(unsat), 3), ContractError);
  const Dba prog = fixtures::contains_aa();
  EXPECT_THROW(build_universal_graph(prog, compute_prefix_order(prog), 3), ContractError);
  const Dba fork = fixtures::two_prefixes();
  EXPECT_THROW(build_universal_graph(fork, compute_prefix_order(fork), 3), ContractError);
  const auto s = aa_or_buchi_a();
  EXPECT_THROW(build_universal_graph(s.dba, s.order, 0), ContractError);
}

TEST(UniversalGraph, MaterializationCap) {
  const auto s = aa_or_buchi_a();
  const auto g = build_universal_graph(s.dba, s.order, 80);
  EXPECT_THROW(g.edges(), ResourceError);
  EXPECT_NO_THROW(g.edges(80));
}

TEST(UniversalGraph, MonotonicityCheckerDetectsRemovedEdge) {
  const auto s = aa_or_buchi_a();
  auto g = build_universal_graph(s.dba, s.order, 3);
  const StateId qi = *s.dba.find_state("q_init");
  g.remove_edge(g.vertex(qi, 2), 1, g.vertex(qi, 0));
  EXPECT_FALSE(check_completely_well_monotonic(g));
}

TEST(UniversalGraph, LadderIsWellMonotonic) {
  const auto s = ladder();
  EXPECT_TRUE(check_completely_well_monotonic(build_universal_graph(s.dba, s.order, 6)));
}

TEST(VertexSatisfies, Examples) {
  const auto s = aa_or_buchi_a();
  const auto g = build_universal_graph(s.dba, s.order, 3);
  EXPECT_FALSE(vertex_satisfies(g, g.top(), s.dba, s.dba.init()));
  const StateId qaa = *s.dba.find_state("q_aa");
  EXPECT_TRUE(vertex_satisfies(g, g.vertex(qaa, 0), s.dba, qaa));
  for (StateId q = 0; q < s.dba.num_states(); ++q)
    for (std::size_t l = 0; l < 3; ++l) EXPECT_TRUE(vertex_satisfies(g, g.vertex(q, l), s.dba, q));
}

TEST(Morphism, ChainGraph) {
  const auto s = aa_or_buchi_a();
  const auto r = compute_morphism(fixtures::chain_graph(), s.dba, s.order);
  ASSERT_TRUE(r.morphism.has_value()) << r.diagnostic;
  EXPECT_EQ(image_names(r, s),
            (std::vector<std::string>{"(q_init,2)", "(q_init,1)", "(q_init,0)", "(q_a,0)", "(q_aa,0)"}));
  EXPECT_LT(r.stabilization, r.theta);
}

TEST(Morphism, LadderGraph) {
  const auto s = ladder();
  const auto r = compute_morphism(fixtures::ladder_graph(), s.dba, s.order);
  ASSERT_TRUE(r.morphism.has_value()) << r.diagnostic;
  EXPECT_EQ(r.theta, 12u);
  EXPECT_EQ(image_names(r, s), (std::vector<std::string>{"(q1,4)", "(q1,5)"}));
}

TEST(Morphism, BuchiLoopMapsToLevelZero) {
  const Dba d = buchi_of_colors(gen::letters(2), std::vector<Color>{0});
  const Graph src(gen::letters(2), {"v"}, {{0, 0, 0}});
  const auto r = compute_morphism(src, d, compute_prefix_order(d));
  ASSERT_TRUE(r.morphism.has_value());
  EXPECT_EQ(r.morphism->map, std::vector<VertexId>{0});
}

TEST(Morphism, LosingVertexMapsToTop) {
  const Dba d = buchi_of_colors(gen::letters(2), std::vector<Color>{0});
  const Graph src(gen::letters(2), {"v"}, {{0, 1, 0}});
  const auto r = compute_morphism(src, d, compute_prefix_order(d));
  ASSERT_TRUE(r.morphism.has_value());
  EXPECT_FALSE(r.least_state[0].has_value());
  const auto g = build_universal_graph(d, compute_prefix_order(d), r.theta);
  EXPECT_EQ(r.morphism->map[0], g.top());
}

TEST(Morphism, ThetaTooSmall) {
  const auto s = aa_or_buchi_a();
  EXPECT_THROW(compute_morphism(fixtures::chain_graph(), s.dba, s.order, 4), ResourceError);
}

TEST(Properties, PathsAndCycles) {
  for (const auto& s : {aa_or_buchi_a(), ladder()}) {
    const auto g = build_universal_graph(s.dba, s.order, 4);
    const auto paths = check_path_underapproximation(g, 5);
    EXPECT_GT(paths.checked, 0u);
    EXPECT_EQ(paths.violations, 0u) << (paths.examples.empty() ? "" : paths.examples[0]);
    const auto cycles = check_returning_cycles(g, 5);
    EXPECT_GT(cycles.checked, 0u);
    EXPECT_EQ(cycles.violations, 0u) << (cycles.examples.empty() ? "" : cycles.examples[0]);
  }
}

/// Every graph with `n` vertices over 2 colors whose edge set is encoded by `mask`.
Graph graph_of_mask(std::size_t n, std::uint32_t mask) {
  std::vector<std::string> names;
  for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v + 1));
  std::vector<ArenaEdge> edges;
  std::size_t bit = 0;
  for (VertexId u = 0; u < n; ++u)
    for (Color c = 0; c < 2; ++c)
      for (VertexId v = 0; v < n; ++v, ++bit)
        if ((mask >> bit) & 1u) edges.push_back({u, c, v});
  return Graph(gen::letters(2), names, edges);
}

TEST(Universality, AllSmallGraphsEmbed) {
  // Every graph with at most three vertices over two colors.
  const auto s = aa_or_buchi_a();
  std::size_t total = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint32_t mask = 0; mask < (1u << (2 * n * n)); ++mask) {
      const auto r = compute_morphism(graph_of_mask(n, mask), s.dba, s.order);
      ASSERT_TRUE(r.morphism.has_value()) << n << " " << mask << ": " << r.diagnostic;
      ++total;
    }
  EXPECT_EQ(total, 4u + 256u + (1u << 18));
}

}  // namespace
}  // namespace hpos
