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
#include "hpos/report.hpp"
#include "support/generators.hpp"

namespace hpos {
namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseDba, NumberedStates) {
  const Dba d = parse_dba(R"(# one state, a is Büchi
alphabet: a b
states: 1
init: 0
0 a 0 *
0 b 0
)");
  EXPECT_EQ(d.num_states(), 1u);
  EXPECT_TRUE(d.is_buchi(0, 0));
  EXPECT_FALSE(d.is_buchi(0, 1));
  EXPECT_FALSE(d.has_names());
}

TEST(ParseDba, ErrorsCarryLineNumbers) {
  const std::string head = "alphabet: a b\nstates: 2\ninit: 0\n";
  EXPECT_EQ(error_of([&] { parse_dba(head + "0 a 1\n0 c 1\n"); }), "line 5: unknown symbol 'c'");
  EXPECT_EQ(error_of([&] { parse_dba(head + "0 a 7\n"); }), "line 4: unknown state '7'");
  EXPECT_EQ(error_of([&] { parse_dba(head + "0 a 1\n0 a 0\n"); }), "line 5: duplicate transition for (0, a)");
  EXPECT_EQ(error_of([&] { parse_dba(head + "0 a 1 +\n"); }), "line 4: expected 'source color target [*]'");
  EXPECT_EQ(error_of([&] { parse_dba(head + "0 a 1\n"); }), "missing transition for (0, b)");
  EXPECT_EQ(error_of([&] { parse_dba("states: 1\ninit: 0\n"); }), "missing 'alphabet:' header");
  EXPECT_EQ(error_of([&] { parse_dba("alphabet: a a\n"); }).substr(0, 8), "line 1: ");
  EXPECT_EQ(error_of([&] { parse_dba("alphabet: a\nstates: 0\n"); }), "line 2: automaton needs at least one state");
  EXPECT_EQ(error_of([&] { parse_dba("alphabet: a\nfinal: 0\n"); }), "line 2: unknown header 'final:'");
}

TEST(ParseDba, RoundTripIsCanonical) {
  for (const char* text : {fixtures::kAaOrBuchiA, fixtures::kTwoPrefixes, fixtures::kContainsAa,
                           fixtures::kBuchiAAndB, fixtures::kLadder}) {
    const Dba d = parse_dba(text);
    const std::string once = format_dba(d);
    EXPECT_EQ(parse_dba(once), d);
    EXPECT_EQ(format_dba(parse_dba(once)), once);
  }
  gen::Rng rng(151);
  for (int i = 0; i < 50; ++i) {
    const Dba d = gen::random_dba(rng, gen::uniform(rng, 1, 6), gen::uniform(rng, 1, 3));
    EXPECT_EQ(parse_dba(format_dba(d)), d);
  }
}

TEST(ParseArena, FixturesRoundTrip) {
  for (const char* text : {fixtures::kTwoPrefixesArena, fixtures::kTwoCyclesArena, fixtures::kTwoLoopsArena}) {
    const Arena a = parse_arena(text);
    const std::string once = format_arena(a);
    EXPECT_EQ(format_arena(parse_arena(once)), once);
  }
  const Arena a = fixtures::two_prefixes_arena();
  EXPECT_EQ(a.num_vertices(), 3u);
  EXPECT_EQ(a.name(0), "v1");
}

TEST(ParseArena, StartStateAndErrors) {
  const Arena a = parse_arena("alphabet: a\nstart-state: q\nvertex v P2\nedge v a v\n");
  ASSERT_TRUE(a.start_state().has_value());
  EXPECT_EQ(*a.start_state(), "q");
  EXPECT_EQ(a.owner(0), Player::P2);
  EXPECT_EQ(format_arena(parse_arena(format_arena(a))), format_arena(a));

  EXPECT_EQ(error_of([] { parse_arena("alphabet: a\nvertex v\n"); }), "line 2: expected 'vertex name P1|P2'");
  EXPECT_EQ(error_of([] { parse_arena("alphabet: a\nvertex v P3\n"); }), "line 2: owner must be P1 or P2");
  EXPECT_EQ(error_of([] { parse_arena("alphabet: a\nvertex v P1\nedge v a w\n"); }), "line 3: unknown vertex 'w'");
  EXPECT_EQ(error_of([] { parse_arena("alphabet: a\nvertex v P1\nvertex v P1\n"); }), "line 3: duplicate vertex 'v'");
  EXPECT_EQ(error_of([] { parse_arena("alphabet: a\nnode v P1\n"); }), "line 2: unknown directive 'node'");
  EXPECT_FALSE(error_of([] { parse_arena("alphabet: a\nvertex v P1\n"); }).empty());  // dead end
}

TEST(ParseGraph, OwnersOptional) {
  const Graph g = parse_graph("alphabet: a b\nvertex u\nvertex w P2\nedge u a w\nedge w b u\n");
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(format_graph(parse_graph(format_graph(g))), format_graph(g));
  EXPECT_THROW(parse_graph("alphabet: a\nstart-state: q\nvertex u\nedge u a u\n"), InputError);
  const Graph chain = fixtures::chain_graph();
  EXPECT_EQ(chain.num_vertices(), 5u);
}

TEST(UniversalGraphText, ParsesAsGraph) {
  const Dba d = fixtures::aa_or_buchi_a_saturated();
  const auto g = build_universal_graph(d, compute_prefix_order(d), 3);
  const Graph back = parse_graph(format_universal_graph(g));
  EXPECT_EQ(back.num_vertices(), g.num_vertices());
  EXPECT_EQ(back.edges().size(), g.edges().size());
  // Listed from least to greatest, top last.
  EXPECT_EQ(back.name(back.num_vertices() - 1), g.name(g.top()));
  const std::string dot = universal_graph_dot(g);
  EXPECT_EQ(dot.rfind("digraph U {", 0), 0u);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);
}

TEST(Report, DecideReportReplays) {
  for (const Dba& d : {fixtures::aa_or_buchi_a(), fixtures::two_prefixes(), fixtures::contains_aa(),
                       fixtures::buchi_a_and_b()}) {
    const auto j = report::decide_report("x", d, decide(d));
    EXPECT_EQ(j.at("schema"), report::kSchemaVersion);
    const auto out = report::check_report(report::json::parse(j.dump()));
    EXPECT_TRUE(out.ok) << j.dump(2);
  }
}

TEST(Report, TamperedWitnessIsRejected) {
  const Dba d = fixtures::two_prefixes();
  auto j = report::decide_report("x", d, decide(d));
  j["verdict"]["evidence"]["only_q"] = "|b";
  EXPECT_FALSE(report::check_report(j).ok);

  const Dba p = fixtures::contains_aa();
  auto k = report::decide_report("x", p, decide(p));
  k["verdict"]["evidence"]["w"] = "aa";
  EXPECT_FALSE(report::check_report(k).ok);

  auto flipped = report::decide_report("x", p, decide(p));
  flipped["verdict"]["half_positional"] = true;
  EXPECT_FALSE(report::check_report(flipped).ok);
}

TEST(Report, EvidenceFields) {
  const Dba d = fixtures::two_prefixes();
  const auto j = report::decide_report("x", d, decide(d));
  const auto& ev = j.at("verdict").at("evidence");
  EXPECT_EQ(ev.at("kind"), "incomparable_pair");
  EXPECT_EQ(ev.at("q"), "q_a");
  EXPECT_EQ(ev.at("q2"), "q_b");
  EXPECT_EQ(ev.at("only_q"), "|a");
  EXPECT_EQ(ev.at("only_q2"), "|b");
  EXPECT_EQ(j.at("verdict").at("failed"), "total_preorder");
  EXPECT_TRUE(j.at("timings_ms").contains("prefix_order"));
}

TEST(Report, StrategyRoundTrip) {
  const Arena cycles = fixtures::two_cycles_arena();
  const Dba d = fixtures::aa_or_buchi_a();
  const auto s = exists_positional_optimal(cycles, d);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(report::parse_strategy(cycles, report::strategy_json(cycles, *s)).choice, s->choice);
  EXPECT_THROW(report::parse_strategy(cycles, report::json::object()), InputError);
}

TEST(Report, UnknownCommand) {
  report::json j;
  j["command"] = "frobnicate";
  EXPECT_THROW(report::check_report(j), InputError);
}

}  // namespace
}  // namespace hpos
