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

// Reference automata, arenas and graphs used throughout the tests and shipped
// by the CLI as sample data.

#include <string>
#include <utility>
#include <vector>

#include "hpos/io.hpp"

namespace hpos::fixtures {

/// Büchi({a}) or "aa somewhere", with a minimal acceptance set.
inline const char* const kAaOrBuchiA = R"(alphabet: a b
states: q_init q_a q_aa
init: q_init
q_init a q_a *
q_init b q_init
q_a a q_aa
q_a b q_init
q_aa a q_aa *
q_aa b q_aa *
)";

/// Same objective with its saturated acceptance set.
inline const char* const kAaOrBuchiASaturated = R"(alphabet: a b
states: q_init q_a q_aa
init: q_init
q_init a q_a *
q_init b q_init
q_a a q_aa *
q_a b q_init *
q_aa a q_aa *
q_aa b q_aa *
)";

/// aaC^omega or bbC^omega.
inline const char* const kTwoPrefixes = R"(alphabet: a b
states: q_init q_a q_b q_win q_lose
init: q_init
q_init a q_a
q_init b q_b
q_a a q_win
q_a b q_lose
q_b a q_lose
q_b b q_win
q_win a q_win *
q_win b q_win *
q_lose a q_lose
q_lose b q_lose
)";

/// "aa somewhere".
inline const char* const kContainsAa = R"(alphabet: a b
states: q_init q_a q_aa
init: q_init
q_init a q_a
q_init b q_init
q_a a q_aa *
q_a b q_init
q_aa a q_aa *
q_aa b q_aa *
)";

/// Büchi({a}) intersected with Büchi({b}).
inline const char* const kBuchiAAndB = R"(alphabet: a b
states: q1 q2
init: q1
q1 a q1
q1 b q2 *
q2 a q1 *
q2 b q2
)";

/// Four-state objective over {a, b, c} where levels interleave with the graph.
inline const char* const kLadder = R"(alphabet: a b c
states: q0 q1 q2 q3
init: q1
q0 a q0
q0 b q0
q0 c q0
q1 a q2
q1 b q0
q1 c q1
q2 a q3
q2 b q1
q2 c q2
q3 a q3 *
q3 b q2
q3 c q3
)";

inline const char* const kTwoPrefixesArena = R"(alphabet: a b
vertex v1 P1
vertex v2 P1
vertex v3 P1
edge v1 a v3
edge v2 b v3
edge v3 a v3
edge v3 b v3
)";

/// A choice between the cycles ab and ba.
inline const char* const kTwoCyclesArena = R"(alphabet: a b
vertex v P1
vertex m1 P1
vertex m2 P1
edge v a m1
edge m1 b v
edge v b m2
edge m2 a v
)";

inline const char* const kTwoLoopsArena = R"(alphabet: a b
vertex v P1
edge v a v
edge v b v
)";

inline const char* const kChainGraph = R"(alphabet: a b
vertex v1
vertex v2
vertex v3
vertex v4
vertex v5
edge v1 b v2
edge v2 a v1
edge v2 b v3
edge v3 a v4
edge v4 b v3
edge v4 a v5
edge v5 b v5
)";

inline const char* const kLadderGraph = R"(alphabet: a b c
vertex v1
vertex v2
edge v1 a v2
edge v2 c v1
)";

inline Dba aa_or_buchi_a() { return parse_dba(kAaOrBuchiA); }
inline Dba aa_or_buchi_a_saturated() { return parse_dba(kAaOrBuchiASaturated); }
inline Dba two_prefixes() { return parse_dba(kTwoPrefixes); }
inline Dba contains_aa() { return parse_dba(kContainsAa); }
inline Dba buchi_a_and_b() { return parse_dba(kBuchiAAndB); }
inline Dba ladder() { return parse_dba(kLadder); }
inline Arena two_prefixes_arena() { return parse_arena(kTwoPrefixesArena); }
inline Arena two_cycles_arena() { return parse_arena(kTwoCyclesArena); }
inline Arena two_loops_arena() { return parse_arena(kTwoLoopsArena); }
inline Graph chain_graph() { return parse_graph(kChainGraph); }
inline Graph ladder_graph() { return parse_graph(kLadderGraph); }

struct FixtureFile {
  std::string filename;
  std::string content;
};

/// All bundled fixtures as files.
inline std::vector<FixtureFile> all_files() {
  return {
      {"aa_or_buchi_a.dba", kAaOrBuchiA},
      {"aa_or_buchi_a_saturated.dba", kAaOrBuchiASaturated},
      {"two_prefixes.dba", kTwoPrefixes},
      {"contains_aa.dba", kContainsAa},
      {"buchi_a_and_b.dba", kBuchiAAndB},
      {"ladder.dba", kLadder},
      {"two_prefixes.arena", kTwoPrefixesArena},
      {"two_cycles.arena", kTwoCyclesArena},
      {"two_loops.arena", kTwoLoopsArena},
      {"chain.graph", kChainGraph},
      {"ladder.graph", kLadderGraph},
  };
}

}  // namespace hpos::fixtures
