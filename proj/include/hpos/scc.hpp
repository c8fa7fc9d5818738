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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hpos {

/// Strongly connected components of a graph with vertices 0..n-1.
///
/// `component[v]` numbers components in topological order: if there is an edge
/// u -> v between different components then component[u] < component[v].
struct SccDecomposition {
  std::vector<std::uint32_t> component;
  std::size_t count = 0;
};

/// Iterative Tarjan. `for_each_successor(v, f)` must call `f(w)` for every
/// successor w of v, in a deterministic order.
template <typename ForEachSuccessor>
SccDecomposition strongly_connected_components(std::size_t n, ForEachSuccessor&& for_each_successor) {
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::uint32_t> finished_component(n, kUnvisited);
  std::size_t finished = 0;
  std::uint32_t next_index = 0;

  // Successor lists are materialized per frame so the traversal can resume.
  struct Frame {
    std::uint32_t v;
    std::vector<std::uint32_t> succ;
    std::size_t pos;
  };
  std::vector<Frame> frames;

  auto push = [&](std::uint32_t v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    Frame f{v, {}, 0};
    for_each_successor(v, [&](std::size_t w) { f.succ.push_back(static_cast<std::uint32_t>(w)); });
    frames.push_back(std::move(f));
  };

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    push(root);
    while (!frames.empty()) {
      Frame& top = frames.back();
      if (top.pos < top.succ.size()) {
        const std::uint32_t w = top.succ[top.pos++];
        if (index[w] == kUnvisited) {
          push(w);
        } else if (on_stack[w]) {
          low[top.v] = std::min(low[top.v], index[w]);
        }
        continue;
      }
      const std::uint32_t v = top.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          finished_component[w] = static_cast<std::uint32_t>(finished);
        } while (w != v);
        ++finished;
      }
    }
  }

  // Tarjan finishes sink components first; reverse for topological numbering.
  SccDecomposition out;
  out.count = finished;
  out.component.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    out.component[v] = static_cast<std::uint32_t>(finished - 1 - finished_component[v]);
  return out;
}

}  // namespace hpos
