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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hpos {

using StateId = std::uint32_t;
using Color = std::uint32_t;
using Word = std::vector<Color>;

/// Malformed or incompatible user input (bad file, unknown symbol, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Internal consistency check failed. Always a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured budget (enumeration size, theta cap, ...) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered finite set of color symbols. Symbols are opaque tokens.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw InputError("alphabet must not be empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) throw InputError("alphabet symbol must not be empty");
      if (!index_.emplace(symbols_[i], static_cast<Color>(i)).second)
        throw InputError("duplicate alphabet symbol '" + symbols_[i] + "'");
    }
  }

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Color c) const { return symbols_.at(c); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<Color> find(std::string_view s) const {
    auto it = index_.find(std::string(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Color index_of(std::string_view s) const {
    if (auto c = find(s)) return *c;
    throw InputError("unknown symbol '" + std::string(s) + "'");
  }

  /// True when every symbol is a single character, so words print without separators.
  bool compact() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const std::string& s) { return s.size() == 1; });
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Color> index_;
};

/// Ultimately periodic word prefix . cycle^omega.
struct Lasso {
  Word prefix;
  Word cycle;

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

inline Word concat(std::span<const Color> a, std::span<const Color> b) {
  Word w(a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

/// Shortest representation of the same infinite word: the cycle is reduced to
/// its primitive root and rotated backwards into the prefix as far as possible.
inline Lasso canonical(Lasso l) {
  if (l.cycle.empty()) throw ContractError("lasso cycle must be non-empty");
  const std::size_t n = l.cycle.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = l.cycle[i] == l.cycle[i - p];
    if (periodic) {
      l.cycle.resize(p);
      break;
    }
  }
  while (!l.prefix.empty() && l.prefix.back() == l.cycle.back()) {
    l.prefix.pop_back();
    std::rotate(l.cycle.rbegin(), l.cycle.rbegin() + 1, l.cycle.rend());
  }
  return l;
}

/// Lexicographic comparison by (length, colors), used for deterministic tie-breaking.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline std::string format_word(const Alphabet& alphabet, std::span<const Color> w) {
  std::string out;
  const bool compact = alphabet.compact();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += '.';
    out += alphabet.symbol(w[i]);
  }
  return out;
}

inline Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  if (text.empty()) return w;
  if (alphabet.compact()) {
    for (char ch : text) w.push_back(alphabet.index_of(std::string_view(&ch, 1)));
    return w;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    w.push_back(alphabet.index_of(text.substr(start, dot - start)));
    start = dot + 1;
  }
  return w;
}

/// Lassos serialize as `prefix|cycle`.
inline std::string format_lasso(const Alphabet& alphabet, const Lasso& l) {
  return format_word(alphabet, l.prefix) + "|" + format_word(alphabet, l.cycle);
}

inline Lasso parse_lasso(const Alphabet& alphabet, std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw InputError("lasso '" + std::string(text) + "' lacks '|'");
  Lasso l{parse_word(alphabet, text.substr(0, bar)), parse_word(alphabet, text.substr(bar + 1))};
  if (l.cycle.empty()) throw InputError("lasso '" + std::string(text) + "' has an empty cycle");
  return l;
}

}  // namespace hpos
