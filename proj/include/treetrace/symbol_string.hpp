// Copyright 2026 The treetrace Authors
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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treetrace {

// The three two-letter alphabets in use: plain bit strings, and the two
// alphabets of the dual leaf/edge strings of a tree.
enum class Alphabet : std::uint8_t { kBinary, kZeroTwo, kOneTwo };

bool alphabet_contains(Alphabet alphabet, std::uint8_t symbol);

// A finite sequence of symbols from a declared alphabet. Symbols are stored as
// their numeric values (0, 1, 2), and ordered lexicographically.
class SymbolString {
 public:
  SymbolString() = default;
  explicit SymbolString(std::vector<std::uint8_t> symbols,
                        Alphabet alphabet = Alphabet::kBinary);

  // Parses digits, e.g. "0110". Throws kMalformedString on foreign symbols.
  static SymbolString parse(std::string_view text,
                            Alphabet alphabet = Alphabet::kBinary);

  std::string str() const;

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const std::uint8_t> symbols() const noexcept { return symbols_; }
  Alphabet alphabet() const noexcept { return alphabet_; }

  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  friend bool operator==(const SymbolString& a, const SymbolString& b) {
    return a.symbols_ == b.symbols_;
  }
  friend std::strong_ordering operator<=>(const SymbolString& a,
                                          const SymbolString& b) {
    return a.symbols_ <=> b.symbols_;
  }

 private:
  std::vector<std::uint8_t> symbols_;
  Alphabet alphabet_ = Alphabet::kBinary;
};

}  // namespace treetrace
