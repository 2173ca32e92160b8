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

#include "treetrace/symbol_string.hpp"

#include <utility>

#include "treetrace/error.hpp"

namespace treetrace {

bool alphabet_contains(Alphabet alphabet, std::uint8_t symbol) {
  switch (alphabet) {
    case Alphabet::kBinary: return symbol == 0 || symbol == 1;
    case Alphabet::kZeroTwo: return symbol == 0 || symbol == 2;
    case Alphabet::kOneTwo: return symbol == 1 || symbol == 2;
  }
  return false;
}

SymbolString::SymbolString(std::vector<std::uint8_t> symbols,
                           Alphabet alphabet)
    : symbols_(std::move(symbols)), alphabet_(alphabet) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!alphabet_contains(alphabet_, symbols_[i])) {
      throw Error(ErrorCode::kMalformedString,
                  "symbol " + std::to_string(symbols_[i]) + " at position " +
                      std::to_string(i) + " is outside the alphabet");
    }
  }
}

SymbolString SymbolString::parse(std::string_view text, Alphabet alphabet) {
  std::vector<std::uint8_t> symbols;
  symbols.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '2') {
      throw Error(ErrorCode::kMalformedString,
                  std::string("unexpected character '") + c +
                      "' at position " + std::to_string(i));
    }
    symbols.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return SymbolString(std::move(symbols), alphabet);
}

std::string SymbolString::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto s : symbols_) out.push_back(static_cast<char>('0' + s));
  return out;
}

}  // namespace treetrace
