/*
   Copyright 2026 The pgff Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <compare>
#include <map>
#include <string>

namespace pgff {

/// Multiset of cycle lengths (or irreducible-factor degrees): length -> multiplicity.
struct CycleType {
  std::map<unsigned, unsigned> parts;

  unsigned n() const {
    unsigned s = 0;
    for (auto [len, mult] : parts) s += len * mult;
    return s;
  }
  void add(unsigned len, unsigned mult = 1) {
    if (mult > 0) parts[len] += mult;
  }
  unsigned count(unsigned len) const {
    auto it = parts.find(len);
    return it == parts.end() ? 0 : it->second;
  }
  bool operator==(const CycleType&) const = default;
  auto operator<=>(const CycleType&) const = default;

  /// "{1:2,3:1}"
  std::string to_string() const {
    std::string s = "{";
    for (auto [len, mult] : parts) {
      if (s.size() > 1) s += ",";
      s += std::to_string(len) + ":" + std::to_string(mult);
    }
    return s + "}";
  }
};

/// Drops all parts of length < r.
inline CycleType restrict_cycle_type(const CycleType& ct, unsigned r) {
  CycleType out;
  for (auto [len, mult] : ct.parts) {
    if (len >= r) out.parts.emplace(len, mult);
  }
  return out;
}

}  // namespace pgff
