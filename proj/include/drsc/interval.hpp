// Copyright 2026 The drsc Authors
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

#include <cstdint>
#include <string>
#include <vector>

#include "drsc/rational.hpp"

namespace drsc {

// A finite binary string.  Bits are stored one per byte (0 or 1); streams that
// leave the process are packed separately (see bitio.hpp).
struct BitString {
  std::vector<uint8_t> bits;

  BitString() = default;
  explicit BitString(std::vector<uint8_t> b) : bits(std::move(b)) {}

  static BitString from_string(const std::string& s);

  size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  void push_back(int b) { bits.push_back(static_cast<uint8_t>(b & 1)); }
  void append(const BitString& other) {
    bits.insert(bits.end(), other.bits.begin(), other.bits.end());
  }
  uint8_t operator[](size_t i) const { return bits[i]; }
  bool operator==(const BitString& o) const { return bits == o.bits; }
  bool operator!=(const BitString& o) const { return !(*this == o); }

  // True when this is a prefix of (or equal to) other.
  bool prefix_of(const BitString& other) const;

  std::string to_string() const;
};

// Half-open subinterval [low, low + width) of the unit interval, width > 0.
// Half-open is load-bearing: it makes sibling code intervals truly disjoint
// and lets a nested interval share its host's left edge harmlessly.
struct UnitInterval {
  Rational low;
  Rational width;

  UnitInterval(Rational lo, Rational w);

  Rational upper() const { return low + width; }

  bool contains(const Rational& p) const { return p >= low && p < upper(); }
  bool strictly_inside(const Rational& p) const {
    return p > low && p < upper();
  }
  bool contains(const UnitInterval& other) const {
    return other.low >= low && other.upper() <= upper();
  }
  bool intersects(const UnitInterval& other) const {
    return other.low < upper() && low < other.upper();
  }
  bool operator==(const UnitInterval& o) const {
    return low == o.low && width == o.width;
  }
};

// The binary interval B[b] of a bit string b: [0.b, 0.b + 2^-|b|).  The empty
// string maps to the whole unit interval.
UnitInterval binary_interval(const BitString& b);

// The shortest bit string whose binary interval covers i, computed by
// descending from [0,1): at each level the interval fits in at most one half,
// so the loop is deterministic and needs at most ceil(log2(1/width)) + 1
// levels.  This is exactly the longest bit string an encoder may emit after
// narrowing to i without risking a future contradiction.
BitString minimal_binary_interval(const UnitInterval& i);

// Leftmost among the shortest bit strings with B[b] contained in i.  Used to
// terminate a stream: the emitted string pins the final interval down to
// something strictly inside i.  Depth is at most ceil(log2(2 / width)).
BitString shortest_dyadic_inside(const UnitInterval& i);

}  // namespace drsc
