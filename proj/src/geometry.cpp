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

#include "drsc/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace drsc {

Rational mbi_midpoint(const UnitInterval& i) {
  UnitInterval cover = binary_interval(minimal_binary_interval(i));
  return cover.low + cover.width / 2;
}

std::optional<Rational> left_adjacent(const UnitInterval& i, const Rational& p) {
  if (p <= i.low) return std::nullopt;
  // Smallest k with 2^-k <= p - low maximizes the step.
  long k = ceil_log2_inverse(Rational(p - i.low));
  return Rational(p - pow2(-k));
}

std::optional<Rational> right_adjacent(const UnitInterval& i, const Rational& p) {
  Rational gap = i.upper() - p;
  if (gap <= 0) return std::nullopt;
  long k = ceil_log2_inverse(gap);
  if (pow2(-k) == gap) ++k;  // step must land strictly below the upper edge
  return Rational(p + pow2(-k));
}

std::vector<Rational> forbidden_points_within(const UnitInterval& host,
                                              const UnitInterval& probe) {
  if (!host.contains(probe) || probe.low <= host.low ||
      probe.upper() >= host.upper())
    throw std::invalid_argument(
        "forbidden_points_within: probe must sit strictly inside host; the "
        "chains accumulate at host's edges");

  const Rational lo = probe.low;
  const Rational hi = probe.upper();
  std::vector<Rational> out;

  Rational m = mbi_midpoint(host);
  if (m > lo && m < hi) out.push_back(m);

  for (Rational p = m;;) {
    auto l = left_adjacent(host, p);
    if (!l || *l <= lo) break;
    if (*l < hi) out.push_back(*l);
    p = *l;
  }
  for (Rational p = m;;) {
    auto r = right_adjacent(host, p);
    if (!r || *r >= hi) break;
    if (*r > lo) out.push_back(*r);
    p = *r;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> adjacent_delta_set(const UnitInterval& host,
                                         const Rational& delta) {
  if (delta <= 0 || delta >= host.width)
    throw std::invalid_argument("adjacent_delta_set: need 0 < delta < width");
  const Rational lo = host.low + delta;
  const Rational hi = host.upper() - delta;
  std::vector<Rational> out;
  if (lo >= hi) return out;

  Rational m = mbi_midpoint(host);
  if (m >= lo && m < hi) out.push_back(m);

  for (Rational p = m;;) {
    auto l = left_adjacent(host, p);
    if (!l || *l < lo) break;
    if (*l < hi) out.push_back(*l);
    p = *l;
  }
  for (Rational p = m;;) {
    auto r = right_adjacent(host, p);
    if (!r || *r >= hi) break;
    if (*r >= lo) out.push_back(*r);
    p = *r;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<UnitInterval, UnitInterval> side_regions(const UnitInterval& i) {
  Rational eighth = i.width / 8;
  return {UnitInterval(i.low + 3 * eighth, eighth),
          UnitInterval(i.low + 4 * eighth, eighth)};
}

Side forbidden_free_side(const UnitInterval& i) {
  auto [left, right] = side_regions(i);
  if (forbidden_points_within(i, left).empty()) return Side::left;
  if (forbidden_points_within(i, right).empty()) return Side::right;
  // One side is always free: if the covering midpoint m lies at or left of
  // the 3/8 mark, its right adjacent overshoots the 1/2 mark (the step from m
  // past 3/8 of the width is at least width/4 by maximality), clearing the
  // left region; symmetrically for the right.
  throw std::logic_error("forbidden_free_side: both central regions blocked");
}

}  // namespace drsc
