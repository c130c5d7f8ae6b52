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

#include <optional>
#include <utility>
#include <vector>

#include "drsc/interval.hpp"

namespace drsc {

// Decodability geometry.
//
// Fix a host interval I = [a, b) that a streaming encoder has narrowed to,
// and let m be the midpoint of its minimal covering binary interval.  A
// deeper interval J inside I maps to a self-contained bit string (its covering
// binary interval stays inside I) exactly when J avoids a sparse set of
// "forbidden" points: m itself plus the two chains obtained by repeatedly
// stepping from m toward either edge of I, each step being the largest
// admissible power of two.  Those chains converge geometrically to the edges,
// so any probe interval strictly inside I meets only finitely many of them.
// A point may sit exactly on J's left edge: [p, ...) keeps p's cell on the
// correct side, so that coincidence is harmless and is exempted everywhere
// below.

// Midpoint of the minimal covering binary interval of i.  Always strictly
// inside i.
Rational mbi_midpoint(const UnitInterval& i);

// Largest point of the form p - 2^-k inside [i.low, p), i.e. the single
// nearest left neighbour of p reachable by a power-of-two step that does not
// leave i.  Empty exactly when p == i.low.
std::optional<Rational> left_adjacent(const UnitInterval& i, const Rational& p);

// Smallest k gives the farthest admissible step: max point of the form
// p + 2^-k inside (p, i.upper()).  Defined for every p in i.
std::optional<Rational> right_adjacent(const UnitInterval& i, const Rational& p);

// Members of the forbidden set of host lying strictly inside probe, left edge
// exempt.  Requires probe inside host with strict clearance on both sides
// (host.low < probe.low and probe.upper() < host.upper()); the chains
// accumulate at host's edges, so a probe touching an edge would meet
// infinitely many points.  Result is sorted ascending.
std::vector<Rational> forbidden_points_within(const UnitInterval& host,
                                              const UnitInterval& probe);

// Forbidden points of host at distance at least delta from both edges, i.e.
// inside [low + delta, upper - delta).  The count is at most
// 1 + 2*log2(width/delta).  Requires 0 < delta < width.
std::vector<Rational> adjacent_delta_set(const UnitInterval& host,
                                         const Rational& delta);

enum class Side { left, right };

// The two central candidate regions of i at relative offsets (3/8, 1/2) and
// (1/2, 5/8), each one eighth of i wide, returned as half-open probes.
std::pair<UnitInterval, UnitInterval> side_regions(const UnitInterval& i);

// At least one of the two central regions contains no forbidden point of i:
// the forbidden chains step by powers of two, so around the covering
// midpoint they are too coarse to hit both regions.  Returns the free side,
// preferring left when both qualify.
Side forbidden_free_side(const UnitInterval& i);

}  // namespace drsc
