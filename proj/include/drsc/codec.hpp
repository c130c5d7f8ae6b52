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

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "drsc/geometry.hpp"
#include "drsc/interval.hpp"
#include "drsc/source.hpp"

namespace drsc {

struct codec_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Exact-state coder outgrew the configured precision ceiling.
struct precision_error : codec_error {
  using codec_error::codec_error;
};
// Malformed or inconsistent input data (streams, containers).
struct data_error : codec_error {
  using codec_error::codec_error;
};

// Default ceiling on numerator+denominator size of the exact coder state, in
// bits; DRSC_PRECISION_CEILING overrides.  Interval widths under a mismatched
// model shed no factors when the frame is rescaled by powers of two, so the
// exact representation grows linearly with stream length; the ceiling turns
// that into a loud failure instead of a quiet slowdown.
size_t default_precision_ceiling();

// A coding model laid out on the unit interval: symbol x owns
// [f(x), f(x) + q(x)) where f accumulates q over the coding order.
struct ArithmeticMap {
  SourceModel coding;
  std::vector<Rational> low_by_symbol;  // f(x) per symbol id

  static ArithmeticMap make(const SourceModel& q);
};

// Streaming encoder over exact rationals.
//
// The state is kept relative to the current frame: the interval the emitted
// bits pin down, rescaled to [0,1).  A bit is emitted whenever the coder
// interval fits in one half of the frame, so after renormalization the bits
// out equal the minimal covering binary interval of the true coder interval
// (nothing is withheld, nothing speculative).  A ledger of not-yet-decodable
// suffix intervals rides along to expose decoder progress: position j is
// decodable once the frame lies inside j's interval.
class ArithmeticEncoder {
 public:
  explicit ArithmeticEncoder(ArithmeticMap map,
                             size_t precision_ceiling = default_precision_ceiling());

  void push(symbol_t x);

  // All bits emitted so far.
  const BitString& bits() const { return bits_; }
  // Terminating bits: leftmost shortest dyadic interval inside the current
  // coder interval.  Making the stream's final interval a subset (not just a
  // refinement) of every pending interval renders the whole input decodable.
  BitString flush_bits() const;

  uint64_t consumed() const { return consumed_; }
  uint64_t decodable() const { return decodable_; }
  // For consumed positions (1-based), the consumed-count at which each became
  // decodable; UINT64_MAX while still pending.
  const std::vector<uint64_t>& decode_times() const { return decode_times_; }

  // Current coder interval in absolute coordinates; exact.
  UnitInterval absolute_interval() const;
  // Exact width of the absolute interval == induced measure of the input.
  Rational absolute_width() const;
  // Current interval relative to the frame.
  UnitInterval frame_interval() const { return UnitInterval(low_, width_); }

 private:
  void renormalize();
  void pop_decodable();

  ArithmeticMap map_;
  size_t ceiling_;
  Rational low_ = 0, width_ = 1;  // frame coordinates
  BitString bits_;
  struct Pending {
    Rational low, width;  // frame coordinates; low may be negative
    uint64_t pos;
  };
  std::deque<Pending> pending_;
  uint64_t consumed_ = 0, decodable_ = 0;
  std::vector<uint64_t> decode_times_;
};

// Greedy containment decoder mirroring ArithmeticEncoder bit for bit.
class ArithmeticDecoder {
 public:
  explicit ArithmeticDecoder(ArithmeticMap map);

  void put(int bit);
  void feed(const BitString& bits);

  const std::vector<symbol_t>& output() const { return out_; }

 private:
  void try_decode();

  ArithmeticMap map_;
  Rational low_ = 0, width_ = 1;  // frame coordinates
  Integer recv_ = 0;              // received-beyond-frame bits as an interval:
  long depth_ = 0;                // [recv_, recv_+1) / 2^depth_ of the frame
  std::vector<symbol_t> out_;
};

// Decode time of position n (count of symbols consumed when it became
// decodable) when encoding xs; nullopt if not decodable within n + horizon
// consumed symbols (censored).  Positions are 1-based.
std::optional<uint64_t> decode_time_of_position(const ArithmeticMap& map,
                                                std::span<const symbol_t> xs,
                                                uint64_t n, uint64_t horizon);

// Exact induced measure of xs under a plain memoryless map: the width of the
// coder interval, which for this map is the product of coding probabilities.
Rational induced_measure(const ArithmeticMap& map,
                         std::span<const symbol_t> xs);

// Conditional divergence between the source's d-step distribution and the
// coder's induced conditional measure after a given prefix.  mu_cond must
// return the exact conditional measure of a d-symbol continuation.
double conditional_redundancy(
    const SourceModel& p, unsigned d,
    const std::function<Rational(std::span<const symbol_t>)>& mu_cond);

// Per-symbol divergence rate (1/n) * D(P^n || mu_n) by full enumeration.
// Guarded: K^n must stay at or below max_sequences.
double exact_redundancy(
    const SourceModel& p, unsigned n,
    const std::function<Rational(std::span<const symbol_t>)>& mu_full,
    uint64_t max_sequences = 1u << 20);

// Delay-d interval representation of an encoder state: the union of the
// binary intervals of all depth-d continuations.  For any encoder whose
// worst-case decoding delay is at most d, the union's pieces grouped by the
// next symbol are pairwise disjoint, nest inside the parent union, and the
// union's covering binary interval is exactly the emitted-bits interval.
// All three are asserted here; a violation throws codec_error, which is the
// practical test that an encoder is NOT delay-d.
//
// Encoder requirements: copyable, push(symbol_t), bits().
struct UnionRepresentation {
  std::vector<UnitInterval> pieces;  // sorted, disjoint, merged
  BitString base_bits;
};

namespace detail {
template <class Encoder>
void collect_leaves(const Encoder& enc, std::span<const symbol_t> alphabet,
                    unsigned depth, std::vector<UnitInterval>& leaves) {
  if (depth == 0) {
    leaves.push_back(binary_interval(enc.bits()));
    return;
  }
  for (symbol_t x : alphabet) {
    Encoder child = enc;
    child.push(x);
    collect_leaves(child, alphabet, depth - 1, leaves);
  }
}

// Merge touching/overlapping intervals into disjoint spans.
std::vector<UnitInterval> merge_intervals(std::vector<UnitInterval> v);
bool disjoint_span_sets(const std::vector<UnitInterval>& a,
                        const std::vector<UnitInterval>& b);
bool covered_by(const std::vector<UnitInterval>& pieces,
                const std::vector<UnitInterval>& cover);
}  // namespace detail

template <class Encoder>
UnionRepresentation union_representation(const Encoder& enc,
                                         std::span<const symbol_t> alphabet,
                                         unsigned d) {
  std::vector<UnitInterval> leaves;
  detail::collect_leaves(enc, alphabet, d, leaves);
  UnionRepresentation rep;
  rep.pieces = detail::merge_intervals(std::move(leaves));
  rep.base_bits = enc.bits();

  // Minimality: the union's covering binary interval is the emitted one.
  UnitInterval hull(rep.pieces.front().low,
                    rep.pieces.back().upper() - rep.pieces.front().low);
  if (minimal_binary_interval(hull) != rep.base_bits)
    throw codec_error("union_representation: emitted bits are not minimal for "
                      "the depth-" + std::to_string(d) + " reachable set");

  // Sibling disjointness and nesting, one level down.
  std::vector<std::vector<UnitInterval>> child_reps;
  for (symbol_t y : alphabet) {
    Encoder child = enc;
    child.push(y);
    std::vector<UnitInterval> child_leaves;
    detail::collect_leaves(child, alphabet, d, child_leaves);
    child_reps.push_back(detail::merge_intervals(std::move(child_leaves)));
  }
  for (size_t i = 0; i < child_reps.size(); ++i) {
    for (size_t j = i + 1; j < child_reps.size(); ++j)
      if (!detail::disjoint_span_sets(child_reps[i], child_reps[j]))
        throw codec_error("union_representation: sibling unions overlap; "
                          "encoder is not delay-" + std::to_string(d));
    if (!detail::covered_by(child_reps[i], rep.pieces))
      throw codec_error("union_representation: child union escapes parent");
  }
  return rep;
}

}  // namespace drsc
