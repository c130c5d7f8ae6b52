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
#include <deque>
#include <memory>
#include <span>
#include <vector>

#include "drsc/bitio.hpp"
#include "drsc/codec.hpp"
#include "drsc/geometry.hpp"
#include "drsc/source.hpp"

namespace drsc {

// Hard-delay coding model.
//
// Source symbols are aggregated k at a time until the largest aggregate
// probability drops below 1/16, then two fictitious symbols are spliced into
// the aggregate coding order: x_l at the first cumulative boundary at or past
// 3/8 and x_r at the first at or past 1/2, each of mass epsilon, with all
// real masses scaled by (1 - 2*epsilon).  The placement lands each fictitious
// interval inside the central (3/8, 1/2) / (1/2, 5/8) band of whatever
// interval the coder currently holds, which is exactly where a forbidden-free
// region is guaranteed to exist.  Encoding a fictitious symbol therefore
// forces the covering binary interval of the new state inside the current
// one, which makes every outstanding symbol decodable on the spot.
//
// The encoder emulates the decoder and inserts a fictitious symbol whenever
// the count of undecodable aggregates reaches eff_delay + 1, so no aggregate
// ever waits more than eff_delay further aggregates, and no source symbol
// waits more than k*(eff_delay+1) - 1 <= delay_budget source symbols.
struct ExtEntry {
  enum Kind : uint8_t { real = 0, fict_left = 1, fict_right = 2 };
  Kind kind;
  uint64_t super;  // aggregate rank for kind == real
};

struct ExtendedModel {
  SourceModel base;
  unsigned aggregation = 1;   // k: source symbols per aggregate
  uint64_t super_count = 0;   // K^k
  uint64_t delay_budget = 0;  // d, in source symbols
  long eff_delay = 0;         // in aggregates, >= 0
  Rational epsilon;

  std::vector<ExtEntry> order;       // extended coding order
  std::vector<Rational> cum;         // cum[i] = low offset of order[i]; size order+1
  std::vector<Rational> coding_prob; // per order entry
  std::vector<Integer> cum_num, cum_den;  // cached mpz views of cum
  size_t left_pos = 0, right_pos = 0;     // fictitious entries in order
  std::vector<size_t> pos_of_super;       // aggregate rank -> order index
  long grid_bits = 0;                     // fractional bits of the grid engine

  size_t alphabet() const { return base.size(); }

  // Aggregate rank is the base-order lexicographic rank of the k-tuple.
  uint64_t super_rank(std::span<const symbol_t> syms) const;
  void super_components(uint64_t rank, symbol_t* out) const;

  // First positive-probability symbol in base order; pads the final partial
  // aggregate (recovered from the stored source length).
  symbol_t pad_symbol() const;
};

// Throws data_error when the delay budget is below the minimal workable value
// (k - 1) or when K^k overflows the aggregate ceiling.
ExtendedModel build_extended_model(const SourceModel& base, uint64_t delay_budget,
                                   uint64_t super_ceiling = 1u << 16);

struct DelayLedger {
  uint64_t consumed = 0;      // source symbols pushed (including padding)
  uint64_t decodable = 0;     // source symbols a bit-level decoder has pinned
  uint64_t insertions = 0;
  uint64_t super_steps = 0;   // real aggregates encoded
  uint64_t padding = 0;
  uint64_t bits_emitted = 0;
  uint64_t max_delay = 0;     // max over positions of decode-time - position
  std::vector<uint32_t> trace;  // per-position delay, when enabled
  bool trace_enabled = false;
};

// Coordinate policies.  The exact policy is the reference engine: coder state
// as arbitrary rationals.  The grid policy snaps subdivision boundaries to a
// fixed dyadic lattice of the current frame; every interval it manipulates is
// still an exact dyadic rational, so the decodability geometry is exact and
// the hard-delay argument applies verbatim, while the state size stays O(g)
// regardless of stream length.  Fictitious boundaries round inward (ceil low,
// floor high) so quantization can only pull them deeper into the central
// band.
struct ExactCoords {
  using Value = Rational;
  static constexpr bool is_grid = false;

  Value zero{0}, one{1}, half;
  ExactCoords() : half(1, 2) {}

  Value boundary(const Value& lo, const Value& w, const Rational& f,
                 bool round_up) const {
    (void)round_up;
    return lo + w * f;
  }
  Rational to_unit(const Value& v) const { return v; }
};

struct GridCoords {
  using Value = Integer;
  static constexpr bool is_grid = true;

  long g = 0;
  Value zero, one, half;
  GridCoords() = default;
  explicit GridCoords(long bits)
      : g(bits), zero(0), one(Integer(1) << bits), half(Integer(1) << (bits - 1)) {}

  Value boundary(const Value& lo, const Value& w, const Rational& f,
                 bool round_up) const {
    if (f == 0) return lo;
    if (f == 1) return lo + w;
    Integer t = w * f.get_num();
    Integer q;
    if (round_up)
      mpz_cdiv_q(q.get_mpz_t(), t.get_mpz_t(), f.get_den_mpz_t());
    else
      mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), f.get_den_mpz_t());
    return lo + q;
  }
  Rational to_unit(const Value& v) const {
    Rational r(v);
    return r / Rational(one);
  }
};

template <class Coords>
class DelayEncoderT {
 public:
  // sink may be null (bits are counted either way); keep_bits retains the
  // emitted bits for inspection.
  DelayEncoderT(std::shared_ptr<const ExtendedModel> model, BitWriter* sink,
                bool keep_bits = false, bool trace = false);

  void push(symbol_t x);
  // Pads the trailing partial aggregate and emits terminating bits.
  void finish();

  const DelayLedger& ledger() const { return ledger_; }
  const BitString& bits() const { return kept_; }
  const ExtendedModel& model() const { return *model_; }
  bool finished() const { return finished_; }

  // Exact induced measure of the pushed input: the absolute width of the
  // coder interval (exact engine only).
  Rational absolute_width() const;

 private:
  void encode_entry(size_t pos, bool via_insertion);
  void renormalize_while_inside(const typename Coords::Value& lo,
                                const typename Coords::Value& w);
  void emit(int bit);
  void pop_decodable();
  void partial_progress_bits();

  std::shared_ptr<const ExtendedModel> model_;
  Coords coords_;
  typename Coords::Value low_, width_;
  struct Pending {
    typename Coords::Value low, width;
    uint64_t first_pos, last_pos;  // source positions covered (0 for fictitious)
    bool real;
  };
  std::deque<Pending> pending_;
  uint32_t pending_reals_ = 0;
  std::vector<symbol_t> buffer_;
  BitWriter* sink_;
  bool keep_bits_;
  BitString kept_;
  DelayLedger ledger_;
  bool finished_ = false;
};

template <class Coords>
class DelayDecoderT {
 public:
  DelayDecoderT(std::shared_ptr<const ExtendedModel> model, uint64_t n_source);

  // Feeds one bit; may decode several symbols.  Throws data_error on streams
  // inconsistent with the model.
  void put(int bit);
  bool done() const { return out_.size() >= n_; }
  const std::vector<symbol_t>& output() const { return out_; }

 private:
  void try_decode();

  std::shared_ptr<const ExtendedModel> model_;
  Coords coords_;
  typename Coords::Value low_, width_;
  Integer recv_ = 0;  // received interval [recv_, recv_+1) * 2^-depth_ of frame
  long depth_ = 0;
  uint64_t n_;
  std::vector<symbol_t> out_;
};

using GridDelayEncoder = DelayEncoderT<GridCoords>;
using GridDelayDecoder = DelayDecoderT<GridCoords>;
using ExactDelayEncoder = DelayEncoderT<ExactCoords>;
using ExactDelayDecoder = DelayDecoderT<ExactCoords>;

// --- Container format -------------------------------------------------------
//
//   "DRSC"  magic
//   0x01    version
//   varint  K
//   K x (varint numerator, varint denominator)   pmf in coding order
//   varint  d (delay budget, source symbols)
//   varint  N (source length, symbols)
//   payload bits, MSB first, zero-padded to a byte boundary
//
// Everything the decoder needs is rederived from (pmf, d).
struct ContainerInfo {
  std::vector<Rational> pmf;
  uint64_t delay_budget = 0;
  uint64_t source_length = 0;
  size_t payload_offset = 0;
};

std::vector<uint8_t> write_container(const SourceModel& base, uint64_t d,
                                     uint64_t n, const std::vector<uint8_t>& payload);
ContainerInfo parse_container(std::span<const uint8_t> bytes);

// Encode a full sequence; ledger_out optionally receives the run's ledger.
std::vector<uint8_t> dc_encode(const SourceModel& base, uint64_t d,
                               std::span<const symbol_t> xs,
                               DelayLedger* ledger_out = nullptr,
                               bool trace = false);

// Decode a container back to symbol ids; model_out optionally receives the
// model rebuilt from the header (synthesized tokens).
std::vector<symbol_t> dc_decode(std::span<const uint8_t> bytes,
                                SourceModel* model_out = nullptr);

// Per-position decoding delays (source symbols) observed while encoding xs,
// flush included.  trace[i] is the number of source symbols the encoder had
// consumed when position i+1 became decodable, minus (i+1).
DelayLedger online_delay_trace(const SourceModel& base, uint64_t d,
                               std::span<const symbol_t> xs);

// --- Order-ensemble experiment ---------------------------------------------

// Canonical aggregate order with type classes adjacent: sorted by occurrence
// counts (lexicographically decreasing), ties by base-order rank.  rotate_to
// cyclically shifts that order to start at the pivot tuple.
std::vector<uint64_t> type_adjacent_super_order(const SourceModel& base, unsigned d);
std::vector<uint64_t> rotate_order(const std::vector<uint64_t>& order, uint64_t pivot_rank);

struct EnsembleResult {
  double hit_rate = 0;        // estimate of Pr(probe point in next interval)
  uint64_t hits = 0;
  uint64_t trials = 0;
  double reference = 0;       // 2^(-d * H2(P)) for comparison
};

// Per trial: draw a pivot d-tuple iid from p, rotate the type-adjacent order
// to it, splice fictitious mass, draw the next d-tuple, and test whether the
// probe point lands in its interval.  Simulation-only: the rotated layout
// drops the central-band placement guarantees of the production coder.
EnsembleResult ensemble_hit_rate(const SourceModel& p, unsigned d,
                                 uint64_t trials, uint64_t seed,
                                 const Rational& probe = Rational(1, 3));

// Exact enumeration of the same hit probability (guarded to K^d aggregates
// at or below 1 << 16).
Rational ensemble_hit_exact(const SourceModel& p, unsigned d,
                            const Rational& probe = Rational(1, 3));

}  // namespace drsc
