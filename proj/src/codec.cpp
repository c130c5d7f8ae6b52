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

#include "drsc/codec.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace drsc {

size_t default_precision_ceiling() {
  static const size_t value = [] {
    if (const char* env = std::getenv("DRSC_PRECISION_CEILING")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v >= 128) return static_cast<size_t>(v);
    }
    return static_cast<size_t>(1) << 20;
  }();
  return value;
}

ArithmeticMap ArithmeticMap::make(const SourceModel& q) {
  ArithmeticMap m;
  m.coding = q;
  m.low_by_symbol.assign(q.size(), Rational(0));
  Rational cum = 0;
  for (symbol_t pos = 0; pos < q.order.size(); ++pos) {
    symbol_t sym = q.order[pos];
    m.low_by_symbol[sym] = cum;
    cum += q.pmf[sym];
  }
  return m;
}

ArithmeticEncoder::ArithmeticEncoder(ArithmeticMap map, size_t precision_ceiling)
    : map_(std::move(map)), ceiling_(precision_ceiling) {}

void ArithmeticEncoder::push(symbol_t x) {
  if (x >= map_.coding.size()) throw data_error("encode: unknown symbol id");
  const Rational& q = map_.coding.pmf[x];
  if (q == 0)
    throw data_error("encode: symbol '" + map_.coding.tokens[x] +
                     "' has zero coding probability");
  low_ += width_ * map_.low_by_symbol[x];
  width_ *= q;
  ++consumed_;
  decode_times_.push_back(UINT64_MAX);
  pending_.push_back(Pending{low_, width_, consumed_});
  renormalize();
  pop_decodable();
  if (rational_bits(low_) + rational_bits(width_) > ceiling_)
    throw precision_error(
        "encode: exact coder state exceeds precision ceiling of " +
        std::to_string(ceiling_) + " bits after " + std::to_string(consumed_) +
        " symbols; a mismatched non-dyadic model grows linearly with stream "
        "length");
}

void ArithmeticEncoder::renormalize() {
  const Rational half(1, 2);
  for (;;) {
    int bit;
    if (low_ + width_ <= half) {
      bit = 0;
    } else if (low_ >= half) {
      bit = 1;
    } else {
      return;
    }
    bits_.push_back(bit);
    low_ = low_ * 2 - bit;
    width_ *= 2;
    for (Pending& p : pending_) {
      p.low = p.low * 2 - bit;
      p.width *= 2;
    }
  }
}

void ArithmeticEncoder::pop_decodable() {
  while (!pending_.empty()) {
    const Pending& f = pending_.front();
    if (f.low <= 0 && f.low + f.width >= 1) {
      decode_times_[f.pos - 1] = consumed_;
      decodable_ = f.pos;
      pending_.pop_front();
    } else {
      break;
    }
  }
}

BitString ArithmeticEncoder::flush_bits() const {
  return shortest_dyadic_inside(frame_interval());
}

UnitInterval ArithmeticEncoder::absolute_interval() const {
  Integer v = 0;
  for (uint8_t b : bits_.bits) v = (v << 1) | static_cast<int>(b);
  Rational unit = pow2(-static_cast<long>(bits_.size()));
  return UnitInterval((Rational(v) + low_) * unit, width_ * unit);
}

Rational ArithmeticEncoder::absolute_width() const {
  return width_ * pow2(-static_cast<long>(bits_.size()));
}

ArithmeticDecoder::ArithmeticDecoder(ArithmeticMap map) : map_(std::move(map)) {}

void ArithmeticDecoder::feed(const BitString& bits) {
  for (uint8_t b : bits.bits) put(b);
}

void ArithmeticDecoder::put(int bit) {
  recv_ = (recv_ << 1) | (bit & 1);
  ++depth_;
  try_decode();
}

void ArithmeticDecoder::try_decode() {
  for (;;) {
    Rational unit = pow2(-depth_);
    Rational r_lo = Rational(recv_) * unit;
    Rational r_hi = Rational(recv_ + 1) * unit;

    const SourceModel& q = map_.coding;
    symbol_t hit = UINT32_MAX;
    int touching = 0;
    Rational cum = 0;
    for (symbol_t pos = 0; pos < q.order.size(); ++pos) {
      symbol_t sym = q.order[pos];
      const Rational& prob = q.pmf[sym];
      if (prob == 0) continue;
      Rational c_lo = low_ + width_ * cum;
      cum += prob;
      Rational c_hi = low_ + width_ * cum;
      if (c_lo < r_hi && r_lo < c_hi) {
        ++touching;
        if (r_lo >= c_lo && r_hi <= c_hi) {
          hit = sym;
          low_ = c_lo;
          width_ = c_hi - c_lo;
          break;
        }
      }
    }
    if (hit == UINT32_MAX) {
      if (touching == 0)
        throw data_error("decode: bit stream inconsistent with the coding "
                         "model after " + std::to_string(out_.size()) +
                         " symbols");
      return;  // straddles a boundary; need more bits
    }
    out_.push_back(hit);

    // Mirror the encoder's renormalization; the received interval lives
    // inside the coder interval, so it shifts with it.
    const Rational half(1, 2);
    for (;;) {
      int b;
      if (low_ + width_ <= half) {
        b = 0;
      } else if (low_ >= half) {
        b = 1;
      } else {
        break;
      }
      low_ = low_ * 2 - b;
      width_ *= 2;
      if (depth_ == 0) {
        // Received interval equals the frame; it renormalizes to the frame.
        recv_ = 0;
      } else {
        --depth_;
        if (b) recv_ -= Integer(1) << depth_;
      }
    }
  }
}

std::optional<uint64_t> decode_time_of_position(const ArithmeticMap& map,
                                                std::span<const symbol_t> xs,
                                                uint64_t n, uint64_t horizon) {
  if (n == 0 || n > xs.size())
    throw std::invalid_argument("decode_time_of_position: bad position");
  ArithmeticEncoder enc(map);
  uint64_t limit = std::min<uint64_t>(xs.size(), n + horizon);
  for (uint64_t i = 0; i < limit; ++i) {
    enc.push(xs[i]);
    if (enc.decodable() >= n) return enc.consumed();
  }
  return std::nullopt;
}

Rational induced_measure(const ArithmeticMap& map,
                         std::span<const symbol_t> xs) {
  Rational w = 1;
  for (symbol_t x : xs) {
    if (x >= map.coding.size()) throw data_error("induced_measure: bad symbol");
    w *= map.coding.pmf[x];
  }
  return w;
}

namespace {

// Iterates tuples over the symbols with positive source mass.
struct TupleOdometer {
  std::vector<symbol_t> support;
  std::vector<size_t> idx;
  std::vector<symbol_t> tuple;
  bool done = false;

  TupleOdometer(const SourceModel& p, unsigned d) {
    for (symbol_t i = 0; i < p.size(); ++i)
      if (p.pmf[i] > 0) support.push_back(i);
    idx.assign(d, 0);
    tuple.assign(d, support.empty() ? 0 : support[0]);
    if (support.empty()) done = true;
  }

  bool advance() {
    for (size_t i = idx.size(); i-- > 0;) {
      if (++idx[i] < support.size()) {
        tuple[i] = support[idx[i]];
        return true;
      }
      idx[i] = 0;
      tuple[i] = support[0];
    }
    return false;
  }
};

}  // namespace

double conditional_redundancy(
    const SourceModel& p, unsigned d,
    const std::function<Rational(std::span<const symbol_t>)>& mu_cond) {
  if (d == 0) throw std::invalid_argument("conditional_redundancy: d >= 1");
  TupleOdometer od(p, d);
  double r = 0;
  do {
    Rational prob = 1;
    for (symbol_t x : od.tuple) prob *= p.pmf[x];
    Rational mu = mu_cond(od.tuple);
    if (mu <= 0) return std::numeric_limits<double>::infinity();
    r += to_double(prob) * (log2_rational(prob) - log2_rational(mu));
  } while (od.advance());
  return r;
}

double exact_redundancy(
    const SourceModel& p, unsigned n,
    const std::function<Rational(std::span<const symbol_t>)>& mu_full,
    uint64_t max_sequences) {
  if (n == 0) throw std::invalid_argument("exact_redundancy: n >= 1");
  double seqs = std::pow(static_cast<double>(p.size()), static_cast<double>(n));
  if (seqs > static_cast<double>(max_sequences))
    throw std::invalid_argument("exact_redundancy: K^n exceeds enumeration guard");
  return conditional_redundancy(p, n, mu_full) / n;
}

namespace detail {

std::vector<UnitInterval> merge_intervals(std::vector<UnitInterval> v) {
  std::sort(v.begin(), v.end(), [](const UnitInterval& a, const UnitInterval& b) {
    return a.low < b.low;
  });
  std::vector<UnitInterval> out;
  for (const UnitInterval& i : v) {
    if (!out.empty() && i.low <= out.back().upper()) {
      Rational hi = std::max(out.back().upper(), i.upper());
      out.back() = UnitInterval(out.back().low, hi - out.back().low);
    } else {
      out.push_back(i);
    }
  }
  return out;
}

bool disjoint_span_sets(const std::vector<UnitInterval>& a,
                        const std::vector<UnitInterval>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].intersects(b[j])) return false;
    if (a[i].upper() <= b[j].upper())
      ++i;
    else
      ++j;
  }
  return true;
}

bool covered_by(const std::vector<UnitInterval>& pieces,
                const std::vector<UnitInterval>& cover) {
  for (const UnitInterval& p : pieces) {
    bool ok = false;
    for (const UnitInterval& c : cover)
      if (c.contains(p)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

}  // namespace drsc
