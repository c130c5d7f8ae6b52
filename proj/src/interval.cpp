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

#include "drsc/interval.hpp"

#include <cmath>
#include <stdexcept>

namespace drsc {

Rational pow2(long e) {
  Rational r;
  if (e >= 0) {
    mpz_ui_pow_ui(r.get_num_mpz_t(), 2, static_cast<unsigned long>(e));
  } else {
    r = 1;
    mpz_ui_pow_ui(r.get_den_mpz_t(), 2, static_cast<unsigned long>(-e));
  }
  return r;
}

Rational rational_pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;  // base was canonical, so num^e / den^e already is
}

bool is_dyadic(const Rational& q) {
  Integer d = q.get_den();
  if (d == 1) return true;
  // d is a power of two iff it has a single set bit.
  return mpz_scan1(d.get_mpz_t(), 0) == mpz_sizeinbase(d.get_mpz_t(), 2) - 1;
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
    if (!ok) return std::nullopt;
  }
  Rational r;
  if (r.set_str(text, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

long ceil_log2_inverse(const Rational& q) {
  if (q <= 0 || q > 1) throw std::invalid_argument("ceil_log2_inverse: q must be in (0,1]");
  size_t nb = mpz_sizeinbase(q.get_num_mpz_t(), 2);
  size_t db = mpz_sizeinbase(q.get_den_mpz_t(), 2);
  long t = static_cast<long>(db) - static_cast<long>(nb);
  // q * 2^t is within a factor of two of 1; adjust.
  while (q * pow2(t) >= 1) --t;
  return t + 1;
}

size_t rational_bits(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) +
         mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

double log2_rational(const Rational& q) {
  if (q <= 0) throw std::invalid_argument("log2_rational: q must be positive");
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return (std::log2(mn) + static_cast<double>(en)) -
         (std::log2(md) + static_cast<double>(ed));
}

BitString BitString::from_string(const std::string& s) {
  BitString b;
  b.bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitString: expected 0/1");
    b.bits.push_back(static_cast<uint8_t>(c - '0'));
  }
  return b;
}

bool BitString::prefix_of(const BitString& other) const {
  if (size() > other.size()) return false;
  for (size_t i = 0; i < size(); ++i)
    if (bits[i] != other.bits[i]) return false;
  return true;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(size());
  for (uint8_t b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

UnitInterval::UnitInterval(Rational lo, Rational w)
    : low(std::move(lo)), width(std::move(w)) {
  if (low < 0 || width <= 0 || low + width > 1)
    throw std::invalid_argument("UnitInterval: need 0 <= low, width > 0, low + width <= 1");
}

UnitInterval binary_interval(const BitString& b) {
  Integer v = 0;
  for (uint8_t bit : b.bits) {
    v <<= 1;
    if (bit) v |= 1;
  }
  Rational w = pow2(-static_cast<long>(b.size()));
  Rational lo = Rational(v) * w;
  return UnitInterval(lo, w);
}

BitString minimal_binary_interval(const UnitInterval& i) {
  BitString out;
  Rational lo = 0, w = 1;  // current binary interval [lo, lo + w)
  for (;;) {
    Rational half = w / 2;
    Rational mid = lo + half;
    if (i.upper() <= mid) {
      out.push_back(0);
      w = half;
    } else if (i.low >= mid) {
      out.push_back(1);
      lo = mid;
      w = half;
    } else {
      return out;
    }
  }
}

BitString shortest_dyadic_inside(const UnitInterval& i) {
  for (long t = 0;; ++t) {
    // Leftmost grid cell [j, j+1) / 2^t with j/2^t >= low; fits iff its upper
    // end stays within i.
    Rational scale = pow2(t);
    Rational scaled_low = i.low * scale;
    Integer j;
    mpz_cdiv_q(j.get_mpz_t(), scaled_low.get_num_mpz_t(),
               scaled_low.get_den_mpz_t());
    if (Rational(j + 1) <= i.upper() * scale) {
      BitString out;
      for (long bit = t - 1; bit >= 0; --bit)
        out.push_back(mpz_tstbit(j.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)));
      return out;
    }
  }
}

}  // namespace drsc
