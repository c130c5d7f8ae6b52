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

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace drsc {

// All interval arithmetic in this library is exact.  mpq_class keeps values
// canonical (lowest terms, positive denominator), so equality of values is
// equality of representations and no code path ever rounds silently.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// 2^e for possibly negative e.
Rational pow2(long e);

Rational rational_pow(const Rational& base, unsigned long e);

// True when the denominator is a power of two.
bool is_dyadic(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "num/den" or a bare integer.  Returns nothing on syntax errors or
// a zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

// Smallest t >= 0 with q * 2^t >= 1.  Requires 0 < q <= 1.
long ceil_log2_inverse(const Rational& q);

// log2 as a double, safe far outside double range.  Requires q > 0.
double log2_rational(const Rational& q);

// Total size of numerator plus denominator in bits; used to police growth of
// exact coder state.
size_t rational_bits(const Rational& q);

}  // namespace drsc
