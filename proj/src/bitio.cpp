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

#include "drsc/bitio.hpp"

namespace drsc {

void BitWriter::put(int bit) {
  cur_ = static_cast<uint8_t>((cur_ << 1) | (bit & 1));
  if (++fill_ == 8) {
    bytes_.push_back(cur_);
    cur_ = 0;
    fill_ = 0;
  }
  ++count_;
}

std::vector<uint8_t> BitWriter::finish() {
  if (fill_ > 0) {
    bytes_.push_back(static_cast<uint8_t>(cur_ << (8 - fill_)));
    cur_ = 0;
    fill_ = 0;
  }
  return std::move(bytes_);
}

int BitReader::get() {
  size_t byte = pos_ >> 3;
  if (byte >= size_) return -1;
  int bit = (data_[byte] >> (7 - (pos_ & 7))) & 1;
  ++pos_;
  return bit;
}

void put_varint(std::vector<uint8_t>& out, uint64_t v) {
  do {
    uint8_t b = v & 0x7f;
    v >>= 7;
    if (v) b |= 0x80;
    out.push_back(b);
  } while (v);
}

void put_varint(std::vector<uint8_t>& out, const Integer& v) {
  Integer x = v;
  do {
    uint8_t b = static_cast<uint8_t>(mpz_get_ui(x.get_mpz_t()) & 0x7f);
    x >>= 7;
    if (x != 0) b |= 0x80;
    out.push_back(b);
  } while (x != 0);
}

uint8_t ByteCursor::next_byte() {
  if (pos >= size) {
    ok = false;
    return 0;
  }
  return data[pos++];
}

uint64_t ByteCursor::read_varint_u64() {
  uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    uint8_t b = next_byte();
    if (!ok) return 0;
    v |= static_cast<uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
  }
  ok = false;  // varint longer than 64 bits
  return 0;
}

Integer ByteCursor::read_varint_integer() {
  Integer v = 0;
  for (unsigned long shift = 0;; shift += 7) {
    uint8_t b = next_byte();
    if (!ok) return 0;
    Integer part(b & 0x7f);
    v |= part << shift;
    if (!(b & 0x80)) return v;
    if (shift > 100000) {  // refuse absurd headers instead of spinning
      ok = false;
      return 0;
    }
  }
}

}  // namespace drsc
