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

// Packs bits most-significant-bit first into bytes; the final byte is padded
// with zeros.
class BitWriter {
 public:
  void put(int bit);
  size_t bit_count() const { return count_; }
  // Flushes the partial byte (zero padding) and returns the buffer.
  std::vector<uint8_t> finish();

 private:
  std::vector<uint8_t> bytes_;
  uint8_t cur_ = 0;
  int fill_ = 0;
  size_t count_ = 0;
};

class BitReader {
 public:
  BitReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  // Returns 0/1, or -1 past the end.
  int get();
  size_t bits_read() const { return pos_; }

 private:
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

// Unsigned LEB128.
void put_varint(std::vector<uint8_t>& out, uint64_t v);
void put_varint(std::vector<uint8_t>& out, const Integer& v);  // v >= 0

struct ByteCursor {
  const uint8_t* data;
  size_t size;
  size_t pos = 0;
  bool ok = true;

  uint8_t next_byte();
  uint64_t read_varint_u64();
  Integer read_varint_integer();
};

}  // namespace drsc
