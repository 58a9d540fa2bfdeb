// Copyright (c) the LPR Codec Project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpr/error.h"

namespace lpr {

// Little-endian scalar I/O against a byte vector / span, plus CRC32.
// All container and tensor fields go through these helpers.

inline void put_u8(std::vector<uint8_t>& out, uint8_t v) { out.push_back(v); }

inline void put_u16le(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(uint8_t(v & 0xFF));
  out.push_back(uint8_t(v >> 8));
}

inline void put_u32le(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(uint8_t(v & 0xFF));
  out.push_back(uint8_t((v >> 8) & 0xFF));
  out.push_back(uint8_t((v >> 16) & 0xFF));
  out.push_back(uint8_t(v >> 24));
}

inline void put_i16le(std::vector<uint8_t>& out, int16_t v) {
  put_u16le(out, static_cast<uint16_t>(v));
}

// Cursor-style reader that fails with kTruncated when the input runs out.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  size_t pos() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

  uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  uint16_t u16le() {
    need(2);
    uint16_t v = uint16_t(bytes_[pos_]) | (uint16_t(bytes_[pos_ + 1]) << 8);
    pos_ += 2;
    return v;
  }
  uint32_t u32le() {
    need(4);
    uint32_t v = uint32_t(bytes_[pos_]) | (uint32_t(bytes_[pos_ + 1]) << 8) |
                 (uint32_t(bytes_[pos_ + 2]) << 16) |
                 (uint32_t(bytes_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }
  int16_t i16le() { return static_cast<int16_t>(u16le()); }

  std::span<const uint8_t> take(size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(size_t n) const {
    if (remaining() < n) fail(ErrorCode::kTruncated, "unexpected end of input");
  }
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

// IEEE CRC32 (polynomial 0xEDB88320), running form.
uint32_t crc32_update(uint32_t crc, std::span<const uint8_t> bytes);

inline uint32_t crc32(std::span<const uint8_t> bytes) {
  return crc32_update(0, bytes);
}

}  // namespace lpr
