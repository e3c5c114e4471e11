// Copyright 2026 The hiereval Authors
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

#ifndef HIEREVAL_PHILOX_H_
#define HIEREVAL_PHILOX_H_

#include <array>
#include <cstdint>

namespace hiereval {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2,
// 3", SC 2011), bit-compatible with Random123's philox4x32_10.
//
// A keyed bijection on 128-bit counters. Every random draw in this library is
// a pure function of (key, counter), so results never depend on the order or
// thread in which draws happen.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter Philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

constexpr PhiloxKey KeyFromSeed(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
}

// 64 random bits for the 128-bit counter (lo, hi): words 0 and 1 of the
// Philox output, word 1 being the high half.
constexpr std::uint64_t PhiloxBits(std::uint64_t seed, std::uint64_t lo,
                                   std::uint64_t hi) {
  const PhiloxCounter out = Philox4x32(
      {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(lo >> 32),
       static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32)},
      KeyFromSeed(seed));
  return (std::uint64_t{out[1]} << 32) | out[0];
}

// High 64 bits of the 128-bit product a * b.
constexpr std::uint64_t MulHi64(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t a_lo = a & 0xFFFFFFFFu, a_hi = a >> 32;
  const std::uint64_t b_lo = b & 0xFFFFFFFFu, b_hi = b >> 32;
  const std::uint64_t lo_lo = a_lo * b_lo;
  const std::uint64_t hi_lo = a_hi * b_lo;
  const std::uint64_t lo_hi = a_lo * b_hi;
  const std::uint64_t cross = (lo_lo >> 32) + (hi_lo & 0xFFFFFFFFu) + lo_hi;
  return a_hi * b_hi + (hi_lo >> 32) + (cross >> 32);
}

// Maps 64 uniform bits to [0, n) by multiply-shift: floor(bits * n / 2^64).
constexpr std::uint64_t ReduceToRange(std::uint64_t bits, std::uint64_t n) {
  return MulHi64(bits, n);
}

}  // namespace hiereval

#endif  // HIEREVAL_PHILOX_H_
