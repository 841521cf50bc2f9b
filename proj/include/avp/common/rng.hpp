// Copyright 2026 The avp Authors
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

#ifndef AVP__COMMON__RNG_HPP_
#define AVP__COMMON__RNG_HPP_

#include <cstdint>

namespace avp::common
{

/// Deterministic RNG with stable cross-platform output.
///
/// std::mt19937 streams are portable but the standard distributions are not
/// (libstdc++ and libc++ disagree), so this wraps xoshiro256++ with hand-rolled
/// uniform draws. Seeding goes through splitmix64 as recommended by the
/// xoshiro authors.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
  {
    std::uint64_t sm = seed;
    for (auto & word : state_) {
      word = splitmix64(sm);
    }
  }

  /// Derives an independent child stream, e.g. per episode or per subsystem.
  static Rng derive(std::uint64_t seed, std::uint64_t stream)
  {
    std::uint64_t sm = seed;
    const std::uint64_t a = splitmix64(sm);
    sm = stream ^ 0x9e3779b97f4a7c15ULL;
    const std::uint64_t b = splitmix64(sm);
    return Rng(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  }

  std::uint64_t next_u64()
  {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_int(std::uint64_t n)
  {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t threshold = (0ULL - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) {
        return r % n;
      }
    }
  }

  bool bernoulli(double p) { return uniform() < p; }

private:
  static std::uint64_t splitmix64(std::uint64_t & x)
  {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k)
  {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace avp::common

#endif  // AVP__COMMON__RNG_HPP_
