#pragma once

#include <cstdint>
#include <string_view>

namespace daypulse {

// Mixer from Vigna's splitmix64. Used to key substreams and to expand a
// single 64-bit seed into generator state.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over bytes; stable across platforms, used to key per-document
// sampler substreams by document id.
inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// xoshiro256++ (Blackman & Vigna). All stochastic sampling in this project
// draws from this generator so results are bit-reproducible everywhere.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1), 53-bit resolution
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [0, n), n > 0; multiply-shift bounded draw
  uint32_t next_below(uint32_t n) {
    return static_cast<uint32_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Substream key for one document: independent of document position.
inline uint64_t doc_stream_seed(uint64_t seed, std::string_view doc_id) {
  uint64_t st = seed ^ 0x6a09e667f3bcc909ULL;
  uint64_t a = splitmix64(st);
  st ^= fnv1a64(doc_id);
  return a ^ splitmix64(st);
}

}  // namespace daypulse
