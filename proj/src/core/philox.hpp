#ifndef PERMTYP_PHILOX_HPP
#define PERMTYP_PHILOX_HPP

#include <cstdint>

namespace permtyp {

// Philox-4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is fully determined by (seed, stream); the i-th output is a pure
// function of (seed, stream, i). Trials keyed by stream index therefore
// produce identical values under any execution order or worker count.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  // i-th 64-bit word of the stream.
  std::uint64_t word_at(std::uint64_t index) const {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(index >> 1),
        static_cast<std::uint32_t>((index >> 1) >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    std::uint32_t key[2] = {static_cast<std::uint32_t>(seed_),
                            static_cast<std::uint32_t>(seed_ >> 32)};
    for (int round = 0; round < 10; ++round) {
      single_round(ctr, key);
      key[0] += kWeyl32A;
      key[1] += kWeyl32B;
    }
    const int half = static_cast<int>(index & 1u) * 2;
    return (static_cast<std::uint64_t>(ctr[half + 1]) << 32) | ctr[half];
  }

  // i-th uniform double in [0,1), 53 significant bits.
  double unit_at(std::uint64_t index) const {
    return static_cast<double>(word_at(index) >> 11) * 0x1.0p-53;
  }

  // Sequential convenience wrappers.
  std::uint64_t next_word() { return word_at(cursor_++); }
  double next_unit() { return unit_at(cursor_++); }

  // Unbiased draw from [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    for (;;) {
      const std::uint64_t w = next_word();
      if (w < limit) return w % bound;
    }
  }

 private:
  static constexpr std::uint32_t kWeyl32A = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl32B = 0xBB67AE85u;
  static constexpr std::uint32_t kMul32A = 0xD2511F53u;
  static constexpr std::uint32_t kMul32B = 0xCD9E8D57u;

  static void single_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul32A) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul32B) * ctr[2];
    const std::uint32_t out[4] = {
        static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
        static_cast<std::uint32_t>(p1),
        static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
        static_cast<std::uint32_t>(p0),
    };
    ctr[0] = out[0];
    ctr[1] = out[1];
    ctr[2] = out[2];
    ctr[3] = out[3];
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t cursor_ = 0;
};

}  // namespace permtyp

#endif
