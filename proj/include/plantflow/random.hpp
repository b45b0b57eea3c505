#pragma once

#include <array>
#include <cstdint>

namespace plantflow {

/// Philox4x32-10 counter-based generator: a pure function from
/// (key, counter) to four 32-bit words, so any sample can be regenerated
/// without replaying earlier ones.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      counter = single_round(counter, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return counter;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Block single_round(const Block& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
  }
};

/// Uniform draws for one Monte-Carlo sample. Draw `i` depends only on
/// (seed, sample, tag, i), never on which thread asks or in what order.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t sample, std::uint32_t tag = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        sample_lo_(static_cast<std::uint32_t>(sample)),
        sample_hi_(static_cast<std::uint32_t>(sample >> 32)),
        tag_(tag) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint32_t index) const {
    const auto out = Philox4x32::generate({sample_lo_, sample_hi_, index, tag_}, key_);
    const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 21) ^ (out[1] >> 11);
    return static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) * 0x1.0p-53;
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t sample_lo_;
  std::uint32_t sample_hi_;
  std::uint32_t tag_;
};

}  // namespace plantflow
