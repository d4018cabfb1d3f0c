#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string_view>
#include <variant>

#include <boost/random/mersenne_twister.hpp>

namespace rbg {

enum class RngMethod { standard, java, lemire };

std::string_view to_string(RngMethod method);
std::optional<RngMethod> parse_rng_method(std::string_view text);

/// 32-bit Mersenne Twister with a modulo-rejection range draw.
class StandardRng {
 public:
  explicit StandardRng(std::uint64_t seed) : gen_(static_cast<std::uint32_t>(seed)) {}

  std::uint32_t next_bounded(std::uint32_t n) {
    // Reject the top 2^32 mod n values so that r % n is uniform.
    const std::uint32_t excess = static_cast<std::uint32_t>((std::uint64_t{1} << 32) % n);
    const std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() - excess;
    std::uint32_t r = static_cast<std::uint32_t>(gen_());
    while (excess != 0 && r > limit) r = static_cast<std::uint32_t>(gen_());
    return r % n;
  }

 private:
  std::mt19937 gen_;
};

/// The 48-bit linear congruential generator of java.util.Random with its
/// nextInt(bound) algorithm.
class JavaRandom {
 public:
  explicit JavaRandom(std::uint64_t seed) : seed_((seed ^ kMultiplier) & kMask) {}

  std::int32_t next(int bits) {
    seed_ = (seed_ * kMultiplier + kIncrement) & kMask;
    return static_cast<std::int32_t>(static_cast<std::int64_t>(seed_) >> (48 - bits));
  }

  std::uint32_t next_bounded(std::uint32_t n) {
    const auto bound = static_cast<std::int32_t>(n);
    std::int32_t r = next(31);
    const std::int32_t m = bound - 1;
    if ((bound & m) == 0) return static_cast<std::uint32_t>((static_cast<std::int64_t>(bound) * r) >> 31);
    // Java relies on int overflow of u - r + m to detect the biased tail.
    for (std::int32_t u = r; static_cast<std::int32_t>(static_cast<std::uint32_t>(u) -
                                                         static_cast<std::uint32_t>(r = u % bound) +
                                                         static_cast<std::uint32_t>(m)) < 0;
         u = next(31)) {
    }
    return static_cast<std::uint32_t>(r);
  }

 private:
  static constexpr std::uint64_t kMultiplier = 0x5DEECE66DULL;
  static constexpr std::uint64_t kIncrement = 0xBULL;
  static constexpr std::uint64_t kMask = (std::uint64_t{1} << 48) - 1;
  std::uint64_t seed_;
};

/// Lemire's nearly divisionless multiply-shift draw over a small-state
/// Mersenne Twister.
class LemireRng {
 public:
  explicit LemireRng(std::uint64_t seed) : gen_(static_cast<std::uint32_t>(seed)) {}

  std::uint32_t next_bounded(std::uint32_t n) {
    std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(gen_())) * n;
    auto low = static_cast<std::uint32_t>(m);
    if (low < n) {
      const std::uint32_t threshold = (0u - n) % n;
      while (low < threshold) {
        m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(gen_())) * n;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

 private:
  boost::random::mt11213b gen_;
};

using AnyRng = std::variant<StandardRng, JavaRandom, LemireRng>;

AnyRng make_rng(RngMethod method, std::uint64_t seed);

}  // namespace rbg
