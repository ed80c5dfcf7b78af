#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace entlab {

/// Counter-based random stream. Output i is a SplitMix64-style hash of
/// (key, i), so a stream is a pure function of its key and position.
/// Child streams derive a fresh key by hashing the parent key with a
/// call-path label (string or index); this is the documented
/// stream-splitting scheme: fixtures reproduce across platforms because
/// no implementation-defined distribution code is involved.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : key_(mix(seed ^ 0x6a09e667f3bcc909ull)) {}

  RandomStream child(std::string_view label) const {
    return RandomStream(Raw{}, mix(key_ ^ fnv1a(label)));
  }

  RandomStream child(std::uint64_t index) const {
    return RandomStream(Raw{}, mix(key_ ^ mix(index + 0x9e3779b97f4a7c15ull)));
  }

  std::uint64_t next_u64() {
    return mix(key_ + (counter_++) * 0x9e3779b97f4a7c15ull);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1].
  double next_open_double() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes two words per call.
  double next_gaussian() {
    double u1 = next_open_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, bound) by rejection-free scaling (bound small).
  std::uint64_t next_below(std::uint64_t bound) {
    return next_u64() % bound;
  }

  std::uint64_t key() const { return key_; }

 private:
  struct Raw {};
  RandomStream(Raw, std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace entlab
