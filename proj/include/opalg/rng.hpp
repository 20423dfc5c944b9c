/**
 * @file  rng.hpp
 * @brief Counter-based randomness: Philox4x64-10 with documented vectors.
 *
 * Every randomized campaign in the toolkit draws from Philox4x64-10, a
 * keyed bijection from the Random123 family.  Counter-based generation
 * means a draw is a pure function of (key, counter), so suites can be
 * sharded across threads or re-run per trial and still reproduce the exact
 * stream.  Known-answer vectors for the block function are pinned in
 * tests/test_rng.cpp and listed in README.md; they match both the Random123
 * reference and numpy.random.Philox (numpy advances the counter once before
 * its first block).
 */
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace opalg {

/// The pure Philox4x64-10 block function.
std::array<uint64_t, 4> philox4x64(const std::array<uint64_t, 4>& counter,
                                   const std::array<uint64_t, 2>& key);

/// FNV-1a 64-bit hash; used to derive stream identifiers from suite names.
uint64_t fnv1a64(std::string_view s);

/// A deterministic stream addressed by (key0, key1, lane0, lane1).
///
/// The usual pattern is key0 = campaign seed, key1 = hash of the suite
/// name, lane0/lane1 = structural indices (dimension, trial, ...).  Streams
/// at distinct addresses are independent, and the draw sequence of a stream
/// never depends on what other streams were consumed.
class Rng {
 public:
  Rng(uint64_t key0, uint64_t key1, uint64_t lane0 = 0, uint64_t lane1 = 0)
      : key_{key0, key1}, base_{0, lane0, lane1, 0} {}

  /// Stream for a named suite: key = (seed, fnv1a(suite)).
  static Rng for_suite(uint64_t seed, std::string_view suite,
                       uint64_t lane0 = 0, uint64_t lane1 = 0) {
    return Rng(seed, fnv1a64(suite), lane0, lane1);
  }

  uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  uint64_t below(uint64_t n);
  /// Standard normal via Box-Muller (one value cached per pair).
  double gaussian();

 private:
  std::array<uint64_t, 2> key_;
  std::array<uint64_t, 4> base_;  // base_[0] is the running block index
  std::array<uint64_t, 4> buffer_{};
  int buffered_ = 0;
  double cached_gauss_ = 0.0;
  bool has_gauss_ = false;
};

}  // namespace opalg
