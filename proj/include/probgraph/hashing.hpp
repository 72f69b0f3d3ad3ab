#pragma once

// Seeded hash families used by every sketch.
//
// Algorithm (fixed, so sketches are reproducible across runs and platforms):
//
//   mix(x)        = MurmurHash3 fmix64 finalizer
//   seed_i        = mix(base_seed ^ mix(i + 0x9e3779b97f4a7c15))
//   word_i(key)   = mix(seed_i ^ key)
//   bit_i(key, r) = word_i(key) mod r
//   unit_i(key)   = ((word_i(key) >> 11) + 1) * 2^-53
//
// unit_i keeps the top 53 bits of the word so that every value is an exact
// double; the all-zero word maps to 2^-53 and the all-ones word maps to 1.0,
// so the codomain is exactly (0, 1].

#include <cstdint>
#include <string>
#include <vector>

#include "probgraph/error.hpp"

namespace probgraph {

using vertex_t = std::uint32_t;

inline constexpr std::uint64_t kDefaultHashSeed = 0x853c49e6748fea9bULL;

constexpr std::uint64_t fmix64(std::uint64_t k) noexcept {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return fmix64(base_seed ^ fmix64(index + 0x9e3779b97f4a7c15ULL));
}

constexpr double word_to_unit(std::uint64_t word) noexcept {
  return static_cast<double>((word >> 11) + 1) * 0x1.0p-53;
}

// One member of a family; a single word, cheap to copy into sketch views.
class HashFunction {
 public:
  constexpr HashFunction() = default;
  constexpr explicit HashFunction(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }

  constexpr std::uint64_t word(std::uint64_t key) const noexcept { return fmix64(seed_ ^ key); }

  // Requires range >= 1.
  constexpr std::uint64_t bit(std::uint64_t key, std::uint64_t range) const noexcept {
    return word(key) % range;
  }

  constexpr double unit(std::uint64_t key) const noexcept { return word_to_unit(word(key)); }

  friend constexpr bool operator==(HashFunction, HashFunction) = default;

 private:
  std::uint64_t seed_ = 0;
};

class HashFamily {
 public:
  HashFamily() : HashFamily(kDefaultHashSeed, 1) {}

  HashFamily(std::uint64_t base_seed, std::size_t count) : base_seed_(base_seed) {
    if (count == 0) throw ContractViolation("hash family needs at least one function");
    functions_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) functions_.emplace_back(derive_seed(base_seed, i));
  }

  std::uint64_t base_seed() const noexcept { return base_seed_; }
  std::size_t size() const noexcept { return functions_.size(); }

  const HashFunction& operator[](std::size_t i) const noexcept { return functions_[i]; }

  const HashFunction& at(std::size_t i) const {
    if (i >= functions_.size()) {
      throw ContractViolation("hash function index " + std::to_string(i) +
                              " out of range for family of size " +
                              std::to_string(functions_.size()));
    }
    return functions_[i];
  }

  std::uint64_t hash_word(std::size_t i, std::uint64_t key) const { return at(i).word(key); }

  std::uint64_t hash_to_bit(std::size_t i, std::uint64_t key, std::uint64_t range) const {
    if (range == 0) throw ContractViolation("hash_to_bit: range must be positive");
    return at(i).bit(key, range);
  }

  double hash_to_unit(std::size_t i, std::uint64_t key) const { return at(i).unit(key); }

 private:
  std::uint64_t base_seed_;
  std::vector<HashFunction> functions_;
};

}  // namespace probgraph
