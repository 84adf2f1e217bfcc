#pragma once

#include <cstdint>

namespace fms {

// Master seed of a projection. Identical seeds reproduce identical projection
// matrices entry for entry, across processes and thread counts.
struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(Seed, Seed) = default;
};

namespace rng {

// SplitMix64 finalizer (Steele/Lea/Flood via Vigna).
inline constexpr std::uint64_t mix_bits(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ull;

// Key derivation chain: seed -> stream key -> row key -> cell state.
// Each stage feeds the previous digest and the next coordinate through the
// finalizer, so a cell state is a pure function of (seed, row, column).
inline constexpr std::uint64_t stream_key(Seed seed) {
  return mix_bits(seed.value + golden);
}

inline constexpr std::uint64_t row_key(std::uint64_t stream, std::uint64_t row) {
  return mix_bits(stream ^ (row + 0xbf58476d1ce4e5b9ull));
}

inline constexpr std::uint64_t cell_state(std::uint64_t row_digest, std::uint64_t column) {
  return mix_bits(row_digest ^ (column + 0x94d049bb133111ebull));
}

// Counter-based generator for one projection cell. Draws are produced by
// walking a SplitMix64 sequence from the cell state; no global state, safe
// to instantiate concurrently from any thread.
class CellRng {
 public:
  explicit constexpr CellRng(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    state_ += golden;
    return mix_bits(state_);
  }

  // Uniform draw in the open interval (0, 1); never returns an endpoint.
  double next_unit_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace rng
}  // namespace fms
