#pragma once

#include <array>
#include <cstdint>

namespace seisresid {

// One Philox4x32-10 block (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Address of an independent random stream.
///
/// Draws are a pure function of (seed, stream_index, draw counter), so
/// replicates can be evaluated in any order and give identical results.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  // Deterministic sub-stream for a named purpose or replicate number.
  SeededStream child(std::uint64_t tag) const;

  friend bool operator==(const SeededStream&, const SeededStream&) = default;
};

class CounterRng {
 public:
  explicit CounterRng(SeededStream stream) : stream_(stream) {}

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  // Draw number `index` of this stream, independent of sequential state.
  double uniform_at(std::uint64_t index) const;
  std::uint64_t next_u64();

  // Inversion for mean < 10, Hormann's PTRS transformed rejection otherwise.
  std::uint64_t poisson(double mean);

  const SeededStream& stream() const { return stream_; }

 private:
  std::uint64_t u64_at(std::uint64_t index) const;

  SeededStream stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace seisresid
