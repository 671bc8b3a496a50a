#pragma once

#include <bit>
#include <cstdint>

#include "grmsim/normal.hpp"
#include "grmsim/philox.hpp"

namespace grmsim {

// Maps 64 random bits to a double strictly inside (0,1). 52 bits centered on
// the half-step: every value from 2^-53 to 1 - 2^-53 is exactly representable,
// so neither endpoint is reachable even after rounding.
inline double unit_double(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Deterministic stream of N(0,1) draws. Keyed by (key0, key1) with an
// independent substream selector; draws come from Philox blocks through the
// inverse CDF, so a given (key, stream) pair yields the same sequence on
// every platform, thread, and run.
class NormalStream {
 public:
  NormalStream(std::uint64_t key0, std::uint64_t key1, std::uint64_t stream = 0)
      : key_{{key0, key1}} {
    counter_.v[0] = stream;
  }

  double next() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }

  double next(double mean, double sd) { return mean + sd * next(); }

 private:
  void refill() {
    const philox::Counter out = philox::block(counter_, key_);
    for (int i = 0; i < 4; ++i) buffer_[i] = inv_phi(unit_double(out.v[i]));
    if (++counter_.v[3] == 0) ++counter_.v[2];  // 128-bit block index
    pos_ = 0;
  }

  philox::Key key_;
  philox::Counter counter_{};
  double buffer_[4] = {};
  int pos_ = 4;
};

// Collapses one grid cell's identity into its seed. Runs each parameter
// tuple through a Philox block keyed by the master seed, so cells get
// well-separated streams regardless of how the grid is ordered or split
// across workers.
inline std::uint64_t derive_cell_seed(std::uint64_t master_seed, int num_categories,
                                      double sigma, int num_items, int sample_size) {
  const philox::Key key{{master_seed, 0x67726d2d63656c6cULL}};
  const philox::Counter ctr{{static_cast<std::uint64_t>(num_categories),
                             std::bit_cast<std::uint64_t>(sigma),
                             static_cast<std::uint64_t>(num_items),
                             static_cast<std::uint64_t>(sample_size)}};
  return philox::block(ctr, key).v[0];
}

}  // namespace grmsim
