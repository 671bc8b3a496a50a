#pragma once

#include <array>
#include <cstdint>

namespace grmsim::philox {

// Philox4x64-10 counter-based generator (Salmon et al., Random123 family).
// One block maps a 256-bit counter and a 128-bit key to four uint64 words.
// Constants and word order match the reference implementation.

struct Counter {
  std::array<std::uint64_t, 4> v{};
};

struct Key {
  std::array<std::uint64_t, 2> v{};
};

namespace detail {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

}  // namespace detail

inline Counter block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = detail::mulhilo(detail::kMul0, ctr.v[0], hi0);
    const std::uint64_t lo1 = detail::mulhilo(detail::kMul1, ctr.v[2], hi1);
    ctr = Counter{{hi1 ^ ctr.v[1] ^ key.v[0], lo1, hi0 ^ ctr.v[3] ^ key.v[1], lo0}};
    key.v[0] += detail::kWeyl0;
    key.v[1] += detail::kWeyl1;
  }
  return ctr;
}

}  // namespace grmsim::philox
