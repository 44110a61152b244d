#pragma once

#include <cstdint>
#include <random>

namespace phasecal {

/// Independent, reproducible substream `stream_id` of a run seeded with `seed`.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x70686361u};
    return std::mt19937_64(seq);
}

namespace streams {
inline constexpr std::uint64_t kChainBase = 0;  // chain m -> kChainBase + m
inline constexpr std::uint64_t kRxLocal = 1u << 20;
inline constexpr std::uint64_t kRxOta = (1u << 20) + 1;
inline constexpr std::uint64_t kOtaNoise = (1u << 20) + 2;
}  // namespace streams

}  // namespace phasecal
