#pragma once

#include <cstdint>

namespace mlncraft {

// SplitMix64 mixing step; bijective, used to derive independent substreams
// from one base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-layer community-detection seed. Every driver (CLI, bench, tests) derives
// per-layer seeds through this function, so serial and parallel runs agree.
inline std::uint64_t layer_seed(std::uint64_t base, int layer) {
    return splitmix64(base ^ (0x30000ULL + static_cast<std::uint64_t>(layer)));
}

} // namespace mlncraft
