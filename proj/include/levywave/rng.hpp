#pragma once

#include <cstdint>
#include <random>

namespace levywave {

using Rng = std::mt19937_64;

// Independent stream for path `index` under a master seed.
inline Rng make_path_rng(std::uint64_t master, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x6c657679u};
    return Rng(seq);
}

// Uniform on (0, 1].
inline double uniform_open_closed(Rng& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace levywave
