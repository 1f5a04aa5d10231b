#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nearopt {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view label) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// One generator per (master seed, label). Adding a new label never shifts
/// the draws of an existing one.
inline Rng make_stream(std::uint64_t master_seed, std::string_view label) {
    return Rng(mix_seed(master_seed ^ mix_seed(fnv1a(label))));
}

} // namespace nearopt
