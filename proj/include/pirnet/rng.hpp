#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace pirnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// order-sensitive combination of stream coordinates into one seed
inline std::uint64_t stream_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

using Rng = std::mt19937_64;

}  // namespace pirnet
