#pragma once

#include <cstdint>
#include <random>

namespace tcmnet {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for child stream `stream` of a master seed. Children are decorrelated
// and depend only on (master, stream), so replication r always sees the same
// stream no matter how many replications run or in what order.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master + stream * 0x9e3779b97f4a7c15ULL);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

} // namespace tcmnet
