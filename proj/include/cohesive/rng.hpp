/**
 * Deterministic seeded generator for reproducible sampling (splitmix64 step).
 */

#ifndef COHESIVE_RNG_HPP
#define COHESIVE_RNG_HPP

#include <cstdint>

#include "matrix.hpp"

namespace cohesive {

struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Small signed scalar in [-3, 3].
    long long small() { return static_cast<long long>(next() % 7) - 3; }

    /// An independent stream for a labelled sub-task.
    SplitMix64 split(std::uint64_t label) { return SplitMix64{next() ^ (label * 0xd1342543de82ef95ull)}; }
};

inline MatrixK random_column(const Field& f, std::size_t n, SplitMix64& rng) {
    MatrixK c(f, n, 1);
    for (std::size_t i = 0; i < n; ++i) c.at(i, 0) = Scalar(f, rng.small());
    return c;
}

}  // namespace cohesive

#endif
