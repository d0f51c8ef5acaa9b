#ifndef COHESIVE_TEST_HELPERS_HPP
#define COHESIVE_TEST_HELPERS_HPP

#include "cohesive/fixtures.hpp"
#include "cohesive/module.hpp"
#include "cohesive/rng.hpp"

namespace cohesive::testutil {

/// Two-step complex R --(a·)--> R in module degrees 0,1 over a degree-0-free
/// base, as a cohesive module.
inline GenModule two_step(const AlgebraPtr& base, const AlgebraElement& a) {
    GenModule m(base);
    m.add_atom(free_atom(base, 0, 1));
    m.add_atom(free_atom(base, 1, 1));
    AMat w(base, 1, 1);
    w.at(0, 0) = a;
    m.set_comp(1, 0, Component{w, identity_map(base)});
    return m;
}

/// Free rank-1 module in degree 0 with a single diagonal connection entry.
inline GenModule rank_one_with_correction(const AlgebraPtr& base, const AlgebraElement& u) {
    GenModule m = free_module(base, 0, 1);
    AMat w(base, 1, 1);
    w.at(0, 0) = u;
    m.set_comp(0, 0, Component{w, identity_map(base)});
    return m;
}

struct Rng : SplitMix64 {
    explicit Rng(std::uint64_t seed) : SplitMix64{seed} {}
};

inline MatrixK random_coords(const Field& f, std::size_t n, SplitMix64& rng) {
    return random_column(f, n, rng);
}

}  // namespace cohesive::testutil

#endif
