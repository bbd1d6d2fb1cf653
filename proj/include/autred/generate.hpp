#pragma once

#include <cstdint>
#include <string>

#include "autred/automaton.hpp"

namespace autred {

// Random automaton model: n states over sigma symbols; per symbol exactly
// floor(n * td) distinct transitions drawn without replacement; exactly
// ceil(n * ad) accepting states; state 0 is the unique initial state and is
// always a candidate for acceptance like any other state.
struct TVParams {
    uint32_t n = 10;
    uint32_t sigma = 2;
    double td = 2.0;  // transition density, floor(n*td) <= n*n per symbol
    double ad = 0.5;  // acceptance density, 0 <= ad <= 1
};

// Deterministic for a given seed (splitmix64 stream).
Automaton tabakov_vardi(const TVParams& p, uint64_t seed, Semantics sem);

// Exact probability that the random finite-word automaton with parameters
// (n, sigma, td) is universal over all words, evaluated with exact big-integer
// arithmetic.
double universality_probability(uint32_t n, uint32_t sigma, double td);

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound) by rejection
    uint64_t below(uint64_t bound);
};

}  // namespace autred
