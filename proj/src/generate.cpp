#include "autred/generate.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace autred {

using boost::multiprecision::cpp_int;

uint64_t SplitMix64::below(uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("below: bound must be positive");
    }
    // rejection threshold = 2^64 mod bound; values below it would bias r % bound
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

namespace {

// Draws `take` distinct values from [0, total) without replacement using a
// partial Fisher-Yates shuffle over a sparse index remap, so memory is O(take)
// even when `total` is n^2 for large n.
std::vector<uint64_t> sample_distinct(uint64_t total, uint64_t take, SplitMix64& rng) {
    std::unordered_map<uint64_t, uint64_t> remap;
    remap.reserve(static_cast<size_t>(take) * 2);
    auto fetch = [&](uint64_t i) {
        auto it = remap.find(i);
        return it == remap.end() ? i : it->second;
    };
    std::vector<uint64_t> out;
    out.reserve(static_cast<size_t>(take));
    for (uint64_t j = 0; j < take; ++j) {
        uint64_t idx = j + rng.below(total - j);
        out.push_back(fetch(idx));
        remap[idx] = fetch(j);
    }
    return out;
}

}  // namespace

Automaton tabakov_vardi(const TVParams& p, uint64_t seed, Semantics sem) {
    if (p.n == 0) {
        throw std::invalid_argument("tabakov_vardi: need at least one state");
    }
    if (p.sigma == 0) {
        throw std::invalid_argument("tabakov_vardi: need at least one symbol");
    }
    if (!(p.td >= 0.0) || !(p.ad >= 0.0) || !(p.ad <= 1.0)) {
        throw std::invalid_argument("tabakov_vardi: densities out of range");
    }
    uint64_t n = p.n;
    uint64_t cells = n * n;
    auto per_symbol = static_cast<uint64_t>(std::floor(static_cast<double>(n) * p.td));
    if (per_symbol > cells) {
        throw std::invalid_argument("tabakov_vardi: transition density exceeds n states squared");
    }
    auto acc_count = static_cast<uint64_t>(std::ceil(static_cast<double>(n) * p.ad));
    if (acc_count > n) {
        acc_count = n;
    }

    SplitMix64 rng(seed);
    std::vector<std::string> symbols;
    symbols.reserve(p.sigma);
    for (uint32_t s = 0; s < p.sigma; ++s) {
        symbols.push_back("a" + std::to_string(s));
    }

    std::vector<Transition> transitions;
    transitions.reserve(static_cast<size_t>(per_symbol) * p.sigma);
    for (uint32_t s = 0; s < p.sigma; ++s) {
        for (uint64_t cell : sample_distinct(cells, per_symbol, rng)) {
            transitions.push_back(Transition{static_cast<state_t>(cell / n), s,
                                             static_cast<state_t>(cell % n)});
        }
    }

    std::vector<state_t> accepting;
    accepting.reserve(static_cast<size_t>(acc_count));
    for (uint64_t st : sample_distinct(n, acc_count, rng)) {
        accepting.push_back(static_cast<state_t>(st));
    }

    return Automaton::build(sem, p.n, std::move(symbols), {0}, std::move(accepting),
                            std::move(transitions));
}

namespace {

// C(a, b) via the multiplicative formula; each intermediate division is exact.
cpp_int binomial(int64_t a, int64_t b) {
    if (b < 0 || a < 0 || b > a) {
        return 0;
    }
    if (b > a - b) {
        b = a - b;
    }
    cpp_int c = 1;
    for (int64_t j = 1; j <= b; ++j) {
        c *= (a - b + j);
        c /= j;
    }
    return c;
}

}  // namespace

double universality_probability(uint32_t n, uint32_t sigma, double td) {
    if (n == 0 || sigma == 0 || !(td >= 0.0)) {
        throw std::invalid_argument("universality_probability: bad parameters");
    }
    int64_t nn = n;
    int64_t cells = nn * nn;
    auto t = static_cast<int64_t>(std::floor(static_cast<double>(n) * td));
    if (t > cells) {
        throw std::invalid_argument("universality_probability: density exceeds n states squared");
    }
    // With fewer than n transitions some state surely has no outgoing edge.
    if (t < nn) {
        return 0.0;
    }

    // occupancy[m] = number of ways to give each of the n states a positive
    // out-degree summing to m, i.e. the coefficient of z^m in (z+...+z^n)^n.
    // Computed by row DP with a sliding-window sum.
    std::vector<cpp_int> occupancy(static_cast<size_t>(cells) + 1, 0);
    occupancy[0] = 1;
    int64_t reached = 0;
    for (int64_t row = 1; row <= nn; ++row) {
        std::vector<cpp_int> next(static_cast<size_t>(cells) + 1, 0);
        cpp_int window = 0;  // sum of occupancy[m - n .. m - 1]
        int64_t top = std::min(cells, reached + nn);
        for (int64_t m = 1; m <= top; ++m) {
            window += occupancy[static_cast<size_t>(m - 1)];
            if (m - nn - 1 >= 0) {
                window -= occupancy[static_cast<size_t>(m - nn - 1)];
            }
            next[static_cast<size_t>(m)] = window;
        }
        occupancy = std::move(next);
        reached = top;
    }

    // alpha = sum over total degree m of occupancy[m] * C(m - n, t - n):
    // choose which slots beyond the mandatory one per state are filled.
    cpp_int alpha = 0;
    cpp_int choose = 0;  // C(m - n, t - n), advanced incrementally over m
    for (int64_t m = nn; m <= cells; ++m) {
        int64_t x = m - nn;
        if (x == t - nn) {
            choose = 1;
        } else if (x > t - nn) {
            // C(x, b) = C(x-1, b) * x / (x - b)
            choose = choose * x / (x - (t - nn));
        }
        if (x >= t - nn && !occupancy[static_cast<size_t>(m)].is_zero()) {
            alpha += occupancy[static_cast<size_t>(m)] * choose;
        }
    }
    cpp_int beta = binomial(cells, t);

    using big_float = boost::multiprecision::cpp_bin_float_100;
    big_float ratio = big_float(alpha) / big_float(beta);
    big_float acc = 1;
    for (uint32_t s = 0; s < sigma; ++s) {
        acc *= ratio;
    }
    return static_cast<double>(acc);
}

}  // namespace autred
