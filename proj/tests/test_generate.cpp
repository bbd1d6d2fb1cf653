#include <cmath>
#include <set>

#include "doctest.h"

#include "autred/ba_io.hpp"
#include "autred/generate.hpp"

using namespace autred;

TEST_CASE("splitmix64 stream matches the published reference values") {
    // seed 1234567 of the reference implementation
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ull);
    CHECK(rng.next() == 3203168211198807973ull);
    CHECK(rng.next() == 9817491932198370423ull);
}

TEST_CASE("below is within range and rejection keeps determinism") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        uint64_t bound = 1 + (i % 97);
        uint64_t x = a.below(bound);
        CHECK(x < bound);
        CHECK(x == b.below(bound));
    }
    CHECK_THROWS_AS(a.below(0), std::invalid_argument);
}

TEST_CASE("random model hits the exact densities") {
    TVParams p{7, 3, 1.3, 0.5};
    Automaton a = tabakov_vardi(p, 99, Semantics::Buchi);
    CHECK(a.num_states() == 7);
    CHECK(a.num_symbols() == 3);
    // floor(7 * 1.3) = 9 distinct transitions per symbol
    for (symbol_t s = 0; s < 3; ++s) {
        uint64_t count = 0;
        for (state_t q = 0; q < 7; ++q) count += a.succ(q, s).size();
        CHECK(count == 9);
    }
    CHECK(a.accepting().size() == 4);  // ceil(7 * 0.5)
    CHECK(a.initial() == std::vector<state_t>{0});
}

TEST_CASE("random model is deterministic per seed and varies across seeds") {
    TVParams p{12, 2, 2.0, 0.3};
    std::string first = write_ba(tabakov_vardi(p, 7, Semantics::Buchi));
    CHECK(first == write_ba(tabakov_vardi(p, 7, Semantics::Buchi)));
    bool differs = false;
    for (uint64_t seed = 8; seed < 13; ++seed)
        if (write_ba(tabakov_vardi(p, seed, Semantics::Buchi)) != first) differs = true;
    CHECK(differs);
}

TEST_CASE("random model rejects bad parameters") {
    CHECK_THROWS_AS(tabakov_vardi({0, 2, 1.0, 0.5}, 1, Semantics::Buchi),
                    std::invalid_argument);
    CHECK_THROWS_AS(tabakov_vardi({3, 0, 1.0, 0.5}, 1, Semantics::Buchi),
                    std::invalid_argument);
    CHECK_THROWS_AS(tabakov_vardi({3, 2, 4.0, 0.5}, 1, Semantics::Buchi),
                    std::invalid_argument);  // floor(3*4) > 9
    CHECK_THROWS_AS(tabakov_vardi({3, 2, 1.0, 1.5}, 1, Semantics::Buchi),
                    std::invalid_argument);
}

namespace {

// Brute force: fraction of T-subsets of the n*n cell grid covering every row.
double brute_row_coverage(uint32_t n, uint32_t t) {
    uint32_t cells = n * n;
    uint64_t total = 0, covered = 0;
    for (uint32_t mask = 0; mask < (1u << cells); ++mask) {
        if (static_cast<uint32_t>(__builtin_popcount(mask)) != t) continue;
        ++total;
        uint32_t rows = 0;
        for (uint32_t c = 0; c < cells; ++c)
            if (mask & (1u << c)) rows |= 1u << (c / n);
        if (rows == (1u << n) - 1) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("universality probability matches brute-force row coverage") {
    // sigma = 1: the probability is exactly the covered-rows fraction
    for (uint32_t n : {2u, 3u}) {
        for (uint32_t t = n; t <= n * n; ++t) {
            CAPTURE(n);
            CAPTURE(t);
            double exact = brute_row_coverage(n, t);
            double got = universality_probability(n, 1, static_cast<double>(t) / n);
            CHECK(got == doctest::Approx(exact).epsilon(1e-12));
        }
    }
    // sigma > 1 raises to the sigma-th power
    double one = universality_probability(3, 1, 2.0);
    double two = universality_probability(3, 2, 2.0);
    CHECK(two == doctest::Approx(one * one).epsilon(1e-12));
}

TEST_CASE("universality probability edge cases and monotonicity") {
    CHECK(universality_probability(4, 2, 0.5) == 0.0);   // fewer picks than states
    CHECK(universality_probability(4, 2, 4.0) == 1.0);   // all cells present
    double prev = 0.0;
    for (double td = 1.0; td <= 6.0; td += 0.5) {
        double u = universality_probability(6, 2, td);
        CHECK(u >= prev);
        prev = u;
    }
    CHECK_THROWS_AS(universality_probability(0, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(universality_probability(3, 2, 5.0), std::invalid_argument);
}
